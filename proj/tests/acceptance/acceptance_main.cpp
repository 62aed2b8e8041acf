// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are fixed here, in code.

#include "../oracles.hpp"
#include "trunctail/asymptotics.hpp"
#include "trunctail/errors.hpp"
#include "trunctail/estimators.hpp"
#include "trunctail/montecarlo.hpp"
#include "trunctail/product_limit.hpp"
#include "trunctail/sampling.hpp"
#include "trunctail/second_order.hpp"
#include "trunctail/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace trunctail;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("criterion %d [%s]: %s  (%s)\n", criterion, name.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++failures;
    }
}

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ------------------------------------------------------------------ 1 & 2

struct GridOutcome {
    std::map<std::string, McCell> cells;
    double seconds = 0.0;
};

std::string cell_key(double gamma1, double p, std::size_t n) {
    std::ostringstream oss;
    oss << gamma1 << '/' << p << '/' << n;
    return oss.str();
}

GridOutcome run_full_grid() {
    McConfig cfg;
    cfg.replicates = 1000;
    cfg.seed = 42;
    const auto t0 = std::chrono::steady_clock::now();
    const McReport report = run_grid(cfg);
    GridOutcome out;
    out.seconds = wall_seconds(t0);
    for (const McCell& c : report.cells) {
        out.cells[cell_key(c.gamma1, c.p, c.n_pairs)] = c;
    }
    return out;
}

void criterion_1(const GridOutcome& grid) {
    const McCell& cell = grid.cells.at(cell_key(0.6, 0.9, 1000));
    const bool abias_ok = cell.abias_rho <= 0.02;
    const bool rmse_ok = cell.rmse_rho >= 0.01 && cell.rmse_rho <= 0.09;
    std::ostringstream detail;
    detail << "abias(rho)=" << cell.abias_rho << " <= 0.02: " << (abias_ok ? "yes" : "no")
           << "; rmse(rho)=" << cell.rmse_rho << " in [0.01, 0.09]: " << (rmse_ok ? "yes" : "no")
           << " [the limit theorem itself puts std(rho_hat) near 14 at this n for upsilon ~ 0.7n:"
              " sigma_alpha/(|s'| sqrt(u) |A0|) = 2.09/(0.0101*14.2)]"
           << "; grid wall time " << grid.seconds << " s";
    report(1, "second-order study", abias_ok && rmse_ok, detail.str());
}

void criterion_2(const GridOutcome& grid) {
    const McCell& named = grid.cells.at(cell_key(0.6, 0.7, 500));
    const bool named_abias = named.abias_gamma1 <= 0.05;
    const bool named_win = named.abias_gamma1 < named.abias_bmn;

    int wins = 0;
    int total = 0;
    for (const auto& [key, cell] : grid.cells) {
        (void)key;
        ++total;
        if (cell.abias_gamma1 < cell.abias_bmn) {
            ++wins;
        }
    }
    const bool wins_ok = wins >= 14 && total == 16;

    // companion property: rmse nonincreasing in N per (gamma1, p) column,
    // allowing one inversion per column
    bool rmse_monotone = true;
    for (double g1 : {0.6, 0.8}) {
        for (double p : {0.7, 0.9}) {
            int inversions = 0;
            const std::size_t ns[] = {100, 200, 500, 1000};
            for (int i = 1; i < 4; ++i) {
                const McCell& prev = grid.cells.at(cell_key(g1, p, ns[i - 1]));
                const McCell& next = grid.cells.at(cell_key(g1, p, ns[i]));
                if (next.rmse_gamma1 > prev.rmse_gamma1) {
                    ++inversions;
                }
            }
            if (inversions > 1) {
                rmse_monotone = false;
            }
        }
    }

    std::ostringstream detail;
    detail << "cell (0.6,0.7,500): abias(g1)=" << named.abias_gamma1
           << " <= 0.05: " << (named_abias ? "yes" : "no") << ", vs abias(bmn)="
           << named.abias_bmn << ": " << (named_win ? "win" : "loss") << "; abias wins "
           << wins << "/" << total << " (need >= 14)"
           << " [the weighted-Hill estimate tracks its theoretical bias curve A0(n/k)/(1-rho)"
              " and is nearly unbiased at moderate k, leaving nothing for the correction to"
              " remove; the correction's own mean is noise-dominated at these n]"
           << "; rmse(g1) monotone in N (<=1 inversion/column): "
           << (rmse_monotone ? "yes" : "no");
    report(2, "bias reduction", named_abias && named_win && wins_ok && rmse_monotone,
           detail.str());
}

// ---------------------------------------------------------------------- 3

void criterion_3() {
    bool ok = true;
    std::ostringstream detail;

    double worst_q2 = 0.0;
    for (double rho : {-0.1, -1.0, -2.4, -8.0}) {
        for (double g1 : {0.6, 0.8, 2.0}) {
            worst_q2 = std::fmax(worst_q2, std::fabs(q_alpha(rho, g1, 2.0) - 1.0));
        }
    }
    ok = ok && worst_q2 <= 1e-12;

    double worst_qs = 0.0;
    for (double alpha : {0.25, 1.5, 2.0, 3.0}) {
        for (double rho : {-0.1, -1.0, -2.4, -8.0}) {
            for (double g1 : {0.6, 0.8, 2.0}) {
                const double lhs = delta_factor(alpha) * q_alpha(rho, g1, 2.0 * alpha) /
                                   std::pow(q_alpha(rho, g1, alpha + 1.0), 2.0);
                worst_qs = std::fmax(worst_qs,
                                     std::fabs(lhs - s_alpha(rho, alpha)) /
                                         std::fmax(1.0, std::fabs(s_alpha(rho, alpha))));
            }
        }
    }
    ok = ok && worst_qs <= 1e-10;

    double worst_rt = 0.0;
    for (double rho : {-0.25, -1.0, -2.4, -10.0}) {
        const double back = s_alpha_inverse(s_alpha(rho, 2.0), 2.0);
        worst_rt = std::fmax(worst_rt, std::fabs(back - rho) / std::fmax(1.0, std::fabs(rho)));
    }
    ok = ok && worst_rt <= 1e-12;

    // Q_n^(2) == 1 and Q_n^(1) == 0 on arbitrary samples
    double worst_qn = 0.0;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const TruncationModel m(0.6, solve_gamma2(0.6, 0.7), 0.25);
        const ObservedSample s = draw_truncated_sample(m, 300, seed);
        const ProductLimitTables t = build_tables(s);
        for (std::size_t u : {2ul, 20ul, t.n() / 2, t.n() - 1}) {
            worst_qn = std::fmax(worst_qn, std::fabs(q_alpha_stat(t, u, 2.0) - 1.0));
            worst_qn = std::fmax(worst_qn, std::fabs(q_alpha_stat(t, u, 1.0)));
        }
    }
    ok = ok && worst_qn <= 1e-12;

    detail << "max |q2-1|=" << worst_q2 << "; max rel q/s identity err=" << worst_qs
           << "; max rel s2 roundtrip err=" << worst_rt << "; max |Q_n dev|=" << worst_qn;
    report(3, "exact-math suite", ok, detail.str());
}

// ---------------------------------------------------------------------- 4

void criterion_4() {
    bool ok = true;
    std::ostringstream detail;

    // hand-enumerated examples
    {
        const ObservedSample two = ObservedSample::from_pairs({1.0, 3.0}, {2.0, 4.0});
        const ProductLimitTables t = build_tables(two);
        ok = ok && std::fabs(t.c_at_x[0] - 0.5) <= 1e-15 && std::fabs(t.c_at_x[1] - 0.5) <= 1e-15;
        ok = ok && std::fabs(t.f_at_x[0] - std::exp(-1.0)) <= 1e-15 && t.f_at_x[1] == 1.0;

        const ObservedSample three = ObservedSample::from_pairs({1.0, 3.0, 5.0}, {2.0, 4.0, 9.0});
        const ProductLimitTables t3 = build_tables(three);
        const std::vector<double> w = bmn_weights(t3, 2);
        const double e1 = std::exp(-1.0);
        ok = ok && std::fabs(w[0] - 1.0 / (1.0 + e1)) <= 1e-14;
        ok = ok && std::fabs(w[1] - e1 / (1.0 + e1)) <= 1e-14;
    }

    // weights sum exactly to 1, coverage >= 1/n, F_n nondecreasing ending at 1
    const TruncationModel m(0.6, solve_gamma2(0.6, 0.7), 0.25);
    const ObservedSample s = draw_truncated_sample(m, 2000, 11);
    const ProductLimitTables t = build_tables(s);
    const std::size_t n = t.n();
    for (std::size_t k : {1ul, 5ul, n / 2, n - 1}) {
        const std::vector<double> w = bmn_weights(t, k);
        double sum = 0.0;
        for (double wi : w) {
            sum += wi;
        }
        ok = ok && sum == 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        ok = ok && t.c_at_x[i] >= 1.0 / static_cast<double>(n);
        ok = ok && (i == 0 || t.f_at_x[i] >= t.f_at_x[i - 1]);
    }
    ok = ok && t.f_at_x[n - 1] == 1.0;

    // the printed tail-mass identity, as stated, at tolerance 1e-10:
    // n^-1 sum_{i<=u} F_n/C_n at the top i versus 1 - F_n(X_{n-u:n}).
    double worst_gap = 0.0;
    for (std::size_t u : {10ul, 50ul, 100ul, n / 2, u_n(n, 0.01)}) {
        const double lhs = upper_tail_mass(t, u);
        const double rhs = 1.0 - t.f_at_x[n - 1 - u];
        worst_gap = std::fmax(worst_gap, std::fabs(lhs - rhs));
    }
    const bool identity_ok = worst_gap <= 1e-10;
    ok = ok && identity_ok;

    detail << "hand examples, weight sums, coverage bound, monotone F_n: pass; "
           << "tail-mass identity max gap = " << worst_gap
           << " (tolerance 1e-10): " << (identity_ok ? "pass" : "FAIL")
           << " [the identity is exact only for a linear product-limit form; "
              "with the exponential form the gap is O(sum 1/(n C_n)^2)]";
    report(4, "product-limit suite", ok, detail.str());
}

// ---------------------------------------------------------------------- 5

void criterion_5() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;

    const SecondOrderContext closed(0.6, 1.4, -2.4, -2.4, 2.0);
    const double sigma2 = sigma_bmn_sq(closed);
    ok = ok && std::fabs(sigma2 - 0.522) <= 1e-6;

    // constant-integrand analytic oracle at 1e-8
    const SecondOrderContext ctx(0.6, 5.4, -2.4, -2.4, 2.0);
    const ConstantBundle kb = constants(ctx);
    double worst_const = 0.0;
    for (double c : {1.0, -0.6, 2.3}) {
        const double numeric = sigma_functional(ctx, [c](double) { return c; }, kb.mu, 1e-8);
        const double exact = oracles::sigma_constant_oracle(ctx, c, kb.mu);
        worst_const = std::fmax(worst_const, std::fabs(numeric - exact) / std::fabs(exact));
    }
    ok = ok && worst_const <= 1e-8;

    // exact polynomial-Gamma oracle (the integrands are polynomials in -log s)
    const double sa = sigma_alpha_sq(ctx);
    const double ss = sigma_star_sq(ctx);
    const double exact_a = oracles::sigma_polynomial_oracle(ctx, oracles::delta_poly_coeffs(ctx), kb.xi);
    const double exact_s = oracles::sigma_polynomial_oracle(ctx, oracles::d_poly_coeffs(ctx), kb.mu);
    const bool exact_ok = std::fabs(sa - exact_a) <= 1e-8 * std::fabs(exact_a) &&
                          std::fabs(ss - exact_s) <= 1e-8 * std::fabs(exact_s);
    ok = ok && exact_ok;

    // Brownian-path oracle: 2000 paths, step 1e-4, three standard errors
    const auto mc_alpha = oracles::brownian_variance_oracle(
        ctx, [&ctx](double s) { return delta_alpha_fn(ctx, s); }, kb.xi, 2000, 1e-4, 2024);
    const auto mc_star = oracles::brownian_variance_oracle(
        ctx, [&ctx](double s) { return d_fn(ctx, s); }, kb.mu, 2000, 1e-4, 4048);
    const bool alpha_ok = std::fabs(mc_alpha.variance - sa) <= 3.0 * mc_alpha.std_error;
    const bool star_ok = std::fabs(mc_star.variance - ss) <= 3.0 * mc_star.std_error;
    ok = ok && alpha_ok && star_ok;

    std::ostringstream refine;
    if (!star_ok || !alpha_ok) {
        // step refinement shows the left-point scheme converging to the
        // quadrature value from below
        refine << " [refinement:";
        for (double step : {1e-3, 1e-4, 1e-5}) {
            const auto est = oracles::brownian_variance_oracle(
                ctx, [&ctx](double s) { return d_fn(ctx, s); }, kb.mu, 2000, step, 4048);
            refine << " h=" << step << " -> " << est.variance;
        }
        refine << ", target " << ss << "]";
    }

    const double secs = wall_seconds(t0);
    ok = ok && secs < 60.0;
    detail << "sigma^2=" << sigma2 << " (|err| <= 1e-6); const-oracle rel err " << worst_const
           << "; exact-poly oracle: " << (exact_ok ? "pass" : "FAIL")
           << "; sigma_alpha^2=" << sa << " vs MC " << mc_alpha.variance << " +- "
           << mc_alpha.std_error << (alpha_ok ? " ok" : " MISS") << "; sigma_*^2=" << ss
           << " vs MC " << mc_star.variance << " +- " << mc_star.std_error
           << (star_ok ? " ok" : " MISS") << refine.str() << "; " << secs << " s";
    report(5, "variance quadrature", ok, detail.str());
}

// ---------------------------------------------------------------------- 6

void criterion_6() {
    // Consistency check at deterministic in-regime fractions: the
    // second-order estimate at the u_n rule, the tail index at k = n^(2/3)
    // (k -> infinity, k/n -> 0, sqrt(k) A0(n/k) bounded).
    const TruncationModel model(0.6, solve_gamma2(0.6, 0.9), 0.25);
    std::vector<double> gamma_err;
    std::vector<double> rho_err;
    SelectionConfig sel;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const ObservedSample s = draw_truncated_sample(model, 100000, seed);
        const ProductLimitTables t = build_tables(s);
        const std::size_t n = t.n();
        const Rho1Curve rho_curve = rho1_alpha2_curve(t, -1.0);
        const std::size_t un = u_n(n, sel.epsilon);
        rho_err.push_back(std::fabs(rho_curve.values[un] - (-2.4)));

        const std::vector<double> curve = gamma1_reduced_curve(t, rho_curve.values[un]);
        const auto k = static_cast<std::size_t>(
            std::floor(std::pow(static_cast<double>(n), 2.0 / 3.0)));
        gamma_err.push_back(std::fabs(curve[k] - 0.6));
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size();
        return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
    };
    const double med_gamma = median(gamma_err);
    const double med_rho = median(rho_err);
    const bool gamma_ok = med_gamma <= 0.03;
    const bool rho_ok = med_rho <= 0.5;
    std::ostringstream detail;
    detail << "median |gamma1_hat - 0.6| = " << med_gamma << " (<= 0.03): "
           << (gamma_ok ? "pass" : "FAIL") << "; median |rho_hat(u_n) + 2.4| = " << med_rho
           << " (<= 0.5): " << (rho_ok ? "pass" : "FAIL")
           << " [the u_n-fraction second-order estimate concentrates at its finite-threshold "
              "limit, -1.57 at this scale]; 50 seeds, N = 1e5";
    report(6, "statistical consistency", gamma_ok && rho_ok, detail.str());
}

} // namespace

int main() {
    std::printf("trunctail acceptance suite\n");
    const auto t0 = std::chrono::steady_clock::now();

    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    const GridOutcome grid = run_full_grid();
    criterion_1(grid);
    criterion_2(grid);

    std::printf("total wall time: %.1f s\n", wall_seconds(t0));
    if (failures > 0) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
