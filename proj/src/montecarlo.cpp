#include "trunctail/montecarlo.hpp"

#include "trunctail/csv.hpp"
#include "trunctail/errors.hpp"
#include "trunctail/estimators.hpp"
#include "trunctail/product_limit.hpp"
#include "trunctail/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace trunctail {

std::size_t worker_count() {
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TRUNCTAIL_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed >= 0) {
            workers = std::max<std::size_t>(1, static_cast<std::size_t>(parsed));
        }
    }
    return workers;
}

namespace {

struct ReplicateResult {
    bool ok = false;
    bool not_admissible_un = false;
    double n = 0.0;
    double upsilon_star = 0.0;
    double k_star_gamma1 = 0.0;
    double k_star_bmn = 0.0;
    double rho_hat = 0.0;
    double gamma1_hat = 0.0;
    double bmn_hat = 0.0;
};

ReplicateResult run_replicate(const TruncationModel& model, std::size_t n_pairs,
                              std::uint64_t seed, const McConfig& cfg) {
    ReplicateResult out;
    const ObservedSample sample = draw_truncated_sample(model, n_pairs, seed);
    const std::size_t n = sample.size();
    if (n < 4) {
        throw EmptySampleError("sample too small for selection");
    }
    const ProductLimitTables tables = build_tables(sample);
    const double fallback_rho = -1.0;

    // Second-order study: the selection runs over the subsequence of sample
    // fractions whose S statistic inverted (elsewhere the estimator is the
    // fallback constant, which would trivially win a flatness objective).
    const Rho1Curve rho_curve = rho1_alpha2_curve(tables, fallback_rho);
    std::vector<std::size_t> admissible_u;
    const auto u_cap = static_cast<std::size_t>(
        std::floor(cfg.selection.k_max_fraction * static_cast<double>(n)));
    for (std::size_t u = 2; u <= std::min(u_cap, n - 1); ++u) {
        if (rho_curve.admissible[u]) {
            admissible_u.push_back(u);
        }
    }
    std::size_t upsilon_star = 0;
    bool upsilon_star_admissible = false;
    if (admissible_u.size() >= 2) {
        const std::size_t m_adm = admissible_u.size();
        const auto n_eff = static_cast<std::size_t>(
            std::ceil(static_cast<double>(m_adm) / cfg.selection.k_max_fraction));
        const auto position_curve = [&](std::size_t pos) {
            const std::size_t idx = std::min(pos, m_adm) - 1;
            return rho_curve.values[admissible_u[idx]];
        };
        const std::size_t pos = reiss_thomas_k(position_curve, n_eff, cfg.selection);
        upsilon_star = admissible_u[std::min(pos, m_adm) - 1];
        upsilon_star_admissible = true;
    } else {
        upsilon_star = u_n(n, cfg.selection.epsilon); // no invertible fraction at all
    }

    // Bias-reduced chain: rho-hat at the deterministic u_n fraction, then
    // k* selected independently for each tail-index estimator.
    const std::size_t un = u_n(n, cfg.selection.epsilon);
    const bool un_admissible = rho_curve.admissible[un];
    const double rho_star = rho_curve.values[un];

    const std::vector<double> bmn_curve = gamma_bmn_curve(tables);
    const std::vector<double> reduced_curve = gamma1_reduced_curve(tables, rho_star);
    const std::size_t k_star_g1 = reiss_thomas_k(
        [&reduced_curve](std::size_t k) { return reduced_curve[k]; }, n, cfg.selection);
    const std::size_t k_star_bmn = reiss_thomas_k(
        [&bmn_curve](std::size_t k) { return bmn_curve[k]; }, n, cfg.selection);

    out.ok = true;
    out.not_admissible_un = !un_admissible || !upsilon_star_admissible;
    out.n = static_cast<double>(n);
    out.upsilon_star = static_cast<double>(upsilon_star);
    out.k_star_gamma1 = static_cast<double>(k_star_g1);
    out.k_star_bmn = static_cast<double>(k_star_bmn);
    out.rho_hat = upsilon_star_admissible ? rho_curve.values[upsilon_star] : fallback_rho;
    out.gamma1_hat = reduced_curve[k_star_g1];
    out.bmn_hat = bmn_curve[k_star_bmn];
    return out;
}

struct ErrorAccumulator {
    double sum = 0.0;
    double sum_abs_dev = 0.0;
    double sum_sq_dev = 0.0;
    std::size_t count = 0;

    void add(double estimate, double truth) {
        sum += estimate;
        sum_abs_dev += std::fabs(estimate - truth);
        sum_sq_dev += (estimate - truth) * (estimate - truth);
        ++count;
    }
    double abias(double truth, bool mean_deviation) const {
        if (count == 0) {
            return 0.0;
        }
        const double c = static_cast<double>(count);
        return mean_deviation ? sum_abs_dev / c : std::fabs(sum / c - truth);
    }
    double rmse() const {
        return count == 0 ? 0.0 : std::sqrt(sum_sq_dev / static_cast<double>(count));
    }
};

} // namespace

McCell run_cell(double gamma1, double p, std::size_t n_pairs, const McConfig& cfg) {
    if (n_pairs < 20) {
        throw std::invalid_argument("run_cell requires N >= 20");
    }
    if (cfg.replicates < 1) {
        throw std::invalid_argument("run_cell requires replicates >= 1");
    }
    if (cfg.alpha != 2.0) {
        throw std::invalid_argument("the grid study runs alpha = 2 (closed-form inversion)");
    }
    const double gamma2 = solve_gamma2(gamma1, p);
    const TruncationModel model(gamma1, gamma2, cfg.delta);
    const double rho_truth = model.rho1();

    std::vector<ReplicateResult> results(cfg.replicates);
    const std::size_t workers =
        std::min<std::size_t>(std::max<std::size_t>(worker_count(), 1), cfg.replicates);
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            try {
                results[r] = run_replicate(model, n_pairs, replicate_seed(cfg.seed, r), cfg);
            } catch (const std::exception&) {
                results[r].ok = false;
            }
        }
    };
    if (workers <= 1) {
        worker(0, cfg.replicates);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (cfg.replicates + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(cfg.replicates, begin + chunk);
            if (begin < end) {
                pool.emplace_back(worker, begin, end);
            }
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    McCell cell;
    cell.gamma1 = gamma1;
    cell.p = p;
    cell.n_pairs = n_pairs;
    cell.replicates = cfg.replicates;

    ErrorAccumulator rho_acc, gamma1_acc, bmn_acc;
    double sum_n = 0.0, sum_us = 0.0, sum_k1 = 0.0, sum_kb = 0.0;
    for (const ReplicateResult& r : results) {
        if (!r.ok) {
            ++cell.failures;
            continue;
        }
        if (r.not_admissible_un) {
            ++cell.not_admissible;
        }
        sum_n += r.n;
        sum_us += r.upsilon_star;
        sum_k1 += r.k_star_gamma1;
        sum_kb += r.k_star_bmn;
        rho_acc.add(r.rho_hat, rho_truth);
        gamma1_acc.add(r.gamma1_hat, gamma1);
        bmn_acc.add(r.bmn_hat, gamma1);
    }
    if (cell.failures * 2 > cfg.replicates) {
        std::ostringstream oss;
        oss << "cell (gamma1=" << gamma1 << ", p=" << p << ", N=" << n_pairs << "): "
            << cell.failures << "/" << cfg.replicates << " replicates failed";
        throw std::runtime_error(oss.str());
    }
    const double ok_count = static_cast<double>(cfg.replicates - cell.failures);
    cell.mean_n = sum_n / ok_count;
    cell.mean_upsilon_star = sum_us / ok_count;
    cell.mean_k_star_gamma1 = sum_k1 / ok_count;
    cell.mean_k_star_bmn = sum_kb / ok_count;
    cell.abias_rho = rho_acc.abias(rho_truth, cfg.abias_mean_deviation);
    cell.rmse_rho = rho_acc.rmse();
    cell.abias_gamma1 = gamma1_acc.abias(gamma1, cfg.abias_mean_deviation);
    cell.rmse_gamma1 = gamma1_acc.rmse();
    cell.abias_bmn = bmn_acc.abias(gamma1, cfg.abias_mean_deviation);
    cell.rmse_bmn = bmn_acc.rmse();
    return cell;
}

McReport run_grid(const McConfig& cfg) {
    McReport report;
    report.config = cfg;
    for (double gamma1 : cfg.gamma1_list) {
        for (double p : cfg.p_list) {
            for (std::size_t n_pairs : cfg.n_list) {
                report.cells.push_back(run_cell(gamma1, p, n_pairs, cfg));
            }
        }
    }
    return report;
}

void write_report_csv(const McReport& report, std::ostream& os) {
    os << "gamma1,p,N,meanN,kstar,upsilonstar,abias_rho,rmse_rho,abias_g1,rmse_g1,"
          "abias_bmn,rmse_bmn,notadmissible,failures\n";
    for (const McCell& c : report.cells) {
        os << format_double(c.gamma1) << ',' << format_double(c.p) << ',' << c.n_pairs << ','
           << format_double(c.mean_n) << ',' << format_double(c.mean_k_star_gamma1) << ','
           << format_double(c.mean_upsilon_star) << ',' << format_double(c.abias_rho) << ','
           << format_double(c.rmse_rho) << ',' << format_double(c.abias_gamma1) << ','
           << format_double(c.rmse_gamma1) << ',' << format_double(c.abias_bmn) << ','
           << format_double(c.rmse_bmn) << ',' << c.not_admissible << ',' << c.failures << '\n';
    }
}

namespace {

std::string fixed3(double v) {
    std::ostringstream oss;
    oss << std::fixed << std::setprecision(3) << v;
    return oss.str();
}

std::string fixed1(double v) {
    std::ostringstream oss;
    oss << std::fixed << std::setprecision(1) << v;
    return oss.str();
}

} // namespace

void write_report_tables(const McReport& report, std::ostream& os) {
    os << "Second-order parameter estimator (alpha = 2)\n";
    os << std::left << std::setw(8) << "gamma1" << std::setw(6) << "p" << std::setw(7) << "N"
       << std::setw(9) << "n" << std::setw(10) << "ups*" << std::setw(9) << "abias"
       << std::setw(9) << "rmse" << "na" << '\n';
    for (const McCell& c : report.cells) {
        os << std::left << std::setw(8) << c.gamma1 << std::setw(6) << c.p << std::setw(7)
           << c.n_pairs << std::setw(9) << fixed1(c.mean_n) << std::setw(10)
           << fixed1(c.mean_upsilon_star) << std::setw(9) << fixed3(c.abias_rho) << std::setw(9)
           << fixed3(c.rmse_rho) << c.not_admissible << '\n';
    }
    os << '\n';
    os << "Tail index estimators: bias-reduced vs weighted Hill\n";
    os << std::left << std::setw(8) << "gamma1" << std::setw(6) << "p" << std::setw(7) << "N"
       << std::setw(9) << "n" << std::setw(8) << "k*g1" << std::setw(9) << "abias" << std::setw(9)
       << "rmse" << std::setw(8) << "k*bmn" << std::setw(9) << "abias" << std::setw(9) << "rmse"
       << '\n';
    for (const McCell& c : report.cells) {
        os << std::left << std::setw(8) << c.gamma1 << std::setw(6) << c.p << std::setw(7)
           << c.n_pairs << std::setw(9) << fixed1(c.mean_n) << std::setw(8)
           << fixed1(c.mean_k_star_gamma1) << std::setw(9) << fixed3(c.abias_gamma1)
           << std::setw(9) << fixed3(c.rmse_gamma1) << std::setw(8) << fixed1(c.mean_k_star_bmn)
           << std::setw(9) << fixed3(c.abias_bmn) << std::setw(9) << fixed3(c.rmse_bmn) << '\n';
    }
}

} // namespace trunctail
