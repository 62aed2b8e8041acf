#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "trunctail/errors.hpp"
#include "trunctail/product_limit.hpp"
#include "trunctail/sampling.hpp"

#include <cmath>
#include <vector>

using namespace trunctail;

namespace {

ObservedSample two_pairs() { return ObservedSample::from_pairs({1.0, 3.0}, {2.0, 4.0}); }

ObservedSample burr_sample(std::size_t n_pairs, std::uint64_t seed, double p = 0.7) {
    const TruncationModel m(0.6, solve_gamma2(0.6, p), 0.25);
    return draw_truncated_sample(m, n_pairs, seed);
}

} // namespace

TEST_CASE("coverage on hand samples") {
    const ObservedSample s = two_pairs();
    CHECK(coverage(s, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(coverage(s, 2.5) == 0.0);
    CHECK(coverage(s, 3.5) == doctest::Approx(0.5).epsilon(1e-15));
    // self-coverage: every X_i lies in its own interval
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(coverage(s, s.x[i]) >= 1.0 / static_cast<double>(s.size()));
    }
}

TEST_CASE("woodroofe cdf on hand samples") {
    const ObservedSample s = two_pairs();
    CHECK(woodroofe_cdf(s, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(woodroofe_cdf(s, 5.0) == 1.0);
    const ObservedSample single = ObservedSample::from_pairs({1.0}, {2.0});
    CHECK(woodroofe_cdf(single, 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("tables on hand samples") {
    const ProductLimitTables t = build_tables(two_pairs());
    REQUIRE(t.n() == 2);
    CHECK(t.c_at_x[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.c_at_x[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.f_at_x[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(t.f_at_x[1] == 1.0);

    const ProductLimitTables single = build_tables(ObservedSample::from_pairs({2.0}, {3.0}));
    CHECK(single.c_at_x[0] == 1.0);
    CHECK(single.f_at_x[0] == 1.0);
}

TEST_CASE("tables agree with the naive pointwise oracle") {
    const ObservedSample s = burr_sample(300, 21);
    const ProductLimitTables t = build_tables(s);
    const std::size_t n = t.n();
    for (std::size_t i = 0; i < n; i += 7) {
        CHECK(t.c_at_x[i] ==
              doctest::Approx(oracles::coverage_naive(s, t.sorted_x[i])).epsilon(1e-13));
        CHECK(t.f_at_x[i] ==
              doctest::Approx(oracles::woodroofe_naive(s, t.sorted_x[i])).epsilon(1e-12));
    }
    // pointwise entry points match the tables as well
    CHECK(woodroofe_cdf(s, t.sorted_x[n / 2]) == doctest::Approx(t.f_at_x[n / 2]).epsilon(1e-13));
    CHECK(coverage(s, t.sorted_x[n / 2]) == doctest::Approx(t.c_at_x[n / 2]).epsilon(1e-15));
}

TEST_CASE("table invariants on random samples") {
    for (std::uint64_t seed : {1u, 5u, 11u}) {
        const ObservedSample s = burr_sample(400, seed);
        const ProductLimitTables t = build_tables(s);
        const std::size_t n = t.n();
        CHECK(t.f_at_x[n - 1] == 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(t.c_at_x[i] >= 1.0 / static_cast<double>(n));
            CHECK(t.f_at_x[i] > 0.0);
            CHECK(t.f_at_x[i] <= 1.0);
            if (i > 0) {
                CHECK(t.f_at_x[i] >= t.f_at_x[i - 1]);
            }
        }
    }
}

TEST_CASE("weights") {
    const ObservedSample s = ObservedSample::from_pairs({1.0, 3.0, 5.0}, {2.0, 4.0, 9.0});
    const ProductLimitTables t = build_tables(s);
    // hand enumeration: C_n = 1/3 at every order statistic;
    // F_n(5) = 1, F_n(3) = e^{-1}; ratios 3 and 3 e^{-1}.
    CHECK(t.c_at_x[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(t.c_at_x[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(t.c_at_x[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const std::vector<double> w = bmn_weights(t, 2);
    const double e1 = std::exp(-1.0);
    CHECK(w[0] == doctest::Approx(1.0 / (1.0 + e1)).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(e1 / (1.0 + e1)).epsilon(1e-14));

    CHECK(bmn_weights(t, 1) == std::vector<double>{1.0});
    CHECK_THROWS_AS(bmn_weights(t, 0), std::out_of_range);
    CHECK_THROWS_AS(bmn_weights(t, 3), std::out_of_range);
}

TEST_CASE("weights sum to one exactly and are positive") {
    const ObservedSample s = burr_sample(500, 3);
    const ProductLimitTables t = build_tables(s);
    for (std::size_t k : {1ul, 2ul, 10ul, t.n() / 2, t.n() - 1}) {
        const std::vector<double> w = bmn_weights(t, k);
        double sum = 0.0;
        for (double wi : w) {
            CHECK(wi > 0.0);
            CHECK(wi <= 1.0);
            sum += wi;
        }
        CHECK(sum == 1.0); // exact: the last weight absorbs the rounding
    }
}

TEST_CASE("untruncated degenerate check") {
    // Y huge: coverage counts collapse to i/n and F_n to the exponential
    // approximation of the empirical df.
    const std::size_t n = 400;
    std::vector<double> xs, ys;
    for (std::size_t i = 1; i <= n; ++i) {
        xs.push_back(burr_quantile(static_cast<double>(i) / (n + 1.0), 0.6, 0.25));
        ys.push_back(1e15);
    }
    const ProductLimitTables t = build_tables(ObservedSample::from_pairs(xs, ys));
    double harmonic_tail = 0.0; // sum_{j>i} 1/j accumulated from the top
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t rank = i + 1; // i is 0-based
        CHECK(t.c_at_x[i] == doctest::Approx(static_cast<double>(rank) / n).epsilon(1e-15));
        CHECK(t.f_at_x[i] == doctest::Approx(std::exp(-harmonic_tail)).epsilon(1e-12));
        if (rank >= 5) {
            const double fraction = static_cast<double>(rank) / n;
            CHECK(std::fabs(t.f_at_x[i] / fraction - 1.0) <= 1.0 / static_cast<double>(rank));
        }
        harmonic_tail += 1.0 / static_cast<double>(rank);
    }
}

TEST_CASE("exact telescoping of the tail mass") {
    // 1 - F_n(X_{n-u:n}) equals the sum of the F_n jumps above the threshold;
    // each jump is F_n(X_j) (1 - exp(-1/(n C_n(X_j)))).
    const ObservedSample s = burr_sample(300, 17);
    const ProductLimitTables t = build_tables(s);
    const std::size_t n = t.n();
    for (std::size_t u : {1ul, 2ul, 5ul, n / 4, n / 2, n - 1}) {
        double jumps = 0.0;
        for (std::size_t i = 1; i <= u; ++i) {
            const double c = t.c_at_x[n - i];
            jumps += t.f_at_x[n - i] * (1.0 - std::exp(-1.0 / (n * c)));
        }
        CHECK(jumps == doctest::Approx(1.0 - t.f_at_x[n - 1 - u]).epsilon(1e-12));
    }
}

TEST_CASE("upper tail mass matches the ratio sum") {
    const ObservedSample s = burr_sample(200, 29);
    const ProductLimitTables t = build_tables(s);
    const std::size_t n = t.n();
    for (std::size_t u : {1ul, 3ul, n / 3, n - 1}) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= u; ++i) {
            acc += oracles::woodroofe_naive(s, t.top_x(i)) /
                   oracles::coverage_naive(s, t.top_x(i));
        }
        CHECK(upper_tail_mass(t, u) == doctest::Approx(acc / n).epsilon(1e-12));
    }
    CHECK_THROWS_AS(upper_tail_mass(t, 0), std::out_of_range);
    CHECK_THROWS_AS(upper_tail_mass(t, n), std::out_of_range);
}

TEST_CASE("ties are rejected") {
    CHECK_THROWS_AS(ObservedSample::from_pairs({1.0, 1.0, 2.0}, {3.0, 3.0, 3.0}), TieError);
}
