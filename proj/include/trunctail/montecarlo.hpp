#ifndef TRUNCTAIL_MONTECARLO_HPP
#define TRUNCTAIL_MONTECARLO_HPP

#include "trunctail/selection.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace trunctail {

/// Grid study configuration. Replicate r of any cell uses the substream
/// seed ^ r, so runs parallelize deterministically.
struct McConfig {
    std::vector<double> gamma1_list{0.6, 0.8};
    std::vector<double> p_list{0.7, 0.9};
    std::vector<std::size_t> n_list{100, 200, 500, 1000};
    std::size_t replicates = 1000;
    double delta = 0.25;
    double alpha = 2.0; // the grid study runs the closed-form alpha = 2 chain
    std::uint64_t seed = 1;
    SelectionConfig selection{};
    /// false: abias = |mean(estimates) - truth|; true: mean |estimate - truth|.
    bool abias_mean_deviation = false;
};

struct McCell {
    double gamma1 = 0.0;
    double p = 0.0;
    std::size_t n_pairs = 0;
    std::size_t replicates = 0;

    double mean_n = 0.0;
    double mean_upsilon_star = 0.0;  // selected for the rho estimator
    double mean_k_star_gamma1 = 0.0; // selected for the bias-reduced estimator
    double mean_k_star_bmn = 0.0;    // selected for the weighted-Hill estimator
    double abias_rho = 0.0, rmse_rho = 0.0;
    double abias_gamma1 = 0.0, rmse_gamma1 = 0.0;
    double abias_bmn = 0.0, rmse_bmn = 0.0;
    std::size_t not_admissible = 0; // fallback rho used in the u_n-based chain
    std::size_t failures = 0;
};

struct McReport {
    McConfig config;
    std::vector<McCell> cells;
};

/// Replicates one grid cell. gamma2 is derived from (gamma1, p). Replicate
/// failures (empty samples, degenerate statistics) are recorded; the cell
/// itself throws only when more than half the replicates fail.
McCell run_cell(double gamma1, double p, std::size_t n_pairs, const McConfig& cfg);

/// Maps run_cell over the grid; cells are independent and the output is
/// deterministic given cfg.seed regardless of the worker count.
McReport run_grid(const McConfig& cfg);

/// One row per cell:
/// gamma1,p,N,meanN,kstar,upsilonstar,abias_rho,rmse_rho,abias_g1,rmse_g1,
/// abias_bmn,rmse_bmn,notadmissible,failures  (kstar is the bias-reduced
/// estimator's selection; the text table carries both k*).
void write_report_csv(const McReport& report, std::ostream& os);

/// Aligned text tables: the second-order study and the tail-index comparison.
void write_report_tables(const McReport& report, std::ostream& os);

/// Worker count: hardware concurrency capped by the TRUNCTAIL_THREADS
/// environment variable (a value of 0 or 1 disables threading).
std::size_t worker_count();

} // namespace trunctail

#endif
