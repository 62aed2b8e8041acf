// trunctail — tail-index and second-order estimation for randomly
// right-truncated heavy-tailed data.
//
// Subcommands: simulate, estimate, mc, variance. Exit codes: 0 success,
// 2 usage/flag errors, 1 computation errors.

#include "trunctail/asymptotics.hpp"
#include "trunctail/csv.hpp"
#include "trunctail/errors.hpp"
#include "trunctail/estimators.hpp"
#include "trunctail/montecarlo.hpp"
#include "trunctail/product_limit.hpp"
#include "trunctail/sampling.hpp"
#include "trunctail/second_order.hpp"
#include "trunctail/selection.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return os;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    double gamma1 = 0.0;
    double p = -1.0;
    double gamma2 = -1.0;
    double delta = 0.25;
    std::size_t n_pairs = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int run_simulate(const SimulateArgs& a, bool p_given, bool gamma2_given) {
    if (p_given && gamma2_given) {
        throw UsageError("--p and --gamma2 are mutually exclusive");
    }
    if (!p_given && !gamma2_given) {
        throw UsageError("one of --p or --gamma2 is required");
    }
    if (p_given && (!(a.p > 0.0) || !(a.p < 1.0))) {
        throw UsageError("--p must lie in (0, 1)");
    }
    const double gamma2 = p_given ? trunctail::solve_gamma2(a.gamma1, a.p) : a.gamma2;
    const trunctail::TruncationModel model(a.gamma1, gamma2, a.delta);
    const trunctail::ObservedSample sample =
        trunctail::draw_truncated_sample(model, a.n_pairs, a.seed);

    std::ostream* info = &std::cout;
    if (a.out.empty()) {
        trunctail::write_sample_csv(sample, std::cout);
        info = &std::cerr; // keep the CSV stream clean
    } else {
        auto os = open_output(a.out);
        trunctail::write_sample_csv(sample, os);
    }
    *info << "seed=" << a.seed << '\n'
          << "n=" << sample.size() << '\n'
          << "n_over_N=" << trunctail::format_double(static_cast<double>(sample.size()) /
                                                     static_cast<double>(a.n_pairs))
          << '\n'
          << "gamma2=" << trunctail::format_double(gamma2) << '\n'
          << "gamma=" << trunctail::format_double(model.gamma_star()) << '\n'
          << "rho1=" << trunctail::format_double(model.rho1()) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
    std::string input;
    std::string k_raw = "auto";
    double alpha = 2.0;
    double epsilon = 0.01;
    double fallback_rho = -1.0;
    double theta_rt = 0.3;
    std::string dump_tables;
    bool json_lines = false;
};

// Hill estimator on the Y sample (tail index gamma2 side).
double hill_on_y(const trunctail::ObservedSample& sample, std::size_t k) {
    std::vector<double> ys(sample.y);
    std::sort(ys.begin(), ys.end());
    const std::size_t n = ys.size();
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
        acc += std::log(ys[n - i]) - std::log(ys[n - 1 - k]);
    }
    return acc / static_cast<double>(k);
}

int run_estimate(const EstimateArgs& a) {
    std::ifstream is(a.input);
    if (!is) {
        throw std::runtime_error("cannot open input file: " + a.input);
    }
    const trunctail::ObservedSample sample = trunctail::read_sample_csv(is);
    const std::size_t n = sample.size();
    if (n < 4) {
        throw std::runtime_error("need at least 4 observed pairs");
    }

    trunctail::SelectionConfig sel;
    sel.epsilon = a.epsilon;
    sel.theta_rt = a.theta_rt;

    const trunctail::ProductLimitTables tables = trunctail::build_tables(sample);
    if (!a.dump_tables.empty()) {
        auto os = open_output(a.dump_tables);
        trunctail::write_tables_csv(tables, os);
    }

    std::size_t k = 0;
    if (a.k_raw == "auto") {
        trunctail::PipelineConfig pcfg;
        pcfg.epsilon = a.epsilon;
        pcfg.alpha = a.alpha;
        pcfg.fallback_rho = a.fallback_rho;
        const std::size_t un = trunctail::u_n(n, a.epsilon);
        const double rho_for_curve =
            trunctail::estimate_rho1(tables, un, a.alpha).value_or(a.fallback_rho);
        const std::vector<double> curve = trunctail::gamma1_reduced_curve(tables, rho_for_curve);
        k = trunctail::reiss_thomas_k([&curve](std::size_t i) { return curve[i]; }, n, sel);
    } else {
        try {
            const long parsed = std::stol(a.k_raw);
            if (parsed < 1) {
                throw std::invalid_argument("k");
            }
            k = static_cast<std::size_t>(parsed);
        } catch (const std::exception&) {
            throw UsageError("--k expects 'auto' or a positive integer");
        }
        if (k > n - 1) {
            std::ostringstream oss;
            oss << "--k " << k << " out of range: sample has n = " << n
                << " observed pairs (k <= " << n - 1 << ")";
            throw UsageError(oss.str());
        }
    }

    trunctail::PipelineConfig pcfg;
    pcfg.epsilon = a.epsilon;
    pcfg.alpha = a.alpha;
    pcfg.fallback_rho = a.fallback_rho;
    const trunctail::TailEstimates est = trunctail::full_pipeline(sample, k, pcfg);

    // Plug-in standard errors are available only when the estimated tail of Y
    // dominates the estimated tail of X (the pole of the variance formulas).
    const double gamma2_hat = hill_on_y(sample, k);
    std::optional<double> se_bmn;
    std::optional<double> se_gamma1;
    if (est.gamma_bmn > 0.0 && est.gamma_bmn < gamma2_hat) {
        const trunctail::SecondOrderContext ctx(est.gamma_bmn, gamma2_hat, est.rho1_used,
                                                est.rho1_used, est.alpha_used);
        const double sqrt_k = std::sqrt(static_cast<double>(k));
        se_bmn = std::sqrt(trunctail::sigma_bmn_sq(ctx)) / sqrt_k;
        se_gamma1 = std::sqrt(trunctail::sigma_star_sq(ctx)) / sqrt_k;
    }

    if (a.json_lines) {
        nlohmann::json j;
        j["k"] = est.k_used;
        j["upsilon"] = est.upsilon_used;
        j["alpha"] = est.alpha_used;
        j["gamma_bmn"] = est.gamma_bmn;
        j["s_stat"] = est.rho1.s_stat;
        j["rho1_admissible"] = est.rho1.admissible();
        if (est.rho1.admissible()) {
            j["rho1"] = *est.rho1.rho;
        }
        j["rho1_used"] = est.rho1_used;
        j["a0"] = est.a0;
        j["gamma1"] = est.gamma1;
        j["gamma2_hill"] = gamma2_hat;
        if (se_bmn) {
            j["se_gamma_bmn"] = *se_bmn;
            j["se_gamma1"] = *se_gamma1;
        }
        std::cout << j.dump() << '\n';
        return kExitOk;
    }

    using trunctail::format_double;
    std::cout << "k=" << est.k_used << '\n'
              << "upsilon=" << est.upsilon_used << '\n'
              << "gamma_bmn=" << format_double(est.gamma_bmn) << '\n';
    if (est.rho1.admissible()) {
        std::cout << "rho1=" << format_double(*est.rho1.rho) << '\n';
    } else {
        std::cout << "rho1=not_admissible(S=" << format_double(est.rho1.s_stat)
                  << ") fallback=" << format_double(est.rho1_used) << '\n';
    }
    std::cout << "a0=" << format_double(est.a0) << '\n'
              << "gamma1=" << format_double(est.gamma1) << '\n'
              << "gamma2_hill=" << format_double(gamma2_hat) << '\n';
    if (se_bmn) {
        std::cout << "se_gamma_bmn=" << format_double(*se_bmn) << '\n'
                  << "se_gamma1=" << format_double(*se_gamma1) << '\n';
    } else {
        std::cout << "se_gamma_bmn=unavailable(gamma1_hat >= gamma2_hat)\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------- mc

struct McArgs {
    std::vector<double> gamma1_list;
    std::vector<double> p_list;
    std::vector<std::size_t> n_list;
    std::size_t replicates = 1000;
    double delta = 0.25;
    double epsilon = 0.01;
    double theta_rt = 0.3;
    std::uint64_t seed = 1;
    std::string out;
    std::string config_path;
    bool abias_mean_deviation = false;
};

trunctail::McConfig make_mc_config(const McArgs& a) {
    trunctail::McConfig cfg;
    if (!a.config_path.empty()) {
        std::ifstream is(a.config_path);
        if (!is) {
            throw std::runtime_error("cannot open config file: " + a.config_path);
        }
        nlohmann::json j;
        is >> j;
        if (j.contains("gamma1")) cfg.gamma1_list = j["gamma1"].get<std::vector<double>>();
        if (j.contains("p")) cfg.p_list = j["p"].get<std::vector<double>>();
        if (j.contains("N")) cfg.n_list = j["N"].get<std::vector<std::size_t>>();
        if (j.contains("replicates")) cfg.replicates = j["replicates"].get<std::size_t>();
        if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("epsilon")) cfg.selection.epsilon = j["epsilon"].get<double>();
        if (j.contains("theta_rt")) cfg.selection.theta_rt = j["theta_rt"].get<double>();
        if (j.contains("abias_mean_deviation"))
            cfg.abias_mean_deviation = j["abias_mean_deviation"].get<bool>();
    }
    if (!a.gamma1_list.empty()) cfg.gamma1_list = a.gamma1_list;
    if (!a.p_list.empty()) cfg.p_list = a.p_list;
    if (!a.n_list.empty()) cfg.n_list = a.n_list;
    cfg.replicates = a.replicates;
    cfg.delta = a.delta;
    cfg.seed = a.seed;
    cfg.selection.epsilon = a.epsilon;
    cfg.selection.theta_rt = a.theta_rt;
    cfg.abias_mean_deviation = a.abias_mean_deviation;
    return cfg;
}

int run_mc(const McArgs& a) {
    const trunctail::McConfig cfg = make_mc_config(a);
    const trunctail::McReport report = trunctail::run_grid(cfg);
    std::cout << "seed=" << cfg.seed << '\n';
    if (a.out.empty()) {
        trunctail::write_report_csv(report, std::cout);
        trunctail::write_report_tables(report, std::cout);
    } else {
        auto csv = open_output(a.out + ".csv");
        trunctail::write_report_csv(report, csv);
        auto txt = open_output(a.out + ".txt");
        trunctail::write_report_tables(report, txt);
        std::cout << "wrote " << a.out << ".csv and " << a.out << ".txt\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- variance

struct VarianceArgs {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double rho1 = 0.0;
    double beta1 = 0.0;
    double alpha = 2.0;
    bool csv = false;
};

int run_variance(const VarianceArgs& a) {
    if (!(a.gamma1 < a.gamma2)) {
        std::ostringstream oss;
        oss << "gamma1 = " << a.gamma1 << " must be < gamma2 = " << a.gamma2
            << ": the asymptotic variances have a pole at gamma1 = gamma2";
        throw std::runtime_error(oss.str());
    }
    const trunctail::SecondOrderContext ctx(a.gamma1, a.gamma2, a.rho1, a.beta1, a.alpha);
    const trunctail::ConstantBundle k = trunctail::constants(ctx);
    const double sigma2 = trunctail::sigma_bmn_sq(ctx);
    const double sigma_a2 = trunctail::sigma_alpha_sq(ctx);
    const double sigma_s2 = trunctail::sigma_star_sq(ctx);

    using trunctail::format_double;
    const std::pair<const char*, double> rows[] = {
        {"gamma", ctx.gamma_star()}, {"m2", k.m2},       {"tau1", k.tau1},
        {"tau2", k.tau2},            {"tau3", k.tau3},   {"tau4", k.tau4},
        {"tau5", k.tau5},            {"tau6", k.tau6},   {"eta1", k.eta1},
        {"eta2", k.eta2},            {"xi", k.xi},       {"mu", k.mu},
        {"sigma_sq", sigma2},        {"sigma_alpha_sq", sigma_a2},
        {"sigma_star_sq", sigma_s2},
    };
    if (a.csv) {
        std::cout << "name,value\n";
        for (const auto& [name, value] : rows) {
            std::cout << name << ',' << format_double(value) << '\n';
        }
    } else {
        for (const auto& [name, value] : rows) {
            std::cout << name << '=' << format_double(value) << '\n';
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tail-index and second-order estimation under random right truncation"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "draw a truncated Burr-by-Burr sample");
    sim_cmd->add_option("--gamma1", sim.gamma1, "tail index of the variable of interest")
        ->required()
        ->check(CLI::PositiveNumber);
    auto* p_opt = sim_cmd->add_option("--p", sim.p, "target observed fraction in (0, 1)");
    auto* g2_opt = sim_cmd->add_option("--gamma2", sim.gamma2, "tail index of the truncation variable");
    sim_cmd->add_option("--delta", sim.delta, "Burr shape parameter")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--n-pairs", sim.n_pairs, "number of latent pairs N")->required();
    sim_cmd->add_option("--seed", sim.seed, "RNG seed (echoed to output)");
    sim_cmd->add_option("--out", sim.out, "output CSV path (stdout when omitted)");

    EstimateArgs est;
    auto* est_cmd = app.add_subcommand("estimate", "estimate from an x,y CSV file");
    est_cmd->add_option("--input", est.input, "input CSV with columns x,y")->required();
    est_cmd->add_option("--k", est.k_raw, "sample fraction: auto or a positive integer");
    est_cmd->add_option("--alpha", est.alpha, "order of the S statistic")->check(CLI::PositiveNumber);
    est_cmd->add_option("--epsilon", est.epsilon, "u_n rule exponent offset");
    est_cmd->add_option("--fallback-rho", est.fallback_rho, "rho used when S is not admissible");
    est_cmd->add_option("--theta-rt", est.theta_rt, "selection weight exponent");
    est_cmd->add_option("--dump-tables", est.dump_tables, "write product-limit tables CSV here");
    est_cmd->add_flag("--json-lines", est.json_lines, "emit one JSON object instead of key=value");

    McArgs mc;
    auto* mc_cmd = app.add_subcommand("mc", "run the Monte-Carlo grid study");
    mc_cmd->add_option("--config", mc.config_path, "JSON config file");
    mc_cmd->add_option("--gamma1", mc.gamma1_list, "gamma1 grid");
    mc_cmd->add_option("--p", mc.p_list, "observed-fraction grid");
    mc_cmd->add_option("--N", mc.n_list, "latent sample sizes");
    mc_cmd->add_option("--replicates", mc.replicates, "replicates per cell");
    mc_cmd->add_option("--delta", mc.delta, "Burr shape parameter")->check(CLI::PositiveNumber);
    mc_cmd->add_option("--epsilon", mc.epsilon, "u_n rule exponent offset");
    mc_cmd->add_option("--theta-rt", mc.theta_rt, "selection weight exponent");
    mc_cmd->add_option("--seed", mc.seed, "base seed (echoed to output)");
    mc_cmd->add_option("--out", mc.out, "output prefix (.csv and .txt)");
    mc_cmd->add_flag("--abias-mad", mc.abias_mean_deviation,
                     "report mean absolute deviation instead of |mean - truth|");

    VarianceArgs var;
    auto* var_cmd = app.add_subcommand("variance", "evaluate the asymptotic constants and variances");
    var_cmd->add_option("--gamma1", var.gamma1, "tail index of X")->required()->check(CLI::PositiveNumber);
    var_cmd->add_option("--gamma2", var.gamma2, "tail index of Y")->required()->check(CLI::PositiveNumber);
    var_cmd->add_option("--rho1", var.rho1, "second-order parameter (negative)")->required();
    var_cmd->add_option("--beta1", var.beta1, "third-order parameter (negative)")->required();
    var_cmd->add_option("--alpha", var.alpha, "order of the S statistic")->check(CLI::PositiveNumber);
    var_cmd->add_flag("--csv", var.csv, "emit name,value CSV instead of key=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sim_cmd) {
            return run_simulate(sim, p_opt->count() > 0, g2_opt->count() > 0);
        }
        if (*est_cmd) {
            return run_estimate(est);
        }
        if (*mc_cmd) {
            return run_mc(mc);
        }
        if (*var_cmd) {
            return run_variance(var);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}
