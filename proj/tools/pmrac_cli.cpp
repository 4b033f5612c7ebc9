#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmrac/certifier.hpp"
#include "pmrac/classical.hpp"
#include "pmrac/optimizer.hpp"
#include "pmrac/strategy_io.hpp"

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;

void print_value(const char* label, double v) {
    std::cout << label << std::setprecision(10) << v << "\n";
}

int cmd_classical(int n, int m, bool parallel) {
    using namespace pmrac::classical;
    const auto score = enumerate_bound(n, m, parallel ? Execution::Parallel : Execution::Serial);
    std::cout << score.to_fraction() << " = " << std::setprecision(10) << score.value() << "\n";
    return 0;
}

int cmd_value(const std::string& path) {
    const pmrac::Strategy s = pmrac::load_strategy_file(path);
    pmrac::validate_strategy(s);
    const double direct = pmrac::success_direct(s);
    const auto gv = pmrac::success_via_delta(s);
    print_value("S_Q (direct) = ", direct);
    print_value("S_Q (delta)  = ", gv.s_q);
    print_value("Delta        = ", gv.delta);
    std::cout << "omega        = (" << std::setprecision(10) << gv.omegas[0] << ", "
              << gv.omegas[1] << ", " << gv.omegas[2] << ")\n";
    if (std::abs(direct - gv.s_q) > 1e-10) {
        std::cerr << "error: success-probability paths disagree beyond 1e-10\n";
        return kExitCheckFailed;
    }
    return 0;
}

int cmd_optimize(std::uint64_t seed, int starts, const std::string& out,
                 const std::string& history, bool parallel, int max_rounds, double tol) {
    pmrac::SeesawConfig cfg;
    cfg.seed = seed;
    cfg.num_starts = starts;
    cfg.parallel = parallel;
    cfg.max_rounds = max_rounds;
    cfg.convergence_tol = tol;
    const auto res = pmrac::multistart(cfg);
    print_value("value = ", res.value);
    std::cout << "rounds = " << res.rounds_used << ", converged = " << (res.converged ? "yes" : "no")
              << ", best seed = " << res.seed << ", rng = " << res.rng_name << "\n";
    if (!out.empty()) pmrac::save_strategy_file(res.strategy, out);
    if (!history.empty()) {
        std::ofstream csv(history);
        if (!csv) throw std::runtime_error("cannot open " + history + " for writing");
        csv << "round,s_q\n";
        for (size_t i = 0; i < res.history.size(); ++i)
            csv << (i + 1) << "," << std::setprecision(17) << res.history[i] << "\n";
    }
    return 0;
}

int cmd_certify(const std::string& path, double tol, const std::string& json_out) {
    const pmrac::Strategy s = pmrac::load_strategy_file(path);
    pmrac::validate_strategy(s);
    const auto rep = pmrac::certify(s, tol);
    std::cout << pmrac::report_to_table(rep);
    if (!json_out.empty()) {
        std::ofstream out(json_out);
        if (!out) throw std::runtime_error("cannot open " + json_out + " for writing");
        out << pmrac::report_to_json(rep);
    }
    return rep.overall ? 0 : kExitCheckFailed;
}

int cmd_example(const std::string& out) {
    pmrac::save_strategy_file(pmrac::canonical_strategy(), out);
    std::cout << "wrote canonical strategy to " << out << "\n";
    return 0;
}

int cmd_sweep(const std::vector<double>& etas, const std::string& out, bool reoptimize,
              std::uint64_t seed) {
    for (double eta : etas)
        if (eta < 0 || eta > 1) throw CLI::ValidationError("--etas", "values must lie in [0,1]");
    std::ofstream csv(out);
    if (!csv) throw std::runtime_error("cannot open " + out + " for writing");
    csv << "eta,s_q_fixed_strategy";
    if (reoptimize) csv << ",s_q_reoptimized";
    csv << "\n";
    pmrac::Strategy s = pmrac::canonical_strategy();
    for (double eta : etas) {
        s.state = pmrac::depolarized_state(eta);
        csv << std::setprecision(12) << eta << "," << pmrac::success_direct(s);
        if (reoptimize) {
            // Re-optimize devices for the fixed noisy state: alternate Bob /
            // Alice best responses from the canonical devices.
            pmrac::Strategy r = s;
            double prev = -1, cur = pmrac::success_direct(r);
            for (int round = 0; round < 200 && std::abs(cur - prev) > 1e-12; ++round) {
                r.bob = pmrac::best_response_bob(pmrac::apply_encoding(r.state, r.alice));
                r.alice = pmrac::best_response_unitaries(r.state, r.bob);
                prev = cur;
                cur = pmrac::success_direct(r);
            }
            csv << "," << cur;
        }
        csv << "\n";
        (void)seed;
    }
    std::cout << "wrote sweep to " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3-bit variant prepare-measure RAC: values, bounds, seesaw, certification"};
    app.require_subcommand(1);

    int n = 3, m = 2;
    bool parallel = false;
    auto* classical = app.add_subcommand("classical", "exact classical n->m RAC bound");
    classical->add_option("--n", n, "input bits")->capture_default_str();
    classical->add_option("--m", m, "message bits")->capture_default_str();
    classical->add_flag("--parallel", parallel, "parallelize the encoding scan");

    std::string in_file;
    auto* value = app.add_subcommand("value", "evaluate a strategy file");
    value->add_option("--input", in_file, "strategy JSON")->required();

    std::uint64_t seed = 0;
    int starts = 20, max_rounds = 500;
    double conv_tol = 1e-12;
    std::string out_file, history_file;
    bool opt_parallel = false;
    auto* optimize = app.add_subcommand("optimize", "multistart seesaw maximization");
    optimize->add_option("--seed", seed, "base RNG seed")->capture_default_str();
    optimize->add_option("--starts", starts, "number of random starts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    optimize->add_option("--out", out_file, "write the best strategy JSON here");
    optimize->add_option("--history", history_file, "write per-round s_q CSV here");
    optimize->add_option("--rounds", max_rounds, "max seesaw rounds")->capture_default_str();
    optimize->add_option("--tol", conv_tol, "convergence tolerance")->capture_default_str();
    optimize->add_flag("--parallel", opt_parallel, "run starts concurrently");

    double cert_tol = 1e-9;
    std::string report_json;
    auto* certify = app.add_subcommand("certify", "run every self-testing check");
    certify->add_option("--input", in_file, "strategy JSON")->required();
    certify->add_option("--tol", cert_tol, "check tolerance")->capture_default_str();
    certify->add_option("--json", report_json, "write the report JSON here");

    auto* example = app.add_subcommand("example", "emit the canonical optimal strategy");
    example->add_option("--out", out_file, "output path")->required();

    std::vector<double> etas;
    std::string sweep_out;
    bool reoptimize = false;
    auto* sweep = app.add_subcommand("sweep", "depolarizing-noise sweep");
    sweep->add_option("--etas", etas, "grid values in [0,1]")->delimiter(',');
    sweep->add_option("--out", sweep_out, "output CSV")->required();
    sweep->add_flag("--reoptimize", reoptimize, "also report re-optimized devices per eta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        if (classical->parsed()) return cmd_classical(n, m, parallel);
        if (value->parsed()) return cmd_value(in_file);
        if (optimize->parsed())
            return cmd_optimize(seed, starts, out_file, history_file, opt_parallel, max_rounds,
                                conv_tol);
        if (certify->parsed()) return cmd_certify(in_file, cert_tol, report_json);
        if (example->parsed()) return cmd_example(out_file);
        if (sweep->parsed()) {
            if (etas.empty())
                for (int i = 0; i <= 20; ++i) etas.push_back(i / 20.0);
            return cmd_sweep(etas, sweep_out, reoptimize, seed);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
