#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "anyon/a4.hpp"
#include "anyon/a8.hpp"
#include "anyon/circuit.hpp"
#include "anyon/cost.hpp"
#include "anyon/dense.hpp"
#include "anyon/groups.hpp"
#include "anyon/io.hpp"
#include "anyon/protocols.hpp"
#include "anyon/rng.hpp"
#include "anyon/tableau.hpp"

namespace {

// Raised by a subcommand whose computation finished but failed one of its
// own consistency checks; distinguishes exit code 2 from usage errors (1).
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOpts {
    std::uint64_t seed = 2026;
    int threads = 1;
    std::string out;  // empty = stdout
    std::string format = "csv";
};

void emit_table(const GlobalOpts& g, const anyon::Table& t) {
    anyon::write_text(g.out, g.format == "json" ? anyon::to_json(t)
                                                : anyon::to_csv(t));
}

void emit_scalar(const GlobalOpts& g, double v) {
    anyon::write_text(g.out, anyon::format_cell(v) + "\n");
}

void show_config_text() {
    std::puts(
        "option      default    environment      applies to\n"
        "--seed      2026       ANYON_SEED       mc-a8, simulate\n"
        "--threads   1          ANYON_THREADS    mc-a8\n"
        "--out       (stdout)   ANYON_OUT        table/scalar subcommands\n"
        "--format    csv        ANYON_FORMAT     table subcommands (csv|json)\n"
        "--eps0-a4   0.1        ANYON_EPS0_A4    cost\n"
        "--eps0-a8   0.1        ANYON_EPS0_A8    cost\n"
        "\n"
        "precedence: command-line flag > environment variable > default");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Ising-anyon toolkit: purification and distillation flows, protocol\n"
        "verification, Monte-Carlo yields, and elementary-operation budgets.\n"
        "Exit codes: 0 success, 1 usage error, 2 numerical-check failure."};
    app.require_subcommand(0, 1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed for sampling subcommands")
        ->envname("ANYON_SEED")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "Monte-Carlo worker threads")
        ->envname("ANYON_THREADS")
        ->capture_default_str();
    app.add_option("--out", g.out, "output path; empty or '-' means stdout")
        ->envname("ANYON_OUT");
    app.add_option("--format", g.format, "table output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("ANYON_FORMAT")
        ->capture_default_str();
    app.add_flag_callback(
        "--show-config",
        [] {
            show_config_text();
            throw CLI::Success{};
        },
        "print the configuration defaults and exit");

    // --- flow-a8 -----------------------------------------------------------
    auto* flow8 = app.add_subcommand(
        "flow-a8", "tabulate one full purification round: eps, eps_out, Z");
    flow8->fallthrough();
    double f8_min = 0.01, f8_max = 0.38;
    int f8_steps = 25;
    flow8->add_option("--eps-min", f8_min, "grid start")->capture_default_str();
    flow8->add_option("--eps-max", f8_max, "grid end")->capture_default_str();
    flow8->add_option("--steps", f8_steps, "grid points")->capture_default_str();
    flow8->callback([&] {
        if (!(f8_min > 0) || !(f8_max < 0.5) || f8_max < f8_min || f8_steps < 1)
            throw CLI::ValidationError("flow-a8: need 0 < eps-min <= eps-max < 0.5 and steps >= 1");
        anyon::Table t({"eps", "eps_out", "Z"});
        for (int i = 0; i < f8_steps; ++i) {
            double eps = f8_steps == 1 ? f8_min
                                       : f8_min + (f8_max - f8_min) * i / (f8_steps - 1);
            anyon::FlowPoint fp = anyon::full_round_flow(eps);
            t.add_row(eps, fp.eps_out, fp.acceptance);
        }
        emit_table(g, t);
    });

    // --- threshold-a8 / threshold-a4 ----------------------------------------
    app.add_subcommand("threshold-a8",
                       "print the purification threshold (fixed point of the round map)")
        ->callback([&] { emit_scalar(g, anyon::purification_threshold()); });
    app.add_subcommand("threshold-a4",
                       "print the distillation threshold (fixed point of the level map)")
        ->callback([&] { emit_scalar(g, anyon::distillation_threshold()); });

    // --- mc-a8 ---------------------------------------------------------------
    auto* mc = app.add_subcommand(
        "mc-a8", "Monte-Carlo inventory yield: n0, k, success_prob, stderr");
    mc->fallthrough();
    double mc_eps0 = 0.1;
    int mc_k = 1;
    long long mc_n0 = 16, mc_trials = 10000;
    mc->add_option("--eps0", mc_eps0, "raw contamination")->capture_default_str();
    mc->add_option("--k", mc_k, "purification rounds")->capture_default_str();
    mc->add_option("--n0", mc_n0, "starting copies")->capture_default_str();
    mc->add_option("--trials", mc_trials, "Monte-Carlo trials")->capture_default_str();
    mc->callback([&] {
        if (!(mc_eps0 > 0) || !(mc_eps0 < 0.5) || mc_k < 1 || mc_n0 < 1 || mc_trials < 1)
            throw CLI::ValidationError("mc-a8: need 0 < eps0 < 0.5, k >= 1, n0 >= 1, trials >= 1");
        anyon::YieldEstimate y =
            anyon::monte_carlo_yield(mc_eps0, mc_k, mc_n0, mc_trials, g.seed, g.threads);
        anyon::Table t({"n0", "k", "success_prob", "stderr"});
        t.add_row(mc_n0, mc_k, y.success_prob, y.std_error);
        emit_table(g, t);
    });

    // --- flow-a4 -------------------------------------------------------------
    auto* flow4 = app.add_subcommand(
        "flow-a4", "tabulate one distillation level: eps, eps_out, p_s");
    flow4->fallthrough();
    std::vector<double> f4_eps;
    flow4->add_option("--eps", f4_eps, "contamination values")->expected(-1)->required();
    flow4->callback([&] {
        anyon::Table t({"eps", "eps_out", "p_s"});
        for (double eps : f4_eps) {
            if (!(eps > 0) || !(eps < 0.5))
                throw CLI::ValidationError("flow-a4: each eps must lie in (0, 0.5)");
            anyon::DistillStep s = anyon::distill_step(eps);
            t.add_row(eps, s.eps_out, s.acceptance);
        }
        emit_table(g, t);
    });

    // --- protocols-verify ------------------------------------------------------
    auto* pv = app.add_subcommand(
        "protocols-verify",
        "replay the gate protocols against the dense oracle and report branches");
    pv->fallthrough();
    std::string pv_which = "all", pv_report;
    pv->add_option("--protocol", pv_which, "which protocol to verify")
        ->check(CLI::IsMember({"all", "o3-o1", "o2-o1", "o1-o2", "o2-o3", "cz", "inject-t"}))
        ->capture_default_str();
    pv->add_option("--report", pv_report, "write the JSON report here (default stdout)");
    pv->callback([&] {
        std::vector<anyon::ProtocolReport> reports = anyon::verify_protocols(pv_which);
        nlohmann::json arr = nlohmann::json::array();
        bool ok = true;
        for (const anyon::ProtocolReport& r : reports) {
            nlohmann::json branches = nlohmann::json::array();
            for (const anyon::BranchStat& b : r.branches)
                branches.push_back({{"outcome", b.outcome}, {"prob", b.prob}});
            arr.push_back({{"protocol", r.name},
                           {"fidelity", r.min_fidelity},
                           {"branches", std::move(branches)}});
            bool pass = r.min_fidelity >= 1.0 - 1e-10 && r.max_prob_error <= 1e-9;
            ok = ok && pass;
            std::fprintf(stderr, "%-8s branches=%2zu fidelity=%.12f prob_dev=%.3g %s\n",
                         r.name.c_str(), r.branches.size(), r.min_fidelity,
                         r.max_prob_error, pass ? "ok" : "FAIL");
        }
        anyon::write_text(pv_report, arr.dump(2) + "\n");
        if (!ok)
            throw NumericalFailure("protocols-verify: at least one protocol failed tolerance");
    });

    // --- cost ---------------------------------------------------------------
    auto* cost = app.add_subcommand(
        "cost", "elementary-operation budget for an N-gate circuit");
    cost->fallthrough();
    double c_gates = 0, c_eps4 = 0.1, c_eps8 = 0.1;
    cost->add_option("--gates", c_gates, "circuit size N")->required();
    cost->add_option("--eps0-a4", c_eps4, "raw pi/8-ancilla contamination")
        ->envname("ANYON_EPS0_A4")
        ->capture_default_str();
    cost->add_option("--eps0-a8", c_eps8, "raw octet contamination")
        ->envname("ANYON_EPS0_A8")
        ->capture_default_str();
    cost->callback([&] {
        anyon::CostReport r = anyon::cost_model(c_gates, c_eps4, c_eps8);
        if (g.format == "json") {
            nlohmann::json levels = nlohmann::json::array();
            for (const anyon::CostLevel& l : r.levels)
                levels.push_back({{"level", l.level},
                                  {"eps_in", l.eps_in},
                                  {"eps_out", l.eps_out},
                                  {"blocks", l.blocks},
                                  {"a8_copies", l.a8_copies},
                                  {"joint_ops", l.joint_ops},
                                  {"ops", l.ops}});
            nlohmann::json j{{"n", r.n},
                             {"delta", r.delta},
                             {"depth_a4", r.depth_a4},
                             {"depth_a8", r.depth_a8},
                             {"raw_a4", r.raw_a4},
                             {"cz_gate_ops", r.cz_gate_ops},
                             {"t_gate_ops", r.t_gate_ops},
                             {"total_ops", r.total_ops},
                             {"top_share", r.top_share},
                             {"levels", std::move(levels)}};
            anyon::write_text(g.out, j.dump(2) + "\n");
        } else {
            anyon::Table t({"n", "delta", "depth_a4", "depth_a8", "raw_a4",
                            "cz_gate_ops", "t_gate_ops", "total_ops", "top_share"});
            t.add_row(r.n, r.delta, r.depth_a4, r.depth_a8, r.raw_a4,
                      r.cz_gate_ops, r.t_gate_ops, r.total_ops, r.top_share);
            emit_table(g, t);
        }
    });

    // --- orbit ---------------------------------------------------------------
    auto* orbit = app.add_subcommand(
        "orbit", "size of a state's orbit under the braid group image");
    orbit->fallthrough();
    std::string orbit_state;
    orbit->add_option("--state", orbit_state, "a8, a4, or vacuum4")
        ->check(CLI::IsMember({"a8", "a4", "vacuum4"}))
        ->required();
    orbit->callback([&] {
        anyon::DenseState s = orbit_state == "a8"   ? anyon::octet_ancilla_state()
                              : orbit_state == "a4" ? anyon::a4_state()
                                                    : anyon::DenseState::vacuum(4);
        anyon::write_text(g.out, std::to_string(anyon::braid_orbit_size(s)) + "\n");
    });

    // --- simulate --------------------------------------------------------------
    auto* sim = app.add_subcommand(
        "simulate", "run a JSON circuit on the stabilizer engine, print the outcome log");
    sim->fallthrough();
    std::string sim_path;
    sim->add_option("--circuit", sim_path, "circuit JSON file")
        ->check(CLI::ExistingFile)
        ->required();
    sim->callback([&] {
        anyon::BraidCircuit c = anyon::BraidCircuit::from_json_file(sim_path);
        anyon::StabilizerTableau st = anyon::StabilizerTableau::vacuum(c.n_modes);
        anyon::SplitMix64 rng(g.seed);
        anyon::RunResult run = anyon::run_circuit(c, st, rng);
        anyon::write_text(g.out, anyon::outcome_log(run.outcomes));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NumericalFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
