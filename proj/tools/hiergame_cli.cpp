// hiergame: command-line front end for the status-hierarchy cooperation game.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hiergame/experiments.hpp"
#include "hiergame/hierarchy.hpp"
#include "hiergame/payoffs.hpp"
#include "hiergame/simulator.hpp"

namespace {

using hiergame::exp::format_decimal;

struct Selectors {
  std::string variant = "multi";
  int n = 10;
  double fc = 0.5;
  double tau = 0.0;
};

void add_selectors(CLI::App* cmd, Selectors& s, bool with_fc = true) {
  cmd->add_option("--variant", s.variant, "multi, retry, nomem or withmem")
      ->check(CLI::IsMember({"multi", "retry", "nomem", "withmem"}));
  cmd->add_option("--n", s.n, "group size (>= 2)")->check(CLI::Range(2, 100000));
  if (with_fc) cmd->add_option("--fc", s.fc, "cooperator fraction")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--tau", s.tau, "assortativity (0 = random mixing)")->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Status-hierarchy cooperation game: analytics, simulation and sweeps"};
  app.require_subcommand(1);
  int exit_code = 0;

  // hier
  auto* hier = app.add_subcommand("hier", "hierarchicalness measures");
  hier->require_subcommand(1);
  int table_n = 5;
  auto* hier_table = hier->add_subcommand("table", "print the H_n(x) row as CSV");
  hier_table->add_option("--n", table_n, "group size")->required()->check(CLI::Range(2, 100000));
  std::string edges_path;
  auto* hier_grc = hier->add_subcommand("grc", "general reaching centrality of an edge list");
  hier_grc->add_option("--edges", edges_path, "edge list file ('nodes N' then 'from to' lines)")
      ->required()
      ->check(CLI::ExistingFile);

  hier_table->callback([&] {
    std::cout << "x,h\n";
    for (int x = 0; x <= table_n; ++x)
      std::cout << x << ',' << format_decimal(hiergame::h_nx(table_n, x)) << '\n';
  });
  hier_grc->callback([&] {
    std::ifstream in(edges_path);
    const auto graph = hiergame::read_edge_list(in);
    std::cout << format_decimal(hiergame::general_reaching_centrality(graph)) << '\n';
  });

  // analytic
  Selectors analytic_sel;
  double cost = 0.2;
  double benefit = 1.0;
  auto* analytic = app.add_subcommand("analytic", "expected payoffs W(C), W(D)");
  add_selectors(analytic, analytic_sel);
  analytic->add_option("--c", cost, "cost / endowment")->check(CLI::PositiveNumber);
  analytic->add_option("--b", benefit, "benefit")->check(CLI::PositiveNumber);
  analytic->callback([&] {
    const hiergame::GameParams p{analytic_sel.n, analytic_sel.fc, cost, benefit, analytic_sel.tau};
    const auto v = hiergame::parse_variant(analytic_sel.variant);
    std::cout << "W_C,W_D\n"
              << format_decimal(hiergame::wc(p, v)) << ',' << format_decimal(hiergame::wd(p, v))
              << '\n';
  });

  // equilibrium
  Selectors eq_sel;
  std::vector<double> eq_fcs;
  auto* equilibrium = app.add_subcommand("equilibrium", "c/b at which W(C) = W(D)");
  add_selectors(equilibrium, eq_sel, false);
  equilibrium->add_option("--fc", eq_fcs, "cooperator fraction(s); default 0.1..0.9 in 0.05 steps")
      ->check(CLI::Range(0.0, 1.0));
  equilibrium->callback([&] {
    const auto v = hiergame::parse_variant(eq_sel.variant);
    const auto fcs = eq_fcs.empty() ? hiergame::exp::linear_grid(17, 0.1, 0.9) : eq_fcs;
    std::cout << "fc,cb_star\n";
    for (double fc : fcs) {
      std::cout << format_decimal(fc) << ','
                << format_decimal(hiergame::equilibrium_cb({eq_sel.n, fc, eq_sel.tau}, v)) << '\n';
    }
  });

  // stability
  int n_min = 2;
  int n_max = 20;
  double stab_tau = 0.0;
  std::string stab_variant = "multi";
  auto* stability = app.add_subcommand("stability", "stability region of full cooperation");
  stability->add_option("--n-min", n_min)->check(CLI::Range(2, 100000));
  stability->add_option("--n-max", n_max)->check(CLI::Range(2, 100000));
  stability->add_option("--tau", stab_tau)->check(CLI::Range(0.0, 1.0));
  stability->add_option("--variant", stab_variant)
      ->check(CLI::IsMember({"multi", "retry", "nomem", "withmem"}));
  stability->callback([&] {
    const auto v = hiergame::parse_variant(stab_variant);
    std::cout << "n,lower,upper\n";
    for (int n = n_min; n <= n_max; ++n) {
      const auto r = hiergame::stability_region(n, stab_tau, v);
      std::cout << n << ',' << format_decimal(r.lower) << ',' << format_decimal(r.upper) << '\n';
    }
  });

  // simulate
  Selectors sim_sel;
  std::uint64_t reps = 100000;
  std::uint64_t seed = 1;
  std::string role = "both";
  double sim_c = 0.2;
  double sim_b = 1.0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of focal payoffs");
  add_selectors(simulate, sim_sel);
  simulate->add_option("--reps", reps)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed);
  simulate->add_option("--role", role)->check(CLI::IsMember({"C", "D", "both"}));
  simulate->add_option("--c", sim_c, "cost used for the mean column")->check(CLI::PositiveNumber);
  simulate->add_option("--b", sim_b, "benefit used for the mean column")->check(CLI::PositiveNumber);
  simulate->callback([&] {
    const hiergame::GameParams p{sim_sel.n, sim_sel.fc, sim_c, sim_b, sim_sel.tau};
    const auto v = hiergame::parse_variant(sim_sel.variant);
    std::vector<hiergame::Role> roles;
    if (role != "D") roles.push_back(hiergame::Role::Cooperator);
    if (role != "C") roles.push_back(hiergame::Role::Defector);
    std::cout << "role,mean,se,a_hat,b_hat,reps,seed\n";
    for (auto r : roles) {
      const auto est = hiergame::sim::estimate_payoff(p, v, r, reps, seed);
      std::cout << hiergame::to_string(r) << ',' << format_decimal(est.payoff.mean) << ','
                << format_decimal(est.payoff.std_error) << ','
                << format_decimal(est.coefficients.a_hat) << ','
                << format_decimal(est.coefficients.b_hat) << ',' << est.payoff.replications << ','
                << est.payoff.master_seed << '\n';
    }
  });

  // evolve
  std::string evo_variant = "multi";
  int evo_n = 10;
  double evo_cb = 0.15;
  double evo_f0 = 0.5;
  double evo_tau = 0.0;
  int generations = 50;
  auto* evolve = app.add_subcommand("evolve", "iterate the replicator map on analytic payoffs");
  evolve->add_option("--variant", evo_variant)
      ->check(CLI::IsMember({"multi", "retry", "nomem", "withmem"}));
  evolve->add_option("--n", evo_n)->check(CLI::Range(2, 100000));
  evolve->add_option("--cb", evo_cb, "cost-to-benefit ratio (b = 1)")->check(CLI::PositiveNumber);
  evolve->add_option("--f0", evo_f0, "initial cooperator fraction")->check(CLI::Range(0.0, 1.0));
  evolve->add_option("--tau", evo_tau)->check(CLI::Range(0.0, 1.0));
  evolve->add_option("--generations", generations)->check(CLI::NonNegativeNumber);
  evolve->callback([&] {
    const auto v = hiergame::parse_variant(evo_variant);
    double f = evo_f0;
    std::cout << "t,f_c\n" << 0 << ',' << format_decimal(f) << '\n';
    for (int t = 1; t <= generations; ++t) {
      const hiergame::GameParams p{evo_n, f, evo_cb, 1.0, evo_tau};
      f = hiergame::sim::replicator_step(f, hiergame::wc(p, v), hiergame::wd(p, v));
      std::cout << t << ',' << format_decimal(f) << '\n';
    }
  });

  // sweep
  std::string sweep_config;
  auto* sweep = app.add_subcommand("sweep", "config-driven parameter sweep");
  sweep->add_option("--config", sweep_config)->required()->check(CLI::ExistingFile);
  sweep->callback([&] {
    const auto spec = hiergame::exp::load_sweep_config(sweep_config);
    const auto rows = hiergame::exp::run_sweep(spec);
    if (spec.output.empty()) {
      hiergame::exp::write_sweep_csv(std::cout, rows);
      return;
    }
    std::ofstream out(spec.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + spec.output);
    hiergame::exp::write_sweep_csv(out, rows);
  });

  // validate
  std::string validate_config;
  double z = 3.5;
  double pass_rate = 0.95;
  auto* validate = app.add_subcommand("validate", "simulation against analytic coefficients");
  validate->add_option("--config", validate_config)->required()->check(CLI::ExistingFile);
  validate->add_option("--z", z, "z-score threshold")->check(CLI::PositiveNumber);
  validate->add_option("--pass-rate", pass_rate)->check(CLI::Range(0.0, 1.0));
  validate->callback([&] {
    const auto spec = hiergame::exp::load_sweep_config(validate_config);
    const auto report = hiergame::exp::validate(spec, z, pass_rate);
    hiergame::exp::write_validation_csv(std::cout, report);
    std::cerr << (report.pass() ? "PASS " : "FAIL ") << report.passed() << '/'
              << report.cells.size() << " cells within " << z << " SE (rate "
              << format_decimal(report.pass_rate()) << ", required "
              << format_decimal(pass_rate) << ")\n";
    exit_code = report.pass() ? 0 : 1;
  });

  // figures
  std::string preset;
  std::string out_dir = "figures";
  hiergame::exp::FigureOptions fig_opt;
  auto* figures = app.add_subcommand("figures", "write figure datasets as CSV");
  figures->add_option("preset", preset, "fig1..fig11 or all")->required();
  figures->add_option("--out", out_dir, "output directory");
  figures->add_option("--reps", fig_opt.replications)->check(CLI::PositiveNumber);
  figures->add_option("--seed", fig_opt.master_seed);
  figures->callback([&] {
    for (const auto& path : hiergame::exp::write_figures(preset, out_dir, fig_opt))
      std::cout << path.string() << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
