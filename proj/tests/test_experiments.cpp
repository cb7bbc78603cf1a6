#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hiergame/experiments.hpp"
#include "hiergame/payoffs.hpp"

using namespace hiergame;
using namespace hiergame::exp;

namespace {

std::size_t data_rows(const std::string& csv) {
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n' ? 1 : 0;
  return lines - 2;  // schema line and header
}

std::string first_line(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

std::string second_line(const std::string& csv) {
  const auto start = csv.find('\n') + 1;
  return csv.substr(start, csv.find('\n', start) - start);
}

SweepSpec parse(const std::string& text) {
  std::istringstream in(text);
  return parse_sweep_config(in);
}

}  // namespace

TEST_CASE("format_decimal and grids") {
  CHECK(format_decimal(0.5) == "0.5");
  CHECK(format_decimal(1.0 / 3.0) == "0.333333333333");
  CHECK(format_decimal(std::optional<double>{}).empty());
  const auto g = linear_grid(17, 0.1, 0.9);
  REQUIRE(g.size() == 17);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(g[8] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(linear_grid(1, 0.3, 0.9) == std::vector<double>{0.3});
  CHECK_THROWS_AS(linear_grid(0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("cell seeds depend on parameters, not order") {
  const MixingParams a{4, 0.3, 0.0};
  const MixingParams b{4, 0.35, 0.0};
  CHECK(cell_seed(1, a, ModelVariant::MultiLeader) == cell_seed(1, a, ModelVariant::MultiLeader));
  CHECK(cell_seed(1, a, ModelVariant::MultiLeader) != cell_seed(1, b, ModelVariant::MultiLeader));
  CHECK(cell_seed(1, a, ModelVariant::MultiLeader) != cell_seed(2, a, ModelVariant::MultiLeader));
  CHECK(cell_seed(1, a, ModelVariant::MultiLeader) != cell_seed(1, a, ModelVariant::MarkRetry));
}

TEST_CASE("sweep config parsing") {
  const auto spec = parse(
      "# comment\n"
      "variant = retry\n"
      "n = 2, 4..6\n"
      "fc_count = 5\n"
      "fc_min = 0.2   # trailing\n"
      "fc_max = 0.6\n"
      "tau = 0, 0.5\n"
      "reps = 1000\n"
      "seed = 42\n"
      "output = out.csv\n"
      "simulate = false\n");
  CHECK(spec.variant == ModelVariant::MarkRetry);
  CHECK(spec.ns == std::vector<int>{2, 4, 5, 6});
  CHECK(spec.fc_grid().size() == 5);
  CHECK(spec.taus == std::vector<double>{0.0, 0.5});
  CHECK(spec.replications == 1000);
  CHECK(spec.master_seed == 42);
  CHECK(spec.output == "out.csv");
  CHECK_FALSE(spec.simulate);

  CHECK_THROWS_AS(parse("colour = red\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("n 4\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("n = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("n = 6..4\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("tau = 1.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("reps = many\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("simulate = maybe\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("fc_min = 0.8\nfc_max = 0.2\n"), std::invalid_argument);
  CHECK_THROWS_AS(load_sweep_config("/nonexistent/sweep.cfg"), std::runtime_error);
}

TEST_CASE("one-cell sweep at n = 2") {
  SweepSpec spec;
  spec.ns = {2};
  spec.fc_count = 1;
  spec.fc_min = spec.fc_max = 0.5;
  spec.replications = 20000;
  const auto rows = run_sweep(spec, 1);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].cb_analytic);
  CHECK(*rows[0].cb_analytic == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(rows[0].cb_sim);
  REQUIRE(rows[0].cb_se);
  CHECK(std::abs(*rows[0].cb_sim - 0.5) <= 4.0 * *rows[0].cb_se);
  CHECK(rows[0].bounds.lower == 0.5);
  CHECK(rows[0].bounds.upper == doctest::Approx(0.75).epsilon(1e-12));

  std::ostringstream out;
  write_sweep_csv(out, rows);
  CHECK(first_line(out.str()) == "# hiergame-csv/1 sweep");
  CHECK(data_rows(out.str()) == 1);
}

TEST_CASE("analytic-only sweep ordering") {
  const auto spec = parse("n = 3, 5\ntau = 0, 1\nfc_count = 3\nsimulate = false\n");
  const auto rows = run_sweep(spec, 2);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].n == 3);
  CHECK(rows[0].tau == 0.0);
  CHECK(rows[3].tau == 1.0);
  CHECK(rows[6].n == 5);
  for (const auto& r : rows) CHECK_FALSE(r.cb_sim.has_value());
}

TEST_CASE("validation report") {
  SweepSpec spec;
  spec.ns = {3, 5};
  spec.fc_count = 3;
  spec.replications = 20000;
  const auto good = validate(spec, 3.5, 0.95, 2);
  CHECK(good.cells.size() == 2 * 3 * 4);
  CHECK(good.pass());

  // a corrupted analytic model must be caught
  const auto bad = validate(spec, 3.5, 0.95, 2,
                            [](const MixingParams& mix, ModelVariant v, Role role) {
                              auto coef = payoff_coefficients(mix, v, role);
                              if (role == Role::Cooperator) coef.a += 0.05;
                              return coef;
                            });
  CHECK_FALSE(bad.pass());

  std::ostringstream out;
  write_validation_csv(out, good);
  CHECK(first_line(out.str()) == "# hiergame-csv/1 validation");
  CHECK(data_rows(out.str()) == good.cells.size());
  CHECK_THROWS_AS(validate(spec, 0.0, 0.95, 1), std::invalid_argument);
}

TEST_CASE("historical single-leader baseline equals the with-memory variant") {
  for (int n = 2; n <= 12; ++n) {
    for (double f : linear_grid(11, 0.0, 1.0)) {
      const GameParams p{n, f, 0.2, 1.0, 0.0};
      CHECK(std::abs(historical::mark_original_wc(n, f, 0.2, 1.0) -
                     wc(p, ModelVariant::MarkWithMemory)) <= 1e-12);
      CHECK(std::abs(historical::mark_original_wd(n, f, 0.2, 1.0) -
                     wd(p, ModelVariant::MarkWithMemory)) <= 1e-12);
    }
  }
}

TEST_CASE("figure presets") {
  FigureOptions opts;
  opts.replications = 200;
  opts.threads = 2;
  CHECK(figure_presets().size() == 11);

  const auto fig1 = figure_csv("fig1", opts);
  CHECK(first_line(fig1) == "# hiergame-csv/1 fig1");
  CHECK(second_line(fig1) == "n,x,h");
  CHECK(data_rows(fig1) == 6);

  const auto fig2 = figure_csv("fig2", opts);
  CHECK(data_rows(fig2) == 75);

  const auto fig3 = figure_csv("fig3", opts);
  CHECK(second_line(fig3) == "variant,n,tau,fc,cb_analytic,cb_sim,se");
  CHECK(data_rows(fig3) == 5 * 17);

  const auto fig4 = figure_csv("fig4", opts);
  CHECK(second_line(fig4) == "n,tau,lower,upper_ours,upper_mark");
  CHECK(data_rows(fig4) == 19);
  CHECK(data_rows(figure_csv("fig5", opts)) == 49);
  CHECK(data_rows(figure_csv("fig6", opts)) == 3 * 19);
  CHECK(data_rows(figure_csv("fig7", opts)) == 5 * 17);
  CHECK(data_rows(figure_csv("fig8", opts)) == 4 * 5 * 19);
  CHECK(data_rows(figure_csv("fig9", opts)) == 6 * 18);

  const auto fig10 = figure_csv("fig10", opts);
  CHECK(second_line(fig10) ==
        "model,n,fc,wc_or_wd_sim,analytic_revised,analytic_mark_original");
  CHECK(data_rows(fig10) == 9 * 21);
  CHECK(data_rows(figure_csv("fig11", opts)) == 9 * 21);

  CHECK_THROWS_AS(figure_csv("fig12", opts), std::invalid_argument);
}

TEST_CASE("figure output is reproducible and thread-count independent") {
  FigureOptions one;
  one.replications = 300;
  one.master_seed = 9;
  one.threads = 1;
  FigureOptions many = one;
  many.threads = 4;
  CHECK(figure_csv("fig7", one) == figure_csv("fig7", many));
  CHECK(figure_csv("fig10", one) == figure_csv("fig10", many));
  FigureOptions other = one;
  other.master_seed = 10;
  CHECK(figure_csv("fig10", one) != figure_csv("fig10", other));
}

TEST_CASE("write_figures writes one file per preset") {
  const auto dir = std::filesystem::temp_directory_path() / "hiergame_test_figures";
  std::filesystem::remove_all(dir);
  FigureOptions opts;
  opts.replications = 50;
  const auto paths = write_figures("fig1", dir, opts);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].filename() == "fig1.csv");
  std::ifstream in(paths[0]);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# hiergame-csv/1 fig1");
  std::filesystem::remove_all(dir);
}
