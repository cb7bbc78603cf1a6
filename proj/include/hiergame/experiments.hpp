#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiergame/payoffs.hpp"

namespace hiergame::exp {

/// First line of every CSV file this library writes.
inline constexpr std::string_view kSchemaVersion = "hiergame-csv/1";

/// 12 significant digits; empty for a missing value.
std::string format_decimal(double value);
std::string format_decimal(const std::optional<double>& value);

/// Evenly spaced grid of `count` points on [lo, hi]; a single point is `lo`.
std::vector<double> linear_grid(int count, double lo, double hi);

/// Seed of one grid cell, derived from the master seed and the cell's
/// parameters so it does not depend on grid order.
std::uint64_t cell_seed(std::uint64_t master_seed, const MixingParams& mix, ModelVariant variant);

struct SweepSpec {
  ModelVariant variant = ModelVariant::MultiLeader;
  std::vector<int> ns{10};
  int fc_count = 17;
  double fc_min = 0.1;
  double fc_max = 0.9;
  std::vector<double> taus{0.0};
  std::uint64_t replications = 100000;
  std::uint64_t master_seed = 1;
  std::string output;     // empty: stdout
  bool simulate = true;   // false: analytic columns only

  std::vector<double> fc_grid() const { return linear_grid(fc_count, fc_min, fc_max); }
  void validate() const;
};

/// Flat `key = value` text; lists are comma separated, `#` starts a comment.
/// Keys: variant, n, fc_count, fc_min, fc_max, tau, reps, seed, output,
/// simulate. Integer lists also accept `lo..hi` ranges.
SweepSpec parse_sweep_config(std::istream& in);
SweepSpec load_sweep_config(const std::filesystem::path& path);

struct SweepRow {
  ModelVariant variant;
  int n;
  double tau;
  double fc;
  std::optional<double> cb_analytic;
  std::optional<double> cb_sim;
  std::optional<double> cb_se;
  PayoffCoefficients cooperator;
  PayoffCoefficients defector;
  StabilityRegion bounds;
};

/// One row per (n, tau, fc) cell in that nesting order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

using AnalyticCoefficients =
    std::function<PayoffCoefficients(const MixingParams&, ModelVariant, Role)>;

struct ValidationCell {
  ModelVariant variant;
  int n;
  double tau;
  double fc;
  Role role;
  char coefficient;  // 'a' (of c) or 'b' (of b)
  double analytic;
  double simulated;
  double std_error;
  std::optional<double> z;  // (simulated - analytic) / SE when SE > 0
  bool pass;
};

struct ValidationReport {
  std::vector<ValidationCell> cells;
  double z_threshold = 3.5;
  double min_pass_rate = 0.95;

  std::size_t passed() const;
  double pass_rate() const;
  bool pass() const { return pass_rate() >= min_pass_rate; }
};

/// Simulated coefficient means against analytic coefficients for every
/// cell of the sweep. A zero-SE cell passes only on an exact (1e-12) match.
ValidationReport validate(const SweepSpec& spec, double z_threshold, double min_pass_rate,
                          unsigned threads = 0, const AnalyticCoefficients& analytic = {});
void write_validation_csv(std::ostream& out, const ValidationReport& report);

/// Originally published single-leader payoffs, kept only as the historical
/// baseline that the fig10 and fig11 presets compare against. A group
/// ends without a leader only if every cooperator signals low on the very
/// first round.
namespace historical {
double mark_original_wc(int n, double fc, double c, double b);
double mark_original_wd(int n, double fc, double c, double b);
}  // namespace historical

struct FigureOptions {
  std::uint64_t replications = 100000;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;
};

/// fig1 .. fig11.
const std::vector<std::string>& figure_presets();
/// Full CSV text of one preset, schema line included.
std::string figure_csv(std::string_view preset, const FigureOptions& options);
/// Writes `<preset>.csv` into `out_dir` (or every preset for "all");
/// returns the written paths.
std::vector<std::filesystem::path> write_figures(std::string_view preset,
                                                 const std::filesystem::path& out_dir,
                                                 const FigureOptions& options);

}  // namespace hiergame::exp
