#include "hiergame/experiments.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hiergame/binomial.hpp"
#include "hiergame/hierarchy.hpp"
#include "hiergame/parallel.hpp"
#include "hiergame/rng.hpp"
#include "hiergame/simulator.hpp"

namespace hiergame::exp {

std::string format_decimal(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_decimal(const std::optional<double>& value) {
  return value ? format_decimal(*value) : std::string{};
}

std::vector<double> linear_grid(int count, double lo, double hi) {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  }
  return grid;
}

std::uint64_t cell_seed(std::uint64_t master_seed, const MixingParams& mix, ModelVariant variant) {
  const auto micro = [](double v) { return static_cast<std::uint64_t>(std::llround(v * 1e9)); };
  return Rng::stream(master_seed, {static_cast<std::uint64_t>(variant),
                                   static_cast<std::uint64_t>(mix.n), micro(mix.fc),
                                   micro(mix.tau)})();
}

// ---------------------------------------------------------------------------
// Config

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("config key '" + key + "': cannot parse '" + text + "'");
  }
  return value;
}

std::vector<int> parse_int_list(const std::string& value, const std::string& key) {
  std::vector<int> out;
  for (const std::string& item : split_list(value)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number<int>(item, key));
      continue;
    }
    const int lo = parse_number<int>(trim(item.substr(0, dots)), key);
    const int hi = parse_number<int>(trim(item.substr(dots + 2)), key);
    if (hi < lo) throw std::invalid_argument("config key '" + key + "': empty range " + item);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config key '" + key + "': expected true or false");
}

}  // namespace

void SweepSpec::validate() const {
  if (ns.empty()) throw std::invalid_argument("sweep needs at least one n");
  for (int n : ns)
    if (n < 2) throw std::invalid_argument("sweep n values must be >= 2");
  if (fc_count < 1) throw std::invalid_argument("fc_count must be >= 1");
  if (!(fc_min >= 0.0 && fc_max <= 1.0 && fc_min <= fc_max)) {
    throw std::invalid_argument("fc endpoints must satisfy 0 <= fc_min <= fc_max <= 1");
  }
  if (taus.empty()) throw std::invalid_argument("sweep needs at least one tau");
  for (double t : taus)
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("tau values must lie in [0, 1]");
  if (replications < 1) throw std::invalid_argument("reps must be >= 1");
}

SweepSpec parse_sweep_config(std::istream& in) {
  SweepSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key == "variant") {
      spec.variant = parse_variant(value);
    } else if (key == "n") {
      spec.ns = parse_int_list(value, key);
    } else if (key == "fc_count") {
      spec.fc_count = parse_number<int>(value, key);
    } else if (key == "fc_min") {
      spec.fc_min = parse_number<double>(value, key);
    } else if (key == "fc_max") {
      spec.fc_max = parse_number<double>(value, key);
    } else if (key == "tau") {
      spec.taus.clear();
      for (const std::string& item : split_list(value)) spec.taus.push_back(parse_number<double>(item, key));
    } else if (key == "reps") {
      spec.replications = parse_number<std::uint64_t>(value, key);
    } else if (key == "seed") {
      spec.master_seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "output") {
      spec.output = value;
    } else if (key == "simulate") {
      spec.simulate = parse_bool(value, key);
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    }
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_sweep_config(in);
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

std::vector<MixingParams> sweep_cells(const SweepSpec& spec) {
  std::vector<MixingParams> cells;
  const std::vector<double> grid = spec.fc_grid();
  for (int n : spec.ns)
    for (double tau : spec.taus)
      for (double fc : grid) cells.push_back({n, fc, tau});
  return cells;
}

// Each cell is simulated single-threaded; cells are spread over the pool and
// stored by index, so the output order never depends on scheduling.
template <typename Row, typename Fn>
std::vector<Row> map_cells(const std::vector<MixingParams>& cells, unsigned threads, Fn&& fn) {
  std::vector<Row> rows(cells.size());
  if (threads == 0) threads = default_thread_count();
  parallel_chunks(cells.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) rows[i] = fn(cells[i]);
  });
  return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  return map_cells<SweepRow>(sweep_cells(spec), threads, [&](const MixingParams& mix) {
    SweepRow row{};
    row.variant = spec.variant;
    row.n = mix.n;
    row.tau = mix.tau;
    row.fc = mix.fc;
    row.cb_analytic = equilibrium_cb(mix, spec.variant);
    row.cooperator = payoff_coefficients(mix, spec.variant, Role::Cooperator);
    row.defector = payoff_coefficients(mix, spec.variant, Role::Defector);
    row.bounds = stability_region(mix.n, mix.tau, spec.variant);
    if (spec.simulate) {
      const auto est = sim::estimate_equilibrium(mix, spec.variant, spec.replications,
                                                 cell_seed(spec.master_seed, mix, spec.variant), 1);
      row.cb_sim = est.cb;
      if (est.cb) row.cb_se = est.std_error;
    }
    return row;
  });
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "# " << kSchemaVersion << " sweep\n";
  out << "variant,n,tau,fc,cb_analytic,cb_sim,se,a_c,b_c,a_d,b_d,lower,upper\n";
  for (const SweepRow& r : rows) {
    out << to_string(r.variant) << ',' << r.n << ',' << format_decimal(r.tau) << ','
        << format_decimal(r.fc) << ',' << format_decimal(r.cb_analytic) << ','
        << format_decimal(r.cb_sim) << ',' << format_decimal(r.cb_se) << ','
        << format_decimal(r.cooperator.a) << ',' << format_decimal(r.cooperator.bcoef) << ','
        << format_decimal(r.defector.a) << ',' << format_decimal(r.defector.bcoef) << ','
        << format_decimal(r.bounds.lower) << ',' << format_decimal(r.bounds.upper) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Validation

std::size_t ValidationReport::passed() const {
  std::size_t count = 0;
  for (const auto& cell : cells) count += cell.pass ? 1 : 0;
  return count;
}

double ValidationReport::pass_rate() const {
  if (cells.empty()) return 0.0;
  return static_cast<double>(passed()) / static_cast<double>(cells.size());
}

namespace {

ValidationCell compare(const MixingParams& mix, ModelVariant variant, Role role, char which,
                       double analytic, double simulated, double se, double z_threshold) {
  ValidationCell cell{variant, mix.n, mix.tau, mix.fc, role, which, analytic, simulated, se,
                      std::nullopt, false};
  if (se > 0.0) {
    cell.z = (simulated - analytic) / se;
    cell.pass = std::abs(*cell.z) <= z_threshold;
  } else {
    cell.pass = std::abs(simulated - analytic) <= 1e-12;
  }
  return cell;
}

}  // namespace

ValidationReport validate(const SweepSpec& spec, double z_threshold, double min_pass_rate,
                          unsigned threads, const AnalyticCoefficients& analytic) {
  spec.validate();
  if (!(z_threshold > 0.0)) throw std::invalid_argument("z threshold must be positive");
  const AnalyticCoefficients reference =
      analytic ? analytic : [](const MixingParams& mix, ModelVariant v, Role r) {
        return payoff_coefficients(mix, v, r);
      };

  using CellGroup = std::vector<ValidationCell>;
  const std::vector<CellGroup> groups =
      map_cells<CellGroup>(sweep_cells(spec), threads, [&](const MixingParams& mix) {
        CellGroup group;
        const std::uint64_t seed = cell_seed(spec.master_seed, mix, spec.variant);
        for (Role role : {Role::Cooperator, Role::Defector}) {
          const auto tally = sim::simulate_tally(mix, spec.variant, role, spec.replications, seed, 1);
          const auto est = sim::coefficients_from(tally, mix.n);
          const PayoffCoefficients expect = reference(mix, spec.variant, role);
          group.push_back(compare(mix, spec.variant, role, 'a', expect.a, est.a_hat, est.a_se,
                                  z_threshold));
          group.push_back(compare(mix, spec.variant, role, 'b', expect.bcoef, est.b_hat, est.b_se,
                                  z_threshold));
        }
        return group;
      });

  ValidationReport report;
  report.z_threshold = z_threshold;
  report.min_pass_rate = min_pass_rate;
  for (const CellGroup& g : groups) report.cells.insert(report.cells.end(), g.begin(), g.end());
  return report;
}

void write_validation_csv(std::ostream& out, const ValidationReport& report) {
  out << "# " << kSchemaVersion << " validation\n";
  out << "variant,n,tau,fc,role,coefficient,analytic,simulated,se,z,pass\n";
  for (const ValidationCell& c : report.cells) {
    out << to_string(c.variant) << ',' << c.n << ',' << format_decimal(c.tau) << ','
        << format_decimal(c.fc) << ',' << to_string(c.role) << ',' << c.coefficient << ','
        << format_decimal(c.analytic) << ',' << format_decimal(c.simulated) << ','
        << format_decimal(c.std_error) << ',' << format_decimal(c.z) << ','
        << (c.pass ? "1" : "0") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Historical baseline

namespace historical {

double mark_original_wc(int n, double fc, double c, double b) {
  const double low = (n - 1.0) / n;
  double total = 0.0;
  for (int i = 0; i <= n - 1; ++i) {
    const double no_leader = std::pow(low, i + 1);
    total += binomial_pmf(i, n - 1, fc) *
             ((1.0 - no_leader) * ((i + 1) * b / n) + no_leader * c);
  }
  return total;
}

double mark_original_wd(int n, double fc, double c, double b) {
  const double low = (n - 1.0) / n;
  double total = 0.0;
  for (int i = 0; i <= n - 1; ++i) {
    total += binomial_pmf(i, n - 1, fc) * (1.0 - std::pow(low, i)) * (i * b / n);
  }
  return c + total;
}

}  // namespace historical

// ---------------------------------------------------------------------------
// Figure presets

namespace {

struct EquilibriumFigure {
  std::vector<ModelVariant> variants;
  std::vector<int> ns;
  std::vector<double> taus;
  std::vector<double> grid;
  bool simulate;
};

std::vector<int> int_range(int lo, int hi) {
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

void hierarchy_table(std::ostream& out, const std::vector<int>& ns) {
  out << "n,x,h\n";
  for (int n : ns)
    for (int x = 0; x <= n; ++x) out << n << ',' << x << ',' << format_decimal(h_nx(n, x)) << '\n';
}

void equilibrium_table(std::ostream& out, const EquilibriumFigure& fig, const FigureOptions& opt) {
  struct Cell {
    ModelVariant variant;
    MixingParams mix;
  };
  struct Row {
    std::optional<double> analytic, simulated, se;
  };
  std::vector<Cell> cells;
  for (ModelVariant v : fig.variants)
    for (int n : fig.ns)
      for (double tau : fig.taus)
        for (double fc : fig.grid) cells.push_back({v, {n, fc, tau}});

  std::vector<Row> rows(cells.size());
  const unsigned threads = opt.threads == 0 ? default_thread_count() : opt.threads;
  parallel_chunks(cells.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      const Cell& cell = cells[i];
      rows[i].analytic = equilibrium_cb(cell.mix, cell.variant);
      if (!fig.simulate) continue;
      const auto est = sim::estimate_equilibrium(
          cell.mix, cell.variant, opt.replications,
          cell_seed(opt.master_seed, cell.mix, cell.variant), 1);
      rows[i].simulated = est.cb;
      if (est.cb) rows[i].se = est.std_error;
    }
  });

  out << "variant,n,tau,fc,cb_analytic,cb_sim,se\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    out << to_string(c.variant) << ',' << c.mix.n << ',' << format_decimal(c.mix.tau) << ','
        << format_decimal(c.mix.fc) << ',' << format_decimal(rows[i].analytic) << ','
        << format_decimal(rows[i].simulated) << ',' << format_decimal(rows[i].se) << '\n';
  }
}

void stability_table(std::ostream& out, const std::vector<int>& ns,
                     const std::vector<double>& taus) {
  out << "n,tau,lower,upper_ours,upper_mark\n";
  for (double tau : taus) {
    for (int n : ns) {
      const StabilityRegion ours = stability_region(n, tau, ModelVariant::MultiLeader);
      const StabilityRegion mark = stability_region(n, tau, ModelVariant::MarkWithMemory);
      out << n << ',' << format_decimal(tau) << ',' << format_decimal(ours.lower) << ','
          << format_decimal(ours.upper) << ',' << format_decimal(mark.upper) << '\n';
    }
  }
}

// Single-leader retry protocol against its closed form and against the
// historical formulas, at b = 1 and c = 0.2.
void retry_comparison_table(std::ostream& out, Role role, const FigureOptions& opt) {
  constexpr double kCost = 0.2;
  constexpr double kBenefit = 1.0;
  const std::vector<int> ns = int_range(2, 10);
  const std::vector<double> grid = linear_grid(21, 0.0, 1.0);
  struct Cell {
    int n;
    double fc;
  };
  std::vector<Cell> cells;
  for (int n : ns)
    for (double fc : grid) cells.push_back({n, fc});

  std::vector<double> simulated(cells.size());
  const unsigned threads = opt.threads == 0 ? default_thread_count() : opt.threads;
  parallel_chunks(cells.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      const GameParams p{cells[i].n, cells[i].fc, kCost, kBenefit, 0.0};
      const auto seed = cell_seed(opt.master_seed, p.mixing(), ModelVariant::MarkRetry);
      simulated[i] =
          sim::estimate_payoff(p, ModelVariant::MarkRetry, role, opt.replications, seed, 1)
              .payoff.mean;
    }
  });

  out << "model,n,fc,wc_or_wd_sim,analytic_revised,analytic_mark_original\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const GameParams p{cells[i].n, cells[i].fc, kCost, kBenefit, 0.0};
    const bool coop = role == Role::Cooperator;
    const double revised = coop ? wc(p, ModelVariant::MarkRetry) : wd(p, ModelVariant::MarkRetry);
    const double original = coop ? historical::mark_original_wc(p.n, p.fc, p.c, p.b)
                                 : historical::mark_original_wd(p.n, p.fc, p.c, p.b);
    out << (coop ? "retry_wc" : "retry_wd") << ',' << p.n << ',' << format_decimal(p.fc) << ','
        << format_decimal(simulated[i]) << ',' << format_decimal(revised) << ','
        << format_decimal(original) << '\n';
  }
}

}  // namespace

const std::vector<std::string>& figure_presets() {
  static const std::vector<std::string> presets{"fig1", "fig2", "fig3", "fig4",  "fig5", "fig6",
                                                "fig7", "fig8", "fig9", "fig10", "fig11"};
  return presets;
}

std::string figure_csv(std::string_view preset, const FigureOptions& options) {
  if (options.replications < 1) throw std::invalid_argument("reps must be >= 1");
  std::ostringstream out;
  out << "# " << kSchemaVersion << ' ' << preset << '\n';
  const std::vector<double> fine_grid = linear_grid(17, 0.1, 0.9);
  const std::vector<double> wide_grid = linear_grid(19, 0.05, 0.95);
  const std::vector<double> tau_quarters{0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> tau_fifths{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

  if (preset == "fig1") {
    hierarchy_table(out, {5});
  } else if (preset == "fig2") {
    hierarchy_table(out, int_range(2, 11));
  } else if (preset == "fig3") {
    equilibrium_table(out, {{ModelVariant::MultiLeader}, {2, 4, 6, 8, 10}, {0.0}, fine_grid, true},
                      options);
  } else if (preset == "fig4") {
    stability_table(out, int_range(2, 20), {0.0});
  } else if (preset == "fig5") {
    stability_table(out, int_range(2, 50), {0.0});
  } else if (preset == "fig6") {
    equilibrium_table(out,
                      {{ModelVariant::MultiLeader, ModelVariant::MarkNoMemory,
                        ModelVariant::MarkWithMemory},
                       {10},
                       {0.0},
                       wide_grid,
                       true},
                      options);
  } else if (preset == "fig7") {
    equilibrium_table(out, {{ModelVariant::MultiLeader}, {10}, tau_quarters, fine_grid, true},
                      options);
  } else if (preset == "fig8") {
    equilibrium_table(out, {{ModelVariant::MultiLeader}, {3, 5, 10, 20}, tau_quarters, wide_grid, false},
                      options);
  } else if (preset == "fig9") {
    stability_table(out, int_range(3, 20), tau_fifths);
  } else if (preset == "fig10") {
    retry_comparison_table(out, Role::Cooperator, options);
  } else if (preset == "fig11") {
    retry_comparison_table(out, Role::Defector, options);
  } else {
    throw std::invalid_argument("unknown figure preset '" + std::string(preset) + "'");
  }
  return out.str();
}

std::vector<std::filesystem::path> write_figures(std::string_view preset,
                                                 const std::filesystem::path& out_dir,
                                                 const FigureOptions& options) {
  std::vector<std::string> names;
  if (preset == "all") {
    names = figure_presets();
  } else {
    names.emplace_back(preset);
  }
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const std::string& name : names) {
    const std::string text = figure_csv(name, options);
    const auto path = out_dir / (name + ".csv");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << text;
    if (!file) throw std::runtime_error("write failed for " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace hiergame::exp
