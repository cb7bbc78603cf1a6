#include "hiergame/payoffs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hiergame/binomial.hpp"
#include "hiergame/hierarchy.hpp"

namespace hiergame {

std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::MultiLeader: return "multi";
    case ModelVariant::MarkRetry: return "retry";
    case ModelVariant::MarkNoMemory: return "nomem";
    case ModelVariant::MarkWithMemory: return "withmem";
  }
  return "?";
}

std::string_view to_string(Role r) { return r == Role::Cooperator ? "C" : "D"; }

ModelVariant parse_variant(std::string_view name) {
  for (ModelVariant v : kAllVariants)
    if (to_string(v) == name) return v;
  throw std::invalid_argument("unknown variant '" + std::string(name) +
                              "' (expected multi, retry, nomem or withmem)");
}

Role parse_role(std::string_view name) {
  if (name == "C") return Role::Cooperator;
  if (name == "D") return Role::Defector;
  throw std::invalid_argument("unknown role '" + std::string(name) + "' (expected C or D)");
}

namespace {

bool is_fraction(double v) { return v >= 0.0 && v <= 1.0; }

bool use_assortative(const MixingParams& mix, Mixing rule) {
  if (rule == Mixing::Auto) return mix.tau != 0.0;
  return rule == Mixing::Assortative;
}

// Weights of the assortative formation law, term for term. Terms whose
// leading factor (i, or n-i-1) is zero are dropped so that a zero base
// raised to -1 never enters the sum.
std::vector<double> assortative_weights(const MixingParams& mix, Role focal) {
  const int n = mix.n;
  const double f = mix.fc;
  const double tau = mix.tau;
  const double coop_after_coop = tau + (1.0 - tau) * f;
  const double def_after_coop = (1.0 - tau) * (1.0 - f);
  const double coop_after_def = (1.0 - tau) * f;
  const double def_after_def = tau + (1.0 - tau) * (1.0 - f);

  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double binom = choose(n - 1, i);
    double total = 0.0;
    if (focal == Role::Cooperator) {
      double first_is_coop =
          (1.0 / (i + 1)) * binom * std::pow(coop_after_coop, i) * std::pow(def_after_coop, n - i - 1);
      if (i > 0) {
        first_is_coop += (static_cast<double>(i) / (i + 1)) * f * binom *
                         std::pow(coop_after_coop, i - 1) * std::pow(def_after_coop, n - i - 1);
      }
      total += (static_cast<double>(i + 1) / n) * first_is_coop;
      if (n - i - 1 > 0) {
        total += (static_cast<double>(n - i - 1) / n) * (1.0 - f) * binom *
                 std::pow(coop_after_def, i) * std::pow(def_after_def, n - i - 2);
      }
    } else {
      if (i > 0) {
        total += (static_cast<double>(i) / n) * f * binom * std::pow(coop_after_coop, i - 1) *
                 std::pow(def_after_coop, n - i - 1);
      }
      double first_is_def =
          (1.0 / (n - i)) * binom * std::pow(coop_after_def, i) * std::pow(def_after_def, n - i - 1);
      if (n - i - 1 > 0) {
        first_is_def += (static_cast<double>(n - i - 1) / (n - i)) * (1.0 - f) * binom *
                        std::pow(coop_after_def, i) * std::pow(def_after_def, n - i - 2);
      }
      total += (static_cast<double>(n - i) / n) * first_is_def;
    }
    w[static_cast<std::size_t>(i)] = total;
  }
  return w;
}

// Expected payoff of the focal player given `m` cooperators take part in
// signaling (the focal included when it is a cooperator). For a defector
// only the share of b is returned; the kept c is added by the caller.
double conditional_payoff(int n, int m, ModelVariant variant, Role focal, double c, double b) {
  const double high = 1.0 / n;
  const double low = (n - 1.0) / n;

  switch (variant) {
    case ModelVariant::MultiLeader: {
      double keep_term = 0.0;
      double share_term = 0.0;
      for (int j = 0; j <= m; ++j) {
        const double p_leaders = choose(m, j) * std::pow(high, j) * std::pow(low, m - j);
        const double h = j == 0 ? 0.0 : h_nx(n, j);
        keep_term += p_leaders * (1.0 - h);
        double shares = 0.0;
        for (int k = 0; k <= m; ++k) {
          shares += choose(m, k) * std::pow(h, k) * std::pow(1.0 - h, m - k) *
                    (static_cast<double>(k) / n);
        }
        share_term += p_leaders * shares;
      }
      if (focal == Role::Defector) return share_term * b;
      return keep_term * c + share_term * b;
    }
    case ModelVariant::MarkRetry: {
      const double one = choose(m, 1) * high * std::pow(low, m - 1);
      const double none = std::pow(low, m);
      const double share = (one / (one + none)) * (m * b / n);
      if (focal == Role::Defector) return share;
      return share + (none / (one + none)) * c;
    }
    case ModelVariant::MarkNoMemory: {
      const double one = choose(m, 1) * high * std::pow(low, m - 1);
      if (focal == Role::Defector) return one * (m * b / n);
      return one * (m * b / n) + (1.0 - one) * c;
    }
    case ModelVariant::MarkWithMemory: {
      const double none = std::pow(low, m);
      if (focal == Role::Defector) return (1.0 - none) * (m * b / n);
      return (1.0 - none) * (m * b / n) + none * c;
    }
  }
  throw std::logic_error("unhandled variant");
}

double expected_payoff(const MixingParams& mix, ModelVariant variant, Role role, double c,
                       double b, Mixing rule) {
  const std::vector<double> weights = cooperator_count_weights(mix, role, rule);
  double total = 0.0;
  for (int i = 0; i < mix.n; ++i) {
    const int m = role == Role::Cooperator ? i + 1 : i;
    total += weights[static_cast<std::size_t>(i)] *
             conditional_payoff(mix.n, m, variant, role, c, b);
  }
  return role == Role::Defector ? c + total : total;
}

}  // namespace

void MixingParams::validate() const {
  if (n < 2) throw std::invalid_argument("group size n must be >= 2");
  if (!is_fraction(fc)) throw std::invalid_argument("fc must lie in [0, 1]");
  if (!is_fraction(tau)) throw std::invalid_argument("tau must lie in [0, 1]");
}

void GameParams::validate() const {
  mixing().validate();
  if (!(c > 0.0)) throw std::invalid_argument("cost c must be positive");
  if (!(b > 0.0)) throw std::invalid_argument("benefit b must be positive");
}

std::vector<double> cooperator_count_weights(const MixingParams& mix, Role focal, Mixing rule) {
  mix.validate();
  if (use_assortative(mix, rule)) return assortative_weights(mix, focal);
  return binomial_row(mix.n - 1, mix.fc);
}

double wc(const GameParams& params, ModelVariant variant, Mixing rule) {
  params.validate();
  return expected_payoff(params.mixing(), variant, Role::Cooperator, params.c, params.b, rule);
}

double wd(const GameParams& params, ModelVariant variant, Mixing rule) {
  params.validate();
  return expected_payoff(params.mixing(), variant, Role::Defector, params.c, params.b, rule);
}

PayoffCoefficients payoff_coefficients(const MixingParams& mix, ModelVariant variant, Role role,
                                       Mixing rule) {
  mix.validate();
  return {expected_payoff(mix, variant, role, 1.0, 0.0, rule),
          expected_payoff(mix, variant, role, 0.0, 1.0, rule)};
}

std::optional<double> equilibrium_cb(const MixingParams& mix, ModelVariant variant) {
  const PayoffCoefficients coop = payoff_coefficients(mix, variant, Role::Cooperator);
  const PayoffCoefficients def = payoff_coefficients(mix, variant, Role::Defector);
  const double denom = 1.0 - coop.a;
  if (std::abs(denom) <= 1e-12) return std::nullopt;
  return (coop.bcoef - def.bcoef) / denom;
}

StabilityRegion stability_region(int n, double tau, ModelVariant variant) {
  MixingParams all_coop{n, 1.0, tau};
  all_coop.validate();
  const MixingParams one_defector{n, (n - 1.0) / n, tau};
  const PayoffCoefficients coop = payoff_coefficients(all_coop, variant, Role::Cooperator);
  const PayoffCoefficients def = payoff_coefficients(one_defector, variant, Role::Defector);
  const double denom = 1.0 - coop.a;
  StabilityRegion region;
  region.lower = 1.0 / n;
  region.upper = std::abs(denom) <= 1e-12 ? std::numeric_limits<double>::infinity()
                                          : (coop.bcoef - def.bcoef) / denom;
  return region;
}

namespace explicit_forms {

namespace {
double h3(int x) { return h_nx(3, x); }
}  // namespace

double wc_n2(double f, double c, double b) {
  const double half = 0.5;
  return f * (choose(2, 2) * std::pow(half, 2) * std::pow(half, 0) * c +
              choose(2, 0) * std::pow(half, 0) * std::pow(half, 2) * c +
              choose(2, 1) * std::pow(half, 1) * std::pow(half, 1) * b) +
         (1.0 - f) * (choose(1, 0) * std::pow(half, 0) * std::pow(half, 1) * c +
                      choose(1, 1) * std::pow(half, 1) * std::pow(half, 0) * (b / 2.0));
}

double wd_n2(double f, double c, double b) {
  return c + f * (choose(1, 1) * std::pow(0.5, 1) * std::pow(0.5, 0) * (b / 2.0));
}

double wc_n3(double f, double c, double b) {
  const double third = 1.0 / 3.0;
  const double two_thirds = 2.0 / 3.0;
  const double g = 1.0 - f;
  const double h = h3(2);
  // Third line: the x = 2 term among three cooperators carries (2/3)^1.
  const double keep = g * g * two_thirds * c +
                      choose(2, 1) * f * g *
                          (std::pow(two_thirds, 2) + std::pow(third, 2) * (1.0 - h)) * c +
                      f * f *
                          (std::pow(two_thirds, 3) +
                           choose(3, 2) * std::pow(third, 2) * std::pow(two_thirds, 1) * (1.0 - h) +
                           std::pow(third, 3)) *
                          c;
  const double share =
      g * g * third * third * b +
      choose(2, 1) * f * g *
          (choose(2, 1) * third * two_thirds * two_thirds +
           choose(2, 2) * std::pow(third, 2) *
               (choose(2, 1) * h * (1.0 - h) * third + choose(2, 2) * h * h * two_thirds)) *
          b +
      f * f *
          (choose(3, 1) * third * std::pow(two_thirds, 2) +
           choose(3, 2) * std::pow(third, 2) * std::pow(two_thirds, 1) *
               (choose(3, 1) * h * std::pow(1.0 - h, 2) * third +
                choose(3, 2) * h * h * (1.0 - h) * two_thirds + std::pow(h, 3))) *
          b;
  return keep + share;
}

double wd_n3(double f, double c, double b) {
  const double third = 1.0 / 3.0;
  const double two_thirds = 2.0 / 3.0;
  const double h = h3(2);
  return c + 2.0 * f * (1.0 - f) * (third * h3(1) * third) * b +
         f * f *
             (choose(2, 1) * third * two_thirds * two_thirds +
              std::pow(third, 2) * (choose(2, 1) * h * (1.0 - h) * third + h * h * two_thirds)) *
             b;
}

}  // namespace explicit_forms

}  // namespace hiergame
