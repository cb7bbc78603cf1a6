#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hiergame {

/// How multi-high signaling rounds resolve.
enum class ModelVariant {
  MultiLeader,     // every x >= 1 structure stands; cooperators contribute w.p. h_nx(n, x)
  MarkRetry,       // resample until 0 or 1 highs
  MarkNoMemory,    // single round; anything but exactly one high means no cooperation
  MarkWithMemory,  // no leader only if the first round is all-low, else resample to one high
};

enum class Role { Cooperator, Defector };

/// Group-formation law. Auto picks Random at tau == 0, Assortative otherwise.
enum class Mixing { Auto, Random, Assortative };

std::string_view to_string(ModelVariant v);
std::string_view to_string(Role r);
ModelVariant parse_variant(std::string_view name);
Role parse_role(std::string_view name);

inline constexpr ModelVariant kAllVariants[] = {ModelVariant::MultiLeader, ModelVariant::MarkRetry,
                                                ModelVariant::MarkNoMemory,
                                                ModelVariant::MarkWithMemory};

/// Group composition inputs: everything a payoff needs except c and b.
struct MixingParams {
  int n = 2;
  double fc = 0.0;
  double tau = 0.0;

  void validate() const;
};

struct GameParams {
  int n = 2;
  double fc = 0.0;
  double c = 1.0;
  double b = 1.0;
  double tau = 0.0;

  void validate() const;
  MixingParams mixing() const { return {n, fc, tau}; }
};

/// Expected payoff = a * c + bcoef * b.
struct PayoffCoefficients {
  double a = 0.0;
  double bcoef = 0.0;

  double evaluate(double c, double b) const { return a * c + bcoef * b; }
};

/// Cost-to-benefit interval in which full cooperation is stable while the
/// game is still a dilemma.
struct StabilityRegion {
  double lower = 0.0;
  double upper = 0.0;
};

/// Probability that i of the focal player's n-1 group mates are
/// cooperators, for i = 0..n-1.
std::vector<double> cooperator_count_weights(const MixingParams& mix, Role focal,
                                             Mixing rule = Mixing::Auto);

/// Expected one-round payoff of a focal cooperator.
double wc(const GameParams& params, ModelVariant variant, Mixing rule = Mixing::Auto);
/// Expected one-round payoff of a focal defector; never below c.
double wd(const GameParams& params, ModelVariant variant, Mixing rule = Mixing::Auto);

PayoffCoefficients payoff_coefficients(const MixingParams& mix, ModelVariant variant, Role role,
                                       Mixing rule = Mixing::Auto);

/// c/b at which W(C) == W(D); nullopt when the cooperator's c-coefficient
/// is 1 (the payoffs never cross).
std::optional<double> equilibrium_cb(const MixingParams& mix, ModelVariant variant);

/// Lower bound 1/n; upper bound from a lone defector invading an
/// all-cooperator population: W(C) at fc = 1 against W(D) at fc = (n-1)/n.
StabilityRegion stability_region(int n, double tau, ModelVariant variant);

/// Explicit n = 2 and n = 3 random-mixing multi-leader payoffs, written out
/// term by term. Used to check the general-n sums.
namespace explicit_forms {
double wc_n2(double fc, double c, double b);
double wd_n2(double fc, double c, double b);
double wc_n3(double fc, double c, double b);
double wd_n3(double fc, double c, double b);
}  // namespace explicit_forms

}  // namespace hiergame
