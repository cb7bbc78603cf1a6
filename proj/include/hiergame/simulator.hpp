#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hiergame/payoffs.hpp"
#include "hiergame/rng.hpp"

namespace hiergame::sim {

/// A formed group. `members[focal]` is the player whose payoff is measured.
struct Roster {
  std::vector<Role> members;
  std::size_t focal = 0;

  int cooperator_count() const;
};

/// Draws a group of n around a focal player of the given role.
///
/// Random mixing (tau == 0): the other n-1 members are cooperators with
/// probability fc, independently.
///
/// Assortative mixing: the focal player occupies a uniformly random slot.
/// In the first slot it sets the group's type, and every other member copies
/// that type with probability tau and is drawn at fc otherwise. In a later
/// slot the first member is drawn at fc and the remaining n-2 members copy
/// the first member's type with probability tau. This is the formation law
/// whose cooperator-count distribution is `cooperator_count_weights`.
Roster form_group(const MixingParams& mix, Role focal_role, Rng& rng);
void form_group(const MixingParams& mix, Role focal_role, Rng& rng, Roster& out);

/// How a signaling phase resolved.
enum class Regime {
  Graded,         // multi-leader: each cooperator contributes w.p. h_nx(n, leaders)
  SingleLeader,   // exactly one leader; every cooperator contributes
  NoCooperation,  // nobody contributes
};

struct SignalingOutcome {
  int leader_count = 0;
  Regime regime = Regime::NoCooperation;
  int rounds = 1;
};

/// Resampling variants give up after this many rounds with std::runtime_error.
inline constexpr int kMaxSignalingRounds = 10000;

/// Each of `cooperator_count` cooperators signals high with probability 1/n.
SignalingOutcome run_signaling(int cooperator_count, int n, ModelVariant variant, Rng& rng);

/// Contribution flag per cooperator.
std::vector<bool> run_contribution(int cooperator_count, const SignalingOutcome& outcome, int n,
                                   Rng& rng);

/// Per-member payoffs: k*b/n for everyone, plus c for each member that did
/// not contribute. `contributed` is indexed like `roster.members`.
std::vector<double> payoff(const Roster& roster, const std::vector<bool>& contributed, double c,
                           double b);

struct RoundResult {
  int cooperator_count = 0;  // in the whole group, focal included
  int leader_count = 0;
  int contributor_count = 0;
  double focal_payoff = 0.0;
  bool focal_contributed = false;
};

/// One full round: formation, signaling, contribution, payoff.
RoundResult play_round(const GameParams& params, ModelVariant variant, Role focal_role, Rng& rng);

/// Integer sufficient statistics of a batch of focal rounds. Addition is
/// exact, so merged tallies do not depend on how replications were sharded.
struct Tally {
  std::uint64_t replications = 0;
  std::uint64_t kept = 0;          // rounds in which the focal player kept c
  std::uint64_t contributors = 0;  // sum of k
  std::uint64_t contributors_sq = 0;
  std::uint64_t kept_contributors = 0;  // sum of kept * k

  void record(bool kept_endowment, int contributor_count);
  Tally& operator+=(const Tally& other);
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t replications = 0;
  std::uint64_t master_seed = 0;
};

/// Means of the kept-endowment indicator and of k/n, so that the payoff for
/// any (c, b) is a_hat * c + b_hat * b.
struct CoefficientEstimate {
  double a_hat = 0.0;
  double b_hat = 0.0;
  double a_se = 0.0;
  double b_se = 0.0;
  double ab_cov = 0.0;  // covariance of the two means

  double payoff(double c, double b) const { return a_hat * c + b_hat * b; }
};

CoefficientEstimate coefficients_from(const Tally& tally, int n);
Estimate payoff_from(const Tally& tally, int n, double c, double b, std::uint64_t master_seed);

struct PayoffEstimate {
  Estimate payoff;
  CoefficientEstimate coefficients;
};

/// Runs `replications` independent focal rounds. Replication r draws from
/// Rng::stream(master_seed, {role, r}); output is identical for any
/// `threads` (0 means default_thread_count()).
PayoffEstimate estimate_payoff(const GameParams& params, ModelVariant variant, Role role,
                               std::uint64_t replications, std::uint64_t master_seed,
                               unsigned threads = 0);

Tally simulate_tally(const MixingParams& mix, ModelVariant variant, Role role,
                     std::uint64_t replications, std::uint64_t master_seed, unsigned threads = 0);

struct EquilibriumEstimate {
  std::optional<double> cb;  // none when 1 - a_hat(C) < 1e-9
  double std_error = 0.0;    // delta method
  CoefficientEstimate cooperator;
  CoefficientEstimate defector;
};

EquilibriumEstimate equilibrium_from(const CoefficientEstimate& cooperator,
                                     const CoefficientEstimate& defector);

EquilibriumEstimate estimate_equilibrium(const MixingParams& mix, ModelVariant variant,
                                         std::uint64_t replications, std::uint64_t master_seed,
                                         unsigned threads = 0);

/// Discrete payoff-proportional update f' = f W(C) / (f W(C) + (1-f) W(D)).
/// Not part of the game definition proper: the generational rule is a
/// modelling choice of this library.
double replicator_step(double fc, double wc_value, double wd_value);

}  // namespace hiergame::sim
