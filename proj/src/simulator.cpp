#include "hiergame/simulator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hiergame/hierarchy.hpp"
#include "hiergame/parallel.hpp"

namespace hiergame::sim {

int Roster::cooperator_count() const {
  int count = 0;
  for (Role r : members) count += r == Role::Cooperator ? 1 : 0;
  return count;
}

namespace {

Role draw_at_frequency(double fc, Rng& rng) {
  return rng.bernoulli(fc) ? Role::Cooperator : Role::Defector;
}

Role draw_assorted(Role first, const MixingParams& mix, Rng& rng) {
  if (rng.bernoulli(mix.tau)) return first;
  return draw_at_frequency(mix.fc, rng);
}

int count_highs(int cooperator_count, int n, Rng& rng) {
  const double p = 1.0 / n;
  int highs = 0;
  for (int i = 0; i < cooperator_count; ++i) highs += rng.bernoulli(p) ? 1 : 0;
  return highs;
}

[[noreturn]] void signaling_overrun(ModelVariant variant) {
  throw std::runtime_error("signaling for variant '" + std::string(to_string(variant)) +
                           "' did not resolve within " + std::to_string(kMaxSignalingRounds) +
                           " rounds");
}

double contribution_probability(const SignalingOutcome& outcome, int n) {
  switch (outcome.regime) {
    case Regime::Graded: return outcome.leader_count == 0 ? 0.0 : h_nx(n, outcome.leader_count);
    case Regime::SingleLeader: return 1.0;
    case Regime::NoCooperation: return 0.0;
  }
  return 0.0;
}

// Shared by run_contribution and the allocation-free estimation loop so both
// consume the generator identically. Draws are skipped when the outcome is
// certain.
template <typename Sink>
void draw_contributions(int cooperator_count, const SignalingOutcome& outcome, int n, Rng& rng,
                        Sink&& sink) {
  const double p = contribution_probability(outcome, n);
  const bool certain = p == 0.0 || p == 1.0;
  for (int i = 0; i < cooperator_count; ++i) sink(i, certain ? p == 1.0 : rng.bernoulli(p));
}

void validate_replications(std::uint64_t replications) {
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
}

}  // namespace

void form_group(const MixingParams& mix, Role focal_role, Rng& rng, Roster& out) {
  mix.validate();
  const auto n = static_cast<std::size_t>(mix.n);
  out.members.resize(n);

  if (mix.tau == 0.0) {
    out.focal = 0;
    out.members[0] = focal_role;
    for (std::size_t s = 1; s < n; ++s) out.members[s] = draw_at_frequency(mix.fc, rng);
    return;
  }

  out.focal = static_cast<std::size_t>(rng.below(n));
  out.members[out.focal] = focal_role;
  if (out.focal == 0) {
    for (std::size_t s = 1; s < n; ++s) out.members[s] = draw_assorted(focal_role, mix, rng);
    return;
  }
  const Role first = draw_at_frequency(mix.fc, rng);
  out.members[0] = first;
  for (std::size_t s = 1; s < n; ++s) {
    if (s == out.focal) continue;
    out.members[s] = draw_assorted(first, mix, rng);
  }
}

Roster form_group(const MixingParams& mix, Role focal_role, Rng& rng) {
  Roster roster;
  form_group(mix, focal_role, rng, roster);
  return roster;
}

SignalingOutcome run_signaling(int cooperator_count, int n, ModelVariant variant, Rng& rng) {
  if (cooperator_count < 0) throw std::invalid_argument("cooperator_count must be >= 0");
  if (n < 2) throw std::invalid_argument("group size n must be >= 2");
  SignalingOutcome out;
  out.leader_count = count_highs(cooperator_count, n, rng);

  switch (variant) {
    case ModelVariant::MultiLeader:
      out.regime = Regime::Graded;
      return out;
    case ModelVariant::MarkNoMemory:
      out.regime = out.leader_count == 1 ? Regime::SingleLeader : Regime::NoCooperation;
      return out;
    case ModelVariant::MarkRetry:
      while (out.leader_count > 1) {
        if (++out.rounds > kMaxSignalingRounds) signaling_overrun(variant);
        out.leader_count = count_highs(cooperator_count, n, rng);
      }
      out.regime = out.leader_count == 1 ? Regime::SingleLeader : Regime::NoCooperation;
      return out;
    case ModelVariant::MarkWithMemory:
      if (out.leader_count == 0) {
        out.regime = Regime::NoCooperation;
        return out;
      }
      while (out.leader_count != 1) {
        if (++out.rounds > kMaxSignalingRounds) signaling_overrun(variant);
        out.leader_count = count_highs(cooperator_count, n, rng);
      }
      out.regime = Regime::SingleLeader;
      return out;
  }
  throw std::logic_error("unhandled variant");
}

std::vector<bool> run_contribution(int cooperator_count, const SignalingOutcome& outcome, int n,
                                   Rng& rng) {
  if (cooperator_count < 0) throw std::invalid_argument("cooperator_count must be >= 0");
  if (outcome.leader_count > cooperator_count) {
    throw std::invalid_argument("more leaders than cooperators");
  }
  std::vector<bool> flags(static_cast<std::size_t>(cooperator_count), false);
  draw_contributions(cooperator_count, outcome, n, rng,
                     [&](int i, bool gives) { flags[static_cast<std::size_t>(i)] = gives; });
  return flags;
}

std::vector<double> payoff(const Roster& roster, const std::vector<bool>& contributed, double c,
                           double b) {
  if (contributed.size() != roster.members.size()) {
    throw std::invalid_argument("one contribution flag per member required");
  }
  int k = 0;
  for (std::size_t s = 0; s < contributed.size(); ++s) {
    if (!contributed[s]) continue;
    if (roster.members[s] != Role::Cooperator) {
      throw std::invalid_argument("only cooperators can contribute");
    }
    ++k;
  }
  const double n = static_cast<double>(roster.members.size());
  const double share = k * b / n;
  std::vector<double> out(roster.members.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = share + (contributed[s] ? 0.0 : c);
  return out;
}

RoundResult play_round(const GameParams& params, ModelVariant variant, Role focal_role, Rng& rng) {
  params.validate();
  const Roster roster = form_group(params.mixing(), focal_role, rng);
  const int cooperators = roster.cooperator_count();
  const SignalingOutcome signal = run_signaling(cooperators, params.n, variant, rng);
  const std::vector<bool> flags = run_contribution(cooperators, signal, params.n, rng);

  // A cooperating focal player takes contribution flag 0; other cooperators
  // follow in slot order.
  std::vector<bool> contributed(roster.members.size(), false);
  std::size_t next = 0;
  if (focal_role == Role::Cooperator) contributed[roster.focal] = flags[next++];
  for (std::size_t s = 0; s < roster.members.size(); ++s) {
    if (s == roster.focal || roster.members[s] != Role::Cooperator) continue;
    contributed[s] = flags[next++];
  }

  const std::vector<double> payoffs = payoff(roster, contributed, params.c, params.b);
  RoundResult result;
  result.cooperator_count = cooperators;
  result.leader_count = signal.leader_count;
  for (bool gives : contributed) result.contributor_count += gives ? 1 : 0;
  result.focal_payoff = payoffs[roster.focal];
  result.focal_contributed = contributed[roster.focal];
  return result;
}

void Tally::record(bool kept_endowment, int contributor_count) {
  const auto k = static_cast<std::uint64_t>(contributor_count);
  const std::uint64_t kept_flag = kept_endowment ? 1 : 0;
  ++replications;
  kept += kept_flag;
  contributors += k;
  contributors_sq += k * k;
  kept_contributors += kept_flag * k;
}

Tally& Tally::operator+=(const Tally& other) {
  replications += other.replications;
  kept += other.kept;
  contributors += other.contributors;
  contributors_sq += other.contributors_sq;
  kept_contributors += other.kept_contributors;
  return *this;
}

namespace {

// R * sum(xy) - sum(x) * sum(y), exactly.
double centered_moment(std::uint64_t reps, std::uint64_t sum_xy, std::uint64_t sum_x,
                       std::uint64_t sum_y) {
  __extension__ using Wide = __int128;
  const Wide value = static_cast<Wide>(reps) * sum_xy - static_cast<Wide>(sum_x) * static_cast<Wide>(sum_y);
  return static_cast<double>(value);
}

}  // namespace

CoefficientEstimate coefficients_from(const Tally& tally, int n) {
  if (tally.replications == 0) throw std::invalid_argument("empty tally");
  const double reps = static_cast<double>(tally.replications);
  CoefficientEstimate out;
  out.a_hat = static_cast<double>(tally.kept) / reps;
  out.b_hat = static_cast<double>(tally.contributors) / (reps * n);
  if (tally.replications < 2) return out;
  // Sample (co)variances divided by R once more for the variance of the mean.
  const double scale = reps * (reps - 1.0) * reps;
  const double var_a =
      centered_moment(tally.replications, tally.kept, tally.kept, tally.kept) / scale;
  const double var_k = centered_moment(tally.replications, tally.contributors_sq,
                                       tally.contributors, tally.contributors) /
                       scale;
  const double cov_ak =
      centered_moment(tally.replications, tally.kept_contributors, tally.kept, tally.contributors) /
      scale;
  out.a_se = std::sqrt(std::max(0.0, var_a));
  out.b_se = std::sqrt(std::max(0.0, var_k)) / n;
  out.ab_cov = cov_ak / n;
  return out;
}

Estimate payoff_from(const Tally& tally, int n, double c, double b, std::uint64_t master_seed) {
  const CoefficientEstimate coef = coefficients_from(tally, n);
  Estimate est;
  est.mean = coef.payoff(c, b);
  const double var =
      c * c * coef.a_se * coef.a_se + b * b * coef.b_se * coef.b_se + 2.0 * c * b * coef.ab_cov;
  est.std_error = std::sqrt(std::max(0.0, var));
  est.replications = tally.replications;
  est.master_seed = master_seed;
  return est;
}

Tally simulate_tally(const MixingParams& mix, ModelVariant variant, Role role,
                     std::uint64_t replications, std::uint64_t master_seed, unsigned threads) {
  mix.validate();
  validate_replications(replications);
  if (threads == 0) threads = default_thread_count();

  const auto role_key = static_cast<std::uint64_t>(role);
  std::vector<Tally> partial(std::max(1u, threads));
  parallel_chunks(replications, threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
    Roster roster;
    Tally local;
    for (std::size_t r = begin; r < end; ++r) {
      Rng rng = Rng::stream(master_seed, {role_key, r});
      form_group(mix, role, rng, roster);
      const int cooperators = roster.cooperator_count();
      const SignalingOutcome signal = run_signaling(cooperators, mix.n, variant, rng);
      int k = 0;
      bool focal_gave = false;
      draw_contributions(cooperators, signal, mix.n, rng, [&](int i, bool gives) {
        k += gives ? 1 : 0;
        if (i == 0 && role == Role::Cooperator) focal_gave = gives;
      });
      local.record(!focal_gave, k);
    }
    partial[w] = local;
  });

  Tally total;
  for (const Tally& t : partial) total += t;
  return total;
}

PayoffEstimate estimate_payoff(const GameParams& params, ModelVariant variant, Role role,
                               std::uint64_t replications, std::uint64_t master_seed,
                               unsigned threads) {
  params.validate();
  const Tally tally =
      simulate_tally(params.mixing(), variant, role, replications, master_seed, threads);
  return {payoff_from(tally, params.n, params.c, params.b, master_seed),
          coefficients_from(tally, params.n)};
}

EquilibriumEstimate equilibrium_from(const CoefficientEstimate& cooperator,
                                     const CoefficientEstimate& defector) {
  EquilibriumEstimate out;
  out.cooperator = cooperator;
  out.defector = defector;
  const double denom = 1.0 - cooperator.a_hat;
  if (denom < 1e-9) return out;
  const double cb = (cooperator.b_hat - defector.b_hat) / denom;
  out.cb = cb;
  const double var = (cooperator.b_se * cooperator.b_se + defector.b_se * defector.b_se +
                      cb * cb * cooperator.a_se * cooperator.a_se +
                      2.0 * cb * cooperator.ab_cov) /
                     (denom * denom);
  out.std_error = std::sqrt(std::max(0.0, var));
  return out;
}

EquilibriumEstimate estimate_equilibrium(const MixingParams& mix, ModelVariant variant,
                                         std::uint64_t replications, std::uint64_t master_seed,
                                         unsigned threads) {
  const Tally coop =
      simulate_tally(mix, variant, Role::Cooperator, replications, master_seed, threads);
  const Tally def = simulate_tally(mix, variant, Role::Defector, replications, master_seed, threads);
  return equilibrium_from(coefficients_from(coop, mix.n), coefficients_from(def, mix.n));
}

double replicator_step(double fc, double wc_value, double wd_value) {
  if (!(fc >= 0.0 && fc <= 1.0)) throw std::invalid_argument("fc must lie in [0, 1]");
  if (!(wc_value > 0.0 && wd_value > 0.0)) {
    throw std::invalid_argument("replicator_step needs positive payoffs");
  }
  if (fc == 0.0 || fc == 1.0) return fc;
  return fc * wc_value / (fc * wc_value + (1.0 - fc) * wd_value);
}

}  // namespace hiergame::sim
