#pragma once

// Brute-force reference computations for the tests. Everything here
// enumerates explicit outcomes (member types, signal vectors, contribution
// vectors) and never calls the binomial helpers or closed forms under test.

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hiergame/hierarchy.hpp"
#include "hiergame/payoffs.hpp"

namespace oracle {

using hiergame::ModelVariant;
using hiergame::Role;

/// Hierarchicalness by building the two-level graph and measuring GRC.
inline double h_by_graph(int n, int x) {
  if (x == 0) return 0.0;
  return hiergame::general_reaching_centrality(
      hiergame::build_two_level_graph(hiergame::TwoLevelStructure(n, x)));
}

/// Distribution of the number of cooperators among the focal player's n-1
/// group mates under the first-member assortment process, enumerating
/// every focal slot, first-member type and individual draw outcome.
inline std::vector<double> composition_by_enumeration(int n, double fc, double tau, Role focal) {
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  const bool focal_coop = focal == Role::Cooperator;
  const auto p_coop_given_first = [&](bool first_coop) {
    return tau * (first_coop ? 1.0 : 0.0) + (1.0 - tau) * fc;
  };
  // Focal in the first slot: n-1 members follow the focal player's type.
  {
    const double p = p_coop_given_first(focal_coop);
    const int m = n - 1;
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      double prob = 1.0 / n;
      for (int s = 0; s < m; ++s) prob *= (bits >> s) & 1u ? p : 1.0 - p;
      dist[static_cast<std::size_t>(std::popcount(bits))] += prob;
    }
  }
  // Focal in a later slot: first member drawn at fc, n-2 members follow it.
  for (int first_coop = 0; first_coop <= 1; ++first_coop) {
    const double p_first = first_coop ? fc : 1.0 - fc;
    const double p = p_coop_given_first(first_coop != 0);
    const int m = n - 2;
    for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
      double prob = (n - 1.0) / n * p_first;
      for (int s = 0; s < m; ++s) prob *= (bits >> s) & 1u ? p : 1.0 - p;
      dist[static_cast<std::size_t>(std::popcount(bits) + first_coop)] += prob;
    }
  }
  return dist;
}

/// Independent Bernoulli(fc) group mates.
inline std::vector<double> composition_random(int n, double fc) {
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  const int m = n - 1;
  for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
    double prob = 1.0;
    for (int s = 0; s < m; ++s) prob *= (bits >> s) & 1u ? fc : 1.0 - fc;
    dist[static_cast<std::size_t>(std::popcount(bits))] += prob;
  }
  return dist;
}

struct Expectation {
  double keep = 0.0;   // probability the focal player keeps c
  double share = 0.0;  // E[k] / n
};

/// Multi-leader round with m signaling cooperators, enumerating every
/// signal vector and every contribution vector. Cooperator 0 is the focal
/// player when it is a cooperator.
inline Expectation multi_leader_round(int n, int m, bool focal_is_coop) {
  Expectation e;
  if (!focal_is_coop) e.keep = 1.0;
  const double high = 1.0 / n;
  for (std::uint32_t signals = 0; signals < (1u << m); ++signals) {
    const int x = std::popcount(signals);
    const double p_sig = std::pow(high, x) * std::pow(1.0 - high, m - x);
    const double h = h_by_graph(n, x);
    for (std::uint32_t gives = 0; gives < (1u << m); ++gives) {
      const int k = std::popcount(gives);
      const double p = p_sig * std::pow(h, k) * std::pow(1.0 - h, m - k);
      if (p == 0.0) continue;
      e.share += p * k / n;
      if (focal_is_coop && !(gives & 1u)) e.keep += p;
    }
  }
  return e;
}

/// Single-leader variants: probability that the group ends with exactly one
/// leader, from explicit signal-vector enumeration.
inline double single_leader_probability(int n, int m, ModelVariant v) {
  double p_one = 0.0;
  double p_zero = 0.0;
  const double high = 1.0 / n;
  for (std::uint32_t signals = 0; signals < (1u << m); ++signals) {
    const int x = std::popcount(signals);
    const double p = std::pow(high, x) * std::pow(1.0 - high, m - x);
    if (x == 1) p_one += p;
    if (x == 0) p_zero += p;
  }
  switch (v) {
    case ModelVariant::MarkRetry: return p_one / (p_one + p_zero);
    case ModelVariant::MarkNoMemory: return p_one;
    case ModelVariant::MarkWithMemory: return 1.0 - p_zero;
    case ModelVariant::MultiLeader: break;
  }
  return 0.0;
}

inline Expectation round_expectation(int n, int m, bool focal_is_coop, ModelVariant v) {
  if (v == ModelVariant::MultiLeader) return multi_leader_round(n, m, focal_is_coop);
  if (m == 0) return {1.0, 0.0};
  const double single = single_leader_probability(n, m, v);
  return {focal_is_coop ? 1.0 - single : 1.0, single * m / n};
}

/// (a, bcoef) by full enumeration.
inline hiergame::PayoffCoefficients coefficients(int n, double fc, double tau, ModelVariant v,
                                                 Role role) {
  const auto dist = tau == 0.0 ? composition_random(n, fc)
                               : composition_by_enumeration(n, fc, tau, role);
  hiergame::PayoffCoefficients out;
  const bool coop = role == Role::Cooperator;
  for (int i = 0; i < n; ++i) {
    const auto e = round_expectation(n, coop ? i + 1 : i, coop, v);
    out.a += dist[static_cast<std::size_t>(i)] * e.keep;
    out.bcoef += dist[static_cast<std::size_t>(i)] * e.share;
  }
  return out;
}

/// Root of W(C) - W(D) in c at b = 1 by bisection on [lo, hi].
template <typename Gap>
double bisect(Gap gap, double lo, double hi) {
  double g_lo = gap(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = gap(mid);
    if ((g_mid > 0) == (g_lo > 0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
