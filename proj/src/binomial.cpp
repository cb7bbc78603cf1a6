#include "hiergame/binomial.hpp"

#include <cmath>
#include <stdexcept>

namespace hiergame {

namespace {

constexpr int kLinearLimit = 120;

double log_choose(int m, int k) {
  return std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
}

}  // namespace

double choose(int m, int k) {
  if (m < 0 || k < 0 || k > m) return 0.0;
  if (m > kLinearLimit) return std::exp(log_choose(m, k));
  if (k > m - k) k = m - k;
  double value = 1.0;
  for (int t = 0; t < k; ++t) value = value * static_cast<double>(m - t) / static_cast<double>(t + 1);
  // Integers below 2^53 are exact in a double; snap off the division residue.
  return value < 0x1.0p53 ? std::round(value) : value;
}

double binomial_pmf(int k, int m, double p) {
  if (m < 0 || k < 0 || k > m) throw std::domain_error("binomial_pmf: need 0 <= k <= m");
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial_pmf: p outside [0, 1]");
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == m ? 1.0 : 0.0;
  if (m <= kLinearLimit) {
    return choose(m, k) * std::pow(p, k) * std::pow(1.0 - p, m - k);
  }
  return std::exp(log_choose(m, k) + k * std::log(p) + (m - k) * std::log1p(-p));
}

std::vector<double> binomial_row(int m, double p) {
  if (m < 0) throw std::domain_error("binomial_row: m < 0");
  std::vector<double> row(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) row[static_cast<std::size_t>(k)] = binomial_pmf(k, m, p);
  return row;
}

}  // namespace hiergame
