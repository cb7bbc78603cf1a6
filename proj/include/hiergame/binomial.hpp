#pragma once

#include <vector>

namespace hiergame {

/// C(m, k) p^k (1-p)^(m-k). Linear-space multiplicative recurrence for the
/// binomial coefficient up to m = 120, log-gamma beyond that.
double binomial_pmf(int k, int m, double p);

/// All of binomial_pmf(0..m, m, p).
std::vector<double> binomial_row(int m, double p);

/// C(m, k) as a double; 0 outside 0 <= k <= m.
double choose(int m, int k);

}  // namespace hiergame
