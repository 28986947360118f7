#ifndef DAGDEC_LOG_MATH_HPP
#define DAGDEC_LOG_MATH_HPP

#include <cmath>
#include <limits>
#include <span>

namespace dagdec {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)), exact for -inf operands.
inline double LogAdd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kLogZero) return a;
  return a + std::log1p(std::exp(b - a));
}

/// Max-shifted log-sum-exp. Empty input (or all -inf) yields -inf.
inline double LogSumExp(std::span<const double> values) {
  double mx = kLogZero;
  for (double v : values) mx = v > mx ? v : mx;
  if (mx == kLogZero) return kLogZero;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

/// Shannon entropy (nats) of a distribution given by its log-probabilities.
/// -inf entries carry no mass.
inline double LogEntropy(std::span<const double> log_probs) {
  double h = 0.0;
  for (double lp : log_probs) {
    if (lp == kLogZero) continue;
    h -= std::exp(lp) * lp;
  }
  return h;
}

}  // namespace dagdec

#endif  // DAGDEC_LOG_MATH_HPP
