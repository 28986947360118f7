#ifndef DAGDEC_DECODERS_HPP
#define DAGDEC_DECODERS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dagdec/instance.hpp"

namespace dagdec {

enum class ViterbiMode {
  kPath,   // maximize P(A|X)
  kJoint,  // maximize P(A, Y|X) with Y the per-position argmax tokens
};

/// Best prefix scores alpha(i, t) and backpointers psi(i, t), indexed by
/// path length i in [1, L] and end position t in [1, L].
class ViterbiTable {
 public:
  ViterbiTable(ViterbiMode mode, std::size_t length);

  ViterbiMode mode() const { return mode_; }
  std::size_t length() const { return length_; }

  double alpha(std::size_t step, std::size_t position) const {
    return alpha_[Index(step, position)];
  }
  /// 0 when there is no predecessor.
  std::size_t psi(std::size_t step, std::size_t position) const {
    return psi_[Index(step, position)];
  }
  void Set(std::size_t step, std::size_t position, double score, std::size_t predecessor) {
    alpha_[Index(step, position)] = score;
    psi_[Index(step, position)] = static_cast<std::uint32_t>(predecessor);
  }

  double *alpha_row(std::size_t step) { return &alpha_[Index(step, 1)]; }
  std::uint32_t *psi_row(std::size_t step) { return &psi_[Index(step, 1)]; }
  const double *alpha_row(std::size_t step) const { return &alpha_[Index(step, 1)]; }

  bool operator==(const ViterbiTable &) const = default;

 private:
  std::size_t Index(std::size_t step, std::size_t position) const {
    return (step - 1) * length_ + (position - 1);
  }

  ViterbiMode mode_;
  std::size_t length_;
  std::vector<double> alpha_;
  std::vector<std::uint32_t> psi_;
};

struct LengthScore {
  std::size_t length;
  double raw;        // alpha(length, L)
  double penalized;  // raw / length^beta
};

struct LengthSelection {
  std::size_t chosen_length = 0;
  std::vector<LengthScore> per_length;  // feasible lengths, ascending
};

Hypothesis GreedyDecode(const Instance &instance);
Hypothesis LookaheadDecode(const Instance &instance);

ViterbiTable BuildViterbiTable(const Instance &instance, ViterbiMode mode);

/// Picks the length maximizing alpha(i, L) / i^beta; larger length wins ties.
LengthSelection SelectLength(const ViterbiTable &table, double beta);

DecodingPath Backtrace(const ViterbiTable &table, std::size_t length);

struct ViterbiResult {
  Hypothesis hypothesis;
  LengthSelection selection;
};

ViterbiResult ViterbiSearch(const Instance &instance, ViterbiMode mode, double beta);

Hypothesis ViterbiDecode(const Instance &instance, double beta);
Hypothesis JointViterbiDecode(const Instance &instance, double beta);

/// One backtraced hypothesis per feasible length, ascending by length.
std::vector<Hypothesis> DecodeAllLengths(const Instance &instance, ViterbiMode mode);
std::vector<Hypothesis> DecodeAllLengths(const Instance &instance, const ViterbiTable &table);

enum class Strategy { kGreedy, kLookahead, kViterbi, kJointViterbi };

std::string_view StrategyName(Strategy s);
/// Throws kConfig for unknown names.
Strategy ParseStrategy(std::string_view name);

/// Dispatches to the strategy; beta is ignored by greedy and lookahead.
Hypothesis Decode(const Instance &instance, Strategy strategy, double beta);

}  // namespace dagdec

#endif  // DAGDEC_DECODERS_HPP
