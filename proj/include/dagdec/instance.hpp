#ifndef DAGDEC_INSTANCE_HPP
#define DAGDEC_INSTANCE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dagdec {

/// Dense row-major table of log-probabilities, 0-based indexing.
class LogMatrix {
 public:
  LogMatrix() = default;
  LogMatrix(std::size_t rows, std::size_t cols, double fill);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const LogMatrix &) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// One decoding problem: an L-position acyclic lattice with per-position
/// token distributions. Positions are 1-based in every accessor; token ids
/// are 0-based. Immutable once built.
class Instance {
 public:
  /// Checks only table shapes (transitions L x L, emissions L x V, vocab
  /// empty or V entries). Distribution invariants are checked by Validate.
  Instance(LogMatrix log_transitions, LogMatrix log_emissions,
           std::vector<std::string> vocab = {});

  /// Builds from linear-space probabilities; zeros become -inf.
  static Instance FromProbabilities(
      const std::vector<std::vector<double>> &transitions,
      const std::vector<std::vector<double>> &emissions);

  std::size_t length() const { return transitions_.rows(); }
  std::size_t vocab_size() const { return emissions_.cols(); }

  /// log E[from][to].
  double log_transition(std::size_t from, std::size_t to) const {
    return transitions_(from - 1, to - 1);
  }
  /// log P(token | position).
  double log_emission(std::size_t position, std::size_t token) const {
    return emissions_(position - 1, token);
  }
  std::span<const double> transition_row(std::size_t from) const {
    return transitions_.row(from - 1);
  }
  std::span<const double> emission_row(std::size_t position) const {
    return emissions_.row(position - 1);
  }

  const LogMatrix &log_transitions() const { return transitions_; }
  const LogMatrix &log_emissions() const { return emissions_; }
  const std::vector<std::string> &vocab() const { return vocab_; }

  bool operator==(const Instance &) const = default;

 private:
  LogMatrix transitions_;
  LogMatrix emissions_;
  std::vector<std::string> vocab_;
};

/// Strictly increasing 1-based positions with a_1 = 1 and a_M = L.
class DecodingPath {
 public:
  DecodingPath() = default;
  explicit DecodingPath(std::vector<std::size_t> positions)
      : positions_(std::move(positions)) {}

  const std::vector<std::size_t> &positions() const { return positions_; }
  std::size_t size() const { return positions_.size(); }
  std::size_t operator[](std::size_t i) const { return positions_[i]; }

  /// Throws DecodeError(kPathShape) unless the path is well formed for a
  /// lattice of the given length.
  void CheckShape(std::size_t lattice_length) const;

  bool operator==(const DecodingPath &) const = default;

 private:
  std::vector<std::size_t> positions_;
};

using Translation = std::vector<std::size_t>;

struct Hypothesis {
  DecodingPath path;
  Translation tokens;
  double path_logprob = 0.0;      // log P(A|X)
  double emission_logprob = 0.0;  // log P(Y|X,A)
  double joint_logprob = 0.0;     // path + emission, summed once

  bool operator==(const Hypothesis &) const = default;
};

struct Violation {
  enum class Kind {
    kTransitionNormalization,
    kTerminalRow,
    kEmissionNormalization,
    kDeadEnd,
    kBackwardTransition,
    kPositiveLogProb,
    kNotANumber,
  };
  Kind kind;
  std::size_t row;  // 1-based position
  double residual;  // measured deviation (log mass, or offending value)
  std::string message;
};

inline constexpr double kNormalizationTolerance = 1e-6;

/// Every distribution-invariant violation; empty iff the instance is valid.
std::vector<Violation> Validate(const Instance &instance);

}  // namespace dagdec

#endif  // DAGDEC_INSTANCE_HPP
