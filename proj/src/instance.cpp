#include "dagdec/instance.hpp"

#include <cmath>
#include <sstream>

#include "dagdec/errors.hpp"
#include "dagdec/log_math.hpp"

namespace dagdec {

LogMatrix::LogMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Instance::Instance(LogMatrix log_transitions, LogMatrix log_emissions,
                   std::vector<std::string> vocab)
    : transitions_(std::move(log_transitions)),
      emissions_(std::move(log_emissions)),
      vocab_(std::move(vocab)) {
  const std::size_t L = transitions_.rows();
  if (L == 0) throw DecodeError(ErrorKind::kShape, "lattice length must be positive");
  if (transitions_.cols() != L) {
    std::ostringstream os;
    os << "log_transitions is " << L << "x" << transitions_.cols()
       << ", expected square";
    throw DecodeError(ErrorKind::kShape, os.str());
  }
  if (emissions_.rows() != L) {
    std::ostringstream os;
    os << "log_emissions has " << emissions_.rows() << " rows, expected " << L;
    throw DecodeError(ErrorKind::kShape, os.str());
  }
  if (emissions_.cols() == 0)
    throw DecodeError(ErrorKind::kShape, "vocabulary size must be positive");
  if (!vocab_.empty() && vocab_.size() != emissions_.cols()) {
    std::ostringstream os;
    os << "vocab has " << vocab_.size() << " entries, expected " << emissions_.cols();
    throw DecodeError(ErrorKind::kShape, os.str());
  }
}

namespace {

LogMatrix FromRows(const std::vector<std::vector<double>> &rows, const char *name) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  LogMatrix m(rows.size(), cols, kLogZero);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw DecodeError(ErrorKind::kShape, std::string(name) + " rows are ragged");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = rows[r][c] > 0.0 ? std::log(rows[r][c]) : kLogZero;
  }
  return m;
}

}  // namespace

Instance Instance::FromProbabilities(
    const std::vector<std::vector<double>> &transitions,
    const std::vector<std::vector<double>> &emissions) {
  return Instance(FromRows(transitions, "transitions"), FromRows(emissions, "emissions"));
}

void DecodingPath::CheckShape(std::size_t lattice_length) const {
  auto fail = [&](const std::string &why) {
    throw DecodeError(ErrorKind::kPathShape, why);
  };
  if (positions_.empty()) fail("empty path");
  if (positions_.front() != 1) fail("path must start at position 1");
  if (positions_.back() != lattice_length)
    fail("path must end at position " + std::to_string(lattice_length));
  for (std::size_t i = 1; i < positions_.size(); ++i) {
    if (positions_[i] <= positions_[i - 1])
      fail("positions must be strictly increasing (index " + std::to_string(i + 1) + ")");
  }
  if (lattice_length >= 2 && positions_.size() < 2) fail("path needs both endpoints");
}

namespace {

std::string Describe(const char *what, std::size_t row, double residual) {
  std::ostringstream os;
  os.precision(12);
  os << what << " at row " << row << " (residual " << residual << ")";
  return os.str();
}

}  // namespace

std::vector<Violation> Validate(const Instance &instance) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  const std::size_t L = instance.length();
  const std::size_t V = instance.vocab_size();

  for (std::size_t t = 1; t <= L; ++t) {
    auto row = instance.transition_row(t);
    bool any_finite_successor = false;
    for (std::size_t to = 1; to <= L; ++to) {
      double v = row[to - 1];
      if (std::isnan(v)) {
        out.push_back({Kind::kNotANumber, t, v, Describe("NaN transition entry", t, v)});
        continue;
      }
      if (v > 0.0)
        out.push_back({Kind::kPositiveLogProb, t, v,
                       Describe("transition log-probability above 0", t, v)});
      if (to <= t && v != kLogZero) {
        if (t < L)  // terminal row is reported as a whole below
          out.push_back({Kind::kBackwardTransition, t, v,
                         Describe("transition to a non-later position", t, v)});
      } else if (to > t && v != kLogZero) {
        any_finite_successor = true;
      }
    }
    if (t < L) {
      if (!any_finite_successor) {
        out.push_back({Kind::kDeadEnd, t, kLogZero, Describe("no finite successor", t, kLogZero)});
      } else {
        double mass = LogSumExp(row.subspan(t));
        if (!(std::abs(mass) <= kNormalizationTolerance))
          out.push_back({Kind::kTransitionNormalization, t, mass,
                         Describe("transition row normalization", t, mass)});
      }
    } else {
      double mass = LogSumExp(row);
      if (mass != kLogZero)
        out.push_back({Kind::kTerminalRow, t, mass,
                       Describe("terminal row must be entirely -inf", t, mass)});
    }

    auto emit = instance.emission_row(t);
    bool emit_nan = false;
    for (std::size_t y = 0; y < V; ++y) {
      if (std::isnan(emit[y])) {
        out.push_back({Kind::kNotANumber, t, emit[y], Describe("NaN emission entry", t, emit[y])});
        emit_nan = true;
      } else if (emit[y] > 0.0) {
        out.push_back({Kind::kPositiveLogProb, t, emit[y],
                       Describe("emission log-probability above 0", t, emit[y])});
      }
    }
    if (!emit_nan) {
      double mass = LogSumExp(emit);
      if (!(std::abs(mass) <= kNormalizationTolerance))
        out.push_back({Kind::kEmissionNormalization, t, mass,
                       Describe("emission row normalization", t, mass)});
    }
  }
  return out;
}

}  // namespace dagdec
