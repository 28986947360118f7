#include "dagdec/decoders.hpp"

#include <cmath>

#include "dagdec/errors.hpp"
#include "dagdec/log_math.hpp"
#include "dagdec/scoring.hpp"

namespace dagdec {

ViterbiTable::ViterbiTable(ViterbiMode mode, std::size_t length)
    : mode_(mode),
      length_(length),
      alpha_(length * length, kLogZero),
      psi_(length * length, 0) {}

namespace {

Translation ArgmaxTokens(const Instance &instance, const DecodingPath &path) {
  Translation tokens;
  tokens.reserve(path.size());
  for (std::size_t t : path.positions()) tokens.push_back(ArgmaxEmission(instance, t).first);
  return tokens;
}

std::vector<double> BestEmissions(const Instance &instance) {
  std::vector<double> best(instance.length());
  for (std::size_t t = 1; t <= instance.length(); ++t)
    best[t - 1] = ArgmaxEmission(instance, t).second;
  return best;
}

// Shared stepping loop for greedy and lookahead: from the current position,
// hop to the successor maximizing log E[cur][to] + bonus[to].
template <typename Bonus>
DecodingPath StepToTerminal(const Instance &instance, Bonus bonus) {
  const std::size_t L = instance.length();
  std::vector<std::size_t> positions{1};
  std::size_t cur = 1;
  while (cur < L) {
    auto row = instance.transition_row(cur);
    std::size_t best = 0;
    double best_score = kLogZero;
    for (std::size_t to = cur + 1; to <= L; ++to) {
      double score = row[to - 1] + bonus(to);
      if (score > best_score) {
        best_score = score;
        best = to;
      }
    }
    if (best == 0)
      throw DecodeError(ErrorKind::kDeadEnd,
                        "no finite successor from position " + std::to_string(cur));
    positions.push_back(best);
    cur = best;
  }
  return DecodingPath(std::move(positions));
}

// max over j in [lo, hi) of a[j] + b[j], with independent accumulators.
double MaxPlus(const double *a, const double *b, std::size_t lo, std::size_t hi) {
  double m0 = kLogZero, m1 = kLogZero, m2 = kLogZero, m3 = kLogZero;
  std::size_t j = lo;
  for (; j + 4 <= hi; j += 4) {
    const double v0 = a[j] + b[j], v1 = a[j + 1] + b[j + 1];
    const double v2 = a[j + 2] + b[j + 2], v3 = a[j + 3] + b[j + 3];
    m0 = v0 > m0 ? v0 : m0;
    m1 = v1 > m1 ? v1 : m1;
    m2 = v2 > m2 ? v2 : m2;
    m3 = v3 > m3 ? v3 : m3;
  }
  for (; j < hi; ++j) {
    const double v = a[j] + b[j];
    m0 = v > m0 ? v : m0;
  }
  m0 = m1 > m0 ? m1 : m0;
  m2 = m3 > m2 ? m3 : m2;
  return m2 > m0 ? m2 : m0;
}

}  // namespace

Hypothesis GreedyDecode(const Instance &instance) {
  DecodingPath path = StepToTerminal(instance, [](std::size_t) { return 0.0; });
  Translation tokens = ArgmaxTokens(instance, path);
  return MakeHypothesis(instance, std::move(path), std::move(tokens));
}

Hypothesis LookaheadDecode(const Instance &instance) {
  const std::vector<double> best_emit = BestEmissions(instance);
  DecodingPath path =
      StepToTerminal(instance, [&](std::size_t to) { return best_emit[to - 1]; });
  Translation tokens = ArgmaxTokens(instance, path);
  return MakeHypothesis(instance, std::move(path), std::move(tokens));
}

ViterbiTable BuildViterbiTable(const Instance &instance, ViterbiMode mode) {
  const std::size_t L = instance.length();
  ViterbiTable table(mode, L);
  std::vector<double> best_emit;
  if (mode == ViterbiMode::kJoint) best_emit = BestEmissions(instance);

  table.Set(1, 1, mode == ViterbiMode::kJoint ? best_emit[0] : 0.0, 0);
  if (L == 1) return table;

  // incoming[to * L + from] = log E[from][to], so each target reads its
  // predecessors contiguously.
  std::vector<double> incoming(L * L);
  const LogMatrix &forward = instance.log_transitions();
  for (std::size_t from = 0; from < L; ++from)
    for (std::size_t to = 0; to < L; ++to) incoming[to * L + from] = forward(from, to);

  for (std::size_t step = 2; step <= L; ++step) {
    const double *prev = table.alpha_row(step - 1);
    double *cur = table.alpha_row(step);
    std::uint32_t *back = table.psi_row(step);
    // 0-based: a length-(step-1) prefix ends at index >= step-2.
    const std::size_t lo = step - 2;
    bool any = false;
    for (std::size_t to = step - 1; to < L; ++to) {
      const double *in = &incoming[to * L];
      const double best = MaxPlus(prev, in, lo, to);
      if (best == kLogZero) continue;
      any = true;
      // Smallest predecessor attaining the max; same expression, same bits.
      std::size_t from = lo;
      while (prev[from] + in[from] != best) ++from;
      const double score = mode == ViterbiMode::kJoint ? best + best_emit[to] : best;
      cur[to] = score;
      back[to] = static_cast<std::uint32_t>(from + 1);
    }
    if (!any) break;
  }
  return table;
}

LengthSelection SelectLength(const ViterbiTable &table, double beta) {
  if (!(beta >= 0.0))
    throw DecodeError(ErrorKind::kPrecondition, "length penalty beta must be >= 0");
  const std::size_t L = table.length();
  LengthSelection sel;
  double best = kLogZero;
  for (std::size_t i = 1; i <= L; ++i) {
    const double raw = table.alpha(i, L);
    if (raw == kLogZero) continue;
    const double penalized = raw / std::pow(static_cast<double>(i), beta);
    sel.per_length.push_back({i, raw, penalized});
    if (sel.chosen_length == 0 || penalized >= best) {
      best = penalized;
      sel.chosen_length = i;
    }
  }
  if (sel.chosen_length == 0)
    throw DecodeError(ErrorKind::kUnreachableTerminal,
                      "no path of any length reaches position " + std::to_string(L));
  return sel;
}

DecodingPath Backtrace(const ViterbiTable &table, std::size_t length) {
  const std::size_t L = table.length();
  if (length < 1 || length > L || table.alpha(length, L) == kLogZero)
    throw DecodeError(ErrorKind::kInfeasibleLength,
                      "no path of length " + std::to_string(length) + " reaches position " +
                          std::to_string(L));
  std::vector<std::size_t> positions(length);
  positions[length - 1] = L;
  for (std::size_t i = length - 1; i >= 1; --i)
    positions[i - 1] = table.psi(i + 1, positions[i]);
  return DecodingPath(std::move(positions));
}

ViterbiResult ViterbiSearch(const Instance &instance, ViterbiMode mode, double beta) {
  const ViterbiTable table = BuildViterbiTable(instance, mode);
  LengthSelection selection = SelectLength(table, beta);
  DecodingPath path = Backtrace(table, selection.chosen_length);
  Translation tokens = ArgmaxTokens(instance, path);
  return {MakeHypothesis(instance, std::move(path), std::move(tokens)), std::move(selection)};
}

Hypothesis ViterbiDecode(const Instance &instance, double beta) {
  return ViterbiSearch(instance, ViterbiMode::kPath, beta).hypothesis;
}

Hypothesis JointViterbiDecode(const Instance &instance, double beta) {
  return ViterbiSearch(instance, ViterbiMode::kJoint, beta).hypothesis;
}

std::vector<Hypothesis> DecodeAllLengths(const Instance &instance, const ViterbiTable &table) {
  std::vector<Hypothesis> out;
  const std::size_t L = table.length();
  for (std::size_t i = 1; i <= L; ++i) {
    if (table.alpha(i, L) == kLogZero) continue;
    DecodingPath path = Backtrace(table, i);
    Translation tokens = ArgmaxTokens(instance, path);
    out.push_back(MakeHypothesis(instance, std::move(path), std::move(tokens)));
  }
  return out;
}

std::vector<Hypothesis> DecodeAllLengths(const Instance &instance, ViterbiMode mode) {
  return DecodeAllLengths(instance, BuildViterbiTable(instance, mode));
}

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kGreedy: return "greedy";
    case Strategy::kLookahead: return "lookahead";
    case Strategy::kViterbi: return "viterbi";
    case Strategy::kJointViterbi: return "joint-viterbi";
  }
  return "unknown";
}

Strategy ParseStrategy(std::string_view name) {
  for (Strategy s : {Strategy::kGreedy, Strategy::kLookahead, Strategy::kViterbi,
                     Strategy::kJointViterbi}) {
    if (StrategyName(s) == name) return s;
  }
  throw DecodeError(ErrorKind::kConfig, "unknown strategy '" + std::string(name) + "'");
}

Hypothesis Decode(const Instance &instance, Strategy strategy, double beta) {
  switch (strategy) {
    case Strategy::kGreedy: return GreedyDecode(instance);
    case Strategy::kLookahead: return LookaheadDecode(instance);
    case Strategy::kViterbi: return ViterbiDecode(instance, beta);
    case Strategy::kJointViterbi: return JointViterbiDecode(instance, beta);
  }
  throw DecodeError(ErrorKind::kConfig, "unknown strategy");
}

}  // namespace dagdec
