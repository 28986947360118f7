#include "dagdec/scoring.hpp"

#include <vector>

#include "dagdec/errors.hpp"
#include "dagdec/log_math.hpp"

namespace dagdec {

namespace {

void CheckTokens(const Instance &instance, const DecodingPath &path, const Translation &tokens) {
  path.CheckShape(instance.length());
  if (tokens.size() != path.size())
    throw DecodeError(ErrorKind::kShape,
                      "path has " + std::to_string(path.size()) + " positions but " +
                          std::to_string(tokens.size()) + " tokens");
  for (std::size_t y : tokens) {
    if (y >= instance.vocab_size())
      throw DecodeError(ErrorKind::kVocab, "token id " + std::to_string(y) +
                                               " outside vocabulary of size " +
                                               std::to_string(instance.vocab_size()));
  }
}

}  // namespace

double PathLogProb(const Instance &instance, const DecodingPath &path) {
  path.CheckShape(instance.length());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    total += instance.log_transition(path[i], path[i + 1]);
  return total;
}

double TranslationGivenPathLogProb(const Instance &instance, const DecodingPath &path,
                                   const Translation &tokens) {
  CheckTokens(instance, path, tokens);
  double total = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i)
    total += instance.log_emission(path[i], tokens[i]);
  return total;
}

double JointLogProb(const Instance &instance, const DecodingPath &path,
                    const Translation &tokens) {
  return PathLogProb(instance, path) + TranslationGivenPathLogProb(instance, path, tokens);
}

Hypothesis MakeHypothesis(const Instance &instance, DecodingPath path, Translation tokens) {
  Hypothesis h;
  h.path_logprob = PathLogProb(instance, path);
  h.emission_logprob = TranslationGivenPathLogProb(instance, path, tokens);
  h.joint_logprob = h.path_logprob + h.emission_logprob;
  h.path = std::move(path);
  h.tokens = std::move(tokens);
  return h;
}

double MarginalTranslationLogProb(const Instance &instance, const Translation &tokens) {
  const std::size_t L = instance.length();
  const std::size_t M = tokens.size();
  if (M == 0) throw DecodeError(ErrorKind::kShape, "empty token sequence");
  for (std::size_t y : tokens) {
    if (y >= instance.vocab_size())
      throw DecodeError(ErrorKind::kVocab, "token id " + std::to_string(y) + " out of range");
  }
  if (M > L || (M == 1 && L > 1))
    throw DecodeError(ErrorKind::kInfeasibleLength,
                      "no path of length " + std::to_string(M) + " in a lattice of length " +
                          std::to_string(L));

  // forward[t-1]: log-mass of length-i prefixes ending at t with tokens[0..i).
  std::vector<double> forward(L, kLogZero), next(L, kLogZero);
  forward[0] = instance.log_emission(1, tokens[0]);
  for (std::size_t i = 1; i < M; ++i) {
    std::fill(next.begin(), next.end(), kLogZero);
    // Token i sits at a position >= i+1 leaving room for the M-1-i tokens
    // after it; the last token sits at L.
    const std::size_t first = i + 1 == M ? L : i + 1;
    const std::size_t last = L - (M - 1 - i);
    for (std::size_t t = first; t <= last; ++t) {
      double acc = kLogZero;
      for (std::size_t from = i; from < t; ++from) {
        double prev = forward[from - 1];
        if (prev == kLogZero) continue;
        acc = LogAdd(acc, prev + instance.log_transition(from, t));
      }
      if (acc != kLogZero) next[t - 1] = acc + instance.log_emission(t, tokens[i]);
    }
    forward.swap(next);
  }
  return forward[L - 1];
}

EntropyStats ComputeEntropyStats(const Instance &instance) {
  const std::size_t L = instance.length();
  EntropyStats stats;
  if (L > 1) {
    double sum = 0.0;
    for (std::size_t t = 1; t < L; ++t) sum += LogEntropy(instance.transition_row(t));
    stats.transition_entropy = sum / static_cast<double>(L - 1);
  }
  double sum = 0.0;
  for (std::size_t t = 1; t <= L; ++t) sum += LogEntropy(instance.emission_row(t));
  stats.prediction_entropy = sum / static_cast<double>(L);
  return stats;
}

std::pair<std::size_t, double> ArgmaxEmission(const Instance &instance, std::size_t position) {
  if (position < 1 || position > instance.length())
    throw DecodeError(ErrorKind::kPosition, "position " + std::to_string(position) +
                                                " outside [1, " +
                                                std::to_string(instance.length()) + "]");
  auto row = instance.emission_row(position);
  std::size_t best = 0;
  for (std::size_t y = 1; y < row.size(); ++y)
    if (row[y] > row[best]) best = y;
  return {best, row[best]};
}

}  // namespace dagdec
