#ifndef DAGDEC_SCORING_HPP
#define DAGDEC_SCORING_HPP

#include <cstddef>
#include <utility>

#include "dagdec/instance.hpp"

namespace dagdec {

struct EntropyStats {
  double transition_entropy = 0.0;  // nats, mean over rows 1..L-1
  double prediction_entropy = 0.0;  // nats, mean over rows 1..L
};

/// log P(A|X): sum of hop log-probabilities; -inf if any hop is impossible.
double PathLogProb(const Instance &instance, const DecodingPath &path);

/// log P(Y|X,A): sum of log_emission(a_i, y_i).
double TranslationGivenPathLogProb(const Instance &instance, const DecodingPath &path,
                                   const Translation &tokens);

double JointLogProb(const Instance &instance, const DecodingPath &path,
                    const Translation &tokens);

/// Scores (path, tokens) into a full hypothesis; joint = path + emission.
Hypothesis MakeHypothesis(const Instance &instance, DecodingPath path, Translation tokens);

/// log P(Y|X) summed over every path of length |tokens|, by a forward
/// recursion in the log semiring. Throws kInfeasibleLength when no path of
/// that length exists.
double MarginalTranslationLogProb(const Instance &instance, const Translation &tokens);

EntropyStats ComputeEntropyStats(const Instance &instance);

/// Most probable token at a position; smallest id wins ties.
std::pair<std::size_t, double> ArgmaxEmission(const Instance &instance, std::size_t position);

}  // namespace dagdec

#endif  // DAGDEC_SCORING_HPP
