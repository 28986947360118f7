#ifndef DAGDEC_ORACLE_HPP
#define DAGDEC_ORACLE_HPP

// Brute-force ground truth for small lattices. Everything here works in
// linear probability space by naive enumeration and shares no code path
// with the dynamic programs it checks.

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "dagdec/instance.hpp"

namespace dagdec::oracle {

inline constexpr std::size_t kDefaultCap = 16;

struct ScoredPath {
  DecodingPath path;
  double probability = 0.0;
};

struct EnumerationResult {
  std::map<std::size_t, ScoredPath> best_per_length;  // lengths with nonzero mass
  ScoredPath global_best;
  std::size_t path_count = 0;  // paths with nonzero probability
};

/// Calls `visit` for every endpoint-anchored increasing path, 2^(L-2) of
/// them for L >= 2.
void ForEachPath(std::size_t lattice_length, std::size_t cap,
                 const std::function<void(const DecodingPath &)> &visit);

std::vector<DecodingPath> EnumeratePaths(const Instance &instance,
                                         std::size_t cap = kDefaultCap);

/// Exact maxima of P(A|X), per length and overall.
EnumerationResult BruteForceBestPath(const Instance &instance, std::size_t cap = kDefaultCap);

/// Exact maxima of P(A, Y|X) with Y fixed to each position's argmax token.
EnumerationResult BruteForceBestJoint(const Instance &instance, std::size_t cap = kDefaultCap);

/// Sum over paths of length |tokens| of P(A|X) P(tokens|X,A), with
/// compensated summation.
double BruteForceMarginal(const Instance &instance, const Translation &tokens,
                          std::size_t cap = kDefaultCap);

/// The argmax token at each position, chosen by a plain scan.
std::vector<std::size_t> ArgmaxTokens(const Instance &instance);

}  // namespace dagdec::oracle

#endif  // DAGDEC_ORACLE_HPP
