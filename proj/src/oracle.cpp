#include "dagdec/oracle.hpp"

#include <cmath>
#include <cstdint>

#include "dagdec/errors.hpp"

namespace dagdec::oracle {

namespace {

void CheckCap(std::size_t L, std::size_t cap) {
  if (L > cap)
    throw DecodeError(ErrorKind::kOracleCap, "lattice length " + std::to_string(L) +
                                                 " exceeds oracle cap " + std::to_string(cap));
}

double Prob(double log_value) { return std::exp(log_value); }

double PathProbability(const Instance &instance, const DecodingPath &path) {
  double p = 1.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    p *= Prob(instance.log_transition(path[i], path[i + 1]));
  return p;
}

// Mirrors the decoders' tie rule: among equal scores prefer the path whose
// positions, read from the end backwards, are smaller.
bool BackwardLess(const DecodingPath &a, const DecodingPath &b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

template <typename Score>
EnumerationResult Search(const Instance &instance, std::size_t cap, Score score) {
  EnumerationResult result;
  ForEachPath(instance.length(), cap, [&](const DecodingPath &path) {
    const double p = score(path);
    if (p <= 0.0) return;
    ++result.path_count;
    auto [it, inserted] = result.best_per_length.try_emplace(path.size(), ScoredPath{path, p});
    if (inserted) return;
    ScoredPath &best = it->second;
    if (p > best.probability || (p == best.probability && BackwardLess(path, best.path)))
      best = {path, p};
  });
  // Ascending lengths with >= : longer lengths win ties.
  for (const auto &[length, best] : result.best_per_length) {
    if (result.global_best.path.size() == 0 ||
        best.probability >= result.global_best.probability)
      result.global_best = best;
  }
  return result;
}

}  // namespace

void ForEachPath(std::size_t lattice_length, std::size_t cap,
                 const std::function<void(const DecodingPath &)> &visit) {
  CheckCap(lattice_length, cap);
  const std::size_t L = lattice_length;
  if (L == 1) {
    visit(DecodingPath({1}));
    return;
  }
  const std::size_t interior = L - 2;
  std::vector<std::size_t> positions;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << interior); ++mask) {
    positions.clear();
    positions.push_back(1);
    for (std::size_t bit = 0; bit < interior; ++bit)
      if (mask & (std::uint64_t{1} << bit)) positions.push_back(bit + 2);
    positions.push_back(L);
    visit(DecodingPath(positions));
  }
}

std::vector<DecodingPath> EnumeratePaths(const Instance &instance, std::size_t cap) {
  std::vector<DecodingPath> out;
  ForEachPath(instance.length(), cap, [&](const DecodingPath &p) { out.push_back(p); });
  return out;
}

std::vector<std::size_t> ArgmaxTokens(const Instance &instance) {
  std::vector<std::size_t> tokens;
  for (std::size_t t = 1; t <= instance.length(); ++t) {
    std::size_t best = 0;
    double best_p = -1.0;
    for (std::size_t y = 0; y < instance.vocab_size(); ++y) {
      double p = Prob(instance.log_emission(t, y));
      if (p > best_p) {
        best_p = p;
        best = y;
      }
    }
    tokens.push_back(best);
  }
  return tokens;
}

EnumerationResult BruteForceBestPath(const Instance &instance, std::size_t cap) {
  return Search(instance, cap,
                [&](const DecodingPath &path) { return PathProbability(instance, path); });
}

EnumerationResult BruteForceBestJoint(const Instance &instance, std::size_t cap) {
  CheckCap(instance.length(), cap);
  const std::vector<std::size_t> tokens = ArgmaxTokens(instance);
  return Search(instance, cap, [&](const DecodingPath &path) {
    double p = PathProbability(instance, path);
    for (std::size_t t : path.positions()) p *= Prob(instance.log_emission(t, tokens[t - 1]));
    return p;
  });
}

double BruteForceMarginal(const Instance &instance, const Translation &tokens,
                          std::size_t cap) {
  CheckCap(instance.length(), cap);
  for (std::size_t y : tokens)
    if (y >= instance.vocab_size())
      throw DecodeError(ErrorKind::kVocab, "token id " + std::to_string(y) + " out of range");
  // Neumaier summation.
  double sum = 0.0, compensation = 0.0;
  ForEachPath(instance.length(), cap, [&](const DecodingPath &path) {
    if (path.size() != tokens.size()) return;
    double p = PathProbability(instance, path);
    for (std::size_t i = 0; i < path.size(); ++i)
      p *= Prob(instance.log_emission(path[i], tokens[i]));
    const double t = sum + p;
    if (std::abs(sum) >= std::abs(p))
      compensation += (sum - t) + p;
    else
      compensation += (p - t) + sum;
    sum = t;
  });
  return sum + compensation;
}

}  // namespace dagdec::oracle
