#include "dagdec/generator.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "dagdec/errors.hpp"
#include "dagdec/log_math.hpp"

namespace dagdec {

namespace {

// log of a Gamma(shape, 1) draw. For shape < 1 uses
// Gamma(a) = Gamma(a + 1) * U^(1/a) to stay in log space.
double LogGammaDraw(double shape, std::mt19937_64 &rng) {
  if (shape >= 1.0) {
    std::gamma_distribution<double> gamma(shape, 1.0);
    double g = 0.0;
    while (g <= 0.0) g = gamma(rng);
    return std::log(g);
  }
  std::gamma_distribution<double> gamma(shape + 1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double g = 0.0, u = 0.0;
  while (g <= 0.0) g = gamma(rng);
  while (u <= 0.0) u = unit(rng);
  return std::log(g) + std::log(u) / shape;
}

// Fills the entries flagged in `allowed` with a log-Dirichlet draw and the
// rest with -inf.
void DirichletRow(std::span<double> row, const std::vector<bool> &allowed, double concentration,
                  std::mt19937_64 &rng) {
  for (std::size_t k = 0; k < row.size(); ++k)
    row[k] = allowed[k] ? LogGammaDraw(concentration, rng) : kLogZero;
  const double norm = LogSumExp(row);
  for (double &v : row)
    if (v != kLogZero) v -= norm;
}

}  // namespace

void CheckConfig(const GeneratorConfig &config) {
  auto fail = [](const std::string &why) { throw DecodeError(ErrorKind::kConfig, why); };
  if (config.length < 1) fail("length must be >= 1");
  if (config.vocab_size < 1) fail("vocab size must be >= 1");
  if (!(config.transition_concentration > 0.0)) fail("transition concentration must be > 0");
  if (!(config.emission_concentration > 0.0)) fail("emission concentration must be > 0");
  if (!(config.sparsity >= 0.0 && config.sparsity < 1.0))
    fail("sparsity must lie in [0, 1); 1 would leave rows without successors");
}

Instance GenerateInstance(const GeneratorConfig &config) {
  CheckConfig(config);
  const std::size_t L = config.length;
  const std::size_t V = config.vocab_size;
  std::mt19937_64 rng(config.seed);

  LogMatrix transitions(L, L, kLogZero);
  std::bernoulli_distribution forbid(config.sparsity);
  for (std::size_t r = 0; r + 1 < L; ++r) {
    std::vector<bool> allowed(L, false);
    std::size_t kept = 0;
    for (std::size_t c = r + 1; c < L; ++c) {
      allowed[c] = config.sparsity == 0.0 || !forbid(rng);
      kept += allowed[c];
    }
    if (kept == 0) {
      std::uniform_int_distribution<std::size_t> pick(r + 1, L - 1);
      allowed[pick(rng)] = true;
    }
    DirichletRow(transitions.row(r), allowed, config.transition_concentration, rng);
  }

  LogMatrix emissions(L, V, kLogZero);
  const std::vector<bool> all_tokens(V, true);
  for (std::size_t r = 0; r < L; ++r)
    DirichletRow(emissions.row(r), all_tokens, config.emission_concentration, rng);

  return Instance(std::move(transitions), std::move(emissions));
}

}  // namespace dagdec
