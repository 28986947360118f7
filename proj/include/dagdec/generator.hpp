#ifndef DAGDEC_GENERATOR_HPP
#define DAGDEC_GENERATOR_HPP

#include <cstddef>
#include <cstdint>

#include "dagdec/instance.hpp"

namespace dagdec {

struct GeneratorConfig {
  std::size_t length = 8;
  std::size_t vocab_size = 4;
  std::uint64_t seed = 0;
  double transition_concentration = 1.0;
  double emission_concentration = 1.0;
  // Probability that a forward transition is forbidden. Each row keeps at
  // least one successor, so any value in [0, 1) is feasible.
  double sparsity = 0.0;
};

/// Throws kConfig for out-of-range settings.
void CheckConfig(const GeneratorConfig &config);

/// Rows drawn from symmetric Dirichlet distributions over the allowed
/// successors (transitions) and the vocabulary (emissions). Deterministic in
/// the seed. Sampling is done in log space so tiny concentrations do not
/// underflow to zero rows.
Instance GenerateInstance(const GeneratorConfig &config);

}  // namespace dagdec

#endif  // DAGDEC_GENERATOR_HPP
