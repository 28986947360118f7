#ifndef DAGDEC_ANALYSIS_HPP
#define DAGDEC_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dagdec/decoders.hpp"
#include "dagdec/instance.hpp"
#include "dagdec/scoring.hpp"
#include "json.hpp"

namespace dagdec::analysis {

enum class ScoreKind { kJoint, kMarginal };

std::string_view ScoreKindName(ScoreKind kind);
ScoreKind ParseScoreKind(std::string_view name);

/// Scores closer than this (relative, linear space) count as ties.
inline constexpr double kTieTolerance = 1e-9;

/// True when exp(a) and exp(b) agree within kTieTolerance relative.
bool RelativeTie(double a, double b);

struct PairwiseRate {
  Strategy first;
  Strategy second;
  double win_rate = 0.0;  // first strictly above second
  double tie_rate = 0.0;
};

struct StrategyTiming {
  Strategy strategy;
  double mean_seconds = 0.0;  // per instance
  double stddev_seconds = 0.0;
  double ratio_to_baseline = 0.0;
};

struct TimingReport {
  Strategy baseline;
  std::size_t repetitions = 0;
  std::vector<StrategyTiming> per_strategy;
};

struct StrategyReport {
  ScoreKind score_kind = ScoreKind::kJoint;
  double beta = 1.0;
  std::size_t instance_count = 0;
  std::vector<Strategy> strategies;
  std::vector<double> avg_logprob;          // parallel to strategies
  std::vector<double> optimum_match_rate;   // parallel to strategies
  std::vector<PairwiseRate> pairwise;       // every ordered pair
  EntropyStats mean_entropy;
  std::optional<TimingReport> timings;

  const PairwiseRate &Pair(Strategy first, Strategy second) const;
  double AverageFor(Strategy s) const;
  double MatchRateFor(Strategy s) const;
};

/// decoded[instance][strategy].
using DecodedSet = std::vector<std::vector<Hypothesis>>;

/// Decodes every instance with every strategy. Work is split across
/// `workers` threads by instance; results do not depend on the count.
DecodedSet DecodeBatch(const std::vector<Instance> &instances,
                       const std::vector<Strategy> &strategies, double beta,
                       std::size_t workers = 1);

/// Builds the report from already decoded outputs. Pure.
StrategyReport Summarize(const std::vector<Instance> &instances,
                         const std::vector<Strategy> &strategies, const DecodedSet &decoded,
                         ScoreKind score_kind, double beta);

StrategyReport CompareStrategies(const std::vector<Instance> &instances,
                                 const std::vector<Strategy> &strategies, ScoreKind score_kind,
                                 double beta, std::size_t workers = 1);

/// Whether a hypothesis attains the best joint probability among paths of
/// its own length (reference: the joint Viterbi table).
bool MatchesLengthOptimum(const Instance &instance, const Hypothesis &hypothesis);

double OptimumMatchRate(const std::vector<Instance> &instances, Strategy strategy, double beta);

/// Sequential single-threaded wall-clock timing, batch size 1. One untimed
/// warm-up pass precedes `repetitions` timed passes.
TimingReport Benchmark(const std::vector<Instance> &instances,
                       const std::vector<Strategy> &strategies, std::size_t repetitions,
                       Strategy baseline, double beta);

nlohmann::json ReportToJson(const StrategyReport &report);
nlohmann::json TimingToJson(const TimingReport &timing);

}  // namespace dagdec::analysis

#endif  // DAGDEC_ANALYSIS_HPP
