#include "dagdec/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "dagdec/errors.hpp"
#include "dagdec/instance_io.hpp"
#include "dagdec/log_math.hpp"

namespace dagdec::analysis {

std::string_view ScoreKindName(ScoreKind kind) {
  return kind == ScoreKind::kJoint ? "joint" : "marginal";
}

ScoreKind ParseScoreKind(std::string_view name) {
  if (name == "joint") return ScoreKind::kJoint;
  if (name == "marginal") return ScoreKind::kMarginal;
  throw DecodeError(ErrorKind::kConfig, "unknown score kind '" + std::string(name) + "'");
}

bool RelativeTie(double a, double b) {
  if (a == b) return true;
  // |e^a - e^b| / max(e^a, e^b) = 1 - e^-|a-b|
  static const double kLogGap = -std::log1p(-kTieTolerance);
  return std::abs(a - b) <= kLogGap;
}

namespace {

std::size_t IndexOf(const std::vector<Strategy> &strategies, Strategy s) {
  auto it = std::find(strategies.begin(), strategies.end(), s);
  if (it == strategies.end())
    throw DecodeError(ErrorKind::kPrecondition,
                      "strategy '" + std::string(StrategyName(s)) + "' not in report");
  return static_cast<std::size_t>(it - strategies.begin());
}

void CheckInputs(const std::vector<Instance> &instances,
                 const std::vector<Strategy> &strategies) {
  if (instances.empty()) throw DecodeError(ErrorKind::kPrecondition, "empty instance set");
  if (strategies.empty()) throw DecodeError(ErrorKind::kPrecondition, "no strategies given");
}

}  // namespace

const PairwiseRate &StrategyReport::Pair(Strategy first, Strategy second) const {
  for (const PairwiseRate &p : pairwise)
    if (p.first == first && p.second == second) return p;
  throw DecodeError(ErrorKind::kPrecondition, "pair not in report");
}

double StrategyReport::AverageFor(Strategy s) const {
  return avg_logprob[IndexOf(strategies, s)];
}

double StrategyReport::MatchRateFor(Strategy s) const {
  return optimum_match_rate[IndexOf(strategies, s)];
}

DecodedSet DecodeBatch(const std::vector<Instance> &instances,
                       const std::vector<Strategy> &strategies, double beta,
                       std::size_t workers) {
  DecodedSet decoded(instances.size(), std::vector<Hypothesis>(strategies.size()));
  auto run = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t n = begin; n < instances.size(); n += stride)
      for (std::size_t s = 0; s < strategies.size(); ++s)
        decoded[n][s] = Decode(instances[n], strategies[s], beta);
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(instances.size(), 1));
  if (workers == 1) {
    run(0, 1);
    return decoded;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        run(w, workers);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : threads) t.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
  return decoded;
}

bool MatchesLengthOptimum(const Instance &instance, const Hypothesis &hypothesis) {
  const ViterbiTable table = BuildViterbiTable(instance, ViterbiMode::kJoint);
  const double optimum = table.alpha(hypothesis.path.size(), instance.length());
  return RelativeTie(hypothesis.joint_logprob, optimum);
}

StrategyReport Summarize(const std::vector<Instance> &instances,
                         const std::vector<Strategy> &strategies, const DecodedSet &decoded,
                         ScoreKind score_kind, double beta) {
  CheckInputs(instances, strategies);
  if (decoded.size() != instances.size())
    throw DecodeError(ErrorKind::kShape, "decoded outputs do not match instance count");

  const std::size_t N = instances.size();
  const std::size_t S = strategies.size();
  StrategyReport report;
  report.score_kind = score_kind;
  report.beta = beta;
  report.instance_count = N;
  report.strategies = strategies;

  std::vector<std::vector<double>> scores(N, std::vector<double>(S));
  std::vector<double> score_sum(S, 0.0), match_count(S, 0.0);
  double t_entropy = 0.0, p_entropy = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    const Instance &inst = instances[n];
    const ViterbiTable joint_table = BuildViterbiTable(inst, ViterbiMode::kJoint);
    for (std::size_t s = 0; s < S; ++s) {
      const Hypothesis &h = decoded[n][s];
      scores[n][s] = score_kind == ScoreKind::kJoint
                         ? h.joint_logprob
                         : MarginalTranslationLogProb(inst, h.tokens);
      score_sum[s] += scores[n][s];
      if (RelativeTie(h.joint_logprob, joint_table.alpha(h.path.size(), inst.length())))
        match_count[s] += 1.0;
    }
    const EntropyStats e = ComputeEntropyStats(inst);
    t_entropy += e.transition_entropy;
    p_entropy += e.prediction_entropy;
  }
  const double count = static_cast<double>(N);
  for (std::size_t s = 0; s < S; ++s) {
    report.avg_logprob.push_back(score_sum[s] / count);
    report.optimum_match_rate.push_back(match_count[s] / count);
  }
  report.mean_entropy = {t_entropy / count, p_entropy / count};

  for (std::size_t a = 0; a < S; ++a) {
    for (std::size_t b = 0; b < S; ++b) {
      if (a == b) continue;
      double wins = 0.0, ties = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        if (RelativeTie(scores[n][a], scores[n][b]))
          ties += 1.0;
        else if (scores[n][a] > scores[n][b])
          wins += 1.0;
      }
      report.pairwise.push_back({strategies[a], strategies[b], wins / count, ties / count});
    }
  }
  return report;
}

StrategyReport CompareStrategies(const std::vector<Instance> &instances,
                                 const std::vector<Strategy> &strategies, ScoreKind score_kind,
                                 double beta, std::size_t workers) {
  CheckInputs(instances, strategies);
  const DecodedSet decoded = DecodeBatch(instances, strategies, beta, workers);
  return Summarize(instances, strategies, decoded, score_kind, beta);
}

double OptimumMatchRate(const std::vector<Instance> &instances, Strategy strategy,
                        double beta) {
  if (instances.empty()) return 0.0;
  double matched = 0.0;
  for (const Instance &inst : instances)
    if (MatchesLengthOptimum(inst, Decode(inst, strategy, beta))) matched += 1.0;
  return matched / static_cast<double>(instances.size());
}

TimingReport Benchmark(const std::vector<Instance> &instances,
                       const std::vector<Strategy> &strategies, std::size_t repetitions,
                       Strategy baseline, double beta) {
  CheckInputs(instances, strategies);
  if (repetitions < 3)
    throw DecodeError(ErrorKind::kPrecondition, "benchmark needs at least 3 repetitions");
  const std::size_t base_index = IndexOf(strategies, baseline);

  using Clock = std::chrono::steady_clock;
  volatile double sink = 0.0;
  auto pass = [&](Strategy s) {
    double acc = 0.0;
    for (const Instance &inst : instances) acc += Decode(inst, s, beta).joint_logprob;
    sink = sink + acc;
  };

  for (Strategy s : strategies) pass(s);  // warm-up, untimed

  const double count = static_cast<double>(instances.size());
  std::vector<std::vector<double>> samples(strategies.size());
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      const auto start = Clock::now();
      pass(strategies[s]);
      const std::chrono::duration<double> elapsed = Clock::now() - start;
      samples[s].push_back(elapsed.count() / count);
    }
  }

  TimingReport report;
  report.baseline = baseline;
  report.repetitions = repetitions;
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    const auto &xs = samples[s];
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    report.per_strategy.push_back({strategies[s], mean, std::sqrt(var), 0.0});
  }
  const double base = report.per_strategy[base_index].mean_seconds;
  for (auto &t : report.per_strategy) t.ratio_to_baseline = base > 0.0 ? t.mean_seconds / base : 0.0;
  return report;
}

nlohmann::json TimingToJson(const TimingReport &timing) {
  nlohmann::json j;
  j["baseline"] = StrategyName(timing.baseline);
  j["repetitions"] = timing.repetitions;
  j["unit"] = "seconds per instance";
  nlohmann::json per = nlohmann::json::object();
  for (const auto &t : timing.per_strategy) {
    per[std::string(StrategyName(t.strategy))] = {{"mean", t.mean_seconds},
                                                  {"stddev", t.stddev_seconds},
                                                  {"ratio_to_baseline", t.ratio_to_baseline}};
  }
  j["strategies"] = std::move(per);
  return j;
}

nlohmann::json ReportToJson(const StrategyReport &report) {
  nlohmann::json j;
  j["score"] = ScoreKindName(report.score_kind);
  j["beta"] = report.beta;
  j["instance_count"] = report.instance_count;
  nlohmann::json avg = nlohmann::json::object(), match = nlohmann::json::object();
  for (std::size_t s = 0; s < report.strategies.size(); ++s) {
    const std::string name(StrategyName(report.strategies[s]));
    avg[name] = LogProbJson(report.avg_logprob[s]);
    match[name] = report.optimum_match_rate[s];
  }
  j["avg_logprob"] = std::move(avg);
  j["optimum_match_rate"] = std::move(match);
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto &p : report.pairwise) {
    pairs.push_back({{"first", StrategyName(p.first)},
                     {"second", StrategyName(p.second)},
                     {"win_rate", p.win_rate},
                     {"tie_rate", p.tie_rate}});
  }
  j["pairwise"] = std::move(pairs);
  j["mean_entropy"] = {{"transition", report.mean_entropy.transition_entropy},
                       {"prediction", report.mean_entropy.prediction_entropy}};
  if (report.timings) j["timings"] = TimingToJson(*report.timings);
  return j;
}

}  // namespace dagdec::analysis
