#include "dagdec/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "dagdec/analysis.hpp"
#include "dagdec/decoders.hpp"
#include "dagdec/errors.hpp"
#include "dagdec/generator.hpp"
#include "dagdec/instance_io.hpp"
#include "dagdec/oracle.hpp"
#include "dagdec/scoring.hpp"

namespace dagdec {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> SplitCommas(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> ParseIndexList(const std::string &text, const char *what) {
  std::vector<std::size_t> out;
  for (const std::string &item : SplitCommas(text)) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != item.size() || item.front() == '-')
      throw DecodeError(ErrorKind::kConfig,
                        std::string("bad ") + what + " entry '" + item + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw DecodeError(ErrorKind::kConfig, std::string("empty ") + what);
  return out;
}

std::vector<Strategy> ParseStrategies(const std::string &text) {
  std::vector<Strategy> out;
  for (const std::string &name : SplitCommas(text)) out.push_back(ParseStrategy(name));
  if (out.empty()) throw DecodeError(ErrorKind::kConfig, "no strategies given");
  return out;
}

std::string JoinPositions(const std::vector<std::size_t> &xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

json HypothesisJson(const Instance &instance, const Hypothesis &h) {
  json j;
  j["path"] = h.path.positions();
  j["path_text"] = JoinPositions(h.path.positions());
  j["tokens"] = h.tokens;
  if (!instance.vocab().empty()) {
    std::vector<std::string> words;
    for (std::size_t y : h.tokens) words.push_back(instance.vocab()[y]);
    j["token_text"] = words;
  }
  j["length"] = h.path.size();
  j["path_logprob"] = LogProbJson(h.path_logprob);
  j["emission_logprob"] = LogProbJson(h.emission_logprob);
  j["joint_logprob"] = LogProbJson(h.joint_logprob);
  return j;
}

json ScoredPathJson(const oracle::ScoredPath &p) {
  return {{"path", p.path.positions()},
          {"probability", p.probability},
          {"logprob", LogProbJson(std::log(p.probability))}};
}

struct LoadedInstance {
  Instance instance;
  std::string digest;
};

LoadedInstance Load(const std::string &path, bool allow_invalid) {
  std::string bytes = ReadFile(path);
  ParseOptions options;
  options.validate = !allow_invalid;
  Instance instance = ParseInstanceText(bytes, options);
  return {std::move(instance), Sha256Hex(bytes)};
}

void Emit(std::ostream &out, const json &doc) { out << doc.dump(2) << '\n'; }

int ExitFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kPrecondition:
      return kExitUsage;
    case ErrorKind::kInfeasibleLength:
    case ErrorKind::kUnreachableTerminal:
    case ErrorKind::kDeadEnd:
      return kExitInfeasible;
    default:
      return kExitData;
  }
}

// --- subcommands -----------------------------------------------------------

struct GenArgs {
  GeneratorConfig config;
  std::size_t count = 1;
  std::string out_dir;
  std::size_t workers = 1;
};

int RunGen(const GenArgs &args, std::ostream &out) {
  CheckConfig(args.config);
  fs::create_directories(args.out_dir);
  std::vector<json> entries(args.count);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < args.count; k += stride) {
      GeneratorConfig cfg = args.config;
      cfg.seed = args.config.seed + k;
      json meta = {{"generator",
                    {{"seed", cfg.seed},
                     {"transition_concentration", cfg.transition_concentration},
                     {"emission_concentration", cfg.emission_concentration},
                     {"sparsity", cfg.sparsity}}}};
      const std::string text = SerializeInstance(GenerateInstance(cfg), meta).dump() + "\n";
      const fs::path file = fs::path(args.out_dir) / ("inst_" + std::to_string(cfg.seed) + ".json");
      std::ofstream os(file, std::ios::binary);
      os << text;
      if (!os) throw DecodeError(ErrorKind::kParse, "cannot write '" + file.string() + "'");
      entries[k] = {{"file", file.string()}, {"digest", Sha256Hex(text)}, {"seed", cfg.seed}};
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(args.workers, 1, std::max<std::size_t>(args.count, 1));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        try {
          work(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto &t : threads) t.join();
    for (auto &e : errors)
      if (e) std::rethrow_exception(e);
  }
  json doc;
  doc["command"] = "gen";
  doc["config"] = {{"length", args.config.length},
                   {"vocab", args.config.vocab_size},
                   {"seed", args.config.seed},
                   {"count", args.count},
                   {"transition_concentration", args.config.transition_concentration},
                   {"emission_concentration", args.config.emission_concentration},
                   {"sparsity", args.config.sparsity}};
  doc["files"] = entries;
  Emit(out, doc);
  return kExitOk;
}

struct DecodeArgs {
  std::string strategy;
  double beta = 1.0;
  std::string input;
  bool all_lengths = false;
  bool allow_invalid = false;
};

int RunDecode(const DecodeArgs &args, std::ostream &out) {
  const Strategy strategy = ParseStrategy(args.strategy);
  const bool viterbi_family =
      strategy == Strategy::kViterbi || strategy == Strategy::kJointViterbi;
  if (args.all_lengths && !viterbi_family)
    throw DecodeError(ErrorKind::kConfig, "--all-lengths needs a Viterbi-family strategy");
  const LoadedInstance loaded = Load(args.input, args.allow_invalid);
  const Instance &inst = loaded.instance;

  json doc;
  doc["command"] = "decode";
  doc["input"] = args.input;
  doc["input_digest"] = loaded.digest;
  doc["config"] = {{"strategy", StrategyName(strategy)},
                   {"beta", args.beta},
                   {"all_lengths", args.all_lengths},
                   {"allow_invalid", args.allow_invalid}};
  if (viterbi_family) {
    const ViterbiMode mode =
        strategy == Strategy::kViterbi ? ViterbiMode::kPath : ViterbiMode::kJoint;
    const ViterbiResult result = ViterbiSearch(inst, mode, args.beta);
    doc["hypothesis"] = HypothesisJson(inst, result.hypothesis);
    doc["chosen_length"] = result.selection.chosen_length;
    json table = json::array();
    for (const LengthScore &s : result.selection.per_length)
      table.push_back({{"length", s.length},
                       {"raw", LogProbJson(s.raw)},
                       {"penalized", LogProbJson(s.penalized)}});
    doc["per_length"] = std::move(table);
    if (args.all_lengths) {
      json all = json::array();
      for (const Hypothesis &h : DecodeAllLengths(inst, mode)) all.push_back(HypothesisJson(inst, h));
      doc["all_lengths"] = std::move(all);
    }
  } else {
    const Hypothesis h = Decode(inst, strategy, args.beta);
    doc["hypothesis"] = HypothesisJson(inst, h);
    doc["chosen_length"] = h.path.size();
  }
  Emit(out, doc);
  return kExitOk;
}

struct ScoreArgs {
  std::string input;
  std::string path;
  std::string tokens;
  bool marginal = false;
  bool allow_invalid = false;
};

int RunScore(const ScoreArgs &args, std::ostream &out) {
  const DecodingPath path(ParseIndexList(args.path, "path"));
  const Translation tokens = ParseIndexList(args.tokens, "tokens");
  const LoadedInstance loaded = Load(args.input, args.allow_invalid);
  const Hypothesis h = MakeHypothesis(loaded.instance, path, tokens);

  json doc;
  doc["command"] = "score";
  doc["input"] = args.input;
  doc["input_digest"] = loaded.digest;
  doc["config"] = {{"path", path.positions()},
                   {"tokens", tokens},
                   {"marginal", args.marginal},
                   {"allow_invalid", args.allow_invalid}};
  doc["path_logprob"] = LogProbJson(h.path_logprob);
  doc["emission_logprob"] = LogProbJson(h.emission_logprob);
  doc["joint_logprob"] = LogProbJson(h.joint_logprob);
  if (args.marginal)
    doc["marginal_logprob"] = LogProbJson(MarginalTranslationLogProb(loaded.instance, tokens));
  Emit(out, doc);
  return kExitOk;
}

struct OracleArgs {
  std::string input;
  std::string mode = "path";
  std::string tokens;
  std::size_t cap = oracle::kDefaultCap;
  bool allow_invalid = false;
};

int RunOracle(const OracleArgs &args, std::ostream &out) {
  if (args.mode != "path" && args.mode != "joint" && args.mode != "marginal")
    throw DecodeError(ErrorKind::kConfig, "unknown oracle mode '" + args.mode + "'");
  if (args.mode == "marginal" && args.tokens.empty())
    throw DecodeError(ErrorKind::kConfig, "--mode marginal needs --tokens");
  const LoadedInstance loaded = Load(args.input, args.allow_invalid);

  json doc;
  doc["command"] = "oracle";
  doc["input"] = args.input;
  doc["input_digest"] = loaded.digest;
  doc["config"] = {{"mode", args.mode}, {"cap", args.cap}, {"allow_invalid", args.allow_invalid}};
  if (args.mode == "marginal") {
    const Translation tokens = ParseIndexList(args.tokens, "tokens");
    doc["config"]["tokens"] = tokens;
    const double p = oracle::BruteForceMarginal(loaded.instance, tokens, args.cap);
    doc["probability"] = p;
    doc["logprob"] = LogProbJson(std::log(p));
  } else {
    const oracle::EnumerationResult r =
        args.mode == "path" ? oracle::BruteForceBestPath(loaded.instance, args.cap)
                            : oracle::BruteForceBestJoint(loaded.instance, args.cap);
    json per = json::array();
    for (const auto &[length, best] : r.best_per_length) {
      json e = ScoredPathJson(best);
      e["length"] = length;
      per.push_back(std::move(e));
    }
    doc["best_per_length"] = std::move(per);
    if (r.path_count > 0) doc["global_best"] = ScoredPathJson(r.global_best);
    doc["path_count"] = r.path_count;
  }
  Emit(out, doc);
  return kExitOk;
}

struct AnalyzeArgs {
  std::string inputs;
  std::string strategies = "greedy,lookahead,viterbi,joint-viterbi";
  std::string score = "joint";
  double beta = 1.0;
  std::size_t workers = 1;
  bool allow_invalid = false;
};

int RunAnalyze(const AnalyzeArgs &args, std::ostream &out) {
  const std::vector<Strategy> strategies = ParseStrategies(args.strategies);
  const analysis::ScoreKind kind = analysis::ParseScoreKind(args.score);
  if (!fs::is_directory(args.inputs))
    throw DecodeError(ErrorKind::kParse, "'" + args.inputs + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(args.inputs))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<Instance> instances;
  json digests = json::array();
  for (const fs::path &file : files) {
    LoadedInstance loaded = Load(file.string(), args.allow_invalid);
    digests.push_back({{"file", file.filename().string()}, {"digest", loaded.digest}});
    instances.push_back(std::move(loaded.instance));
  }
  const analysis::StrategyReport report =
      analysis::CompareStrategies(instances, strategies, kind, args.beta, args.workers);

  json doc;
  doc["command"] = "analyze";
  doc["input"] = args.inputs;
  doc["input_digest"] = std::move(digests);
  json names = json::array();
  for (Strategy s : strategies) names.push_back(StrategyName(s));
  doc["config"] = {{"strategies", names},
                   {"score", analysis::ScoreKindName(kind)},
                   {"beta", args.beta},
                   {"allow_invalid", args.allow_invalid}};
  doc["report"] = analysis::ReportToJson(report);
  Emit(out, doc);
  return kExitOk;
}

struct BenchArgs {
  GeneratorConfig config;
  std::size_t count = 10;
  std::size_t reps = 5;
  std::string strategies = "greedy,lookahead,viterbi,joint-viterbi";
  std::string baseline = "greedy";
  double beta = 1.0;
};

int RunBench(const BenchArgs &args, std::ostream &out) {
  const std::vector<Strategy> strategies = ParseStrategies(args.strategies);
  const Strategy baseline = ParseStrategy(args.baseline);
  if (std::find(strategies.begin(), strategies.end(), baseline) == strategies.end())
    throw DecodeError(ErrorKind::kConfig, "baseline must be one of --strategies");
  if (args.count == 0) throw DecodeError(ErrorKind::kConfig, "--count must be positive");
  std::vector<Instance> instances;
  for (std::size_t k = 0; k < args.count; ++k) {
    GeneratorConfig cfg = args.config;
    cfg.seed = args.config.seed + k;
    instances.push_back(GenerateInstance(cfg));
  }
  const analysis::TimingReport timing =
      analysis::Benchmark(instances, strategies, args.reps, baseline, args.beta);

  json doc;
  doc["command"] = "bench";
  json names = json::array();
  for (Strategy s : strategies) names.push_back(StrategyName(s));
  doc["config"] = {{"length", args.config.length}, {"vocab", args.config.vocab_size},
                   {"seed", args.config.seed},     {"count", args.count},
                   {"reps", args.reps},            {"strategies", names},
                   {"baseline", args.baseline},    {"beta", args.beta}};
  doc["timings"] = analysis::TimingToJson(timing);
  Emit(out, doc);
  return kExitOk;
}

void AddGeneratorOptions(CLI::App *cmd, GeneratorConfig &cfg) {
  cmd->add_option("--length", cfg.length, "Lattice length L")->required();
  cmd->add_option("--vocab", cfg.vocab_size, "Vocabulary size V")->required();
  cmd->add_option("--seed", cfg.seed, "Base seed");
  cmd->add_option("--transition-concentration", cfg.transition_concentration,
                  "Dirichlet concentration for transition rows");
  cmd->add_option("--emission-concentration", cfg.emission_concentration,
                  "Dirichlet concentration for emission rows");
  cmd->add_option("--sparsity", cfg.sparsity, "Fraction of forbidden transitions, in [0,1)");
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Decoding and analysis toolkit for acyclic decoder lattices", "dagdec"};
  app.require_subcommand(1, 1);

  GenArgs gen;
  auto *gen_cmd = app.add_subcommand("gen", "Write seeded synthetic instance files");
  AddGeneratorOptions(gen_cmd, gen.config);
  gen_cmd->add_option("--count", gen.count, "Number of instances")->required();
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();
  gen_cmd->add_option("--workers", gen.workers, "Worker threads");

  DecodeArgs decode;
  auto *decode_cmd = app.add_subcommand("decode", "Decode one instance file");
  decode_cmd->add_option("--strategy", decode.strategy, "greedy|lookahead|viterbi|joint-viterbi")
      ->required();
  decode_cmd->add_option("--beta", decode.beta, "Length penalty exponent")
      ->check(CLI::NonNegativeNumber);
  decode_cmd->add_option("--input", decode.input, "Instance file")->required();
  decode_cmd->add_flag("--all-lengths", decode.all_lengths, "Emit one hypothesis per length");
  decode_cmd->add_flag("--allow-invalid", decode.allow_invalid, "Skip instance validation");

  ScoreArgs score;
  auto *score_cmd = app.add_subcommand("score", "Score a path and token sequence");
  score_cmd->add_option("--input", score.input, "Instance file")->required();
  score_cmd->add_option("--path", score.path, "1-based positions, e.g. \"1,2,4\"")->required();
  score_cmd->add_option("--tokens", score.tokens, "0-based token ids")->required();
  score_cmd->add_flag("--marginal", score.marginal, "Also report log P(Y|X)");
  score_cmd->add_flag("--allow-invalid", score.allow_invalid, "Skip instance validation");

  OracleArgs orc;
  auto *oracle_cmd = app.add_subcommand("oracle", "Brute-force enumeration");
  oracle_cmd->add_option("--input", orc.input, "Instance file")->required();
  oracle_cmd->add_option("--mode", orc.mode, "path|joint|marginal");
  oracle_cmd->add_option("--tokens", orc.tokens, "Token ids for --mode marginal");
  oracle_cmd->add_option("--cap", orc.cap, "Maximum lattice length");
  oracle_cmd->add_flag("--allow-invalid", orc.allow_invalid, "Skip instance validation");

  AnalyzeArgs analyze;
  auto *analyze_cmd = app.add_subcommand("analyze", "Compare strategies over a directory");
  analyze_cmd->add_option("--inputs", analyze.inputs, "Directory of instance files")->required();
  analyze_cmd->add_option("--strategies", analyze.strategies, "Comma-separated strategies");
  analyze_cmd->add_option("--score", analyze.score, "joint|marginal");
  analyze_cmd->add_option("--beta", analyze.beta, "Length penalty exponent")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--workers", analyze.workers, "Decoding threads");
  analyze_cmd->add_flag("--allow-invalid", analyze.allow_invalid, "Skip instance validation");

  BenchArgs bench;
  auto *bench_cmd = app.add_subcommand("bench", "Time strategies on generated instances");
  AddGeneratorOptions(bench_cmd, bench.config);
  bench_cmd->add_option("--count", bench.count, "Number of instances");
  bench_cmd->add_option("--reps", bench.reps, "Timed repetitions (>= 3)");
  bench_cmd->add_option("--strategies", bench.strategies, "Comma-separated strategies");
  bench_cmd->add_option("--baseline", bench.baseline, "Strategy used as the ratio baseline");
  bench_cmd->add_option("--beta", bench.beta, "Length penalty exponent")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("dagdec");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (std::string &s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return RunGen(gen, out);
    if (*decode_cmd) return RunDecode(decode, out);
    if (*score_cmd) return RunScore(score, out);
    if (*oracle_cmd) return RunOracle(orc, out);
    if (*analyze_cmd) return RunAnalyze(analyze, out);
    if (*bench_cmd) return RunBench(bench, out);
  } catch (const ValidationError &e) {
    err << e.what() << '\n';
    return kExitData;
  } catch (const DecodeError &e) {
    err << e.what() << '\n';
    return ExitFor(e.kind());
  } catch (const std::exception &e) {
    err << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace dagdec
