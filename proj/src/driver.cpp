#include "treeavg/driver.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include <json.hpp>

#include "treeavg/discbracket.hpp"
#include "treeavg/errors.hpp"
#include "treeavg/eval.hpp"
#include "treeavg/generate.hpp"
#include "treeavg/prune.hpp"

namespace treeavg {

namespace {

int code_of(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kExitUsage;
  if (dynamic_cast<const ResourceError*>(&e)) return kExitResource;
  if (dynamic_cast<const DataError*>(&e)) return kExitData;
  return kExitUsage;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    fn();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return code_of(e);
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
    if (end == text.size()) break;
  }
  return parts;
}

OutputMode parse_mode(const std::string& mode) {
  if (mode == "nonbinary") return OutputMode::nonbinary;
  if (mode == "binary") return OutputMode::binary;
  throw UsageError("unknown mode '" + mode + "' (expected nonbinary|binary)");
}

Engine parse_engine(const std::string& engine) {
  if (engine == "mitm") return Engine::mitm;
  if (engine == "exhaustive") return Engine::exhaustive;
  if (engine == "dp") return Engine::dp;
  throw UsageError("unknown engine '" + engine +
                   "' (expected mitm|exhaustive|dp)");
}

struct LoadedEnsemble {
  std::vector<std::vector<SentenceRecord>> corpora;  // [file][sentence]
  size_t sentence_count = 0;
};

LoadedEnsemble load_aligned(const std::vector<std::string>& paths) {
  if (paths.empty()) throw UsageError("at least one input file is required");
  LoadedEnsemble loaded;
  for (const auto& path : paths) {
    loaded.corpora.push_back(read_treebank(path));
  }
  loaded.sentence_count = loaded.corpora.front().size();
  for (size_t f = 1; f < loaded.corpora.size(); ++f) {
    if (loaded.corpora[f].size() != loaded.sentence_count) {
      throw DataError(paths[f] + ": has " +
                      std::to_string(loaded.corpora[f].size()) +
                      " trees but " + paths[0] + " has " +
                      std::to_string(loaded.sentence_count));
    }
    for (size_t s = 0; s < loaded.sentence_count; ++s) {
      if (loaded.corpora[f][s].words() != loaded.corpora[0][s].words()) {
        throw DataError(paths[f] + ":" + std::to_string(s + 1) +
                        ": tokens disagree with " + paths[0]);
      }
    }
  }
  return loaded;
}

std::vector<Rational> resolve_weights(const std::string& csv, size_t k) {
  std::vector<Rational> weights = parse_weight_list(csv);
  if (weights.empty()) weights.assign(k, Rational(1));
  if (weights.size() != k) {
    throw UsageError("got " + std::to_string(weights.size()) +
                     " weights for " + std::to_string(k) + " input files");
  }
  return weights;
}

// Order-preserving parallel map over sentence indices. Results are
// independent of the thread count; the first failure wins deterministically
// by sentence index.
template <typename Fn>
void for_each_sentence(size_t count, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex mu;
  size_t failed_at = count;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_at) {
          failed_at = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& part) -> long long {
    if (part.empty() || part.size() > 12 ||
        part.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad rational '" + text +
                       "' (digits only, at most 12 per part)");
    }
    return std::stoll(part);
  };
  size_t slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  long long num = parse_int(text.substr(0, slash));
  long long den = parse_int(text.substr(slash + 1));
  if (den == 0) throw UsageError("bad rational '" + text + "': zero denominator");
  return Rational(num, den);
}

std::vector<Rational> parse_weight_list(const std::string& csv) {
  std::vector<Rational> out;
  if (csv.empty()) return out;
  for (const auto& part : split(csv, ',')) out.push_back(parse_rational(part));
  return out;
}

int run_average(const AverageCommand& cmd, std::ostream& err) {
  return guarded(err, [&] {
    if (cmd.output.empty()) throw UsageError("an output file (-o) is required");
    AverageOptions options;
    options.mode = parse_mode(cmd.mode);
    options.engine = parse_engine(cmd.engine);
    options.fan_out_cap = cmd.fan_out;
    options.mitm_cap = cmd.max_candidates;
    options.prune_iterate = cmd.prune_iterate;

    LoadedEnsemble loaded = load_aligned(cmd.inputs);
    std::vector<Rational> weights =
        resolve_weights(cmd.weights, loaded.corpora.size());

    std::vector<std::string> lines(loaded.sentence_count);
    for_each_sentence(loaded.sentence_count, cmd.threads, [&](size_t s) {
      std::vector<ParseTree> individuals;
      individuals.reserve(loaded.corpora.size());
      for (const auto& corpus : loaded.corpora) {
        individuals.push_back(corpus[s].tree);
      }
      ParseTree averaged = average_tree(individuals, weights, options);
      ParseTree with_words =
          ParseTree::create(averaged.n(), averaged.constituents(), {},
                            loaded.corpora.front()[s].words());
      lines[s] = write_discbracket(SentenceRecord{std::move(with_words)});
    });
    write_treebank(cmd.output, lines);
  });
}

int run_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cmd.pred.empty() || cmd.gold.empty()) {
      throw UsageError("--pred and --gold are required");
    }
    if (cmd.format != "text" && cmd.format != "json") {
      throw UsageError("unknown format '" + cmd.format + "'");
    }
    auto preds = read_treebank(cmd.pred);
    auto golds = read_treebank(cmd.gold);
    std::set<std::string> punct;
    for (const auto& label : split(cmd.punct_labels, ';')) {
      if (!label.empty()) punct.insert(label);
    }
    CorpusReport report = corpus_scores(preds, golds, punct, cmd.per_label);
    out << (cmd.format == "json" ? report_json(report) : report_text(report));
  });
}

int run_gen(const GenCommand& cmd, std::ostream& err) {
  return guarded(err, [&] {
    if (cmd.sentences < 1) throw UsageError("--sentences must be positive");
    if (cmd.max_len < 1) throw UsageError("--n must be positive");
    if (cmd.k < 1) throw UsageError("--k must be positive");
    if (cmd.out_dir.empty()) throw UsageError("an output directory (-o) is required");
    namespace fs = std::filesystem;
    fs::create_directories(cmd.out_dir);

    // Sentence lengths are shared across the k files so the lines align.
    std::vector<int> lengths(static_cast<size_t>(cmd.sentences));
    for (int s = 0; s < cmd.sentences; ++s) {
      uint64_t h = cmd.seed ^ (0x51ed270b7a03f944ull + 2 * static_cast<uint64_t>(s));
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
      lengths[static_cast<size_t>(s)] =
          cmd.max_len <= 2 ? cmd.max_len
                           : 2 + static_cast<int>(h % static_cast<uint64_t>(
                                                          cmd.max_len - 1));
    }

    std::vector<std::string> files;
    for (int k = 0; k < cmd.k; ++k) {
      std::vector<std::string> lines;
      lines.reserve(static_cast<size_t>(cmd.sentences));
      for (int s = 0; s < cmd.sentences; ++s) {
        int n = lengths[static_cast<size_t>(s)];
        uint64_t sentence_seed =
            cmd.seed + 0x9e3779b97f4a7c15ull * (static_cast<uint64_t>(s) + 1);
        auto trees = random_instance(sentence_seed, n, cmd.k, cmd.fan_out);
        std::vector<std::string> words;
        for (int w = 0; w < n; ++w) words.push_back("w" + std::to_string(w));
        ParseTree with_words = ParseTree::create(
            n, trees[static_cast<size_t>(k)].constituents(), {}, words);
        lines.push_back(write_discbracket(SentenceRecord{std::move(with_words)}));
      }
      std::string name = "individual-" + std::to_string(k) + ".discbracket";
      write_treebank((std::filesystem::path(cmd.out_dir) / name).string(),
                     lines);
      files.push_back(name);
    }

    nlohmann::json manifest;
    manifest["sentences"] = cmd.sentences;
    manifest["max_len"] = cmd.max_len;
    manifest["k"] = cmd.k;
    manifest["fanout"] = cmd.fan_out;
    manifest["seed"] = cmd.seed;
    manifest["files"] = files;
    write_treebank(
        (std::filesystem::path(cmd.out_dir) / "manifest.json").string(),
        {manifest.dump(2)});
  });
}

int run_bench(const BenchCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    LoadedEnsemble loaded = load_aligned(cmd.inputs);
    std::vector<Rational> weights =
        resolve_weights(cmd.weights, loaded.corpora.size());
    std::vector<std::string> engines = split(cmd.engines, ',');
    if (engines.empty()) throw UsageError("no engines selected");

    char header[256];
    std::snprintf(header, sizeof header, "%8s %6s %10s", "sentence", "len",
                  "survivors");
    out << header;
    for (const auto& engine : engines) {
      std::snprintf(header, sizeof header, " %14s", (engine + "(ms)").c_str());
      out << header;
    }
    out << "\n";

    for (size_t s = 0; s < loaded.sentence_count; ++s) {
      std::vector<ParseTree> individuals;
      for (const auto& corpus : loaded.corpora) {
        individuals.push_back(corpus[s].tree);
      }
      HitTable hits = build_hits(individuals, weights);
      size_t survivors =
          hits.n > 1 && hits.all_individuals_binary()
              ? prune_candidates(hits).survivors.size()
              : 0;
      char row[256];
      std::snprintf(row, sizeof row, "%8zu %6d %10zu", s + 1,
                    individuals.front().n(), survivors);
      out << row;
      for (const auto& engine : engines) {
        AverageOptions options;
        options.engine = parse_engine(engine);
        auto start = std::chrono::steady_clock::now();
        std::string cell;
        try {
          average_tree(individuals, weights, options);
          auto stop = std::chrono::steady_clock::now();
          double ms = std::chrono::duration<double, std::milli>(stop - start)
                          .count();
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.3f", ms);
          cell = buf;
        } catch (const ResourceError&) {
          cell = "-";
        }
        std::snprintf(row, sizeof row, " %14s", cell.c_str());
        out << row;
      }
      out << "\n";
    }
  });
}

}  // namespace treeavg
