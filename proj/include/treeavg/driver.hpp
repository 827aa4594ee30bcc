#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "treeavg/average.hpp"

namespace treeavg {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitResource = 3;

// "3" or "3/4"; throws UsageError on anything else.
Rational parse_rational(const std::string& text);
// Comma-separated rationals; empty string gives an empty list.
std::vector<Rational> parse_weight_list(const std::string& csv);

struct AverageCommand {
  std::vector<std::string> inputs;
  std::string output;
  std::string weights;  // comma-separated; empty = unit weights
  std::string mode = "nonbinary";
  std::string engine = "mitm";
  int fan_out = 0;  // 0 = derive from the individuals
  int max_candidates = kDefaultMitmCap;
  bool prune_iterate = false;
  int threads = 1;
};

struct EvalCommand {
  std::string pred;
  std::string gold;
  std::string punct_labels = "$,;$.;$(";  // semicolon-separated
  bool per_label = false;
  std::string format = "text";
};

struct GenCommand {
  int sentences = 0;
  int max_len = 0;
  int k = 0;
  int fan_out = 2;
  uint64_t seed = 0;
  std::string out_dir;
};

struct BenchCommand {
  std::vector<std::string> inputs;
  std::string weights;
  std::string engines = "mitm,exhaustive,dp";
};

int run_average(const AverageCommand& cmd, std::ostream& err);
int run_eval(const EvalCommand& cmd, std::ostream& out, std::ostream& err);
int run_gen(const GenCommand& cmd, std::ostream& err);
int run_bench(const BenchCommand& cmd, std::ostream& out, std::ostream& err);

}  // namespace treeavg
