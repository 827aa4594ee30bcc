#include <iostream>

#include <CLI11.hpp>

#include "treeavg/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Exact tree averaging and evaluation for (possibly discontinuous) "
      "constituency ensembles"};
  app.require_subcommand(1);

  treeavg::AverageCommand avg;
  auto* average = app.add_subcommand(
      "average", "Ensemble aligned treebanks into their average trees");
  average->add_option("--inputs", avg.inputs, "Input discbracket files, one per individual")
      ->required()
      ->expected(-1);
  average->add_option("-o,--output", avg.output, "Output treebank")->required();
  average->add_option("--weights", avg.weights,
                      "Comma-separated rational weights (default: unit)");
  average->add_option("--mode", avg.mode, "nonbinary|binary");
  average->add_option("--engine", avg.engine, "mitm|exhaustive|dp");
  average->add_option("--fanout", avg.fan_out,
                      "Fan-out cap for the dp engine (0 = derive)");
  average->add_option("--max-candidates", avg.max_candidates,
                      "Vertex cap for the meet-in-the-middle engine");
  average->add_flag("--prune-iterate", avg.prune_iterate,
                    "Re-apply the hit-count lower bound until a fixpoint");
  average->add_option("--threads", avg.threads, "Worker threads (default 1)");

  treeavg::EvalCommand ev;
  auto* eval = app.add_subcommand("eval", "Score a treebank against gold");
  eval->add_option("--pred", ev.pred, "Predicted treebank")->required();
  eval->add_option("--gold", ev.gold, "Gold treebank")->required();
  eval->add_option("--punct-labels", ev.punct_labels,
                   "Semicolon-separated preterminal labels to discard");
  eval->add_flag("--per-label", ev.per_label, "Also report per-label recall");
  eval->add_option("--format", ev.format, "text|json");

  treeavg::GenCommand gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate random aligned treebanks");
  gen_cmd->add_option("--sentences", gen.sentences, "Number of sentences")->required();
  gen_cmd->add_option("--n", gen.max_len, "Maximum sentence length")->required();
  gen_cmd->add_option("--k", gen.k, "Number of individuals")->required();
  gen_cmd->add_option("--fanout", gen.fan_out, "Fan-out cap (1 or 2)");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("-o,--output", gen.out_dir, "Output directory")->required();

  treeavg::BenchCommand bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "Per-sentence wall-time comparison of engines");
  bench_cmd->add_option("--inputs", bench.inputs, "Input discbracket files")
      ->required()
      ->expected(-1);
  bench_cmd->add_option("--weights", bench.weights, "Comma-separated weights");
  bench_cmd->add_option("--engines", bench.engines,
                        "Comma-separated engine list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return treeavg::kExitUsage;
  }

  if (average->parsed()) return treeavg::run_average(avg, std::cerr);
  if (eval->parsed()) return treeavg::run_eval(ev, std::cout, std::cerr);
  if (gen_cmd->parsed()) return treeavg::run_gen(gen, std::cerr);
  if (bench_cmd->parsed()) return treeavg::run_bench(bench, std::cout, std::cerr);
  return treeavg::kExitUsage;
}
