#include <CLI11.hpp>
#include <iostream>

#include "cadi/cli_commands.hpp"
#include "cadi/errors.hpp"

namespace {

// exit codes: 0 success, 2 usage, 3 validation, 4 numerical/degeneracy
constexpr int kUsageError = 2;
constexpr int kValidationError = 3;
constexpr int kNumericalError = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace cadi::cli;

  CLI::App app{"cluster-level quality metrics for dimensionality reduction"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand(
      "generate", "generate a synthetic benchmark dataset");
  generate->add_option("--name", gen.name,
                       "rings|concentric3|concentric4|donuts|matryoshka")
      ->required();
  generate->add_option("--seed", gen.seed, "rng seed");
  generate->add_option("--out", gen.out, "output dataset CSV")->required();
  generate->add_option("--scale", gen.size_scale,
                       "scale per-class point counts (default 1.0)");
  generate->add_option("--per-class", gen.per_class,
                       "override points per class");
  generate->add_option("--noise-sigma", gen.noise_sigma,
                       "rings noise sigma (default 0.01)");

  MetricArgs met;
  auto* metric =
      app.add_subcommand("metric", "compute one metric, emit result JSON");
  metric->add_option("--metric", met.metric,
                     "cadi|adi|silhouette|dbi|cds|nmi|ari")
      ->required();
  metric->add_option("--in", met.in, "dataset CSV")->required();
  metric->add_option("--proj", met.proj, "projection CSV");
  metric->add_option("--labels", met.labels,
                     "second labeling CSV (nmi/ari)");
  metric->add_option("--out", met.out, "result JSON path (default stdout)");
  metric->add_option("--seed", met.seed, "sampling seed");
  metric->add_option("--k-mult", met.k_mult,
                     "triplet multiplier (default 40 cadi, 100 adi)");
  metric->add_option("--k-abs", met.k_abs, "absolute triplet count");
  metric->add_flag("--exact", met.exact, "exhaustive CADI (O(n^3))");

  EmbedArgs emb;
  auto* embed = app.add_subcommand(
      "embed", "train an angle-preserving embedding of the dataset");
  embed->add_option("--in", emb.in, "dataset CSV")->required();
  embed->add_option("--out", emb.out, "output projection CSV")->required();
  embed->add_option("--trace", emb.trace, "per-epoch loss CSV");
  embed->add_option("--mode", emb.mode, "parametric|nonparametric");
  embed->add_option("--epochs", emb.epochs, "training epochs (default 200)");
  embed->add_option("--seed", emb.seed, "rng seed");
  embed->add_option("--target-dim", emb.target_dim, "2 or 3 (default 2)");
  embed->add_option("--batch", emb.batch_size,
                    "minibatch triplets (default 512)");
  embed->add_option("--lr", emb.lr, "Adam learning rate (default 1e-3)");
  embed->add_option("--k-mult", emb.triplets_per_point,
                    "triplets per point per epoch (default 10)");

  StabilityArgs sta;
  auto* stability = app.add_subcommand(
      "stability", "sampled-score distribution per triplet multiplier");
  stability->add_option("--in", sta.in, "dataset CSV")->required();
  stability->add_option("--proj", sta.proj, "projection CSV")->required();
  stability->add_option("--out", sta.out, "output CSV (default stdout)");
  stability->add_option("--mults", sta.multipliers,
                        "multipliers (default 1,2,5,10,20,40)")
      ->delimiter(',');
  stability->add_option("--reps", sta.repetitions,
                        "repetitions per multiplier (default 200)");
  stability->add_option("--seed", sta.seed, "base seed");

  BenchmarkArgs ben;
  auto* benchmark = app.add_subcommand(
      "benchmark", "score projections of one dataset across metrics");
  benchmark->add_option("--in", ben.in, "dataset CSV")->required();
  benchmark->add_option("--proj", ben.projections,
                        "projection as name=path (repeatable)")
      ->required();
  benchmark->add_option("--labels", ben.labelings,
                        "clustering labeling as name=path (for nmi/ari)");
  benchmark->add_option("--metrics", ben.metrics, "metric names")
      ->delimiter(',');
  benchmark->add_option("--out-dir", ben.out_dir, "report directory")
      ->required();
  benchmark->add_option("--seed", ben.seed, "sampling seed");
  benchmark->add_option("--k-mult", ben.k_mult,
                        "CADI triplet multiplier (default 40)");

  ReportArgs rep;
  auto* report = app.add_subcommand(
      "report", "recompute rank/correlation reports from a scores CSV");
  report->add_option("--scores", rep.scores, "scores.csv path")->required();
  report->add_option("--out-dir", rep.out_dir, "report directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*metric) return cmd_metric(met);
    if (*embed) return cmd_embed(emb);
    if (*stability) return cmd_stability(sta);
    if (*benchmark) return cmd_benchmark(ben);
    if (*report) return cmd_report(rep);
  } catch (const cadi::DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const cadi::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const cadi::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return 0;
}
