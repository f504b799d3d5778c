#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cadi/metric_result.hpp"

namespace cadi::cli {

struct GenerateArgs {
  std::string name;
  std::uint64_t seed = 0;
  std::string out;
  double size_scale = 1.0;
  std::optional<int> per_class;
  std::optional<double> noise_sigma;
};
int cmd_generate(const GenerateArgs& args);

struct MetricArgs {
  std::string metric;  // cadi, adi, silhouette, dbi, cds, nmi, ari
  std::string in;      // dataset CSV
  std::string proj;    // projection CSV
  std::string labels;  // second labeling CSV (nmi/ari)
  std::string out;     // metric result JSON path; stdout when empty
  std::uint64_t seed = 0;
  std::optional<double> k_mult;
  std::optional<std::uint64_t> k_abs;
  bool exact = false;
};
/// Computes the metric and returns the result (status carries degeneracy).
MetricResult run_metric(const MetricArgs& args);
/// Computes, writes/prints the result JSON; returns 0 on ok status, 4 when
/// the result is flagged degenerate or sentinel.
int cmd_metric(const MetricArgs& args);

struct EmbedArgs {
  std::string in;
  std::string out;    // projection CSV
  std::string trace;  // per-epoch loss CSV (optional)
  std::string mode = "parametric";
  int epochs = 200;
  std::uint64_t seed = 0;
  int target_dim = 2;
  int batch_size = 512;
  double lr = 1e-3;
  double triplets_per_point = 10.0;
};
int cmd_embed(const EmbedArgs& args);

struct StabilityArgs {
  std::string in;
  std::string proj;
  std::string out;  // distribution CSV; stdout when empty
  std::vector<double> multipliers = {1, 2, 5, 10, 20, 40};
  int repetitions = 200;
  std::uint64_t seed = 0;
};
int cmd_stability(const StabilityArgs& args);

struct BenchmarkArgs {
  std::string in;
  std::vector<std::string> projections;  // name=path
  std::vector<std::string> labelings;    // name=path, clusterings for nmi/ari
  std::vector<std::string> metrics;      // default depends on inputs
  std::string out_dir;
  std::uint64_t seed = 0;
  double k_mult = 40.0;
};
int cmd_benchmark(const BenchmarkArgs& args);

struct ReportArgs {
  std::string scores;  // scores.csv produced by cmd_benchmark
  std::string out_dir;
};
int cmd_report(const ReportArgs& args);

// --- report building blocks (exposed for direct testing) ---

struct ScoreRow {
  std::string technique;
  std::string metric;
  double value = 0.0;
  std::string status = "ok";
  double elapsed_seconds = 0.0;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> seed;
};

/// Direction flag per registered metric name.
bool lower_is_better(const std::string& metric);

struct RankEntry {
  std::string technique;
  double value = 0.0;
  std::string status = "ok";
};

/// Per metric, techniques ordered best-first according to the metric's
/// direction flag; rows with non-ok status or non-finite values sort last.
std::map<std::string, std::vector<RankEntry>> compute_ranks(
    const std::vector<ScoreRow>& rows);

/// Spearman rank correlation between metrics over their shared techniques,
/// after orienting every metric so that larger means better. NaN marks
/// undefined entries (constant series or fewer than 2 shared techniques).
struct SpearmanMatrix {
  std::vector<std::string> metrics;
  std::vector<std::vector<double>> values;  // symmetric, unit diagonal
};
SpearmanMatrix compute_spearman_matrix(const std::vector<ScoreRow>& rows);

std::vector<ScoreRow> load_scores_csv(const std::string& path);

}  // namespace cadi::cli
