#include "cadi/cli_commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include "cadi/cadi_metric.hpp"
#include "cadi/cluster_metrics.hpp"
#include "cadi/csv_io.hpp"
#include "cadi/embedding.hpp"
#include "cadi/generators.hpp"
#include "cadi/rng.hpp"

namespace cadi::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open file for writing: " + path);
  out << body;
  if (!out) throw ValidationError("write failed: " + path);
}

void emit(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
  } else {
    write_text_file(path, body);
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// Loads a labeling from any CSV that carries a `label` column.
std::vector<std::uint32_t> load_labels(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  std::size_t label_col = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label") label_col = c;
  }
  if (label_col == header.size()) {
    throw ValidationError(path + ": no label column");
  }
  std::vector<std::uint32_t> labels;
  std::vector<std::string> names;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw ValidationError(path + ": ragged row in labeling file");
    }
    const std::string& name = fields[label_col];
    std::uint32_t id = 0;
    for (; id < names.size(); ++id) {
      if (names[id] == name) break;
    }
    if (id == names.size()) names.push_back(name);
    labels.push_back(id);
  }
  if (labels.empty()) throw ValidationError(path + ": no label rows");
  return labels;
}

std::pair<std::string, std::string> parse_named_path(const std::string& arg) {
  const std::size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= arg.size()) {
    throw ValidationError("expected name=path, got '" + arg + "'");
  }
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

const std::set<std::string>& known_metrics() {
  static const std::set<std::string> names = {
      "cadi", "adi", "silhouette", "dbi", "cds", "nmi", "ari"};
  return names;
}

TripletBudget make_budget(const MetricArgs& args, double default_mult) {
  if (args.k_abs) return TripletBudget::with_count(*args.k_abs, args.seed);
  return TripletBudget::with_multiplier(args.k_mult.value_or(default_mult),
                                        args.seed);
}

}  // namespace

bool lower_is_better(const std::string& metric) {
  return metric == "cadi" || metric == "adi" || metric == "dbi" ||
         metric == "cds";
}

int cmd_generate(const GenerateArgs& args) {
  GeneratorConfig config;
  config.name = args.name;
  config.seed = args.seed;
  config.size_scale = args.size_scale;
  config.points_per_class = args.per_class;
  config.noise_sigma = args.noise_sigma;
  const Dataset ds = generate(config);
  if (args.out.empty()) throw ValidationError("generate: --out is required");
  save_dataset(ds, args.out);
  std::cout << args.name << ": n=" << ds.n() << " d=" << ds.dim()
            << " classes=" << ds.num_classes() << " -> " << args.out << "\n";
  return 0;
}

MetricResult run_metric(const MetricArgs& args) {
  if (known_metrics().count(args.metric) == 0) {
    throw ValidationError("unknown metric name: " + args.metric);
  }
  if (args.in.empty()) throw ValidationError("metric: --in is required");
  const Dataset ds = load_dataset(args.in);

  MetricResult result;
  result.metric = args.metric;

  if (args.metric == "nmi" || args.metric == "ari") {
    if (args.labels.empty()) {
      throw ValidationError(args.metric + " needs --labels with a second "
                            "labeling file");
    }
    const auto other = load_labels(args.labels);
    if (other.size() != ds.n()) {
      throw ValidationError("labeling row count does not match dataset");
    }
    const auto start = Clock::now();
    if (args.metric == "nmi") {
      result.value = nmi(ds.labels, other);
      result.params["nmi_norm"] = "arithmetic";
    } else {
      result.value = ari(ds.labels, other);
    }
    result.elapsed_seconds = seconds_since(start);
    return result;
  }

  std::optional<Projection> proj;
  if (!args.proj.empty()) {
    proj = load_projection(args.proj);
    require_aligned(ds, *proj);
  }

  if (args.metric == "silhouette" || args.metric == "dbi") {
    const Matrix& space = proj ? proj->points : ds.points;
    result.params["space"] = proj ? "projection" : "dataset";
    const auto start = Clock::now();
    if (args.metric == "silhouette") {
      result.value = silhouette(space, ds.labels);
    } else {
      const DbiResult dbi = davies_bouldin(space, ds.labels);
      result.value = dbi.value;
      if (dbi.coincident_centroids) result.status = "coincident_centroids";
    }
    result.elapsed_seconds = seconds_since(start);
    return result;
  }

  if (!proj) {
    throw ValidationError(args.metric + " needs --proj with a projection");
  }
  const Partition partition = ds.partition();

  if (args.metric == "cds") {
    const auto start = Clock::now();
    const CdsResult cds = cluster_distance_score(ds, *proj, partition);
    result.value = cds.value;
    result.params["fitted_scale"] = cds.fitted_scale;
    if (cds.degenerate) result.status = "degenerate";
    result.elapsed_seconds = seconds_since(start);
    return result;
  }

  if (args.metric == "cadi") {
    const auto start = Clock::now();
    if (args.exact) {
      const ExactCadiResult exact = cadi_exact(ds, *proj, partition);
      result.value = exact.score.value;
      result.params["mode"] = "exact";
      result.params["T"] = exact.score.triplet_count;
    } else {
      const TripletBudget budget = make_budget(args, kDefaultCadiMultiplier);
      const CadiScore score = cadi_sampled(ds, *proj, partition, budget);
      result.value = score.value;
      result.params["mode"] = "sampled";
      result.params["k"] = score.triplet_count;
      result.params["seed"] = score.seed;
      result.params["rng"] = SplitMix64::kAlgorithmId;
    }
    result.elapsed_seconds = seconds_since(start);
    return result;
  }

  // adi
  if (args.exact) {
    throw ValidationError("adi has no exact mode; use sampling");
  }
  const auto start = Clock::now();
  const TripletBudget budget = make_budget(args, kDefaultAdiMultiplier);
  const CadiScore score = adi_sampled(ds, *proj, budget);
  result.value = score.value;
  result.params["mode"] = "sampled";
  result.params["k"] = score.triplet_count;
  result.params["seed"] = score.seed;
  result.params["rng"] = SplitMix64::kAlgorithmId;
  result.elapsed_seconds = seconds_since(start);
  return result;
}

int cmd_metric(const MetricArgs& args) {
  const MetricResult result = run_metric(args);
  emit(args.out, result.to_json().dump(2) + "\n");
  return result.status == "ok" ? 0 : 4;
}

int cmd_embed(const EmbedArgs& args) {
  if (args.in.empty() || args.out.empty()) {
    throw ValidationError("embed: --in and --out are required");
  }
  if (args.target_dim != 2 && args.target_dim != 3) {
    throw ValidationError("embed: target dimension must be 2 or 3");
  }
  const Dataset ds = load_dataset(args.in);

  TrainConfig cfg;
  cfg.epochs = args.epochs;
  cfg.seed = args.seed;
  cfg.target_dim = args.target_dim;
  cfg.batch_size = args.batch_size;
  cfg.lr = args.lr;
  cfg.triplets_per_point = args.triplets_per_point;
  if (args.mode == "parametric") {
    cfg.mode = EmbedMode::kParametric;
  } else if (args.mode == "nonparametric") {
    cfg.mode = EmbedMode::kNonparametric;
  } else {
    throw ValidationError("embed: mode must be parametric or nonparametric");
  }

  const EmbedResult result = angle_embedding(ds, ds.partition(), cfg);
  save_projection(result.projection, args.out);
  if (!args.trace.empty()) {
    std::ostringstream trace;
    trace << "epoch,loss\n";
    for (std::size_t e = 0; e < result.loss_trace.size(); ++e) {
      trace << e << ',' << format_double(result.loss_trace[e]) << '\n';
    }
    write_text_file(args.trace, trace.str());
  }
  return 0;
}

int cmd_stability(const StabilityArgs& args) {
  if (args.in.empty() || args.proj.empty()) {
    throw ValidationError("stability: --in and --proj are required");
  }
  const Dataset ds = load_dataset(args.in);
  const Projection proj = load_projection(args.proj);
  require_aligned(ds, proj);
  const auto rows = stability_study(ds, proj, ds.partition(),
                                    args.multipliers, args.repetitions,
                                    args.seed);
  std::ostringstream out;
  out << "multiplier,k,min,q1,median,q3,max,stddev\n";
  for (const StabilityRow& r : rows) {
    out << format_double(r.multiplier) << ',' << r.k << ','
        << format_double(r.min) << ',' << format_double(r.q1) << ','
        << format_double(r.median) << ',' << format_double(r.q3) << ','
        << format_double(r.max) << ',' << format_double(r.stddev) << '\n';
  }
  emit(args.out, out.str());
  return 0;
}

namespace {

std::string format_score_cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

std::string scores_to_csv(const std::vector<ScoreRow>& rows) {
  std::ostringstream out;
  out << "technique,metric,value,status,k,seed,elapsed_seconds\n";
  for (const ScoreRow& r : rows) {
    out << r.technique << ',' << r.metric << ',' << format_score_cell(r.value)
        << ',' << r.status << ',';
    if (r.k) out << *r.k;
    out << ',';
    if (r.seed) out << *r.seed;
    out << ',' << format_double(r.elapsed_seconds) << '\n';
  }
  return out.str();
}

std::string ranks_to_csv(
    const std::map<std::string, std::vector<RankEntry>>& ranks) {
  std::ostringstream out;
  out << "metric,direction,rank,technique,value\n";
  for (const auto& [metric, entries] : ranks) {
    const char* direction = lower_is_better(metric) ? "lower" : "higher";
    for (std::size_t r = 0; r < entries.size(); ++r) {
      out << metric << ',' << direction << ',' << (r + 1) << ','
          << entries[r].technique << ','
          << format_score_cell(entries[r].value) << '\n';
    }
  }
  return out.str();
}

std::string spearman_to_csv(const SpearmanMatrix& matrix) {
  std::ostringstream out;
  out << "metric";
  for (const std::string& m : matrix.metrics) out << ',' << m;
  out << '\n';
  for (std::size_t a = 0; a < matrix.metrics.size(); ++a) {
    out << matrix.metrics[a];
    for (std::size_t b = 0; b < matrix.metrics.size(); ++b) {
      out << ',' << format_score_cell(matrix.values[a][b]);
    }
    out << '\n';
  }
  return out.str();
}

void write_reports(const std::vector<ScoreRow>& rows,
                   const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_text_file((fs::path(out_dir) / "scores.csv").string(),
                  scores_to_csv(rows));
  write_text_file((fs::path(out_dir) / "ranks.csv").string(),
                  ranks_to_csv(compute_ranks(rows)));
  write_text_file((fs::path(out_dir) / "spearman.csv").string(),
                  spearman_to_csv(compute_spearman_matrix(rows)));
}

}  // namespace

std::map<std::string, std::vector<RankEntry>> compute_ranks(
    const std::vector<ScoreRow>& rows) {
  std::map<std::string, std::vector<RankEntry>> by_metric;
  for (const ScoreRow& r : rows) {
    by_metric[r.metric].push_back({r.technique, r.value, r.status});
  }
  for (auto& [metric, entries] : by_metric) {
    const bool lower = lower_is_better(metric);
    std::sort(entries.begin(), entries.end(),
              [lower](const RankEntry& a, const RankEntry& b) {
                const bool a_ok = a.status == "ok" && std::isfinite(a.value);
                const bool b_ok = b.status == "ok" && std::isfinite(b.value);
                if (a_ok != b_ok) return a_ok;  // flagged rows rank last
                if (!a_ok) return a.technique < b.technique;
                if (a.value != b.value) {
                  return lower ? a.value < b.value : a.value > b.value;
                }
                return a.technique < b.technique;
              });
  }
  return by_metric;
}

SpearmanMatrix compute_spearman_matrix(const std::vector<ScoreRow>& rows) {
  std::map<std::string, std::map<std::string, double>> oriented;
  for (const ScoreRow& r : rows) {
    if (r.status != "ok" || !std::isfinite(r.value)) continue;
    oriented[r.metric][r.technique] =
        lower_is_better(r.metric) ? -r.value : r.value;
  }
  SpearmanMatrix matrix;
  for (const auto& [metric, by_tech] : oriented) {
    (void)by_tech;
    matrix.metrics.push_back(metric);
  }
  const std::size_t n = matrix.metrics.size();
  matrix.values.assign(n, std::vector<double>(n, 1.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& ta = oriented[matrix.metrics[a]];
      const auto& tb = oriented[matrix.metrics[b]];
      std::vector<double> xs, ys;
      for (const auto& [tech, value] : ta) {
        const auto it = tb.find(tech);
        if (it == tb.end()) continue;
        xs.push_back(value);
        ys.push_back(it->second);
      }
      double corr = std::numeric_limits<double>::quiet_NaN();
      if (xs.size() >= 2) {
        const SpearmanResult r = spearman(xs, ys);
        if (r.defined) corr = r.value;
      }
      matrix.values[a][b] = corr;
      matrix.values[b][a] = corr;
    }
  }
  return matrix;
}

std::vector<ScoreRow> load_scores_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
  std::vector<ScoreRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 7) {
      throw ValidationError(path + ": expected 7 columns in scores CSV");
    }
    ScoreRow r;
    r.technique = fields[0];
    r.metric = fields[1];
    if (fields[2] == "nan") {
      r.value = std::numeric_limits<double>::quiet_NaN();
    } else if (fields[2] == "inf") {
      r.value = std::numeric_limits<double>::infinity();
    } else if (fields[2] == "-inf") {
      r.value = -std::numeric_limits<double>::infinity();
    } else {
      r.value = std::stod(fields[2]);
    }
    r.status = fields[3];
    if (!fields[4].empty()) r.k = std::stoull(fields[4]);
    if (!fields[5].empty()) r.seed = std::stoull(fields[5]);
    r.elapsed_seconds = std::stod(fields[6]);
    rows.push_back(r);
  }
  return rows;
}

int cmd_benchmark(const BenchmarkArgs& args) {
  if (args.in.empty() || args.out_dir.empty()) {
    throw ValidationError("benchmark: --in and --out-dir are required");
  }
  if (args.projections.empty()) {
    throw ValidationError("benchmark: at least one --proj name=path");
  }
  const Dataset ds = load_dataset(args.in);
  const Partition partition = ds.partition();

  std::vector<std::pair<std::string, Projection>> projections;
  for (const std::string& spec : args.projections) {
    auto [name, path] = parse_named_path(spec);
    Projection proj = load_projection(path);
    require_aligned(ds, proj);
    projections.emplace_back(name, std::move(proj));
  }
  std::map<std::string, std::vector<std::uint32_t>> labelings;
  for (const std::string& spec : args.labelings) {
    auto [name, path] = parse_named_path(spec);
    auto labels = load_labels(path);
    if (labels.size() != ds.n()) {
      throw ValidationError("labeling '" + name +
                            "' row count does not match dataset");
    }
    labelings[name] = std::move(labels);
  }

  std::vector<std::string> metrics = args.metrics;
  if (metrics.empty()) {
    metrics = {"cadi", "silhouette", "dbi", "cds"};
    if (!labelings.empty()) {
      metrics.push_back("nmi");
      metrics.push_back("ari");
    }
  }
  for (const std::string& m : metrics) {
    if (known_metrics().count(m) == 0) {
      throw ValidationError("unknown metric name: " + m);
    }
  }

  std::vector<ScoreRow> rows;
  for (const auto& [technique, proj] : projections) {
    for (const std::string& metric : metrics) {
      ScoreRow row;
      row.technique = technique;
      row.metric = metric;
      const auto start = Clock::now();
      try {
        if (metric == "cadi") {
          const auto budget =
              TripletBudget::with_multiplier(args.k_mult, args.seed);
          const CadiScore s = cadi_sampled(ds, proj, partition, budget);
          row.value = s.value;
          row.k = s.triplet_count;
          row.seed = s.seed;
        } else if (metric == "adi") {
          const auto budget = TripletBudget::with_multiplier(
              kDefaultAdiMultiplier, args.seed);
          const CadiScore s = adi_sampled(ds, proj, budget);
          row.value = s.value;
          row.k = s.triplet_count;
          row.seed = s.seed;
        } else if (metric == "silhouette") {
          row.value = silhouette(proj.points, ds.labels);
        } else if (metric == "dbi") {
          const DbiResult dbi = davies_bouldin(proj.points, ds.labels);
          row.value = dbi.value;
          if (dbi.coincident_centroids) row.status = "coincident_centroids";
        } else if (metric == "cds") {
          const CdsResult cds = cluster_distance_score(ds, proj, partition);
          row.value = cds.value;
          if (cds.degenerate) row.status = "degenerate";
        } else if (metric == "nmi" || metric == "ari") {
          const auto it = labelings.find(technique);
          if (it == labelings.end()) {
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.status = "no_labeling";
          } else if (metric == "nmi") {
            row.value = nmi(ds.labels, it->second);
          } else {
            row.value = ari(ds.labels, it->second);
          }
        }
      } catch (const DegenerateInputError&) {
        row.value = std::numeric_limits<double>::quiet_NaN();
        row.status = "degenerate";
      }
      row.elapsed_seconds = seconds_since(start);
      rows.push_back(row);
    }
  }
  write_reports(rows, args.out_dir);
  return 0;
}

int cmd_report(const ReportArgs& args) {
  if (args.scores.empty() || args.out_dir.empty()) {
    throw ValidationError("report: --scores and --out-dir are required");
  }
  write_reports(load_scores_csv(args.scores), args.out_dir);
  return 0;
}

}  // namespace cadi::cli
