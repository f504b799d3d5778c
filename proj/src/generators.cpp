#include "cadi/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cadi/rng.hpp"

namespace cadi {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

std::vector<std::string> dense_label_names(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t c = 0; c < m; ++c) names.push_back(std::to_string(c));
  return names;
}

void unit_vector(SplitMix64& rng, std::span<double> out) {
  while (true) {
    double norm_sq = 0.0;
    for (double& v : out) {
      v = rng.next_normal();
      norm_sq += v * v;
    }
    if (norm_sq > 1e-24) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (double& v : out) v *= inv;
      return;
    }
  }
}

// Split `total` into parts proportional to `weights` using largest
// remainders; every part gets at least 1.
std::vector<int> proportional_counts(int total,
                                     const std::vector<double>& weights) {
  const double weight_sum =
      std::accumulate(weights.begin(), weights.end(), 0.0);
  const std::size_t parts = weights.size();
  std::vector<int> counts(parts, 1);
  int assigned = static_cast<int>(parts);
  std::vector<std::pair<double, std::size_t>> remainders;
  for (std::size_t p = 0; p < parts; ++p) {
    const double exact =
        static_cast<double>(total) * weights[p] / weight_sum;
    const int extra = std::max(0, static_cast<int>(exact) - 1);
    counts[p] += extra;
    assigned += extra;
    remainders.push_back({exact - std::floor(exact), p});
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  for (std::size_t q = 0; assigned < total; q = (q + 1) % parts) {
    counts[remainders[q].second] += 1;
    assigned += 1;
  }
  for (std::size_t q = 0; assigned > total; q = (q + 1) % parts) {
    auto& c = counts[remainders[parts - 1 - q].second];
    if (c > 1) {
      c -= 1;
      assigned -= 1;
    }
  }
  return counts;
}

}  // namespace

Dataset gen_concentric(int dim, int n_spheres, int per_sphere,
                       std::vector<double> radii, std::uint64_t seed) {
  if (dim < 2) throw ValidationError("gen_concentric: dim must be >= 2");
  if (per_sphere < 1) {
    throw ValidationError("gen_concentric: per_sphere must be >= 1");
  }
  if (static_cast<int>(radii.size()) != n_spheres) {
    throw ValidationError("gen_concentric: need one radius per sphere");
  }
  for (int s = 0; s < n_spheres; ++s) {
    if (radii[s] <= 0.0 || (s > 0 && radii[s] <= radii[s - 1])) {
      throw ValidationError(
          "gen_concentric: radii must be positive and strictly increasing");
    }
  }

  SplitMix64 rng(seed);
  Dataset ds;
  const std::size_t n = static_cast<std::size_t>(n_spheres) * per_sphere;
  ds.points = Matrix(n, dim);
  ds.labels.resize(n);
  ds.label_names = dense_label_names(n_spheres);
  std::size_t row = 0;
  for (int s = 0; s < n_spheres; ++s) {
    for (int p = 0; p < per_sphere; ++p, ++row) {
      auto out = ds.points.row(row);
      unit_vector(rng, out);
      for (double& v : out) v *= radii[s];
      ds.labels[row] = static_cast<std::uint32_t>(s);
    }
  }
  ds.validate();
  return ds;
}

Dataset gen_rings(int n_rings, int per_ring, int ambient_dim,
                  double ring_radius, double spacing, double noise_sigma,
                  std::uint64_t seed) {
  if (ambient_dim < n_rings + 1) {
    throw ValidationError(
        "gen_rings: ambient dimension must be at least n_rings + 1");
  }
  if (per_ring < 3) throw ValidationError("gen_rings: per_ring must be >= 3");
  if (spacing >= 2.0 * ring_radius) {
    throw ValidationError(
        "gen_rings: spacing >= 2 * ring_radius breaks the chain");
  }
  if (noise_sigma < 0.0) {
    throw ValidationError("gen_rings: negative noise sigma");
  }

  SplitMix64 rng(seed);
  Dataset ds;
  const std::size_t n = static_cast<std::size_t>(n_rings) * per_ring;
  ds.points = Matrix(n, ambient_dim, 0.0);
  ds.labels.resize(n);
  ds.label_names = dense_label_names(n_rings);
  const int shared_axis = n_rings;
  std::size_t row = 0;
  for (int r = 0; r < n_rings; ++r) {
    for (int p = 0; p < per_ring; ++p, ++row) {
      const double phi = kTau * rng.next_double();
      ds.points.at(row, r) = ring_radius * std::cos(phi);
      ds.points.at(row, shared_axis) =
          static_cast<double>(r) * spacing + ring_radius * std::sin(phi);
      if (noise_sigma > 0.0) {
        for (int c = 0; c < ambient_dim; ++c) {
          ds.points.at(row, c) += noise_sigma * rng.next_normal();
        }
      }
      ds.labels[row] = static_cast<std::uint32_t>(r);
    }
  }
  ds.validate();
  return ds;
}

Dataset gen_donuts(int n_tori, int per_torus, std::vector<double> major_radii,
                   std::vector<double> minor_radii, std::uint64_t seed) {
  if (static_cast<int>(major_radii.size()) != n_tori ||
      static_cast<int>(minor_radii.size()) != n_tori) {
    throw ValidationError("gen_donuts: need one (R, r) pair per torus");
  }
  for (int t = 0; t < n_tori; ++t) {
    if (major_radii[t] <= 0.0 || minor_radii[t] <= 0.0 ||
        minor_radii[t] >= major_radii[t]) {
      throw ValidationError("gen_donuts: need 0 < r < R per torus");
    }
    if (t > 0 && major_radii[t - 1] + minor_radii[t - 1] >=
                     major_radii[t] - minor_radii[t]) {
      throw ValidationError("gen_donuts: tori intersect");
    }
  }

  SplitMix64 rng(seed);
  Dataset ds;
  const std::size_t n = static_cast<std::size_t>(n_tori) * per_torus;
  ds.points = Matrix(n, 3);
  ds.labels.resize(n);
  ds.label_names = dense_label_names(n_tori);
  std::size_t row = 0;
  for (int t = 0; t < n_tori; ++t) {
    const double big = major_radii[t];
    const double small = minor_radii[t];
    for (int p = 0; p < per_torus; ++p, ++row) {
      const double u = kTau * rng.next_double();
      // area element is proportional to R + r*cos(v); reject accordingly
      double v;
      do {
        v = kTau * rng.next_double();
      } while (rng.next_double() >
               (big + small * std::cos(v)) / (big + small));
      const double ring = big + small * std::cos(v);
      ds.points.at(row, 0) = ring * std::cos(u);
      ds.points.at(row, 1) = ring * std::sin(u);
      ds.points.at(row, 2) = small * std::sin(v);
      ds.labels[row] = static_cast<std::uint32_t>(t);
    }
  }
  ds.validate();
  return ds;
}

namespace {

struct DumbbellShape {
  double bulb_radius;
  double bulb_offset;
  double neck_radius;
  double junction_x;      // |x| of the bulb/neck junction plane
  double bulb_area;       // one bulb, cap removed
  double neck_area;
  double total_area() const { return 2.0 * bulb_area + neck_area; }
};

DumbbellShape dumbbell_shape(double bulb_radius, double bulb_offset,
                             double neck_radius) {
  DumbbellShape s;
  s.bulb_radius = bulb_radius;
  s.bulb_offset = bulb_offset;
  s.neck_radius = neck_radius;
  const double reach =
      std::sqrt(bulb_radius * bulb_radius - neck_radius * neck_radius);
  s.junction_x = bulb_offset - reach;
  // spherical cap cut away where the neck attaches: height rho - reach
  const double cap_area = kTau * bulb_radius * (bulb_radius - reach);
  s.bulb_area = 2.0 * kTau * bulb_radius * bulb_radius - cap_area;
  s.neck_area = kTau * neck_radius * (2.0 * s.junction_x);
  return s;
}

void sample_dumbbell_point(SplitMix64& rng, const DumbbellShape& s,
                           double scale, std::span<double> out) {
  const double part = rng.next_double() * s.total_area();
  if (part < s.neck_area) {
    const double x =
        -s.junction_x + rng.next_double() * (2.0 * s.junction_x);
    const double phi = kTau * rng.next_double();
    out[0] = scale * x;
    out[1] = scale * s.neck_radius * std::cos(phi);
    out[2] = scale * s.neck_radius * std::sin(phi);
    return;
  }
  const double side = (part < s.neck_area + s.bulb_area) ? 1.0 : -1.0;
  const double keep_threshold =
      (s.bulb_offset - s.junction_x) / s.bulb_radius;
  double dir[3];
  do {
    unit_vector(rng, dir);
  } while (side * dir[0] < -keep_threshold);  // reject the removed cap
  out[0] = scale * (side * s.bulb_offset + s.bulb_radius * dir[0]);
  out[1] = scale * s.bulb_radius * dir[1];
  out[2] = scale * s.bulb_radius * dir[2];
}

}  // namespace

Dataset gen_matryoshka(const MatryoshkaConfig& config) {
  if (config.total_points < 7) {
    throw ValidationError("gen_matryoshka: need at least 7 points");
  }
  const double rho = config.bulb_radius;
  const double offset = config.bulb_offset;
  if (rho <= 0.0 || offset <= rho) {
    throw ValidationError(
        "gen_matryoshka: need 0 < bulb_radius < bulb_offset");
  }
  double neck = config.neck_radius;
  if (neck <= 0.0) {
    // Largest neck for which the surface is star-shaped about the origin:
    // the junction circle lies on the tangent cone from the origin to the
    // bulbs, so every scaled copy strictly contains the previous one.
    neck = rho * std::sqrt(1.0 - (rho / offset) * (rho / offset));
  }
  if (neck >= rho) {
    throw ValidationError("gen_matryoshka: neck radius must be < bulb radius");
  }
  const DumbbellShape shape = dumbbell_shape(rho, offset, neck);

  const auto& scales = config.dumbbell_scales;
  std::vector<double> weights;
  for (double s : scales) weights.push_back(shape.total_area() * s * s);
  const double sphere_outer_area =
      2.0 * kTau * config.sphere_radius_outer * config.sphere_radius_outer;
  const double sphere_inner_area =
      2.0 * kTau * config.sphere_radius_inner * config.sphere_radius_inner;
  // classes: dumbbells (by scale), then +x outer/inner, -x outer/inner
  weights.push_back(sphere_outer_area);
  weights.push_back(sphere_inner_area);
  weights.push_back(sphere_outer_area);
  weights.push_back(sphere_inner_area);
  const auto counts = proportional_counts(config.total_points, weights);

  SplitMix64 rng(config.seed);
  Dataset ds;
  ds.points = Matrix(config.total_points, 3);
  ds.labels.resize(config.total_points);
  ds.label_names = dense_label_names(weights.size());

  std::size_t row = 0;
  for (std::size_t cls = 0; cls < scales.size(); ++cls) {
    for (int p = 0; p < counts[cls]; ++p, ++row) {
      sample_dumbbell_point(rng, shape, scales[cls], ds.points.row(row));
      ds.labels[row] = static_cast<std::uint32_t>(cls);
    }
  }
  const double sphere_radii[] = {config.sphere_radius_outer,
                                 config.sphere_radius_inner,
                                 config.sphere_radius_outer,
                                 config.sphere_radius_inner};
  const double sphere_sides[] = {1.0, 1.0, -1.0, -1.0};
  for (std::size_t s = 0; s < 4; ++s) {
    const std::size_t cls = scales.size() + s;
    for (int p = 0; p < counts[cls]; ++p, ++row) {
      auto out = ds.points.row(row);
      unit_vector(rng, out);
      for (double& v : out) v *= sphere_radii[s];
      out[0] += sphere_sides[s] * offset;
      ds.labels[row] = static_cast<std::uint32_t>(cls);
    }
  }
  ds.validate();
  return ds;
}

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {
      "rings", "concentric3", "concentric4", "donuts", "matryoshka"};
  return names;
}

Dataset generate(const GeneratorConfig& config) {
  const auto scaled = [&](int default_count) {
    if (config.points_per_class) return *config.points_per_class;
    return std::max(
        1, static_cast<int>(std::llround(config.size_scale * default_count)));
  };
  if (config.name == "concentric3") {
    return gen_concentric(3, 5, scaled(552), {1, 2, 3, 4, 5}, config.seed);
  }
  if (config.name == "concentric4") {
    return gen_concentric(4, 5, scaled(648), {1, 2, 3, 4, 5}, config.seed);
  }
  if (config.name == "donuts") {
    return gen_donuts(3, scaled(1250), {2, 4, 6}, {0.5, 0.5, 0.5},
                      config.seed);
  }
  if (config.name == "matryoshka") {
    MatryoshkaConfig mc;
    mc.total_points = config.points_per_class
                          ? *config.points_per_class * 7
                          : std::max(7, static_cast<int>(std::llround(
                                            config.size_scale * 6400)));
    mc.seed = config.seed;
    return gen_matryoshka(mc);
  }
  if (config.name == "rings") {
    const double sigma = config.noise_sigma.value_or(0.01);
    return gen_rings(20, std::max(3, scaled(200)), 100, 1.0, 0.9, sigma,
                     config.seed);
  }
  throw ValidationError("unknown generator name: " + config.name);
}

Dataset generate_by_name(std::string_view name, std::uint64_t seed,
                         double size_scale) {
  GeneratorConfig config;
  config.name = std::string(name);
  config.seed = seed;
  config.size_scale = size_scale;
  return generate(config);
}

}  // namespace cadi
