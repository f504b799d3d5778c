#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cadi/dataset.hpp"

namespace cadi {

/// Points uniform on n_spheres concentric hollow (hyper)sphere surfaces in
/// `dim` dimensions; label = sphere index. Defaults reproduce the benchmark
/// shapes: dim 3 with 552 points/sphere (n = 2760) and dim 4 with 648
/// (n = 3240), radii 1..5.
Dataset gen_concentric(int dim, int n_spheres, int per_sphere,
                       std::vector<double> radii, std::uint64_t seed);

/// A chain of n_rings mutually orthogonal 2D rings embedded in
/// ambient_dim dimensions. Ring r lies in the plane spanned by its private
/// axis e_r and the shared axis e_{n_rings}; centers advance by `spacing`
/// along the shared axis, so spacing < 2 * ring_radius keeps consecutive
/// rings interlocked. Isotropic Gaussian noise with sigma noise_sigma is
/// added in all ambient coordinates. Defaults: 20 rings x 200 points,
/// ambient 100, radius 1, spacing 0.9, sigma 0.01 (n = 4000).
Dataset gen_rings(int n_rings, int per_ring, int ambient_dim,
                  double ring_radius, double spacing, double noise_sigma,
                  std::uint64_t seed);

/// n_tori nested co-axial tori around the z-axis, surface-uniform via the
/// usual area-element rejection on the poloidal angle. Tori must not
/// intersect: R_i + r_i < R_{i+1} - r_{i+1}. Defaults: 3 tori x 1250 points,
/// R = (2, 4, 6), r = 0.5 (n = 3750).
Dataset gen_donuts(int n_tori, int per_torus, std::vector<double> major_radii,
                   std::vector<double> minor_radii, std::uint64_t seed);

/// Nested dumbbell benchmark: three scaled copies of a dumbbell surface (two
/// spheres of radius bulb_radius at +-bulb_offset on the x axis bridged by a
/// cylindrical neck), plus two concentric hollow spheres at each end inside
/// the innermost dumbbell. 7 classes; points are split across classes and
/// surface parts proportionally to area. neck_radius <= 0 selects the
/// largest neck for which every ray from the origin crosses the surface
/// once, which guarantees the scaled copies nest without touching.
struct MatryoshkaConfig {
  int total_points = 6400;
  double bulb_radius = 1.0;
  double bulb_offset = 1.5;
  double neck_radius = 0.0;  // <= 0: derived from bulb_radius/bulb_offset
  std::vector<double> dumbbell_scales = {1.0, 1.5, 2.0};
  double sphere_radius_outer = 1.0 / 3.0;
  double sphere_radius_inner = 1.0 / 6.0;
  std::uint64_t seed = 0;
};
Dataset gen_matryoshka(const MatryoshkaConfig& config = {});

/// CLI-facing configuration: dataset name plus the common overrides.
struct GeneratorConfig {
  std::string name;
  std::uint64_t seed = 0;
  double size_scale = 1.0;  // scales per-class point counts
  std::optional<int> points_per_class;
  std::optional<double> noise_sigma;  // rings only
};

/// Dispatches on name in {rings, concentric3, concentric4, donuts,
/// matryoshka} with benchmark defaults scaled by the config.
Dataset generate(const GeneratorConfig& config);

/// Convenience wrapper over generate().
Dataset generate_by_name(std::string_view name, std::uint64_t seed,
                         double size_scale = 1.0);

/// The five generator names in canonical order.
const std::vector<std::string>& generator_names();

}  // namespace cadi
