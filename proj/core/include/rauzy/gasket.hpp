#pragma once

// Geometry of the standard simplex and its images under the Rauzy semigroup:
// image triangles, diameters and areas, the column-norm constant, adaptive
// covers, box counting, coding-map points and raster rendering.
//
// Points of the simplex are stored as vectors with coordinate sum 1 (the
// affine chart x + y + z = 1). Diameters, areas and grid cells use the
// Euclidean metric of that plane unless stated otherwise.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rauzy/linalg.hpp"
#include "rauzy/words.hpp"

namespace rauzy {

struct ProjTriangle {
  std::array<Vec3, 3> vertices;  // normalized gamma e_i
  Word word;
};

ProjTriangle triangle_of(const Word& w);

// Normalizes a nonnegative, nonzero vector so its coordinates sum to 1.
Vec3 to_simplex(const Vec3& v);

enum class Metric { Euclidean, Chordal };

struct DiamArea {
  double diam = 0.0;
  double area = 0.0;
};

// Area is always Euclidean in the plane x + y + z = 1; the diameter uses the
// requested metric.
DiamArea diam_area(const ProjTriangle& t, Metric metric = Metric::Euclidean);

// Area from |x ^ y ^ z| / (2 d(o, plane)) with d(o, plane) = 1/sqrt(3).
double wedge_area(const ProjTriangle& t);

bool contains(const ProjTriangle& t, const Vec3& p, double slack = 1e-10);

struct EpsilonEstimate {
  double epsilon = 0.0;
  Word attained_by;
  int depth_attained = 0;
  std::uint64_t words_checked = 0;
};

// min over words of length <= depth whose last n symbols are not all equal of
// min_i |gamma e_i| / s1(gamma).
EpsilonEstimate estimate_epsilon_n(int n, int depth, EnumOptions opts = {});

// min_i |gamma e_i| / s1(gamma) for a single matrix.
double column_norm_ratio(const Mat3& g);

struct CoverOptions {
  EnumOptions enumeration;
  int max_length = 1'000'000;
  double max_leaves = 2e8;
  bool distinct_tail = true;   // leaves end in two distinct symbols
  int max_tail_run = 8;        // constant tails this long end as leaves anyway
  bool collect_leaves = false;
};

struct CoverLeaf {
  Word word;
  std::array<Vec3, 3> vertices;
};

struct CoverReport {
  double delta = 0.0;
  double s = 0.0;
  std::uint64_t triangles = 0;
  double cost = 0.0;           // sum diam^{2-s} Area^{s-1} (s > 1) or diam^s (s <= 1)
  std::uint64_t boxes = 0;     // grid cells of side delta hit by leaf samples
  std::uint64_t truncated = 0; // branches stopped by max_length
  std::uint64_t repeated_tail = 0;  // leaves ending in a constant run
  int max_depth = 0;
  std::vector<CoverLeaf> leaves;  // sorted by word, when collected
};

// Leaves are the first prefixes whose triangle has diameter <= delta (and,
// by default, whose last two symbols differ, except for constant tails of
// length max_tail_run).
CoverReport adaptive_cover(double delta, double s, const CoverOptions& opts = {});

// The 13 sample points used to rasterize a triangle: vertices, edge midpoints,
// barycenter, and the midpoints between the barycenter and the six previous.
std::array<Vec3, 13> sample_points(const std::array<Vec3, 3>& v);

// Isometric chart of the plane x + y + z = 1 onto R^2.
std::array<double, 2> plane_coords(const Vec3& p);

struct BoxCountResult {
  std::vector<double> deltas;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> leaves;
  double slope = 0.0;
  double r2 = 0.0;
  double slope_stderr = 0.0;
};

struct BoxCountOptions {
  EnumOptions enumeration;
  double leaf_fraction = 0.25;  // leaves have diameter <= leaf_fraction * delta
  double max_leaves = 2e8;
};

// Occupied cells N(delta) of a grid with side delta, and the least-squares
// slope of log N against log(1/delta). Needs >= 4 strictly decreasing deltas.
BoxCountResult box_count_dimension(const std::vector<double>& deltas,
                                   const BoxCountOptions& opts = {});

struct CodingPoint {
  Vec3 point;        // on x + y + z = 1
  ProjPoint line;
  double error_bound = 0.0;  // diameter of the final triangle
};

// Approximates the coding-map image of prefix (123)^infinity by the barycenter
// of the triangle of prefix (123)^tail_iterations.
CodingPoint coding_point(const Word& prefix, int tail_iterations);

struct RenderOptions {
  int width = 1024;
  int height = 0;  // 0: width * sqrt(3)/2
  EnumOptions enumeration;
};

// Fills every triangle into a binary PPM (P6), coloured by the last symbol of
// its word. The header comment records the barycentric-to-pixel map.
std::string render_ppm(const std::vector<CoverLeaf>& triangles, const RenderOptions& opts);
void write_file(const std::filesystem::path& out, const std::string& bytes);

// All triangles of words of length exactly `depth`.
std::vector<CoverLeaf> depth_triangles(int depth, EnumOptions opts = {});


}  // namespace rauzy
