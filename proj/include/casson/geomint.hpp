#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "casson/morse.hpp"

namespace casson::geomint {

using Vec3 = std::array<double, 3>;

struct McEstimate {
  double value = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t rejected = 0;
};

// Signed solid angle of the triangle abc seen from the origin, positive when
// det(a, b, c) > 0.
double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c);
// Limit of the triangle (a, b, L*e) as L grows: the strip swept from segment ab along e.
double strip_solid_angle(const Vec3& a, const Vec3& b, const Vec3& e);

std::vector<Vec3> to_doubles(const std::vector<morse::Point3>& pts);

// Gauss linking integral of two closed polygons by Monte Carlo over pairs of arclength
// parameters. Throws ValidationError if the polygons meet.
McEstimate linking_mc(const std::vector<Vec3>& loop1, const std::vector<Vec3>& loop2,
                      std::uint64_t samples, std::uint64_t seed, int workers = 1);

// Configuration-space integral for v2 of a long polygonal knot. The long knot continues
// from its first and last vertex along the y axis; if those rays are not on one line,
// both ends are first joined to the vertical line through their midpoint. Outer pairs of arclength parameters
// are sampled; the inner pairs are integrated exactly as solid angles.
// The two terms with the free point on a chord between neighbours enter with sign
// kChordSign; +1 gives a functional that drifts under isotopy.
inline constexpr int kChordSign = -1;
McEstimate v2_mc(const morse::PolyKnot& k, std::uint64_t samples, std::uint64_t seed, int workers = 1,
                 int chord_sign = kChordSign);

// Estimates on prefixes of one sample stream; every checkpoint must be a multiple of
// kChunk or equal to the largest checkpoint.
inline constexpr std::uint64_t kChunk = 1000;
std::vector<McEstimate> v2_mc_checkpoints(const morse::PolyKnot& k, std::vector<std::uint64_t> checkpoints,
                                          std::uint64_t seed, int workers = 1, int chord_sign = kChordSign);

// Outer integrand on arclength parameters sa < sb (inner integrals done exactly), and
// the arclength parametrization it uses, rays included.
double v2_integrand_at(const morse::PolyKnot& k, double sa, double sb, int chord_sign = kChordSign);
Vec3 long_point(const morse::PolyKnot& k, double s);

// Smallest distance between non-adjacent pieces of the knot, rays included.
double self_distance(const morse::PolyKnot& k);

}  // namespace casson::geomint
