#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casson/gauss.hpp"

namespace casson::morse {

struct Point2 {
  Rational x, y;
};
struct Point3 {
  Rational x, y, z;
};

// Long knots run from the first vertex (strictly lowest) to the last (strictly highest)
// and continue vertically to infinity beyond them.
struct PolyKnot {
  Shape shape = Shape::Long;
  std::vector<Point3> vertices;
};

PolyKnot parse_polyknot_json(const std::string& text);
std::string polyknot_json(const PolyKnot& k);
// Reflection z -> -z.
PolyKnot mirror(const PolyKnot& k);
// Polygonal closure of a braid word; the long version cuts strand 1.
PolyKnot polyknot_from_braid(const std::vector<int>& letters, Shape shape);

struct Crossing {
  Rational first;   // curve parameters of the two passages, first < second
  Rational second;
  Point2 at;
  bool first_over = true;
  int sign = 0;     // local writhe, from the over/under choice
  int epsilon = 0;  // intersection number of the branches, first branch first
};

class PlaneCurve {
 public:
  // Validates genericity; throws ValidationError naming the offending feature.
  PlaneCurve(Shape shape, std::vector<Point2> vertices);

  Shape shape() const { return shape_; }
  const std::vector<Point2>& vertices() const { return v_; }
  const std::vector<Crossing>& crossings() const { return x_; }
  int segments() const;
  Point2 at(const Rational& param) const;
  Point2 direction(int segment) const;

  // Over/under per crossing (true = first passage over).
  PlaneCurve resolved(const std::vector<bool>& first_over) const;
  // Every crossing first met as an underpass (ascending) or overpass (descending).
  PlaneCurve ascending() const;
  PlaneCurve descending() const;
  std::vector<bool> resolution() const;
  BasedGaussDiagram gauss() const;

  // Vertices of the curve restricted to a parameter interval, walking forward;
  // for long curves `from` may be -inf (nullopt) and `to` +inf (nullopt).
  std::vector<Point2> chain(std::optional<Rational> from, std::optional<Rational> to) const;

  std::string svg() const;

 private:
  Shape shape_;
  std::vector<Point2> v_;
  std::vector<Crossing> x_;
  void find_crossings();
  void check_generic() const;
};

PlaneCurve project(const PolyKnot& k);

// Random polygon with generic projection; coordinates are small-denominator rationals.
PolyKnot random_polyknot(std::uint64_t seed, int interior_vertices, Shape shape);

// Signed count of crossings of the open rightward horizontal ray from p with the polyline
// (+1 where the polyline goes up).
int point_index(const Point2& p, const std::vector<Point2>& polyline);

struct MorseStats {
  int M = 0;
  int X = 0, Xplus = 0, Xminus = 0;
  // Long curves.
  long long I_int = 0, I_out = 0, I_r = 0, I_l = 0;
  // Closed curves.
  long long E = 0, Q = 0;
};

MorseStats morse_stats(const PlaneCurve& c);

struct LongFormulas {
  // Four times each right-hand side, before division.
  long long f1x4 = 0, f2x4 = 0, f3x4 = 0;
};
LongFormulas long_formulas(const PlaneCurve& c);
long long v2_morse(const PlaneCurve& c);

// Closed formula scaled by 24; `q_weight24` is 24 times the coefficient of Q.
long long closed_formula_x24(const PlaneCurve& c, int q_weight24);
inline constexpr int kQWeight24 = 2;
long long v2_morse_closed(const PlaneCurve& c);

long long arnold_I(const PlaneCurve& c);
long long arnold_I_descending(const PlaneCurve& c);

// Closes a long curve with a path far to the left; adds one maximum.
PlaneCurve close_left(const PlaneCurve& c);
// Long curve obtained from close_left(c) by cutting its leftmost (downward) string.
PlaneCurve cut_left(const PlaneCurve& c);

}  // namespace casson::morse
