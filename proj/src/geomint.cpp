#include "casson/geomint.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "casson/errors.hpp"

namespace casson::geomint {

namespace {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
double det(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

// Pullback of the area form by (x - y)/|x - y| on unit tangent directions.
double area_density(const Vec3& d, const Vec3& ta, const Vec3& tb) {
  const double r = norm(d);
  return dot(d, cross(ta, tb)) / (r * r * r);
}

double segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
  double s = 0, t = 0;
  const double c = dot(d1, r), b = dot(d1, d2);
  const double denom = a * e - b * b;
  s = denom > 1e-300 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  t = (b * s + f) / e;
  if (t < 0) {
    t = 0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1) {
    t = 1;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return norm((p1 + s * d1) - (p2 + t * d2));
}

// A straight piece of a path: p + a*d for a in [0, 1], or a in [0, inf) when `ray`.
// `orient` is -1 when the parameter runs against the path.
struct Piece {
  Vec3 p, d;
  bool ray = false;
  int orient = 1;
};

// Integral of the pulled-back area form over (a, b) -> F(a) - G(b), oriented by (da, db).
double swept_angle(const Piece& f, const Piece& g) {
  const Vec3 p00 = f.p - g.p;
  double w;
  if (!f.ray && !g.ray) {
    const Vec3 p10 = p00 + f.d, p01 = p00 - g.d, p11 = p10 - g.d;
    w = triangle_solid_angle(p00, p10, p11) + triangle_solid_angle(p00, p11, p01);
  } else if (f.ray) {
    w = -strip_solid_angle(p00, p00 - g.d, f.d);
  } else {
    w = strip_solid_angle(p00, p00 + f.d, -1.0 * g.d);
  }
  return f.orient * g.orient * w;
}

constexpr Vec3 kUp{0, 1, 0};

class LongPath {
 public:
  explicit LongPath(std::vector<Vec3> v) : v_(std::move(v)) {
    s_.push_back(0);
    for (std::size_t i = 0; i + 1 < v_.size(); ++i) s_.push_back(s_.back() + norm(v_[i + 1] - v_[i]));
    len_ = s_.back();
  }
  double length() const { return len_; }

  Vec3 point(double s) const {
    if (s <= 0) return v_.front() + s * kUp;
    if (s >= len_) return v_.back() + (s - len_) * kUp;
    const int k = segment(s);
    const double f = (s - s_[k]) / (s_[k + 1] - s_[k]);
    return v_[k] + f * (v_[k + 1] - v_[k]);
  }
  Vec3 tangent(double s) const {
    if (s <= 0 || s >= len_) return kUp;
    const int k = segment(s);
    return (1.0 / (s_[k + 1] - s_[k])) * (v_[k + 1] - v_[k]);
  }

  // Pieces covering (lo, hi); infinite ends are given as +-infinity.
  template <class F>
  void pieces(double lo, double hi, F&& emit) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (lo < 0) {
      const double top = std::min(hi, 0.0);
      if (lo == -inf)
        emit(Piece{point(top), -1.0 * kUp, true, -1});
      else
        emit(Piece{point(lo), point(top) - point(lo), false, 1});
    }
    const int m = static_cast<int>(v_.size());
    for (int k = 0; k + 1 < m; ++k) {
      const double a = std::max(lo, s_[k]), b = std::min(hi, s_[k + 1]);
      if (a >= b) continue;
      emit(Piece{point(a), point(b) - point(a), false, 1});
    }
    if (hi > len_) {
      const double bottom = std::max(lo, len_);
      if (hi == inf)
        emit(Piece{point(bottom), kUp, true, 1});
      else
        emit(Piece{point(bottom), point(hi) - point(bottom), false, 1});
    }
  }

 private:
  std::vector<Vec3> v_;
  std::vector<double> s_;
  double len_ = 0;

  int segment(double s) const {
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    int k = static_cast<int>(it - s_.begin()) - 1;
    return std::clamp(k, 0, static_cast<int>(s_.size()) - 2);
  }
};

// The four-term integrand on an ordered parameter pair sa < sb. Each term pairs the
// area density of (x_a, x_b) with the exactly integrated solid angle swept by the
// remaining point and chord.
double v2_integrand(const LongPath& k, double sa, double sb, int chord_sign) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const Vec3 xa = k.point(sa), xb = k.point(sb);
  const Vec3 d = xa - xb;
  const double density = -area_density(d, k.tangent(sa), k.tangent(sb));
  if (density == 0) return 0;

  double crossed = 0;  // x1 = xa, x3 = xb; x2 between, x4 after
  k.pieces(sa, sb, [&](const Piece& mid) {
    k.pieces(sb, inf, [&](const Piece& after) { crossed += swept_angle(after, mid); });
  });

  // Free point on the chord [x2, x1] (x1 = xa, x2 = xb), seen from x3 after.
  double chord_after = 0;
  const Piece back{xb, xa - xb, false, 1};
  k.pieces(sb, inf, [&](const Piece& after) { chord_after -= swept_angle(back, after); });

  // Free point on the chord [x2, x3] (x2 = xa, x3 = xb), seen from x1 before.
  double chord_before = 0;
  const Piece fwd{xa, xb - xa, false, 1};
  k.pieces(-inf, sa, [&](const Piece& before) { chord_before += swept_angle(before, fwd); });

  // Free point on the line through x1 = xa and x3 = xb outside the chord, seen from x2.
  double outside = 0;
  const Vec3 u = (1.0 / norm(xb - xa)) * (xb - xa);
  const Piece beyond{xb, u, true, 1};
  const Piece behind{xa, -1.0 * u, true, 1};
  k.pieces(sa, sb, [&](const Piece& mid) { outside += swept_angle(behind, mid) - swept_angle(beyond, mid); });

  return density * (crossed + 0.5 * (chord_sign * (chord_after + chord_before) + outside));
}

struct Moments {
  double sum = 0, sumsq = 0;
  std::uint64_t rejected = 0;
};

template <class Draw>
std::vector<Moments> run_chunks(std::uint64_t samples, std::uint64_t seed, int workers, Draw draw) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> out(chunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
      std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
      std::mt19937_64 rng(sq);
      const std::uint64_t n = std::min(kChunk, samples - c * kChunk);
      Moments m;
      for (std::uint64_t i = 0; i < n; ++i) {
        const double v = draw(rng, m.rejected);
        m.sum += v;
        m.sumsq += v * v;
      }
      out[c] = m;
    }
  };
  workers = std::max(1, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

McEstimate summarize(const std::vector<Moments>& m, std::uint64_t upto_chunks, std::uint64_t samples,
                     std::uint64_t seed, double scale) {
  double s = 0, ss = 0;
  std::uint64_t rej = 0;
  for (std::uint64_t c = 0; c < upto_chunks; ++c) {
    s += m[c].sum;
    ss += m[c].sumsq;
    rej += m[c].rejected;
  }
  const double n = static_cast<double>(samples);
  const double mean = s / n;
  const double var = std::max(0.0, ss / n - mean * mean);
  McEstimate e;
  e.value = scale * mean;
  e.std_error = scale * std::sqrt(var / std::max(1.0, n - 1));
  e.samples = samples;
  e.seed = seed;
  e.rejected = rej;
  return e;
}

struct ClosedPath {
  std::vector<Vec3> v;
  std::vector<double> s;
  double len = 0;
  explicit ClosedPath(std::vector<Vec3> pts) : v(std::move(pts)) {
    if (v.size() < 3) throw ValidationError("a loop needs at least three vertices");
    s.push_back(0);
    for (std::size_t i = 0; i < v.size(); ++i) s.push_back(s.back() + norm(v[(i + 1) % v.size()] - v[i]));
    len = s.back();
  }
  void at(double t, Vec3& x, Vec3& tan) const {
    auto it = std::upper_bound(s.begin(), s.end(), t);
    int k = std::clamp(static_cast<int>(it - s.begin()) - 1, 0, static_cast<int>(v.size()) - 1);
    const Vec3 a = v[k], b = v[(k + 1) % v.size()];
    const double l = s[k + 1] - s[k];
    x = a + ((t - s[k]) / l) * (b - a);
    tan = (1.0 / l) * (b - a);
  }
};

// Arclength from a uniform variable: the middle 70% covers the polygon, the tails
// cover the two rays with density decaying like 1/s^2.
struct TailMap {
  double len, scale;
  static constexpr double kTail = 0.15;
  double operator()(double w, double& jac) const {
    if (w < kTail) {
      jac = scale * kTail / (w * w);
      return -scale * (kTail / w - 1);
    }
    if (w > 1 - kTail) {
      const double r = 1 - w;
      jac = scale * kTail / (r * r);
      return len + scale * (kTail / r - 1);
    }
    jac = len / (1 - 2 * kTail);
    return (w - kTail) / (1 - 2 * kTail) * len;
  }
};

std::vector<Vec3> long_vertices(const morse::PolyKnot& k) {
  if (k.shape != Shape::Long) throw ValidationError("integration needs a long knot");
  if (k.vertices.size() < 2) throw ValidationError("a long knot needs at least two vertices");
  auto v = to_doubles(k.vertices);
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (!(v[i][1] > v.front()[1] && v[i][1] < v.back()[1]))
      throw ValidationError("first and last vertices must be the lowest and highest");
  if (self_distance(k) < 1e-9) throw ValidationError("knot is not embedded");
  // Both rays must lie on one line; otherwise join the ends to the vertical line through
  // their midpoint, below and above everything else, which keeps the knot type.
  const Vec3 lo = v.front(), hi = v.back();
  if (lo[0] != hi[0] || lo[2] != hi[2]) {
    const double x = (lo[0] + hi[0]) / 2, z = (lo[2] + hi[2]) / 2;
    const double rise = std::max(1.0, std::hypot(hi[0] - lo[0], hi[2] - lo[2]));
    v.insert(v.begin(), Vec3{x, lo[1] - rise, z});
    v.push_back(Vec3{x, hi[1] + rise, z});
  }
  return v;
}

}  // namespace

double triangle_solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = norm(a), lb = norm(b), lc = norm(c);
  const double num = det(a, b, c);
  const double den = la * lb * lc + dot(a, b) * lc + dot(a, c) * lb + dot(b, c) * la;
  return 2 * std::atan2(num, den);
}

double strip_solid_angle(const Vec3& a, const Vec3& b, const Vec3& e) {
  const Vec3 u = (1.0 / norm(e)) * e;
  const double la = norm(a), lb = norm(b);
  const double num = det(a, b, u);
  const double den = la * lb + dot(a, b) + dot(a, u) * lb + dot(b, u) * la;
  return 2 * std::atan2(num, den);
}

std::vector<Vec3> to_doubles(const std::vector<morse::Point3>& pts) {
  std::vector<Vec3> out;
  for (const auto& p : pts) out.push_back({p.x.get_d(), p.y.get_d(), p.z.get_d()});
  return out;
}

double self_distance(const morse::PolyKnot& k) {
  auto v = to_doubles(k.vertices);
  const bool is_long = k.shape == Shape::Long;
  constexpr double far = 1e6;
  if (is_long) {
    v.insert(v.begin(), v.front() + Vec3{0, -far, 0});
    v.push_back(v.back() + Vec3{0, far, 0});
  }
  const int n = static_cast<int>(v.size());
  const int segs = is_long ? n - 1 : n;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < segs; ++i)
    for (int j = i + 2; j < segs; ++j) {
      if (!is_long && i == 0 && j == segs - 1) continue;
      best = std::min(best, segment_distance(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]));
    }
  return best;
}

McEstimate linking_mc(const std::vector<Vec3>& loop1, const std::vector<Vec3>& loop2, std::uint64_t samples,
                      std::uint64_t seed, int workers) {
  if (samples == 0) throw ValidationError("need at least one sample");
  const ClosedPath a(loop1), b(loop2);
  for (std::size_t i = 0; i < loop1.size(); ++i)
    for (std::size_t j = 0; j < loop2.size(); ++j)
      if (segment_distance(loop1[i], loop1[(i + 1) % loop1.size()], loop2[j], loop2[(j + 1) % loop2.size()]) < 1e-12)
        throw ValidationError("loops intersect");
  auto draw = [&](std::mt19937_64& rng, std::uint64_t&) {
    std::uniform_real_distribution<double> ua(0, a.len), ub(0, b.len);
    Vec3 x, tx, y, ty;
    a.at(ua(rng), x, tx);
    b.at(ub(rng), y, ty);
    return area_density(x - y, tx, ty);
  };
  auto m = run_chunks(samples, seed, workers, draw);
  return summarize(m, m.size(), samples, seed, a.len * b.len / (4 * std::numbers::pi));
}

std::vector<McEstimate> v2_mc_checkpoints(const morse::PolyKnot& k, std::vector<std::uint64_t> checkpoints,
                                          std::uint64_t seed, int workers, int chord_sign) {
  if (checkpoints.empty()) return {};
  std::sort(checkpoints.begin(), checkpoints.end());
  const std::uint64_t total = checkpoints.back();
  if (checkpoints.front() == 0) throw ValidationError("need at least one sample");
  for (auto c : checkpoints)
    if (c % kChunk != 0 && c != total) throw ValidationError("checkpoints must be multiples of the chunk size");
  const LongPath path(long_vertices(k));
  const TailMap map{path.length(), std::max(1.0, path.length() / 4)};
  auto draw = [&](std::mt19937_64& rng, std::uint64_t& rejected) {
    std::uniform_real_distribution<double> u(0, 1);
    while (true) {
      double ja, jb;
      const double wa = u(rng), wb = u(rng);
      if (wa == 0 || wb == 0) {
        ++rejected;
        continue;
      }
      double sa = map(wa, ja), sb = map(wb, jb);
      if (sa > sb) std::swap(sa, sb);
      if (sb - sa < 1e-9 || norm(path.point(sb) - path.point(sa)) < 1e-9) {
        ++rejected;
        continue;
      }
      return 0.5 * ja * jb * v2_integrand(path, sa, sb, chord_sign);
    }
  };
  auto m = run_chunks(total, seed, workers, draw);
  const double scale = 1 / (16 * std::numbers::pi * std::numbers::pi);
  std::vector<McEstimate> out;
  for (auto c : checkpoints) out.push_back(summarize(m, (c + kChunk - 1) / kChunk, c, seed, scale));
  return out;
}

double v2_integrand_at(const morse::PolyKnot& k, double sa, double sb, int chord_sign) {
  const LongPath path(long_vertices(k));
  return v2_integrand(path, std::min(sa, sb), std::max(sa, sb), chord_sign);
}

Vec3 long_point(const morse::PolyKnot& k, double s) { return LongPath(long_vertices(k)).point(s); }

McEstimate v2_mc(const morse::PolyKnot& k, std::uint64_t samples, std::uint64_t seed, int workers,
                  int chord_sign) {
  return v2_mc_checkpoints(k, {samples}, seed, workers, chord_sign).front();
}

}  // namespace casson::geomint
