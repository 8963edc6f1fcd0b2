#include "casson/morse.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "casson/errors.hpp"
#include "casson/pairing.hpp"

namespace casson::morse {

namespace {

int sign_of(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
Point2 sub(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
bool same(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }

std::string fmt(const Rational& q) { return q.get_str(); }
std::string fmt(const Point2& p) { return "(" + fmt(p.x) + ", " + fmt(p.y) + ")"; }

Rational floor_of(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

}  // namespace

int PlaneCurve::segments() const {
  const int m = static_cast<int>(v_.size());
  return shape_ == Shape::Closed ? m : m - 1;
}

Point2 PlaneCurve::direction(int s) const {
  const int m = static_cast<int>(v_.size());
  return sub(v_[(s + 1) % m], v_[s]);
}

Point2 PlaneCurve::at(const Rational& param) const {
  const Rational f = floor_of(param);
  int s = static_cast<int>(f.get_num().get_si());
  Rational t = param - f;
  if (s == segments()) {
    s -= 1;
    t = 1;
  }
  const Point2 a = v_[s];
  const Point2 d = direction(s);
  return {a.x + t * d.x, a.y + t * d.y};
}

PlaneCurve::PlaneCurve(Shape shape, std::vector<Point2> vertices)
    : shape_(shape), v_(std::move(vertices)) {
  const int m = static_cast<int>(v_.size());
  if (shape_ == Shape::Long && m < 2) throw ValidationError("long curve needs at least 2 vertices");
  if (shape_ == Shape::Closed && m < 3) throw ValidationError("closed curve needs at least 3 vertices");
  std::map<Rational, int> ys;
  for (int i = 0; i < m; ++i) {
    auto [it, fresh] = ys.emplace(v_[i].y, i);
    if (!fresh)
      throw ValidationError("coincident y-values at vertices " + std::to_string(it->second) + " and " +
                            std::to_string(i) + " (y = " + fmt(v_[i].y) + ")");
  }
  if (shape_ == Shape::Long) {
    if (ys.begin()->second != 0) throw ValidationError("long curve: first vertex must be strictly lowest");
    if (ys.rbegin()->second != m - 1)
      throw ValidationError("long curve: last vertex must be strictly highest");
  }
  find_crossings();
  check_generic();
}

void PlaneCurve::find_crossings() {
  const int S = segments();
  auto adjacent = [&](int i, int j) {
    return j == i + 1 || (shape_ == Shape::Closed && i == 0 && j == S - 1);
  };
  for (int i = 0; i < S; ++i)
    for (int j = i + 1; j < S; ++j) {
      const Point2 p = v_[i], d = direction(i);
      const Point2 q = v_[j], e = direction(j);
      const Rational den = cross(d, e);
      if (adjacent(i, j)) {
        if (den == 0) {
          // Shared vertex; collinear with opposite directions means the curve folds back.
          const Point2 a = j == i + 1 ? d : e;
          const Point2 b = j == i + 1 ? e : d;
          if (a.x * b.x + a.y * b.y < 0)
            throw ValidationError("non-transversal: curve folds back at a vertex near " + fmt(q));
        }
        continue;
      }
      const Point2 qp = sub(q, p);
      if (den == 0) {
        if (cross(qp, d) != 0) continue;
        // Collinear: overlap check along d.
        const Rational dd = d.x * d.x + d.y * d.y;
        Rational a0 = (qp.x * d.x + qp.y * d.y) / dd;
        Rational a1 = ((qp.x + e.x) * d.x + (qp.y + e.y) * d.y) / dd;
        if (a0 > a1) std::swap(a0, a1);
        if (a1 >= 0 && a0 <= 1)
          throw ValidationError("non-transversal: collinear overlapping segments " +
                                std::to_string(i) + " and " + std::to_string(j));
        continue;
      }
      const Rational s = cross(qp, e) / den;
      const Rational t = cross(qp, d) / den;
      if (s < 0 || s > 1 || t < 0 || t > 1) continue;
      if (s == 0 || s == 1 || t == 0 || t == 1)
        throw ValidationError("non-transversal: double point at a vertex near " +
                              fmt(Point2{p.x + s * d.x, p.y + s * d.y}));
      Crossing c;
      c.first = Rational(i) + s;
      c.second = Rational(j) + t;
      c.at = {p.x + s * d.x, p.y + s * d.y};
      c.epsilon = sign_of(den);
      c.first_over = true;
      c.sign = c.epsilon;
      x_.push_back(c);
    }
  std::sort(x_.begin(), x_.end(), [](const Crossing& a, const Crossing& b) { return a.first < b.first; });
}

void PlaneCurve::check_generic() const {
  const int m = static_cast<int>(v_.size());
  std::map<Rational, std::string> levels;
  auto claim = [&](const Rational& y, const std::string& what) {
    auto [it, fresh] = levels.emplace(y, what);
    if (!fresh)
      throw ValidationError("two critical points on one level y = " + fmt(y) + ": " + it->second +
                            " and " + what);
  };
  for (std::size_t a = 0; a < x_.size(); ++a)
    for (std::size_t b = a + 1; b < x_.size(); ++b)
      if (same(x_[a].at, x_[b].at)) throw ValidationError("triple point at " + fmt(x_[a].at));
  const int lo = shape_ == Shape::Long ? 1 : 0;
  const int hi = shape_ == Shape::Long ? m - 1 : m;
  for (int k = lo; k < hi; ++k) {
    const Rational& y = v_[k].y;
    const Rational& yp = v_[(k + m - 1) % m].y;
    const Rational& yn = v_[(k + 1) % m].y;
    if ((yp < y) == (yn < y)) claim(y, "extremum at vertex " + std::to_string(k));
  }
  for (const auto& c : x_) {
    auto it = levels.find(c.at.y);
    if (it != levels.end() && it->second.rfind("extremum", 0) == 0)
      throw ValidationError("double point at critical level of " + it->second);
    claim(c.at.y, "double point at " + fmt(c.at));
  }
}

PlaneCurve PlaneCurve::resolved(const std::vector<bool>& first_over) const {
  if (first_over.size() != x_.size()) throw ValidationError("resolution size mismatch");
  PlaneCurve c = *this;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    c.x_[i].first_over = first_over[i];
    c.x_[i].sign = first_over[i] ? x_[i].epsilon : -x_[i].epsilon;
  }
  return c;
}

PlaneCurve PlaneCurve::ascending() const {
  return resolved(std::vector<bool>(x_.size(), false));
}

PlaneCurve PlaneCurve::descending() const {
  return resolved(std::vector<bool>(x_.size(), true));
}

std::vector<bool> PlaneCurve::resolution() const {
  std::vector<bool> r;
  for (const auto& c : x_) r.push_back(c.first_over);
  return r;
}

BasedGaussDiagram PlaneCurve::gauss() const {
  std::vector<std::pair<Rational, Endpoint>> pts;
  std::vector<int> signs;
  for (int c = 0; c < static_cast<int>(x_.size()); ++c) {
    const auto& x = x_[c];
    pts.push_back({x.first, {c, x.first_over ? End::Tail : End::Head}});
    pts.push_back({x.second, {c, x.first_over ? End::Head : End::Tail}});
    signs.push_back(x.sign);
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Endpoint> seq;
  for (const auto& p : pts) seq.push_back(p.second);
  return BasedGaussDiagram(std::move(seq), std::move(signs), shape_, "plane curve");
}

std::vector<Point2> PlaneCurve::chain(std::optional<Rational> from, std::optional<Rational> to) const {
  const int m = static_cast<int>(v_.size());
  std::vector<Point2> out;
  Rational a = from ? *from : Rational(0);
  Rational b = to ? *to : Rational(segments());
  if (shape_ == Shape::Closed && b <= a) b += m;
  out.push_back(at(from ? *from : Rational(0)));
  for (Rational k = floor_of(a) + 1; k < b; k += 1) {
    const int idx = static_cast<int>(k.get_num().get_si()) % m;
    out.push_back(v_[idx]);
  }
  const Rational end = b >= m && shape_ == Shape::Closed ? b - m : b;
  out.push_back(at(end));
  return out;
}

std::string PlaneCurve::svg() const {
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  for (const auto& p : v_) {
    minx = std::min(minx, p.x.get_d());
    maxx = std::max(maxx, p.x.get_d());
    miny = std::min(miny, p.y.get_d());
    maxy = std::max(maxy, p.y.get_d());
  }
  const double w = std::max(maxx - minx, 1e-9), h = std::max(maxy - miny, 1e-9);
  const double scale = 400.0 / std::max(w, h);
  auto X = [&](const Rational& x) { return 20 + (x.get_d() - minx) * scale; };
  auto Y = [&](const Rational& y) { return 20 + (maxy - y.get_d()) * scale; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * scale + 40 << "\" height=\""
      << h * scale + 40 << "\">\n<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (const auto& p : v_) out << X(p.x) << ',' << Y(p.y) << ' ';
  if (shape_ == Shape::Closed) out << X(v_[0].x) << ',' << Y(v_[0].y);
  out << "\"/>\n";
  for (const auto& c : x_)
    out << "<circle cx=\"" << X(c.at.x) << "\" cy=\"" << Y(c.at.y) << "\" r=\"3\" fill=\""
        << (c.sign > 0 ? "red" : "blue") << "\"/>\n";
  out << "</svg>\n";
  return out.str();
}

PlaneCurve project(const PolyKnot& k) {
  std::vector<Point2> pts;
  for (const auto& p : k.vertices) pts.push_back({p.x, p.y});
  PlaneCurve c(k.shape, pts);
  const int m = static_cast<int>(k.vertices.size());
  auto z_at = [&](const Rational& param) -> Rational {
    const Rational f = floor_of(param);
    const int s = static_cast<int>(f.get_num().get_si());
    const Rational t = param - f;
    const Rational& z0 = k.vertices[s].z;
    const Rational& z1 = k.vertices[(s + 1) % m].z;
    return z0 + t * (z1 - z0);
  };
  std::vector<bool> over;
  for (const auto& x : c.crossings()) {
    const Rational z1 = z_at(x.first), z2 = z_at(x.second);
    if (z1 == z2) throw ValidationError("knot is not embedded: strands meet at " + fmt(x.at));
    over.push_back(z1 > z2);
  }
  return c.resolved(over);
}

int point_index(const Point2& p, const std::vector<Point2>& polyline) {
  int idx = 0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Point2& a = polyline[i];
    const Point2& b = polyline[i + 1];
    if (a.y == b.y) continue;
    const bool up = b.y > a.y;
    const Rational& lo = up ? a.y : b.y;
    const Rational& hi = up ? b.y : a.y;
    if (!(lo <= p.y && p.y < hi)) continue;
    const Rational x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
    if (x > p.x) idx += up ? 1 : -1;
  }
  return idx;
}

MorseStats morse_stats(const PlaneCurve& c) {
  MorseStats st;
  const auto& v = c.vertices();
  const int m = static_cast<int>(v.size());
  const bool is_long = c.shape() == Shape::Long;

  for (const auto& x : c.crossings()) {
    const int s1 = static_cast<int>(floor_of(x.first).get_num().get_si());
    const int s2 = static_cast<int>(floor_of(x.second).get_num().get_si());
    const bool up1 = c.direction(s1).y > 0, up2 = c.direction(s2).y > 0;
    if (up1 == up2) {
      ++st.X;
      if ((up1 && x.epsilon > 0) || (!up1 && x.epsilon < 0))
        ++st.Xplus;
      else
        ++st.Xminus;
    }
    const int inner = point_index(x.at, c.chain(x.first, x.second));
    if (is_long) {
      const int outer = point_index(x.at, c.chain(std::nullopt, x.first)) +
                        point_index(x.at, c.chain(x.second, std::nullopt));
      st.I_int += x.epsilon * inner;
      st.I_out += x.epsilon * outer;
    } else {
      const int outer = point_index(x.at, c.chain(x.second, x.first));
      // The loop between the passages turns clockwise at the double point iff epsilon = +1.
      st.Q += x.epsilon > 0 ? inner - outer : outer - inner;
    }
  }

  std::vector<Point2> whole = v;
  if (!is_long) whole.push_back(v[0]);
  const int lo = is_long ? 1 : 0, hi = is_long ? m - 1 : m;
  for (int k = lo; k < hi; ++k) {
    const Point2& prev = v[(k + m - 1) % m];
    const Point2& next = v[(k + 1) % m];
    const bool is_max = prev.y < v[k].y && next.y < v[k].y;
    const bool is_min = prev.y > v[k].y && next.y > v[k].y;
    if (!is_max && !is_min) continue;
    if (is_max) ++st.M;
    const int eps = sign_of(cross(sub(v[k], prev), sub(next, v[k])));
    if (is_long) {
      const int before = point_index(v[k], c.chain(std::nullopt, Rational(k)));
      const int after = point_index(v[k], c.chain(Rational(k), std::nullopt));
      const bool in_from_right = (is_max && eps > 0) || (is_min && eps < 0);
      st.I_r += eps * (in_from_right ? before : after);
      st.I_l += eps * (in_from_right ? after : before);
    } else {
      st.E += eps * point_index(v[k], whole);
    }
  }
  return st;
}

LongFormulas long_formulas(const PlaneCurve& c) {
  if (c.shape() != Shape::Long) throw ValidationError("long-curve formulas need a long curve");
  const auto st = morse_stats(c);
  const long long b = bracket(patterns::xsame(), c.gauss());
  LongFormulas f;
  f.f1x4 = 2 * b - (st.I_out + st.I_r) + st.X - st.M;
  f.f2x4 = 2 * b + 2 * st.I_int + 2 * st.Xplus;
  f.f3x4 = 2 * b - (st.I_out + st.I_l) + 2 * st.Xminus;
  return f;
}

long long v2_morse(const PlaneCurve& c) {
  const auto f = long_formulas(c);
  if (f.f1x4 % 4 != 0 || f.f2x4 % 4 != 0 || f.f3x4 % 4 != 0)
    throw InconsistencyError("Morse formula not integral: 4v2 = " + std::to_string(f.f1x4) + ", " +
                             std::to_string(f.f2x4) + ", " + std::to_string(f.f3x4));
  if (f.f1x4 != f.f2x4 || f.f2x4 != f.f3x4)
    throw InconsistencyError("Morse formulas disagree: 4v2 = " + std::to_string(f.f1x4) + ", " +
                             std::to_string(f.f2x4) + ", " + std::to_string(f.f3x4));
  return f.f1x4 / 4;
}

long long closed_formula_x24(const PlaneCurve& c, int q_weight24) {
  if (c.shape() != Shape::Closed) throw ValidationError("closed-curve formula needs a closed curve");
  const auto st = morse_stats(c);
  const long long all = bracket(patterns::xall(), c.gauss());
  return 6 * all - st.E + q_weight24 * st.Q + 3 * st.X - st.M + 1;
}

long long v2_morse_closed(const PlaneCurve& c) {
  const long long x24 = closed_formula_x24(c, kQWeight24);
  if (x24 % 24 != 0)
    throw InconsistencyError("closed Morse formula not integral: 24v2 = " + std::to_string(x24));
  return x24 / 24;
}

long long arnold_I(const PlaneCurve& c) {
  const auto g = c.ascending().gauss();
  return -(2 * bracket(patterns::xup(), g) + 2 * bracket(patterns::xsame(), g));
}

long long arnold_I_descending(const PlaneCurve& c) {
  const auto g = c.descending().gauss();
  return -(2 * bracket(patterns::xdown(), g) + 2 * bracket(patterns::xsame(), g));
}

namespace {

struct Frame {
  Rational min_x, y_bot, y_top;
};

Frame frame(const PlaneCurve& c) {
  Frame f{c.vertices()[0].x, c.vertices().front().y, c.vertices().back().y};
  for (const auto& p : c.vertices()) f.min_x = std::min(f.min_x, p.x);
  return f;
}

PlaneCurve carry_resolution(const PlaneCurve& from, const PlaneCurve& to) {
  std::vector<bool> over;
  for (const auto& x : to.crossings()) {
    bool found = false;
    for (const auto& y : from.crossings())
      if (same(x.at, y.at)) {
        over.push_back(y.first_over);
        found = true;
        break;
      }
    if (!found) throw InconsistencyError("closing path introduced a new crossing");
  }
  return to.resolved(over);
}

}  // namespace

PlaneCurve close_left(const PlaneCurve& c) {
  if (c.shape() != Shape::Long) throw ValidationError("close_left needs a long curve");
  const Frame f = frame(c);
  const Rational xl = f.min_x - 2;
  auto pts = c.vertices();
  pts.push_back({xl, f.y_top + 1});
  pts.push_back({xl - 1, f.y_bot - 1});
  return carry_resolution(c, PlaneCurve(Shape::Closed, pts));
}

PlaneCurve cut_left(const PlaneCurve& c) {
  if (c.shape() != Shape::Long) throw ValidationError("cut_left needs a long curve");
  const Frame f = frame(c);
  const Rational xl = f.min_x - 2;
  for (int k = 1; k < 100; ++k) {
    const Rational mid = (f.y_top + f.y_bot) / 2 + frac(k, 7919);
    std::vector<Point2> pts{{xl - 3, f.y_bot - 5}, {xl - 2, mid - frac(1, 3)}, {xl - 1, f.y_bot - 1}};
    for (const auto& p : c.vertices()) pts.push_back(p);
    pts.push_back({xl, f.y_top + 1});
    pts.push_back({xl - frac(5, 2), mid + frac(1, 3)});
    pts.push_back({xl - frac(7, 2), f.y_top + 5});
    try {
      return carry_resolution(c, PlaneCurve(Shape::Long, pts));
    } catch (const ValidationError&) {
    }
  }
  throw ValidationError("cut_left: no generic cut level found");
}

PolyKnot random_polyknot(std::uint64_t seed, int interior_vertices, Shape shape) {
  std::mt19937_64 rng(seed);
  auto coord = [&](int lo, int hi) {
    std::uniform_int_distribution<int> d(lo * 1009, hi * 1009);
    return frac(d(rng), 1009);
  };
  for (int attempt = 0;; ++attempt) {
    PolyKnot k;
    k.shape = shape;
    if (shape == Shape::Long) k.vertices.push_back({coord(-1, 1), Rational(-2), coord(-1, 1)});
    for (int i = 0; i < interior_vertices; ++i)
      k.vertices.push_back({coord(-1, 1), coord(-1, 1), coord(-1, 1)});
    if (shape == Shape::Long) k.vertices.push_back({coord(-1, 1), Rational(2), coord(-1, 1)});
    try {
      project(k);
      return k;
    } catch (const ValidationError&) {
      if (attempt > 1000) throw;
    }
  }
}

PolyKnot mirror(const PolyKnot& k) {
  PolyKnot m = k;
  for (auto& p : m.vertices) p.z = -p.z;
  return m;
}

PolyKnot polyknot_from_braid(const std::vector<int>& letters, Shape shape) {
  const int k = braid_strands(letters);
  if (!braid_closure_is_knot(letters, k)) throw ValidationError("braid closure has more than one component");
  const int L = static_cast<int>(letters.size());
  const Rational tenth = frac(1, 10), nine_tenths = frac(9, 10);
  std::vector<Point3> pts;
  auto emit = [&](Rational x, Rational y, Rational z) { pts.push_back({x, y, z}); };
  const int K = k + 2;
  int p = 1;
  if (shape == Shape::Long) emit(1, -K, 0);
  while (true) {
    emit(p, 0, 0);
    for (int j = 0; j < L; ++j) {
      const int i = std::abs(letters[j]);
      if (p != i && p != i + 1) continue;
      const bool left = p == i;
      const bool over = left == (letters[j] > 0);
      const int q = left ? i + 1 : i;
      const Rational z = over ? 1 : -1;
      emit(p, Rational(j) + tenth, z);
      emit(q, Rational(j) + nine_tenths, z);
      emit(q, j + 1, 0);
      p = q;
    }
    if (!(pts.back().x == p && pts.back().y == L)) emit(p, L, 0);
    if (shape == Shape::Long && p == 1) {
      emit(1, L + K, 0);
      break;
    }
    // Closure arcs nest: the strand at position p returns at x = k + r.
    const int r = k - p + 1;
    emit(k + r, L + r, 0);
    emit(k + r, -r, 0);
    if (p == 1) break;
  }
  // Separate all vertex heights by a small amount, keeping the order along each strand.
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) pts[i].y += frac(i, 20L * n);
  PolyKnot out{shape, pts};
  return out;
}

namespace {

Rational parse_rational(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_number_float()) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    return parse_rational(nlohmann::json(std::string(buf, res.ptr)));
  }
  if (!j.is_string()) throw ParseError("coordinate must be a number or a rational string");
  std::string s = j.get<std::string>();
  try {
    auto dot = s.find('.');
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      const int ex = std::stoi(s.substr(e + 1));
      Rational base = parse_rational(nlohmann::json(s.substr(0, e)));
      mpz_class pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(ex)));
      return ex >= 0 ? Rational(base * pw) : Rational(base / pw);
    }
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const std::size_t frac = s.size() - dot - 1;
      mpz_class num(digits.empty() || digits == "-" ? std::string("0") : digits, 10), den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    Rational q(s, 10);
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational '" + s + "'");
  }
}

}  // namespace

PolyKnot parse_polyknot_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("polyknot JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices")) throw ParseError("polyknot JSON needs a vertices array");
  PolyKnot k;
  const std::string shape = j.value("shape", "long");
  if (shape == "long")
    k.shape = Shape::Long;
  else if (shape == "closed")
    k.shape = Shape::Closed;
  else
    throw ParseError("polyknot shape must be long or closed");
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 3) throw ParseError("each vertex needs three coordinates");
    k.vertices.push_back({parse_rational(v[0]), parse_rational(v[1]), parse_rational(v[2])});
  }
  return k;
}

std::string polyknot_json(const PolyKnot& k) {
  nlohmann::json j;
  j["shape"] = k.shape == Shape::Long ? "long" : "closed";
  j["vertices"] = nlohmann::json::array();
  for (const auto& p : k.vertices) j["vertices"].push_back({fmt(p.x), fmt(p.y), fmt(p.z)});
  return j.dump();
}

}  // namespace casson::morse
