#include "casson/moves.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>

#include "casson/errors.hpp"

namespace casson {

namespace {

int ray(int arc, bool at_end) { return 2 * arc + (at_end ? 1 : 0); }

struct Rotation {
  std::vector<std::array<int, 4>> around;  // per chord, counterclockwise
  std::vector<std::pair<int, int>> where;  // ray -> (chord, slot)
};

Rotation rotations(const BasedGaussDiagram& g) {
  const int m = 2 * g.size();
  Rotation rot;
  rot.around.resize(g.size());
  rot.where.assign(2 * m, {-1, -1});
  for (int c = 0; c < g.size(); ++c) {
    const Chord& x = g.chord(c);
    const int out_o = ray(x.tail, false), in_o = ray((x.tail + m - 1) % m, true);
    const int out_u = ray(x.head, false), in_u = ray((x.head + m - 1) % m, true);
    rot.around[c] = x.sign > 0 ? std::array<int, 4>{out_o, out_u, in_o, in_u}
                               : std::array<int, 4>{out_o, in_u, in_o, out_u};
    for (int k = 0; k < 4; ++k) rot.where[rot.around[c][k]] = {c, k};
  }
  return rot;
}

std::vector<int> labels_of(const BasedGaussDiagram& g) {
  std::vector<int> l;
  for (const auto& c : g.chords()) l.push_back(c.label);
  return l;
}

std::vector<int> signs_of(const BasedGaussDiagram& g) {
  std::vector<int> s;
  for (const auto& c : g.chords()) s.push_back(c.sign);
  return s;
}

int fresh_label(const std::vector<int>& labels) {
  int m = 0;
  for (int l : labels) m = std::max(m, l);
  return m + 1;
}

BasedGaussDiagram rebuild(const BasedGaussDiagram& g, std::vector<Endpoint> seq,
                          std::vector<int> signs, std::vector<int> labels) {
  return BasedGaussDiagram(std::move(seq), std::move(signs), g.shape(), g.provenance(),
                           std::move(labels));
}

// Drops the given chords and renumbers the rest.
BasedGaussDiagram remove_chords(const BasedGaussDiagram& g, std::set<int> drop) {
  std::vector<int> remap(g.size(), -1), signs, labels;
  for (int c = 0; c < g.size(); ++c) {
    if (drop.count(c)) continue;
    remap[c] = static_cast<int>(signs.size());
    signs.push_back(g.chord(c).sign);
    labels.push_back(g.chord(c).label);
  }
  std::vector<Endpoint> seq;
  for (const auto& e : g.sequence())
    if (remap[e.chord] >= 0) seq.push_back({remap[e.chord], e.end});
  return rebuild(g, std::move(seq), std::move(signs), std::move(labels));
}

}  // namespace

FaceMap trace_faces(const BasedGaussDiagram& g) {
  FaceMap fm;
  const int m = 2 * g.size();
  if (m == 0) {
    fm.faces = {{0}, {1}};
    fm.face_of = {0, 1};
    return fm;
  }
  const Rotation rot = rotations(g);
  auto next_dart = [&](int dart) {
    const int arc = dart / 2;
    const bool forward = dart % 2 == 0;
    const int arriving = forward ? ray(arc, true) : ray(arc, false);
    const auto [c, k] = rot.where[arriving];
    const int leaving = rot.around[c][(k + 3) % 4];
    return leaving % 2 == 0 ? 2 * (leaving / 2) : 2 * (leaving / 2) + 1;
  };
  fm.face_of.assign(2 * m, -1);
  for (int d = 0; d < 2 * m; ++d) {
    if (fm.face_of[d] != -1) continue;
    std::vector<int> face;
    int x = d;
    while (fm.face_of[x] == -1) {
      fm.face_of[x] = static_cast<int>(fm.faces.size());
      face.push_back(x);
      x = next_dart(x);
    }
    fm.faces.push_back(std::move(face));
  }
  return fm;
}

bool is_realizable(const BasedGaussDiagram& g) {
  if (g.empty()) return true;
  return static_cast<int>(trace_faces(g).faces.size()) == g.size() + 2;
}

std::string describe(const MoveSite& s) {
  switch (s.kind) {
    case MoveKind::R1Add:
      return "R1+ after " + std::to_string(s.a) + (s.flag ? " tail-first " : " head-first ") +
             (s.sign > 0 ? "+" : "-");
    case MoveKind::R1Remove: return "R1- chord " + std::to_string(s.a);
    case MoveKind::R2Add:
      return "R2+ darts " + std::to_string(s.a) + "," + std::to_string(s.b) +
             (s.flag ? " first over" : " second over");
    case MoveKind::R2Remove: return "R2- chords " + std::to_string(s.a) + "," + std::to_string(s.b);
    case MoveKind::R3: return "R3 dart " + std::to_string(s.a);
    case MoveKind::BasePoint: return s.flag ? "base forward" : "base backward";
  }
  return "?";
}

namespace {

BasedGaussDiagram apply_r1_add(const BasedGaussDiagram& g, const MoveSite& s) {
  const int m = 2 * g.size();
  if (s.a < -1 || s.a >= std::max(m, 0) || (m == 0 && s.a != -1))
    throw ValidationError("R1 insertion rank out of range");
  if (s.sign != 1 && s.sign != -1) throw ValidationError("R1 insertion sign must be +1 or -1");
  auto seq = g.sequence();
  auto signs = signs_of(g);
  auto labels = labels_of(g);
  const int c = g.size();
  signs.push_back(s.sign);
  labels.push_back(fresh_label(labels));
  const Endpoint first{c, s.flag ? End::Tail : End::Head};
  const Endpoint second{c, s.flag ? End::Head : End::Tail};
  seq.insert(seq.begin() + (s.a + 1), {first, second});
  return rebuild(g, std::move(seq), std::move(signs), std::move(labels));
}

BasedGaussDiagram apply_r1_remove(const BasedGaussDiagram& g, const MoveSite& s) {
  if (s.a < 0 || s.a >= g.size()) throw ValidationError("R1 removal: unknown chord");
  const Chord& x = g.chord(s.a);
  const int m = 2 * g.size();
  const int gap = std::abs(x.tail - x.head);
  if (gap != 1 && gap != m - 1) throw ValidationError("R1 removal: chord endpoints not adjacent");
  return remove_chords(g, {s.a});
}

BasedGaussDiagram apply_r2_add(const BasedGaussDiagram& g, const MoveSite& s) {
  const int m = 2 * g.size();
  if (m == 0) throw ValidationError("R2 insertion needs at least one crossing");
  if (s.a < 0 || s.b < 0 || s.a >= 2 * m || s.b >= 2 * m)
    throw ValidationError("R2 insertion: dart out of range");
  const FaceMap fm = trace_faces(g);
  if (fm.face_of[s.a] != fm.face_of[s.b]) throw ValidationError("R2 insertion: darts on different faces");
  const int arc_a = s.a / 2, arc_b = s.b / 2;
  if (arc_a == arc_b) throw ValidationError("R2 insertion: darts on the same arc");
  const int da = s.a % 2 == 0 ? 1 : -1, db = s.b % 2 == 0 ? 1 : -1;
  const int left_sign = da * db * (s.flag ? 1 : -1);

  auto seq = g.sequence();
  auto signs = signs_of(g);
  auto labels = labels_of(g);
  const int cl = g.size(), cr = g.size() + 1;
  signs.push_back(left_sign);
  signs.push_back(-left_sign);
  const int l0 = fresh_label(labels);
  labels.push_back(l0);
  labels.push_back(l0 + 1);
  const End on_a = s.flag ? End::Tail : End::Head;
  const End on_b = s.flag ? End::Head : End::Tail;
  std::vector<Endpoint> ins_a = da > 0 ? std::vector<Endpoint>{{cl, on_a}, {cr, on_a}}
                                       : std::vector<Endpoint>{{cr, on_a}, {cl, on_a}};
  std::vector<Endpoint> ins_b = db > 0 ? std::vector<Endpoint>{{cr, on_b}, {cl, on_b}}
                                       : std::vector<Endpoint>{{cl, on_b}, {cr, on_b}};
  if (arc_a > arc_b) {
    seq.insert(seq.begin() + arc_a + 1, ins_a.begin(), ins_a.end());
    seq.insert(seq.begin() + arc_b + 1, ins_b.begin(), ins_b.end());
  } else {
    seq.insert(seq.begin() + arc_b + 1, ins_b.begin(), ins_b.end());
    seq.insert(seq.begin() + arc_a + 1, ins_a.begin(), ins_a.end());
  }
  return rebuild(g, std::move(seq), std::move(signs), std::move(labels));
}

bool is_bigon(const BasedGaussDiagram& g, int c1, int c2) {
  if (c1 == c2 || c1 < 0 || c2 < 0 || c1 >= g.size() || c2 >= g.size()) return false;
  const int m = 2 * g.size();
  // Two arcs joining c1 and c2, one over at both ends, one under at both.
  int over_arcs = 0, under_arcs = 0;
  for (int r = 0; r < m; ++r) {
    const Endpoint& p = g.at(r);
    const Endpoint& q = g.at((r + 1) % m);
    const bool joins = (p.chord == c1 && q.chord == c2) || (p.chord == c2 && q.chord == c1);
    if (!joins || p.end != q.end) continue;
    ++(p.end == End::Tail ? over_arcs : under_arcs);
  }
  if (over_arcs != 1 || under_arcs != 1) return false;
  if (g.chord(c1).sign == g.chord(c2).sign) return false;
  // The two arcs must bound a common face.
  const FaceMap fm = trace_faces(g);
  for (const auto& f : fm.faces) {
    if (f.size() != 2) continue;
    std::set<int> chords;
    for (int d : f) {
      chords.insert(g.at(d / 2).chord);
      chords.insert(g.at((d / 2 + 1) % m).chord);
    }
    if (chords == std::set<int>{c1, c2}) return true;
  }
  return false;
}

BasedGaussDiagram apply_r2_remove(const BasedGaussDiagram& g, const MoveSite& s) {
  if (!is_bigon(g, s.a, s.b)) throw ValidationError("R2 removal: chords do not bound a bigon");
  return remove_chords(g, {s.a, s.b});
}

// Triangle arcs if the face at `dart` is an admissible R3 triangle.
std::vector<int> r3_arcs(const BasedGaussDiagram& g, const FaceMap& fm, int dart) {
  const int m = 2 * g.size();
  if (dart < 0 || dart >= 2 * m) return {};
  const auto& f = fm.faces[fm.face_of[dart]];
  if (f.size() != 3) return {};
  std::set<int> chords;
  int tops = 0, bottoms = 0;
  std::vector<int> arcs;
  for (int d : f) {
    const int r = d / 2;
    const Endpoint& p = g.at(r);
    const Endpoint& q = g.at((r + 1) % m);
    if (p.chord == q.chord) return {};
    chords.insert(p.chord);
    chords.insert(q.chord);
    if (p.end == End::Tail && q.end == End::Tail) ++tops;
    if (p.end == End::Head && q.end == End::Head) ++bottoms;
    arcs.push_back(r);
  }
  if (chords.size() != 3 || tops != 1 || bottoms != 1) return {};
  std::sort(arcs.begin(), arcs.end());
  if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end()) return {};
  return arcs;
}

BasedGaussDiagram apply_r3(const BasedGaussDiagram& g, const MoveSite& s) {
  const FaceMap fm = trace_faces(g);
  const auto arcs = r3_arcs(g, fm, s.a);
  if (arcs.empty()) throw ValidationError("R3: dart does not bound an admissible triangle");
  const int m = 2 * g.size();
  auto seq = g.sequence();
  for (int r : arcs) std::swap(seq[r], seq[(r + 1) % m]);
  return rebuild(g, std::move(seq), signs_of(g), labels_of(g));
}

BasedGaussDiagram apply_base(const BasedGaussDiagram& g, const MoveSite& s) {
  auto seq = g.sequence();
  if (!seq.empty()) {
    if (s.flag)
      std::rotate(seq.begin(), seq.begin() + 1, seq.end());
    else
      std::rotate(seq.rbegin(), seq.rbegin() + 1, seq.rend());
  }
  return rebuild(g, std::move(seq), signs_of(g), labels_of(g));
}

}  // namespace

BasedGaussDiagram apply(const BasedGaussDiagram& g, const MoveSite& s) {
  switch (s.kind) {
    case MoveKind::R1Add: return apply_r1_add(g, s);
    case MoveKind::R1Remove: return apply_r1_remove(g, s);
    case MoveKind::R2Add: return apply_r2_add(g, s);
    case MoveKind::R2Remove: return apply_r2_remove(g, s);
    case MoveKind::R3: return apply_r3(g, s);
    case MoveKind::BasePoint: return apply_base(g, s);
  }
  throw ValidationError("unknown move kind");
}

std::vector<MoveSite> reducing_sites(const BasedGaussDiagram& g) {
  std::vector<MoveSite> out;
  const int m = 2 * g.size();
  for (int c = 0; c < g.size(); ++c) {
    const int gap = std::abs(g.chord(c).tail - g.chord(c).head);
    if (gap == 1 || gap == m - 1) out.push_back({MoveKind::R1Remove, c});
  }
  if (m == 0) return out;
  const FaceMap fm = trace_faces(g);
  std::set<std::pair<int, int>> bigons;
  for (const auto& f : fm.faces) {
    if (f.size() == 2) {
      std::set<int> chords;
      for (int d : f) {
        chords.insert(g.at(d / 2).chord);
        chords.insert(g.at((d / 2 + 1) % m).chord);
      }
      if (chords.size() == 2) {
        const int a = *chords.begin(), b = *chords.rbegin();
        if (is_bigon(g, a, b) && bigons.insert({a, b}).second)
          out.push_back({MoveKind::R2Remove, a, b});
      }
    }
    if (f.size() == 3 && !r3_arcs(g, fm, f.front()).empty())
      out.push_back({MoveKind::R3, f.front()});
  }
  out.push_back({MoveKind::BasePoint, 0, 0, true});
  out.push_back({MoveKind::BasePoint, 0, 0, false});
  return out;
}

namespace {

MoveSite random_r1_add(const BasedGaussDiagram& g, std::mt19937_64& rng) {
  const int m = 2 * g.size();
  std::uniform_int_distribution<int> where(-1, std::max(m - 1, -1));
  MoveSite s{MoveKind::R1Add};
  s.a = m == 0 ? -1 : where(rng);
  s.flag = rng() & 1;
  s.sign = (rng() & 1) ? 1 : -1;
  return s;
}

std::optional<MoveSite> random_r2_add(const BasedGaussDiagram& g, std::mt19937_64& rng) {
  if (g.empty()) return std::nullopt;
  const FaceMap fm = trace_faces(g);
  std::vector<int> usable;
  for (int f = 0; f < static_cast<int>(fm.faces.size()); ++f) {
    std::set<int> arcs;
    for (int d : fm.faces[f]) arcs.insert(d / 2);
    if (arcs.size() >= 2) usable.push_back(f);
  }
  if (usable.empty()) return std::nullopt;
  const auto& face = fm.faces[usable[rng() % usable.size()]];
  while (true) {
    const int a = face[rng() % face.size()];
    const int b = face[rng() % face.size()];
    if (a / 2 == b / 2) continue;
    return MoveSite{MoveKind::R2Add, a, b, static_cast<bool>(rng() & 1)};
  }
}

}  // namespace

MoveSite random_move(const BasedGaussDiagram& g, std::mt19937_64& rng) {
  const auto sites = reducing_sites(g);
  std::vector<MoveSite> r1_rm, r2_rm, r3, base;
  for (const auto& s : sites) {
    if (s.kind == MoveKind::BasePoint) base.push_back(s);
    if (s.kind == MoveKind::R1Remove) r1_rm.push_back(s);
    if (s.kind == MoveKind::R2Remove) r2_rm.push_back(s);
    if (s.kind == MoveKind::R3) r3.push_back(s);
  }
  auto pick = [&](const std::vector<MoveSite>& v) { return v[rng() % v.size()]; };
  const bool too_big = g.size() > 40;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const int roll = static_cast<int>(rng() % 11);
    if (roll < 4 && !too_big) {
      if (auto s = random_r2_add(g, rng)) return *s;
    } else if (roll < 6) {
      if (!r2_rm.empty()) return pick(r2_rm);
    } else if (roll < 8) {
      const bool add = !too_big && (r1_rm.empty() || (rng() & 1));
      if (add) return random_r1_add(g, rng);
      if (!r1_rm.empty()) return pick(r1_rm);
    } else if (roll < 10) {
      if (!r3.empty()) return pick(r3);
    } else if (!g.empty()) {
      return pick(base);
    }
  }
  if (!r1_rm.empty()) return pick(r1_rm);
  if (!r2_rm.empty()) return pick(r2_rm);
  return random_r1_add(g, rng);
}

std::vector<int> random_knot_braid(std::mt19937_64& rng, int n_letters) {
  if (n_letters <= 0) return {};
  const int max_k = std::min(5, n_letters + 1);
  while (true) {
    const int k = 2 + static_cast<int>(rng() % (max_k - 1));
    std::vector<int> w(n_letters);
    for (auto& l : w) {
      const int i = 1 + static_cast<int>(rng() % (k - 1));
      l = (rng() & 1) ? i : -i;
    }
    if (braid_strands(w) == k && braid_closure_is_knot(w, k)) return w;
  }
}

BasedGaussDiagram random_realizable(std::uint64_t seed, int n_letters, int n_moves) {
  std::mt19937_64 rng(seed);
  const auto w = random_knot_braid(rng, n_letters);
  BasedGaussDiagram g = from_braid_word(braid_word_string(w));
  for (int i = 0; i < n_moves; ++i) g = apply(g, random_move(g, rng));
  return g;
}

}  // namespace casson
