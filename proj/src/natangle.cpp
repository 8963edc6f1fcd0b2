#include "casson/natangle.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <random>
#include <set>
#include <sstream>

#include "casson/casson.hpp"
#include "casson/errors.hpp"
#include "casson/pairing.hpp"

namespace casson::natangle {

namespace {

constexpr int kEntry = -1;
constexpr int kExit = -2;

std::string at_line(int line) { return line > 0 ? " (line " + std::to_string(line) + ")" : ""; }

// A bracketing of n leaves as the laminar family of leaf intervals of its nodes.
class Bracketing {
 public:
  int n = 0;
  std::set<std::pair<int, int>> spans;

  static Bracketing single() {
    Bracketing b;
    b.n = 1;
    b.spans.insert({1, 1});
    return b;
  }

  bool has(int a, int b) const { return spans.count({a, b}) != 0; }
  bool cherry(int i) const { return has(i, i + 1); }

  // Ancestors-or-self of leaf `leaf` sharing its right (or left) end, nearest first.
  std::vector<std::pair<int, int>> flush_ancestors(int leaf, bool right_end) const {
    std::vector<std::pair<int, int>> out;
    for (const auto& s : spans)
      if ((right_end && s.second == leaf && s.first <= leaf) || (!right_end && s.first == leaf && s.second >= leaf))
        out.push_back(s);
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.second - x.first < y.second - y.first; });
    return out;
  }

  void insert_pair(int i, bool right, int level, int line) {
    if (n == 0) {
      n = 2;
      spans = {{1, 1}, {2, 2}, {1, 2}};
      return;
    }
    std::pair<int, int> anchor;
    if (!right) {
      if (i == 1) throw ValidationError("MIN at the left end has no left neighbour" + at_line(line));
      auto chain = flush_ancestors(i - 1, true);
      if (level >= static_cast<int>(chain.size()))
        throw ValidationError("MIN attachment level too high" + at_line(line));
      anchor = chain[level];
    } else {
      if (i == n + 1) throw ValidationError("MIN at the right end has no right neighbour" + at_line(line));
      auto chain = flush_ancestors(i, false);
      if (level >= static_cast<int>(chain.size()))
        throw ValidationError("MIN attachment level too high" + at_line(line));
      anchor = chain[level];
    }
    std::set<std::pair<int, int>> out;
    // The new pair replaces the anchor by (anchor, pair) or (pair, anchor), so every
    // ancestor of the anchor grows by two leaves.
    for (auto [a, b] : spans) {
      if (!right && b == i - 1 && a < anchor.first)
        out.insert({a, i + 1});
      else if (right && a == i && b > anchor.second)
        out.insert({i, b + 2});
      else if (b < i)
        out.insert({a, b});
      else if (a >= i)
        out.insert({a + 2, b + 2});
      else
        out.insert({a, b + 2});
    }
    out.insert({i, i});
    out.insert({i + 1, i + 1});
    out.insert({i, i + 1});
    if (!right)
      out.insert({anchor.first, i + 1});
    else
      out.insert({i, anchor.second + 2});
    spans = std::move(out);
    n += 2;
  }

  void remove_pair(int i) {
    std::set<std::pair<int, int>> out;
    for (auto [a, b] : spans) {
      if ((a == i || a == i + 1) && b <= i + 1) continue;
      if (b < i)
        out.insert({a, b});
      else if (a > i + 1)
        out.insert({a - 2, b - 2});
      else
        out.insert({a, b - 2});
    }
    spans = std::move(out);
    n -= 2;
  }

  // +1 for ((P Q) R), -1 for (P (Q R)), 0 if neither is a subtree.
  int shape(int s, const std::array<int, 3>& k) const {
    const int e = s + k[0] + k[1] + k[2] - 1;
    if (!has(s, s + k[0] - 1) || !has(s + k[0], s + k[0] + k[1] - 1) || !has(s + k[0] + k[1], e) || !has(s, e))
      return 0;
    if (has(s, s + k[0] + k[1] - 1)) return 1;
    if (has(s + k[0], e)) return -1;
    return 0;
  }

  void rotate(int s, const std::array<int, 3>& k) {
    const int e = s + k[0] + k[1] + k[2] - 1;
    if (has(s, s + k[0] + k[1] - 1)) {
      spans.erase({s, s + k[0] + k[1] - 1});
      spans.insert({s + k[0], e});
    } else {
      spans.erase({s + k[0], e});
      spans.insert({s, s + k[0] + k[1] - 1});
    }
  }

  int split(int a, int b) const {
    for (int k = a; k < b; ++k)
      if (has(a, k) && has(k + 1, b)) return k;
    throw InconsistencyError("bracketing lost a node");
  }
};

struct Piece {
  int bottom = kEntry;  // event index of the cup, or kEntry
  int top = kExit;      // event index of the cap, or kExit
  int bottom_partner = -1, top_partner = -1;
  bool up = true;
  std::vector<std::pair<int, int>> passages;  // (event, crossing)
};

struct CrossingRec {
  int over = -1, under = -1;
  int left = -1, right = -1;  // pieces entering from the lower left and lower right
  int sign = 0;
};

struct AssocRec {
  std::array<std::vector<int>, 3> groups;
  int type_sign = 1;
};

struct Analysis {
  std::vector<Piece> pieces;
  std::vector<CrossingRec> crossings;
  std::vector<AssocRec> assocs;
  std::vector<int> visit;
  std::vector<Endpoint> seq;
  int maxima = 0;
};

int sgn(long long v) { return (v > 0) - (v < 0); }

std::pair<int, int> branch_dir(bool from_left, bool up) {
  if (from_left) return up ? std::pair{1, 1} : std::pair{-1, -1};
  return up ? std::pair{-1, 1} : std::pair{1, -1};
}

int cross2(std::pair<int, int> a, std::pair<int, int> b) { return a.first * b.second - a.second * b.first; }

Analysis analyze(const TangleWord& t, int base_piece) {
  Analysis an;
  Bracketing br;
  std::vector<int> strands;
  if (t.shape == Shape::Long) {
    br = Bracketing::single();
    an.pieces.push_back(Piece{});
    strands.push_back(0);
  }
  for (int e = 0; e < static_cast<int>(t.events.size()); ++e) {
    const auto& ev = t.events[e];
    const int n = static_cast<int>(strands.size());
    const int i = ev.pos;
    const std::string where = at_line(ev.line);
    switch (ev.kind) {
      case EventKind::Min: {
        if (i < 1 || i > n + 1) throw ValidationError("MIN position out of range" + where);
        bool right = ev.attach_right;
        if (!ev.attach_given && i == 1) right = true;
        br.insert_pair(i, right, ev.attach_level, ev.line);
        const int a = static_cast<int>(an.pieces.size());
        Piece pa, pb;
        pa.bottom = pb.bottom = e;
        pa.up = ev.left_up;
        pb.up = !ev.left_up;
        pa.bottom_partner = a + 1;
        pb.bottom_partner = a;
        an.pieces.push_back(pa);
        an.pieces.push_back(pb);
        strands.insert(strands.begin() + (i - 1), {a, a + 1});
        break;
      }
      case EventKind::Max: {
        if (i < 1 || i + 1 > n) throw ValidationError("MAX position out of range" + where);
        if (!br.cherry(i)) throw ValidationError("MAX needs strands " + std::to_string(i) + "," + std::to_string(i + 1) + " bracketed together" + where);
        const int a = strands[i - 1], b = strands[i];
        if (an.pieces[a].up == an.pieces[b].up) throw ValidationError("MAX joins two strands with the same orientation" + where);
        if (an.pieces[a].up != ev.left_up) throw ValidationError("MAX orientation does not match the strands" + where);
        an.pieces[a].top = an.pieces[b].top = e;
        an.pieces[a].top_partner = b;
        an.pieces[b].top_partner = a;
        strands.erase(strands.begin() + (i - 1), strands.begin() + (i + 1));
        br.remove_pair(i);
        ++an.maxima;
        break;
      }
      case EventKind::Cross: {
        if (i < 1 || i + 1 > n) throw ValidationError("crossing position out of range" + where);
        if (!br.cherry(i)) throw ValidationError("crossing needs strands " + std::to_string(i) + "," + std::to_string(i + 1) + " bracketed together" + where);
        CrossingRec c;
        c.left = strands[i - 1];
        c.right = strands[i];
        c.over = ev.left_over ? c.left : c.right;
        c.under = ev.left_over ? c.right : c.left;
        const auto dl = branch_dir(true, an.pieces[c.left].up);
        const auto dr = branch_dir(false, an.pieces[c.right].up);
        c.sign = ev.left_over ? sgn(cross2(dl, dr)) : sgn(cross2(dr, dl));
        if (c.sign != ev.sign)
          throw ValidationError("crossing sign contradicts the over strand and orientations" + where);
        const int id = static_cast<int>(an.crossings.size());
        an.crossings.push_back(c);
        an.pieces[c.left].passages.push_back({e, id});
        an.pieces[c.right].passages.push_back({e, id});
        std::swap(strands[i - 1], strands[i]);
        break;
      }
      case EventKind::Assoc: {
        if (n < 3) throw ValidationError("associator needs at least three strands" + where);
        for (int k : ev.bunch)
          if (k < 1) throw ValidationError("associator group sizes must be positive" + where);
        const int total = ev.bunch[0] + ev.bunch[1] + ev.bunch[2];
        if (i < 1 || i + total - 1 > n) throw ValidationError("associator position out of range" + where);
        const int shape = br.shape(i, ev.bunch);
        if (shape == 0) throw ValidationError("associator groups are not bracketed as ((P Q) R) or (P (Q R))" + where);
        const bool opens_right = shape > 0;
        const AssocType type = opens_right == kLeftTypeOpensRight ? AssocType::Left : AssocType::Right;
        if (ev.type != AssocType::Infer && ev.type != type)
          throw ValidationError(std::string("bracketing makes this a ") + (type == AssocType::Left ? "left" : "right") +
                                "-type associator" + where);
        AssocRec rec;
        rec.type_sign = type == AssocType::Left ? 1 : -1;
        int p = i - 1;
        for (int g = 0; g < 3; ++g)
          for (int k = 0; k < ev.bunch[g]; ++k) rec.groups[g].push_back(strands[p++]);
        an.assocs.push_back(std::move(rec));
        br.rotate(i, ev.bunch);
        break;
      }
    }
  }
  if (t.shape == Shape::Long) {
    if (strands.size() != 1) throw ValidationError("long word must end with one strand, has " + std::to_string(strands.size()));
    if (!an.pieces[strands[0]].up) throw ValidationError("long word must leave upward at the top");
  } else if (!strands.empty()) {
    throw ValidationError("closed word must end with no strands, has " + std::to_string(strands.size()));
  }

  const int P = static_cast<int>(an.pieces.size());
  an.visit.assign(P, -1);
  if (P == 0) return an;
  int start = 0;
  if (t.shape == Shape::Closed) {
    if (base_piece < 0 || base_piece >= P) throw ValidationError("base piece out of range");
    start = base_piece;
  }
  int cur = start, order = 0;
  while (true) {
    Piece& pc = an.pieces[cur];
    an.visit[cur] = order++;
    auto pass = pc.passages;
    if (!pc.up) std::reverse(pass.begin(), pass.end());
    for (auto [ev, id] : pass)
      an.seq.push_back({id, an.crossings[id].over == cur ? End::Tail : End::Head});
    int next;
    if (pc.up) {
      if (pc.top == kExit) break;
      next = pc.top_partner;
    } else {
      if (pc.bottom == kEntry) throw ValidationError("strand runs down into the entry point");
      next = pc.bottom_partner;
    }
    if (an.pieces[next].up == pc.up) throw InconsistencyError("tangle trace lost orientation");
    if (next == start) break;
    if (an.visit[next] >= 0) throw InconsistencyError("tangle trace revisited a strand");
    cur = next;
  }
  if (order != P) throw ValidationError("word has more than one component");
  return an;
}

int perm_index(const std::array<int, 3>& s) {
  static const std::array<std::array<int, 3>, 6> table{{{1, 2, 3}, {2, 1, 3}, {3, 2, 1}, {1, 3, 2}, {2, 3, 1}, {3, 1, 2}}};
  for (int k = 0; k < 6; ++k)
    if (table[k] == s) return k;
  throw InconsistencyError("not a permutation of three");
}

int perm_sign(int p) { return p == Id || p == P123 || p == P132 ? 1 : -1; }

AssociatorStats stats_of(const Analysis& an, int assoc_sign) {
  AssociatorStats st;
  st.M = an.maxima;
  for (const auto& c : an.crossings) {
    const bool lu = an.pieces[c.left].up, ru = an.pieces[c.right].up;
    if (lu != ru) continue;
    ++st.X;
    const auto dl = branch_dir(true, lu), dr = branch_dir(false, ru);
    const bool left_first = an.visit[c.left] < an.visit[c.right];
    const int eps = left_first ? sgn(cross2(dl, dr)) : sgn(cross2(dr, dl));
    if ((lu && eps > 0) || (!lu && eps < 0))
      ++st.Xplus;
    else
      ++st.Xminus;
  }
  for (const auto& a : an.assocs) {
    ++st.associators;
    for (int x : a.groups[0])
      for (int y : a.groups[1])
        for (int z : a.groups[2]) {
          const std::array<int, 3> pcs{x, y, z};
          std::array<int, 3> sigma{};
          int q = 0;
          for (int k = 0; k < 3; ++k) {
            sigma[k] = 1;
            for (int m = 0; m < 3; ++m)
              if (an.visit[pcs[m]] < an.visit[pcs[k]]) ++sigma[k];
            if (an.pieces[pcs[k]].up) ++q;
          }
          const int p = perm_index(sigma);
          const int eps = assoc_sign * associator_sign(a.type_sign > 0 ? AssocType::Left : AssocType::Right, q, p);
          st.N[p] += eps;
          st.N_total += eps;
        }
  }
  return st;
}

BasedGaussDiagram gauss_from(const Analysis& an, Shape shape) {
  std::vector<int> signs;
  for (const auto& c : an.crossings) signs.push_back(c.sign);
  return BasedGaussDiagram(an.seq, std::move(signs), shape, "tangle word");
}

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) throw ParseError("bad " + what + " '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  while (true) {
    auto e = s.find(sep, b);
    out.push_back(s.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
    if (e == std::string_view::npos) break;
    b = e + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool orientation(std::string_view s, int line) {
  if (s == "u") return true;
  if (s == "d") return false;
  throw ParseError("orientation must be u or d" + at_line(line));
}

TangleEvent parse_event(std::string_view tok, int line) {
  TangleEvent ev;
  ev.line = line;
  const auto at = tok.find('@');
  if (at == std::string_view::npos) throw ParseError("event '" + std::string(tok) + "' lacks '@'" + at_line(line));
  const std::string_view head = tok.substr(0, at);
  const auto fields = split(tok.substr(at + 1), ':');
  ev.pos = parse_int(fields[0], "position");
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (fields.size() < lo || fields.size() > hi)
      throw ParseError("wrong number of fields in '" + std::string(tok) + "'" + at_line(line));
  };
  if (head == "MAX") {
    ev.kind = EventKind::Max;
    need(2, 2);
    ev.left_up = orientation(fields[1], line);
  } else if (head == "MIN") {
    ev.kind = EventKind::Min;
    need(2, 3);
    ev.left_up = orientation(fields[1], line);
    if (fields.size() == 3) {
      const auto f = fields[2];
      if (f.size() < 2 || (f[0] != 'l' && f[0] != 'r')) throw ParseError("MIN attachment must be lN or rN" + at_line(line));
      ev.attach_given = true;
      ev.attach_right = f[0] == 'r';
      ev.attach_level = parse_int(f.substr(1), "attachment level");
    }
  } else if (head == "X") {
    ev.kind = EventKind::Cross;
    need(3, 3);
    if (fields[1] == "+")
      ev.sign = 1;
    else if (fields[1] == "-")
      ev.sign = -1;
    else
      throw ParseError("crossing sign must be + or -" + at_line(line));
    if (fields[2] == "o")
      ev.left_over = true;
    else if (fields[2] == "u")
      ev.left_over = false;
    else
      throw ParseError("crossing flag must be o or u" + at_line(line));
  } else if (head == "A") {
    ev.kind = EventKind::Assoc;
    need(1, 3);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      if (fields[f] == "L")
        ev.type = AssocType::Left;
      else if (fields[f] == "R")
        ev.type = AssocType::Right;
      else {
        auto parts = split(fields[f], ',');
        if (parts.size() != 3) throw ParseError("associator groups must be p,q,r" + at_line(line));
        for (int k = 0; k < 3; ++k) ev.bunch[k] = parse_int(parts[k], "group size");
      }
    }
  } else {
    throw ParseError("unknown event '" + std::string(head) + "'" + at_line(line));
  }
  return ev;
}

}  // namespace

int associator_sign(AssocType type, int upward, int perm) {
  return (type == AssocType::Right ? -1 : 1) * (upward % 2 ? -1 : 1) * perm_sign(perm);
}

const char* perm_name(int p) {
  static const char* names[] = {"1", "(1,2)", "(1,3)", "(2,3)", "(1,2,3)", "(1,3,2)"};
  return names[p];
}

TangleWord parse_tangle(std::string_view text) {
  TangleWord t;
  int line = 0;
  bool header_allowed = true;
  for (auto raw : split(text, '\n')) {
    ++line;
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    for (auto tok : split(raw, ';')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      if (tok == "closed" || tok == "long") {
        if (!header_allowed) throw ParseError("shape line must come first" + at_line(line));
        t.shape = tok == "closed" ? Shape::Closed : Shape::Long;
        header_allowed = false;
        continue;
      }
      header_allowed = false;
      t.events.push_back(parse_event(tok, line));
    }
  }
  validate(t);
  return t;
}

std::string tangle_text(const TangleWord& t) {
  std::ostringstream os;
  if (t.shape == Shape::Closed) os << "closed\n";
  for (const auto& ev : t.events) {
    switch (ev.kind) {
      case EventKind::Max:
        os << "MAX@" << ev.pos << ':' << (ev.left_up ? 'u' : 'd');
        break;
      case EventKind::Min:
        os << "MIN@" << ev.pos << ':' << (ev.left_up ? 'u' : 'd');
        if (ev.attach_given) os << ':' << (ev.attach_right ? 'r' : 'l') << ev.attach_level;
        break;
      case EventKind::Cross:
        os << "X@" << ev.pos << ':' << (ev.sign > 0 ? '+' : '-') << ':' << (ev.left_over ? 'o' : 'u');
        break;
      case EventKind::Assoc:
        os << "A@" << ev.pos;
        if (ev.type != AssocType::Infer) os << ':' << (ev.type == AssocType::Left ? 'L' : 'R');
        if (ev.bunch != std::array<int, 3>{1, 1, 1})
          os << ':' << ev.bunch[0] << ',' << ev.bunch[1] << ',' << ev.bunch[2];
        break;
    }
    os << '\n';
  }
  return os.str();
}

void validate(const TangleWord& t) { analyze(t, 0); }

BasedGaussDiagram gauss_of_tangle(const TangleWord& t) { return gauss_from(analyze(t, 0), t.shape); }

AssociatorStats associator_stats(const TangleWord& t, int base_piece) { return stats_of(analyze(t, base_piece), 1); }

TangleFormulas tangle_formulas(const TangleWord& t, int assoc_sign) {
  if (t.shape != Shape::Long) throw ValidationError("long-word formulas need a long word");
  const auto an = analyze(t, 0);
  const auto st = stats_of(an, assoc_sign);
  const long long b = bracket(patterns::xsame(), gauss_from(an, t.shape));
  TangleFormulas f;
  f.f1x4 = 2 * b + st.N[Id] + st.N[P13] + st.X - st.M;
  f.f2x4 = 2 * b + st.N[P23] + st.N[P132] + 2 * st.Xplus;
  f.f3x4 = 2 * b + st.N[P12] + st.N[P123] + 2 * st.Xminus;
  return f;
}

long long v2_natangle(const TangleWord& t) {
  const auto f = tangle_formulas(t);
  if (f.f1x4 % 4 != 0 || f.f2x4 % 4 != 0 || f.f3x4 % 4 != 0)
    throw InconsistencyError("associator formula is not integral: " + std::to_string(f.f1x4) + "/4, " +
                             std::to_string(f.f2x4) + "/4, " + std::to_string(f.f3x4) + "/4");
  if (f.f1x4 != f.f2x4 || f.f2x4 != f.f3x4)
    throw InconsistencyError("associator formulas disagree: " + std::to_string(f.f1x4) + "/4, " +
                             std::to_string(f.f2x4) + "/4, " + std::to_string(f.f3x4) + "/4");
  return f.f1x4 / 4;
}

long long closed_tangle_x24(const TangleWord& t, int assoc_sign, int base_piece) {
  const auto an = analyze(t, base_piece);
  const auto st = stats_of(an, assoc_sign);
  const long long x = bracket(patterns::xall(), gauss_from(an, Shape::Closed));
  return 6 * x + st.N_total + 3 * st.X - st.M + 1;
}

long long v2_natangle_closed(const TangleWord& t) {
  const long long v = closed_tangle_x24(t);
  if (v % 24 != 0) throw InconsistencyError("closed associator formula is not integral: " + std::to_string(v) + "/24");
  return v / 24;
}

namespace {

class Builder {
 public:
  TangleWord word;
  Bracketing br = Bracketing::single();

  void min(int i, bool right, int level, bool given) {
    TangleEvent ev;
    ev.kind = EventKind::Min;
    ev.pos = i;
    ev.left_up = true;
    ev.attach_right = right;
    ev.attach_level = level;
    ev.attach_given = given;
    bool r = right;
    if (!given && i == 1) r = true;
    br.insert_pair(i, r, level, 0);
    word.events.push_back(ev);
  }
  void max(int i) {
    TangleEvent ev;
    ev.kind = EventKind::Max;
    ev.pos = i;
    ev.left_up = true;
    br.remove_pair(i);
    word.events.push_back(ev);
  }
  void cross(int i, int sign, bool left_over) {
    TangleEvent ev;
    ev.kind = EventKind::Cross;
    ev.pos = i;
    ev.sign = sign;
    ev.left_over = left_over;
    word.events.push_back(ev);
  }
  void rotate(int s, const std::array<int, 3>& k) {
    TangleEvent ev;
    ev.kind = EventKind::Assoc;
    ev.pos = s;
    ev.bunch = k;
    ev.type = (br.shape(s, k) > 0) == kLeftTypeOpensRight ? AssocType::Left : AssocType::Right;
    br.rotate(s, k);
    word.events.push_back(ev);
  }
  void bring_cherry(int i) {
    while (!br.cherry(i)) {
      auto [a, b] = lca(i, i + 1);
      if (a < i) {
        const int j = br.split(a, i);
        rotate(a, {j - a + 1, i - j, b - i});
      } else {
        const int j = br.split(i + 1, b);
        rotate(a, {i - a + 1, j - i, b - j});
      }
    }
  }
  std::pair<int, int> lca(int x, int y) const {
    std::pair<int, int> best{1, br.n};
    for (const auto& s : br.spans)
      if (s.first <= x && s.second >= y && s.second - s.first < best.second - best.first) best = s;
    return best;
  }
  void random_rotation(std::mt19937_64& rng) {
    std::vector<std::pair<int, std::array<int, 3>>> options;
    for (auto [a, b] : br.spans) {
      if (a == b) continue;
      const int k = br.split(a, b);
      if (k > a) {
        const int j = br.split(a, k);
        options.push_back({a, {j - a + 1, k - j, b - k}});
      }
      if (b > k + 1) {
        const int j = br.split(k + 1, b);
        options.push_back({a, {k - a + 1, j - k, b - j}});
      }
    }
    if (options.empty()) return;
    const auto& o = options[rng() % options.size()];
    rotate(o.first, o.second);
  }
  // Two opposite-orientation strands i, i+1 twisted twice: a pair of kinks.
  void double_kink(int i, std::mt19937_64& rng) {
    for (int r = 0; r < 2; ++r) {
      const bool left_up = r == 0;
      const bool over = rng() & 1;
      const auto dl = branch_dir(true, left_up), dr = branch_dir(false, !left_up);
      const int sign = over ? sgn(cross2(dl, dr)) : sgn(cross2(dr, dl));
      cross(i, sign, over);
    }
  }
};

}  // namespace

TangleWord tangle_from_braid(const std::vector<int>& letters, std::uint64_t seed) {
  const int k = braid_strands(letters);
  if (!braid_closure_is_knot(letters, k)) throw ValidationError("braid closure has more than one component");
  std::mt19937_64 rng(seed);
  const bool extras = seed != 0;
  Builder b;
  auto shuffle = [&] {
    if (!extras) return;
    for (int r = static_cast<int>(rng() % 3); r > 0; --r) b.random_rotation(rng);
  };
  // Layout: braid strands 1..k going up, their return strands k..2 to the right going down.
  for (int j = 2; j <= k; ++j) {
    if (extras && rng() % 2) {
      const bool right = j <= b.br.n && rng() % 2;
      auto chain = b.br.flush_ancestors(right ? j : j - 1, !right);
      const int level = static_cast<int>(rng() % chain.size());
      b.min(j, right, level, true);
    } else {
      b.min(j, false, 0, false);
    }
    if (extras && rng() % 3 == 0) b.double_kink(j, rng);
    shuffle();
  }
  for (int l : letters) {
    const int i = std::abs(l);
    b.bring_cherry(i);
    b.cross(i, l > 0 ? 1 : -1, l > 0);
    shuffle();
  }
  for (int j = k; j >= 2; --j) {
    b.bring_cherry(j);
    if (extras && rng() % 3 == 0) b.double_kink(j, rng);
    b.max(j);
    shuffle();
  }
  b.word.shape = Shape::Long;
  return b.word;
}

TangleWord closed_version(const TangleWord& t) {
  if (t.shape != Shape::Long) throw ValidationError("closed_version needs a long word");
  TangleWord c;
  c.shape = Shape::Closed;
  TangleEvent cup;
  cup.kind = EventKind::Min;
  cup.pos = 1;
  c.events.push_back(cup);
  for (const auto& ev : t.events) c.events.push_back(ev);
  TangleEvent cap;
  cap.kind = EventKind::Max;
  cap.pos = 1;
  c.events.push_back(cap);
  return c;
}

}  // namespace casson::natangle
