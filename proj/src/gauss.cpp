#include "casson/gauss.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "casson/errors.hpp"

namespace casson {

BasedGaussDiagram::BasedGaussDiagram(std::vector<Endpoint> seq, std::vector<int> signs,
                                     Shape shape, std::string provenance,
                                     std::vector<int> labels)
    : seq_(std::move(seq)), shape_(shape), provenance_(std::move(provenance)) {
  const int n = static_cast<int>(signs.size());
  if (static_cast<int>(seq_.size()) != 2 * n)
    throw ValidationError("endpoint count does not match chord count");
  if (labels.empty()) {
    labels.resize(n);
    std::iota(labels.begin(), labels.end(), 1);
  }
  chords_.assign(n, Chord{0, -1, -1, 0});
  for (int c = 0; c < n; ++c) {
    if (signs[c] != 1 && signs[c] != -1) throw ValidationError("chord sign must be +1 or -1");
    chords_[c].sign = signs[c];
    chords_[c].label = labels[c];
  }
  for (int r = 0; r < 2 * n; ++r) {
    const auto [c, e] = seq_[r];
    if (c < 0 || c >= n) throw ValidationError("endpoint refers to unknown chord");
    int& slot = e == End::Tail ? chords_[c].tail : chords_[c].head;
    if (slot != -1) throw ValidationError("chord endpoint repeated");
    slot = r;
  }
}

Rational BasedGaussDiagram::position(int rank) const {
  return frac(rank, 2 * std::max(1, size()));
}

int BasedGaussDiagram::chord_index(int label) const {
  for (int c = 0; c < size(); ++c)
    if (chords_[c].label == label) return c;
  throw ValidationError("unknown chord label " + std::to_string(label));
}

bool BasedGaussDiagram::interlocked(int a, int b) const {
  auto lo = [](const Chord& c) { return std::min(c.tail, c.head); };
  auto hi = [](const Chord& c) { return std::max(c.tail, c.head); };
  const Chord& x = chords_[a];
  const Chord& y = chords_[b];
  const bool in1 = lo(x) < lo(y) && lo(y) < hi(x);
  const bool in2 = lo(x) < hi(y) && hi(y) < hi(x);
  return in1 != in2;
}

BasedGaussDiagram BasedGaussDiagram::with_shape(Shape s) const {
  BasedGaussDiagram g = *this;
  g.shape_ = s;
  return g;
}

BasedGaussDiagram BasedGaussDiagram::with_provenance(std::string p) const {
  BasedGaussDiagram g = *this;
  g.provenance_ = std::move(p);
  return g;
}

BasedGaussDiagram BasedGaussDiagram::mirrored() const {
  std::vector<Endpoint> seq = seq_;
  for (auto& e : seq) e.end = e.end == End::Tail ? End::Head : End::Tail;
  std::vector<int> signs, labels;
  for (const auto& c : chords_) {
    signs.push_back(-c.sign);
    labels.push_back(c.label);
  }
  return BasedGaussDiagram(std::move(seq), std::move(signs), shape_, provenance_, std::move(labels));
}

std::string BasedGaussDiagram::serialize() const {
  std::vector<int> relabel(size(), 0);
  int next = 1;
  std::string out;
  for (const auto& [c, e] : seq_) {
    if (relabel[c] == 0) relabel[c] = next++;
    out += e == End::Tail ? 'O' : 'U';
    out += std::to_string(relabel[c]);
    out += chords_[c].sign > 0 ? '+' : '-';
  }
  return out;
}

bool BasedGaussDiagram::same_structure(const BasedGaussDiagram& o) const {
  if (size() != o.size()) return false;
  std::vector<int> map(size(), -1);
  for (std::size_t r = 0; r < seq_.size(); ++r) {
    const auto& a = seq_[r];
    const auto& b = o.seq_[r];
    if (a.end != b.end) return false;
    if (map[a.chord] == -1) map[a.chord] = b.chord;
    if (map[a.chord] != b.chord) return false;
    if (chords_[a.chord].sign != o.chords_[b.chord].sign) return false;
  }
  return true;
}

BasedGaussDiagram parse_gauss_code(std::string_view text) {
  struct Token {
    bool over;
    int label;
    int sign;
  };
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    const char k = text[i];
    if (k != 'O' && k != 'U')
      throw ParseError("expected O or U at offset " + std::to_string(i));
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("empty label at offset " + std::to_string(i));
    if (text[i] == '0') throw ParseError("label may not start with 0");
    long label = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      label = label * 10 + (text[i] - '0');
      if (label > 1000000000) throw ParseError("label too large");
      ++i;
    }
    if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
      throw ParseError("missing sign after label " + std::to_string(label));
    tokens.push_back({k == 'O', static_cast<int>(label), text[i] == '+' ? 1 : -1});
    ++i;
    skip_ws();
  }

  std::map<int, int> index;
  std::vector<int> labels, signs;
  std::vector<std::pair<int, int>> seen;  // (over count, under count)
  std::vector<Endpoint> seq;
  for (const auto& t : tokens) {
    auto [it, fresh] = index.try_emplace(t.label, static_cast<int>(labels.size()));
    if (fresh) {
      labels.push_back(t.label);
      signs.push_back(t.sign);
      seen.emplace_back(0, 0);
    }
    const int c = it->second;
    if (signs[c] != t.sign)
      throw ParseError("signs of O and U tokens differ for label " + std::to_string(t.label));
    int& count = t.over ? seen[c].first : seen[c].second;
    if (++count > 1)
      throw ParseError(std::string("duplicate ") + (t.over ? "O" : "U") + " token for label " +
                       std::to_string(t.label));
    seq.push_back({c, t.over ? End::Tail : End::Head});
  }
  for (std::size_t c = 0; c < labels.size(); ++c)
    if (seen[c].first != 1 || seen[c].second != 1)
      throw ParseError("label " + std::to_string(labels[c]) + " lacks an " +
                       (seen[c].first ? "U" : "O") + " token");
  return BasedGaussDiagram(std::move(seq), std::move(signs), Shape::Closed,
                           "gauss:" + std::string(text), std::move(labels));
}

namespace {

struct PdCrossing {
  int e[4];
};

std::vector<PdCrossing> scan_pd(std::string_view text) {
  std::vector<PdCrossing> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  auto number = [&]() -> int {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("malformed PD tuple: expected edge number");
    long v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1000000) throw ParseError("malformed PD tuple: edge number too large");
      ++i;
    }
    return static_cast<int>(v);
  };
  auto expect = [&](char ch) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != ch)
      throw ParseError(std::string("malformed PD tuple: expected '") + ch + "'");
    ++i;
  };
  skip();
  while (i < text.size()) {
    expect('X');
    expect('[');
    PdCrossing x{};
    for (int k = 0; k < 4; ++k) {
      if (k) expect(',');
      x.e[k] = number();
    }
    expect(']');
    out.push_back(x);
    skip();
  }
  return out;
}

}  // namespace

BasedGaussDiagram parse_pd_code(std::string_view text) {
  const auto xs = scan_pd(text);
  const int n = static_cast<int>(xs.size());
  if (n == 0) return BasedGaussDiagram({}, {}, Shape::Closed, "pd:");
  const int m = 2 * n;

  // Each edge must occur exactly twice; record occurrences (crossing, slot).
  std::vector<std::vector<std::pair<int, int>>> occ(m + 1);
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < 4; ++k) {
      const int e = xs[x].e[k];
      if (e < 1 || e > m) throw ValidationError("inconsistent edge incidences: edge " +
                                                std::to_string(e) + " out of range");
      occ[e].emplace_back(x, k);
    }
  for (int e = 1; e <= m; ++e)
    if (occ[e].size() != 2)
      throw ValidationError("inconsistent edge incidences: edge " + std::to_string(e) +
                            " used " + std::to_string(occ[e].size()) + " times");

  // role[x][k]: 0 = edge ends here (incoming), 1 = edge starts here, -1 unknown.
  std::vector<std::array<int, 4>> role(n);
  for (auto& r : role) r = {0, -1, 1, -1};
  auto other = [&](int x, int k) {
    const int e = xs[x].e[k];
    const auto& o = occ[e];
    return o[0] == std::make_pair(x, k) ? o[1] : o[0];
  };
  std::vector<std::pair<int, int>> queue;
  auto assign = [&](int x, int k, int v) {
    if (role[x][k] == -1) {
      role[x][k] = v;
      queue.emplace_back(x, k);
    } else if (role[x][k] != v) {
      throw ValidationError("inconsistent edge incidences at crossing " + std::to_string(x + 1));
    }
  };
  auto propagate = [&] {
    while (!queue.empty()) {
      auto [x, k] = queue.back();
      queue.pop_back();
      const int v = role[x][k];
      auto [ox, ok] = other(x, k);
      assign(ox, ok, 1 - v);
      if (k == 1 || k == 3) assign(x, 4 - k, 1 - v);
    }
  };
  for (int x = 0; x < n; ++x) {
    queue.emplace_back(x, 0);
    queue.emplace_back(x, 2);
  }
  propagate();
  for (int x = 0; x < n; ++x) {
    if (role[x][1] != -1) continue;
    // Over strand never meets a fixed role: fall back on consecutive numbering.
    const int b = xs[x].e[1], d = xs[x].e[3];
    assign(x, 1, b % m + 1 == d ? 0 : 1);
    propagate();
  }

  std::vector<int> start_x(m + 1), start_k(m + 1), end_x(m + 1), end_k(m + 1);
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < 4; ++k) {
      const int e = xs[x].e[k];
      if (role[x][k] == 1) {
        start_x[e] = x;
        start_k[e] = k;
      } else {
        end_x[e] = x;
        end_k[e] = k;
      }
    }

  std::vector<int> signs(n);
  for (int x = 0; x < n; ++x) signs[x] = role[x][3] == 0 ? 1 : -1;  // over enters at d

  std::vector<Endpoint> seq;
  int e = 1;
  do {
    const int x = end_x[e], k = end_k[e];
    const bool under = k == 0;
    seq.push_back({x, under ? End::Head : End::Tail});
    const int out = under ? 2 : 4 - k;
    e = xs[x].e[out];
    if (static_cast<int>(seq.size()) > m) break;
  } while (e != 1);
  if (static_cast<int>(seq.size()) != m)
    throw ValidationError("PD code describes multiple components");

  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  return BasedGaussDiagram(std::move(seq), std::move(signs), Shape::Closed,
                           "pd:" + std::string(text), std::move(labels));
}

std::vector<int> parse_braid_word(std::string_view word) {
  std::vector<int> letters;
  std::istringstream in{std::string(word)};
  std::string tok;
  while (in >> tok) {
    std::size_t i = 0;
    int sign = 1;
    if (tok[i] == '-') {
      sign = -1;
      ++i;
    }
    if (i >= tok.size() || (tok[i] != 's' && tok[i] != 'S'))
      throw ParseError("unknown braid token '" + tok + "'");
    ++i;
    if (i >= tok.size()) throw ParseError("unknown braid token '" + tok + "'");
    int idx = 0;
    for (; i < tok.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        throw ParseError("unknown braid token '" + tok + "'");
      idx = idx * 10 + (tok[i] - '0');
      if (idx > 10000) throw ParseError("braid generator index too large");
    }
    if (idx < 1) throw ParseError("braid generator index must be >= 1");
    letters.push_back(sign * idx);
  }
  return letters;
}

std::string braid_word_string(const std::vector<int>& letters) {
  std::string out;
  for (int l : letters) {
    if (!out.empty()) out += ' ';
    if (l < 0) out += '-';
    out += 's' + std::to_string(std::abs(l));
  }
  return out;
}

int braid_strands(const std::vector<int>& letters) {
  int k = 1;
  for (int l : letters) k = std::max(k, std::abs(l) + 1);
  return k;
}

bool braid_closure_is_knot(const std::vector<int>& letters, int strands) {
  std::vector<int> perm(strands);
  std::iota(perm.begin(), perm.end(), 0);
  for (int l : letters) {
    const int i = std::abs(l) - 1;
    std::swap(perm[i], perm[i + 1]);
  }
  int p = 0, len = 0;
  do {
    p = perm[p];
    ++len;
  } while (p != 0);
  return len == strands;
}

BasedGaussDiagram from_braid_word(std::string_view word) {
  const auto letters = parse_braid_word(word);
  const int k = braid_strands(letters);
  if (!braid_closure_is_knot(letters, k))
    throw ValidationError("braid closure has more than one component");
  const int n = static_cast<int>(letters.size());
  std::vector<int> signs(n);
  for (int j = 0; j < n; ++j) signs[j] = letters[j] > 0 ? 1 : -1;

  // Walk strand 1 up through the braid; positive letters put the left strand over.
  std::vector<Endpoint> seq;
  int p = 1;
  do {
    for (int j = 0; j < n; ++j) {
      const int i = std::abs(letters[j]);
      if (p == i) {
        seq.push_back({j, signs[j] > 0 ? End::Tail : End::Head});
        p = i + 1;
      } else if (p == i + 1) {
        seq.push_back({j, signs[j] > 0 ? End::Head : End::Tail});
        p = i;
      }
    }
  } while (p != 1);
  return BasedGaussDiagram(std::move(seq), std::move(signs), Shape::Long,
                           "braid:" + braid_word_string(letters));
}

BasedGaussDiagram torus_knot_2(int n) {
  if (n < 3 || n % 2 == 0)
    throw ValidationError("torus knot T(n,2) needs odd n >= 3, got " + std::to_string(n));
  std::string w;
  for (int i = 0; i < n; ++i) w += i ? " s1" : "s1";
  return from_braid_word(w).with_provenance("torus:" + std::to_string(n));
}

}  // namespace casson
