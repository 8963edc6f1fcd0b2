#include "casson/skein.hpp"

#include <algorithm>

#include "casson/errors.hpp"

namespace casson {

int lk_smoothed(const BasedGaussDiagram& g, int c) {
  if (c < 0 || c >= g.size()) throw ValidationError("unknown chord " + std::to_string(c));
  const Chord& x = g.chord(c);
  int sum = 0;
  for (int d = 0; d < g.size(); ++d) {
    if (d == c || !g.interlocked(c, d)) continue;
    if (g.chord(d).head > x.tail) sum += g.chord(d).sign;
  }
  return sum;
}

int lk_by_coloring_twice(const BasedGaussDiagram& g, int c) {
  if (c < 0 || c >= g.size()) throw ValidationError("unknown chord " + std::to_string(c));
  const int m = 2 * g.size();
  const int p = std::min(g.chord(c).tail, g.chord(c).head);
  const int q = std::max(g.chord(c).tail, g.chord(c).head);
  std::vector<int> next(m);
  for (int r = 0; r < m; ++r) next[r] = (r + 1) % m;
  next[p] = (q + 1) % m;
  next[q] = (p + 1) % m;
  std::vector<int> color(m, -1);
  int r = (p + 1) % m;
  while (color[r] == -1) {
    color[r] = 0;
    r = next[r];
  }
  for (int s = 0; s < m; ++s)
    if (color[s] == -1) color[s] = 1;
  int total = 0;
  for (int d = 0; d < g.size(); ++d) {
    if (d == c) continue;
    if (color[g.chord(d).tail] != color[g.chord(d).head]) total += g.chord(d).sign;
  }
  return total;
}

int lk_by_coloring(const BasedGaussDiagram& g, int c) {
  const int twice = lk_by_coloring_twice(g, c);
  if (twice % 2) throw InconsistencyError("smoothing has odd inter-component crossing sum");
  return twice / 2;
}

bool is_descending(const BasedGaussDiagram& g) {
  for (const auto& c : g.chords())
    if (c.head < c.tail) return false;
  return true;
}

FlipTrace descend(const BasedGaussDiagram& g) {
  std::vector<Endpoint> seq = g.sequence();
  std::vector<int> signs, labels;
  for (const auto& c : g.chords()) {
    signs.push_back(c.sign);
    labels.push_back(c.label);
  }
  FlipTrace trace;
  BasedGaussDiagram cur = g;
  for (int r = 0; r < static_cast<int>(seq.size()); ++r) {
    const int c = seq[r].chord;
    if (seq[r].end != End::Head || cur.chord(c).tail < r) continue;
    const int twice = lk_by_coloring_twice(cur, c);
    trace.flips.push_back({c, signs[c], lk_smoothed(cur, c), twice / 2, twice % 2 == 0});
    seq[r].end = End::Tail;
    seq[cur.chord(c).tail].end = End::Head;
    signs[c] = -signs[c];
    cur = BasedGaussDiagram(seq, signs, g.shape(), g.provenance(), labels);
  }
  trace.final_diagram = cur;
  return trace;
}

long long v2_skein(const FlipTrace& t) {
  long long v = 0;
  for (const auto& f : t.flips) v += static_cast<long long>(f.sign) * f.lk;
  return v;
}

long long v2_skein(const BasedGaussDiagram& g) { return v2_skein(descend(g)); }

bool two_sided_balanced(const BasedGaussDiagram& g) {
  for (int c = 0; c < g.size(); ++c) {
    const Chord& x = g.chord(c);
    const int lo = std::min(x.tail, x.head), hi = std::max(x.tail, x.head);
    int inside = 0, outside = 0;
    for (int d = 0; d < g.size(); ++d) {
      if (d == c || !g.interlocked(c, d)) continue;
      const int h = g.chord(d).head;
      (h > lo && h < hi ? inside : outside) += g.chord(d).sign;
    }
    if (inside != outside) return false;
  }
  return true;
}

}  // namespace casson
