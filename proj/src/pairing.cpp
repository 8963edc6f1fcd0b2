#include "casson/pairing.hpp"

#include <algorithm>
#include <stdexcept>

#include "casson/errors.hpp"

namespace casson {

namespace {

std::vector<Endpoint> canonical(std::vector<Endpoint> slots) {
  std::vector<int> relabel;
  int maxc = -1;
  for (const auto& s : slots) maxc = std::max(maxc, s.chord);
  relabel.assign(maxc + 1, -1);
  int next = 0;
  for (auto& s : slots) {
    if (relabel[s.chord] == -1) relabel[s.chord] = next++;
    s.chord = relabel[s.chord];
  }
  return slots;
}

template <class Visit>
void for_each_subset(int n, int k, Visit&& visit) {
  if (k > n || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Encodes a two-chord configuration as the end types of the four slots.
int two_chord_code(const Chord& a, const Chord& b) {
  int pos[4] = {a.tail, a.head, b.tail, b.head};
  int first_a = std::min(a.tail, a.head), first_b = std::min(b.tail, b.head);
  int code = 0;
  std::sort(pos, pos + 4);
  for (int r : pos) {
    bool head = r == a.head || r == b.head;
    bool is_a = r == a.tail || r == a.head;
    // chord id relative to first appearance
    int id = (is_a ? first_a : first_b) == pos[0] ? 0 : 1;
    code = code * 4 + id * 2 + (head ? 1 : 0);
  }
  return code;
}

int two_chord_code(const std::vector<Endpoint>& slots) {
  int code = 0;
  for (const auto& s : slots) code = code * 4 + s.chord * 2 + (s.end == End::Head ? 1 : 0);
  return code;
}

}  // namespace

ArrowPattern::ArrowPattern(std::vector<Endpoint> slots) {
  if (slots.empty() || slots.size() % 2) throw ValidationError("pattern needs 2k slots, k >= 1");
  arity_ = static_cast<int>(slots.size() / 2);
  std::vector<int> tails(arity_, 0), heads(arity_, 0);
  for (const auto& s : slots) {
    if (s.chord < 0 || s.chord >= arity_) throw ValidationError("pattern chord index out of range");
    ++(s.end == End::Tail ? tails : heads)[s.chord];
  }
  for (int c = 0; c < arity_; ++c)
    if (tails[c] != 1 || heads[c] != 1)
      throw ValidationError("pattern chord needs exactly one head and one tail");
  slots_ = canonical(std::move(slots));
}

ArrowPattern ArrowPattern::reversed() const {
  auto s = slots_;
  for (auto& e : s) e.end = e.end == End::Tail ? End::Head : End::Tail;
  return ArrowPattern(std::move(s));
}

std::string ArrowPattern::describe() const {
  std::string out;
  for (const auto& s : slots_) {
    out += s.end == End::Tail ? 'T' : 'H';
    out += std::to_string(s.chord + 1);
  }
  return out;
}

namespace patterns {

namespace {
ArrowPattern make(End a, End b, End c, End d, int ca, int cb, int cc, int cd) {
  return ArrowPattern({{ca, a}, {cb, b}, {cc, c}, {cd, d}});
}
}  // namespace

const ArrowPattern& xup() {
  static const ArrowPattern p = make(End::Head, End::Tail, End::Tail, End::Head, 0, 1, 0, 1);
  return p;
}
const ArrowPattern& xdown() {
  static const ArrowPattern p = xup().reversed();
  return p;
}
const ArrowPattern& xfwd() {
  static const ArrowPattern p = make(End::Tail, End::Tail, End::Head, End::Head, 0, 1, 0, 1);
  return p;
}
const ArrowPattern& xbwd() {
  static const ArrowPattern p = make(End::Head, End::Head, End::Tail, End::Tail, 0, 1, 0, 1);
  return p;
}
PatternSum xall() {
  PatternSum s;
  s.add(1, xup()).add(1, xdown()).add(1, xfwd()).add(1, xbwd());
  return s;
}
PatternSum xsame() {
  PatternSum s;
  s.add(1, xfwd()).add(1, xbwd());
  return s;
}
PatternSum by_name(std::string_view name) {
  if (name == "xup") return xup();
  if (name == "xdown") return xdown();
  if (name == "xfwd") return xfwd();
  if (name == "xbwd") return xbwd();
  if (name == "xall") return xall();
  throw ParseError("unknown pattern '" + std::string(name) + "'");
}

}  // namespace patterns

ArrowPattern subdiagram(const BasedGaussDiagram& g, const std::vector<int>& chords) {
  std::vector<std::pair<int, Endpoint>> pts;
  for (int i = 0; i < static_cast<int>(chords.size()); ++i) {
    const Chord& c = g.chord(chords[i]);
    pts.push_back({c.tail, {i, End::Tail}});
    pts.push_back({c.head, {i, End::Head}});
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Endpoint> slots;
  for (const auto& p : pts) slots.push_back(p.second);
  return ArrowPattern(std::move(slots));
}

namespace {

template <class Weight>
long long count_matches(const ArrowPattern& a, const BasedGaussDiagram& g, Weight&& weight) {
  long long total = 0;
  const auto& ch = g.chords();
  if (a.arity() == 2) {
    const int want = two_chord_code(a.slots());
    for (int i = 0; i < g.size(); ++i)
      for (int j = i + 1; j < g.size(); ++j)
        if (two_chord_code(ch[i], ch[j]) == want) total += weight(ch[i].sign * ch[j].sign);
    return total;
  }
  for_each_subset(g.size(), a.arity(), [&](const std::vector<int>& idx) {
    if (subdiagram(g, idx) == a) {
      int s = 1;
      for (int c : idx) s *= ch[c].sign;
      total += weight(s);
    }
  });
  return total;
}

}  // namespace

long long bracket(const ArrowPattern& a, const BasedGaussDiagram& g) {
  return count_matches(a, g, [](int s) { return s; });
}

long long bracket(const PatternSum& a, const BasedGaussDiagram& g) {
  long long total = 0;
  for (const auto& [coef, p] : a.terms) total += coef * bracket(p, g);
  return total;
}

long long match_count(const ArrowPattern& a, const BasedGaussDiagram& g) {
  return count_matches(a, g, [](int) { return 1; });
}

}  // namespace casson
