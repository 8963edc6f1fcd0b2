#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "casson/gauss.hpp"

namespace casson {

// Slots in circle order from the base point; chord indices are 0-based.
class ArrowPattern {
 public:
  ArrowPattern() = default;
  explicit ArrowPattern(std::vector<Endpoint> slots);

  int arity() const { return arity_; }
  const std::vector<Endpoint>& slots() const { return slots_; }
  // Chords relabeled by first appearance; equal patterns compare equal.
  bool operator==(const ArrowPattern& o) const { return slots_ == o.slots_; }
  // Every arrow reversed.
  ArrowPattern reversed() const;
  std::string describe() const;

 private:
  int arity_ = 0;
  std::vector<Endpoint> slots_;
};

// Integer linear combination of patterns.
struct PatternSum {
  std::vector<std::pair<int, ArrowPattern>> terms;

  PatternSum() = default;
  PatternSum(const ArrowPattern& p) : terms{{1, p}} {}
  PatternSum& add(int coef, const ArrowPattern& p) {
    terms.emplace_back(coef, p);
    return *this;
  }
};

namespace patterns {
const ArrowPattern& xup();
const ArrowPattern& xdown();
const ArrowPattern& xfwd();
const ArrowPattern& xbwd();
PatternSum xall();
// Sum of the two same-direction interlocked patterns.
PatternSum xsame();
// xup|xdown|xfwd|xbwd|xall
PatternSum by_name(std::string_view name);
}  // namespace patterns

// Signed count of chord subsets matching the pattern.
long long bracket(const ArrowPattern& a, const BasedGaussDiagram& g);
long long bracket(const PatternSum& a, const BasedGaussDiagram& g);
// Same subsets, unsigned.
long long match_count(const ArrowPattern& a, const BasedGaussDiagram& g);

// Pattern formed by the given chords of g, read from the base point.
ArrowPattern subdiagram(const BasedGaussDiagram& g, const std::vector<int>& chords);

}  // namespace casson
