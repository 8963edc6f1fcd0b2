#include "casson/casson.hpp"

#include <cstdlib>

#include "casson/pairing.hpp"

namespace casson {

long long v2_gauss(const BasedGaussDiagram& g) { return bracket(patterns::xup(), g); }

long long v2_sym(const BasedGaussDiagram& g) { return bracket(patterns::xdown(), g); }

int arf(const BasedGaussDiagram& g) {
  return static_cast<int>(match_count(patterns::xup(), g) % 2);
}

long long crossing_bound(int n) { return static_cast<long long>(n) * n / 8; }

BoundCheck check_bound(const BasedGaussDiagram& g) {
  const long long v = v2_gauss(g);
  const long long b = crossing_bound(g.size());
  return {v, b, std::llabs(v) <= b};
}

bool even_bound_advisory(const BasedGaussDiagram& g) {
  const int n = g.size();
  if (n == 0 || n % 2) return true;
  return std::llabs(v2_gauss(g)) <= crossing_bound(n) - 1;
}

InvariantReport report(const BasedGaussDiagram& g, long long v2, const std::string& method) {
  return {v2, arf(g), g.size(), crossing_bound(g.size()), method};
}

}  // namespace casson
