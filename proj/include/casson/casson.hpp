#pragma once

#include <string>

#include "casson/gauss.hpp"

namespace casson {

long long v2_gauss(const BasedGaussDiagram& g);
long long v2_sym(const BasedGaussDiagram& g);
// Parity of the unsigned number of XUP subdiagrams.
int arf(const BasedGaussDiagram& g);

long long crossing_bound(int n);

struct BoundCheck {
  long long v2;
  long long bound;
  bool ok;
};
BoundCheck check_bound(const BasedGaussDiagram& g);

// Conjectured tightening for even crossing counts; advisory only.
bool even_bound_advisory(const BasedGaussDiagram& g);

struct InvariantReport {
  long long v2 = 0;
  int arf = 0;
  int n = 0;
  long long bound = 0;
  std::string method;
};
InvariantReport report(const BasedGaussDiagram& g, long long v2, const std::string& method);

}  // namespace casson
