#pragma once

#include <vector>

#include "casson/gauss.hpp"

namespace casson {

struct Flip {
  int chord;      // chord index in the input diagram
  int sign;       // sign just before the flip
  int lk;         // closed-form count on the current diagram
  int lk_colored; // from two-coloring the smoothing
  bool colored_integral;
};

struct FlipTrace {
  std::vector<Flip> flips;
  BasedGaussDiagram final_diagram;
};

// Crossing changes at every chord first met at its head, walking from the base point.
FlipTrace descend(const BasedGaussDiagram& g);

// Sum of signs of chords interlocked with c whose head lies between tail(c) and the base point.
int lk_smoothed(const BasedGaussDiagram& g, int c);
// Linking number of the smoothing at c: half the signed count of crossings between its two
// components, each component found by walking the smoothed curve.
int lk_by_coloring(const BasedGaussDiagram& g, int c);
// Twice the linking number from the coloring; odd only on non-realizable input.
int lk_by_coloring_twice(const BasedGaussDiagram& g, int c);

long long v2_skein(const BasedGaussDiagram& g);
long long v2_skein(const FlipTrace& t);

bool is_descending(const BasedGaussDiagram& g);

// For every chord: the interlocked sign sums with head on either side agree.
bool two_sided_balanced(const BasedGaussDiagram& g);

}  // namespace casson
