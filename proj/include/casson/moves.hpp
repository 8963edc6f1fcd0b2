#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "casson/gauss.hpp"

namespace casson {

// Arc r runs from endpoint rank r to rank r+1 (the last arc passes the base point).
// Dart 2r walks arc r along the orientation, dart 2r+1 against it.
struct FaceMap {
  std::vector<std::vector<int>> faces;  // darts of each face, in boundary order
  std::vector<int> face_of;             // dart -> face
};

FaceMap trace_faces(const BasedGaussDiagram& g);
// A Gauss diagram with n >= 1 chords bounds a planar curve iff it has n + 2 faces.
bool is_realizable(const BasedGaussDiagram& g);

enum class MoveKind : std::uint8_t { R1Add, R1Remove, R2Add, R2Remove, R3, BasePoint };

struct MoveSite {
  MoveKind kind;
  int a = 0;         // R1Add: rank to insert after (-1 = front); R1Remove/R2Remove: chord; R2Add/R3: dart
  int b = 0;         // R2Add: second dart; R2Remove: second chord
  bool flag = false; // R1Add: tail first; R2Add: first strand over; BasePoint: forward
  int sign = 1;      // R1Add only
};

std::string describe(const MoveSite& s);

BasedGaussDiagram apply(const BasedGaussDiagram& g, const MoveSite& s);

// Every applicable removal, R3 and base-point site.
std::vector<MoveSite> reducing_sites(const BasedGaussDiagram& g);

MoveSite random_move(const BasedGaussDiagram& g, std::mt19937_64& rng);

std::vector<int> random_knot_braid(std::mt19937_64& rng, int n_letters);
BasedGaussDiagram random_realizable(std::uint64_t seed, int n_letters, int n_moves);

}  // namespace casson
