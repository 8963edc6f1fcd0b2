#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "casson/gauss.hpp"

namespace casson::natangle {

enum class EventKind : std::uint8_t { Max, Min, Cross, Assoc };
enum class AssocType : std::uint8_t { Left, Right, Infer };

// Positions are 1-based strand indices before the event, counted from the left.
struct TangleEvent {
  EventKind kind = EventKind::Max;
  int pos = 1;
  bool left_up = true;    // Max/Min: orientation of the left strand of the pair
  int sign = 1;           // Cross
  bool left_over = true;  // Cross: the strand coming in from the lower left passes over
  AssocType type = AssocType::Infer;
  std::array<int, 3> bunch{1, 1, 1};  // Assoc: sizes of the three rebracketed groups
  // Min: the new pair becomes the sibling of the ancestor `attach_level` levels above
  // its left (or right) neighbour leaf.
  bool attach_right = false;
  int attach_level = 0;
  bool attach_given = false;
  int line = 0;
};

// Events listed bottom to top. A long word starts and ends with one upward strand;
// a closed word starts and ends with none.
struct TangleWord {
  Shape shape = Shape::Long;
  std::vector<TangleEvent> events;
};

// A left-type associator takes ((P Q) R) below to (P (Q R)) above.
inline constexpr bool kLeftTypeOpensRight = false;

// One event per line or ';'-separated: MAX@i:u|d, MIN@i:u|d[:lN|rN], X@i:+|-:o|u,
// A@i[:L|R][:p,q,r]. A line "closed" or "long" sets the shape; '#' starts a comment.
TangleWord parse_tangle(std::string_view text);
std::string tangle_text(const TangleWord& t);

// Validates strand counts, bracketing, orientations, crossing signs and connectivity.
void validate(const TangleWord& t);

BasedGaussDiagram gauss_of_tangle(const TangleWord& t);

// Permutations from left-to-right position to source rank, in cycle notation.
enum Perm : int { Id, P12, P13, P23, P123, P132 };
const char* perm_name(int p);

// Contribution of one triple of branches: the parity of the permutation times
// (-1)^(upward branches), negated for right-type associators.
int associator_sign(AssocType type, int upward, int perm);

struct AssociatorStats {
  std::array<long long, 6> N{};
  long long N_total = 0;
  int X = 0, Xplus = 0, Xminus = 0;
  int M = 0;
  int associators = 0;
};
// For closed words `base_piece` picks the arc (in creation order) where the source starts.
AssociatorStats associator_stats(const TangleWord& t, int base_piece = 0);

struct TangleFormulas {
  // Four times each right-hand side.
  long long f1x4 = 0, f2x4 = 0, f3x4 = 0;
};
// `assoc_sign` = -1 swaps the two associator types.
TangleFormulas tangle_formulas(const TangleWord& t, int assoc_sign = 1);
long long v2_natangle(const TangleWord& t);
long long closed_tangle_x24(const TangleWord& t, int assoc_sign = 1, int base_piece = 0);
long long v2_natangle_closed(const TangleWord& t);

// Long closure of a braid in nonassociative position. A nonzero seed adds random
// rebracketings, cup attachments and double kinks.
TangleWord tangle_from_braid(const std::vector<int>& letters, std::uint64_t seed = 0);
// Closes a long word with an arc on the right.
TangleWord closed_version(const TangleWord& t);

}  // namespace casson::natangle
