#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace casson {

using Rational = mpq_class;

// Canonical a/b; mpq arithmetic requires canonical operands.
inline Rational frac(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

enum class End : std::uint8_t { Tail, Head };
enum class Shape : std::uint8_t { Closed, Long };

struct Endpoint {
  int chord;
  End end;
  bool operator==(const Endpoint&) const = default;
};

// Positions are ranks 0..2n-1 counted from the base point.
struct Chord {
  int label;
  int tail;
  int head;
  int sign;
};

class BasedGaussDiagram {
 public:
  BasedGaussDiagram() = default;
  // signs[c] and labels[c] for chord c; seq lists the 2n endpoints from the base point.
  BasedGaussDiagram(std::vector<Endpoint> seq, std::vector<int> signs,
                    Shape shape = Shape::Closed, std::string provenance = {},
                    std::vector<int> labels = {});

  int size() const { return static_cast<int>(chords_.size()); }
  bool empty() const { return chords_.empty(); }
  const std::vector<Chord>& chords() const { return chords_; }
  const Chord& chord(int c) const { return chords_.at(c); }
  const std::vector<Endpoint>& sequence() const { return seq_; }
  const Endpoint& at(int rank) const { return seq_.at(rank); }
  Shape shape() const { return shape_; }
  const std::string& provenance() const { return provenance_; }

  // Exact position on the circle, rank / 2n.
  Rational position(int rank) const;
  int chord_index(int label) const;
  bool interlocked(int a, int b) const;

  BasedGaussDiagram with_shape(Shape s) const;
  BasedGaussDiagram with_provenance(std::string p) const;
  // Mirror image: every sign negated, directions reversed.
  BasedGaussDiagram mirrored() const;

  std::string serialize() const;

  // Same endpoint order, directions and signs (labels ignored).
  bool same_structure(const BasedGaussDiagram& o) const;

 private:
  std::vector<Chord> chords_;
  std::vector<Endpoint> seq_;
  Shape shape_ = Shape::Closed;
  std::string provenance_;
};

BasedGaussDiagram parse_gauss_code(std::string_view text);
BasedGaussDiagram parse_pd_code(std::string_view text);
BasedGaussDiagram from_braid_word(std::string_view word);
BasedGaussDiagram torus_knot_2(int n);

// Braid letters: +i for s_i, -i for its inverse.
std::vector<int> parse_braid_word(std::string_view word);
std::string braid_word_string(const std::vector<int>& letters);
// Strand count needed by the word; at least 1.
int braid_strands(const std::vector<int>& letters);
bool braid_closure_is_knot(const std::vector<int>& letters, int strands);

}  // namespace casson
