#include <catch_amalgamated.hpp>

#include "casson/casson.hpp"
#include "casson/errors.hpp"
#include "casson/gauss.hpp"
#include "casson/moves.hpp"
#include "oracles.hpp"

using namespace casson;

TEST_CASE("gauss code parsing") {
  auto g = parse_gauss_code("O1+U2+O3+U1+O2+U3+");
  REQUIRE(g.size() == 3);
  CHECK(g.chord(0).tail == 0);
  CHECK(g.chord(0).head == 3);
  CHECK(g.chord(1).head == 1);
  CHECK(g.chord(2).sign == 1);
  CHECK(g.position(3) == Rational(1, 2));

  CHECK(parse_gauss_code("").empty());
  CHECK(parse_gauss_code("  \n").empty());
  auto kink = parse_gauss_code("O1+U1+");
  REQUIRE(kink.size() == 1);
  CHECK(kink.chord(0).tail == 0);

  auto spaced = parse_gauss_code("O1+ U2+ O3+\tU1+ O2+ U3+");
  CHECK(spaced.same_structure(g));
}

TEST_CASE("gauss code errors") {
  CHECK_THROWS_AS(parse_gauss_code("O1+O1+"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("O1+"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("O1+U1-"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("O+U1+"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("O01+U01+"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("O1+U1"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("X1+"), ParseError);
  CHECK_THROWS_AS(parse_gauss_code("U2-U2-"), ParseError);
}

TEST_CASE("serialization round trip") {
  auto g = parse_gauss_code("U7-O3+U3+O7-");
  CHECK(g.serialize() == "U1-O2+U2+O1-");
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto d = random_realizable(seed, 1 + seed % 9, seed % 12);
    auto back = parse_gauss_code(d.serialize());
    CHECK(back.same_structure(d));
    CHECK(back.serialize() == d.serialize());
  }
}

TEST_CASE("braid closures") {
  auto t = from_braid_word("s1 s1 s1");
  CHECK(t.serialize() == "O1+U2+O3+U1+O2+U3+");
  CHECK(t.shape() == Shape::Long);
  CHECK(from_braid_word("").empty());
  auto fig8 = from_braid_word("s1 -s2 s1 -s2");
  REQUIRE(fig8.size() == 4);
  CHECK(fig8.chord(1).sign == -1);
  CHECK(oracle::conway_c2(fig8) == -1);
  CHECK(oracle::conway_c2(t) == 1);
  CHECK(is_realizable(fig8));

  CHECK_THROWS_AS(from_braid_word("s1 s1"), ValidationError);
  CHECK_THROWS_AS(from_braid_word("s1 x2"), ParseError);
  CHECK_THROWS_AS(from_braid_word("s0"), ParseError);

  auto w = parse_braid_word("s2 -s1 s3 -s2 s3");
  REQUIRE(w.size() == 5);
  auto g = from_braid_word("s2 -s1 s3 -s2 s3");
  CHECK(g.size() == 5);
  for (int c = 0; c < 5; ++c) CHECK(g.chord(c).sign == (w[c] > 0 ? 1 : -1));
}

TEST_CASE("torus knots") {
  for (int n = 3; n <= 15; n += 2) {
    auto g = torus_knot_2(n);
    std::string w;
    for (int i = 0; i < n; ++i) w += "s1 ";
    CHECK(g.same_structure(from_braid_word(w)));
    CHECK(oracle::conway_c2(g) == (n * n - 1) / 8);
  }
  CHECK_THROWS_AS(torus_knot_2(4), ValidationError);
  CHECK_THROWS_AS(torus_knot_2(1), ValidationError);
}

TEST_CASE("planar diagram codes") {
  auto g = parse_pd_code("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]");
  REQUIRE(g.size() == 3);
  CHECK(v2_gauss(g) == 1);
  CHECK(oracle::conway_c2(g) == 1);
  CHECK(is_realizable(g));
  for (const auto& c : g.chords()) CHECK(c.sign == -1);

  // Figure-eight from the knot tables.
  auto f = parse_pd_code("X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]");
  CHECK(f.size() == 4);
  CHECK(is_realizable(f));
  CHECK(v2_gauss(f) == -1);

  CHECK(parse_pd_code("").empty());
  CHECK_THROWS_AS(parse_pd_code("X[1,4,2,5] X[1,6,4,1] X[5,2,6,3]"), ValidationError);
  CHECK_THROWS_AS(parse_pd_code("X[1,2,3]"), ParseError);
  CHECK_THROWS_AS(parse_pd_code("X[1,2,3,4"), ParseError);
  // Hopf link.
  CHECK_THROWS_AS(parse_pd_code("X[4,1,3,2] X[2,3,1,4]"), ValidationError);
  // One-crossing kink.
  auto k = parse_pd_code("X[1,2,2,1]");
  CHECK(k.size() == 1);
}

TEST_CASE("mirror image") {
  auto t = from_braid_word("s1 s1 s1");
  auto m = t.mirrored();
  CHECK(m.serialize() == "U1-O2-U3-O1-U2-O3-");
  CHECK(v2_gauss(m) == 1);
  CHECK(oracle::conway_c2(m) == 1);
}
