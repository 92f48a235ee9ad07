#include "doctest.h"

#include "unaware/lattice.hpp"

using namespace unaware;

namespace {

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs)
    if (v.code == code) return true;
  return false;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("powerset of three items") {
    const auto l = powerset_lattice("abc");
    CHECK(l.size() == 8);
    CHECK(l.name(l.top()) == "abc");
    CHECK(l.name(l.bottom()) == "0");
    CHECK(l.join(l.level("ab"), l.level("bc")) == l.level("abc"));
    CHECK(l.meet(l.level("ab"), l.level("bc")) == l.level("b"));
    CHECK_FALSE(l.comparable(l.level("ab"), l.level("c")));
    CHECK(l.height() == 3);
    CHECK(l.covering_pairs().size() == 12);
    CHECK(l.covers(l.level("abc"), l.level("ab")));
    CHECK_FALSE(l.covers(l.level("abc"), l.level("a")));
    CHECK(l.down_set(l.level("ab")).size() == 4);
    CHECK(l.strictly_below(l.level("ab")).size() == 3);
    CHECK(l.up_set(l.level("a")).size() == 4);
  }

  TEST_CASE("chain") {
    const auto l = chain_lattice({"lo", "mid", "hi"});
    CHECK(l.less(l.level("lo"), l.level("hi")));
    CHECK(l.join(l.level("lo"), l.level("mid")) == l.level("mid"));
    CHECK(l.height() == 2);
    const auto sub = l.sublattice(l.level("mid"));
    CHECK(sub.size() == 2);
    CHECK(sub.name(sub.top()) == "mid");
  }

  TEST_CASE("single level") {
    const auto l = make_lattice({{"only"}, {}});
    CHECK(l.top() == l.bottom());
    CHECK(l.height() == 0);
  }

  TEST_CASE("order is closed transitively") {
    const auto l = make_lattice({{"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}});
    CHECK(l.leq(l.level("a"), l.level("c")));
  }

  TEST_CASE("violations") {
    CHECK(has_code(validate_lattice({{}, {}}).violations, "EmptyLattice"));
    CHECK(has_code(validate_lattice({{"a", "a"}, {}}).violations, "DuplicateLevel"));
    CHECK(has_code(validate_lattice({{"a"}, {{"a", "z"}}}).violations, "UnknownLevel"));
    CHECK(has_code(validate_lattice({{"a", "b"}, {{"a", "b"}, {"b", "a"}}}).violations, "NotAntisymmetric"));
    // two maximal elements: no top, hence no join
    CHECK(has_code(validate_lattice({{"lo", "x", "y"}, {{"lo", "x"}, {"lo", "y"}}}).violations, "NotALattice"));
    // bowtie: x, y both below p and q, no least upper bound
    CHECK(has_code(validate_lattice({{"lo", "x", "y", "p", "q", "hi"},
                                     {{"lo", "x"}, {"lo", "y"}, {"x", "p"}, {"y", "p"}, {"x", "q"}, {"y", "q"},
                                      {"p", "hi"}, {"q", "hi"}}})
                       .violations,
                   "NotALattice"));
    CHECK_THROWS_AS(make_lattice({{"a", "b"}, {}}), ValidationError);
  }

  TEST_CASE("unknown level lookup") {
    const auto l = chain_lattice({"lo", "hi"});
    CHECK_FALSE(l.find("mid"));
    CHECK_THROWS_AS(l.level("mid"), Error);
  }

  TEST_CASE("join and meet laws on every pair") {
    for (const auto& l : {powerset_lattice("abc"), chain_lattice({"p", "q", "r", "s"}),
                          make_lattice({{"lo", "l", "r", "hi"}, {{"lo", "l"}, {"lo", "r"}, {"l", "hi"}, {"r", "hi"}}})}) {
      for (Level a = 0; a < l.size(); ++a) {
        CHECK(l.join(a, a) == a);
        CHECK(l.leq(l.bottom(), a));
        CHECK(l.leq(a, l.top()));
        for (Level b = 0; b < l.size(); ++b) {
          const Level j = l.join(a, b);
          const Level m = l.meet(a, b);
          CHECK(j == l.join(b, a));
          CHECK(l.leq(a, j));
          CHECK(l.leq(m, b));
          CHECK(l.join(a, m) == a);  // absorption
          for (Level c = 0; c < l.size(); ++c) {
            if (l.leq(a, c) && l.leq(b, c)) CHECK(l.leq(j, c));
            CHECK(l.join(l.join(a, b), c) == l.join(a, l.join(b, c)));
          }
        }
      }
    }
  }
}
