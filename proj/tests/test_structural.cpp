#include "doctest.h"

#include "structural_suite.hpp"

TEST_SUITE("structural") {
  TEST_CASE("seeded structures, mutants and random posets") {
    const auto s = structural::run(120);
    for (const auto& f : s.failures) INFO(f);
    CHECK(s.failures.empty());
    CHECK(s.structures_ok == 120);
    CHECK(s.mutations_rejected == s.mutations);
    CHECK(s.mutations >= 480);
    CHECK(s.posets_agree == s.posets);
  }

  TEST_CASE("the poset oracle sees both verdicts") {
    structural::Summary s;
    std::size_t lattices = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) lattices += structural::random_poset(seed, s);
    CHECK(s.posets_agree == 200);
    CHECK(lattices > 10);
    CHECK(lattices < 190);
  }
}
