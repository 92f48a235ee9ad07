#include "doctest.h"

#include "unaware/generator.hpp"
#include "unaware/scenario_io.hpp"
#include "unaware/verifier.hpp"

using namespace unaware;

TEST_SUITE("generator") {
  TEST_CASE("deterministic in the seed") {
    for (auto v : {GeneratorVariant::general, GeneratorVariant::nonnegative, GeneratorVariant::procurement,
                   GeneratorVariant::separable}) {
      CHECK(generate_scenario(9, {v}) == generate_scenario(9, {v}));
      CHECK(serialize_scenario(generate_scenario(9, {v})) != serialize_scenario(generate_scenario(10, {v})));
    }
  }

  TEST_CASE("size caps") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const Scenario sc = generate_scenario(seed);
      CHECK(sc.agent_count() <= 3);
      CHECK(sc.lattice().size() <= 4);
      CHECK(sc.outcomes.size() <= 4);
      for (AgentId i = 0; i < sc.agent_count(); ++i)
        for (Level l = 0; l < sc.lattice().size(); ++l) CHECK(sc.types.space(i, l).size() <= 3);
      REQUIRE(sc.draws.size() == 1);
      CHECK_NOTHROW(sc.types.check_draw(sc.draws.front()));
    }
  }

  TEST_CASE("variants") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      CHECK(check_nonnegative_valuations(generate_scenario(seed, {GeneratorVariant::nonnegative})).holds);
      const Scenario p = generate_scenario(seed, {GeneratorVariant::procurement});
      CHECK(p.scheme.kind == SchemeKind::rspa);
      CHECK(p.scheme.buyer);
      CHECK(find_g(generate_scenario(seed, {GeneratorVariant::separable})).g);
    }
    CHECK(parse_generator_variant("separable") == GeneratorVariant::separable);
    CHECK_THROWS_AS(parse_generator_variant("odd"), Error);
  }

  TEST_CASE("lattices") {
    CHECK(generator_lattice(0).size() == 2);
    CHECK(generator_lattice(1).size() == 3);
    CHECK(generator_lattice(2).size() == 4);
  }
}
