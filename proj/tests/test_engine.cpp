#include "doctest.h"

#include "unaware/elaboration.hpp"
#include "unaware/fixtures.hpp"

using namespace unaware;

namespace {

std::vector<std::string> names(const TypeStructure& ts, AgentId i, const std::vector<TypeId>& ids) {
  std::vector<std::string> out;
  for (TypeId t : ids) out.push_back(ts.type_name(i, t));
  return out;
}

}  // namespace

TEST_SUITE("elaboration_engine") {
  TEST_CASE("example1 truthful transcript") {
    const Scenario sc = load_fixture("example1");
    const ElaborationEngine engine(sc.types);
    const auto t = engine.run_truthful(sc.draws.front(), sc.lattice().top());
    REQUIRE(t.stopped);
    REQUIRE(t.stage_count() == 3);
    CHECK(sc.types.describe(t.stages[0]) == "(t1, t2, b_0)");
    CHECK(sc.types.describe(t.stages[1]) == "(t1', t2', b_abc)");
    CHECK(t.stages[2] == t.stages[1]);
    CHECK(t.pooled[0] == sc.lattice().top());
  }

  TEST_CASE("partial game restricts perception") {
    const Scenario sc = load_fixture("example1");
    const ElaborationEngine engine(sc.types);
    const auto t = engine.run_truthful(sc.draws.front(), sc.lattice().level("ab"));
    REQUIRE(t.stage_count() == 3);
    CHECK(sc.types.describe(t.stages[0]) == "(t1, s2_b38, b_0)");
    CHECK(sc.types.describe(t.final_profile()) == "(t1, s2_a19b38, b_ab)");
    CHECK(t.final_pooled() == sc.lattice().level("ab"));
  }

  TEST_CASE("feasible sets") {
    const Scenario sc = load_fixture("example1");
    const auto& ts = sc.types;
    const auto& l = sc.lattice();
    // stage 1: every type at a level below awareness
    CHECK(feasible_set(ts, 0, std::nullopt, l.bottom(), l.level("ab")).size() == 4);
    // later: elaborations of the previous report between the pooled level and awareness
    const auto later = feasible_set(ts, 0, ts.type(0, "s1_a23"), l.level("ac"), l.top());
    CHECK(names(ts, 0, later) == std::vector<std::string>{"s1_a23c16", "s1_a23c15", "t1'", "t1''"});
    const auto stuck = feasible_set(ts, 0, ts.type(0, "s1_a23"), l.level("ac"), l.level("ab"));
    CHECK(stuck.empty());
    // the previous report itself stays feasible when the pool has not moved past it
    const auto stay = feasible_set(ts, 0, ts.type(0, "t1"), l.level("ab"), l.level("ab"));
    CHECK(names(ts, 0, stay) == std::vector<std::string>{"t1"});
  }

  TEST_CASE("advance rejects infeasible reports") {
    const Scenario sc = load_fixture("example2");
    const auto& ts = sc.types;
    const ElaborationEngine engine(ts);
    auto st = engine.start(sc.draws.front(), sc.lattice().top());
    // bidder 2 is unaware of top
    CHECK_THROWS_AS(engine.advance(st, {ts.type(0, "t1''''"), ts.type(1, "t2''''")}), InfeasibleReport);
    engine.advance(st, {ts.type(0, "t1''''"), ts.type(1, "t2'")});
    CHECK(st.info[1].perceived == ts.type(1, "t2''''"));
    // bidder 1 may not revise t1'''' to an unrelated type
    CHECK_THROWS_AS(engine.advance(st, {ts.type(0, "t1'''"), ts.type(1, "t2''''")}), InfeasibleReport);
  }

  TEST_CASE("concealment script") {
    const Scenario sc = load_fixture("example2");
    const auto& ts = sc.types;
    const ElaborationEngine engine(ts);
    auto strategies = truthful_strategies(2);
    strategies[0] = scripted_strategy({ts.type(0, "t1''"), ts.type(0, "t1''")});
    const auto t = engine.run(sc.draws.front(), sc.lattice().top(), strategies);
    REQUIRE(t.stage_count() == 2);
    CHECK(t.final_pooled() == sc.lattice().bottom());
    CHECK(ts.describe(t.final_profile()) == "(t1'', t2')");
    CHECK_NOTHROW(engine.replay(sc.draws.front(), sc.lattice().top(), t));
  }

  TEST_CASE("static play is one stage") {
    const Scenario sc = load_fixture("example2");
    const ElaborationEngine engine(sc.types);
    const auto t = engine.run_static(sc.draws.front(), sc.lattice().top());
    CHECK(t.stage_count() == 1);
    CHECK(t.stopped);
  }

  TEST_CASE("deviation plays") {
    const Scenario sc = load_fixture("example2");
    const ElaborationEngine engine(sc.types);
    const auto st = engine.start(sc.draws.front(), sc.lattice().top());
    const auto plays = engine.enumerate_deviation_plays(0, st, truthful_strategies(2));
    CHECK(plays.size() >= 4);
    for (const auto& p : plays) {
      CHECK(p.stopped);
      CHECK_NOTHROW(engine.replay(sc.draws.front(), sc.lattice().top(), p));
    }
    CHECK_THROWS_AS(engine.enumerate_deviation_plays(0, st, truthful_strategies(2), 1), StrategySpaceTooLarge);
  }

  TEST_CASE("replay catches tampering") {
    const Scenario sc = load_fixture("example1");
    const ElaborationEngine engine(sc.types);
    auto t = engine.run_truthful(sc.draws.front(), sc.lattice().top());
    t.stages[0][1] = sc.types.type(1, "t2'");  // seller2 is only aware of bc
    CHECK_THROWS_AS(engine.replay(sc.draws.front(), sc.lattice().top(), t), InfeasibleReport);
  }
}
