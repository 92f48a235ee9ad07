#include "doctest.h"

#include "unaware/fixtures.hpp"
#include "unaware/type_structure.hpp"

using namespace unaware;

namespace {

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs)
    if (v.code == code) return true;
  return false;
}

// One agent on lo < hi with two fine types over one coarse type.
TypeStructureSpec two_level_spec() {
  TypeStructureSpec s;
  s.agents = {"a"};
  s.types = {{{"x", "lo"}, {"x1", "hi"}, {"x2", "hi"}}};
  s.projections = {{{"x1", "x"}, {"x2", "x"}}};
  return s;
}

}  // namespace

TEST_SUITE("type_structure") {
  TEST_CASE("example1 projections") {
    const Scenario sc = load_fixture("example1");
    const auto& ts = sc.types;
    const auto& l = sc.lattice();
    const AgentId s1 = ts.agent("seller1");
    const TypeId t1p = ts.type(s1, "t1'");
    CHECK(ts.level_of(s1, t1p) == l.top());
    CHECK(ts.type_name(s1, ts.project(s1, t1p, l.level("ab"))) == "t1");
    CHECK(ts.type_name(s1, ts.project(s1, t1p, l.level("c"))) == "s1_c16");
    CHECK(ts.type_name(s1, ts.project(s1, t1p, l.bottom())) == "s1_0");
    CHECK(ts.project(s1, t1p, l.top()) == t1p);
    CHECK(ts.elaborates(s1, t1p, ts.type(s1, "t1")));
    CHECK_FALSE(ts.elaborates(s1, t1p, ts.type(s1, "s1_c15")));
    CHECK(ts.upset(s1, ts.type(s1, "t1")).size() == 3);
    CHECK_THROWS_AS(ts.project(s1, ts.type(s1, "t1"), l.level("c")), Error);
  }

  TEST_CASE("perceived type is the projection to awareness meet partial") {
    const Scenario sc = load_fixture("example1");
    const auto& ts = sc.types;
    const auto& l = sc.lattice();
    const auto& draw = sc.draws.front();
    auto [t, lvl] = ts.perceived_type(ts.agent("seller1"), draw, l.top());
    CHECK(ts.type_name(0, t) == "t1");
    CHECK(lvl == l.level("ab"));
    auto [u, ulvl] = ts.perceived_type(ts.agent("seller1"), draw, l.level("bc"));
    CHECK(ts.type_name(0, u) == "s1_b41");
    CHECK(ulvl == l.level("b"));
  }

  TEST_CASE("profiles and pooled level") {
    const Scenario sc = load_fixture("example1");
    const auto& ts = sc.types;
    const auto& l = sc.lattice();
    CHECK(ts.profile_count(l.top()) == 2);
    CHECK(ts.profile_count(l.level("c")) == 2);
    const Profile p{ts.type(0, "t1"), ts.type(1, "t2"), ts.type(2, "b_0")};
    CHECK(ts.pooled_level(p) == l.top());
    const Profile top{ts.type(0, "t1'"), ts.type(1, "t2'"), ts.type(2, "b_abc")};
    CHECK(ts.describe(ts.project_profile(top, l.level("a"))) == "(s1_a23, s2_a19, b_a)");
    CHECK(ts.types_below(0, l.level("ab")).size() == 4);
  }

  TEST_CASE("valid two-level structure") {
    const auto l = chain_lattice({"lo", "hi"});
    const auto v = validate_structure(l, two_level_spec());
    REQUIRE(v.ok());
    CHECK(v.get().space(0, l.top()).size() == 2);
  }

  TEST_CASE("missing projection edge is named") {
    const auto l = chain_lattice({"lo", "hi"});
    auto s = two_level_spec();
    s.projections[0].pop_back();
    const auto v = validate_structure(l, s);
    REQUIRE_FALSE(v.ok());
    REQUIRE(has_code(v.violations, "MissingProjection"));
    bool named = false;
    for (const auto& viol : v.violations)
      named = named || (viol.message.find("'a'") != std::string::npos && viol.message.find("hi") != std::string::npos &&
                        viol.message.find("lo") != std::string::npos);
    CHECK(named);
  }

  TEST_CASE("structural violations") {
    const auto l = chain_lattice({"lo", "hi"});
    {
      auto s = two_level_spec();
      s.types[0].push_back({"y", "lo"});  // nothing projects onto y
      CHECK(has_code(validate_structure(l, s).violations, "NotSurjective"));
    }
    {
      auto s = two_level_spec();
      s.types[0].push_back({"x", "hi"});
      CHECK(has_code(validate_structure(l, s).violations, "DuplicateType"));
    }
    {
      auto s = two_level_spec();
      s.types[0] = {{"x1", "hi"}, {"x2", "hi"}};
      s.projections[0].clear();
      CHECK(has_code(validate_structure(l, s).violations, "EmptySpace"));
    }
    {
      auto s = two_level_spec();
      s.projections[0][0] = {"x1", "x2"};  // same level
      CHECK(has_code(validate_structure(l, s).violations, "BadProjection"));
    }
    {
      auto s = two_level_spec();
      s.types[0][0].second = "middle";
      CHECK(has_code(validate_structure(l, s).violations, "UnknownLevel"));
    }
  }

  TEST_CASE("composition failure on a chain") {
    const auto l = chain_lattice({"lo", "mid", "hi"});
    TypeStructureSpec s;
    s.agents = {"a"};
    s.types = {{{"p", "lo"}, {"q", "lo"}, {"m", "mid"}, {"m2", "mid"}, {"h", "hi"}, {"h2", "hi"}}};
    // h -> m -> p but the long edge says h -> q
    s.projections = {{{"m", "p"}, {"m2", "q"}, {"h", "m"}, {"h2", "m2"}, {"h", "q"}}};
    CHECK(has_code(validate_structure(l, s).violations, "CompositionFailure"));
  }

  TEST_CASE("diamond composition needs both paths to agree") {
    const auto l = make_lattice({{"lo", "l", "r", "hi"}, {{"lo", "l"}, {"lo", "r"}, {"l", "hi"}, {"r", "hi"}}});
    TypeStructureSpec s;
    s.agents = {"a"};
    s.types = {{{"p", "lo"}, {"q", "lo"}, {"lp", "l"}, {"lq", "l"}, {"rp", "r"}, {"rq", "r"}, {"h", "hi"}, {"g", "hi"}}};
    s.projections = {{{"lp", "p"}, {"lq", "q"}, {"rp", "p"}, {"rq", "q"}, {"h", "lp"}, {"h", "rq"}, {"g", "lq"}, {"g", "rp"}}};
    CHECK(has_code(validate_structure(l, s).violations, "CompositionFailure"));
    s.projections = {{{"lp", "p"}, {"lq", "q"}, {"rp", "p"}, {"rq", "q"}, {"h", "lp"}, {"h", "rp"}, {"g", "lq"}, {"g", "rq"}}};
    CHECK(validate_structure(l, s).ok());
  }

  TEST_CASE("draw checks") {
    const Scenario sc = load_fixture("example2");
    NatureDraw bad = sc.draws.front();
    bad.true_types[0] = sc.types.type(0, "t1'");  // not a top-level type
    CHECK_THROWS_AS(sc.types.check_draw(bad), ValidationError);
    bad = sc.draws.front();
    bad.awareness.pop_back();
    CHECK_THROWS_AS(sc.types.check_draw(bad), ValidationError);
  }
}
