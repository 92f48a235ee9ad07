#include "unaware/verifier.hpp"

#include <set>

#include "game.hpp"

namespace unaware {

using detail::Game;
using detail::Node;
using detail::Recipient;
using detail::Root;

std::string to_string(BudgetMode mode) { return mode == BudgetMode::balance ? "balance" : "no_deficit"; }

std::string to_string(ParticipationMode mode) {
  return mode == ParticipationMode::ex_post ? "ex_post" : "ex_ante_anticipated";
}

namespace {

void add_witness(VerificationResult& r, const VerifierOptions& options, Witness w) {
  r.holds = false;
  if (r.witnesses.size() < options.max_witnesses) r.witnesses.push_back(std::move(w));
}

std::string profile_text(const TypeStructure& ts, const Profile& p) { return ts.describe(p); }

Transcript run_root(const Mechanism& mech, const NatureDraw& draw) {
  ElaborationEngine engine(mech.scenario().types);
  const Level top = mech.scenario().lattice().top();
  if (mech.scheme().kind == SchemeKind::static_vickrey) return engine.run_static(draw, top);
  return engine.run_truthful(draw, top);
}

// Replays a transcript under the draw and returns agent i's utility at `eval`.
Rational replay_utility(const Mechanism& mech, const NatureDraw& draw, const Transcript& t, AgentId i, TypeId eval) {
  ElaborationEngine engine(mech.scenario().types);
  PlayState state = engine.replay(draw, mech.scenario().lattice().top(), t);
  if (mech.scheme().kind == SchemeKind::static_vickrey) state.transcript.stopped = true;
  if (!state.transcript.stopped) throw Error("WitnessReplayMismatch", "witness play does not stop");
  return mech.utility(i, eval, mech.transfers(state.transcript));
}

Transcript make_transcript(const TypeStructure& ts, std::vector<Profile> stages, bool one_shot) {
  Transcript t;
  t.stages = std::move(stages);
  for (const auto& p : t.stages) t.pooled.push_back(ts.pooled_level(p));
  t.stopped = one_shot || (t.stages.size() >= 2 && t.stages.back() == t.stages[t.stages.size() - 2]);
  return t;
}

}  // namespace

VerificationResult check_efficiency(const Scenario& scenario, const OutcomeRule& rule, const VerifierOptions& options) {
  VerificationResult r;
  r.property = "efficiency";
  const auto& om = scenario.outcomes;
  const auto& ts = scenario.types;
  for (Level l = 0; l < scenario.lattice().size(); ++l) {
    ts.for_each_profile(l, [&](const Profile& t) {
      const Outcome chosen = rule ? rule(t, l) : om.efficient_outcome(t, l);
      const Rational w = om.welfare(chosen, t);
      ++r.checked;
      std::optional<Outcome> better;
      Rational best = w;
      for (Outcome x : om.available(l)) {
        const Rational wx = om.welfare(x, t);
        if (wx > best) {
          best = wx;
          better = x;
        }
      }
      if (!om.is_available(chosen, l) || better) {
        Witness wit;
        wit.description = "at '" + scenario.lattice().name(l) + "' profile " + profile_text(ts, t) + " the rule picks '" +
                          om.name(chosen) + "'" +
                          (better ? " but '" + om.name(*better) + "' has higher welfare" : " which is unavailable");
        wit.history = {t};
        wit.play_value = w;
        wit.reference_value = best;
        wit.gap = best - w;
        add_witness(r, options, std::move(wit));
      }
    });
  }
  return r;
}

VerificationResult check_pooled_implementation(const Mechanism& mech, const VerifierOptions& options) {
  VerificationResult r;
  r.property = "pooled_implementation";
  const Scenario& sc = mech.scenario();
  const auto& ts = sc.types;
  const auto& om = sc.outcomes;
  const auto lift = detail::lift_table(ts);
  detail::for_each_root(ts, [&](const Root& root) {
    const NatureDraw draw = detail::root_draw(root, lift);
    const Transcript tr = run_root(mech, draw);
    const Outcome got = mech.transfers(tr).outcome;
    const Outcome want = mech.outcome(root.types);
    ++r.checked;
    if (got != want) {
      Witness w;
      w.description = "implemented '" + om.name(got) + "' but the pooled-level target is '" + om.name(want) + "'";
      w.draw = draw;
      w.partial = sc.lattice().top();
      w.play = tr;
      w.play_value = om.welfare(got, root.types);
      w.reference_value = om.welfare(want, root.types);
      w.gap = w.reference_value - w.play_value;
      add_witness(r, options, std::move(w));
    }
  });
  return r;
}

VerificationResult check_conditional_dominance(const Mechanism& mech, const VerifierOptions& options) {
  VerificationResult r;
  r.property = options.opponents == OpponentModel::truthful ? "conditional_dominance_truthful_opponents"
                                                             : "conditional_dominance";
  const Scenario& sc = mech.scenario();
  const auto& ts = sc.types;
  const bool one_shot = mech.scheme().kind == SchemeKind::static_vickrey;
  const auto lift = detail::lift_table(ts);
  detail::SettlementCache cache(mech);
  std::size_t explored = 0;

  detail::for_each_root(ts, [&](const Root& root) {
    Game game(mech, root, cache, explored, options.bound, options.opponents == OpponentModel::truthful);
    for (AgentId i = 0; i < ts.agent_count(); ++i) {
      if (mech.scheme().kind == SchemeKind::rspa && !mech.is_seller(i)) continue;
      const TypeId eval = root.types[i];
      std::set<Node> visited;
      std::vector<Profile> path;
      std::function<void(const Node&)> visit = [&](const Node& s) {
        if (!visited.insert(s).second) return;
        if (game.aware(i, s) == root.joined) {
          ++r.checked;
          const TypeId truthful = game.truth(i, s);
          std::optional<Rational> worst_gap;
          Profile dev_q, ref_q;
          game.for_each_move(i, s, false, [&](const Profile& q_truth) {
                const Rational keep = game.move_value(i, eval, s, q_truth, false);
                for (TypeId dev : game.feasible(i, s)) {
                  if (dev == truthful) continue;
                  Profile q = q_truth;
                  q[i] = dev;
                  Rational g = game.move_value(i, eval, s, q, true) - keep;
                  if (!worst_gap || g > *worst_gap) {
                    worst_gap = std::move(g);
                    dev_q = q;
                    ref_q = q_truth;
                  }
                }
              });
          if (worst_gap && *worst_gap > 0) {
            auto build = [&](const Profile& q, bool maximize) {
              std::vector<Profile> stages = path;
              stages.push_back(q);
              if (!game.ends(s, q)) {
                for (auto& p : game.continuation(i, eval, game.child(s, q), maximize)) stages.push_back(p);
              }
              return make_transcript(ts, std::move(stages), one_shot);
            };
            Witness w;
            w.agent = i;
            w.draw = detail::root_draw(root, lift);
            w.partial = sc.lattice().top();
            w.history = path;
            w.play = build(dev_q, true);
            w.reference = build(ref_q, false);
            w.play_value = replay_utility(mech, *w.draw, *w.play, i, eval);
            w.reference_value = replay_utility(mech, *w.draw, *w.reference, i, eval);
            w.gap = w.play_value - w.reference_value;
            if (w.gap != *worst_gap) throw Error("WitnessReplayMismatch", "dominance gap does not replay");
            w.description = "agent '" + ts.agent_name(i) + "' gains " + to_string(w.gap) + " by reporting '" +
                            ts.type_name(i, dev_q[i]) + "' instead of '" + ts.type_name(i, truthful) +
                            "' at stage " + std::to_string(path.size() + 1);
            add_witness(r, options, std::move(w));
          }
        }
        if (one_shot && !s.initial()) return;
        game.for_each_move(i, s, false, [&](const Profile& q) {
          if (game.ends(s, q)) return;
          path.push_back(q);
          visit(game.child(s, q));
          path.pop_back();
        });
      };
      visit(Node{});
    }
  });
  return r;
}

VerificationResult check_stage_bound(const Scenario& scenario, const VerifierOptions& options) {
  VerificationResult r;
  r.property = "stage_bound";
  const auto& ts = scenario.types;
  ElaborationEngine engine(ts);
  const auto lift = detail::lift_table(ts);
  detail::for_each_root(ts, [&](const Root& root) {
    const NatureDraw draw = detail::root_draw(root, lift);
    const Transcript tr = engine.run_truthful(draw, scenario.lattice().top());
    ++r.checked;
    if (tr.stage_count() > 3) {
      Witness w;
      w.description = "truth-telling stops after " + std::to_string(tr.stage_count()) + " stages";
      w.draw = draw;
      w.partial = scenario.lattice().top();
      w.play = tr;
      w.play_value = static_cast<long>(tr.stage_count());
      w.reference_value = 3;
      w.gap = w.play_value - w.reference_value;
      add_witness(r, options, std::move(w));
    }
  });
  return r;
}

VerificationResult check_budget(const Mechanism& mech, BudgetMode mode, const VerifierOptions& options) {
  VerificationResult r;
  r.property = "budget_" + to_string(mode);
  const Scenario& sc = mech.scenario();
  const auto& ts = sc.types;
  const Level top = sc.lattice().top();
  const bool one_shot = mech.scheme().kind == SchemeKind::static_vickrey;

  // Everyone fully aware: the largest set of feasible transcripts.
  Root root;
  root.aware.assign(ts.agent_count(), top);
  root.joined = top;
  for (AgentId i = 0; i < ts.agent_count(); ++i) root.types.push_back(ts.space(i, top).front());
  detail::SettlementCache cache(mech);
  std::size_t explored = 0;
  Game game(mech, root, cache, explored, options.bound);

  std::set<Node> visited;
  std::set<std::pair<Profile, std::size_t>> leaves;
  std::vector<Profile> path;
  std::function<void(const Node&)> visit = [&](const Node& s) {
    if (!visited.insert(s).second) return;
    if (++explored > options.bound) {
      throw StrategySpaceTooLarge("more than " + std::to_string(options.bound) + " game states");
    }
    game.for_each_move(s, [&](const Profile& q) {
      path.push_back(q);
      if (game.ends(s, q)) {
        auto leaf = game.terminal(s, q);
        if (leaves.insert(leaf).second) {
          ++r.checked;
          const TransferReport& rep = game.settle(leaf.first, leaf.second);
          Rational total = 0;
          for (const auto& f : rep.transfers) total += f;
          const bool ok = mode == BudgetMode::balance ? total == 0 : total <= 0;
          if (!ok) {
            Witness w;
            w.play = make_transcript(ts, path, one_shot);
            NatureDraw d;
            d.name = "all-aware";
            d.true_types = root.types;
            d.awareness = root.aware;
            const Transcript replayed = [&] {
              ElaborationEngine engine(ts);
              PlayState st = engine.replay(d, top, *w.play);
              if (one_shot) st.transcript.stopped = true;
              return st.transcript;
            }();
            Rational check = 0;
            for (const auto& f : mech.transfers(replayed).transfers) check += f;
            if (check != total) throw Error("WitnessReplayMismatch", "budget total does not replay");
            w.draw = d;
            w.partial = top;
            w.play_value = total;
            w.reference_value = 0;
            w.gap = total;
            w.description = "transfers sum to " + to_string(total) + " at final profile " +
                            profile_text(ts, leaf.first);
            add_witness(r, options, std::move(w));
          }
        }
      } else {
        visit(game.child(s, q));
      }
      path.pop_back();
    });
  };
  visit(Node{});
  return r;
}

VerificationResult check_participation(const Mechanism& mech, ParticipationMode mode, const VerifierOptions& options) {
  VerificationResult r;
  r.property = "participation_" + to_string(mode);
  const Scenario& sc = mech.scenario();
  const auto& ts = sc.types;
  const auto& lattice = sc.lattice();
  const auto lift = detail::lift_table(ts);
  detail::for_each_root(ts, [&](const Root& root) {
    const NatureDraw draw = detail::root_draw(root, lift);
    const Transcript tr = run_root(mech, draw);
    const TransferReport rep = mech.transfers(tr);
    for (AgentId i = 0; i < ts.agent_count(); ++i) {
      if (mode == ParticipationMode::ex_ante_anticipated && root.aware[i] != root.joined) continue;
      if (mech.scheme().kind == SchemeKind::rspa && !mech.is_seller(i)) continue;
      // Only information sets where the agent's awareness has reached the
      // join: the draws she then anticipates are exactly this root.
      std::optional<std::pair<std::size_t, Rational>> found;
      const std::size_t stages = mode == ParticipationMode::ex_post ? tr.stage_count() : 1;
      for (std::size_t k = 0; k < stages && !found; ++k) {
        const Level aw = k == 0 ? root.aware[i] : lattice.join(root.aware[i], tr.pooled[k - 1]);
        if (aw != root.joined) continue;
        const Rational u = mech.utility(i, root.types[i], rep);
        ++r.checked;
        if (u < 0) found = std::make_pair(k, u);
      }
      if (found) {
        Witness w;
        const std::size_t k = found->first;
        w.agent = i;
        w.draw = draw;
        w.partial = lattice.top();
        w.history.assign(tr.stages.begin(), tr.stages.begin() + static_cast<std::ptrdiff_t>(k));
        w.play = tr;
        w.play_value = found->second;
        w.reference_value = 0;
        w.gap = found->second;
        w.description = "agent '" + ts.agent_name(i) + "' expects " + to_string(found->second) + " at stage " +
                        std::to_string(k + 1) + (k == 0 ? " (initial)" : " (interim)");
        add_witness(r, options, std::move(w));
      }
    }
  });
  return r;
}

VerificationResult check_nonnegative_valuations(const Scenario& scenario, const VerifierOptions& options) {
  VerificationResult r;
  r.property = "nonnegative_valuations";
  const auto& ts = scenario.types;
  const auto& om = scenario.outcomes;
  const auto& lattice = scenario.lattice();
  for (AgentId i = 0; i < ts.agent_count(); ++i) {
    for (TypeId t = 0; t < ts.type_count(i); ++t) {
      std::set<Outcome> relevant;
      for (Level l : lattice.down_set(ts.level_of(i, t)))
        for (Outcome x : om.available(l)) relevant.insert(x);
      for (Outcome x : relevant) {
        ++r.checked;
        const Rational& v = om.value(i, t, x);
        if (v < 0) {
          Witness w;
          w.agent = i;
          w.description = "v_" + ts.agent_name(i) + "('" + om.name(x) + "', " + ts.type_name(i, t) + ") = " +
                          to_string(v);
          w.play_value = v;
          w.gap = v;
          add_witness(r, options, std::move(w));
        }
      }
    }
  }
  return r;
}

}  // namespace unaware
