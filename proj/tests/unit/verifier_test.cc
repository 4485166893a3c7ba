// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/verifier.h"

#include <functional>
#include <random>

#include "ddab/corpus.h"
#include "ddab/errors.h"
#include "doctest.h"
#include "test_util.h"

namespace ddab {
namespace {

using testing::Chain;
using testing::Shared;

TEST_CASE("gadget construction") {
  const Environment e = BuildGadget({5, 1, 2, -1, false});
  CHECK(e.num_nodes() == 9);
  CHECK(e.PathDistance(e.graph().Index("q3")) == 4);
  const Environment ring = BuildGadget({7, 2, 3, -1, true});
  CHECK(ring.report().shortest_path_ok);
  CHECK(ring.graph().Find("o").has_value());
  CHECK_THROWS_AS(BuildGadget({5, 1, 0, -1, false}), InputError);
  CHECK_THROWS_AS(BuildGadget({5, 1, 4, -1, false}), InputError);
  CHECK_THROWS_AS(BuildGadget({5, -1, 2, -1, false}), InputError);
}

TEST_CASE("sufficiency at the bound") {
  SUBCASE("gadget") {
    const Environment e = BuildGadget({5, 1, 2, -1, false});
    const auto r = VerifySufficiency(e, 1, Rational(3));
    CHECK(r.verdict == Verdict::kSafeClosed);
    CHECK(r.explored_states > 0);
  }
  SUBCASE("bare path") {
    CHECK(VerifySufficiency(Chain(6), 0, Rational(6)).verdict == Verdict::kSafeClosed);
  }
  SUBCASE("concrete and abstract agree") {
    const Environment e = BuildGadget({7, 1, 3, -1, true});
    const auto abs = VerifySufficiency(e, 1, Rational(6));
    const auto con = VerifySufficiency(e, 1, Rational(6), {false, 5'000'000, PolicyMutation::kNone});
    CHECK(abs.verdict == Verdict::kSafeClosed);
    CHECK(con.verdict == Verdict::kSafeClosed);
  }
}

TEST_CASE("below the bound a breach is found and replays to the same step") {
  const auto env = Shared(BuildGadget({5, 1, 2, -1, false}));
  const auto r = VerifySufficiency(*env, 1, Rational(2));
  REQUIRE(r.verdict == Verdict::kBreachFound);
  REQUIRE(r.breach.has_value());
  const auto out = RunGame(BreachReplayConfig(env, 1, Rational(2), *r.breach));
  CHECK(out.result == GameResult::kAttackerWin);
  CHECK(out.win_step == r.breach->win_step);
  CHECK(out.witness == r.breach->target);
}

TEST_CASE("mutated policies are caught") {
  const Environment e = Chain(5, {"u", "w", "z"}, {{"u", "p5"}, {"w", "u"}, {"z", "w"}});
  CHECK(VerifySufficiency(e, 1, Rational(3)).verdict == Verdict::kSafeClosed);
  for (auto m : {PolicyMutation::kFrozenPlatoons, PolicyMutation::kIgnoreNegatives}) {
    const auto r = VerifySufficiency(e, 1, Rational(3), {true, 5'000'000, m});
    CHECK(r.verdict == Verdict::kBreachFound);
  }
}

TEST_CASE("state budget") {
  const Environment e = BuildGadget({9, 1, 4, -1, true});
  CHECK_THROWS_AS(VerifySufficiency(e, 1, Rational(6), {false, 3, PolicyMutation::kNone}), BudgetExceededError);
}

// Every deployment of counts 0..3 per node, smallest total whose window audit
// is clean.
long BruteMinimum(int n, int k) {
  long best = -1;
  std::vector<long> units(static_cast<std::size_t>(n));
  std::function<void(int, long)> rec = [&](int i, long total) {
    if (best >= 0 && total >= best) return;
    if (i == n) {
      if (NecessaryWindowAudit(n, k, units).empty()) best = total;
      return;
    }
    for (long c = 0; c <= 3; ++c) {
      units[static_cast<std::size_t>(i)] = c;
      rec(i + 1, total + c);
    }
    units[static_cast<std::size_t>(i)] = 0;
  };
  rec(0, 0);
  return best;
}

TEST_CASE("covering minimum agrees with brute force and the bound") {
  for (int n = 3; n <= 8; ++n) {
    for (int k = 0; k <= 3; ++k) CHECK(MinimumCoveringDeployment(n, k) == BruteMinimum(n, k));
  }
  for (int n = 3; n <= 30; ++n) {
    for (int k = 0; k <= 3; ++k) {
      INFO("n = " << n << ", k = " << k);
      CHECK(MinimumCoveringDeployment(n, k) == RequiredUnits(n, k));
    }
  }
  CHECK(MinimumCoveringDeployment(23, 1) == 15);
  CHECK(MinimumCoveringDeployment(2, 0) == 2);
  CHECK_THROWS_AS(MinimumCoveringDeployment(0, 1), InputError);
}

TEST_CASE("window audit") {
  // Platoon at the center of a 5-node partition with k = 1.
  CHECK(NecessaryWindowAudit(5, 1, {0, 1, 1, 1, 0}).empty());
  const auto bad = NecessaryWindowAudit(5, 1, {0, 1, 0, 1, 0});
  REQUIRE_FALSE(bad.empty());
  CHECK(bad[0].kind == WindowViolation::Kind::kTriple);
  const auto gap = NecessaryWindowAudit(7, 0, {1, 1, 1, 0, 1, 1, 1});
  REQUIRE_FALSE(gap.empty());
  CHECK(gap[0].kind == WindowViolation::Kind::kUnreachable);
  CHECK(gap[0].index == 3);
}

TEST_CASE("three-window coverage matches subset enumeration") {
  const Environment e = BuildGadget({6, 1, 2, -1, false});
  const int n = e.path_length();
  // Oracle: some three distinct units, one per target, each within k hops.
  auto oracle = [&](const std::vector<int>& units, int alpha, int k) {
    std::vector<int> at;
    for (int i = 0; i < n; ++i) {
      for (int c = 0; c < units[static_cast<std::size_t>(i)]; ++c) at.push_back(i);
    }
    const int m = static_cast<int>(at.size());
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        for (int c = 0; c < m; ++c) {
          if (a == b || b == c || a == c) continue;
          if (std::abs(at[a] - (alpha - 1)) <= k && std::abs(at[b] - alpha) <= k &&
              std::abs(at[c] - (alpha + 1)) <= k) {
            return true;
          }
        }
      }
    }
    return false;
  };
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> units(static_cast<std::size_t>(n));
    int total = 0;
    for (auto& u : units) {
      u = total < 8 ? static_cast<int>(rng() % 3) : 0;
      total += u;
    }
    std::vector<Rational> x(static_cast<std::size_t>(e.num_nodes()));
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(e.path().at(i))] = Rational(units[static_cast<std::size_t>(i)]);
    const AssetDistribution dep(x);
    for (int k = 0; k <= 2; ++k) {
      for (int alpha = 1; alpha <= n - 2; ++alpha) CHECK(ThreeWindowCoverage(e, k, dep, alpha) == oracle(units, alpha, k));
    }
  }
  std::vector<Rational> off(static_cast<std::size_t>(e.num_nodes()));
  off[static_cast<std::size_t>(e.graph().Index("xi"))] = 1;
  CHECK_THROWS_AS(ThreeWindowCoverage(e, 1, AssetDistribution(off), 2), InputError);
}

TEST_CASE("necessity") {
  SUBCASE("23-node path, k = 1") {
    const GadgetSpec spec{23, 1, 11, -1, false};
    const auto below = VerifyNecessity(spec, Rational(14));
    CHECK(below.verdict == NecessityVerdict::kAttackerWins);
    CHECK(below.minimum_units == 15);
    CHECK(below.policy_breached);
    const auto at = VerifyNecessity(spec, Rational(15));
    CHECK(at.verdict == NecessityVerdict::kDefenseHeld);
    CHECK_FALSE(at.policy_breached);
    CHECK(at.policy_violations.empty());
  }
  SUBCASE("three nodes, k = 0") {
    const auto r = VerifyNecessity({3, 0, 1, -1, false}, Rational(2));
    CHECK(r.verdict == NecessityVerdict::kAttackerWins);
    CHECK(r.policy_breached);
    const auto again = Replay(r.policy_game.trace);
    CHECK(again.win_step == r.policy_game.win_step);
  }
  SUBCASE("fractional attacker") {
    const auto r = VerifyNecessity({5, 1, 2, -1, false}, Rational(3, 2), Rational(1, 2));
    CHECK(r.verdict == NecessityVerdict::kDefenseHeld);
    CHECK_FALSE(r.policy_breached);
  }
}

TEST_CASE("corpus") {
  const auto corpus = BuildCorpus({});
  CHECK(corpus.size() == 60);
  int gadgets = 0;
  for (const auto& entry : corpus) {
    CHECK(entry.env->num_nodes() <= 14);
    CHECK(entry.env->path_length() >= 3);
    CHECK(entry.env->path_length() <= 9);
    CHECK(entry.k <= 2);
    if (entry.gadget) ++gadgets;
  }
  CHECK(gadgets >= 30);
  CHECK(CorpusToJson(BuildCorpus({})) == CorpusToJson(corpus));
  CHECK(CorpusToJson(BuildCorpus({10, 3, 9, 2, 14, 7})) != CorpusToJson(BuildCorpus({10, 3, 9, 2, 14, 8})));
}

}  // namespace
}  // namespace ddab
