// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ddab/engine.h"

#include <algorithm>
#include <filesystem>

#include "ddab/environment_io.h"
#include "ddab/errors.h"
#include "ddab/trace.h"

namespace ddab {

using nlohmann::json;

namespace {

Rational ParseAmount(const json& value, const std::string& field) {
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_string()) return Rational::Parse(value.get<std::string>());
  throw InputError("'" + field + "' must be an integer or a \"num/den\" string");
}

std::string ParentLabel(const std::string& label) {
  const auto dot = label.rfind('.');
  if (dot == std::string::npos) return std::string(kRootForce);
  return label.substr(0, dot);
}

std::vector<int> PlatoonCenters(const PartitionScheme& scheme, const PlatoonState& platoons) {
  std::vector<int> out;
  for (std::size_t w = 0; w < scheme.partitions.size(); ++w) {
    if (!scheme.partitions[w].small) out.push_back(platoons.centers[w]);
  }
  return out;
}

json AdvantageRows(const AdvantageReport& report) {
  json rows = json::array();
  for (std::size_t i = 0; i < report.advantage.size(); ++i) {
    json row = {{"i", static_cast<int>(i)}, {"d_D", report.d_defender[i]}, {"in_frontier", report.frontier[i]}};
    row["d_A"] = report.d_attacker[i] ? json(*report.d_attacker[i]) : json(nullptr);
    row["a"] = report.advantage[i] ? json(*report.advantage[i]) : json(nullptr);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

// ---------------------------------------------------------------- config

int GameConfig::Horizon() const {
  if (max_steps > 0) return max_steps;
  return 4 * env->num_nodes() + 64;
}

json GameConfig::ToJson() const {
  json start = json::object();
  for (NodeId v : attacker_start.Support()) start[env->graph().name(v)] = attacker_start.at(v).ToString();
  return {{"environment", environment_source},
          {"k", k},
          {"defender_total", defender_total.ToString()},
          {"attacker_total", attacker_total.ToString()},
          {"attacker_start", start},
          {"strategy", strategy},
          {"seed", seed},
          {"max_steps", Horizon()},
          {"parallel_subgames", parallel_subgames},
          {"trace_advantages", trace_advantages},
          {"policy_mutation", ToString(mutation)}};
}

PolicyMutation ParseMutation(std::string_view name) {
  if (name == "none") return PolicyMutation::kNone;
  if (name == "frozen_platoons") return PolicyMutation::kFrozenPlatoons;
  if (name == "ignore_negatives") return PolicyMutation::kIgnoreNegatives;
  throw InputError("unknown policy mutation '" + std::string(name) + "'");
}

std::string_view ToString(PolicyMutation m) {
  switch (m) {
    case PolicyMutation::kNone:
      return "none";
    case PolicyMutation::kFrozenPlatoons:
      return "frozen_platoons";
    case PolicyMutation::kIgnoreNegatives:
      return "ignore_negatives";
  }
  return "?";
}

GameConfig ParseGameConfig(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw InputError("config must be a JSON object");
  for (const char* key : {"environment", "k", "defender_total", "attacker_start", "strategy"}) {
    if (!doc.contains(key)) throw InputError(std::string("config is missing '") + key + "'");
  }
  GameConfig cfg;
  const json& env_doc = doc.at("environment");
  cfg.environment_source = env_doc;
  if (env_doc.is_string()) {
    std::filesystem::path file(env_doc.get<std::string>());
    if (file.is_relative()) file = std::filesystem::path(base_dir) / file;
    cfg.env = std::make_shared<const Environment>(LoadEnvironmentFile(file.string()));
  } else if (env_doc.is_object()) {
    cfg.env = std::make_shared<const Environment>(EnvironmentFromJson(env_doc));
  } else {
    throw InputError("'environment' must be a file path or an inline environment");
  }
  const Environment& env = *cfg.env;

  if (!doc.at("k").is_number_integer() || doc.at("k").get<int>() < 0) {
    throw InputError("'k' must be a nonnegative integer");
  }
  cfg.k = doc.at("k").get<int>();
  if (doc.contains("attacker_total")) cfg.attacker_total = ParseAmount(doc.at("attacker_total"), "attacker_total");
  if (cfg.attacker_total.sign() <= 0) throw InputError("'attacker_total' must be positive");

  const json& x = doc.at("defender_total");
  if (x == "eq9") {
    cfg.defender_total = RequiredAssets(env.path_length(), cfg.k, cfg.attacker_total);
  } else if (x == "eq9_minus_1") {
    cfg.defender_total = RequiredAssets(env.path_length(), cfg.k, cfg.attacker_total) - cfg.attacker_total;
  } else {
    cfg.defender_total = ParseAmount(x, "defender_total");
  }
  if (cfg.defender_total.sign() <= 0) throw InputError("'defender_total' must be positive");

  const json& start = doc.at("attacker_start");
  if (start.is_string()) {
    cfg.attacker_start = AssetDistribution::Single(env.num_nodes(), env.graph().Index(start.get<std::string>()),
                                                   cfg.attacker_total);
  } else if (start.is_object()) {
    std::vector<Rational> amounts(static_cast<std::size_t>(env.num_nodes()));
    for (const auto& [name, value] : start.items()) {
      amounts[static_cast<std::size_t>(env.graph().Index(name))] = ParseAmount(value, "attacker_start");
    }
    cfg.attacker_start = AssetDistribution(std::move(amounts));
    if (cfg.attacker_start.total() != cfg.attacker_total) {
      throw InputError("'attacker_start' sums to " + cfg.attacker_start.total().ToString() + ", expected " +
                       cfg.attacker_total.ToString());
    }
  } else {
    throw InputError("'attacker_start' must be a node name or a node -> amount object");
  }

  cfg.strategy = doc.at("strategy");
  if (!cfg.strategy.is_object()) throw InputError("'strategy' must be an object");
  cfg.seed = doc.value("seed", std::uint64_t{0});
  if (doc.contains("max_steps")) {
    cfg.max_steps = doc.at("max_steps").get<int>();
    if (cfg.max_steps < 1) throw InputError("'max_steps' must be >= 1");
  }
  cfg.parallel_subgames = doc.value("parallel_subgames", false);
  cfg.trace_advantages = doc.value("trace_advantages", false);
  cfg.mutation = ParseMutation(doc.value("policy_mutation", std::string("none")));
  if (doc.contains("expect")) cfg.expect = doc.at("expect");
  // Validate the strategy eagerly so config errors surface at load.
  MakeStrategy(cfg.strategy, env, cfg.k, cfg.seed);
  return cfg;
}

GameConfig LoadGameConfig(const std::string& file) {
  json doc;
  try {
    doc = json::parse(ReadTextFile(file));
  } catch (const json::parse_error& e) {
    throw InputError(file + ": " + e.what());
  }
  const auto dir = std::filesystem::path(file).parent_path();
  try {
    return ParseGameConfig(doc, dir.empty() ? "." : dir.string());
  } catch (const json::exception& e) {
    throw InputError(file + ": " + e.what());
  }
}

std::string_view ToString(GameResult r) {
  switch (r) {
    case GameResult::kDefendedHorizon:
      return "DEFENDED_HORIZON";
    case GameResult::kDefendedCycle:
      return "DEFENDED_CYCLE";
    case GameResult::kAttackerWin:
      return "ATTACKER_WIN";
  }
  return "?";
}

GameResult ParseGameResult(std::string_view name) {
  for (auto r : {GameResult::kDefendedHorizon, GameResult::kDefendedCycle, GameResult::kAttackerWin}) {
    if (ToString(r) == name) return r;
  }
  throw InputError("unknown game result '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- defender

DefenderController::DefenderController(std::shared_ptr<const Environment> env, int k, Rational defender_total,
                                       Rational attacker_total, PolicyMutation mutation)
    : env_(std::move(env)), k_(k), attacker_total_(std::move(attacker_total)), mutation_(mutation) {
  if (defender_total.sign() <= 0 || attacker_total_.sign() <= 0) throw InputError("asset totals must be positive");
  scheme_ = BuildPartitions(env_->path_length(), k_);
  unit_mass_ = defender_total / Rational(scheme_.Units());
}

void DefenderController::BindNewGroups(const Observation& obs) {
  auto find = [&](const std::string& label) {
    return std::find_if(forces_.begin(), forces_.end(), [&](const SubForce& f) { return f.label == label; });
  };
  bool changed = false;
  for (const auto& g : obs.visible_groups) {
    if (find(g.label) != forces_.end()) continue;
    std::string parent = g.label;
    auto anc = forces_.end();
    while (anc == forces_.end()) {
      if (parent == kRootForce) throw InternalError("no sub-force to split for group '" + g.label + "'");
      parent = ParentLabel(parent);
      anc = find(parent);
    }
    const Rational share = g.amount / attacker_total_;
    anc->weight -= share;
    if (anc->weight.sign() < 0) throw InternalError("sub-force '" + anc->label + "' over-split");
    SubForce force{g.label, share, anc->platoons, false};
    force.platoons.group = g.label;
    forces_.push_back(std::move(force));
    changed = true;
  }
  if (!changed) return;
  forces_.erase(std::remove_if(forces_.begin(), forces_.end(), [](const SubForce& f) { return f.weight.is_zero(); }),
                forces_.end());
  std::sort(forces_.begin(), forces_.end(), [](const SubForce& a, const SubForce& b) { return a.label < b.label; });
}

AssetDistribution DefenderController::Initialize(const Observation& obs) {
  forces_.clear();
  violations_.clear();
  PlatoonState root = CenteredPlatoons(scheme_);
  root.group = std::string(kRootForce);
  forces_.push_back({std::string(kRootForce), Rational(1), root, false});
  BindNewGroups(obs);
  for (auto& force : forces_) {
    const auto loc =
        force.label == kRootForce ? std::nullopt : LocateGroup(obs, force.label);
    auto init = ddab::Initialize(*env_, scheme_, loc, unit_mass_ * force.weight, mutation_);
    init.platoons.group = force.label;
    force.platoons = std::move(init.platoons);
    force.seen = loc.has_value();
  }
  return Composed();
}

MovePlan DefenderController::Step(const Observation& obs, json* advantages) {
  BindNewGroups(obs);
  const PathSpec& path = env_->path();
  MovePlan plan;
  const PlatoonState centered = CenteredPlatoons(scheme_);
  for (auto& force : forces_) {
    const auto loc = force.label == kRootForce ? std::nullopt : LocateGroup(obs, force.label);
    if (advantages) {
      advantages->push_back(
          {{"group", force.label},
           {"rows", AdvantageRows(ComputeAdvantages(*env_, scheme_, force.platoons, loc))}});
    }
    DefenderDecision decision = DefenderStep(*env_, scheme_, force.platoons, loc, mutation_);
    for (auto& f : ScalePlan(decision.unit_plan, unit_mass_ * force.weight).flows) plan.flows.push_back(std::move(f));

    if (loc) {
      const auto min_adv = ComputeAdvantages(*env_, scheme_, decision.platoons, loc).MinAdvantage(scheme_);
      if (min_adv && *min_adv < -1) {
        violations_.push_back("sub-force '" + force.label + "': advantage " + std::to_string(*min_adv) +
                              " < -1 after the defender action");
      }
    } else if (force.seen && decision.platoons != centered) {
      violations_.push_back("sub-force '" + force.label + "': platoons not recentered one action after exit");
    }
    decision.platoons.group = force.label;
    force.platoons = std::move(decision.platoons);
    force.seen = loc.has_value();
  }
  for (const auto& part : scheme_.partitions) {
    if (!part.small) continue;
    for (int i = part.first; i <= part.last; ++i) plan.flows.push_back({path.at(i), path.at(i), unit_mass_, {}});
  }
  return plan.Normalized();
}

AssetDistribution DefenderController::Composed() const {
  std::vector<Rational> amounts = StaticDistribution(*env_, scheme_, unit_mass_).amounts();
  for (const auto& force : forces_) {
    const auto part = PlatoonDistribution(*env_, scheme_, force.platoons, unit_mass_ * force.weight);
    for (std::size_t v = 0; v < amounts.size(); ++v) amounts[v] += part.amounts()[v];
  }
  return AssetDistribution(std::move(amounts));
}

json DefenderController::ForcesToJson() const {
  json out = json::array();
  for (const auto& force : forces_) {
    out.push_back({{"group", force.label},
                   {"weight", force.weight.ToString()},
                   {"centers", PlatoonCenters(scheme_, force.platoons)}});
  }
  return out;
}

// ---------------------------------------------------------------- runner

GameRunner::GameRunner(GameConfig cfg) : GameRunner(std::move(cfg), nullptr) {}

GameRunner::GameRunner(GameConfig cfg, std::unique_ptr<AttackerStrategy> strategy)
    : cfg_(std::move(cfg)),
      strategy_(std::move(strategy)),
      region_(cfg_.env->Visibility(cfg_.k)),
      defender_(cfg_.env, cfg_.k, cfg_.defender_total, cfg_.attacker_total, cfg_.mutation) {
  const Environment& env = *cfg_.env;
  if (!strategy_) strategy_ = MakeStrategy(cfg_.strategy, env, cfg_.k, cfg_.seed);
  if (cfg_.attacker_start.size() != env.num_nodes()) throw InputError("attacker start does not match the graph");
  if (cfg_.attacker_start.total() != cfg_.attacker_total) throw InputError("attacker start does not sum to Y");
  if (!cfg_.parallel_subgames && cfg_.attacker_start.Support().size() > 1) {
    throw InputError("several attacker groups need parallel_subgames");
  }
  const GameState probe = MakeInitialState(AssetDistribution::Zero(env.num_nodes()), cfg_.attacker_start);
  state_ = MakeInitialState(defender_.Initialize(Observe(probe, region_)), cfg_.attacker_start);

  if (cfg_.record_trace) {
    Record({{"record", "header"},
            {"format", kTraceFormat},
            {"config", cfg_.ToJson()},
            {"environment", EnvironmentToJson(env)},
            {"nodes", env.graph().names()}});
  }
  Snapshot();
  json init = PhaseRecord("init", "", nullptr);
  init["platoons"] = defender_.ForcesToJson();
  Record(std::move(init));
  outcome_.violations = defender_.violations();
  if (const auto breach = FirstBreach(state_, env.path())) {
    outcome_.win_step = 0;
    outcome_.witness = env.path().at(*breach);
    Finish(GameResult::kAttackerWin);
    return;
  }
  if (strategy_->deterministic()) seen_states_.insert(StateKey());
}

void GameRunner::Record(json record) {
  if (cfg_.record_trace) outcome_.trace.push_back(std::move(record));
}

json GameRunner::PhaseRecord(std::string_view phase, std::string_view mover, const MovePlan* plan) const {
  if (!cfg_.record_trace) return {};
  const Graph& g = cfg_.env->graph();
  return {{"record", "phase"},
          {"t", state_.t},
          {"phase", phase},
          {"mover", mover.empty() ? json(nullptr) : json(mover)},
          {"flows", plan ? FlowsToJson(g, *plan) : json::array()},
          {"defender_amounts", AmountsToJson(g, state_.defender)},
          {"attacker_amounts", AmountsToJson(g, state_.attacker)},
          {"groups", GroupsToJson(g, state_.groups)},
          {"safe", IsSafe(state_, cfg_.env->path())}};
}

void GameRunner::Snapshot() {
  std::vector<ForceSnapshot> snap;
  for (const auto& force : defender_.forces()) {
    snap.push_back({force.label, force.weight, PlatoonCenters(defender_.scheme(), force.platoons)});
  }
  outcome_.platoon_history.push_back(std::move(snap));
}

std::string GameRunner::StateKey() const {
  std::string key;
  for (const auto& a : state_.defender.amounts()) key += a.ToString() + ",";
  key += "|";
  for (const auto& g : state_.groups) key += g.label + "@" + std::to_string(g.node) + ":" + g.amount.ToString() + ",";
  key += "|";
  for (const auto& f : defender_.forces()) {
    key += f.label + ":" + f.weight.ToString() + (f.seen ? "+" : "-");
    for (int c : f.platoons.centers) key += "," + std::to_string(c);
    key += ";";
  }
  return key + "|" + strategy_->Cursor();
}

void GameRunner::Finish(GameResult result) {
  finished_ = true;
  outcome_.result = result;
  const Graph& g = cfg_.env->graph();
  Record({{"record", "outcome"},
          {"result", ToString(result)},
          {"win_step", outcome_.win_step ? json(*outcome_.win_step) : json(nullptr)},
          {"witness", outcome_.witness ? json(g.name(*outcome_.witness)) : json(nullptr)},
          {"steps", outcome_.steps}});
}

MovePlan GameRunner::DefenderMove() {
  if (finished_) throw ProtocolError("game is over");
  const Observation obs = Observe(state_, region_);
  json advantages = json::array();
  const MovePlan plan = defender_.Step(obs, cfg_.trace_advantages ? &advantages : nullptr);
  try {
    state_ = ApplyMove(cfg_.env->graph(), state_, Player::kDefender, plan);
  } catch (const IllegalMoveError& e) {
    throw ProtocolError(std::string("defender policy emitted an illegal move: ") + e.what());
  }
  if (!(defender_.Composed() == state_.defender)) {
    throw InternalError("sub-force sums differ from the defender distribution at t = " + std::to_string(state_.t));
  }
  Snapshot();
  last_advantages_ = advantages;
  if (cfg_.record_trace) {
    json rec = PhaseRecord("defender", "defender", &plan);
    rec["platoons"] = defender_.ForcesToJson();
    if (cfg_.trace_advantages) rec["advantages"] = std::move(advantages);
    Record(std::move(rec));
  }
  outcome_.violations = defender_.violations();
  return plan;
}

MovePlan GameRunner::AttackerMove() {
  if (finished_) throw ProtocolError("game is over");
  const MovePlan plan = strategy_->NextMove(state_, *cfg_.env);
  try {
    AttackerMove(plan);
  } catch (const IllegalMoveError& e) {
    throw ProtocolError(std::string("attacker strategy emitted an illegal move: ") + e.what());
  }
  return plan;
}

void GameRunner::AttackerMove(const MovePlan& plan) {
  if (finished_) throw ProtocolError("game is over");
  GameState next = ApplyMove(cfg_.env->graph(), state_, Player::kAttacker, plan);
  if (!cfg_.parallel_subgames && next.groups.size() > 1) {
    throw InputError("attacker split its mass; splitting needs parallel_subgames");
  }
  state_ = std::move(next);
  Record(PhaseRecord("attacker", "attacker", &plan));
}

void GameRunner::Evaluate() {
  if (finished_) throw ProtocolError("game is over");
  if (state_.phase != Phase::kEvaluate) throw ProtocolError("evaluate called during the " +
                                                            std::string(ToString(state_.phase)) + " phase");
  const auto breach = FirstBreach(state_, cfg_.env->path());
  json rec = PhaseRecord("evaluate", "", nullptr);
  if (breach) {
    if (cfg_.record_trace) rec["breach"] = cfg_.env->graph().name(cfg_.env->path().at(*breach));
    Record(std::move(rec));
    outcome_.win_step = state_.t;
    outcome_.witness = cfg_.env->path().at(*breach);
    outcome_.steps = state_.t + 1;
    Finish(GameResult::kAttackerWin);
    return;
  }
  Record(std::move(rec));
  state_ = AdvanceTimestep(state_);
  outcome_.steps = state_.t;
  if (strategy_->deterministic() && !seen_states_.insert(StateKey()).second) {
    Finish(GameResult::kDefendedCycle);
    return;
  }
  if (state_.t >= cfg_.Horizon()) Finish(GameResult::kDefendedHorizon);
}

void GameRunner::Step() {
  DefenderMove();
  AttackerMove();
  Evaluate();
}

GameOutcome GameRunner::Run() {
  while (!finished_) Step();
  return outcome_;
}

GameOutcome RunGame(GameConfig cfg) {
  cfg.parallel_subgames = false;
  return GameRunner(std::move(cfg)).Run();
}

GameOutcome RunParallelSubgames(GameConfig cfg) {
  cfg.parallel_subgames = true;
  return GameRunner(std::move(cfg)).Run();
}

GameOutcome Play(const GameConfig& cfg) { return GameRunner(cfg).Run(); }

// ---------------------------------------------------------------- replay

namespace {

std::vector<ForceSnapshot> ParseForces(const json& doc) {
  std::vector<ForceSnapshot> out;
  for (const auto& f : doc) {
    out.push_back({f.at("group").get<std::string>(), Rational::Parse(f.at("weight").get<std::string>()),
                   f.at("centers").get<std::vector<int>>()});
  }
  return out;
}

}  // namespace

GameOutcome Replay(const std::vector<json>& records) {
  if (records.empty() || records[0].value("record", "") != "header") {
    throw CorruptionError("trace does not start with a header record", 0);
  }
  if (records[0].value("format", "") != kTraceFormat) throw CorruptionError("unknown trace format", 0);
  std::optional<Environment> env_holder;
  try {
    env_holder.emplace(EnvironmentFromJson(records[0].at("environment")));
  } catch (const std::exception& e) {
    throw CorruptionError(std::string("trace header environment: ") + e.what(), 0);
  }
  const Environment& env = *env_holder;
  const Graph& g = env.graph();

  GameOutcome outcome;
  outcome.trace = records;
  GameState state;
  bool breached = false;
  bool done = false;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const json& rec = records[i];
    const int idx = static_cast<int>(i);
    auto fail = [&](const std::string& what) -> CorruptionError {
      return CorruptionError("record " + std::to_string(i) + " (t = " + std::to_string(state.t) + "): " + what, idx);
    };
    if (done) throw fail("records after the outcome");
    try {
      const std::string kind = rec.at("record").get<std::string>();
      if (kind == "outcome") {
        const GameResult recorded = ParseGameResult(rec.at("result").get<std::string>());
        if (breached != (recorded == GameResult::kAttackerWin)) {
          throw fail("recorded result " + std::string(ToString(recorded)) + " disagrees with re-evaluation");
        }
        if (breached) {
          if (rec.at("win_step") != json(*outcome.win_step) || rec.at("witness") != json(g.name(*outcome.witness))) {
            throw fail("recorded win step or witness disagrees with re-evaluation");
          }
        } else if (rec.at("steps").get<int>() != state.t) {
          throw fail("recorded step count disagrees with the replayed moves");
        }
        outcome.result = recorded;
        outcome.steps = rec.at("steps").get<int>();
        done = true;
        continue;
      }
      if (kind != "phase") throw fail("unknown record kind '" + kind + "'");
      const std::string phase = rec.at("phase").get<std::string>();
      if (breached) throw fail("moves after a breach");
      if (phase == "init") {
        if (i != 1) throw fail("init record out of place");
        state = MakeInitialState(AmountsFromJson(g, rec.at("defender_amounts")),
                                 AmountsFromJson(g, rec.at("attacker_amounts")));
      } else {
        if (i == 1) throw fail("missing init record");
        if (rec.at("t").get<int>() != state.t) throw fail("timestep out of order");
        if (phase != ToString(state.phase)) throw fail("phase '" + phase + "' out of turn");
        if (phase == "defender" || phase == "attacker") {
          const Player mover = phase == "defender" ? Player::kDefender : Player::kAttacker;
          state = ApplyMove(g, state, mover, FlowsFromJson(g, rec.at("flows")));
        } else if (phase != "evaluate") {
          throw fail("unknown phase '" + phase + "'");
        }
      }
      if (rec.at("defender_amounts") != AmountsToJson(g, state.defender)) throw fail("defender amounts diverge");
      if (rec.at("attacker_amounts") != AmountsToJson(g, state.attacker)) throw fail("attacker amounts diverge");
      if (rec.at("groups") != GroupsToJson(g, state.groups)) throw fail("attacker groups diverge");
      const auto breach = FirstBreach(state, env.path());
      if (rec.at("safe").get<bool>() != !breach.has_value()) throw fail("safety flag diverges");
      if (rec.contains("platoons")) outcome.platoon_history.push_back(ParseForces(rec.at("platoons")));
      if (phase == "init" && breach) {
        breached = true;
        outcome.win_step = 0;
        outcome.witness = env.path().at(*breach);
      } else if (phase == "evaluate") {
        if (breach) {
          breached = true;
          outcome.win_step = state.t;
          outcome.witness = env.path().at(*breach);
        } else {
          state = AdvanceTimestep(state);
        }
      }
    } catch (const CorruptionError&) {
      throw;
    } catch (const std::exception& e) {
      throw fail(e.what());
    }
  }
  if (!done) throw CorruptionError("trace has no outcome record", static_cast<int>(records.size()));
  return outcome;
}

// ---------------------------------------------------------------- checks

std::vector<std::vector<int>> CenterTrajectory(const GameOutcome& outcome) {
  std::vector<std::vector<int>> out;
  for (const auto& snap : outcome.platoon_history) out.push_back(snap.empty() ? std::vector<int>{} : snap.front().centers);
  return out;
}

std::vector<std::string> CheckExpectations(const json& expect, const Environment& env, const GameOutcome& outcome) {
  std::vector<std::string> problems;
  if (expect.is_null()) return problems;
  const Graph& g = env.graph();
  const std::string witness = outcome.witness ? g.name(*outcome.witness) : std::string("<none>");
  if (expect.contains("result") && expect.at("result").get<std::string>() != ToString(outcome.result)) {
    problems.push_back("result " + std::string(ToString(outcome.result)) + ", expected " +
                       expect.at("result").get<std::string>());
  }
  if (expect.contains("win_step") && (!outcome.win_step || *outcome.win_step != expect.at("win_step").get<int>())) {
    problems.push_back("win step " + (outcome.win_step ? std::to_string(*outcome.win_step) : std::string("<none>")) +
                       ", expected " + std::to_string(expect.at("win_step").get<int>()));
  }
  if (expect.contains("witness") && witness != expect.at("witness").get<std::string>()) {
    problems.push_back("witness " + witness + ", expected " + expect.at("witness").get<std::string>());
  }
  if (expect.contains("witness_in")) {
    const auto allowed = expect.at("witness_in").get<std::vector<std::string>>();
    if (std::find(allowed.begin(), allowed.end(), witness) == allowed.end()) {
      problems.push_back("witness " + witness + " outside the expected set");
    }
  }
  if (expect.contains("steps_at_least") && outcome.steps < expect.at("steps_at_least").get<int>()) {
    problems.push_back("only " + std::to_string(outcome.steps) + " steps played");
  }
  if (expect.contains("violations") &&
      static_cast<int>(outcome.violations.size()) != expect.at("violations").get<int>()) {
    problems.push_back(std::to_string(outcome.violations.size()) + " policy invariant violations");
  }
  if (expect.contains("platoon_centers")) {
    const auto want = expect.at("platoon_centers").get<std::vector<std::vector<int>>>();
    const auto got = CenterTrajectory(outcome);
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (i >= got.size()) {
        problems.push_back("platoon trajectory ends after " + std::to_string(got.size()) + " entries");
        break;
      }
      if (got[i] != want[i]) {
        problems.push_back("platoon centers differ at entry " + std::to_string(i) + ": got " + json(got[i]).dump() +
                           ", expected " + json(want[i]).dump());
      }
    }
  }
  return problems;
}

}  // namespace ddab
