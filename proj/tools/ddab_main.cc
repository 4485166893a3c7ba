// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

// ddab: runs games and sweeps, prints bound tables, verifies corpora,
// generates gadgets, replays traces and serves interactive sessions.
//
//   ddab run --config game.json --out out/
//   ddab bound-table --path-len 23 --k-max 10
//   ddab verify [--config corpus.json] [--mutation frozen_platoons]
//   ddab gadget-gen --path-len 7 --k 1 --alpha 3 --ring
//   ddab replay out/trace.jsonl
//   ddab serve --port 8080 --web-root web
//
// Exit codes: 0 ok or defended, 1 expectation or bracket failure, 2 bad
// input, 3 inconclusive verification, 4 internal error, 5 corrupt trace,
// 10 attacker win.

#include <signal.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ddab/corpus.h"
#include "ddab/defender_policy.h"
#include "ddab/engine.h"
#include "ddab/environment_io.h"
#include "ddab/errors.h"
#include "ddab/trace.h"
#include "ddab/verifier.h"
#include "json.hpp"
#include "play_server.h"
#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace ddab {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode {
  kOk = 0,
  kFailed = 1,
  kBadInput = 2,
  kInconclusive = 3,
  kInternal = 4,
  kCorrupt = 5,
  kAttackerWin = 10,
};

struct Globals {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  bool trace_advantages = false;
  std::vector<std::string> argv;

  int Jobs() const {
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

std::string Now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Timestamps live here and nowhere else, so every other artifact is
// byte-stable across runs.
class MetaSidecar {
 public:
  MetaSidecar(const Globals& g, std::string command) : g_(g), command_(std::move(command)), started_(Now()) {}
  void Write(int exit_code) const {
    const json meta = {{"command", command_},
                       {"argv", g_.argv},
                       {"started_at", started_},
                       {"finished_at", Now()},
                       {"exit_code", exit_code}};
    WriteTextFile((fs::path(g_.out) / "meta.json").string(), meta.dump(2) + "\n");
  }

 private:
  const Globals& g_;
  std::string command_;
  std::string started_;
};

// Runs fn(0..n-1) over `jobs` threads. Results must be stored by index.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs))));
  for (int t = 1; t < count; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

json ReadJsonFile(const std::string& file) {
  try {
    return json::parse(ReadTextFile(file));
  } catch (const json::parse_error& e) {
    throw InputError(file + ": " + e.what());
  }
}

std::string BaseDir(const std::string& file) {
  const auto dir = fs::path(file).parent_path();
  return dir.empty() ? "." : dir.string();
}

json OutcomeJson(const GameConfig& cfg, const GameOutcome& out) {
  const Graph& g = cfg.env->graph();
  return {{"result", ToString(out.result)},
          {"win_step", out.win_step ? json(*out.win_step) : json(nullptr)},
          {"witness", out.witness ? json(g.name(*out.witness)) : json(nullptr)},
          {"steps", out.steps},
          {"k", cfg.k},
          {"path_len", cfg.env->path_length()},
          {"defender_total", cfg.defender_total.ToString()},
          {"required_assets", RequiredAssets(cfg.env->path_length(), cfg.k, cfg.attacker_total).ToString()},
          {"platoon_centers", CenterTrajectory(out)},
          {"violations", out.violations}};
}

// ---------------------------------------------------------------- run

int RunSingle(const Globals& g, json doc) {
  if (g.seed) doc["seed"] = *g.seed;
  if (g.trace_advantages) doc["trace_advantages"] = true;
  const GameConfig cfg = ParseGameConfig(doc, BaseDir(g.config));
  const GameOutcome out = Play(cfg);
  fs::create_directories(g.out);
  const std::string trace = (fs::path(g.out) / doc.value("trace", std::string("trace.jsonl"))).string();
  WriteTrace(trace, out.trace);
  WriteTextFile((fs::path(g.out) / "outcome.json").string(), OutcomeJson(cfg, out).dump(2) + "\n");
  spdlog::info("{} after {} steps, trace {}", ToString(out.result), out.steps, trace);
  std::cout << ToString(out.result) << "\n";
  if (!cfg.expect.is_null()) {
    const auto problems = CheckExpectations(cfg.expect, *cfg.env, out);
    for (const auto& p : problems) std::cerr << "expectation failed: " << p << "\n";
    if (!problems.empty()) return kFailed;
  }
  return out.result == GameResult::kAttackerWin ? kAttackerWin : kOk;
}

// Path p1..pN with one pendant "u<i>" per path node.
json CombEnvironment(int n) {
  if (n < 1) throw InputError("sweep 'path_len' must be >= 1");
  json env = {{"nodes", json::array()}, {"edges", json::array()}, {"path", json::array()}};
  for (int i = 1; i <= n; ++i) {
    const std::string p = "p" + std::to_string(i);
    env["nodes"].push_back(p);
    env["path"].push_back(p);
    if (i > 1) env["edges"].push_back({"p" + std::to_string(i - 1), p});
  }
  for (int i = 1; i <= n; ++i) {
    const std::string u = "u" + std::to_string(i);
    env["nodes"].push_back(u);
    env["edges"].push_back({u, "p" + std::to_string(i)});
  }
  return env;
}

std::vector<int> IntRange(const json& doc, const std::string& field) {
  std::vector<int> out;
  if (doc.is_number_integer()) {
    out.push_back(doc.get<int>());
  } else if (doc.is_array()) {
    for (const auto& v : doc) out.push_back(v.get<int>());
  } else if (doc.is_object()) {
    for (int v = doc.at("from").get<int>(); v <= doc.at("to").get<int>(); ++v) out.push_back(v);
  } else {
    throw InputError("sweep '" + field + "' must be an integer, a list or {\"from\", \"to\"}");
  }
  if (out.empty()) throw InputError("sweep '" + field + "' is empty");
  return out;
}

// {"sweep": {"environment": file | {...} | (or "path_len": n),
//            "k": [..] | {"from", "to"}, "defender_total": ["eq9", ...],
//            "attacker_start": "u1", "strategies": [{...}],
//            "seeds": [..] | {"from", "to"}, "max_steps": 0, "traces": true}}
int RunSweep(const Globals& g, const json& doc) {
  const json& s = doc.at("sweep");
  if (!s.is_object()) throw InputError("'sweep' must be an object");
  json env;
  if (s.contains("environment")) {
    env = s.at("environment");
  } else if (s.contains("path_len")) {
    env = CombEnvironment(s.at("path_len").get<int>());
  } else {
    throw InputError("sweep needs 'environment' or 'path_len'");
  }
  const std::vector<int> ks = IntRange(s.value("k", json(1)), "k");
  json totals = s.value("defender_total", json::array({"eq9"}));
  if (!totals.is_array()) totals = json::array({totals});
  const json strategies = s.value("strategies", json::array({{{"kind", "random"}}}));
  if (!strategies.is_array() || strategies.empty()) throw InputError("sweep 'strategies' must be a nonempty list");
  std::vector<int> seeds = s.contains("seeds") ? IntRange(s.at("seeds"), "seeds")
                                               : std::vector<int>{static_cast<int>(g.seed.value_or(0))};
  const bool traces = s.value("traces", true);
  if (totals.empty()) throw InputError("sweep 'defender_total' is empty");

  struct Cell {
    json doc;
    std::string name;
    json row;
  };
  std::vector<Cell> cells;
  for (int k : ks) {
    for (const auto& x : totals) {
      for (std::size_t si = 0; si < strategies.size(); ++si) {
        for (int seed : seeds) {
          json game = {{"environment", env},
                       {"k", k},
                       {"defender_total", x},
                       {"attacker_start", s.value("attacker_start", std::string("u1"))},
                       {"strategy", strategies[si]},
                       {"seed", seed},
                       {"trace_advantages", g.trace_advantages}};
          if (s.contains("attacker_total")) game["attacker_total"] = s.at("attacker_total");
          if (s.contains("max_steps")) game["max_steps"] = s.at("max_steps");
          if (s.contains("parallel_subgames")) game["parallel_subgames"] = s.at("parallel_subgames");
          std::string xs = x.is_string() ? x.get<std::string>() : x.dump();
          std::replace(xs.begin(), xs.end(), '/', '_');
          const std::string name =
              "k" + std::to_string(k) + "_x" + xs + "_s" + std::to_string(si) + "_seed" + std::to_string(seed);
          cells.push_back({std::move(game), name, json()});
        }
      }
    }
  }
  const std::string base = BaseDir(g.config);
  // Parse up front so config errors surface before any game runs.
  std::vector<GameConfig> configs;
  for (const auto& c : cells) configs.push_back(ParseGameConfig(c.doc, base));
  fs::create_directories(fs::path(g.out) / "traces");
  ParallelFor(cells.size(), g.Jobs(), [&](std::size_t i) {
    GameConfig cfg = configs[i];
    cfg.record_trace = traces;
    const GameOutcome out = Play(cfg);
    if (traces) WriteTrace((fs::path(g.out) / "traces" / (cells[i].name + ".jsonl")).string(), out.trace);
    cells[i].row = OutcomeJson(cfg, out);
  });

  std::ostringstream csv;
  csv << "k,defender_total,required_assets,strategy,seed,result,win_step,witness,steps,violations,trace\n";
  bool lost = false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const json& r = cells[i].row;
    lost = lost || r.at("result") == "ATTACKER_WIN";
    csv << r.at("k").get<int>() << ',' << r.at("defender_total").get<std::string>() << ','
        << r.at("required_assets").get<std::string>() << ',' << cells[i].doc.at("strategy").value("kind", "") << ','
        << cells[i].doc.at("seed").get<int>() << ',' << r.at("result").get<std::string>() << ','
        << (r.at("win_step").is_null() ? "" : std::to_string(r.at("win_step").get<int>())) << ','
        << (r.at("witness").is_null() ? "" : r.at("witness").get<std::string>()) << ','
        << r.at("steps").get<int>() << ',' << r.at("violations").size() << ','
        << (traces ? "traces/" + cells[i].name + ".jsonl" : "") << '\n';
  }
  WriteTextFile((fs::path(g.out) / "sweep.csv").string(), csv.str());
  std::cout << cells.size() << " games, " << (lost ? "some" : "no") << " attacker wins\n";
  return kOk;
}

int CmdRun(const Globals& g) {
  if (g.config.empty()) throw InputError("run needs --config");
  const json doc = ReadJsonFile(g.config);
  try {
    if (doc.is_object() && doc.contains("sweep")) return RunSweep(g, doc);
    return RunSingle(g, doc);
  } catch (const json::exception& e) {
    throw InputError(g.config + ": " + e.what());
  }
}

// ---------------------------------------------------------------- bound-table

int CmdBoundTable(const Globals& g, int path_len, std::optional<int> k_max, const std::string& attacker_total) {
  if (path_len < 3) throw InputError("--path-len must be >= 3");
  const Rational y = Rational::Parse(attacker_total);
  if (y.sign() <= 0) throw InputError("--attacker-total must be positive");
  // Smallest k with 2k+3 >= |P|: one partition, the bound sits at 3Y.
  const int saturation = std::max(0, (path_len - 2) / 2);
  const int last = k_max.value_or(saturation);
  if (last < 0) throw InputError("--k-max must be >= 0");
  std::ostringstream csv;
  csv << "k,units,required_assets,saturated,note\n";
  for (int k = 0; k <= last; ++k) {
    csv << k << ',' << RequiredUnits(path_len, k) << ',' << RequiredAssets(path_len, k, y).ToString() << ','
        << (k >= saturation ? 1 : 0) << ',' << (k == saturation ? "k >= |P|/2 region" : "") << '\n';
  }
  fs::create_directories(g.out);
  WriteTextFile((fs::path(g.out) / "bound_table.csv").string(), csv.str());
  std::cout << csv.str();
  return kOk;
}

// ---------------------------------------------------------------- verify

struct EntryReport {
  json doc;
  bool failed = false;
  bool inconclusive = false;
};

EntryReport VerifyEntry(const CorpusEntry& entry, const fs::path& out, PolicyMutation mutation,
                        long long state_budget) {
  EntryReport rep;
  const int n = entry.env->path_length();
  const Rational bound = RequiredAssets(n, entry.k, Rational(1));
  rep.doc = {{"name", entry.name}, {"k", entry.k}, {"path_len", n}, {"nodes", entry.env->num_nodes()}};

  json suff = {{"X", bound.ToString()}, {"k", entry.k}, {"path_len", n}, {"witness_trace_path", nullptr}};
  try {
    const auto r = VerifySufficiency(*entry.env, entry.k, bound, {true, state_budget, mutation});
    suff["verdict"] = ToString(r.verdict);
    suff["explored_states"] = r.explored_states;
    if (r.breach) {
      const std::string file = "witnesses/" + entry.name + ".sufficiency.jsonl";
      WriteTrace((out / file).string(), RunGame(BreachReplayConfig(entry.env, entry.k, bound, *r.breach, mutation)).trace);
      suff["witness_trace_path"] = file;
      suff["win_step"] = r.breach->win_step;
    }
    rep.failed = r.verdict != Verdict::kSafeClosed;
  } catch (const BudgetExceededError& e) {
    suff["verdict"] = "INCONCLUSIVE";
    suff["explored_states"] = e.explored();
    rep.inconclusive = true;
  }
  rep.doc["sufficiency"] = suff;

  if (entry.gadget) {
    const Rational below = bound - Rational(1);
    const auto r = VerifyNecessity(entry.env, entry.k, entry.gadget->alpha, below);
    const std::string file = "witnesses/" + entry.name + ".necessity.jsonl";
    WriteTrace((out / file).string(), r.policy_game.trace);
    const GameOutcome again = Replay(ReadTrace((out / file).string()));
    const bool agree = again.result == r.policy_game.result && again.win_step == r.policy_game.win_step;
    json nec = {{"verdict", ToString(r.verdict)},
                {"X", below.ToString()},
                {"k", entry.k},
                {"path_len", n},
                {"alpha", entry.gadget->alpha},
                {"units", r.units},
                {"minimum_units", r.minimum_units},
                {"policy_result", ToString(r.policy_game.result)},
                {"win_step", r.policy_game.win_step ? json(*r.policy_game.win_step) : json(nullptr)},
                {"replay_win_step", again.win_step ? json(*again.win_step) : json(nullptr)},
                {"replay_agrees", agree},
                {"witness_trace_path", file}};
    rep.doc["necessity"] = nec;
    rep.failed = rep.failed || r.verdict != NecessityVerdict::kAttackerWins || !r.policy_breached || !agree;
  }
  rep.doc["pass"] = !rep.failed && !rep.inconclusive;
  return rep;
}

int CmdVerify(const Globals& g, const std::string& mutation_name, long long state_budget) {
  const PolicyMutation mutation = ParseMutation(mutation_name);
  std::vector<CorpusEntry> corpus;
  if (g.config.empty()) {
    CorpusSpec spec;
    if (g.seed) spec.seed = *g.seed;
    corpus = BuildCorpus(spec);
  } else {
    try {
      corpus = CorpusFromJson(ReadJsonFile(g.config), BaseDir(g.config));
    } catch (const json::exception& e) {
      throw InputError(g.config + ": " + e.what());
    }
  }
  if (corpus.empty()) throw InputError("the corpus is empty");
  const fs::path out(g.out);
  fs::create_directories(out / "witnesses");

  std::vector<EntryReport> reports(corpus.size());
  ParallelFor(corpus.size(), g.Jobs(),
              [&](std::size_t i) { reports[i] = VerifyEntry(corpus[i], out, mutation, state_budget); });

  json entries = json::array();
  json failed = json::array();
  json inconclusive = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    entries.push_back(reports[i].doc);
    if (reports[i].failed) failed.push_back(corpus[i].name);
    if (reports[i].inconclusive) inconclusive.push_back(corpus[i].name);
  }
  const json verdicts = {{"mutation", ToString(mutation)},
                         {"state_budget", state_budget},
                         {"entries", entries},
                         {"failed", failed},
                         {"inconclusive", inconclusive},
                         {"summary",
                          {{"total", corpus.size()},
                           {"failed", failed.size()},
                           {"inconclusive", inconclusive.size()},
                           {"passed", corpus.size() - failed.size() - inconclusive.size()}}}};
  WriteTextFile((out / "verdicts.json").string(), verdicts.dump(2) + "\n");
  std::cout << verdicts.at("summary").dump() << "\n";
  for (const auto& name : failed) std::cerr << "bracket failed: " << name.get<std::string>() << "\n";
  if (!failed.empty()) return kFailed;
  if (!inconclusive.empty()) return kInconclusive;
  return kOk;
}

// ---------------------------------------------------------------- gadget-gen

int CmdGadgetGen(const Globals& g, const GadgetSpec& spec) {
  const Environment env = BuildGadget(spec);
  fs::create_directories(g.out);
  WriteTextFile((fs::path(g.out) / "gadget.json").string(), SerializeEnvironment(env));
  // A ready-to-run strike one unit below the bound.
  const json cfg = {{"environment", "gadget.json"},
                    {"k", spec.k},
                    {"defender_total", "eq9_minus_1"},
                    {"attacker_start", "q" + std::to_string(spec.ChainLength())},
                    {"strategy", {{"kind", "gadget"}, {"alpha", spec.alpha}}},
                    {"expect", {{"result", "ATTACKER_WIN"}}}};
  WriteTextFile((fs::path(g.out) / "gadget_config.json").string(), cfg.dump(2) + "\n");
  std::cout << "gadget.json: " << env.num_nodes() << " nodes, path length " << env.path_length() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- replay

int CmdReplay(const Globals& g, std::string trace) {
  if (trace.empty()) trace = g.config;
  if (trace.empty()) throw InputError("replay needs a trace file");
  const GameOutcome out = Replay(ReadTrace(trace));
  const auto records = ReadTrace(trace);
  const Environment env = EnvironmentFromJson(records.front().at("environment"));
  const json doc = {{"result", ToString(out.result)},
                    {"win_step", out.win_step ? json(*out.win_step) : json(nullptr)},
                    {"witness", out.witness ? json(env.graph().name(*out.witness)) : json(nullptr)},
                    {"steps", out.steps},
                    {"platoon_centers", CenterTrajectory(out)}};
  std::cout << doc.dump() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- serve

int CmdServe(ServerOptions options) {
  // Block the stop signals before any thread starts, then wait for one.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  PlayServer server(std::move(options));
  const unsigned short port = server.Start();
  std::cout << "listening on port " << port << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  spdlog::info("signal {}, shutting down", sig);
  server.Stop();
  return kOk;
}

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("ddab");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("DDAB_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

int Main(int argc, char** argv) {
  SetUpLogging();
  Globals g;
  g.argv.assign(argv, argv + argc);
  CLI::App app{"Defender-attacker path guarding games"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", g.config, "Game, sweep or corpus config (JSON)");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--seed", g.seed, "Seed override");
  app.add_option("--jobs", g.jobs, "Worker threads (0: available parallelism)");
  app.add_flag("--trace-advantages", g.trace_advantages, "Record advantage rows in traces");

  auto* run = app.add_subcommand("run", "Play one game or a sweep");

  auto* table = app.add_subcommand("bound-table", "Required defender assets per sensing distance");
  int path_len = 23;
  std::optional<int> k_max;
  std::string attacker_total = "1";
  table->add_option("--path-len", path_len)->capture_default_str();
  table->add_option("--k-max", k_max, "Last k (default: first saturated k)");
  table->add_option("--attacker-total", attacker_total)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Sufficiency and necessity brackets over a corpus");
  std::string mutation = "none";
  long long state_budget = 5'000'000;
  verify->add_option("--mutation", mutation, "none, frozen_platoons or ignore_negatives")->capture_default_str();
  verify->add_option("--state-budget", state_budget)->capture_default_str();

  auto* gadget = app.add_subcommand("gadget-gen", "Write a gadget environment and a strike config");
  GadgetSpec spec;
  gadget->add_option("--path-len", spec.path_len)->capture_default_str();
  gadget->add_option("--k", spec.k)->capture_default_str();
  gadget->add_option("--alpha", spec.alpha, "0-based middle target")->capture_default_str();
  gadget->add_option("--chain", spec.entry_chain_length, "Entry chain length (default k+2)");
  gadget->add_flag("--ring", spec.outer_ring, "Add the outer reentry ring");

  auto* replay = app.add_subcommand("replay", "Re-execute a trace and check it");
  std::string trace;
  replay->add_option("trace", trace, "Trace file (JSON lines)");

  auto* serve = app.add_subcommand("serve", "Interactive sessions over WebSocket");
  ServerOptions server;
  long ttl = 30 * 60;
  serve->add_option("--host", server.host)->capture_default_str();
  serve->add_option("--port", server.port)->capture_default_str();
  serve->add_option("--web-root", server.web_root)->capture_default_str();
  serve->add_option("--ttl", ttl, "Idle session lifetime in seconds")->capture_default_str();
  serve->add_option("--base-dir", server.play.base_dir, "Root for relative environment paths")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  std::optional<MetaSidecar> meta;
  if (!serve->parsed() && !replay->parsed()) meta.emplace(g, app.get_subcommands().front()->get_name());
  int code = kOk;
  try {
    if (run->parsed()) code = CmdRun(g);
    if (table->parsed()) code = CmdBoundTable(g, path_len, k_max, attacker_total);
    if (verify->parsed()) code = CmdVerify(g, mutation, state_budget);
    if (gadget->parsed()) code = CmdGadgetGen(g, spec);
    if (replay->parsed()) code = CmdReplay(g, trace);
    if (serve->parsed()) {
      server.play.ttl = std::chrono::seconds(ttl);
      code = CmdServe(server);
    }
  } catch (const CorruptionError& e) {
    std::cerr << "corrupt trace at record " << e.record_index() << ": " << e.what() << "\n";
    return kCorrupt;
  } catch (const EnvironmentError& e) {
    std::cerr << "invalid environment: " << e.what() << "\n";
    code = kBadInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    code = kInternal;
  }
  if (meta && fs::is_directory(g.out)) meta->Write(code);
  return code;
}

}  // namespace
}  // namespace ddab

int main(int argc, char** argv) { return ddab::Main(argc, argv); }
