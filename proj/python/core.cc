// Copyright 2026 The ddab Authors.
// SPDX-License-Identifier: Apache-2.0

// Thin JSON-in, JSON-out bindings; ddab/__init__.py turns strings into dicts.

#include <pybind11/pybind11.h>

#include <memory>
#include <string>

#include "ddab/defender_policy.h"
#include "ddab/engine.h"
#include "ddab/environment_io.h"
#include "ddab/errors.h"
#include "ddab/play_service.h"
#include "ddab/trace.h"
#include "ddab/verifier.h"
#include "json.hpp"

namespace py = pybind11;

namespace ddab {
namespace {

using nlohmann::json;

json OutcomeDoc(const Environment& env, const GameOutcome& out) {
  const Graph& g = env.graph();
  return {{"result", ToString(out.result)},
          {"win_step", out.win_step ? json(*out.win_step) : json(nullptr)},
          {"witness", out.witness ? json(g.name(*out.witness)) : json(nullptr)},
          {"steps", out.steps},
          {"platoon_centers", CenterTrajectory(out)},
          {"violations", out.violations}};
}

std::string PlayJson(const std::string& config, const std::string& base_dir) {
  const GameConfig cfg = ParseGameConfig(json::parse(config), base_dir);
  const GameOutcome out = ddab::Play(cfg);
  json doc = OutcomeDoc(*cfg.env, out);
  doc["k"] = cfg.k;
  doc["path_len"] = cfg.env->path_length();
  doc["defender_total"] = cfg.defender_total.ToString();
  doc["required_assets"] = RequiredAssets(cfg.env->path_length(), cfg.k, cfg.attacker_total).ToString();
  if (!cfg.expect.is_null()) doc["expectation_failures"] = CheckExpectations(cfg.expect, *cfg.env, out);
  doc["trace"] = SerializeTrace(out.trace);
  return doc.dump();
}

std::string ReplayText(const std::string& trace) {
  const auto records = ParseTrace(trace);
  const GameOutcome out = Replay(records);
  const auto& names = records.front().at("nodes");
  return json{{"result", ToString(out.result)},
              {"win_step", out.win_step ? json(*out.win_step) : json(nullptr)},
              {"witness", out.witness ? names.at(*out.witness) : json(nullptr)},
              {"steps", out.steps},
              {"violations", out.violations}}
      .dump();
}

std::string Sufficiency(const std::string& environment, int k, const std::string& defender_total, bool abstract,
                        long long state_budget) {
  const Environment env = EnvironmentFromJson(json::parse(environment));
  const auto r = VerifySufficiency(env, k, Rational::Parse(defender_total), {abstract, state_budget});
  json doc = {{"verdict", ToString(r.verdict)}, {"explored_states", r.explored_states}, {"abstract", r.abstract}};
  if (r.breach) {
    json moves = json::array();
    for (NodeId v : r.breach->moves) moves.push_back(env.graph().name(v));
    doc["breach"] = {{"start", env.graph().name(r.breach->start)},
                     {"moves", moves},
                     {"target", env.graph().name(r.breach->target)},
                     {"win_step", r.breach->win_step}};
  }
  return doc.dump();
}

std::string Necessity(int path_len, int k, int alpha, const std::string& defender_total, int chain, bool ring) {
  const auto r = VerifyNecessity(GadgetSpec{path_len, k, alpha, chain, ring}, Rational::Parse(defender_total));
  return json{{"verdict", ToString(r.verdict)},
              {"units", r.units},
              {"minimum_units", r.minimum_units},
              {"policy_breached", r.policy_breached},
              {"trace", SerializeTrace(r.policy_game.trace)}}
      .dump();
}

std::string Gadget(int path_len, int k, int alpha, int chain, bool ring) {
  return SerializeEnvironment(BuildGadget({path_len, k, alpha, chain, ring}));
}

}  // namespace
}  // namespace ddab

PYBIND11_MODULE(_core, m) {
  using namespace ddab;
  m.doc() = "Blotto path guarding core";

  static py::exception<Error> error(m, "Error");
  static py::exception<InputError> input_error(m, "InputError", error.ptr());
  static py::exception<EnvironmentError> environment_error(m, "EnvironmentError", input_error.ptr());
  static py::exception<CorruptionError> corruption_error(m, "CorruptionError", error.ptr());
  static py::exception<BudgetExceededError> budget_error(m, "BudgetExceededError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const EnvironmentError& e) {
      environment_error(e.what());
    } catch (const InputError& e) {
      input_error(e.what());
    } catch (const CorruptionError& e) {
      corruption_error(e.what());
    } catch (const BudgetExceededError& e) {
      budget_error(e.what());
    } catch (const Error& e) {
      error(e.what());
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("required_units", &RequiredUnits, py::arg("path_len"), py::arg("k"));
  m.def(
      "required_assets",
      [](int path_len, int k, const std::string& attacker_total) {
        return RequiredAssets(path_len, k, Rational::Parse(attacker_total)).ToString();
      },
      py::arg("path_len"), py::arg("k"), py::arg("attacker_total") = "1");
  m.def("minimum_covering_deployment", &MinimumCoveringDeployment, py::arg("path_len"), py::arg("k"),
        py::call_guard<py::gil_scoped_release>());
  m.def("play", &PlayJson, py::arg("config"), py::arg("base_dir") = ".", py::call_guard<py::gil_scoped_release>());
  m.def("replay", &ReplayText, py::arg("trace"));
  m.def("verify_sufficiency", &Sufficiency, py::arg("environment"), py::arg("k"), py::arg("defender_total"),
        py::arg("abstract") = true, py::arg("state_budget") = 5'000'000, py::call_guard<py::gil_scoped_release>());
  m.def("verify_necessity", &Necessity, py::arg("path_len"), py::arg("k"), py::arg("alpha"),
        py::arg("defender_total"), py::arg("chain") = -1, py::arg("ring") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("gadget", &Gadget, py::arg("path_len"), py::arg("k"), py::arg("alpha"), py::arg("chain") = -1,
        py::arg("ring") = false);

  py::class_<PlayService>(m, "PlayService")
      .def(py::init([](const std::string& base_dir, long ttl_seconds) {
             PlayOptions opts;
             opts.base_dir = base_dir;
             opts.ttl = std::chrono::seconds(ttl_seconds);
             return std::make_unique<PlayService>(opts);
           }),
           py::arg("base_dir") = ".", py::arg("ttl_seconds") = 1800)
      .def("handle", &PlayService::HandleText, py::arg("message"))
      .def_property_readonly("session_count", &PlayService::session_count);
}
