# Copyright 2026 The ddab Authors.
# SPDX-License-Identifier: Apache-2.0

import json
import os

import pytest

import ddab

SCENARIOS = os.path.join(os.path.dirname(__file__), "..", "..", "scenarios")


def test_required_assets():
  assert [ddab.required_units(23, k) for k in range(4)] == [23, 15, 11, 9]
  assert ddab.required_assets(23, 1, "1/2") == "15/2"
  assert ddab.required_units(2, 0) == 2


def test_minimum_covering_deployment_matches_bound():
  for n in range(3, 12):
    assert ddab.minimum_covering_deployment(n, 1) == ddab.required_units(n, 1)


def test_play_and_replay_scenario():
  with open(os.path.join(SCENARIOS, "tracking.json")) as f:
    config = json.load(f)
  out = ddab.play(config, base_dir=SCENARIOS)
  assert out["result"] == "DEFENDED_CYCLE"
  assert out["expectation_failures"] == []
  again = ddab.replay(out["trace"])
  assert again["result"] == out["result"]
  assert again["steps"] == out["steps"]


def test_gadget_below_bound_is_breached():
  env = ddab.gadget(5, 1, 2)
  assert "xi" in env["nodes"]
  low = ddab.verify_necessity(5, 1, 2, "2")
  assert low["verdict"] == "ATTACKER_WINS"
  assert ddab.replay(low["trace"])["result"] == "ATTACKER_WIN"
  assert ddab.verify_sufficiency(env, 1, "3")["verdict"] == "SAFE_CLOSED"


def test_errors_are_typed():
  with pytest.raises(ddab.InputError):
    ddab.gadget(5, 1, 9)
  with pytest.raises(ddab.CorruptionError):
    ddab.replay('{"record": "step"}\n')


def test_play_service_roundtrip():
  service = ddab.PlayService(base_dir=SCENARIOS)
  s = service.handle({"type": "new", "config": {"environment": "demo23_env.json", "k": 1,
                                                "defender_total": "eq9", "attacker_start": "a3"}})
  assert s["type"] == "state"
  assert s["required_assets"] == "15/1"
  move = {"type": "move", "session": s["session"], "flows": [{"from": "a3", "to": "a2", "amount": "1/1"}]}
  nxt = service.handle(move)
  assert nxt["t"] == 1
  assert service.handle("{oops")["code"] == "bad_request"
  assert service.session_count == 1
