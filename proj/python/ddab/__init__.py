# Copyright 2026 The ddab Authors.
# SPDX-License-Identifier: Apache-2.0

"""Defender-attacker path guarding on graphs."""

import json

from ddab import _core
from ddab._core import (BudgetExceededError, CorruptionError, EnvironmentError, Error, InputError,
                        minimum_covering_deployment, required_assets, required_units)

__all__ = [
    "BudgetExceededError", "CorruptionError", "EnvironmentError", "Error", "InputError", "PlayService",
    "gadget", "minimum_covering_deployment", "play", "replay", "required_assets", "required_units",
    "verify_necessity", "verify_sufficiency",
]


def _text(doc):
  return doc if isinstance(doc, str) else json.dumps(doc)


def play(config, base_dir="."):
  """Plays one game. `config` is a dict or JSON text; the result has the trace as JSONL text."""
  return json.loads(_core.play(_text(config), base_dir))


def replay(trace):
  return json.loads(_core.replay(trace))


def verify_sufficiency(environment, k, defender_total, abstract=True, state_budget=5_000_000):
  return json.loads(_core.verify_sufficiency(_text(environment), k, str(defender_total), abstract, state_budget))


def verify_necessity(path_len, k, alpha, defender_total, chain=-1, ring=False):
  return json.loads(_core.verify_necessity(path_len, k, alpha, str(defender_total), chain, ring))


def gadget(path_len, k, alpha, chain=-1, ring=False):
  return json.loads(_core.gadget(path_len, k, alpha, chain, ring))


class PlayService:
  """Play sessions over dict messages."""

  def __init__(self, base_dir=".", ttl_seconds=1800):
    self._service = _core.PlayService(base_dir, ttl_seconds)

  def handle(self, message):
    return json.loads(self._service.handle(_text(message)))

  @property
  def session_count(self):
    return self._service.session_count
