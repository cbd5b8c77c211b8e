# Copyright 2026 The rmsearch Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import pytest

import rmsearch


def test_matching_pennies_converges():
  game = rmsearch.matching_pennies()
  config = rmsearch.RmConfig()
  config.iterations = 2000
  result = rmsearch.run_rm(game, config)
  avg = result.average_policies
  assert len(avg) == 2
  for policy in avg:
    assert math.isclose(sum(policy), 1.0, abs_tol=1e-9)
    assert abs(policy[0] - 0.5) < 0.05
  assert rmsearch.exploitability(game, avg) < 0.05


def test_exploitability_of_pure_profile():
  game = rmsearch.matching_pennies()
  # Both heads: the loser gains 2 by switching.
  assert rmsearch.exploitability(game, [[1.0, 0.0], [1.0, 0.0]]) == pytest.approx(2.0)
  value, action = rmsearch.best_response_value(game, [[1.0, 0.0], [1.0, 0.0]], 1)
  assert action == 1
  assert value == pytest.approx(1.0)


def test_random_game_is_zero_sum():
  game = rmsearch.random_zero_sum_game(3, 4, 11)
  assert game.action_counts == [3, 4]
  u = game.utility([2, 3])
  assert u[0] + u[1] == pytest.approx(0.0)


def test_bad_policy_raises():
  game = rmsearch.matching_pennies()
  with pytest.raises(ValueError):
    rmsearch.exploitability(game, [[1.0, 0.0]])


def test_seed_average_small():
  rm = rmsearch.RmConfig()
  rm.iterations = 64
  rm.linear = False
  rm.optimism = False
  report = rmsearch.seed_average_experiment(4, 4, rm, seeds=5, games=2, seed=0)
  assert report["seeds_per_game"] == 5
  assert report["avg_of_final"]["mean"] < report["single_final"]["mean"]


def test_sos_scores():
  assert rmsearch.sos_scores([2, 2, 0, 0]) == pytest.approx([0.5, 0.5, 0.0, 0.0])


def test_ratings_transitive_order():
  # 0 beats 1, 1 beats 2, ten times each.
  pairs = [(0, 1)] * 10 + [(1, 2)] * 10
  s = rmsearch.fit_ratings(3, pairs)
  assert s[0] > s[1] > s[2]
  assert rmsearch.rating_loss(s, pairs, 0.1) < rmsearch.rating_loss([0, 0, 0], pairs, 0.1)


def test_entropy_gradient_estimate():
  logits = [0.0, 0.5, 1.0]
  exact = rmsearch.exact_entropy_grad(logits)
  mean, se = rmsearch.entropy_grad_estimate(logits, 20000, seed=3)
  for e, m, s in zip(exact, mean, se):
    assert abs(e - m) < 5 * s + 1e-9


def test_play_game_blueprint():
  scores, record = rmsearch.play_game(["blueprint"] * 4, seed=5)
  assert sum(scores) == pytest.approx(1.0)
  doc = json.loads(record)
  assert doc["seed"] == 5
  state = rmsearch.initial_state()
  assert state.sc_counts() == [2, 2, 2, 2]
  assert not state.is_terminal()


def test_evaluate_tiny():
  report = rmsearch.evaluate_1v6("blueprint", "blueprint", 4, seed=1)
  assert report["a_seats"] == [0, 1, 2, 3]
  assert len(report["scores"]) == 4
