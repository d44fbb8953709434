# Copyright 2026 The ncpt Authors
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
"""Smoke tests for the Python extension module."""

import json
import math
import os
from pathlib import Path

import pytest

import ncpt

DATA = Path(os.environ.get("NCPT_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def test_two_order_example_prefers_reversed_order():
    text = (DATA / "two_order_example.json").read_text()
    rows, best = ncpt.min_error_over_orders(text, 0.4, 0.6)
    errors = [e for _, e in rows]
    assert errors == pytest.approx([0.35, 0.266], abs=1e-9)
    assert best == 1


def test_pvm_detection_matches_classical():
    p0 = [0.2, 0.3, 0.5]
    p1 = [0.6, 0.3, 0.1]
    classical = ncpt.classical_min_error(0.5, 0.5, p0, p1)
    pvm = ncpt.solve_pvm_detection(0.5, 0.5, p0, p1)
    assert pvm["error"] == pytest.approx(classical["error"], abs=1e-12)
    assert pvm["holevo"]


def test_order_povm_is_complete():
    c, s = math.cos(0.7), math.sin(0.7)
    first = [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    second = [[[c * c, c * s], [c * s, s * s]], [[s * s, -c * s], [-c * s, c * c]]]
    elements, labels = ncpt.order_povm([first, second])
    assert labels == ["1,1", "1,2", "2,1", "2,2"]
    total = [[sum(e[i][j] for e in elements) for j in range(2)] for i in range(2)]
    assert abs(total[0][0] - 1) < 1e-12 and abs(total[1][1] - 1) < 1e-12
    assert abs(total[0][1]) < 1e-12
    probs = ncpt.sequence_distribution([[0.5, 0], [0, 0.5]], elements)
    assert sum(probs) == pytest.approx(1.0, abs=1e-12)


def test_orthocomplement_of_complementary_chain_is_identity():
    e = [[1, 0], [0, 0]]
    f = [[0, 0], [0, 1]]
    ortho = ncpt.operation_orthocomplement([e, f])
    assert abs(ortho[0][0] - 1) < 1e-9 and abs(ortho[1][1] - 1) < 1e-9


def test_state_exists_verdicts():
    feasible = ncpt.state_exists([[[0.9, 0], [0, 0.1]], [[0.1, 0], [0, 0.9]]], [0.5, 0.5])
    assert feasible["verdict"] == "Feasible"
    assert feasible["certificate"] is None
    blocked = ncpt.state_exists([[[0.5]], [[0.5]]], [0.9, 0.1])
    assert blocked["verdict"] == "Certificate"
    v = blocked["certificate"]
    assert v[0] * 0.9 + v[1] * 0.1 < 0


def test_simulate_counts_is_deterministic():
    a = json.loads(ncpt.simulate_counts(500, seed=7))
    b = json.loads(ncpt.simulate_counts(500, seed=7))
    assert a == b
    assert a["runs"]["0"] + a["runs"]["1"] == 500


def test_invalid_input_raises():
    with pytest.raises(ncpt.NcptError):
        ncpt.classical_min_error(0.5, 0.6, [1.0], [1.0])
