# Copyright 2026 The commlift Authors.
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
import pathlib

import numpy as np
import pytest

import commlift

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def one(x):
    return np.array([[x]], dtype=complex)


def test_szego_kernel_value():
    z = np.array([0.5 + 0.1j])
    w = np.array([0.2 - 0.3j])
    expected = 1.0 / (1.0 - z[0] * np.conj(w[0]))
    assert commlift.kernel_eval("ball", 1, [], z, w) == pytest.approx(expected, abs=1e-14)


def test_polydisc_kernel_value():
    z = np.array([0.3, -0.2j])
    w = np.array([0.1j, 0.4])
    expected = 1.0 / (1.0 - z[0] * np.conj(w[0])) ** 2 / (1.0 - z[1] * np.conj(w[1]))
    got = commlift.kernel_eval("polydisc", gamma=[2, 1], z=z, w=w)
    assert got == pytest.approx(expected, abs=1e-14)


def test_pick_eigenvalue_matches_numpy():
    nodes = [np.array([0.0]), np.array([0.5])]
    w = [0.9, -0.9]
    pick = np.array(
        [[(1 - w[i] * w[j]) / (1 - nodes[i][0] * np.conj(nodes[j][0])) for j in range(2)]
         for i in range(2)])
    direct = np.linalg.eigvalsh(pick).min()
    got = commlift.pick_min_eig(1, nodes, [one(v) for v in w])
    assert got == pytest.approx(direct, abs=1e-12)
    assert got < 0


def test_np_solve_interpolates_and_is_contractive():
    nodes = [np.array([0.1, 0.2j]), np.array([-0.3, 0.1])]
    targets = [one(0.2), one(-0.1j)]
    res = commlift.np_solve(1, nodes, targets)
    assert res.feasible
    assert res.violated is None
    assert res.node_residual < 1e-10
    for z, w in zip(nodes, targets):
        assert np.allclose(res.phi(z), w, atol=1e-10)
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = rng.normal(size=2) + 1j * rng.normal(size=2)
        p *= 0.9 / np.linalg.norm(p)
        assert np.linalg.norm(res.phi(p), 2) <= 1 + 1e-10
    cj = json.loads(res.phi.colligation_json())
    assert "rows" in cj


def test_np_solve_reports_violation():
    res = commlift.np_solve(1, [np.array([0.0]), np.array([0.5])], [one(0.9), one(-0.9)])
    assert not res.feasible
    assert res.violated == "positivity-1"
    assert res.phi is None


def test_run_exit_codes():
    code, rep = commlift.run((DATA / "mobius.json").read_text())
    assert code == 0 and rep["status"] == "solved"
    code, rep = commlift.run(json.loads((DATA / "two_node_infeasible.json").read_text()))
    assert code == 2 and rep["status"] == "infeasible"
    code, rep = commlift.run((DATA / "boundary_node.json").read_text())
    assert code == 1 and rep["error"]["kind"] == "ValidationError"
    code, rep = commlift.run("{not json")
    assert code == 1 and rep["error"]["kind"] == "ParseError"


def test_library_errors_are_raised():
    with pytest.raises(commlift.CommliftError):
        commlift.kernel_eval("annulus", z=np.array([0.1]), w=np.array([0.1]))
