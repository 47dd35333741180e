"""End-to-end checks on the worked examples and a grid cross-check of the partition oracle."""
import math
import itertools
import pytest
import numpy as np

from kcenter import Instance, CenterConfiguration, Euclidean, LInf, objective
from kcenter.solvers import (
    exact_by_partition, one_center_general, one_center_grid_oracle, two_center_split_bound,
)
from kcenter.analysis import (
    certify_local, compactness_diagnostic, unbounded_ray_probe, perturbation_probe,
    CERTIFIED, NOT_CERTIFIED, COMPACT, NONCOMPACT, NO_IMPROVEMENT,
)
from kcenter.cli import main
from conftest import SQUARE, LINE, TRIANGLE, SQRT_HALF


def grid_k_center(points, k, resolution=120, refinements=2):
    """k-center value from refined grid 1-centers of every block, and its accuracy.

    The optimum is the best labeling's largest block radius, so replacing each
    block radius by its grid value moves the answer by at most the worst grid accuracy.
    """
    m = points.shape[0]
    radius, accuracy = {}, 0.0
    for size in range(1, m + 1):
        for block in itertools.combinations(range(m), size):
            ret = one_center_grid_oracle(Euclidean(), points[list(block)], resolution, refinements)
            radius[block] = ret.radius
            accuracy = max(accuracy, ret.accuracy)

    best = math.inf
    for labels in itertools.product(range(k), repeat=m):
        worst = 0.0
        for c in range(k):
            block = tuple(i for i in range(m) if labels[i] == c)
            if block:
                worst = max(worst, radius[block])
        best = min(best, worst)
    return best, accuracy


def test_square_three_centers_has_free_center():
    inst = Instance(SQUARE, Euclidean())
    ret = exact_by_partition(inst, 3)
    assert ret.value == pytest.approx(0.5, abs=1e-9)
    x = CenterConfiguration([[0.5, 0.0], [0.5, 1.0], [7.0, 7.0]])
    assert objective(inst, x) == pytest.approx(0.5, abs=1e-12)
    assert unbounded_ray_probe(inst, x, 2, [1, 10, 1e6])


def test_linf_square():
    inst = Instance(SQUARE, LInf())
    v1 = one_center_general(LInf(), SQUARE, eps=1e-6)
    assert v1.radius == pytest.approx(0.5, abs=1e-6)
    grid = one_center_grid_oracle(LInf(), SQUARE)
    assert abs(grid.radius - 0.5) <= grid.accuracy + 1e-12
    assert exact_by_partition(inst, 2).value == pytest.approx(0.5, abs=1e-9)
    assert compactness_diagnostic(inst, 2).verdict == NONCOMPACT


def test_line_two_centers():
    inst = Instance(LINE, Euclidean())
    ret = exact_by_partition(inst, 2)
    assert ret.value == pytest.approx(0.5, abs=1e-9)
    assert ret.partition == ((0, 1), (2,))
    assert compactness_diagnostic(inst, 2).verdict == COMPACT


def test_certificates():
    pair = Instance([0, 1], Euclidean())
    cert = certify_local(pair, CenterConfiguration([0.5, 3]))
    assert cert.verdict == CERTIFIED
    assert cert.value == 0.5

    line = Instance(LINE, Euclidean())
    cert = certify_local(line, CenterConfiguration([5, 30]))
    assert cert.verdict == CERTIFIED
    assert cert.value == 5.0

    triangle = Instance(TRIANGLE, Euclidean())
    x = CenterConfiguration([[0.5, 0.5], [-0.01, -0.01]])
    assert certify_local(triangle, x).verdict == NOT_CERTIFIED
    assert perturbation_probe(triangle, x, 1e-3, 10000, seed=7).verdict == NO_IMPROVEMENT


def test_certified_ball_survives_probe():
    line = Instance(LINE, Euclidean())
    x = CenterConfiguration([5, 30])
    cert = certify_local(line, x)
    assert perturbation_probe(line, x, cert.stability_radius, 10000, seed=0).verdict == NO_IMPROVEMENT


def test_split_bound_on_square():
    ret = two_center_split_bound(SQUARE)
    assert ret.bound < SQRT_HALF - 1e-9
    assert ret.evaluated <= ret.bound + 1e-6
    assert compactness_diagnostic(Instance(SQUARE, Euclidean()), 2).verdict == COMPACT


@pytest.mark.slow
def test_partition_oracle_against_grid():
    rng = np.random.default_rng(2024)
    for trial in range(50):
        m = int(rng.integers(4, 8))
        k = 2 + trial % 2
        pts = rng.uniform(0, 1, size=(m, 2))
        inst = Instance(pts, Euclidean())
        ret = exact_by_partition(inst, k)
        assert objective(inst, ret.centers) == pytest.approx(ret.value, abs=1e-12)
        grid, accuracy = grid_k_center(pts, k)
        assert accuracy < 0.01
        assert abs(ret.value - grid) <= accuracy + ret.accuracy + 1e-9


def test_solve_reports_are_byte_identical(write_instance, tmp_path, monkeypatch):
    pts = np.random.default_rng(31).uniform(0, 1, size=(9, 2)).tolist()
    path = write_instance("pts", pts, {"kind": "euclidean"})
    texts = []
    for run, workers in enumerate(["1", "1", "1", "4"]):
        monkeypatch.setenv("KCENTER_WORKERS", workers)
        for method in ("exact", "heuristic"):
            out = str(tmp_path / ("%s_%d.json" % (method, run)))
            assert main(["solve", "--instance", path, "--k", "3", "--method", method, "--seed", "11", "--out", out]) == 0
            with open(out) as f:
                texts.append((method, f.read()))
    for method in ("exact", "heuristic"):
        assert len({text for name, text in texts if name == method}) == 1
