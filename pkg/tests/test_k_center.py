import math
import pytest
import numpy as np

from kcenter import Instance, CenterConfiguration, Euclidean, LInf, Interval, SolverConfiguration, objective, clamp_radius
from kcenter.solvers import (
    exact_by_partition, alternating_heuristic, multi_start,
    farthest_point_init, clamp_centers, two_center_1d, SOLVE_METHODS,
)
from kcenter.errors import TooLarge, ValidationError, DimensionMismatch
from conftest import SQUARE, random_points, skew_triangle


class TestExact:
    def test_square_three_centers(self, square):
        ret = exact_by_partition(square, 3)
        assert ret.value == pytest.approx(0.5, abs=1e-9)
        assert ret.method == "exact_partition"
        assert objective(square, ret.centers) == pytest.approx(ret.value)

    def test_line_two_centers(self, line):
        ret = exact_by_partition(line, 2)
        assert ret.value == pytest.approx(0.5, abs=1e-9)
        assert ret.partition == ((0, 1), (2,))
        assert np.allclose(ret.centers.centers, [[0.5], [10.0]])
        assert ret.to_json()["partition"] == [[1, 2], [3]]

    def test_linf_square_two_equals_one(self, square_linf):
        assert exact_by_partition(square_linf, 2).value == pytest.approx(0.5)
        assert exact_by_partition(square_linf, 1).value == pytest.approx(0.5)

    def test_k_equals_m(self, square):
        ret = exact_by_partition(square, 4)
        assert ret.value == 0.0
        assert ret.partition == ((0,), (1,), (2,), (3,))

    def test_k_above_m_pads(self, line):
        ret = exact_by_partition(line, 5)
        assert ret.value == 0.0
        assert ret.centers.k == 5

    def test_fewer_blocks_are_padded(self):
        inst = Instance([[0, 0], [0.1, 0]], Euclidean())
        ret = exact_by_partition(inst, 1)
        assert ret.centers.k == 1
        assert ret.value == pytest.approx(0.05)

    def test_guard(self):
        rng = np.random.default_rng(0)
        inst = Instance(random_points(rng, 15, 2), Euclidean())
        with pytest.raises(TooLarge):
            exact_by_partition(inst, 2)
        with pytest.raises(TooLarge):
            exact_by_partition(Instance(SQUARE, Euclidean()), 6)

    def test_force(self):
        cfg = SolverConfiguration(MAX_POINTS=3)
        inst = Instance(SQUARE, Euclidean())
        with pytest.raises(TooLarge):
            exact_by_partition(inst, 2, config=cfg)
        assert exact_by_partition(inst, 2, force=True, config=cfg).value == pytest.approx(0.5)

    def test_bad_k(self, square):
        with pytest.raises(ValidationError):
            exact_by_partition(square, 0)

    def test_asymmetric_gauge(self):
        inst = Instance([0, 3, 20, 21], Interval(-2, 1))
        ret = exact_by_partition(inst, 2)
        assert ret.partition == ((0, 1), (2, 3))
        assert ret.value == pytest.approx(1.0)

    def test_workers_do_not_change_result(self):
        rng = np.random.default_rng(9)
        inst = Instance(random_points(rng, 8, 2), LInf())
        one = exact_by_partition(inst, 3, config=SolverConfiguration(WORKERS=1))
        many = exact_by_partition(inst, 3, config=SolverConfiguration(WORKERS=3))
        assert one.to_json() == many.to_json()

    @pytest.mark.slow
    def test_monotone_in_k(self):
        rng = np.random.default_rng(21)
        for _ in range(1000):
            inst = Instance(random_points(rng, int(rng.integers(4, 7)), 2), Euclidean())
            values = [exact_by_partition(inst, k).value for k in range(1, 5)]
            assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


class TestClamp:
    def test_far_center_clamped(self, square):
        x = CenterConfiguration([[0.5, 0], [0.5, 1], [1e6, 1e6]])
        ret = clamp_centers(square, x, 0)
        assert ret.centers[2].tolist() == [0.0, 0.0]
        assert objective(square, ret) == pytest.approx(objective(square, x))

    def test_inside_threshold_unchanged(self, square):
        x = CenterConfiguration([[0.5, 0], [0.5, 1], [1.5, 1.5]])
        assert clamp_centers(square, x, 0) is x

    def test_never_increases(self):
        rng = np.random.default_rng(4)
        for _ in range(1000):
            inst = Instance(random_points(rng, 5, 2), skew_triangle())
            x = CenterConfiguration(rng.uniform(-50, 50, size=(3, 2)))
            i0 = int(rng.integers(0, inst.m))
            ret = clamp_centers(inst, x, i0)
            assert objective(inst, ret) <= objective(inst, x) + 1e-12
            dist = skew_triangle().evaluate(ret.centers - inst.points[i0])
            assert np.all(dist <= clamp_radius(inst, i0) + 1e-12)

    def test_dimension(self, square):
        with pytest.raises(DimensionMismatch):
            clamp_centers(square, CenterConfiguration([1, 2]))


class TestAlternating:
    def test_line_from_split_init(self, line):
        ret = alternating_heuristic(line, 2, CenterConfiguration([4, 6]))
        assert ret.value == pytest.approx(0.5)
        assert ret.partition == ((0, 1), (2,))
        assert ret.iterations == 2
        assert ret.trace[0] == pytest.approx(4.0)

    def test_optimum_is_fixed_point(self, line):
        opt = exact_by_partition(line, 2)
        ret = alternating_heuristic(line, 2, opt.centers)
        assert ret.iterations == 1
        assert ret.value == pytest.approx(opt.value)

    def test_empty_block_keeps_center(self, line):
        ret = alternating_heuristic(line, 2, CenterConfiguration([5, 100]))
        assert ret.centers.centers[1].tolist() == [100.0]
        assert ret.value == pytest.approx(5.0)

    def test_wrong_k(self, line):
        with pytest.raises(ValidationError):
            alternating_heuristic(line, 3, CenterConfiguration([4, 6]))

    @pytest.mark.slow
    def test_trace_monotone_and_above_oracle(self):
        rng = np.random.default_rng(8)
        for _ in range(1000):
            inst = Instance(random_points(rng, 6, 2), Euclidean())
            k = int(rng.integers(2, 4))
            init = CenterConfiguration(rng.uniform(0, 1, size=(k, 2)))
            ret = alternating_heuristic(inst, k, init)
            assert all(b <= a + 1e-12 for a, b in zip(ret.trace, ret.trace[1:]))
            assert ret.value >= exact_by_partition(inst, k).value - 1e-9


class TestMultiStart:
    def test_square_three_centers(self, square):
        ret = multi_start(square, 3, restarts=20, seed=42)
        assert ret.value == pytest.approx(0.5, abs=1e-6)
        assert ret.seed == 42
        assert ret.method == "multi_start"

    def test_deterministic(self):
        rng = np.random.default_rng(2)
        inst = Instance(random_points(rng, 9, 2), Euclidean())
        a = multi_start(inst, 3, restarts=10, seed=5)
        b = multi_start(inst, 3, restarts=10, seed=5, config=SolverConfiguration(WORKERS=4))
        assert a.to_json() == b.to_json()

    def test_farthest_point_init(self, line):
        init = farthest_point_init(line, 2)
        assert init.centers.tolist() == [[0.0], [10.0]]
        assert farthest_point_init(line, 5).k == 5

    def test_bad_restarts(self, line):
        with pytest.raises(ValidationError):
            multi_start(line, 2, restarts=0)

    def test_methods_are_declared(self, line):
        reports = [
            exact_by_partition(line, 2),
            alternating_heuristic(line, 2, CenterConfiguration([4, 6])),
            multi_start(line, 2, restarts=3, seed=0),
            two_center_1d(Euclidean(), line.points),
        ]
        assert [r.method for r in reports] == list(SOLVE_METHODS)

    @pytest.mark.slow
    def test_close_to_oracle(self):
        rng = np.random.default_rng(1234)
        hits = 0
        trials = 100
        for _ in range(trials):
            m = int(rng.integers(4, 11))
            inst = Instance(random_points(rng, m, 2), Euclidean())
            k = int(rng.integers(2, 4))
            exact = exact_by_partition(inst, k)
            heur = multi_start(inst, k, restarts=50, seed=int(rng.integers(0, 2 ** 31)))
            assert heur.value >= exact.value - exact.accuracy - 1e-9
            if heur.value - exact.value <= 1e-4:
                hits += 1
        assert hits >= 90
