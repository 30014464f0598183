import copy
import random

import pytest

from rbswipt.config import get_path, get_preset, set_path
from rbswipt.model import OperatingPoint, evaluate_operating_point
from rbswipt.output import Column, write_curve_file
from rbswipt.sweep import (
    Axis,
    OptimizationError,
    SweepSpec,
    find_optimum,
    reduce_max,
    run_sweep,
)


def mu_spec(count=5) -> SweepSpec:
    return SweepSpec(scenario="paper-2022",
                     axis1=Axis("receiver.mu", 0.1, 0.9, count))


class TestAxis:
    def test_linear_values(self):
        ax = Axis("link.p_in", 50.0, 150.0, 5)
        assert ax.values() == [50.0, 75.0, 100.0, 125.0, 150.0]

    def test_log_values(self):
        ax = Axis("gain.l", 1e-7, 1e-5, 3, "log")
        vals = ax.values()
        assert vals[0] == pytest.approx(1e-7)
        assert vals[1] == pytest.approx(1e-6)
        assert vals[2] == pytest.approx(1e-5)

    def test_invalid(self):
        with pytest.raises(ValueError):
            Axis("x", 2.0, 1.0, 5)
        with pytest.raises(ValueError):
            Axis("x", 1.0, 2.0, 1)


class TestRunSweep:
    def test_matches_scalar_evaluation(self):
        spec = mu_spec(count=2)
        result = run_sweep(spec)
        for mu, point in zip(result.axis1_values, result.points):
            cfg = get_preset("paper-2022")
            set_path(cfg, "receiver.mu", mu)
            direct = evaluate_operating_point(cfg)
            assert point == direct

    def test_two_axis_random_cells(self):
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("geometry.r2", 0.85, 0.95, 6),
                         axis2=Axis("link.p_in", 50.0, 150.0, 5))
        result = run_sweep(spec)
        rng = random.Random(1)
        for _ in range(5):
            i = rng.randrange(6)
            j = rng.randrange(5)
            cfg = get_preset("paper-2022")
            set_path(cfg, "geometry.r2", result.axis1_values[i])
            set_path(cfg, "link.p_in", result.axis2_values[j])
            assert result.point(i, j) == evaluate_operating_point(cfg)

    def test_parallel_equals_serial(self):
        spec = mu_spec(count=7)
        assert run_sweep(spec).points == run_sweep(spec, workers=4).points

    def test_unstable_points_are_statuses_not_errors(self):
        # fr2 = 10 m leaves part of the distance range unstable at M = 12
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("geometry.d3", 2.0, 10.0, 9),
                         overrides=(("geometry.fr2", 10.0),))
        result = run_sweep(spec)
        statuses = set(result.statuses())
        assert "unstable" in statuses
        assert "ok" in statuses

    def test_overrides_applied(self):
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("receiver.mu", 0.1, 0.9, 2),
                         overrides=(("link.p_in", 150.0),))
        result = run_sweep(spec)
        assert get_path(result.config, "link.p_in") == 150.0


class TestReduceMax:
    @staticmethod
    def two_axis_result():
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("geometry.tim_magnification", 1.0, 12.0, 3),
                         axis2=Axis("geometry.d3", 2.0, 10.0, 5),
                         overrides=(("geometry.fr2", 11.0),))
        return run_sweep(spec)

    def test_elementwise_maximum(self):
        result = self.two_axis_result()
        curve = reduce_max(result, "spot_radius", over_axis=2)
        for i, y in enumerate(curve.y):
            vals = [result.point(i, j).spot_radius
                    for j in range(len(result.axis2_values))
                    if result.point(i, j).spot_radius is not None]
            assert y == max(vals)

    def test_constant_quantity(self):
        result = self.two_axis_result()
        curve = reduce_max(result, "p_in", over_axis=2)
        assert all(y == 100.0 for y in curve.y)

    def test_gap_marker_for_empty_slice(self):
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("geometry.tim_magnification", 12.0, 14.0, 2),
                         axis2=Axis("geometry.d3", 9.0, 10.0, 3),
                         overrides=(("geometry.fr2", 10.0),))
        curve = reduce_max(run_sweep(spec), "spot_radius", over_axis=2)
        assert curve.y == [None, None]
        assert curve.statuses == ["gap", "gap"]

    def test_tim_curve_below_uncompressed_curve(self):
        # spot maximum over the 2-10 m range: compressed cavities stay well
        # below the uncompressed one
        def curve_for(m):
            spec = SweepSpec(
                scenario="paper-2022",
                axis1=Axis("geometry.tim_magnification", m, m + 1e-9, 2),
                axis2=Axis("geometry.d3", 2.0, 10.0, 17),
                overrides=(("geometry.fr2", 11.0),))
            return reduce_max(run_sweep(spec), "spot_radius", over_axis=2)

        with_tim = curve_for(10.0)
        without = curve_for(1.0)
        assert all(a < b for a, b in zip(with_tim.y, without.y))

    def test_needs_two_axes(self):
        with pytest.raises(ValueError):
            reduce_max(run_sweep(mu_spec(2)), "p_beam", over_axis=2)


def quadratic_stub(vertex, path="receiver.mu"):
    def evaluate(cfg):
        x = get_path(cfg, path)
        return OperatingPoint(status="ok", p_in=0.0,
                              p_beam=-(x - vertex) ** 2)
    return evaluate


class TestFindOptimum:
    def test_recovers_quadratic_vertex(self):
        vertex = 0.4321
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("receiver.mu", 0.0, 1.0, 21))
        params, value = find_optimum(spec, "p_beam",
                                     evaluate_fn=quadratic_stub(vertex))
        assert params["receiver.mu"] == pytest.approx(vertex, abs=2e-6)
        assert value == pytest.approx(0.0, abs=1e-10)

    def test_minimize(self):
        vertex = 0.25
        def stub(cfg):
            x = get_path(cfg, "receiver.mu")
            return OperatingPoint(status="ok", p_in=0.0,
                                  p_beam=(x - vertex) ** 2)
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("receiver.mu", 0.0, 1.0, 11))
        params, value = find_optimum(spec, "p_beam", sense="min",
                                     evaluate_fn=stub)
        assert params["receiver.mu"] == pytest.approx(vertex, abs=2e-6)

    def test_optimal_output_coupling(self):
        # best M2 reflectivity for beam power at 100 W lands near 0.9
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("geometry.r2", 0.80, 0.99, 39),
                         overrides=(("gain.l", 0.15e-6),
                                    ("link.p_in", 100.0)))
        params, p_beam = find_optimum(spec, "p_beam")
        assert 0.88 <= params["geometry.r2"] <= 0.97
        assert p_beam > 0

    def test_efficiency_shares_argmax_with_power(self):
        overrides = (("gain.l", 0.15e-6), ("link.p_in", 100.0))
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("geometry.r2", 0.80, 0.99, 39),
                         overrides=overrides)
        p_params, _ = find_optimum(spec, "p_beam")
        e_params, _ = find_optimum(spec, "eta_b")
        assert p_params["geometry.r2"] == \
            pytest.approx(e_params["geometry.r2"], abs=1e-4)

    def test_no_stable_point_raises(self):
        def never(cfg):
            return OperatingPoint(status="unstable", p_in=0.0)
        spec = SweepSpec(scenario="paper-2022",
                         axis1=Axis("receiver.mu", 0.0, 1.0, 5))
        with pytest.raises(OptimizationError):
            find_optimum(spec, "p_beam", evaluate_fn=never)


class TestDeterminism:
    def test_identical_csv_bytes(self, tmp_path):
        for name in ("a.csv", "b.csv"):
            result = run_sweep(mu_spec(9))
            cols = [Column("mu", "", result.axis1_values),
                    Column("c_tilde", "bit/s/Hz",
                           [p.c_tilde for p in result.points]),
                    Column("status", "", result.statuses())]
            write_curve_file(tmp_path / name, "det-check", result.config,
                             cols)
        assert (tmp_path / "a.csv").read_bytes() == \
            (tmp_path / "b.csv").read_bytes()

    def test_csv_roundtrips_exact_floats(self, tmp_path):
        result = run_sweep(mu_spec(5))
        values = [p.c_tilde for p in result.points]
        write_curve_file(tmp_path / "c.csv", "rt", result.config,
                         [Column("c_tilde", "", values)])
        rows = [line for line in
                (tmp_path / "c.csv").read_text().splitlines()
                if line and not line.startswith("#")]
        parsed = [float(r) for r in rows[1:]]
        assert parsed == values
