from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listramsey.errors import DomainError, ResourceError
from listramsey.graph import GraphFamily, complete
from listramsey.lab import (
    Mode,
    SweepConfig,
    as_probability,
    cluster_experiment,
    dyadic_threshold,
    is_sparse,
    monotone_within_noise,
    ramsey_sweep,
    rows_to_csv,
    sample_gnp,
    star_forest_exponent,
    threshold_exponent,
    unicyclic_experiment,
    wilson_half_width,
)

K3 = GraphFamily.of("K3")


class TestSampling:
    def test_extremes(self):
        assert sample_gnp(10, 0, 1).e == 0
        assert sample_gnp(10, 1, 1) == complete(10)
        assert sample_gnp(0, 0.5, 1).n == 0

    def test_edge_count_statistics(self):
        n, p = 100, 0.05
        m = n * (n - 1) // 2
        counts = np.array([sample_gnp(n, p, s).e for s in range(1000)])
        mu, sigma = p * m, math.sqrt(m * p * (1 - p))
        assert abs(counts.mean() - mu) / mu < 0.01
        assert np.all(np.abs(counts - mu) <= 4 * sigma)

    def test_uniform_pairs(self):
        # each pair is kept with frequency close to p (chi-square style bound)
        n, p, reps = 12, 0.3, 2000
        hits = np.zeros((n, n))
        for s in range(reps):
            for u, v in sample_gnp(n, p, s).edges:
                hits[u, v] += 1
        iu = np.triu_indices(n, 1)
        freq = hits[iu] / reps
        assert np.all(np.abs(freq - p) < 5 * math.sqrt(p * (1 - p) / reps))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 30), st.integers(0, 2 ** 32), st.integers(0, 100), st.integers(0, 100))
    def test_coupled_in_p(self, n, seed, a, b):
        lo, hi = sorted((Fraction(a, 100), Fraction(b, 100)))
        assert sample_gnp(n, lo, seed).edge_set <= sample_gnp(n, hi, seed).edge_set

    def test_deterministic_and_stream_dependent(self):
        assert sample_gnp(40, 0.2, 9, 3) == sample_gnp(40, 0.2, 9, 3)
        assert sample_gnp(40, 0.2, 9, 3) != sample_gnp(40, 0.2, 9, 4)

    def test_probability_parsing(self):
        assert as_probability("0.1") == Fraction(1, 10)
        assert as_probability(Decimal("0.25")) == Fraction(1, 4)
        assert as_probability(0.5) == Fraction(1, 2)
        assert dyadic_threshold("0.5") == 2 ** 52
        with pytest.raises(DomainError):
            as_probability("1.5")
        with pytest.raises(DomainError):
            sample_gnp(-1, 0.5, 0)


class TestStatistics:
    def test_wilson(self):
        # reference values from the closed form
        z = 1.96
        for s, m in [(0, 200), (100, 200), (199, 200), (5, 10)]:
            ph = s / m
            ref = z * math.sqrt(ph * (1 - ph) / m + z * z / (4 * m * m)) / (1 + z * z / m)
            assert wilson_half_width(s, m) == pytest.approx(ref)
        assert wilson_half_width(0, 200) > 0
        assert math.isnan(wilson_half_width(0, 0))

    def test_monotone(self):
        from listramsey.lab import SweepRow

        rows = [SweepRow(10, str(p), 100, 0, 0, ph, 0.01, "RAMSEY", "K3", 1) for p, ph in
                [(0.1, 0.0), (0.2, 0.5), (0.3, 0.45), (0.4, 1.0)]]
        assert monotone_within_noise(rows)
        rows[2].phat = 0.1
        assert not monotone_within_noise(rows)


class TestSweeps:
    def test_small_ramsey_sweep(self):
        cfg = SweepConfig(n=8, p_grid=["0", "0.9"], trials=20, family=K3, seed=3)
        rows = ramsey_sweep(cfg)
        assert rows[0].phat == 0.0 and rows[1].phat > 0.5
        text = rows_to_csv(rows)
        assert text.splitlines()[0] == "n,p,trials,successes,undecided,phat,stderr,mode,family,seed"
        assert text.splitlines()[1].startswith("8,0,20,0,0,0.000000,")
        assert rows_to_csv(ramsey_sweep(cfg)) == text

    def test_parallel_matches_serial(self):
        cfg = dict(n=9, p_grid=["0.5", "0.7"], trials=12, family=K3, seed=11)
        a = rows_to_csv(ramsey_sweep(SweepConfig(**cfg)))
        b = rows_to_csv(ramsey_sweep(SweepConfig(**cfg, jobs=2)))
        assert a == b

    def test_undecided_abort(self):
        cfg = SweepConfig(n=12, p_grid=["0.9"], trials=5, family=K3, seed=1, budget=1)
        with pytest.raises(ResourceError):
            ramsey_sweep(cfg)

    def test_mode_guard(self):
        cfg = SweepConfig(n=5, p_grid=["0.1"], trials=2, family=K3, seed=1)
        with pytest.raises(DomainError):
            cluster_experiment(cfg)
        with pytest.raises(DomainError):
            unicyclic_experiment(cfg)

    def test_zero_p(self):
        for mode in (Mode.CLUSTER_SCAN, Mode.UNICYCLIC):
            cfg = SweepConfig(n=50, p_grid=["0"], trials=5, family=GraphFamily.of("K4"), seed=1, mode=mode)
            rows = cluster_experiment(cfg) if mode is Mode.CLUSTER_SCAN else unicyclic_experiment(cfg)
            assert rows[0].phat == 1.0

    def test_unicyclic_supercritical(self):
        cfg = SweepConfig(n=500, p_grid=[Fraction(10, 500)], trials=40, family=K3, seed=5, mode=Mode.UNICYCLIC)
        assert unicyclic_experiment(cfg)[0].phat <= 0.05

    def test_cluster_scan_degrades(self):
        n = 60
        cfg = SweepConfig(n=n, p_grid=[Fraction(1, n), Fraction(1, 2)], trials=20, family=K3, seed=2,
                          mode=Mode.CLUSTER_SCAN)
        lo, hi = cluster_experiment(cfg)
        assert lo.phat > hi.phat

    def test_labels(self):
        cfg = SweepConfig(n=5, p_grid=["0.10", 0.1, Fraction(1, 3), Fraction(1, 4)], trials=1, family=K3, seed=0)
        assert cfg.p_labels == ["0.10", "0.1", "1/3", "0.25"]


class TestExponents:
    def test_threshold(self):
        assert threshold_exponent(GraphFamily.of("K3")) == Fraction(-1, 2)
        assert threshold_exponent(GraphFamily.of("K4")) == Fraction(-2, 5)
        assert threshold_exponent(GraphFamily.of("K3", "K4")) == Fraction(-1, 2)
        with pytest.raises(DomainError):
            threshold_exponent(GraphFamily.of("P4"))

    @pytest.mark.parametrize("name,r,exp", [("S2", 2, Fraction(-3, 2)), ("S3", 3, Fraction(-6, 5)),
                                            ("K2+K2", 2, Fraction(-2))])
    def test_star_forest(self, name, r, exp):
        assert star_forest_exponent(GraphFamily.of(name), r) == exp

    def test_star_forest_errors(self):
        with pytest.raises(DomainError):
            star_forest_exponent(GraphFamily.of("K3"), 2)
        with pytest.raises(DomainError):
            star_forest_exponent(GraphFamily.of("S2"), 1)

    def test_sparse(self):
        assert is_sparse(complete(3)) and not is_sparse(complete(4))
