"""Seeded G(n, p) sampling and Monte Carlo experiments.

Every sample is drawn from a Philox counter-based generator keyed on
``(seed, trial)``; pair ``j`` (in lexicographic order) uses the ``j``-th
64-bit output and is kept when its top 53 bits fall below
``floor(p * 2**53)``.  Trial ``k`` uses the same stream at every grid point,
so samples are coupled across p and a run is reproducible whatever the
execution order.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

import numpy as np

from .classify import classify
from .density import family_two_density, max_density
from .errors import DomainError, ResourceError
from .explorer import scan_bad_clusters
from .graph import Graph, GraphFamily
from .oracle import good_colouring

CSV_HEADER = ["n", "p", "trials", "successes", "undecided", "phat", "stderr", "mode", "family", "seed"]
WILSON_Z = 1.96
UNDECIDED_ABORT = Fraction(1, 5)
SEED_MASK = (1 << 64) - 1


class Mode(enum.Enum):
    RAMSEY = "RAMSEY"
    CLUSTER_SCAN = "CLUSTER_SCAN"
    UNICYCLIC = "UNICYCLIC"


def as_probability(p) -> Fraction:
    """Exact value of p: decimal strings and Decimals are read exactly,
    floats by their binary value."""
    if isinstance(p, Fraction):
        q = p
    elif isinstance(p, (str, Decimal)):
        q = Fraction(Decimal(str(p)))
    elif isinstance(p, int):
        q = Fraction(p)
    else:
        q = Fraction(float(p))
    if not 0 <= q <= 1:
        raise DomainError(f"probability {p} outside [0, 1]")
    return q


def dyadic_threshold(p) -> int:
    q = as_probability(p)
    return math.floor(q * (1 << 53))


def pair_uniforms(n: int, seed: int, stream: int = 0) -> np.ndarray:
    """53-bit integers, one per vertex pair in lexicographic order."""
    m = n * (n - 1) // 2
    gen = np.random.Philox(key=np.array([seed & SEED_MASK, stream & SEED_MASK], dtype=np.uint64))
    raw = gen.random_raw(m) if m else np.zeros(0, dtype=np.uint64)
    return raw >> np.uint64(11)


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def sample_gnp(n: int, p, seed: int, stream: int = 0) -> Graph:
    if n < 0:
        raise DomainError("n must be non-negative")
    thr = dyadic_threshold(p)
    keep = pair_uniforms(n, seed, stream) < np.uint64(thr) if thr < (1 << 53) else np.ones(n * (n - 1) // 2, bool)
    iu, ju = _pairs(n)
    return Graph(n, tuple(zip(iu[keep].tolist(), ju[keep].tolist())))


# -- experiments ---------------------------------------------------------------------


@dataclass
class SweepConfig:
    n: int
    p_grid: Sequence
    trials: int
    family: GraphFamily
    seed: int
    mode: Mode = Mode.RAMSEY
    r: int = 2
    p_labels: Sequence[str] | None = None
    component_cap: int | None = None  # largest searched component, in edges
    budget: int | None = 2_000_000  # search nodes per sample
    jobs: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError("trials must be at least 1")
        if self.p_labels is None:
            self.p_labels = [_label(p) for p in self.p_grid]
        self.p_grid = [as_probability(p) for p in self.p_grid]
        if len(self.p_labels) != len(self.p_grid):
            raise DomainError("one label per grid point")
        self.mode = Mode(self.mode)


def _label(p) -> str:
    if isinstance(p, (str, Decimal)):
        return str(p).strip()
    if isinstance(p, float):
        return repr(p)
    p = Fraction(p)
    if 10 ** 12 % p.denominator == 0:
        return format(Decimal(p.numerator) / Decimal(p.denominator), "f")
    return f"{p.numerator}/{p.denominator}"


@dataclass
class SweepRow:
    n: int
    p: str
    trials: int
    successes: int
    undecided: int
    phat: float
    stderr: float
    mode: str
    family: str
    seed: int
    mean_runtime: float = 0.0
    notes: list[str] = field(default_factory=list)

    def csv_fields(self) -> list[str]:
        return [str(self.n), self.p, str(self.trials), str(self.successes), str(self.undecided),
                f"{self.phat:.6f}", f"{self.stderr:.6f}", self.mode, self.family, str(self.seed)]


def wilson_half_width(successes: int, m: int, z: float = WILSON_Z) -> float:
    if m == 0:
        return float("nan")
    ph = successes / m
    return z * math.sqrt(ph * (1 - ph) / m + z * z / (4 * m * m)) / (1 + z * z / m)


def _one_trial(args) -> tuple[str, float]:
    """Returns ("S" | "F" | "U", seconds)."""
    mode, n, p, seed, k, fam, r, cap, budget = args
    t0 = time.perf_counter()
    G = sample_gnp(n, p, seed, k)
    if mode is Mode.RAMSEY:
        try:
            res = "S" if good_colouring(G, fam, r, cap=cap, budget=budget) is None else "F"
        except ResourceError:
            res = "U"
    elif mode is Mode.CLUSTER_SCAN:
        res = "F" if scan_bad_clusters(G, fam, family_two_density(fam)) else "S"
    else:
        res = "S" if all(g.e <= g.n for g in G.edge_components()) else "F"
    return res, time.perf_counter() - t0


def run_sweep(cfg: SweepConfig) -> list[SweepRow]:
    ex = ProcessPoolExecutor(max_workers=cfg.jobs) if cfg.jobs > 1 else None
    try:
        return [_sweep_point(cfg, p, label, ex) for p, label in zip(cfg.p_grid, cfg.p_labels)]
    finally:
        if ex is not None:
            ex.shutdown()


def _sweep_point(cfg: SweepConfig, p: Fraction, label: str, ex) -> SweepRow:
    tasks = [(cfg.mode, cfg.n, p, cfg.seed, k, cfg.family, cfg.r, cfg.component_cap, cfg.budget)
             for k in range(cfg.trials)]
    if ex is not None:
        results = list(ex.map(_one_trial, tasks, chunksize=max(1, cfg.trials // (4 * cfg.jobs))))
    else:
        results = [_one_trial(t) for t in tasks]
    succ = sum(1 for r, _ in results if r == "S")
    und = sum(1 for r, _ in results if r == "U")
    decided = cfg.trials - und
    if Fraction(und, cfg.trials) > UNDECIDED_ABORT:
        raise ResourceError(f"{und} of {cfg.trials} samples undecided at p={label}; "
                            "raise --budget or --max-edges", cap="undecided_rate", value=und)
    phat = succ / decided if decided else float("nan")
    return SweepRow(cfg.n, label, cfg.trials, succ, und, phat, wilson_half_width(succ, decided),
                    cfg.mode.value, cfg.family.label, cfg.seed, sum(t for _, t in results) / cfg.trials)


def ramsey_sweep(cfg: SweepConfig) -> list[SweepRow]:
    if cfg.mode is not Mode.RAMSEY:
        raise DomainError("ramsey_sweep needs mode RAMSEY")
    return run_sweep(cfg)


def cluster_experiment(cfg: SweepConfig) -> list[SweepRow]:
    if cfg.mode is not Mode.CLUSTER_SCAN:
        raise DomainError("cluster_experiment needs mode CLUSTER_SCAN")
    return run_sweep(cfg)


def unicyclic_experiment(cfg: SweepConfig) -> list[SweepRow]:
    if cfg.mode is not Mode.UNICYCLIC:
        raise DomainError("unicyclic_experiment needs mode UNICYCLIC")
    return run_sweep(cfg)


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.csv_fields())
    return buf.getvalue()


def monotone_within_noise(rows: Sequence[SweepRow], k: float = 3.0) -> bool:
    """phat(p1) <= phat(p2) + k * (stderr1 + stderr2) for adjacent grid points."""
    return all(a.phat <= b.phat + k * (a.stderr + b.stderr) for a, b in zip(rows, rows[1:]))


# -- threshold predictors ---------------------------------------------------------------


def threshold_exponent(fam: GraphFamily) -> Fraction:
    """-1 / m2(F) for families with m2 > 1."""
    m2 = family_two_density(fam)
    if m2 <= 1:
        raise DomainError(f"m2 = {m2} <= 1: use star_forest_exponent or the n^-1 regime")
    return -1 / m2


def star_forest_exponent(fam: GraphFamily, r: int) -> Fraction:
    """-(1 + 1/s) with s = (r - 1)(D - 1) + 1, where D is the smallest
    maximum degree among the star-forest members."""
    if r < 2:
        raise DomainError("r must be at least 2")
    degs = [F.max_degree() for F in fam if classify(F).is_star_forest]
    if not degs:
        raise DomainError("the family has no star forest")
    s = (r - 1) * (min(degs) - 1) + 1
    return -(1 + Fraction(1, s))


def is_sparse(G: Graph) -> bool:
    return max_density(G) <= 1
