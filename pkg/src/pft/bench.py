"""Wall-clock sweeps of the partial transform against a full FFT.

Planning is excluded from the timed region, as is any FFT setup; only the
per-input work is measured. Inputs are seeded uniform [0, 1) samples held
as complex128 so both algorithms see the same data layout.
"""

import csv
import math
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from . import fft as _fft
from .errors import PftError, RatioOutOfRange
from .oracle import naive_dft, relative_l2
from .planner import DEFAULT_EPSILON, build_plan, select_divisor
from .transform import TargetRange, execute

CSV_HEADER = ["algo", "N", "M", "mu", "p", "r", "reps", "mean_ms", "stddev_ms", "rel_l2"]
MAX_N = 1 << 24
DEFAULT_REPS = 100
DEFAULT_WARMUP = 5
DEFAULT_ORACLE_MAX_N = 1 << 16
VARY_N_SIZES = tuple(1 << k for k in range(12, 23))
VARY_M_SIZES = tuple(1 << k for k in range(9, 19))
RATIOS = (1 / 32, 1 / 8, 1 / 2, 1, 2, 4)


@dataclass
class BenchRecord:
    algo: str
    N: int
    M: int
    mu: int
    p: int
    r: int
    reps: int
    mean_ms: float
    stddev_ms: float
    rel_l2: float
    samples_ms: list = field(default_factory=list, repr=False)

    @property
    def median_ms(self):
        return statistics.median(self.samples_ms)

    def row(self):
        return [self.algo, self.N, self.M, self.mu, self.p, self.r, self.reps,
                f"{self.mean_ms:.6f}", f"{self.stddev_ms:.6f}", repr(self.rel_l2)]


def time_call(fn, reps, warmup=DEFAULT_WARMUP):
    """Per-call wall time in milliseconds for ``reps`` calls after ``warmup``."""
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - t0) * 1e3)
    return samples


def _record(algo, N, M, mu, p, r, samples, rel):
    return BenchRecord(algo, N, M, mu, p, r, len(samples), statistics.fmean(samples),
                       statistics.pstdev(samples), rel, samples)


def signal(N, seed=0):
    rng = np.random.default_rng(seed)
    return rng.random(N).astype(np.complex128)


class _Job:
    """One timed configuration: the call, its metadata and how to score it."""

    def __init__(self, algo, N, M, mu, p, r, fn, check):
        self.algo, self.N, self.M, self.mu, self.p, self.r = algo, N, M, mu, p, r
        self.fn = fn
        self.check = check
        self.samples = []

    def record(self):
        return _record(self.algo, self.N, self.M, self.mu, self.p, self.r, self.samples, self.check())


class Runner:
    """Holds sweep settings and shared inputs/oracles across cells.

    Within a sweep every timed configuration is visited once per repetition,
    round-robin, so slow drift in machine speed lands on all cells alike
    instead of masquerading as a trend across the sweep.
    """

    def __init__(self, reps=DEFAULT_REPS, warmup=DEFAULT_WARMUP, epsilon=DEFAULT_EPSILON,
                 oracle_max_n=DEFAULT_ORACLE_MAX_N, seed=0, table=None,
                 with_naive=True, extra_baselines=None, force=False):
        if reps < 1:
            raise PftError("reps must be >= 1")
        self.reps = reps
        self.warmup = warmup
        self.epsilon = epsilon
        self.oracle_max_n = oracle_max_n
        self.seed = seed
        self.table = table
        self.with_naive = with_naive
        # name -> callable(a, indices) returning the coefficients; report-only
        self.extra_baselines = dict(extra_baselines or {})
        self.force = force
        self._signals = {}
        self._oracles = {}

    def _signal(self, N):
        if N > MAX_N and not self.force:
            raise PftError(f"N={N} exceeds {MAX_N}; pass force=True to run it anyway")
        if N not in self._signals:
            self._signals[N] = signal(N, self.seed)
        return self._signals[N]

    def _oracle(self, N, M, mu):
        if N > self.oracle_max_n:
            return None
        key = (N, M, mu)
        if key not in self._oracles:
            self._oracles[key] = naive_dft(self._signal(N), TargetRange(mu, M)).values
        return self._oracles[key]

    def _scorer(self, N, M, mu, estimate):
        def check():
            oracle = self._oracle(N, M, mu)
            return relative_l2(oracle, estimate()) if oracle is not None else math.nan
        return check

    def _pft_job(self, N, M, mu=0, p=None):
        a = self._signal(N)
        plan = build_plan(N, M, mu, p, self.epsilon, self.table)
        return _Job("pft", N, M, mu, plan.p, plan.r,
                    lambda: execute(plan, a, check_finite=False),
                    self._scorer(N, M, mu, lambda: execute(plan, a).values))

    def _fft_job(self, N, M, mu=0):
        a = self._signal(N)
        idx = np.arange(mu - M, mu + M + 1) % N
        _fft.get_plan(N)

        def run():
            return _fft.fft(a)[idx]

        return _Job("full_fft", N, M, mu, N, 0, run, self._scorer(N, M, mu, run))

    def _extra_jobs(self, N, M, mu=0):
        a = self._signal(N)
        idx = np.arange(mu - M, mu + M + 1)
        jobs = []
        for name, fn in self.extra_baselines.items():
            call = (lambda f: lambda: f(a, idx))(fn)
            jobs.append(_Job(name, N, M, mu, N, 0, call, self._scorer(N, M, mu, call)))
        return jobs

    def _run(self, jobs):
        for job in jobs:
            for _ in range(self.warmup):
                job.fn()
        for _ in range(self.reps):
            for job in jobs:
                t0 = time.perf_counter()
                job.fn()
                job.samples.append((time.perf_counter() - t0) * 1e3)
        return [job.record() for job in jobs]

    def pft(self, N, M, mu=0, p=None):
        return self._run([self._pft_job(N, M, mu, p)])[0]

    def full_fft(self, N, M, mu=0):
        return self._run([self._fft_job(N, M, mu)])[0]

    def naive(self, N, M, mu=0):
        a = self._signal(N)
        rng = TargetRange(mu, M)
        reps = min(self.reps, 3)
        samples = time_call(lambda: naive_dft(a, rng), reps, 0)
        return _record("naive", N, M, mu, N, 0, samples, 0.0)

    def _cell_jobs(self, N, M, mu, p=None):
        return [self._pft_job(N, M, mu, p), self._fft_job(N, M, mu), *self._extra_jobs(N, M, mu)]

    def _sweep(self, cells):
        """Time all cells interleaved; records come back grouped per cell."""
        groups = [self._cell_jobs(N, M, mu) for N, M, mu in cells]
        records = self._run([job for group in groups for job in group])
        out, i = [], 0
        for (N, M, mu), group in zip(cells, groups):
            out.extend(records[i:i + len(group)])
            i += len(group)
            if self.with_naive and N <= self.oracle_max_n:
                out.append(self.naive(N, M, mu))
        return out

    def cell(self, N, M, mu=0, p=None):
        records = self._run(self._cell_jobs(N, M, mu, p))
        if self.with_naive and N <= self.oracle_max_n:
            records.append(self.naive(N, M, mu))
        return records

    def vary_n(self, sizes=VARY_N_SIZES, M=1 << 9, mu=0):
        return self._sweep([(N, min(M, N // 2), mu) for N in sizes])

    def vary_m(self, N=1 << 22, halfwidths=VARY_M_SIZES, mu=0):
        return self._sweep([(N, M, mu) for M in halfwidths])

    def vary_ratio(self, N=1 << 22, halfwidths=VARY_M_SIZES, ratios=RATIOS, mu=0,
                   include_fft=True):
        """PFT at ``p = M / ratio`` for each ratio, plus the cost-model choice of p.

        Each M is one interleaved group.
        """
        records = []
        for M in halfwidths:
            ps = []
            for ratio in ratios:
                p = M / ratio
                if p == int(p) and 1 <= p <= N and N % int(p) == 0:
                    ps.append(int(p))
            try:
                auto_p, _ = select_divisor(N, M, self.table, self.epsilon)
                ps.append(auto_p)
            except RatioOutOfRange:
                pass
            jobs = []
            for p in dict.fromkeys(ps):
                try:
                    jobs.append(self._pft_job(N, M, mu, p))
                except RatioOutOfRange:
                    continue
            if include_fft:
                jobs.append(self._fft_job(N, M, mu))
            records.extend(self._run(jobs))
        return records


def write_csv(records, path_or_file):
    def _write(fh):
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(rec.row())

    if hasattr(path_or_file, "write"):
        _write(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            _write(fh)


def numpy_fft_baseline(a, idx):
    """External reference FFT (numpy/pocketfft); report-only."""
    return np.fft.fft(a)[idx % a.size]
