"""Hilbert series of quotients by generic forms, computed degree by degree.

In the pure-power modes the first n generators are x_1^d, ..., x_n^d, so all
work happens in A = k[x]/(x_1^d, ..., x_n^d).  The degree-D piece of the ideal
inside A is spanned by the products m*g, m a basis monomial of A_{D-d} and g
an extra generator, hence

    dim R_D = dim A_D - rank(M_D)

where row (g, m) of M_D holds the coordinates of m*g in the basis of A_D.
Coefficients of a form on the pure powers x_i^d vanish in A, so sampling
random forms on the basis of A_d alone loses nothing.

Genericity is modeled by uniform random coefficients in F_p.  Any concrete
choice has graded dimensions at least those of the generic choice, so a
trial whose series equals the lower bound F_{n,r,d} pins the generic series
down; a trial above it proves nothing.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import factorial
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import linalg
from .basis import GradedBasis
from .series import IntSeries, conjectured_series


class Mode(str, Enum):
    PURE_PLUS_GENERIC = "pure-plus-generic"
    LINEAR_POWERS = "linear-powers"
    DIRECT_GENERIC = "direct-generic"

    def __str__(self) -> str:
        return self.value


class StopReason(str, Enum):
    REACHED_ZERO = "reached-zero"
    HIT_CAP = "hit-cap"

    def __str__(self) -> str:
        return self.value


MAX_N = 16
MAX_D = 16


@dataclass(frozen=True)
class JobSpec:
    n: int
    r: int
    d: int
    mode: Mode = Mode.PURE_PLUS_GENERIC
    prime: int = linalg.DEFAULT_PRIME
    seed: int = 42
    max_degree: Optional[int] = None
    trials: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        self.validate()

    def validate(self) -> None:
        n, r, d = self.n, self.r, self.d
        if not 1 <= n <= MAX_N:
            raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
        if not 2 <= d <= MAX_D:
            raise ValueError(f"d must be in 2..{MAX_D}, got {d}")
        if r < 0:
            raise ValueError(f"r must be nonnegative, got {r}")
        if self.mode is not Mode.DIRECT_GENERIC and r < n:
            raise ValueError(f"{self.mode} needs r >= n (the pure powers come first); got r={r}, n={n}")
        if self.mode is Mode.DIRECT_GENERIC and r < n and self.max_degree is None:
            raise ValueError("direct-generic with r < n never terminates; pass max_degree")
        if self.max_degree is not None and self.max_degree < 0:
            raise ValueError(f"max_degree must be nonnegative, got {self.max_degree}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        linalg.check_prime(self.prime)
        if self.prime <= d:
            raise ValueError(f"prime {self.prime} must exceed d={d}")
        if self.prime >= linalg.MAX_KERNEL_PRIME:
            raise ValueError(f"prime must be below 2**31, got {self.prime}")

    @property
    def cap(self) -> int:
        """Highest degree computed: explicit max_degree or the socle bound + 1."""
        if self.max_degree is not None:
            return self.max_degree
        return self.n * (self.d - 1) + 1

    @property
    def extra_forms(self) -> int:
        return self.r if self.mode is Mode.DIRECT_GENERIC else self.r - self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "d": self.d,
            "mode": self.mode.value,
            "prime": self.prime,
            "seed": self.seed,
            "trials": self.trials,
            "max_degree": self.cap,
        }

    @classmethod
    def from_dict(cls, data: dict) -> JobSpec:
        keys = ("n", "r", "d", "mode", "prime", "seed", "max_degree", "trials")
        return cls(**{k: data[k] for k in keys if k in data})


@dataclass
class DegreeStats:
    degree: int
    rows: int
    cols: int
    rank: int

    def to_dict(self) -> dict:
        return {"degree": self.degree, "rows": self.rows, "cols": self.cols, "rank": self.rank}


@dataclass
class HilbertResult:
    spec: JobSpec
    trial: int
    trial_seed: int
    prime: int
    dims: list[int]
    stop_reason: StopReason
    degrees: list[DegreeStats] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def series(self) -> IntSeries:
        return IntSeries(self.dims)

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "trial": self.trial,
            "trial_seed": self.trial_seed,
            "prime": self.prime,
            "dims": list(self.dims),
            "series": self.series.to_json(),
            "stop_reason": self.stop_reason.value,
            "degrees": [s.to_dict() for s in self.degrees],
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


@dataclass
class Verdict:
    spec: JobSpec
    computed: IntSeries
    conjectured: IntSeries
    delta: IntSeries
    attained: bool
    trials: list[HilbertResult]

    @property
    def field_note(self) -> str:
        return f"verified over F_{self.spec.prime}"


@dataclass
class PowerComparison:
    """Linear-powers runs over several trials and primes against F_{n,r,d}."""

    n: int
    r: int
    d: int
    primes: list[int]
    seed: int
    runs: list[HilbertResult]
    candidate: IntSeries
    conjectured: IntSeries
    delta: IntSeries
    consensus: bool


# ---------------------------------------------------------------------------
# seeds and forms


def trial_seed(job_seed: int, trial: int) -> int:
    return linalg.splitmix64(job_seed ^ (trial << 32))


def form_seed(seed: int, index: int) -> int:
    return linalg.splitmix64(seed ^ index)


def make_generic_form(basis: GradedBasis, d: int, rng: linalg.Rng, p: int) -> np.ndarray:
    """Uniform random coefficients on every monomial of the degree-d basis."""
    return np.array([linalg.random_fp(rng, p) for _ in range(basis.size(d))], dtype=np.int64)


def linear_power_coefficients(c: Sequence[int], basis: GradedBasis, d: int, p: int) -> np.ndarray:
    """Coordinates of (c_1 x_1 + ... + c_n x_n)^d on the degree-d basis.

    Monomial x^a carries d!/prod(a_i!) * prod(c_i^a_i); with a bounded basis
    the pure powers x_i^d are simply absent, i.e. reduced away.
    """
    if p <= d:
        raise ValueError(f"prime {p} must exceed d={d}")
    c = [int(v) % p for v in c]
    out = []
    for a in basis.exps(d).tolist():
        coef = factorial(d)
        for ai in a:
            coef //= factorial(ai)
        coef %= p
        for ci, ai in zip(c, a):
            coef = coef * pow(ci, ai, p) % p
        out.append(coef)
    return np.array(out, dtype=np.int64)


def make_linear_power_form(basis: GradedBasis, d: int, rng: linalg.Rng, p: int) -> np.ndarray:
    """d-th power of a uniformly random linear form.  Degenerate draws are kept."""
    c = [linalg.random_fp(rng, p) for _ in range(basis.n)]
    return linear_power_coefficients(c, basis, d, p)


def basis_for(spec: JobSpec) -> GradedBasis:
    if spec.mode is Mode.DIRECT_GENERIC:
        return GradedBasis(spec.n)
    return GradedBasis(spec.n, spec.d)


def make_forms(spec: JobSpec, seed: int, basis: Optional[GradedBasis] = None) -> np.ndarray:
    """The extra generators of one trial, one row per form.

    Form j draws from its own stream seeded by ``form_seed(seed, j)``, so the
    first k forms do not depend on how many forms follow.
    """
    basis = basis or basis_for(spec)
    make: Callable = make_linear_power_form if spec.mode is Mode.LINEAR_POWERS else make_generic_form
    rows = [make(basis, spec.d, linalg.Rng(form_seed(seed, j)), spec.prime)
            for j in range(spec.extra_forms)]
    if not rows:
        return np.zeros((0, basis.size(spec.d)), dtype=np.int64)
    return np.vstack(rows)


def pure_power_forms(n: int, d: int) -> np.ndarray:
    """x_1^d, ..., x_n^d as coordinate rows on the full degree-d basis."""
    full = GradedBasis(n)
    out = np.zeros((n, full.size(d)), dtype=np.int64)
    for i in range(n):
        e = np.zeros((1, n), dtype=np.uint8)
        e[0, i] = d
        out[i, full.index_of(e)[0]] = 1
    return out


def embed_forms(forms: np.ndarray, n: int, d: int) -> np.ndarray:
    """Move rows from the bounded degree-d basis onto the full basis."""
    bounded = GradedBasis(n, d)
    full = GradedBasis(n)
    cols = full.index_of(bounded.exps(d))
    out = np.zeros((forms.shape[0], full.size(d)), dtype=np.int64)
    out[:, cols] = forms
    return out


# ---------------------------------------------------------------------------
# the degree loop


def multiplication_matrix(basis: GradedBasis, forms: np.ndarray, d: int, D: int) -> np.ndarray:
    """M_D: one row per (form, monomial of degree D-d), columns = degree-D basis."""
    table = basis.product_table(D - d, d)
    low = table.shape[0]
    m = np.zeros((forms.shape[0] * low, basis.size(D)), dtype=np.int64)
    ii, kk = np.nonzero(table >= 0)
    cc = table[ii, kk]
    for j in range(forms.shape[0]):
        m[j * low + ii, cc] = forms[j, kk]
    return m


def dims_from_forms(
    basis: GradedBasis,
    forms: np.ndarray,
    d: int,
    p: int,
    max_degree: int,
    stop_at_zero: bool = True,
) -> tuple[list[int], StopReason, list[DegreeStats]]:
    """Graded dimensions of (basis ring)/(forms) for degrees 0..max_degree."""
    dims: list[int] = []
    stats: list[DegreeStats] = []
    for D in range(max_degree + 1):
        cols = basis.size(D)
        if D < d or forms.shape[0] == 0:
            rk = 0
        else:
            m = multiplication_matrix(basis, forms, d, D)
            rk = linalg.rank(m, p)
            stats.append(DegreeStats(D, m.shape[0], cols, rk))
        dims.append(cols - rk)
        if stop_at_zero and dims[-1] == 0:
            return dims, StopReason.REACHED_ZERO, stats
    return dims, StopReason.HIT_CAP, stats


def hilbert_series(spec: JobSpec, trial: int = 0, stop_at_zero: bool = True) -> HilbertResult:
    """Run one trial of ``spec``."""
    start = time.perf_counter()
    seed = trial_seed(spec.seed, trial)
    basis = basis_for(spec)
    forms = make_forms(spec, seed, basis)
    dims, reason, stats = dims_from_forms(basis, forms, spec.d, spec.prime, spec.cap, stop_at_zero)
    elapsed = (time.perf_counter() - start) * 1000.0
    return HilbertResult(spec, trial, seed, spec.prime, dims, reason, stats, elapsed)


def _run(task: tuple[JobSpec, int]) -> HilbertResult:
    return hilbert_series(*task)


def run_trials(tasks: Iterable[tuple[JobSpec, int]], jobs: int = 1) -> list[HilbertResult]:
    """Run (spec, trial) pairs, in parallel when ``jobs > 1``; order is preserved."""
    tasks = list(tasks)
    if jobs <= 1 or len(tasks) <= 1:
        return [_run(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, tasks))


# ---------------------------------------------------------------------------
# verdicts


def _conjectured_for(spec: JobSpec) -> IntSeries:
    return conjectured_series(spec.n, spec.r, spec.d, spec.cap if spec.r < spec.n else None)


def make_verdict(spec: JobSpec, results: list[HilbertResult]) -> Verdict:
    conj = _conjectured_for(spec)
    hits = [res.series for res in results if res.series == conj]
    # Every specialization sits at or above the generic series, so the
    # lexicographically smallest trial is the best available evidence.
    computed = hits[0] if hits else min((res.series for res in results), key=lambda s: s.coeffs)
    return Verdict(spec, computed, conj, computed - conj, computed == conj, results)


def verify_conjecture(spec: JobSpec, jobs: int = 1) -> Verdict:
    """Attained when any trial's series equals F_{n,r,d}."""
    results = run_trials(((spec, t) for t in range(spec.trials)), jobs)
    return make_verdict(spec, results)


def coefficientwise_min(series: Sequence[IntSeries]) -> IntSeries:
    length = max(len(s) for s in series)
    return IntSeries(min(s[i] for s in series) for i in range(length))


def compare_powers(
    n: int,
    r: int,
    d: int,
    trials: int = 3,
    primes: Sequence[int] = (linalg.DEFAULT_PRIME,),
    seed: int = 42,
    jobs: int = 1,
    max_degree: Optional[int] = None,
) -> PowerComparison:
    """Estimate Q_{n,r,d} from linear-powers runs over every (prime, trial).

    Random specializations can only inflate dimensions, so the candidate is
    the coefficientwise minimum; ``consensus`` says whether all runs agreed.
    """
    if not primes:
        raise ValueError("at least one prime is required")
    specs = [JobSpec(n, r, d, Mode.LINEAR_POWERS, p, seed, max_degree, trials) for p in primes]
    runs = run_trials(((s, t) for s in specs for t in range(trials)), jobs)
    series = [res.series for res in runs]
    candidate = coefficientwise_min(series)
    conj = conjectured_series(n, r, d)
    consensus = all(s == series[0] for s in series)
    return PowerComparison(n, r, d, list(primes), seed, runs, candidate, conj, candidate - conj, consensus)


def sweep(
    n: int,
    d: int,
    r_from: int,
    r_to: int,
    mode: Mode = Mode.LINEAR_POWERS,
    trials: int = 1,
    prime: int = linalg.DEFAULT_PRIME,
    seed: int = 42,
    jobs: int = 1,
    max_degree: Optional[int] = None,
) -> list[Verdict]:
    """One verdict per r in r_from..r_to (inclusive)."""
    if r_from > r_to:
        raise ValueError(f"empty range {r_from}..{r_to}")
    specs = [JobSpec(n, r, d, mode, prime, seed, max_degree, trials) for r in range(r_from, r_to + 1)]
    results = run_trials(((s, t) for s in specs for t in range(trials)), jobs)
    return [make_verdict(s, results[i * trials:(i + 1) * trials]) for i, s in enumerate(specs)]
