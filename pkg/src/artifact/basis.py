"""Graded monomial bases of k[x_1..x_n] and of A = k[x]/(x_1^d, ..., x_n^d).

Monomials are rows of uint8 exponent arrays.  Within a degree the canonical
order is graded lex with x_1 > x_2 > ... > x_n, i.e. exponent tuples in
decreasing lexicographic order.  Because a uint8 row compares bytewise exactly
like the tuple, rows viewed as fixed-width byte strings can be sorted and
binary-searched directly, which is how products are mapped to column indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

MAX_EXPONENT = 255


@dataclass(frozen=True)
class ExponentVector:
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.exps):
            raise ValueError(f"negative exponent in {self.exps}")

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def __len__(self) -> int:
        return len(self.exps)

    def __str__(self) -> str:
        return format_monomial(self.exps)


def format_monomial(exps: Sequence[int]) -> str:
    factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(exps) if e]
    return "*".join(factors) if factors else "1"


def _compositions(n: int, D: int, bound: Optional[int]):
    # Yields exponent tuples of total degree D in decreasing lex order.
    if n == 1:
        if bound is None or D <= bound:
            yield (D,)
        return
    top = D if bound is None else min(D, bound)
    for e in range(top, -1, -1):
        rest = D - e
        if bound is not None and rest > (n - 1) * bound:
            break
        for tail in _compositions(n - 1, rest, bound):
            yield (e,) + tail


def enumerate_basis(n: int, d: int, D: int) -> list[ExponentVector]:
    """Degree-D monomials with every exponent at most d - 1, graded-lex order."""
    _check(n, d, D)
    return [ExponentVector(e) for e in _compositions(n, D, d - 1)] if D >= 0 else []


def enumerate_full(n: int, D: int) -> list[ExponentVector]:
    """All degree-D monomials in n variables, graded-lex order."""
    if n < 1 or D < 0:
        raise ValueError(f"need n >= 1, D >= 0; got n={n}, D={D}")
    return [ExponentVector(e) for e in _compositions(n, D, None)]


def dim_bounded(n: int, d: int, D: int) -> int:
    """Coefficient of t^D in (1 + t + ... + t^{d-1})^n."""
    _check(n, d, D)
    return sum((-1) ** j * comb(n, j) * comb(n - 1 + D - j * d, n - 1)
               for j in range(min(n, D // d) + 1))


def dim_full(n: int, D: int) -> int:
    if n < 1 or D < 0:
        raise ValueError(f"need n >= 1, D >= 0; got n={n}, D={D}")
    return comb(n - 1 + D, n - 1)


def multiply_reduce(m: ExponentVector, u: ExponentVector, d: int) -> Optional[ExponentVector]:
    """Product m*u in A, or None when some exponent reaches d (the product is 0)."""
    if len(m) != len(u):
        raise ValueError(f"length mismatch: {len(m)} vs {len(u)}")
    s = tuple(a + b for a, b in zip(m.exps, u.exps))
    if any(e >= d for e in s):
        return None
    return ExponentVector(s)


def _check(n: int, d: int, D: int) -> None:
    if n < 1 or d < 2 or D < 0:
        raise ValueError(f"need n >= 1, d >= 2, D >= 0; got n={n}, d={d}, D={D}")
    if d - 1 > MAX_EXPONENT:
        raise ValueError(f"d={d} exceeds the 8-bit exponent envelope")


def _keys(exps: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(exps, dtype=np.uint8)
    return a.view(np.dtype((np.void, a.shape[1]))).ravel()


@dataclass
class GradedBasis:
    """Per-degree monomial lists of A (``bound = d - 1``) or of the full ring.

    Degrees are materialized lazily and cached; a basis is otherwise read-only.
    """

    n: int
    d: Optional[int] = None
    _exps: dict[int, np.ndarray] = field(default_factory=dict, repr=False)
    _sorted: dict[int, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict, repr=False)

    @property
    def bounded(self) -> bool:
        return self.d is not None

    @property
    def bound(self) -> Optional[int]:
        return None if self.d is None else self.d - 1

    def exps(self, D: int) -> np.ndarray:
        """Degree-D monomials as an (N, n) uint8 array in canonical order."""
        if D not in self._exps:
            if D < 0:
                arr = np.zeros((0, self.n), dtype=np.uint8)
            else:
                if self.bound is None and D > MAX_EXPONENT:
                    raise ValueError(f"degree {D} exceeds the 8-bit exponent envelope")
                rows = list(_compositions(self.n, D, self.bound))
                arr = np.array(rows, dtype=np.uint8).reshape(len(rows), self.n)
            self._exps[D] = arr
        return self._exps[D]

    def size(self, D: int) -> int:
        return len(self.exps(D))

    def monomials(self, D: int) -> list[ExponentVector]:
        return [ExponentVector(tuple(int(e) for e in row)) for row in self.exps(D)]

    def _lookup_table(self, D: int) -> tuple[np.ndarray, np.ndarray]:
        if D not in self._sorted:
            keys = _keys(self.exps(D))
            order = np.argsort(keys, kind="stable")
            self._sorted[D] = (keys[order], order)
        return self._sorted[D]

    def index_of(self, exps: np.ndarray) -> np.ndarray:
        """Positions of the rows of ``exps`` in the canonical list of their degree.

        All rows must share one degree; rows absent from the basis map to -1.
        """
        exps = np.atleast_2d(np.asarray(exps, dtype=np.uint8))
        if exps.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        D = int(exps[0].sum(dtype=np.int64))
        keys_sorted, order = self._lookup_table(D)
        if keys_sorted.size == 0:
            return np.full(exps.shape[0], -1, dtype=np.int64)
        q = _keys(exps)
        pos = np.searchsorted(keys_sorted, q)
        pos = np.minimum(pos, keys_sorted.size - 1)
        hit = keys_sorted[pos] == q
        return np.where(hit, order[pos], -1).astype(np.int64)

    def index(self, v: ExponentVector) -> tuple[int, int]:
        """(degree, position) of a basis monomial; KeyError if absent."""
        pos = int(self.index_of(np.array([v.exps]))[0])
        if pos < 0:
            raise KeyError(f"{v} is not in the basis")
        return v.degree, pos

    def lookup(self, degree: int, position: int) -> ExponentVector:
        return ExponentVector(tuple(int(e) for e in self.exps(degree)[position]))

    def product_table(self, D_low: int, D_gen: int) -> np.ndarray:
        """Column index in degree D_low + D_gen of each product m*u, or -1.

        Shape is (size(D_low), size(D_gen)); -1 marks products annihilated by
        the pure powers.
        """
        low = self.exps(D_low).astype(np.int16)
        gen = self.exps(D_gen).astype(np.int16)
        if low.shape[0] == 0 or gen.shape[0] == 0:
            return np.full((low.shape[0], gen.shape[0]), -1, dtype=np.int64)
        prod = low[:, None, :] + gen[None, :, :]
        flat = prod.reshape(-1, self.n)
        out = np.full(flat.shape[0], -1, dtype=np.int64)
        if self.bound is None:
            ok = np.ones(flat.shape[0], dtype=bool)
        else:
            ok = (flat <= self.bound).all(axis=1)
        if ok.any():
            out[ok] = self.index_of(flat[ok].astype(np.uint8))
        return out.reshape(low.shape[0], gen.shape[0])
