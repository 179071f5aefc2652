"""Prime-field arithmetic, SplitMix64 randomness and dense rank over F_p.

The rank kernel is a recursive block elimination.  Residues live in float64
arrays and every bulk update is a matrix product evaluated by BLAS on 16-bit
limbs, which keeps all partial sums below 2**52 and therefore exact.  Only the small leaf blocks are
eliminated row by row.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

DEFAULT_PRIME = 2147483647
#: Dense kernel limit; residues must fit in 31 bits for the limb split.
MAX_KERNEL_PRIME = 2**31

_MASK64 = (1 << 64) - 1
_LEAF_ROWS = 16
_BASE = float(1 << 16)
# Karatsuba middle limb is < 2**17, squared < 2**34; 2**17 terms stay < 2**52.
_MAX_INNER = 1 << 17


# ---------------------------------------------------------------------------
# scalar field arithmetic


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 2**64."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    dd, s = n - 1, 0
    while dd % 2 == 0:
        dd //= 2
        s += 1
    for a in small:
        x = pow(a, dd, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
        raise TypeError(f"prime must be an integer, got {p!r}")
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def fp_add(a: int, b: int, p: int) -> int:
    return (a + b) % p


def fp_sub(a: int, b: int, p: int) -> int:
    return (a - b) % p


def fp_mul(a: int, b: int, p: int) -> int:
    return (a * b) % p


def fp_inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


# ---------------------------------------------------------------------------
# randomness


def splitmix64(x: int) -> int:
    """First output of a SplitMix64 generator whose state is ``x``."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass
class Rng:
    """SplitMix64 stream. Not safe to share between threads."""

    seed: int
    state: int = field(init=False)

    def __post_init__(self) -> None:
        self.state = self.seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def random_fp(rng: Rng, p: int) -> int:
    """Uniform element of [0, p) by rejection from the 64-bit stream."""
    limit = p * ((1 << 64) // p)
    while True:
        x = rng.next_u64()
        if x < limit:
            return x % p


# ---------------------------------------------------------------------------
# matrices


def as_fp_matrix(rows, p: int) -> np.ndarray:
    """Reduce an integer array-like into a C-contiguous int64 matrix mod p."""
    if p >= MAX_KERNEL_PRIME:
        raise ValueError(f"dense kernel needs p < 2**31, got {p}")
    a = np.array(rows, dtype=object) if not isinstance(rows, np.ndarray) else rows
    if a.dtype == object:
        a = np.array([[int(v) % p for v in row] for row in a], dtype=np.int64).reshape(a.shape)
    else:
        a = np.mod(a.astype(np.int64, copy=True), p)
    if a.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    return np.ascontiguousarray(a)


def _fmod_loose(x: np.ndarray, p: int) -> np.ndarray:
    # For integral |x| < 2**52 the quotient estimate is off by at most one,
    # so the result lies in [-p, 2p).
    q = x * (1.0 / p)
    np.floor(q, out=q)
    q *= p
    return np.subtract(x, q, out=q)


def _fmod(x: np.ndarray, p: int) -> np.ndarray:
    r = _fmod_loose(x, p)
    r -= p * (r >= p)
    r += p * (r < 0)
    return r


def _limbs(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    hi = np.floor(a * (1.0 / _BASE))
    lo = a - hi * _BASE
    return hi, lo, hi + lo


def _matmul_mod_f(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1]
    if inner > _MAX_INNER:
        out = np.zeros((a.shape[0], b.shape[1]))
        for s in range(0, inner, _MAX_INNER):
            out = _fmod(out + _matmul_mod_f(a[:, s:s + _MAX_INNER], b[s:s + _MAX_INNER], p), p)
        return out
    ah, al, am = _limbs(a)
    bh, bl, bm = _limbs(b)
    hh = ah @ bh
    ll = al @ bl
    mid = am @ bm
    mid -= hh
    mid -= ll
    # Horner in base 2**16: (-p, 2p) * 2**16 + k * 2**34 stays below 2**52.
    out = _fmod_loose(hh, p)
    out *= _BASE
    out += mid
    out = _fmod_loose(out, p)
    out *= _BASE
    out += ll
    return _fmod(out, p)


def matmul_mod(a, b, p: int) -> np.ndarray:
    """Exact ``a @ b mod p`` for residues in [0, p), p < 2**31."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    return _matmul_mod_f(a, b, p).astype(np.int64)


def _reduce_leaf(x: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    # Row by row: the leading (first nonzero) entry of each surviving row is
    # its pivot.  Result rows are mutually fully reduced with unit pivots.
    basis: list[np.ndarray] = []
    pivots: list[int] = []
    for row in x.astype(np.int64):
        for prow, c in zip(basis, pivots):
            f = row[c]
            if f:
                row = (row - f * prow) % p
        nz = np.flatnonzero(row)
        if nz.size == 0:
            continue
        c = int(nz[0])
        inv = pow(int(row[c]), -1, p)
        row = row * inv % p
        for i, prow in enumerate(basis):
            f = prow[c]
            if f:
                basis[i] = (prow - f * row) % p
        basis.append(row)
        pivots.append(c)
    if not basis:
        return np.zeros((0, x.shape[1])), []
    return np.vstack(basis).astype(np.float64), pivots


def _sub_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    out = a - b
    out += p * (out < 0)
    return out


def _reduced_basis_f(x: np.ndarray, p: int, stop_at: int | None) -> tuple[np.ndarray, list[int]]:
    rows, cols = x.shape
    if rows == 0 or cols == 0:
        return np.zeros((0, cols)), []
    if rows <= _LEAF_ROWS:
        return _reduce_leaf(x, p)
    half = rows // 2
    top, piv_top = _reduced_basis_f(x[:half], p, stop_at)
    if stop_at is not None and len(piv_top) >= stop_at:
        return top, piv_top
    bottom = x[half:]
    if piv_top:
        bottom = _sub_mod(bottom, _matmul_mod_f(bottom[:, piv_top], top, p), p)
    low, piv_low = _reduced_basis_f(
        bottom, p, None if stop_at is None else stop_at - len(piv_top)
    )
    if not piv_low:
        return top, piv_top
    if piv_top:
        top = _sub_mod(top, _matmul_mod_f(top[:, piv_low], low, p), p)
    return np.vstack([top, low]), piv_top + piv_low


def reduced_basis(m, p: int, stop_at: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Fully reduced row basis of ``m`` together with its pivot columns.

    The returned block ``E`` satisfies ``E[:, pivots] == I``.  When ``stop_at``
    is given, work stops as soon as that many pivots exist.
    """
    x = as_fp_matrix(m, p).astype(np.float64)
    e, piv = _reduced_basis_f(x, p, stop_at)
    return e.astype(np.int64), piv


def rank(m, p: int) -> int:
    """Rank of ``m`` over F_p (p prime, p < 2**31)."""
    x = as_fp_matrix(m, p)
    rows, cols = x.shape
    if rows == 0 or cols == 0:
        return 0
    # Keep the short side as the pivot space so a full-rank prefix ends early.
    if cols > rows:
        x = x.T
    x = np.ascontiguousarray(x, dtype=np.float64)
    return len(_reduced_basis_f(x, p, stop_at=min(rows, cols))[1])


def _det_laplace(m: list[list[int]], p: int) -> int:
    # Expansion along successive rows, memoized on the set of unused columns.
    k = len(m)
    memo: dict[int, int] = {}

    def minor(row: int, mask: int) -> int:
        if row == k:
            return 1
        if mask in memo:
            return memo[mask]
        total, sign = 0, 1
        for j in range(k):
            if mask >> j & 1:
                continue
            if m[row][j]:
                total += sign * m[row][j] * minor(row + 1, mask | 1 << j)
            sign = -sign
        memo[mask] = total % p
        return memo[mask]

    return minor(0, 0)


def rank_oracle(m, p: int) -> int:
    """Rank as the size of the largest nonvanishing minor (tests only)."""
    a = [[int(v) % p for v in row] for row in np.asarray(m, dtype=object)]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows > 12 or cols > 12:
        raise ValueError("rank_oracle is limited to 12x12 matrices")
    for k in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                if _det_laplace([[a[i][j] for j in cs] for i in rs], p):
                    return k
    return 0
