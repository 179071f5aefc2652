"""Exact integer power series and the conjectured Hilbert series F_{n,r,d}."""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

INT64_MAX = 2**63 - 1


class SeriesOverflowError(OverflowError):
    """A coefficient left the signed 64-bit envelope of serialized series."""


def _check_envelope(values: Sequence[int]) -> None:
    for i, v in enumerate(values):
        if not -INT64_MAX - 1 <= v <= INT64_MAX:
            raise SeriesOverflowError(f"coefficient of t^{i} exceeds 64-bit range: {v}")


class IntSeries:
    """Finite integer coefficient sequence, implicitly extended by zeros.

    Coefficients are stored canonically, without trailing zeros, so the zero
    series is ``IntSeries([])``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        values = [int(c) for c in coeffs]
        _check_envelope(values)
        while values and values[-1] == 0:
            values.pop()
        self._coeffs = tuple(values)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero series."""
        return len(self._coeffs) - 1

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative power")
        return self._coeffs[i] if i < len(self._coeffs) else 0

    def __iter__(self):
        return iter(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: IntSeries) -> IntSeries:
        m = max(len(self), len(other))
        return IntSeries(self[i] + other[i] for i in range(m))

    def __sub__(self, other: IntSeries) -> IntSeries:
        m = max(len(self), len(other))
        return IntSeries(self[i] - other[i] for i in range(m))

    def __neg__(self) -> IntSeries:
        return IntSeries(-c for c in self._coeffs)

    def __mul__(self, other: IntSeries) -> IntSeries:
        if not self or not other:
            return IntSeries()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return IntSeries(out)

    def truncated(self, max_degree: int) -> IntSeries:
        """Drop every term of degree above ``max_degree``."""
        return IntSeries(self._coeffs[: max_degree + 1])

    def to_json(self) -> list[int]:
        return list(self._coeffs)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> IntSeries:
        if not isinstance(data, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in data
        ):
            raise ValueError(f"series must be a list of integers, got {data!r}")
        return cls(data)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "t" if i == 1 else f"t^{i}"
                body = power if mag == 1 else f"{mag}{power}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"IntSeries({list(self._coeffs)})"


def series_sub(a: IntSeries, b: IntSeries) -> IntSeries:
    return a - b


def series_eq(a: IntSeries, b: IntSeries) -> bool:
    return a == b


def lex_geq(a: IntSeries, b: IntSeries, max_degree: int) -> bool:
    """Lexicographic ``a >= b`` on the coefficients of degree 0..max_degree."""
    for i in range(max_degree + 1):
        if a[i] != b[i]:
            return a[i] > b[i]
    return True


def truncate_positive(s: IntSeries) -> IntSeries:
    """Keep coefficients up to (not including) the first one that is <= 0."""
    kept = []
    for c in s:
        if c <= 0:
            break
        kept.append(c)
    return IntSeries(kept)


def expand_quotient(n: int, r: int, d: int, max_degree: int) -> IntSeries:
    """Coefficients of (1 - t^d)^r / (1 - t)^n for degrees 0..max_degree."""
    if n < 1 or r < 0 or d < 1 or max_degree < 0:
        raise ValueError(f"invalid parameters n={n}, r={r}, d={d}, max_degree={max_degree}")
    coeffs = []
    for D in range(max_degree + 1):
        coeffs.append(
            sum((-1) ** j * comb(r, j) * comb(n - 1 + D - j * d, n - 1)
                for j in range(min(r, D // d) + 1))
        )
    return IntSeries(coeffs)


def complete_intersection_series(n: int, d: int) -> IntSeries:
    """(1 + t + ... + t^{d-1})^n by repeated multiplication."""
    block = IntSeries([1] * d)
    out = IntSeries([1])
    for _ in range(n):
        out = out * block
    return out


def conjectured_series(n: int, r: int, d: int, max_degree: int | None = None) -> IntSeries:
    """F_{n,r,d}, the bracket-truncated expansion of (1 - t^d)^r / (1 - t)^n.

    For r < n the expansion never turns nonpositive, so ``max_degree`` is
    required and the result is only the initial segment up to that cap.  For
    r >= n the cap is ignored: the expansion bound doubles until the first
    nonpositive coefficient appears.
    """
    if n < 1 or r < 0 or d < 2:
        raise ValueError(f"need n >= 1, r >= 0, d >= 2; got n={n}, r={r}, d={d}")
    if r < n:
        if max_degree is None:
            raise ValueError(f"r={r} < n={n}: the series is infinite, a degree cap is required")
        return expand_quotient(n, r, d, max_degree)
    if r == n:
        return complete_intersection_series(n, d)
    bound = n * (d - 1) + 1
    while True:
        s = expand_quotient(n, r, d, bound)
        if any(c <= 0 for c in s.coeffs) or len(s) <= bound:
            return truncate_positive(s)
        bound *= 2
