import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import linalg
from artifact.linalg import (
    Rng,
    fp_add,
    fp_inv,
    fp_mul,
    fp_sub,
    is_prime,
    matmul_mod,
    random_fp,
    rank,
    rank_oracle,
    reduced_basis,
    splitmix64,
)

P = 2147483647


def trial_division(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def test_fp_examples():
    assert fp_mul(2, 3, 7) == 6
    assert fp_inv(3, 7) == 5
    assert fp_add(P - 1, 1, P) == 0
    assert fp_sub(0, 1, 7) == 6
    with pytest.raises(ZeroDivisionError):
        fp_inv(0, 7)


@pytest.mark.parametrize("p", [q for q in range(2, 258) if trial_division(q)])
def test_inverse_exhaustive(p):
    for a in range(1, p):
        assert fp_mul(a, fp_inv(a, p), p) == 1


def test_is_prime_against_trial_division():
    for k in range(3000):
        assert is_prime(k) == trial_division(k)


def test_is_prime_large():
    assert is_prime(P)
    assert is_prime(2147483629)
    assert is_prime(2**61 - 1)
    assert not is_prime(2**31 + 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime(561)


def test_check_prime():
    assert linalg.check_prime(101) == 101
    with pytest.raises(ValueError):
        linalg.check_prime(100)


class TestRng:
    def test_reference_stream(self):
        # Published SplitMix64 outputs for seed 0.
        r = Rng(0)
        assert r.next_u64() == 0xE220A8397B1DCDAF
        assert r.next_u64() == 0x6E789E6AA1B965F4
        assert splitmix64(0) == 0xE220A8397B1DCDAF

    def test_golden_first_draw(self):
        assert random_fp(Rng(0), P) == 1063198245
        assert 0xE220A8397B1DCDAF % P == 1063198245

    def test_determinism(self):
        a, b = Rng(1234), Rng(1234)
        assert [a.next_u64() for _ in range(50)] == [b.next_u64() for _ in range(50)]

    def test_rejection(self):
        # p just above 2**63: half the stream is rejected, yet draws stay in range.
        p = 2**63 + 29
        r = Rng(5)
        assert all(0 <= random_fp(r, p) < p for _ in range(200))

    def test_mean(self):
        r = Rng(2024)
        draws = np.fromiter((random_fp(r, P) for _ in range(10**6)), dtype=np.float64)
        assert abs(draws.mean() / P - 0.5) < 0.01


class TestMatmulMod:
    @pytest.mark.parametrize("p", [7, 101, 2147483629, P])
    def test_against_python_ints(self, p):
        g = np.random.default_rng(p)
        a = g.integers(0, p, (13, 400))
        b = g.integers(0, p, (400, 9))
        ref = (a.astype(object) @ b.astype(object)) % p
        assert (matmul_mod(a, b, p) == ref.astype(np.int64)).all()

    def test_extreme_entries_long_inner(self):
        k = 1 << 18  # longer than one exact chunk
        a = np.full((2, k), P - 1, dtype=np.int64)
        out = matmul_mod(a, a.T, P)
        assert (out == (k * (P - 1) ** 2) % P).all()


def random_matrix(g, rows, cols, p, rk=None):
    if rk is None:
        return g.integers(0, p, (rows, cols))
    left = g.integers(0, p, (rows, rk)).astype(object)
    right = g.integers(0, p, (rk, cols)).astype(object)
    return ((left @ right) % p).astype(np.int64)


class TestRank:
    def test_examples(self):
        assert rank(np.eye(3, dtype=np.int64), 101) == 3
        assert rank(np.zeros((4, 5), dtype=np.int64), 101) == 0
        assert rank([[1, 2], [2, 4]], 101) == 1
        assert rank(np.zeros((0, 3), dtype=np.int64), 101) == 0

    def test_oracle_examples(self):
        assert rank_oracle([[1, 0], [0, 1]], 101) == 2
        assert rank_oracle([[1, 1], [2, 2], [3, 3]], 101) == 1
        assert rank_oracle([[0, 0]], 101) == 0
        with pytest.raises(ValueError):
            rank_oracle(np.zeros((13, 2)), 101)

    def test_against_oracle_1000_trials(self):
        g = np.random.default_rng(0)
        for trial in range(1000):
            rows, cols = g.integers(1, 7, size=2)
            rk = int(g.integers(0, min(rows, cols) + 1)) if trial % 2 else None
            m = random_matrix(g, rows, cols, 101, rk)
            if trial % 5 == 0:
                m[g.integers(0, rows)] = 0
            r = rank(m, 101)
            assert r == rank_oracle(m, 101)
            assert r <= min(rows, cols)

    def test_oracle_12x12(self):
        g = np.random.default_rng(1)
        m = random_matrix(g, 12, 12, 101, 9)
        assert rank_oracle(m, 101) == rank(m, 101) == 9

    @pytest.mark.parametrize("shape,rk", [((300, 200), 150), ((200, 300), 200), ((100, 100), 37), ((64, 700), 64)])
    def test_low_rank_large(self, shape, rk):
        g = np.random.default_rng(rk)
        m = random_matrix(g, *shape, P, rk)
        assert rank(m, P) == rk

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 30), st.integers(1, 30), st.integers(0, 30))
    def test_invariances(self, seed, rows, cols, rk):
        g = np.random.default_rng(seed)
        m = random_matrix(g, rows, cols, P, min(rk, rows, cols))
        r = rank(m, P)
        assert r == min(rk, rows, cols)
        assert rank(m[g.permutation(rows)], P) == r
        scaled = m.astype(object)
        scaled[g.integers(0, rows)] *= int(g.integers(1, P))
        assert rank(scaled, P) == r
        assert rank(np.hstack([m, m]), P) == r
        assert rank(m.T, P) == r

    def test_reduced_basis_shape(self):
        g = np.random.default_rng(3)
        m = random_matrix(g, 40, 30, 101, 20)
        e, piv = reduced_basis(m, 101)
        assert len(piv) == 20
        assert (e[:, piv] == np.eye(20, dtype=np.int64)).all()
        # Row space is preserved: stacking adds nothing.
        assert rank(np.vstack([e, m]), 101) == 20

    def test_rejects_large_prime(self):
        with pytest.raises(ValueError):
            rank([[1]], 2**31 + 11)
