"""Single-mode polynomial-representation oracle for the commutator calculus.

The annihilator acts as d/dx and the creator as multiplication by x on the
monomial basis x^0 .. x^D, so every matrix entry is an exact integer and the
canonical commutation relation holds algebraically on all basis vectors whose
images stay below the truncation degree. This gives an independent brute-force
check of the two-point commutator coefficients (at coincident points, with
every delta set to 1) and of the seed identity behind the exponential exchange
rules.
"""

from __future__ import annotations

from functools import lru_cache

from .scalars import binom, falling

Matrix = list[list[int]]


def _zeros(size: int) -> Matrix:
    return [[0] * size for _ in range(size)]


def _identity(size: int) -> Matrix:
    out = _zeros(size)
    for i in range(size):
        out[i][i] = 1
    return out


def _mat_mul(A: Matrix, B: Matrix) -> Matrix:
    size = len(A)
    out = _zeros(size)
    for i in range(size):
        row = A[i]
        orow = out[i]
        for k in range(size):
            av = row[k]
            if av:
                brow = B[k]
                for j in range(size):
                    if brow[j]:
                        orow[j] += av * brow[j]
    return out


def _mat_addscaled(A: Matrix, c: int, B: Matrix) -> Matrix:
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return _mat_addscaled(A, -1, B)


class PolyRepOps:
    """Exact matrices of the ladder operators on x^0 .. x^D.

    The annihilator maps x^m to m x^(m-1); the creator maps x^m to x^(m+1)
    and truncates x^D to zero. Built via build(), which verifies the
    commutation relation on all guard-safe columns.
    """

    def __init__(self, D: int):
        if D < 2:
            raise ValueError(f"truncation degree must be at least 2, got {D}")
        self.D = D
        size = D + 1
        self.a = _zeros(size)
        self.ad = _zeros(size)
        for m in range(1, size):
            self.a[m - 1][m] = m
        for m in range(D):
            self.ad[m + 1][m] = 1
        self._words: dict[tuple[int, int], Matrix] = {}
        self._q_pows: dict[int, Matrix] = {}
        comm = _mat_sub(_mat_mul(self.a, self.ad), _mat_mul(self.ad, self.a))
        eye = _identity(size)
        for c in range(D):  # column D is the guard row
            for r in range(size):
                if comm[r][c] != eye[r][c]:
                    raise ValueError("ladder matrices violate the commutation relation")

    def word(self, n: int, k: int) -> Matrix:
        """Matrix of the normally ordered word creator^n annihilator^k."""
        key = (n, k)
        if key not in self._words:
            mat = _identity(self.D + 1)
            for _ in range(k):
                mat = _mat_mul(mat, self.a)
            for _ in range(n):
                mat = _mat_mul(self.ad, mat)
            self._words[key] = mat
        return self._words[key]

    def q_power(self, m: int) -> Matrix:
        """Matrix of (annihilator + creator)^m."""
        if m not in self._q_pows:
            if m == 0:
                self._q_pows[m] = _identity(self.D + 1)
            else:
                q = _mat_addscaled(self.a, 1, self.ad)
                self._q_pows[m] = _mat_mul(self.q_power(m - 1), q)
        return self._q_pows[m]


@lru_cache(maxsize=None)
def build(D: int) -> PolyRepOps:
    return PolyRepOps(D)


def _path_ok(c: int, steps: list[tuple[int, int]], D: int) -> bool:
    """Degree tracking for monomial words applied right to left.

    Each step (k, n) lowers the degree by k then raises it by n; once the
    monomial is annihilated exactly (degree below k) nothing can overflow.
    """
    d = c
    for k, n in steps:
        if d < k:
            return True
        d = d - k + n
        if d > D:
            return False
    return True


def check_eq1(n: int, k: int, N: int, K: int, D: int = 40) -> bool:
    """Compare the matrix commutator of two words with the expansion

        sum_L binom(k,L) falling(N,L) word(n+N-L, k+K-L)
      - sum_L binom(K,L) falling(n,L) word(N+n-L, K+k-L)

    entry-exactly on every guard-safe column (those whose degree paths never
    exceed D). This is the coincident-point shadow of the two-point
    commutator, with every delta power set to 1.
    """
    if min(n, k, N, K) < 0:
        raise ValueError("indices must be nonnegative")
    if D <= n + k + N + K:
        raise ValueError(f"guard band violated: need D > {n + k + N + K}, got {D}")
    ops = build(D)
    w1, w2 = ops.word(n, k), ops.word(N, K)
    lhs = _mat_sub(_mat_mul(w1, w2), _mat_mul(w2, w1))
    rhs = _zeros(D + 1)
    rhs_steps = []
    for L in range(1, min(k, N) + 1):
        rhs = _mat_addscaled(rhs, binom(k, L) * falling(N, L), ops.word(n + N - L, k + K - L))
        rhs_steps.append((k + K - L, n + N - L))
    for L in range(1, min(K, n) + 1):
        rhs = _mat_addscaled(rhs, -binom(K, L) * falling(n, L), ops.word(N + n - L, K + k - L))
        rhs_steps.append((K + k - L, N + n - L))
    safe_columns = [
        c
        for c in range(D + 1)
        if _path_ok(c, [(K, N), (k, n)], D)
        and _path_ok(c, [(k, n), (K, N)], D)
        and all(_path_ok(c, [step], D) for step in rhs_steps)
    ]
    assert safe_columns, "guard band left no safe columns"
    return all(
        lhs[r][c] == rhs[r][c] for c in safe_columns for r in range(D + 1)
    )


def check_exchange_seed(m: int, D: int = 16) -> bool:
    """Verify [a - a^+, (a + a^+)^m] = 2m (a + a^+)^(m-1) on guard-safe columns.

    This central-commutator fact (with delta set to 1) seeds the exponential
    exchange rules: iterating it gives their full binomial form.
    """
    if m < 0:
        raise ValueError("power must be nonnegative")
    if D <= m + 2:
        raise ValueError(f"guard band violated: need D > {m + 2}, got {D}")
    ops = build(D)
    p = _mat_addscaled(ops.a, -1, ops.ad)
    qm = ops.q_power(m)
    lhs = _mat_sub(_mat_mul(p, qm), _mat_mul(qm, p))
    if m == 0:
        rhs = _zeros(D + 1)
    else:
        rhs = _mat_addscaled(_zeros(D + 1), 2 * m, ops.q_power(m - 1))
    # Every factor raises the degree by at most one: a column c is safe when
    # c + m + 1 stays within the truncation.
    safe_columns = range(D - m)
    return all(lhs[r][c] == rhs[r][c] for c in safe_columns for r in range(D + 1))
