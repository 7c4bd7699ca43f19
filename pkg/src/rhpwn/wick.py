"""Normally ordered white-noise words and the two-point commutator calculus.

A word is a product of creator powers, annihilator powers, a power of the
pair delta between the two active labels, and point-evaluation delta markers
produced by renormalization. Creators commute among themselves and so do
annihilators, so per-label exponent maps represent words faithfully; every
expression is kept as a canonically sorted sum of such words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .scalars import CS_ZERO, CScalar, binom, epsilon, falling, theta
from .stepfn import (
    StepFn,
    AnyTestFn,
    evaluate,
    fn_product,
    fn_vanishes_at_zero,
)


class DeltaAtZeroError(ValueError):
    """A pair delta with identical labels: delta(0) is never defined here."""


class SingularPartError(ValueError):
    """A singular contribution survives because a test function has f(0) != 0."""

    def __init__(self, message: str, terms: Sequence = ()):  # noqa: D107
        super().__init__(message)
        self.terms = tuple(terms)


ExpMap = tuple[tuple[str, int], ...]


def _canon_exps(exps: Mapping[str, int] | Iterable[tuple[str, int]]) -> ExpMap:
    items = exps.items() if isinstance(exps, Mapping) else exps
    out = {}
    for label, e in items:
        if e < 0:
            raise ValueError(f"negative exponent {e} at label {label!r}")
        if e:
            out[label] = out.get(label, 0) + e
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class WNTerm:
    """One normally ordered word with an exact complex coefficient."""

    coeff: CScalar
    creators: ExpMap
    annihilators: ExpMap
    delta_pair: Optional[tuple[str, str]]
    delta_L: int
    point_evals: tuple[str, ...]

    def word_key(self):
        return (
            self.delta_L,
            self.creators,
            self.annihilators,
            self.point_evals,
            self.delta_pair or (),
        )


def wn_term(
    coeff,
    creators: Mapping[str, int] | Iterable = (),
    annihilators: Mapping[str, int] | Iterable = (),
    delta_pair: Optional[tuple[str, str]] = None,
    delta_L: int = 0,
    point_evals: Iterable[str] = (),
) -> WNTerm:
    """Canonical word constructor.

    The pair delta is symmetric, so its labels are stored sorted; identical
    labels are rejected outright because delta(0) has no meaning under the
    renormalization rule used here.
    """
    if delta_L < 0:
        raise ValueError("delta exponent must be nonnegative")
    if delta_L and delta_pair is None:
        raise ValueError("a positive delta exponent needs a label pair")
    if delta_L >= 2 and point_evals:
        raise ValueError(
            "a delta power >= 2 cannot coexist with point-evaluation markers; "
            "renormalization replaces the power outright"
        )
    if delta_pair is not None:
        a, b = delta_pair
        if a == b:
            raise DeltaAtZeroError(f"delta(0) at label {a!r}")
        delta_pair = (a, b) if a < b else (b, a)
        if delta_L == 0:
            delta_pair = None
    return WNTerm(
        CScalar.of(coeff),
        _canon_exps(creators),
        _canon_exps(annihilators),
        delta_pair,
        delta_L,
        tuple(sorted(point_evals)),
    )


@dataclass(frozen=True)
class WNExpr:
    """Canonical finite sum of words: like terms merged, zeros dropped."""

    terms: tuple[WNTerm, ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WNExpr") -> "WNExpr":
        return wn_expr(self.terms + other.terms)

    def __sub__(self, other: "WNExpr") -> "WNExpr":
        return self + other.scaled(-1)

    def scaled(self, c) -> "WNExpr":
        c = CScalar.of(c)
        return wn_expr(
            WNTerm(c * t.coeff, t.creators, t.annihilators, t.delta_pair, t.delta_L, t.point_evals)
            for t in self.terms
        )


def wn_expr(terms: Iterable[WNTerm] = ()) -> WNExpr:
    acc: dict = {}
    for t in terms:
        key = t.word_key()
        acc[key] = acc.get(key, CS_ZERO) + t.coeff
    out = []
    for key in sorted(acc):
        if acc[key]:
            delta_L, creators, annihilators, point_evals, pair = key
            out.append(
                WNTerm(acc[key], creators, annihilators, pair or None, delta_L, point_evals)
            )
    return WNExpr(tuple(out))


WN_ZERO = WNExpr(())


def monomial_commutator(
    n: int, k: int, N: int, K: int, labels: tuple[str, str] = ("t", "s")
) -> WNExpr:
    """Commutator of two normally ordered monomials at distinct points.

    [b_t^+^n b_t^k, b_s^+^N b_s^K] expands to

        sum_{L>=1} binom(k,L) falling(N,L)
                   b_t^+^n b_s^+^(N-L) b_t^(k-L) b_s^K  delta^L(t-s)
      - sum_{L>=1} binom(K,L) falling(n,L)
                   b_s^+^N b_t^+^(n-L) b_s^(K-L) b_t^k  delta^L(t-s)

    The sums terminate at min(k, N) and min(K, n): past that point the
    binomial/falling-factorial conventions make every summand vanish, which
    also makes the eps(k,0) eps(N,0) prefactors redundant.
    """
    if min(n, k, N, K) < 0:
        raise ValueError("monomial indices must be nonnegative")
    t, s = labels
    if t == s:
        raise DeltaAtZeroError("the commutator expansion needs two distinct labels")
    terms = []
    for L in range(1, min(k, N) + 1):
        terms.append(
            wn_term(
                binom(k, L) * falling(N, L),
                {t: n, s: N - L},
                {t: k - L, s: K},
                delta_pair=(t, s),
                delta_L=L,
            )
        )
    for L in range(1, min(K, n) + 1):
        terms.append(
            wn_term(
                -binom(K, L) * falling(n, L),
                {s: N, t: n - L},
                {s: K - L, t: k},
                delta_pair=(t, s),
                delta_L=L,
            )
        )
    return wn_expr(terms)


def renormalize(e: WNExpr) -> WNExpr:
    """Apply delta^L(t-s) = delta(s) delta(t-s) to every word with L >= 2.

    The point-evaluation marker lands on the first label of the (sorted)
    pair; under the surviving delta(t-s) the two choices are equivalent.
    Words with L in {0, 1} pass through unchanged, so the map is idempotent.
    """
    out = []
    for t in e.terms:
        if t.delta_L >= 2:
            out.append(
                WNTerm(
                    t.coeff,
                    t.creators,
                    t.annihilators,
                    t.delta_pair,
                    1,
                    tuple(sorted(t.point_evals + (t.delta_pair[0],))),
                )
            )
        else:
            out.append(t)
    return wn_expr(out)


def collapse_single_mode(e: WNExpr) -> dict[tuple[int, int], CScalar]:
    """Coincident-point shadow: identify all labels and set every delta to 1.

    Returns the map (creator power, annihilator power) -> coefficient. Only
    meaningful for expressions without point-evaluation markers.
    """
    acc: dict[tuple[int, int], CScalar] = {}
    for t in e.terms:
        if t.point_evals:
            raise ValueError("single-mode collapse is undefined for point-eval markers")
        key = (
            sum(x for _, x in t.creators),
            sum(x for _, x in t.annihilators),
        )
        acc[key] = acc.get(key, CS_ZERO) + t.coeff
    return {key: c for key, c in acc.items() if c}


@dataclass(frozen=True)
class SingularTerm:
    """One order-L singular contribution of the smeared bracket."""

    L: int
    theta: int
    index: tuple[int, int]
    scalar: Optional[CScalar]  # None when it cannot be decided symbolically


@dataclass(frozen=True)
class BracketDecomposition:
    """Smeared-bracket split into a regular part and singular terms.

    The regular part is regular_coeff * B^{n'}_{k'}(g f) with (n', k') =
    regular_index; each singular term multiplies the formal word
    b_0^+^(n'') b_0^(k'') by theta * g(0) f(0), and is listed only when its
    theta coefficient is nonzero.
    """

    regular_coeff: int
    regular_index: tuple[int, int]
    regular_testfn: AnyTestFn
    singular: tuple[SingularTerm, ...]

    @property
    def singular_vanishes(self) -> bool:
        return all(s.scalar is not None and not s.scalar for s in self.singular)


def smear_bracket(
    n: int, k: int, g: AnyTestFn, N: int, K: int, f: AnyTestFn
) -> BracketDecomposition:
    """Decompose [B^n_k(g), B^N_K(f)] after renormalization.

    Regular part: (eps(k,0) eps(N,0) kN - eps(K,0) eps(n,0) Kn) with index
    (n+N-1, k+K-1) and test function g f. Singular part: theta(L; n,k,N,K)
    g(0) f(0) b_0^+^(N+n-L) b_0^(K+k-L) for L from 2 up to
    max(min(K,n), min(k,N)).
    """
    if min(n, k, N, K) < 0:
        raise ValueError("indices must be nonnegative")
    coeff = epsilon(k, 0) * epsilon(N, 0) * k * N - epsilon(K, 0) * epsilon(n, 0) * K * n
    singular = []
    for L in range(2, max(min(K, n), min(k, N)) + 1):
        th = theta(L, n, k, N, K)
        if not th:
            continue
        if isinstance(g, StepFn) and isinstance(f, StepFn):
            scalar: Optional[CScalar] = evaluate(g, 0) * evaluate(f, 0)
        elif fn_vanishes_at_zero(g) or fn_vanishes_at_zero(f):
            scalar = CS_ZERO
        else:
            scalar = None
        singular.append(SingularTerm(L, th, (N + n - L, K + k - L), scalar))
    return BracketDecomposition(
        coeff, (n + N - 1, k + K - 1), fn_product(g, f), tuple(singular)
    )


def renormalized_bracket(
    n: int,
    k: int,
    N: int,
    K: int,
    g: Optional[StepFn] = None,
    f: Optional[StepFn] = None,
) -> tuple[int, tuple[int, int]]:
    """Renormalized bracket on test functions vanishing at zero.

    Returns (kN - Kn, (n+N-1, k+K-1)). When concrete step functions are
    supplied they must vanish at zero; otherwise the singular part of the
    decomposition does not drop and the caller needs smear_bracket instead.
    """
    if min(n, k, N, K) < 0:
        raise ValueError("indices must be nonnegative")
    for name, fn in (("g", g), ("f", f)):
        if fn is not None and not fn_vanishes_at_zero(fn):
            raise SingularPartError(
                f"{name}(0) != 0: the singular part does not vanish; "
                "use smear_bracket for the full decomposition"
            )
    return k * N - K * n, (n + N - 1, k + K - 1)


# -- JSON rendering ----------------------------------------------------------

def _coeff_json(c: CScalar) -> list[int]:
    return [c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]


def wn_term_to_json(t: WNTerm) -> dict:
    return {
        "coeff": _coeff_json(t.coeff),
        "creators": {label: e for label, e in t.creators},
        "annihilators": {label: e for label, e in t.annihilators},
        "delta_L": t.delta_L,
        "point_evals": list(t.point_evals),
    }


def wn_expr_to_json(e: WNExpr) -> list[dict]:
    return [wn_term_to_json(t) for t in e.terms]
