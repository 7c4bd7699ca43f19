"""Sandwich words and the mechanical w-infinity realization check.

A sandwich word is [left exponential block][field-power block][right
exponential block], where E_x(lam) = exp(lam (b_x - b_x^+)) and
Q_x = b_x + b_x^+. The generators under study are

    (1/2)^(n-1) E_x(k/2) Q_x^(n-1) E_x(k/2)

smearied against a test function. Since [b_x - b_x^+, b_y - b_y^+] = 0 and
[b_x - b_x^+, Q_y] = 2 delta(x-y) is central, exponentials commute with each
other and move across field powers by a binomial exchange rule; products of
two such words normalize back to sandwich shape with delta powers as the only
residue. Reducing the delta powers (renormalization plus test functions
vanishing at zero) turns the commutator of two generators into a single
generator, which is compared structurally against the w-infinity bracket.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Optional

from .lie import DomainError
from .scalars import CS_ZERO, CScalar, binom
from .stepfn import (
    AnyTestFn,
    fn_symbol,
    fn_product,
    fn_to_json,
    fn_vanishes_at_zero,
)
from .wick import DeltaAtZeroError, SingularPartError

ParamMap = tuple[tuple[str, Fraction], ...]
PowMap = tuple[tuple[str, int], ...]
FnMap = tuple[tuple[str, AnyTestFn], ...]


def _canon_params(m: Mapping[str, Fraction] | Iterable) -> ParamMap:
    items = m.items() if isinstance(m, Mapping) else m
    out: dict[str, Fraction] = {}
    for label, lam in items:
        lam = Fraction(lam)
        out[label] = out.get(label, Fraction(0)) + lam
    return tuple(sorted((l, v) for l, v in out.items() if v))


def _canon_pows(m: Mapping[str, int] | Iterable) -> PowMap:
    items = m.items() if isinstance(m, Mapping) else m
    out: dict[str, int] = {}
    for label, e in items:
        if e < 0:
            raise ValueError(f"negative field power at label {label!r}")
        if e:
            out[label] = out.get(label, 0) + e
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class EQTerm:
    """One sandwich word with exact coefficient and delta-power bookkeeping."""

    coeff: CScalar
    left_exp: ParamMap
    q_pow: PowMap
    right_exp: ParamMap
    delta_L: int
    testfn: FnMap

    def word_key(self):
        return (self.delta_L, self.q_pow, self.left_exp, self.right_exp, self.testfn)

    def labels(self) -> set[str]:
        return (
            {l for l, _ in self.left_exp}
            | {l for l, _ in self.q_pow}
            | {l for l, _ in self.right_exp}
            | {l for l, _ in self.testfn}
        )


def eq_term(
    coeff,
    left_exp: Mapping[str, Fraction] | Iterable = (),
    q_pow: Mapping[str, int] | Iterable = (),
    right_exp: Mapping[str, Fraction] | Iterable = (),
    delta_L: int = 0,
    testfn: Mapping[str, AnyTestFn] | Iterable = (),
) -> EQTerm:
    if delta_L < 0:
        raise ValueError("delta exponent must be nonnegative")
    fn_items = testfn.items() if isinstance(testfn, Mapping) else testfn
    return EQTerm(
        CScalar.of(coeff),
        _canon_params(left_exp),
        _canon_pows(q_pow),
        _canon_params(right_exp),
        delta_L,
        tuple(sorted(fn_items, key=lambda it: it[0])),
    )


@dataclass(frozen=True)
class EQExpr:
    """Canonical sum of sandwich words."""

    terms: tuple[EQTerm, ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "EQExpr") -> "EQExpr":
        return eq_expr(self.terms + other.terms)

    def __sub__(self, other: "EQExpr") -> "EQExpr":
        return self + other.scaled(-1)

    def scaled(self, c) -> "EQExpr":
        c = CScalar.of(c)
        return eq_expr(
            EQTerm(c * t.coeff, t.left_exp, t.q_pow, t.right_exp, t.delta_L, t.testfn)
            for t in self.terms
        )


def eq_expr(terms: Iterable[EQTerm] = ()) -> EQExpr:
    acc: dict = {}
    order: dict = {}
    for t in terms:
        key = t.word_key()
        acc[key] = acc.get(key, CS_ZERO) + t.coeff
        order[key] = t
    out = []
    for key in sorted(acc, key=_word_sort_key):
        if acc[key]:
            t = order[key]
            out.append(
                EQTerm(acc[key], t.left_exp, t.q_pow, t.right_exp, t.delta_L, t.testfn)
            )
    return EQExpr(tuple(out))


def _word_sort_key(key):
    from .lie import _label_key  # stable total order over labels/testfns

    delta_L, q_pow, left_exp, right_exp, testfn = key
    return (
        delta_L,
        q_pow,
        left_exp,
        right_exp,
        tuple((l, _label_key(fn)) for l, fn in testfn),
    )


EQ_ZERO = EQExpr(())


def gen_to_word(n: int, k: int, label: str = "t", fn: Optional[AnyTestFn] = None) -> EQTerm:
    """The sandwich word (1/2)^(n-1) E(k/2) Q^(n-1) E(k/2) at one label."""
    if n < 2:
        raise DomainError(f"sandwich generators need n >= 2, got n={n}")
    half_k = Fraction(k, 2)
    return eq_term(
        CScalar(Fraction(1, 2 ** (n - 1))),
        {label: half_k},
        {label: n - 1},
        {label: half_k},
        testfn={} if fn is None else {label: fn},
    )


Direction = Literal["rightward", "leftward"]


def exchange_E_past_Q(
    lam, src_label: str, m: int, dst_label: str, direction: Direction
) -> EQExpr:
    """Move one exponential factor across a field power at another label.

    rightward:  E_s(lam) Q_t^m
        = sum_j binom(m,j) (2 lam)^(m-j) Q_t^j delta^(m-j)(t-s) E_s(lam)
    leftward:   Q_t^m E_s(lam)
        = E_s(lam) sum_j binom(m,j) (-2 lam)^(m-j) Q_t^j delta^(m-j)(t-s)

    Both follow from the central commutator [b_s - b_s^+, Q_t] = 2 delta(t-s).
    """
    if src_label == dst_label:
        raise DeltaAtZeroError("same-label exchange would create delta(0)")
    if m < 0:
        raise ValueError("field power must be nonnegative")
    lam = Fraction(lam)
    sign = 1 if direction == "rightward" else -1
    if direction not in ("rightward", "leftward"):
        raise ValueError(f"unknown direction {direction!r}")
    terms = []
    for j in range(m + 1):
        coeff = binom(m, j) * (sign * 2 * lam) ** (m - j)
        exp_map = {src_label: lam}
        terms.append(
            eq_term(
                coeff,
                left_exp=exp_map if direction == "leftward" else {},
                q_pow={dst_label: j},
                right_exp=exp_map if direction == "rightward" else {},
                delta_L=m - j,
            )
        )
    return eq_expr(terms)


def _single_label_parts(t: EQTerm):
    labels = t.labels()
    if len(labels) > 1:
        raise ValueError("product factors must be single-label sandwich words")
    if not labels:
        return None
    (label,) = labels
    return (
        label,
        dict(t.left_exp).get(label, Fraction(0)),
        dict(t.q_pow).get(label, 0),
        dict(t.right_exp).get(label, Fraction(0)),
    )


def multiply(a: EQTerm, b: EQTerm) -> EQExpr:
    """Product of two single-label sandwich words, renormalized to sandwich shape.

    b's left exponential moves leftward across a's field block and a's right
    exponential moves rightward across b's field block; only these cross-label
    exchanges are ever needed, and each contributes its binomial expansion
    with the accumulated delta power.
    """
    if a.delta_L or b.delta_L:
        raise ValueError("product factors must not carry delta powers")
    pa = _single_label_parts(a)
    pb = _single_label_parts(b)
    if pa is None or pb is None:
        # One factor is a pure scalar: concatenation is already sandwich-shaped.
        merged = eq_term(
            a.coeff * b.coeff,
            a.left_exp + b.left_exp,
            a.q_pow + b.q_pow,
            a.right_exp + b.right_exp,
            testfn=a.testfn + b.testfn,
        )
        return eq_expr([merged])
    la, alpha_l, p, alpha_r = pa
    lb, beta_l, q, beta_r = pb
    if la == lb:
        raise DeltaAtZeroError("same-label product would create delta(0)")
    fnmap = dict(a.testfn)
    fnmap.update(dict(b.testfn))
    base = a.coeff * b.coeff
    terms = []
    for j in range(p + 1):
        left_factor = binom(p, j) * (-2 * beta_l) ** (p - j)
        for i in range(q + 1):
            right_factor = binom(q, i) * (2 * alpha_r) ** (q - i)
            terms.append(
                eq_term(
                    base * left_factor * right_factor,
                    {la: alpha_l, lb: beta_l},
                    {la: j, lb: i},
                    {la: alpha_r, lb: beta_r},
                    delta_L=(p - j) + (q - i),
                    testfn=fnmap,
                )
            )
    return eq_expr(terms)


def commutator(a: EQTerm, b: EQTerm) -> EQExpr:
    """multiply(a, b) - multiply(b, a), canonical."""
    return multiply(a, b) - multiply(b, a)


def _merge_labels(t: EQTerm) -> EQTerm:
    labels = sorted(t.labels())
    target = labels[0]
    fns = [fn for _, fn in t.testfn]
    product = None
    for fn in fns:
        product = fn if product is None else fn_product(product, fn)
    return eq_term(
        t.coeff,
        {target: sum((v for _, v in t.left_exp), Fraction(0))},
        {target: sum(e for _, e in t.q_pow)},
        {target: sum((v for _, v in t.right_exp), Fraction(0))},
        testfn={} if product is None else {target: product},
    )


@dataclass(frozen=True)
class ReduceResult:
    reduced: EQExpr
    l0_residual: EQExpr
    dropped_singular: int


def reduce(e: EQExpr, assume_S0: bool = True) -> ReduceResult:
    """Apply the delta renormalization and the vanishing-at-zero condition.

    Words with delta power 0 are returned untouched as the residual (a
    commutator of sandwich words must cancel them pairwise). Words with
    delta power >= 2 renormalize to delta(s) delta(t-s), hence carry the
    factor g(0) f(0): they are dropped and counted when every test function
    situation certifies the factor is zero, or unconditionally under
    assume_S0. Words with delta power 1 have their labels identified and
    their blocks merged additively.
    """
    reduced = []
    residual = []
    dropped = 0
    offenders = []
    for t in e.terms:
        if t.delta_L == 0:
            residual.append(t)
        elif t.delta_L == 1:
            reduced.append(_merge_labels(t))
        elif assume_S0 or any(fn_vanishes_at_zero(fn) for _, fn in t.testfn):
            dropped += 1
        else:
            offenders.append(t)
    if offenders:
        raise SingularPartError(
            f"{len(offenders)} singular term(s) do not vanish: "
            "test functions must vanish at zero",
            offenders,
        )
    return ReduceResult(eq_expr(reduced), eq_expr(residual), dropped)


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of one realization check at indices (n, k, N, K)."""

    n: int
    k: int
    N: int
    K: int
    passed: bool
    expected_coeff: int
    computed: EQExpr
    l0_residual: EQExpr
    dropped_singular: int


def verify_theorem(
    n: int,
    k: int,
    N: int,
    K: int,
    g: Optional[AnyTestFn] = None,
    f: Optional[AnyTestFn] = None,
    labels: tuple[str, str] = ("t", "s"),
) -> TheoremReport:
    """Check the w-infinity relation for the sandwich generators.

    Builds the two generator words, expands their commutator, reduces it, and
    compares structurally against

        (k (N-1) - K (n-1)) * (1/2)^(n+N-3) E((k+K)/2) Q^(n+N-3) E((k+K)/2)

    carrying the test-function product g f. Passing requires the reduced
    expression to equal that word exactly and the delta-free residual to
    vanish.
    """
    if n < 2 or N < 2:
        raise DomainError("realization indices need n, N >= 2")
    if g is None:
        g = fn_symbol("g")
    if f is None:
        f = fn_symbol("f")
    a = gen_to_word(n, k, labels[0], g)
    b = gen_to_word(N, K, labels[1], f)
    result = reduce(commutator(a, b), assume_S0=False)
    expected_coeff = k * (N - 1) - K * (n - 1)
    target = min(labels)
    expected = eq_expr(
        [gen_to_word(n + N - 2, k + K, target, fn_product(g, f))]
    ).scaled(expected_coeff)
    passed = result.l0_residual.is_zero and result.reduced == expected
    return TheoremReport(
        n,
        k,
        N,
        K,
        passed,
        expected_coeff,
        result.reduced,
        result.l0_residual,
        result.dropped_singular,
    )


# -- JSON --------------------------------------------------------------------

def _coeff_json(c: CScalar) -> list[int]:
    return [c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]


def eq_term_to_json(t: EQTerm) -> dict:
    return {
        "coeff": _coeff_json(t.coeff),
        "left_exp": {l: str(v) for l, v in t.left_exp},
        "q_pow": {l: e for l, e in t.q_pow},
        "right_exp": {l: str(v) for l, v in t.right_exp},
        "delta_L": t.delta_L,
        "testfn": {l: fn_to_json(fn) for l, fn in t.testfn},
    }


def eq_expr_to_json(e: EQExpr) -> list[dict]:
    return [eq_term_to_json(t) for t in e.terms]


def theorem_report_to_json(r: TheoremReport) -> dict:
    return {
        "n": r.n,
        "k": r.k,
        "N": r.N,
        "K": r.K,
        "pass": r.passed,
        "expected_coeff": r.expected_coeff,
        "dropped_singular_count": r.dropped_singular,
        "l0_residual_terms": eq_expr_to_json(r.l0_residual),
    }
