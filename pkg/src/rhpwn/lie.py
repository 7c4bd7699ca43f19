"""Structure-constant presentations of the RHPWN, w-infinity, and Witt algebras.

Generators are index pairs (n, k) with an optional test-function label; all
bracket arithmetic goes through one structure-constant function so that scans
and element-level computations certify the same table.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .scalars import CS_ZERO, CScalar
from .stepfn import (
    FnSymbol,
    AnyTestFn,
    fn_conjugate,
    fn_from_json,
    fn_product,
    fn_to_json,
)


class DomainError(ValueError):
    """Generator index outside the algebra's admissible family."""


class AlgebraKind(enum.Enum):
    RHPWN = "RHPWN"
    WINFINITY = "Winfinity"
    WITT = "Witt"


def in_domain(kind: AlgebraKind, n: int, k: int) -> bool:
    """Admissible index families: the self-adjoint RHPWN family needs
    n, k >= 0 with n + k >= 3; w-infinity needs n >= 2; Witt is its n = 2 slice."""
    if kind is AlgebraKind.RHPWN:
        return n >= 0 and k >= 0 and n + k >= 3
    if kind is AlgebraKind.WINFINITY:
        return n >= 2
    return n == 2


def _label_key(label: Optional[AnyTestFn]):
    if label is None:
        return (0,)
    if isinstance(label, FnSymbol):
        return (1, label.factors, label.in_S0)
    return (2, tuple((a, b, v.re, v.im) for a, b, v in label.pieces))


@dataclass(frozen=True)
class Generator:
    """Basis symbol B^n_k, optionally smeared with a test function label."""

    kind: AlgebraKind
    n: int
    k: int
    label: Optional[AnyTestFn] = None

    @property
    def in_domain(self) -> bool:
        return in_domain(self.kind, self.n, self.k)

    def sort_key(self):
        return (self.n, self.k, _label_key(self.label))


def generator(
    kind: AlgebraKind,
    n: int,
    k: int,
    label: Optional[AnyTestFn] = None,
    relaxed: bool = False,
) -> Generator:
    """Validated constructor; relaxed=True admits out-of-domain indices for
    exploratory use (such elements are not certified)."""
    if not relaxed and not in_domain(kind, n, k):
        raise DomainError(f"index ({n}, {k}) outside the {kind.value} family")
    return Generator(kind, n, k, label)


@dataclass(frozen=True)
class Element:
    """Finite linear combination of generators of a single algebra kind."""

    kind: AlgebraKind
    terms: tuple[tuple[Generator, CScalar], ...]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def certified(self) -> bool:
        return all(g.in_domain for g, _ in self.terms)

    def __add__(self, other: "Element") -> "Element":
        if self.kind is not other.kind:
            raise ValueError("algebra kind mismatch")
        return element(self.kind, self.terms + other.terms)

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scaled(-1)

    def __neg__(self) -> "Element":
        return self.scaled(-1)

    def scaled(self, c) -> "Element":
        c = CScalar.of(c)
        return element(self.kind, ((g, c * x) for g, x in self.terms))


def element(kind: AlgebraKind, items: Iterable[tuple[Generator, CScalar]]) -> Element:
    acc: dict[Generator, CScalar] = {}
    for g, c in items:
        if g.kind is not kind:
            raise ValueError("algebra kind mismatch")
        acc[g] = acc.get(g, CS_ZERO) + CScalar.of(c)
    terms = tuple(
        (g, acc[g]) for g in sorted(acc, key=Generator.sort_key) if acc[g]
    )
    return Element(kind, terms)


def zero(kind: AlgebraKind) -> Element:
    return Element(kind, ())


def basis(
    kind: AlgebraKind,
    n: int,
    k: int,
    label: Optional[AnyTestFn] = None,
    relaxed: bool = False,
) -> Element:
    g = generator(kind, n, k, label, relaxed)
    return Element(kind, ((g, CScalar.of(1)),))


def structure(kind: AlgebraKind, n: int, k: int, N: int, K: int) -> tuple[int, int, int]:
    """Structure constants: [B^n_k, B^N_K] = c * B^{n'}_{k'}.

    RHPWN:       c = kN - Kn,            (n', k') = (n+N-1, k+K-1)
    w-infinity:  c = (N-1)k - (n-1)K,    (n', k') = (n+N-2, k+K)
    Witt is the n = 2 restriction of the w-infinity table.
    """
    if kind is AlgebraKind.RHPWN:
        return k * N - K * n, n + N - 1, k + K - 1
    return (N - 1) * k - (n - 1) * K, n + N - 2, k + K


def _bracket_label(a: Optional[AnyTestFn], b: Optional[AnyTestFn]) -> Optional[AnyTestFn]:
    if a is None and b is None:
        return None
    if a is None or b is None:
        raise TypeError("cannot bracket a labeled generator with an unlabeled one")
    return fn_product(a, b)


def bracket(x: Element, y: Element) -> Element:
    """Bilinear extension of the structure-constant table."""
    if x.kind is not y.kind:
        raise ValueError("algebra kind mismatch")
    out = []
    for g1, c1 in x.terms:
        for g2, c2 in y.terms:
            c, n2, k2 = structure(x.kind, g1.n, g1.k, g2.n, g2.k)
            if not c:
                continue
            relaxed = not (g1.in_domain and g2.in_domain)
            out.append(
                (
                    generator(x.kind, n2, k2, _bracket_label(g1.label, g2.label), relaxed),
                    c1 * c2 * c,
                )
            )
    return element(x.kind, out)


def involution(x: Element) -> Element:
    """The *-map: RHPWN sends B^n_k(f) to B^k_n(conj f); w-infinity and Witt
    send B^n_k(f) to B^n_{-k}(conj f). Antilinear on coefficients."""
    out = []
    for g, c in x.terms:
        if x.kind is AlgebraKind.RHPWN:
            n2, k2 = g.k, g.n
        else:
            n2, k2 = g.n, -g.k
        label = None if g.label is None else fn_conjugate(g.label)
        out.append(
            (generator(x.kind, n2, k2, label, relaxed=not g.in_domain), c.conjugate())
        )
    return element(x.kind, out)


def jacobi_defect(x: Element, y: Element, z: Element) -> Element:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero certifies the Jacobi identity."""
    return (
        bracket(x, bracket(y, z))
        + bracket(y, bracket(z, x))
        + bracket(z, bracket(x, y))
    )


def star_compat_check(x: Element, y: Element) -> Element:
    """[x,y]* - [y*,x*]; zero certifies *-Lie compatibility."""
    return involution(bracket(x, y)) - bracket(involution(y), involution(x))


def witt_check(k: int, K: int) -> bool:
    """Whether [B^2_k, B^2_K] = (k - K) B^2_{k+K} under the w-infinity table."""
    lhs = bracket(basis(AlgebraKind.WITT, 2, k), basis(AlgebraKind.WITT, 2, K))
    rhs = basis(AlgebraKind.WITT, 2, k + K).scaled(k - K)
    return lhs == rhs


Range = tuple[int, int]


def basis_indices(kind: AlgebraKind, n_range: Range, k_range: Range) -> list[tuple[int, int]]:
    """In-domain index pairs inside the inclusive ranges, sorted."""
    return [
        (n, k)
        for n in range(n_range[0], n_range[1] + 1)
        for k in range(k_range[0], k_range[1] + 1)
        if in_domain(kind, n, k)
    ]


def _basis_jacobi_residual(kind, p1, p2, p3) -> dict[tuple[int, int], int]:
    acc: dict[tuple[int, int], int] = {}
    for x, y, z in ((p1, p2, p3), (p2, p3, p1), (p3, p1, p2)):
        c1, n1, k1 = structure(kind, y[0], y[1], z[0], z[1])
        if not c1:
            continue
        c2, n2, k2 = structure(kind, x[0], x[1], n1, k1)
        if not c2:
            continue
        key = (n2, k2)
        acc[key] = acc.get(key, 0) + c1 * c2
    return {key: v for key, v in acc.items() if v}


_FAILURE_CAP = 100


@dataclass(frozen=True)
class JacobiReport:
    kind: AlgebraKind
    n_range: Range
    k_range: Range
    triples_checked: int
    failure_count: int
    failures: tuple  # first few offending triples only
    sampled: bool
    seed: Optional[int]

    @property
    def passed(self) -> bool:
        return self.failure_count == 0


def jacobi_scan(
    kind: AlgebraKind,
    n_range: Range,
    k_range: Range,
    sample: Optional[int] = None,
    seed: Optional[int] = None,
) -> JacobiReport:
    """Scan basis triples for Jacobi defects.

    Exhaustive over the in-domain grid by default; with sample=N a fixed-seed
    random sample of N triples is drawn instead (the seed is recorded in the
    report). The scan walks the same structure-constant table bracket() uses.
    """
    pairs = basis_indices(kind, n_range, k_range)
    if sample is None:
        triples = itertools.product(pairs, repeat=3)
    else:
        rng = random.Random(seed)
        triples = (
            (rng.choice(pairs), rng.choice(pairs), rng.choice(pairs))
            for _ in range(sample if pairs else 0)
        )
    checked = 0
    failure_count = 0
    failures: list = []
    for p1, p2, p3 in triples:
        checked += 1
        residual = _basis_jacobi_residual(kind, p1, p2, p3)
        if residual:
            failure_count += 1
            if len(failures) < _FAILURE_CAP:
                failures.append((p1, p2, p3, tuple(sorted(residual.items()))))
    return JacobiReport(
        kind,
        tuple(n_range),
        tuple(k_range),
        checked,
        failure_count,
        tuple(failures),
        sample is not None,
        seed if sample is not None else None,
    )


@dataclass(frozen=True)
class ClosureReport:
    kind: AlgebraKind
    n_range: Range
    k_range: Range
    pairs_checked: int
    violation_count: int
    violations: tuple

    @property
    def passed(self) -> bool:
        return self.violation_count == 0


def closure_check(kind: AlgebraKind, n_range: Range, k_range: Range) -> ClosureReport:
    """Verify every bracket with a nonzero structure constant lands in-domain."""
    pairs = basis_indices(kind, n_range, k_range)
    checked = 0
    violation_count = 0
    violations: list = []
    for (n, k), (N, K) in itertools.product(pairs, repeat=2):
        checked += 1
        c, n2, k2 = structure(kind, n, k, N, K)
        if c and not in_domain(kind, n2, k2):
            violation_count += 1
            if len(violations) < _FAILURE_CAP:
                violations.append(((n, k), (N, K), (c, n2, k2)))
    return ClosureReport(
        kind, tuple(n_range), tuple(k_range), checked, violation_count, tuple(violations)
    )


# -- JSON --------------------------------------------------------------------

def _coeff_json(c: CScalar) -> list[int]:
    return [c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]


def _coeff_from_json(v: list) -> CScalar:
    from fractions import Fraction

    return CScalar(Fraction(v[0], v[1]), Fraction(v[2], v[3]))


def _label_json(label: Optional[AnyTestFn]):
    return None if label is None else fn_to_json(label)


def _label_from_json(v) -> Optional[AnyTestFn]:
    return None if v is None else fn_from_json(v)


def element_to_json(x: Element) -> dict:
    terms = []
    for g, c in x.terms:
        rec = {"n": g.n, "k": g.k, "coeff": _coeff_json(c)}
        if g.label is not None:
            rec["label"] = _label_json(g.label)
        terms.append(rec)
    return {"kind": x.kind.value, "terms": terms}


def element_from_json(data: dict) -> Element:
    kind = AlgebraKind(data["kind"])
    return element(
        kind,
        (
            (
                generator(kind, rec["n"], rec["k"], _label_from_json(rec.get("label"))),
                _coeff_from_json(rec["coeff"]),
            )
            for rec in data["terms"]
        ),
    )
