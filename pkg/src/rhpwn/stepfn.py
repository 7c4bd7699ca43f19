"""Test functions: complex step functions on the line and abstract symbols.

The concrete space consists of right-continuous step functions with finitely
many values and compact support; the subspace of interest is the one whose
members vanish at zero. The symbolic engines mostly manipulate test functions
abstractly, so a lightweight formal-product symbol type lives here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .scalars import CS_ONE, CS_ZERO, CScalar


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of disjoint, sorted half-open rational intervals [a, b)."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __contains__(self, t) -> bool:
        t = Fraction(t)
        return any(a <= t < b for a, b in self.intervals)


def interval_set(pairs: Iterable[tuple]) -> IntervalSet:
    """Build an IntervalSet, coalescing touching or overlapping intervals."""
    norm = sorted((Fraction(a), Fraction(b)) for a, b in pairs)
    for a, b in norm:
        if a >= b:
            raise ValueError(f"empty or reversed interval [{a}, {b})")
    merged: list[list[Fraction]] = []
    for a, b in norm:
        if merged and a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    return IntervalSet(tuple((a, b) for a, b in merged))


@dataclass(frozen=True)
class StepFn:
    """Right-continuous complex step function with compact support.

    Stored as sorted disjoint pieces (a, b, v): the function equals v on
    [a, b) and 0 outside every piece. Canonical form keeps only nonzero
    values and merges contiguous equal-valued pieces, so equality of the
    dataclass is equality of functions.
    """

    pieces: tuple[tuple[Fraction, Fraction, CScalar], ...]

    @property
    def is_zero(self) -> bool:
        return not self.pieces


ZERO_FN = StepFn(())


def _canon_pieces(raw: Iterable[tuple[Fraction, Fraction, CScalar]]) -> StepFn:
    pieces = sorted((a, b, v) for a, b, v in raw if v)
    out: list[tuple[Fraction, Fraction, CScalar]] = []
    for a, b, v in pieces:
        if out and a < out[-1][1]:
            raise ValueError(f"overlapping pieces at {a}")
        if out and a == out[-1][1] and v == out[-1][2]:
            out[-1] = (out[-1][0], b, v)
        else:
            out.append((a, b, v))
    return StepFn(tuple(out))


def make_step(breakpoints: Iterable, values: Iterable) -> StepFn:
    """Step function with values[i] on [breakpoints[i], breakpoints[i+1]).

    Outside [breakpoints[0], breakpoints[-1]) the function is 0, keeping the
    support compact. Breakpoints must be strictly increasing and there must
    be exactly one value per bounded piece.
    """
    bps = [Fraction(b) for b in breakpoints]
    vals = [CScalar.of(v) for v in values]
    if any(x >= y for x, y in zip(bps, bps[1:])):
        raise ValueError("breakpoints must be strictly increasing")
    if len(vals) != max(len(bps) - 1, 0):
        raise ValueError(
            f"expected {max(len(bps) - 1, 0)} values for {len(bps)} breakpoints, "
            f"got {len(vals)}"
        )
    return _canon_pieces(
        (a, b, v) for a, b, v in zip(bps, bps[1:], vals)
    )


def indicator(region: IntervalSet | Iterable[tuple]) -> StepFn:
    """Indicator function of a finite union of half-open intervals."""
    if not isinstance(region, IntervalSet):
        region = interval_set(region)
    return _canon_pieces((a, b, CS_ONE) for a, b in region.intervals)


def evaluate(f: StepFn, t) -> CScalar:
    """Value of f at t under the right-continuous convention."""
    t = Fraction(t)
    for a, b, v in f.pieces:
        if a <= t < b:
            return v
    return CS_ZERO


def _endpoints(*fns: StepFn) -> list[Fraction]:
    pts = sorted({p for f in fns for a, b, _ in f.pieces for p in (a, b)})
    return pts


def add(f: StepFn, g: StepFn) -> StepFn:
    pts = _endpoints(f, g)
    return _canon_pieces(
        (a, b, evaluate(f, a) + evaluate(g, a)) for a, b in zip(pts, pts[1:])
    )


def scale(c, f: StepFn) -> StepFn:
    c = CScalar.of(c)
    return _canon_pieces((a, b, c * v) for a, b, v in f.pieces)


def pointwise_product(f: StepFn, g: StepFn) -> StepFn:
    pts = _endpoints(f, g)
    return _canon_pieces(
        (a, b, evaluate(f, a) * evaluate(g, a)) for a, b in zip(pts, pts[1:])
    )


def conjugate(f: StepFn) -> StepFn:
    return StepFn(tuple((a, b, v.conjugate()) for a, b, v in f.pieces))


def integrate(f: StepFn) -> CScalar:
    """Exact integral: the sum of value times length over all pieces."""
    total = CS_ZERO
    for a, b, v in f.pieces:
        total = total + v * (b - a)
    return total


def is_in_S0(f: StepFn) -> bool:
    """Whether f belongs to the subspace vanishing at zero, f(0) = 0."""
    return not evaluate(f, 0)


# -- JSON records -----------------------------------------------------------

def _frac_str(x: Fraction) -> str:
    return str(x)


def step_to_records(f: StepFn) -> list[dict]:
    """Serialize as [{"from": "a/b", "to": "c/d", "re": "p/q", "im": "r/s"}]."""
    return [
        {
            "from": _frac_str(a),
            "to": _frac_str(b),
            "re": _frac_str(v.re),
            "im": _frac_str(v.im),
        }
        for a, b, v in f.pieces
    ]


def step_from_records(records: Iterable[dict]) -> StepFn:
    return _canon_pieces(
        (
            Fraction(str(r["from"])),
            Fraction(str(r["to"])),
            CScalar(Fraction(str(r.get("re", 0))), Fraction(str(r.get("im", 0)))),
        )
        for r in records
    )


# -- Abstract test-function symbols -----------------------------------------

@dataclass(frozen=True)
class FnSymbol:
    """Formal pointwise product of named test functions.

    Factors are stored as a sorted multiset of names; a '~' prefix marks
    complex conjugation of that factor. in_S0 records whether the product is
    known to vanish at zero (true as soon as any factor does).
    """

    factors: tuple[str, ...]
    in_S0: bool = True


def fn_symbol(name: str, in_S0: bool = True) -> FnSymbol:
    base = name[1:] if name.startswith("~") else name
    if not base.isidentifier():
        raise ValueError(f"test-function name must be an identifier, got {name!r}")
    return FnSymbol((name,), in_S0)


AnyTestFn = Union[FnSymbol, StepFn]


def fn_product(x: AnyTestFn, y: AnyTestFn) -> AnyTestFn:
    """Pointwise product, formal for symbols and exact for step functions."""
    if isinstance(x, FnSymbol) and isinstance(y, FnSymbol):
        return FnSymbol(tuple(sorted(x.factors + y.factors)), x.in_S0 or y.in_S0)
    if isinstance(x, StepFn) and isinstance(y, StepFn):
        return pointwise_product(x, y)
    raise TypeError("cannot multiply an abstract symbol with a concrete step function")


def fn_conjugate(x: AnyTestFn) -> AnyTestFn:
    if isinstance(x, FnSymbol):
        toggled = tuple(
            f[1:] if f.startswith("~") else "~" + f for f in x.factors
        )
        return FnSymbol(tuple(sorted(toggled)), x.in_S0)
    return conjugate(x)


def fn_vanishes_at_zero(x: AnyTestFn) -> bool:
    """Whether x is known to vanish at zero (symbols: the in_S0 flag)."""
    if isinstance(x, FnSymbol):
        return x.in_S0
    return is_in_S0(x)


def fn_to_json(x: AnyTestFn) -> dict:
    if isinstance(x, FnSymbol):
        return {"fn": list(x.factors), "in_S0": x.in_S0}
    return {"step": step_to_records(x)}


def fn_from_json(v: dict) -> AnyTestFn:
    if "fn" in v:
        return FnSymbol(tuple(sorted(v["fn"])), bool(v["in_S0"]))
    return step_from_records(v["step"])
