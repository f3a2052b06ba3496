"""Translation of valuation statements into the ring language of series.

Source atoms speak about valuations of products of series variables:
``v(s) < v(t)`` and ``v(s) + v(t) = v(u)``.  The target speaks ring:
polynomial equalities between series terms plus the unary valuation
ring predicate, with one quantified shape ``E g (ValRing(g) & s = g*t)``
expressing ``v(s) >= v(t)`` without division.

The target's quantifier ranges over the full series field, so its
semantics here is decided by the exact valuation comparison rather than
by searching finite-support witnesses; both sides are evaluated on
finite-support series and compared by the test suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .hahn import HahnSeries, membership

# -- series terms ------------------------------------------------------------

Factor = Union[str, HahnSeries]


@dataclass(frozen=True)
class SeriesTerm:
    """Product of series variables and constants."""

    factors: tuple[Factor, ...]

    def evaluate(self, env: Mapping[str, HahnSeries]) -> HahnSeries:
        if not self.factors:
            raise ValueError("empty series term")
        acc: HahnSeries | None = None
        for f in self.factors:
            s = env[f] if isinstance(f, str) else f
            acc = s if acc is None else acc * s
        assert acc is not None
        return acc

    def __mul__(self, other: "SeriesTerm") -> "SeriesTerm":
        return SeriesTerm(self.factors + other.factors)

    def __str__(self) -> str:
        return "*".join(f if isinstance(f, str) else f"({f})" for f in self.factors)


def svar(name: str) -> SeriesTerm:
    return SeriesTerm((name,))


def sconst(s: HahnSeries) -> SeriesTerm:
    return SeriesTerm((s,))


# -- source: valuation statements ---------------------------------------------


@dataclass(frozen=True)
class VLt:
    """v(lhs) < v(rhs)."""

    lhs: SeriesTerm
    rhs: SeriesTerm


@dataclass(frozen=True)
class VSumEq:
    """v(a) + v(b) = v(c)."""

    a: SeriesTerm
    b: SeriesTerm
    c: SeriesTerm


@dataclass(frozen=True)
class VNot:
    body: "ValFormula"


@dataclass(frozen=True)
class VAnd:
    lhs: "ValFormula"
    rhs: "ValFormula"


@dataclass(frozen=True)
class VOr:
    lhs: "ValFormula"
    rhs: "ValFormula"


ValFormula = Union[VLt, VSumEq, VNot, VAnd, VOr]


# -- target: ring formulas -----------------------------------------------------


@dataclass(frozen=True)
class RingEq:
    lhs: SeriesTerm
    rhs: SeriesTerm


@dataclass(frozen=True)
class ValRing:
    arg: SeriesTerm


@dataclass(frozen=True)
class RNot:
    body: "RingFormula"


@dataclass(frozen=True)
class RAnd:
    lhs: "RingFormula"
    rhs: "RingFormula"


@dataclass(frozen=True)
class ROr:
    lhs: "RingFormula"
    rhs: "RingFormula"


@dataclass(frozen=True)
class RExists:
    var: str
    body: "RingFormula"


RingFormula = Union[RingEq, ValRing, RNot, RAnd, ROr, RExists]


class NonValuationAtom(TypeError):
    pass


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    k = 0
    while name in taken:
        k += 1
        name = f"{base}{k}"
    taken.add(name)
    return name


def _vars_of_term(t: SeriesTerm) -> set[str]:
    return {f for f in t.factors if isinstance(f, str)}


def _vars_of(f: ValFormula) -> set[str]:
    if isinstance(f, VLt):
        return _vars_of_term(f.lhs) | _vars_of_term(f.rhs)
    if isinstance(f, VSumEq):
        return _vars_of_term(f.a) | _vars_of_term(f.b) | _vars_of_term(f.c)
    if isinstance(f, VNot):
        return _vars_of(f.body)
    if isinstance(f, (VAnd, VOr)):
        return _vars_of(f.lhs) | _vars_of(f.rhs)
    raise NonValuationAtom(f"not a valuation statement: {f!r}")


def _ge_pattern(s: SeriesTerm, t: SeriesTerm, taken: set[str]) -> RingFormula:
    # v(s) >= v(t)  <=>  s/t in the valuation ring, division-free
    g = _fresh("g", taken)
    return RExists(g, RAnd(ValRing(svar(g)), RingEq(s, svar(g) * t)))


def translate_to_ring(f: ValFormula) -> RingFormula:
    """Syntactic translation; boolean structure is preserved."""
    taken = _vars_of(f)
    return _translate(f, taken)


def _translate(f: ValFormula, taken: set[str]) -> RingFormula:
    if isinstance(f, VLt):
        return RNot(_ge_pattern(f.lhs, f.rhs, taken))
    if isinstance(f, VSumEq):
        prod = f.a * f.b
        lt1 = RNot(_ge_pattern(prod, f.c, taken))  # v(ab) < v(c)
        lt2 = RNot(_ge_pattern(f.c, prod, taken))  # v(ab) > v(c)
        return RAnd(RNot(lt1), RNot(lt2))
    if isinstance(f, VNot):
        return RNot(_translate(f.body, taken))
    if isinstance(f, VAnd):
        return RAnd(_translate(f.lhs, taken), _translate(f.rhs, taken))
    if isinstance(f, VOr):
        return ROr(_translate(f.lhs, taken), _translate(f.rhs, taken))
    raise NonValuationAtom(f"not a valuation statement: {f!r}")


# -- semantics ----------------------------------------------------------------


def _divides_in_val_ring(a: HahnSeries, b: HahnSeries) -> bool:
    """Truth of E g (ValRing(g) & a = g*b) over the full series field."""
    if b.is_zero():
        return a.is_zero()
    if a.is_zero():
        return True
    return a.valuation() >= b.valuation()


def eval_ring(f: RingFormula, env: Mapping[str, HahnSeries]) -> bool:
    """Evaluate a ring formula; quantifiers must be the divisibility shape."""
    if isinstance(f, RingEq):
        return f.lhs.evaluate(env) == f.rhs.evaluate(env)
    if isinstance(f, ValRing):
        return membership(f.arg.evaluate(env)).in_val_ring
    if isinstance(f, RNot):
        return not eval_ring(f.body, env)
    if isinstance(f, RAnd):
        return eval_ring(f.lhs, env) and eval_ring(f.rhs, env)
    if isinstance(f, ROr):
        return eval_ring(f.lhs, env) or eval_ring(f.rhs, env)
    if isinstance(f, RExists):
        body = f.body
        if (
            isinstance(body, RAnd)
            and isinstance(body.lhs, ValRing)
            and body.lhs.arg.factors == (f.var,)
            and isinstance(body.rhs, RingEq)
        ):
            eq = body.rhs
            if eq.rhs.factors[:1] == (f.var,):
                a = eq.lhs.evaluate(env)
                b = SeriesTerm(eq.rhs.factors[1:]).evaluate(env)
                return _divides_in_val_ring(a, b)
        raise NonValuationAtom(
            "only the division-free valuation-ring pattern is evaluable"
        )
    raise NonValuationAtom(f"not a ring formula: {f!r}")


def eval_valuation(f: ValFormula, env: Mapping[str, HahnSeries]) -> bool:
    """Group-side truth via exact valuations (v(0) treated as +infinity)."""
    if isinstance(f, VLt):
        s = f.lhs.evaluate(env)
        t = f.rhs.evaluate(env)
        if s.is_zero():
            return False
        if t.is_zero():
            return True
        return s.valuation() < t.valuation()
    if isinstance(f, VSumEq):
        ab = f.a.evaluate(env) * f.b.evaluate(env)
        c = f.c.evaluate(env)
        if ab.is_zero() or c.is_zero():
            return ab.is_zero() and c.is_zero()
        return ab.valuation() == c.valuation()
    if isinstance(f, VNot):
        return not eval_valuation(f.body, env)
    if isinstance(f, VAnd):
        return eval_valuation(f.lhs, env) and eval_valuation(f.rhs, env)
    if isinstance(f, VOr):
        return eval_valuation(f.lhs, env) or eval_valuation(f.rhs, env)
    raise NonValuationAtom(f"not a valuation statement: {f!r}")
