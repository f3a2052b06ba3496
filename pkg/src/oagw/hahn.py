"""Finite-support formal series with exponents in a construction group.

A series is a finite sum of ``coeff * t^exponent`` terms ordered by the
group order of the exponents; ``valuation`` returns the least exponent.
Coefficients live in an exact field: the rationals or a prime field.

Membership predicates classify series by their exponents alone:

* ``in_val_ring``: every exponent is >= 0 (the full valuation ring).
* ``in_k_lambda1``: every exponent is supported on G1 positions.
* ``in_a``: every exponent has zero or positive left (G2) part; this
  cone is a subring containing both of the sets above.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .elements import (
    Construction,
    ConstructionMismatch,
    GroupElement,
    LAMBDA,
    unit,
    zero as group_zero,
)
from .embeddings import Embedding, apply as apply_embedding
from .positions import G1, G2, g1_square


class CoefficientField:
    """Exact field interface for series coefficients."""

    name: str = "?"

    def coerce(self, x):  # pragma: no cover - interface
        raise NotImplementedError

    def add(self, a, b):  # pragma: no cover - interface
        raise NotImplementedError

    def mul(self, a, b):  # pragma: no cover - interface
        raise NotImplementedError

    def neg(self, a):  # pragma: no cover - interface
        raise NotImplementedError

    def inv(self, a):  # pragma: no cover - interface
        raise NotImplementedError

    def is_zero(self, a) -> bool:  # pragma: no cover - interface
        raise NotImplementedError

    @property
    def one(self):
        return self.coerce(1)

    def __repr__(self) -> str:
        return self.name


class RationalField(CoefficientField):
    name = "Q"

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return not a

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


class PrimeField(CoefficientField):
    """Integers modulo a small prime."""

    def __init__(self, p: int) -> None:
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"GF({p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def coerce(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0


QQ = RationalField()

_exp_key = functools.cmp_to_key(lambda x, y: x.cmp(y))


@dataclass(frozen=True)
class HahnSeries:
    construction: Construction
    coeff_field: CoefficientField
    terms: tuple[tuple[GroupElement, object], ...]  # ascending exponents

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.terms)

    def coeff(self, exponent: GroupElement):
        for g, c in self.terms:
            if g == exponent:
                return c
        return self.coeff_field.coerce(0)

    def __add__(self, other: "HahnSeries") -> "HahnSeries":
        _compat(self, other)
        F = self.coeff_field
        acc: dict[GroupElement, object] = dict(self.terms)
        for g, c in other.terms:
            s = F.add(acc.get(g, F.coerce(0)), c)
            if F.is_zero(s):
                acc.pop(g, None)
            else:
                acc[g] = s
        return _build(self.construction, F, acc)

    def __neg__(self) -> "HahnSeries":
        F = self.coeff_field
        return HahnSeries(
            self.construction, F, tuple((g, F.neg(c)) for g, c in self.terms)
        )

    def __sub__(self, other: "HahnSeries") -> "HahnSeries":
        return self + (-other)

    def __mul__(self, other: "HahnSeries") -> "HahnSeries":
        _compat(self, other)
        F = self.coeff_field
        acc: dict[GroupElement, object] = {}
        for g1, c1 in self.terms:
            for g2, c2 in other.terms:
                g = g1 + g2
                s = F.add(acc.get(g, F.coerce(0)), F.mul(c1, c2))
                if F.is_zero(s):
                    acc.pop(g, None)
                else:
                    acc[g] = s
        return _build(self.construction, F, acc)

    def valuation(self) -> GroupElement:
        if not self.terms:
            raise ZeroDivisionError("the zero series has no valuation")
        return self.terms[0][0]

    def lead_coeff(self):
        if not self.terms:
            raise ZeroDivisionError("the zero series has no leading term")
        return self.terms[0][1]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * t^{g}" for g, c in self.terms)


def _compat(a: HahnSeries, b: HahnSeries) -> None:
    if a.construction is not b.construction:
        raise ConstructionMismatch("series over different constructions")
    if a.coeff_field != b.coeff_field:
        raise ValueError(f"series over different fields {a.coeff_field} and {b.coeff_field}")


def _build(
    construction: Construction, F: CoefficientField, acc: Mapping[GroupElement, object]
) -> HahnSeries:
    items = sorted(acc.items(), key=lambda kv: _exp_key(kv[0]))
    return HahnSeries(construction, F, tuple(items))


def series(
    construction: Construction,
    terms: Mapping[GroupElement, Union[int, Fraction]],
    coeff_field: CoefficientField = QQ,
) -> HahnSeries:
    acc: dict[GroupElement, object] = {}
    for g, c in terms.items():
        if g.construction is not construction:
            raise ConstructionMismatch("exponent from the wrong construction")
        cc = coeff_field.coerce(c)
        if not coeff_field.is_zero(cc):
            acc[g] = cc
    return _build(construction, coeff_field, acc)


def monomial(
    exponent: GroupElement,
    coeff: Union[int, Fraction] = 1,
    coeff_field: CoefficientField = QQ,
) -> HahnSeries:
    return series(exponent.construction, {exponent: coeff}, coeff_field)


def one(construction: Construction, coeff_field: CoefficientField = QQ) -> HahnSeries:
    return monomial(group_zero(construction), 1, coeff_field)


def zero_series(construction: Construction, coeff_field: CoefficientField = QQ) -> HahnSeries:
    return HahnSeries(construction, coeff_field, ())


# -- membership -------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    in_val_ring: bool
    in_k_lambda1: bool
    in_a: bool


def _g2_part_nonnegative(g: GroupElement) -> bool:
    # G2 positions sort first: the leading entry is the leading G2 entry
    # whenever any exists
    if not g.entries:
        return True
    pos, _ = g.entries[0]
    if pos.area != G2:
        return True
    return GroupElement(g.construction, (g.entries[0],)).sign() > 0


def membership(f: HahnSeries) -> Membership:
    """Exponent-wise classification; defined on the lambda construction."""
    if f.construction is not LAMBDA:
        raise ConstructionMismatch("membership flags are defined for lambda series")
    zero_el = group_zero(f.construction)
    in_val_ring = all(g >= zero_el for g, _ in f.terms)
    in_k_lambda1 = all(
        all(pos.area == G1 for pos, _ in g.entries) for g, _ in f.terms
    )
    in_a = all(_g2_part_nonnegative(g) for g, _ in f.terms)
    return Membership(in_val_ring, in_k_lambda1, in_a)


# -- units ------------------------------------------------------------------


def truncated_inverse(f: HahnSeries, precision: GroupElement) -> HahnSeries:
    """g with v(f*g - 1) > precision, by leading-term factoring.

    Write f = c * t^v * (1 + u) with v(u) > 0; geometric expansion of
    1/(1+u) accumulates until the error valuation clears the requested
    precision.  Monomials invert exactly.  Raises when no multiple of
    v(u) can exceed the precision (incomparable archimedean classes).
    """
    if f.is_zero():
        raise ZeroDivisionError("cannot invert the zero series")
    if precision.construction is not f.construction:
        raise ConstructionMismatch("precision exponent from the wrong construction")
    F = f.coeff_field
    v = f.valuation()
    lead_inv = monomial(-v, F.inv(f.lead_coeff()), F)
    u = lead_inv * f - one(f.construction, F)
    if u.is_zero():
        return lead_inv
    err = u.valuation()  # > 0
    if precision.sign() > 0:
        dp = precision.lead_descriptor()
        de = err.lead_descriptor()
        assert dp is not None and de is not None
        if dp < de:
            raise ValueError(
                f"precision {precision} is unreachable: error valuation {err} "
                "is infinitesimal relative to it"
            )
    acc = one(f.construction, F)
    power = acc
    total = err
    while not (total > precision):
        power = power * (-u)
        acc = acc + power
        total = total + err
    return lead_inv * acc


# -- lifted embeddings -------------------------------------------------------


def lift_embedding(e: Embedding, f: HahnSeries) -> HahnSeries:
    """Apply the group embedding to every exponent; a ring embedding."""
    if f.construction is not LAMBDA:
        raise ConstructionMismatch("lifted embeddings are defined for lambda series")
    acc = {apply_embedding(e, g): c for g, c in f.terms}
    return _build(f.construction, f.coeff_field, acc)


def subring_escape_witness(
    coeff_field: CoefficientField = QQ,
) -> tuple[HahnSeries, HahnSeries]:
    """A series x inside the cone A whose lifted image leaves it.

    x = t^(-u) for the head square unit u of the right block: the
    exponent has no left part, so x sits in the Laurent branch of A;
    the left-shift embedding moves the exponent onto a G2 square with a
    negative entry, which is outside the cone.
    """
    g = -unit(LAMBDA, g1_square(0, 0), {0: 1})
    x = monomial(g, 1, coeff_field)
    hx = lift_embedding(Embedding.F1, x)
    return x, hx
