"""Finitely supported elements of the two group constructions.

A ``GroupElement`` maps positions to component values and is ordered
lexicographically: the leftmost (most significant) position where two
elements differ decides the comparison.

Component values depend on the construction:

* ``GAMMA`` squares hold rationals whose denominator is coprime to 3,
  circles hold rationals with odd denominator.
* ``LAMBDA`` squares hold integer polynomials ``a0 + a1*c1 + a2*c2 + ...``
  over generators ``c1 > c2 > ...`` that are infinitesimal relative to 1
  and to each other; the polynomial order is lexicographic by slot with
  slot 0 most significant.  Circles hold arbitrary rationals.

All values are immutable and canonical: no zero components are stored,
rationals are kept in lowest terms, polynomial maps drop zero
coefficients.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

from .positions import (
    Position,
    g1_circle,
    g1_square,
    g2_circle,
    g2_square,
)


class Construction(enum.Enum):
    GAMMA = "gamma"
    LAMBDA = "lambda"

    def __str__(self) -> str:
        return self.value


GAMMA = Construction.GAMMA
LAMBDA = Construction.LAMBDA

# Canonical component values: Fraction for circles and GAMMA squares,
# sorted tuple of (slot, coeff) pairs for LAMBDA squares.
Poly = tuple[tuple[int, int], ...]
Value = Union[Fraction, Poly]


class ConstructionMismatch(ValueError):
    pass


class ComponentError(ValueError):
    pass


def _p_val(num: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    return v


def uses_poly(construction: Construction, pos: Position) -> bool:
    return construction is LAMBDA and pos.is_square


def _local_prime(pos: Position) -> int:
    # GAMMA components live in a localization of the integers:
    # squares away from 3, circles away from 2.
    return 3 if pos.is_square else 2


def check_value(construction: Construction, pos: Position, value: Value) -> Value:
    """Validate and canonicalize one component value; None-like zeros rejected."""
    if uses_poly(construction, pos):
        if isinstance(value, Fraction):
            raise ComponentError(f"{pos}: square components take integer polynomials")
        return value
    if not isinstance(value, Fraction):
        raise ComponentError(f"{pos}: expected a rational value")
    if construction is GAMMA:
        p = _local_prime(pos)
        if value.denominator % p == 0:
            raise ComponentError(
                f"{pos}: denominator {value.denominator} not invertible here (prime {p})"
            )
    return value


def _canon_poly(coeffs: Mapping[int, int]) -> Poly:
    items = []
    for slot, c in coeffs.items():
        if slot < 0:
            raise ComponentError("negative polynomial slot")
        if not isinstance(c, int):
            raise ComponentError("polynomial coefficients must be integers")
        if c:
            items.append((slot, c))
    return tuple(sorted(items))


def _poly_add(x: Poly, y: Poly) -> Poly:
    acc = dict(x)
    for slot, c in y:
        s = acc.get(slot, 0) + c
        if s:
            acc[slot] = s
        else:
            acc.pop(slot, None)
    return tuple(sorted(acc.items()))


def _poly_scale(x: Poly, k: int) -> Poly:
    if k == 0:
        return ()
    return tuple((slot, c * k) for slot, c in x)


def _poly_sign(x: Poly) -> int:
    # lexicographic: the least slot present decides
    if not x:
        return 0
    return 1 if x[0][1] > 0 else -1


def _value_sub_sign(a: Optional[Value], b: Optional[Value]) -> int:
    """Sign of a - b where either side may be absent (zero)."""
    if isinstance(a, tuple) or isinstance(b, tuple):
        xa: Poly = a if isinstance(a, tuple) else ()
        xb: Poly = b if isinstance(b, tuple) else ()
        return _poly_sign(_poly_add(xa, _poly_scale(xb, -1)))
    qa = a if a is not None else Fraction(0)
    qb = b if b is not None else Fraction(0)
    d = qa - qb
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class LeadDescriptor:
    """A support address: position plus inner polynomial slot.

    Ordered lexicographically; the inner slot is 0 at circles and at
    GAMMA squares, which have no inner structure.
    """

    position: Position
    inner_slot: int = 0

    def sort_key(self) -> tuple:
        return (*self.position.sort_key(), self.inner_slot)

    def __lt__(self, other: "LeadDescriptor") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "LeadDescriptor") -> bool:
        return self.sort_key() <= other.sort_key()

    def __str__(self) -> str:
        return f"({self.position}, {self.inner_slot})"


@dataclass(frozen=True)
class GroupElement:
    construction: Construction
    entries: tuple[tuple[Position, Value], ...]

    def __post_init__(self) -> None:
        prev = None
        for pos, _ in self.entries:
            k = pos.sort_key()
            if prev is not None and not prev < k:
                raise ComponentError("entries must be sorted by position and unique")
            prev = k

    def is_zero(self) -> bool:
        return not self.entries

    def support(self) -> tuple[Position, ...]:
        return tuple(pos for pos, _ in self.entries)

    def value_at(self, pos: Position) -> Optional[Value]:
        for p, v in self.entries:
            if p == pos:
                return v
        return None

    def coeff_at(self, desc: LeadDescriptor) -> int:
        """Integer coefficient at a LAMBDA square slot (0 when absent)."""
        v = self.value_at(desc.position)
        if not isinstance(v, tuple):
            raise ComponentError(f"{desc.position} holds no polynomial")
        for slot, c in v:
            if slot == desc.inner_slot:
                return c
        return 0

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "GroupElement") -> "GroupElement":
        _same(self, other)
        acc: dict[Position, Value] = dict(self.entries)
        for pos, v in other.entries:
            cur = acc.get(pos)
            if cur is None:
                acc[pos] = v
                continue
            if isinstance(v, tuple):
                s: Value = _poly_add(cur, v)  # type: ignore[arg-type]
                if s:
                    acc[pos] = s
                else:
                    del acc[pos]
            else:
                q = cur + v
                if q:
                    acc[pos] = q
                else:
                    del acc[pos]
        return GroupElement(
            self.construction,
            tuple(sorted(acc.items(), key=lambda e: e[0].sort_key())),
        )

    def __neg__(self) -> "GroupElement":
        return self.scale(-1)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            raise TypeError("only integer scaling is defined")
        if k == 0:
            return zero(self.construction)
        out = []
        for pos, v in self.entries:
            if isinstance(v, tuple):
                out.append((pos, _poly_scale(v, k)))
            else:
                out.append((pos, v * k))
        return GroupElement(self.construction, tuple(out))

    def __mul__(self, k: int) -> "GroupElement":
        return self.scale(k)

    __rmul__ = __mul__

    # -- order ----------------------------------------------------------

    def cmp(self, other: "GroupElement") -> int:
        _same(self, other)
        i = j = 0
        ea, eb = self.entries, other.entries
        while i < len(ea) or j < len(eb):
            ka = ea[i][0].sort_key() if i < len(ea) else None
            kb = eb[j][0].sort_key() if j < len(eb) else None
            if kb is None or (ka is not None and ka < kb):
                s = _value_sub_sign(ea[i][1], None)
                if s:
                    return s
                i += 1
            elif ka is None or kb < ka:
                s = _value_sub_sign(None, eb[j][1])
                if s:
                    return s
                j += 1
            else:
                s = _value_sub_sign(ea[i][1], eb[j][1])
                if s:
                    return s
                i += 1
                j += 1
        return 0

    def sign(self) -> int:
        if not self.entries:
            return 0
        return _value_sub_sign(self.entries[0][1], None)

    def __lt__(self, other: "GroupElement") -> bool:
        return self.cmp(other) < 0

    def __le__(self, other: "GroupElement") -> bool:
        return self.cmp(other) <= 0

    def __gt__(self, other: "GroupElement") -> bool:
        return self.cmp(other) > 0

    def __ge__(self, other: "GroupElement") -> bool:
        return self.cmp(other) >= 0

    def abs(self) -> "GroupElement":
        return self if self.sign() >= 0 else -self

    # -- leads and divisibility ------------------------------------------

    def lead(self) -> Optional[tuple[Position, Value]]:
        return self.entries[0] if self.entries else None

    def lead_descriptor(self) -> Optional[LeadDescriptor]:
        """Address of the first nonzero component slot."""
        if not self.entries:
            return None
        pos, v = self.entries[0]
        if isinstance(v, tuple):
            return LeadDescriptor(pos, v[0][0])
        return LeadDescriptor(pos, 0)

    def lead_value(self) -> Union[int, Fraction]:
        """Leading slot value: integer coefficient or rational."""
        if not self.entries:
            raise ValueError("zero element has no lead")
        v = self.entries[0][1]
        if isinstance(v, tuple):
            return v[0][1]
        return v

    def is_divisible(self, n: int) -> bool:
        _check_modulus(n)
        return all(_component_divisible(self.construction, pos, v, n) for pos, v in self.entries)

    def lead_mod(self, n: int) -> Optional[LeadDescriptor]:
        """First slot whose component value is not divisible by n.

        Circles of the LAMBDA construction are rational, hence always
        divisible and never host the result; absent when the whole
        element is divisible (in particular for zero).
        """
        _check_modulus(n)
        for pos, v in self.entries:
            if isinstance(v, tuple):
                for slot, c in v:
                    if c % n:
                        return LeadDescriptor(pos, slot)
            else:
                if self.construction is LAMBDA:
                    continue  # rationals are n-divisible
                if not _gamma_divisible(pos, v, n):
                    return LeadDescriptor(pos, 0)
        return None

    def __str__(self) -> str:
        return format_element(self)


def _same(a: GroupElement, b: GroupElement) -> None:
    if a.construction is not b.construction:
        raise ConstructionMismatch(
            f"cannot mix {a.construction} and {b.construction} elements"
        )


def _check_modulus(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {n!r}")


def _gamma_divisible(pos: Position, value: Fraction, n: int) -> bool:
    p = _local_prime(pos)
    need = _p_val(n, p)
    if need == 0:
        return True
    return _p_val(value.numerator, p) >= need


def _component_divisible(
    construction: Construction, pos: Position, value: Value, n: int
) -> bool:
    if isinstance(value, tuple):
        return all(c % n == 0 for _, c in value)
    if construction is LAMBDA:
        return True
    return _gamma_divisible(pos, value, n)


def cmp(a: GroupElement, b: GroupElement) -> int:
    return a.cmp(b)


def zero(construction: Construction) -> GroupElement:
    return GroupElement(construction, ())


def element(
    construction: Construction,
    components: Mapping[Position, Union[int, Fraction, Mapping[int, int]]],
) -> GroupElement:
    """Build an element from position -> raw value, canonicalizing."""
    entries = []
    for pos, raw in components.items():
        if uses_poly(construction, pos):
            if isinstance(raw, int):
                raw = {0: raw}
            if isinstance(raw, Fraction):
                raise ComponentError(f"{pos}: square components take integer polynomials")
            v: Value = _canon_poly(raw)
            if not v:
                continue
        else:
            if isinstance(raw, Mapping):
                raise ComponentError(f"{pos}: expected a rational value")
            q = Fraction(raw)
            if not q:
                continue
            v = check_value(construction, pos, q)
        entries.append((pos, v))
    entries.sort(key=lambda e: e[0].sort_key())
    return GroupElement(construction, tuple(entries))


def unit(
    construction: Construction,
    pos: Position,
    value: Union[int, Fraction, Mapping[int, int]] = 1,
) -> GroupElement:
    return element(construction, {pos: value})


def lambda_c_unit(pos: Position, slot: int, coeff: int = 1) -> GroupElement:
    """LAMBDA square generator: ``coeff * c_slot`` (slot 0 is the unit 1)."""
    return element(LAMBDA, {pos: {slot: coeff}})


# -- text form ------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, text: str, at: int, message: str) -> None:
        super().__init__(f"at index {at}: {message} in {text!r}")
        self.at = at


_POS_RE = re.compile(
    r"\s*(?:G2\[(?P<g2m>\d+)\]\.(?P<g2s>[cs])|G1\[(?P<g1b>\d+)\]\.(?:s\[(?P<g1p>\d+)\]|(?P<g1c>c)))"
)
_RAT_RE = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*")
_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coeff>\d+)\s*\*?\s*)?(?:c(?P<slot>\d+))?\s*"
)


def _parse_poly(text: str, base: int, body: str) -> dict[int, int]:
    coeffs: dict[int, int] = {}
    i = 0
    first = True
    while i < len(body):
        m = _TERM_RE.match(body, i)
        if not m or m.end() == i or (m.group("coeff") is None and m.group("slot") is None):
            raise ParseError(text, base + i, "expected polynomial term")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("sign") is None and not first:
            raise ParseError(text, base + i, "missing sign between terms")
        coeff = int(m.group("coeff")) if m.group("coeff") is not None else 1
        slot = int(m.group("slot")) if m.group("slot") is not None else 0
        coeffs[slot] = coeffs.get(slot, 0) + sign * coeff
        i = m.end()
        first = False
    return coeffs


def parse_element(text: str, construction: Construction) -> GroupElement:
    s = text.strip()
    if s == "0":
        return zero(construction)
    if not s.startswith("{") or not s.endswith("}"):
        raise ParseError(text, 0, "expected '{...}' or '0'")
    body = s[1:-1]
    components: dict[Position, Union[Fraction, Mapping[int, int]]] = {}
    offset = 1
    for chunk in body.split(","):
        if ":" not in chunk:
            raise ParseError(text, offset, "expected 'position: value'")
        pos_text, val_text = chunk.split(":", 1)
        m = _POS_RE.fullmatch(pos_text.rstrip())
        if not m:
            raise ParseError(text, offset, f"bad position {pos_text.strip()!r}")
        if m.group("g2m") is not None:
            pos = (
                g2_circle(int(m.group("g2m")))
                if m.group("g2s") == "c"
                else g2_square(int(m.group("g2m")))
            )
        elif m.group("g1p") is not None:
            pos = g1_square(int(m.group("g1b")), int(m.group("g1p")))
        else:
            pos = g1_circle(int(m.group("g1b")))
        if pos in components:
            raise ParseError(text, offset, f"duplicate position {pos}")
        val_base = offset + len(pos_text) + 1
        vt = val_text.strip()
        if uses_poly(construction, pos):
            if "/" in vt:
                raise ParseError(text, val_base, f"{pos} takes integer polynomials")
            components[pos] = _parse_poly(text, val_base, vt)
        else:
            m2 = _RAT_RE.fullmatch(val_text)
            if not m2:
                raise ParseError(text, val_base, f"bad rational {vt!r}")
            q = Fraction(int(m2.group(1)), int(m2.group(2) or 1))
            try:
                check_value(construction, pos, q)
            except ComponentError as exc:
                raise ParseError(text, val_base, str(exc)) from None
            components[pos] = q
        offset += len(chunk) + 1
    return element(construction, components)


def _format_poly(v: Poly) -> str:
    parts = []
    for slot, c in v:
        if slot == 0:
            parts.append(str(c))
        else:
            term = f"{abs(c)}*c{slot}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+{term}" if c > 0 else f"-{term}")
    return "".join(parts)


def format_element(a: GroupElement) -> str:
    if a.is_zero():
        return "0"
    items = []
    for pos, v in a.entries:
        body = _format_poly(v) if isinstance(v, tuple) else str(v)
        items.append(f"{pos}: {body}")
    return "{" + ", ".join(items) + "}"
