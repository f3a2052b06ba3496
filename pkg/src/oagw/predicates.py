"""Congruence-avoidance predicates and their closed forms.

The central predicate ``cong_free_below(n, a, b)`` decides whether no
``y`` with ``0 < y < b`` is congruent to ``a`` modulo ``n``.  Over the
block constructions, membership only depends on where the first
``n``-indivisible slot of ``a`` sits relative to the leading slot of
``b``; the exact rule, including the boundary where both addresses
coincide, is implemented here and cross-checked against witness search
by the test suites.

``tail_set`` computes the canonical cut descriptor for the union of
congruence-free tails swept out below an element, and membership in
those tails drives the formula-based decision of the right-block
subgroup (``g1_part_by_formula``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .elements import (
    GAMMA,
    LAMBDA,
    Construction,
    ConstructionMismatch,
    GroupElement,
    LeadDescriptor,
    _gamma_divisible,
    _local_prime,
    element,
    unit,
    zero,
)
from .positions import G1, Position, g1_square


def _require(construction: Construction, *elems: GroupElement) -> None:
    for e in elems:
        if e.construction is not construction:
            raise ConstructionMismatch(f"expected a {construction} element")


def _same(*elems: GroupElement) -> None:
    for e in elems[1:]:
        if e.construction is not elems[0].construction:
            raise ConstructionMismatch("mixed constructions")


def _fresh_g1_block(*elems: GroupElement) -> int:
    """Smallest G1 block index beyond every support position given."""
    block = 0
    for e in elems:
        for pos, _ in e.entries:
            if pos.area == G1:
                block = max(block, pos.index + 1)
    return block


def cong_free_below(n: int, a: GroupElement, b: GroupElement) -> bool:
    """True when no y with 0 < y < b satisfies y = a modulo n.

    Closed form: vacuously true for b <= 0.  For b > 0 every candidate
    y must carry the residue of ``a`` at the first n-indivisible slot
    ``d`` of ``a``, so existence of a witness is settled by comparing
    ``d`` with the leading slot of ``b``; when they coincide the least
    positive residue of the coefficient decides.
    """
    _same(a, b)
    if b.sign() <= 0:
        return True
    d = a.lead_mod(n)
    if d is None:
        # a is divisible: n * (deep tiny element) lands in (0, b)
        return False
    beta = b.lead_descriptor()
    assert beta is not None
    if d < beta:
        return True
    if beta < d:
        return False
    # same slot: a polynomial slot compares integer residues, rational
    # components are dense so a witness always fits below the lead
    lead_val = b.lead_value()
    if isinstance(lead_val, Fraction):
        return False
    k0 = a.coeff_at(d) % n
    return lead_val < k0


def _tiny_gamma_representative(value: Fraction, p: int, s: int, below: Fraction) -> Fraction:
    """Element of value + p^s * Z_(p) inside (0, below)."""
    q = 3 if p == 2 else 2
    step = Fraction(p**s)
    while step >= below / 2:
        step /= q
    k = (value - below / 2) / step
    shift = k.numerator // k.denominator  # floor
    return value - step * shift


def cong_witness_below(n: int, a: GroupElement, b: GroupElement) -> Optional[GroupElement]:
    """Explicit y with 0 < y < b and y = a mod n, or None when none exists.

    The returned element certifies ``cong_free_below(n, a, b) == False``
    and is checkable with exact arithmetic alone.
    """
    _same(a, b)
    if cong_free_below(n, a, b):
        return None
    construction = a.construction
    d = a.lead_mod(n)
    if d is None:
        far = g1_square(_fresh_g1_block(a, b), 0)
        return unit(construction, far, {0: 1} if construction is LAMBDA else 1).scale(n)

    # componentwise residue of a from slot d onward, zero before
    comps: dict[Position, object] = {}
    for pos, v in a.entries:
        if pos.sort_key() < d.position.sort_key():
            continue
        if isinstance(v, tuple):
            if pos == d.position:
                kept = {slot: c % n for slot, c in v if slot >= d.inner_slot and c % n}
            else:
                kept = {slot: c % n for slot, c in v if c % n}
            if kept:
                comps[pos] = kept
        else:
            if construction is LAMBDA:
                continue  # rational components reduce to zero
            if not _gamma_divisible(pos, v, n):
                comps[pos] = v

    beta = b.lead_descriptor()
    assert beta is not None
    if beta < d:
        # y leads strictly after b's lead, hence y < b automatically;
        # only the sign of the leading component matters
        if construction is GAMMA:
            val = comps[d.position]
            assert isinstance(val, Fraction)
            if val < 0:
                p = _local_prime(d.position)
                s = _p_val_int(n, p)
                step = Fraction(p**s)
                lift = (-val) / step
                comps[d.position] = val + step * (lift.numerator // lift.denominator + 1)
        return element(construction, comps)  # leads at d with positive value

    # shared slot: match b's lead and cut below it
    assert beta == d
    if construction is GAMMA:
        v_lead = b.lead_value()
        assert isinstance(v_lead, Fraction)
        p = _local_prime(d.position)
        s = _p_val_int(n, p)
        cur = comps[d.position]
        assert isinstance(cur, Fraction)
        comps[d.position] = _tiny_gamma_representative(cur, p, s, v_lead)
        return element(construction, comps)
    v_lead = b.lead_value()
    assert isinstance(v_lead, int)
    k0 = a.coeff_at(d) % n
    y = element(construction, comps)
    if k0 == v_lead:
        # tie at the lead slot: push the next slot below b's
        next_slot = LeadDescriptor(d.position, d.inner_slot + 1)
        r1 = y.coeff_at(next_slot)
        v1 = b.coeff_at(next_slot)
        m = max(1, (r1 - v1) // n + 1)  # smallest m with r1 - n*m < v1
        y = y + element(construction, {d.position: {next_slot.inner_slot: -n * m}})
    return y


def _p_val_int(num: int, p: int) -> int:
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    return v


# -- tail sets -------------------------------------------------------------


@dataclass(frozen=True)
class TailSet:
    """Canonical cut form of a congruence-free tail.

    ``cut is None`` denotes the empty set; otherwise the set holds every
    nonzero element whose leading slot lies strictly after ``cut``,
    together with zero when ``includes_zero``.
    """

    cut: Optional[LeadDescriptor]
    includes_zero: bool = False

    @staticmethod
    def empty() -> "TailSet":
        return TailSet(None, False)

    def is_empty(self) -> bool:
        return self.cut is None

    def contains(self, b: GroupElement) -> bool:
        if self.cut is None:
            return False
        if b.is_zero():
            return self.includes_zero
        d = b.lead_descriptor()
        assert d is not None
        return self.cut < d

    def proper_subset_of(self, other: "TailSet") -> bool:
        if self.cut is None:
            return other.cut is not None
        if other.cut is None:
            return False
        return other.cut < self.cut


def tail_set(a: GroupElement) -> TailSet:
    """Cut descriptor of the union of congruence-free tails below ``a``.

    Depends only on the component at the leading position and is blind
    to the overall sign; zero yields the empty set.  At a polynomial
    square the cut is the leading slot itself; at a circle the sweep
    reaches into the next square (LAMBDA) or stops at the circle
    (GAMMA, where squares cannot carry a modulus-2 obstruction); a
    GAMMA square defers to the next circle to its right.
    """
    if a.is_zero():
        return TailSet.empty()
    lead = a.lead()
    assert lead is not None
    pos, v = lead
    if a.construction is LAMBDA:
        if pos.is_square:
            assert isinstance(v, tuple)
            return TailSet(LeadDescriptor(pos, v[0][0]), True)
        return TailSet(LeadDescriptor(pos.successor(), 0), True)
    # GAMMA: modulus-2 obstructions only live at circles
    if pos.is_circle:
        return TailSet(LeadDescriptor(pos, 0), True)
    return TailSet(LeadDescriptor(pos.next_circle(), 0), True)


def in_tail_set(a: GroupElement, b: GroupElement) -> bool:
    """Membership of b in the swept tail below a."""
    _same(a, b)
    return tail_set(a).contains(b)


def inner_anchor_below(a: GroupElement) -> Optional[GroupElement]:
    """A t with 0 < t < |a| whose modulus-2 lead realizes tail_set(a).cut.

    The swept tail below ``a`` is the union over such t of the sets
    they leave congruence-free; this canonical t witnesses that the
    union reaches the cut exactly.  None for zero.
    """
    if a.is_zero():
        return None
    m = a.abs()
    lead = m.lead()
    assert lead is not None
    pos, v = lead
    construction = m.construction
    if construction is LAMBDA:
        if pos.is_square:
            assert isinstance(v, tuple)
            slot, coeff = v[0]
            if coeff >= 2:
                return element(LAMBDA, {pos: {slot: 1}})
            far = g1_square(_fresh_g1_block(m), 0)
            return m - unit(LAMBDA, far, {0: 1})
        return unit(LAMBDA, pos.successor(), {0: 1})
    assert isinstance(v, Fraction)
    if pos.is_circle:
        num, den = v.numerator, v.denominator
        odd = num
        while odd % 2 == 0:
            odd //= 2
        return element(GAMMA, {pos: Fraction(odd, 3 * den)})
    return element(GAMMA, {pos: v / 2, pos.next_circle(): Fraction(1)})


# -- the right-block subgroup ----------------------------------------------


def in_g1_part(a: GroupElement) -> bool:
    """Ground truth: support confined to G1 positions."""
    return all(pos.area == G1 for pos, _ in a.entries)


#: Cut pinned by the maximal admissible pair in the defining formula:
#: the distinguished square slot at the head of the right block.
_G1_HEAD = LeadDescriptor(g1_square(0, 0), 0)


def g1_part_by_formula(a: GroupElement) -> bool:
    """Decide membership in the right block through tail-set descriptors.

    The defining conditions pin a pair of reference elements whose
    swept tails are maximal; the decided set is the corresponding tail
    together with everything sharing its cut.  Must agree with
    :func:`in_g1_part` on every input.
    """
    _require(LAMBDA, a)
    head = TailSet(_G1_HEAD, True)
    if a.is_zero():
        return True
    if head.contains(a):
        return True
    return tail_set(a) == head
