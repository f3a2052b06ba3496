"""Order- and addition-preserving self-embeddings of the constructions.

Two injective maps are provided, given by position relabelling with
component values carried unchanged:

* ``F1`` shifts the left part one pair further left and pulls the head
  square of the right part into the freed rightmost square; the freed
  rightmost circle (the *critical circle*) is exactly what its image
  omits.
* ``F2`` shifts the left part one pair to the right, displacing the
  rightmost pair into the right part; the squares of block 0 are
  exactly what its image omits.

Also here: the image-preserving perturbation used to break finitely
many congruences at once, and the two-sided window that pins the
``n``-lead descriptor of every element between its endpoints.
"""

from __future__ import annotations

import enum
from typing import Optional, Sequence

from .elements import (
    GAMMA,
    LAMBDA,
    Construction,
    ConstructionMismatch,
    GroupElement,
    LeadDescriptor,
    element,
    unit,
)
from .positions import (
    CRITICAL_CIRCLE,
    G1,
    G2,
    Position,
    g1_circle,
    g1_square,
    g2_circle,
    g2_square,
)


class Embedding(enum.Enum):
    F1 = "f1"
    F2 = "f2"

    def __str__(self) -> str:
        return self.value


class ExperimentalFeature(RuntimeError):
    pass


def _check_experimental(e: Embedding, construction: Construction, experimental: bool) -> None:
    if e is Embedding.F2 and construction is GAMMA and not experimental:
        raise ExperimentalFeature(
            "F2 on the gamma construction shares the index bookkeeping but is "
            "unvalidated; pass experimental=True to allow it"
        )


def _f1_pos(pos: Position) -> Position:
    if pos.area == G2:
        return Position(G2, pos.index + 1, pos.shape)
    if pos.is_square and pos.index == 0:
        if pos.slot == 0:
            return g2_square(0)
        return g1_square(0, pos.slot - 1)
    return pos


def _f1_pos_inv(pos: Position) -> Optional[Position]:
    if pos.area == G2:
        if pos.index >= 1:
            return Position(G2, pos.index - 1, pos.shape)
        if pos.is_square:
            return g1_square(0, 0)
        return None  # the critical circle is outside the image
    if pos.is_square and pos.index == 0:
        return g1_square(0, pos.slot + 1)
    return pos


def _f2_pos(pos: Position) -> Position:
    if pos.area == G2:
        if pos.index >= 1:
            return Position(G2, pos.index - 1, pos.shape)
        if pos.is_circle:
            return g1_circle(0)
        return g1_square(1, 0)
    if pos.index == 0:
        if pos.is_square:
            return g1_square(1, pos.slot + 1)
        return g1_circle(1)
    return Position(G1, pos.index + 1, pos.shape, pos.slot)


def _f2_pos_inv(pos: Position) -> Optional[Position]:
    if pos.area == G2:
        return Position(G2, pos.index + 1, pos.shape)
    if pos.index == 0:
        if pos.is_circle:
            return g2_circle(0)
        return None  # block-0 squares are outside the image
    if pos.index == 1:
        if pos.is_circle:
            return g1_circle(0)
        if pos.slot == 0:
            return g2_square(0)
        return g1_square(0, pos.slot - 1)
    return Position(G1, pos.index - 1, pos.shape, pos.slot)


_FORWARD = {Embedding.F1: _f1_pos, Embedding.F2: _f2_pos}
_INVERSE = {Embedding.F1: _f1_pos_inv, Embedding.F2: _f2_pos_inv}


def apply(e: Embedding, a: GroupElement, experimental: bool = False) -> GroupElement:
    """Image of ``a``; injective, additive, and order preserving."""
    _check_experimental(e, a.construction, experimental)
    fwd = _FORWARD[e]
    entries = tuple(
        sorted(((fwd(pos), v) for pos, v in a.entries), key=lambda it: it[0].sort_key())
    )
    return GroupElement(a.construction, entries)


def preimage(e: Embedding, a: GroupElement, experimental: bool = False) -> Optional[GroupElement]:
    """The unique b with apply(e, b) == a, or None outside the image."""
    _check_experimental(e, a.construction, experimental)
    inv = _INVERSE[e]
    out = []
    for pos, v in a.entries:
        q = inv(pos)
        if q is None:
            return None
        out.append((q, v))
    out.sort(key=lambda it: it[0].sort_key())
    return GroupElement(a.construction, tuple(out))


def in_image(e: Embedding, a: GroupElement, experimental: bool = False) -> bool:
    _check_experimental(e, a.construction, experimental)
    if e is Embedding.F1:
        return a.value_at(CRITICAL_CIRCLE) is None
    return not any(
        pos.area == G1 and pos.index == 0 and pos.is_square for pos, _ in a.entries
    )


def _fresh_g1_block(elems: Sequence[GroupElement]) -> int:
    block = 0
    for e in elems:
        for pos, _ in e.entries:
            if pos.area == G1:
                block = max(block, pos.index + 1)
    return block


def perturb_into_image(
    t: GroupElement,
    eps: GroupElement,
    constraints: Sequence[tuple[int, GroupElement]] = (),
) -> GroupElement:
    """An F1-image element within eps of ``t`` breaking every congruence given.

    Adds a coefficient-1 unit at the first square of a fresh block
    beyond every support involved: the fresh slot keeps the distance
    below ``eps`` and makes ``t' - r`` indivisible by every requested
    modulus at once.  Requires ``t`` in the F1 image and ``eps > 0``.
    """
    if t.construction is not LAMBDA:
        raise ConstructionMismatch("image perturbation is defined on the lambda construction")
    if eps.sign() <= 0:
        raise ValueError("eps must be strictly positive")
    for n, _ in constraints:
        if n < 2:
            raise ValueError("constraint moduli must be >= 2")
    if not in_image(Embedding.F1, t):
        raise ValueError("t must lie in the F1 image")
    fresh = g1_square(_fresh_g1_block([t, eps, *(r for _, r in constraints)]), 0)
    return t + unit(LAMBDA, fresh, {0: 1})


def descriptor_window(
    a: GroupElement, n: int
) -> tuple[GroupElement, GroupElement]:
    """F1-image endpoints (lo, hi) pinning the n-lead of everything between.

    Every u with lo < u < hi has ``u.lead_mod(n) == a.lead_mod(n)``:
    both endpoints share a's leading square truncated at the
    n-indivisible slot, and differ only one slot deeper, so anything
    between them reproduces that prefix exactly.
    """
    if a.construction is not LAMBDA:
        raise ConstructionMismatch("descriptor windows are defined on the lambda construction")
    d = a.lead_mod(n)
    if d is None:
        raise ValueError("element is divisible: no n-lead to pin")
    v = a.value_at(d.position)
    assert isinstance(v, tuple)
    trunc = {slot: c for slot, c in v if slot <= d.inner_slot}
    spread = abs(a.coeff_at(LeadDescriptor(d.position, d.inner_slot + 1))) + 1
    lo = element(LAMBDA, {d.position: {**trunc, d.inner_slot + 1: -spread}})
    hi = element(LAMBDA, {d.position: {**trunc, d.inner_slot + 1: spread}})
    return lo, hi


straddle_witnesses = descriptor_window
