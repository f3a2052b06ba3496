"""Deterministic finite search fragments.

Quantifier evaluation over the infinite groups searches a reproducible
finite fragment: all integer combinations of the supplied parameters
and generator pool with coefficients bounded by ``coeff_bound``,
enumerated smallest-coefficients-first and truncated at ``size_cap``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .elements import Construction, ConstructionMismatch, GroupElement, zero


@dataclass(frozen=True)
class FragmentConfig:
    coeff_bound: int = 3
    generator_pool: tuple[GroupElement, ...] = ()
    size_cap: int = 2000
    seed: int = 0

    def with_pool(self, pool: Sequence[GroupElement]) -> "FragmentConfig":
        return FragmentConfig(self.coeff_bound, tuple(pool), self.size_cap, self.seed)


def _coeff_vectors(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    # Layered by max |coefficient| so small combinations come first;
    # inside a layer the order is the deterministic product order with
    # each axis running 0, 1, -1, 2, -2, ...
    if n == 0:
        return
    axis: list[list[int]] = []
    for m in range(bound + 1):
        order = [0]
        for k in range(1, m + 1):
            order.extend((k, -k))
        axis.append(order)
    for m in range(bound + 1):
        for vec in itertools.product(axis[m], repeat=n):
            if m == 0 or max(abs(k) for k in vec) == m:
                yield vec


def iter_fragment(
    params: Sequence[GroupElement],
    cfg: FragmentConfig,
    construction: Construction | None = None,
) -> Iterator[GroupElement]:
    """Lazily enumerate the fragment spanned by params and the pool.

    Yields zero first, then every parameter, then combinations in a
    deterministic order; stops at ``size_cap``; rejects mixed
    constructions.
    """
    gens: list[GroupElement] = []
    seen_gen: set = set()
    for g in tuple(params) + cfg.generator_pool:
        if construction is None:
            construction = g.construction
        elif g.construction is not construction:
            raise ConstructionMismatch("fragment parameters mix constructions")
        if not g.is_zero() and g not in seen_gen:
            seen_gen.add(g)
            gens.append(g)
    if construction is None:
        raise ValueError("cannot infer construction for an empty fragment")

    emitted = 0
    z = zero(construction)
    seen: set = {z}
    yield z
    emitted += 1
    for p in params:
        if p not in seen and emitted < cfg.size_cap:
            seen.add(p)
            emitted += 1
            yield p
    for vec in _coeff_vectors(len(gens), cfg.coeff_bound):
        if emitted >= cfg.size_cap:
            return
        acc = z
        for k, g in zip(vec, gens):
            if k:
                acc = acc + g.scale(k)
        if acc not in seen:
            seen.add(acc)
            emitted += 1
            yield acc


def fragment(
    params: Sequence[GroupElement],
    cfg: FragmentConfig,
    construction: Construction | None = None,
) -> list[GroupElement]:
    """Materialized fragment; always contains zero and every parameter."""
    return list(iter_fragment(params, cfg, construction))
