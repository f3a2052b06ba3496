"""Sound three-valued evaluation over the infinite groups.

Quantifier-free formulas are decided exactly.  Quantifiers search a
deterministic finite fragment: an existential is True only when an
explicit witness is found and a universal is False only on an explicit
counterexample; everything else is Unknown.  Decided verdicts are
therefore sound for the infinite structure.

Bounded congruence systems (``rphi`` atoms) are not searched: their
satisfiability reduces exactly to positivity of the bounds, pairwise
consistency of the congruence anchors, and one congruence-avoidance
comparison per anchored bounded variable.  ``neg_rphi_normalize``
returns that reduction as a quantifier-free formula.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping, Optional

from .elements import Construction, GroupElement, zero
from .formulas import (
    And,
    AtomF,
    BoolC,
    Cong,
    DescLt,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Lt,
    Not,
    Or,
    Rphi,
    constants,
    free_vars,
    or_all,
    term_const,
)
from .fragments import FragmentConfig, iter_fragment
from .predicates import cong_free_below


class Truth(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def negate(self) -> "Truth":
        if self is Truth.TRUE:
            return Truth.FALSE
        if self is Truth.FALSE:
            return Truth.TRUE
        return Truth.UNKNOWN


@dataclass(frozen=True)
class Verdict:
    truth: Truth
    witness: Optional[dict[str, GroupElement]] = None
    reason: str = ""

    @property
    def decided(self) -> bool:
        return self.truth is not Truth.UNKNOWN

    def __bool__(self) -> bool:  # pragma: no cover - guard against misuse
        raise TypeError("Verdict is three-valued; inspect .truth explicitly")


def _true(witness: Optional[dict[str, GroupElement]] = None) -> Verdict:
    return Verdict(Truth.TRUE, witness)


def _false(witness: Optional[dict[str, GroupElement]] = None, reason: str = "") -> Verdict:
    return Verdict(Truth.FALSE, witness, reason)


_UNKNOWN = Verdict(Truth.UNKNOWN, None, "fragment bounds exhausted")


# -- exact atom evaluation ---------------------------------------------------


def _eval_atom(
    construction: Construction, a, env: Mapping[str, GroupElement]
) -> bool:
    if isinstance(a, Lt):
        return a.lhs.evaluate(construction, env) < a.rhs.evaluate(construction, env)
    if isinstance(a, Eq):
        return a.lhs.evaluate(construction, env) == a.rhs.evaluate(construction, env)
    if isinstance(a, Cong):
        d = a.rhs.evaluate(construction, env) - a.lhs.evaluate(construction, env)
        return d.is_divisible(a.modulus)
    if isinstance(a, DescLt):
        return cong_free_below(
            a.modulus,
            a.lhs.evaluate(construction, env),
            a.rhs.evaluate(construction, env),
        )
    if isinstance(a, Rphi):
        return rphi_holds(construction, a, env)
    raise TypeError(f"not an atom: {a!r}")


# -- the bounded congruence system -------------------------------------------


@dataclass
class _SystemView:
    """Saturated view of one rphi instance: per-variable anchor classes."""

    bounds: list[tuple[str, GroupElement]]
    anchor_of: dict[str, Optional[GroupElement]]
    consistency: list[tuple[GroupElement, GroupElement]]  # pairs that must be congruent


def _saturate(construction: Construction, a: Rphi, env: Mapping[str, GroupElement]) -> _SystemView:
    bounds: list[tuple[str, GroupElement]] = []
    for group, t in a.bounds:
        limit = t.evaluate(construction, env)
        for z in group:
            bounds.append((z, limit))

    own = a.own_vars()
    parent: dict[str, str] = {v: v for v in own}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    anchor: dict[str, Optional[GroupElement]] = {v: None for v in own}
    consistency: list[tuple[GroupElement, GroupElement]] = []

    def attach(root: str, e: GroupElement) -> None:
        cur = anchor[root]
        if cur is None:
            anchor[root] = e
        elif cur != e:
            consistency.append((cur, e))

    for v, t in a.congs:
        other = t.is_single_var()
        if other is not None and other in own:
            ra, rb = find(v), find(other)
            if ra != rb:
                parent[rb] = ra
                if anchor[rb] is not None:
                    attach(ra, anchor[rb])
                anchor.pop(rb)
        else:
            attach(find(v), t.evaluate(construction, env))

    anchor_of = {v: anchor[find(v)] for v in own}
    return _SystemView(bounds, anchor_of, consistency)


def rphi_holds(construction: Construction, a: Rphi, env: Mapping[str, GroupElement]) -> bool:
    """Exact satisfiability of the bounded congruence system."""
    view = _saturate(construction, a, env)
    if any(limit.sign() <= 0 for _, limit in view.bounds):
        return False
    n = a.modulus
    for e1, e2 in view.consistency:
        if not (e2 - e1).is_divisible(n):
            return False
    for z, limit in view.bounds:
        w = view.anchor_of[z]
        if w is not None and cong_free_below(n, w, limit):
            return False
    return True


def neg_rphi_normalize(
    construction: Construction, a: Rphi, env: Mapping[str, GroupElement]
) -> Formula:
    """Quantifier-free equivalent of the negated system, parameters instantiated.

    A disjunction of bound non-positivity, congruence failures between
    anchors, and one congruence-avoidance comparison per anchored
    bounded variable; evaluating it is exactly the complement of
    :func:`rphi_holds`.
    """
    view = _saturate(construction, a, env)
    n = a.modulus
    disjuncts: list[Formula] = []
    z0 = term_const(zero(construction))
    for _, limit in view.bounds:
        disjuncts.append(Not(AtomF(Lt(z0, term_const(limit)))))
    for e1, e2 in view.consistency:
        disjuncts.append(Not(AtomF(Cong(n, term_const(e1), term_const(e2)))))
    for z, limit in view.bounds:
        w = view.anchor_of[z]
        if w is not None:
            disjuncts.append(AtomF(DescLt(n, term_const(w), term_const(limit))))
    return or_all(disjuncts)


# -- three-valued evaluation --------------------------------------------------


def evaluate(
    construction: Construction,
    f: Formula,
    env: Mapping[str, GroupElement],
    cfg: FragmentConfig,
    candidate_filter: Optional[Callable[[GroupElement], bool]] = None,
) -> Verdict:
    """Three-valued truth of ``f`` under ``env``.

    ``candidate_filter`` restricts quantifier witness search to a
    subset of the fragment (used for substructure audits); parameters
    and constants always seed the fragment.
    """
    missing = free_vars(f) - set(env)
    if missing:
        raise KeyError(f"unbound variables: {sorted(missing)}")
    for v, e in env.items():
        if e.construction is not construction:
            raise ValueError(f"binding {v!r} is not a {construction} element")
    return _eval(construction, f, dict(env), cfg, candidate_filter)


def _eval(
    construction: Construction,
    f: Formula,
    env: dict[str, GroupElement],
    cfg: FragmentConfig,
    flt: Optional[Callable[[GroupElement], bool]],
) -> Verdict:
    if isinstance(f, BoolC):
        return _true() if f.value else _false()
    if isinstance(f, AtomF):
        return _true() if _eval_atom(construction, f.atom, env) else _false()
    if isinstance(f, Not):
        v = _eval(construction, f.body, env, cfg, flt)
        return Verdict(v.truth.negate(), v.witness, v.reason)
    if isinstance(f, And):
        left = _eval(construction, f.lhs, env, cfg, flt)
        if left.truth is Truth.FALSE:
            return left
        right = _eval(construction, f.rhs, env, cfg, flt)
        if right.truth is Truth.FALSE:
            return right
        if left.truth is Truth.TRUE and right.truth is Truth.TRUE:
            return _true()
        return _UNKNOWN
    if isinstance(f, Or):
        left = _eval(construction, f.lhs, env, cfg, flt)
        if left.truth is Truth.TRUE:
            return left
        right = _eval(construction, f.rhs, env, cfg, flt)
        if right.truth is Truth.TRUE:
            return right
        if left.truth is Truth.FALSE and right.truth is Truth.FALSE:
            return _false()
        return _UNKNOWN
    if isinstance(f, Implies):
        return _eval(construction, Or(Not(f.lhs), f.rhs), env, cfg, flt)
    if isinstance(f, (Exists, Forall)):
        params = list(env.values()) + constants(f)
        for cand in iter_fragment(params, cfg, construction):
            if flt is not None and not flt(cand):
                continue
            env[f.var] = cand
            sub = _eval(construction, f.body, env, cfg, flt)
            del env[f.var]
            if isinstance(f, Exists) and sub.truth is Truth.TRUE:
                return _true({f.var: cand, **(sub.witness or {})})
            if isinstance(f, Forall) and sub.truth is Truth.FALSE:
                return _false({f.var: cand, **(sub.witness or {})}, "counterexample")
        # the fragment cannot exhaust the infinite structure
        return _UNKNOWN
    raise TypeError(f"not a formula: {f!r}")


def find_witnesses(
    construction: Construction,
    f: Exists,
    env: Mapping[str, GroupElement],
    cfg: FragmentConfig,
    candidate_filter: Optional[Callable[[GroupElement], bool]] = None,
    limit: Optional[int] = None,
) -> list[GroupElement]:
    """All fragment witnesses of a top-level existential (up to limit)."""
    out: list[GroupElement] = []
    base = dict(env)
    params = list(base.values()) + constants(f)
    for cand in iter_fragment(params, cfg, construction):
        if candidate_filter is not None and not candidate_filter(cand):
            continue
        base[f.var] = cand
        v = _eval(construction, f.body, base, cfg, candidate_filter)
        del base[f.var]
        if v.truth is Truth.TRUE:
            out.append(cand)
            if limit is not None and len(out) >= limit:
                break
    return out
