"""Formula language over the group constructions.

Terms are integer combinations of variables plus an optional element
constant.  Atoms compare terms (``<``, ``=``), assert congruence
modulo n (``cong``), assert the congruence-avoidance comparison
(``desc_lt``), or package a bounded congruence system (``rphi``).
Formulas are built with ``~ & | ->`` and the quantifiers ``E v.`` /
``A v.``.

Concrete syntax examples::

    E x. A y. (0 < y & y < x) -> ~cong(2, y, {G2[0].c: 1})
    rphi(2; z1 < a1, z2 < a2; ; z1 ~ b1, z2 ~ b2, z1 ~ z2)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .elements import (
    Construction,
    GroupElement,
    LAMBDA,
    ParseError,
    format_element,
    parse_element,
    zero,
)

# -- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """Collected form: one integer coefficient per variable, plus a constant."""

    coeffs: tuple[tuple[str, int], ...] = ()
    const: Optional[GroupElement] = None

    def free_vars(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.coeffs)

    def evaluate(self, construction: Construction, env: Mapping[str, GroupElement]) -> GroupElement:
        acc = zero(construction)
        for v, k in self.coeffs:
            if v not in env:
                raise KeyError(f"unbound variable {v!r}")
            acc = acc + env[v].scale(k)
        if self.const is not None:
            acc = acc + self.const
        return acc

    def is_single_var(self) -> Optional[str]:
        if self.const is None and len(self.coeffs) == 1 and self.coeffs[0][1] == 1:
            return self.coeffs[0][0]
        return None

    def __str__(self) -> str:
        parts: list[str] = []
        for v, k in self.coeffs:
            mag = v if abs(k) == 1 else f"{abs(k)}*{v}"
            if not parts:
                parts.append(mag if k > 0 else f"-{mag}")
            else:
                parts.append(f"+ {mag}" if k > 0 else f"- {mag}")
        if self.const is not None:
            lit = format_element(self.const)
            parts.append(lit if not parts else f"+ {lit}")
        return " ".join(parts) if parts else "0"


def term_var(name: str, coeff: int = 1) -> Term:
    return Term(((name, coeff),), None)


def term_const(value: GroupElement) -> Term:
    return Term((), value if not value.is_zero() else None)


def _term_make(coeffs: Mapping[str, int], const: Optional[GroupElement]) -> Term:
    items = tuple(sorted((v, k) for v, k in coeffs.items() if k))
    if const is not None and const.is_zero():
        const = None
    return Term(items, const)


# -- atoms -----------------------------------------------------------------


@dataclass(frozen=True)
class Lt:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Cong:
    modulus: int
    lhs: Term
    rhs: Term

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"congruence modulus must be >= 2, got {self.modulus}")


@dataclass(frozen=True)
class DescLt:
    """Congruence-avoidance comparison: no y with 0 < y < rhs has y = lhs mod n.

    Decided exactly from n-lead descriptors; this is the atomic shape
    the bounded-congruence normal form is written in.
    """

    modulus: int
    lhs: Term
    rhs: Term

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")


@dataclass(frozen=True)
class Rphi:
    """Bounded congruence system: E z-vars (0 < z < bound & congruences).

    ``bounds`` groups witness variables under a shared bounding term;
    ``inner`` lists unconstrained auxiliary variables; ``congs`` holds
    pairs (var, var-or-term), all modulo the single ``modulus``.
    """

    modulus: int
    bounds: tuple[tuple[tuple[str, ...], Term], ...]
    inner: tuple[str, ...] = ()
    congs: tuple[tuple[str, Term], ...] = ()

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if not self.bounds or any(not group for group, _ in self.bounds):
            raise ValueError("rphi needs at least one bounded variable per group")
        own = self.own_vars()
        for v, _ in self.congs:
            if v not in own:
                raise ValueError(f"congruence left side {v!r} is not a bound or inner variable")

    def own_vars(self) -> frozenset[str]:
        vs = set(self.inner)
        for group, _ in self.bounds:
            vs.update(group)
        return frozenset(vs)

    def free_vars(self) -> frozenset[str]:
        own = self.own_vars()
        out: set[str] = set()
        for _, t in self.bounds:
            out |= t.free_vars()
        for _, t in self.congs:
            out |= t.free_vars() - own
        return frozenset(out)


Atom = Union[Lt, Eq, Cong, DescLt, Rphi]

# -- formulas --------------------------------------------------------------


@dataclass(frozen=True)
class AtomF:
    atom: Atom


@dataclass(frozen=True)
class BoolC:
    value: bool


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Or:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[AtomF, BoolC, Not, And, Or, Implies, Exists, Forall]


def atom(a: Atom) -> AtomF:
    return AtomF(a)


def or_all(parts: Iterable[Formula]) -> Formula:
    out: Optional[Formula] = None
    for p in parts:
        out = p if out is None else Or(out, p)
    return out if out is not None else BoolC(False)


def and_all(parts: Iterable[Formula]) -> Formula:
    out: Optional[Formula] = None
    for p in parts:
        out = p if out is None else And(out, p)
    return out if out is not None else BoolC(True)


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, AtomF):
        a = f.atom
        if isinstance(a, Rphi):
            return a.free_vars()
        return a.lhs.free_vars() | a.rhs.free_vars()
    if isinstance(f, BoolC):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.lhs) | free_vars(f.rhs)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def constants(f: Formula) -> list[GroupElement]:
    """Element constants appearing anywhere in the formula."""
    out: list[GroupElement] = []

    def from_term(t: Term) -> None:
        if t.const is not None and not t.const.is_zero():
            out.append(t.const)

    def walk(g: Formula) -> None:
        if isinstance(g, AtomF):
            a = g.atom
            if isinstance(a, Rphi):
                for _, t in a.bounds:
                    from_term(t)
                for _, t in a.congs:
                    from_term(t)
            else:
                from_term(a.lhs)
                from_term(a.rhs)
        elif isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or, Implies)):
            walk(g.lhs)
            walk(g.rhs)
        elif isinstance(g, (Exists, Forall)):
            walk(g.body)

    walk(f)
    return out


# -- printing --------------------------------------------------------------

_PREC = {"->": 1, "|": 2, "&": 3, "~": 4}


def print_formula(f: Formula) -> str:
    return _pf(f, 0)


def _pf(f: Formula, ctx: int) -> str:
    if isinstance(f, AtomF):
        return _print_atom(f.atom)
    if isinstance(f, BoolC):
        return "true" if f.value else "false"
    if isinstance(f, (Exists, Forall)):
        q = "E" if isinstance(f, Exists) else "A"
        body = f"{q} {f.var}. {_pf(f.body, 0)}"
        return f"({body})" if ctx > 0 else body
    if isinstance(f, Not):
        return f"~{_pf(f.body, _PREC['~'])}"
    if isinstance(f, And):
        s = f"{_pf(f.lhs, _PREC['&'])} & {_pf(f.rhs, _PREC['&'] + 1)}"
        return f"({s})" if ctx > _PREC["&"] else s
    if isinstance(f, Or):
        s = f"{_pf(f.lhs, _PREC['|'])} | {_pf(f.rhs, _PREC['|'] + 1)}"
        return f"({s})" if ctx > _PREC["|"] else s
    if isinstance(f, Implies):
        s = f"{_pf(f.lhs, _PREC['->'] + 1)} -> {_pf(f.rhs, _PREC['->'])}"
        return f"({s})" if ctx > _PREC["->"] else s
    raise TypeError(f"not a formula: {f!r}")


def _print_atom(a: Atom) -> str:
    if isinstance(a, Lt):
        return f"{a.lhs} < {a.rhs}"
    if isinstance(a, Eq):
        return f"{a.lhs} = {a.rhs}"
    if isinstance(a, Cong):
        return f"cong({a.modulus}, {a.lhs}, {a.rhs})"
    if isinstance(a, DescLt):
        return f"desc_lt({a.modulus}, {a.lhs}, {a.rhs})"
    if isinstance(a, Rphi):
        bounds = ", ".join(f"{' '.join(g)} < {t}" for g, t in a.bounds)
        inner = " ".join(a.inner)
        congs = ", ".join(f"{v} ~ {t}" for v, t in a.congs)
        return f"rphi({a.modulus}; {bounds}; {inner}; {congs})"
    raise TypeError(f"not an atom: {a!r}")


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<lbrace>\{[^{}]*\})|(?P<arrow>->)|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[().,;<=~&|*+-]))"
)

_KEYWORDS = {"E", "A", "cong", "desc_lt", "rphi", "true", "false"}


class _Tok:
    __slots__ = ("kind", "text", "at")

    def __init__(self, kind: str, text: str, at: int) -> None:
        self.kind = kind
        self.text = text
        self.at = at


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(text, i)
        if not m or m.end() == i:
            raise ParseError(text, i, "unexpected character")
        for kind in ("lbrace", "arrow", "int", "name", "punct"):
            val = m.group(kind)
            if val is not None:
                toks.append(_Tok(kind if kind != "lbrace" else "literal", val, i))
                break
        i = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, construction: Construction) -> None:
        self.text = text
        self.construction = construction
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> _Tok:
        t = self.peek()
        if t is None:
            raise ParseError(self.text, len(self.text), "unexpected end of input")
        self.pos += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.next()
        if t.text != text:
            raise ParseError(self.text, t.at, f"expected {text!r}, found {t.text!r}")
        return t

    def at_text(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    # formula := quantified | implication
    def formula(self) -> Formula:
        t = self.peek()
        if t is not None and t.text in ("E", "A"):
            return self.quantified()
        return self.implication()

    def quantified(self) -> Formula:
        q = self.next()
        var = self.next()
        if var.kind != "name" or var.text in _KEYWORDS:
            raise ParseError(self.text, var.at, "expected a variable after quantifier")
        self.expect(".")
        body = self.formula()
        return Exists(var.text, body) if q.text == "E" else Forall(var.text, body)

    def implication(self) -> Formula:
        lhs = self.disjunction()
        if self.at_text("->"):
            self.next()
            return Implies(lhs, self.formula())
        return lhs

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at_text("|"):
            self.next()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.negation()
        while self.at_text("&"):
            self.next()
            f = And(f, self.negation())
        return f

    def negation(self) -> Formula:
        if self.at_text("~"):
            self.next()
            return Not(self.negation())
        return self.primary()

    def primary(self) -> Formula:
        t = self.peek()
        if t is None:
            raise ParseError(self.text, len(self.text), "unexpected end of input")
        if t.text == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if t.text in ("E", "A"):
            return self.quantified()
        if t.text == "true":
            self.next()
            return BoolC(True)
        if t.text == "false":
            self.next()
            return BoolC(False)
        if t.text in ("cong", "desc_lt"):
            return AtomF(self.cong_like(t.text))
        if t.text == "rphi":
            return AtomF(self.rphi())
        return AtomF(self.comparison())

    def cong_like(self, head: str) -> Atom:
        self.next()
        self.expect("(")
        n = self.integer()
        self.expect(",")
        lhs = self.term()
        self.expect(",")
        rhs = self.term()
        self.expect(")")
        try:
            return Cong(n, lhs, rhs) if head == "cong" else DescLt(n, lhs, rhs)
        except ValueError as exc:
            raise ParseError(self.text, self.toks[self.pos - 1].at, str(exc)) from None

    def rphi(self) -> Atom:
        self.next()
        self.expect("(")
        n = self.integer()
        self.expect(";")
        bounds: list[tuple[tuple[str, ...], Term]] = []
        while True:
            group: list[str] = []
            while self.peek() is not None and self.peek().kind == "name":  # type: ignore[union-attr]
                group.append(self.next().text)
            self.expect("<")
            bounds.append((tuple(group), self.term()))
            if self.at_text(","):
                self.next()
                continue
            break
        self.expect(";")
        inner: list[str] = []
        while self.peek() is not None and self.peek().kind == "name":  # type: ignore[union-attr]
            inner.append(self.next().text)
        self.expect(";")
        congs: list[tuple[str, Term]] = []
        if not self.at_text(")"):
            while True:
                v = self.next()
                if v.kind != "name":
                    raise ParseError(self.text, v.at, "expected a variable on the left of ~")
                self.expect("~")
                congs.append((v.text, self.term()))
                if self.at_text(","):
                    self.next()
                    continue
                break
        self.expect(")")
        try:
            return Rphi(n, tuple(bounds), tuple(inner), tuple(congs))
        except ValueError as exc:
            raise ParseError(self.text, self.toks[self.pos - 1].at, str(exc)) from None

    def comparison(self) -> Atom:
        lhs = self.term()
        op = self.next()
        if op.text == "<":
            return Lt(lhs, self.term())
        if op.text == "=":
            return Eq(lhs, self.term())
        raise ParseError(self.text, op.at, f"expected '<' or '=', found {op.text!r}")

    def integer(self) -> int:
        t = self.next()
        if t.kind != "int":
            raise ParseError(self.text, t.at, "expected an integer")
        return int(t.text)

    def term(self) -> Term:
        coeffs: dict[str, int] = {}
        const: Optional[GroupElement] = None
        first = True
        while True:
            t = self.peek()
            if t is None:
                if first:
                    raise ParseError(self.text, len(self.text), "expected a term")
                break
            sign = 1
            if t.text in ("+", "-"):
                sign = -1 if t.text == "-" else 1
                self.next()
            elif not first:
                break
            mult, name, lit = self.term_part()
            k = sign * mult
            if name is not None:
                coeffs[name] = coeffs.get(name, 0) + k
            else:
                assert lit is not None
                const = lit.scale(k) if const is None else const + lit.scale(k)
            first = False
        return _term_make(coeffs, const)

    def term_part(self) -> tuple[int, Optional[str], Optional[GroupElement]]:
        """One summand sans sign: [int *] var | [int *] literal | 0."""
        t = self.next()
        mult = 1
        if t.kind == "int":
            if t.text == "0" and not self.at_text("*"):
                return 1, None, zero(self.construction)
            mult = int(t.text)
            self.expect("*")
            t = self.next()
        if t.kind == "name":
            if t.text in _KEYWORDS:
                raise ParseError(self.text, t.at, f"keyword {t.text!r} used as a variable")
            return mult, t.text, None
        if t.kind == "literal":
            return mult, None, parse_element(t.text, self.construction)
        raise ParseError(self.text, t.at, f"expected a term, found {t.text!r}")


def parse_formula(text: str, construction: Construction = LAMBDA) -> Formula:
    p = _Parser(text, construction)
    f = p.formula()
    rest = p.peek()
    if rest is not None:
        raise ParseError(text, rest.at, f"trailing input {rest.text!r}")
    return f


def parse_term(text: str, construction: Construction = LAMBDA) -> Term:
    p = _Parser(text, construction)
    t = p.term()
    rest = p.peek()
    if rest is not None:
        raise ParseError(text, rest.at, f"trailing input {rest.text!r}")
    return t


# -- prefix classification --------------------------------------------------


def _flip(prefix: str) -> str:
    return prefix.translate(str.maketrans("EA", "AE"))


def _compress(prefix: str) -> str:
    out = []
    for ch in prefix:
        if not out or out[-1] != ch:
            out.append(ch)
    return "".join(out)


_MAX_VARIANTS = 64


def _prefixes(f: Formula) -> set[str]:
    if isinstance(f, (AtomF, BoolC)):
        return {""}
    if isinstance(f, Not):
        return {_flip(s) for s in _prefixes(f.body)}
    if isinstance(f, Implies):
        left = {_flip(s) for s in _prefixes(f.lhs)}
        return _merge(left, _prefixes(f.rhs))
    if isinstance(f, (And, Or)):
        return _merge(_prefixes(f.lhs), _prefixes(f.rhs))
    if isinstance(f, Exists):
        return {_compress("E" + s) for s in _prefixes(f.body)}
    if isinstance(f, Forall):
        return {_compress("A" + s) for s in _prefixes(f.body)}
    raise TypeError(f"not a formula: {f!r}")


def _merge(left: set[str], right: set[str]) -> set[str]:
    out: set[str] = set()
    for a in left:
        for b in right:
            out.add(_compress(a + b))
            out.add(_compress(b + a))
            if len(out) >= _MAX_VARIANTS:
                return out
    return out


def classify_prefix(f: Formula) -> str:
    """Minimal quantifier prefix over the bounded set of prenex orders.

    Returned with the usual symbols, e.g. ``∃∀∃``; the empty string
    marks a quantifier-free formula.
    """
    candidates = _prefixes(f)
    best = min(candidates, key=lambda s: (len(s), s))
    return best.replace("E", "∃").replace("A", "∀")
