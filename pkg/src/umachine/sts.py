"""The weakened arity type system over the OpenMath meta-theory.

Well-formed types are ``Object``, ``binder``, and
``mapsto(Object, ..., Object, A, Object)`` with ``A`` either ``Object`` or
``naryObject``.  Each well-formed type induces an arity: the shape of redexes
a rule for the constant may match.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (OM_BINDER, OM_FMP, OM_MAPSTO, OM_NARYOBJECT, OM_OBJECT,
                    SourcePos, TheoryGraph)
from .terms import App, Bind, Const, GlobalName, Term


class Arity:
    pass


@dataclass(frozen=True)
class Fixed(Arity):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("arity must be nonnegative")

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class Flexible(Arity):
    """``n`` fixed arguments followed by a sequence argument."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("arity must be nonnegative")

    def __str__(self):
        return f"{self.n}*"


@dataclass(frozen=True)
class Binder(Arity):
    def __str__(self):
        return "binder"


BINDER = Binder()


class IllFormedTypeError(ValueError):
    pass


def _is(t: Term, g: GlobalName) -> bool:
    return isinstance(t, Const) and t.head == g


def well_formed_type(t: Term) -> bool:
    if _is(t, OM_OBJECT) or _is(t, OM_BINDER):
        return True
    if isinstance(t, App) and _is(t.head, OM_MAPSTO) and len(t.args) >= 2:
        *firsts, a, result = t.args
        return (all(_is(x, OM_OBJECT) for x in firsts)
                and (_is(a, OM_OBJECT) or _is(a, OM_NARYOBJECT))
                and _is(result, OM_OBJECT))
    return False


def arity_of(t: Term) -> Arity:
    if not well_formed_type(t):
        raise IllFormedTypeError(f"not a well-formed type: {t!r}")
    if _is(t, OM_OBJECT):
        return Fixed(0)
    if _is(t, OM_BINDER):
        return BINDER
    k = len(t.args) - 2
    a = t.args[-2]
    return Flexible(k) if _is(a, OM_NARYOBJECT) else Fixed(k + 1)


@dataclass
class Diagnostic:
    severity: str
    pos: SourcePos | None
    subject: GlobalName
    message: str

    def __str__(self):
        pos = str(self.pos) if self.pos else "-:0"
        return f"{self.severity} {pos} {self.subject.local} {self.message}"


def constant_arity(graph: TheoryGraph, g: GlobalName) -> Arity | None:
    """The arity of a declared constant, or None if untyped/ill-typed."""
    c = graph.lookup(g)
    if c is None or c.type is None or not well_formed_type(c.type):
        return None
    return arity_of(c.type)


def lint_theory(graph: TheoryGraph, ref) -> list[Diagnostic]:
    """Arity-conformance diagnostics for a theory's own declarations.

    FMP is a marker, not an operator: FMP-headed applications are skipped
    (their argument is still checked).
    """
    theory = graph.theory(ref)
    out: list[Diagnostic] = []

    def check_term(t: Term, subject: GlobalName, pos):
        if isinstance(t, App):
            if isinstance(t.head, Const) and t.head.head != OM_FMP:
                a = constant_arity(graph, t.head.head)
                if isinstance(a, Fixed) and a.n != len(t.args):
                    out.append(Diagnostic(
                        "error", pos, subject,
                        f"{t.head.head.local} expects {a.n} argument(s), "
                        f"got {len(t.args)}"))
                elif isinstance(a, Flexible) and len(t.args) < a.n:
                    out.append(Diagnostic(
                        "error", pos, subject,
                        f"{t.head.head.local} expects at least {a.n} "
                        f"argument(s), got {len(t.args)}"))
                elif isinstance(a, Binder):
                    out.append(Diagnostic(
                        "error", pos, subject,
                        f"{t.head.head.local} is a binder, not an operator"))
            check_term(t.head, subject, pos)
            for x in t.args:
                check_term(x, subject, pos)
        elif isinstance(t, Bind):
            if isinstance(t.binder, Const):
                a = constant_arity(graph, t.binder.head)
                if a is not None and not isinstance(a, Binder):
                    out.append(Diagnostic(
                        "error", pos, subject,
                        f"{t.binder.head.local} lacks binder arity"))
            check_term(t.binder, subject, pos)
            check_term(t.scope, subject, pos)

    for c in theory.constants():
        g = theory.name.name(c.name)
        if c.type is not None and not well_formed_type(c.type):
            out.append(Diagnostic("error", c.pos, g, "ill-formed type"))
        if c.type is not None and well_formed_type(c.type):
            check_term(c.type, g, c.pos)
        if c.definiens is not None:
            check_term(c.definiens, g, c.pos)
    return out
