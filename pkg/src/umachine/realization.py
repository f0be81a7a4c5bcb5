"""Realizations: views into the Computation target backed by native functions.

The registry binds ``View?constant`` to an in-process function with an arity;
the escaped snippet stored in the view is documentation and codegen payload,
never executed.  A realization is syntactic when the bifoundation embedding
translates every assigned constant's type to the term-shaped Computation
types; only syntactic realizations induce rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .graph import (BUILTIN_BASE, CMP_ANY, CMP_CONTEXT, CMP_FUNCTION,
                    CMP_LAMBDA, CMP_LIST, CMP_TERM, COMPUTATION, OPENMATH,
                    OPENMATH_CD_BASE, Assignment, GraphError, TheoryGraph,
                    View, snippet_is_stub)
from .machine import Rule, RuleBase, SimplifyBudget, simplify
from .notation import render_term
from .sts import Arity, Binder, Fixed, Flexible, arity_of, well_formed_type
from .terms import (App, Bind, Const, Foreign, GlobalName, ModuleRef, Term,
                    app)


class RealizationError(GraphError):
    pass


class ArityMismatchError(RealizationError):
    pass


LOGIC1_TRUE = GlobalName(OPENMATH_CD_BASE, "logic1", "true")

SYNTACTIC = ModuleRef(BUILTIN_BASE, "Syntactic")
SEMANTIC = ModuleRef(BUILTIN_BASE, "Semantic")


@dataclass(frozen=True)
class Bifoundation:
    """A logic, a computational target, and the embedding between them."""

    logic: ModuleRef
    target: ModuleRef
    embed: ModuleRef

    def validate(self, graph: TheoryGraph):
        missing = graph.check_view(self.embed)
        if missing:
            raise RealizationError(
                f"bifoundation embedding {self.embed} is not total: "
                + ", ".join(str(m) for m in missing))


def _assert_snippet(var: str) -> Term:
    return Bind(Const(CMP_LAMBDA), (var,),
                Foreign("native", f"assert({var} == OMS(logic1.true))"))


def install_bifoundations(graph: TheoryGraph) -> Bifoundation:
    """Add the Syntactic and Semantic embeddings and return the former."""
    term, any_ = Const(CMP_TERM), Const(CMP_ANY)
    ctx = Const(CMP_CONTEXT)

    syn = View(SYNTACTIC, domain=OPENMATH, codomain=COMPUTATION)
    syn.add_assignment(Assignment("Object", term))
    syn.add_assignment(Assignment("mapsto", Const(CMP_FUNCTION)))
    syn.add_assignment(Assignment("naryObject", app(Const(CMP_LIST), term)))
    syn.add_assignment(Assignment(
        "binder", app(Const(CMP_FUNCTION), ctx, term, term)))
    syn.add_assignment(Assignment("FMP", _assert_snippet("x")))
    graph.add(syn)

    sem = View(SEMANTIC, domain=OPENMATH, codomain=COMPUTATION)
    sem.add_assignment(Assignment("Object", any_))
    sem.add_assignment(Assignment("mapsto", Const(CMP_FUNCTION)))
    sem.add_assignment(Assignment("naryObject", app(Const(CMP_LIST), any_)))
    sem.add_assignment(Assignment(
        "binder", app(Const(CMP_FUNCTION), ctx, term, any_)))
    sem.add_assignment(Assignment(
        "FMP", Bind(Const(CMP_LAMBDA), ("x",),
                    Foreign("native", "assert(x == true)"))))
    graph.add(sem)

    bf = Bifoundation(OPENMATH, COMPUTATION, SYNTACTIC)
    bf.validate(graph)
    return bf


def syntactic_shape(arity: Arity) -> Term:
    """The Computation type a syntactic realization maps an arity to."""
    term = Const(CMP_TERM)
    if isinstance(arity, Binder):
        return app(Const(CMP_FUNCTION), Const(CMP_CONTEXT), term, term)
    if isinstance(arity, Flexible):
        return app(Const(CMP_FUNCTION),
                   *([term] * arity.n), app(Const(CMP_LIST), term), term)
    return app(Const(CMP_FUNCTION), *([term] * arity.n), term) \
        if arity.n else term


# ---------------------------------------------------------------------------
# Native-function registry (populated at import/startup, frozen afterwards)


@dataclass(frozen=True)
class RegisteredFn:
    arity: Arity
    fn: Callable


REGISTRY: dict[str, RegisteredFn] = {}


def register(view: str, constant: str, arity: Arity, fn: Callable):
    """Bind a native function under ``view?constant``."""
    key = f"{view}?{constant}"
    existing = REGISTRY.get(key)
    if existing is not None and existing.fn is not fn:
        raise RealizationError(f"{key} is already registered")
    REGISTRY[key] = RegisteredFn(arity, fn)
    return fn


@dataclass
class Realization:
    view: ModuleRef
    registry: dict[str, RegisteredFn]
    syntactic: bool


def realization_of(graph: TheoryGraph, view_ref: ModuleRef,
                   registry: dict[str, RegisteredFn] | None = None,
                   embed: ModuleRef = SYNTACTIC) -> Realization:
    """Wrap a view with its registry bindings and the syntactic check.

    The check translates each assigned constant's type along the bifoundation
    embedding and compares it with the term-shaped Computation type of the
    constant's arity (the triangle with the embedding must commute).
    """
    registry = REGISTRY if registry is None else registry
    view = graph.view(view_ref)
    syntactic = True
    for g, c in graph.flatten(view.domain):
        if graph.resolve_assignment(view_ref, g) is None:
            continue
        if c.type is None or not well_formed_type(c.type):
            continue
        translated = graph.apply_morphism(embed, c.type)
        if translated != syntactic_shape(arity_of(c.type)):
            syntactic = False
            break
    return Realization(view_ref, registry, syntactic)


@dataclass
class RulesReport:
    base: RuleBase
    unimplemented: list[GlobalName] = field(default_factory=list)


def _expects_function(c, arity: Arity | None, assignment: Assignment) -> bool:
    """Whether an assigned constant is supposed to have a registry binding."""
    if arity is not None:
        return not (isinstance(arity, Fixed) and arity.n == 0)
    # Untyped constants are value-like unless the snippet declares parameters.
    return isinstance(assignment.target, Bind) \
        and isinstance(assignment.target.scope, Foreign)


def rules_of(graph: TheoryGraph, realization: Realization) -> RulesReport:
    """The rule base a syntactic realization induces.

    One rule per registered constant; assigned constants whose snippet is a
    stub, or whose function-shaped assignment has no registry binding, are
    reported as unimplemented.
    """
    if not realization.syntactic:
        raise RealizationError(
            f"{realization.view} is not a syntactic realization")
    report = RulesReport(RuleBase())
    seen: set[GlobalName] = set()
    for g, c in graph.flatten(graph.view(realization.view).domain):
        if g in seen:
            continue
        seen.add(g)
        hit = graph.resolve_assignment(realization.view, g)
        if hit is None:
            continue
        provider, assignment = hit
        declared = None
        if c.type is not None and well_formed_type(c.type):
            declared = arity_of(c.type)
        key = f"{provider.module}?{c.name}"
        entry = realization.registry.get(key)
        if entry is None:
            if snippet_is_stub(assignment.target) \
                    or _expects_function(c, declared, assignment):
                report.unimplemented.append(g)
            continue
        if declared is None and entry.arity != Fixed(0):
            raise ArityMismatchError(
                f"{g} carries a rule of arity {entry.arity} but has no type")
        if declared is not None and entry.arity != declared:
            raise ArityMismatchError(
                f"{g}: registry arity {entry.arity} does not match the "
                f"declared type's arity {declared}")
        report.base.add(Rule(g, entry.arity, entry.fn))
    return report


# ---------------------------------------------------------------------------
# FMP test harness


@dataclass(frozen=True)
class TestCase:
    __test__ = False  # not a pytest class

    origin: GlobalName
    formula: Term

    @property
    def expected(self) -> Term:
        return Const(LOGIC1_TRUE)


def collect_tests(graph: TheoryGraph) -> list[TestCase]:
    """Every constant whose definiens is ``FMP(F)`` yields a test asserting
    that ``F`` simplifies to logic1's truth constant."""
    from .graph import OM_FMP, Theory
    out = []
    for module in graph.modules.values():
        if not isinstance(module, Theory):
            continue
        for c in module.constants():
            d = c.definiens
            if (isinstance(d, App) and isinstance(d.head, Const)
                    and d.head.head == OM_FMP and len(d.args) == 1):
                out.append(TestCase(module.name.name(c.name), d.args[0]))
    return out


@dataclass
class TestOutcome:
    case: TestCase
    passed: bool
    residual: str | None = None

    def line(self) -> str:
        if self.passed:
            return f"PASS {self.case.origin}"
        return f"FAIL {self.case.origin} residual: {self.residual}"


@dataclass
class TestReport:
    outcomes: list[TestOutcome] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for o in self.outcomes if o.passed)

    @property
    def total(self) -> int:
        return len(self.outcomes)

    def lines(self) -> list[str]:
        return [o.line() for o in self.outcomes] \
            + [f"passed {self.passed}/{self.total}"]

    def __str__(self):
        return "\n".join(self.lines())


def run_tests(graph: TheoryGraph, base: RuleBase, tests,
              budget: SimplifyBudget = SimplifyBudget()) -> TestReport:
    report = TestReport()
    for case in tests:
        result = simplify(base, case.formula, budget)
        ok = (not result.exhausted) and result.term == case.expected
        residual = None
        if not ok:
            scope = graph.scope_for(case.origin.module_ref)
            residual = render_term(result.term, scope)
        report.outcomes.append(TestOutcome(case, ok, residual))
    return report
