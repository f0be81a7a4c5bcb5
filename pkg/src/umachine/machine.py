"""The universal machine: rule base and exhaustive simplification.

A rule is a native partial function keyed by (constant, arity).  Rules may
decline (return ``None``) or raise; both are absorbed, and the redex is left
in place and marked simplified, so a failing rule can never cause a livelock.
Simplification is innermost-leftmost (head, then arguments, then the head
rule), consumes one unit of fuel per successful application, and marks every
fully simplified subterm so later calls skip it without re-traversal.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable

from .sts import BINDER, Arity, Binder, Fixed, Flexible
from .terms import App, Bind, Const, GlobalName, Term, mark

# Simplification recurses along the term structure and along rewrite chains
# (a list-recursive rule nests one level per element), so the interpreter's
# conservative default recursion limit caps workloads far below what the
# fuel budget allows.  Scoped to each simplify() call.
_RECURSION_LIMIT = 30000


class DuplicateRuleError(Exception):
    pass


@dataclass(frozen=True)
class Rule:
    """A native implementation of a constant at one arity.

    The callable receives, per arity: Fixed n — n terms; Flexible n — n terms
    plus one tuple of terms; Binder — the context tuple and the scope term.
    It returns a term, or ``None`` to decline.
    """

    head: GlobalName
    arity: Arity
    fn: Callable

    def make_redex(self, *parts) -> Term:
        """The application shape this rule matches (used by tests)."""
        if isinstance(self.arity, Binder):
            ctx, scope = parts
            return Bind(Const(self.head), ctx, scope)
        if parts:
            return App(Const(self.head), tuple(parts))
        return Const(self.head)


class RuleBase:
    """Rules indexed by head constant; at most one rule per (head, arity)."""

    def __init__(self, rules=()):
        self._rules: dict[GlobalName, dict[Arity, Rule]] = {}
        self._count = 0
        for r in rules:
            self.add(r)

    def add(self, rule: Rule):
        slot = self._rules.setdefault(rule.head, {})
        existing = slot.get(rule.arity)
        if existing is not None:
            if existing is rule or existing.fn is rule.fn:
                return self  # the same realization arriving twice is a no-op
            raise DuplicateRuleError(
                f"a rule for {rule.head} at arity {rule.arity} is already "
                f"registered")
        slot[rule.arity] = rule
        self._count += 1
        return self

    def get(self, head: GlobalName, arity: Arity) -> Rule | None:
        return self._rules.get(head, {}).get(arity)

    def for_head(self, head: GlobalName) -> dict[Arity, Rule]:
        return self._rules.get(head, {})

    def rules(self):
        for slot in self._rules.values():
            yield from slot.values()

    def __len__(self):
        return self._count

    def __contains__(self, key):
        head, arity = key
        return self.get(head, arity) is not None


@dataclass(frozen=True)
class SimplifyBudget:
    """Fuel bounds the number of successful rule applications."""

    fuel: int = 10000

    def __post_init__(self):
        if self.fuel <= 0:
            raise ValueError("fuel must be positive")


@dataclass
class SimplifyResult:
    term: Term
    exhausted: bool
    steps: int


def _select_rule(base: RuleBase, t: Term):
    """The applicable head rule and its call arguments, if any.

    Fixed n is preferred over Flexible i <= n; among Flexible, the largest i.
    """
    if isinstance(t, Const):
        r = base.get(t.head, Fixed(0))
        if r is not None:
            return r, ()
        return None
    if isinstance(t, App) and isinstance(t.head, Const):
        slot = base.for_head(t.head.head)
        if not slot:
            return None
        n = len(t.args)
        r = slot.get(Fixed(n))
        if r is not None:
            return r, t.args
        best = None
        for arity, rule in slot.items():
            if isinstance(arity, Flexible) and arity.n <= n:
                if best is None or arity.n > best[0]:
                    best = (arity.n, rule)
        if best is not None:
            i, rule = best
            return rule, t.args[:i] + (t.args[i:],)
        return None
    if isinstance(t, Bind) and isinstance(t.binder, Const):
        r = base.get(t.binder.head, BINDER)
        if r is not None:
            return r, (t.context, t.scope)
        return None
    return None


def rewrite_step(base: RuleBase, t: Term) -> Term | None:
    """One head-rule application at the root; ``None`` when no rule applies,
    the rule declines or fails, or the result equals the input."""
    hit = _select_rule(base, t)
    if hit is None:
        return None
    rule, args = hit
    try:
        result = rule.fn(*args)
    except Exception:
        return None
    if result is None or result == t:
        return None
    return result


class _Simplifier:
    def __init__(self, base: RuleBase, fuel: int):
        self.base = base
        self.fuel = fuel
        self.steps = 0
        self.exhausted = False

    def simp(self, t: Term) -> Term:
        if t.simplified or self.exhausted:
            return t
        if isinstance(t, App):
            head = self.simp(t.head)
            args = tuple(self.simp(a) for a in t.args)
            if head is not t.head or any(a is not b for a, b in zip(args, t.args)):
                t = App(head, args)
            return self._head_rules(t)
        if isinstance(t, Bind):
            binder = self.simp(t.binder)
            scope = self.simp(t.scope)
            if binder is not t.binder or scope is not t.scope:
                t = Bind(binder, t.context, scope)
            return self._head_rules(t)
        if isinstance(t, Const):
            return self._head_rules(t)
        return mark(t)

    def _head_rules(self, t: Term) -> Term:
        if self.exhausted:
            return t
        result = rewrite_step(self.base, t)
        if result is None:
            return mark(t)
        if self.fuel == 0:
            # A rule would fire but the budget is spent: report exhaustion
            # and leave the partial result unmarked.
            self.exhausted = True
            return t
        self.fuel -= 1
        self.steps += 1
        return self.simp(result)


def simplify(base: RuleBase, t: Term,
             budget: SimplifyBudget = SimplifyBudget()) -> SimplifyResult:
    """Exhaustively rewrite ``t``; see the module docstring for the strategy."""
    s = _Simplifier(base, budget.fuel)
    old_limit = sys.getrecursionlimit()
    if old_limit < _RECURSION_LIMIT:
        sys.setrecursionlimit(_RECURSION_LIMIT)
    try:
        out = s.simp(t)
    finally:
        if old_limit < _RECURSION_LIMIT:
            sys.setrecursionlimit(old_limit)
    return SimplifyResult(out, s.exhausted, s.steps)
