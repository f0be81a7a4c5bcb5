"""Native rule implementations for the shipped content dictionaries.

Every function is partial: it returns ``None`` to decline on shapes outside
its domain (non-literal arguments, malformed lists, zero divisors), matching
the pattern-match style of the escaped snippets in the views.  Only integer
arithmetic is realized; float arguments decline.
"""

from __future__ import annotations

import math

from ..graph import OPENMATH_CD_BASE, LISTS_DOC_BASE
from ..realization import register
from ..sts import Fixed, Flexible
from ..terms import (App, Bind, Const, GlobalName, IntLit, Term, app,
                     substitute, term_key)

_CD = OPENMATH_CD_BASE

LOGIC_TRUE = Const(GlobalName(_CD, "logic1", "true"))
LOGIC_FALSE = Const(GlobalName(_CD, "logic1", "false"))
SET = GlobalName(_CD, "set1", "set")
EMPTYSET = Const(GlobalName(_CD, "set1", "emptyset"))
LAMBDA = GlobalName(_CD, "fns1", "lambda")

NIL = Const(GlobalName(LISTS_DOC_BASE, "lists", "nil"))
CONS = GlobalName(LISTS_DOC_BASE, "lists", "cons")
APPEND = GlobalName(LISTS_DOC_BASE, "lists", "append")
APPEND_MANY = GlobalName(LISTS_DOC_BASE, "lists_ext", "append_many")


def _int(t: Term):
    return t.value if isinstance(t, IntLit) else None


def _ints(ts):
    vals = [_int(t) for t in ts]
    return None if any(v is None for v in vals) else vals


def _bool(t: Term):
    if t == LOGIC_TRUE:
        return True
    if t == LOGIC_FALSE:
        return False
    return None


def _from_bool(b: bool) -> Term:
    return LOGIC_TRUE if b else LOGIC_FALSE


def _is_set(t: Term) -> bool:
    if t == EMPTYSET:
        return True
    return isinstance(t, App) and isinstance(t.head, Const) \
        and t.head.head == SET


def _set_elements(t: Term) -> tuple:
    return () if t == EMPTYSET else t.args


def _is_cons_list(t: Term) -> bool:
    if t == NIL:
        return True
    return isinstance(t, App) and isinstance(t.head, Const) \
        and t.head.head == CONS and len(t.args) == 2


def _is_value(t: Term) -> bool:
    """Ground values: structural equality coincides with semantic equality."""
    if isinstance(t, (IntLit,)):
        return True
    if _bool(t) is not None:
        return True
    if t == NIL or t == EMPTYSET:
        return True
    if _is_set(t):
        return all(_is_value(e) for e in _set_elements(t))
    if isinstance(t, App) and isinstance(t.head, Const) \
            and t.head.head == CONS and len(t.args) == 2:
        return all(_is_value(a) for a in t.args)
    return False


def _canonical_set(elems) -> Term:
    out = []
    seen = set()
    for e in sorted(elems, key=term_key):
        k = term_key(e)
        if k not in seen:
            seen.add(k)
            out.append(e)
    if not out:
        return EMPTYSET
    return app(Const(SET), *out)


# -- arith1 -------------------------------------------------------------------

def plus(args):
    vals = _ints(args)
    return None if vals is None else IntLit(sum(vals))


def minus(a, b):
    x, y = _int(a), _int(b)
    return None if x is None or y is None else IntLit(x - y)


def times(args):
    vals = _ints(args)
    if vals is None:
        return None
    out = 1
    for v in vals:
        out *= v
    return IntLit(out)


def unary_minus(a):
    x = _int(a)
    return None if x is None else IntLit(-x)


def power(a, b):
    x, y = _int(a), _int(b)
    if x is None or y is None or y < 0:
        return None
    return IntLit(x ** y)


# -- logic1 -------------------------------------------------------------------

def logic_and(args):
    vals = [_bool(a) for a in args]
    return None if any(v is None for v in vals) else _from_bool(all(vals))


def logic_or(args):
    vals = [_bool(a) for a in args]
    return None if any(v is None for v in vals) else _from_bool(any(vals))


def logic_not(a):
    v = _bool(a)
    return None if v is None else _from_bool(not v)


def implies(a, b):
    x, y = _bool(a), _bool(b)
    if x is None or y is None:
        return None
    return _from_bool((not x) or y)


# -- relation1 ----------------------------------------------------------------

def eq(a, b):
    if _is_value(a) and _is_value(b):
        return _from_bool(a == b)
    return None


def neq(a, b):
    r = eq(a, b)
    return None if r is None else _from_bool(r == LOGIC_FALSE)


def _int_cmp(op):
    def rule(a, b):
        x, y = _int(a), _int(b)
        return None if x is None or y is None else _from_bool(op(x, y))
    return rule


lt = _int_cmp(lambda x, y: x < y)
gt = _int_cmp(lambda x, y: x > y)
leq = _int_cmp(lambda x, y: x <= y)
geq = _int_cmp(lambda x, y: x >= y)


# -- set1 ---------------------------------------------------------------------

def set_canon(args):
    # Fires only when canonicalization changes something; the engine treats
    # an equal result as a decline anyway.
    return _canonical_set(args)


def set_in(e, s):
    if not _is_set(s):
        return None
    elems = _set_elements(s)
    if any(e == x for x in elems):
        return LOGIC_TRUE
    if _is_value(e) and all(_is_value(x) for x in elems):
        return LOGIC_FALSE
    return None


def set_union(args):
    if not all(_is_set(a) for a in args):
        return None
    elems = [e for a in args for e in _set_elements(a)]
    return _canonical_set(elems)


def set_intersect(args):
    if not all(_is_set(a) for a in args):
        return None
    if not all(_is_value(e) for a in args for e in _set_elements(a)):
        return None
    keys = [set(term_key(e) for e in _set_elements(a)) for a in args]
    common = set.intersection(*keys)
    elems = [e for e in _set_elements(args[0]) if term_key(e) in common]
    return _canonical_set(elems)


def set_size(s):
    if not _is_set(s):
        return None
    elems = _set_elements(s)
    if not all(_is_value(e) for e in elems):
        return None
    distinct = {term_key(e) for e in elems}
    return IntLit(len(distinct))


def set_map(f, s):
    if not _is_set(s):
        return None
    elems = _set_elements(s)
    if not elems:
        return EMPTYSET
    if isinstance(f, Bind) and isinstance(f.binder, Const) \
            and f.binder.head == LAMBDA and len(f.context) == 1:
        x = f.context[0]
        mapped = [substitute(f.scope, {x: e}) for e in elems]
    else:
        mapped = [app(f, e) for e in elems]
    return app(Const(SET), *mapped)


# -- integer1 -----------------------------------------------------------------

def _euclid(a, b):
    r = a % abs(b)
    return (a - r) // b, r


def quotient(a, b):
    x, y = _int(a), _int(b)
    if x is None or y is None or y == 0:
        return None
    return IntLit(_euclid(x, y)[0])


def remainder(a, b):
    x, y = _int(a), _int(b)
    if x is None or y is None or y == 0:
        return None
    return IntLit(_euclid(x, y)[1])


def factorial(a):
    x = _int(a)
    if x is None or x < 0:
        return None
    return IntLit(math.factorial(x))


# -- lists / lists_ext ----------------------------------------------------------

def lists_append(l, m):
    if l == NIL:
        return m
    if isinstance(l, App) and isinstance(l.head, Const) \
            and l.head.head == CONS and len(l.args) == 2:
        head, tail = l.args
        return app(Const(CONS), head, app(Const(APPEND), tail, m))
    return None


def lists_append_many(args):
    if not all(_is_cons_list(a) for a in args):
        return None
    if not args:
        return NIL
    if len(args) == 1:
        return app(Const(APPEND), args[0], NIL)
    return app(Const(APPEND), args[0], app(Const(APPEND_MANY), *args[1:]))


def register_all():
    register("IntegerArith", "plus", Flexible(0), plus)
    register("IntegerArith", "minus", Fixed(2), minus)
    register("IntegerArith", "times", Flexible(0), times)
    register("IntegerArith", "unary_minus", Fixed(1), unary_minus)
    register("IntegerArith", "power", Fixed(2), power)

    register("LogicOps", "and", Flexible(0), logic_and)
    register("LogicOps", "or", Flexible(0), logic_or)
    register("LogicOps", "not", Fixed(1), logic_not)
    register("LogicOps", "implies", Fixed(2), implies)

    register("RelationOps", "eq", Fixed(2), eq)
    register("RelationOps", "neq", Fixed(2), neq)
    register("RelationOps", "lt", Fixed(2), lt)
    register("RelationOps", "gt", Fixed(2), gt)
    register("RelationOps", "leq", Fixed(2), leq)
    register("RelationOps", "geq", Fixed(2), geq)

    register("SetOps", "set", Flexible(0), set_canon)
    register("SetOps", "in", Fixed(2), set_in)
    register("SetOps", "union", Flexible(0), set_union)
    register("SetOps", "intersect", Flexible(0), set_intersect)
    register("SetOps", "size", Fixed(1), set_size)
    register("SetOps", "map", Fixed(2), set_map)

    register("IntegerOps", "quotient", Fixed(2), quotient)
    register("IntegerOps", "remainder", Fixed(2), remainder)
    register("IntegerOps", "factorial", Fixed(1), factorial)

    register("ListsImpl", "append", Fixed(2), lists_append)
    register("ListsExtImpl", "append_many", Flexible(0), lists_append_many)


register_all()
