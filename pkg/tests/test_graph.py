import pytest

from umachine.graph import (COMPUTATION, OPENMATH, Constant,
                            DuplicateModuleError, Include, IncludeCycleError,
                            MorphismError, Theory, TheoryGraph,
                            CMP_FUNCTION, CMP_LIST, CMP_TERM, OM_MAPSTO,
                            OM_OBJECT)
from umachine.realization import SYNTACTIC, install_bifoundations
from umachine.surface import parse_modules
from umachine.terms import Const, GlobalName, IntLit, ModuleRef, app

CD = "http://www.openmath.org/cd"


def test_flatten_lists_ext(loaded):
    g = loaded.graph
    flat = g.flatten(g.resolve("lists_ext"))
    names = [str(n.local) for n, _ in flat]
    assert names == ["lists?elem", "lists?list", "lists?nil", "lists?cons",
                     "lists?append", "lists_ext?append_many"]


def test_flatten_without_includes_keeps_declaration_order(loaded):
    g = loaded.graph
    flat = g.flatten(g.resolve("arith1"))
    assert [n.name for n, _ in flat] == ["plus", "minus", "times",
                                         "unary_minus", "power"]


def test_flatten_numbers_test_is_the_union(loaded):
    g = loaded.graph
    flat = [n for n, _ in g.flatten(g.resolve("NumbersTest"))]
    expected = []
    for ref in ("arith1", "fns1", "set1", "relation1"):
        expected.extend(n for n, _ in g.flatten(g.resolve(ref)))
    expected.append(g.resolve("NumbersTest").name("maptest"))
    assert flat == expected


def test_flatten_is_idempotent(loaded):
    g = loaded.graph
    ref = g.resolve("NumbersTest")
    once = g.flatten(ref)
    flat_theory = Theory(ModuleRef("um:/tmp", "flatNT"), meta=OPENMATH)
    for _, c in once:
        flat_theory.declarations.append(c)
    g2 = TheoryGraph()
    g2.add(flat_theory)
    again = g2.flatten(flat_theory.name)
    assert [c for _, c in again] == [c for _, c in once]


def test_repeated_include_is_a_noop():
    g = TheoryGraph()
    a = Theory(ModuleRef("um:/t", "A"), meta=OPENMATH)
    a.add_constant(Constant("c"))
    g.add(a)
    b = Theory(ModuleRef("um:/t", "B"), meta=OPENMATH,
               declarations=[Include(a.name), Include(a.name)])
    g.add(b)
    assert [n.local for n, _ in g.flatten(b.name)] == ["A?c"]


def test_include_cycle_is_detected():
    g = TheoryGraph()
    a = Theory(ModuleRef("um:/t", "A"), meta=OPENMATH)
    b = Theory(ModuleRef("um:/t", "B"), meta=OPENMATH)
    a.declarations.append(Include(b.name))
    b.declarations.append(Include(a.name))
    g.add(a)
    g.add(b)
    with pytest.raises(IncludeCycleError):
        g.flatten(a.name)


def test_duplicate_module_rejected():
    g = TheoryGraph()
    g.add(Theory(ModuleRef("um:/t", "A")))
    with pytest.raises(DuplicateModuleError):
        g.add(Theory(ModuleRef("um:/t", "A")))


# -- views -------------------------------------------------------------------

PARTIAL_VIEW = """
document http://www.openmath.org/cd

view NumberArith : arith1 -> Computation
  constant plus = (args: List[Term]) "
  "
  constant minus = (a: Term, b: Term) "
    (OMI(x), OMI(y)) -> OMI(x - y)
  "
  constant times = (args: List[Term]) "integer product"
  constant unary_minus = (a: Term) "integer negation"
  constant power = (a: Term, b: Term) "integer exponentiation"
"""


def _graph_with_partial_view():
    from umachine.codegen import build_graph
    graph, _, _ = build_graph()
    parse_modules(graph, PARTIAL_VIEW, "numberarith.mmt")
    return graph


def test_check_view_names_the_stub():
    graph = _graph_with_partial_view()
    missing = graph.check_view(graph.resolve("NumberArith"))
    assert [m.local for m in missing] == ["arith1?plus"]


def test_check_view_total_view_is_clean(loaded):
    g = loaded.graph
    assert g.check_view(g.resolve("IntegerArith")) == []
    assert g.check_view(SYNTACTIC) == []


def test_check_view_ignores_defined_constants():
    g = TheoryGraph()
    t = Theory(ModuleRef("um:/t", "T"), meta=OPENMATH)
    t.add_constant(Constant("c", definiens=IntLit(1)))
    g.add(t)
    from umachine.graph import View
    v = View(ModuleRef("um:/t", "V"), domain=t.name, codomain=COMPUTATION)
    g.add(v)
    assert g.check_view(v.name) == []


# -- morphism application -------------------------------------------------------

def test_apply_morphism_object_to_term(loaded):
    g = loaded.graph
    assert g.apply_morphism(SYNTACTIC, Const(OM_OBJECT)) == Const(CMP_TERM)


def test_apply_morphism_fixes_literals(loaded):
    assert loaded.graph.apply_morphism(SYNTACTIC, IntLit(7)) == IntLit(7)


def test_apply_morphism_is_homomorphic(loaded):
    # mapsto(Object, Object) maps to Function(Term, Term) under the
    # syntactic embedding (computed by hand from its assignments).
    g = loaded.graph
    t = app(Const(OM_MAPSTO), Const(OM_OBJECT), Const(OM_OBJECT))
    assert g.apply_morphism(SYNTACTIC, t) == app(
        Const(CMP_FUNCTION), Const(CMP_TERM), Const(CMP_TERM))


def test_apply_morphism_unassigned_constant_is_an_error(loaded):
    g = loaded.graph
    stray = Const(GlobalName(CD, "arith1", "plus"))
    with pytest.raises(MorphismError):
        g.apply_morphism(SYNTACTIC, stray)


# -- pushout ---------------------------------------------------------------------

def test_pushout_arith1_along_syntactic(loaded):
    g = loaded.graph
    out = g.pushout(SYNTACTIC, g.resolve("arith1"))
    assert out.meta == COMPUTATION
    plus = out.constant("plus")
    # naryObject -> Object becomes (List[Term]) => Term.
    assert plus.type == app(Const(CMP_FUNCTION),
                            app(Const(CMP_LIST), Const(CMP_TERM)),
                            Const(CMP_TERM))
    assert [c.name for c in out.constants()] == \
        [c.name for c in g.theory(g.resolve("arith1")).constants()]


def test_pushout_of_empty_theory(loaded):
    g = TheoryGraph()
    install_bifoundations(g)
    empty = Theory(ModuleRef("um:/t", "E"), meta=OPENMATH)
    g.add(empty)
    out = g.pushout(SYNTACTIC, empty.name)
    assert out.meta == COMPUTATION and out.declarations == []


def test_pushout_along_identity_is_renaming():
    from umachine.graph import View, Assignment
    g = TheoryGraph()
    ident = View(ModuleRef("um:/t", "Id"), domain=OPENMATH, codomain=OPENMATH)
    for name in ("mapsto", "Object", "naryObject", "binder", "FMP"):
        ident.add_assignment(Assignment(name, Const(OPENMATH.name(name))))
    g.add(ident)
    t = Theory(ModuleRef("um:/t", "T"), meta=OPENMATH)
    t.add_constant(Constant("c", type=Const(OM_OBJECT)))
    g.add(t)
    out = g.pushout(ident.name, t.name)
    assert out.meta == OPENMATH
    assert [c.name for c in out.constants()] == ["c"]
    assert out.constant("c").type == Const(OM_OBJECT)


def test_pushout_meta_mismatch(loaded):
    g = loaded.graph
    with pytest.raises(MorphismError):
        g.pushout(SYNTACTIC, COMPUTATION)  # Computation has no meta-theory


def test_local_assignments_shadow_included_views():
    # Assignment lookup: local statements first, then included views in order.
    from umachine.graph import Assignment, View, CMP_ANY
    from umachine.realization import install_bifoundations
    g = TheoryGraph()
    install_bifoundations(g)
    t = Theory(ModuleRef("um:/t", "T"), meta=OPENMATH)
    t.add_constant(Constant("c"))
    g.add(t)
    inner = View(ModuleRef("um:/t", "Inner"), domain=t.name,
                 codomain=COMPUTATION)
    inner.add_assignment(Assignment("c", Const(CMP_TERM)))
    g.add(inner)
    from umachine.graph import ViewInclude
    outer = View(ModuleRef("um:/t", "Outer"), domain=t.name,
                 codomain=COMPUTATION)
    outer.statements.append(ViewInclude(inner.name))
    outer.add_assignment(Assignment("c", Const(CMP_ANY)))
    g.add(outer)
    provider, a = g.resolve_assignment(outer.name, t.name.name("c"))
    assert provider == outer.name and a.target == Const(CMP_ANY)
    # Without a local assignment the included view provides it.
    bare = View(ModuleRef("um:/t", "Bare"), domain=t.name,
                codomain=COMPUTATION)
    bare.statements.append(ViewInclude(inner.name))
    g.add(bare)
    provider, a = g.resolve_assignment(bare.name, t.name.name("c"))
    assert provider == inner.name and a.target == Const(CMP_TERM)


def test_morphism_resolves_meta_constants_through_included_views():
    # A view over a CD delegates meta-theory constants to an included
    # embedding, so types translate through it as well.
    from umachine.graph import Assignment, View, ViewInclude
    from umachine.realization import SYNTACTIC as SYN, install_bifoundations
    g = TheoryGraph()
    install_bifoundations(g)
    t = Theory(ModuleRef("um:/t", "T"), meta=OPENMATH)
    t.add_constant(Constant("c", type=Const(OM_OBJECT)))
    g.add(t)
    v = View(ModuleRef("um:/t", "V"), domain=t.name, codomain=COMPUTATION)
    v.statements.append(ViewInclude(SYN))
    v.add_assignment(Assignment("c", Const(CMP_TERM)))
    g.add(v)
    translated = g.apply_morphism(
        v.name, app(Const(OM_MAPSTO), Const(OM_OBJECT), Const(OM_OBJECT)))
    assert translated == app(Const(CMP_FUNCTION), Const(CMP_TERM),
                             Const(CMP_TERM))
    assert g.apply_morphism(v.name, Const(t.name.name("c"))) == Const(CMP_TERM)


def test_total_view_gives_total_morphism(loaded):
    # check_view == [] implies apply_morphism is defined on every term over
    # the flattened domain.
    g = loaded.graph
    ia = g.resolve("IntegerArith")
    assert g.check_view(ia) == []
    every = app(*(Const(n) for n, _ in g.flatten(g.resolve("arith1"))))
    g.apply_morphism(ia, every)  # must not raise


def test_morphism_commutes_with_closed_substitution(loaded):
    # Functoriality on terms: translate-then-substitute equals
    # substitute-then-translate for closed replacement terms, on random
    # small terms over the embedding's domain.
    import random
    from umachine.graph import OM_NARYOBJECT
    from umachine.terms import Var, substitute
    g = loaded.graph
    rng = random.Random(31)
    consts = [Const(OM_OBJECT), Const(OM_NARYOBJECT), Const(OM_MAPSTO)]

    def gen(depth, closed=False):
        if depth == 0:
            leaves = consts + [IntLit(7)]
            if not closed:
                leaves = leaves + [Var("x"), Var("y")]
            return rng.choice(leaves)
        return app(rng.choice(consts),
                   *[gen(depth - 1, closed) for _ in range(rng.randrange(1, 4))])

    for _ in range(200):
        body = gen(rng.randrange(1, 4))
        repl = {"x": gen(rng.randrange(0, 2), closed=True),
                "y": rng.choice(consts)}
        lhs = g.apply_morphism(SYNTACTIC, substitute(body, repl))
        rhs = substitute(g.apply_morphism(SYNTACTIC, body),
                         {k: g.apply_morphism(SYNTACTIC, v)
                          for k, v in repl.items()})
        assert lhs == rhs
