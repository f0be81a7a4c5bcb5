import pytest

from umachine.codegen import build_graph
from umachine.graph import TheoryGraph, LISTS_DOC_BASE
from umachine.realization import (LOGIC1_TRUE, SEMANTIC, SYNTACTIC,
                                  ArityMismatchError, RealizationError,
                                  RegisteredFn, TestCase, collect_tests,
                                  realization_of, rules_of, run_tests)
from umachine.sts import Fixed, Flexible
from umachine.surface import parse_modules
from umachine.terms import Const, GlobalName, IntLit

CD = "http://www.openmath.org/cd"

NUMBER_ARITH = """
document http://www.openmath.org/cd

view NumberArithX : arith1 -> Computation
  constant plus = (args: List[Term]) "
  "
  constant minus = (a: Term, b: Term) "(OMI(x), OMI(y)) -> OMI(x - y)"
  constant times = (args: List[Term]) "integer product"
  constant unary_minus = (a: Term) "integer negation"
  constant power = (a: Term, b: Term) "integer exponentiation"
"""


def _minus(a, b):
    if isinstance(a, IntLit) and isinstance(b, IntLit):
        return IntLit(a.value - b.value)
    return None


def _registry(**overrides):
    from umachine.stdlib import rules
    reg = {
        "NumberArithX?minus": RegisteredFn(Fixed(2), _minus),
        "NumberArithX?times": RegisteredFn(Flexible(0), rules.times),
        "NumberArithX?unary_minus": RegisteredFn(Fixed(1), rules.unary_minus),
        "NumberArithX?power": RegisteredFn(Fixed(2), rules.power),
    }
    reg.update(overrides)
    return reg


def test_rules_of_partial_realization():
    graph, _, _ = build_graph()
    parse_modules(graph, NUMBER_ARITH, "na.mmt")
    real = realization_of(graph, graph.resolve("NumberArithX"),
                          registry=_registry())
    assert real.syntactic
    report = rules_of(graph, real)
    minus = GlobalName(CD, "arith1", "minus")
    assert report.base.get(minus, Fixed(2)) is not None
    assert [g.local for g in report.unimplemented] == ["arith1?plus"]


def test_rules_of_empty_view():
    graph, _, _ = build_graph()
    parse_modules(graph, "document um:/t\n\n"
                         "view Empty : arith1 -> Computation\n", "e.mmt")
    real = realization_of(graph, graph.resolve("Empty"), registry={})
    report = rules_of(graph, real)
    assert len(report.base) == 0 and report.unimplemented == []


def test_rules_of_lists_realizations(loaded):
    g = loaded.graph
    real = realization_of(g, g.resolve("ListsExtImpl"))
    report = rules_of(g, real)
    append = GlobalName(LISTS_DOC_BASE, "lists", "append")
    many = GlobalName(LISTS_DOC_BASE, "lists_ext", "append_many")
    assert report.base.get(append, Fixed(2)) is not None
    assert report.base.get(many, Flexible(0)) is not None
    assert report.unimplemented == []


def test_arity_mismatch_is_an_error():
    graph, _, _ = build_graph()
    parse_modules(graph, NUMBER_ARITH, "na.mmt")
    bad = _registry(**{"NumberArithX?minus": RegisteredFn(Fixed(1), _minus)})
    real = realization_of(graph, graph.resolve("NumberArithX"), registry=bad)
    with pytest.raises(ArityMismatchError):
        rules_of(graph, real)


def test_non_syntactic_realizations_are_rejected():
    graph, _, _ = build_graph()
    parse_modules(graph, NUMBER_ARITH, "na.mmt")
    real = realization_of(graph, graph.resolve("NumberArithX"),
                          registry=_registry(), embed=SEMANTIC)
    assert not real.syntactic
    with pytest.raises(RealizationError):
        rules_of(graph, real)


def test_all_shipped_realizations_commute(loaded):
    from umachine.codegen import realization_views
    for view in realization_views(loaded.graph):
        assert realization_of(loaded.graph, view.name).syntactic, view.name


def test_bifoundation_embeddings_are_total(loaded):
    assert loaded.graph.check_view(SYNTACTIC) == []
    assert loaded.graph.check_view(SEMANTIC) == []


def test_rule_heads_are_declared(loaded):
    declared = set()
    for view in loaded.graph.views():
        if view.name in (SYNTACTIC, SEMANTIC):
            continue
        declared |= {g for g, _ in loaded.graph.flatten(view.domain)}
    for rule in loaded.base.rules():
        assert rule.head in declared


def test_minimal_redexes_select_the_rule(loaded):
    from umachine.machine import _select_rule
    from umachine.sts import Binder, Fixed, Flexible
    from umachine.terms import Var
    for rule in loaded.base.rules():
        if isinstance(rule.arity, Binder):
            redex = rule.make_redex(("x",), Var("x"))
        elif isinstance(rule.arity, Flexible):
            redex = rule.make_redex(*[Var(f"a{i}")
                                      for i in range(rule.arity.n + 1)])
        elif rule.arity.n == 0:
            redex = rule.make_redex()
        else:
            redex = rule.make_redex(*[Var(f"a{i}")
                                      for i in range(rule.arity.n)])
        hit = _select_rule(loaded.base, redex)
        assert hit is not None and hit[0] is rule


# -- FMP harness ---------------------------------------------------------------------

def test_collect_tests_finds_maptest(loaded):
    cases = collect_tests(loaded.graph)
    assert [c.origin.local for c in cases] == ["NumbersTest?maptest"]


def test_collect_tests_empty_graph():
    assert collect_tests(TheoryGraph()) == []


def test_collect_tests_two_cases_in_order():
    graph, _, _ = build_graph()
    src = """
document um:/t

theory Two : OpenMath
  include arith1
  include relations1
  constant first = FMP(1+1 = 2)
  constant second = FMP(2*2 = 4)
"""
    parse_modules(graph, src, "two.mmt")
    cases = collect_tests(graph)
    assert [c.origin.name for c in cases][-2:] == ["first", "second"]


def test_run_tests_stdlib_passes(loaded):
    report = run_tests(loaded.graph, loaded.base, collect_tests(loaded.graph))
    assert report.passed == report.total == 1
    assert report.lines()[0].startswith("PASS")
    assert report.lines()[-1] == "passed 1/1"


def test_run_tests_failing_case_reports_residual(loaded):
    graph, _, _ = build_graph()
    parse_modules(graph, """
document um:/t

theory Wrong : OpenMath
  include arith1
  include relations1
  constant claim = FMP(1+1 = 3)
""", "wrong.mmt")
    from umachine.codegen import load
    base, _ = load(graph)
    cases = [c for c in collect_tests(graph) if c.origin.name == "claim"]
    report = run_tests(graph, base, cases)
    assert report.passed == 0 and report.total == 1
    line = report.lines()[0]
    assert line.startswith("FAIL") and "logic1?false" in line


def test_run_tests_empty_set(loaded):
    report = run_tests(loaded.graph, loaded.base, [])
    assert report.lines() == ["passed 0/0"]


def test_expected_value_is_logic1_true():
    case = TestCase(GlobalName(CD, "t", "c"), IntLit(1))
    assert case.expected == Const(LOGIC1_TRUE)
