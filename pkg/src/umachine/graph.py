"""Theories, views, includes, flattening, morphism application, pushouts.

The graph holds named modules (theories and views).  Two theories are always
present: ``OpenMath`` (the meta-theory of content dictionaries, declaring the
type formers) and ``Computation`` (the native target, declaring the shapes
realizations map types into).  A constant reference resolves in its theory,
the theory's includes, then the meta-theory chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .notation import Arg, Delim, Notation, ParseScope, ScopeEntry, SeqArg
from .terms import App, Bind, Const, Foreign, GlobalName, ModuleRef, Term


class GraphError(Exception):
    pass


class UnresolvedModuleError(GraphError):
    pass


class DuplicateModuleError(GraphError):
    pass


class IncludeCycleError(GraphError):
    pass


class MorphismError(GraphError):
    pass


@dataclass
class SourcePos:
    file: str
    line: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}"


@dataclass
class Constant:
    name: str
    type: Term | None = None
    definiens: Term | None = None
    notation: Notation | None = None
    pos: SourcePos | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("a constant needs a nonempty name")


@dataclass
class Include:
    target: ModuleRef
    pos: SourcePos | None = None


@dataclass
class Theory:
    name: ModuleRef
    meta: ModuleRef | None = None
    declarations: list = field(default_factory=list)
    pos: SourcePos | None = None

    def constants(self):
        return [d for d in self.declarations if isinstance(d, Constant)]

    def includes(self):
        return [d for d in self.declarations if isinstance(d, Include)]

    def constant(self, name: str) -> Constant | None:
        for d in self.declarations:
            if isinstance(d, Constant) and d.name == name:
                return d
        return None

    def add_constant(self, c: Constant):
        if self.constant(c.name) is not None:
            raise DuplicateModuleError(
                f"duplicate constant {c.name} in {self.name}")
        self.declarations.append(c)


@dataclass
class Assignment:
    name: str
    target: Term
    # Span of the escaped snippet literal in the source file (for integrate).
    snippet_span: tuple[str, int, int] | None = None
    pos: SourcePos | None = None


@dataclass
class ViewInclude:
    target: ModuleRef
    pos: SourcePos | None = None


@dataclass
class View:
    name: ModuleRef
    domain: ModuleRef
    codomain: ModuleRef
    statements: list = field(default_factory=list)
    pos: SourcePos | None = None

    def assignments(self):
        return [s for s in self.statements if isinstance(s, Assignment)]

    def includes(self):
        return [s for s in self.statements if isinstance(s, ViewInclude)]

    def assignment(self, name: str) -> Assignment | None:
        for s in self.statements:
            if isinstance(s, Assignment) and s.name == name:
                return s
        return None

    def add_assignment(self, a: Assignment):
        if self.assignment(a.name) is not None:
            raise DuplicateModuleError(
                f"duplicate assignment {a.name} in {self.name}")
        self.statements.append(a)


def snippet_body(t: Term) -> Foreign | None:
    """The escaped payload of an assignment, unwrapping a parameter binder."""
    if isinstance(t, Foreign):
        return t
    if isinstance(t, Bind) and isinstance(t.scope, Foreign):
        return t.scope
    return None


def snippet_is_stub(t: Term) -> bool:
    """An escaped assignment whose body is empty is a stub awaiting code."""
    f = snippet_body(t)
    return f is not None and f.content.strip() == ""


# ---------------------------------------------------------------------------
# Built-in theories

BUILTIN_BASE = "urn:um:builtin"
OPENMATH_CD_BASE = "http://www.openmath.org/cd"
LISTS_DOC_BASE = "http://cds.omdoc.org/unsorted/uom.omdoc"

OPENMATH = ModuleRef(BUILTIN_BASE, "OpenMath")
COMPUTATION = ModuleRef(BUILTIN_BASE, "Computation")

OM_MAPSTO = OPENMATH.name("mapsto")
OM_OBJECT = OPENMATH.name("Object")
OM_NARYOBJECT = OPENMATH.name("naryObject")
OM_BINDER = OPENMATH.name("binder")
OM_FMP = OPENMATH.name("FMP")

CMP_TYPE = COMPUTATION.name("type")
CMP_ANY = COMPUTATION.name("Any")
CMP_FUNCTION = COMPUTATION.name("Function")
CMP_LAMBDA = COMPUTATION.name("Lambda")
CMP_LIST = COMPUTATION.name("List")
CMP_LIST_LIT = COMPUTATION.name("list")
CMP_TERM = COMPUTATION.name("Term")
CMP_CONTEXT = COMPUTATION.name("Context")
CMP_INTEGER = COMPUTATION.name("Integer")
CMP_DOUBLE = COMPUTATION.name("Double")
CMP_BOOLEAN = COMPUTATION.name("Boolean")
CMP_STRING = COMPUTATION.name("String")


def _openmath_theory() -> Theory:
    t = Theory(OPENMATH, meta=None)
    t.add_constant(Constant(
        "mapsto",
        notation=Notation((SeqArg(1, "×"), Delim("→"), Arg(2)), precedence=15)))
    t.add_constant(Constant("Object"))
    t.add_constant(Constant("naryObject"))
    t.add_constant(Constant("binder"))
    t.add_constant(Constant("FMP"))
    return t


def _computation_theory() -> Theory:
    t = Theory(COMPUTATION, meta=None)
    t.add_constant(Constant("type"))
    t.add_constant(Constant("Any"))
    t.add_constant(Constant(
        "Function",
        notation=Notation((Delim("("), SeqArg(1, ","), Delim(")"),
                           Delim("=>"), Arg(2)), precedence=15)))
    t.add_constant(Constant("Lambda"))
    t.add_constant(Constant(
        "List", notation=Notation((Delim("List["), Arg(1), Delim("]")))))
    t.add_constant(Constant(
        "list", notation=Notation((Delim("List("), SeqArg(1, ","), Delim(")")))))
    t.add_constant(Constant("Term"))
    t.add_constant(Constant("Context"))
    t.add_constant(Constant("Integer"))
    t.add_constant(Constant("Double"))
    t.add_constant(Constant("Boolean"))
    t.add_constant(Constant("String"))
    return t


# ---------------------------------------------------------------------------


class TheoryGraph:
    """One writer during the load phase, many readers afterwards."""

    def __init__(self):
        self.modules: dict[ModuleRef, object] = {}
        self.aliases: dict[str, ModuleRef] = {}
        self.add(_openmath_theory())
        self.add(_computation_theory())

    # -- registration -------------------------------------------------------

    def add(self, module):
        if module.name in self.modules:
            raise DuplicateModuleError(f"module {module.name} already loaded")
        self.modules[module.name] = module
        return module

    def add_alias(self, name: str, target: ModuleRef):
        self.aliases[name] = target

    # -- resolution ----------------------------------------------------------

    def resolve(self, ref: str, default_base: str | None = None) -> ModuleRef:
        """Resolve ``base?module`` or a bare module name against the graph."""
        ref = ref.strip()
        if "?" in ref:
            base, module = ref.rsplit("?", 1)
            mref = ModuleRef(base, module)
            if mref not in self.modules:
                raise UnresolvedModuleError(f"unknown module {mref}")
            return mref
        if default_base is not None:
            mref = ModuleRef(default_base, ref)
            if mref in self.modules:
                return mref
        if ref in self.aliases:
            return self.aliases[ref]
        hits = [m for m in self.modules if m.module == ref]
        if len(hits) == 1:
            return hits[0]
        if not hits:
            raise UnresolvedModuleError(f"unknown module {ref!r}")
        raise UnresolvedModuleError(
            f"ambiguous module {ref!r}: " + ", ".join(str(h) for h in hits))

    def theory(self, ref: ModuleRef) -> Theory:
        m = self.modules.get(ref)
        if m is None:
            raise UnresolvedModuleError(f"unknown module {ref}")
        if not isinstance(m, Theory):
            raise UnresolvedModuleError(f"{ref} is a view, not a theory")
        return m

    def view(self, ref: ModuleRef) -> View:
        m = self.modules.get(ref)
        if m is None:
            raise UnresolvedModuleError(f"unknown module {ref}")
        if not isinstance(m, View):
            raise UnresolvedModuleError(f"{ref} is a theory, not a view")
        return m

    def theories(self):
        return [m for m in self.modules.values() if isinstance(m, Theory)]

    def views(self):
        return [m for m in self.modules.values() if isinstance(m, View)]

    # -- flattening ----------------------------------------------------------

    def flatten(self, ref: ModuleRef) -> list[tuple[GlobalName, Constant]]:
        """Depth-first include expansion; a repeated include is a no-op."""
        out: list[tuple[GlobalName, Constant]] = []
        seen: set[ModuleRef] = set()
        stack: list[ModuleRef] = []

        def go(r: ModuleRef):
            if r in stack:
                cycle = " -> ".join(str(s) for s in stack + [r])
                raise IncludeCycleError(f"include cycle: {cycle}")
            if r in seen:
                return
            seen.add(r)
            stack.append(r)
            t = self.theory(r)
            for d in t.declarations:
                if isinstance(d, Include):
                    go(d.target)
                else:
                    out.append((r.name(d.name), d))
            stack.pop()

        go(ref)
        return out

    def meta_chain(self, ref: ModuleRef) -> list[ModuleRef]:
        chain = []
        meta = self.theory(ref).meta
        while meta is not None:
            if meta in chain:
                break
            chain.append(meta)
            meta = self.theory(meta).meta
        return chain

    def lookup(self, g: GlobalName) -> Constant | None:
        m = self.modules.get(g.module_ref)
        if isinstance(m, Theory):
            return m.constant(g.name)
        return None

    # -- scopes ---------------------------------------------------------------

    def scope_entries(self, ref: ModuleRef) -> list[tuple[GlobalName, Constant]]:
        """Flattened constants of ``ref`` plus its meta-theory chain."""
        out = list(self.flatten(ref))
        seen = {g for g, _ in out}
        for meta in self.meta_chain(ref):
            for g, c in self.flatten(meta):
                if g not in seen:
                    seen.add(g)
                    out.append((g, c))
        return out

    def scope_for(self, refs) -> ParseScope:
        """A parse scope over one theory or several (in order)."""
        if isinstance(refs, ModuleRef):
            refs = [refs]
        entries = []
        seen = set()
        for r in refs:
            for g, c in self.scope_entries(r):
                if g not in seen:
                    seen.add(g)
                    entries.append(ScopeEntry(g, c.notation))
        return ParseScope(entries)

    # -- views ----------------------------------------------------------------

    def resolve_assignment(self, vref: ModuleRef, g: GlobalName,
                           _seen: frozenset = frozenset()) \
            -> tuple[ModuleRef, Assignment] | None:
        """Find the assignment for ``g``: local statements first, then
        included views in order.  Returns the providing view as well."""
        if vref in _seen:
            return None
        v = self.view(vref)
        domain_names = {h for h, _ in self.flatten(v.domain)}
        if g in domain_names:
            a = v.assignment(g.name)
            if a is not None:
                return (vref, a)
        for inc in v.includes():
            hit = self.resolve_assignment(inc.target, g, _seen | {vref})
            if hit is not None:
                return hit
        return None

    def check_view(self, vref: ModuleRef) -> list[GlobalName]:
        """Names of definiens-less domain constants without a real assignment.

        An escaped assignment whose body is empty is a stub, not an
        assignment.
        """
        v = self.view(vref)
        missing = []
        for g, c in self.flatten(v.domain):
            if c.definiens is not None:
                continue
            hit = self.resolve_assignment(vref, g)
            if hit is None or snippet_is_stub(hit[1].target):
                missing.append(g)
        return missing

    def apply_morphism(self, vref: ModuleRef, t: Term, _depth: int = 0) -> Term:
        """Homomorphic replacement of constants by their view assignments.

        Constants the view does not assign fall back to their definiens
        (translated recursively); anything else is an error.
        """
        if _depth > 100:
            raise MorphismError("definiens expansion does not terminate")

        def go(t: Term) -> Term:
            if isinstance(t, Const):
                hit = self.resolve_assignment(vref, t.head)
                if hit is not None:
                    return hit[1].target
                c = self.lookup(t.head)
                if c is not None and c.definiens is not None:
                    return self.apply_morphism(vref, c.definiens, _depth + 1)
                raise MorphismError(
                    f"no assignment for {t.head} in view {vref}")
            if isinstance(t, App):
                return App(go(t.head), tuple(go(a) for a in t.args))
            if isinstance(t, Bind):
                return Bind(go(t.binder), t.context, go(t.scope))
            return t

        return go(t)

    def pushout(self, vref: ModuleRef, tref: ModuleRef) -> Theory:
        """The canonical translation of ``tref`` along ``vref``.

        Requires the theory's meta-theory to equal the view's domain.  The
        result declares the flattened constants under the new module name,
        with types and definientia translated; constants of the theory itself
        are fixed (they name the result's own constants).
        """
        v = self.view(vref)
        t = self.theory(tref)
        if t.meta != v.domain:
            raise MorphismError(
                f"pushout needs meta-theory {v.domain}, got {t.meta}")
        flat = self.flatten(tref)
        new_ref = ModuleRef(tref.base, f"{v.name.module}_{tref.module}")
        fixed = {g: Const(new_ref.name(c.name)) for g, c in flat}

        def translate(term: Term | None) -> Term | None:
            if term is None:
                return None

            def go(x: Term) -> Term:
                if isinstance(x, Const):
                    if x.head in fixed:
                        return fixed[x.head]
                    hit = self.resolve_assignment(vref, x.head)
                    if hit is not None:
                        return hit[1].target
                    raise MorphismError(
                        f"no assignment for {x.head} in view {vref}")
                if isinstance(x, App):
                    return App(go(x.head), tuple(go(a) for a in x.args))
                if isinstance(x, Bind):
                    return Bind(go(x.binder), x.context, go(x.scope))
                return x

            return go(term)

        out = Theory(new_ref, meta=v.codomain)
        for g, c in flat:
            out.add_constant(Constant(
                c.name, type=translate(c.type), definiens=translate(c.definiens),
                notation=c.notation))
        return out
