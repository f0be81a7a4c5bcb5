"""Line-oriented surface syntax for modules (``.mmt`` files).

::

    document <base-uri>
    theory <Name> [: <Ref>]
      include <Ref>
      constant <name> [: <expr>] [= <expr> | = "<escaped>"] [# <notation>]
    view <Name> : <Ref> -> <Ref>
      include <ViewRef>
      constant <name> = <expr> | = [(<param>: <TypeName>, ...)] "<escaped>"
    alias <name> = <Ref>

``<Ref>`` is a bare module name (resolved in-document, then against loaded
documents) or a full ``base?module`` URI.  Escaped bodies are double-quoted
with ``\\"`` and ``\\\\`` escapes and may span lines; their byte spans are
recorded so build processes can splice edits back in place.  Lines starting
with ``//`` are comments.
"""

from __future__ import annotations

import re

from .graph import (CMP_LAMBDA, Assignment, Constant, Include, SourcePos,
                    Theory, TheoryGraph, View, ViewInclude)
from .notation import ParseScope, ScopeEntry, parse_notation, parse_term
from .terms import Bind, Const, Foreign, ModuleRef, Term


class SurfaceError(ValueError):
    def __init__(self, message: str, file: str, line: int, col: int = 0):
        super().__init__(f"{file}:{line}:{col}: {message}")
        self.file, self.line, self.col = file, line, col


_DEFAULT_BASE = "um:/local"

_THEORY_RE = re.compile(r"^theory\s+(\S+)\s*(?::\s*(.+?)\s*)?$")
_VIEW_RE = re.compile(r"^view\s+(\S+)\s*:\s*(.+?)\s*->\s*(.+?)\s*$")
_ALIAS_RE = re.compile(r"^alias\s+(\S+)\s*=\s*(.+?)\s*$")
_PARAMS_RE = re.compile(r"^\(([^()]*)\)\s*\"", re.S)


def _logical_lines(text: str):
    """Yield (absolute_offset, line_number, content); a line with an open
    quoted literal extends over following physical lines until it closes."""
    offsets = []
    pos = 0
    for ln in text.splitlines(keepends=True):
        offsets.append(pos)
        pos += len(ln)
    lines = text.splitlines(keepends=True)
    i = 0
    while i < len(lines):
        start = offsets[i]
        lineno = i + 1
        chunk = lines[i]
        while _open_quote(chunk) and i + 1 < len(lines):
            i += 1
            chunk += lines[i]
        yield start, lineno, chunk.rstrip("\n")
        i += 1


def _open_quote(s: str) -> bool:
    in_str = False
    i = 0
    while i < len(s):
        c = s[i]
        if in_str and c == "\\":
            i += 2
            continue
        if c == '"':
            in_str = not in_str
        i += 1
    return in_str


def _scan_string(s: str, i: int, err) -> tuple[str, int]:
    """Read a quoted literal at ``s[i]``; returns (content, end_index)."""
    assert s[i] == '"'
    out = []
    j = i + 1
    while j < len(s):
        c = s[j]
        if c == "\\":
            if j + 1 >= len(s) or s[j + 1] not in ('"', "\\"):
                raise err("bad escape in escaped body", j)
            out.append(s[j + 1])
            j += 2
        elif c == '"':
            return "".join(out), j + 1
        else:
            out.append(c)
            j += 1
    raise err("unterminated escaped body", i)


def escape_body(content: str) -> str:
    return '"' + content.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _split_markers(s: str, err) -> dict:
    """Locate top-level ``:``, ``=`` and ``#`` outside quotes and brackets."""
    marks = {}
    depth = 0
    i = 0
    while i < len(s):
        c = s[i]
        if c == '"':
            _, i = _scan_string(s, i, err)
            continue
        if c in "([{":
            depth += 1
        elif c in ")]}":
            depth -= 1
        elif depth == 0 and c == "#" and "#" not in marks:
            marks["#"] = i
            break  # notation runs to end of line
        elif depth == 0 and c == "=" and "=" not in marks and "#" not in marks:
            # Not part of an operator like => or == inside an expression;
            # a definiens marker is a lone '='.
            prev = s[i - 1] if i > 0 else " "
            nxt = s[i + 1] if i + 1 < len(s) else " "
            if prev not in "<>=!" and nxt != "=":
                marks["="] = i
        elif depth == 0 and c == ":" and not marks:
            marks[":"] = i
        i += 1
    return marks


class _ModuleParser:
    def __init__(self, graph: TheoryGraph, text: str, filename: str):
        self.graph = graph
        self.text = text
        self.filename = filename
        self.base = _DEFAULT_BASE
        self.current: Theory | View | None = None
        self.added: list[ModuleRef] = []

    def error(self, message: str, line: int, col: int = 0) -> SurfaceError:
        return SurfaceError(message, self.filename, line, col)

    def parse(self) -> list[ModuleRef]:
        for start, lineno, raw in _logical_lines(self.text):
            line = raw.strip()
            if not line or line.startswith("//"):
                continue
            head = line.split(None, 1)[0]
            try:
                if head == "document":
                    self.base = line.split(None, 1)[1].strip()
                elif head == "theory":
                    self._theory_header(line, lineno)
                elif head == "view":
                    self._view_header(line, lineno)
                elif head == "alias":
                    self._alias(line, lineno)
                elif head == "include":
                    self._include(line, lineno)
                elif head == "constant":
                    self._constant(raw, start, lineno)
                else:
                    raise self.error(f"unknown statement {head!r}", lineno)
            except SurfaceError:
                raise
            except Exception as e:
                raise self.error(str(e), lineno) from e
        return self.added

    # -- headers ---------------------------------------------------------

    def _theory_header(self, line: str, lineno: int):
        m = _THEORY_RE.match(line)
        if not m:
            raise self.error("bad theory header", lineno)
        name, meta = m.group(1), m.group(2)
        ref = ModuleRef(self.base, name)
        meta_ref = self.graph.resolve(meta, self.base) if meta else None
        theory = Theory(ref, meta=meta_ref, pos=SourcePos(self.filename, lineno))
        self.graph.add(theory)
        self.added.append(ref)
        self.current = theory

    def _view_header(self, line: str, lineno: int):
        m = _VIEW_RE.match(line)
        if not m:
            raise self.error("bad view header", lineno)
        name, dom, cod = m.groups()
        ref = ModuleRef(self.base, name)
        view = View(ref, domain=self.graph.resolve(dom, self.base),
                    codomain=self.graph.resolve(cod, self.base),
                    pos=SourcePos(self.filename, lineno))
        self.graph.add(view)
        self.added.append(ref)
        self.current = view

    def _alias(self, line: str, lineno: int):
        m = _ALIAS_RE.match(line)
        if not m:
            raise self.error("bad alias", lineno)
        self.graph.add_alias(m.group(1), self.graph.resolve(m.group(2), self.base))

    def _include(self, line: str, lineno: int):
        target = line.split(None, 1)[1].strip()
        if isinstance(self.current, Theory):
            self.current.declarations.append(Include(
                self.graph.resolve(target, self.base),
                pos=SourcePos(self.filename, lineno)))
        elif isinstance(self.current, View):
            self.current.statements.append(ViewInclude(
                self.graph.resolve(target, self.base),
                pos=SourcePos(self.filename, lineno)))
        else:
            raise self.error("include outside a module", lineno)

    # -- constants ---------------------------------------------------------

    def _scope_for_theory(self, theory: Theory) -> ParseScope:
        entries = []
        seen = set()

        def push(g, c):
            if g not in seen:
                seen.add(g)
                entries.append(ScopeEntry(g, c.notation))

        for c in theory.constants():
            push(theory.name.name(c.name), c)
        for inc in theory.includes():
            for g, c in self.graph.flatten(inc.target):
                push(g, c)
        meta = theory.meta
        while meta is not None:
            for g, c in self.graph.flatten(meta):
                push(g, c)
            meta = self.graph.theory(meta).meta
        return ParseScope(entries)

    def _constant(self, raw: str, start: int, lineno: int):
        line = raw.strip()
        indent = len(raw) - len(raw.lstrip())
        rest = line.split(None, 1)
        if len(rest) < 2:
            raise self.error("constant needs a name", lineno)
        body = rest[1]
        body_off = start + indent + (len(line) - len(body))

        def err(msg, local_i):
            return self.error(msg, lineno + raw[:local_i].count("\n"))

        marks = _split_markers(body, lambda m, i: err(m, i))
        name_end = min(marks.values()) if marks else len(body)
        name = body[:name_end].strip()
        if not name:
            raise self.error("constant needs a name", lineno)

        seg_type = seg_def = seg_not = None
        if ":" in marks:
            end = min((v for k, v in marks.items() if k != ":"), default=len(body))
            seg_type = (marks[":"] + 1, end)
        if "=" in marks:
            end = marks.get("#", len(body))
            seg_def = (marks["="] + 1, end)
        if "#" in marks:
            seg_not = (marks["#"] + 1, len(body))

        if isinstance(self.current, Theory):
            self._theory_constant(name, body, body_off, lineno,
                                  seg_type, seg_def, seg_not)
        elif isinstance(self.current, View):
            if seg_type or seg_not or not seg_def:
                raise self.error("a view constant takes exactly '= <body>'",
                                 lineno)
            self._view_constant(name, body, body_off, lineno, seg_def)
        else:
            raise self.error("constant outside a module", lineno)

    def _theory_constant(self, name, body, body_off, lineno,
                         seg_type, seg_def, seg_not):
        theory = self.current
        scope = self._scope_for_theory(theory)
        ctype = cdef = notation = None
        if seg_type:
            ctype = parse_term(body[seg_type[0]:seg_type[1]].strip(), scope)
        if seg_def:
            text = body[seg_def[0]:seg_def[1]].strip()
            if text.startswith('"'):
                content, _ = _scan_string(text, 0, lambda m, i: self.error(m, lineno))
                cdef = Foreign("native", content)
            else:
                cdef = parse_term(text, scope)
        if seg_not:
            notation = parse_notation(body[seg_not[0]:seg_not[1]].strip())
        theory.add_constant(Constant(name, type=ctype, definiens=cdef,
                                     notation=notation,
                                     pos=SourcePos(self.filename, lineno)))

    def _view_constant(self, name, body, body_off, lineno, seg_def):
        view = self.current
        declared = {c.name for _, c in self.graph.flatten(view.domain)}
        if name not in declared:
            raise self.error(
                f"view {view.name.module} assigns {name!r}, which is not "
                f"declared in {view.domain}", lineno)
        rhs = body[seg_def[0]:seg_def[1]]
        stripped = rhs.lstrip()
        lead = seg_def[0] + (len(rhs) - len(stripped))
        params: list[str] | None = None
        quote_local: int | None = None
        m = _PARAMS_RE.match(stripped)
        if m:
            params = []
            plist = m.group(1).strip()
            if plist:
                for p in plist.split(","):
                    pname = p.split(":", 1)[0].strip()
                    if not pname:
                        raise self.error("bad parameter list", lineno)
                    params.append(pname)
            quote_local = lead + m.end() - 1
        elif stripped.startswith('"'):
            quote_local = lead
        if quote_local is not None:
            content, end_local = _scan_string(
                body, quote_local, lambda m_, i: self.error(m_, lineno))
            target: Term = Foreign("native", content)
            if params:
                target = Bind(Const(CMP_LAMBDA), tuple(params), target)
            span = (self.filename, body_off + quote_local, body_off + end_local)
            view.add_assignment(Assignment(
                name, target, snippet_span=span,
                pos=SourcePos(self.filename, lineno)))
        else:
            scope = self.graph.scope_for(view.codomain)
            target = parse_term(stripped.strip(), scope)
            view.add_assignment(Assignment(
                name, target, pos=SourcePos(self.filename, lineno)))


def parse_modules(graph: TheoryGraph, text: str, filename: str = "<input>") \
        -> list[ModuleRef]:
    """Parse surface-syntax modules into the graph; returns the new refs."""
    return _ModuleParser(graph, text, filename).parse()
