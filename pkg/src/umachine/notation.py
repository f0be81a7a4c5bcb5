"""Notation-driven parsing and rendering of object-level expressions.

A notation is a token sequence of delimiters, argument slots, one optional
sequence-argument slot, and (for binders) a bound-variable-list slot, plus a
precedence.  The same notations drive both the operator-precedence parser and
the renderer, so ``parse_term(render_term(t)) == t`` for terms over in-scope
constants.

Grammar facts baked in here:
  * higher precedence binds tighter; equal-precedence infixes associate left;
  * binder notations associate right and extend maximally to the right;
  * parentheses group; unknown identifiers parse as variables; digit runs
    parse as integer literals (with ``.``/exponent: float literals);
  * delimiters match greedily longest-first; ``...`` and ``…`` are synonyms;
  * constants without a notation render as ``module?name`` with call-style
    arguments, which the parser accepts back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import (App, Bind, Const, FloatLit, Foreign, GlobalName, IntLit,
                    StrLit, Term, Var)


class NotationError(ValueError):
    """A malformed notation declaration."""


class SyntaxErrorAt(ValueError):
    """A parse error carrying the offending position (0-based offset)."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class AmbiguityError(ValueError):
    """Two notations in one scope would match the same token identically."""


@dataclass(frozen=True)
class Delim:
    text: str


@dataclass(frozen=True)
class Arg:
    index: int


@dataclass(frozen=True)
class SeqArg:
    index: int
    separator: str


@dataclass(frozen=True)
class VarList:
    separator: str = ","


@dataclass(frozen=True)
class Notation:
    tokens: tuple
    precedence: int = 0

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.tokens:
            raise NotationError("notation needs at least one token")
        seqs = [t for t in self.tokens if isinstance(t, SeqArg)]
        if len(seqs) > 1:
            raise NotationError("at most one sequence-argument slot is allowed")
        varlists = [t for t in self.tokens if isinstance(t, VarList)]
        if len(varlists) > 1:
            raise NotationError("at most one bound-variable slot is allowed")
        indices = [t.index for t in self.tokens if isinstance(t, (Arg, SeqArg))]
        if varlists:
            if seqs or len(indices) != 1:
                raise NotationError("a binder notation takes a variable list "
                                    "and exactly one scope slot")
            indices = [1] + indices  # the variable list occupies slot 1
        if len(set(indices)) != len(indices):
            raise NotationError("duplicate argument index")
        if sorted(indices) != list(range(1, len(indices) + 1)):
            raise NotationError("argument indices must be contiguous from 1")

    # -- shape helpers -----------------------------------------------------
    @property
    def is_binder(self) -> bool:
        return any(isinstance(t, VarList) for t in self.tokens)

    @property
    def is_closed(self) -> bool:
        return (isinstance(self.tokens[0], Delim)
                and isinstance(self.tokens[-1], Delim))

    @property
    def is_prefix(self) -> bool:
        return (isinstance(self.tokens[0], Delim) and not self.is_closed
                and not self.is_binder)

    @property
    def is_infix(self) -> bool:
        return isinstance(self.tokens[0], (Arg, SeqArg))

    @property
    def slot_count(self) -> int:
        return sum(1 for t in self.tokens if isinstance(t, (Arg, SeqArg)))

    @property
    def seq_slot(self) -> SeqArg | None:
        for t in self.tokens:
            if isinstance(t, SeqArg):
                return t
        return None

    def trigger_tokens(self) -> list:
        """Delimiter texts on which the parser dispatches to this notation."""
        if self.is_binder:
            after = next(t for t in self.tokens
                         if isinstance(t, Delim) or isinstance(t, Arg))
            if not isinstance(after, Delim):
                raise NotationError("binder notation needs a delimiter after "
                                    "the variable list")
            return [after.text]
        first = self.tokens[0]
        if isinstance(first, Delim):
            return [first.text]
        triggers = []
        if isinstance(first, SeqArg):
            triggers.append(first.separator)
        if len(self.tokens) > 1 and isinstance(self.tokens[1], Delim):
            triggers.append(self.tokens[1].text)
        if not triggers:
            raise NotationError("infix notation needs a separator or delimiter")
        return triggers


_SEQ_TOKEN = re.compile(r"^(\d+)(.+?)(\.\.\.|…)$")
_ARG_TOKEN = re.compile(r"^\d+$")


def parse_notation(src: str) -> Notation:
    """Parse a whitespace-separated notation declaration.

    A number denotes an argument slot; a number glued to a delimiter and
    ``...``/``…`` denotes a sequence slot with that separator (``1+...``);
    ``V`` denotes the bound-variable list of a binder notation; a trailing
    ``prec <n>`` sets the precedence; everything else is a delimiter.
    """
    words = src.split()
    precedence = 0
    if len(words) >= 2 and words[-2] == "prec":
        try:
            precedence = int(words[-1])
        except ValueError:
            raise NotationError(f"bad precedence: {words[-1]!r}")
        words = words[:-2]
    tokens = []
    for w in words:
        m = _SEQ_TOKEN.match(w)
        if m:
            tokens.append(SeqArg(int(m.group(1)), m.group(2)))
        elif _ARG_TOKEN.match(w):
            tokens.append(Arg(int(w)))
        elif w == "V":
            tokens.append(VarList())
        else:
            tokens.append(Delim(w))
    return Notation(tuple(tokens), precedence)


# ---------------------------------------------------------------------------
# Parse scope


@dataclass(frozen=True)
class ScopeEntry:
    name: GlobalName
    notation: Notation | None


_STRUCTURAL = ("(", ")", ",", "[", "]", "?")


class ParseScope:
    """In-scope constants with their notations, indexed for the parser."""

    def __init__(self, entries):
        self.entries = list(entries)
        self.by_local: dict[str, list[GlobalName]] = {}
        self.by_qualified: dict[str, GlobalName] = {}
        self.notations: dict[GlobalName, Notation] = {}
        self.nud: dict[str, tuple[GlobalName, Notation]] = {}
        self.led: dict[str, tuple[GlobalName, Notation]] = {}
        self.binder_delims: dict[str, tuple[GlobalName, Notation]] = {}
        self.binder_seps: set[str] = set()
        delims: set[str] = set(_STRUCTURAL)
        seen_triggers: dict[tuple[str, str, int], GlobalName] = {}
        for e in self.entries:
            self.by_local.setdefault(e.name.name, [])
            if e.name not in self.by_local[e.name.name]:
                self.by_local[e.name.name].append(e.name)
            self.by_qualified.setdefault(e.name.local, e.name)
            n = e.notation
            if n is None:
                continue
            self.notations.setdefault(e.name, n)
            for tok in n.tokens:
                if isinstance(tok, Delim):
                    delims.add(tok.text)
                elif isinstance(tok, SeqArg):
                    delims.add(tok.separator)
                elif isinstance(tok, VarList):
                    delims.add(tok.separator)
            if n.is_binder:
                table = self.binder_delims
                self.binder_seps.add(next(t for t in n.tokens
                                          if isinstance(t, VarList)).separator)
            elif n.is_infix:
                table = self.led
            else:
                table = self.nud
            for trig in n.trigger_tokens():
                key = ("led" if table is self.led else "nud", trig, n.precedence)
                other = seen_triggers.get(key)
                if other is not None and other != e.name:
                    raise AmbiguityError(
                        f"notations of {other.local} and {e.name.local} both "
                        f"match {trig!r} at precedence {n.precedence}")
                seen_triggers[key] = e.name
                if trig not in table:
                    table[trig] = (e.name, n)
        self.delimiters = sorted(delims, key=len, reverse=True)

    def resolve(self, name: str) -> GlobalName | None:
        """Resolve a bare identifier to the first in-scope constant of that name."""
        hits = self.by_local.get(name)
        return hits[0] if hits else None

    def resolve_qualified(self, module: str, name: str) -> GlobalName | None:
        return self.by_qualified.get(f"{module}?{name}")

    def notation_for(self, g: GlobalName) -> Notation | None:
        return self.notations.get(g)


# ---------------------------------------------------------------------------
# Tokenizer


@dataclass
class _Tok:
    kind: str  # int | float | str | ident | sym | eof
    text: str
    pos: int
    value: object = None


_IDENT = re.compile(r"[^\W\d]\w*", re.UNICODE)
_NUMBER = re.compile(r"\d+(\.\d+)?([eE][+-]?\d+)?")


def _lex_string(src: str, i: int) -> tuple[str, int]:
    assert src[i] == '"'
    out = []
    j = i + 1
    while j < len(src):
        c = src[j]
        if c == "\\":
            if j + 1 >= len(src) or src[j + 1] not in ('"', "\\"):
                raise SyntaxErrorAt("bad escape in string literal", j)
            out.append(src[j + 1])
            j += 2
        elif c == '"':
            return "".join(out), j + 1
        else:
            out.append(c)
            j += 1
    raise SyntaxErrorAt("unterminated string literal", i)


def tokenize(src: str, scope: ParseScope) -> list[_Tok]:
    toks: list[_Tok] = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c == '"':
            value, j = _lex_string(src, i)
            toks.append(_Tok("str", src[i:j], i, value))
            i = j
            continue
        best_delim = ""
        for d in scope.delimiters:
            if src.startswith(d, i):
                best_delim = d
                break
        m = _IDENT.match(src, i)
        ident = m.group(0) if m else ""
        m = _NUMBER.match(src, i)
        number = m.group(0) if m else ""
        longest = max(len(best_delim), len(ident), len(number))
        if longest == 0:
            raise SyntaxErrorAt(f"stray character {c!r}", i)
        if len(number) == longest and len(number) > max(len(best_delim), len(ident)):
            kind = "int" if number.isdigit() else "float"
            value = int(number) if kind == "int" else float(number)
            toks.append(_Tok(kind, number, i, value))
        elif len(best_delim) == longest:
            toks.append(_Tok("sym", best_delim, i))
        else:
            toks.append(_Tok("ident", ident, i))
        i += longest
    toks.append(_Tok("eof", "", n))
    return toks


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, toks: list[_Tok], scope: ParseScope):
        self.toks = toks
        self.scope = scope
        self.i = 0

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.peek()
        if t.text != text or t.kind == "eof":
            raise SyntaxErrorAt(f"expected {text!r}", t.pos)
        return self.next()

    # -- grammar -----------------------------------------------------------

    def parse(self) -> Term:
        t = self.parse_expr(-1)
        tok = self.peek()
        if tok.kind != "eof":
            raise SyntaxErrorAt(f"unexpected {tok.text!r}", tok.pos)
        return t

    def parse_expr(self, min_prec: int) -> Term:
        left = self.nud()
        while True:
            tok = self.peek()
            if tok.kind != "sym" or tok.text not in self.scope.led:
                break
            g, notation = self.scope.led[tok.text]
            if notation.precedence <= min_prec:
                break
            left = self.parse_led(g, notation, left)
        return left

    def nud(self) -> Term:
        tok = self.peek()
        if tok.kind in ("int", "float"):
            self.next()
            return IntLit(tok.value) if tok.kind == "int" else FloatLit(tok.value)
        if tok.kind == "str":
            self.next()
            return StrLit(tok.value)
        if tok.text == "(":
            self.next()
            inner = self.parse_expr(-1)
            self.expect(")")
            return inner
        if tok.kind == "ident":
            if self.at_binder_head():
                return self.parse_binder()
            return self.parse_name()
        if tok.kind == "sym" and tok.text in self.scope.nud:
            g, notation = self.scope.nud[tok.text]
            return self.parse_nud_notation(g, notation)
        raise SyntaxErrorAt(f"unexpected {tok.text or 'end of input'!r}", tok.pos)

    def at_binder_head(self) -> bool:
        """Lookahead: ident (sep ident)* followed by a binder delimiter."""
        if not self.scope.binder_delims:
            return False
        j = self.i
        if self.toks[j].kind != "ident":
            return False
        j += 1
        while (self.toks[j].text in self.scope.binder_seps
               and self.toks[j].kind == "sym"
               and self.toks[j + 1].kind == "ident"):
            j += 2
        return (self.toks[j].kind == "sym"
                and self.toks[j].text in self.scope.binder_delims)

    def parse_binder(self) -> Term:
        names = [self.next().text]
        while True:
            tok = self.peek()
            if tok.kind == "sym" and tok.text in self.scope.binder_seps \
                    and self.peek(1).kind == "ident":
                self.next()
                names.append(self.next().text)
            else:
                break
        tok = self.peek()
        g, notation = self.scope.binder_delims[tok.text]
        self.next()
        if len(set(names)) != len(names):
            raise SyntaxErrorAt("bound variable names must be distinct", tok.pos)
        # Binders associate right and extend maximally to the right.
        scope_term = self.parse_expr(notation.precedence - 1)
        return Bind(Const(g), tuple(names), scope_term)

    def parse_name(self) -> Term:
        tok = self.next()
        name = tok.text
        if self.peek().text == "?" and self.peek(1).kind == "ident":
            self.next()
            const = self.next().text
            g = self.scope.resolve_qualified(name, const)
            if g is None:
                raise SyntaxErrorAt(f"unknown constant {name}?{const}", tok.pos)
            return self.maybe_call(Const(g))
        if name == "bind" and self.peek().text == "(":
            return self.parse_bind_form(tok)
        if name == "foreign" and self.peek().text == "(":
            return self.parse_foreign_form(tok)
        g = self.scope.resolve(name)
        if g is not None:
            return self.maybe_call(Const(g))
        return self.maybe_call(Var(name))

    def maybe_call(self, head: Term) -> Term:
        """Call-style application suffix: ``head(a, b, ...)``."""
        if self.peek().text != "(":
            return head
        self.next()
        if self.peek().text == ")":
            tok = self.peek()
            raise SyntaxErrorAt("an application needs at least one argument",
                                tok.pos)
        args = [self.parse_expr(-1)]
        while self.peek().text == ",":
            self.next()
            args.append(self.parse_expr(-1))
        self.expect(")")
        return App(head, tuple(args))

    def parse_bind_form(self, tok: _Tok) -> Term:
        """Fallback binder syntax: ``bind(binder, [x, y], scope)``."""
        self.expect("(")
        binder = self.parse_expr(-1)
        self.expect(",")
        self.expect("[")
        names = [self._expect_ident().text]
        while self.peek().text == ",":
            self.next()
            names.append(self._expect_ident().text)
        self.expect("]")
        self.expect(",")
        scope_term = self.parse_expr(-1)
        self.expect(")")
        return Bind(binder, tuple(names), scope_term)

    def parse_foreign_form(self, tok: _Tok) -> Term:
        """Fallback escaped-payload syntax: ``foreign("format", "content")``."""
        self.expect("(")
        fmt = self.peek()
        if fmt.kind != "str":
            raise SyntaxErrorAt("foreign() needs a quoted format", fmt.pos)
        self.next()
        self.expect(",")
        content = self.peek()
        if content.kind != "str":
            raise SyntaxErrorAt("foreign() needs quoted content", content.pos)
        self.next()
        self.expect(")")
        return Foreign(fmt.value, content.value)

    def _expect_ident(self) -> _Tok:
        t = self.peek()
        if t.kind != "ident":
            raise SyntaxErrorAt("expected a variable name", t.pos)
        return self.next()

    def parse_nud_notation(self, g: GlobalName, notation: Notation) -> Term:
        """Closed or prefix notation, starting at its leading delimiter."""
        first = self.peek()
        self.expect(notation.tokens[0].text)
        prec = -1 if notation.is_closed else notation.precedence
        slots: dict[int, object] = {}
        for k in range(1, len(notation.tokens)):
            tok = notation.tokens[k]
            if isinstance(tok, Delim):
                self.expect(tok.text)
            elif isinstance(tok, Arg):
                before = self.i
                operand = self.parse_expr(prec)
                # A bare numeral directly after a prefix "-" is a negative literal.
                if (notation.tokens[0].text == "-" and len(notation.tokens) == 2
                        and self.i == before + 1
                        and self.toks[before].kind in ("int", "float")):
                    return self._negate_literal(operand)
                slots[tok.index] = operand
            elif isinstance(tok, SeqArg):
                nxt = notation.tokens[k + 1] if k + 1 < len(notation.tokens) else None
                closer = nxt.text if isinstance(nxt, Delim) else None
                items = []
                if not (closer is not None and self.peek().text == closer):
                    items.append(self.parse_expr(prec))
                    while self.peek().text == tok.separator:
                        self.next()
                        items.append(self.parse_expr(prec))
                slots[tok.index] = items
        return self._assemble(g, notation, slots, first)

    @staticmethod
    def _negate_literal(operand: Term) -> Term:
        if isinstance(operand, IntLit):
            return IntLit(-operand.value)
        return FloatLit(-operand.value)

    def parse_led(self, g: GlobalName, notation: Notation, left: Term) -> Term:
        trigger = self.next()
        slots: dict[int, object] = {}
        first = notation.tokens[0]
        rest = list(notation.tokens[1:])
        if isinstance(first, SeqArg):
            items = [left]
            if trigger.text == first.separator:
                items.append(self.parse_expr(notation.precedence))
                while self.peek().text == first.separator:
                    self.next()
                    items.append(self.parse_expr(notation.precedence))
                if rest and isinstance(rest[0], Delim):
                    self.expect(rest[0].text)
                    rest = rest[1:]
            else:
                # The separator never appeared: a length-one sequence followed
                # by the notation's next delimiter (already consumed).
                assert rest and isinstance(rest[0], Delim) \
                    and rest[0].text == trigger.text
                rest = rest[1:]
            slots[first.index] = items
        else:
            slots[first.index] = left
            assert rest and isinstance(rest[0], Delim) \
                and rest[0].text == trigger.text
            rest = rest[1:]
        for k, tok in enumerate(rest):
            if isinstance(tok, Delim):
                self.expect(tok.text)
            elif isinstance(tok, Arg):
                slots[tok.index] = self.parse_expr(notation.precedence)
            elif isinstance(tok, SeqArg):
                items = [self.parse_expr(notation.precedence)]
                while self.peek().text == tok.separator:
                    self.next()
                    items.append(self.parse_expr(notation.precedence))
                slots[tok.index] = items
        return self._assemble(g, notation, slots, trigger)

    def _assemble(self, g: GlobalName, notation: Notation,
                  slots: dict[int, object], at: _Tok) -> Term:
        if notation.slot_count == 0:
            return Const(g)  # a pure-delimiter atom
        args: list[Term] = []
        for idx in sorted(slots):
            v = slots[idx]
            if isinstance(v, list):
                args.extend(v)
            else:
                args.append(v)
        if not args:
            # An empty element sequence: ``{}`` denotes the empty set.
            empty = self.scope.resolve("emptyset")
            if empty is not None:
                return Const(empty)
            raise SyntaxErrorAt("an application needs at least one argument",
                                at.pos)
        return App(Const(g), tuple(args))


def parse_term(src: str, scope: ParseScope) -> Term:
    """Parse ``src`` against the notations and constants in ``scope``."""
    return _Parser(tokenize(src, scope), scope).parse()


# ---------------------------------------------------------------------------
# Renderer


def _escape_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _wordlike(s: str) -> bool:
    return bool(s) and (s[0].isalnum() or s[0] == "_")


def _word_boundary_glue(parts: list[str]) -> str:
    out = []
    for p in parts:
        if not p:
            continue
        if out and (out[-1][-1].isalnum() or out[-1][-1] == "_") \
                and (p[0].isalnum() or p[0] == "_"):
            out.append(" ")
        out.append(p)
    return "".join(out).strip()


def render_term(t: Term, scope: ParseScope) -> str:
    """Render ``t`` so that it re-parses to an equal term in the same scope.

    Constants without a notation fall back to qualified prefix form.
    Parentheses are inserted whenever a child's precedence is less than or
    equal to its parent's.
    """
    text, _ = _render(t, scope)
    return text


def _render(t: Term, scope: ParseScope) -> tuple[str, int | None]:
    if isinstance(t, IntLit):
        return str(t.value), None
    if isinstance(t, FloatLit):
        return repr(t.value), None
    if isinstance(t, StrLit):
        return _escape_str(t.value), None
    if isinstance(t, Var):
        return t.name, None
    if isinstance(t, Foreign):
        return f"foreign({_escape_str(t.format)}, {_escape_str(t.content)})", None
    if isinstance(t, Const):
        n = scope.notation_for(t.head)
        if n is not None and n.is_closed and n.slot_count == 0:
            return _word_boundary_glue([tok.text for tok in n.tokens]), None
        return _qualified(t.head, scope), None
    if isinstance(t, App):
        return _render_app(t, scope)
    if isinstance(t, Bind):
        return _render_bind(t, scope)
    raise TypeError(f"not a term: {t!r}")


def _qualified(g: GlobalName, scope: ParseScope) -> str:
    return f"{g.module}?{g.name}"


def _child(t: Term, scope: ParseScope, parent_prec: int | None,
           force_parens: bool = False, shield_binder: bool = False) -> str:
    text, prec = _render(t, scope)
    if shield_binder and isinstance(t, Bind):
        # Binders extend maximally rightward, so in separator-delimited
        # contexts they must be parenthesized to re-parse identically.
        force_parens = True
    if force_parens or (prec is not None and parent_prec is not None
                        and prec <= parent_prec):
        return f"({text})"
    return text


def _render_app(t: App, scope: ParseScope) -> tuple[str, int | None]:
    head = t.head
    if isinstance(head, Const):
        n = scope.notation_for(head.head)
        if n is not None and not n.is_binder and _notation_fits(n, len(t.args)):
            return _render_with_notation(t, n, scope)
    # Fallback: qualified prefix/call form.
    head_text, _ = _render(head, scope)
    if not isinstance(head, (Const, Var)):
        head_text = f"({head_text})"
    args = ", ".join(_child(a, scope, None, shield_binder=True) for a in t.args)
    return f"{head_text}({args})", None


def _notation_fits(n: Notation, argc: int) -> bool:
    if n.seq_slot is not None:
        # A bare separator sequence needs two elements, or the separator
        # never appears and the rendering loses the head.
        min_seq = 2 if len(n.tokens) == 1 else 1
        return argc >= n.slot_count - 1 + min_seq
    return argc == n.slot_count


def _render_with_notation(t: App, n: Notation, scope: ParseScope) \
        -> tuple[str, int | None]:
    args = list(t.args)
    slot_values: dict[int, object] = {}
    fixed = n.slot_count - (1 if n.seq_slot is not None else 0)
    seq_len = len(args) - fixed
    pos = 0
    for idx in range(1, n.slot_count + 1):
        if n.seq_slot is not None and idx == n.seq_slot.index:
            slot_values[idx] = args[pos:pos + seq_len]
            pos += seq_len
        else:
            slot_values[idx] = args[pos]
            pos += 1
    parent_prec = None if n.is_closed else n.precedence
    shield = n.is_closed  # separator-delimited interior
    parts = []
    for tok in n.tokens:
        if isinstance(tok, Delim):
            parts.append(f" {tok.text} " if _wordlike(tok.text) else tok.text)
        elif isinstance(tok, Arg):
            force = (n.is_prefix
                     and isinstance(slot_values[tok.index], (IntLit, FloatLit)))
            parts.append(_child(slot_values[tok.index], scope, parent_prec,
                                force_parens=force, shield_binder=shield))
        elif isinstance(tok, SeqArg):
            parts.append(tok.separator.join(
                _child(a, scope, parent_prec, shield_binder=True)
                for a in slot_values[tok.index]))
    return _word_boundary_glue(parts), None if n.is_closed else n.precedence


def _render_bind(t: Bind, scope: ParseScope) -> tuple[str, int | None]:
    n = None
    if isinstance(t.binder, Const):
        n = scope.notation_for(t.binder.head)
    if n is None or not n.is_binder:
        binder_text, _ = _render(t.binder, scope)
        names = ", ".join(t.context)
        scope_text, _ = _render(t.scope, scope)
        return f"bind({binder_text}, [{names}], {scope_text})", None
    varlist = next(tok for tok in n.tokens if isinstance(tok, VarList))
    parts = []
    for tok in n.tokens:
        if isinstance(tok, VarList):
            parts.append(varlist.separator.join(t.context))
        elif isinstance(tok, Delim):
            parts.append(f" {tok.text} " if _wordlike(tok.text) else tok.text)
        elif isinstance(tok, Arg):
            parts.append(_child(t.scope, scope, n.precedence - 1))
    return _word_boundary_glue(parts), n.precedence
