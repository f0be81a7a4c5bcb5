"""Biform theory graphs with an exhaustive rewriting engine.

Specification theories (OpenMath-style content dictionaries) and native rule
implementations share one module system; the universal machine evaluates
terms by exhaustively applying the rules of all loaded realizations, exposed
through a CLI (``um``) and an HTTP service.
"""

from .machine import Rule, RuleBase, SimplifyBudget, SimplifyResult, simplify
from .notation import Notation, ParseScope, parse_notation, parse_term, render_term
from .omxml import decode_xml, encode_xml
from .sts import BINDER, Binder, Fixed, Flexible, arity_of, well_formed_type
from .terms import (App, Bind, Const, FloatLit, Foreign, GlobalName, IntLit,
                    ModuleRef, StrLit, Term, Var, app, free_vars, substitute)

__version__ = "0.1.0"

__all__ = [
    "App", "BINDER", "Bind", "Binder", "Const", "Fixed", "Flexible",
    "FloatLit", "Foreign", "GlobalName", "IntLit", "ModuleRef", "Notation",
    "ParseScope", "Rule", "RuleBase", "SimplifyBudget", "SimplifyResult",
    "StrLit", "Term", "Var", "app", "arity_of", "decode_xml", "encode_xml",
    "free_vars", "parse_notation", "parse_term", "render_term", "simplify",
    "substitute", "well_formed_type",
]
