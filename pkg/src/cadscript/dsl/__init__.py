"""The command language: lexing, parsing, validation, printing."""

from .ast import (
    At,
    Bake,
    BooleanOp,
    CreateBox,
    CreateGrid,
    CreateHypar,
    CreateSphere,
    Delete,
    Move,
    OnEdge,
    OnRandomEdge,
    Placement,
    Program,
    Span,
    Statement,
    SunStudy,
    Undo,
)
from .errors import DslError, LexError, ParseError, SemanticError, ValidationError
from .grammar import GRAMMAR_TEXT
from .lexer import Token, tokenize
from .parser import parse
from .printer import pretty_print
from .validator import (
    ObjectSummary,
    SceneContext,
    ValidatedProgram,
    check_program,
    validate,
)

__all__ = [
    "At",
    "Bake",
    "BooleanOp",
    "CreateBox",
    "CreateGrid",
    "CreateHypar",
    "CreateSphere",
    "Delete",
    "DslError",
    "GRAMMAR_TEXT",
    "LexError",
    "Move",
    "ObjectSummary",
    "OnEdge",
    "OnRandomEdge",
    "ParseError",
    "Placement",
    "Program",
    "SceneContext",
    "SemanticError",
    "Span",
    "Statement",
    "SunStudy",
    "Token",
    "Undo",
    "ValidatedProgram",
    "ValidationError",
    "check_program",
    "parse",
    "pretty_print",
    "tokenize",
    "validate",
]
