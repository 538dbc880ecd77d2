"""Line-oriented text format for knowledge bases.

Grammar (one declaration per line; `#` starts a comment at any token
boundary; blank lines are ignored):

    var_decl    := "var" IDENT "{" IDENT ("," IDENT)* "}"
    constr_decl := "constraint" IDENT ":" expr
    expr        := or_expr ( "->" expr )?          right-assoc, lowest
    or_expr     := and_expr ( "|" and_expr )*
    and_expr    := unary ( "&" unary )*
    unary       := "!" unary | atom | "(" expr ")"
    atom        := IDENT ("=" | "!=") IDENT

Identifiers start with a letter, digit, or underscore and may continue with
those, hyphens, or `#` (so generated labels like `c1#2` survive a
round-trip); a hyphen immediately followed by `>` ends the identifier so
`a->b` lexes as an implication.  Declarations may appear in any order;
parsing collects every error it can find before giving up.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .model import (
    And,
    Atom,
    CmpOp,
    Constraint,
    Expr,
    Implies,
    KnowledgeBase,
    Not,
    Or,
    Variable,
)


class ErrorKind(Enum):
    LEX = "lex"
    SYNTAX = "syntax"
    UNKNOWN_VARIABLE = "unknown-variable"
    UNKNOWN_VALUE = "unknown-value"
    DUPLICATE_NAME = "duplicate-name"


@dataclass(frozen=True)
class ParseError:
    """One diagnostic, pointing at the offending source position (1-based)."""

    line: int
    column: int
    message: str
    kind: ErrorKind

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.kind.value}: {self.message}"


class KBParseError(Exception):
    """Parsing failed; carries every collected ParseError."""

    def __init__(self, errors: list[ParseError]):
        self.errors = list(errors)
        head = str(self.errors[0]) if self.errors else "unknown parse error"
        extra = f" (+{len(self.errors) - 1} more)" if len(self.errors) > 1 else ""
        super().__init__(head + extra)


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "eol", or the punctuation text itself
    text: str
    column: int


class _LineAbort(Exception):
    """Internal: stop parsing the current line after a syntax error."""


_IDENT = re.compile(r"[A-Za-z0-9_](?:[A-Za-z0-9_#]|-(?!>))*")
_PUNCT = ("->", "!=", "|", "&", "!", "(", ")", "{", "}", ",", ":", "=")


def _tokenize(text: str, lineno: int, errors: list[ParseError]) -> list[_Token] | None:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch in " \t\r":
            pos += 1
            continue
        if ch == "#":
            break  # comment runs to end of line
        match = _IDENT.match(text, pos)
        if match:
            tokens.append(_Token("ident", match.group(), pos + 1))
            pos = match.end()
            continue
        for punct in _PUNCT:
            if text.startswith(punct, pos):
                tokens.append(_Token(punct, punct, pos + 1))
                pos += len(punct)
                break
        else:
            errors.append(
                ParseError(lineno, pos + 1, f"unexpected character {ch!r}", ErrorKind.LEX)
            )
            return None
    tokens.append(_Token("eol", "", len(text) + 1))
    return tokens


class _LineParser:
    def __init__(
        self,
        tokens: list[_Token],
        lineno: int,
        domains: dict[str, tuple[str, ...]],
        errors: list[ParseError],
    ):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno
        self.domains = domains
        self.errors = errors
        self.semantic_ok = True

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eol":
            self.pos += 1
        return tok

    def accept(self, kind: str) -> _Token | None:
        if self.peek().kind == kind:
            return self.advance()
        return None

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            got = "end of line" if tok.kind == "eol" else repr(tok.text)
            self.fail(tok.column, f"expected {what}, got {got}")
        return self.advance()

    def fail(self, column: int, message: str) -> None:
        self.errors.append(ParseError(self.lineno, column, message, ErrorKind.SYNTAX))
        raise _LineAbort()

    def semantic_error(self, column: int, message: str, kind: ErrorKind) -> None:
        self.errors.append(ParseError(self.lineno, column, message, kind))
        self.semantic_ok = False

    # -- declarations ------------------------------------------------------

    def var_decl(self) -> Variable | None:
        name = self.expect("ident", "a variable name")
        self.expect("{", "'{'")
        values = [self.expect("ident", "a domain value")]
        while self.accept(","):
            values.append(self.expect("ident", "a domain value"))
        self.expect("}", "'}'")
        self.expect("eol", "end of line")
        seen: set[str] = set()
        for tok in values:
            if tok.text in seen:
                self.semantic_error(
                    tok.column,
                    f"duplicate value {tok.text!r} in domain of {name.text!r}",
                    ErrorKind.DUPLICATE_NAME,
                )
            seen.add(tok.text)
        if not self.semantic_ok:
            return None
        return Variable(name.text, tuple(tok.text for tok in values))

    def constraint_decl(self) -> tuple[_Token, Expr | None]:
        label = self.expect("ident", "a constraint label")
        self.expect(":", "':'")
        expr = self.expr()
        self.expect("eol", "end of line")
        return label, (expr if self.semantic_ok else None)

    # -- expressions -------------------------------------------------------

    def expr(self) -> Expr:
        left = self.or_expr()
        if self.accept("->"):
            return Implies(left, self.expr())
        return left

    def or_expr(self) -> Expr:
        items = [self.and_expr()]
        while self.accept("|"):
            items.append(self.and_expr())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def and_expr(self) -> Expr:
        items = [self.unary()]
        while self.accept("&"):
            items.append(self.unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unary(self) -> Expr:
        if self.accept("!"):
            return Not(self.unary())
        if self.accept("("):
            expr = self.expr()
            self.expect(")", "')'")
            return expr
        if self.peek().kind == "ident":
            return self.atom()
        tok = self.peek()
        got = "end of line" if tok.kind == "eol" else repr(tok.text)
        self.fail(tok.column, f"expected '!', '(' or an atom, got {got}")
        raise AssertionError("unreachable")

    def atom(self) -> Expr:
        name = self.expect("ident", "a variable name")
        if self.accept("="):
            op = CmpOp.EQ
        elif self.accept("!="):
            op = CmpOp.NEQ
        else:
            tok = self.peek()
            got = "end of line" if tok.kind == "eol" else repr(tok.text)
            self.fail(tok.column, f"expected '=' or '!=', got {got}")
        value = self.expect("ident", "a value")
        if name.text not in self.domains:
            self.semantic_error(
                name.column, f"unknown variable {name.text!r}", ErrorKind.UNKNOWN_VARIABLE
            )
        elif value.text not in self.domains[name.text]:
            self.semantic_error(
                value.column,
                f"value {value.text!r} is not in the domain of {name.text!r}",
                ErrorKind.UNKNOWN_VALUE,
            )
        return Atom(name.text, op, value.text)


def _parse_document(
    text: str, ambient: tuple[Variable, ...] | None
) -> tuple[list[Variable], list[Constraint], list[ParseError]]:
    """Shared two-pass driver.

    Pass one collects variable declarations (so constraints may reference
    variables declared later in the file); pass two parses constraints
    against the full variable table.  With `ambient` set, the document may
    not declare variables of its own and atoms resolve against the given
    list instead.
    """
    errors: list[ParseError] = []
    variables: list[Variable] = []
    var_names: set[str] = set()
    constraint_lines: list[tuple[int, list[_Token]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, lineno, errors)
        if tokens is None or tokens[0].kind == "eol":
            continue
        head = tokens[0]
        if head.kind == "ident" and head.text == "var":
            if ambient is not None:
                errors.append(
                    ParseError(
                        lineno,
                        head.column,
                        "variable declarations are not allowed in this file",
                        ErrorKind.SYNTAX,
                    )
                )
                continue
            parser = _LineParser(tokens, lineno, {}, errors)
            parser.pos = 1
            try:
                variable = parser.var_decl()
            except _LineAbort:
                continue
            if variable is None:
                continue
            if variable.name in var_names:
                errors.append(
                    ParseError(
                        lineno,
                        tokens[1].column,
                        f"duplicate variable {variable.name!r}",
                        ErrorKind.DUPLICATE_NAME,
                    )
                )
                continue
            var_names.add(variable.name)
            variables.append(variable)
        elif head.kind == "ident" and head.text == "constraint":
            constraint_lines.append((lineno, tokens))
        else:
            got = repr(head.text)
            errors.append(
                ParseError(
                    lineno,
                    head.column,
                    f"expected 'var' or 'constraint', got {got}",
                    ErrorKind.SYNTAX,
                )
            )

    table = ambient if ambient is not None else tuple(variables)
    domains = {v.name: v.domain for v in table}
    constraints: list[Constraint] = []
    labels: set[str] = set()
    for lineno, tokens in constraint_lines:
        parser = _LineParser(tokens, lineno, domains, errors)
        parser.pos = 1
        try:
            label, expr = parser.constraint_decl()
        except _LineAbort:
            continue
        if label.text in labels:
            errors.append(
                ParseError(
                    lineno,
                    label.column,
                    f"duplicate constraint label {label.text!r}",
                    ErrorKind.DUPLICATE_NAME,
                )
            )
            continue
        labels.add(label.text)
        if expr is not None:
            constraints.append(Constraint(label.text, expr))

    errors.sort(key=lambda e: (e.line, e.column))
    return variables, constraints, errors


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a knowledge-base document; raises KBParseError with all errors."""
    variables, constraints, errors = _parse_document(text, ambient=None)
    if errors:
        raise KBParseError(errors)
    return KnowledgeBase(tuple(variables), tuple(constraints))


def parse_constraints(text: str, variables: tuple[Variable, ...]) -> list[Constraint]:
    """Parse a constraints-only document (e.g. a requirements file).

    Atoms are validated against the given variable list; variable
    declarations are rejected.
    """
    _, constraints, errors = _parse_document(text, ambient=tuple(variables))
    if errors:
        raise KBParseError(errors)
    return constraints


# -- serialization ---------------------------------------------------------

# Precedence levels used to decide parenthesization: implication binds
# loosest, atoms tightest.
_P_IMPLIES, _P_OR, _P_AND, _P_NOT, _P_ATOM = 1, 2, 3, 4, 5


def _fmt(expr: Expr) -> tuple[str, int]:
    if isinstance(expr, Atom):
        return f"{expr.var} {expr.op.value} {expr.value}", _P_ATOM
    if isinstance(expr, Not):
        text, prec = _fmt(expr.child)
        if prec < _P_NOT:
            text = f"({text})"
        return f"!{text}", _P_NOT
    if isinstance(expr, And):
        parts = []
        for child in expr.children:
            text, prec = _fmt(child)
            parts.append(f"({text})" if prec <= _P_AND else text)
        return " & ".join(parts), _P_AND
    if isinstance(expr, Or):
        parts = []
        for child in expr.children:
            text, prec = _fmt(child)
            parts.append(f"({text})" if prec <= _P_OR else text)
        return " | ".join(parts), _P_OR
    left, left_prec = _fmt(expr.antecedent)
    if left_prec <= _P_IMPLIES:
        left = f"({left})"
    right, _ = _fmt(expr.consequent)  # right-associative: never needs parens
    return f"{left} -> {right}", _P_IMPLIES


def format_expr(expr: Expr) -> str:
    """Render an expression in the text-format grammar."""
    return _fmt(expr)[0]


def serialize_kb(kb: KnowledgeBase) -> str:
    """Render a knowledge base so that parse_kb reproduces it exactly."""
    lines = [f"var {v.name} {{ {', '.join(v.domain)} }}" for v in kb.variables]
    lines.extend(f"constraint {c.label}: {format_expr(c.expr)}" for c in kb.constraints)
    return "\n".join(lines) + "\n"
