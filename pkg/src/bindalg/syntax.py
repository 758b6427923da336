r"""Concrete syntax for lambda terms with explicit flattening.

Grammar (whitespace-insensitive between tokens):

    term := abs | app
    abs  := ("\" | "lam") "." term
    app  := atom { atom }                      (left-associative)
    atom := nat | "(" term ")" | flat
    flat := "flat" "{" term "|" [ term { "," term } ] "}"
    nat  := digit { digit }

Inside flat{ outer | e1, ..., em }, numerals of outer count binders first
and then refer positionally to env entries; env terms parse over the
ambient context at the flat node. The printer emits a canonical form
(applications always parenthesized, env entries deduplicated by structural
equality in first-occurrence order), so parsing after printing is exact.
"""
from __future__ import annotations

from dataclasses import dataclass

from .signatures import Binding, Flattening, Signature
from .terms import (
    Ctx,
    Fin,
    LBoxed,
    LIdx,
    LNew,
    LOld,
    Node,
    ScopeError,
    Term,
    Var,
)


class ParseError(Exception):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class _ArityRoles:
    app: int | None
    abs: int | None
    flat: int | None


def _roles(sig: Signature) -> _ArityRoles:
    app = abs = flat = None
    for aid, a in enumerate(sig.arities):
        match a:
            case Binding((0, 0)) if app is None:
                app = aid
            case Binding((1,)) if abs is None:
                abs = aid
            case Flattening() if flat is None:
                flat = aid
    return _ArityRoles(app, abs, flat)


# ---------------------------------------------------------------------------
# Lexer

_PUNCT = {"\\": "lambda", ".": "dot", "(": "lparen", ")": "rparen",
          "{": "lbrace", "}": "rbrace", "|": "bar", ",": "comma"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            tokens.append((_PUNCT[ch], ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("nat", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word == "lam":
                tokens.append(("lambda", word, i))
            elif word == "flat":
                tokens.append(("flat", word, i))
            else:
                raise ParseError(f"unexpected word {word!r}", i)
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("eof", "", n))
    return tokens


# ---------------------------------------------------------------------------
# Parser: raw syntax tree first, scope elaboration second.


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def term(self):
        if self.peek()[0] == "lambda":
            self.next()
            self.expect("dot")
            return ("abs", self.term())
        return self.app()

    def app(self):
        node = self.atom()
        while self.peek()[0] in ("nat", "lparen", "flat"):
            node = ("app", node, self.atom())
        return node

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "nat":
            self.next()
            return ("nat", int(value), pos)
        if kind == "lparen":
            self.next()
            inner = self.term()
            self.expect("rparen")
            return inner
        if kind == "flat":
            self.next()
            self.expect("lbrace")
            outer = self.term()
            self.expect("bar")
            env = []
            if self.peek()[0] != "rbrace":
                env.append(self.term())
                while self.peek()[0] == "comma":
                    self.next()
                    env.append(self.term())
            self.expect("rbrace")
            return ("flat", outer, env, pos)
        raise ParseError(f"expected a term, found {value or 'end of input'!r}", pos)


def parse_term(text: str, sig: Signature, scope: int) -> Term:
    """Parse over the finite scope 0..scope-1; scope-valid by construction."""
    roles = _roles(sig)
    parser = _Parser(_tokenize(text))
    raw = parser.term()
    tok = parser.peek()
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return _elaborate(raw, [("fin", scope)], roles)


def _elaborate(raw, frames, roles: _ArityRoles) -> Term:
    match raw:
        case ("nat", m, pos):
            return Var(_resolve(m, frames, pos))
        case ("abs", body):
            if roles.abs is None:
                raise ParseError("signature has no abstraction arity", 0)
            return Node(roles.abs, (_elaborate(body, [("ext",)] + frames, roles),))
        case ("app", fn, arg):
            if roles.app is None:
                raise ParseError("signature has no application arity", 0)
            return Node(roles.app, (_elaborate(fn, frames, roles),
                                    _elaborate(arg, frames, roles)))
        case ("flat", outer, env_raw, pos):
            if roles.flat is None:
                raise ParseError("signature has no flattening arity", pos)
            env = [_elaborate(e, frames, roles) for e in env_raw]
            payload = _elaborate(outer, [("env", tuple(env))] + frames, roles)
            return Node(roles.flat, (payload,))
    raise AssertionError(raw)


def _resolve(m: int, frames, pos: int):
    depth = 0
    for frame in frames:
        if frame[0] == "ext":
            depth += 1
            continue
        if m < depth:
            return _wrap_old(LNew(), m)
        rest = m - depth
        if frame[0] == "fin":
            if rest >= frame[1]:
                raise ScopeError(f"index {m} out of scope {frame[1]} (at position {pos})")
            return _wrap_old(LIdx(rest), depth)
        if frame[0] == "env":
            if rest >= len(frame[1]):
                raise ScopeError(
                    f"index {m} exceeds the {len(frame[1])} env entries (at position {pos})")
            return _wrap_old(LBoxed(frame[1][rest]), depth)
    raise AssertionError


def _wrap_old(core, times: int):
    for _ in range(times):
        core = LOld(core)
    return core


# ---------------------------------------------------------------------------
# Printer: canonical inverse of the grammar.


def print_term(t: Term, sig: Signature) -> str:
    roles = _roles(sig)
    return _print(t, roles, None)


class _EnvCollector:
    def __init__(self):
        self.items: list[Term] = []
        self._index: dict[Term, int] = {}

    def slot(self, t: Term) -> int:
        if t not in self._index:
            self._index[t] = len(self.items)
            self.items.append(t)
        return self._index[t]


def _print(t: Term, roles: _ArityRoles, env: _EnvCollector | None) -> str:
    match t:
        case Var(l):
            return str(_numeral(l, env))
        case Node(aid, args):
            if aid == roles.abs:
                return "\\." + _print(args[0], roles, env)
            if aid == roles.app:
                return f"({_atom(args[0], roles, env)} {_atom(args[1], roles, env)})"
            if aid == roles.flat:
                inner = _EnvCollector()
                outer = _print(args[0], roles, inner)
                entries = ", ".join(_print(w, roles, env) for w in inner.items)
                return f"flat{{ {outer} | {entries} }}" if entries else f"flat{{ {outer} | }}"
            raise ValueError(f"arity id {aid} has no concrete syntax")
    raise ValueError(f"not a term: {t!r}")


def _atom(t: Term, roles: _ArityRoles, env: _EnvCollector | None) -> str:
    # abstractions are not atoms: parenthesize them inside applications
    s = _print(t, roles, env)
    if isinstance(t, Node) and t.arity_id == roles.abs:
        return f"({s})"
    return s


def _numeral(l, env: _EnvCollector | None) -> int:
    peels = 0
    while isinstance(l, LOld):
        peels += 1
        l = l.l
    match l:
        case LNew():
            return peels
        case LIdx(i):
            return peels + i
        case LBoxed(w):
            if env is None:
                raise ValueError("boxed leaf outside any flattening payload")
            return peels + env.slot(w)
    raise ValueError(f"leaf {l!r} has no concrete syntax")
