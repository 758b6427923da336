"""Scoped terms over binding signatures.

Contexts describe the leaf domain a term may draw from: a finite de Bruijn
scope, a scope extended by one fresh variable, or a scope of boxed terms.
Terms are scope-indexed trees; structural equality is term equality
throughout (no alpha-quotient is ever needed).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .signatures import Binding, Flattening, Signature


class ScopeError(Exception):
    """A term or leaf does not fit the context an operation requires."""


class ContextMismatch(ScopeError):
    """Endpoints of two leaf maps do not line up for composition."""


# ---------------------------------------------------------------------------
# Contexts


@dataclass(frozen=True)
class Fin:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("Fin size must be non-negative")


@dataclass(frozen=True)
class Ext:
    inner: "Ctx"


@dataclass(frozen=True)
class TmOver:
    inner: "Ctx"


Ctx = Fin | Ext | TmOver


def ext_n(c: Ctx, k: int) -> Ctx:
    """Extend c by k fresh variables."""
    for _ in range(k):
        c = Ext(c)
    return c


# ---------------------------------------------------------------------------
# Leaves


@dataclass(frozen=True)
class LIdx:
    i: int


@dataclass(frozen=True)
class LNew:
    pass


@dataclass(frozen=True)
class LOld:
    l: "Leaf"


@dataclass(frozen=True)
class LBoxed:
    t: "Term"


Leaf = LIdx | LNew | LOld | LBoxed


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    leaf: Leaf


@dataclass(frozen=True)
class Node:
    arity_id: int
    args: tuple["Term", ...]


Term = Var | Node


def term_eq(t: Term, u: Term) -> bool:
    return t == u


def size(t: Term) -> int:
    """Node count, including Var leaves and the contents of boxed leaves."""
    match t:
        case Var(l):
            return 1 + _leaf_content_size(l)
        case Node(_, args):
            return 1 + sum(size(a) for a in args)
    raise TypeError(f"not a term: {t!r}")


def _leaf_content_size(l: Leaf) -> int:
    match l:
        case LOld(inner):
            return _leaf_content_size(inner)
        case LBoxed(t):
            return size(t)
        case _:
            return 0


# ---------------------------------------------------------------------------
# Well-formedness


def leaf_is_wf(l: Leaf, c: Ctx, sig: Signature) -> bool:
    """Inductive leaf typing; boxed terms are validated against sig."""
    match (l, c):
        case (LIdx(i), Fin(n)):
            return 0 <= i < n
        case (LNew(), Ext(_)):
            return True
        case (LOld(inner), Ext(ci)):
            return leaf_is_wf(inner, ci, sig)
        case (LBoxed(t), TmOver(ci)):
            return validate(sig, ci, t)
        case _:
            return False


def validate(sig: Signature, c: Ctx, t: Term) -> bool:
    """True iff t is scope-valid over c relative to sig."""
    match t:
        case Var(l):
            return leaf_is_wf(l, c, sig)
        case Node(aid, args):
            if not 0 <= aid < len(sig):
                return False
            match sig.arity(aid):
                case Binding(binders):
                    if len(args) != len(binders):
                        return False
                    return all(validate(sig, ext_n(c, k), a) for k, a in zip(binders, args))
                case Flattening():
                    return len(args) == 1 and validate(sig, TmOver(c), args[0])
    return False


# ---------------------------------------------------------------------------
# Leaf maps: applicable mappings between contexts with declared endpoints.


@dataclass(frozen=True)
class LeafMap:
    source: Ctx
    target: Ctx
    apply: Callable[[Leaf], Leaf]


def id_map(c: Ctx) -> LeafMap:
    return LeafMap(c, c, lambda l: l)


def compose_map(g: LeafMap, h: LeafMap) -> LeafMap:
    """g after h; endpoints must agree structurally."""
    if h.target != g.source:
        raise ContextMismatch(f"cannot compose: {h.target!r} != {g.source!r}")
    return LeafMap(h.source, g.target, lambda l: g.apply(h.apply(l)))


def weaken_map(c: Ctx) -> LeafMap:
    return LeafMap(c, Ext(c), LOld)


def eta_wrap_map(c: Ctx) -> LeafMap:
    """Embed a leaf as the boxed variable over it."""
    return LeafMap(c, TmOver(c), lambda l: LBoxed(Var(l)))


def ext_lift(g: LeafMap) -> LeafMap:
    """Lift g through one scope extension, fixing the fresh variable."""

    def apply(l: Leaf) -> Leaf:
        match l:
            case LNew():
                return l
            case LOld(inner):
                return LOld(g.apply(inner))
        raise ScopeError(f"leaf {l!r} does not fit {Ext(g.source)!r}")

    return LeafMap(Ext(g.source), Ext(g.target), apply)


def boxed_lift(sig: Signature, g: LeafMap) -> LeafMap:
    """Lift g through a boxed-term scope by mapping the contents of each box."""

    def apply(l: Leaf) -> Leaf:
        match l:
            case LBoxed(t):
                return LBoxed(map_leaves(sig, g, t))
        raise ScopeError(f"leaf {l!r} does not fit {TmOver(g.source)!r}")

    return LeafMap(TmOver(g.source), TmOver(g.target), apply)


def tabulate_map(source: Ctx, target: Ctx, table: dict) -> LeafMap:
    """Leaf map given by a finite table (keys must cover the leaves used)."""

    def apply(l: Leaf) -> Leaf:
        try:
            return table[l]
        except KeyError:
            raise ScopeError(f"leaf {l!r} not in tabulated map") from None

    return LeafMap(source, target, apply)


def map_leaves(sig: Signature, g: LeafMap, t: Term) -> Term:
    """Functorial action on terms: rename every leaf of t along g.

    Binding arguments recurse with g lifted through their binders; the
    flattening argument recurses with the boxed-scope transport of g.
    """
    match t:
        case Var(l):
            return Var(g.apply(l))
        case Node(aid, args):
            match sig.arity(aid):
                case Binding(binders):
                    new_args = []
                    for k, a in zip(binders, args):
                        gk = g
                        for _ in range(k):
                            gk = ext_lift(gk)
                        new_args.append(map_leaves(sig, gk, a))
                    return Node(aid, tuple(new_args))
                case Flattening():
                    return Node(aid, (map_leaves(sig, boxed_lift(sig, g), args[0]),))
    raise TypeError(f"not a term: {t!r}")


def enumerate_leaves(c: Ctx) -> list[Leaf]:
    """All well-formed leaves of a Fin-rooted (possibly Ext-wrapped) context."""
    match c:
        case Fin(n):
            return [LIdx(i) for i in range(n)]
        case Ext(ci):
            return [LNew()] + [LOld(l) for l in enumerate_leaves(ci)]
    raise ScopeError(f"context {c!r} has no finite leaf enumeration")
