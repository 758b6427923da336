"""Pointed context transformers and the per-arity strengths they induce.

A pointed transformer Z acts on contexts and leaf maps and carries a point:
a leaf map from each context c into Z(c). Strengths push Z inside a
constructor's arguments, which is exactly the binder lifting that
substitution needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .signatures import Signature
from .terms import (
    Ctx,
    Ext,
    LBoxed,
    LNew,
    LOld,
    Leaf,
    LeafMap,
    ScopeError,
    Term,
    TmOver,
    Var,
    boxed_lift,
    compose_map,
    ext_lift,
    ext_n,
    id_map,
    map_leaves,
    weaken_map,
)


class PointedEndo:
    """Interface: on_ctx, on_map (functorial), point (natural in c)."""

    name: str = "?"

    def on_ctx(self, c: Ctx) -> Ctx:
        raise NotImplementedError

    def on_map(self, g: LeafMap) -> LeafMap:
        raise NotImplementedError

    def point(self, c: Ctx) -> LeafMap:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class IdZ(PointedEndo):
    name = "Id"

    def on_ctx(self, c):
        return c

    def on_map(self, g):
        return g

    def point(self, c):
        return id_map(c)


class ExtZ(PointedEndo):
    """Scope extension, pointed by weakening."""

    name = "Ext"

    def on_ctx(self, c):
        return Ext(c)

    def on_map(self, g):
        return ext_lift(g)

    def point(self, c):
        return weaken_map(c)


class TmZ(PointedEndo):
    """Boxed-term scope over a signature, pointed by boxing a variable."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.name = "Tm"

    def on_ctx(self, c):
        return TmOver(c)

    def on_map(self, g):
        return boxed_lift(self.sig, g)

    def point(self, c):
        return LeafMap(c, TmOver(c), lambda l: LBoxed(Var(l)))


class ComposePE(PointedEndo):
    """outer after inner; the composite point inserts both points."""

    def __init__(self, outer: PointedEndo, inner: PointedEndo):
        self.outer = outer
        self.inner = inner
        self.name = f"{outer.name}.{inner.name}"

    def on_ctx(self, c):
        return self.outer.on_ctx(self.inner.on_ctx(c))

    def on_map(self, g):
        return self.outer.on_map(self.inner.on_map(g))

    def point(self, c):
        return compose_map(self.outer.point(self.inner.on_ctx(c)), self.inner.point(c))


def dist_map(Z: PointedEndo, c: Ctx, k: int) -> LeafMap:
    """k-fold distributor Ext^k(Z c) -> Z(Ext^k c).

    The single step sends the fresh leaf through Z's point at the extended
    context and old leaves through Z's action on weakening.
    """
    if k < 0:
        raise ValueError("binder count must be non-negative")
    if k == 0:
        return id_map(Z.on_ctx(c))
    inner = dist_map(Z, c, k - 1)
    return compose_map(_dist_step(Z, ext_n(c, k - 1)), ext_lift(inner))


def _dist_step(Z: PointedEndo, c: Ctx) -> LeafMap:
    def apply(l: Leaf) -> Leaf:
        match l:
            case LNew():
                return Z.point(Ext(c)).apply(LNew())
            case LOld(inner):
                return Z.on_map(weaken_map(c)).apply(inner)
        raise ScopeError(f"leaf {l!r} does not fit {Ext(Z.on_ctx(c))!r}")

    return LeafMap(Ext(Z.on_ctx(c)), Z.on_ctx(Ext(c)), apply)


# ---------------------------------------------------------------------------
# Strengths, realized per arity at the term functor.


def strength_binding(sig: Signature, binders: tuple[int, ...], Z: PointedEndo,
                     args: tuple[Term, ...], c: Ctx) -> tuple[Term, ...]:
    """Push Z under the binders of each argument; binder-free arguments
    are returned unchanged."""
    out = []
    for k, a in zip(binders, args):
        out.append(a if k == 0 else map_leaves(sig, dist_map(Z, c, k), a))
    return tuple(out)


def strength_flat(sig: Signature, Z: PointedEndo, u: Term, c: Ctx) -> Term:
    """Insert Z's point right after the boxed-term layer of the payload."""
    return map_leaves(sig, Z.point(TmOver(Z.on_ctx(c))), u)


# ---------------------------------------------------------------------------
# Pointed morphisms into the term functor.


@dataclass(frozen=True)
class PointedMorphism:
    """A natural, point-compatible assignment of terms over c to leaves of Z(c)."""

    name: str
    Z: PointedEndo
    component: Callable[[Ctx, Leaf], Term]


def identity_on_terms(sig: Signature) -> PointedMorphism:
    """The identity on the term functor: unboxes a boxed-term leaf."""

    def component(c: Ctx, l: Leaf) -> Term:
        match l:
            case LBoxed(t):
                return t
        raise ScopeError(f"leaf {l!r} does not fit a boxed-term scope")

    return PointedMorphism("id", TmZ(sig), component)


def eta_morphism() -> PointedMorphism:
    """The variable injection as a pointed morphism from the identity."""
    return PointedMorphism("eta", IdZ(), lambda c, l: Var(l))


def const_closed(closed: Term, name: str = "const") -> PointedMorphism:
    """Sends the fresh variable to a fixed closed term, old leaves to variables."""

    def component(c: Ctx, l: Leaf) -> Term:
        match l:
            case LNew():
                return closed
            case LOld(inner):
                return Var(inner)
        raise ScopeError(f"leaf {l!r} does not fit an extended scope")

    return PointedMorphism(name, ExtZ(), component)


@dataclass(frozen=True)
class PointedTransform:
    """A point-compatible natural transformation between pointed transformers,
    used to exercise naturality of the bracket in its morphism argument."""

    name: str
    source: PointedEndo
    target: PointedEndo
    at: Callable[[Ctx], LeafMap]  # component at c: source(c) -> target(c)


def point_transform(Z: PointedEndo) -> PointedTransform:
    """The point of Z, seen as a pointed transformation from the identity."""
    return PointedTransform(f"point-{Z.name}", IdZ(), Z, Z.point)


def box_const_transform(sig: Signature, closed: Term) -> PointedTransform:
    """Ext -> Tm: the fresh leaf boxes a fixed closed term, old leaves box
    their variables (forced by point compatibility)."""

    def at(c: Ctx) -> LeafMap:
        def apply(l: Leaf) -> Leaf:
            match l:
                case LNew():
                    return LBoxed(closed)
                case LOld(inner):
                    return LBoxed(Var(inner))
            raise ScopeError(f"leaf {l!r} does not fit an extended scope")

        return LeafMap(Ext(c), TmOver(c), apply)

    return PointedTransform("box-const", ExtZ(), TmZ(sig), at)


def precompose(f: PointedMorphism, g: PointedTransform) -> PointedMorphism:
    """f after g, as a pointed morphism from g's source transformer."""

    def component(c: Ctx, l: Leaf) -> Term:
        return f.component(c, g.at(c).apply(l))

    return PointedMorphism(f"{f.name}.{g.name}", g.source, component)
