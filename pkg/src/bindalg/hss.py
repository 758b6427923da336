"""The bracket operation on the initial term algebra and its derived monad.

For a pointed morphism f out of (Z, e), bracket(f) carries a term over
Z(c) to a term over c: variables go through f's component, binding
arguments are strength-transported and recursed under their binders, and
flattening payloads recurse inside their boxed leaves.
"""
from __future__ import annotations

from dataclasses import dataclass

from .signatures import Binding, Flattening, Signature
from .terms import (
    Ctx,
    Ext,
    LBoxed,
    LNew,
    LOld,
    Leaf,
    LeafMap,
    Node,
    ScopeError,
    Term,
    TmOver,
    Var,
    ext_n,
    enumerate_leaves,
    map_leaves,
)
from .pointed import (
    PointedEndo,
    PointedMorphism,
    dist_map,
    identity_on_terms,
    strength_flat,
)


def bracket(sig: Signature, f: PointedMorphism, t: Term, c: Ctx) -> Term:
    """Substitute along f: the unique algebra-compatible map T(Z c) -> T(c)."""
    Z = f.Z
    match t:
        case Var(l):
            return f.component(c, l)
        case Node(aid, args):
            match sig.arity(aid):
                case Binding(binders):
                    new_args = []
                    for k, a in zip(binders, args):
                        if k > 0:
                            a = map_leaves(sig, dist_map(Z, c, k), a)
                        new_args.append(bracket(sig, f, a, ext_n(c, k)))
                    return Node(aid, tuple(new_args))
                case Flattening():
                    # tau . H{f} . theta, simplified by pointedness of f to a
                    # bracket inside every boxed leaf (see bracket_flat_composite
                    # for the unsimplified composite, property-tested equal).
                    g = _boxed_bracket_map(sig, f, c)
                    return Node(aid, (map_leaves(sig, g, args[0]),))
    raise ScopeError(f"not a term: {t!r}")


def _boxed_bracket_map(sig: Signature, f: PointedMorphism, c: Ctx) -> LeafMap:
    src = TmOver(f.Z.on_ctx(c))

    def apply(l: Leaf) -> Leaf:
        match l:
            case LBoxed(w):
                return LBoxed(bracket(sig, f, w, c))
        raise ScopeError(f"leaf {l!r} does not fit {src!r}")

    return LeafMap(src, TmOver(c), apply)


def bracket_flat_composite(sig: Signature, f: PointedMorphism, u: Term, c: Ctx) -> Term:
    """Flattening payload transformed by the unsimplified composite
    tau . H{f} . theta; returns the new payload (over TmOver(c))."""
    Z = f.Z
    u1 = strength_flat(sig, Z, u, c)
    u2 = map_leaves(sig, Z.on_map(_boxed_bracket_map(sig, f, c)), u1)
    return bracket(sig, f, u2, TmOver(c))


def mu(sig: Signature, t: Term, c: Ctx) -> Term:
    """Monad multiplication: bracket at the identity pointed morphism.

    Removes the cross-section between the trunk of t and its boxed leaves.
    """
    return bracket(sig, identity_on_terms(sig), t, c)


@dataclass(frozen=True)
class SubstRule:
    """Finite substitution rule: a term over target for every leaf of source.

    Sources are restricted to Fin-rooted (possibly Ext-wrapped) contexts,
    where leafwise tabulation is finite.
    """

    source: Ctx
    target: Ctx
    assignment: tuple[tuple[Leaf, Term], ...]

    @staticmethod
    def from_mapping(source: Ctx, target: Ctx, mapping: dict) -> "SubstRule":
        leaves = enumerate_leaves(source)
        table = []
        for l in leaves:
            table.append((l, mapping.get(l, Var(l))))
        return SubstRule(source, target, tuple(table))

    def lookup(self, l: Leaf) -> Term:
        for key, t in self.assignment:
            if key == l:
                return t
        raise ScopeError(f"leaf {l!r} outside the rule's source {self.source!r}")

    def boxing_map(self) -> LeafMap:
        """The rule as a leaf map into the boxed-term scope over its target."""
        return LeafMap(self.source, TmOver(self.target),
                       lambda l: LBoxed(self.lookup(l)))


def subst(sig: Signature, r: SubstRule, t: Term) -> Term:
    """Parallel substitution, derived as mu after boxing the rule's terms."""
    return mu(sig, map_leaves(sig, r.boxing_map(), t), r.target)


def subst1(sig: Signature, t: Term, u: Term, c: Ctx) -> Term:
    """Replace the fresh variable of t (over Ext(c)) by u (over c)."""

    def apply(l: Leaf) -> Leaf:
        match l:
            case LNew():
                return LBoxed(u)
            case LOld(inner):
                return LBoxed(Var(inner))
        raise ScopeError(f"leaf {l!r} does not fit {Ext(c)!r}")

    g = LeafMap(Ext(c), TmOver(c), apply)
    return mu(sig, map_leaves(sig, g, t), c)


# ---------------------------------------------------------------------------
# Substitution systems as objects: an algebra plus a bracket operation.


class SubstitutionSystem:
    """A carrier of terms indexed by the ambient signature's arities."""

    sig: Signature          # arity layout of constructor payloads
    carrier_sig: Signature  # signature the carrier's terms validate against

    def tau(self, arity_id: int, args: tuple[Term, ...], c: Ctx) -> Term:
        raise NotImplementedError

    def bracket(self, f: PointedMorphism, t: Term, c: Ctx) -> Term:
        raise NotImplementedError

    def mu(self, t: Term, c: Ctx) -> Term:
        return self.bracket(identity_on_terms(self.carrier_sig), t, c)


class InitialSystem(SubstitutionSystem):
    """The initial algebra: constructors build nodes, bracket recurses."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.carrier_sig = sig

    def tau(self, arity_id, args, c):
        return Node(arity_id, tuple(args))

    def bracket(self, f, t, c):
        return bracket(self.sig, f, t, c)


# ---------------------------------------------------------------------------
# The bracket as a Mendler-style step bundle (cross-checked with the
# inlined recursion above; the flattening step here uses the unsimplified
# composite, so agreement also certifies the simplification).


def bracket_bundle(sig: Signature, f: PointedMorphism):
    from .mendler import StepBundle
    from .pointed import strength_binding

    Z = f.Z

    def var_step(h, c, l):
        return f.component(c, l)

    def node_step(h, c, aid, args):
        match sig.arity(aid):
            case Binding(binders):
                moved = strength_binding(sig, binders, Z, args, c)
                return Node(aid, tuple(
                    h(a, ext_n(c, k)) for k, a in zip(binders, moved)
                ))
            case Flattening():
                u1 = strength_flat(sig, Z, args[0], c)
                src = TmOver(Z.on_ctx(c))
                boxmap = LeafMap(src, TmOver(c), _boxwise(h, c, src))
                u2 = map_leaves(sig, Z.on_map(boxmap), u1)
                return Node(aid, (h(u2, TmOver(c)),))
        raise ScopeError(f"bad arity id {aid}")

    return StepBundle(f"bracket[{f.name}]", Z, var_step, node_step)


def _boxwise(h, c: Ctx, src: Ctx):
    def apply(l: Leaf) -> Leaf:
        match l:
            case LBoxed(w):
                return LBoxed(h(w, c))
        raise ScopeError(f"leaf {l!r} does not fit {src!r}")

    return apply


def bracket_via_gfold(sig: Signature, f: PointedMorphism, t: Term, c: Ctx) -> Term:
    from .mendler import mendler_gfold

    return mendler_gfold(sig, bracket_bundle(sig, f), t, c)
