"""Independent de Bruijn oracle for flattening and parallel substitution.

Deliberately shares no traversal code with the bracket machinery: terms are
converted to a private integer-indexed form, evaluated with the textbook
shift/substitute algorithm, and converted back. Only the interchange Term
datatype and the lambda-calculus arity layout (app=0, abs=1, flat=2) are
shared, since results must be compared structurally.
"""
from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    Ctx,
    Ext,
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

APP_ID = 0
ABS_ID = 1
FLAT_ID = 2


@dataclass(frozen=True)
class IVar:
    v: int


@dataclass(frozen=True)
class IApp:
    fn: "ITerm"
    arg: "ITerm"


@dataclass(frozen=True)
class IAbs:
    body: "ITerm"


@dataclass(frozen=True)
class IFlat:
    # outer's free variables index into env (positionally); env entries live
    # at the ambient scope of the flat node.
    outer: "ITerm"
    env: tuple["ITerm", ...]


ITerm = IVar | IApp | IAbs | IFlat


def shift(t: ITerm, by: int, cutoff: int = 0) -> ITerm:
    match t:
        case IVar(v):
            return IVar(v + by) if v >= cutoff else t
        case IApp(fn, arg):
            return IApp(shift(fn, by, cutoff), shift(arg, by, cutoff))
        case IAbs(body):
            return IAbs(shift(body, by, cutoff + 1))
        case IFlat(outer, env):
            return IFlat(outer, tuple(shift(e, by, cutoff) for e in env))
    raise TypeError(f"not an indexed term: {t!r}")


def msubst(t: ITerm, subs: tuple[ITerm, ...], depth: int = 0) -> ITerm:
    """Simultaneous substitution of subs for the free variables of t."""
    match t:
        case IVar(v):
            if v < depth:
                return t
            return shift(subs[v - depth], depth)
        case IApp(fn, arg):
            return IApp(msubst(fn, subs, depth), msubst(arg, subs, depth))
        case IAbs(body):
            return IAbs(msubst(body, subs, depth + 1))
        case IFlat(outer, env):
            # outer is region-local; only env entries see the ambient scope
            return IFlat(outer, tuple(msubst(e, subs, depth) for e in env))
    raise TypeError(f"not an indexed term: {t!r}")


def iflatten(t: ITerm) -> ITerm:
    """Resolve every explicit flattening by actual substitution."""
    match t:
        case IVar(_):
            return t
        case IApp(fn, arg):
            return IApp(iflatten(fn), iflatten(arg))
        case IAbs(body):
            return IAbs(iflatten(body))
        case IFlat(outer, env):
            return msubst(iflatten(outer), tuple(iflatten(e) for e in env))
    raise TypeError(f"not an indexed term: {t!r}")


# ---------------------------------------------------------------------------
# Conversion between the shared Term form over Fin(n) and the indexed form.


def from_term(t: Term, scope: int) -> ITerm:
    def conv(t: Term, depth: int, resolve):
        match t:
            case Var(l):
                peels = 0
                while isinstance(l, LOld):
                    peels += 1
                    l = l.l
                if isinstance(l, LNew):
                    if peels >= depth:
                        raise ScopeError("fresh leaf escapes its binders")
                    return IVar(peels)
                return IVar(resolve(l, peels))
            case Node(aid, args):
                if aid == APP_ID:
                    return IApp(conv(args[0], depth, resolve),
                                conv(args[1], depth, resolve))
                if aid == ABS_ID:
                    return IAbs(conv(args[0], depth + 1, resolve))
                if aid == FLAT_ID:
                    env: list[ITerm] = []

                    def resolve_box(core, peels, outer_depth=depth,
                                    outer_resolve=resolve):
                        if not isinstance(core, LBoxed):
                            raise ScopeError(f"leaf {core!r} at a boxed-term scope")
                        env.append(conv(core.t, outer_depth, outer_resolve))
                        return peels + len(env) - 1

                    outer = conv(args[0], 0, resolve_box)
                    return IFlat(outer, tuple(env))
                raise ScopeError(f"arity id {aid} outside the lambda layout")
        raise ScopeError(f"not a term: {t!r}")

    def resolve_root(core, peels):
        if not isinstance(core, LIdx):
            raise ScopeError(f"leaf {core!r} at a finite scope")
        if not 0 <= core.i < scope:
            raise ScopeError(f"index {core.i} out of scope {scope}")
        return peels + core.i

    return conv(t, 0, resolve_root)


def to_term(t: ITerm) -> Term:
    def leaf(v: int, depth: int, base):
        if v < depth:
            l = LNew()
            for _ in range(v):
                l = LOld(l)
            return l
        core = base(v - depth)
        for _ in range(depth):
            core = LOld(core)
        return core

    def conv(t: ITerm, depth: int, base):
        match t:
            case IVar(v):
                return Var(leaf(v, depth, base))
            case IApp(fn, arg):
                return Node(APP_ID, (conv(fn, depth, base), conv(arg, depth, base)))
            case IAbs(body):
                return Node(ABS_ID, (conv(body, depth + 1, base),))
            case IFlat(outer, env):
                boxes = tuple(conv(e, depth, base) for e in env)
                payload = conv(outer, 0, lambda j: LBoxed(boxes[j]))
                return Node(FLAT_ID, (payload,))
        raise TypeError(f"not an indexed term: {t!r}")

    return conv(t, 0, LIdx)


# ---------------------------------------------------------------------------
# Oracle entry points on the shared Term form.


def naive_flatten(t: Term, scope: int) -> Term:
    """Flattening-free evaluation over Fin(scope), by index arithmetic."""
    return to_term(iflatten(from_term(t, scope)))


def naive_subst(t: Term, entries: list[Term], scope: int, target_scope: int) -> Term:
    """Parallel substitution oracle: entries[i] (over Fin(target_scope))
    replaces variable i of t (over Fin(scope))."""
    if len(entries) != scope:
        raise ScopeError("need one entry per variable of the source scope")
    subs = tuple(from_term(e, target_scope) for e in entries)
    return to_term(msubst(from_term(t, scope), subs))
