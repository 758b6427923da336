"""Seeded random generation of scope-valid terms."""
from __future__ import annotations

import random
from functools import lru_cache

from .signatures import Binding, Flattening, Signature
from .terms import (
    Ctx,
    Ext,
    Fin,
    LBoxed,
    LIdx,
    LNew,
    LOld,
    Leaf,
    Node,
    Term,
    TmOver,
    Var,
    ext_n,
    size,
)

DEFAULT_TMOVER_CAP = 2


class GenerationError(Exception):
    """No term exists over the requested context and signature."""


def producible_leaf(sig: Signature, c: Ctx) -> bool:
    """Whether c has any well-formed leaf at all."""
    match c:
        case Fin(n):
            return n > 0
        case Ext(_):
            return True
        case TmOver(ci):
            return producible(sig, ci)
    return False


def producible(sig: Signature, c: Ctx) -> bool:
    """Whether any scope-valid term exists over c."""
    if producible_leaf(sig, c):
        return True
    for a in sig.arities:
        if isinstance(a, Binding) and all(k >= 1 for k in a.binders):
            return True
    return False


def minimal_leaf(sig: Signature, c: Ctx) -> Leaf | None:
    match c:
        case Fin(n):
            return LIdx(0) if n > 0 else None
        case Ext(_):
            return LNew()
        case TmOver(ci):
            return LBoxed(minimal_term(sig, ci)) if producible(sig, ci) else None
    return None


def minimal_term(sig: Signature, c: Ctx) -> Term:
    """Smallest deterministic scope-valid term over c (leaf first, then
    nullary constructors, then constructors binding in every argument)."""
    l = minimal_leaf(sig, c)
    if l is not None:
        return Var(l)
    for aid, a in enumerate(sig.arities):
        if isinstance(a, Binding) and not a.binders:
            return Node(aid, ())
    for aid, a in enumerate(sig.arities):
        if isinstance(a, Binding) and all(k >= 1 for k in a.binders):
            return Node(aid, tuple(Var(LNew()) for _ in a.binders))
    raise GenerationError(f"no term exists over {c!r} for this signature")


@lru_cache(maxsize=None)
def min_size(sig: Signature, c: Ctx) -> int:
    return size(minimal_term(sig, c))


@lru_cache(maxsize=None)
def min_leaf_cost(sig: Signature, c: Ctx) -> int:
    """Size of the cheapest variable over c (boxed contents included)."""
    match c:
        case Fin(n):
            if n == 0:
                raise GenerationError("no leaf over the empty scope")
            return 1
        case Ext(_):
            return 1
        case TmOver(ci):
            return 1 + min_size(sig, ci)
    raise GenerationError(f"no leaf over {c!r}")


def random_term(sig: Signature, c: Ctx, budget: int, seed: int,
                tmover_cap: int = DEFAULT_TMOVER_CAP) -> Term:
    """Deterministic seeded term over c with size <= budget + 1, except that
    the minimal term is returned when even it exceeds the budget.

    Flattening nodes stop being chosen once tmover_cap boxed-scope layers
    have been introduced below the root, keeping nested payloads small.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    rng = random.Random(seed)
    return _gen(sig, c, budget, rng, 0, tmover_cap)


def _gen(sig: Signature, c: Ctx, budget: int, rng: random.Random,
         tmover_depth: int, cap: int) -> Term:
    allowance = budget + 1
    if allowance <= min_size(sig, c):
        return minimal_term(sig, c)

    choices: list[tuple[str, int]] = []
    if producible_leaf(sig, c) and min_leaf_cost(sig, c) <= allowance:
        choices.append(("var", -1))
    for aid, a in enumerate(sig.arities):
        match a:
            case Binding(binders):
                need = 1 + sum(min_size(sig, ext_n(c, k)) for k in binders)
                if need <= allowance:
                    choices.append(("node", aid))
            case Flattening():
                if tmover_depth < cap and 1 + min_size(sig, TmOver(c)) <= allowance:
                    choices.append(("node", aid))
    if not choices:
        return minimal_term(sig, c)

    kind, aid = rng.choice(choices)
    if kind == "var":
        return Var(_gen_leaf(sig, c, budget - 1, rng, tmover_depth, cap))
    match sig.arity(aid):
        case Binding(binders):
            bases = [min_size(sig, ext_n(c, k)) - 1 for k in binders]
            spare = (budget - len(binders)) - sum(bases)
            extras = _split_budget(spare, len(binders), rng)
            args = tuple(
                _gen(sig, ext_n(c, k), base + extra, rng, tmover_depth, cap)
                for k, base, extra in zip(binders, bases, extras)
            )
            return Node(aid, args)
        case Flattening():
            payload = _gen(sig, TmOver(c), budget - 1, rng, tmover_depth + 1, cap)
            return Node(aid, (payload,))
    raise AssertionError


def _gen_leaf(sig: Signature, c: Ctx, budget: int, rng: random.Random,
              tmover_depth: int, cap: int) -> Leaf:
    # budget bounds the size of boxed contents carried by the leaf
    match c:
        case Fin(n):
            return LIdx(rng.randrange(n))
        case Ext(ci):
            can_descend = (producible_leaf(sig, ci)
                           and min_leaf_cost(sig, ci) - 1 <= budget)
            if can_descend and rng.random() < 0.6:
                return LOld(_gen_leaf(sig, ci, budget, rng, tmover_depth, cap))
            return LNew()
        case TmOver(ci):
            return LBoxed(_gen(sig, ci, max(budget - 1, 0), rng,
                               max(tmover_depth - 1, 0), cap))
    raise AssertionError


def _split_budget(total: int, parts: int, rng: random.Random) -> list[int]:
    if parts == 0:
        return []
    total = max(total, 0)
    cuts = sorted(rng.randrange(total + 1) for _ in range(parts - 1))
    out = []
    prev = 0
    for cut in cuts:
        out.append(cut - prev)
        prev = cut
    out.append(total - prev)
    return out


def sample_leaf(sig: Signature, c: Ctx, rng: random.Random, budget: int = 5) -> Leaf:
    """Random well-formed leaf of c; boxed leaves get small random contents."""
    if not producible_leaf(sig, c):
        raise GenerationError(f"context {c!r} has no well-formed leaf")
    return _gen_leaf(sig, c, budget, rng, 0, DEFAULT_TMOVER_CAP)
