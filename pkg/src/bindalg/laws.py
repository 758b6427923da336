"""Randomized law checking against the proved equations.

Every checker draws seeded samples, evaluates both sides of a law with
exact structural equality, and returns a LawReport. The sampling
distribution (a small pool of finite, extended, and boxed-term contexts
with size-bounded random terms) is an engineering choice: the laws
quantify over all contexts, so zero failures is evidence, not proof.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .gen import producible_leaf, random_term, sample_leaf
from .signatures import Binding, Flattening, Signature
from .terms import (
    Ctx,
    Ext,
    Fin,
    LBoxed,
    LIdx,
    Leaf,
    LeafMap,
    Node,
    Term,
    TmOver,
    Var,
    enumerate_leaves,
    ext_n,
    map_leaves,
    size,
    tabulate_map,
)
from .pointed import (
    ComposePE,
    ExtZ,
    IdZ,
    PointedEndo,
    PointedMorphism,
    PointedTransform,
    TmZ,
    box_const_transform,
    const_closed,
    dist_map,
    eta_morphism,
    identity_on_terms,
    point_transform,
    precompose,
    strength_binding,
    strength_flat,
)
from .hss import (
    SubstitutionSystem,
    bracket,
    bracket_flat_composite,
    mu,
)

MAX_STORED_COUNTEREXAMPLES = 10


@dataclass(frozen=True)
class LawReport:
    suite: str
    samples: int
    failures: int
    seed: int
    counterexamples: tuple[Term, ...]

    def summary_line(self) -> str:
        return (f"suite={self.suite} samples={self.samples} "
                f"failures={self.failures} seed={self.seed}")


class LawCollector:
    """Accumulates sample outcomes; keeps the smallest counterexamples."""

    def __init__(self, suite: str, seed: int):
        self.suite = suite
        self.seed = seed
        self.failures = 0
        self._witnesses: list[Term] = []

    def record(self, ok: bool, witness: Term | None = None):
        if ok:
            return
        self.failures += 1
        if witness is not None:
            self._witnesses.append(witness)

    def finish(self, samples: int) -> LawReport:
        kept = tuple(sorted(self._witnesses, key=size)[:MAX_STORED_COUNTEREXAMPLES])
        return LawReport(self.suite, samples, self.failures, self.seed, kept)


def default_contexts(sig: Signature | None = None) -> list[Ctx]:
    pool = [
        Fin(0), Fin(1), Fin(2), Fin(3),
        Ext(Fin(0)), Ext(Fin(2)), Ext(Ext(Fin(1))),
        TmOver(Fin(1)),
    ]
    if sig is None:
        return pool
    from .gen import GenerationError, producible

    kept = [c for c in pool if producible(sig, c)]
    if not kept:
        raise GenerationError("signature admits no terms over the sampling contexts")
    return kept


def fin_contexts(max_n: int = 3) -> list[Ctx]:
    return [Fin(n) for n in range(max_n + 1)]


def _rand(rng: random.Random, sig: Signature, c: Ctx, budget: int) -> Term:
    return random_term(sig, c, budget, rng.randrange(2**32))


def shipped_morphisms(sig: Signature, closed: Term) -> list[PointedMorphism]:
    return [identity_on_terms(sig), eta_morphism(), const_closed(closed)]


# ---------------------------------------------------------------------------
# Bracket laws: the defining triangle and square, plus both naturalities.


def check_bracket_laws(sig: Signature, f: PointedMorphism, samples: int, seed: int,
                       budget: int = 10, suite: str | None = None) -> LawReport:
    rng = random.Random(seed)
    contexts = default_contexts(sig)
    collector = LawCollector(suite or f"bracket-laws[{f.name}]", seed)
    transforms = _compatible_transforms(sig, f)

    for _ in range(samples):
        c = rng.choice(contexts)
        zc = f.Z.on_ctx(c)
        ok = True
        witness = None

        # pointedness of f itself (the bracket does not check it)
        if producible_leaf(sig, c):
            l0 = sample_leaf(sig, c, rng)
            if f.component(c, f.Z.point(c).apply(l0)) != Var(l0):
                ok, witness = False, Var(l0)

        # naturality of f's component along renamings of finite scopes
        if isinstance(c, Fin) and c.n > 0 and ok:
            d = Fin(rng.randrange(1, 4))
            g = _random_renaming(rng, c, d)
            l0 = sample_leaf(sig, zc, rng)
            left = map_leaves(sig, g, f.component(c, l0))
            right = f.component(d, f.Z.on_map(g).apply(l0))
            if left != right:
                ok, witness = False, Var(l0)

        # triangle: variables go through the morphism's component
        # (vacuous when the transported context has no leaf)
        if producible_leaf(sig, zc):
            l = sample_leaf(sig, zc, rng)
            if bracket(sig, f, Var(l), c) != f.component(c, l):
                ok, witness = False, Var(l)

        # square: one random constructor payload, both sides per arity
        aid = rng.randrange(len(sig))
        t = _node_payload(rng, sig, aid, zc, budget)
        lhs = bracket(sig, f, t, c)
        rhs = _square_rhs(sig, f, t, c)
        if lhs != rhs:
            ok, witness = False, t

        # naturality in the context, along renamings of finite scopes
        if isinstance(c, Fin) and ok:
            d = Fin(rng.randrange(1, 4))
            g = _random_renaming(rng, c, d)
            full = _rand(rng, sig, zc, budget)
            left = map_leaves(sig, g, bracket(sig, f, full, c))
            right = bracket(sig, f, map_leaves(sig, f.Z.on_map(g), full), d)
            if left != right:
                ok, witness = False, full

        # naturality in the morphism argument, along pointed transformations
        if transforms and ok:
            tr = rng.choice(transforms)
            t2 = _rand(rng, sig, tr.source.on_ctx(c), budget)
            left = bracket(sig, precompose(f, tr), t2, c)
            right = bracket(sig, f, map_leaves(sig, tr.at(c), t2), c)
            if left != right:
                ok, witness = False, t2

        collector.record(ok, witness)
    return collector.finish(samples)


def _compatible_transforms(sig: Signature, f: PointedMorphism) -> list[PointedTransform]:
    out = [point_transform(f.Z)] if not isinstance(f.Z, IdZ) else []
    if isinstance(f.Z, TmZ):
        from .gen import minimal_term, producible

        if producible(sig, Fin(0)):
            out.append(box_const_transform(sig, minimal_term(sig, Fin(0))))
    return out


def _node_payload(rng: random.Random, sig: Signature, aid: int, zc: Ctx,
                  budget: int) -> Term:
    match sig.arity(aid):
        case Binding(binders):
            args = tuple(_rand(rng, sig, ext_n(zc, k), budget) for k in binders)
            return Node(aid, args)
        case Flattening():
            return Node(aid, (_rand(rng, sig, TmOver(zc), budget),))
    raise AssertionError


def _square_rhs(sig: Signature, f: PointedMorphism, t: Node, c: Ctx) -> Term:
    aid, args = t.arity_id, t.args
    match sig.arity(aid):
        case Binding(binders):
            moved = strength_binding(sig, binders, f.Z, args, c)
            return Node(aid, tuple(
                bracket(sig, f, a, ext_n(c, k)) for k, a in zip(binders, moved)
            ))
        case Flattening():
            return Node(aid, (bracket_flat_composite(sig, f, args[0], c),))
    raise AssertionError


def _random_renaming(rng: random.Random, c: Fin, d: Fin) -> LeafMap:
    table = {LIdx(i): LIdx(rng.randrange(d.n)) for i in range(c.n)}
    return tabulate_map(c, d, table)


# ---------------------------------------------------------------------------
# Monad laws for the derived multiplication.


def check_monad_laws(sig: Signature, samples: int, seed: int, budget: int = 10,
                     suite: str = "monad-laws") -> LawReport:
    rng = random.Random(seed)
    contexts = default_contexts(sig)
    collector = LawCollector(suite, seed)

    for _ in range(samples):
        c = rng.choice(contexts)
        ok = True
        witness = None

        u = _rand(rng, sig, c, budget)
        if mu(sig, Var(LBoxed(u)), c) != u:
            ok, witness = False, u
        from .terms import eta_wrap_map

        if mu(sig, map_leaves(sig, eta_wrap_map(c), u), c) != u:
            ok, witness = False, u

        w = _rand(rng, sig, TmOver(TmOver(c)), budget)
        inner_first = mu(sig, mu(sig, w, TmOver(c)), c)
        boxed_mu = LeafMap(TmOver(TmOver(c)), TmOver(c), _boxed_mu_apply(sig, c))
        outer_first = mu(sig, map_leaves(sig, boxed_mu, w), c)
        if inner_first != outer_first:
            ok, witness = False, w

        collector.record(ok, witness)
    return collector.finish(samples)


def _boxed_mu_apply(sig: Signature, c: Ctx):
    def apply(l: Leaf) -> Leaf:
        match l:
            case LBoxed(v):
                return LBoxed(mu(sig, v, c))
        raise AssertionError(f"leaf {l!r} does not fit a boxed-term scope")

    return apply


# ---------------------------------------------------------------------------
# Morphism checkers between substitution systems.

TermTransformer = Callable[[Term, Ctx], Term]


def _h_beta_payload(source: SubstitutionSystem, beta: TermTransformer,
                    aid: int, args: tuple, c: Ctx) -> tuple:
    """The signature functor applied to beta, on one constructor payload."""
    match source.sig.arity(aid):
        case Binding(binders):
            return tuple(beta(a, ext_n(c, k)) for k, a in zip(binders, args))
        case Flattening():
            src_sig = source.carrier_sig
            boxmap = LeafMap(TmOver(c), TmOver(c), _boxed_beta_apply(beta, c))
            return (beta(map_leaves(src_sig, boxmap, args[0]), TmOver(c)),)
    raise AssertionError


def _boxed_beta_apply(beta: TermTransformer, c: Ctx):
    def apply(l: Leaf) -> Leaf:
        match l:
            case LBoxed(w):
                return LBoxed(beta(w, c))
        raise AssertionError(f"leaf {l!r} does not fit a boxed-term scope")

    return apply


def is_hss_morphism(source: SubstitutionSystem, target: SubstitutionSystem,
                    beta: TermTransformer, samples: int, seed: int,
                    budget: int = 10, suite: str = "hss-morphism",
                    fs: list[PointedMorphism] | None = None) -> LawReport:
    """Check the unit triangle, the constructor square, and the bracket
    square of a substitution-system morphism on random samples."""
    rng = random.Random(seed)
    contexts = default_contexts(source.carrier_sig)
    collector = LawCollector(suite, seed)
    if fs is None:
        fs = _default_fs(source.carrier_sig)

    for _ in range(samples):
        c = rng.choice(contexts)
        ok = True
        witness = None

        if producible_leaf(source.carrier_sig, c):
            l = sample_leaf(source.carrier_sig, c, rng)
            if beta(Var(l), c) != Var(l):
                ok, witness = False, Var(l)

        aid = rng.randrange(len(source.sig))
        payload = _node_payload_for(rng, source, aid, c, budget)
        lhs = beta(source.tau(aid, payload, c), c)
        rhs = target.tau(aid, _h_beta_payload(source, beta, aid, payload, c), c)
        if lhs != rhs:
            ok, witness = False, source.tau(aid, payload, c)

        if ok:
            f = rng.choice(fs)
            zc = f.Z.on_ctx(c)
            t = _rand(rng, source.carrier_sig, zc, budget)
            pushed = PointedMorphism(
                f"beta.{f.name}", f.Z,
                lambda d, leaf, f=f: beta(f.component(d, leaf), d),
            )
            left = beta(source.bracket(f, t, c), c)
            right = target.bracket(pushed, beta(t, zc), c)
            if left != right:
                ok, witness = False, t

        collector.record(ok, witness)
    return collector.finish(samples)


def _node_payload_for(rng: random.Random, source: SubstitutionSystem, aid: int,
                      c: Ctx, budget: int) -> tuple:
    match source.sig.arity(aid):
        case Binding(binders):
            return tuple(_rand(rng, source.carrier_sig, ext_n(c, k), budget)
                         for k in binders)
        case Flattening():
            return (_rand(rng, source.carrier_sig, TmOver(c), budget),)
    raise AssertionError


def _default_fs(sig: Signature) -> list[PointedMorphism]:
    from .gen import minimal_term, producible

    fs = [identity_on_terms(sig), eta_morphism()]
    if producible(sig, Fin(0)):
        fs.append(const_closed(minimal_term(sig, Fin(0))))
    return fs


def is_monad_morphism(source: SubstitutionSystem, target: SubstitutionSystem,
                      beta: TermTransformer, samples: int, seed: int,
                      budget: int = 10, suite: str = "monad-morphism") -> LawReport:
    """Check compatibility with the unit and the derived multiplication."""
    rng = random.Random(seed)
    contexts = default_contexts(source.carrier_sig)
    collector = LawCollector(suite, seed)

    for _ in range(samples):
        c = rng.choice(contexts)
        ok = True
        witness = None

        if producible_leaf(source.carrier_sig, c):
            l = sample_leaf(source.carrier_sig, c, rng)
            if beta(Var(l), c) != Var(l):
                ok, witness = False, Var(l)

        t = _rand(rng, source.carrier_sig, TmOver(c), budget)
        lhs = beta(source.mu(t, c), c)
        boxmap = LeafMap(TmOver(c), TmOver(c), _boxed_beta_apply(beta, c))
        rhs = target.mu(beta(map_leaves(source.carrier_sig, boxmap, t), TmOver(c)), c)
        if lhs != rhs:
            ok, witness = False, t

        collector.record(ok, witness)
    return collector.finish(samples)


# ---------------------------------------------------------------------------
# The two strength laws, checked per arity at the term functor.


def check_theta_identity(sig: Signature, samples: int, seed: int,
                         budget: int = 10, suite: str = "theta-identity") -> LawReport:
    rng = random.Random(seed)
    contexts = default_contexts(sig)
    collector = LawCollector(suite, seed)
    Z = IdZ()

    for _ in range(samples):
        c = rng.choice(contexts)
        ok = True
        witness = None
        for aid in range(len(sig)):
            match sig.arity(aid):
                case Binding(binders):
                    args = tuple(_rand(rng, sig, ext_n(c, k), budget) for k in binders)
                    if strength_binding(sig, binders, Z, args, c) != args:
                        ok, witness = False, Node(aid, args)
                case Flattening():
                    u = _rand(rng, sig, TmOver(c), budget)
                    if strength_flat(sig, Z, u, c) != u:
                        ok, witness = False, Node(aid, (u,))
        collector.record(ok, witness)
    return collector.finish(samples)


def check_theta_composition(sig: Signature, samples: int, seed: int,
                            budget: int = 8,
                            suite: str = "theta-composition") -> LawReport:
    """The strength at a composite transformer factors through the strengths
    of the parts, per the second signature law (the strict model makes the
    associators identities)."""
    rng = random.Random(seed)
    contexts = default_contexts(sig)
    collector = LawCollector(suite, seed)

    def pool():
        return [ExtZ(), TmZ(sig)]

    for _ in range(samples):
        c = rng.choice(contexts)
        z_inner = rng.choice(pool())   # applied first
        z_outer = rng.choice(pool())
        zz = ComposePE(z_outer, z_inner)
        ok = True
        witness = None
        for aid in range(len(sig)):
            match sig.arity(aid):
                case Binding(binders):
                    for k in binders:
                        if k == 0:
                            continue
                        a = _rand(rng, sig, ext_n(zz.on_ctx(c), k), budget)
                        lhs = map_leaves(sig, dist_map(zz, c, k), a)
                        step1 = map_leaves(
                            sig, dist_map(z_outer, z_inner.on_ctx(c), k), a)
                        rhs = map_leaves(
                            sig, z_outer.on_map(dist_map(z_inner, c, k)), step1)
                        if lhs != rhs:
                            ok, witness = False, a
                case Flattening():
                    u = _rand(rng, sig, TmOver(zz.on_ctx(c)), budget)
                    lhs = strength_flat(sig, zz, u, c)
                    step1 = strength_flat(sig, z_outer, u, z_inner.on_ctx(c))
                    inner_point = z_inner.point(TmOver(zz.on_ctx(c)))
                    rhs = map_leaves(sig, z_outer.on_map(inner_point), step1)
                    if lhs != rhs:
                        ok, witness = False, u
        collector.record(ok, witness)
    return collector.finish(samples)
