"""Lambda calculus with and without explicit flattening.

The flattening constructor is syntax for unevaluated substitution; the
initial algebra morphism into the extended system on plain lambda terms
resolves it by actual substitution. Both a direct recursion and a
Mendler-style fold realize that morphism, and an independent index-based
oracle checks it.
"""
from __future__ import annotations

from dataclasses import dataclass

from .signatures import Binding, Flattening, Signature, sum_sig
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
    map_leaves,
)
from .pointed import (
    IdZ,
    PointedMorphism,
    strength_binding,
    strength_flat,
)
from .hss import (
    InitialSystem,
    SubstitutionSystem,
    bracket,
    bracket_bundle,
    mu,
)
from .mendler import StepBundle, mendler_gfold

LC = Signature((Binding((0, 0)), Binding((1,))))
LCE = sum_sig(LC, Signature((Flattening(),)))
DUPAPP = Signature((Binding((0, 0)), Binding((0, 0)), Binding((1,))))

APP, ABS, FLAT = 0, 1, 2
DUP_APP, DUP_APP2, DUP_ABS = 0, 1, 2

CLOSED_ID = Node(ABS, (Var(LNew()),))  # \.0


def lam_app(fn: Term, arg: Term) -> Term:
    return Node(APP, (fn, arg))


def lam_abs(body: Term) -> Term:
    return Node(ABS, (body,))


def lam_flat(payload: Term) -> Term:
    return Node(FLAT, (payload,))


def embed(t: Term) -> Term:
    """Inclusion of plain lambda terms into the flattening calculus;
    arity ids coincide, so the representation is shared."""
    return t


def mu_lam(t: Term, c: Ctx) -> Term:
    """Multiplication of the plain lambda-term monad."""
    return mu(LC, t, c)


def extended_algebra_apply(arity_id: int, args: tuple[Term, ...], c: Ctx) -> Term:
    """Algebra of the extended signature on plain lambda terms: application
    and abstraction build nodes, flattening payloads are multiplied away."""
    if arity_id in (APP, ABS):
        return Node(arity_id, tuple(args))
    if arity_id == FLAT:
        return mu_lam(args[0], c)
    raise ScopeError(f"arity id {arity_id} outside the extended signature")


class ExtendedLamSystem(SubstitutionSystem):
    """Plain lambda terms as a substitution system for the extended
    signature; its bracket is the plain bracket."""

    def __init__(self):
        self.sig = LCE
        self.carrier_sig = LC

    def tau(self, arity_id, args, c):
        return extended_algebra_apply(arity_id, tuple(args), c)

    def bracket(self, f, t, c):
        return bracket(LC, f, t, c)


# ---------------------------------------------------------------------------
# Resolution of explicit flattening: direct recursion and via the fold.


def eval_flatten(t: Term, c: Ctx) -> Term:
    """Map a term with explicit flattenings to the plain term it denotes."""
    match t:
        case Var(_):
            return t
        case Node(aid, args):
            if aid == APP:
                return Node(APP, (eval_flatten(args[0], c), eval_flatten(args[1], c)))
            if aid == ABS:
                return Node(ABS, (eval_flatten(args[0], Ext(c)),))
            if aid == FLAT:
                outer = eval_flatten(args[0], TmOver(c))
                boxed = map_leaves(LC, _eval_boxes(c), outer)
                return mu_lam(boxed, c)
    raise ScopeError(f"not a term of the flattening calculus: {t!r}")


def _eval_boxes(c: Ctx) -> LeafMap:
    def apply(l: Leaf) -> Leaf:
        match l:
            case LBoxed(w):
                return LBoxed(eval_flatten(w, c))
        raise ScopeError(f"leaf {l!r} does not fit a boxed-term scope")

    return LeafMap(TmOver(c), TmOver(c), apply)


def eval_bundle() -> StepBundle:
    """The same morphism as a step bundle for the Mendler-style fold."""

    def var_step(h, c, l):
        return Var(l)

    def node_step(h, c, aid, args):
        if aid == APP:
            return Node(APP, (h(args[0], c), h(args[1], c)))
        if aid == ABS:
            return Node(ABS, (h(args[0], Ext(c)),))
        if aid == FLAT:
            outer = h(args[0], TmOver(c))
            src = TmOver(c)

            def box(l: Leaf) -> Leaf:
                match l:
                    case LBoxed(w):
                        return LBoxed(h(w, c))
                raise ScopeError(f"leaf {l!r} does not fit {src!r}")

            boxed = map_leaves(LC, LeafMap(src, src, box), outer)
            return mu_lam(boxed, c)
        raise ScopeError(f"arity id {aid} outside the extended signature")

    return StepBundle("eval", IdZ(), var_step, node_step)


def eval_via_gfold(t: Term, c: Ctx) -> Term:
    return mendler_gfold(LCE, eval_bundle(), t, c)


def eval_target_bundle(f: PointedMorphism) -> StepBundle:
    """Steps that fold a flattening-calculus term directly into the extended
    system on plain terms (the fused right-hand side of the initiality
    equation for the morphism above)."""
    Z = f.Z

    def var_step(h, c, l):
        return eval_flatten(f.component(c, l), c)

    def node_step(h, c, aid, args):
        match LCE.arity(aid):
            case Binding(binders):
                moved = strength_binding(LCE, binders, Z, args, c)
                folded = tuple(h(a, ext_n(c, k)) for k, a in zip(binders, moved))
                return extended_algebra_apply(aid, folded, c)
            case Flattening():
                u1 = strength_flat(LCE, Z, args[0], c)
                src = TmOver(Z.on_ctx(c))

                def box(l: Leaf) -> Leaf:
                    match l:
                        case LBoxed(w):
                            return LBoxed(h(w, c))
                    raise ScopeError(f"leaf {l!r} does not fit {src!r}")

                u2 = map_leaves(LCE, Z.on_map(LeafMap(src, TmOver(c), box)), u1)
                return extended_algebra_apply(FLAT, (h(u2, TmOver(c)),), c)
        raise ScopeError(f"arity id {aid} outside the extended signature")

    return StepBundle(f"eval-target[{f.name}]", Z, var_step, node_step)


# ---------------------------------------------------------------------------
# The application-swapping endomorphism on the duplicated-application
# signature: a monad morphism that is not a substitution-system morphism.


def swap_apps(t: Term) -> Term:
    """Recursively turns every first-application node into the second copy;
    the other constructors are untouched. Leaves are ambient context
    elements and stay fixed, which makes this the component of a natural
    transformation at every context."""
    match t:
        case Var(_):
            return t
        case Node(aid, args):
            new_id = DUP_APP2 if aid == DUP_APP else aid
            return Node(new_id, tuple(swap_apps(a) for a in args))
    raise ScopeError(f"not a term: {t!r}")


def swap_app_args(t: Term, c: Ctx) -> Term:
    """Swap the two arguments of every application, recursively; used as a
    deliberately unlawful transformer in the fusion harness. Flattening
    payloads are handled as the horizontal composite: boxes first, then the
    outer structure (whose now-ambient boxes stay fixed)."""
    match t:
        case Var(_):
            return t
        case Node(aid, args):
            if aid == APP:
                return Node(APP, (swap_app_args(args[1], c), swap_app_args(args[0], c)))
            if aid == ABS:
                return Node(ABS, (swap_app_args(args[0], Ext(c)),))
            if aid == FLAT:
                boxed = map_leaves(LCE, _swap_boxes(c), args[0])
                return Node(FLAT, (swap_app_args(boxed, TmOver(c)),))
    raise ScopeError(f"not a term of the flattening calculus: {t!r}")


def _swap_boxes(c: Ctx) -> LeafMap:
    def apply(l: Leaf) -> Leaf:
        match l:
            case LBoxed(w):
                return LBoxed(swap_app_args(w, c))
        raise ScopeError(f"leaf {l!r} does not fit a boxed-term scope")

    return LeafMap(TmOver(c), TmOver(c), apply)


@dataclass
class NonfullnessWitness:
    """A monad morphism whose constructor square fails: the per-arity
    compatibility diagram does not commute even though every monad law
    compatibility does."""

    monad_report: "object"      # LawReport: zero failures expected
    counterexample: Term        # a first-copy application of two variables
    mapped_node: Term           # beta applied after the constructor
    rebuilt_node: Term          # constructor applied after beta on arguments
    tau_square_fails: bool

    @property
    def expected_pattern(self) -> bool:
        return self.monad_report.failures == 0 and self.tau_square_fails


def nonfullness_witness(samples: int = 500, seed: int = 0) -> NonfullnessWitness:
    from .laws import is_monad_morphism
    from .terms import Fin, LIdx

    system = InitialSystem(DUPAPP)
    beta = lambda t, c: swap_apps(t)
    report = is_monad_morphism(system, system, beta, samples, seed,
                               suite="nonfullness-monad")

    c = Fin(2)
    x, y = Var(LIdx(0)), Var(LIdx(1))
    node = Node(DUP_APP, (x, y))
    mapped = swap_apps(node)                               # beta . tau
    rebuilt = Node(DUP_APP, (swap_apps(x), swap_apps(y)))  # tau . H(beta)
    return NonfullnessWitness(
        monad_report=report,
        counterexample=node,
        mapped_node=mapped,
        rebuilt_node=rebuilt,
        tau_square_fails=(mapped != rebuilt),
    )


# ---------------------------------------------------------------------------
# Initiality instance: resolving flattening commutes with every bracket.


def shipped_lce_morphisms() -> list[PointedMorphism]:
    from .pointed import const_closed, eta_morphism, identity_on_terms

    return [identity_on_terms(LCE), eta_morphism(), const_closed(CLOSED_ID)]


def check_init_compat(samples: int, seed: int, budget: int = 12):
    """For every shipped pointed morphism f and sampled term, resolving
    flattening after the bracket agrees with the extended-system bracket of
    the resolved morphism on the resolved term."""
    from .laws import LawCollector, default_contexts
    import random

    rng = random.Random(seed)
    extended = ExtendedLamSystem()
    fs = shipped_lce_morphisms()
    collector = LawCollector("init-compat", seed)
    contexts = default_contexts()
    for _ in range(samples):
        c = rng.choice(contexts)
        ok = True
        witness = None
        for f in fs:
            zc = f.Z.on_ctx(c)
            t = _rand(rng, LCE, zc, budget)
            lhs = eval_flatten(bracket(LCE, f, t, c), c)
            pushed = PointedMorphism(
                f"eval.{f.name}", f.Z,
                lambda d, l, f=f: eval_flatten(f.component(d, l), d),
            )
            rhs = extended.bracket(pushed, eval_flatten(t, zc), c)
            if lhs != rhs:
                ok = False
                witness = t
                break
        collector.record(ok, witness)
    return collector.finish(samples)


def _rand(rng, sig, c, budget):
    from .gen import random_term

    return random_term(sig, c, budget, rng.randrange(2**32))


# ---------------------------------------------------------------------------
# Shipped fusion instances.


def fusion_reflexive(samples: int, seed: int):
    """phi = identity with identical step bundles: no failures anywhere."""
    from .laws import default_contexts
    from .mendler import check_fusion_instance
    from .pointed import identity_on_terms

    psi = bracket_bundle(LCE, identity_on_terms(LCE))
    return check_fusion_instance(
        LCE, psi, psi, lambda v, c: v, samples, seed,
        contexts=default_contexts(), name="reflexive",
    )


def fusion_eval_instance(f: PointedMorphism, samples: int, seed: int):
    """Post-composing the bracket fold with flattening resolution fuses into
    a single fold into the extended system."""
    from .laws import default_contexts
    from .mendler import check_fusion_instance

    psi = bracket_bundle(LCE, f)
    psi_prime = eval_target_bundle(f)
    return check_fusion_instance(
        LCE, psi, psi_prime, lambda v, c: eval_flatten(v, c), samples, seed,
        contexts=default_contexts(), name=f"eval[{f.name}]",
    )


def fusion_broken(samples: int, seed: int):
    """Argument swapping is not natural with respect to the step structure:
    the premise must fail (and is reported, not hidden)."""
    from .laws import default_contexts
    from .mendler import check_fusion_instance
    from .pointed import eta_morphism

    psi = bracket_bundle(LCE, eta_morphism())
    return check_fusion_instance(
        LCE, psi, psi, lambda v, c: swap_app_args(v, c), samples, seed,
        contexts=default_contexts(), name="broken-swap",
    )
