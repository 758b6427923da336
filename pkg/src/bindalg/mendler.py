"""Generalized iteration in Mendler style, plus the fusion-law harness.

A step bundle supplies, for the variable case and for constructor nodes,
a step that receives the recursive-call handle abstractly. The fold is
realized by structural recursion on finite terms, so it exists and
terminates; naturality of the steps in their parameter is the bundle
author's obligation and is spot-checked elsewhere under renamings.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .gen import random_term, sample_leaf
from .signatures import Binding, Flattening, Signature
from .terms import Ctx, Leaf, Node, ScopeError, Term, TmOver, Var, ext_n
from .pointed import PointedEndo

Handle = Callable[[Term, Ctx], Any]


class StepContractError(Exception):
    """A step returned a value failing its declared target validity."""


@dataclass(frozen=True)
class StepBundle:
    """Steps for the fold T(Z c) -> X(c).

    var_step(handle, c, leaf) handles variable leaves of Z(c);
    node_step(handle, c, arity_id, args) handles constructor payloads whose
    arguments still live at Z-transported contexts. check, when present,
    validates each produced value against the target family.
    """

    name: str
    Z: PointedEndo
    var_step: Callable[[Handle, Ctx, Leaf], Any]
    node_step: Callable[[Handle, Ctx, int, tuple], Any]
    check: Callable[[Any, Ctx], bool] | None = None


def mendler_gfold(sig: Signature, psi: StepBundle, t: Term, c: Ctx):
    """The unique map satisfying h(node) = step(h)(payload), by recursion."""

    def handle(u: Term, d: Ctx):
        match u:
            case Var(l):
                v = psi.var_step(handle, d, l)
            case Node(aid, args):
                v = psi.node_step(handle, d, aid, args)
            case _:
                raise ScopeError(f"not a term: {u!r}")
        if psi.check is not None and not psi.check(v, d):
            raise StepContractError(f"step of {psi.name!r} produced an invalid value at {d!r}")
        return v

    return handle(t, c)


def apply_step(sig: Signature, psi: StepBundle, h: Handle, payload, c: Ctx):
    """One step of psi on a payload (a leaf or a node's (arity_id, args))."""
    if isinstance(payload, (Var,)):
        return psi.var_step(h, c, payload.leaf)
    aid, args = payload
    return psi.node_step(h, c, aid, args)


# ---------------------------------------------------------------------------
# Fusion law harness.


@dataclass
class FusionReport:
    name: str
    samples: int
    premise_failures: int = 0
    conclusion_failures: int = 0
    seed: int = 0
    counterexamples: list = field(default_factory=list)

    def summary_line(self) -> str:
        return (f"suite=fusion[{self.name}] samples={self.samples} "
                f"failures={self.premise_failures + self.conclusion_failures} "
                f"seed={self.seed}")


def sample_payload(sig: Signature, Z: PointedEndo, c: Ctx, rng: random.Random,
                   budget: int):
    """Random variable-or-node payload at the Z-transported context."""
    zc = Z.on_ctx(c)
    choices: list = ["var"] + [aid for aid in range(len(sig))]
    while True:
        pick = rng.choice(choices)
        if pick == "var":
            try:
                return Var(sample_leaf(sig, zc, rng, budget))
            except Exception:
                choices.remove("var")
                continue
        match sig.arity(pick):
            case Binding(binders):
                args = tuple(
                    random_term(sig, ext_n(zc, k), max(budget // max(len(binders), 1), 1),
                                rng.randrange(2**32))
                    for k in binders
                )
                return (pick, args)
            case Flattening():
                u = random_term(sig, TmOver(zc), budget, rng.randrange(2**32))
                return (pick, (u,))


def check_fusion_instance(sig: Signature, psi: StepBundle, psi_prime: StepBundle,
                          phi: Callable[[Any, Ctx], Any], samples: int, seed: int,
                          contexts: list[Ctx], name: str = "instance",
                          budget: int = 10,
                          equal: Callable[[Any, Any], bool] | None = None) -> FusionReport:
    """Check the fusion premise and conclusion on random samples.

    phi is the component family of a natural transformation between the two
    target families, applied by post-composition (all shipped instances are
    of this shape). The premise compares phi . step(psi) with
    step(psi_prime) . phi on sampled payloads and the canonical recursive
    handle; the conclusion compares phi(fold(psi)) with fold(psi_prime) on
    sampled terms. The law predicts zero conclusion failures whenever the
    premise never fails.
    """
    if equal is None:
        equal = lambda a, b: a == b
    rng = random.Random(seed)
    report = FusionReport(name, samples, seed=seed)

    def fold_psi(t: Term, d: Ctx):
        return mendler_gfold(sig, psi, t, d)

    def phi_after(h: Handle) -> Handle:
        return lambda t, d: phi(h(t, d), d)

    for _ in range(samples):
        c = rng.choice(contexts)
        payload = sample_payload(sig, psi.Z, c, rng, budget)
        h = fold_psi
        lhs = phi(apply_step(sig, psi, h, payload, c), c)
        rhs = apply_step(sig, psi_prime, phi_after(h), payload, c)
        if not equal(lhs, rhs):
            report.premise_failures += 1
            if len(report.counterexamples) < 10:
                report.counterexamples.append(("premise", c, payload))

        t = random_term(sig, psi.Z.on_ctx(c), budget, rng.randrange(2**32))
        lhs_t = phi(fold_psi(t, c), c)
        rhs_t = mendler_gfold(sig, psi_prime, t, c)
        if not equal(lhs_t, rhs_t):
            report.conclusion_failures += 1
            if len(report.counterexamples) < 10:
                report.counterexamples.append(("conclusion", c, t))
    return report
