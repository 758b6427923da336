"""Binding signatures: ordered lists of constructor arities.

An arity is either a binding arity (one binder count per argument) or the
flattening arity, whose single argument lives over a term-extended scope.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Binding:
    """Constructor with one subterm per entry; entry k binds k fresh variables."""

    binders: tuple[int, ...]

    def __post_init__(self):
        if any(k < 0 for k in self.binders):
            raise ValueError("binder counts must be non-negative")


@dataclass(frozen=True)
class Flattening:
    """Constructor whose single argument is a term over boxed-term leaves."""


Arity = Binding | Flattening


@dataclass(frozen=True)
class Signature:
    """Ordered arities; a node's arity_id indexes into this tuple."""

    arities: tuple[Arity, ...]

    def __len__(self) -> int:
        return len(self.arities)

    def arity(self, arity_id: int) -> Arity:
        if not 0 <= arity_id < len(self.arities):
            raise ValueError(f"arity id {arity_id} out of range for signature of size {len(self.arities)}")
        return self.arities[arity_id]


def sum_sig(s1: Signature, s2: Signature) -> Signature:
    """Concatenate signatures; arity ids of s2 shift by len(s1)."""
    return Signature(s1.arities + s2.arities)


def parse_signature_expr(text: str) -> Signature:
    """Parse a signature literal: `lc`, `lce`, or `bind:k1,..,kp` / `flat` joined by `+`."""
    # Named signatures live in bindalg.lam; resolved lazily to avoid an import cycle.
    from . import lam

    named = {"lc": lam.LC, "lce": lam.LCE}
    if text in named:
        return named[text]
    arities: list[Arity] = []
    for piece in text.split("+"):
        piece = piece.strip()
        if piece == "flat":
            arities.append(Flattening())
        elif piece.startswith("bind:"):
            body = piece[len("bind:"):]
            try:
                counts = tuple(int(k) for k in body.split(",")) if body else ()
            except ValueError:
                raise ValueError(f"bad binder counts in signature piece {piece!r}") from None
            arities.append(Binding(counts))
        elif piece == "bind":
            arities.append(Binding(()))
        else:
            raise ValueError(f"unrecognized signature piece {piece!r}")
    return Signature(tuple(arities))
