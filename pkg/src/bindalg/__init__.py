"""Terms over binding signatures, with substitution derived from the
bracket operation and every law checked by randomized testing."""

from .signatures import Arity, Binding, Flattening, Signature, parse_signature_expr, sum_sig
from .terms import (
    Ctx,
    Ext,
    Fin,
    LBoxed,
    LIdx,
    LNew,
    LOld,
    Leaf,
    LeafMap,
    Node,
    ScopeError,
    Term,
    TmOver,
    Var,
    compose_map,
    eta_wrap_map,
    id_map,
    leaf_is_wf,
    map_leaves,
    size,
    term_eq,
    validate,
    weaken_map,
)
from .pointed import (
    ComposePE,
    ExtZ,
    IdZ,
    PointedEndo,
    PointedMorphism,
    TmZ,
    const_closed,
    dist_map,
    eta_morphism,
    identity_on_terms,
    strength_binding,
    strength_flat,
)
from .gen import GenerationError, minimal_term, random_term
from .hss import (
    InitialSystem,
    SubstRule,
    SubstitutionSystem,
    bracket,
    bracket_via_gfold,
    mu,
    subst,
    subst1,
)
from .mendler import StepBundle, check_fusion_instance, mendler_gfold
from .laws import (
    LawReport,
    check_bracket_laws,
    check_monad_laws,
    check_theta_composition,
    check_theta_identity,
    is_hss_morphism,
    is_monad_morphism,
)
from .lam import (
    DUPAPP,
    LC,
    LCE,
    ExtendedLamSystem,
    check_init_compat,
    embed,
    eval_flatten,
    eval_via_gfold,
    extended_algebra_apply,
    mu_lam,
    nonfullness_witness,
    swap_apps,
)
from .oracle import naive_flatten, naive_subst
from .syntax import ParseError, parse_term, print_term

__all__ = [name for name in dir() if not name.startswith("_")]
