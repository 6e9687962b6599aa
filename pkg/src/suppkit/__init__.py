"""Exact support, co-support and adic-finiteness computations for bounded
complexes over polynomial rings, PIDs and a closed-form DVR calculus."""

from __future__ import annotations

from .adic import detect_iso_via_functor, gamma_preserves_adic_finiteness_check, is_adically_finite, prime_filtration
from .complexes import (
    ChainComplex,
    ChainMap,
    cech_complex,
    cone,
    direct_sum,
    hom_complexes,
    inf_sup_amp,
    koszul_complex,
    shift,
    tensor_complexes,
    truncate_soft_above,
)
from .derived import (
    derived_completion_fg,
    derived_hom,
    derived_tensor,
    ext,
    free_resolution,
    local_cohomology_fiber,
    tor,
    torsion_submodule,
)
from .dvrcalc import DvrObject, dvr_cosupp, dvr_gamma, dvr_lambda, dvr_rhom, dvr_supp, dvr_tensor, parse_dvr
from .errors import (
    AmbientMismatch,
    ConditionDisagreement,
    IncompleteAmbient,
    NotAComplex,
    NotCertifiable,
    NotMaximal,
    NotMonomial,
    NotTabulated,
    PreconditionFailed,
    RingMismatch,
    SemanticError,
    SessionSyntaxError,
    SuppkitError,
    UnsupportedIdeal,
    UnsupportedRing,
)
from .exactla import ExactMatrix, homology_invariants, rank_kernel, smith_normal_form
from .grobner import Ideal, PrimeIdeal, groebner_basis, ideal_arith, radical_membership, saturation, syzygies
from .modules import FpModule
from .polys import PolyRing
from .rings import QQ, ZZ, PrimeField
from .session import parse_session
from .support import bass_numbers, cosupp_membership_maximal, supp_fg, supp_membership

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatch",
    "ChainComplex",
    "ChainMap",
    "ConditionDisagreement",
    "DvrObject",
    "ExactMatrix",
    "FpModule",
    "Ideal",
    "IncompleteAmbient",
    "NotAComplex",
    "NotCertifiable",
    "NotMaximal",
    "NotMonomial",
    "NotTabulated",
    "PolyRing",
    "PreconditionFailed",
    "PrimeField",
    "PrimeIdeal",
    "QQ",
    "RingMismatch",
    "SemanticError",
    "SessionSyntaxError",
    "SuppkitError",
    "UnsupportedIdeal",
    "UnsupportedRing",
    "ZZ",
    "annotations",
    "bass_numbers",
    "cech_complex",
    "cone",
    "cosupp_membership_maximal",
    "derived_completion_fg",
    "derived_hom",
    "derived_tensor",
    "detect_iso_via_functor",
    "direct_sum",
    "dvr_cosupp",
    "dvr_gamma",
    "dvr_lambda",
    "dvr_rhom",
    "dvr_supp",
    "dvr_tensor",
    "ext",
    "free_resolution",
    "gamma_preserves_adic_finiteness_check",
    "groebner_basis",
    "hom_complexes",
    "homology_invariants",
    "ideal_arith",
    "inf_sup_amp",
    "is_adically_finite",
    "koszul_complex",
    "local_cohomology_fiber",
    "parse_dvr",
    "parse_session",
    "prime_filtration",
    "radical_membership",
    "rank_kernel",
    "saturation",
    "shift",
    "smith_normal_form",
    "supp_fg",
    "supp_membership",
    "syzygies",
    "tensor_complexes",
    "tor",
    "torsion_submodule",
    "truncate_soft_above",
]
