"""exotic4: verification engine for torus-surgery constructions of exotic
smooth 4-manifolds.

Builds fundamental-group presentations for a two-parameter surgery family,
machine-checks the claimed fundamental groups by Todd-Coxeter coset
enumeration and Smith-normal-form abelianization, tracks characteristic
numbers and intersection forms, and reproduces the Seiberg-Witten
basic-class bookkeeping that distinguishes the smooth structures.
"""

__version__ = "0.1.0"

from .words import Word, gen, commutator, relator, parse_word, parse_relation
from .presentations import Presentation, TietzeResult, tietze_simplify
from .coset import (
    Completed,
    LimitExceeded,
    EnumerationOutcome,
    CollapseResult,
    certified_collapse,
    enumerate_cosets,
    DEFAULT_LIMIT,
)
from .intlinalg import (
    IntMatrix,
    smith_normal_form,
    determinant,
    exponent_matrix,
    abelian_invariants,
    AbelianInvariants,
    classify_form,
    signature_and_rank,
    FormType,
)
from .manifolds import (
    FamilyParams,
    CharNumbers,
    SurgeryMove,
    ManifoldModel,
    ParameterError,
    ScheduleMismatchError,
    CertificateError,
    PI1_TRIVIAL,
    COMPLEMENT_TRIVIAL,
    build_Xk,
    build_Mkn,
    build_Zk,
    schedule_Mkn,
    apply_schedule,
    apply_log_transform,
    claimed_invariants,
    verify_pi1,
    with_pi1_certificate,
    complement_presentation,
    verify_complement,
    with_complement_certificate,
    Pi1Verdict,
    ComplementVerdict,
)
from .sw import (
    ClassVector,
    BasicClassSet,
    ContractError,
    enumerate_Zk_candidates,
    basic_classes,
    spin_parity,
    classify_homeomorphism,
    irreducibility_check,
    distinguish,
    symplectic_tag,
    HomeoVerdict,
    IrreducibilityVerdict,
    SmoothVerdict,
)
from .report import RunSpec, SpecError, parse_spec, run, render_json, render_table

__all__ = [
    "Word",
    "gen",
    "commutator",
    "relator",
    "parse_word",
    "parse_relation",
    "Presentation",
    "TietzeResult",
    "tietze_simplify",
    "Completed",
    "LimitExceeded",
    "EnumerationOutcome",
    "CollapseResult",
    "certified_collapse",
    "enumerate_cosets",
    "DEFAULT_LIMIT",
    "IntMatrix",
    "smith_normal_form",
    "determinant",
    "exponent_matrix",
    "abelian_invariants",
    "AbelianInvariants",
    "classify_form",
    "signature_and_rank",
    "FormType",
    "FamilyParams",
    "CharNumbers",
    "SurgeryMove",
    "ManifoldModel",
    "ParameterError",
    "ScheduleMismatchError",
    "CertificateError",
    "PI1_TRIVIAL",
    "COMPLEMENT_TRIVIAL",
    "build_Xk",
    "build_Mkn",
    "build_Zk",
    "schedule_Mkn",
    "apply_schedule",
    "apply_log_transform",
    "claimed_invariants",
    "verify_pi1",
    "with_pi1_certificate",
    "complement_presentation",
    "verify_complement",
    "with_complement_certificate",
    "Pi1Verdict",
    "ComplementVerdict",
    "ClassVector",
    "BasicClassSet",
    "ContractError",
    "enumerate_Zk_candidates",
    "basic_classes",
    "spin_parity",
    "classify_homeomorphism",
    "irreducibility_check",
    "distinguish",
    "symplectic_tag",
    "HomeoVerdict",
    "IrreducibilityVerdict",
    "SmoothVerdict",
    "RunSpec",
    "SpecError",
    "parse_spec",
    "run",
    "render_json",
    "render_table",
    "__version__",
]
