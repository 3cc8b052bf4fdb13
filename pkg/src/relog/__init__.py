"""Finite-algebra workbench for relevant-logic matrix semantics.

The package is organized around five engines:

- `relog.algebra`: finite algebras in the meet/join/fusion/neg signature,
  the axiom checklist, the builtin algebras, powers and quotients.
- `relog.subcon`: subuniverse and congruence computation, simplicity,
  and the congruence extension property.
- `relog.morph`: homomorphism/automorphism enumeration, extensibility,
  and span amalgamation.
- `relog.logic`: formulas, parsing, the consequence decision procedure,
  and bounded variable-sharing scans.
- `relog.interp`: free algebras over a finite generator and interpolant
  synthesis for deducibility.
"""

from .algebra import (
    AXIOM_NAMES,
    AxiomReport,
    BUILTIN_NAMES,
    FiniteAlgebra,
    arrow,
    builtin,
    builtin_belnap_m,
    builtin_boolean2,
    builtin_crystal,
    load_algebra,
    load_algebra_file,
    power,
    quotient,
    serialize,
    subalgebra,
    validate_relevant_algebra,
)
from .interp import (
    FreeAlgebra,
    InterpolationResult,
    deductive_interpolant,
    free_algebra,
    maehara_interpolant,
    verify_interpolant,
)
from .logic import (
    And,
    EntailmentVerdict,
    Formula,
    Fuse,
    Not,
    Or,
    R_THEOREM_SCHEMATA,
    Var,
    arrow_formula,
    entails,
    evaluate,
    parse_formula,
    parse_premises,
    theorem,
    verify_countermodel,
    vsp_scan,
)
from .morph import (
    Amalgam,
    Morphism,
    Span,
    amalgamate_span,
    automorphisms,
    embeddings,
    homomorphisms,
    is_extensible,
    isomorphisms,
)
from .subcon import (
    CepWitness,
    Congruence,
    all_subuniverses,
    check_cep_class,
    check_cep_pair,
    congruence_lattice,
    full_congruence,
    generated_subuniverse,
    hs_class,
    identity_congruence,
    is_fsi,
    is_simple,
    principal_congruence,
)

__all__ = [
    "AXIOM_NAMES",
    "Amalgam",
    "And",
    "AxiomReport",
    "BUILTIN_NAMES",
    "CepWitness",
    "Congruence",
    "EntailmentVerdict",
    "FiniteAlgebra",
    "Formula",
    "FreeAlgebra",
    "Fuse",
    "InterpolationResult",
    "Morphism",
    "Not",
    "Or",
    "R_THEOREM_SCHEMATA",
    "Span",
    "Var",
    "all_subuniverses",
    "amalgamate_span",
    "arrow",
    "arrow_formula",
    "automorphisms",
    "builtin",
    "builtin_belnap_m",
    "builtin_boolean2",
    "builtin_crystal",
    "check_cep_class",
    "check_cep_pair",
    "congruence_lattice",
    "deductive_interpolant",
    "embeddings",
    "entails",
    "evaluate",
    "free_algebra",
    "full_congruence",
    "generated_subuniverse",
    "homomorphisms",
    "hs_class",
    "identity_congruence",
    "is_extensible",
    "is_fsi",
    "is_simple",
    "isomorphisms",
    "load_algebra",
    "load_algebra_file",
    "maehara_interpolant",
    "parse_formula",
    "parse_premises",
    "power",
    "principal_congruence",
    "quotient",
    "serialize",
    "subalgebra",
    "theorem",
    "validate_relevant_algebra",
    "verify_countermodel",
    "verify_interpolant",
    "vsp_scan",
]

__version__ = "0.1.0"
