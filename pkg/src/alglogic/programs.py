"""Fixed registry of machine program identifiers.

Every algorithm datum names one of these programs; the registry is closed at
build time.  Order matters: it is the tie-break key for canonical datum
ordering, so it must never be reshuffled.
"""

from __future__ import annotations

IDENTITY = "IDENTITY"
LOOP = "LOOP"
HALT = "HALT"
TRUE = "TRUE"
AND = "AND"
OR = "OR"
S_NEG = "S_NEG"
CURRY = "CURRY"
BETA_HALTWITNESS = "BETA_HALTWITNESS"
R_WITNESS = "R_WITNESS"
DEDUCE = "DEDUCE"
LIB_FROM_LIST = "LIB_FROM_LIST"

RULE_TRANS = "RULE_TRANS"
RULE_UNIV = "RULE_UNIV"
RULE_META_UNIV = "RULE_META_UNIV"
RULE_CONJ = "RULE_CONJ"
RULE_META_CONJ = "RULE_META_CONJ"
RULE_DISJ_INTRO = "RULE_DISJ_INTRO"
RULE_D_ELIM = "RULE_D_ELIM"
RULE_META_DISJ = "RULE_META_DISJ"
RULE_ELIM_CASE = "RULE_ELIM_CASE"
RULE_DOUBLE_NEG = "RULE_DOUBLE_NEG"
RULE_STRONG_DEMORGAN = "RULE_STRONG_DEMORGAN"

RULE_BETA_CURRY = "RULE_BETA_CURRY"
RULE_MP_FIXED = "RULE_MP_FIXED"
RULE_DENY = "RULE_DENY"
RULE_CONJ_CONTRA = "RULE_CONJ_CONTRA"
RULE_R_INTRO = "RULE_R_INTRO"

RULE_P1 = "RULE_P1"
RULE_P2 = "RULE_P2"
RULE_P3 = "RULE_P3"
RULE_P4 = "RULE_P4"
RULE_P5 = "RULE_P5"
RULE_P6 = "RULE_P6"
RULE_P7 = "RULE_P7"
RULE_P8 = "RULE_P8"
RULE_P9 = "RULE_P9"
RULE_P10 = "RULE_P10"
RULE_P11 = "RULE_P11"
RULE_P12 = "RULE_P12"
RULE_P13 = "RULE_P13"
RULE_P14 = "RULE_P14"

CORE_PROGRAMS = (
    IDENTITY,
    LOOP,
    HALT,
    TRUE,
    AND,
    OR,
    S_NEG,
    CURRY,
    BETA_HALTWITNESS,
    R_WITNESS,
    DEDUCE,
    LIB_FROM_LIST,
)

BASE_RULES = (
    RULE_TRANS,
    RULE_UNIV,
    RULE_META_UNIV,
    RULE_CONJ,
    RULE_META_CONJ,
    RULE_DISJ_INTRO,
    RULE_D_ELIM,
    RULE_META_DISJ,
    RULE_ELIM_CASE,
    RULE_DOUBLE_NEG,
    RULE_STRONG_DEMORGAN,
)

EXTENSION_RULES = (
    RULE_BETA_CURRY,
    RULE_MP_FIXED,
    RULE_DENY,
    RULE_CONJ_CONTRA,
    RULE_R_INTRO,
)

PARADOX_RULES = (
    RULE_P1,
    RULE_P2,
    RULE_P3,
    RULE_P4,
    RULE_P5,
    RULE_P6,
    RULE_P7,
    RULE_P8,
    RULE_P9,
    RULE_P10,
    RULE_P11,
    RULE_P12,
    RULE_P13,
    RULE_P14,
)

RULE_PROGRAMS = BASE_RULES + EXTENSION_RULES + PARADOX_RULES

REGISTRY = CORE_PROGRAMS + RULE_PROGRAMS

REGISTRY_INDEX = {name: i for i, name in enumerate(REGISTRY)}

# Rules that take captured data at construction time (capture arity).
CAPTURE_ARITY = {
    RULE_MP_FIXED: 1,       # the fixed library it applies modus ponens over
    RULE_DENY: 1,           # the single statement it contradicts
    BETA_HALTWITNESS: 1,    # the ambient library it tests m-truth against
    LIB_FROM_LIST: 1,       # the list of rule data it serves
}


def is_registered(name: str) -> bool:
    return name in REGISTRY_INDEX


def is_rule_program(name: str) -> bool:
    return name in REGISTRY_INDEX and name.startswith("RULE_")
