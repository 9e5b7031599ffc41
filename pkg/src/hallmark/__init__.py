"""Finite permutation groups, Hall subgroups and pronormality."""

from .config import BudgetExceeded
from .perm import Permutation, PermGroup, group_from_generators
from .structure import (
    Epimorphism,
    Subgroup,
    SubgroupClass,
    as_subgroup,
    conjugacy_class,
    conjugate,
    join,
    minimal_normal_in,
    normal_subgroups,
    normalizer,
    quotient,
    subgroup,
    subgroups,
)
from .hall import (
    HallReport,
    PrimeSet,
    PronormalityWitness,
    frattini_holds,
    hall_subgroups,
    is_hall_subgroup,
    is_pi_separable,
    is_pronormal,
    is_strongly_pronormal,
    lemma16_test,
    pi_part,
)
from .theorems import (
    ExtensionMissing,
    LiftMissing,
    NoInvariantClass,
    NotEPi,
    e_pi_criterion,
    extend_hall,
    frattini_hall,
    lift_hall_from_quotient,
    pronormal_hall_in_normal,
)

__version__ = "0.1.0"
