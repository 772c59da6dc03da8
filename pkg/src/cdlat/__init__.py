"""Chermak-Delgado lattices of finite groups given by pc presentations."""

from .cd import CdLattice, cd_lattice, cd_measure, check_direct_product, check_maxmember, check_omnibus, is_chain
from .constructions import (
    build,
    build_l1n,
    build_l1odd,
    build_l2n,
    build_l2odd,
    check_l1_criteria,
    check_l2_criteria,
    check_lemma_centr,
    corpus,
    find_c,
)
from .errors import (
    CdlatError,
    CollectionError,
    EnumerationLimitError,
    GroupMismatchError,
    HypothesisError,
    NotNormalError,
    NotSubgroupError,
    PresentationError,
)
from .extension import (
    ExtensionData,
    chain_group,
    extend,
    predicted_cd,
    random_subgroup_probe,
    verify_extension,
    verify_extension_measures,
    verify_gcentralizers,
)
from .groups import (
    CosetGroup,
    FiniteGroup,
    PcGroup,
    Subgroup,
    TableGroup,
    as_group,
    center,
    commutator_subgroup,
    derived_subgroup,
    quotient_group,
    subgroup_closure,
    upper_central_series,
)
from .kernels import BACKEND
from .pcgroup import (
    Element,
    PcPresentation,
    check_consistency,
    collect,
    direct_product,
    from_json,
    semidirect_product,
    to_json,
)
from .report import VerificationReport
from .subgroups import (
    SubgroupSet,
    all_subgroups,
    all_subgroups_closure,
    all_subgroups_layered,
    hasse,
    normal_subgroups,
    to_dot,
)

__version__ = "0.1.0"

__all__ = [
    "all_subgroups",
    "all_subgroups_closure",
    "all_subgroups_layered",
    "as_group",
    "BACKEND",
    "build",
    "build_l1n",
    "build_l1odd",
    "build_l2n",
    "build_l2odd",
    "cd_lattice",
    "cd_measure",
    "CdlatError",
    "CdLattice",
    "center",
    "chain_group",
    "check_consistency",
    "check_direct_product",
    "check_l1_criteria",
    "check_l2_criteria",
    "check_lemma_centr",
    "check_maxmember",
    "check_omnibus",
    "collect",
    "CollectionError",
    "commutator_subgroup",
    "corpus",
    "CosetGroup",
    "derived_subgroup",
    "direct_product",
    "Element",
    "EnumerationLimitError",
    "extend",
    "ExtensionData",
    "find_c",
    "FiniteGroup",
    "from_json",
    "GroupMismatchError",
    "hasse",
    "HypothesisError",
    "is_chain",
    "normal_subgroups",
    "NotNormalError",
    "NotSubgroupError",
    "PcGroup",
    "PcPresentation",
    "predicted_cd",
    "PresentationError",
    "quotient_group",
    "random_subgroup_probe",
    "semidirect_product",
    "Subgroup",
    "subgroup_closure",
    "SubgroupSet",
    "TableGroup",
    "to_dot",
    "to_json",
    "upper_central_series",
    "VerificationReport",
    "verify_extension",
    "verify_extension_measures",
    "verify_gcentralizers",
]
