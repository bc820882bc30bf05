"""Exact-arithmetic construction and verification of tilting bundles on
Grassmannians, partial flag varieties, their fibrations, and the descent
bookkeeping of their twisted forms."""

__version__ = "0.1.0"

from .partitions import (
    CONTAINMENT_ORDER,
    SIZE_ORDER,
    OrderedPartitionSet,
    conjugate,
    contains,
    enumerate_box_partitions,
)
from .schur import (
    hom_expand,
    lr_expand,
    schur_dimension,
    split_bundle_expand,
    twist_weight,
)
from .bwb import (
    CohomologyResult,
    FlagSpace,
    HomogeneousBundle,
    flag_cohomology,
    grass_pushforward,
    grassmannian,
    localization_euler,
    of_quot,
    of_sub,
    of_sub_dual,
    pn_line_cohomology,
    projective_space,
)
from .collections import (
    CollectionSpec,
    ExtTable,
    VerificationReport,
    beilinson_collection,
    end_quiver_dims,
    ext_table,
    flag_collection,
    kapranov_collection,
    verify_tilting,
)
from .descent import (
    CSAClass,
    DescentSummary,
    bs_tilting_summary,
    generalized_bs_summary,
    index_of_power,
    twisted_tower_summary,
)
from .fibration import (
    BaseModel,
    FibrationPlan,
    GrassFiber,
    TableFiber,
    candidate_ext_table,
    relative_pushforward,
    tower_compose,
    twist_search,
)

__all__ = [name for name in dir() if not name.startswith("_")]
