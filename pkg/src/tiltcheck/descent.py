"""Rank and endomorphism bookkeeping for twisted forms of projective spaces,
Grassmannians, and towers of either.

Nothing here constructs sheaves or cocycles.  Central simple algebras enter
only through the index sequence ind(A^i); every dimension is computed over a
splitting field, which is legitimate because Hom dimensions are invariant
under base change.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from math import comb, gcd
from typing import Optional

from .partitions import conjugate, enumerate_box_partitions, CONTAINMENT_ORDER
from .collections import schur_pair_ext
from .schur import lr_expand, schur_dimension

PERIOD_EQUALS_INDEX = "period_equals_index"


@dataclass(frozen=True)
class CSAClass:
    """Degree/period model of a central simple algebra.

    The default index model ind(A^i) = p / gcd(p, i) holds for cyclic classes
    (all classes over local and global fields); pass `index_table` mapping
    i mod period to an explicit index to model anything else.
    """

    degree: int
    period: int
    index_table: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if self.period < 1 or self.degree % self.period != 0:
            raise ValueError("period must divide the degree")
        if self.index_table is not None:
            table = tuple(int(x) for x in self.index_table)
            object.__setattr__(self, "index_table", table)
            if len(table) != self.period:
                raise ValueError("index table must have one entry per residue mod period")
            if table[0] != 1:
                raise ValueError("ind(A^0) must be 1")
            for x in table:
                if x < 1 or self.degree % x != 0:
                    raise ValueError(f"index {x} must divide the degree")

    @property
    def model(self) -> str:
        return "explicit_table" if self.index_table is not None else PERIOD_EQUALS_INDEX


def split_class(degree: int) -> CSAClass:
    return CSAClass(degree, 1)


def index_of_power(a: CSAClass, i: int) -> int:
    """ind(A^i); depends only on i mod period."""
    r = int(i) % a.period
    if a.index_table is not None:
        return a.index_table[r]
    return a.period // gcd(a.period, r)


@dataclass(frozen=True)
class DescentSummary:
    summand_labels: tuple
    multiplicities: tuple[int, ...]
    ranks: tuple[int, ...]
    total_rank: int
    end_dim: int
    notes: tuple[str, ...] = ()

    @property
    def summand_count(self) -> int:
        return len(self.summand_labels)


_RANGE_NOTE = (
    "one summand per Beilinson twist: range length defaults to variety "
    "dimension + 1 (= algebra degree); pass range_length for any other "
    "indexing of the twists"
)


def bs_tilting_summary(a: CSAClass, range_length: Optional[int] = None) -> DescentSummary:
    """Indecomposable absolutely split summands W_i on the Brauer-Severi variety.

    The variety has dimension degree - 1; W_i pulls back to O(i)^(ind(A^i)), so
    ranks are index values and End is counted over the splitting field.
    """
    n = a.degree
    length = n if range_length is None else int(range_length)
    if length < 1:
        raise ValueError("range length must be positive")
    ranks = tuple(index_of_power(a, i) for i in range(length))
    end_dim = 0
    for i in range(length):
        for j in range(i, length):
            end_dim += ranks[i] * ranks[j] * comb(n - 1 + j - i, n - 1)
    return DescentSummary(
        summand_labels=tuple(range(length)),
        multiplicities=(1,) * length,
        ranks=ranks,
        total_rank=sum(ranks),
        end_dim=end_dim,
        notes=(_RANGE_NOTE,),
    )


def descent_multiplicity(lam, n: int) -> int:
    """Sufficient descent multiplicity for the wedge-power sheaf of lam.

    Product of n * (conjugate part) over the nonzero conjugate parts; the
    empty product is 1.  Minimality is not claimed.
    """
    return _prod(n * c for c in conjugate(lam) if c > 0)


def _prod(it) -> int:
    out = 1
    for x in it:
        out *= x
    return out


def wedge_schur_multiplicities(conj_parts, d: int) -> dict[tuple[int, ...], int]:
    """Decompose the tensor product of wedge powers /\^(a_1) (x) ... of a
    rank-d bundle into Schur summands {partition: multiplicity}."""
    out: dict[tuple[int, ...], int] = {(): 1}
    for part in conj_parts:
        if part == 0:
            continue
        if part > d:
            return {}
        nxt: dict[tuple[int, ...], int] = {}
        column = tuple(1 for _ in range(part))
        for nu, m in out.items():
            for xi, c in lr_expand(nu, column, d).items():
                nxt[xi] = nxt.get(xi, 0) + m * c
        out = nxt
    return out


def wedge_pair_ext(d: int, n: int, lam, mu) -> dict[int, int]:
    """Ext^*(/\^(lam')(S), /\^(mu')(S)) on Grass(d, n) via Schur decomposition."""
    left = wedge_schur_multiplicities(conjugate(lam), d)
    right = wedge_schur_multiplicities(conjugate(mu), d)
    out: dict[int, int] = {}
    for nu, a in left.items():
        for xi, b in right.items():
            for s, v in schur_pair_ext(d, n, nu, xi).items():
                out[s] = out.get(s, 0) + a * b * v
    return {s: v for s, v in out.items() if v}


@dataclass(frozen=True)
class WedgeReport:
    is_tilting: bool
    k0_rank: int
    end_dim: int
    higher_ext_witness: Optional[tuple]


def verify_wedge_collection(d: int, n: int) -> WedgeReport:
    """Ext-vanishing check for the wedge-power bundle sum on Grass(d, n).

    The wedge summands decompose, so this is a tilting-bundle check only;
    exceptionality of the individual summands is not claimed.
    """
    box = list(reversed(enumerate_box_partitions(d, n - d, CONTAINMENT_ORDER).members))
    witness = None
    end_dim = 0
    for lam in box:
        for mu in box:
            table = wedge_pair_ext(d, n, lam, mu)
            end_dim += table.get(0, 0)
            for s, v in table.items():
                if s > 0 and v and witness is None:
                    witness = (lam, mu, s, v)
    return WedgeReport(witness is None, len(box), end_dim, witness)


def generalized_bs_summary(a: CSAClass, d: int) -> DescentSummary:
    """Descent inventory for the twisted form of Grass(d, degree).

    One summand per partition in the d x (n-d) box; each wedge-power sheaf
    descends after taking n*conjugate-part many copies, and End is computed
    over the splitting field from the wedge Ext table weighted by those
    multiplicities.
    """
    n = a.degree
    if not 1 <= d < n:
        raise ValueError("need 1 <= d < degree")
    box = list(reversed(enumerate_box_partitions(d, n - d, CONTAINMENT_ORDER).members))
    mults = []
    split_ranks = []
    for lam in box:
        conj = conjugate(lam)
        mults.append(descent_multiplicity(lam, n))
        split_ranks.append(_prod(comb(d, c) for c in conj))
    ranks = tuple(m * r for m, r in zip(mults, split_ranks))
    end_dim = 0
    for i, lam in enumerate(box):
        for j, mu in enumerate(box):
            hom = wedge_pair_ext(d, n, lam, mu).get(0, 0)
            end_dim += mults[i] * mults[j] * hom
    return DescentSummary(
        summand_labels=tuple(box),
        multiplicities=tuple(mults),
        ranks=ranks,
        total_rank=sum(ranks),
        end_dim=end_dim,
        notes=("multiplicities are sufficient for descent, not claimed minimal",),
    )


def wedge_rank_check(d: int, lam) -> bool:
    """Wedge-product rank equals the summed Schur ranks (base-change sanity)."""
    conj = conjugate(lam)
    direct = _prod(comb(d, c) for c in conj)
    via_schur = sum(
        m * schur_dimension(nu, d) for nu, m in wedge_schur_multiplicities(conj, d).items()
    )
    return direct == via_schur


_TOWER_NOTE = (
    "end_dim composed multiplicatively (product model); a twist-exact End "
    "dimension for the relative candidate comes from the fibration engine"
)


def twisted_tower_summary(stages) -> DescentSummary:
    """Compose per-stage descent summaries along a tower of twisted forms.

    Each stage is ("bs", algebra) or ("gbs", algebra, d).  Summand labels are
    tuples of per-stage labels; multiplicities and ranks multiply, and end_dim
    is composed in the product model.
    """
    summaries = []
    for stage in stages:
        kind = stage[0]
        if kind == "bs":
            summaries.append(bs_tilting_summary(stage[1]))
        elif kind == "gbs":
            summaries.append(generalized_bs_summary(stage[1], stage[2]))
        else:
            raise ValueError(f"unknown tower stage kind {kind!r}")
    if not summaries:
        raise ValueError("tower needs at least one stage")
    if len(summaries) == 1:
        return summaries[0]
    labels = tuple(iter_product(*(s.summand_labels for s in summaries)))
    mults = tuple(
        _prod(parts) for parts in iter_product(*(s.multiplicities for s in summaries))
    )
    ranks = tuple(_prod(parts) for parts in iter_product(*(s.ranks for s in summaries)))
    return DescentSummary(
        summand_labels=labels,
        multiplicities=mults,
        ranks=ranks,
        total_rank=_prod(s.total_rank for s in summaries),
        end_dim=_prod(s.end_dim for s in summaries),
        notes=(_TOWER_NOTE,),
    )
