"""Symbolic Schur-functor arithmetic over arbitrary-precision integers.

Weights with negative entries are handled through the determinant shift
S^w(F) = S^(w+m)(F) (x) det(F)^(-m) with m the minimal normalizing shift, so
every routine ultimately reduces to honest partition combinatorics.  No
floating point anywhere.
"""

from __future__ import annotations

from functools import lru_cache

from .partitions import normalize


def as_weight(w, length: int) -> tuple[int, ...]:
    """Pad a non-increasing integer sequence with zeros up to `length`."""
    w = tuple(int(x) for x in w)
    if len(w) > length:
        raise ValueError(f"weight {w} longer than declared length {length}")
    if len(w) < length:
        if w and w[-1] < 0:
            raise ValueError(f"cannot zero-pad weight {w} with a negative tail")
        w = w + (0,) * (length - len(w))
    for i in range(length - 1):
        if w[i] < w[i + 1]:
            raise ValueError(f"not non-increasing: {w}")
    return w


def dual_weight(w) -> tuple[int, ...]:
    """Reversed negation (-w_l, ..., -w_1), the weight of the dual functor."""
    return tuple(-x for x in reversed(tuple(w)))


def normalizing_shift(w) -> int:
    """Minimal m >= 0 with w + m a partition."""
    w = tuple(w)
    return max(0, -min(w)) if w else 0


@lru_cache(maxsize=None)
def lr_expand(a, b, rank: int) -> dict:
    """Littlewood-Richardson expansion of S^a (x) S^b on a rank-`rank` space.

    Returns {partition: multiplicity}; terms with more than `rank` rows are
    dropped, as forced by the rank.  Tableaux are enumerated as ballot
    sequences of horizontal strips: strip i (the cells holding letter i) is
    added to the shape grown so far subject to the lattice-word condition
    cum_i(r) <= cum_{i-1}(r-1) on cumulative row counts.
    """
    if rank < 1:
        raise ValueError("rank must be positive")
    a, b = normalize(a), normalize(b)
    if len(a) > rank or len(b) > rank:
        return {}
    # state: (shape padded to rank, cumulative row counts of the previous letter)
    states = {(tuple(a) + (0,) * (rank - len(a)), None): 1}
    for strip_size in b:
        new_states: dict = {}

        def place(row, left, base, shape, cum_prev, cum_here, acc):
            """Distribute `left` strip cells over rows >= `row`.

            `base` is the shape frozen before this letter started; the strip
            condition bounds row r by base[r-1] so no two cells of one letter
            share a column.
            """
            if left == 0:
                cum = cum_here + (cum_here[-1] if cum_here else 0,) * (rank - len(cum_here))
                key = (shape, cum)
                new_states[key] = new_states.get(key, 0) + acc
                return
            if row >= rank:
                return
            upper = base[row - 1] - shape[row] if row > 0 else left
            if cum_prev is not None:
                prev_cum = cum_prev[row - 1] if row > 0 else 0
                done = cum_here[-1] if cum_here else 0
                upper = min(upper, prev_cum - done)
            done = cum_here[-1] if cum_here else 0
            for s in range(min(upper, left) + 1):
                new_shape = shape[:row] + (shape[row] + s,) + shape[row + 1:]
                place(row + 1, left - s, base, new_shape, cum_prev, cum_here + (done + s,), acc)

        for (shape, cum_prev), mult in states.items():
            place(0, strip_size, shape, shape, cum_prev, (), mult)
        states = new_states
    result: dict[tuple[int, ...], int] = {}
    for (shape, _), mult in states.items():
        key = normalize(shape)
        result[key] = result.get(key, 0) + mult
    return result


def product_expand(weights, rank: int) -> dict:
    """Expansion of a tensor product of extended Schur functors.

    Each factor is a non-increasing integer weight of length <= rank; the
    output maps full-length weights (possibly with negative entries) to
    multiplicities.
    """
    shift_total = 0
    current: dict[tuple[int, ...], int] = {(0,) * rank: 1}
    for w in weights:
        w = as_weight(w, rank)
        m = normalizing_shift(w)
        shift_total += m
        part = normalize(tuple(x + m for x in w))
        updated: dict[tuple[int, ...], int] = {}
        for acc, mult in current.items():
            macc = normalizing_shift(acc)
            shifted_acc = normalize(tuple(x + macc for x in acc))
            for nu, c in lr_expand(shifted_acc, part, rank).items():
                key = tuple(x - macc for x in as_weight(nu, rank))
                updated[key] = updated.get(key, 0) + mult * c
        current = updated
    return {tuple(x - shift_total for x in w): m for w, m in current.items()}


def hom_expand(a, b, rank: int) -> dict:
    """Expansion of S^(-a) (x) S^b into weights of length `rank`.

    This is the decomposition of Hom(S^a(F), S^b(F)) for a rank-`rank` bundle
    F.  Both arguments may carry negative entries; every output weight w
    satisfies w_rank >= -a_1.
    """
    a = as_weight(a, rank)
    b = as_weight(b, rank)
    return product_expand([dual_weight(a), b], rank)


def schur_dimension(w, n: int) -> int:
    """Dimension of the irreducible GL_n representation with highest weight w.

    Hook-content product on the shift-normalized partition; equals the number
    of semistandard tableaux with entries in {1..n}.  A partition with more
    than n rows gives 0 (the functor vanishes); an extended weight declared
    longer than n is rejected, since negative tails have no such convention.
    """
    if n < 1:
        raise ValueError("n must be positive")
    w = tuple(int(x) for x in w)
    if len(w) > n:
        if min(w) < 0:
            raise ValueError(f"extended weight {w} needs more than {n} slots")
        return 0 if len(normalize(w)) > n else schur_dimension(normalize(w), n)
    w = as_weight(w, n)
    m = normalizing_shift(w)
    lam = normalize(tuple(x + m for x in w))
    conj = [sum(1 for row in lam if row > j) for j in range(lam[0])] if lam else []
    num = 1
    den = 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= n + j - i
            den *= row - j + conj[j] - i - 1
    assert num % den == 0
    return num // den


def _ssyt_degree_counts(shape, degrees) -> dict[int, int]:
    """Total twisting degrees of semistandard fillings of `shape`."""
    k = len(degrees)
    counts: dict[int, int] = {}
    rows = len(shape)

    def fill(row, col, filled, prev_in_row, deg):
        if row == rows:
            counts[deg] = counts.get(deg, 0) + 1
            return
        if col == shape[row]:
            fill(row + 1, 0, filled, 0, deg)
            return
        lo = prev_in_row
        if row > 0:
            lo = max(lo, filled[row - 1][col] + 1)
        for v in range(lo, k):
            if row + 1 < rows and col < shape[row + 1]:
                row_vals = filled[row][:col] + (v,) + filled[row][col + 1:]
                new_filled = filled[:row] + (row_vals,) + filled[row + 1:]
            else:
                new_filled = filled
            fill(row, col + 1, new_filled, v, deg + degrees[v])

    start = tuple(tuple(0 for _ in range(r)) for r in shape)
    fill(0, 0, start, 0, 0)
    return counts


def split_bundle_expand(w, degrees) -> dict[int, int]:
    """Degrees of the line-bundle summands of S^w applied to (+) O(d_k).

    One summand per semistandard tableau of shape w in the alphabet indexing
    `degrees`; negative weights are first normalized by a determinant twist,
    which shifts every degree by -m * sum(degrees).
    """
    degrees = tuple(int(d) for d in degrees)
    if not degrees:
        raise ValueError("need at least one degree")
    w = as_weight(w, len(degrees))
    m = normalizing_shift(w)
    lam = normalize(tuple(x + m for x in w))
    if len(lam) > len(degrees):
        return {}
    offset = -m * sum(degrees)
    if len(set(degrees)) == 1:
        # all summands share one degree; multiplicity is the plain dimension
        total = schur_dimension(lam, len(degrees))
        return {degrees[0] * sum(lam) + offset: total} if total else {}
    counts = _ssyt_degree_counts(lam, degrees)
    return {d + offset: c for d, c in sorted(counts.items())}


def twist_weight(w, line_power: int) -> tuple[tuple[int, ...], int]:
    """Line-bundle exponent picked up by S^w under F -> F (x) L^(line_power).

    Valid only for non-negative weights, where S^w(F (x) L) = S^w(F) (x)
    L^(|w| * line_power).
    """
    w = tuple(int(x) for x in w)
    if any(x < 0 for x in w):
        raise ValueError("twist_weight needs a non-negative weight; normalize first")
    return w, sum(w) * int(line_power)
