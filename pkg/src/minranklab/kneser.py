"""Generalized Kneser graphs and their explicit low-rank rational representations.

K(d, s, m) has the s-subsets of {0..d-1} as vertices, adjacent when the
intersection has fewer than m elements. The representing matrix evaluates
the integer polynomial prod_{j=m}^{s-1} (t - j) at the pairwise intersection
sizes; its low-rank factorization comes from the multilinear expansion of
that product, whose monomial coefficients depend only on the monomial degree
and are the finite differences of the polynomial at 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .budgets import DEFAULT_VERTEX_BUDGET, check_budget
from .graphs import Graph, induced_subgraph, min_odd_cycle_at_most
from .matrices import RationalMatrix


@dataclass(frozen=True)
class KneserParams:
    d: int
    s: int
    m: int

    def __post_init__(self) -> None:
        if not 0 <= self.m <= self.s <= self.d:
            raise ValueError(f"need 0 <= m <= s <= d, got {self}")

    @property
    def vertex_count(self) -> int:
        return math.comb(self.d, self.s)

    @property
    def rank_bound(self) -> int:
        """Number of columns in the factorization: sum of C(d,i), i <= s-m."""
        return sum(math.comb(self.d, i) for i in range(self.s - self.m + 1))


def subset_masks(d: int, s: int) -> list[int]:
    """All s-subsets of {0..d-1} as bitmasks, in lexicographic subset order."""
    return [sum(1 << i for i in combo) for combo in combinations(range(d), s)]


def kneser_graph(params: KneserParams, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Graph:
    """The graph on all s-subsets with adjacency |A ∩ B| < m."""
    check_budget(
        params.vertex_count,
        vertex_budget,
        f"materializing K({params.d},{params.s},{params.m})",
    )
    masks = subset_masks(params.d, params.s)
    n = len(masks)
    rows = [0] * n
    for a in range(n):
        ma = masks[a]
        for b in range(a + 1, n):
            if (ma & masks[b]).bit_count() < params.m:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return Graph(n, tuple(rows))


def intersection_polynomial(s: int, m: int, t: int) -> int:
    """prod_{j=m}^{s-1} (t - j): nonzero diagonal value at t=s, zero on m..s-1."""
    value = 1
    for j in range(m, s):
        value *= t - j
    return value


def pattern_polynomial_coefficients(s: int, m: int) -> list[int]:
    """Multilinear coefficients c_0..c_{s-m}, by monomial degree.

    c_u is the u-th finite difference at 0 of the intersection polynomial:
    c_u = sum_{t=0}^{u} (-1)^(u-t) C(u,t) P(t).
    """
    if m > s:
        raise ValueError("need m <= s")
    values = [intersection_polynomial(s, m, t) for t in range(s - m + 1)]
    coeffs = []
    for u in range(s - m + 1):
        c = sum(
            (-1) ** (u - t) * math.comb(u, t) * values[t]
            for t in range(u + 1)
        )
        coeffs.append(c)
    return coeffs


@dataclass(frozen=True)
class KneserWitness:
    """Representation matrix with its rank certificate for K(d,s,m).

    matrix equals factor_left @ factor_right^T exactly, so its rank is at
    most the common column count rank_bound.
    """

    params: KneserParams
    vertices: tuple[int, ...]
    matrix: RationalMatrix
    factor_left: RationalMatrix
    factor_right: RationalMatrix
    coefficients: tuple[int, ...]
    rank_bound: int
    rank: Optional[int] = None


class WitnessVerificationError(RuntimeError):
    """An internal consistency check failed while building a witness."""


def representation_matrix(
    params: KneserParams,
    check_rank: bool = False,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> KneserWitness:
    """Build and verify the representing matrix and its factorization.

    Structural invariants (diagonal value, zero pattern matching the graph,
    factorization identity) are always verified; the exact rank computation
    is optional because it dominates the cost at larger parameters.
    """
    d, s, m = params.d, params.s, params.m
    check_budget(
        params.vertex_count,
        vertex_budget,
        f"materializing K({params.d},{params.s},{params.m})",
    )
    masks = subset_masks(d, s)
    n = len(masks)
    coeffs = pattern_polynomial_coefficients(s, m)
    poly = [intersection_polynomial(s, m, t) for t in range(s + 1)]
    entries = tuple(
        tuple(poly[(ma & mb).bit_count()] for mb in masks) for ma in masks
    )
    matrix = RationalMatrix.from_rows(entries)

    # factor columns: subsets of {0..d-1} of size <= s-m, ordered by (size, lex)
    columns = []
    for size in range(s - m + 1):
        columns.extend(subset_masks(d, size))
    left_rows = []
    right_rows = []
    for ma in masks:
        left_rows.append([1 if col & ~ma == 0 else 0 for col in columns])
        right_rows.append(
            [coeffs[col.bit_count()] if col & ~ma == 0 else 0 for col in columns]
        )
    factor_left = RationalMatrix.from_rows(left_rows)
    factor_right = RationalMatrix.from_rows(right_rows)

    _verify_structure(params, masks, entries, poly)
    _verify_factorization(entries, left_rows, right_rows)

    rank = None
    if check_rank:
        rank = matrix.rank()
        if rank > params.rank_bound:
            raise WitnessVerificationError(
                f"rank {rank} exceeds the certificate bound {params.rank_bound}"
            )
    return KneserWitness(
        params=params,
        vertices=tuple(masks),
        matrix=matrix,
        factor_left=factor_left,
        factor_right=factor_right,
        coefficients=tuple(coeffs),
        rank_bound=params.rank_bound,
        rank=rank,
    )


def _verify_structure(params, masks, entries, poly) -> None:
    s, m = params.s, params.m
    diag = math.factorial(s - m)
    if poly[s] != diag:
        raise WitnessVerificationError("diagonal value is not (s-m)!")
    for a, ma in enumerate(masks):
        if entries[a][a] != diag:
            raise WitnessVerificationError(f"bad diagonal at {a}")
        for b in range(a + 1, len(masks)):
            inter = (ma & masks[b]).bit_count()
            adjacent = inter < m
            if (entries[a][b] == 0) != (not adjacent):
                raise WitnessVerificationError(
                    f"zero pattern mismatch at pair ({a},{b}), intersection {inter}"
                )


def _verify_factorization(entries, left_rows, right_rows) -> None:
    """Check matrix == left @ right^T by sparse dot products over nonzeros."""
    left_sparse = [
        {j: x for j, x in enumerate(row) if x} for row in left_rows
    ]
    right_sparse = [
        {j: x for j, x in enumerate(row) if x} for row in right_rows
    ]
    for a, arow in enumerate(left_sparse):
        for b, brow in enumerate(right_sparse):
            if len(arow) > len(brow):
                small, other = brow, arow
            else:
                small, other = arow, brow
            dot = sum(x * other[j] for j, x in small.items() if j in other)
            if dot != entries[a][b]:
                raise WitnessVerificationError(
                    f"factorization mismatch at pair ({a},{b})"
                )


class OddCycleViolation(RuntimeError):
    """The constructed graph contained an odd cycle it was guaranteed to avoid."""


def odd_girth_guarantee(
    d: int,
    m: int,
    ell: int,
    verify: bool = False,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> bool:
    """True iff m <= d/(2*ell), the hypothesis excluding odd cycles <= ell.

    Applies to K(d, d/2, m) for even d. With verify=True the graph is built
    and searched explicitly; a cycle found under a true hypothesis raises.
    """
    if ell < 3 or ell % 2 == 0:
        raise ValueError("ell must be an odd integer >= 3")
    if d % 2:
        raise ValueError("d must be even")
    if m < 0:
        raise ValueError("m must be nonnegative")
    holds = 2 * ell * m <= d
    if verify and holds:
        graph = kneser_graph(KneserParams(d, d // 2, m), vertex_budget)
        found = min_odd_cycle_at_most(graph, ell)
        if found is not None:
            raise OddCycleViolation(
                f"K({d},{d // 2},{m}) contains an odd cycle of length {found} <= {ell}"
            )
    return holds


# ---------------------------------------------------------------------------
# entropy-side numerics

def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError("entropy argument must be in [0,1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_delta_limit(ell: int) -> float:
    """Limit of delta_star as the construction grows: 1 - H(1/2 - 1/(2*ell))."""
    return 1.0 - binary_entropy(0.5 - 1.0 / (2 * ell))


@dataclass(frozen=True)
class ConstructionReport:
    ell: int
    n: int
    d: int
    m: int
    rank_bound: int
    vertex_count: int
    delta_star: float


def rank_bound_report(ell: int, n: int) -> ConstructionReport:
    """Parameters and exact rank bound for an n-vertex odd-girth construction.

    d is the smallest multiple of 2*ell whose middle binomial reaches n,
    m = d/(2*ell), and delta_star = 1 - log(rank_bound)/log(C(d, d/2)).
    Everything is exact big-integer arithmetic; no matrix is materialized.
    """
    if ell < 3 or ell % 2 == 0:
        raise ValueError("ell must be an odd integer >= 3")
    if n < 1:
        raise ValueError("n must be positive")
    d = 2 * ell
    while math.comb(d, d // 2) < n:
        d += 2 * ell
    m = d // (2 * ell)
    rank_bound = sum(math.comb(d, i) for i in range(d // 2 - m + 1))
    vertex_count = math.comb(d, d // 2)
    delta_star = round(1.0 - math.log(rank_bound) / math.log(vertex_count), 6)
    return ConstructionReport(ell, n, d, m, rank_bound, vertex_count, delta_star)


def construction_subgraph(
    ell: int, n: int, vertex_budget: int = DEFAULT_VERTEX_BUDGET
) -> Graph:
    """Materialize the n-vertex subgraph (lexicographic vertex prefix)."""
    report = rank_bound_report(ell, n)
    graph = kneser_graph(
        KneserParams(report.d, report.d // 2, report.m), vertex_budget
    )
    return induced_subgraph(graph, range(n))
