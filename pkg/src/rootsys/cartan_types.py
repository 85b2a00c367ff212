"""
Cartan Data
Cartan matrices of the simple types A-G, Dynkin diagrams and symmetrizers
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, List, Tuple

import networkx as nx
import sympy

from src.common.errors import InvalidCartanType

logger = logging.getLogger(__name__)

# Smallest admissible rank per series
SERIES_MIN_RANK: Dict[str, int] = {'A': 1, 'B': 2, 'C': 2, 'D': 3}
EXCEPTIONAL_RANKS: Dict[str, Tuple[int, ...]] = {'E': (6, 7, 8), 'F': (4,), 'G': (2,)}

_LABEL_PATTERN = re.compile(r'^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$')


@dataclass(frozen=True)
class CartanDatum:
    """Series, rank, Cartan matrix C_ij = ⟨α_i, α_j∨⟩ and symmetrizer d"""

    series: str
    rank: int
    matrix: Tuple[Tuple[int, ...], ...]
    symmetrizer: Tuple[int, ...]

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}"

    def entry(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def inner_product(self, i: int, j: int) -> int:
        """⟨α_i, α_j⟩ normalized so that ⟨α_i, α_i⟩ = 2 d_i"""
        return self.symmetrizer[j] * self.matrix[i][j]


def validate_series_rank(series: str, rank: int) -> None:
    """Reject series letters and ranks that do not name a simple type"""
    series = series.upper()
    if series in SERIES_MIN_RANK:
        if rank < SERIES_MIN_RANK[series]:
            raise InvalidCartanType(
                f"{series}{rank}: rank must be at least {SERIES_MIN_RANK[series]}"
            )
    elif series in EXCEPTIONAL_RANKS:
        if rank not in EXCEPTIONAL_RANKS[series]:
            allowed = ', '.join(str(r) for r in EXCEPTIONAL_RANKS[series])
            raise InvalidCartanType(f"{series}{rank}: rank must be one of {allowed}")
    else:
        raise InvalidCartanType(f"unknown series {series!r}")


def parse_cartan_type(label: str) -> Tuple[str, int]:
    """Parse labels such as "A2", "e8" or "B_3" into (series, rank)"""
    match = _LABEL_PATTERN.match(label or '')
    if not match:
        raise InvalidCartanType(f"cannot parse Cartan type {label!r}")
    series, rank = match.group(1).upper(), int(match.group(2))
    validate_series_rank(series, rank)
    return series, rank


def _chain(rank: int) -> List[List[int]]:
    matrix = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        matrix[i][i] = 2
        if i + 1 < rank:
            matrix[i][i + 1] = -1
            matrix[i + 1][i] = -1
    return matrix


def cartan_matrix(series: str, rank: int) -> List[List[int]]:
    """Cartan matrix with Bourbaki labelling, 0-indexed"""
    series = series.upper()
    validate_series_rank(series, rank)
    n = rank
    m = _chain(n)

    if series == 'A':
        pass
    elif series == 'B':
        # α_n short
        m[n - 2][n - 1] = -2
    elif series == 'C':
        # α_n long
        m[n - 1][n - 2] = -2
    elif series == 'D':
        m[n - 2][n - 1] = 0
        m[n - 1][n - 2] = 0
        m[n - 1][n - 3] = -1
        m[n - 3][n - 1] = -1
    elif series == 'E':
        # α1 - α3 - α4 - ... - αn with α2 attached to α4
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 2
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        for i, j in edges:
            m[i][j] = -1
            m[j][i] = -1
    elif series == 'F':
        m[1][2] = -2
    elif series == 'G':
        # α1 short, α2 long
        m[1][0] = -3
    return m


def dynkin_diagram(matrix: List[List[int]]) -> nx.DiGraph:
    """Directed graph with an edge i → j weighted by C_ij for every C_ij ≠ 0, i ≠ j"""
    graph = nx.DiGraph()
    rank = len(matrix)
    graph.add_nodes_from(range(rank))
    for i in range(rank):
        for j in range(rank):
            if i != j and matrix[i][j] != 0:
                graph.add_edge(i, j, weight=matrix[i][j])
    return graph


def symmetrizer(matrix: List[List[int]]) -> Tuple[int, ...]:
    """Coprime positive integers d with d_j C_ij = d_i C_ji, propagated along the Dynkin tree"""
    graph = dynkin_diagram(matrix)
    ratios: Dict[int, Fraction] = {0: Fraction(1)}
    for i, j in nx.bfs_edges(graph.to_undirected(), 0):
        ratios[j] = ratios[i] * Fraction(matrix[j][i], matrix[i][j])

    denominators = reduce(lcm, (r.denominator for r in ratios.values()), 1)
    scaled = [int(ratios[k] * denominators) for k in range(len(matrix))]
    common = reduce(gcd, scaled)
    d = tuple(x // common for x in scaled)

    for i in range(len(matrix)):
        for j in range(len(matrix)):
            if d[j] * matrix[i][j] != d[i] * matrix[j][i]:
                raise InvalidCartanType(f"matrix is not symmetrizable at ({i}, {j})")
    return d


def validate_cartan_matrix(matrix: List[List[int]]) -> None:
    """Check the axioms of a Cartan matrix of a simple Lie algebra"""
    rank = len(matrix)
    if rank == 0 or any(len(row) != rank for row in matrix):
        raise InvalidCartanType("Cartan matrix must be square and nonempty")
    for i in range(rank):
        if matrix[i][i] != 2:
            raise InvalidCartanType(f"diagonal entry C[{i}][{i}] must be 2")
        for j in range(rank):
            if i == j:
                continue
            if matrix[i][j] not in (0, -1, -2, -3):
                raise InvalidCartanType(f"off-diagonal entry C[{i}][{j}] = {matrix[i][j]}")
            if (matrix[i][j] == 0) != (matrix[j][i] == 0):
                raise InvalidCartanType(f"zero pattern not symmetric at ({i}, {j})")

    if not nx.is_connected(dynkin_diagram(matrix).to_undirected()):
        raise InvalidCartanType("Dynkin diagram is disconnected")
    if sympy.Matrix(matrix).det() == 0:
        raise InvalidCartanType("Cartan matrix is singular")


def build_cartan_datum(series: str, rank: int) -> CartanDatum:
    matrix = cartan_matrix(series, rank)
    validate_cartan_matrix(matrix)
    d = symmetrizer(matrix)
    logger.debug(f"Cartan datum {series.upper()}{rank}: symmetrizer {d}")
    return CartanDatum(
        series=series.upper(),
        rank=rank,
        matrix=tuple(tuple(row) for row in matrix),
        symmetrizer=d,
    )
