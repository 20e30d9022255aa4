"""Markov-Cayley tree geometry driven by a 0/1 successor matrix.

The tree on d generators keeps every length-1 word (the level-1 seed is
all d generators) and lets generator i be followed by generator j when
M[i][j] = 1.  Level sizes come from iterating the all-ones row vector
against M; vertex ids are digit strings ("" is the root, "12" is the
child 2 of generator 1), which keeps lexicographic order aligned with
depth-first traversal.  Digit ids need d <= 9; the matrix operations
themselves have no such bound.

Beyond level counting this module classifies the matrix:

* expanding number: the growth ratio |T_{n+1}|/|T_n| plus the spectral
  radius (exact 1 for polynomially growing matrices, detected by finite
  differencing of the big-integer level counts; vector-converged power
  iteration otherwise, with a windowed exact-count mean when a periodic
  dominant class keeps the iteration from settling);
* sink decomposition: permutation to block upper-triangular form with
  every multi-vertex diagonal class verified to be a simple cycle, and
  the classes without exits marked as sinks;
* entering counts a_1..a_{n+1}: how many depth-(n+1) rays enter a sink
  exactly l steps before the horizon, via the telescoped sink-resident
  level counts S(m) with the boundary convention S(-1) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DeadEnd, DomainError, NotUnexpandable

MAX_DIGIT_GENERATORS = 9


@dataclass(frozen=True)
class AdjacencyMatrix:
    """d x d successor matrix; entry (i, j) = 1 lets j follow i."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        d = len(self.rows)
        if d < 1:
            raise DomainError("matrix must have at least one generator")
        for row in self.rows:
            if len(row) != d:
                raise DomainError("matrix must be square")
            if any(x not in (0, 1) for x in row):
                raise DomainError("matrix entries must be 0 or 1")
            if not any(row):
                raise DeadEnd("every generator needs a successor (no all-zero rows)")

    @property
    def d(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows) -> "AdjacencyMatrix":
        return cls(tuple(tuple(int(ch) for ch in row) for row in rows))

    @classmethod
    def comb(cls) -> "AdjacencyMatrix":
        """Spine of 1s with a tooth of 2s at every spine vertex."""
        return cls.from_rows(("11", "01"))

    @classmethod
    def binary_tree(cls) -> "AdjacencyMatrix":
        return cls.from_rows(("11", "11"))

    @classmethod
    def identity(cls) -> "AdjacencyMatrix":
        return cls.from_rows(("10", "01"))

    @classmethod
    def swap(cls) -> "AdjacencyMatrix":
        return cls.from_rows(("01", "10"))

    def to_json(self) -> dict:
        return {"d": self.d, "rows": ["".join(str(x) for x in row) for row in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "AdjacencyMatrix":
        mat = cls.from_rows(obj["rows"])
        if mat.d != obj.get("d", mat.d):
            raise DomainError("row count does not match d")
        return mat


class TreeGeometry:
    """Vertex bookkeeping for the tree of one adjacency matrix.

    Level vectors are cached: v_1 is all-ones (every generator appears at
    level 1) and v_{k+1} = v_k M, so |T_k| = sum(v_k) and
    |Delta_n| = 1 + sum_{k<=n} |T_k|.
    """

    def __init__(self, matrix: AdjacencyMatrix) -> None:
        self.matrix = matrix
        self._vectors: list[tuple[int, ...]] = [(1,) * matrix.d]
        self._children: tuple[tuple[int, ...], ...] = tuple(
            tuple(j + 1 for j in range(matrix.d) if row[j])
            for row in matrix.rows
        )

    def _vector(self, level: int) -> tuple[int, ...]:
        while len(self._vectors) < level:
            prev = self._vectors[-1]
            rows = self.matrix.rows
            self._vectors.append(
                tuple(
                    sum(prev[i] for i in range(self.matrix.d) if rows[i][j])
                    for j in range(self.matrix.d)
                )
            )
        return self._vectors[level - 1]

    def level_size(self, level: int) -> int:
        if level < 0:
            raise DomainError("level must be >= 0")
        if level == 0:
            return 1
        return sum(self._vector(level))

    def delta_size(self, n: int) -> int:
        return sum(self.level_size(k) for k in range(n + 1))

    def children_digits(self, digit: int) -> tuple[int, ...]:
        """Digits allowed after `digit`; digit 0 stands for the root."""
        if digit == 0:
            return tuple(range(1, self.matrix.d + 1))
        return self._children[digit - 1]

    def level_vertices(self, level: int) -> list[str]:
        """Vertex ids at one level, in lexicographic (= generator) order."""
        if self.matrix.d > MAX_DIGIT_GENERATORS:
            raise DomainError(
                f"digit vertex ids support at most {MAX_DIGIT_GENERATORS} generators"
            )
        current = [""]
        for _ in range(level):
            current = [
                v + str(c)
                for v in current
                for c in self.children_digits(int(v[-1]) if v else 0)
            ]
        return current

    def vertices(self, n: int) -> list[str]:
        """All ids of Delta_n, level by level."""
        out: list[str] = []
        for level in range(n + 1):
            out.extend(self.level_vertices(level))
        return out

    def is_vertex(self, vid: str) -> bool:
        if vid == "":
            return True
        prev = 0
        for ch in vid:
            if not ch.isdigit():
                return False
            digit = int(ch)
            if digit < 1 or digit > self.matrix.d:
                return False
            if prev and not self.matrix.rows[prev - 1][digit - 1]:
                return False
            prev = digit
        return True


def level_sizes(matrix: AdjacencyMatrix, n: int) -> list[int]:
    """Exact [|T_0|, ..., |T_n|] as big integers."""
    if n < 0:
        raise DomainError("depth must be >= 0")
    geo = TreeGeometry(matrix)
    return [geo.level_size(k) for k in range(n + 1)]


@dataclass(frozen=True)
class ExpandingNumber:
    ratio_est: float
    spectral: float
    expandable: bool


def _polynomial_growth(matrix: AdjacencyMatrix) -> bool:
    """True iff |T_k| grows polynomially (spectral radius exactly 1).

    For a 0/1 matrix with no dead rows the level counts either grow like
    a polynomial of degree < d (radius 1) or exponentially (radius > 1);
    taking d successive finite differences separates the two exactly.
    """
    d = matrix.d
    horizon = 3 * d + 60
    geo = TreeGeometry(matrix)
    seq = [geo.level_size(k) for k in range(1, horizon + 1)]
    for _ in range(d):
        seq = [b - a for a, b in zip(seq, seq[1:])]
        if all(x == 0 for x in seq[len(seq) // 2:]):
            return True
    return False


def _power_iteration(matrix: AdjacencyMatrix, tol: float = 1e-13, max_iter: int = 30000) -> float:
    """Dominant growth rate of the level vectors.

    Convergence is judged on the normalized vector, never on the scalar
    ratio: two equal successive ratios can occur long before the mixture
    of eigencomponents settles, and stopping there reports a wrong
    radius.  Matrices whose dominant class is periodic never settle at
    all, so iteration exhaustion falls through to exact counting.
    """
    rows = matrix.rows
    d = matrix.d
    vec = [1.0 / d] * d
    for _ in range(max_iter):
        nxt = [sum(vec[i] for i in range(d) if rows[i][j]) for j in range(d)]
        norm = sum(nxt)
        nxt = [x / norm for x in nxt]
        if max(abs(a - b) for a, b in zip(nxt, vec)) < tol:
            return norm
        vec = nxt
    return _growth_from_counts(matrix)


def _growth_from_counts(matrix: AdjacencyMatrix) -> float:
    # windowed geometric mean of the exact level counts; 2520 = lcm(1..9)
    # is a multiple of every period a dominant class can have, so the
    # periodic oscillation cancels exactly
    start, window = 64, 2520
    geo = TreeGeometry(matrix)
    lo = geo.level_size(start)
    hi = geo.level_size(start + window)
    return math.exp((math.log(hi) - math.log(lo)) / window)


def spectral_radius(matrix: AdjacencyMatrix) -> float:
    if _polynomial_growth(matrix):
        return 1.0
    return _power_iteration(matrix)


def expanding_number(matrix: AdjacencyMatrix, n: int) -> ExpandingNumber:
    """Growth ratio |T_{n+1}|/|T_n| alongside the spectral radius."""
    if n < 2:
        raise DomainError("expanding-number estimate needs n >= 2")
    geo = TreeGeometry(matrix)
    ratio = geo.level_size(n + 1) / geo.level_size(n)
    spectral = spectral_radius(matrix)
    return ExpandingNumber(
        ratio_est=ratio, spectral=spectral, expandable=spectral > 1 + 1e-9
    )


@dataclass(frozen=True)
class SinkDecomposition:
    """Block upper-triangular certificate for an unexpandable matrix.

    order lists the 1-based generators class by class (sources first); under
    that permutation all edges point weakly forward.  blocks holds the
    classes in the same order, each multi-vertex class listed in cycle
    order from its smallest member.  sinks indexes the classes with no
    outgoing edges to later classes.
    """

    order: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    sinks: tuple[int, ...]

    def sink_generators(self) -> frozenset[int]:
        out: set[int] = set()
        for idx in self.sinks:
            out.update(self.blocks[idx])
        return frozenset(out)


def _strongly_connected_classes(matrix: AdjacencyMatrix) -> list[frozenset[int]]:
    d = matrix.d
    reach = [[bool(matrix.rows[i][j]) for j in range(d)] for i in range(d)]
    for k in range(d):
        for i in range(d):
            if reach[i][k]:
                for j in range(d):
                    if reach[k][j]:
                        reach[i][j] = True
    classes = []
    assigned = [False] * d
    for i in range(d):
        if assigned[i]:
            continue
        members = {i} | {j for j in range(d) if reach[i][j] and reach[j][i]}
        for j in members:
            assigned[j] = True
        classes.append(frozenset(m + 1 for m in members))
    return classes


def sink_decomposition(matrix: AdjacencyMatrix) -> SinkDecomposition:
    """Irreducible classes in topological order, cycle-verified.

    A multi-vertex class (or a looped singleton) must be a simple cycle:
    exactly one in-class successor per member, one orbit covering the
    class.  Anything denser forces exponential growth and raises
    NotUnexpandable.  Loopless singleton classes are transient stopovers
    and are allowed; they can never be sinks because their one edge
    leaves the class.
    """
    rows = matrix.rows
    classes = _strongly_connected_classes(matrix)
    ordered_members = []
    for cls_set in classes:
        members = tuple(sorted(cls_set))
        if len(members) == 1 and not rows[members[0] - 1][members[0] - 1]:
            ordered_members.append(members)
            continue
        succ = {}
        for g in members:
            inside = [j for j in members if rows[g - 1][j - 1]]
            if len(inside) != 1:
                raise NotUnexpandable(
                    f"class {set(members)} is not a simple cycle; growth is exponential"
                )
            succ[g] = inside[0]
        orbit = [members[0]]
        while succ[orbit[-1]] != orbit[0]:
            orbit.append(succ[orbit[-1]])
            if len(orbit) > len(members):
                raise NotUnexpandable(f"class {set(members)} is not a single cycle")
        if len(orbit) != len(members):
            raise NotUnexpandable(f"class {set(members)} splits into several cycles")
        ordered_members.append(tuple(orbit))

    index_of = {}
    for ci, members in enumerate(ordered_members):
        for g in members:
            index_of[g] = ci
    n_cls = len(ordered_members)
    out_edges: list[set[int]] = [set() for _ in range(n_cls)]
    indegree = [0] * n_cls
    for i in range(matrix.d):
        for j in range(matrix.d):
            if rows[i][j]:
                a, b = index_of[i + 1], index_of[j + 1]
                if a != b and b not in out_edges[a]:
                    out_edges[a].add(b)
                    indegree[b] += 1

    # Kahn order with smallest-member tie-breaking, sources first
    ready = sorted(
        (min(ordered_members[c]), c) for c in range(n_cls) if indegree[c] == 0
    )
    topo: list[int] = []
    while ready:
        _, c = ready.pop(0)
        topo.append(c)
        for b in sorted(out_edges[c]):
            indegree[b] -= 1
            if indegree[b] == 0:
                ready.append((min(ordered_members[b]), b))
                ready.sort()

    blocks = tuple(ordered_members[c] for c in topo)
    order = tuple(g for members in blocks for g in members)
    sinks = tuple(
        pos for pos, c in enumerate(topo) if not out_edges[c]
    )
    return SinkDecomposition(order=order, blocks=blocks, sinks=sinks)


def sink_level_counts(matrix: AdjacencyMatrix, n: int) -> list[int]:
    """[S(0), ..., S(n)]: sink-resident vertex counts per level offset.

    S(m) sums the all-ones seed row against M^m over the sink columns, so
    S(m) counts the sink vertices at tree level m+1.
    """
    decomp = sink_decomposition(matrix)
    sink_gens = decomp.sink_generators()
    d = matrix.d
    vec = [1] * d
    out = [sum(vec[g - 1] for g in sink_gens)]
    for _ in range(n):
        vec = [
            sum(vec[i] for i in range(d) if matrix.rows[i][j]) for j in range(d)
        ]
        out.append(sum(vec[g - 1] for g in sink_gens))
    return out


def entering_counts(matrix: AdjacencyMatrix, n: int) -> list[int]:
    """[a_1, ..., a_{n+1}]: rays entering a sink l levels above horizon n.

    a_l = S(n-l+1) - S(n-l) with S(-1) = 0, where S(m) counts sink
    vertices at level m+1.  Nonnegative because each sink vertex has
    exactly one sink successor.
    """
    if n < 0:
        raise DomainError("depth must be >= 0")
    s = sink_level_counts(matrix, n)

    def s_at(m: int) -> int:
        return 0 if m < 0 else s[m]

    return [s_at(n - ell + 1) - s_at(n - ell) for ell in range(1, n + 2)]
