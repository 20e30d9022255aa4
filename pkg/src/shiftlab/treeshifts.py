"""Labelings of Markov-Cayley trees constrained along rays.

A tree-shift spec pairs a tree geometry with a base constraint: either a
1D shift spec (every root-to-vertex word must be admissible for it) or a
one-step symbol matrix A (label t may follow label s when A[s][t] = 1).
Patterns live on the truncated tree Delta_n.

Counting is bottom-up dynamic programming keyed by (vertex type,
base-automaton state, remaining depth); subtree shapes depend only on
the last generator, so the DP is polynomial in depth even when the
pattern counts have thousands of digits.  Surface counting and
independence checking refine the same idea: instead of a single count
per state they carry a map from "set of incoming states this partial
labeling tolerates" to the number of distinct restrictions achieving
it, which stays exact while collapsing unpinned subtrees to one class.

Independence of a vertex set S: every assignment S -> alphabet extends
to a full admissible labeling of Delta_n.  The check compares the exact
number of distinct restrictions to S against r^|S| as big integers.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from . import words as words_mod
from .errors import (
    CapExceeded,
    DeadSymbol,
    DomainError,
    EmptyBase,
    NotHereditary,
    PreconditionViolated,
)
from .trees import AdjacencyMatrix, TreeGeometry, entering_counts, expanding_number, sink_decomposition, sink_level_counts
from .words import ShiftSpec1D, WordAutomaton

CLASS_CAP = 4096
ROOT = 0
_START = -1  # incoming state before any symbol (matrix bases)


class _MatrixAutomaton:
    """One-step successor automaton: state = previous symbol, -1 at the root."""

    def __init__(self, matrix: tuple[tuple[int, ...], ...]) -> None:
        self.matrix = matrix
        self.size = len(matrix)
        self.initial = _START

    def step(self, state: int, symbol: int):
        if state == _START:
            return symbol
        return symbol if self.matrix[state][symbol] else None

    def states(self) -> frozenset[int]:
        return frozenset(range(-1, self.size))


@dataclass(frozen=True)
class TreeShiftSpec:
    """Tree geometry plus the ray constraint (1D spec or one-step matrix)."""

    matrix: AdjacencyMatrix
    base: ShiftSpec1D | None
    step_matrix: tuple[tuple[int, ...], ...] | None

    @property
    def alphabet_size(self) -> int:
        if self.base is not None:
            return self.base.alphabet.size
        return len(self.step_matrix)

    def geometry(self) -> TreeGeometry:
        return TreeGeometry(self.matrix)

    def automaton(self):
        if self.base is not None:
            return WordAutomaton(self.base)
        return _MatrixAutomaton(self.step_matrix)

    def state_universe(self) -> frozenset:
        if self.base is not None:
            return WordAutomaton(self.base).reachable_states()
        return _MatrixAutomaton(self.step_matrix).states()

    def to_json(self) -> dict:
        obj: dict = {"tree": self.matrix.to_json()}
        if self.base is not None:
            obj["base"] = self.base.to_json()
        else:
            obj["matrix"] = ["".join(str(x) for x in row) for row in self.step_matrix]
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "TreeShiftSpec":
        tree = AdjacencyMatrix.from_json(obj["tree"])
        if "base" in obj:
            return make_tree_shift(tree, ShiftSpec1D.from_json(obj["base"]))
        return make_tree_shift(tree, [tuple(int(ch) for ch in row) for row in obj["matrix"]])


def make_tree_shift(geometry, base) -> TreeShiftSpec:
    """Validated spec; raises EmptyBase / DeadSymbol on unusable bases."""
    matrix = geometry.matrix if isinstance(geometry, TreeGeometry) else geometry
    if isinstance(base, ShiftSpec1D):
        if not WordAutomaton(base).is_viable():
            raise EmptyBase("base language has no arbitrarily long words")
        return TreeShiftSpec(matrix=matrix, base=base, step_matrix=None)
    step = tuple(tuple(int(x) for x in row) for row in base)
    r = len(step)
    if r < 2 or any(len(row) != r for row in step):
        raise DomainError("step matrix must be square with size >= 2")
    for s, row in enumerate(step):
        if not any(row):
            raise DeadSymbol(f"symbol {s} has no successor; rays cannot continue")
    return TreeShiftSpec(matrix=matrix, base=None, step_matrix=step)


def _child_types(geo: TreeGeometry, vertex_type: int) -> tuple[int, ...]:
    return geo.children_digits(vertex_type)


def count_patterns(ts: TreeShiftSpec, n: int) -> int:
    """Exact number of admissible labelings of Delta_n."""
    if n < 0:
        raise DomainError("depth must be >= 0")
    geo = ts.geometry()
    auto = ts.automaton()
    r = ts.alphabet_size
    memo: dict = {}

    def grow(vertex_type: int, state, depth: int) -> int:
        key = (vertex_type, state, depth)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        for s in range(r):
            nxt = auto.step(state, s)
            if nxt is None:
                continue
            if depth == 0:
                total += 1
                continue
            prod = 1
            for child in _child_types(geo, vertex_type):
                prod *= grow(child, nxt, depth - 1)
                if prod == 0:
                    break
            total += prod
        memo[key] = total
        return total

    return grow(ROOT, auto.initial, n)


@dataclass(frozen=True)
class TreeEntropy:
    raw: float
    running_max_tail: float


def tree_entropy_est(ts: TreeShiftSpec, n: int) -> TreeEntropy:
    """raw = log count / |Delta_n|; tail max of raw over depths n/2..n."""
    if n < 1:
        raise DomainError("entropy estimate needs n >= 1")
    geo = ts.geometry()
    raws = []
    for m in range(1, n + 1):
        c = count_patterns(ts, m)
        raws.append((math.log(c) if c else float("-inf")) / geo.delta_size(m))
    tail = raws[(n - 1) // 2:]
    return TreeEntropy(raw=raws[-1], running_max_tail=max(tail))


def _leaf_classes(auto, universe, r: int) -> dict:
    out: dict = {}
    for s in range(r):
        compat = frozenset(q for q in universe if auto.step(q, s) is not None)
        if compat:
            out[compat] = out.get(compat, 0) + 1
    return out


def _combine_children(dicts, cap: int) -> dict:
    """Product over children keyed by the intersection of tolerated states."""
    acc: dict = None
    for d in dicts:
        if acc is None:
            acc = dict(d)
            continue
        nxt: dict = {}
        for c1, m1 in acc.items():
            for c2, m2 in d.items():
                inter = c1 & c2
                if inter:
                    nxt[inter] = nxt.get(inter, 0) + m1 * m2
        acc = nxt
        if len(acc) > cap:
            raise CapExceeded(f"class dictionary exceeded {cap} entries")
    return acc if acc is not None else {}


def _lift_free(d: dict, auto, universe, r: int) -> dict:
    """Existentially label this vertex: restrictions below stay the same."""
    out: dict = {}
    for inter, mult in d.items():
        compat = frozenset(
            q for q in universe
            if any(auto.step(q, s) in inter for s in range(r))
        )
        if compat:
            out[compat] = out.get(compat, 0) + mult
    return out


@dataclass(frozen=True)
class SurfaceEntropy:
    count: int
    raw: float


def surface_entropy_est(ts: TreeShiftSpec, n: int, cap: int = CLASS_CAP) -> SurfaceEntropy:
    """Distinct restrictions of Delta_n labelings to the level-n vertices.

    The DP carries, per (vertex type, height), a map from tolerated
    incoming-state sets to the number of distinct leaf labelings below.
    Raises CapExceeded when a class map outgrows the cap.
    """
    if n < 1:
        raise DomainError("surface estimate needs n >= 1")
    geo = ts.geometry()
    auto = ts.automaton()
    universe = ts.state_universe()
    r = ts.alphabet_size
    memo: dict = {}

    def classes(vertex_type: int, height: int) -> dict:
        key = (vertex_type, height)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if height == 0:
            out = _leaf_classes(auto, universe, r)
        else:
            inner = _combine_children(
                (classes(c, height - 1) for c in _child_types(geo, vertex_type)), cap
            )
            out = _lift_free(inner, auto, universe, r)
        if len(out) > cap:
            raise CapExceeded(f"class dictionary exceeded {cap} entries")
        memo[key] = out
        return out

    root = classes(ROOT, n)
    count = sum(m for compat, m in root.items() if auto.initial in compat)
    size = geo.level_size(n)
    raw = (math.log(count) if count else float("-inf")) / size
    return SurfaceEntropy(count=count, raw=raw)


@dataclass(frozen=True)
class VertexSet:
    """Explicit set of vertex ids (digit strings; "" is the root)."""

    ids: frozenset[str]

    @classmethod
    def of(cls, ids) -> "VertexSet":
        return cls(frozenset(str(v) for v in ids))

    def __len__(self) -> int:
        return len(self.ids)

    def count_in(self, geo: TreeGeometry, n: int) -> int:
        return sum(1 for v in self.ids if len(v) <= n)

    def members_in(self, geo: TreeGeometry, n: int) -> frozenset[str]:
        return frozenset(v for v in self.ids if len(v) <= n)

    def to_json(self) -> list[str]:
        return sorted(self.ids)

    @classmethod
    def from_json(cls, obj) -> "VertexSet":
        return cls.of(obj)


@dataclass(frozen=True)
class LevelParity:
    """All vertices whose level is congruent to `parity` mod 2."""

    parity: int

    def count_in(self, geo: TreeGeometry, n: int) -> int:
        return sum(
            geo.level_size(k) for k in range(n + 1) if k % 2 == self.parity
        )

    def members_in(self, geo: TreeGeometry, n: int) -> frozenset[str]:
        out: set[str] = set()
        for k in range(n + 1):
            if k % 2 == self.parity:
                out.update(geo.level_vertices(k))
        return frozenset(out)


def ray_vertices(digit: int, n: int) -> VertexSet:
    """The ray {digit, digit digit, ...} down to level n (self-loop rays)."""
    return VertexSet.of(str(digit) * k for k in range(1, n + 1))


@dataclass(frozen=True)
class TreeDensity:
    ratios: tuple[Fraction, ...]
    upper: Fraction
    lower: Fraction


def tree_density(vertex_set, geometry: TreeGeometry, n_range) -> TreeDensity:
    """|S inside Delta_n| / |Delta_n| per depth, extremes over the tail half."""
    depths = list(n_range)
    if not depths:
        raise DomainError("depth range must be nonempty")
    ratios = tuple(
        Fraction(vertex_set.count_in(geometry, n), geometry.delta_size(n))
        for n in depths
    )
    tail = ratios[len(ratios) // 2:]
    return TreeDensity(ratios=ratios, upper=max(tail), lower=min(tail))


def _validate_vertices(geo: TreeGeometry, ids, n: int) -> frozenset[str]:
    out = set()
    for vid in ids:
        if not geo.is_vertex(vid):
            raise DomainError(f"{vid!r} is not a vertex of this tree")
        if len(vid) > n:
            raise DomainError(f"vertex {vid!r} lies below depth {n}")
        out.add(vid)
    return frozenset(out)


def distinct_restrictions(ts: TreeShiftSpec, S, n: int) -> int:
    """Exact number of distinct labelings of S induced by Delta_n patterns.

    Vertices outside S contribute existence only; whole subtrees without
    pinned vertices collapse to a single viability class, so sparse pins
    stay cheap even on deep trees.
    """
    if n < 0:
        raise DomainError("depth must be >= 0")
    geo = ts.geometry()
    auto = ts.automaton()
    universe = ts.state_universe()
    r = ts.alphabet_size
    pins = _validate_vertices(geo, S.ids if isinstance(S, VertexSet) else S, n)
    prefixes = set()
    for vid in pins:
        for i in range(len(vid) + 1):
            prefixes.add(vid[:i])

    viable_memo: dict = {}

    def viable(vertex_type: int, height: int) -> frozenset:
        key = (vertex_type, height)
        hit = viable_memo.get(key)
        if hit is not None:
            return hit
        if height == 0:
            out = frozenset(
                q for q in universe
                if any(auto.step(q, s) is not None for s in range(r))
            )
        else:
            kids = [viable(c, height - 1) for c in _child_types(geo, vertex_type)]
            out = frozenset(
                q for q in universe
                if any(
                    (nxt := auto.step(q, s)) is not None
                    and all(nxt in kid for kid in kids)
                    for s in range(r)
                )
            )
        viable_memo[key] = out
        return out

    def node(vid: str, vertex_type: int, height: int) -> dict:
        if vid not in prefixes:
            v = viable(vertex_type, height)
            return {v: 1} if v else {}
        pinned = vid in pins
        if height == 0:
            if not pinned:
                v = viable(vertex_type, 0)
                return {v: 1} if v else {}
            return _leaf_classes(auto, universe, r)
        inner = _combine_children(
            (
                node(vid + str(c), c, height - 1)
                for c in _child_types(geo, vertex_type)
            ),
            CLASS_CAP,
        )
        if not pinned:
            return _lift_free(inner, auto, universe, r)
        out: dict = {}
        for inter, mult in inner.items():
            for s in range(r):
                compat = frozenset(q for q in universe if auto.step(q, s) in inter)
                if compat:
                    out[compat] = out.get(compat, 0) + mult
        if len(out) > CLASS_CAP:
            raise CapExceeded(f"class dictionary exceeded {CLASS_CAP} entries")
        return out

    root = node("", ROOT, n)
    return sum(m for compat, m in root.items() if auto.initial in compat)


def is_indep_tree(ts: TreeShiftSpec, S, n: int) -> bool:
    """True iff every assignment on S extends to a Delta_n labeling.

    S = empty is independent exactly when some labeling exists.
    """
    pins = S.ids if isinstance(S, VertexSet) else frozenset(S)
    target = ts.alphabet_size ** len(frozenset(pins))
    return distinct_restrictions(ts, VertexSet.of(pins), n) == target


@dataclass(frozen=True)
class SinkLiftSet:
    """1D positions copied onto every sink ray of an unexpandable tree.

    A ray enters a sink the first time its generator lies in a sink
    class; from there the in-class successor is unique, so each entering
    vertex carries one ray.  Position p of the 1D set lands p - 1 steps
    below the entry vertex.
    """

    matrix: AdjacencyMatrix
    positions: tuple[int, ...]
    sink_gens: frozenset[int]
    succ: tuple[int, ...]  # succ[g-1] = unique in-class successor of sink generator g

    def count_in(self, geo: TreeGeometry, n: int) -> int:
        counts = sink_level_counts(self.matrix, max(n - 1, 0))
        total = 0
        for k in range(1, n + 1):
            entries = counts[k - 1] - (counts[k - 2] if k >= 2 else 0)
            if entries:
                total += entries * bisect_right(self.positions, n - k + 1)
        return total

    def members_in(self, geo: TreeGeometry, n: int) -> frozenset[str]:
        pset = frozenset(self.positions)
        out: set[str] = set()
        level = [""]
        for _ in range(n):
            nxt = []
            for vid in level:
                parent_digit = int(vid[-1]) if vid else 0
                parent_in_sink = parent_digit in self.sink_gens
                for c in geo.children_digits(parent_digit):
                    cid = vid + str(c)
                    nxt.append(cid)
                    if c in self.sink_gens and not parent_in_sink:
                        # entering vertex: walk its ray within Delta_n
                        ray = cid
                        pos = 1
                        while len(ray) <= n:
                            if pos in pset:
                                out.add(ray)
                            ray += str(self.succ[int(ray[-1]) - 1])
                            pos += 1
            level = nxt
        return frozenset(out)


def sink_lift(ts: TreeShiftSpec, s1d, hereditary_horizon: int = 6) -> SinkLiftSet:
    """Copy a 1D position set along every sink ray of the tree.

    Requires an unexpandable geometry (sinks exist) and a hereditary
    shift base so the all-low filler used by the independence argument
    stays admissible.
    """
    decomp = sink_decomposition(ts.matrix)  # raises NotUnexpandable
    if ts.base is None:
        raise NotHereditary("one-step matrix bases carry no hereditary order")
    if not words_mod.is_hereditary_upto(ts.base, hereditary_horizon):
        raise NotHereditary(
            f"base fails the hereditary check up to length {hereditary_horizon}"
        )
    positions = tuple(sorted({int(p) for p in s1d}))
    if positions and positions[0] < 1:
        raise DomainError("ray positions are 1-based")
    sink_gens = decomp.sink_generators()
    succ = [0] * ts.matrix.d
    for g in sink_gens:
        inside = [j + 1 for j in range(ts.matrix.d) if ts.matrix.rows[g - 1][j]]
        succ[g - 1] = inside[0]
    return SinkLiftSet(
        matrix=ts.matrix,
        positions=positions,
        sink_gens=sink_gens,
        succ=tuple(succ),
    )


@dataclass(frozen=True)
class BipResult:
    S_n: VertexSet
    ratio: Fraction
    certified: bool


def _greedy_extend(ts: TreeShiftSpec, base: list[str], candidates, n: int) -> list[str]:
    current = list(base)
    for vid in candidates:
        if vid in current:
            continue
        if is_indep_tree(ts, current + [vid], n):
            current.append(vid)
    return current


def _surface_family(ts: TreeShiftSpec, n: int, cap: int = 4096, step_cap: int = 200000):
    """Distinct leaf labelings of Delta_n patterns, or None past the caps."""
    if ts.alphabet_size != 2:
        return None
    geo = ts.geometry()
    auto = ts.automaton()
    leaves = geo.level_vertices(n)
    seen: set[str] = set()
    steps = 0

    order = geo.vertices(n)
    child_map = {
        v: [v + str(c) for c in geo.children_digits(int(v[-1]) if v else 0)]
        for v in order
        if len(v) < n
    }
    labels: dict[str, int] = {}
    states: dict[str, object] = {}

    def assign(idx: int) -> bool:
        nonlocal steps
        steps += 1
        if steps > step_cap or len(seen) > cap:
            return False
        if idx == len(order):
            seen.add("".join(str(labels[v]) for v in leaves))
            return True
        vid = order[idx]
        parent_state = auto.initial if vid == "" else states[vid[:-1]]
        ok = True
        for s in range(ts.alphabet_size):
            nxt = auto.step(parent_state, s)
            if nxt is None:
                continue
            labels[vid] = s
            states[vid] = nxt
            if not assign(idx + 1):
                ok = False
                break
        return ok

    complete = assign(0)
    if not complete:
        return None
    return leaves, sorted(seen)


def bip_search(ts: TreeShiftSpec, boundary_levels: int, n: int) -> BipResult | None:
    """Look for a large independence set confined to the top levels.

    Searches S inside levels n-boundary_levels+1 .. n of Delta_n.  With
    at most 20 boundary vertices the search is exhaustive branch and
    bound and the outcome (including None) is certified; otherwise it is
    a heuristic: try the whole level n, fall back to shattering the
    realized leaf labelings, then grow greedily.  Returns None when no
    nonempty candidate passes.
    """
    if boundary_levels < 1:
        raise DomainError("boundary depth must be >= 1")
    spectral = expanding_number(ts.matrix, 2).spectral
    if spectral <= 1 + 1e-9:
        raise PreconditionViolated(
            "boundary search expects an expanding tree (growth ratio > 1)"
        )
    geo = ts.geometry()
    lo = max(n - boundary_levels + 1, 0)
    boundary: list[str] = []
    for level in range(n, lo - 1, -1):
        boundary.extend(geo.level_vertices(level))
    delta = geo.delta_size(n)

    if len(boundary) <= 20:
        best: list[str] = []

        def grow(current: list[str], start: int) -> None:
            nonlocal best
            for i in range(start, len(boundary)):
                if len(current) + (len(boundary) - i) <= len(best):
                    break
                cand = current + [boundary[i]]
                if is_indep_tree(ts, cand, n):
                    if len(cand) > len(best):
                        best = list(cand)
                    grow(cand, i + 1)

        grow([], 0)
        if not best:
            return None
        return BipResult(
            S_n=VertexSet.of(best), ratio=Fraction(len(best), delta), certified=True
        )

    leaves = geo.level_vertices(n)
    if is_indep_tree(ts, leaves, n):
        chosen = _greedy_extend(ts, leaves, [v for v in boundary if v not in set(leaves)], n)
        return BipResult(
            S_n=VertexSet.of(chosen), ratio=Fraction(len(chosen), delta), certified=False
        )

    fam = _surface_family(ts, n)
    seed: list[str] = []
    if fam is not None:
        leaf_order, patterns = fam
        if len(patterns) >= 2:
            from . import shatter

            family = shatter.BinaryFamily.from_words(patterns)
            width = len(leaf_order)
            k, cum = 0, 0
            for j in range(width + 1):
                cum += math.comb(width, j)
                if len(family) > cum:
                    k = j + 1
            if k >= 1:
                picked = shatter.extract_shattered(family, k)
                seed = [leaf_order[i - 1] for i in picked]
                if not is_indep_tree(ts, seed, n):
                    seed = []
    chosen = _greedy_extend(ts, seed, boundary, n)
    if not chosen:
        return None
    return BipResult(
        S_n=VertexSet.of(chosen), ratio=Fraction(len(chosen), delta), certified=False
    )


@dataclass(frozen=True)
class MaxIndepEstimate:
    size: int
    witness: VertexSet
    ratio: Fraction
    certified: bool
    upper_bound: int


def max_indep_est(ts: TreeShiftSpec, n: int) -> MaxIndepEstimate:
    """Largest independence set in Delta_n, certified via a ray cover.

    Delta_n is covered by its |T_n| root-to-leaf rays, and a restriction
    of an independent tree set to one ray is independent for the base in
    the window [1, n+1]; so max size <= |T_n| * J_{n+1}(base).  When the
    base has J_{n+1} = 1 and the full leaf level checks out, the leaf
    level is exactly optimal.  Otherwise the reported set (leaf level or
    greedy fallback) is a lower bound and certified is False.
    """
    if n < 1:
        raise DomainError("scan needs n >= 1")
    if ts.base is None:
        raise DomainError("the ray-cover bound needs a 1D base spec")
    geo = ts.geometry()
    leaf_count = geo.level_size(n)
    j_record = words_mod.max_indep_J(ts.base, n + 1)
    upper = leaf_count * j_record.J
    leaves = geo.level_vertices(n)
    if is_indep_tree(ts, leaves, n):
        witness = leaves
    else:
        witness = _greedy_extend(ts, [], geo.vertices(n), n)
    size = len(witness)
    return MaxIndepEstimate(
        size=size,
        witness=VertexSet.of(witness),
        ratio=Fraction(size, geo.delta_size(n)),
        certified=size == upper,
        upper_bound=upper,
    )


@dataclass(frozen=True)
class EntropyChain:
    lhs: float
    rhs: float
    sink_weight: int
    holds: bool


def entropy_chain(ts: TreeShiftSpec, n: int) -> EntropyChain:
    """Lower bound on tree entropy from sink rays carrying base words.

    Each ray entering a sink at level k carries any admissible base word
    of length n - k + 1 (the rest of the pattern filled low), giving

        log count(n) / |Delta_n| >= min_{m <= n} (log|B_m|/m) * W / |Delta_n|

    where W = sum over l of l * a_l at horizon n - 1 = the number of
    sink-resident vertices of Delta_n.
    """
    if n < 1:
        raise DomainError("chain check needs n >= 1")
    if ts.base is None:
        raise DomainError("chain check needs a 1D base spec")
    geo = ts.geometry()
    lhs = tree_entropy_est(ts, n).raw
    fekete = words_mod.entropy_est_1d(ts.base, n).fekete_upper
    weights = entering_counts(ts.matrix, n - 1)
    sink_weight = sum(ell * a for ell, a in enumerate(weights, start=1))
    rhs = fekete * sink_weight / geo.delta_size(n)
    return EntropyChain(lhs=lhs, rhs=rhs, sink_weight=sink_weight, holds=lhs >= rhs - 1e-12)
