"""Two-dimensional block languages on k1 x k2 rectangles.

A 2D spec forbids a finite set of rectangular patterns; a block is
locally admissible when no forbidden pattern occurs at any placement.
Enumeration fills cells in row-major order and checks each forbidden
pattern the moment its bottom-right cell is placed, so every placement
is examined exactly once and dead prefixes are cut early.

The symbol-frequency extreme M(k1, k2) = max occurrences of a symbol
over admissible blocks is subadditive in each index, so

    fr_estimate = min over k1, k2 <= kmax of M(k1, k2) / (k1 k2)

is an exact rational upper bound on the limiting frequency.  Density
and independence mirror the 1D notions: a position set is independent
when every assignment extends to an admissible block, and the witness
extractor runs the shattering route (find the largest k the family
size forces, pull a shattered set, check it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import shatter
from .caps import enumeration_cap
from .errors import CapExceeded, DomainError, EmptyLanguage, NoWitness

Cell = tuple[int, int]
Pattern = tuple[tuple[int, ...], ...]


def pattern_from_rows(rows) -> Pattern:
    out = []
    width = None
    for row in rows:
        cells = tuple(int(ch) for ch in row) if isinstance(row, str) else tuple(row)
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise DomainError("pattern rows must share one width")
        out.append(cells)
    if not out or width == 0:
        raise DomainError("patterns must be nonempty")
    return tuple(out)


@dataclass(frozen=True)
class GridBlock:
    """An a1 x a2 array of symbols, row 1 on top, 1-based coordinates."""

    rows: Pattern

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def at(self, i: int, j: int) -> int:
        return self.rows[i - 1][j - 1]

    def to_strings(self) -> list[str]:
        return ["".join(str(s) for s in row) for row in self.rows]


@dataclass(frozen=True)
class ShiftSpec2D:
    """A 2D shift given by alphabet size and forbidden rectangular patterns."""

    alphabet_size: int
    forbidden: tuple[Pattern, ...]

    def __post_init__(self) -> None:
        if self.alphabet_size < 2:
            raise DomainError(f"alphabet needs at least 2 symbols, got {self.alphabet_size}")
        for pat in self.forbidden:
            for row in pat:
                for s in row:
                    if not (0 <= s < self.alphabet_size):
                        raise DomainError(f"pattern symbol {s} outside the alphabet")

    @classmethod
    def from_patterns(cls, r: int, patterns) -> "ShiftSpec2D":
        return cls(r, tuple(sorted(pattern_from_rows(p) for p in patterns)))

    @classmethod
    def hard_square(cls) -> "ShiftSpec2D":
        """Binary blocks with no two horizontally or vertically adjacent ones."""
        return cls.from_patterns(2, (("11",), ("1", "1")))

    @classmethod
    def full(cls, r: int = 2) -> "ShiftSpec2D":
        return cls(r, ())

    @classmethod
    def zeros_only(cls) -> "ShiftSpec2D":
        return cls.from_patterns(2, (("1",),))

    def to_json(self) -> dict:
        return {
            "alphabet": self.alphabet_size,
            "forbidden": [
                {
                    "dims": [len(pat), len(pat[0])],
                    "cells": "".join(str(s) for row in pat for s in row),
                }
                for pat in self.forbidden
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ShiftSpec2D":
        pats = []
        for entry in obj.get("forbidden", ()):
            p1, p2 = entry["dims"]
            cells = entry["cells"]
            if len(cells) != p1 * p2:
                raise DomainError(f"cells length {len(cells)} does not match dims {p1}x{p2}")
            pats.append([cells[i * p2:(i + 1) * p2] for i in range(p1)])
        return cls.from_patterns(obj["alphabet"], pats)


def _anchored_checks(spec: ShiftSpec2D, k1: int, k2: int):
    """For each cell, the forbidden patterns whose bottom-right lands there.

    Keyed by 0-based (i, j); values are (flat pattern, cell list) pairs.
    """
    checks: dict[Cell, list[tuple[tuple[int, ...], tuple[Cell, ...]]]] = {}
    for pat in spec.forbidden:
        p1, p2 = len(pat), len(pat[0])
        if p1 > k1 or p2 > k2:
            continue
        flat = tuple(s for row in pat for s in row)
        offsets = tuple((di, dj) for di in range(p1) for dj in range(p2))
        for i in range(p1 - 1, k1):
            for j in range(p2 - 1, k2):
                base = (i - p1 + 1, j - p2 + 1)
                cells = tuple((base[0] + di, base[1] + dj) for di, dj in offsets)
                checks.setdefault((i, j), []).append((flat, cells))
    return checks


_BLOCK_CACHE: dict = {}


def blocks_2d(spec: ShiftSpec2D, k1: int, k2: int, cap: int | None = None) -> tuple[GridBlock, ...]:
    """All admissible k1 x k2 blocks, ordered by their row-major symbol string."""
    if k1 < 1 or k2 < 1:
        raise DomainError("block sides must be >= 1")
    limit = enumeration_cap() if cap is None else cap
    key = (spec, k1, k2)
    cached = _BLOCK_CACHE.get(key)
    if cached is not None and len(cached) <= limit:
        return cached
    checks = _anchored_checks(spec, k1, k2)
    grid = [[0] * k2 for _ in range(k1)]
    out: list[GridBlock] = []
    cells = [(i, j) for i in range(k1) for j in range(k2)]

    def fill(idx: int) -> None:
        if idx == len(cells):
            out.append(GridBlock(tuple(tuple(row) for row in grid)))
            if len(out) > limit:
                raise CapExceeded(f"more than {limit} blocks of shape {k1}x{k2}")
            return
        i, j = cells[idx]
        here = checks.get((i, j), ())
        for s in range(spec.alphabet_size):
            grid[i][j] = s
            if all(
                any(grid[ci][cj] != flat[t] for t, (ci, cj) in enumerate(cc))
                for flat, cc in here
            ):
                fill(idx + 1)

    fill(0)
    result = tuple(out)
    _BLOCK_CACHE[key] = result
    return result


def count_blocks_2d(spec: ShiftSpec2D, k1: int, k2: int, cap: int | None = None) -> int:
    return len(blocks_2d(spec, k1, k2, cap=cap))


def count_symbol(block: GridBlock, symbol: int) -> int:
    return sum(row.count(symbol) for row in block.rows)


@dataclass(frozen=True)
class MaxSymbolBlock:
    M: int
    witness: GridBlock


def max_symbol_block(spec: ShiftSpec2D, k1: int, k2: int, symbol: int = 1) -> MaxSymbolBlock:
    """Max symbol count over admissible blocks; lex-first witness among ties."""
    if not (0 <= symbol < spec.alphabet_size):
        raise DomainError(f"symbol {symbol} outside the alphabet")
    best = None
    best_count = -1
    # enumeration order is lex on flattened cells, so strict improvement
    # keeps the lexicographically first maximizer
    for block in blocks_2d(spec, k1, k2):
        c = count_symbol(block, symbol)
        if c > best_count:
            best, best_count = block, c
    if best is None:
        raise EmptyLanguage(f"no admissible {k1}x{k2} blocks")
    return MaxSymbolBlock(M=best_count, witness=best)


def fr_estimate(spec: ShiftSpec2D, symbol: int, kmax: int) -> Fraction:
    """min over 1 <= k1, k2 <= kmax of M(k1, k2) / (k1 k2), exact."""
    if kmax < 1:
        raise DomainError("kmax must be >= 1")
    return min(
        Fraction(max_symbol_block(spec, k1, k2, symbol).M, k1 * k2)
        for k1 in range(1, kmax + 1)
        for k2 in range(1, kmax + 1)
    )


@dataclass(frozen=True)
class Entropy2D:
    raw: float
    fekete_upper: float


def entropy_est_2d(spec: ShiftSpec2D, k1: int, k2: int) -> Entropy2D:
    """raw = log M(k1,k2)/(k1 k2); upper = min over 1 <= m_i <= k_i (nats)."""
    if k1 < 1 or k2 < 1:
        raise DomainError("entropy estimate needs sides >= 1")
    logs = []
    raw = None
    for m1 in range(1, k1 + 1):
        for m2 in range(1, k2 + 1):
            c = count_blocks_2d(spec, m1, m2)
            val = (math.log(c) if c else float("-inf")) / (m1 * m2)
            logs.append(val)
            if (m1, m2) == (k1, k2):
                raw = val
    return Entropy2D(raw=raw, fekete_upper=min(logs))


def prefix_regular_block(
    spec: ShiftSpec2D, k1: int, k2: int, symbol: int, target
) -> GridBlock | None:
    """An admissible block whose every top slab meets the target frequency.

    Regularity asks count(rows 1..j) >= j * k2 * target for every j <= k1;
    the comparison is exact on rationals.  Returns None when no block
    qualifies at this window; raises EmptyLanguage when there are no
    blocks at all.
    """
    goal = Fraction(target)
    if not (0 <= goal <= 1):
        raise DomainError(f"target {goal} outside [0, 1]")
    blocks = blocks_2d(spec, k1, k2)
    if not blocks:
        raise EmptyLanguage(f"no admissible {k1}x{k2} blocks")
    for block in blocks:
        running = 0
        ok = True
        for j, row in enumerate(block.rows, start=1):
            running += row.count(symbol)
            if Fraction(running) < j * k2 * goal:
                ok = False
                break
        if ok:
            return block
    return None


@dataclass(frozen=True)
class GridPositionSet:
    """1-based grid positions: an explicit cell set or a named generator."""

    kind: str
    cells: frozenset[Cell] = frozenset()
    param: int = 0

    @classmethod
    def of(cls, cells) -> "GridPositionSet":
        return cls(kind="explicit", cells=frozenset((int(a), int(b)) for a, b in cells))

    @classmethod
    def checkerboard(cls) -> "GridPositionSet":
        """Positions (i, j) with i + j even."""
        return cls(kind="checkerboard")

    @classmethod
    def rows_leq(cls, m: int) -> "GridPositionSet":
        """Positions in the top m rows."""
        return cls(kind="rows_leq", param=m)

    @classmethod
    def everything(cls) -> "GridPositionSet":
        return cls(kind="all")

    def contains(self, i: int, j: int) -> bool:
        if self.kind == "explicit":
            return (i, j) in self.cells
        if self.kind == "checkerboard":
            return (i + j) % 2 == 0
        if self.kind == "rows_leq":
            return i <= self.param
        return True

    def count_window(self, n1: int, n2: int) -> int:
        if self.kind == "explicit":
            return sum(1 for i, j in self.cells if i <= n1 and j <= n2)
        if self.kind == "checkerboard":
            # same-parity pairs: odd rows pair with odd columns and so on
            odd = (n1 + 1) // 2 * ((n2 + 1) // 2)
            even = (n1 // 2) * (n2 // 2)
            return odd + even
        if self.kind == "rows_leq":
            return min(self.param, n1) * n2
        return n1 * n2

    def window(self, n1: int, n2: int) -> frozenset[Cell]:
        if self.kind == "explicit":
            return frozenset((i, j) for i, j in self.cells if i <= n1 and j <= n2)
        return frozenset(
            (i, j)
            for i in range(1, n1 + 1)
            for j in range(1, n2 + 1)
            if self.contains(i, j)
        )

    def to_json(self):
        if self.kind == "explicit":
            return {"cells": sorted([i, j] for i, j in self.cells)}
        if self.kind == "rows_leq":
            return {"generator": "rows_leq", "m": self.param}
        return {"generator": self.kind}

    @classmethod
    def from_json(cls, obj) -> "GridPositionSet":
        if "cells" in obj:
            return cls.of(obj["cells"])
        gen = obj["generator"]
        if gen == "checkerboard":
            return cls.checkerboard()
        if gen == "rows_leq":
            return cls.rows_leq(obj["m"])
        if gen == "all":
            return cls.everything()
        raise DomainError(f"unknown position generator {gen!r}")


@dataclass(frozen=True)
class UpperDensity2D:
    ratios: tuple[Fraction, ...]
    upper_est: Fraction


def upper_density_grid(positions: GridPositionSet, windows) -> UpperDensity2D:
    """|S inside each window| / area, with max taken over the tail half."""
    wins = [tuple(w) for w in windows]
    if not wins:
        raise DomainError("window list must be nonempty")
    for n1, n2 in wins:
        if n1 < 1 or n2 < 1:
            raise DomainError("window sides must be >= 1")
    ratios = tuple(
        Fraction(positions.count_window(n1, n2), n1 * n2) for n1, n2 in wins
    )
    tail = ratios[len(ratios) // 2:]
    return UpperDensity2D(ratios=ratios, upper_est=max(tail))


def _restrictions(blocks, cells: tuple[Cell, ...]):
    for block in blocks:
        yield tuple(block.at(i, j) for i, j in cells)


def is_indep_2d(spec: ShiftSpec2D, positions: GridPositionSet, k1: int, k2: int) -> bool:
    """Every assignment on the positions extends to an admissible block.

    Explicit position sets must lie inside the window; generator sets are
    clipped to it.
    """
    if positions.kind == "explicit":
        for i, j in positions.cells:
            if not (1 <= i <= k1 and 1 <= j <= k2):
                raise DomainError(f"position {(i, j)} outside the {k1}x{k2} window")
    cells = tuple(sorted(positions.window(k1, k2)))
    blocks = blocks_2d(spec, k1, k2)
    if not blocks:
        return False
    if not cells:
        return True
    target = spec.alphabet_size ** len(cells)
    if target > len(blocks):
        return False
    seen = set()
    for rest in _restrictions(blocks, cells):
        seen.add(rest)
        if len(seen) == target:
            return True
    return False


@dataclass(frozen=True)
class Indep2DWitness:
    J: GridPositionSet
    k: int


def indep_witness_2d(spec: ShiftSpec2D, k1: int, k2: int) -> Indep2DWitness:
    """Shattering-based independence witness for binary 2D shifts.

    Treats B_{k1,k2} as a binary family over N = k1*k2 indices, finds the
    largest k whose counting hypothesis |F| > sum_{j<k} C(N,j) holds,
    extracts the lexicographically first shattered size-k index set, and
    returns it as grid positions (row-major index order).  The result is
    checked against is_indep_2d before returning.
    """
    if spec.alphabet_size != 2:
        raise DomainError("witness extraction works on binary alphabets")
    blocks = blocks_2d(spec, k1, k2)
    if len(blocks) <= 1:
        raise NoWitness(f"language has {len(blocks)} block(s); no free position")
    n = k1 * k2
    family = shatter.BinaryFamily.from_words(
        "".join(str(s) for row in b.rows for s in row) for b in blocks
    )
    k = 0
    cum = 0
    for j in range(n + 1):
        cum += math.comb(n, j)
        if len(family) > cum:
            k = j + 1
    index_set = shatter.extract_shattered(family, k)
    cells = tuple(( (idx - 1) // k2 + 1, (idx - 1) % k2 + 1) for idx in index_set)
    witness = GridPositionSet.of(cells)
    if not is_indep_2d(spec, witness, k1, k2):
        raise AssertionError("shattered set failed the independence re-check")
    return Indep2DWitness(J=witness, k=k)
