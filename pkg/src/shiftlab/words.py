"""One-dimensional shift languages over a finite ordered alphabet.

A spec presents a shift in one of three ways: a finite list of forbidden
words, the full shift, or the AtMostK family (at most ``count`` occurrences
of one tracked symbol in every window).  The operations here work on the
locally admissible window language: the length-n words containing no
forbidden factor.  For the built-in catalog (golden mean, full shift,
AtMostK, single-letter erasures) this coincides with the true block
language of the shift.

Provided quantities:

* exact block counts by a state DP, never materializing beyond the cap;
* entropy estimates in nats, with the subadditivity (Fekete) upper bound
  ``min_{m <= n} log |B_m| / m``;
* hereditary closures (coordinatewise lowering) and a hereditary check;
* window-scale independence: S inside [1, l] is independent when every
  assignment S -> alphabet extends to an admissible length-l word, and
  J_l is the maximum size of such an S.  J is subadditive, so J_l / l
  converges; ``max_indep_J`` reports the running Fekete estimate.

Positions are 1-based throughout, matching the window notation [1, l].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .caps import enumeration_cap
from .errors import CapExceeded, DomainError

FULL = "full"
FORBIDDEN = "forbidden"
AT_MOST_K = "at_most_k"

Word = tuple[int, ...]


def word_from_str(text: str) -> Word:
    return tuple(int(ch) for ch in text)


def word_to_str(word: Word) -> str:
    return "".join(str(s) for s in word)


@dataclass(frozen=True)
class Alphabet:
    """Symbols 0..size-1 in their natural order."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 2:
            raise DomainError(f"alphabet needs at least 2 symbols, got {self.size}")

    @property
    def symbols(self) -> range:
        return range(self.size)


@dataclass(frozen=True)
class ShiftSpec1D:
    """A 1D shift presentation.

    kind "forbidden" lists the forbidden words, kind "full" forbids
    nothing, kind "at_most_k" allows at most ``count`` occurrences of
    ``symbol`` in any window.
    """

    alphabet: Alphabet
    kind: str
    forbidden: tuple[Word, ...] = ()
    symbol: int = 0
    count: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (FULL, FORBIDDEN, AT_MOST_K):
            raise DomainError(f"unknown spec kind {self.kind!r}")
        if self.kind == FORBIDDEN:
            for w in self.forbidden:
                if len(w) == 0:
                    raise DomainError("forbidden words must be nonempty")
                if any(not (0 <= s < self.alphabet.size) for s in w):
                    raise DomainError(f"forbidden word {w} uses symbols outside the alphabet")
        if self.kind == AT_MOST_K:
            if not (0 <= self.symbol < self.alphabet.size):
                raise DomainError(f"tracked symbol {self.symbol} outside the alphabet")
            if self.count < 0:
                raise DomainError("occurrence bound must be >= 0")

    @classmethod
    def full(cls, r: int = 2) -> "ShiftSpec1D":
        return cls(Alphabet(r), FULL)

    @classmethod
    def with_forbidden(cls, r: int, words) -> "ShiftSpec1D":
        packed = tuple(
            sorted(word_from_str(w) if isinstance(w, str) else tuple(w) for w in words)
        )
        return cls(Alphabet(r), FORBIDDEN, forbidden=packed)

    @classmethod
    def at_most_k(cls, r: int, symbol: int, count: int) -> "ShiftSpec1D":
        return cls(Alphabet(r), AT_MOST_K, symbol=symbol, count=count)

    @classmethod
    def golden_mean(cls) -> "ShiftSpec1D":
        """Binary shift forbidding adjacent ones."""
        return cls.with_forbidden(2, ("11",))

    @classmethod
    def zeros_only(cls) -> "ShiftSpec1D":
        """The one-point shift whose only admissible symbol is 0."""
        return cls.with_forbidden(2, ("1",))

    @property
    def max_forbidden_len(self) -> int:
        return max((len(w) for w in self.forbidden), default=0)

    def to_json(self) -> dict:
        obj: dict = {"alphabet": self.alphabet.size, "kind": self.kind}
        if self.kind == FORBIDDEN:
            obj["forbidden"] = [word_to_str(w) for w in self.forbidden]
        elif self.kind == AT_MOST_K:
            obj["symbol"] = self.symbol
            obj["count"] = self.count
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "ShiftSpec1D":
        kind = obj.get("kind", FORBIDDEN)
        r = obj["alphabet"]
        if kind == FULL:
            return cls.full(r)
        if kind == FORBIDDEN:
            return cls.with_forbidden(r, obj.get("forbidden", ()))
        if kind == AT_MOST_K:
            return cls.at_most_k(r, obj["symbol"], obj["count"])
        raise DomainError(f"unknown spec kind {kind!r}")


class WordAutomaton:
    """Incremental recognizer for a spec's locally admissible words.

    A state carries just enough history to judge the next symbol: the
    last ``max_forbidden_len - 1`` symbols for a forbidden-word spec, the
    running (capped) occurrence count for AtMostK, a single state for the
    full shift.  ``step`` returns the successor state, or None when the
    extension would be inadmissible.
    """

    def __init__(self, spec: ShiftSpec1D) -> None:
        self.spec = spec
        self.size = spec.alphabet.size
        if spec.kind == FORBIDDEN:
            self._memory = max(spec.max_forbidden_len - 1, 0)
            self.initial: object = ()
        elif spec.kind == AT_MOST_K:
            self._memory = 0
            self.initial = 0
        else:
            self._memory = 0
            self.initial = ()

    def step(self, state, symbol: int):
        spec = self.spec
        if spec.kind == FULL:
            return ()
        if spec.kind == AT_MOST_K:
            nxt = state + (1 if symbol == spec.symbol else 0)
            return nxt if nxt <= spec.count else None
        grown = state + (symbol,)
        for f in spec.forbidden:
            if len(f) <= len(grown) and grown[-len(f):] == f:
                return None
        return grown[-self._memory:] if self._memory else ()

    def reachable_states(self) -> frozenset:
        """All states reachable from the initial state (initial included)."""
        seen = {self.initial}
        frontier = [self.initial]
        while frontier:
            state = frontier.pop()
            for s in range(self.size):
                nxt = self.step(state, s)
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)

    def live_states(self) -> frozenset:
        """Reachable states from which arbitrarily long extensions exist."""
        live = set(self.reachable_states())
        while True:
            dead = {
                state
                for state in live
                if not any(
                    (nxt := self.step(state, s)) is not None and nxt in live
                    for s in range(self.size)
                )
            }
            if not dead:
                return frozenset(live)
            live -= dead

    def is_viable(self) -> bool:
        """True when the language contains words of every length."""
        return self.initial in self.live_states()


def block_counts(spec: ShiftSpec1D, n: int) -> list[int]:
    """Exact [|B_0|, ..., |B_n|] via the state DP, no materialization."""
    if n < 0:
        raise DomainError("length must be >= 0")
    auto = WordAutomaton(spec)
    dist: dict = {auto.initial: 1}
    out = [1]
    for _ in range(n):
        nxt: dict = {}
        for state, mult in dist.items():
            for s in range(auto.size):
                t = auto.step(state, s)
                if t is not None:
                    nxt[t] = nxt.get(t, 0) + mult
        dist = nxt
        out.append(sum(dist.values()))
    return out


def count_blocks_1d(spec: ShiftSpec1D, n: int) -> int:
    return block_counts(spec, n)[n]


def blocks_1d(spec: ShiftSpec1D, n: int, cap: int | None = None) -> frozenset[Word]:
    """The admissible words of length n (n = 0 gives the empty word)."""
    if n < 0:
        raise DomainError("length must be >= 0")
    limit = enumeration_cap() if cap is None else cap
    auto = WordAutomaton(spec)
    out: list[Word] = []

    def extend(prefix: Word, state) -> None:
        if len(prefix) == n:
            out.append(prefix)
            if len(out) > limit:
                raise CapExceeded(f"more than {limit} words of length {n}")
            return
        for s in range(auto.size):
            t = auto.step(state, s)
            if t is not None:
                extend(prefix + (s,), t)

    extend((), auto.initial)
    return frozenset(out)


@dataclass(frozen=True)
class Entropy1D:
    raw: float
    fekete_upper: float


def _safe_log(count: int) -> float:
    return math.log(count) if count > 0 else float("-inf")


def entropy_est_1d(spec: ShiftSpec1D, n: int) -> Entropy1D:
    """raw = log|B_n|/n; fekete_upper = min_{m<=n} log|B_m|/m (nats)."""
    if n < 1:
        raise DomainError("entropy estimate needs n >= 1")
    counts = block_counts(spec, n)
    per_len = [_safe_log(counts[m]) / m for m in range(1, n + 1)]
    return Entropy1D(raw=per_len[-1], fekete_upper=min(per_len))


def hereditary_closure(spec: ShiftSpec1D, n: int, cap: int | None = None) -> frozenset[Word]:
    """Downward completion of B_n under coordinatewise symbol lowering."""
    seen = set(blocks_1d(spec, n, cap=cap))
    stack = list(seen)
    while stack:
        w = stack.pop()
        for i, s in enumerate(w):
            if s > 0:
                lowered = w[:i] + (s - 1,) + w[i + 1:]
                if lowered not in seen:
                    seen.add(lowered)
                    stack.append(lowered)
    return frozenset(seen)


def is_hereditary_upto(spec: ShiftSpec1D, n: int) -> bool:
    """True when lowering any admissible word of length <= n stays admissible."""
    if n < 1:
        raise DomainError("hereditary check needs n >= 1")
    for m in range(1, n + 1):
        if hereditary_closure(spec, m) != blocks_1d(spec, m):
            return False
    return True


def _check_positions(positions, length: int) -> tuple[int, ...]:
    pos = tuple(sorted(set(positions)))
    for p in pos:
        if not (1 <= p <= length):
            raise DomainError(f"position {p} outside the window [1, {length}]")
    return pos


def is_indep_1d(spec: ShiftSpec1D, positions, length: int) -> bool:
    """Every assignment on the positions extends to an admissible word.

    The empty set is independent exactly when the length-``length``
    language is nonempty.
    """
    pos = _check_positions(positions, length)
    blocks = blocks_1d(spec, length)
    if not blocks:
        return False
    if not pos:
        return True
    restricted = {tuple(w[p - 1] for p in pos) for w in blocks}
    return len(restricted) == spec.alphabet.size ** len(pos)


def _max_indep_window(blocks: list[Word], r: int, length: int) -> tuple[int, tuple[int, ...]]:
    """Maximum independent set inside [1, length]; lex-first witness."""
    if not blocks:
        return 0, ()
    best: list[int] = []

    def independent(pos: list[int]) -> bool:
        seen = set()
        target = r ** len(pos)
        for w in blocks:
            seen.add(tuple(w[p - 1] for p in pos))
            if len(seen) == target:
                return True
        return False

    def grow(current: list[int], start: int) -> None:
        nonlocal best
        for p in range(start, length + 1):
            # even taking every remaining position cannot beat the incumbent
            if len(current) + (length - p + 1) <= len(best):
                break
            cand = current + [p]
            if independent(cand):
                if len(cand) > len(best):
                    best = list(cand)
                grow(cand, p + 1)

    grow([], 1)
    return len(best), tuple(best)


@dataclass(frozen=True)
class MaxIndep1D:
    J: int
    witness: tuple[int, ...]
    fekete_limit_est: Fraction


def max_indep_J(spec: ShiftSpec1D, length: int) -> MaxIndep1D:
    """J_length with a lex-first witness and the running min of J_m / m."""
    if length < 1:
        raise DomainError("window length must be >= 1")
    r = spec.alphabet.size
    js: list[int] = []
    witness: tuple[int, ...] = ()
    for m in range(1, length + 1):
        blocks = sorted(blocks_1d(spec, m))
        j, wit = _max_indep_window(blocks, r, m)
        js.append(j)
        if m == length:
            witness = wit
    fekete = min(Fraction(js[m - 1], m) for m in range(1, length + 1))
    return MaxIndep1D(J=js[-1], witness=witness, fekete_limit_est=fekete)
