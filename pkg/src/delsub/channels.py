"""Channel models: edit scripts, error balls, and ball-intersection tests.

Three ball kinds are supported:

* ``DS(t, s)``   — exactly t deletions followed by up to s substitutions
  (trivial substitutions allowed, so "up to" and "exactly" coincide); every
  member has length n - t.
* ``BURST(t)``   — one contiguous deletion window of length t' in [0, t];
  the center itself is a member (t' = 0).
* ``DST(t, s)``  — binary only: t deletions plus at most s operations, each a
  substitution or an adjacent transposition, in any order (the order does not
  change the reachable set, which the test suite checks against an
  interleaving oracle).

Balls are materialized as frozensets of sequences behind a size cap; the
burst-intersection predicate checks windows directly without materializing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import CapExceeded, InvalidScript, UnsupportedAlphabet
from .limits import ball_cap
from .sequences import Sequence

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class EditScript:
    """A replayable corruption: positions are 1-based in the original word.

    Substitutions are applied first (in list order), then transpositions (in
    list order), both at original coordinates, and deletions last.  For the
    ball models above this canonical order reaches the same final sequence as
    any interleaving of the same operations.
    """

    deletions: tuple[int, ...] = ()
    substitutions: tuple[tuple[int, int], ...] = ()
    transpositions: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "deletions": list(self.deletions),
            "substitutions": [list(p) for p in self.substitutions],
            "transpositions": list(self.transpositions),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "EditScript":
        return cls(
            deletions=tuple(obj.get("deletions", ())),
            substitutions=tuple((p, v) for p, v in obj.get("substitutions", ())),
            transpositions=tuple(obj.get("transpositions", ())),
        )


@dataclass(frozen=True)
class BallModel:
    """Which error ball to generate: kind in {"DS", "DST", "BURST"}."""

    kind: str
    t: int
    s: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("DS", "DST", "BURST"):
            raise ValueError(f"unknown ball kind {self.kind!r}")
        if self.t < 0 or self.s < 0:
            raise ValueError("error budgets must be non-negative")

    def ball(self, x: Sequence, cap: int | None = None) -> "Ball":
        if self.kind == "DS":
            return del_sub_ball(x, self.t, self.s, cap=cap)
        if self.kind == "DST":
            return del_sub_trans_ball(x, self.t, self.s, cap=cap)
        return burst_deletion_ball(x, self.t)

    def label(self) -> str:
        if self.kind == "BURST":
            return f"BURST({self.t})"
        return f"{self.kind}({self.t},{self.s})"


@dataclass(frozen=True)
class Ball:
    """A materialized error ball: the reachable set around a center."""

    center: Sequence
    model: BallModel
    members: frozenset[Sequence] = field(repr=False)

    def __contains__(self, item: Sequence) -> bool:
        return item in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def to_json(self) -> list[str]:
        return sorted(str(m) for m in self.members)


def apply_script(x: Sequence, script: EditScript) -> Sequence:
    """Replay a script: substitutions, then transpositions, then deletions."""
    n = len(x)
    for p, v in script.substitutions:
        if not (1 <= p <= n) or not (0 <= v < x.q):
            raise InvalidScript(f"substitution ({p}, {v}) invalid for length {n}")
    for p in script.transpositions:
        if not (1 <= p <= n - 1):
            raise InvalidScript(f"transposition at {p} invalid for length {n}")
    dels = tuple(script.deletions)
    if len(set(dels)) != len(dels) or not all(1 <= p <= n for p in dels):
        raise InvalidScript(f"deletions {dels} invalid for length {n}")
    out = x
    for p, v in script.substitutions:
        out = out.substitute(p, v)
    for p in script.transpositions:
        out = out.transpose(p)
    return out.delete_positions(dels)


def burst_deletion_ball(x: Sequence, t: int) -> Ball:
    """All results of deleting one contiguous window of length 0..t from x."""
    n = len(x)
    if not 0 <= t <= n:
        raise ValueError(f"burst budget t={t} out of range for length {n}")
    members = {x}
    for tp in range(1, t + 1):
        for p in range(1, n - tp + 2):
            members.add(x.delete_window(p, tp))
    return Ball(x, BallModel("BURST", t), frozenset(members))


def _exact_deletions(x: Sequence, t: int) -> set[Sequence]:
    n = len(x)
    out = set()
    for drop in itertools.combinations(range(1, n + 1), t):
        out.add(x.delete_positions(drop))
    return out


def _sub_round(members: set[Sequence]) -> set[Sequence]:
    out = set(members)
    for m in members:
        b = m.symbols
        for i in range(len(b)):
            for v in range(m.q):
                if v != b[i]:
                    out.add(Sequence(b[:i] + bytes((v,)) + b[i + 1 :], m.q))
    return out


def _sub_trans_round(members: set[Sequence]) -> set[Sequence]:
    out = set(members)
    for m in members:
        b = m.symbols
        for i in range(len(b)):
            out.add(Sequence(b[:i] + bytes((1 - b[i],)) + b[i + 1 :], m.q))
        for i in range(len(b) - 1):
            if b[i] != b[i + 1]:
                out.add(Sequence(b[:i] + bytes((b[i + 1], b[i])) + b[i + 2 :], m.q))
    return out


def _check_ball_bound(n: int, q: int, t: int, s: int, cap: int | None, trans: bool) -> None:
    per_op = (n - t) * (q - 1) + (n - t - 1 if trans else 0)
    bound = math.comb(n, t)
    for _ in range(s):
        bound *= max(per_op, 1) + 1
    limit = ball_cap(cap)
    if bound > limit:
        raise CapExceeded(f"ball pre-bound {bound} exceeds cap {limit}")


def del_sub_ball(x: Sequence, t: int, s: int, cap: int | None = None) -> Ball:
    """Exactly t deletions then up to s substitutions; members have length n-t."""
    n = len(x)
    if not 0 <= t <= n:
        raise ValueError(f"deletion budget t={t} out of range for length {n}")
    if s < 0:
        raise ValueError("substitution budget must be non-negative")
    _check_ball_bound(n, x.q, t, s, cap, trans=False)
    members = _exact_deletions(x, t)
    for _ in range(s):
        members = _sub_round(members)
    return Ball(x, BallModel("DS", t, s), frozenset(members))


def del_sub_trans_ball(x: Sequence, t: int, s: int, cap: int | None = None) -> Ball:
    """t deletions plus at most s substitution-or-transposition ops (binary only)."""
    if x.q != 2:
        raise UnsupportedAlphabet("substitution-transposition balls are defined for q = 2 only")
    n = len(x)
    if not 0 <= t <= n:
        raise ValueError(f"deletion budget t={t} out of range for length {n}")
    if s < 0:
        raise ValueError("operation budget must be non-negative")
    _check_ball_bound(n, 2, t, s, cap, trans=True)
    members = _exact_deletions(x, t)
    for _ in range(s):
        members = _sub_trans_round(members)
    return Ball(x, BallModel("DST", t, s), frozenset(members))


def burst_balls_intersect(
    x: Sequence, y: Sequence, t: int
) -> tuple[int, int, int] | None:
    """Witness (t', p_x, p_y) that the burst balls of x and y meet, or None.

    Direct window check, no materialization: returns the lexicographically
    smallest witness, scanning t' ascending, then p_x, then p_y.  t' = 0 uses
    the fixed positions (0, 1, 1) and means x == y.
    """
    if len(x) != len(y):
        raise ValueError("burst intersection is defined for equal lengths only")
    n = len(x)
    if t < 0:
        raise ValueError("burst budget must be non-negative")
    if x.symbols == y.symbols:
        return (0, 1, 1)
    bx, by = x.symbols, y.symbols
    for tp in range(1, min(t, n) + 1):
        seen: dict[bytes, int] = {}
        for py in range(1, n - tp + 2):
            rem = by[: py - 1] + by[py - 1 + tp :]
            if rem not in seen:
                seen[rem] = py
        for px in range(1, n - tp + 2):
            rem = bx[: px - 1] + bx[px - 1 + tp :]
            py = seen.get(rem)
            if py is not None:
                return (tp, px, py)
    return None


def _splitmix64(state: int) -> tuple[int, int]:
    """One step of the splitmix64 stream: returns (next_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit generator with a documented draw order.

    ``next_below(n)`` returns ``next() % n``.  All corruption sampling draws
    through this class so that a fixed seed reproduces byte-identical scripts
    in any implementation of the same stream.
    """

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state, out = _splitmix64(self.state)
        return out

    def next_below(self, n: int) -> int:
        return self.next() % n


def sample_corruption(
    x: Sequence, t: int, s: int, model: str = "DS", seed: int = 0
) -> tuple[Sequence, EditScript]:
    """Draw a deterministic corruption of x from the given channel.

    Draw order (each item one splitmix64 output, in this exact sequence):
    first the t deletion positions as ``1 + next_below(n)``, re-drawing any
    duplicate until t distinct positions are collected; then s operations.
    Under DS each operation is a substitution ``(1 + next_below(n),
    next_below(q))``.  Under DST with n >= 2 each operation first draws a
    coin ``next_below(2)``: 0 means a substitution as above, 1 means an
    adjacent transposition at ``1 + next_below(n - 1)``; with n < 2 no coin
    is drawn and the operation is a substitution.  The script applies in the
    canonical order of :func:`apply_script`.
    """
    if model not in ("DS", "DST"):
        raise ValueError(f"unknown channel model {model!r}")
    if model == "DST" and x.q != 2:
        raise UnsupportedAlphabet("DST channel is defined for q = 2 only")
    n = len(x)
    if not 0 <= t <= n:
        raise ValueError(f"deletion budget t={t} out of range for length {n}")
    rng = SplitMix64(seed)
    deletions: list[int] = []
    while len(deletions) < t:
        p = 1 + rng.next_below(n)
        if p not in deletions:
            deletions.append(p)
    subs: list[tuple[int, int]] = []
    trans: list[int] = []
    for _ in range(s):
        if model == "DST" and n >= 2 and rng.next_below(2) == 1:
            trans.append(1 + rng.next_below(n - 1))
        else:
            subs.append((1 + rng.next_below(n), rng.next_below(x.q)))
    script = EditScript(tuple(sorted(deletions)), tuple(subs), tuple(trans))
    return apply_script(x, script), script
