"""Brute-force certification that a finite code corrects its claimed channel.

A code corrects a channel exactly when the channel's error balls around
distinct codewords are pairwise disjoint, so :func:`verify_code` materializes
every ball and checks all unordered pairs, reporting the lexicographically
first counterexample (with a common ball member) if one exists.
:func:`verify_family_cell` runs that check for one parameter cell of a code
family, either at the best residue vector found by the bucket scan or across
all residue vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channels import Ball, BallModel
from .codes import CodeParams, best_residues, enumerate_code, pigeonhole_floor
from .errors import CapExceeded
from .limits import enum_cap
from .sequences import Sequence

_MERGE_THRESHOLD = 1 << 16


def _common_member(a: frozenset, b: frozenset) -> Sequence | None:
    """Lexicographically smallest common member, via hash probing for small
    balls and a sorted merge for very large ones."""
    if min(len(a), len(b)) > _MERGE_THRESHOLD:
        sa = sorted(a, key=lambda m: (len(m.symbols), m.symbols))
        sb = sorted(b, key=lambda m: (len(m.symbols), m.symbols))
        i = j = 0
        while i < len(sa) and j < len(sb):
            ka = (len(sa[i].symbols), sa[i].symbols)
            kb = (len(sb[j].symbols), sb[j].symbols)
            if ka == kb:
                return sa[i]
            if ka < kb:
                i += 1
            else:
                j += 1
        return None
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    common = [m for m in small if m in big]
    if not common:
        return None
    return min(common, key=lambda m: (len(m.symbols), m.symbols))


@dataclass(frozen=True)
class VerificationReport:
    mode: BallModel
    pairs_checked: int
    counterexample: tuple[Sequence, Sequence, Sequence] | None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        obj = {
            "mode": self.mode.label(),
            "pairs_checked": self.pairs_checked,
            "ok": self.ok,
        }
        if self.counterexample is not None:
            x, y, z = self.counterexample
            obj["counterexample"] = {"x": str(x), "y": str(y), "common": str(z)}
        return obj


def verify_code(
    codewords: list[Sequence], mode: BallModel, cap: int | None = None
) -> VerificationReport:
    """Check pairwise ball disjointness; stop at the first counterexample.

    Codewords are scanned in lexicographic order so the reported
    counterexample is deterministic.
    """
    words = sorted(set(codewords), key=lambda w: w.symbols)
    if words and any(len(w) != len(words[0]) for w in words):
        raise ValueError("all codewords must have equal length")
    balls: list[Ball] = [mode.ball(w, cap=cap) for w in words]
    pairs = 0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            pairs += 1
            z = _common_member(balls[i].members, balls[j].members)
            if z is not None:
                return VerificationReport(mode, pairs, (words[i], words[j], z))
    return VerificationReport(mode, pairs, None)


@dataclass(frozen=True)
class CellResult:
    params: CodeParams
    size: int
    report: VerificationReport

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "size": self.size,
            "report": self.report.to_json(),
        }


@dataclass(frozen=True)
class CellSummary:
    """Verification outcome for one (family, q, n, t, s) parameter cell."""

    family: str
    q: int
    n: int
    t: int
    s: int
    mode: BallModel
    strategy: str
    results: tuple[CellResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.report.ok for r in self.results)

    @property
    def best_size(self) -> int:
        return max(r.size for r in self.results)

    @property
    def floor(self) -> int:
        return pigeonhole_floor(self.family, self.q, self.n, self.t, self.s)

    @property
    def redundancy_bits(self) -> float | None:
        if self.best_size == 0:
            return None
        return self.n * math.log2(self.q) - math.log2(self.best_size)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "n": self.n,
            "t": self.t,
            "s": self.s,
            "mode": self.mode.label(),
            "strategy": self.strategy,
            "ok": self.ok,
            "best_size": self.best_size,
            "pigeonhole_floor": self.floor,
            "redundancy_bits": self.redundancy_bits,
            "results": [r.to_json() for r in self.results],
        }

    def csv_row(self) -> list:
        red = self.redundancy_bits
        return [
            self.family,
            self.q,
            self.n,
            self.t,
            self.s,
            self.mode.label(),
            self.best_size,
            self.floor,
            "" if red is None else f"{red:.4f}",
            "ok" if self.ok else "FAIL",
        ]


CSV_HEADER = [
    "family",
    "q",
    "n",
    "t",
    "s",
    "mode",
    "best_size",
    "pigeonhole_floor",
    "redundancy_bits",
    "status",
]


def verify_family_cell(
    family: str,
    q: int,
    n: int,
    t: int,
    s: int,
    mode: BallModel,
    residue_strategy: str = "best",
    cap: int | None = None,
) -> CellSummary:
    """Enumerate and verify the cell's code(s) under the given ball model."""
    if residue_strategy not in ("best", "all"):
        raise ValueError(f"unknown residue strategy {residue_strategy!r}")
    if residue_strategy == "best":
        params, size = best_residues(family, q, n, t, s, cap=cap)
        chosen = [(params, size)]
    else:
        from .codes import family_moduli  # deferred: avoids a wide import surface

        moduli = family_moduli(family, q, n, t, s)
        vectors = 1
        for m in moduli:
            vectors *= m
        limit = enum_cap(cap)
        if vectors * (q**n) > limit:
            raise CapExceeded(
                f"{vectors} residue vectors x {q}^{n} candidates exceed cap {limit}"
            )
        chosen = []
        import itertools

        for vec in itertools.product(*(range(m) for m in moduli)):
            params = CodeParams(family, q, n, t, s, vec)
            chosen.append((params, None))
    results = []
    for params, size in chosen:
        words = enumerate_code(params, cap=cap)
        if size is None:
            size = len(words)
        report = verify_code(words, mode, cap=cap)
        results.append(CellResult(params, size, report))
    return CellSummary(family, q, n, t, s, mode, residue_strategy, tuple(results))
