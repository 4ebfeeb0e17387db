"""Systematic single-deletion multi-substitution codec for binary words.

A codeword is ``x || tag(x) || R(tag(tag(x)))`` where ``tag`` packs the
2s + 1 syndrome residues of the accumulative sequence into fixed-width
big-endian bit fields and ``R`` is the (2s + 2)-fold repetition code.  The
widths depend only on (length, s), so the decoder can slice a received word
by position alone.

Decoding runs in three stages, each tolerating the one deletion wherever it
fell (a stage whose segment was not hit simply loses its last symbol to the
fixed slicing, which is a deletion at the end):

1. recover ``tag(tag(x))`` from the repetition tail,
2. recover ``tag(x)`` from the middle slice by syndrome-guided brute force
   at tag scale,
3. recover ``x`` from the head slice the same way, at full scale.

With ``model="DST"`` the brute-force candidate enumeration also includes
adjacent transpositions, which lets the same codewords correct one deletion
combined with s substitution-or-transposition operations.

Stage decoders are memoized: they are pure functions of their (hashable)
arguments, and exhaustive channel sweeps hit the same segments repeatedly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .codes import family_moduli
from .errors import DecodeFailure, InvariantViolation, UnsupportedAlphabet
from .sequences import Sequence, accumulative, vt_syndrome

_INT64_SAFE = 1 << 62


def tag_moduli(n: int, s: int) -> tuple[int, ...]:
    return family_moduli("C1", 2, n, 1, s)


def tag_widths(n: int, s: int) -> tuple[int, ...]:
    """Bit width of each packed residue: ceil(log2(modulus))."""
    return tuple((m - 1).bit_length() for m in tag_moduli(n, s))


@dataclass(frozen=True)
class Tag:
    """Residues of the accumulative-sequence syndromes plus their packed bits."""

    values: tuple[int, ...]
    widths: tuple[int, ...]
    bits: Sequence


def compute_tag(x: Sequence, s: int) -> Tag:
    if x.q != 2:
        raise UnsupportedAlphabet("tags are defined for binary sequences")
    if len(x) < 1:
        raise ValueError("tag needs a non-empty sequence")
    mods = tag_moduli(len(x), s)
    f = accumulative(x)
    values = tuple(vt_syndrome(f, k, m) for k, m in enumerate(mods))
    widths = tuple((m - 1).bit_length() for m in mods)
    bits = bytearray()
    for v, w in zip(values, widths):
        bits.extend((v >> (w - 1 - i)) & 1 for i in range(w))
    return Tag(values, widths, Sequence(bytes(bits), 2))


def repetition_encode(u: Sequence, fold: int) -> Sequence:
    if fold < 1:
        raise ValueError("fold must be positive")
    out = bytearray()
    for sym in u.symbols:
        out.extend((sym,) * fold)
    return Sequence(bytes(out), u.q)


def layout(n: int, s: int) -> tuple[int, int, int]:
    """(total length N, tag length n1, repetition tail length n2) for (n, s)."""
    n1 = sum(tag_widths(n, s))
    n1p = sum(tag_widths(n1, s))
    n2 = (2 * s + 2) * n1p
    return n + n1 + n2, n1, n2


def encode(x: Sequence, s: int) -> Sequence:
    """x || tag bits || (2s+2)-fold repetition of the tag's own tag bits."""
    tag = compute_tag(x, s)
    tag2 = compute_tag(tag.bits, s)
    return x.concat(tag.bits).concat(repetition_encode(tag2.bits, 2 * s + 2))


def _repetition_candidates(
    seg: bytes, fold: int, msg_len: int, deficit: int, budget: int
) -> set[bytes]:
    """All u whose fold-repetition reaches seg with exactly ``deficit``
    deletions and at most ``budget`` single-position changes."""
    prefix = [0]
    for b in seg:
        prefix.append(prefix[-1] + b)
    seg_len = len(seg)
    results: set[bytes] = set()

    def rec(block: int, d: int, used: int, acc: bytearray) -> None:
        if block == msg_len:
            if d == deficit:
                results.add(bytes(acc))
            return
        for d2 in range(d, deficit + 1):
            start = block * fold - d
            end = (block + 1) * fold - d2
            if end > seg_len:
                continue
            ones = prefix[end] - prefix[start]
            zeros = (end - start) - ones
            if used + ones <= budget:
                acc.append(0)
                rec(block + 1, d2, used + ones, acc)
                acc.pop()
            if used + zeros <= budget:
                acc.append(1)
                rec(block + 1, d2, used + zeros, acc)
                acc.pop()

    rec(0, 0, 0, bytearray())
    return results


def _deletion_variants(ref: bytes, deficit: int) -> set[bytes]:
    if deficit == 0:
        return {ref}
    out = set()
    for i in range(len(ref)):
        out.add(ref[:i] + ref[i + 1 :])
    if deficit > 1:
        for _ in range(deficit - 1):
            out = {v[:i] + v[i + 1 :] for v in out for i in range(len(v))}
    return out


def _ops_ball(seed: bytes, rounds: int, model: str) -> set[bytes]:
    members = {seed}
    for _ in range(rounds):
        nxt = set(members)
        for b in members:
            for i in range(len(b)):
                nxt.add(b[:i] + bytes((1 - b[i],)) + b[i + 1 :])
            if model == "DST":
                for i in range(len(b) - 1):
                    if b[i] != b[i + 1]:
                        nxt.add(b[:i] + bytes((b[i + 1], b[i])) + b[i + 2 :])
        members = nxt
    return members


def _dst_segment_ok(seg: bytes, u: bytes, fold: int, deficit: int, s: int) -> bool:
    """Exact test: seg reachable from the fold-repetition of u by ``deficit``
    deletions plus at most s substitution/transposition operations."""
    ref = b"".join(bytes((bit,)) * fold for bit in u)
    variants = _deletion_variants(ref, deficit)
    if s <= 1:
        seg_int = int.from_bytes(seg, "big") if seg else 0
        for r in variants:
            x = (int.from_bytes(r, "big") if r else 0) ^ seg_int
            d = x.bit_count()
            if d <= s:
                return True
            if s == 1 and d == 2:
                diffs = [i for i in range(len(r)) if r[i] != seg[i]]
                i, j = diffs
                if j == i + 1 and r[i] == seg[j] and r[j] == seg[i]:
                    return True
        return False
    # Slow general path: expand the op ball around seg (ops are symmetric).
    ball = _ops_ball(seg, s, "DST")
    return any(r in ball for r in variants)


@lru_cache(maxsize=1 << 15)
def repetition_decode(
    segment: Sequence, fold: int, msg_len: int, s: int, model: str = "DS"
) -> Sequence:
    """Recover u from a repetition segment that lost at most one symbol and
    took at most s substitution (or, under DST, transposition) hits.

    Scans every placement of the missing symbol and every message word
    reachable within the change budget; exactly one message word may survive,
    anything else is a decode failure.
    """
    if model not in ("DS", "DST"):
        raise ValueError(f"unknown model {model!r}")
    full = fold * msg_len
    seg = segment.symbols
    if len(seg) not in (full, full - 1):
        raise ValueError(
            f"segment length {len(seg)} incompatible with {fold}x{msg_len} repetition"
        )
    deficit = full - len(seg)
    budget = 2 * s if model == "DST" else s
    cands = _repetition_candidates(seg, fold, msg_len, deficit, budget)
    if model == "DST":
        cands = {u for u in cands if _dst_segment_ok(seg, u, fold, deficit, s)}
    if not cands:
        raise DecodeFailure("repetition segment matches no message word")
    if len(cands) > 1:
        raise DecodeFailure("repetition segment is ambiguous")
    return Sequence(cands.pop(), 2)


def _expand_ops(cands: set[bytes], model: str) -> set[bytes]:
    out = set(cands)
    for b in cands:
        for i in range(len(b)):
            out.add(b[:i] + bytes((1 - b[i],)) + b[i + 1 :])
        if model == "DST":
            for i in range(len(b) - 1):
                if b[i] != b[i + 1]:
                    out.add(b[:i] + bytes((b[i + 1], b[i])) + b[i + 2 :])
    return out


def _residue_matches(
    cands: list[bytes], n: int, mods: tuple[int, ...], a: tuple[int, ...]
) -> list[bytes]:
    if not cands:
        return []
    if n * n * max(mods) < _INT64_SAFE:
        matrix = np.frombuffer(b"".join(cands), dtype=np.uint8).reshape(len(cands), n)
        f = np.cumsum(matrix, axis=1, dtype=np.int64)
        mask = np.ones(len(cands), dtype=bool)
        positions = np.arange(1, n + 1, dtype=np.int64)
        for k, m_k in enumerate(mods):
            weights = np.array([pow(int(i), k, m_k) for i in positions], dtype=np.int64)
            mask &= (f @ weights) % m_k == a[k]
        return [c for c, ok in zip(cands, mask) if ok]
    out = []
    for c in cands:
        f = accumulative(Sequence(c, 2))
        if all(vt_syndrome(f, k, m) == a[k] for k, m in enumerate(mods)):
            out.append(c)
    return out


@lru_cache(maxsize=1 << 15)
def syndrome_decode(
    y: Sequence, n: int, s: int, a: tuple[int, ...], model: str = "DS"
) -> Sequence:
    """Brute-force recovery of the unique length-n word with tag residues ``a``
    whose error ball contains y.

    Enumerates every insertion restoring length n (when one symbol is
    missing) and then every combination of up to s substitutions (plus
    adjacent transpositions under DST), keeping the candidates whose residues
    match.  No match is a decode failure; more than one distinct match would
    contradict the code's correction guarantee and raises loudly.
    """
    if model not in ("DS", "DST"):
        raise ValueError(f"unknown model {model!r}")
    if y.q != 2:
        raise UnsupportedAlphabet("syndrome decoding is defined for binary words")
    mods = tag_moduli(n, s)
    if len(a) != len(mods) or any(not 0 <= ai < m for ai, m in zip(a, mods)):
        raise ValueError("residue vector does not fit the tag moduli")
    b = y.symbols
    if len(b) == n:
        bases = {b}
    elif len(b) == n - 1:
        bases = {b[:i] + bytes((v,)) + b[i:] for i in range(n) for v in (0, 1)}
    else:
        raise ValueError(f"received length {len(b)} incompatible with n={n}")
    cands = bases
    for _ in range(s):
        cands = _expand_ops(cands, model)
    matches = _residue_matches(sorted(cands), n, mods, a)
    if not matches:
        raise DecodeFailure("no candidate matches the tag residues")
    if len(matches) > 1:
        raise InvariantViolation(
            f"{len(matches)} distinct candidates match the tag residues; "
            "the code parameters do not correct this channel"
        )
    return Sequence(matches[0], 2)


def _split_bits(bits: Sequence, widths: tuple[int, ...]) -> tuple[int, ...]:
    values = []
    pos = 0
    for w in widths:
        v = 0
        for _ in range(w):
            v = (v << 1) | bits.symbols[pos]
            pos += 1
        values.append(v)
    return tuple(values)


def decode(y: Sequence, n: int, s: int, model: str = "DS") -> Sequence:
    """Three-stage decoder for ``encode(x, s)`` after at most one deletion and
    s substitutions (or substitution/transposition operations under DST).

    The slices are taken at fixed offsets; when the received word is one
    short, every stage simply decodes its segment minus a trailing symbol.
    """
    total, n1, n2 = layout(n, s)
    if len(y) not in (total, total - 1):
        raise DecodeFailure(
            f"received length {len(y)} outside the single-deletion channel "
            f"for N={total}"
        )
    short = len(y) == total - 1
    head = y.window(1, n - 1 if short else n)
    middle = y.window(n + 1, n + n1 - 1 if short else n + n1)
    tail = y.window(n + n1 + 1, len(y))
    fold = 2 * s + 2
    widths_mid = tag_widths(n1, s)
    tag2_bits = repetition_decode(tail, fold, sum(widths_mid), s, model)
    a_mid = _split_bits(tag2_bits, widths_mid)
    mods_mid = tag_moduli(n1, s)
    if any(not 0 <= v < m for v, m in zip(a_mid, mods_mid)):
        raise DecodeFailure("recovered tag-of-tag residues are out of range")
    tag_bits = syndrome_decode(middle, n1, s, a_mid, model)
    widths_main = tag_widths(n, s)
    a_main = _split_bits(tag_bits, widths_main)
    mods_main = tag_moduli(n, s)
    if any(not 0 <= v < m for v, m in zip(a_main, mods_main)):
        raise DecodeFailure("recovered tag residues are out of range")
    return syndrome_decode(head, n, s, a_main, model)
