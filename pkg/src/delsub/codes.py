"""The four syndrome-defined code families and their parameter search.

Every family pins a residue vector of weighted checksums of a transform of
the codeword:

* C1 (binary):  VT^k of the accumulative sequence, k in [0, 2s], modulus
  ``(2s+1) * sum(i^k) + 1``; corrects 1 deletion + s substitutions.
* C2 (q-ary):   VT^k of the accumulative differential sequence, k in
  [0, 2s], modulus ``q(2s+1) * sum(i^k) - 2s``; corrects 1 deletion + s
  substitutions, and doubles for q = 2, s >= 1 as a 2-deletion
  (s-1)-substitution code.  The ``t`` field records which reading a given
  CodeParams is meant to be verified under (1 or 2).
* C3 (binary):  like C1 with k in [0, 2t+2s-2], modulus
  ``(2t+2s-1) * sum(i^k) + 1``, restricted to t-good sequences (adjacent
  ones at least t apart); corrects t deletions + s substitutions.
* C4 (q-ary):   like C2 with the C3 index range, modulus
  ``q(2t+2s-1) * sum(i^k) + 1``, restricted to t-valid sequences (adjacent
  non-zero symbols at least t+1 apart).

``best_residues`` buckets the whole space by residue vector in one pass and
returns a maximizing vector, whose bucket size is at least the pigeonhole
floor ``|space| / prod(moduli)``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, UnsupportedAlphabet
from .limits import enum_cap
from .sequences import (
    Sequence,
    accumulative,
    accumulative_differential,
    differential_inverse,
    sign_preserving_number,
)

FAMILIES = ("C1", "C2", "C3", "C4")


@lru_cache(maxsize=4096)
def power_sum(n: int, k: int) -> int:
    """Exact value of 1^k + 2^k + ... + n^k."""
    return sum(i**k for i in range(1, n + 1))


@lru_cache(maxsize=4096)
def family_moduli(family: str, q: int, n: int, t: int, s: int) -> tuple[int, ...]:
    """The modulus for each syndrome order k the family constrains."""
    if family == "C1":
        return tuple((2 * s + 1) * power_sum(n, k) + 1 for k in range(2 * s + 1))
    if family == "C2":
        return tuple(
            q * (2 * s + 1) * power_sum(n, k) - 2 * s for k in range(2 * s + 1)
        )
    if family == "C3":
        span = 2 * t + 2 * s - 1
        return tuple(span * power_sum(n, k) + 1 for k in range(span))
    if family == "C4":
        span = 2 * t + 2 * s - 1
        return tuple(q * span * power_sum(n, k) + 1 for k in range(span))
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class CodeParams:
    """A fully pinned code: family, alphabet, length, budgets, residue vector."""

    family: str
    q: int
    n: int
    t: int
    s: int
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("code length must be positive")
        if self.q < 2:
            raise ValueError("alphabet size must be at least 2")
        if self.family in ("C1", "C3") and self.q != 2:
            raise UnsupportedAlphabet(f"{self.family} is binary only")
        if self.s < 0:
            raise ValueError("substitution budget must be non-negative")
        if self.family == "C1" and self.t != 1:
            raise ValueError("C1 corrects exactly one deletion; t must be 1")
        if self.family == "C2":
            if self.t not in (1, 2):
                raise ValueError("C2 is verified as t = 1 (q-ary) or t = 2 (binary)")
            if self.t == 2 and (self.q != 2 or self.s < 1):
                raise ValueError("the two-deletion reading of C2 needs q = 2, s >= 1")
        if self.family in ("C3", "C4") and self.t < 1:
            raise ValueError("deletion budget must be positive")
        mods = self.moduli
        if len(self.residues) != len(mods):
            raise ValueError(
                f"expected {len(mods)} residues for {self.family}, got {len(self.residues)}"
            )
        for a_k, m_k in zip(self.residues, mods):
            if not 0 <= a_k < m_k:
                raise ValueError(f"residue {a_k} out of range for modulus {m_k}")

    @property
    def moduli(self) -> tuple[int, ...]:
        return family_moduli(self.family, self.q, self.n, self.t, self.s)

    def effective_budgets(self) -> tuple[int, int]:
        """The (deletions, substitutions) channel this parameter set corrects."""
        if self.family == "C2" and self.t == 2:
            return (2, self.s - 1)
        return (self.t, self.s)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "n": self.n,
            "t": self.t,
            "s": self.s,
            "residues": list(self.residues),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CodeParams":
        return cls(
            obj["family"],
            obj["q"],
            obj["n"],
            obj["t"],
            obj["s"],
            tuple(obj["residues"]),
        )


def is_t_good(x: Sequence, t: int) -> bool:
    """True iff every pair of consecutive ones in the binary word is >= t apart."""
    if x.q != 2:
        raise UnsupportedAlphabet("t-good is defined for binary sequences")
    if t < 1:
        raise ValueError("t must be positive")
    last = None
    for i, sym in enumerate(x.symbols, start=1):
        if sym:
            if last is not None and i - last < t:
                return False
            last = i
    return True


def is_t_valid(x: Sequence, t: int) -> bool:
    """True iff consecutive non-zero symbols are >= t + 1 apart."""
    if t < 1:
        raise ValueError("t must be positive")
    last = None
    for i, sym in enumerate(x.symbols, start=1):
        if sym:
            if last is not None and i - last < t + 1:
                return False
            last = i
    return True


def _uses_accumulative(family: str) -> bool:
    return family in ("C1", "C3")


def _structural_ok(x: Sequence, params: CodeParams) -> bool:
    if params.family == "C3":
        return is_t_good(x, params.t)
    if params.family == "C4":
        return is_t_valid(x, params.t)
    return True


def residue_vector(x: Sequence, params: CodeParams) -> tuple[int, ...]:
    """All syndrome residues of x in one pass, reduced mod each modulus."""
    values = accumulative(x) if _uses_accumulative(params.family) else (
        accumulative_differential(x)
    )
    mods = params.moduli
    out = [0] * len(mods)
    for i, v in enumerate(values, start=1):
        for k, m_k in enumerate(mods):
            out[k] = (out[k] + pow(i, k, m_k) * v) % m_k
    return tuple(out)


def is_member(x: Sequence, params: CodeParams) -> bool:
    if len(x) != params.n:
        raise ValueError(f"length {len(x)} does not match code length {params.n}")
    if x.q != params.q:
        raise ValueError(f"alphabet {x.q} does not match code alphabet {params.q}")
    if not _structural_ok(x, params):
        return False
    return residue_vector(x, params) == params.residues


def _iter_space(family: str, q: int, n: int, t: int):
    for syms in itertools.product(range(q), repeat=n):
        x = Sequence(bytes(syms), q)
        if family == "C3" and not is_t_good(x, t):
            continue
        if family == "C4" and not is_t_valid(x, t):
            continue
        yield x


def enumerate_code(params: CodeParams, cap: int | None = None) -> list[Sequence]:
    """All members in lexicographic order (candidate space guarded by the cap)."""
    limit = enum_cap(cap)
    if params.q**params.n > limit:
        raise CapExceeded(f"{params.q}^{params.n} candidates exceed cap {limit}")
    return [
        x
        for x in _iter_space(params.family, params.q, params.n, params.t)
        if residue_vector(x, params) == params.residues
    ]


def best_residues(
    family: str, q: int, n: int, t: int, s: int, cap: int | None = None
) -> tuple[CodeParams, int]:
    """Scan the whole space once, bucket by residue vector, return a maximizer.

    Ties break to the lexicographically smallest residue vector.  The winning
    bucket size is at least ceil(|space| / prod(moduli)).
    """
    limit = enum_cap(cap)
    if q**n > limit:
        raise CapExceeded(f"{q}^{n} candidates exceed cap {limit}")
    probe = CodeParams(family, q, n, t, s, _zero_residues(family, q, n, t, s))
    buckets: Counter[tuple[int, ...]] = Counter()
    for x in _iter_space(family, q, n, t):
        buckets[residue_vector(x, probe)] += 1
    vector, size = min(buckets.items(), key=lambda kv: (-kv[1], kv[0]))
    return CodeParams(family, q, n, t, s, vector), size


def _zero_residues(family: str, q: int, n: int, t: int, s: int) -> tuple[int, ...]:
    return tuple(0 for _ in family_moduli(family, q, n, t, s))


def structural_count(family: str, q: int, n: int, t: int) -> int:
    """Size of the candidate space: q^n, or the t-good / t-valid count."""
    if family in ("C1", "C2"):
        return q**n
    if family == "C3":
        counts = [1] * (n + 1)
        for i in range(1, n + 1):
            counts[i] = counts[i - 1] + (counts[i - t] if i - t >= 0 else 1)
        return counts[n]
    if family == "C4":
        counts = [1] * (n + 1)
        for i in range(1, n + 1):
            prev = counts[i - t - 1] if i - t - 1 >= 0 else 1
            counts[i] = counts[i - 1] + (q - 1) * prev
        return counts[n]
    raise ValueError(f"unknown family {family!r}")


def pigeonhole_floor(family: str, q: int, n: int, t: int, s: int) -> int:
    """Guaranteed size of the best residue bucket: ceil(|space| / prod moduli)."""
    total = structural_count(family, q, n, t)
    prod = 1
    for m in family_moduli(family, q, n, t, s):
        prod *= m
    return -(-total // prod)


def sigma_bound_witness(
    x: Sequence, y: Sequence, transform: str
) -> tuple[int, tuple[int, ...]]:
    """Sign-preserving number of the transform difference plus the difference
    profile itself, for auditing the partition-based syndrome bounds.

    The all-zero difference reports 1 (the minimum the definition allows for
    a non-empty sequence), not 0.
    """
    if len(x) != len(y):
        raise ValueError("transform difference needs equal lengths")
    if x.q != y.q:
        raise ValueError("alphabet mismatch")
    if transform == "f":
        fx, fy = accumulative(x), accumulative(y)
    elif transform == "g":
        fx, fy = accumulative_differential(x), accumulative_differential(y)
    else:
        raise ValueError(f"transform must be 'f' or 'g', got {transform!r}")
    diff = tuple(a - b for a, b in zip(fx, fy))
    return sign_preserving_number(diff), diff


_COUNTEREXAMPLE_KINDS = ("AS-binary", "AS-nonbinary", "ADS-binary", "ADS-nonbinary")


def counterexample_pair(
    kind: str, m: int, q: int, z: Sequence
) -> tuple[Sequence, Sequence]:
    """Shifted pairs whose transform difference alternates sign 2m times.

    These witness that the accumulative transform cannot support multi-
    deletion correction (AS kinds) and the accumulative differential cannot
    support three binary / two non-binary deletions (ADS kinds): both members
    of each pair share a deletion-ball member, yet the sign-preserving number
    of the relevant transform difference is at least 2m.

    For AS kinds ``z`` is a plain filler suffix; for ADS kinds ``z`` extends
    the pattern in the differential domain and the pair is produced by
    inverting the differential map.
    """
    if kind not in _COUNTEREXAMPLE_KINDS:
        raise ValueError(f"unknown counterexample kind {kind!r}")
    if m < 0:
        raise ValueError("pattern multiplicity m must be non-negative")
    if z.q != q:
        raise ValueError("filler alphabet must match q")
    binary = kind.endswith("-binary")
    if binary and q != 2:
        raise UnsupportedAlphabet(f"{kind} needs q = 2")
    if not binary and q < 3:
        raise UnsupportedAlphabet(f"{kind} needs q >= 3")
    zt = tuple(z.symbols)
    if kind == "AS-binary":
        head = (1, 1, 0, 0) * m
        x = Sequence.of((1, 0) + head + zt, q)
        y = Sequence.of(head + zt + (1, 0), q)
    elif kind == "AS-nonbinary":
        head = (q - 1, 0) * m
        x = Sequence.of((1,) + head + zt, q)
        y = Sequence.of(head + zt + (1,), q)
    elif kind == "ADS-binary":
        pattern = Sequence.of((1, 1, 1, 0, 0, 0) * m + zt, q)
        core = tuple(differential_inverse(pattern).symbols)
        x = Sequence.of((1, 1, 0) + core, q)
        y = Sequence.of(core + (1, 1, 0), q)
    else:
        pattern = Sequence.of((q - 1, q - 1, 0, 0) * m + zt, q)
        core = tuple(differential_inverse(pattern).symbols)
        x = Sequence.of((1, 0) + core, q)
        y = Sequence.of(core + (1, 0), q)
    return x, y
