"""Sequences over small alphabets and the integer-sequence machinery built on them.

A :class:`Sequence` is an immutable word over the alphabet ``[0, q-1]`` with
``2 <= q <= 16``, stored one byte per symbol.  Formula-facing helpers index
positions 1-based; reading any position outside ``[1, n]`` yields the padding
symbol 0.  Integer sequences (signed, exact arithmetic) are represented as
plain tuples of ints throughout.

The transforms:

* ``accumulative(x)_i   = sum(x_1 .. x_i)``                (exact prefix sums)
* ``differential(x)_i   = (x_i - x_{i-1}) mod q``          (a bijection on the
  length-n words; inverted by :func:`differential_inverse`)
* ``accumulative_differential(x)_i = sum(d(x)_1 .. d(x)_i)`` which satisfies
  ``g(x)_i == x_i (mod q)`` entrywise.

``sign_preserving_number`` is the smallest number of substrings a signed
integer sequence splits into such that the non-zero entries of each substring
share one sign; ``vt_syndrome`` is the weighted checksum ``sum(i^k * z_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

DIGITS = "0123456789abcdef"
MAX_Q = 16


@dataclass(frozen=True)
class Sequence:
    """Immutable word over the alphabet ``[0, q-1]``, one byte per symbol."""

    symbols: bytes
    q: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.symbols, bytes):
            object.__setattr__(self, "symbols", bytes(self.symbols))
        if not 2 <= self.q <= MAX_Q:
            raise ValueError(f"alphabet size must be in [2, {MAX_Q}], got {self.q}")
        if self.symbols and max(self.symbols) >= self.q:
            raise ValueError(f"symbol out of range for q={self.q}: {self.symbols!r}")

    @classmethod
    def of(cls, symbols: Iterable[int], q: int = 2) -> "Sequence":
        return cls(bytes(symbols), q)

    @classmethod
    def parse(cls, text: str, q: int = 2) -> "Sequence":
        """Parse the digit-string text form (position 1 first, digits 0-9a-f)."""
        try:
            syms = bytes(DIGITS.index(ch) for ch in text.lower())
        except ValueError:
            raise ValueError(f"not a base-{q} digit string: {text!r}") from None
        return cls(syms, q)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, i: int) -> int:
        """0-based access; use :meth:`sym` for the 1-based convention."""
        return self.symbols[i]

    def __str__(self) -> str:
        return "".join(DIGITS[s] for s in self.symbols)

    def __repr__(self) -> str:
        return f"Sequence({str(self)!r}, q={self.q})"

    def sym(self, i: int) -> int:
        """1-based symbol access; positions outside [1, n] read as 0."""
        if 1 <= i <= len(self.symbols):
            return self.symbols[i - 1]
        return 0

    def window(self, i: int, j: int) -> "Sequence":
        """The substring at 1-based inclusive positions [i, j] (empty if i > j)."""
        lo = max(i - 1, 0)
        hi = min(j, len(self.symbols))
        return Sequence(self.symbols[lo:hi], self.q)

    def delete_window(self, p: int, t: int) -> "Sequence":
        """Remove the length-t window starting at 1-based position p."""
        if t == 0:
            return self
        if not (1 <= p <= len(self.symbols) - t + 1):
            raise ValueError(f"window [{p}, {p + t - 1}] out of range")
        return Sequence(self.symbols[: p - 1] + self.symbols[p - 1 + t :], self.q)

    def delete_positions(self, positions: Iterable[int]) -> "Sequence":
        """Remove the 1-based positions in ``positions`` (need not be contiguous)."""
        drop = set(positions)
        if drop and not all(1 <= p <= len(self.symbols) for p in drop):
            raise ValueError("deletion position out of range")
        kept = bytes(s for i, s in enumerate(self.symbols, start=1) if i not in drop)
        return Sequence(kept, self.q)

    def insert(self, p: int, symbol: int) -> "Sequence":
        """Insert ``symbol`` so that it occupies 1-based position p in the result."""
        if not (1 <= p <= len(self.symbols) + 1):
            raise ValueError(f"insertion position {p} out of range")
        if not 0 <= symbol < self.q:
            raise ValueError(f"symbol {symbol} out of range for q={self.q}")
        b = self.symbols
        return Sequence(b[: p - 1] + bytes((symbol,)) + b[p - 1 :], self.q)

    def substitute(self, p: int, symbol: int) -> "Sequence":
        if not (1 <= p <= len(self.symbols)):
            raise ValueError(f"substitution position {p} out of range")
        if not 0 <= symbol < self.q:
            raise ValueError(f"symbol {symbol} out of range for q={self.q}")
        b = self.symbols
        return Sequence(b[: p - 1] + bytes((symbol,)) + b[p:], self.q)

    def transpose(self, p: int) -> "Sequence":
        """Swap the symbols at 1-based positions p and p+1."""
        if not (1 <= p <= len(self.symbols) - 1):
            raise ValueError(f"transposition position {p} out of range")
        b = self.symbols
        return Sequence(b[: p - 1] + bytes((b[p], b[p - 1])) + b[p + 1 :], self.q)

    def concat(self, other: "Sequence") -> "Sequence":
        if other.q != self.q:
            raise ValueError("alphabet mismatch in concatenation")
        return Sequence(self.symbols + other.symbols, self.q)


def parse_int_sequence(text: str) -> tuple[int, ...]:
    """Parse the comma-separated signed-decimal text form of an integer sequence."""
    text = text.strip()
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def format_int_sequence(entries: Iterable[int]) -> str:
    return ",".join(str(e) for e in entries)


def accumulative(x: Sequence) -> tuple[int, ...]:
    """Exact prefix sums of the symbols: entry i is ``x_1 + ... + x_i``."""
    out = []
    total = 0
    for s in x.symbols:
        total += s
        out.append(total)
    return tuple(out)


def differential(x: Sequence) -> Sequence:
    """Mod-q successive differences, with an implicit leading 0."""
    q = x.q
    prev = 0
    out = bytearray()
    for s in x.symbols:
        out.append((s - prev) % q)
        prev = s
    return Sequence(bytes(out), q)


def differential_inverse(d: Sequence) -> Sequence:
    """Inverse of :func:`differential`: mod-q prefix sums."""
    q = d.q
    total = 0
    out = bytearray()
    for s in d.symbols:
        total = (total + s) % q
        out.append(total)
    return Sequence(bytes(out), q)


def accumulative_differential(x: Sequence) -> tuple[int, ...]:
    """Exact prefix sums of the differential sequence.

    Entry i is congruent to ``x_i`` mod q and the entries are non-decreasing.
    """
    out = []
    total = 0
    prev = 0
    q = x.q
    for s in x.symbols:
        total += (s - prev) % q
        prev = s
        out.append(total)
    return tuple(out)


def sign_preserving_number(z: Iterable[int]) -> int:
    """Minimum number of substrings covering z whose non-zero entries share a sign.

    A single left-to-right scan counting sign flips among the non-zero entries
    is optimal: a new part has to start exactly when a non-zero entry's sign
    differs from the current part's sign, and no split can do better than one
    part per maximal same-sign run.  The empty sequence yields 0; any
    non-empty all-zero sequence yields 1.
    """
    count = 0
    current = 0
    for e in z:
        if count == 0:
            count = 1
        if e == 0:
            continue
        s = 1 if e > 0 else -1
        if current != 0 and s != current:
            count += 1
        current = s
    return count


def vt_syndrome(z: Iterable[int], k: int, modulus: int | None = None) -> int:
    """Order-k weighted checksum ``sum_i i^k * z_i`` (positions 1-based).

    Without a modulus the value is exact (arbitrary precision).  With a
    modulus M, all intermediate arithmetic is reduced mod M so the result is
    bit-exact in [0, M-1] for any length without unbounded integers.
    """
    if k < 0:
        raise ValueError("syndrome order k must be non-negative")
    if modulus is None:
        return sum(i**k * e for i, e in enumerate(z, start=1))
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    total = 0
    for i, e in enumerate(z, start=1):
        total = (total + pow(i, k, modulus) * e) % modulus
    return total
