"""Bit-packed ±1 sequences with the 1-based indexing used throughout the package.

Encoding: entry ``a_j`` lives in bit ``j - 1`` of ``BinarySequence.bits``;
``+1`` is stored as bit 1 and ``-1`` as bit 0.  The integer ``bits`` is also
the sequence's *pattern*: exhaustive enumeration walks patterns in natural
unsigned order, and results are sorted by it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_LENGTH = 1024
WORD_BITS = 64


class SequenceError(ValueError):
    """Raised for malformed sequence text or violated transform preconditions."""


class ParseError(SequenceError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True, order=True)
class BinarySequence:
    n: int
    bits: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise SequenceError(f"length must be a positive integer, got {self.n!r}")
        if self.n > MAX_LENGTH:
            raise SequenceError(f"length {self.n} exceeds the hard cap of {MAX_LENGTH}")
        if self.bits < 0 or self.bits >> self.n:
            raise SequenceError(f"bit pattern {self.bits:#x} does not fit in {self.n} bits")

    @classmethod
    def from_entries(cls, entries: Iterable[int], *, allow_short: bool = False) -> "BinarySequence":
        bits = 0
        n = 0
        for j, v in enumerate(entries):
            if v == 1:
                bits |= 1 << j
            elif v != -1:
                raise SequenceError(f"entry {j + 1} is {v!r}, expected -1 or +1")
            n += 1
        if n < 2 and not (allow_short and n == 1):
            raise SequenceError(f"sequence length must be at least 2, got {n}")
        return cls(n, bits)

    @classmethod
    def from_pattern(cls, n: int, pattern: int) -> "BinarySequence":
        if n < 2:
            raise SequenceError(f"sequence length must be at least 2, got {n}")
        return cls(n, pattern)

    @property
    def entries(self) -> tuple[int, ...]:
        b = self.bits
        return tuple(1 if (b >> j) & 1 else -1 for j in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, j: int) -> int:
        """1-based access, ``a[j] == a_j``."""
        return entry(self, j)

    def words(self) -> np.ndarray:
        """The pattern split into little-endian 64-bit words."""
        return pack_words(self.bits, self.n)

    def render(self) -> str:
        return render_sequence(self)

    def __str__(self) -> str:
        return self.render()


def pack_words(bits: int, n: int) -> np.ndarray:
    nwords = -(-n // WORD_BITS)
    mask = (1 << WORD_BITS) - 1
    return np.array([(bits >> (WORD_BITS * i)) & mask for i in range(nwords)], dtype=np.uint64)


def unpack_words(words: Sequence[int] | np.ndarray, n: int) -> int:
    bits = 0
    for i, w in enumerate(words):
        bits |= int(w) << (WORD_BITS * i)
    if bits >> n:
        raise SequenceError(f"packed words carry bits beyond length {n}")
    return bits


def parse_sequence(text: str) -> BinarySequence:
    """Parse ``"++-+"`` or ``"1,-1,1"`` into a sequence.

    Positions in error messages are 1-based: character positions for the
    ``+-`` form, token positions for the comma form.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty sequence text", None)
    if "," in s or s in ("1", "-1"):
        entries = []
        for pos, tok in enumerate(s.split(","), start=1):
            tok = tok.strip()
            if tok in ("1", "+1"):
                entries.append(1)
            elif tok == "-1":
                entries.append(-1)
            else:
                raise ParseError(f"invalid token {tok!r} at position {pos}", pos)
    else:
        entries = []
        for pos, ch in enumerate(s, start=1):
            if ch == "+":
                entries.append(1)
            elif ch == "-":
                entries.append(-1)
            else:
                raise ParseError(f"invalid symbol {ch!r} at position {pos}", pos)
    if len(entries) < 2:
        raise ParseError(f"sequence length must be at least 2, got {len(entries)}", None)
    if len(entries) > MAX_LENGTH:
        raise ParseError(f"sequence length {len(entries)} exceeds {MAX_LENGTH}", None)
    return BinarySequence.from_entries(entries)


def render_sequence(a: BinarySequence, style: str = "pm") -> str:
    if style == "pm":
        return "".join("+" if v == 1 else "-" for v in a.entries)
    if style == "csv":
        return ",".join(str(v) for v in a.entries)
    raise ValueError(f"unknown render style {style!r}")


def entry(a: BinarySequence, j: int) -> int:
    if not 1 <= j <= a.n:
        raise IndexError(f"index {j} out of range 1..{a.n}")
    return 1 if (a.bits >> (j - 1)) & 1 else -1


def _full_mask(n: int) -> int:
    return (1 << n) - 1


def negate(a: BinarySequence) -> BinarySequence:
    return BinarySequence(a.n, a.bits ^ _full_mask(a.n))


def reverse(a: BinarySequence) -> BinarySequence:
    rev = int(format(a.bits, f"0{a.n}b")[::-1], 2)
    return BinarySequence(a.n, rev)


def _odd_positions_mask(n: int) -> int:
    # bit j-1 set for odd j, i.e. even bit offsets
    return sum(1 << i for i in range(0, n, 2))


def alternate(a: BinarySequence) -> BinarySequence:
    """s_j = (-1)^j a_j: flips every odd-indexed entry."""
    return BinarySequence(a.n, a.bits ^ _odd_positions_mask(a.n))


def delta(a: BinarySequence, k: int) -> int:
    if not 1 <= k <= a.n:
        raise IndexError(f"index {k} out of range 1..{a.n}")
    return entry(a, k) * entry(a, a.n + 1 - k)


def deltas(a: BinarySequence) -> tuple[int, ...]:
    e = a.entries
    n = a.n
    return tuple(e[k] * e[n - 1 - k] for k in range(n))


def first_half(a: BinarySequence) -> BinarySequence:
    # halves may have length 1 (n == 2)
    if a.n % 2:
        raise SequenceError(f"first_half needs even length, got {a.n}")
    m = a.n // 2
    return BinarySequence(m, a.bits & _full_mask(m))


def extend_strong_symmetric(b: BinarySequence) -> BinarySequence:
    """Unique strong symmetric sequence of length 2m whose first half is ``b``."""
    m = b.n
    if m % 2 or m < 2:
        raise SequenceError(f"half length must be even and >= 2, got {m}")
    n = 2 * m
    e = list(b.entries) + [0] * m
    for j in range(1, m + 1):
        e[n - j] = e[j - 1] if j % 2 == 0 else -e[j - 1]
    return BinarySequence.from_entries(e)


def _is_strong_symmetric(a: BinarySequence) -> bool:
    if a.n % 4:
        return False
    e = a.entries
    n = a.n
    return all(e[j - 1] * e[n - j] == (1 if j % 2 == 0 else -1) for j in range(1, n // 2 + 1))


def strong_symmetric_reverse(a: BinarySequence) -> BinarySequence:
    if not _is_strong_symmetric(a):
        raise SequenceError("strong_symmetric_reverse needs a strong symmetric sequence")
    return extend_strong_symmetric(reverse(first_half(a)))
