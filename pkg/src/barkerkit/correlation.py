"""Aperiodic autocorrelations and the closed-form identities built on them.

``acf_direct`` is the literal defining sum and the reference every other
routine here is tested against.  All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .seqcore import (
    WORD_BITS,
    BinarySequence,
    SequenceError,
    _is_strong_symmetric,
    deltas,
    first_half,
    strong_symmetric_reverse,
)


class UnsupportedIndexError(SequenceError):
    """A closed form was asked for a lag it does not cover."""


@dataclass(frozen=True)
class CorrelationProfile:
    n: int
    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    def to_dict(self) -> dict:
        return {"n": self.n, "acf": list(self.values)}


@dataclass(frozen=True)
class Tvector:
    n: int
    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        """1-based: ``t[k] == T_k``."""
        if not 1 <= k <= self.n:
            raise IndexError(f"T index {k} out of range 1..{self.n}")
        return self.values[k - 1]

    def to_dict(self) -> dict:
        return {"n": self.n, "t": list(self.values)}


def _sign(exponent: int) -> int:
    """(-1)**exponent for any integer exponent, negative ones included."""
    return -1 if exponent % 2 else 1


def _check_lag(n: int, k: int) -> None:
    if not 1 <= k < n:
        raise IndexError(f"lag {k} out of range 1..{n - 1}")


# -- reference sums ---------------------------------------------------------

def acf_direct(a: BinarySequence) -> CorrelationProfile:
    e = a.entries
    n = a.n
    vals = []
    for k in range(n):
        s = 0
        for j in range(n - k):
            s += e[j] * e[j + k]
        vals.append(s)
    return CorrelationProfile(n, tuple(vals))


def acf_direct_batch(matrix: np.ndarray) -> np.ndarray:
    """Literal defining sums for many sequences at once.

    ``matrix`` has shape ``(batch, n)`` with ±1 entries; returns the
    ``(batch, n)`` array of C_0..C_{n-1}.
    """
    m = np.asarray(matrix, dtype=np.int32)
    n = m.shape[1]
    out = np.empty((m.shape[0], n), dtype=np.int64)
    for k in range(n):
        out[:, k] = np.einsum("ij,ij->i", m[:, : n - k], m[:, k:])
    return out


# -- bit-parallel kernel ----------------------------------------------------

_ALL_ONES = np.uint64(0xFFFFFFFFFFFFFFFF)


def _lag_tables(n: int):
    nwords = -(-n // WORD_BITS)
    lags = np.arange(1, n)
    q = lags // WORD_BITS
    r = (lags % WORD_BITS).astype(np.uint64)
    idx = q[:, None] + np.arange(nwords)[None, :]
    # valid overlap for lag k is n-k bits; clip per word then build masks
    rem = np.clip((n - lags)[:, None] - WORD_BITS * np.arange(nwords)[None, :], 0, WORD_BITS)
    low = (np.uint64(1) << (rem % WORD_BITS).astype(np.uint64)) - np.uint64(1)
    masks = np.where(rem == WORD_BITS, _ALL_ONES, low)
    return idx, r[:, None], masks


def acf_fast_words(words: np.ndarray, n: int) -> np.ndarray:
    """XOR/popcount autocorrelation over packed words.

    ``words`` has shape ``(batch, nwords)``, dtype uint64, bit ``j-1`` of the
    concatenated words holding ``a_j``.  C_k = (n-k) - 2 * #disagreements.
    """
    words = np.asarray(words, dtype=np.uint64)
    batch, nwords = words.shape
    out = np.empty((batch, n), dtype=np.int64)
    out[:, 0] = n
    if n == 1:
        return out
    idx, r, masks = _lag_tables(n)
    padded = np.concatenate([words, np.zeros((batch, nwords + 1), dtype=np.uint64)], axis=1)
    lo = padded[:, idx] >> r
    hi = padded[:, idx + 1] << ((np.uint64(WORD_BITS) - r) % np.uint64(WORD_BITS))
    hi = np.where(r == 0, np.uint64(0), hi)
    diff = (words[:, None, :] ^ (lo | hi)) & masks
    mismatches = np.bitwise_count(diff).sum(axis=2, dtype=np.int64)
    out[:, 1:] = (n - np.arange(1, n))[None, :] - 2 * mismatches
    return out


def acf_fast(a: BinarySequence) -> CorrelationProfile:
    vals = acf_fast_words(a.words()[None, :], a.n)[0]
    return CorrelationProfile(a.n, tuple(int(v) for v in vals))


def acf_fast_many(seqs: Sequence[BinarySequence], chunk: int = 256) -> list[CorrelationProfile]:
    if not seqs:
        return []
    n = seqs[0].n
    if any(s.n != n for s in seqs):
        raise ValueError("acf_fast_many needs sequences of one common length")
    out = []
    for start in range(0, len(seqs), chunk):
        block = np.stack([s.words() for s in seqs[start:start + chunk]])
        for row in acf_fast_words(block, n):
            out.append(CorrelationProfile(n, tuple(int(v) for v in row)))
    return out


# -- T_k and the section-1 identities ---------------------------------------

def t_vector(a: BinarySequence) -> Tvector:
    t = []
    s = 0
    for d in deltas(a):
        s += d
        t.append(s)
    return Tvector(a.n, tuple(t))


def check_eq1(a: BinarySequence) -> bool:
    """C_k and n-k share parity for every nontrivial lag."""
    c = acf_direct(a)
    return all((c[k] - (a.n - k)) % 2 == 0 for k in range(1, a.n))


def check_eq2(a: BinarySequence) -> bool:
    """(sum a_j)^2 == n + 2 * sum_{k>=1} C_k."""
    c = acf_direct(a)
    return sum(a.entries) ** 2 == a.n + 2 * sum(c.values[1:])


def periodic_sum(a: BinarySequence, k: int) -> int:
    """C_k + C_{n-k}; always congruent to n mod 4."""
    _check_lag(a.n, k)
    c = acf_direct(a)
    return c[k] + c[a.n - k]


def periodic_sum_literal(a: BinarySequence, k: int) -> int:
    """Sum of a_j a_{j+k} with the index taken cyclically."""
    _check_lag(a.n, k)
    e = a.entries
    n = a.n
    return sum(e[j] * e[(j + k) % n] for j in range(n))


def _as_entries(b: BinarySequence | Iterable[int]) -> tuple[int, ...]:
    return b.entries if isinstance(b, BinarySequence) else tuple(b)


def product_sign_via_sum(b: BinarySequence | Iterable[int]) -> int:
    e = _as_entries(b)
    return _sign((len(e) - sum(e)) // 2)


def product_sign_via_alt_sum(b: BinarySequence | Iterable[int]) -> int:
    e = _as_entries(b)
    m = len(e)
    r = sum(v if j % 2 == 0 else -v for j, v in enumerate(e, start=1))
    return _sign(r // 2) if m % 2 == 0 else _sign((r + 1) // 2)


def literal_product(b: BinarySequence | Iterable[int]) -> int:
    p = 1
    for v in _as_entries(b):
        p *= v
    return p


# -- decompositions ---------------------------------------------------------

def cnk_simple(a: BinarySequence, k: int) -> int:
    """C_{n-k} from the outer k entries at both ends, paired inward."""
    n = a.n
    _check_lag(n, k)
    e = (0,) + a.entries
    d = (0,) + deltas(a)
    total = d[(k + 1) // 2] if k % 2 else 0
    for j in range(1, k // 2 + 1):
        total += e[j] * e[k + 1 - j] * (d[j] + d[k + 1 - j])
    return total


def ck_composite(a: BinarySequence, k: int) -> int:
    """C_k of an even-length sequence using only a_1..a_m and the deltas."""
    n = a.n
    if n % 2:
        raise SequenceError(f"ck_composite needs even length, got {n}")
    m = n // 2
    if k < 1:
        raise IndexError(f"lag {k} must be positive")
    if k >= m:
        raise SequenceError(f"ck_composite covers 1 <= k < m={m}, got k={k}")
    e = (0,) + a.entries
    d = (0,) + deltas(a)
    total = d[(n - k + 1) // 2] if k % 2 else 0
    for j in range(1, m - k + 1):
        total += e[j] * e[j + k] * (1 + d[j] * d[j + k])
    for j in range(1, k // 2 + 1):
        total += e[j + m - k] * e[m + 1 - j] * (d[j + m - k] + d[m + 1 - j])
    return total


def ck_strong(a: BinarySequence, k: int, *, complement: bool = False) -> int:
    """Correlations of a strong symmetric sequence from its first half.

    Returns C_k, or C_{n-k} when ``complement`` is set.  Odd lags are only
    covered for k < m; anything else raises ``UnsupportedIndexError``.
    """
    if not _is_strong_symmetric(a):
        raise SequenceError("ck_strong needs a strong symmetric sequence")
    n = a.n
    m = n // 2
    _check_lag(n, k)
    if k % 2 == 0:
        lag = n - k if complement else k
        if lag >= m:
            return 0
        return 2 * acf_direct(first_half(a))[lag]
    if k >= m:
        raise UnsupportedIndexError(f"odd lag {k} >= m={m} is not covered")
    b = (0,) + first_half(a).entries
    if complement:
        s = sum(_sign(j) * b[j] * b[k + 1 - j] for j in range(1, (k - 1) // 2 + 1))
        return _sign((k + 1) // 2) + 2 * s
    s = sum(_sign(j) * b[j + m - k] * b[m + 1 - j] for j in range(1, (k - 1) // 2 + 1))
    return _sign((k - 1) // 2) - 2 * s


def reversal_relation_check(a: BinarySequence) -> bool:
    """Even lags agree with the half-reversed sequence; odd lags swap with sign."""
    p = strong_symmetric_reverse(a)
    ca = acf_direct(a)
    cp = acf_direct(p)
    n = a.n
    for k in range(1, n):
        want = ca[k] if k % 2 == 0 else -ca[n - k]
        if cp[k] != want:
            return False
    return True


__all__ = [
    "CorrelationProfile",
    "Tvector",
    "UnsupportedIndexError",
    "acf_direct",
    "acf_direct_batch",
    "acf_fast",
    "acf_fast_many",
    "acf_fast_words",
    "check_eq1",
    "check_eq2",
    "ck_composite",
    "ck_strong",
    "cnk_simple",
    "literal_product",
    "periodic_sum",
    "periodic_sum_literal",
    "product_sign_via_alt_sum",
    "product_sign_via_sum",
    "reversal_relation_check",
    "t_vector",
]
