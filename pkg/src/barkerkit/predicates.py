"""Barker and symmetry classification of sequences.

The boolean predicates return ``False`` when a length gate fails (weak and
strong symmetry need ``n % 4 == 0``, skew symmetry needs odd ``n``).  The
structure verifiers raise ``SequenceError`` on bad input instead.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import isqrt
from typing import Optional, Union

from .correlation import CorrelationProfile, acf_direct
from .seqcore import BinarySequence, SequenceError


@dataclass(frozen=True)
class Violation:
    property: str
    k: int
    expected: Union[int, str]
    actual: int

    def to_dict(self) -> dict:
        return asdict(self)


def _pm(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def barker_violation(a: BinarySequence, acf: Optional[CorrelationProfile] = None) -> Optional[Violation]:
    c = acf or acf_direct(a)
    for k in range(1, a.n):
        if abs(c[k]) > 1:
            return Violation("barker", k, "|C_k| <= 1", c[k])
    return None


def skew_violation(a: BinarySequence) -> Optional[Violation]:
    """First j with a_j a_{n+1-j} != (-1)^((n+1)/2 + j); assumes odd n."""
    e = (0,) + a.entries
    n = a.n
    for j in range(1, n + 1):
        want = _pm((n + 1) // 2 + j)
        got = e[j] * e[n + 1 - j]
        if got != want:
            return Violation("skew_symmetric", j, want, got)
    return None


def weak_violation(a: BinarySequence) -> Optional[Violation]:
    """First odd j < n/2 with a_j a_{j+1} != -a_{n+1-j} a_{n-j}; assumes 4 | n."""
    e = (0,) + a.entries
    n = a.n
    for j in range(1, n // 2, 2):
        want = -e[n + 1 - j] * e[n - j]
        got = e[j] * e[j + 1]
        if got != want:
            return Violation("weak_symmetric", j, want, got)
    return None


def strong_violation(a: BinarySequence) -> Optional[Violation]:
    e = (0,) + a.entries
    n = a.n
    for j in range(1, n // 2 + 1):
        want = _pm(j)
        got = e[j] * e[n + 1 - j]
        if got != want:
            return Violation("strong_symmetric", j, want, got)
    return None


def antisymmetry_violation(a: BinarySequence, acf: Optional[CorrelationProfile] = None) -> Optional[Violation]:
    """First k with C_k != -C_{n-k}."""
    c = acf or acf_direct(a)
    n = a.n
    for k in range(1, n):
        if c[k] != -c[n - k]:
            return Violation("antisymmetry", k, -c[n - k], c[k])
    return None


def is_barker(a: BinarySequence) -> bool:
    return barker_violation(a) is None


def is_skew_symmetric(a: BinarySequence) -> bool:
    return a.n % 2 == 1 and skew_violation(a) is None


def is_weak_symmetric(a: BinarySequence) -> bool:
    return a.n % 4 == 0 and weak_violation(a) is None


def is_strong_symmetric(a: BinarySequence) -> bool:
    return a.n % 4 == 0 and strong_violation(a) is None


def has_equal_odd_correlations(a: BinarySequence, acf: Optional[CorrelationProfile] = None) -> bool:
    """C_1 = C_3 = ... over the odd lags below n/2."""
    c = acf or acf_direct(a)
    vals = {c[k] for k in range(1, a.n // 2, 2)}
    return len(vals) <= 1


def pair_rule_violation(a: BinarySequence) -> Optional[Violation]:
    """First j < n/4 where a_j a_{j+1}, a_{2j} a_{2j+1}, a_{u+j} a_{u+j+1} disagree."""
    if a.n % 4:
        raise SequenceError(f"pair rule needs a length divisible by 4, got {a.n}")
    e = (0,) + a.entries
    u = a.n // 4
    for j in range(1, u):
        base = e[j] * e[j + 1]
        doubled = e[2 * j] * e[2 * j + 1]
        shifted = e[u + j] * e[u + j + 1]
        if doubled != base:
            return Violation("pair_rule_doubled", j, base, doubled)
        if shifted != base:
            return Violation("pair_rule_shifted", j, base, shifted)
    return None


@dataclass(frozen=True)
class EvenStructure:
    weak_symmetric: bool
    even_lags_zero: bool
    odd_lags_match: bool
    square_length: bool
    r: Optional[int]
    antisymmetric: bool
    first_violation: Optional[Violation] = None

    @property
    def ok(self) -> bool:
        return (self.weak_symmetric and self.even_lags_zero and self.odd_lags_match
                and self.square_length and self.antisymmetric)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


@dataclass(frozen=True)
class OddStructure:
    skew_symmetric: bool
    odd_lags_zero: bool
    even_lags_fixed: bool
    first_violation: Optional[Violation] = None

    @property
    def ok(self) -> bool:
        return self.skew_symmetric and self.odd_lags_zero and self.even_lags_fixed

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def barker_even_structure(a: BinarySequence) -> EvenStructure:
    """Checks the forced structure of an even-length Barker sequence (n >= 4).

    Weak symmetry, C_k = 0 on even lags, C_k = -a_k a_{n+1-k} on odd lags,
    n = 4 r^2 with |sum a_j| = 2r, and C_k = -C_{n-k}.
    """
    n = a.n
    if n % 2 or n < 4:
        raise SequenceError(f"barker_even_structure needs even n >= 4, got {n}")
    c = acf_direct(a)
    if barker_violation(a, c) is not None:
        raise SequenceError("barker_even_structure needs a Barker sequence")
    e = (0,) + a.entries
    violations: list[Violation] = []

    wv = weak_violation(a) if n % 4 == 0 else Violation("weak_symmetric", 0, "n % 4 == 0", n % 4)
    if wv:
        violations.append(wv)

    even_zero = True
    odd_match = True
    for k in range(1, n):
        if k % 2 == 0 and c[k] != 0:
            even_zero = False
            violations.append(Violation("even_lag_zero", k, 0, c[k]))
        elif k % 2 == 1 and c[k] != -e[k] * e[n + 1 - k]:
            odd_match = False
            violations.append(Violation("odd_lag_delta", k, -e[k] * e[n + 1 - k], c[k]))

    r = isqrt(n // 4)
    square = n % 4 == 0 and 4 * r * r == n and sum(e) ** 2 == n
    if not square:
        violations.append(Violation("square_length", 0, "n = 4r^2", n))

    av = antisymmetry_violation(a, c)
    if av:
        violations.append(av)

    first = min(violations, key=lambda v: v.k) if violations else None
    return EvenStructure(
        weak_symmetric=wv is None,
        even_lags_zero=even_zero,
        odd_lags_match=odd_match,
        square_length=square,
        r=r if square else None,
        antisymmetric=av is None,
        first_violation=first,
    )


def barker_odd_structure(a: BinarySequence) -> OddStructure:
    n = a.n
    if n % 2 == 0:
        raise SequenceError(f"barker_odd_structure needs odd n, got {n}")
    c = acf_direct(a)
    if barker_violation(a, c) is not None:
        raise SequenceError("barker_odd_structure needs a Barker sequence")
    fixed = _pm((n - 1) // 2)
    violations: list[Violation] = []
    odd_zero = even_fixed = True
    for k in range(1, n):
        if k % 2 and c[k] != 0:
            odd_zero = False
            violations.append(Violation("odd_lag_zero", k, 0, c[k]))
        elif k % 2 == 0 and c[k] != fixed:
            even_fixed = False
            violations.append(Violation("even_lag_fixed", k, fixed, c[k]))
    sv = skew_violation(a)
    if sv:
        violations.append(sv)
    first = min(violations, key=lambda v: v.k) if violations else None
    return OddStructure(sv is None, odd_zero, even_fixed, first)


@dataclass(frozen=True)
class SymmetryReport:
    is_barker: bool
    is_skew_symmetric: bool
    is_weak_symmetric: bool
    is_strong_symmetric: bool
    barker_even_structure_ok: Optional[bool]
    first_violation: Optional[Violation] = field(default=None)

    def to_dict(self) -> dict:
        return {
            "is_barker": self.is_barker,
            "is_skew_symmetric": self.is_skew_symmetric,
            "is_weak_symmetric": self.is_weak_symmetric,
            "is_strong_symmetric": self.is_strong_symmetric,
            "barker_even_structure_ok": self.barker_even_structure_ok,
            "first_violation": self.first_violation.to_dict() if self.first_violation else None,
        }


def symmetry_report(a: BinarySequence) -> SymmetryReport:
    """Classify ``a``; ``first_violation`` is the first failure among the
    properties whose length gate ``a`` passes (barker, skew, weak, strong)."""
    c = acf_direct(a)
    n = a.n
    bv = barker_violation(a, c)
    sv = skew_violation(a) if n % 2 else None
    wv = weak_violation(a) if n % 4 == 0 else None
    tv = strong_violation(a) if n % 4 == 0 else None

    even_ok: Optional[bool] = None
    ev = None
    if bv is None and n % 2 == 0 and n >= 4:
        es = barker_even_structure(a)
        even_ok = es.ok
        ev = es.first_violation

    first = next((v for v in (bv, sv, wv, tv, ev) if v is not None), None)
    return SymmetryReport(
        is_barker=bv is None,
        is_skew_symmetric=n % 2 == 1 and sv is None,
        is_weak_symmetric=n % 4 == 0 and wv is None,
        is_strong_symmetric=n % 4 == 0 and tv is None,
        barker_even_structure_ok=even_ok,
        first_violation=first,
    )
