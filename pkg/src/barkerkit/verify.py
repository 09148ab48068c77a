"""Exhaustive and seeded-random verification of the correlation identities.

Each registered identity is a check on a single sequence.  A population is
either every length-n pattern (``"all"``) or every strong symmetric sequence
of length n built from its 2^(n/2) first halves (``"halves"``).  Populations
are split into contiguous pattern ranges for the worker pool, and the merge
keeps the counterexample that comes first in enumeration order, so reports
do not depend on the worker count.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from ._parallel import prefix_bits, run_tasks
from .correlation import (
    acf_direct,
    acf_fast,
    check_eq1,
    check_eq2,
    ck_composite,
    ck_strong,
    cnk_simple,
    literal_product,
    periodic_sum,
    periodic_sum_literal,
    product_sign_via_alt_sum,
    product_sign_via_sum,
    reversal_relation_check,
    t_vector,
)
from .predicates import (
    antisymmetry_violation,
    barker_even_structure,
    barker_odd_structure,
    barker_violation,
    is_strong_symmetric,
    is_weak_symmetric,
    pair_rule_violation,
)
from .search import BudgetError, PRUNED_MAX_N, SearchConfig, search_barker, search_constrained
from .seqcore import BinarySequence, alternate, deltas, extend_strong_symmetric, negate, reverse

DEFAULT_BUDGET = 1 << 28

SKIP = object()


class UnknownIdentityError(KeyError):
    pass


# -- per-sequence checks ----------------------------------------------------
# Each returns SKIP (outside the identity's hypothesis), None (holds) or a
# short failure description.

def _chk_eq1(a):
    return None if check_eq1(a) else "C_k and n-k differ in parity"


def _chk_eq2(a):
    return None if check_eq2(a) else "(sum a)^2 != n + 2 sum C_k"


def _chk_eq3(a):
    n = a.n
    for k in range(1, n):
        p = periodic_sum(a, k)
        lit = periodic_sum_literal(a, k)
        if p != lit:
            return f"k={k}: C_k+C_(n-k)={p} but cyclic sum={lit}"
        if (p - n) % 4:
            return f"k={k}: periodic sum {p} not congruent to n mod 4"
    return None


def _chk_eq4(a):
    if barker_violation(a) is not None:
        return SKIP
    v = antisymmetry_violation(a)
    return None if v is None else f"k={v.k}: C_k={v.actual}, -C_(n-k)={v.expected}"


def _chk_eq5(a):
    d = deltas(a)
    n = a.n
    for k in range(n):
        if d[k] != d[n - 1 - k]:
            return f"k={k + 1}: delta_k != delta_(n+1-k)"
    return None


def _chk_eq6(a):
    if not is_weak_symmetric(a):
        return SKIP
    d = deltas(a)
    for k in range(1, a.n, 2):
        if d[k - 1] != -d[k]:
            return f"k={k}: delta_k != -delta_(k+1)"
    return None


def _chk_lemma1i(a):
    c = acf_direct(a)
    t = t_vector(a)
    n = a.n
    for k in range(1, n):
        if (c[n - k] - t[k]) % 4:
            return f"k={k}: C_(n-k)={c[n - k]}, T_k={t[k]}"
    return None


def _chk_lemma1ii(a):
    if not is_weak_symmetric(a):
        return SKIP
    t = t_vector(a)
    e = (0,) + a.entries
    n = a.n
    for k in range(1, n):
        want = 0 if k % 2 == 0 else e[k] * e[n + 1 - k]
        if t[k] != want:
            return f"k={k}: T_k={t[k]}, expected {want}"
    return None


def _chk_lemma2(a):
    p = literal_product(a)
    s1 = product_sign_via_sum(a)
    s2 = product_sign_via_alt_sum(a)
    if s1 != p or s2 != p:
        return f"product={p}, via sum={s1}, via alternating sum={s2}"
    return None


def _chk_lemma3(a):
    c = acf_direct(a)
    n = a.n
    for k in range(1, n):
        v = cnk_simple(a, k)
        if v != c[n - k]:
            return f"k={k}: formula {v}, C_(n-k)={c[n - k]}"
    return None


def _chk_lemma4(a):
    c = acf_direct(a)
    for k in range(1, a.n // 2):
        v = ck_composite(a, k)
        if v != c[k]:
            return f"k={k}: formula {v}, C_k={c[k]}"
    return None


def _chk_lemma5(a):
    if not is_strong_symmetric(a):
        return SKIP
    c = acf_direct(a)
    n = a.n
    m = n // 2
    for k in range(1, n):
        if k % 2 == 0:
            v = ck_strong(a, k)
            if v != c[k]:
                return f"even k={k}: formula {v}, C_k={c[k]}"
        elif k < m:
            v = ck_strong(a, k)
            w = ck_strong(a, k, complement=True)
            if v != c[k]:
                return f"odd k={k}: formula {v}, C_k={c[k]}"
            if w != c[n - k]:
                return f"odd k={k}: formula {w}, C_(n-k)={c[n - k]}"
    return None


def _chk_lemma6(a):
    if not is_strong_symmetric(a):
        return SKIP
    return None if reversal_relation_check(a) else "half-reversal relation fails"


def _chk_prop1(a):
    if barker_violation(a) is not None:
        return SKIP
    if not is_weak_symmetric(a):
        return "even-length Barker sequence is not weak symmetric"
    c = acf_direct(a)
    e = (0,) + a.entries
    n = a.n
    for k in range(1, n, 2):
        if c[k] != -e[k] * e[n + 1 - k]:
            return f"k={k}: C_k={c[k]}, -a_k a_(n+1-k)={-e[k] * e[n + 1 - k]}"
    return None


def _chk_strong_weak(a):
    strong = is_strong_symmetric(a)
    weak = is_weak_symmetric(a)
    if strong and not weak:
        return "strong symmetric but not weak symmetric"
    d = deltas(a)
    odd_minus = all(d[k - 1] == -1 for k in range(1, a.n // 2 + 1, 2))
    if strong != (weak and odd_minus):
        return "strong symmetry != weak symmetry plus delta_k = -1 on odd k"
    return None


def _chk_barker_odd(a):
    if barker_violation(a) is not None:
        return SKIP
    s = barker_odd_structure(a)
    return None if s.ok else f"structure violated: {s.first_violation}"


def _chk_barker_even(a):
    if barker_violation(a) is not None:
        return SKIP
    s = barker_even_structure(a)
    return None if s.ok else f"structure violated: {s.first_violation}"


def _chk_kernel(a):
    return None if acf_fast(a) == acf_direct(a) else "acf_fast differs from acf_direct"


def _chk_transforms(a):
    c = acf_direct(a)
    if acf_direct(reverse(a)) != c:
        return "reversal changes the profile"
    if acf_direct(negate(a)) != c:
        return "negation changes the profile"
    s = acf_direct(alternate(a))
    for k in range(a.n):
        if s[k] != (c[k] if k % 2 == 0 else -c[k]):
            return f"k={k}: alternation does not give (-1)^k C_k"
    return None


@dataclass(frozen=True)
class Identity:
    id: str
    description: str
    check: Callable[[BinarySequence], object]
    populations: tuple[str, ...] = ("all", "halves")
    domain: Callable[[int], bool] = lambda n: n >= 2


def _even4(n: int) -> bool:
    return n % 2 == 0 and n >= 4


def _mult4(n: int) -> bool:
    return n % 4 == 0


def _odd(n: int) -> bool:
    return n % 2 == 1


REGISTRY: dict[str, Identity] = {i.id: i for i in [
    Identity("eq1", "C_k = n - k (mod 2) for 1 <= k < n", _chk_eq1),
    Identity("eq2", "(sum a_j)^2 = n + 2 sum_{k>=1} C_k", _chk_eq2),
    Identity("eq3", "C_k + C_{n-k} equals the cyclic sum and is n (mod 4)", _chk_eq3),
    Identity("eq4", "even-length Barker: C_k = -C_{n-k}", _chk_eq4, domain=_even4),
    Identity("eq5", "delta_k = delta_{n+1-k}", _chk_eq5),
    Identity("eq6", "weak symmetric: delta_k = -delta_{k+1} for odd k", _chk_eq6, domain=_mult4),
    Identity("lemma1i", "C_{n-k} = T_k (mod 4)", _chk_lemma1i),
    Identity("lemma1ii", "weak symmetric: T_k = 0 (k even), a_k a_{n+1-k} (k odd)",
             _chk_lemma1ii, domain=_mult4),
    Identity("lemma2", "entry product from the plain and alternating sums", _chk_lemma2),
    Identity("lemma3", "C_{n-k} from the outer k entries", _chk_lemma3),
    Identity("lemma4", "C_k from the first half and the deltas (even n)", _chk_lemma4, domain=_even4),
    Identity("lemma5", "strong symmetric correlation formulas", _chk_lemma5,
             populations=("halves", "all"), domain=_mult4),
    Identity("lemma6", "half-reversal correlation relation", _chk_lemma6,
             populations=("halves", "all"), domain=_mult4),
    Identity("prop1", "even-length Barker is weak symmetric with C_k = -delta_k on odd k",
             _chk_prop1, domain=_even4),
    Identity("strong_weak", "strong symmetry = weak symmetry plus delta_k = -1 on odd k",
             _chk_strong_weak),
    Identity("barker_odd", "odd-length Barker: skew symmetric, fixed correlations",
             _chk_barker_odd, domain=_odd),
    Identity("barker_even", "even-length Barker: full forced structure", _chk_barker_even,
             domain=_even4),
    Identity("kernel", "bit-parallel acf equals the literal sum", _chk_kernel),
    Identity("transforms", "reverse/negate keep C_k, alternate gives (-1)^k C_k", _chk_transforms),
]}


def identity_ids() -> list[str]:
    return list(REGISTRY)


def get_identity(identity_id: str) -> Identity:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentityError(identity_id) from None


# -- populations ------------------------------------------------------------

def _member(population: str, n: int, pattern: int) -> BinarySequence:
    if population == "all":
        return BinarySequence(n, pattern)
    return extend_strong_symmetric(BinarySequence(n // 2, pattern))


def _pattern_bits(population: str, n: int) -> int:
    return n if population == "all" else n // 2


def _lengths(ident: Identity, population: str, n_min: int, n_max: int) -> list[int]:
    ok = [n for n in range(max(n_min, 2), n_max + 1) if ident.domain(n)]
    if population == "halves":
        ok = [n for n in ok if n % 4 == 0]
    return ok


@dataclass(frozen=True)
class _Chunk:
    identity_id: str
    population: str
    n: int
    patterns: Optional[tuple[int, ...]] = None
    lo: int = 0
    hi: int = 0


def _run_chunk(chunk: _Chunk) -> tuple[int, int, int, Optional[tuple[int, int, str]]]:
    """Returns (evaluated, checked, passed, first failure as (order, pattern, detail))."""
    check = REGISTRY[chunk.identity_id].check
    if chunk.patterns is not None:
        items = enumerate(chunk.patterns)
    else:
        items = ((x, x) for x in range(chunk.lo, chunk.hi))
    evaluated = checked = passed = 0
    first = None
    for order, x in items:
        evaluated += 1
        res = check(_member(chunk.population, chunk.n, x))
        if res is SKIP:
            continue
        checked += 1
        if res is None:
            passed += 1
        elif first is None:
            first = (order, x, str(res))
    return evaluated, checked, passed, first


@dataclass(frozen=True)
class VerificationReport:
    identity_id: str
    description: str
    population: str
    mode: str
    lengths: tuple[int, ...]
    evaluated: int
    checked: int
    passed: int
    first_counterexample: Optional[dict] = None
    seed: Optional[int] = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.passed == self.checked

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "identity_id": self.identity_id,
            "description": self.description,
            "population": self.population,
            "mode": self.mode,
            "seed": self.seed,
            "lengths": list(self.lengths),
            "evaluated": self.evaluated,
            "checked": self.checked,
            "passed": self.passed,
            "ok": self.ok,
            "first_counterexample": self.first_counterexample,
        }
        if include_timing:
            d["elapsed"] = round(self.elapsed, 6)
        return d


def _describe(population: str, lengths: list[int], mode: str, samples: int) -> str:
    span = f"n in {lengths[0]}..{lengths[-1]}" if lengths else "no admissible n"
    if mode == "random":
        return f"{samples} seeded random {'strong symmetric ' if population == 'halves' else ''}sequences per length, {span}"
    if population == "halves":
        return f"all strong symmetric sequences via 2^(n/2) halves, {span}"
    return f"all 2^n sequences, {span}"


def verify_identity(identity_id: str, n_min: int, n_max: int, mode: str = "exhaustive", *,
                    samples: int = 0, seed: Optional[int] = None, population: Optional[str] = None,
                    workers: int = 1, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    start = time.perf_counter()
    ident = get_identity(identity_id)
    pop = population or ident.populations[0]
    if pop not in ident.populations:
        raise ValueError(f"identity {identity_id!r} does not support population {pop!r}")
    if mode not in ("exhaustive", "random"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "random" and (seed is None or samples < 1):
        raise ValueError("random mode needs a seed and a positive sample count")
    if n_min > n_max:
        raise ValueError(f"empty length range {n_min}..{n_max}")
    lengths = _lengths(ident, pop, n_min, n_max)

    if mode == "exhaustive":
        cost = sum(1 << _pattern_bits(pop, n) for n in lengths)
    else:
        cost = samples * len(lengths)
    if cost > budget:
        raise BudgetError(
            f"{identity_id}: {cost} evaluations exceed the budget of {budget}; "
            "narrow the range, use random mode, or raise the budget")

    split = 2 * prefix_bits(workers)
    chunks: list[_Chunk] = []
    for n in lengths:
        bits = _pattern_bits(pop, n)
        if mode == "exhaustive":
            parts = 1 << min(split, bits)
            size = (1 << bits) // parts
            chunks += [_Chunk(identity_id, pop, n, lo=i * size, hi=(i + 1) * size) for i in range(parts)]
        else:
            rng = random.Random(f"{seed}/{identity_id}/{pop}/{n}")
            pats = tuple(rng.getrandbits(bits) for _ in range(samples))
            per = -(-samples // max(1, 1 << split))
            chunks += [_Chunk(identity_id, pop, n, patterns=pats[i:i + per]) for i in range(0, samples, per)]

    evaluated = checked = passed = 0
    first = None
    offsets: dict[int, int] = {}
    for chunk, (ev, ch, pa, fail) in zip(chunks, run_tasks(_run_chunk, chunks, workers)):
        base = offsets.get(chunk.n, 0)
        offsets[chunk.n] = base + ev
        evaluated += ev
        checked += ch
        passed += pa
        if fail is not None:
            order = fail[0] if chunk.patterns is None else base + fail[0]
            key = (chunk.n, order)
            if first is None or key < first[0]:
                first = (key, fail[1], fail[2])

    counterexample = None
    if first is not None:
        (n, order), pattern, detail = first
        seq = _member(pop, n, pattern)
        counterexample = {"n": n, "index": order, "sequence": seq.render(), "detail": detail}
    return VerificationReport(
        identity_id=identity_id,
        description=ident.description,
        population=_describe(pop, lengths, mode, samples),
        mode=mode,
        lengths=tuple(lengths),
        evaluated=evaluated,
        checked=checked,
        passed=passed,
        first_counterexample=counterexample,
        seed=seed if mode == "random" else None,
        elapsed=time.perf_counter() - start,
    )


def verify_all(n_min: int, n_max: int, mode: str = "exhaustive", **kwargs) -> list[VerificationReport]:
    return [verify_identity(i, n_min, n_max, mode, **kwargs) for i in REGISTRY]


# -- the equal-odd-correlation results --------------------------------------

@dataclass(frozen=True)
class Theorem1Report:
    n: int
    barker_count: int
    matching: tuple[str, ...]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def match_count(self) -> int:
        return len(self.matching)

    @property
    def ok(self) -> bool:
        # matches are expected at n = 4 and nowhere else
        return self.match_count > 0 if self.n == 4 else self.match_count == 0

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "barker_count": self.barker_count,
            "match_count": self.match_count,
            "matching": list(self.matching),
            "ok": self.ok,
        }
        if include_timing:
            d["elapsed"] = round(self.elapsed, 6)
        return d


def verify_theorem1(n: int, *, workers: int = 1, max_n: Optional[int] = None) -> Theorem1Report:
    """Count Barker sequences of length n whose odd lags below n/2 all agree."""
    if n % 2 or n < 4:
        raise ValueError(f"verify_theorem1 needs even n >= 4, got {n}")
    start = time.perf_counter()
    barkers = search_barker(SearchConfig(n, workers=workers, max_n=max_n))
    constrained = search_constrained(n, workers=workers, max_n=max_n)
    return Theorem1Report(
        n=n,
        barker_count=len(barkers.sequences),
        matching=tuple(s.render() for s in constrained.sequences),
        elapsed=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class Lemma7Report:
    n: int
    population: int
    checked: int
    passed: int
    vacuous: bool
    first_counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.passed == self.checked

    def to_dict(self, include_timing: bool = False) -> dict:
        return {
            "n": self.n,
            "population": self.population,
            "checked": self.checked,
            "passed": self.passed,
            "vacuous": self.vacuous,
            "ok": self.ok,
            "first_counterexample": self.first_counterexample,
        }


def verify_lemma7(n: int, *, workers: int = 1, max_n: Optional[int] = None) -> Lemma7Report:
    """Pair rule over every Barker sequence of length n with equal odd correlations.

    The rule ranges over 1 <= j < n/4, so it is vacuous at n = 4; for larger
    n the population is empty.
    """
    if n % 4 or n < 4:
        raise ValueError(f"verify_lemma7 needs n a positive multiple of 4, got {n}")
    pop = search_constrained(n, workers=workers, max_n=max_n).sequences
    checked = passed = 0
    first = None
    for a in pop:
        checked += 1
        v = pair_rule_violation(a)
        if v is None:
            passed += 1
        elif first is None:
            first = {"sequence": a.render(), "j": v.k, "detail": v.property}
    return Lemma7Report(n, len(pop), checked, passed, n // 4 <= 1, first)


__all__ = [
    "DEFAULT_BUDGET",
    "PRUNED_MAX_N",
    "REGISTRY",
    "Identity",
    "Lemma7Report",
    "Theorem1Report",
    "UnknownIdentityError",
    "VerificationReport",
    "get_identity",
    "identity_ids",
    "verify_all",
    "verify_identity",
    "verify_lemma7",
    "verify_theorem1",
]
