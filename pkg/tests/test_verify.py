import pytest

from barkerkit import verify
from barkerkit.search import BudgetError
from barkerkit.verify import (
    REGISTRY,
    Identity,
    UnknownIdentityError,
    identity_ids,
    verify_all,
    verify_identity,
    verify_lemma7,
    verify_theorem1,
)


def test_eq3_exhaustive_counts():
    r = verify_identity("eq3", 2, 12)
    assert r.checked == r.passed == r.evaluated == sum(1 << n for n in range(2, 13))
    assert r.first_counterexample is None and r.ok


def test_lemma4_even_lengths_only():
    r = verify_identity("lemma4", 4, 12)
    assert r.lengths == (4, 6, 8, 10, 12)
    assert r.ok and r.checked == sum(1 << n for n in r.lengths)


def test_lemma6_halves():
    r = verify_identity("lemma6", 8, 24)
    assert r.lengths == (8, 12, 16, 20, 24)
    assert r.ok and r.checked == sum(1 << (n // 2) for n in r.lengths)


def test_halves_override_and_rejection():
    r = verify_identity("eq6", 4, 16, population="halves")
    assert r.ok and r.checked == 4 + 16 + 64 + 256
    with pytest.raises(ValueError):
        verify_identity("eq1", 2, 4, population="nope")


def test_every_identity_passes_small_range():
    for r in verify_all(2, 9):
        assert r.ok, r.to_dict()
        assert r.passed <= r.checked <= r.evaluated


def test_registry_ids_unique_and_described():
    assert len(identity_ids()) == len(set(identity_ids()))
    assert all(REGISTRY[i].description for i in identity_ids())


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError):
        verify_identity("bogus", 2, 4)


def test_budget_refusal():
    with pytest.raises(BudgetError):
        verify_identity("eq1", 2, 30)
    with pytest.raises(BudgetError):
        verify_identity("eq1", 2, 10, budget=100)
    assert verify_identity("eq1", 2, 4, budget=28).ok


def test_random_mode_requires_seed():
    with pytest.raises(ValueError):
        verify_identity("eq1", 2, 4, "random", samples=10)
    with pytest.raises(ValueError):
        verify_identity("eq1", 2, 4, "random", seed=1)


def test_random_mode_reproducible():
    a = verify_identity("lemma3", 20, 40, "random", samples=30, seed=11)
    b = verify_identity("lemma3", 20, 40, "random", samples=30, seed=11)
    assert a.to_dict() == b.to_dict()
    assert a.ok and a.checked == 30 * 21 and a.seed == 11


def _broken(a):
    # fails exactly when a_1 = -1 and a_n = +1
    return "planted" if a[1] == -1 and a[a.n] == 1 else None


def test_first_counterexample_is_minimal(monkeypatch):
    monkeypatch.setitem(REGISTRY, "broken", Identity("broken", "planted failure", _broken))
    r = verify_identity("broken", 3, 5)
    assert not r.ok
    assert r.checked - r.passed == 2 + 4 + 8
    # smallest n first, then smallest pattern: bit n-1 set, bit 0 clear
    assert r.first_counterexample == {"n": 3, "index": 4, "sequence": "--+", "detail": "planted"}


@pytest.mark.parametrize("workers", [2, 8])
def test_worker_independence(workers):
    one = [r.to_dict() for r in verify_all(2, 8)]
    many = [r.to_dict() for r in verify_all(2, 8, workers=workers)]
    assert one == many
    ra = verify_identity("lemma1i", 10, 30, "random", samples=40, seed=3)
    rb = verify_identity("lemma1i", 10, 30, "random", samples=40, seed=3, workers=workers)
    assert ra.to_dict() == rb.to_dict()


def test_theorem1():
    r4 = verify_theorem1(4)
    assert r4.match_count > 0 and r4.ok
    assert "+++-" in r4.matching
    for n in (6, 8, 12):
        r = verify_theorem1(n)
        assert r.match_count == 0 and r.ok
    assert verify_theorem1(6).barker_count == 0
    with pytest.raises(ValueError):
        verify_theorem1(5)


def test_lemma7():
    r = verify_lemma7(4)
    assert r.population > 0 and r.vacuous and r.ok
    for n in (8, 12):
        r = verify_lemma7(n)
        assert r.population == 0 and r.ok and not r.vacuous
    with pytest.raises(ValueError):
        verify_lemma7(6)


def test_report_json_excludes_timing_by_default():
    r = verify_identity("eq1", 2, 4)
    assert "elapsed" not in r.to_dict()
    assert "elapsed" in r.to_dict(include_timing=True)
