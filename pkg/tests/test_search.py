import pytest

from barkerkit.predicates import is_barker
from barkerkit.search import (
    BudgetError,
    SearchConfig,
    canonical_form,
    known_barker_lengths,
    orbit,
    search_barker,
    search_constrained,
)
from barkerkit.seqcore import BinarySequence, alternate, negate, reverse

from conftest import BARKER13, every_sequence, seq


def test_known_lengths():
    assert known_barker_lengths() == {2, 3, 4, 5, 7, 11, 13}
    assert 13 in known_barker_lengths()
    assert 6 not in known_barker_lengths()


def test_length_two_is_everything():
    r = search_barker(SearchConfig(2))
    assert [s.bits for s in r.sequences] == [0, 1, 2, 3]


def test_examples():
    assert search_barker(SearchConfig(6)).sequences == ()
    found = search_barker(SearchConfig(13)).sequences
    assert seq(*BARKER13) in found


@pytest.mark.parametrize("n", range(2, 15))
def test_matches_brute_force_filter(n):
    expected = [a for a in every_sequence(n) if is_barker(a)]
    assert list(search_barker(SearchConfig(n)).sequences) == expected
    assert list(search_barker(SearchConfig(n, prune=False)).sequences) == expected


def test_result_sorted_unique_and_barker():
    for n in range(2, 22):
        seqs = search_barker(SearchConfig(n)).sequences
        bits = [s.bits for s in seqs]
        assert bits == sorted(set(bits))
        assert all(is_barker(s) for s in seqs)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7, 11, 13])
def test_closed_under_symmetries(n):
    found = set(search_barker(SearchConfig(n)).sequences)
    for a in found:
        assert {negate(a), reverse(a), alternate(a)} <= found


def test_orbit_is_closed_group_image():
    a = seq(*BARKER13)
    o = orbit(a)
    assert len(o) <= 8
    for s in o:
        assert {negate(s), reverse(s), alternate(s)} <= o
    assert canonical_form(a) == min(o, key=lambda s: s.bits)


@pytest.mark.parametrize("n,orbits", [(2, 1), (3, 1), (4, 1), (5, 1), (7, 1), (11, 1), (13, 1)])
def test_canonical_representatives(n, orbits):
    full = search_barker(SearchConfig(n)).sequences
    canon = search_barker(SearchConfig(n, canonicalize=True)).sequences
    assert len(canon) == orbits
    assert set().union(*(orbit(c) for c in canon)) == set(full)


def test_max_results():
    r = search_barker(SearchConfig(4, max_results=3))
    assert len(r.sequences) == 3
    assert r.sequences == search_barker(SearchConfig(4)).sequences[:3]


def test_pruning_visits_fewer_nodes():
    pruned = search_barker(SearchConfig(20))
    plain = search_barker(SearchConfig(20, prune=False))
    assert plain.nodes_visited == 1 << 20
    assert pruned.nodes_visited < plain.nodes_visited // 100


def test_budget():
    with pytest.raises(BudgetError):
        SearchConfig(33)
    with pytest.raises(BudgetError):
        SearchConfig(25, prune=False)
    with pytest.raises(BudgetError):
        SearchConfig(4096, max_n=5000)
    with pytest.raises(BudgetError):
        SearchConfig(1)
    assert SearchConfig(34, max_n=34).n == 34


def test_invalid_config():
    with pytest.raises(ValueError):
        SearchConfig(4, workers=0)
    with pytest.raises(ValueError):
        SearchConfig(4, constraint="bogus")


@pytest.mark.parametrize("workers", [2, 8])
def test_worker_count_independence(workers):
    for cfg in (SearchConfig(13), SearchConfig(22), SearchConfig(14, prune=False)):
        one = search_barker(cfg)
        many = search_barker(SearchConfig(cfg.n, prune=cfg.prune, workers=workers))
        assert many.to_dict() == one.to_dict()


def test_constrained():
    assert len(search_constrained(4).sequences) > 0
    assert search_constrained(8).sequences == ()
    assert search_constrained(16).sequences == ()
    with pytest.raises(ValueError):
        search_constrained(7)
    with pytest.raises(ValueError):
        search_constrained(2)


def test_json_shape():
    d = search_barker(SearchConfig(4)).to_dict()
    assert set(d) == {"n", "canonical", "constraint", "count", "sequences", "nodes_visited", "pruned"}
    assert "elapsed" in search_barker(SearchConfig(4)).to_dict(include_timing=True)


def test_from_pattern_rejects_short():
    with pytest.raises(ValueError):
        BinarySequence.from_pattern(1, 0)
