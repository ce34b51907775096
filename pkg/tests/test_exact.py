import pytest

from ramseypack.cliques import has_clique
from ramseypack.exact import (
    CANON_LEVELS, Bracket, SearchSpec, brute_force_P_level, check_witness, compute_P_exact, verify_simple_bound,
)
from ramseypack.forcing import pattern_forces


@pytest.mark.parametrize("canon", CANON_LEVELS)
def test_p22_all_canon_levels(canon):
    res = compute_P_exact(SearchSpec(2, 2, n_max=5, canon=canon))
    assert res.value == 4
    assert [c.exhausted for c in res.levels] == [True, False]
    check_witness(res.witness, 2)
    assert all(has_clique(g, 3) is None for g in res.witness.layers)


def test_small_values():
    assert compute_P_exact(SearchSpec(1, 2, n_max=4)).value == 2
    assert compute_P_exact(SearchSpec(1, 3, n_max=4)).value == 3
    assert compute_P_exact(SearchSpec(2, 1, n_max=3)).value == 1


def test_brute_force_oracle_agrees():
    for n in (3, 4):
        spec = SearchSpec(2, 2, n_min=n, n_max=n)
        assert compute_P_exact(spec).exact == brute_force_P_level(n, 2, 2)


@pytest.mark.parametrize("canon", CANON_LEVELS)
def test_symmetry_pruning_is_sound_r3(canon):
    n_max = 5 if canon == "degree-order" else 4
    res = compute_P_exact(SearchSpec(3, 2, n_max=n_max, canon=canon))
    assert isinstance(res.value, Bracket) and res.value.lo == n_max + 1
    assert all(c.exhausted for c in res.levels)


def test_workers_match_sequential():
    seq = compute_P_exact(SearchSpec(3, 2, n_max=5))
    par = compute_P_exact(SearchSpec(3, 2, n_max=5, workers=2))
    assert seq.to_dict() == par.to_dict()
    a = compute_P_exact(SearchSpec(2, 2, n_max=5, workers=2))
    assert a.value == 4 and a.witness == compute_P_exact(SearchSpec(2, 2, n_max=5)).witness


def test_budget_gives_bracket():
    res = compute_P_exact(SearchSpec(3, 2, n_max=6, node_budget=1000))
    assert not res.exact and res.value.lo <= 6 and not res.levels[-1].exhausted


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(2, 2, n_min=5, n_max=4)
    with pytest.raises(ValueError):
        SearchSpec(0, 2)


@pytest.mark.parametrize("rk", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_simple_bound(rk):
    res = verify_simple_bound(*rk)
    assert res and res.patterns > 0


def test_witness_checker_rejects_escaping_pattern():
    from ramseypack.graph import ColourPattern, Graph

    p = ColourPattern.of(Graph.from_edges(3, [(0, 1)]), Graph.from_edges(3, [(1, 2)]))
    assert not pattern_forces(p, 2).forces
    with pytest.raises(AssertionError):
        check_witness(p, 2)
