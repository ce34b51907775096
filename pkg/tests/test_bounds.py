from math import e, isqrt

import pytest

from ramseypack.bounds import (
    ELEMENTARY, ErdosRogersModel, NotCliqueFree, bounds_table, f_lower, g_condition, kfree_set_witness,
    recursive_P_lower, rows_to_csv,
)
from ramseypack.cliques import has_clique, is_k_free
from ramseypack.graph import Graph

from kfree_inputs import kfree_graphs

SHEARER = ErdosRogersModel("shearer_k2")


def test_f_lower_examples():
    assert f_lower(ELEMENTARY, 100) == 10
    assert f_lower(SHEARER, e ** 4) == 7
    with pytest.raises(ValueError):
        f_lower(SHEARER, 8)
    with pytest.raises(ValueError):
        ErdosRogersModel("nope")


def test_recursion_examples():
    assert recursive_P_lower(2, 5) == {2: 4, 3: 6, 4: 8, 5: 10}


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_recursion_monotone_and_floor(k):
    tab = recursive_P_lower(k, 400)
    vals = [tab[r] for r in range(2, 401)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert all(tab[r] >= (k - 1) * r + 1 for r in tab)


def test_recursion_monotone_in_model():
    small = recursive_P_lower(3, 300, ELEMENTARY)
    big = recursive_P_lower(3, 300, ErdosRogersModel("dudek_mubayi", c=2.0))
    bigger = recursive_P_lower(3, 300, ErdosRogersModel("dudek_mubayi", c=3.0))
    assert all(small[r] <= big[r] <= bigger[r] for r in small)


def test_g_condition_predicate():
    assert g_condition(SHEARER, 17, 2000) == (True, None)
    holds, first = g_condition(ErdosRogersModel("dudek_mubayi"), 17, 2000, C=1e-6)
    assert not holds and first == 17


def test_kfree_witness_examples():
    star = Graph.from_edges(10, [(0, i) for i in range(1, 10)])
    assert kfree_set_witness(star, 2) == list(range(1, 10))
    out = kfree_set_witness(Graph.cycle(5), 2)
    assert len(out) >= 2 and is_k_free(Graph.cycle(5), out, 2)
    with pytest.raises(NotCliqueFree):
        kfree_set_witness(Graph.complete(3), 2)
    assert kfree_set_witness(Graph.empty(9), 2) == list(range(9))


def test_kfree_witness_random_inputs():
    for k, g in kfree_graphs(60, seed=99):
        assert has_clique(g, k + 1) is None
        out = kfree_set_witness(g, k)
        assert len(out) >= isqrt(g.n) and is_k_free(g, out, k)


def test_table_rows():
    rows = bounds_table(3, 10)
    r3 = rows[1]
    assert r3.r == 3 and r3.upper_moment == 13824 and r3.lower_trivial == 4
    assert r3.lower_simple == r3.lower_trivial  # both equal (k-2) r + 1
    assert all(r.consistent for r in rows)
    assert rows[0].upper_k3 == 1922
    rec = [r.lower_recursive for r in rows]
    assert rec == sorted(rec)
    assert bounds_table(4, 3)[0].upper_k3 is None and bounds_table(4, 3)[0].display_upper_general is not None
    head = rows_to_csv(rows).splitlines()[0].split(",")
    assert head[:4] == ["r", "k", "p_k", "lower_trivial"]
    with pytest.raises(ValueError):
        bounds_table(2, 5)
