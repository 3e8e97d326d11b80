import random

import pytest

from qwitt import search
from qwitt._search_py import search_vectors as py_search


def brute(n, constraints, bound, norm):
    out = []
    from itertools import product

    for vec in product(range(-bound, bound + 1), repeat=n):
        ok = True
        for a, l, c, m in constraints:
            v = (
                sum(a[i][j] * vec[i] * vec[j] for i in range(n) for j in range(n))
                + sum(l[i] * vec[i] for i in range(n))
                + c
            )
            if (v % m if m else v) != 0:
                ok = False
                break
        if ok and norm:
            for e in vec:
                if e:
                    ok = e > 0
                    break
        if ok:
            out.append(vec)
    return out


def test_python_backend_vs_brute_force():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 3)
        cons = []
        for _ in range(rng.randint(0, 3)):
            a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
            l = [rng.randint(-2, 2) for _ in range(n)]
            cons.append((a, l, rng.randint(-3, 3), rng.choice([0, 0, 2, 3])))
        b = rng.randint(1, 3)
        norm = rng.random() < 0.5
        got, _, exhausted = py_search(n, cons, b, 10**6, 10**7, norm)
        assert exhausted
        assert got == brute(n, cons, b, norm)


def test_backends_agree():
    backends = search.available_backends()
    if "c" not in backends:
        pytest.skip("compiled kernel not built")
    rng = random.Random(12)
    for _ in range(120):
        n = rng.randint(1, 4)
        cons = []
        for _ in range(rng.randint(0, 3)):
            a = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
            l = [rng.randint(-2, 2) for _ in range(n)]
            cons.append((a, l, rng.randint(-4, 4), rng.choice([0, 2, 4])))
        b = rng.randint(1, 3)
        norm = rng.random() < 0.5
        r_py = backends["python"](n, cons, b, 1000, 100000, norm)
        r_c = backends["c"](n, cons, b, 1000, 100000, norm)
        assert r_py == r_c


def test_budget_and_limits():
    # max_results truncates and reports non-exhaustion
    res, nodes, exhausted = py_search(2, [], 3, 5, 10**6, False)
    assert len(res) == 5 and not exhausted
    # node budget stops the walk
    res, nodes, exhausted = py_search(4, [], 2, 10**9, 10, False)
    assert not exhausted and nodes >= 10


def test_zero_dimensional():
    assert py_search(0, [], 3, 10, 10, False)[0] == [()]
    bad = [([[0]], [0], 1, 0)]
    # constant 1 != 0 means no solutions even in dimension zero
    assert py_search(0, [([], [], 1, 0)], 3, 10, 10, False)[0] == []
    assert py_search(0, [([], [], 4, 2)], 3, 10, 10, False)[0] == [()]
