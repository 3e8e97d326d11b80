#!/usr/bin/env python3
"""Benchmark the bounded-search kernel: compiled extension vs pure Python.

Run from the repository root after `pip install -e . --no-build-isolation`:

    python3 benchmarks/bench_search.py
"""

import time

from qwitt import search
from qwitt.abelian import FinAbGroup
from qwitt.formparam import split_sum, standard
from qwitt.qform import (
    QForm,
    direct_sum,
    embedding_search,
    full_metabolic,
    hyperbolic,
    metabolic_search,
)


def workloads():
    qp = standard("Q^+")
    qm = standard("Q-")
    split = split_sum(standard("Q-"), FinAbGroup((4,)))

    # isotropic vectors with mu = 0 in an indefinite rank-8 lattice
    f8 = direct_sum(
        hyperbolic(qp, 2),
        direct_sum(
            QForm(qp, [[1, 0], [0, -1]], [qp.carrier.element((1,)), qp.carrier.element((-1,))]),
            hyperbolic(qp, 1),
        ),
    )

    def isotropic():
        from qwitt.qform import _lambda_square_constraint, _mu_constraints

        cons = list(_lambda_square_constraint(f8, 0) or [])
        cons += _mu_constraints(f8, qp.carrier.zero())
        return search.search_vectors(8, cons, 2, 1 << 30, 1 << 40, True)[1]

    # lagrangian search over a rank-4 anti-symmetric form
    f4 = direct_sum(full_metabolic(split), hyperbolic(split, 0))

    def lagrangian():
        return metabolic_search(f4, bound=3, use_obstructions=False).nodes

    # rank-2 metabolic form into two copies of an absorbing form
    eta = QForm(qm, [[0, 1], [-1, 0]], [qm.carrier.zero(), qm.carrier.element((1,))])
    target = direct_sum(hyperbolic(qm, 1), hyperbolic(qm, 1))

    def embed():
        return embedding_search(eta, target, bound=3).nodes

    return [
        ("isotropic vectors, rank 8, bound 2", isotropic),
        ("lagrangian search, rank 4, bound 3", lagrangian),
        ("embedding search, rank 2 -> 4, bound 3", embed),
    ]


def main():
    backends = search.available_backends()
    print(f"backends available: {', '.join(backends)}")
    rows = []
    for name, fn in workloads():
        row = {"workload": name}
        for bname, impl in backends.items():
            search.search_vectors = impl  # patch the dispatch point
            t0 = time.perf_counter()
            nodes = fn()
            dt = time.perf_counter() - t0
            row[bname] = (dt, nodes)
        rows.append(row)
    search.search_vectors = backends[search.BACKEND]
    width = max(len(r["workload"]) for r in rows)
    header = f"{'workload':<{width}}"
    for bname in backends:
        header += f"  {bname + ' [s]':>12}"
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for r in rows:
        line = f"{r['workload']:<{width}}"
        times = []
        for bname in backends:
            dt, nodes = r[bname]
            times.append(dt)
            line += f"  {dt:>12.4f}"
        if len(times) == 2 and times[1] > 0:
            line += f"  {times[0] / times[1]:>7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
