# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _search_py.search_vectors.

Same contract and enumeration order; coordinates, bounds and constraint
coefficients stay far below 64-bit limits for the ranks this library
handles (rank <= ~16, |entries| <= ~50), so plain C arithmetic is safe.
"""

from libc.stdlib cimport free, malloc

BACKEND = "c"


def search_vectors(
    int n,
    constraints,
    int bound,
    long max_results,
    long max_nodes,
    bint normalize_first_positive=False,
):
    if n == 0:
        ok = all((c % m == 0) if m else (c == 0) for _, _, c, m in constraints)
        return ([()] if ok else []), 1, True

    cdef int ncons = len(constraints)
    cdef long long *s = <long long *> malloc(ncons * n * n * sizeof(long long))
    cdef long long *lin = <long long *> malloc(ncons * n * sizeof(long long))
    cdef long long *cst = <long long *> malloc(ncons * sizeof(long long))
    cdef long long *mod = <long long *> malloc(ncons * sizeof(long long))
    cdef long long *values = <long long *> malloc(ncons * (n + 1) * sizeof(long long))
    cdef long long *x = <long long *> malloc(n * sizeof(long long))
    if not (s and lin and cst and mod and values and x):
        raise MemoryError()

    cdef int k, i, j
    try:
        for k, (a, l, c, m) in enumerate(constraints):
            for i in range(n):
                for j in range(n):
                    s[k * n * n + i * n + j] = 0
            for i in range(n):
                s[k * n * n + i * n + i] = a[i][i]
                for j in range(i + 1, n):
                    s[k * n * n + i * n + j] = a[i][j] + a[j][i]
                lin[k * n + i] = l[i]
            cst[k] = c
            mod[k] = m
            values[k * (n + 1)] = c

        results = []
        nodes, exhausted = _rec(
            0, n, ncons, s, lin, cst, mod, values, x,
            bound, max_results, max_nodes, normalize_first_positive, results,
        )
        return results, nodes, exhausted
    finally:
        free(s)
        free(lin)
        free(cst)
        free(mod)
        free(values)
        free(x)


cdef tuple _rec(
    int start_depth,
    int n,
    int ncons,
    long long *s,
    long long *lin,
    long long *cst,
    long long *mod,
    long long *values,
    long long *x,
    int bound,
    long max_results,
    long max_nodes,
    bint norm,
    list results,
):
    cdef long nodes = 0
    cdef bint exhausted = True
    cdef bint keep = True
    _search(
        start_depth, n, ncons, s, lin, cst, mod, values, x, bound,
        max_results, max_nodes, norm, results, &nodes, &exhausted,
    )
    return nodes, exhausted


cdef bint _search(
    int d,
    int n,
    int ncons,
    long long *s,
    long long *lin,
    long long *cst,
    long long *mod,
    long long *values,
    long long *x,
    int bound,
    long max_results,
    long max_nodes,
    bint norm,
    list results,
    long *nodes,
    bint *exhausted,
):
    cdef int k, i, j, e
    cdef long long v, lo, hi, coef, t, q, linval
    cdef long long b2 = <long long> bound * bound
    cdef int val
    if d == n:
        for k in range(ncons):
            v = values[k * (n + 1) + n]
            if mod[k]:
                if v % mod[k] != 0:
                    return True
            elif v != 0:
                return True
        if norm:
            for i in range(n):
                if x[i]:
                    if x[i] < 0:
                        return True
                    break
        results.append(tuple(x[i] for i in range(n)))
        if len(results) >= max_results:
            exhausted[0] = False
            return False
        return True
    for k in range(ncons):
        if mod[k] == 0:
            lo = 0
            hi = 0
            for j in range(d, n):
                coef = lin[k * n + j]
                for i in range(d):
                    coef += s[k * n * n + i * n + j] * x[i]
                t = coef if coef >= 0 else -coef
                t *= bound
                lo -= t
                hi += t
                q = s[k * n * n + j * n + j] * b2
                if q > 0:
                    hi += q
                else:
                    lo += q
                for i in range(d, j):
                    t = s[k * n * n + i * n + j]
                    if t < 0:
                        t = -t
                    t *= b2
                    lo -= t
                    hi += t
            v = values[k * (n + 1) + d]
            if v + lo > 0 or v + hi < 0:
                return True
    for val in range(-bound, bound + 1):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            exhausted[0] = False
            return False
        x[d] = val
        for k in range(ncons):
            linval = lin[k * n + d]
            for i in range(d):
                linval += s[k * n * n + i * n + d] * x[i]
            values[k * (n + 1) + d + 1] = (
                values[k * (n + 1) + d]
                + s[k * n * n + d * n + d] * <long long> val * val
                + linval * val
            )
        if not _search(
            d + 1, n, ncons, s, lin, cst, mod, values, x, bound,
            max_results, max_nodes, norm, results, nodes, exhausted,
        ):
            x[d] = 0
            return False
    x[d] = 0
    return True
