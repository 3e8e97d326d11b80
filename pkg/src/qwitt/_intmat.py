"""Dense exact integer matrix routines: Smith normal form, solving, kernels.

Matrices are lists of row lists of Python ints.  Everything here is exact;
sizes stay small (rank <= ~60 in practice), so no effort is spent on
asymptotics beyond keeping SNF pivots small.
"""

from __future__ import annotations

from math import gcd
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy(mat: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in mat]


def shape(mat: Sequence[Sequence[int]]) -> Tuple[int, int]:
    return len(mat), len(mat[0]) if mat else 0


def transpose(mat: Sequence[Sequence[int]]) -> Matrix:
    m, n = shape(mat)
    return [[mat[i][j] for i in range(m)] for j in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    m, k = shape(a)
    k2, n = shape(b)
    if k != k2:
        raise ValueError(f"dimension mismatch {k} != {k2}")
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    if a and len(a[0]) != len(v):
        raise ValueError("dimension mismatch")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v: Sequence[int], a: Sequence[Sequence[int]]) -> List[int]:
    m, n = shape(a)
    if m != len(v):
        raise ValueError("dimension mismatch")
    return [sum(v[i] * a[i][j] for i in range(m)) for j in range(n)]


def mat_eq(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    return shape(a) == shape(b) and all(
        list(ra) == list(rb) for ra, rb in zip(a, b)
    )


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    m, n = shape(mat)
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = copy(mat)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class SNF:
    """Smith normal form with transforms: U @ A @ V == D.

    U, V are unimodular; D is diagonal with d1 | d2 | ... >= 0.  Uinv and
    Vinv are maintained alongside so presentations can be lifted back.
    """

    __slots__ = ("d", "u", "v", "uinv", "vinv", "rank")

    def __init__(self, mat: Sequence[Sequence[int]]):
        a = copy(mat)
        m, n = shape(a)
        self.u = identity(m)
        self.uinv = identity(m)
        self.v = identity(n)
        self.vinv = identity(n)
        self._reduce(a, m, n)
        self.d = a
        self.rank = sum(1 for i in range(min(m, n)) if a[i][i] != 0)

    # -- elementary operations, mirrored into the transforms ---------------

    def _swap_rows(self, a: Matrix, i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for row in self.uinv:
            row[i], row[j] = row[j], row[i]

    def _swap_cols(self, a: Matrix, i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def _add_row(self, a: Matrix, src: int, dst: int, c: int) -> None:
        # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        self.u[dst] = [x + c * y for x, y in zip(self.u[dst], self.u[src])]
        for row in self.uinv:
            row[src] -= c * row[dst]

    def _add_col(self, a: Matrix, src: int, dst: int, c: int) -> None:
        for row in a:
            row[dst] += c * row[src]
        for row in self.v:
            row[dst] += c * row[src]
        self.vinv[src] = [
            x - c * y for x, y in zip(self.vinv[src], self.vinv[dst])
        ]

    def _negate_row(self, a: Matrix, i: int) -> None:
        a[i] = [-x for x in a[i]]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.uinv:
            row[i] = -row[i]

    # -- main loop ----------------------------------------------------------

    def _pivot(self, a: Matrix, t: int, m: int, n: int):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(a[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
                    if x == 1:
                        return best[1], best[2]
        return None if best is None else (best[1], best[2])

    def _reduce(self, a: Matrix, m: int, n: int) -> None:
        t = 0
        while True:
            piv = self._pivot(a, t, m, n)
            if piv is None:
                break
            i, j = piv
            if i != t:
                self._swap_rows(a, t, i)
            if j != t:
                self._swap_cols(a, t, j)
            # clear row and column t; restart on any division remainder
            dirty = True
            while dirty:
                dirty = False
                p = a[t][t]
                for i in range(t + 1, m):
                    if a[i][t]:
                        q = a[i][t] // p
                        self._add_row(a, t, i, -q)
                        if a[i][t]:
                            self._swap_rows(a, t, i)
                            dirty = True
                            p = a[t][t]
                for j in range(t + 1, n):
                    if a[t][j]:
                        q = a[t][j] // p
                        self._add_col(a, t, j, -q)
                        if a[t][j]:
                            self._swap_cols(a, t, j)
                            dirty = True
                            p = a[t][t]
            if a[t][t] < 0:
                self._negate_row(a, t)
            # force divisibility of the remaining block by the pivot
            p = a[t][t]
            stained = False
            for i in range(t + 1, m):
                if any(x % p for x in a[i][t + 1:]):
                    self._add_row(a, i, t, 1)
                    stained = True
                    break
            if stained:
                continue
            t += 1


def smith_normal_form(
    mat: Sequence[Sequence[int]],
) -> Tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U @ mat @ V == D in Smith normal form."""
    s = SNF(mat)
    return s.u, s.d, s.v


def kernel_basis(mat: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis (as a list of vectors) of the integer kernel {x : mat @ x = 0}."""
    m, n = shape(mat)
    if n == 0:
        return []
    s = SNF(mat)
    return [[s.v[i][j] for i in range(n)] for j in range(s.rank, n)]


def solve(
    mat: Sequence[Sequence[int]], rhs: Sequence[int]
) -> Optional[List[int]]:
    """One integer solution x of mat @ x == rhs, or None."""
    m, n = shape(mat)
    if len(rhs) != m:
        raise ValueError("dimension mismatch")
    s = SNF(mat)
    c = mat_vec(s.u, list(rhs))
    z = [0] * n
    for i in range(min(m, n)):
        d = s.d[i][i]
        if d == 0:
            break
        if c[i] % d:
            return None
        z[i] = c[i] // d
    for i in range(s.rank, m):
        if c[i] != 0:
            return None
    return mat_vec(s.v, z)


def lattice_contains(
    basis_cols: Sequence[Sequence[int]], vec: Sequence[int]
) -> bool:
    """Whether vec lies in the lattice spanned by the given column vectors."""
    if not basis_cols:
        return not any(vec)
    mat = transpose(basis_cols)
    return solve(mat, vec) is not None


def unimodular_inverse(mat: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a matrix with determinant +-1."""
    s = SNF(mat)
    m, n = shape(mat)
    if m != n or s.rank != n or any(s.d[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    return mat_mul(s.v, s.u)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
