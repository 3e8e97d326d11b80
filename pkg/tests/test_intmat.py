import random

from qwitt._intmat import (
    SNF,
    determinant,
    identity,
    kernel_basis,
    mat_eq,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve,
    unimodular_inverse,
    xgcd,
)


def random_matrix(rng, m, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def is_unimodular(mat):
    return determinant(mat) in (1, -1)


def check_snf(mat):
    u, d, v = smith_normal_form(mat)
    assert mat_eq(mat_mul(mat_mul(u, mat), v), d)
    assert is_unimodular(u) and is_unimodular(v)
    m, n = len(mat), len(mat[0]) if mat else 0
    diag = [d[i][i] for i in range(min(m, n))]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0
    assert all(x >= 0 for x in diag)
    return diag


def test_snf_spec_examples():
    diag = check_snf([[2, 4], [6, 8]])
    assert diag == [2, 4]
    assert check_snf(identity(3)) == [1, 1, 1]
    assert check_snf([[0]]) == [0]


def test_snf_transform_inverses():
    rng = random.Random(1)
    for _ in range(60):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        s = SNF(random_matrix(rng, m, n))
        assert mat_eq(mat_mul(s.u, s.uinv), identity(m))
        assert mat_eq(mat_mul(s.vinv, s.v), identity(n))


def test_snf_random():
    rng = random.Random(2)
    for _ in range(120):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        check_snf(random_matrix(rng, m, n))


def test_determinant():
    assert determinant([[2, 0], [0, 3]]) == 6
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[0, 1], [1, 0]]) == -1
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        a = random_matrix(rng, n, n)
        b = random_matrix(rng, n, n)
        assert determinant(mat_mul(a, b)) == determinant(a) * determinant(b)


def test_solve_and_kernel():
    rng = random.Random(4)
    for _ in range(80):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        a = random_matrix(rng, m, n, -4, 4)
        x = [rng.randint(-3, 3) for _ in range(n)]
        b = mat_vec(a, x)
        got = solve(a, b)
        assert got is not None
        assert mat_vec(a, got) == b
        for col in kernel_basis(a):
            assert mat_vec(a, col) == [0] * m


def test_solve_unsolvable():
    assert solve([[2]], [1]) is None
    assert solve([[2, 0], [0, 2]], [1, 0]) is None


def test_unimodular_inverse():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 5)
        mat = identity(n)
        for _ in range(8):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                c = rng.randint(-2, 2)
                for r in range(n):
                    mat[r][j] += c * mat[r][i]
        inv = unimodular_inverse(mat)
        assert mat_eq(mat_mul(mat, inv), identity(n))


def test_xgcd():
    for a in range(-12, 13):
        for b in range(-12, 13):
            g, x, y = xgcd(a, b)
            assert g == abs(__import__("math").gcd(a, b))
            assert x * a + y * b == g
