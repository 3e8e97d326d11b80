import random
from itertools import product
from math import inf

import pytest

from qwitt.abelian import TRIVIAL, Z, AbHom, FinAbGroup, subgroup_equal
from qwitt.formparam import (
    CosliceHom,
    FormParameter,
    FPMorphism,
    SliceHom,
    aut_generators,
    classify,
    eql,
    es,
    is_isomorphic,
    linearisation,
    maximal_splitting,
    morphism_from_slice,
    quasi_wu,
    S_of,
    split_sum,
    standard,
    standard_morphism,
)


ALL_STANDARD = (
    [standard(n) for n in ("Q+", "Q^+", "Q-", "Q^-", "ZP")]
    + [standard("ZP_k", k) for k in (1, 2, 3)]
    + [standard("ZL_k", k) for k in (2, 3)]
)


def test_standard_parameters():
    qp = standard("Q+")
    assert qp.carrier == Z and qp.h.matrix == ((2,),)
    assert qp.p_one.coords == (1,)
    assert qp.symmetry == 1

    zl3 = standard("ZL_3")
    assert zl3.carrier.orders == (8,)
    assert zl3.h.is_zero()
    assert zl3.p_one.coords == (4,)
    assert zl3.symmetry == -1

    qm = standard("Q^-")
    assert qm.carrier.is_trivial and qm.symmetry == -1

    zpk = standard("ZP_k", 2)
    assert zpk.carrier.orders == (0, 4)
    assert zpk.p_one.coords == (2, 3)


def test_invalid_parameters_rejected():
    with pytest.raises(ValueError):
        # h(p(1)) = 1 is not allowed
        FormParameter(Z, AbHom(Z, Z, [[1]]), Z.element((1,)))
    with pytest.raises(ValueError):
        # anti-symmetric with h != 0
        g = FinAbGroup((0,))
        FormParameter(g, AbHom(g, Z, [[1]]), g.zero())
    with pytest.raises(ValueError):
        standard("ZL_k", 1)
    with pytest.raises(ValueError):
        standard("ZP_k", 0)


def test_split_sum():
    p = split_sum(standard("Q-"), FinAbGroup((4,)))
    assert p.carrier.orders == (2, 4)
    assert p.h.is_zero()
    assert p.p_one.coords == (1, 0)

    assert split_sum(standard("Q^+"), TRIVIAL) == standard("Q^+")

    p = split_sum(standard("ZP_k", 1), FinAbGroup((3,)))
    assert p.carrier.orders == (0, 2, 3)


def test_linearisation():
    sq, proj = linearisation(standard("ZP"))
    assert sq.orders == (0,)
    assert proj.matrix == ((1, 2),)

    sq, _ = linearisation(standard("Q+"))
    assert sq.is_trivial

    for k in (1, 2, 3):
        sq, _ = linearisation(standard("ZP_k", k))
        assert sq.canonical_orders() == (2 ** (k + 1),)

    assert linearisation(standard("Q^+"))[0].orders == (2,)
    assert linearisation(standard("Q-"))[0].is_trivial
    assert linearisation(standard("ZL_k", 3))[0].canonical_orders() == (4,)


def test_quasi_wu_of_standards():
    v = quasi_wu(standard("ZP_k", 2))
    assert isinstance(v, SliceHom)
    assert v.domain.canonical_orders() == (8,)
    assert v(v.domain.gen(0)) == 1

    v = quasi_wu(standard("ZL_k", 2))
    assert isinstance(v, CosliceHom)
    assert v.codomain.orders == (4,)
    assert v.v_one.coords == (2,)

    v = quasi_wu(standard("Q^-"))
    assert isinstance(v, CosliceHom) and v.is_zero

    v = quasi_wu(standard("Q+"))
    assert isinstance(v, SliceHom) and v.domain.is_trivial

    v = quasi_wu(standard("ZP"))
    assert v.domain.orders == (0,) and v(v.domain.gen(0)) == 1


def test_wu_pullback_square():
    # (h, pi): Q_e -> {(z, y) : z = v(y) mod 2} is an isomorphism
    for q in ALL_STANDARD:
        if not q.is_symmetric:
            continue
        sq, proj = linearisation(q)
        v = quasi_wu(q)
        amb = FinAbGroup((0,) + sq.orders)
        pairs = [
            amb.element((q.h_of(g),) + proj(g).coords)
            for g in q.carrier.gens()
        ]
        fib_gens = [amb.element((2,) + (0,) * sq.ngens)]
        for i, gen in enumerate(sq.gens()):
            coords = [v(gen)] + [0] * sq.ngens
            coords[1 + i] = 1
            fib_gens.append(amb.element(coords))
        assert subgroup_equal(amb, pairs, fib_gens)


def test_maximal_splitting_examples():
    g = FinAbGroup((0, 3))
    p = FormParameter(g, AbHom(g, Z, [[1, 0]]), g.element((2, 1)))
    ms = maximal_splitting(p)
    assert ms.standard_kind == "Q^+"
    assert ms.complement.canonical_orders() == (3,)
    assert ms.iso.is_isomorphism()

    g8 = FinAbGroup((8,))
    p = FormParameter(g8, AbHom.zero(g8, Z), g8.element((4,)))
    ms = maximal_splitting(p)
    assert ms.standard_kind == "ZL_k" and ms.k == 3
    assert ms.complement.is_trivial

    p = split_sum(standard("ZP_k", 1), FinAbGroup((3,)))
    ms = maximal_splitting(p)
    assert (ms.standard_kind, ms.k) == ("ZP_k", 1)
    assert ms.complement.canonical_orders() == (3,)


def test_classify_examples():
    assert classify(standard("ZP_k", 2)) == classify(standard("ZP_2"))
    c = classify(standard("ZP_2"))
    assert (c.symmetry, c.height, c.complement) == (1, 3, ())

    c = classify(split_sum(standard("Q-"), FinAbGroup((5,))))
    assert (c.symmetry, c.height, c.complement) == (-1, 1, (5,))

    c = classify(standard("Q^-"))
    assert (c.symmetry, c.height, c.complement) == (-1, 0, ())

    assert classify(standard("ZP")).height == inf


def test_classification_complete_on_standards():
    for a, b in product(ALL_STANDARD, repeat=2):
        if a is b:
            assert is_isomorphic(a, b)
        else:
            assert is_isomorphic(a, b) == (classify(a) == classify(b))
    # distinct standards are pairwise non-isomorphic
    cls = [classify(q) for q in ALL_STANDARD]
    assert len(set(cls)) == len(cls)


def all_canonical_groups(n):
    out = [()]

    def rec(prefix, last):
        for d in range(max(2, last), n + 1):
            if last > 1 and d % last:
                continue
            prod = d
            for o in prefix:
                prod *= o
            if prod > n:
                continue
            out.append(prefix + (d,))
            rec(prefix + (d,), d)

    rec((), 1)
    return [FinAbGroup(o) for o in out]


def all_antisymmetric_parameters(lo, hi):
    """Every anti-symmetric parameter with carrier order in [lo, hi]:
    any finite group with any p(1) of order dividing 2 (h must vanish)."""
    ps = []
    for g in all_canonical_groups(hi):
        if (g.order() or 1) < lo:
            continue
        seen = set()
        for x in g.elements():
            if (2 * x).is_zero and x.coords not in seen:
                seen.add(x.coords)
                ps.append(FormParameter(g, AbHom.zero(g, Z), x))
    return ps


def span_size(group, gens):
    seen = {group.zero().coords}
    frontier = [group.zero()]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x + g
            if y.coords not in seen:
                seen.add(y.coords)
                frontier.append(y)
    return len(seen)


def brute_force_isomorphic(p1, p2):
    """Exhaustive search for a carrier isomorphism carrying p(1) to p(1).

    Depth-first over generator images, pruned by element orders, by
    partial span sizes, and by the p(1) constraint as soon as its support
    is assigned.  The pruning discards only assignments that cannot extend
    to an isomorphism, so a False answer is a proof of non-isomorphism.
    """
    c1, c2 = p1.carrier, p2.carrier
    if c1.order() != c2.order() or p1.p_one.order() != p2.p_one.order():
        return False
    n = c1.ngens
    if n == 0:
        return True
    order_idx = sorted(range(n), key=lambda j: (p1.p_one.coords[j] == 0, j))
    support_end = sum(1 for j in range(n) if p1.p_one.coords[j])
    if support_end == 0 and not p2.p_one.is_zero:
        return False
    elems = list(c2.elements())
    partial_sizes = [
        span_size(c1, [c1.gen(order_idx[t]) for t in range(d + 1)])
        for d in range(n)
    ]
    images = [None] * n

    def rec(d):
        if d == n:
            cols = [images[order_idx.index(j)] for j in range(n)]
            hom = AbHom.from_columns(c1, c2, cols)
            return hom(p1.p_one) == p2.p_one and hom.is_isomorphism()
        nj = c1.orders[order_idx[d]]
        for x in elems:
            if x.order() == 0 or nj % x.order():
                continue
            images[d] = x
            if span_size(c2, images[: d + 1]) != partial_sizes[d]:
                continue
            if d + 1 == support_end:
                acc = c2.zero()
                for t in range(d + 1):
                    acc = acc + p1.p_one.coords[order_idx[t]] * images[t]
                if acc != p2.p_one:
                    continue
            if rec(d + 1):
                return True
        images[d] = None
        return False

    return rec(0)


def test_classify_vs_brute_force_sweep():
    # all finite-carrier parameters of order <= 16, every same-order pair
    params = all_antisymmetric_parameters(1, 16)
    pairs = 0
    for i, p1 in enumerate(params):
        for p2 in params[i:]:
            if p1.carrier.order() != p2.carrier.order():
                continue
            pairs += 1
            assert is_isomorphic(p1, p2) == brute_force_isomorphic(p1, p2)
    assert pairs > 500


def test_classify_vs_brute_force_sampled_to_32():
    rng = random.Random(5)
    big = all_antisymmetric_parameters(17, 32)
    sampled = 0
    while sampled < 10:
        p1, p2 = rng.choice(big), rng.choice(big)
        if p1.carrier.order() != p2.carrier.order():
            continue
        sampled += 1
        assert is_isomorphic(p1, p2) == brute_force_isomorphic(p1, p2)


def test_morphism_validation_and_example():
    # the non-splittable example: ZP -> Q^+ + Z3
    src = standard("ZP")
    dst = split_sum(standard("Q^+"), FinAbGroup((3,)))
    alpha = FPMorphism(
        src, dst, AbHom(src.carrier, dst.carrier, [[1, 0], [1, 2]])
    )
    s = S_of(alpha)
    assert s.source.orders == (0,)

    with pytest.raises(ValueError):
        FPMorphism(
            src, dst, AbHom(src.carrier, dst.carrier, [[1, 1], [1, 2]])
        )

    # ZL_2 -> ZL_3 + Z2, [a] -> ([2a], [a])
    src = standard("ZL_2")
    dst = split_sum(standard("ZL_3"), FinAbGroup((2,)))
    FPMorphism(src, dst, AbHom(src.carrier, dst.carrier, [[2], [1]]))


def test_morphism_from_slice():
    # odd multiplications on S(ZP) lift to the matrices [[1, 0], [n, 2n+1]]
    zp = standard("ZP")
    szp, _ = linearisation(zp)
    for n in (-2, -1, 0, 1, 2):
        f = AbHom(szp, szp, [[2 * n + 1]])
        alpha = morphism_from_slice(zp, zp, f)
        assert alpha.map.matrix == ((1, 0), (n, 2 * n + 1))
        assert S_of(alpha).matrix == f.matrix

    # identity on v_{Q^+}
    qp = standard("Q^+")
    sq, _ = linearisation(qp)
    alpha = morphism_from_slice(qp, qp, AbHom.identity(sq))
    assert alpha.map.matrix == ((1,),)

    # the slice map of the standard surjection ZP_2 -> ZP_1 lifts back to it
    zp2, zp1 = standard("ZP_2"), standard("ZP_1")
    std = standard_morphism("ZP_2", "ZP_1", 0)
    f = S_of(std)
    alpha = morphism_from_slice(zp2, zp1, f)
    assert alpha.map.matrix == std.map.matrix
    # and any slice morphism lifts uniquely: S o lift = id on slice maps
    s2, _ = linearisation(zp2)
    s1, _ = linearisation(zp1)
    for c in (1, 3, 5, 7):
        g = AbHom(s2, s1, [[c]])
        try:
            lifted = morphism_from_slice(zp2, zp1, g)
        except ValueError:
            continue
        assert S_of(lifted).matrix == g.matrix


def test_S_of_functorial_on_quasi_wu():
    rng = random.Random(23)
    zp = standard("ZP")
    for n in (-2, 0, 3):
        alpha = standard_morphism("ZP", "ZP_2", n)
        sa = S_of(alpha)
        v_src = quasi_wu(alpha.source)
        v_dst = quasi_wu(alpha.target)
        for g in v_src.domain.gens():
            assert v_dst(sa(g)) == v_src(g)

    beta = standard_morphism("Q-", "ZL_3")
    assert beta(quasi_wu(beta.source).v_one) == quasi_wu(beta.target).v_one


def test_quasi_wu_functorial_on_random_morphisms():
    from qwitt.sampling import random_morphism

    rng = random.Random(29)
    for _ in range(20):
        alpha = random_morphism(rng)
        if alpha.source.is_symmetric:
            sa = S_of(alpha)
            v1, v2 = quasi_wu(alpha.source), quasi_wu(alpha.target)
            for g in v1.domain.gens():
                assert v2(sa(g)) == v1(g)
        else:
            v1, v2 = quasi_wu(alpha.source), quasi_wu(alpha.target)
            assert alpha(v1.v_one) == v2.v_one


def test_wu_pullback_square_random_parameters():
    from qwitt.abelian import subgroup_equal as sub_eq
    from qwitt.sampling import random_form_parameter

    rng = random.Random(37)
    for _ in range(15):
        q = random_form_parameter(rng, symmetric=True, max_torsion=8, max_free=1)
        sq, proj = linearisation(q)
        v = quasi_wu(q)
        amb = FinAbGroup((0,) + sq.orders)
        pairs = [
            amb.element((q.h_of(g),) + proj(g).coords)
            for g in q.carrier.gens()
        ]
        fib = [amb.element((2,) + (0,) * sq.ngens)]
        for i, gen in enumerate(sq.gens()):
            coords = [v(gen)] + [0] * sq.ngens
            coords[1 + i] = 1
            fib.append(amb.element(coords))
        assert sub_eq(amb, pairs, fib)


def test_es():
    zp = standard("ZP")
    m = es(zp)
    assert m.map.matrix == ((1, 0), (1, 2))

    qplus = standard("Q+")
    m = es(qplus)
    assert m.map.matrix == ((2,),)

    m = es(standard("Q^+"))
    assert m.map.matrix == ((1,), (1,))
    with pytest.raises(ValueError):
        es(standard("Q-"))


def test_eql():
    m = eql(standard("Q-"))
    assert m.map.matrix == ((1, 1),)

    m = eql(standard("ZL_2"))
    assert m.map.matrix == ((2, 1),)

    m = eql(standard("Q^-"))
    assert m.map.source.orders == (2,)
    assert m.map.target.is_trivial
    with pytest.raises(ValueError):
        eql(standard("Q+"))


def test_es_eql_natural():
    # (Id + S(alpha)) o es_P = es_P' o alpha, and dually for eql
    for name1, name2, n in [("ZP", "ZP_2", 1), ("ZP_3", "ZP_2", -1)]:
        alpha = standard_morphism(name1, name2, n)
        lhs_map = None
        e1, e2 = es(alpha.source), es(alpha.target)
        sa = S_of(alpha)
        for g in alpha.source.carrier.gens():
            left = e2(alpha(g))
            img = e1(g)
            # apply Id + S(alpha) on (Z, SP) coordinates
            z = img.coords[0]
            rest = img.group.element(img.coords)
            sp_part = sa(sa.source.element(img.coords[1:]))
            right = e2.target.carrier.element((z,) + sp_part.coords)
            assert left == right

    for name1, name2 in [("Q-", "ZL_2"), ("ZL_2", "ZL_3")]:
        alpha = standard_morphism(name1, name2)
        q1, q2 = eql(alpha.source), eql(alpha.target)
        for g in q1.source.carrier.gens():
            c = g.coords
            lifted = alpha(q1(g))
            pe2 = q2.source.carrier.element(
                (c[0],) + alpha(alpha.source.carrier.element(c[1:])).coords
            )
            assert q2(pe2) == lifted


def test_aut_generators():
    auts = aut_generators(standard("ZP"))
    assert len(auts) == 1
    assert auts[0].map.matrix == ((1, 0), (-1, -1))

    auts = aut_generators(standard("ZP_2"))
    assert [a.map.matrix for a in auts] == [
        ((1, 0), (3, 3)),
        ((1, 0), (1, 3)),
    ]

    assert aut_generators(standard("Q+")) == []
    assert len(aut_generators(standard("ZL_2"))) == 1
    assert len(aut_generators(standard("ZL_3"))) == 2
    with pytest.raises(ValueError):
        aut_generators(split_sum(standard("Q+"), FinAbGroup((2,))))


def test_aut_generators_are_automorphisms():
    for q in ALL_STANDARD:
        for a in aut_generators(q):
            assert a.is_isomorphism()
            assert a.source == a.target == q


def test_maximal_splitting_roundtrip_random():
    rng = random.Random(31)
    pool = [
        split_sum(q, FinAbGroup(o))
        for q in ALL_STANDARD
        for o in [(), (2,), (3,), (4, 2), (0,)]
    ]
    for p in pool:
        ms = maximal_splitting(p)
        assert ms.iso.is_isomorphism()
        back = ms.iso.inverse()
        assert back.compose(ms.iso).map.matrix == AbHom.identity(p.carrier).matrix
        assert is_isomorphic(p, ms.split_parameter)
