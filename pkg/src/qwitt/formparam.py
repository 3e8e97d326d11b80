"""Quadratic form parameters over Z and their classification.

A form parameter is a triple (Q_e, h, p) with h: Q_e -> Z, p: Z -> Z -> Q_e
and hph = 2h, php = 2p.  Its symmetry is h(p(1)) - 1 in {+1, -1}.  Every
parameter splits as (standard indecomposable) + (abelian group); symmetry,
height and complement classify parameters up to isomorphism.

p is stored as the single element p(1); the full homomorphism n -> n*p(1)
is reconstructed on demand.  The symmetry is always computed, never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import inf
from typing import List, Optional, Tuple, Union

from .abelian import (
    TRIVIAL,
    Z,
    Z2,
    AbHom,
    FinAbGroup,
    GroupElement,
    cokernel_presentation,
    split_off_cyclic,
    split_off_free,
    split_off_hom_summand,
    subgroup,
)

__all__ = [
    "FormParameter",
    "FPMorphism",
    "SliceHom",
    "CosliceHom",
    "FPClassification",
    "MaximalSplitting",
    "standard",
    "parse_name",
    "split_sum",
    "linearisation",
    "quasi_wu",
    "maximal_splitting",
    "classify",
    "is_isomorphic",
    "height_of",
    "S_of",
    "morphism_from_slice",
    "es",
    "eql",
    "aut_generators",
    "initial_morphism",
    "terminal_morphism",
    "standard_morphism",
    "standard_name",
]

STANDARD_NAMES = ("Q+", "Q^+", "Q-", "Q^-", "ZP", "ZP_k", "ZL_k")


@dataclass(frozen=True)
class FormParameter:
    carrier: FinAbGroup
    h: AbHom
    p_one: GroupElement

    def __post_init__(self):
        if self.h.source != self.carrier or self.h.target != Z:
            raise ValueError("h must be a homomorphism carrier -> Z")
        if self.p_one.group != self.carrier:
            raise ValueError("p(1) must lie in the carrier")
        hp = self.h(self.p_one).coords[0]
        if hp not in (0, 2):
            raise ValueError(f"h(p(1)) = {hp}, expected 0 or 2")
        # p h p = 2p reduces to h(p(1)) * p(1) = 2 p(1)
        if hp * self.p_one != 2 * self.p_one:
            raise ValueError("p h p = 2p fails")
        # h p h = 2h on generators: h(x) * (h(p(1)) - 2) = 0
        if hp == 0 and not self.h.is_zero():
            raise ValueError("anti-symmetric parameter must have h = 0")

    @property
    def symmetry(self) -> int:
        return self.h(self.p_one).coords[0] - 1

    @property
    def is_symmetric(self) -> bool:
        return self.symmetry == 1

    def p(self, n: int) -> GroupElement:
        return n * self.p_one

    def h_of(self, x: GroupElement) -> int:
        return self.h(x).coords[0]

    def __repr__(self) -> str:
        return (
            f"FormParameter({self.carrier}, h={list(self.h.matrix[0]) if self.h.matrix else []},"
            f" p1={self.p_one})"
        )


@dataclass(frozen=True)
class FPMorphism:
    source: FormParameter
    target: FormParameter
    map: AbHom

    def __post_init__(self):
        if (
            self.map.source != self.source.carrier
            or self.map.target != self.target.carrier
        ):
            raise ValueError("carrier map does not match source/target")
        for i, g in enumerate(self.source.carrier.gens()):
            if self.target.h_of(self.map(g)) != self.source.h_of(g):
                raise ValueError(
                    f"h is not preserved on generator {i}"
                )
        if self.map(self.source.p_one) != self.target.p_one:
            raise ValueError("p(1) is not preserved")

    def __call__(self, x: GroupElement) -> GroupElement:
        return self.map(x)

    def compose(self, other: "FPMorphism") -> "FPMorphism":
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return FPMorphism(
            other.source, self.target, self.map.compose(other.map)
        )

    def is_isomorphism(self) -> bool:
        return self.map.is_isomorphism()

    def inverse(self) -> "FPMorphism":
        return FPMorphism(self.target, self.source, self.map.inverse())

    @classmethod
    def identity(cls, q: FormParameter) -> "FPMorphism":
        return cls(q, q, AbHom.identity(q.carrier))


@dataclass(frozen=True)
class SliceHom:
    """A homomorphism v: A -> Z2 (an object of the slice over Z2)."""

    domain: FinAbGroup
    v: AbHom

    def __post_init__(self):
        if self.v.source != self.domain or self.v.target != Z2:
            raise ValueError("expected a homomorphism domain -> Z2")

    def __call__(self, x: GroupElement) -> int:
        return self.v(x).coords[0]

    @property
    def is_zero(self) -> bool:
        return self.v.is_zero()


@dataclass(frozen=True)
class CosliceHom:
    """A homomorphism v': Z2 -> A, stored as the image v'(1) of order <= 2."""

    codomain: FinAbGroup
    v_one: GroupElement

    def __post_init__(self):
        if self.v_one.group != self.codomain:
            raise ValueError("v'(1) must lie in the codomain")
        if not (2 * self.v_one).is_zero:
            raise ValueError("v'(1) must have order dividing 2")

    @property
    def is_zero(self) -> bool:
        return self.v_one.is_zero


Height = Union[int, float]


@dataclass(frozen=True)
class FPClassification:
    symmetry: int
    height: Height
    complement: Tuple[int, ...]

    def __repr__(self) -> str:
        h = "inf" if self.height == inf else self.height
        return f"(sym={self.symmetry:+d}, ht={h}, G={list(self.complement)})"


@dataclass(frozen=True)
class MaximalSplitting:
    standard_kind: str
    k: Optional[int]  # level within the ZP_k / ZL_k families, else None
    standard: FormParameter
    complement: FinAbGroup
    iso: FPMorphism  # P -> standard + complement

    @property
    def split_parameter(self) -> FormParameter:
        return self.iso.target


def standard(name: str, k: Optional[int] = None) -> FormParameter:
    """Standard indecomposable parameters by name.

    ZP_k requires k >= 1, ZL_k requires k >= 2; plain "ZP" is the infinite
    member of the ZP family.  Composite names like "ZP_2" also parse.
    """
    if k is None and "_" in name:
        name, k = parse_name(name)
    if name == "Q+":
        return FormParameter(Z, AbHom(Z, Z, [[2]]), Z.element((1,)))
    if name == "Q^+":
        return FormParameter(Z, AbHom(Z, Z, [[1]]), Z.element((2,)))
    if name == "Q-":
        return FormParameter(Z2, AbHom.zero(Z2, Z), Z2.element((1,)))
    if name == "Q^-":
        return FormParameter(
            TRIVIAL, AbHom.zero(TRIVIAL, Z), TRIVIAL.zero()
        )
    if name == "ZP":
        g = FinAbGroup((0, 0))
        return FormParameter(g, AbHom(g, Z, [[1, 0]]), g.element((2, -1)))
    if name == "ZP_k":
        if k is None or k < 1:
            raise ValueError("ZP_k requires k >= 1")
        g = FinAbGroup((0, 2**k))
        return FormParameter(g, AbHom(g, Z, [[1, 0]]), g.element((2, -1)))
    if name == "ZL_k":
        if k is None or k < 2:
            raise ValueError("ZL_k requires k >= 2")
        g = FinAbGroup((2**k,))
        return FormParameter(
            g, AbHom.zero(g, Z), g.element((2 ** (k - 1),))
        )
    raise ValueError(f"unknown standard parameter {name!r}")


def parse_name(text: str) -> Tuple[str, Optional[int]]:
    if text in ("Q+", "Q^+", "Q-", "Q^-", "ZP"):
        return text, None
    for family in ("ZP", "ZL"):
        if text.startswith(family + "_"):
            return family + "_k", int(text[len(family) + 1 :])
    raise ValueError(f"unknown parameter name {text!r}")


def standard_name(kind: str, k: Optional[int]) -> str:
    if kind in ("ZP_k", "ZL_k"):
        return f"{kind[:2]}_{k}"
    return kind


def split_sum(q: FormParameter, g: FinAbGroup) -> FormParameter:
    """The split parameter Q + G: h extended by zero, p(1) in the Q block."""
    carrier = FinAbGroup(q.carrier.orders + g.orders)
    hrow = list(q.h.matrix[0]) + [0] * g.ngens
    p1 = carrier.element(tuple(q.p_one.coords) + (0,) * g.ngens)
    return FormParameter(carrier, AbHom(carrier, Z, [hrow]), p1)


@lru_cache(maxsize=None)
def linearisation(q: FormParameter) -> Tuple[FinAbGroup, AbHom]:
    """SQ = Q_e / <p(1)> with the quotient projection."""
    return cokernel_presentation([q.p_one], q.carrier)


def quasi_wu(q: FormParameter) -> Union[SliceHom, CosliceHom]:
    """v_Q: SQ -> Z2 induced by h (symmetric), or v'_Q: Z2 -> Q_e (anti)."""
    if q.is_symmetric:
        sq, proj = linearisation(q)
        cols = []
        for gen in sq.gens():
            lift = proj.solve(gen)
            assert lift is not None
            cols.append(Z2.element((q.h_of(lift),)))
        return SliceHom(sq, AbHom.from_columns(sq, Z2, cols))
    return CosliceHom(q.carrier, q.p_one)


def S_of(alpha: FPMorphism) -> AbHom:
    """The induced homomorphism on linearisations."""
    sp, proj_p = linearisation(alpha.source)
    sq, proj_q = linearisation(alpha.target)
    cols = []
    for gen in sp.gens():
        lift = proj_p.solve(gen)
        assert lift is not None
        cols.append(proj_q(alpha(lift)))
    return AbHom.from_columns(sp, sq, cols)


def morphism_from_slice(
    p: FormParameter, q: FormParameter, f: AbHom
) -> FPMorphism:
    """The unique morphism alpha: P -> Q with S(alpha) = f.

    Both parameters must be symmetric and f must satisfy v_Q o f = v_P.
    The carrier map is recovered through the pullback description of the
    carrier: alpha(x) is the unique element with h(alpha(x)) = h(x) and
    pi(alpha(x)) = f(pi(x)).
    """
    if not (p.is_symmetric and q.is_symmetric):
        raise ValueError("slice lifting requires symmetric parameters")
    sp, proj_p = linearisation(p)
    sq, proj_q = linearisation(q)
    if f.source != sp or f.target != sq:
        raise ValueError("map does not connect the linearisations")
    vp, vq = quasi_wu(p), quasi_wu(q)
    for gen in sp.gens():
        if vq(f(gen)) != vp(gen):
            raise ValueError("map is not a morphism of quasi-Wu classes")
    cols = []
    for gen in p.carrier.gens():
        u = proj_q.solve(f(proj_p(gen)))
        assert u is not None
        d = p.h_of(gen) - q.h_of(u)
        if d % 2:
            raise AssertionError("parity broke in the pullback lift")
        cols.append(u + q.p(d // 2))
    return FPMorphism(p, q, AbHom.from_columns(p.carrier, q.carrier, cols))


@lru_cache(maxsize=None)
def maximal_splitting(p: FormParameter) -> MaximalSplitting:
    """Split P as Q + G with Q standard indecomposable.

    Symmetric parameters are split through their quasi-Wu class v_P using
    the torsion/free summand lemmas; anti-symmetric ones through maximal
    2-divisibility of v'_P(1).  The returned isomorphism is verified.
    """
    if p.is_symmetric:
        ms = _split_symmetric(p)
    else:
        ms = _split_antisymmetric(p)
    if not ms.iso.is_isomorphism():
        raise AssertionError("maximal splitting produced a non-isomorphism")
    return ms


def _split_symmetric(p: FormParameter) -> MaximalSplitting:
    sp, proj = linearisation(p)
    v = quasi_wu(p)
    assert isinstance(v, SliceHom)
    if v.is_zero:
        comp = sp
        q0 = standard("Q+")
    else:
        tor_gens = [g for g, n in zip(sp.gens(), sp.orders) if n]
        if any(v(g) for g in tor_gens):
            g0, rest = split_off_hom_summand(sp, v.v)
            m = g0.order().bit_length() - 1  # order = 2^m
            kind, k = ("Q^+", None) if m == 1 else ("ZP_k", m - 1)
            q0 = standard(kind, k)
        else:
            # v lives on the free part: split it there, keep torsion in G
            free_idx = [i for i, n in enumerate(sp.orders) if n == 0]
            free = FinAbGroup(tuple(0 for _ in free_idx))
            vrow = [v.v.matrix[0][i] for i in free_idx]
            gf, restf = split_off_free(free, AbHom(free, Z2, [vrow]))

            def back(x):
                full = [0] * sp.ngens
                for pos, i in enumerate(free_idx):
                    full[i] = x.coords[pos]
                return sp.element(full)

            g0 = back(gf)
            rest = [back(x) for x in restf] + [
                g for g, n in zip(sp.gens(), sp.orders) if n
            ]
            kind, k = "ZP", None
            q0 = standard("ZP")
        comp, incl = subgroup(sp, rest)
        comp_gens = incl.columns()
        # slice iso f: SP -> SQ0 + comp in the basis (g0, comp_gens)
        basis = [g0] + comp_gens
        sq0, _ = linearisation(q0)
        tgt = FinAbGroup(sq0.orders + comp.orders)
        slice_cols = []
        from .abelian import member_coords

        for gen in sp.gens():
            coeff = member_coords(sp, basis, gen)
            assert coeff is not None
            slice_cols.append(tgt.element(coeff))
        f = AbHom.from_columns(sp, tgt, slice_cols)
        target = split_sum(q0, comp)
        glue = _glue_linearisation(q0, comp, target)
        iso = morphism_from_slice(p, target, glue.compose(f))
        return MaximalSplitting(kind, k, q0, comp, iso)
    # v = 0 branch: P = Q+ + SP, carrier map (h/2, pi)
    target = split_sum(q0, comp)
    cols = []
    for gen in p.carrier.gens():
        hval = p.h_of(gen)
        assert hval % 2 == 0
        img = proj(gen)
        cols.append(
            target.carrier.element((hval // 2,) + tuple(img.coords))
        )
    iso = FPMorphism(
        p, target, AbHom.from_columns(p.carrier, target.carrier, cols)
    )
    return MaximalSplitting("Q+", None, q0, comp, iso)


def _glue_linearisation(
    q0: FormParameter, comp: FinAbGroup, target: FormParameter
) -> AbHom:
    """The natural isomorphism SQ0 + G -> S(Q0 + G)."""
    sq0, proj0 = linearisation(q0)
    s_tgt, proj_t = linearisation(target)
    src = FinAbGroup(sq0.orders + comp.orders)
    cols = []
    for gen in sq0.gens():
        lift = proj0.solve(gen)
        assert lift is not None
        cols.append(
            proj_t(target.carrier.element(
                tuple(lift.coords) + (0,) * comp.ngens
            ))
        )
    for j in range(comp.ngens):
        e = [0] * target.carrier.ngens
        e[q0.carrier.ngens + j] = 1
        cols.append(proj_t(target.carrier.element(e)))
    return AbHom.from_columns(src, s_tgt, cols)


def _split_antisymmetric(p: FormParameter) -> MaximalSplitting:
    a = p.carrier
    if p.p_one.is_zero:
        comp, incl = subgroup(a, a.gens())
        q0 = standard("Q^-")
        target = split_sum(q0, comp)
        iso = FPMorphism(
            p,
            target,
            AbHom(a, target.carrier, [list(r) for r in incl.inverse().matrix], check=False),
        )
        return MaximalSplitting("Q^-", None, q0, comp, iso)
    h0, rest = split_off_cyclic(a, p.p_one)
    order = h0.order()  # 2^(l+1) with l the 2-divisibility exponent of p(1)
    if order == 2:
        kind, k, q0 = "Q-", None, standard("Q-")
    else:
        kind, k = "ZL_k", order.bit_length() - 1
        q0 = standard("ZL_k", k)
    comp, incl = subgroup(a, rest)
    basis = [h0] + incl.columns()
    target = split_sum(q0, comp)
    from .abelian import member_coords

    cols = []
    for gen in a.gens():
        coeff = member_coords(a, basis, gen)
        assert coeff is not None
        cols.append(target.carrier.element(coeff))
    iso = FPMorphism(p, target, AbHom.from_columns(a, target.carrier, cols))
    return MaximalSplitting(kind, k, q0, comp, iso)


_HEIGHTS = {
    "Q+": 0,
    "Q^-": 0,
    "Q^+": 1,
    "Q-": 1,
    "ZP": inf,
}


def height_of(kind: str, k: Optional[int]) -> Height:
    if kind in _HEIGHTS:
        return _HEIGHTS[kind]
    if kind == "ZP_k":
        return k + 1
    if kind == "ZL_k":
        return k  # ht(ZL_k) = (k - 1) + 1
    raise ValueError(kind)


def classify(p: FormParameter) -> FPClassification:
    ms = maximal_splitting(p)
    return FPClassification(
        p.symmetry,
        height_of(ms.standard_kind, ms.k),
        ms.complement.canonical_orders(),
    )


def is_isomorphic(p1: FormParameter, p2: FormParameter) -> bool:
    return classify(p1) == classify(p2)


def es(p: FormParameter) -> FPMorphism:
    """Extended symmetrisation P -> Q^+ + SP, carrier map (h, pi)."""
    if not p.is_symmetric:
        raise ValueError("extended symmetrisation needs a symmetric parameter")
    sp, proj = linearisation(p)
    target = split_sum(standard("Q^+"), sp)
    rows = [list(p.h.matrix[0])] + [list(r) for r in proj.matrix]
    return FPMorphism(p, target, AbHom(p.carrier, target.carrier, rows))


def eql(p: FormParameter) -> FPMorphism:
    """Extended quadratic lift Q- + P_e -> P, carrier map v' + Id."""
    if p.is_symmetric:
        raise ValueError("extended quadratic lift needs an anti-symmetric parameter")
    source = split_sum(standard("Q-"), p.carrier)
    cols = [p.p_one] + p.carrier.gens()
    return FPMorphism(
        source, p, AbHom.from_columns(source.carrier, p.carrier, cols)
    )


def initial_morphism(q: FormParameter) -> FPMorphism:
    """The unique morphism from Q_eps (eps = symmetry of q)."""
    if q.is_symmetric:
        src = standard("Q+")
        return FPMorphism(
            src, q, AbHom.from_columns(src.carrier, q.carrier, [q.p_one])
        )
    src = standard("Q-")
    return FPMorphism(
        src, q, AbHom.from_columns(src.carrier, q.carrier, [q.p_one])
    )


def terminal_morphism(q: FormParameter) -> FPMorphism:
    """The unique morphism to Q^eps."""
    if q.is_symmetric:
        tgt = standard("Q^+")
        return FPMorphism(
            q, tgt, AbHom(q.carrier, tgt.carrier, [list(q.h.matrix[0])])
        )
    tgt = standard("Q^-")
    return FPMorphism(q, tgt, AbHom(q.carrier, tgt.carrier, []))


def aut_generators(q: FormParameter) -> List[FPMorphism]:
    """Generators of Aut(Q) for a standard indecomposable parameter."""
    kind, k = _recognise_standard(q)
    c = q.carrier

    def from_matrix(m):
        return FPMorphism(q, q, AbHom(c, c, m))

    if kind in ("Q+", "Q^+", "Q-", "Q^-"):
        return []
    if kind == "ZP":
        return [from_matrix([[1, 0], [-1, -1]])]
    if kind == "ZP_k":
        beta = from_matrix([[1, 0], [-1, -1]])
        if k == 1:
            return [beta]
        return [beta, from_matrix([[1, 0], [1, 3]])]
    if kind == "ZL_k":
        gens = [from_matrix([[-1]])]
        if k >= 3:
            gens.append(from_matrix([[3]]))
        return gens
    raise ValueError(kind)


def _recognise_standard(q: FormParameter) -> Tuple[str, Optional[int]]:
    for kind in ("Q+", "Q^+", "Q-", "Q^-", "ZP"):
        if q == standard(kind):
            return kind, None
    for k in range(1, 64):
        if q.carrier.orders == (0, 2**k) and q == standard("ZP_k", k):
            return "ZP_k", k
    for k in range(2, 64):
        if q.carrier.orders == (2**k,) and q == standard("ZL_k", k):
            return "ZL_k", k
    raise ValueError("not a standard indecomposable parameter")


def standard_morphism(
    src_name: str, dst_name: str, n: int = 0
) -> FPMorphism:
    """Standard morphisms between indecomposables.

    For ZP_k -> ZP_l (k >= l, with k = 0 meaning the infinite member) the
    carrier map is [[1, 0], [n, 2n+1]]; the other arrows are the canonical
    initial/terminal ones.
    """
    skind, sk = parse_name(src_name)
    dkind, dk = parse_name(dst_name)
    src = standard(skind, sk)
    dst = standard(dkind, dk)
    if skind == "Q+":
        return FPMorphism(
            src, dst, AbHom.from_columns(src.carrier, dst.carrier, [dst.p_one])
        )
    if dkind == "Q^+" and skind in ("ZP", "ZP_k"):
        return FPMorphism(
            src, dst, AbHom(src.carrier, dst.carrier, [[1, 0]])
        )
    if skind in ("ZP", "ZP_k") and dkind in ("ZP", "ZP_k"):
        return FPMorphism(
            src,
            dst,
            AbHom(src.carrier, dst.carrier, [[1, 0], [n, 2 * n + 1]]),
        )
    if skind == "Q-":
        return initial_morphism(dst)
    if dkind == "Q^-":
        return terminal_morphism(src)
    if skind == "ZL_k" and dkind == "ZL_k":
        if dk < sk:
            raise ValueError("no morphisms ZL_k -> ZL_l with l < k")
        return FPMorphism(
            src,
            dst,
            AbHom(src.carrier, dst.carrier, [[2 ** (dk - sk)]]),
        )
    raise ValueError(f"no standard morphism {src_name} -> {dst_name}")
