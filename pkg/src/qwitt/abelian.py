"""Finitely generated abelian groups, homomorphisms, and summand splitting.

A group is a fixed direct sum of cyclic factors: order 0 encodes an infinite
cyclic factor, n >= 2 a finite one (order-1 factors are rejected).  Canonical
form is the ascending invariant-factor chain d1 | d2 | ... followed by the
free factors; two groups are isomorphic iff their canonical forms coincide.

Elements carry one coordinate per factor, reduced into [0, n) on finite
factors.  Homomorphisms are integer matrices whose column j is the image of
source generator j in target coordinates.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterator, List, Optional, Sequence, Tuple

from . import _intmat
from ._intmat import Matrix

__all__ = [
    "FinAbGroup",
    "GroupElement",
    "AbHom",
    "Splitting",
    "Z",
    "Z2",
    "TRIVIAL",
    "snf",
    "cokernel_presentation",
    "kernel",
    "image",
    "subgroup",
    "subgroup_equal",
    "tensor",
    "tensor_with_generators",
    "direct_sum",
    "split_off_hom_summand",
    "split_off_free",
    "split_off_cyclic",
]


def _factorint(n: int) -> dict:
    out: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class FinAbGroup:
    """Direct sum of cyclic groups with a fixed factor ordering."""

    orders: Tuple[int, ...]

    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(n) for n in orders)
        if any(n < 0 or n == 1 for n in orders):
            raise ValueError(f"invalid cyclic orders {orders}")
        object.__setattr__(self, "orders", orders)

    # -- structure -----------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.orders)

    @property
    def free_rank(self) -> int:
        return sum(1 for n in self.orders if n == 0)

    @property
    def torsion_orders(self) -> Tuple[int, ...]:
        return tuple(n for n in self.orders if n)

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Optional[int]:
        """Group order, or None if infinite."""
        if not self.is_finite:
            return None
        out = 1
        for n in self.orders:
            out *= n
        return out

    def exponent(self) -> int:
        return lcm(*self.torsion_orders) if self.torsion_orders else 1

    def canonical_orders(self) -> Tuple[int, ...]:
        """Ascending invariant factors, then zeros for the free part."""
        primes: dict = {}
        for n in self.torsion_orders:
            for p, e in _factorint(n).items():
                primes.setdefault(p, []).append(e)
        depth = max((len(es) for es in primes.values()), default=0)
        factors = []
        for i in range(depth):
            # i-th largest power of each prime recombine into one factor
            d = 1
            for p, es in sorted(primes.items()):
                chain = sorted(es, reverse=True)
                if i < len(chain):
                    d *= p ** chain[i]
            factors.append(d)
        factors.sort()
        return tuple(factors) + (0,) * self.free_rank

    def canonical(self) -> "FinAbGroup":
        return FinAbGroup(self.canonical_orders())

    @property
    def is_canonical(self) -> bool:
        return self.orders == self.canonical_orders()

    def is_isomorphic(self, other: "FinAbGroup") -> bool:
        return self.canonical_orders() == other.canonical_orders()

    # -- elements ------------------------------------------------------------

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.ngens)

    def gen(self, i: int) -> "GroupElement":
        c = [0] * self.ngens
        c[i] = 1
        return self.element(c)

    def gens(self) -> List["GroupElement"]:
        return [self.gen(i) for i in range(self.ngens)]

    def elements(self) -> Iterator["GroupElement"]:
        """All elements; only valid for finite groups."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        coords = [0] * self.ngens
        while True:
            yield self.element(coords)
            i = 0
            while i < self.ngens:
                coords[i] += 1
                if coords[i] < self.orders[i]:
                    break
                coords[i] = 0
                i += 1
            else:
                return

    def relation_columns(self) -> List[List[int]]:
        """Columns n_i * e_i over the finite factors (the defining relations)."""
        cols = []
        for i, n in enumerate(self.orders):
            if n:
                col = [0] * self.ngens
                col[i] = n
                cols.append(col)
        return cols

    def reduce_coords(self, coords: Sequence[int]) -> Tuple[int, ...]:
        if len(coords) != self.ngens:
            raise ValueError(
                f"expected {self.ngens} coordinates, got {len(coords)}"
            )
        return tuple(
            c % n if n else c for c, n in zip(coords, self.orders)
        )

    def __repr__(self) -> str:
        if not self.orders:
            return "0"
        return " + ".join("Z" if n == 0 else f"Z{n}" for n in self.orders)


Z = FinAbGroup((0,))
Z2 = FinAbGroup((2,))
TRIVIAL = FinAbGroup(())


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup
    coords: Tuple[int, ...]

    def __init__(self, group: FinAbGroup, coords: Sequence[int]):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coords", group.reduce_coords(coords))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return GroupElement(
            self.group, [a + b for a, b in zip(self.coords, other.coords)]
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, [-a for a in self.coords])

    def __rmul__(self, n: int) -> "GroupElement":
        return GroupElement(self.group, [n * a for a in self.coords])

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        """Element order; 0 means infinite."""
        t = 1
        for c, n in zip(self.coords, self.group.orders):
            if n == 0:
                if c:
                    return 0
            elif c:
                t = lcm(t, n // gcd(n, c))
        return t

    def __repr__(self) -> str:
        return f"({', '.join(map(str, self.coords))})"


@dataclass(frozen=True)
class AbHom:
    """Homomorphism given on generators; column j = image of source gen j."""

    source: FinAbGroup
    target: FinAbGroup
    matrix: Tuple[Tuple[int, ...], ...]

    def __init__(
        self,
        source: FinAbGroup,
        target: FinAbGroup,
        matrix: Sequence[Sequence[int]],
        check: bool = True,
    ):
        rows = tuple(tuple(int(x) for x in r) for r in matrix)
        if len(rows) != target.ngens or any(
            len(r) != source.ngens for r in rows
        ):
            raise ValueError("matrix shape does not match source/target")
        # reduce entries into target coordinates
        red = []
        for i, row in enumerate(rows):
            n = target.orders[i]
            red.append(tuple(x % n if n else x for x in row))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", tuple(red))
        if check:
            self._check_well_defined()

    def _check_well_defined(self) -> None:
        for j, n in enumerate(self.source.orders):
            if n == 0:
                continue
            img = self.target.element([n * row[j] for row in self.matrix])
            if not img.is_zero:
                raise ValueError(
                    f"not a homomorphism: {n} * (image of generator {j}) != 0"
                )

    @classmethod
    def from_columns(
        cls,
        source: FinAbGroup,
        target: FinAbGroup,
        cols: Sequence[GroupElement],
    ) -> "AbHom":
        if len(cols) != source.ngens:
            raise ValueError("one column per source generator required")
        mat = [[col.coords[i] for col in cols] for i in range(target.ngens)]
        return cls(source, target, mat)

    @classmethod
    def zero(cls, source: FinAbGroup, target: FinAbGroup) -> "AbHom":
        return cls(
            source, target, _intmat.zeros(target.ngens, source.ngens)
        )

    @classmethod
    def identity(cls, group: FinAbGroup) -> "AbHom":
        return cls(group, group, _intmat.identity(group.ngens))

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.group != self.source:
            raise ValueError("element not in the source group")
        return self.target.element(
            _intmat.mat_vec([list(r) for r in self.matrix], list(x.coords))
        )

    def compose(self, other: "AbHom") -> "AbHom":
        """self after other."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        if 0 in (
            self.source.ngens,
            self.target.ngens,
            other.source.ngens,
        ):
            # empty matrices drop their dimensions; rebuild the zero map
            return AbHom.zero(other.source, self.target)
        prod = _intmat.mat_mul(
            [list(r) for r in self.matrix], [list(r) for r in other.matrix]
        )
        return AbHom(other.source, self.target, prod, check=False)

    def columns(self) -> List[GroupElement]:
        return [
            self.target.element([row[j] for row in self.matrix])
            for j in range(self.source.ngens)
        ]

    def solve(self, y: GroupElement) -> Optional[GroupElement]:
        """Some x with self(x) == y, or None."""
        if y.group != self.target:
            raise ValueError("element not in the target group")
        mat = [list(r) for r in self.matrix]
        rel = self.target.relation_columns()
        aug = [
            mat[i] + [col[i] for col in rel]
            for i in range(self.target.ngens)
        ]
        if self.target.ngens == 0:
            return self.source.zero()
        sol = _intmat.solve(aug, list(y.coords))
        if sol is None:
            return None
        return self.source.element(sol[: self.source.ngens])

    def is_zero(self) -> bool:
        return all(not any(r) for r in self.matrix)

    def is_surjective(self) -> bool:
        g, _ = cokernel_presentation(self.columns(), self.target)
        return g.is_trivial

    def is_injective(self) -> bool:
        k, _ = kernel(self)
        return k.is_trivial

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def inverse(self) -> "AbHom":
        cols = []
        for t in self.target.gens():
            x = self.solve(t)
            if x is None:
                raise ValueError("not invertible")
            cols.append(x)
        inv = AbHom.from_columns(self.target, self.source, cols)
        for g in self.source.gens():
            if inv(self(g)) != g:
                raise ValueError("not invertible")
        return inv

    def __repr__(self) -> str:
        return f"AbHom({self.source} -> {self.target}, {list(map(list, self.matrix))})"


@dataclass(frozen=True)
class Splitting:
    """A direct-sum decomposition of a group into two generating families.

    On construction it is verified that the union generates and that the
    two spans meet trivially (rank/order bookkeeping through SNF)."""

    group: FinAbGroup
    summand_a: Tuple[GroupElement, ...]
    summand_b: Tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "summand_a", tuple(self.summand_a))
        object.__setattr__(self, "summand_b", tuple(self.summand_b))
        ka, incl_a = subgroup(self.group, list(self.summand_a))
        kb, incl_b = subgroup(self.group, list(self.summand_b))
        joint = AbHom(
            direct_sum(ka, kb),
            self.group,
            [
                list(ra) + list(rb)
                for ra, rb in zip(incl_a.matrix, incl_b.matrix)
            ],
            check=False,
        )
        if not joint.is_injective():
            raise ValueError("the two summands intersect non-trivially")
        if not joint.is_surjective():
            raise ValueError("the summands do not generate the group")


def snf(mat: Sequence[Sequence[int]]):
    """Smith normal form (U, D, V) with U @ mat @ V = D, d1 | d2 | ..."""
    return _intmat.smith_normal_form(mat)


def _presentation_from_relations(
    ngens: int, rel_cols: Sequence[Sequence[int]]
) -> Tuple[FinAbGroup, Matrix, Matrix]:
    """Cokernel Z^ngens / <rel_cols>.

    Returns (group, proj, lift): proj maps ambient coordinates to group
    coordinates, lift maps group generators back to ambient coordinates
    (a section of proj).
    """
    if ngens == 0:
        return TRIVIAL, [], []
    if not rel_cols:
        rel = [[0] for _ in range(ngens)]
    else:
        rel = [[col[i] for col in rel_cols] for i in range(ngens)]
    s = _intmat.SNF(rel)
    ds = [s.d[i][i] for i in range(s.rank)]
    kept = [i for i in range(s.rank) if ds[i] >= 2] + list(
        range(s.rank, ngens)
    )
    orders = [ds[i] if i < s.rank else 0 for i in kept]
    # sign-normalise free rows of the projection
    uinv_t = _intmat.transpose(s.uinv)
    proj_rows = []
    lift_cols = []
    for pos, i in enumerate(kept):
        row = list(s.u[i])
        col = list(uinv_t[i])
        if orders[pos] == 0:
            first = next((x for x in row if x), 0)
            if first < 0:
                row = [-x for x in row]
                col = [-x for x in col]
        proj_rows.append(row)
        lift_cols.append(col)
    group = FinAbGroup(orders)
    proj = [
        [x % n if n else x for x in row]
        for row, n in zip(proj_rows, group.orders)
    ]
    lift = _intmat.transpose(lift_cols)
    return group, proj, lift


def cokernel_presentation(
    relations: Sequence[GroupElement], ambient: FinAbGroup
) -> Tuple[FinAbGroup, AbHom]:
    """Quotient of ambient by the subgroup generated by the relations.

    The projection is surjective and kills exactly the relation span.
    """
    cols = [list(r.coords) for r in relations]
    for r in relations:
        if r.group != ambient:
            raise ValueError("relation outside the ambient group")
    cols += ambient.relation_columns()
    group, proj, _ = _presentation_from_relations(ambient.ngens, cols)
    if ambient.ngens == 0:
        return group, AbHom(ambient, group, [])
    return group, AbHom(ambient, group, proj, check=False)


def quotient_with_lift(
    relations: Sequence[GroupElement], ambient: FinAbGroup
) -> Tuple[FinAbGroup, AbHom, Matrix]:
    """cokernel_presentation plus an integer lift of each quotient generator."""
    cols = [list(r.coords) for r in relations] + ambient.relation_columns()
    group, proj, lift = _presentation_from_relations(ambient.ngens, cols)
    hom = AbHom(ambient, group, proj, check=False)
    return group, hom, lift


def kernel(f: AbHom) -> Tuple[FinAbGroup, AbHom]:
    """Kernel subgroup with its inclusion into the source."""
    a, b = f.source, f.target
    if b.ngens == 0 or f.is_zero():
        return a.canonical(), _canonical_iso(a)[1]
    mat = [list(r) for r in f.matrix]
    rel = b.relation_columns()
    aug = [mat[i] + [col[i] for col in rel] for i in range(b.ngens)]
    ker = _intmat.kernel_basis(aug)
    gens = [a.element(v[: a.ngens]) for v in ker]
    return subgroup(a, gens)


def image(f: AbHom) -> Tuple[FinAbGroup, AbHom]:
    return subgroup(f.target, f.columns())


def subgroup(
    ambient: FinAbGroup, gens: Sequence[GroupElement]
) -> Tuple[FinAbGroup, AbHom]:
    """Canonical form of the subgroup generated by gens, with inclusion."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return TRIVIAL, AbHom(TRIVIAL, ambient, [[] for _ in ambient.orders])
    for g in gens:
        if g.group != ambient:
            raise ValueError("generator outside the ambient group")
    s = len(gens)
    gmat = [[g.coords[i] for g in gens] for i in range(ambient.ngens)]
    rel = ambient.relation_columns()
    aug = [gmat[i] + [c[i] for c in rel] for i in range(ambient.ngens)]
    lat = _intmat.kernel_basis(aug)
    rel_cols = [v[:s] for v in lat]
    grp, _, lift = _presentation_from_relations(s, rel_cols)
    # inclusion: generator i of grp = sum_j lift[j][i] * gens[j]
    cols = []
    for i in range(grp.ngens):
        acc = ambient.zero()
        for j in range(s):
            acc = acc + lift[j][i] * gens[j]
        cols.append(acc)
    return grp, AbHom.from_columns(grp, ambient, cols)


def member_coords(
    ambient: FinAbGroup, gens: Sequence[GroupElement], x: GroupElement
) -> Optional[List[int]]:
    """Coefficients expressing x in terms of gens inside ambient, or None."""
    s = len(gens)
    if s == 0:
        return [] if x.is_zero else None
    gmat = [[g.coords[i] for g in gens] for i in range(ambient.ngens)]
    rel = ambient.relation_columns()
    aug = [gmat[i] + [c[i] for c in rel] for i in range(ambient.ngens)]
    sol = _intmat.solve(aug, list(x.coords))
    return None if sol is None else sol[:s]


def subgroup_contains(
    ambient: FinAbGroup, gens: Sequence[GroupElement], x: GroupElement
) -> bool:
    return member_coords(ambient, gens, x) is not None


def subgroup_equal(
    ambient: FinAbGroup,
    gens_a: Sequence[GroupElement],
    gens_b: Sequence[GroupElement],
) -> bool:
    return all(subgroup_contains(ambient, gens_b, g) for g in gens_a) and all(
        subgroup_contains(ambient, gens_a, g) for g in gens_b
    )


def _canonical_iso(group: FinAbGroup) -> Tuple[FinAbGroup, AbHom]:
    """The canonical-form copy of group together with an iso from it."""
    return subgroup(group, group.gens())


def direct_sum(a: FinAbGroup, b: FinAbGroup) -> FinAbGroup:
    return FinAbGroup(a.orders + b.orders)


def tensor(g: FinAbGroup, h: FinAbGroup) -> FinAbGroup:
    """Canonical form of the (ordinary) tensor product."""
    grp, _ = tensor_with_generators(g, h)
    return grp


def tensor_with_generators(
    g: FinAbGroup, h: FinAbGroup
) -> Tuple[FinAbGroup, List[List[GroupElement]]]:
    """G (x) H plus the image of each generator pair g_i (x) h_j.

    The pair g_i (x) h_j spans a cyclic factor of order gcd(n_i, m_j); the
    result is the canonical form of the direct sum of those factors.
    """
    orders = []
    pairs = []
    for i, n in enumerate(g.orders):
        for j, m in enumerate(h.orders):
            orders.append(gcd(n, m))
            pairs.append((i, j))
    keep = [k for k, o in enumerate(orders) if o != 1]
    raw = FinAbGroup([orders[k] for k in keep])
    canon, iso = _canonical_iso(raw)
    to_canon = iso.inverse() if not raw.is_trivial else AbHom(raw, canon, [])
    genmap: List[List[GroupElement]] = [
        [canon.zero()] * h.ngens for _ in range(g.ngens)
    ]
    for pos, k in enumerate(keep):
        i, j = pairs[k]
        genmap[i][j] = to_canon(raw.gen(pos))
    return canon, genmap


# -- summand splitting -------------------------------------------------------


def _torsion_elements(group: FinAbGroup) -> Iterator[GroupElement]:
    idx = [i for i, n in enumerate(group.orders) if n]
    sizes = [group.orders[i] for i in idx]
    total = 1
    for n in sizes:
        total *= n
    if total > 1 << 22:
        raise ValueError("torsion subgroup too large to enumerate")
    coords = [0] * len(idx)
    for _ in range(total):
        full = [0] * group.ngens
        for pos, i in enumerate(idx):
            full[i] = coords[pos]
        yield group.element(full)
        for pos in range(len(idx)):
            coords[pos] += 1
            if coords[pos] < sizes[pos]:
                break
            coords[pos] = 0


def _verify_direct_sum(
    group: FinAbGroup, g: GroupElement, comp: Sequence[GroupElement]
) -> None:
    parts = FinAbGroup(
        tuple([g.order()]) + tuple(y.order() for y in comp)
    )
    iso = AbHom.from_columns(parts, group, [g, *comp])
    if not iso.is_isomorphism():
        raise AssertionError("claimed summand decomposition is not direct")


def split_off_hom_summand(
    group: FinAbGroup, f: AbHom
) -> Tuple[GroupElement, List[GroupElement]]:
    """Split G = <g> + <H> with f(g) = 1, H inside Ker(f), g of minimal
    2-power order among torsion elements mapping to 1.

    f must be a homomorphism to Z2 that is non-zero on the torsion subgroup.
    """
    if f.target.orders != (2,):
        raise ValueError("expected a homomorphism to Z2")
    candidates = [
        x
        for x in _torsion_elements(group)
        if f(x).coords[0] == 1
    ]
    if not candidates:
        raise ValueError("homomorphism vanishes on the torsion subgroup")
    a = min(x.order() for x in candidates)
    if a & (a - 1):
        raise AssertionError(f"minimal order {a} is not a power of 2")
    g = min(
        (x for x in candidates if x.order() == a), key=lambda x: x.coords
    )
    quot, proj, lift = quotient_with_lift([g], group)
    comp: List[GroupElement] = []
    for i in range(quot.ngens):
        r = quot.orders[i]
        z = group.element([lift[j][i] for j in range(group.ngens)])
        if r == 0:
            y = z if f(z).coords[0] == 0 else z + g
        else:
            rz = r * z
            s = _dlog_in_cyclic(g, a, rz)
            # want y = z - t*g with r*t = s (mod a) and t = f(z) (mod 2)
            t = _solve_two_congruences(r, s, a, f(z).coords[0])
            y = z - t * g
        if f(y).coords[0] != 0 or (r and not (r * y).is_zero):
            raise AssertionError("complement generator adjustment failed")
        comp.append(y)
    _verify_direct_sum(group, g, comp)
    return g, comp


def _dlog_in_cyclic(g: GroupElement, order: int, x: GroupElement) -> int:
    for s in range(order):
        if (s * g) == x:
            return s
    raise AssertionError("element not in the cyclic subgroup")


def _solve_two_congruences(r: int, s: int, a: int, parity: int) -> int:
    for t in range(2 * a):
        if (r * t - s) % a == 0 and t % 2 == parity:
            return t
    raise AssertionError(
        f"no t with {r}*t = {s} (mod {a}) and t = {parity} (mod 2)"
    )


def split_off_free(
    group: FinAbGroup, f: AbHom
) -> Tuple[GroupElement, List[GroupElement]]:
    """Split a free group as <g> + <H> with f(g) = 1, H in Ker(f)."""
    if any(group.orders):
        raise ValueError("group is not free")
    if f.target.orders != (2,):
        raise ValueError("expected a homomorphism to Z2")
    vals = [f(x).coords[0] for x in group.gens()]
    if not any(vals):
        raise ValueError("homomorphism is zero")
    pivot = vals.index(1)
    g = group.gen(pivot)
    comp = []
    for i, v in enumerate(vals):
        if i == pivot:
            continue
        x = group.gen(i)
        comp.append(x + g if v else x)
    _verify_direct_sum(group, g, comp)
    return g, comp


def split_off_cyclic(
    group: FinAbGroup, g: GroupElement
) -> Tuple[GroupElement, List[GroupElement]]:
    """Write g = p^a * h with a maximal; <h> is then a direct summand.

    g must have prime order.  Returns h and generators of a complement.
    """
    p = g.order()
    if p == 0 or _factorint(p) != {p: 1}:
        raise ValueError(f"element order {p} is not prime")
    a = 0
    h = g
    while True:
        cand = _divide_by(group, g, p ** (a + 1))
        if cand is None:
            break
        a += 1
        h = cand
    order_h = p ** (a + 1)
    quot, proj, lift = quotient_with_lift([h], group)
    comp: List[GroupElement] = []
    for i in range(quot.ngens):
        r = quot.orders[i]
        z = group.element([lift[j][i] for j in range(group.ngens)])
        if r:
            rz = r * z
            m = _dlog_in_cyclic(h, order_h, rz)
            gg, t0, _ = _intmat.xgcd(r, order_h)
            if m % gg:
                raise AssertionError("summand correction is unsolvable")
            t = (t0 * (m // gg)) % order_h
            z = z - t * h
            if not (r * z).is_zero:
                raise AssertionError("complement generator adjustment failed")
        comp.append(z)
    _verify_direct_sum(group, h, comp)
    return h, comp


def _divide_by(
    group: FinAbGroup, g: GroupElement, n: int
) -> Optional[GroupElement]:
    """Some x with n*x == g, minimised lexicographically when cheap."""
    mul = AbHom(
        group,
        group,
        [[n if i == j else 0 for j in range(group.ngens)] for i in range(group.ngens)],
        check=False,
    )
    x = mul.solve(g)
    if x is None:
        return None
    size = group.order()
    if size is not None and size <= 4096:
        best = min(
            (y for y in group.elements() if (n * y) == g),
            key=lambda y: y.coords,
        )
        return best
    return x
