"""Singular orbit data and the group they form under equivariant connected sum.

An :class:`OrbitData` is a multiset of conjugacy classes of ``G`` whose
product lands in the commutator subgroup.  Two data are equal in the group
iff their reduced forms agree: reduction drops identity entries, cancels a
class against its inverse class, and keeps self-inverse (ambivalent) classes
modulo 2.

>>> from gsig.groups import build_group
>>> C3 = build_group("cyclic 3")
>>> d = parse_data(C3, "[x, x^2^1]")
>>> reduce(d).is_zero()
True
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .groups import (FiniteGroup, GroupError, GroupSpecError, Homomorphism, Subgroup,
                     build_group, double_cosets, identity_hom, make_homomorphism)
from .zlattice import (AbelianQuotient, LatticeBasis, inverse_unimodular, preimage, quotient,
                       vecmat)


class OrbitDataError(ValueError):
    pass


class InvalidData(OrbitDataError):
    """Product of the data is not in the commutator subgroup."""


class GroupMismatch(OrbitDataError):
    pass


class OrbitData:
    """Multiplicity of each conjugacy class of ``group`` (immutable)."""

    __slots__ = ("group", "mult")

    def __init__(self, group: FiniteGroup, mult: Sequence[int]):
        mult = tuple(int(m) for m in mult)
        if len(mult) != len(group.classes):
            raise OrbitDataError("one multiplicity per conjugacy class expected")
        if any(m < 0 for m in mult):
            raise OrbitDataError("multiplicities must be nonnegative")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "mult", mult)

    def __setattr__(self, *_):
        raise AttributeError("OrbitData is immutable")

    def __eq__(self, other):
        if not isinstance(other, OrbitData):
            return NotImplemented
        return self.group is other.group and self.mult == other.mult

    def __hash__(self):
        return hash((id(self.group), self.mult))

    def entries(self) -> list[tuple[int, int]]:
        """``(class representative id, multiplicity)`` for every class present."""
        reps = self.group.classes.reps
        return [(reps[c], m) for c, m in enumerate(self.mult) if m]

    def elements(self) -> list[int]:
        """Class representatives repeated by multiplicity."""
        return [r for r, m in self.entries() for _ in range(m)]

    @property
    def size(self) -> int:
        return sum(self.mult)

    def is_zero(self) -> bool:
        return not any(self.mult)

    def __repr__(self):
        return f"OrbitData({format_data(self)})"


@dataclass(frozen=True)
class BGStructure:
    """``B_G = Z^free_rank x (Z/2)^two_torsion`` with an explicit basis."""

    group: FiniteGroup
    free_rank: int
    two_torsion: int
    basis: tuple
    quotient: AbelianQuotient
    order_map: tuple  # basis position -> factor index of ``quotient``
    free_change: tuple = ()  # maps quotient free coordinates to basis coordinates

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        if self.two_torsion:
            parts.append("Z/2" if self.two_torsion == 1 else f"(Z/2)^{self.two_torsion}")
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ExtendedData:
    data: OrbitData
    h: int
    g: int


@dataclass(frozen=True)
class RealizationWitness:
    """Images of the surface-group generators under a surjection onto ``G``."""

    group: FiniteGroup
    h: int
    a_images: tuple
    b_images: tuple
    xi_images: tuple
    xi_classes: tuple

    def relation_holds(self) -> bool:
        G = self.group
        r = 0
        for a, b in zip(self.a_images, self.b_images):
            r = G.mul(r, G.commutator_of(a, b))
        return G.mul(r, G.prod(self.xi_images)) == 0

    def is_surjective(self) -> bool:
        gens = list(self.a_images) + list(self.b_images) + list(self.xi_images)
        return self.group.closure(gens).order == self.group.order

    def classes_match(self) -> bool:
        cl = self.group.classes.class_of
        return all(cl[x] == c for x, c in zip(self.xi_images, self.xi_classes))

    def verify(self) -> bool:
        return self.relation_holds() and self.is_surjective() and self.classes_match()


# ---------------------------------------------------------------------------
# construction and reduction
# ---------------------------------------------------------------------------

def psi(d: OrbitData) -> tuple:
    """Image of the product of the data in ``G/[G,G]``."""
    G = d.group
    out = [0] * len(G.ab_factors)
    for c, m in enumerate(d.mult):
        if m:
            v = G.ab_projection[G.classes.reps[c]]
            for i, x in enumerate(v):
                out[i] += m * x
    return tuple(x % n for x, n in zip(out, G.ab_factors))


def from_vector(G: FiniteGroup, mult: Sequence[int], check: bool = True) -> OrbitData:
    d = OrbitData(G, mult)
    if check and any(psi(d)):
        raise InvalidData("product of the data is not in the commutator subgroup")
    return d


def make_data(G: FiniteGroup, entries: Iterable[tuple[int, int]], check: bool = True) -> OrbitData:
    """Collect ``(element id, multiplicity)`` pairs into classes (unreduced)."""
    mult = [0] * len(G.classes)
    for x, m in entries:
        if not 0 <= x < G.order:
            raise OrbitDataError(f"element id {x} out of range")
        if m < 0:
            raise OrbitDataError("multiplicities must be nonnegative")
        mult[G.classes.class_of[x]] += m
    return from_vector(G, mult, check)


def empty(G: FiniteGroup) -> OrbitData:
    return OrbitData(G, [0] * len(G.classes))


def reduce(d: OrbitData) -> OrbitData:
    """Canonical representative of the class of ``d``."""
    cl = d.group.classes
    m = list(d.mult)
    m[0] = 0
    for c in range(1, len(m)):
        ci = cl.inverse_class[c]
        if ci == c:
            m[c] %= 2
        elif c < ci:
            k = min(m[c], m[ci])
            m[c] -= k
            m[ci] -= k
    return OrbitData(d.group, m)


def from_signed_vector(G: FiniteGroup, v: Sequence[int]) -> OrbitData:
    """Turn an integer class vector into reduced data (negatives go to inverse classes)."""
    inv = G.classes.inverse_class
    m = [0] * len(v)
    for c, x in enumerate(v):
        if x >= 0:
            m[c] += x
        else:
            m[inv[c]] += -x
    return reduce(OrbitData(G, m))


def signed_vector(d: OrbitData) -> list[int]:
    """Class vector of ``d`` (what ``from_signed_vector`` inverts up to reduction)."""
    return list(d.mult)


def _same_group(d1: OrbitData, d2: OrbitData):
    if d1.group is not d2.group:
        raise GroupMismatch("orbit data live over different groups")


def add(d1: OrbitData, d2: OrbitData) -> OrbitData:
    _same_group(d1, d2)
    return reduce(OrbitData(d1.group, [a + b for a, b in zip(d1.mult, d2.mult)]))


def add_many(G: FiniteGroup, ds: Iterable[OrbitData]) -> OrbitData:
    m = [0] * len(G.classes)
    for d in ds:
        if d.group is not G:
            raise GroupMismatch("orbit data live over different groups")
        m = [a + b for a, b in zip(m, d.mult)]
    return reduce(OrbitData(G, m))


def scale(k: int, d: OrbitData) -> OrbitData:
    if k < 0:
        return scale(-k, neg(d))
    return reduce(OrbitData(d.group, [k * x for x in d.mult]))


def neg(d: OrbitData) -> OrbitData:
    inv = d.group.classes.inverse_class
    m = [0] * len(d.mult)
    for c, x in enumerate(d.mult):
        m[inv[c]] += x
    return reduce(OrbitData(d.group, m))


def lambda_power(n: int, d: OrbitData) -> OrbitData:
    """Replace every class of ``g`` by the class of ``g^n``."""
    G = d.group
    n %= G.exponent
    m = [0] * len(d.mult)
    cl = G.classes
    for c, x in enumerate(d.mult):
        if x:
            m[cl.class_of[G.power(cl.reps[c], n)]] += x
    return reduce(OrbitData(G, m))


def pushforward(f: Homomorphism, d: OrbitData, reduced: bool = True) -> OrbitData:
    if d.group is not f.domain:
        raise GroupMismatch("data do not live over the domain of the map")
    G = f.codomain
    m = [0] * len(G.classes)
    for x, k in d.entries():
        m[G.classes.class_of[f(x)]] += k
    out = OrbitData(G, m)
    return reduce(out) if reduced else out


# ---------------------------------------------------------------------------
# restriction
# ---------------------------------------------------------------------------

def _inclusion(G: FiniteGroup, K) -> Homomorphism:
    if isinstance(K, Homomorphism):
        if K.codomain is not G or not K.is_injective():
            raise GroupError("restriction needs an inclusion into the data's group")
        return K
    if isinstance(K, FiniteGroup):
        if K is G:
            return identity_hom(G)
        raise GroupError("pass the inclusion homomorphism of the subgroup")
    members = K.members if isinstance(K, Subgroup) else tuple(K)
    if not G.is_subgroup(members):
        raise GroupError("K is not a subgroup")
    if len(members) == G.order:
        return identity_hom(G)
    _, inc = G.subgroup_group(Subgroup(tuple(members)))
    return inc


def restrict_raw(d: OrbitData, K) -> OrbitData:
    """Restricted singular orbits before any cancellation.

    Each entry ``gamma`` is expanded over the K-orbits of the left cosets
    ``g<gamma>``; an orbit contributes the class (in K) of
    ``g gamma^dmin g^-1`` with ``dmin`` the least power landing in K, unless
    that power is the full order (the K-stabilizer is then trivial).
    """
    G = d.group
    inc = _inclusion(G, K)
    Kg = inc.domain
    back = {x: i for i, x in enumerate(inc.image)}
    kset = set(inc.image)
    T = G.cayley
    m = [0] * len(Kg.classes)
    for gamma, mult in d.entries():
        nu = G.elt_order[gamma]
        if nu == 1:
            continue
        cyc = G.cyclic_members(gamma)
        coset_of = [-1] * G.order
        cosets = []
        for g in range(G.order):
            if coset_of[g] < 0:
                for y in T[g, cyc].tolist():
                    coset_of[y] = len(cosets)
                cosets.append(g)
        seen = [False] * len(cosets)
        for ci, g in enumerate(cosets):
            if seen[ci]:
                continue
            for k in inc.image:
                seen[coset_of[int(T[k, g])]] = True
            ginv = G.inv[g]
            for dmin in range(1, nu + 1):
                y = int(T[T[g, cyc[dmin % nu]], ginv])
                if y in kset:
                    break
            if dmin < nu:
                m[Kg.classes.class_of[back[y]]] += mult
    return OrbitData(Kg, m)


def restrict(d: OrbitData, K) -> OrbitData:
    """Restriction map ``B_G -> B_K``.

    ``K`` may be a :class:`Subgroup` of ``d.group`` or the inclusion
    :class:`Homomorphism` of an already materialized subgroup (use the latter
    whenever results over K must be combined, since data are tied to a group
    object).
    """
    return reduce(restrict_raw(d, K))


def restrict_abelian(d: OrbitData, K) -> OrbitData:
    """Closed-form restriction for abelian ``G`` (cross-check of :func:`restrict`)."""
    G = d.group
    if not G.is_abelian:
        raise GroupError("closed-form restriction needs an abelian group")
    inc = _inclusion(G, K)
    Kg = inc.domain
    back = {x: i for i, x in enumerate(inc.image)}
    kset = set(inc.image)
    m = [0] * len(Kg.classes)
    for gamma, mult in d.entries():
        cyc = G.cyclic_members(gamma)
        nu = len(cyc)
        n_r = next(e for e in range(1, nu + 1) if cyc[e % nu] in kset)
        meet = sum(1 for y in cyc if y in kset)
        num = G.order * meet
        den = nu * Kg.order
        if num % den:
            raise AssertionError("closed-form copy count is not an integer")
        m[Kg.classes.class_of[back[cyc[n_r % nu]]]] += mult * (num // den)
    return reduce(OrbitData(Kg, m))


# ---------------------------------------------------------------------------
# double coset formula
# ---------------------------------------------------------------------------

def double_coset_check(G: FiniteGroup, H_inc: Homomorphism, K_inc: Homomorphism,
                       d: OrbitData) -> bool:
    """Compare ``res_K(i_*(d))`` with the double coset sum over ``K s H``."""
    Hg, Kg = H_inc.domain, K_inc.domain
    if d.group is not Hg:
        raise GroupMismatch("data must live over H")
    H = Subgroup(H_inc.image)
    K = Subgroup(K_inc.image)
    lhs = restrict(pushforward(H_inc, d, reduced=False), K_inc)

    kback = {x: i for i, x in enumerate(K_inc.image)}
    pieces = []
    for s in double_cosets(G, H, K):
        # f_s : H -> sHs^-1, conjugation by s
        sgens = [G.conj(s, H_inc.image[h]) for h in Hg.generators]
        sH, sH_inc = G.subgroup_group(gens=sgens) if sgens else G.subgroup_group(Subgroup((0,)))
        sback = {x: i for i, x in enumerate(sH_inc.image)}
        f_s = make_homomorphism(Hg, sH, [sback[x] for x in sgens])
        meet = [x for x in sH_inc.image if x in K]
        Hs_members = [sback[x] for x in meet]
        Hs, Hs_inc_local = sH.subgroup_group(Subgroup(tuple(Hs_members)))
        # j : H_s -> K
        j = Homomorphism(Hs, Kg, tuple(kback[sH_inc.image[Hs_inc_local.image[x]]]
                                       for x in range(Hs.order)))
        pieces.append(pushforward(j, restrict(pushforward(f_s, d, reduced=False), Hs_inc_local)))
    rhs = add_many(Kg, pieces)
    return lhs == rhs


# ---------------------------------------------------------------------------
# structure of B_G
# ---------------------------------------------------------------------------

def _ker_psi(G: FiniteGroup) -> LatticeBasis:
    nc = len(G.classes)
    k = len(G.ab_factors)
    if k == 0:
        return LatticeBasis.full(nc)
    A = [list(G.ab_projection[r]) for r in G.classes.reps]
    mods = LatticeBasis.from_generators(
        [[n if i == j else 0 for j in range(k)] for i, n in enumerate(G.ab_factors)], k)
    return preimage(A, mods)


def _cancel_lattice(G: FiniteGroup) -> list[list[int]]:
    nc = len(G.classes)
    rows = [[int(j == 0) for j in range(nc)]]
    for c in range(1, nc):
        ci = G.classes.inverse_class[c]
        if c <= ci:
            row = [0] * nc
            row[c] += 1
            row[ci] += 1
            rows.append(row)
    return rows


def bg_structure(G: FiniteGroup) -> BGStructure:
    """Invariant factors of ``ker Psi / <identity, cancelling pairs>``."""
    big = _ker_psi(G)
    Q = quotient(big, LatticeBasis.from_generators(_cancel_lattice(G), big.dim))
    if any(f not in (0, 2) for f in Q.factors):
        raise AssertionError(f"unexpected invariant factors {Q.factors}")
    free = [i for i, f in enumerate(Q.factors) if f == 0]
    tors = [i for i, f in enumerate(Q.factors) if f == 2]
    order_map = tuple(free + tors)
    free_vecs, T = _shorten([list(Q.gens[i]) for i in free], G)
    basis = tuple(from_signed_vector(G, v) for v in free_vecs) + \
        tuple(from_signed_vector(G, Q.gens[i]) for i in tors)
    change = tuple(tuple(r) for r in inverse_unimodular(T)) if T else ()
    return BGStructure(G, len(free), len(tors), basis, Q, order_map, change)


def _shorten(vecs: list, G: FiniteGroup, max_rounds: int = 50):
    """Greedy unimodular changes of a free basis that shrink the reduced data.

    Returns the new vectors and ``T`` with ``new = T @ old``.
    """
    r = len(vecs)
    T = [[int(i == j) for j in range(r)] for i in range(r)]
    size = [from_signed_vector(G, v).size for v in vecs]
    for _ in range(max_rounds):
        improved = False
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                for sgn in (1, -1):
                    cand = [a + sgn * b for a, b in zip(vecs[i], vecs[j])]
                    c = from_signed_vector(G, cand).size
                    if c < size[i]:
                        vecs[i], size[i] = cand, c
                        T[i] = [a + sgn * b for a, b in zip(T[i], T[j])]
                        improved = True
        if not improved:
            break
    return vecs, T


def coordinates(d: OrbitData, st: BGStructure) -> tuple[list[int], list[int]]:
    """Coordinates of the class of ``d``: (free part, 2-torsion part)."""
    if d.group is not st.group:
        raise GroupMismatch("data and structure live over different groups")
    y = st.quotient.coords(list(d.mult))
    y = [y[i] for i in st.order_map]
    free, tors = y[:st.free_rank], y[st.free_rank:]
    if st.free_change:
        free = vecmat(free, st.free_change, st.free_rank)
    return free, tors


def from_coordinates(st: BGStructure, free: Sequence[int], tors: Sequence[int] = ()) -> OrbitData:
    G = st.group
    v = [0] * len(G.classes)
    for k, b in zip(list(free) + list(tors), st.basis):
        vb = b.mult
        v = [a + k * x for a, x in zip(v, vb)]
    return from_signed_vector(G, v)


# ---------------------------------------------------------------------------
# Riemann-Hurwitz
# ---------------------------------------------------------------------------

def _branch_sum(d: OrbitData) -> Fraction:
    G = d.group
    return sum((Fraction(m) * (1 - Fraction(1, G.elt_order[x])) for x, m in d.entries()),
               Fraction(0))


def genus(d: OrbitData, h: int) -> int:
    """Genus of the covering surface for quotient genus ``h``."""
    n = d.group.order
    two_g_minus_2 = n * (2 * h - 2) + n * _branch_sum(d)
    g = (two_g_minus_2 + 2) / 2
    if g.denominator != 1:
        raise OrbitDataError("Riemann-Hurwitz gives a non-integral genus")
    if g < 0:
        raise OrbitDataError("negative genus")
    return int(g)


def quotient_genus(d: OrbitData, g: int, K) -> int:
    """Quotient genus of the restricted action on the same surface of genus ``g``."""
    r = restrict_raw(d, K)
    n = r.group.order
    h = (Fraction(2 * g - 2, n) - _branch_sum(r) + 2) / 2
    if h.denominator != 1 or h < 0:
        raise OrbitDataError(f"restricted quotient genus {h} is not a nonnegative integer")
    return int(h)


def extended(d: OrbitData, h: int) -> ExtendedData:
    return ExtendedData(d, h, genus(d, h))


# ---------------------------------------------------------------------------
# realization by a surface-kernel surjection
# ---------------------------------------------------------------------------

def _commutator_path(G: FiniteGroup, target: int) -> list[tuple[int, int]]:
    comm = {}
    for a in range(G.order):
        for b in range(G.order):
            c = G.commutator_of(a, b)
            if c and c not in comm:
                comm[c] = (a, b)
    prev = {0: None}
    queue = deque([0])
    while queue and target not in prev:
        x = queue.popleft()
        for c in sorted(comm):
            y = G.mul(x, c)
            if y not in prev:
                prev[y] = (x, comm[c])
                queue.append(y)
    if target not in prev:
        raise InvalidData("product is not a product of commutators")
    path = []
    y = target
    while prev[y] is not None:
        x, pair = prev[y]
        path.append(pair)
        y = x
    return path[::-1]


def realize(d: OrbitData, choice: str = "least", extra_handles: int = 0,
            trim: bool = False) -> RealizationWitness:
    """Build a surjection from a surface group realizing ``d``.

    ``choice`` picks the least or greatest member of each class as the image
    of the elliptic generators; ``extra_handles`` appends further trivial
    handles.  Both only exist to produce alternative witnesses.  With
    ``trim`` the trivial handles ``[g, 1]`` are dropped again from the end as
    long as the images still generate ``G`` (smaller ``h``, not minimal).
    """
    G = d.group
    if any(psi(d)):
        raise InvalidData("product of the data is not in the commutator subgroup")
    cl = G.classes
    xis, xcls = [], []
    for c, m in enumerate(d.mult):
        rep = cl.members[c][0] if choice == "least" else cl.members[c][-1]
        xis.extend([rep] * m)
        xcls.extend([c] * m)
    target = G.inv[G.prod(xis)]
    path = _commutator_path(G, target)
    a = [p[0] for p in path]
    b = [p[1] for p in path]
    handles = list(G.generators) + [G.generators[0] if G.generators else 0] * extra_handles
    a += handles
    b += [0] * len(handles)
    w = RealizationWitness(G, len(a), tuple(a), tuple(b), tuple(xis), tuple(xcls))
    while trim and w.h > len(path) and w.b_images[-1] == 0:
        shorter = RealizationWitness(G, w.h - 1, w.a_images[:-1], w.b_images[:-1], w.xi_images,
                                     w.xi_classes)
        if not shorter.is_surjective():
            break
        w = shorter
    if not w.verify():
        raise AssertionError("constructed witness failed verification")
    return w


def fixed_point_count(d: OrbitData, y: int) -> int:
    """Number of points fixed by ``y`` on any surface realizing ``d``."""
    G = d.group
    if y == 0:
        raise OrbitDataError("the identity fixes every point")
    T = G.cayley
    total = 0
    for gamma, m in d.entries():
        cyc = set(G.cyclic_members(gamma))
        hits = sum(1 for g in range(G.order) if int(T[T[G.inv[g], y], g]) in cyc)
        total += m * hits // len(cyc)
    return total


# ---------------------------------------------------------------------------
# text and JSON formats
# ---------------------------------------------------------------------------

_MULT = re.compile(r"^(.+)\^(\d+)$")


def parse_data(G: FiniteGroup, text: str, check: bool = True) -> OrbitData:
    """Parse ``[g1^m1, g2, ...]``; a trailing ``^m`` is always a multiplicity.

    Write elements that carry an exponent in parentheses (``(x^2)^3``) or
    with an explicit multiplicity (``x^2^3``); ``#k`` names element id ``k``.
    """
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise GroupSpecError(f"orbit data must be bracketed: {text!r}")
    body = s[1:-1].strip()
    entries = []
    if body:
        for tok in body.split(","):
            tok = tok.strip()
            if not tok:
                raise GroupSpecError(f"empty entry in {text!r}")
            m = _MULT.match(tok)
            if m and not m.group(1).endswith("^"):
                label, mult = m.group(1), int(m.group(2))
            else:
                label, mult = tok, 1
            entries.append((G.element(label), mult))
    return make_data(G, entries, check)


def format_element(G: FiniteGroup, x: int) -> str:
    lab = G.labels[x]
    return f"({lab})" if "^" in lab else lab


def format_data(d: OrbitData) -> str:
    parts = []
    for x, m in d.entries():
        e = format_element(d.group, x)
        parts.append(e if m == 1 else f"{e}^{m}")
    return "[" + ", ".join(parts) + "]"


def data_to_json(d: OrbitData) -> dict:
    return {"group": d.group.name, "entries": [[x, m] for x, m in d.entries()]}


def data_from_json(obj, G: FiniteGroup | None = None) -> OrbitData:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if G is None:
        G = build_group(obj["group"])
    return make_data(G, [(int(x), int(m)) for x, m in obj["entries"]])
