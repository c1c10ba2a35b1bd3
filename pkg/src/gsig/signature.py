"""The G-signature map on orbit data and its index computations.

``theta`` sends a datum to the multiplicity vector of the action character on
holomorphic one-forms, taken modulo a lattice of permutation characters.  The
choice of subgroups spanning that lattice is a :class:`RelationVariant`:

* ``E``: all subgroups (the default),
* ``D``: cyclic subgroups together with ``G``,
* ``Dprime``: an explicit list that must contain the trivial group and ``G``.

The anti-self-conjugate part of the quotient is ``A_G``; reports compare
``theta(B_G)`` with ``A_G``.
"""

from __future__ import annotations

import json
import weakref
from dataclasses import dataclass, field
from typing import Sequence

from .characters import (CharacterTable, action_character, apply_matrix, char_table,
                         ind_matrix, multiplicities, perm_character, res_matrix)
from .groups import FiniteGroup, GroupError, Homomorphism, Subgroup, build_group, subgroups
from .orbit_data import (BGStructure, OrbitData, bg_structure, coordinates, empty, format_data,
                         format_element, neg, pushforward, realize, reduce, restrict)
from .zlattice import (AbelianQuotient, LatticeBasis, canonical_coset_rep, intersect, preimage,
                       quotient)


class SignatureError(ValueError):
    pass


class GuardExceeded(SignatureError):
    """Requested computation is outside the supported size range."""


@dataclass(frozen=True)
class RelationVariant:
    kind: str = "E"
    subgroups: tuple = ()  # member tuples, only for Dprime

    def __post_init__(self):
        if self.kind not in ("D", "E", "Dprime"):
            raise SignatureError(f"unknown relation variant {self.kind!r}")
        if self.kind != "Dprime" and self.subgroups:
            raise SignatureError("only the Dprime variant takes a subgroup list")

    @classmethod
    def parse(cls, name: str, G: FiniteGroup | None = None, subgroup_gens=None) -> "RelationVariant":
        key = name.strip().lower()
        if key in ("e", "all"):
            return cls("E")
        if key in ("d", "cyclic"):
            return cls("D")
        if key in ("dprime", "d'", "dp"):
            if G is None:
                raise SignatureError("Dprime needs a group")
            return dprime(G, subgroup_gens)
        raise SignatureError(f"unknown relation variant {name!r}")


E = RelationVariant("E")
D = RelationVariant("D")


def dprime(G: FiniteGroup, subgroup_gens=None) -> RelationVariant:
    """Explicit subgroup list; defaults to trivial, G and every cyclic subgroup
    of prime order generated by an element of odd order (for S_3: ``<a>``)."""
    if subgroup_gens is None:
        subs = [(0,), tuple(range(G.order))]
        for sc in subgroups(G, "cyclic"):
            o = sc.rep.order
            if o > 2 and all(o % k for k in range(2, o)):
                subs.append(sc.rep.members)
    else:
        subs = [G.closure(gs).members for gs in subgroup_gens]
        subs = [(0,)] + subs + [tuple(range(G.order))]
    seen, out = set(), []
    for s in subs:
        if s not in seen:
            seen.add(s)
            out.append(tuple(s))
    return RelationVariant("Dprime", tuple(out))


def _family(G: FiniteGroup, v: RelationVariant) -> list[tuple]:
    if v.kind == "E":
        return [sc.rep.members for sc in subgroups(G, "all")]
    if v.kind == "D":
        fam = [sc.rep.members for sc in subgroups(G, "cyclic")]
        whole = tuple(range(G.order))
        return fam if whole in fam else fam + [whole]
    mems = [tuple(s) for s in v.subgroups]
    if (0,) not in mems or tuple(range(G.order)) not in mems:
        raise SignatureError("Dprime list must contain the trivial subgroup and G")
    for s in mems:
        if not G.is_subgroup(s):
            raise GroupError("Dprime list contains a non-subgroup")
    return mems


def relation_lattice(G: FiniteGroup, t: CharacterTable, v: RelationVariant = E) -> LatticeBasis:
    gens = [list(perm_character(G, Subgroup(s), t).coeffs) for s in _family(G, v)]
    return LatticeBasis.from_generators(gens, len(t))


def conj_matrix(t: CharacterTable) -> list[list[int]]:
    """Permutation matrix with ``v @ S`` the complex conjugate of ``v``."""
    n = len(t)
    S = [[0] * n for _ in range(n)]
    for j, i in enumerate(t.conj_perm):
        S[i][j] = 1
    return S


def conj_vector(v: Sequence[int], t: CharacterTable) -> list[int]:
    return [v[t.conj_perm[j]] for j in range(len(v))]


def a_group(G: FiniteGroup, t: CharacterTable, v: RelationVariant = E,
            relations: LatticeBasis | None = None) -> tuple[AbelianQuotient, LatticeBasis]:
    """``A_G = {a : a + conj(a) in R} / R`` and the lattice ``{a : a + conj(a) in R}``."""
    R = relations if relations is not None else relation_lattice(G, t, v)
    n = len(t)
    S = conj_matrix(t)
    A = [[int(i == j) + S[i][j] for j in range(n)] for i in range(n)]
    L = preimage(A, R)
    return quotient(L, R), L


# ---------------------------------------------------------------------------
# per-group setup with caches
# ---------------------------------------------------------------------------

class SignatureSetup:
    """Character table, relation lattice and ``A_G`` of one group and variant."""

    def __init__(self, G: FiniteGroup, table: CharacterTable | None = None,
                 variant: RelationVariant = E):
        self.group = G
        self.table = table if table is not None else char_table(G)
        self.variant = variant
        self.relations = relation_lattice(G, self.table, variant)
        self._a = None

    @property
    def a(self) -> tuple[AbelianQuotient, LatticeBasis]:
        if self._a is None:
            self._a = a_group(self.group, self.table, self.variant, self.relations)
        return self._a

    def character_vector(self, d: OrbitData, choice: str = "least", extra_handles: int = 0):
        """Multiplicities of the action character of ``d`` exactly as given (no reduction)."""
        if d.is_zero():
            return [0] * len(self.table)
        w = realize(d, choice=choice, extra_handles=extra_handles)
        return list(multiplicities(action_character(d, w), self.table).coeffs)

    def theta(self, d: OrbitData, check_witness: bool = True, reduced: bool = True) -> list[int]:
        if d.group is not self.group:
            raise SignatureError("datum lives over a different group")
        if reduced:
            d = reduce(d)
        v = self.reduce(self.character_vector(d))
        if check_witness and not d.is_zero():
            v2 = self.reduce(self.character_vector(d, choice="greatest", extra_handles=1))
            if v2 != v:
                raise AssertionError("theta depends on the chosen realization")
        return v

    def reduce(self, v: Sequence[int]) -> list[int]:
        return canonical_coset_rep(v, self.relations)

    def in_a(self, v: Sequence[int]) -> bool:
        """Whether ``v + conj(v)`` is a relation."""
        w = conj_vector(v, self.table)
        return [a + b for a, b in zip(v, w)] in self.relations

    def a_coords(self, v: Sequence[int]) -> list[int]:
        Q, L = self.a
        return Q.coords(v)


_SETUPS: "weakref.WeakKeyDictionary[FiniteGroup, dict]" = weakref.WeakKeyDictionary()


def setup(G: FiniteGroup, variant: RelationVariant = E,
          table: CharacterTable | None = None) -> SignatureSetup:
    """Cached :class:`SignatureSetup` (cache keyed by group object, variant and table)."""
    per = _SETUPS.setdefault(G, {})
    key = (variant, id(table) if table is not None else None)
    if key not in per:
        per[key] = SignatureSetup(G, table, variant)
    return per[key]


def theta(d: OrbitData, v: RelationVariant = E, table: CharacterTable | None = None) -> list[int]:
    """Canonical coset representative of ``theta(d)``."""
    return setup(d.group, v, table).theta(d)


# ---------------------------------------------------------------------------
# commuting squares
# ---------------------------------------------------------------------------

def verify_res_square(inc: Homomorphism, d: OrbitData, v_big: RelationVariant = E,
                      v_small: RelationVariant = E) -> bool:
    """theta_K(res d) against Res(theta_G(d)) modulo the relations of K."""
    G, K = inc.codomain, inc.domain
    sG, sK = setup(G, v_big), setup(K, v_small)
    left = sK.theta(restrict(d, inc))
    M = res_matrix(sG.table, sK.table, inc)
    right = sK.reduce(apply_matrix(sG.theta(d), M))
    return left == right


def verify_ind_square(inc: Homomorphism, d: OrbitData, v_small: RelationVariant = E,
                      v_big: RelationVariant = E) -> bool:
    """theta_G(i_* d) against Ind(theta_H(d)) modulo the relations of G."""
    H, G = inc.domain, inc.codomain
    sH, sG = setup(H, v_small), setup(G, v_big)
    left = sG.theta(pushforward(inc, d))
    M = ind_matrix(sH.table, sG.table, inc)
    right = sG.reduce(apply_matrix(sH.theta(d), M))
    return left == right


def verify_conj(d: OrbitData, v: RelationVariant = E) -> bool:
    """theta(-d) is the complex conjugate of theta(d)."""
    s = setup(d.group, v)
    t = s.theta(d)
    return s.theta(neg(d)) == s.reduce(conj_vector(t, s.table)) and s.in_a(t)


@dataclass(frozen=True)
class PairCheck:
    class_index: int
    label: str
    image: tuple
    vanishes: bool


def relation_generator_check(G: FiniteGroup, v: RelationVariant,
                             table: CharacterTable | None = None) -> list[PairCheck]:
    """Evaluate the signature on each defining relation of ``B_G``.

    The relations are the identity entry ``[1]`` and the cancelling pairs
    ``[c, c^-1]``; each is realized unreduced and its character is reduced
    modulo the variant's lattice.  A well-defined map sends all of them to 0.
    """
    s = setup(G, v, table)
    cl = G.classes
    out = []
    for c in range(len(cl)):
        ci = cl.inverse_class[c]
        if c > ci:
            continue
        mult = [0] * len(cl)
        if c == 0:
            mult[0] = 1
        else:
            mult[c] += 1
            mult[ci] += 1
        d = OrbitData(G, mult)
        img = s.reduce(s.character_vector(d))
        label = "[" + ", ".join(format_element(G, x) for x in d.elements()) + "]"
        out.append(PairCheck(c, label, tuple(img), not any(img)))
    return out


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class SignatureReport:
    group: str
    variant: str
    bg: BGStructure
    theta_matrix: list
    a_group: AbelianQuotient
    injective_on_free: bool
    injective: bool
    index: int | None
    aux: dict = field(default_factory=dict)
    oracle: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        G = self.bg.group
        return {
            "group": self.group,
            "order": G.order,
            "variant": self.variant,
            "bg": {"free_rank": self.bg.free_rank, "two_torsion": self.bg.two_torsion,
                   "basis": [format_data(b) for b in self.bg.basis]},
            "theta_matrix": [list(r) for r in self.theta_matrix],
            "a_group": {"factors": list(self.a_group.factors),
                        "describe": self.a_group.describe()},
            "injective_on_free": self.injective_on_free,
            "injective": self.injective,
            "index": self.index if self.index is not None else "infinite",
            "aux": self.aux,
            "oracle": self.oracle,
        }

    def to_text(self) -> str:
        j = self.to_json()
        lines = [
            f"group            {j['group']} (order {j['order']})",
            f"relations        {j['variant']}",
            f"B_G              {self.bg.describe()}",
        ]
        for i, b in enumerate(j["bg"]["basis"]):
            lines.append(f"  basis[{i}]       {b}")
        lines.append(f"A_G              {j['a_group']['describe']}")
        for i, row in enumerate(j["theta_matrix"]):
            lines.append(f"  theta[{i}]       {row}")
        lines.append(f"injective (free) {j['injective_on_free']}")
        lines.append(f"injective        {j['injective']}")
        lines.append(f"index            {j['index']}")
        for k, val in j["aux"].items():
            lines.append(f"{k:<16} {val}")
        for k, val in j["oracle"].items():
            lines.append(f"{k:<16} {val}")
        return "\n".join(lines)


def _theta_images(s: SignatureSetup, st: BGStructure) -> list[list[int]]:
    return [s.theta(b) for b in st.basis]


def index_report(G: FiniteGroup, t: CharacterTable | None = None,
                 v: RelationVariant = E) -> SignatureReport:
    s = setup(G, v, t)
    st = bg_structure(G)
    images = _theta_images(s, st)
    for img in images:
        if not s.in_a(img):
            raise AssertionError("theta image is not anti-self-conjugate")
    Q, L = s.a
    coords = [Q.coords(img) for img in images]
    free_cols = [i for i, f in enumerate(Q.factors) if f == 0]
    # rank of the free basis images in A_G (x) Q
    free_rows = [[c[i] for i in free_cols] for c in coords[:st.free_rank]]
    rank = LatticeBasis.from_generators(free_rows, len(free_cols)).rank if free_rows else 0
    injective_on_free = rank == st.free_rank
    # kernel of Z^(r+s) -> A_G, compared with the lattice defining B_G
    n = st.free_rank + st.two_torsion
    if n:
        mods = LatticeBasis.from_generators(
            [[f if i == j else 0 for j in range(len(Q.factors))]
             for i, f in enumerate(Q.factors) if f], len(Q.factors))
        ker = preimage(coords, mods)
        expected = LatticeBasis.from_generators(
            [[2 if i == j else 0 for j in range(n)] for i in range(st.free_rank, n)], n)
        injective = ker == expected
    else:
        injective = True
    image_lat = LatticeBasis.from_generators(images + s.relations.as_lists(), len(s.table))
    order = quotient(L, image_lat).order
    return SignatureReport(G.name, v.kind, st, images, Q, injective_on_free, injective, order)


def _odd_prime(p: int) -> bool:
    return p > 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def cp_report(p: int, guard: int = 31) -> SignatureReport:
    from .class_number import h_minus

    if not _odd_prime(p):
        raise SignatureError(f"{p} is not an odd prime")
    if p > guard:
        raise GuardExceeded(f"p = {p} exceeds the guard {guard}")
    G = build_group(f"cyclic {p}")
    rep = index_report(G)
    res = h_minus(p)
    rep.oracle = {"h_minus": res.h_minus, "methods": list(res.methods),
                  "index_matches_h_minus": rep.index == res.h_minus}
    return rep


def _index_in(big: LatticeBasis, gens: Sequence[Sequence[int]]) -> int | None:
    small = LatticeBasis.from_generators(gens, big.dim)
    return quotient(big, small).order


def cpcp_report(p: int, allowed: Sequence[int] = (3, 5)) -> SignatureReport:
    """Index computations for ``C_p x C_p`` and its ``p + 1`` subgroups of order p."""
    from .class_number import h_minus

    if not _odd_prime(p):
        raise SignatureError(f"{p} is not an odd prime")
    if p not in allowed:
        raise GuardExceeded(f"p = {p} is outside the supported range {tuple(allowed)}")
    G = build_group(f"abelian {p} {p}")
    rep = index_report(G)
    sG = setup(G)
    st = rep.bg
    Q, L = sG.a
    nG = len(sG.table)

    subs = [sc.rep for sc in subgroups(G, "cyclic") if sc.rep.order == p]
    if len(subs) != p + 1:
        raise AssertionError("wrong number of order-p subgroups")
    parts = []
    for S in subs:
        gen = next(x for x in S.members if x)
        K, inc = G.subgroup_group(gens=[gen])
        sK = setup(K)
        stK = bg_structure(K)
        parts.append({
            "inc": inc, "setup": sK, "bg": stK,
            "res": res_matrix(sG.table, sK.table, inc),
            "ind": ind_matrix(sK.table, sG.table, inc),
            "theta": _theta_images(sK, stK),
        })

    # [B_G : sum of pushed-forward B_{G_j}] in B_G coordinates (B_G is free)
    pushed = []
    for part in parts:
        for b in part["bg"].basis:
            free, _ = coordinates(pushforward(part["inc"], b), st)
            pushed.append(free)
    r = st.free_rank
    bg_index = _index_in(LatticeBasis.full(r), pushed)

    # [A_G : sum of Ind A_{G_j}]
    ind_imgs = []
    for part in parts:
        QK, _ = part["setup"].a
        for gvec in QK.gens:
            ind_imgs.append(apply_matrix(gvec, part["ind"]))
    a_index = quotient(L, LatticeBasis.from_generators(
        ind_imgs + sG.relations.as_lists(), nG)).order

    # res o ind on the sum of the B_{G_j}: p on the diagonal block, 0 elsewhere
    res_ind_b = True
    for i, part in enumerate(parts):
        for b in part["bg"].basis:
            up = pushforward(part["inc"], b)
            for j, other in enumerate(parts):
                down = restrict(up, other["inc"])
                want = reduce(OrbitData(b.group, [p * m for m in b.mult])) if i == j \
                    else empty(other["inc"].domain)
                if down != want:
                    res_ind_b = False
    # ind o res on B_G
    ind_res_b = True
    for b in st.basis:
        tot = [0] * r
        for part in parts:
            free, _ = coordinates(pushforward(part["inc"], restrict(b, part["inc"])), st)
            tot = [x + y for x, y in zip(tot, free)]
        want, _ = coordinates(b, st)
        if tot != [p * x for x in want]:
            ind_res_b = False
    # the same composites on A-level lifts
    res_ind_a = True
    for i, part in enumerate(parts):
        QK, _ = part["setup"].a
        for gvec in QK.gens:
            up = apply_matrix(gvec, part["ind"])
            for j, other in enumerate(parts):
                down = other["setup"].reduce(apply_matrix(up, other["res"]))
                want = other["setup"].reduce([p * x for x in gvec] if i == j else [0] * len(gvec))
                if down != want:
                    res_ind_a = False
    ind_res_a = True
    for gvec in Q.gens:
        tot = [0] * nG
        for part in parts:
            tot = [x + y for x, y in zip(tot, apply_matrix(apply_matrix(gvec, part["res"]),
                                                           part["ind"]))]
        if sG.reduce(tot) != sG.reduce([p * x for x in gvec]):
            ind_res_a = False

    torsion = Q.torsion
    k = len(torsion)
    hm = h_minus(p).h_minus
    delta = rep.index
    stmt_a, stmt_b = _index_statements(sG, rep.theta_matrix, parts)
    exp_i = None
    if delta is not None and delta % hm ** (p + 1) == 0:
        q, e = delta // hm ** (p + 1), 0
        while q % p == 0:
            q //= p
            e += 1
        exp_i = e if q == 1 else None
    rep.aux = {
        "delta": delta,
        "bg_subindex": bg_index,
        "bg_subindex_expected": p ** (p - 1),
        "ag_subindex": a_index,
        "a_torsion": list(torsion),
        "k": k,
        "torsion_all_p": all(f == p for f in torsion),
        "res_ind_is_p_on_B": res_ind_b,
        "ind_res_is_p_on_B": ind_res_b,
        "res_ind_is_p_on_A": res_ind_a,
        "ind_res_is_p_on_A": ind_res_a,
        "exponent_i": exp_i,
        "i_range": [1 - p + k, k + (p - 1) ** 2 // 2],
        "statement_1a": stmt_a,
        "statement_1b": stmt_b,
    }
    rep.oracle = {"h_minus": hm, "conjectured_delta": hm ** (p + 1),
                  "delta_matches_conjecture": delta == hm ** (p + 1)}
    return rep


def _index_statements(sG: SignatureSetup, theta_G: list, parts: list) -> tuple[bool, bool]:
    """Check both lifting statements exactly on lattices.

    (a) every ``a`` in ``A_G`` whose restrictions all lie in the theta images
    of the subgroups lies in ``theta(B_G)``; (b) if the sum of induced
    ``a_j`` lies in ``theta(B_G)`` then each ``a_j`` lies in ``theta(B_{G_j})``.
    """
    _, L = sG.a
    nG = len(sG.table)
    imgG = LatticeBasis.from_generators(theta_G + sG.relations.as_lists(), nG)
    X = L
    for part in parts:
        sK = part["setup"]
        nK = len(sK.table)
        imgK = LatticeBasis.from_generators(part["theta"] + sK.relations.as_lists(), nK)
        X = intersect(X, preimage(part["res"], imgK))
    stmt_a = all(list(row) in imgG for row in X.rows)

    blocks = [len(part["setup"].table) for part in parts]
    total = sum(blocks)
    stacked = [row for part in parts for row in part["ind"]]
    Y = preimage(stacked, imgG)
    big_rows = []
    off = 0
    for part, nK in zip(parts, blocks):
        _, LK = part["setup"].a
        for row in LK.rows:
            big_rows.append([0] * off + list(row) + [0] * (total - off - nK))
        off += nK
    Y = intersect(Y, LatticeBasis.from_generators(big_rows, total))
    stmt_b = True
    for row in Y.rows:
        off = 0
        for part, nK in zip(parts, blocks):
            sK = part["setup"]
            imgK = LatticeBasis.from_generators(part["theta"] + sK.relations.as_lists(), nK)
            if list(row[off:off + nK]) not in imgK:
                stmt_b = False
            off += nK
    return stmt_a, stmt_b


def report_json(rep: SignatureReport) -> str:
    return json.dumps(rep.to_json(), indent=2)
