"""Finite groups as explicit Cayley tables.

Element ids run ``0 .. order-1`` with ``0`` the identity.  Groups built from a
text spec enumerate their elements breadth-first from the identity, right
multiplying by the generators in the order they were listed, so ``cyclic n``
gets ``id k == x^k``.

Permutations compose as functions: ``(p * q)(i) = p(q(i))``.
"""

from __future__ import annotations

import itertools
import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .zlattice import LatticeBasis, inverse_unimodular, snf, vecmat

DEFAULT_CAP = 2000
ALL_SUBGROUPS_CAP = 200
HOM_EXHAUSTIVE_LIMIT = 64
HOM_SAMPLES = 10_000
HOM_SEED = 20240917

_ABELIAN_NAMES = "xyzwuvst"
_PERM_NAMES = "abcdefghijklmnopqr"


class GroupError(ValueError):
    pass


class GroupSpecError(GroupError):
    """Malformed group spec or non-permutation input."""


class CapExceeded(GroupError):
    pass


class HomomorphismError(GroupError):
    pass


@dataclass(frozen=True)
class ConjugacyClasses:
    class_of: tuple
    reps: tuple
    sizes: tuple
    inverse_class: tuple
    members: tuple

    def __len__(self):
        return len(self.reps)

    def is_ambivalent(self, c: int) -> bool:
        return self.inverse_class[c] == c


@dataclass(frozen=True)
class Subgroup:
    members: tuple
    _set: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self):
        mem = tuple(sorted(set(int(m) for m in self.members)))
        object.__setattr__(self, "members", mem)
        object.__setattr__(self, "_set", frozenset(mem))

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups: a representative plus every conjugate."""

    rep: Subgroup
    conjugates: tuple

    @property
    def order(self) -> int:
        return self.rep.order


class FiniteGroup:
    """A finite group given by its full multiplication table.

    All derived structure (inverses, element orders, conjugacy classes,
    commutator subgroup, abelianization) is computed in the constructor; the
    object is read-only afterwards.
    """

    def __init__(self, cayley, generators: Sequence[int], labels: Sequence[str] | None = None,
                 gen_names: Sequence[str] | None = None, name: str = "",
                 parent_ids: Sequence[int] | None = None):
        T = np.asarray(cayley, dtype=np.int32)
        n = T.shape[0]
        if T.shape != (n, n) or n == 0:
            raise GroupError("Cayley table must be a nonempty square array")
        if T.min() < 0 or T.max() >= n:
            raise GroupError("Cayley table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(T[0], ar) and np.array_equal(T[:, 0], ar)):
            raise GroupError("id 0 is not the identity")
        T.setflags(write=False)
        self.cayley = T
        self.order = n
        self.name = name
        self.generators = tuple(int(g) for g in generators)
        self.gen_names = tuple(gen_names) if gen_names else ()
        self.parent_ids = tuple(parent_ids) if parent_ids is not None else None

        inv = np.argmax(T == 0, axis=1)
        if not np.all(T[ar, inv] == 0):
            raise GroupError("some element has no inverse")
        self.inv = tuple(int(i) for i in inv)
        self._check_associative()

        # BFS spanning tree over the generators
        parent = [-1] * n
        via = [-1] * n
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        order = [0]
        cols = [T[:, g].tolist() for g in self.generators]
        while queue:
            x = queue.popleft()
            for k, col in enumerate(cols):
                y = col[x]
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    via[y] = k
                    order.append(y)
                    queue.append(y)
        if len(order) != n:
            raise GroupError("generators do not generate the group")
        self.bfs_order = tuple(order)
        self.bfs_parent = tuple(parent)
        self.bfs_gen = tuple(via)

        eo = [1] * n
        for x in range(1, n):
            y, k = x, 1
            while y != 0:
                y = int(T[y, x])
                k += 1
            eo[x] = k
        self.elt_order = tuple(eo)
        self.exponent = int(np.lcm.reduce(np.array(eo, dtype=np.int64)))

        if labels is None:
            labels = self._word_labels()
        if len(labels) != n:
            raise GroupError("wrong number of labels")
        self.labels = tuple(labels)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self._subgroup_cache = {}

        self.classes = self._conjugacy_classes()
        self.is_abelian = bool(np.array_equal(T, T.T))
        self.commutator = self._commutator_subgroup()
        self.ab_factors, self.ab_projection = self._abelianization()

    # -- construction helpers ------------------------------------------------

    def _check_associative(self):
        T = self.cayley
        n = self.order
        if n <= HOM_EXHAUSTIVE_LIMIT:
            # (xy)z == x(yz) for all triples
            left = T[T[:, :, None], np.arange(n)[None, None, :]]
            right = T[np.arange(n)[:, None, None], T[None, :, :]]
            if not np.array_equal(left, right):
                raise GroupError("Cayley table is not associative")
        else:
            rng = np.random.default_rng(HOM_SEED)
            x, y, z = rng.integers(0, n, size=(3, 4096))
            if not np.array_equal(T[T[x, y], z], T[x, T[y, z]]):
                raise GroupError("Cayley table is not associative")

    def _word_labels(self) -> list[str]:
        names = self.gen_names or tuple(f"g{k}" for k in range(len(self.generators)))
        words: list = [None] * self.order
        words[0] = []
        for y in self.bfs_order[1:]:
            words[y] = words[self.bfs_parent[y]] + [self.bfs_gen[y]]
        labels = []
        for w in words:
            if not w:
                labels.append("1")
                continue
            parts = []
            for k, grp in itertools.groupby(w):
                e = len(list(grp))
                parts.append(names[k] + (f"^{e}" if e > 1 else ""))
            labels.append("".join(parts))
        return labels

    def _conjugacy_classes(self) -> ConjugacyClasses:
        T = self.cayley
        inv = np.array(self.inv)
        n = self.order
        class_of = [-1] * n
        reps, members = [], []
        for x in range(n):
            if class_of[x] >= 0:
                continue
            orbit = sorted(set(T[T[:, x], inv].tolist()))
            c = len(reps)
            for y in orbit:
                class_of[y] = c
            reps.append(x)
            members.append(tuple(orbit))
        inverse_class = tuple(class_of[self.inv[r]] for r in reps)
        return ConjugacyClasses(tuple(class_of), tuple(reps), tuple(len(m) for m in members),
                                inverse_class, tuple(members))

    def _commutator_subgroup(self) -> Subgroup:
        if self.order == 1:
            return Subgroup((0,))
        T = self.cayley
        inv = np.array(self.inv)
        comms = set()
        for x in range(self.order):
            # x y x^-1 y^-1 for every y
            comms.update(T[T[T[x, :], self.inv[x]], inv].tolist())
        return self.closure(comms)

    def _abelianization(self):
        n = self.order
        K = self.commutator.members
        coset = [-1] * n
        ncos = 0
        T = self.cayley
        for x in range(n):
            if coset[x] < 0:
                for y in T[x, list(K)].tolist():
                    coset[y] = ncos
                ncos += 1
        k = len(self.generators)
        if ncos == 1 or k == 0:
            return (), tuple(() for _ in range(n))
        # spanning tree of the quotient, then Schreier relations
        rep_of = {}
        vec = {coset[0]: [0] * k}
        queue = deque([0])
        rep_of[coset[0]] = 0
        rels = []
        while queue:
            x = queue.popleft()
            cx = coset[x]
            for i, g in enumerate(self.generators):
                y = int(T[x, g])
                cy = coset[y]
                step = list(vec[cx])
                step[i] += 1
                if cy not in vec:
                    vec[cy] = step
                    rep_of[cy] = y
                    queue.append(y)
                else:
                    rels.append([a - b for a, b in zip(step, vec[cy])])
        L = LatticeBasis.from_generators(rels, k)
        rows = L.as_lists()
        _, D, V = snf(rows)
        diag = [D[i][i] if i < len(D) else 0 for i in range(k)]
        keep = [i for i, d in enumerate(diag) if d != 1]
        factors = tuple(diag[i] for i in keep)
        if any(d == 0 for d in factors):
            raise GroupError("abelianization of a finite group came out infinite")
        proj_of_coset = {}
        for c, v in vec.items():
            y = vecmat(v, V, k)
            proj_of_coset[c] = tuple(y[i] % diag[i] for i in keep)
        projection = tuple(proj_of_coset[coset[x]] for x in range(n))
        return factors, projection

    # -- basic operations ------------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        return int(self.cayley[x, y])

    def prod(self, xs: Iterable[int]) -> int:
        r = 0
        for x in xs:
            r = int(self.cayley[r, x])
        return r

    def power(self, x: int, k: int) -> int:
        k %= self.elt_order[x]
        r = 0
        for _ in range(k):
            r = int(self.cayley[r, x])
        return r

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return int(self.cayley[self.cayley[g, x], self.inv[g]])

    def commutator_of(self, a: int, b: int) -> int:
        """``a b a^-1 b^-1``."""
        T = self.cayley
        return int(T[T[T[a, b], self.inv[a]], self.inv[b]])

    def cyclic_members(self, x: int) -> list[int]:
        """``[1, x, x^2, ...]`` up to the order of ``x``."""
        out = [0]
        y = x
        while y != 0:
            out.append(y)
            y = int(self.cayley[y, x])
        return out

    def closure(self, gens: Iterable[int]) -> Subgroup:
        gens = sorted(set(int(g) for g in gens) - {0})
        seen = {0}
        frontier = [0]
        cols = [self.cayley[:, g].tolist() for g in gens]
        while frontier:
            nxt = []
            for col in cols:
                for x in frontier:
                    y = col[x]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return Subgroup(tuple(seen))

    def is_subgroup(self, members: Iterable[int]) -> bool:
        s = set(members)
        if 0 not in s:
            return False
        T = self.cayley
        lst = sorted(s)
        for x in lst:
            if self.inv[x] not in s:
                return False
            if not s.issuperset(T[x, lst].tolist()):
                return False
        return True

    def element(self, token: str) -> int:
        """Resolve an element label, a ``#id``, or a word in the generator names."""
        token = token.strip()
        if token in self._label_index:
            return self._label_index[token]
        if token.startswith("#"):
            try:
                i = int(token[1:])
            except ValueError:
                raise GroupSpecError(f"bad element id {token!r}") from None
            if not 0 <= i < self.order:
                raise GroupSpecError(f"element id {i} out of range")
            return i
        if token.startswith("(") and token.endswith(")"):
            return self.element(token[1:-1])
        if self.gen_names:
            pos = 0
            r = 0
            pat = re.compile(r"([A-Za-z])(?:\^(-?\d+))?")
            while pos < len(token):
                m = pat.match(token, pos)
                if not m or m.group(1) not in self.gen_names:
                    raise GroupSpecError(f"cannot parse element {token!r}")
                g = self.generators[self.gen_names.index(m.group(1))]
                e = int(m.group(2)) if m.group(2) else 1
                r = self.mul(r, self.power(g, e))
                pos = m.end()
            if token:
                return r
        raise GroupSpecError(f"unknown element {token!r}")

    # -- subgroups as groups ---------------------------------------------------

    def subgroup_group(self, S: Subgroup | Iterable[int] | None = None,
                       gens: Sequence[int] | None = None) -> tuple["FiniteGroup", "Homomorphism"]:
        """Materialize a subgroup as its own group plus the inclusion map.

        With ``gens=[y]`` the subgroup is ``<y>`` and its id ``k`` is ``y^k``.
        Repeated calls with the same input return the same objects, so data
        built over the subgroup compare equal across calls.
        """
        if gens is None and S is not None:
            key = ("members", frozenset(S.members if isinstance(S, Subgroup) else S))
        elif gens is not None and S is None:
            key = ("gens", tuple(int(g) for g in gens))
        else:
            key = None
        if key is not None and key in self._subgroup_cache:
            return self._subgroup_cache[key]
        if gens is None:
            if S is None:
                raise GroupError("need a subgroup or generators")
            if not isinstance(S, Subgroup):
                S = Subgroup(tuple(S))
            if not self.is_subgroup(S.members):
                raise GroupError("not a subgroup")
            gens = []
            span = {0}
            for m in S.members:
                if m not in span:
                    gens.append(m)
                    span = set(self.closure(gens).members)
        else:
            gens = [int(g) for g in gens]
            S2 = self.closure(gens)
            if S is not None and set(S2.members) != set(Subgroup(tuple(S)).members):
                raise GroupError("generators do not generate the given subgroup")
            S = S2
        # enumerate by BFS so a single generator y gives ids y^k
        order = [0]
        seen = {0}
        queue = deque([0])
        cols = [self.cayley[:, g].tolist() for g in gens]
        while queue:
            x = queue.popleft()
            for col in cols:
                y = col[x]
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        gid = np.array(order)
        lookup = np.full(self.order, -1, dtype=np.int64)
        lookup[gid] = np.arange(len(order))
        table = lookup[self.cayley[np.ix_(gid, gid)]]
        local_gens = [int(lookup[g]) for g in gens]
        K = FiniteGroup(table, local_gens, labels=[self.labels[g] for g in order],
                        name=f"subgroup of {self.name or 'G'}", parent_ids=order)
        result = (K, Homomorphism(K, self, tuple(order)))
        if key is not None:
            self._subgroup_cache[key] = result
        return result

    # -- export -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "cayley": self.cayley.reshape(-1).tolist(),
                "labels": list(self.labels)}

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, name={self.name!r})"


# ----------------------------------------------------------------------------
# building groups from text
# ----------------------------------------------------------------------------

def parse_cycles(text: str, degree: int) -> tuple:
    """Parse ``(1 2 3)(4 5)`` into a 0-based image tuple."""
    perm = list(range(degree))
    text = text.strip()
    if not re.fullmatch(r"(\(\s*[\d\s]*\)\s*)*", text):
        raise GroupSpecError(f"malformed cycle notation {text!r}")
    used = set()
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) for t in cyc.split()]
        for p in pts:
            if not 1 <= p <= degree:
                raise GroupSpecError(f"point {p} outside 1..{degree}")
            if p in used:
                raise GroupSpecError(f"point {p} repeated in {text!r}")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def _enumerate(identity, gens: list, mul, cap: int):
    index = {identity: 0}
    elems = [identity]
    right = [[] for _ in gens]
    i = 0
    while i < len(elems):
        x = elems[i]
        for k, g in enumerate(gens):
            y = mul(x, g)
            j = index.get(y)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise CapExceeded(f"group order exceeds the cap of {cap}")
                index[y] = j
                elems.append(y)
            right[k].append(j)
        i += 1
    return elems, index, right


def _table_from_right(n: int, gens_idx: list, right: list, parent: list, via: list, order: list):
    """Fill the Cayley table using ``x*y = (x*parent(y))*gen``."""
    T = np.zeros((n, n), dtype=np.int32)
    T[:, 0] = np.arange(n)
    R = [np.array(r, dtype=np.int32) for r in right]
    for y in order[1:]:
        T[:, y] = R[via[y]][T[:, parent[y]]]
    return T


def build_group(spec: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Build a group from ``cyclic n``, ``abelian n1 ... nk`` or ``perm d; g1; ...``."""
    text = spec.strip()
    if not text:
        raise GroupSpecError("empty group spec")
    head, _, rest = text.partition(" ")
    kind = head.lower()
    if kind in ("cyclic", "abelian"):
        try:
            mods = [int(t) for t in rest.split()]
        except ValueError:
            raise GroupSpecError(f"malformed group spec {spec!r}") from None
        if not mods or any(m < 1 for m in mods) or (kind == "cyclic" and len(mods) != 1):
            raise GroupSpecError(f"malformed group spec {spec!r}")
        total = 1
        for m in mods:
            total *= m
        if total > cap:
            raise CapExceeded(f"group order {total} exceeds the cap of {cap}")
        k = len(mods)
        ident = (0,) * k
        gens = [tuple(int(i == j) % mods[i] for i in range(k)) for j in range(k)]

        def mul(a, b):
            return tuple((x + y) % m for x, y, m in zip(a, b, mods))

        elems, index, right = _enumerate(ident, gens, mul, cap)
        names = ["x"] if k == 1 else [(_ABELIAN_NAMES[j] if j < len(_ABELIAN_NAMES) else f"g{j}")
                                      for j in range(k)]
        labels = []
        for e in elems:
            parts = [names[j] + (f"^{a}" if a > 1 else "") for j, a in enumerate(e) if a]
            labels.append("".join(parts) or "1")
        gen_ids = [index[g] for g in gens]
        spec_name = f"{kind} " + " ".join(map(str, mods))
    elif kind == "perm" or text.lower().startswith("perm"):
        parts = [p.strip() for p in text[4:].split(";")]
        try:
            degree = int(parts[0])
        except (ValueError, IndexError):
            raise GroupSpecError(f"malformed perm spec {spec!r}") from None
        if degree < 1:
            raise GroupSpecError("degree must be positive")
        gens = [parse_cycles(p, degree) for p in parts[1:] if p]
        ident = tuple(range(degree))

        def mul(p, q):
            return tuple(p[i] for i in q)

        elems, index, right = _enumerate(ident, gens, mul, cap)
        names = [(_PERM_NAMES[j] if j < len(_PERM_NAMES) else f"g{j}") for j in range(len(gens))]
        labels = None
        gen_ids = [index[g] for g in gens]
        spec_name = text
    else:
        raise GroupSpecError(f"unknown group kind {head!r}")

    n = len(elems)
    # BFS tree identical to the enumeration order
    parent = [-1] * n
    via = [-1] * n
    seen = [False] * n
    seen[0] = True
    order = [0]
    for x in range(n):
        for k in range(len(gens)):
            y = right[k][x]
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                via[y] = k
                order.append(y)
    T = _table_from_right(n, gen_ids, right, parent, via, order)
    return FiniteGroup(T, gen_ids, labels=labels, gen_names=names, name=spec_name)


# ----------------------------------------------------------------------------
# subgroups and double cosets
# ----------------------------------------------------------------------------

def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    return G.classes


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    return G.commutator


def abelianization(G: FiniteGroup) -> tuple[tuple, tuple]:
    """Invariant factors of ``G/[G,G]`` and the projection ``id -> vector``."""
    return G.ab_factors, G.ab_projection


def _conjugate_subgroup(G: FiniteGroup, g: int, S: Subgroup) -> Subgroup:
    return Subgroup(tuple(G.conj(g, x) for x in S.members))


def _group_by_conjugacy(G: FiniteGroup, subs: Iterable[Subgroup]) -> list[SubgroupClass]:
    pool = {s.members: s for s in subs}
    out = []
    for key in sorted(pool, key=lambda m: (len(m), m)):
        if key not in pool:
            continue
        S = pool[key]
        conjs = {}
        for g in range(G.order):
            C = _conjugate_subgroup(G, g, S)
            conjs[C.members] = C
        for m in conjs:
            pool.pop(m, None)
        ordered = tuple(conjs[m] for m in sorted(conjs))
        out.append(SubgroupClass(ordered[0], ordered))
    out.sort(key=lambda sc: (sc.order, sc.rep.members))
    return out


def subgroups(G: FiniteGroup, mode: str = "all") -> list[SubgroupClass]:
    """Subgroups up to conjugacy, each with its full list of conjugates."""
    if mode == "cyclic":
        if G.order > DEFAULT_CAP:
            raise CapExceeded("cyclic subgroup enumeration is capped at order 2000")
        cyc = {}
        for g in range(G.order):
            S = Subgroup(tuple(G.cyclic_members(g)))
            cyc[S.members] = S
        return _group_by_conjugacy(G, cyc.values())
    if mode != "all":
        raise ValueError(f"unknown mode {mode!r}")
    if G.order > ALL_SUBGROUPS_CAP:
        raise CapExceeded(f"full subgroup enumeration is capped at order {ALL_SUBGROUPS_CAP}")
    return _group_by_conjugacy(G, _all_subgroups(G))


def _all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    # every subgroup is a join of cyclic subgroups; close the family under joins
    def mask(members):
        m = 0
        for x in members:
            m |= 1 << x
        return m

    cyclic = {}
    for g in range(G.order):
        mem = G.cyclic_members(g)
        cyclic.setdefault(mask(mem), g)
    cyc_items = sorted(cyclic.items(), key=lambda kv: kv[1])
    known = {m: (g,) if g else () for m, g in cyclic.items()}
    queue = deque(known.items())
    while queue:
        m, gens = queue.popleft()
        for cm, cg in cyc_items:
            if cm & ~m == 0:
                continue
            J = G.closure(gens + (cg,))
            jm = mask(J.members)
            if jm not in known:
                known[jm] = gens + (cg,)
                queue.append((jm, gens + (cg,)))
    out = []
    for m in known:
        out.append(Subgroup(tuple(i for i in range(G.order) if m >> i & 1)))
    return out


def double_cosets(G: FiniteGroup, H: Subgroup, K: Subgroup) -> list[int]:
    """Least-id representatives ``s`` of the double cosets ``K s H``."""
    for S in (H, K):
        if not G.is_subgroup(S.members):
            raise GroupError("double_cosets needs subgroups")
    covered = [False] * G.order
    reps = []
    T = G.cayley
    Hl = list(H.members)
    for s in range(G.order):
        if covered[s]:
            continue
        reps.append(s)
        for k in K.members:
            ks = int(T[k, s])
            for y in T[ks, Hl].tolist():
                covered[y] = True
    return reps


def double_coset(G: FiniteGroup, H: Subgroup, K: Subgroup, s: int) -> set[int]:
    T = G.cayley
    out = set()
    for k in K.members:
        out.update(T[T[k, s], list(H.members)].tolist())
    return out


# ----------------------------------------------------------------------------
# homomorphisms
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    domain: FiniteGroup
    codomain: FiniteGroup
    image: tuple

    def __call__(self, x: int) -> int:
        return self.image[x]

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``self o other``."""
        if other.codomain is not self.domain:
            raise HomomorphismError("maps are not composable")
        return Homomorphism(other.domain, self.codomain,
                            tuple(self.image[other.image[x]] for x in range(other.domain.order)))

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.domain.order


def verify_homomorphism(f: Homomorphism, samples: int = HOM_SAMPLES, seed: int = HOM_SEED) -> bool:
    H, G = f.domain, f.codomain
    img = np.array(f.image)
    if img[0] != 0:
        return False
    if H.order <= HOM_EXHAUSTIVE_LIMIT:
        return bool(np.array_equal(img[H.cayley], G.cayley[img[:, None], img[None, :]]))
    rng = np.random.default_rng(seed)
    x, y = rng.integers(0, H.order, size=(2, samples))
    return bool(np.array_equal(img[H.cayley[x, y]], G.cayley[img[x], img[y]]))


def make_homomorphism(H: FiniteGroup, G: FiniteGroup, gen_images: Sequence[int]) -> Homomorphism:
    """Extend generator images along H's BFS words and verify multiplicativity."""
    if len(gen_images) != len(H.generators):
        raise HomomorphismError("need exactly one image per generator")
    img = [0] * H.order
    for y in H.bfs_order[1:]:
        img[y] = G.mul(img[H.bfs_parent[y]], int(gen_images[H.bfs_gen[y]]))
    f = Homomorphism(H, G, tuple(img))
    for g, im in zip(H.generators, gen_images):
        if img[g] != int(im):
            raise HomomorphismError("generator images are inconsistent with the relations of H")
    if not verify_homomorphism(f):
        raise HomomorphismError("generator images are inconsistent with the relations of H")
    return f


def identity_hom(G: FiniteGroup) -> Homomorphism:
    return Homomorphism(G, G, tuple(range(G.order)))


def random_word_check(f: Homomorphism, words: int = 100, length: int = 12, seed: int = 0) -> bool:
    """Push random products through ``f`` and compare with the product of images."""
    rnd = random.Random(seed)
    H, G = f.domain, f.codomain
    for _ in range(words):
        xs = [rnd.randrange(H.order) for _ in range(rnd.randint(1, length))]
        if f(H.prod(xs)) != G.prod(f(x) for x in xs):
            return False
    return True
