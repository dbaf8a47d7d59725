"""Finite groups given by Cayley tables.

Elements are dense integer indices ``0..order-1``. Subgroups and arbitrary
element sets are frozensets of indices. Everything here is immutable.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    NotAGroup,
    NotASubgroup,
    NotNormal,
    NotNormalStep,
    TooLarge,
    VerificationFailed,
)

EXHAUSTIVE_ASSOC_LIMIT = 512
SAMPLED_ASSOC_TRIPLES = 100_000
ISO_ORDER_CAP = 64


# ---------------------------------------------------------------------------
# groups and subgroups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group on ``range(order)`` with multiplication ``table[i][j] = i*j``."""

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = ""

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def prod(self, elements: Iterable[int]) -> int:
        out = self.identity
        for x in elements:
            out = self.table[out][x]
        return out

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverse[g]]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, x: int) -> int:
        n, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            n += 1
        return n

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(x) for x in range(self.order))

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([self.identity]))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} order={self.order}>"


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __le__(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and self.members < other.members

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    @cached_property
    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def as_group(self) -> tuple[FiniteGroup, dict[int, int]]:
        """Materialize as a standalone group; returns (group, parent index -> new index)."""
        elems = self.sorted_members
        pos = {x: i for i, x in enumerate(elems)}
        t = self.parent.table
        table = tuple(tuple(pos[t[a][b]] for b in elems) for a in elems)
        return _group_unchecked(table), pos

    def __repr__(self) -> str:
        shown = list(self.sorted_members[:8])
        more = "..." if self.order > 8 else ""
        return f"Subgroup(order={self.order}, {shown}{more})"


@dataclass(frozen=True)
class CosetList:
    """Right cosets ``H x`` of ``subgroup`` inside ``ambient``."""

    subgroup: Subgroup
    ambient: Subgroup
    cosets: tuple[frozenset[int], ...]
    transversal: tuple[int, ...]
    index_of: dict[int, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.cosets)

    def coset_of(self, x: int) -> int:
        return self.index_of[x]


@dataclass(frozen=True)
class Chain:
    """Ascending list of subgroups of one parent."""

    groups: tuple[Subgroup, ...]
    labels: tuple = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(None for _ in self.groups))
        for lo, hi in zip(self.groups, self.groups[1:]):
            if not lo <= hi:
                raise NotASubgroup("chain is not ascending")

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)

    def __getitem__(self, i):
        return self.groups[i]

    def orders(self) -> list[int]:
        return [g.order for g in self.groups]

    def steps(self) -> Iterator[tuple[Subgroup, Subgroup]]:
        return zip(self.groups, self.groups[1:])


@dataclass(frozen=True)
class VerifiedIsomorphism:
    """An isomorphism ``A/N -> A'/N'`` checked on every coset (pair)."""

    domain_quotient: tuple[Subgroup, Subgroup]
    codomain_quotient: tuple[Subgroup, Subgroup]
    map: dict[int, int]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.map)


# ---------------------------------------------------------------------------
# construction


def _group_unchecked(table, name: str = "") -> FiniteGroup:
    n = len(table)
    table = tuple(tuple(int(v) for v in row) for row in table)
    identity = next(e for e in range(n) if table[e] == tuple(range(n)))
    inverse = tuple(table[a].index(identity) for a in range(n))
    return FiniteGroup(n, table, identity, inverse, name)


def _check_associative(t: np.ndarray, seed: int = 0) -> tuple[int, int, int] | None:
    n = t.shape[0]
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        chunk = max(1, 2_000_000 // (n * n))
        for start in range(0, n, chunk):
            a = np.arange(start, min(n, start + chunk))
            lhs = t[t[a, :], :]  # (a*b)*c
            rhs = t[a][:, t]  # a*(b*c)
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                i, b, c = bad[0]
                return int(a[i]), int(b), int(c)
        return None
    rng = np.random.default_rng(seed)
    a, b, c = (rng.integers(0, n, SAMPLED_ASSOC_TRIPLES) for _ in range(3))
    bad = np.nonzero(t[t[a, b], c] != t[a, t[b, c]])[0]
    if len(bad):
        i = bad[0]
        return int(a[i]), int(b[i]), int(c[i])
    return None


def group_from_table(table: Sequence[Sequence[int]], order: int | None = None, name: str = "") -> FiniteGroup:
    """Validate a Cayley table and build the group (identity and inverses inferred)."""
    n = len(table) if order is None else order
    if n < 1:
        raise NotAGroup("order must be positive")
    if len(table) != n or any(len(row) != n for row in table):
        raise NotAGroup(f"table is not {n}x{n}")
    t = np.asarray(table, dtype=np.int64)
    if t.min() < 0 or t.max() >= n:
        raise NotAGroup("table entry out of range")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), full):
            raise NotAGroup(f"row {i} is not a permutation")
        if not np.array_equal(np.sort(t[:, i]), full):
            raise NotAGroup(f"column {i} is not a permutation")
    ids = [e for e in range(n) if np.array_equal(t[e], full) and np.array_equal(t[:, e], full)]
    if not ids:
        raise NotAGroup("no two-sided identity")
    bad = _check_associative(t)
    if bad is not None:
        raise NotAGroup(f"associativity fails at triple {bad}")
    return _group_unchecked(t.tolist(), name)


@lru_cache(maxsize=None)
def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    return _group_unchecked([[(i + j) % n for j in range(n)] for i in range(n)], f"Z{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Element (g, h) has index ``g*|H| + h``."""
    m = H.order
    table = [
        [G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(G.order * m)]
        for a in range(G.order * m)
    ]
    name = f"{G.name}x{H.name}" if G.name and H.name else ""
    return _group_unchecked(table, name)


@lru_cache(maxsize=None)
def symmetric(n: int) -> FiniteGroup:
    """Permutations of ``range(n)`` in lexicographic order; (p*q)(i) = p(q(i))."""
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return _group_unchecked(table, f"S{n}")


def standard_group(kind: str, *args) -> FiniteGroup:
    if kind == "cyclic":
        return cyclic(*args)
    if kind == "direct_product":
        return direct_product(*args)
    if kind == "symmetric":
        return symmetric(*args)
    if kind == "dihedral":
        return dihedral(*args)
    raise ValueError(f"unknown group kind {kind!r}")


def group_from_spec(text: str) -> FiniteGroup:
    """Parse shorthands like ``Z4``, ``S3``, ``Z2xZ2``."""
    parts = text.replace("*", "x").split("x")
    out = None
    for part in parts:
        part = part.strip()
        if part[:1] in "ZC" and part[1:].isdigit():
            g = cyclic(int(part[1:]))
        elif part[:1] == "S" and part[1:].isdigit():
            g = symmetric(int(part[1:]))
        elif part[:1] == "D" and part[1:].isdigit():
            g = dihedral(int(part[1:]))
        else:
            raise ValueError(f"bad group shorthand {text!r}")
        out = g if out is None else direct_product(out, g)
    if out is None:
        raise ValueError(f"bad group shorthand {text!r}")
    return out


# ---------------------------------------------------------------------------
# subgroups, products, cosets


def _closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    gens = [g for g in set(gens) if g != G.identity]
    seen = {G.identity}
    frontier = [G.identity]
    t = G.table
    while frontier:
        nxt = []
        for x in frontier:
            row = t[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    seed = list(seed)
    for x in seed:
        if not 0 <= x < G.order:
            raise IndexError(f"element {x} out of range")
    return Subgroup(G, _closure(G, seed))


def subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    """Wrap a member set, checking it really is a subgroup."""
    members = frozenset(members)
    if not is_subgroup_set(G, members):
        raise NotASubgroup(f"set of size {len(members)} is not a subgroup")
    return Subgroup(G, members)


def is_subgroup_set(G: FiniteGroup, members: frozenset[int]) -> bool:
    if G.identity not in members:
        return False
    t = G.table
    return all(t[a][b] in members for a in members for b in members)


def _check_subgroup(H: Subgroup, ambient: Subgroup | None = None) -> None:
    if not is_subgroup_set(H.parent, H.members):
        raise NotASubgroup("members are not closed")
    if ambient is not None and not H <= ambient:
        raise NotASubgroup("not contained in the ambient subgroup")


def is_normal(ambient: Subgroup, H: Subgroup) -> bool:
    _check_subgroup(H, ambient)
    G = ambient.parent
    return all(G.conj(g, h) in H.members for g in ambient.members for h in H.members)


def product_set(G: FiniteGroup, A: Iterable[int], B: Iterable[int]) -> tuple[frozenset[int], bool]:
    """``{ab}`` and whether it is a subgroup."""
    B = list(B)
    t = G.table
    out = frozenset(t[a][b] for a in A for b in B)
    return out, is_subgroup_set(G, out)


def product(A: Subgroup, B: Subgroup) -> Subgroup:
    """``AB`` for subgroups whose product is a subgroup (e.g. one of them normal)."""
    if A.parent is not B.parent:
        raise NotASubgroup("different parents")
    if A.members <= B.members:
        return B
    if B.members <= A.members:
        return A
    members, ok = product_set(A.parent, A.members, B.members)
    if not ok:
        raise NotASubgroup("product set is not a subgroup")
    return Subgroup(A.parent, members)


def intersect(A: Subgroup, B: Subgroup) -> Subgroup:
    if A.parent is not B.parent:
        raise NotASubgroup("different parents")
    return Subgroup(A.parent, A.members & B.members)


def canonical_rep(coset: Iterable[int], identity: int) -> int:
    coset = set(coset) if not isinstance(coset, (set, frozenset)) else coset
    return identity if identity in coset else min(coset)


def right_cosets(ambient: Subgroup, H: Subgroup) -> CosetList:
    """Right cosets ``Hx``; the identity coset comes first, the rest sorted by representative."""
    _check_subgroup(H, ambient)
    G = ambient.parent
    t = G.table
    index_of: dict[int, int] = {}
    found = []
    for x in [G.identity] + sorted(ambient.members - {G.identity}):
        if x in index_of:
            continue
        coset = frozenset(t[h][x] for h in H.members)
        found.append((x, coset))
        for y in coset:
            index_of[y] = -1
    found.sort(key=lambda p: (p[0] != G.identity, p[0]))
    index_of = {}
    for i, (_, coset) in enumerate(found):
        for y in coset:
            index_of[y] = i
    return CosetList(
        subgroup=H,
        ambient=ambient,
        cosets=tuple(c for _, c in found),
        transversal=tuple(x for x, _ in found),
        index_of=index_of,
    )


def quotient_group(ambient: Subgroup, H: Subgroup) -> tuple[FiniteGroup, dict[int, int]]:
    """The group on coset indices, plus the projection ``element -> coset index``."""
    if not is_normal(ambient, H):
        raise NotNormal("subgroup is not normal in the ambient group")
    cl = right_cosets(ambient, H)
    t = ambient.parent.table
    reps = cl.transversal
    table = [[cl.index_of[t[a][b]] for b in reps] for a in reps]
    return _group_unchecked(table), dict(cl.index_of)


# ---------------------------------------------------------------------------
# normal structure


def conjugacy_classes(ambient: Subgroup, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Classes of elements (of ``within``, default ``ambient``) under conjugation by ``ambient``."""
    G = ambient.parent
    todo = set(ambient.members if within is None else within)
    classes = []
    while todo:
        x = min(todo)
        cls = frozenset(G.conj(g, x) for g in ambient.members)
        classes.append(cls)
        todo -= cls
    return classes


def normal_closure(ambient: Subgroup, seed: Iterable[int]) -> Subgroup:
    G = ambient.parent
    gens = {G.conj(g, x) for x in seed for g in ambient.members}
    return Subgroup(G, _closure(G, gens))


def normal_subgroups_between(upper: Subgroup, lower: Subgroup) -> list[Subgroup]:
    """All normal subgroups of ``upper`` that contain ``lower`` (``lower`` normal in ``upper``)."""
    G = upper.parent
    classes = conjugacy_classes(upper)
    start = normal_closure(upper, lower.members)
    found = {start.members}
    queue = [start.members]
    while queue:
        N = queue.pop()
        for cls in classes:
            if cls <= N:
                continue
            M = _closure(G, N | cls)
            if M not in found:
                found.add(M)
                queue.append(M)
    return sorted((Subgroup(G, m) for m in found), key=lambda s: (s.order, s.sorted_members))


def is_simple_quotient(upper: Subgroup, lower: Subgroup) -> bool:
    """True iff ``lower`` is a proper normal subgroup of ``upper`` with simple quotient."""
    if not lower < upper or not is_normal(upper, lower):
        return False
    G = upper.parent
    for cls in conjugacy_classes(upper, upper.members - lower.members):
        if _closure(G, lower.members | cls) != upper.members:
            return False
    return True


def commutator_subgroup(H: Subgroup) -> Subgroup:
    G = H.parent
    t, inv = G.table, G.inverse
    comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in H.members for b in H.members}
    return Subgroup(G, _closure(G, comms))


def derived_series(G: FiniteGroup | Subgroup) -> list[Subgroup]:
    """Descending derived series, stopping once it stabilizes."""
    H = G.whole if isinstance(G, FiniteGroup) else G
    series = [H]
    while True:
        D = commutator_subgroup(series[-1])
        if D == series[-1]:
            return series
        series.append(D)


def is_solvable(G: FiniteGroup | Subgroup) -> bool:
    return derived_series(G)[-1].is_trivial()


def _maximal_normal_above(upper: Subgroup, lower: Subgroup) -> Subgroup:
    candidates = [N for N in normal_subgroups_between(upper, lower) if N != upper]
    return min(candidates, key=lambda N: (-N.order, N.sorted_members))


def refine_step(lower: Subgroup, upper: Subgroup) -> list[Subgroup]:
    """Composition series from ``lower`` up to ``upper``, both ends included.

    Top-down: repeatedly take the largest proper normal subgroup of the current
    top that contains ``lower``; ties go to the lexicographically smallest set.
    """
    out = [upper]
    while out[-1] != lower:
        out.append(_maximal_normal_above(out[-1], lower))
    return out[::-1]


def composition_refinement(chain: Chain) -> Chain:
    groups: list[Subgroup] = []
    labels: list = []
    for i, (lo, hi) in enumerate(chain.steps()):
        if not is_normal(hi, lo):
            raise NotNormalStep(f"step {i} is not normal ({lo.order} in {hi.order})")
    if not chain.groups:
        return chain
    groups.append(chain.groups[0])
    labels.append(chain.labels[0])
    for (lo, hi), label in zip(chain.steps(), chain.labels[1:]):
        if lo == hi:
            continue
        inner = refine_step(lo, hi)
        groups.extend(inner[1:])
        labels.extend([None] * (len(inner) - 2) + [label])
    return Chain(tuple(groups), tuple(labels))


def factor_descriptor(upper: Subgroup, lower: Subgroup) -> tuple[int, str]:
    """(order, type) of a simple factor: ``Zp`` when cyclic of prime order."""
    n = upper.order // lower.order
    if n > 1 and all(n % p for p in range(2, int(n**0.5) + 1)):
        return n, f"Z{n}"
    return n, "nonabelian"


def chain_factors(chain: Chain) -> tuple[tuple[int, str], ...]:
    return tuple(sorted(factor_descriptor(hi, lo) for lo, hi in chain.steps() if lo != hi))


def jordan_holder_factors(G: FiniteGroup | Subgroup) -> tuple[tuple[int, str], ...]:
    H = G.whole if isinstance(G, FiniteGroup) else G
    chain = composition_refinement(Chain((H.parent.trivial, H)) if not H.is_trivial() else Chain((H,)))
    return chain_factors(chain)


def eta(G: FiniteGroup | Subgroup) -> int:
    """Composition length."""
    return len(jordan_holder_factors(G))


# ---------------------------------------------------------------------------
# isomorphisms


def _generators(G: FiniteGroup) -> list[int]:
    """Small generating set, preferring elements of large order."""
    gens: list[int] = []
    span = frozenset([G.identity])
    by_order = sorted(range(G.order), key=lambda x: (-G.element_orders[x], x))
    while len(span) < G.order:
        x = next(x for x in by_order if x not in span)
        gens.append(x)
        span = _closure(G, gens)
    return gens


def iter_isomorphisms(
    G: FiniteGroup,
    H: FiniteGroup,
    allowed: Callable[[int, int], bool] | None = None,
) -> Iterator[dict[int, int]]:
    """All isomorphisms G -> H (optionally constrained elementwise by ``allowed``)."""
    if G.order != H.order:
        return
    if Counter(G.element_orders) != Counter(H.element_orders):
        return
    gens = _generators(G)
    cands = [
        [y for y in range(H.order) if H.element_orders[y] == G.element_orders[g] and (allowed is None or allowed(g, y))]
        for g in gens
    ]
    for images in itertools.product(*cands):
        phi = {G.identity: H.identity}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, images):
                    y, v = G.table[x][g], H.table[phi[x]][h]
                    if y in phi:
                        if phi[y] != v:
                            ok = False
                            break
                    else:
                        phi[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(set(phi.values())) != G.order:
            continue
        if allowed is not None and not all(allowed(x, y) for x, y in phi.items()):
            continue
        yield phi


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, allowed=None, cap: int = ISO_ORDER_CAP) -> dict[int, int] | None:
    if max(G.order, H.order) > cap:
        raise TooLarge(f"isomorphism search capped at order {cap}")
    return next(iter_isomorphisms(G, H, allowed), None)


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, phi: Sequence[int] | dict[int, int]) -> tuple[int, int] | None:
    """First failing pair, or None."""
    for a in range(G.order):
        pa = phi[a]
        row = G.table[a]
        for b in range(G.order):
            if phi[row[b]] != H.table[pa][phi[b]]:
                return a, b
    return None


def quotients_isomorphic(a: tuple[Subgroup, Subgroup], b: tuple[Subgroup, Subgroup], cap: int = ISO_ORDER_CAP) -> bool:
    """Are A/N and A'/N' isomorphic? Explicit search up to ``cap``, then order and abelianness."""
    Qa, _ = quotient_group(*a)
    Qb, _ = quotient_group(*b)
    if Qa.order != Qb.order:
        return False
    if Qa.order <= cap:
        return find_isomorphism(Qa, Qb, cap=cap) is not None
    return Qa.is_abelian == Qb.is_abelian and Counter(Qa.element_orders) == Counter(Qb.element_orders)


def verify_coset_map(
    domain: tuple[Subgroup, Subgroup],
    codomain: tuple[Subgroup, Subgroup],
    send: Callable[[frozenset[int]], Iterable[int]],
    name: str = "",
    require_homomorphism: bool = True,
) -> VerifiedIsomorphism:
    """Check that ``send`` (domain coset -> element set) induces an isomorphism of quotients.

    Each image must be exactly one codomain coset (well defined), distinct cosets
    must go to distinct cosets (bijective), and products of cosets must be
    preserved (exhaustively over pairs).
    """
    A, N = domain
    A2, N2 = codomain
    src = right_cosets(A, N)
    dst = right_cosets(A2, N2)
    if len(src) != len(dst):
        raise VerificationFailed(f"{name}: quotient orders differ ({len(src)} vs {len(dst)})")
    image = []
    for rep, coset in zip(src.transversal, src.cosets):
        out = frozenset(send(coset))
        if not out:
            raise VerificationFailed(f"{name}: empty image", witness=rep)
        idx = {dst.index_of.get(y) for y in out}
        if None in idx or len(idx) != 1:
            raise VerificationFailed(f"{name}: image of coset of {rep} is not a single coset", witness=rep)
        i = idx.pop()
        if out != dst.cosets[i]:
            raise VerificationFailed(f"{name}: image of coset of {rep} is a proper part of a coset", witness=rep)
        image.append(i)
    if len(set(image)) != len(image):
        raise VerificationFailed(f"{name}: map is not injective")
    if require_homomorphism:
        t = A.parent.table
        for a, ia in zip(src.transversal, image):
            for b, ib in zip(src.transversal, image):
                ab = src.index_of[t[a][b]]
                lhs = image[ab]
                rhs = dst.index_of[t[dst.transversal[ia]][dst.transversal[ib]]]
                if lhs != rhs:
                    raise VerificationFailed(f"{name}: not a homomorphism at ({a}, {b})", witness=(a, b))
    mapping = {rep: dst.transversal[i] for rep, i in zip(src.transversal, image)}
    return VerifiedIsomorphism(domain, codomain, mapping, name)


def random_subgroup(G: FiniteGroup, rng: random.Random, max_gens: int = 2) -> Subgroup:
    gens = [rng.randrange(G.order) for _ in range(rng.randint(0, max_gens))]
    return subgroup_closure(G, gens)


@lru_cache(maxsize=None)
def dihedral(n: int) -> FiniteGroup:
    """Order 2n: index a + n*s stands for r^a f^s, with f r f = r^-1."""
    if n < 1:
        raise ValueError("need n >= 1")

    def mul(x, y):
        (a, s), (b, t) = divmod(x, n)[::-1], divmod(y, n)[::-1]
        return (a + (b if s == 0 else -b)) % n + n * ((s + t) % 2)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    return _group_unchecked(table, f"D{n}")
