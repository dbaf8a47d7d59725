"""Group trellis sections, next/previous branch sets, and the X/Y chains."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    IndexOutOfRange,
    InvalidPath,
    LengthMismatch,
    NotControllable,
    NotHomomorphism,
    NotSubdirect,
    TooLarge,
    VerificationFailed,
)
from .groups import (
    Chain,
    FiniteGroup,
    Subgroup,
    _group_unchecked,
    direct_product,
    find_isomorphism,
    is_homomorphism,
    iter_isomorphisms,
)

TABLE_CAP = 1024

PathSegment = tuple  # branch indices b_0..b_l


@dataclass(frozen=True, eq=False)
class TrellisSection:
    branch_group: FiniteGroup
    state_group: FiniteGroup
    left: tuple[int, ...]
    right: tuple[int, ...]
    name: str = ""

    @property
    def B(self) -> FiniteGroup:
        return self.branch_group

    @property
    def S(self) -> FiniteGroup:
        return self.state_group

    @cached_property
    def left_fibers(self) -> tuple[tuple[int, ...], ...]:
        fib = [[] for _ in range(self.S.order)]
        for b, s in enumerate(self.left):
            fib[s].append(b)
        return tuple(tuple(f) for f in fib)

    @cached_property
    def right_fibers(self) -> tuple[tuple[int, ...], ...]:
        fib = [[] for _ in range(self.S.order)]
        for b, s in enumerate(self.right):
            fib[s].append(b)
        return tuple(tuple(f) for f in fib)

    @cached_property
    def X0(self) -> Subgroup:
        return Subgroup(self.B, frozenset(self.left_fibers[self.S.identity]))

    @cached_property
    def Y0(self) -> Subgroup:
        return Subgroup(self.B, frozenset(self.right_fibers[self.S.identity]))

    @cached_property
    def chains(self) -> "ChainPair":
        return chains(self)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<TrellisSection{label} |B|={self.B.order} |S|={self.S.order}>"


@dataclass(frozen=True)
class ChainPair:
    """X_{-1} ⊂ X_0 ⊂ ... ⊂ X_ell = B and the dual Y chain (stored from index -1)."""

    x_chain: Chain
    y_chain: Chain
    ell: int

    def X(self, j: int) -> Subgroup:
        if j < -1:
            j = -1
        return self.x_chain[min(j, self.ell) + 1]

    def Y(self, k: int) -> Subgroup:
        if k < -1:
            k = -1
        return self.y_chain[min(k, self.ell) + 1]


# ---------------------------------------------------------------------------
# construction


def section_from_parts(B: FiniteGroup, S: FiniteGroup, left: Sequence[int], right: Sequence[int], name: str = "") -> TrellisSection:
    left, right = tuple(int(v) for v in left), tuple(int(v) for v in right)
    for label, proj in (("left", left), ("right", right)):
        if len(proj) != B.order:
            raise NotHomomorphism(f"{label} map has {len(proj)} entries, expected {B.order}")
        if any(not 0 <= s < S.order for s in proj):
            raise NotHomomorphism(f"{label} map has an entry outside the state group")
        bad = is_homomorphism(B, S, proj)
        if bad is not None:
            raise NotHomomorphism(f"{label} map is not a homomorphism at {bad}")
        if len(set(proj)) != S.order:
            raise NotSubdirect(f"{label} map is not onto the state group")
    return TrellisSection(B, S, left, right, name)


def shift_register_section(p: int, m: int) -> TrellisSection:
    """SR(p, m): branch (x, s_1..s_m) has index x + p*s_1 + ... + p^m*s_m."""
    if p < 2 or m < 1:
        raise ValueError("need p >= 2 and m >= 1")
    n = p ** (m + 1)
    if n > TABLE_CAP:
        raise TooLarge(f"|B| = {n} exceeds the table cap {TABLE_CAP}")

    def digits(v, k):
        return [(v // p**i) % p for i in range(k)]

    def add_table(k):
        size = p**k
        dig = [digits(v, k) for v in range(size)]
        return [
            [sum(((a + b) % p) * p**i for i, (a, b) in enumerate(zip(dig[u], dig[v]))) for v in range(size)]
            for u in range(size)
        ]

    B = _group_unchecked(add_table(m + 1), f"Z{p}^{m + 1}")
    S = _group_unchecked(add_table(m), f"Z{p}^{m}")
    left = [b // p for b in range(n)]
    right = [b % p**m for b in range(n)]
    return section_from_parts(B, S, left, right, name=f"SR({p},{m})")


def complete_section(S: FiniteGroup, name: str = "") -> TrellisSection:
    """B = S x S with branch (a, b) at index a*|S| + b, left = a, right = b."""
    B = direct_product(S, S)
    n = S.order
    left = [i // n for i in range(B.order)]
    right = [i % n for i in range(B.order)]
    return section_from_parts(B, S, left, right, name=name or (f"complete({S.name})" if S.name else ""))


# ---------------------------------------------------------------------------
# branch sets


def right_image(section: TrellisSection, U: Iterable[int]) -> frozenset[int]:
    return frozenset(section.right[b] for b in U)


def left_image(section: TrellisSection, U: Iterable[int]) -> frozenset[int]:
    return frozenset(section.left[b] for b in U)


def next_set(section: TrellisSection, U: Iterable[int]) -> frozenset[int]:
    """N(U): branches whose left state is a right state of U."""
    fib = section.left_fibers
    return frozenset(e for s in right_image(section, U) for e in fib[s])


def prev_set(section: TrellisSection, U: Iterable[int]) -> frozenset[int]:
    """P(U): branches whose right state is a left state of U."""
    fib = section.right_fibers
    return frozenset(e for s in left_image(section, U) for e in fib[s])


def next_power(section: TrellisSection, U: Iterable[int], times: int) -> frozenset[int]:
    out = frozenset(U)
    for _ in range(times):
        out = next_set(section, out)
    return out


def next_subgroup(section: TrellisSection, H: Subgroup) -> Subgroup:
    return Subgroup(section.B, next_set(section, H.members))


def prev_subgroup(section: TrellisSection, H: Subgroup) -> Subgroup:
    return Subgroup(section.B, prev_set(section, H.members))


def prev_in_pletty(section: TrellisSection, j: int, U: Iterable[int]) -> frozenset[int]:
    """P_j(U) = P(U) ∩ X_j."""
    ch = section.chains
    if not 0 <= j < ch.ell:
        raise IndexOutOfRange(f"j={j} outside 0..{ch.ell - 1}")
    U = frozenset(U)
    if not U <= ch.X(j + 1).members:
        raise IndexOutOfRange(f"set is not inside X_{j + 1}")
    return prev_set(section, U) & ch.X(j).members


# ---------------------------------------------------------------------------
# chains


def chains(section: TrellisSection) -> ChainPair:
    B, S = section.B, section.S
    xs = [section.X0]
    while right_image(section, xs[-1].members) != frozenset(S.elements()):
        nxt = next_subgroup(section, xs[-1])
        if nxt == xs[-1]:
            raise NotControllable(
                f"X chain stabilizes at a subgroup of order {nxt.order} < |B| = {B.order}", stable=nxt
            )
        xs.append(nxt)
    ell = len(xs) if S.order > 1 else 0
    if ell == 0:
        xs = []
    xs.append(B.whole)
    if ell and next_subgroup(section, xs[-2]) != B.whole:
        raise VerificationFailed("N(X_{ell-1}) differs from B")
    ys = [section.Y0]
    while len(ys) <= ell and ys[-1] != B.whole:
        ys.append(prev_subgroup(section, ys[-1]))
    if ys[-1] != B.whole:
        raise NotControllable(f"Y chain does not reach B within {ell} steps", stable=ys[-1])
    while len(ys) < ell + 1:
        ys.append(B.whole)
    if ell == 0:
        ys = [B.whole]
    one = B.trivial
    x_chain = Chain((one, *xs), tuple(range(-1, ell + 1)))
    y_chain = Chain((one, *ys), tuple(range(-1, ell + 1)))
    return ChainPair(x_chain, y_chain, ell)


def is_controllable(section: TrellisSection) -> bool:
    try:
        chains(section)
    except NotControllable:
        return False
    return True


# ---------------------------------------------------------------------------
# paths


def validate_path(section: TrellisSection, path: Sequence[int]) -> PathSegment:
    path = tuple(int(b) for b in path)
    for i, b in enumerate(path):
        if not 0 <= b < section.B.order:
            raise InvalidPath(f"branch {b} at position {i} is out of range", position=i)
    for i in range(len(path) - 1):
        if section.right[path[i]] != section.left[path[i + 1]]:
            raise InvalidPath(f"positions {i} and {i + 1} do not connect", position=i + 1)
    return path


def is_valid_path(section: TrellisSection, path: Sequence[int]) -> bool:
    try:
        validate_path(section, path)
    except InvalidPath:
        return False
    return True


def join_paths(section: TrellisSection, U: Iterable[int], l: int) -> set[PathSegment]:
    """U ⋈ N(U) ⋈ ... ⋈ N^l(U): every valid segment of length l+1 starting in U."""
    if l < 0:
        raise IndexOutOfRange("l must be >= 0")
    paths = [(b,) for b in sorted(set(U))]
    fib = section.left_fibers
    for _ in range(l):
        paths = [p + (e,) for p in paths for e in fib[section.right[p[-1]]]]
    return set(paths)


def componentwise_product(section: TrellisSection, a: Sequence[int], b: Sequence[int]) -> PathSegment:
    if len(a) != len(b):
        raise LengthMismatch(f"segments of length {len(a)} and {len(b)}")
    t = section.B.table
    return tuple(t[x][y] for x, y in zip(a, b))


def x_by_paths(section: TrellisSection, i: int) -> frozenset[int]:
    """X_i from its path definition: last branches of segments b_{-i}..b_0 leaving the identity state."""
    if i < 0:
        return frozenset([section.B.identity])
    return frozenset(p[-1] for p in join_paths(section, section.X0.members, i))


def y_by_paths(section: TrellisSection, k: int) -> frozenset[int]:
    """Y_k from its path definition: first branches of segments b_0..b_k entering the identity state."""
    if k < 0:
        return frozenset([section.B.identity])
    paths = [(b,) for b in section.Y0.members]
    fib = section.right_fibers
    for _ in range(k):
        paths = [(e,) + p for p in paths for e in fib[section.left[p[0]]]]
    return frozenset(p[0] for p in paths)


def random_path(section: TrellisSection, length: int, rng, start: int | None = None) -> PathSegment:
    b = rng.randrange(section.B.order) if start is None else start
    out = [b]
    for _ in range(length - 1):
        out.append(rng.choice(section.left_fibers[section.right[out[-1]]]))
    return tuple(out)


# ---------------------------------------------------------------------------
# isomorphism of sections


def sections_isomorphic(a: TrellisSection, b: TrellisSection) -> bool:
    """Is there a state isomorphism phi and branch isomorphism psi compatible with both projections?"""
    if a.B.order != b.B.order or a.S.order != b.S.order:
        return False
    if a.B.order <= 1:
        return True
    for phi in iter_isomorphisms(a.S, b.S):
        def allowed(x, y, phi=phi):
            return b.left[y] == phi[a.left[x]] and b.right[y] == phi[a.right[x]]

        if find_isomorphism(a.B, b.B, allowed=allowed) is not None:
            return True
    return False

