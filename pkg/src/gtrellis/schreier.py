"""Schreier matrix of the X/Y chains and the explicit isomorphisms between its factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import IndexOutOfRange, NotControllableMatrix, VerificationFailed
from .groups import (
    Chain,
    Subgroup,
    VerifiedIsomorphism,
    intersect,
    is_normal,
    product,
    right_cosets,
    verify_coset_map,
)
from .trellis import TrellisSection, next_power, next_set


@lru_cache(maxsize=65536)
def prod(A: Subgroup, B: Subgroup) -> Subgroup:
    return product(A, B)


@lru_cache(maxsize=65536)
def meet(A: Subgroup, B: Subgroup) -> Subgroup:
    return intersect(A, B)


def xy_term(section: TrellisSection, j: int, k: int) -> Subgroup:
    """X_{j-1}(X_j ∩ Y_k)."""
    ch = section.chains
    return prod(ch.X(j - 1), meet(ch.X(j), ch.Y(k)))


def yx_term(section: TrellisSection, k: int, j: int) -> Subgroup:
    """Y_{k-1}(Y_k ∩ X_j)."""
    ch = section.chains
    return prod(ch.Y(k - 1), meet(ch.Y(k), ch.X(j)))


@dataclass(frozen=True)
class SchreierMatrixForm:
    section: TrellisSection
    ell: int
    entries: dict = field(repr=False)
    controllable: bool
    dual: bool = False

    def entry(self, j: int, k: int) -> Subgroup:
        return self.entries[(j, k)]

    def column(self, j: int) -> list[Subgroup]:
        return [self.entries[(j, k)] for k in range(-1, self.ell + 1)]


def _matrix(section: TrellisSection, dual: bool) -> SchreierMatrixForm:
    ell = section.chains.ell
    term = (lambda a, b: yx_term(section, a, b)) if dual else (lambda a, b: xy_term(section, a, b))
    own = section.chains.Y if dual else section.chains.X
    entries = {(j, k): term(j, k) for j in range(ell + 1) for k in range(-1, ell + 1)}
    controllable = all(entries[(j, ell - j)] == own(j) for j in range(ell + 1))
    return SchreierMatrixForm(section, ell, entries, controllable, dual)


def schreier_matrix(section: TrellisSection) -> SchreierMatrixForm:
    """Entries X_{j-1}(X_j ∩ Y_k) for 0 <= j <= ell, -1 <= k <= ell."""
    return _matrix(section, dual=False)


def dual_matrix(section: TrellisSection) -> SchreierMatrixForm:
    """Entries Y_{k-1}(Y_k ∩ X_j), keyed (k, j)."""
    return _matrix(section, dual=True)


def controllable_form(smf: SchreierMatrixForm) -> dict[tuple[int, int], Subgroup]:
    """Triangular form keyed (column j, row j+k); row ell is the top."""
    if not smf.controllable:
        raise NotControllableMatrix("diagonal condition fails")
    ell = smf.ell
    return {(j, j + k): smf.entries[(j, k)] for j in range(ell + 1) for k in range(-1, ell - j + 1)}


def star_chain(section: TrellisSection) -> Chain:
    """1 ⊂ X*_{-1} ⊂ X_0 ⊂ X*_0 ⊂ ... ⊂ X*_{ell-1} = X_ell, with X*_{j-1} = X_{j-1}(X_j ∩ Y_0)."""
    ch = section.chains
    if ch.ell == 0:
        return Chain((section.B.whole,), (("X", 0),))
    groups, labels = [ch.X(-1)], [("X", -1)]
    for j in range(ch.ell + 1):
        groups += [xy_term(section, j, 0), ch.X(j)]
        labels += [("X*", j - 1), ("X", j)]
    if groups[-2] != groups[-1]:
        raise VerificationFailed("X*_{ell-1} differs from X_ell")
    return Chain(tuple(groups), tuple(labels))


# ---------------------------------------------------------------------------
# explicit isomorphisms


def _decompositions(B, U: Subgroup, W: Subgroup, x: int) -> list[int]:
    """All w in W with x = u*w for some u in U."""
    t, inv = B.table, B.inverse
    return [w for w in (t[inv[u]][x] for u in U.members) if w in W.members]


def zassenhaus_iso(section: TrellisSection, j: int, k: int) -> VerifiedIsomorphism:
    """X_{j-1}(X_j∩Y_k) / X_{j-1}(X_j∩Y_{k-1})  ≅  Y_{k-1}(Y_k∩X_j) / Y_{k-1}(Y_k∩X_{j-1}).

    Both sides map onto W/D with W = X_j∩Y_k and D = (X_j∩Y_{k-1})(X_{j-1}∩Y_k)
    by uw -> Dw; the isomorphism is the composite of one map with the inverse
    of the other.
    """
    ch = section.chains
    if not (0 <= j <= ch.ell and 0 <= k <= ch.ell):
        raise IndexOutOfRange(f"(j,k)=({j},{k}) outside 0..{ch.ell}")
    B = section.B
    U, Us, V, Vs = ch.X(j - 1), ch.X(j), ch.Y(k - 1), ch.Y(k)
    W = meet(Us, Vs)
    D = prod(meet(Us, V), meet(U, Vs))
    if not is_normal(W, D):
        raise VerificationFailed(f"zassenhaus({j},{k}): D is not normal in the intersection")
    wd = right_cosets(W, D)
    name = f"zassenhaus({j},{k})"

    for lo, hi, small in ((U, prod(U, W), prod(U, meet(Us, V))), (V, prod(V, W), prod(V, meet(Vs, U)))):
        # f(uw) = Dw: well defined, homomorphic, kernel = small
        for x in hi.members:
            cos = {wd.index_of[w] for w in _decompositions(B, lo, W, x)}
            if len(cos) != 1:
                raise VerificationFailed(f"{name}: f is not well defined at {x}", witness=x)
            if (cos.pop() == 0) != (x in small.members):
                raise VerificationFailed(f"{name}: kernel mismatch at {x}", witness=x)
        hc = right_cosets(hi, small)
        if len(hc) != len(wd):
            raise VerificationFailed(f"{name}: f is not onto W/D")

    def send(coset):
        out = set()
        target = prod(V, meet(Vs, U))
        for x in coset:
            for w in _decompositions(B, U, W, x):
                out.update(B.table[y][w] for y in target.members)
        return out

    return verify_coset_map(
        (prod(U, W), prod(U, meet(Us, V))),
        (prod(V, W), prod(V, meet(Vs, U))),
        send,
        name=name,
    )


def column_shift_iso(section: TrellisSection, j: int) -> VerifiedIsomorphism:
    """q': X_j / X*_{j-1} -> X_{j+1} / X_j, coset -> N(coset)."""
    ch = section.chains
    if not 0 <= j < ch.ell:
        raise IndexOutOfRange(f"j={j} outside 0..{ch.ell - 1}")
    return verify_coset_map(
        (ch.X(j), xy_term(section, j, 0)),
        (ch.X(j + 1), ch.X(j)),
        lambda coset: next_set(section, coset),
        name=f"column_shift({j})",
    )


def adjacent_column_iso(section: TrellisSection, j: int, k: int, m: int) -> VerifiedIsomorphism:
    """psi: X_{j-1}(X_j∩Y_k)/X_{j-1}(X_j∩Y_{k-m}) -> X_j(X_{j+1}∩Y_{k-1})/X_j(X_{j+1}∩Y_{k-m-1})."""
    ell = section.chains.ell
    if not (j >= 0 and k >= 1 and j + k <= ell and m >= 1 and k - m >= 0):
        raise IndexOutOfRange(f"(j,k,m)=({j},{k},{m}) out of range for ell={ell}")
    H, J = xy_term(section, j, k), xy_term(section, j, k - m)
    H2, J2 = xy_term(section, j + 1, k - 1), xy_term(section, j + 1, k - m - 1)
    name = f"adjacent({j},{k},{m})"
    if next_set(section, H.members) != H2.members or next_set(section, J.members) != J2.members:
        raise VerificationFailed(f"{name}: N does not carry the column-j pair onto column j+1")
    return verify_coset_map((H, J), (H2, J2), lambda coset: next_set(section, coset), name=name)


@dataclass(frozen=True)
class RectangleFamily:
    k: int
    m: int
    l: int
    H: tuple[Subgroup, ...]
    J: tuple[Subgroup, ...]
    D: tuple[Subgroup, ...]
    maps: tuple[VerifiedIsomorphism, ...]
    section_maps: tuple[VerifiedIsomorphism, ...]

    def factor_orders(self) -> list[int]:
        return [h.order // j.order for h, j in zip(self.H, self.J)]


def rectangle_family(section: TrellisSection, k: int, m: int, l: int) -> RectangleFamily:
    """H_j = N^j(X_0∩Y_k), J_j = N^j(X_0∩Y_{k-m}) for j = 0..l, with the maps f_{0,j}.

    Also checks that (X_j∩Y_{k-j})/D_j maps onto H_j/J_j by Ds -> J_j s, so a
    transversal of H_j/J_j can be drawn from X_j∩Y_{k-j}.
    """
    ch = section.chains
    if not (0 < k <= ch.ell and m >= 1 and k - m > -1 and 0 < l <= k - m + 1):
        raise IndexOutOfRange(f"(k,m,l)=({k},{m},{l}) out of range for ell={ch.ell}")
    B = section.B
    H0, J0 = meet(ch.X(0), ch.Y(k)), meet(ch.X(0), ch.Y(k - m))
    Hs, Js, Ds, maps, smaps = [], [], [], [], []
    for j in range(l + 1):
        H = Subgroup(B, next_power(section, H0.members, j))
        J = Subgroup(B, next_power(section, J0.members, j))
        if H != xy_term(section, j, k - j) or J != xy_term(section, j, k - j - m):
            raise VerificationFailed(f"rectangle({k},{m},{l}): N^{j} image is not a matrix entry")
        S = meet(ch.X(j), ch.Y(k - j))
        D = prod(meet(ch.X(j), ch.Y(k - j - m)), meet(ch.X(j - 1), ch.Y(k - j)))
        if D != meet(J, S):
            raise VerificationFailed(f"rectangle({k},{m},{l}): D_{j} differs from J_{j} ∩ (X_j∩Y_{k - j})")
        Hs.append(H)
        Js.append(J)
        Ds.append(D)
        maps.append(
            verify_coset_map(
                (H0, J0),
                (H, J),
                lambda coset, j=j: next_power(section, coset, j),
                name=f"rectangle({k},{m},{l}).f(0,{j})",
            )
        )
        smaps.append(
            verify_coset_map(
                (S, D),
                (H, J),
                lambda coset, J=J: {B.table[y][s] for s in coset for y in J.members},
                name=f"rectangle({k},{m},{l}).section({j})",
            )
        )
    return RectangleFamily(k, m, l, tuple(Hs), tuple(Js), tuple(Ds), tuple(maps), tuple(smaps))


def rectangle_parameters(ell: int):
    """All valid (k, m, l) for a section with the given ell."""
    for k in range(1, ell + 1):
        for m in range(1, k + 1):
            for l in range(1, k - m + 2):
                yield k, m, l


def all_isomorphisms(section: TrellisSection):
    """Every explicit isomorphism the section admits, as (label, VerifiedIsomorphism)."""
    ell = section.chains.ell
    for j in range(ell + 1):
        for k in range(ell + 1):
            yield f"zassenhaus({j},{k})", zassenhaus_iso(section, j, k)
    for j in range(ell):
        yield f"column_shift({j})", column_shift_iso(section, j)
    for j in range(ell):
        for k in range(1, ell - j + 1):
            for m in range(1, k + 1):
                yield f"adjacent({j},{k},{m})", adjacent_column_iso(section, j, k, m)
    for k, m, l in rectangle_parameters(ell):
        fam = rectangle_family(section, k, m, l)
        for i, f in enumerate(fam.maps):
            yield f"rectangle({k},{m},{l}).f(0,{i})", f
