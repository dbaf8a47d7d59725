"""Brute-force search for controllable subdirect products B ≤ S×S."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotControllable, TooLarge
from .groups import FiniteGroup, Subgroup, _closure, direct_product
from .trellis import TrellisSection, section_from_parts

SEARCH_CAP = 256


@dataclass(frozen=True)
class SearchHit:
    section: TrellisSection
    members: tuple[int, ...]  # indices in S×S
    ell: int
    abelian: bool


def all_subgroups(G: FiniteGroup, cap: int = SEARCH_CAP) -> list[frozenset[int]]:
    """Every subgroup of G, by repeatedly adjoining one element to known subgroups."""
    if G.order > cap:
        raise TooLarge(f"subgroup enumeration capped at order {cap}")
    found = {frozenset([G.identity])}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            seen_here = set()
            for g in range(G.order):
                if g in H or g in seen_here:
                    continue
                # <H, hg> = <H, g>, so the whole coset Hg is covered
                seen_here.update(G.table[h][g] for h in H)
                K = _closure(G, H | {g})
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted(found, key=lambda m: (len(m), sorted(m)))


def section_from_subgroup(S: FiniteGroup, members, name: str = "") -> TrellisSection:
    """B given as a set of indices a*|S| + b in S×S, with coordinate projections."""
    SS = direct_product(S, S)
    B, pos = Subgroup(SS, frozenset(members)).as_group()
    n = S.order
    elems = sorted(members)
    left = [elems[i] // n for i in range(len(elems))]
    right = [elems[i] % n for i in range(len(elems))]
    return section_from_parts(B, S, left, right, name=name)


def search_subdirect(
    S: FiniteGroup,
    max_B_order: int | None = None,
    nonabelian: bool = False,
    min_ell: int = 0,
    include_noncontrollable: bool = False,
) -> list[SearchHit]:
    n = S.order
    if n * n > SEARCH_CAP:
        raise TooLarge(f"|S×S| = {n * n} exceeds the search cap {SEARCH_CAP}")
    SS = direct_product(S, S)
    hits = []
    for members in all_subgroups(SS):
        if max_B_order is not None and len(members) > max_B_order:
            continue
        if {m // n for m in members} != set(range(n)) or {m % n for m in members} != set(range(n)):
            continue
        sec = section_from_subgroup(S, members, name=f"subdirect({S.name or n},{len(members)})")
        try:
            ell = sec.chains.ell
        except NotControllable:
            if include_noncontrollable:
                hits.append(SearchHit(sec, tuple(sorted(members)), -1, sec.B.is_abelian))
            continue
        if nonabelian and sec.B.is_abelian:
            continue
        if ell < min_ell:
            continue
        hits.append(SearchHit(sec, tuple(sorted(members)), ell, sec.B.is_abelian))
    return hits
