"""Composition chains of B adapted to the X/Y chains, Schreier array pages, and the refined table."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VerificationFailed
from .generators import GeneratorStep, GeneratorTable, build_table
from .groups import (
    Chain,
    Subgroup,
    chain_factors,
    is_simple_quotient,
    is_solvable,
    jordan_holder_factors,
    refine_step,
    verify_coset_map,
)
from .schreier import meet, prod
from .trellis import TrellisSection, next_set, next_subgroup, prev_set, prev_subgroup


@dataclass(frozen=True)
class IndexedCompositionChain:
    """Terms X^{(σ)}_{j,k} (or the dual Y^{(σ)}_{k,ρ}); subchain (j,k) runs σ = 0..σ_{j+k}."""

    section: TrellisSection
    subchains: dict = field(repr=False)  # (j, k) -> tuple of Subgroups, index σ
    sigma_bounds: dict = field(repr=False)  # row sum -> σ
    dual: bool = False

    def term(self, j: int, k: int, sigma: int) -> Subgroup:
        return self.subchains[(j, k)][sigma]

    @property
    def terms(self) -> list[tuple[tuple[int, int, int], Subgroup]]:
        return [((j, k, s), g) for (j, k) in sorted(self.subchains) for s, g in enumerate(self.subchains[(j, k)])]

    def chain(self) -> Chain:
        groups, labels = [], []
        for label, g in self.terms:
            if groups and groups[-1] == g:
                continue
            groups.append(g)
            labels.append(label)
        return Chain(tuple(groups), tuple(labels))

    def factors(self) -> tuple[tuple[int, str], ...]:
        return chain_factors(self.chain())

    def __len__(self) -> int:
        return len(self.chain()) - 1


def _composition_chain(section: TrellisSection, dual: bool) -> IndexedCompositionChain:
    ch = section.chains
    ell = ch.ell
    own, other = (ch.Y, ch.X) if dual else (ch.X, ch.Y)
    push = prev_subgroup if dual else next_subgroup
    push_set = prev_set if dual else next_set
    tag = "Y" if dual else "X"

    def endpoint(j, k):
        return prod(own(j - 1), meet(own(j), other(k)))

    subchains: dict = {}
    sigma: dict = {}
    if ell == 0:
        return IndexedCompositionChain(section, {(0, -1): (section.B.whole,)}, {-1: 0}, dual)
    for r in range(-1, ell):
        lo, hi = endpoint(0, r), endpoint(0, r + 1)
        sub = tuple(refine_step(lo, hi)) if lo != hi else (lo,)
        subchains[(0, r)] = sub
        sigma[r] = len(sub) - 1
    for j in range(1, ell + 1):
        for k in range(-1, ell - j):
            subchains[(j, k)] = tuple(push(section, g) for g in subchains[(j - 1, k + 1)])

    for (j, k), sub in subchains.items():
        if sub[0] != endpoint(j, k) or sub[-1] != endpoint(j, k + 1):
            raise VerificationFailed(f"{tag} subchain ({j},{k}) has wrong endpoints")
        if len(sub) - 1 != sigma[j + k]:
            raise VerificationFailed(f"{tag} subchain ({j},{k}) has {len(sub) - 1} steps, expected {sigma[j + k]}")
        for s in range(1, len(sub)):
            if not is_simple_quotient(sub[s], sub[s - 1]):
                raise VerificationFailed(f"{tag} step ({j},{k},{s}) is not a simple factor", witness=(j, k, s))
            if k >= 0:
                verify_coset_map(
                    (sub[s], sub[s - 1]),
                    (subchains[(j + 1, k - 1)][s], subchains[(j + 1, k - 1)][s - 1]),
                    lambda coset: push_set(section, coset),
                    name=f"{tag} anti-diagonal ({j},{k},{s})",
                )
    return IndexedCompositionChain(section, subchains, sigma, dual)


def x_composition_chain(section: TrellisSection) -> IndexedCompositionChain:
    """Refine column 0 once, then push every term forward with N."""
    return _composition_chain(section, dual=False)


def y_composition_chain(section: TrellisSection) -> IndexedCompositionChain:
    """Dual construction with P; subchain (k, ρ) holds Y^{(σ)}_{k,ρ}."""
    return _composition_chain(section, dual=True)


@dataclass(frozen=True)
class SchreierArrayPages:
    section: TrellisSection
    pages: dict = field(repr=False)  # (j, k) -> tuple of ((ρ, σ), Subgroup)
    y_chain: IndexedCompositionChain = field(repr=False)
    boundary: str = "pages with j+k > ell equal X_j and are omitted"

    def page_groups(self, j: int, k: int) -> list[Subgroup]:
        if j + k > self.section.chains.ell:
            return [self.section.chains.X(j)]
        return [g for _, g in self.pages[(j, k)]]

    def page_order(self) -> list[tuple[int, int]]:
        ell = self.section.chains.ell
        return [(j, k) for j in range(ell + 1) for k in range(ell - j + 1)]

    def chain(self) -> Chain:
        groups, labels = [], []
        for j, k in self.page_order():
            for (rho, sigma), g in self.pages[(j, k)]:
                if groups and groups[-1] == g:
                    continue
                groups.append(g)
                labels.append((j, k, rho, sigma))
        return Chain(tuple(groups), tuple(labels))

    def page_lengths(self) -> dict[tuple[int, int], int]:
        """Number of strict steps on each page."""
        out = {}
        for key, terms in self.pages.items():
            gs = [g for _, g in terms]
            out[key] = sum(1 for a, b in zip(gs, gs[1:]) if a != b)
        return out


def schreier_array(section: TrellisSection) -> SchreierArrayPages:
    ch = section.chains
    ell = ch.ell
    ych = y_composition_chain(section)
    pages = {}
    for j in range(ell + 1):
        for k in range(ell - j + 1):
            terms = []
            for rho in range(-1, ell - k):
                for s, Y in enumerate(ych.subchains.get((k, rho), ())):
                    terms.append(((rho, s), prod(ch.X(j - 1), meet(ch.X(j), Y))))
            if ell == 0:
                terms = [((-1, 0), section.B.whole)]
            first, last = prod(ch.X(j - 1), meet(ch.X(j), ch.Y(k - 1))), prod(ch.X(j - 1), meet(ch.X(j), ch.Y(k)))
            if terms[0][1] != first or terms[-1][1] != last:
                raise VerificationFailed(f"page ({j},{k}) endpoints differ from the matrix entries")
            pages[(j, k)] = tuple(terms)
    arr = SchreierArrayPages(section, pages, ych)

    full = arr.chain()
    if full[0] != section.B.trivial or full[-1] != section.B.whole:
        raise VerificationFailed("page matrix does not run from 1 to B")
    for n, (lo, hi) in enumerate(full.steps()):
        if not is_simple_quotient(hi, lo):
            raise VerificationFailed(f"page matrix step {full.labels[n + 1]} is not simple", witness=full.labels[n + 1])
    if chain_factors(full) != jordan_holder_factors(section.B):
        raise VerificationFailed("page matrix factors differ from the Jordan-Holder factors of B")
    for label, _ in page_isomorphisms(arr):
        pass
    return arr


def page_isomorphisms(arr: SchreierArrayPages):
    """psi: Jh -> N(Jh) between matching steps of pages (j,k) and (j+1,k-1)."""
    section = arr.section
    ch = section.chains
    ell = ch.ell
    ych = arr.y_chain
    for j in range(ell):
        for k in range(1, ell - j + 1):
            for rho in range(-1, ell - k):
                sub, sub2 = ych.subchains[(k, rho)], ych.subchains[(k - 1, rho + 1)]
                for s in range(1, len(sub)):
                    H = prod(ch.X(j - 1), meet(ch.X(j), sub[s]))
                    J = prod(ch.X(j - 1), meet(ch.X(j), sub[s - 1]))
                    H2 = prod(ch.X(j), meet(ch.X(j + 1), sub2[s]))
                    J2 = prod(ch.X(j), meet(ch.X(j + 1), sub2[s - 1]))
                    label = f"page psi ({j},{k},{rho},{s})"
                    if next_set(section, H.members) != H2.members or next_set(section, J.members) != J2.members:
                        raise VerificationFailed(f"{label}: N image is not the neighbouring page term")
                    yield label, verify_coset_map((H, J), (H2, J2), lambda c: next_set(section, c), name=label)


def solvability_equivalence(section: TrellisSection) -> dict:
    b = is_solvable(section.B)
    x = is_solvable(section.X0)
    return {"b_solvable": b, "x0_solvable": x, "agree": b == x}


def refined_steps(section: TrellisSection, ych: IndexedCompositionChain | None = None) -> list[GeneratorStep]:
    ch = section.chains
    ell = ch.ell
    ych = y_composition_chain(section) if ych is None else ych
    steps = []
    for k in range(ell + 1):
        for rho in range(-1, ell - k):
            for s in range(1, ych.sigma_bounds[k + rho] + 1):
                hi = tuple(ych.term(k - j, rho + j, s) for j in range(k + 1))
                lo = tuple(ych.term(k - j, rho + j, s - 1) for j in range(k + 1))
                steps.append(GeneratorStep((k, rho, s), k, hi, lo))
    return steps


def refined_representative_array(section: TrellisSection) -> GeneratorTable:
    """Generator table over the page-matrix composition chain; trivial steps are dropped."""
    return build_table(section, refined_steps(section), refined=True)
