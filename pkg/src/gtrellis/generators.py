"""Chain-coset generator tables and unique factorization of branches.

A table is built from a list of column-0 *steps*. A step of span ``k`` carries,
for each column ``j = 0..k``, a pair of Y-side subgroups ``hi[j] ⊇ lo[j]``; its
column-``j`` quotient is ``X_{j-1}(X_j ∩ hi[j]) / X_{j-1}(X_j ∩ lo[j])``. Each
representative of the column-0 quotient is extended forward into a generator
path whose component ``j`` lands in ``X_j ∩ hi[j]``.

The coarse table uses one step per span with ``hi[j] = Y_{k-j}``; the refined
table (see :mod:`gtrellis.composition`) splits these along a composition chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IndexOutOfRange, VerificationFailed
from .groups import Chain, CosetList, Subgroup, eta, right_cosets
from .schreier import meet, prod
from .trellis import PathSegment, TrellisSection, next_set


@dataclass(frozen=True)
class GeneratorStep:
    key: tuple
    span: int
    hi: tuple[Subgroup, ...]
    lo: tuple[Subgroup, ...]

    def cell_key(self, j: int) -> tuple:
        if len(self.key) == 1:
            return (j, self.span - j)
        # refined key (k, rho, sigma): column j sits on page k-j at line rho+j
        _, rho, sigma = self.key
        return (j, self.span - j, rho + j, sigma)


@dataclass(frozen=True)
class ChainStep:
    cell: tuple
    lower: Subgroup
    upper: Subgroup
    reps: tuple[int, ...]
    cosets: CosetList = field(repr=False)
    rep_of_coset: tuple[int, ...] = field(repr=False)


@dataclass(frozen=True)
class GeneratorTable:
    section: TrellisSection
    steps: tuple[GeneratorStep, ...]
    generators: dict = field(repr=False)  # step key -> tuple of paths
    cells: dict = field(repr=False)  # cell key -> tuple of representatives
    chain_steps: tuple[ChainStep, ...] = field(repr=False)
    refined: bool = False

    @property
    def ell(self) -> int:
        return self.section.chains.ell

    @property
    def chain(self) -> Chain:
        groups = [self.chain_steps[0].lower] + [s.upper for s in self.chain_steps] if self.chain_steps else [self.section.B.whole]
        return Chain(tuple(groups), (None,) + tuple(s.cell for s in self.chain_steps))

    @property
    def generator_paths(self) -> dict[int, list[PathSegment]]:
        out: dict[int, list[PathSegment]] = {}
        for st in self.steps:
            out.setdefault(st.span, []).extend(self.generators[st.key])
        return out

    def cell(self, j: int, i: int) -> tuple[int, ...]:
        if (j, i) in self.cells:
            return self.cells[(j, i)]
        raise KeyError(f"no single cell ({j},{i})")

    def column_steps(self, j: int) -> list[int]:
        """Indices of the steps contributing a component to column j, in chain order."""
        return [s for s, st in enumerate(self.steps) if st.span >= j]

    @property
    def column0_length(self) -> int:
        return sum(1 for c in self.chain_steps if c.cell[0] == 0)


@dataclass(frozen=True)
class Factorization:
    target: int
    parts: dict  # cell key -> representative
    order: tuple  # cell keys in multiplication order

    def ordered_parts(self) -> list[int]:
        return [self.parts[c] for c in self.order]


def _pick(candidates, identity: int) -> int:
    return identity if identity in candidates else min(candidates)


def coarse_steps(section: TrellisSection) -> list[GeneratorStep]:
    ch = section.chains
    steps = []
    for k in range(ch.ell + 1):
        hi = tuple(ch.Y(k - j) for j in range(k + 1))
        lo = tuple(ch.Y(k - j - 1) for j in range(k + 1))
        steps.append(GeneratorStep((k,), k, hi, lo))
    return steps


def build_table(section: TrellisSection, steps: list[GeneratorStep], refined: bool = False) -> GeneratorTable:
    ch = section.chains
    B = section.B
    e = B.identity
    if ch.ell == 0:
        return GeneratorTable(section, (), {}, {}, (), refined)

    kept, generators, cells = [], {}, {}
    quotients = {}  # cell key -> (upper, lower)
    for st in steps:
        top0 = meet(ch.X(0), st.hi[0])
        bot0 = meet(ch.X(0), st.lo[0])
        if refined and top0 == bot0:
            continue
        T0 = right_cosets(top0, bot0).transversal
        paths = []
        for t in T0:
            path = [t]
            for j in range(1, st.span + 1):
                cand = next_set(section, [path[-1]]) & ch.X(j).members & st.hi[j].members
                if not cand:
                    raise VerificationFailed(f"step {st.key}: no successor at column {j}", witness=tuple(path))
                path.append(_pick(cand, e))
            paths.append(tuple(path))
        for j in range(st.span + 1):
            upper = prod(ch.X(j - 1), meet(ch.X(j), st.hi[j]))
            lower = prod(ch.X(j - 1), meet(ch.X(j), st.lo[j]))
            comps = tuple(p[j] for p in paths)
            cl = right_cosets(upper, lower)
            if any(c not in meet(ch.X(j), st.hi[j]) for c in comps):
                raise VerificationFailed(f"step {st.key}: component {j} leaves X_j ∩ hi")
            if len(cl) != len(comps) or len({cl.index_of[c] for c in comps}) != len(comps):
                raise VerificationFailed(f"step {st.key}: component {j} is not a transversal", witness=comps)
            cells[st.cell_key(j)] = comps
            quotients[st.cell_key(j)] = (upper, lower, cl)
        generators[st.key] = tuple(paths)
        kept.append(st)

    chain_steps = []
    prev = B.trivial
    for key in sorted(cells):
        upper, lower, cl = quotients[key]
        if lower != prev:
            raise VerificationFailed(f"chain is not contiguous at cell {key}")
        reps = cells[key]
        rep_of_coset = [0] * len(cl)
        for pos, r in enumerate(reps):
            rep_of_coset[cl.index_of[r]] = pos
        chain_steps.append(ChainStep(key, lower, upper, reps, cl, tuple(rep_of_coset)))
        prev = upper
    if prev != B.whole:
        raise VerificationFailed("chain does not reach B")
    return GeneratorTable(section, tuple(kept), generators, cells, tuple(chain_steps), refined)


def representative_array(section: TrellisSection) -> GeneratorTable:
    """Coarse table: one step per span k, cells (j, i) with i = k - j."""
    return build_table(section, coarse_steps(section))


def _peel(steps: tuple[ChainStep, ...], b: int, B) -> dict:
    parts = {}
    t, inv = B.table, B.inverse
    for cs in reversed(steps):
        if b not in cs.upper.members:
            raise VerificationFailed(f"element {b} escaped the chain at {cs.cell}")
        pos = cs.rep_of_coset[cs.cosets.index_of[b]]
        r = cs.reps[pos]
        parts[cs.cell] = r
        b = t[b][inv[r]]
    if b != B.identity:
        raise VerificationFailed("peeling did not end at the identity")
    return parts


def factorize(table: GeneratorTable, b: int) -> Factorization:
    """Unique parts, one per cell, whose product in chain order is ``b``."""
    B = table.section.B
    if not 0 <= b < B.order:
        raise IndexOutOfRange(f"branch {b} out of range")
    parts = _peel(table.chain_steps, b, B)
    order = tuple(cs.cell for cs in table.chain_steps)
    f = Factorization(b, parts, order)
    if B.prod(f.ordered_parts()) != b:
        raise VerificationFailed(f"factorization of {b} does not multiply back", witness=b)
    return f


def column0_positions(table: GeneratorTable, x: int) -> tuple[int, ...]:
    """Factor x in X_0 along column 0; returns one transversal position per step."""
    B = table.section.B
    col0 = tuple(cs for cs in table.chain_steps if cs.cell[0] == 0)
    parts = _peel(col0, x, B)
    out = []
    for st in table.steps:
        key = st.cell_key(0)
        out.append(table.cells[key].index(parts[key]))
    return tuple(out)


def generators_at(table: GeneratorTable, k: int) -> list[PathSegment]:
    """All generator paths of span k (length k+1)."""
    if not 0 <= k <= table.ell:
        raise IndexOutOfRange(f"k={k} outside 0..{table.ell}")
    return table.generator_paths.get(k, [])


def eta_check(table: GeneratorTable) -> dict:
    cells_product = 1
    for reps in table.cells.values():
        cells_product *= len(reps)
    return {
        "eta_B": eta(table.section.B),
        "cells_product": cells_product,
        "cell_count": sum(1 for reps in table.cells.values() if len(reps) > 1),
    }
