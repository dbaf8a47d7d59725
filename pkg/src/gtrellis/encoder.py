"""Shift/shove-register encoder driven by a generator table.

Input x_t ∈ X_0, state b̂_t, output b_t = x_t · b̂_t. The window remembers, for
each of the last ell epochs, which generator was selected for every column-0
step; b̂_t multiplies component j of the age-j selections, j ascending.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    FirstBranchMismatch,
    IndexOutOfRange,
    InitialMismatch,
    InvalidPath,
    NotInX0,
    VerificationFailed,
)
from .generators import GeneratorTable, column0_positions, factorize
from .trellis import PathSegment, TrellisSection, validate_path


@dataclass
class EncoderState:
    table: GeneratorTable
    window: deque = field(default_factory=deque)  # window[a-1] = selections made a epochs ago
    current_time: int = 0

    @property
    def ell(self) -> int:
        return self.table.ell

    def state_branch(self) -> int:
        return _state_branch(self.table, self.window)


@dataclass(frozen=True)
class TrackResult:
    inputs: tuple[int, ...]
    reproduced: PathSegment
    exact: bool


def _identity_selection(table: GeneratorTable) -> tuple[int, ...]:
    return tuple(0 for _ in table.steps)


def _age_factor(table: GeneratorTable, sel: Sequence[int], j: int) -> int:
    """Product of component j over the steps of span >= j, in chain order."""
    B = table.section.B
    out = B.identity
    for s, st in enumerate(table.steps):
        if st.span >= j:
            out = B.table[out][table.generators[st.key][sel[s]][j]]
    return out


def _state_branch(table: GeneratorTable, window) -> int:
    B = table.section.B
    out = B.identity
    for a, sel in enumerate(window, start=1):
        out = B.table[out][_age_factor(table, sel, a)]
    return out


def new_encoder(table: GeneratorTable) -> EncoderState:
    ident = _identity_selection(table)
    return EncoderState(table, deque([ident] * table.ell, maxlen=max(table.ell, 1)), 0)


def _select(table: GeneratorTable, x: int) -> tuple[int, ...]:
    sec = table.section
    if not 0 <= x < sec.B.order or x not in sec.X0.members:
        raise NotInX0(f"input {x} is not in X_0")
    return column0_positions(table, x)


def step(state: EncoderState, x: int) -> int:
    """Emit x·b̂ and shove the new selections into the window."""
    table = state.table
    sel = _select(table, x)
    B = table.section.B
    b = B.table[_age_factor(table, sel, 0)][state.state_branch()]
    if table.ell:
        state.window.appendleft(sel)
    state.current_time += 1
    return b


def encode(table: GeneratorTable, inputs: Iterable[int], state: EncoderState | None = None) -> list[int]:
    state = new_encoder(table) if state is None else state
    return [step(state, x) for x in inputs]


def register_view(state: EncoderState, x: int | None = None) -> list[int]:
    """[age-0 factor, h_1, ..., h_ell]; their product is the branch emitted for input x."""
    table = state.table
    B = table.section.B
    head = B.identity if x is None else _age_factor(table, _select(table, x), 0)
    return [head] + [_age_factor(table, sel, a) for a, sel in enumerate(state.window, start=1)]


def _generator_with_component(table: GeneratorTable, s: int, j: int, value: int) -> int:
    gens = table.generators[table.steps[s].key]
    for pos, g in enumerate(gens):
        if g[j] == value:
            return pos
    raise VerificationFailed(f"no generator of step {table.steps[s].key} has component {j} = {value}")


def seeded_encoder(table: GeneratorTable, b: int) -> tuple[EncoderState, int]:
    """An encoder whose window makes the next output b; returns (state, input to feed)."""
    f = factorize(table, b)
    window = deque(maxlen=max(table.ell, 1))
    for a in range(1, table.ell + 1):
        sel = []
        for s, st in enumerate(table.steps):
            sel.append(_generator_with_component(table, s, a, f.parts[st.cell_key(a)]) if st.span >= a else 0)
        window.append(tuple(sel))
    state = EncoderState(table, window, 0)
    B = table.section.B
    x = B.prod(f.parts[st.cell_key(0)] for st in table.steps)
    return state, x


def replay_inputs(table: GeneratorTable, b: int) -> list[int]:
    """Inputs for epochs t-ell..t that drive the identity state to emit b at time t."""
    f = factorize(table, b)
    B = table.section.B
    inputs = []
    for a in range(table.ell, 0, -1):
        x = B.identity
        for s, st in enumerate(table.steps):
            if st.span >= a:
                pos = _generator_with_component(table, s, a, f.parts[st.cell_key(a)])
                x = B.table[x][table.generators[st.key][pos][0]]
        inputs.append(x)
    inputs.append(B.prod(f.parts[st.cell_key(0)] for st in table.steps))
    return inputs


def track(table: GeneratorTable, target: Sequence[int], initial: int | None = None) -> TrackResult:
    """Drive the encoder along an arbitrary valid path."""
    sec = table.section
    target = validate_path(sec, target)
    if not target:
        return TrackResult((), (), True)
    if initial is not None and initial != target[0]:
        raise InitialMismatch(f"initial branch {initial} differs from the path start {target[0]}")
    B = sec.B
    state, x = seeded_encoder(table, target[0])
    inputs, out = [x], [step(state, x)]
    for b in target[1:]:
        xh = B.table[b][B.inverse[state.state_branch()]]
        if xh not in sec.X0.members:
            raise VerificationFailed(f"tracking input {xh} is not in X_0", witness=len(out))
        inputs.append(xh)
        out.append(step(state, xh))
    return TrackResult(tuple(inputs), tuple(out), tuple(out) == target)


def impulse_response(table: GeneratorTable, k: int, which: int, length: int | None = None) -> PathSegment:
    """Output of a fresh encoder fed the time-0 component of one generator, then identities."""
    steps = [st for st in table.steps if st.span == k]
    gens = [g for st in steps for g in table.generators[st.key]]
    if not 0 <= which < len(gens):
        raise IndexOutOfRange(f"no generator {which} of span {k}")
    B = table.section.B
    length = table.ell + 2 if length is None else length
    state = new_encoder(table)
    return tuple(encode(table, [gens[which][0]] + [B.identity] * (length - 1), state))


def reachable_states(table: GeneratorTable) -> set[int]:
    """Every b̂ reachable from the identity state (breadth first over inputs)."""
    sec = table.section
    start = new_encoder(table)
    seen_windows = {tuple(start.window)}
    frontier = [tuple(start.window)]
    states = {start.state_branch()}
    x0 = sorted(sec.X0.members)
    while frontier:
        nxt = []
        for w in frontier:
            for x in x0:
                st = EncoderState(table, deque(w, maxlen=max(table.ell, 1)), 0)
                step(st, x)
                key = tuple(st.window)
                if key not in seen_windows:
                    seen_windows.add(key)
                    nxt.append(key)
                    states.add(st.state_branch())
        frontier = nxt
    return states


def degradation_profile(section: TrellisSection, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """For offsets d = 1..len-1, the least r in -1..ell with b_d ∈ X_r a_d."""
    a = validate_path(section, a)
    b = validate_path(section, b)
    if len(a) != len(b):
        raise InvalidPath("paths differ in length")
    if a and a[0] != b[0]:
        raise FirstBranchMismatch("paths start on different branches")
    ch = section.chains
    B = section.B
    out = []
    for d in range(1, len(a)):
        q = B.table[b[d]][B.inverse[a[d]]]
        r = next(r for r in range(-1, ch.ell + 1) if q in ch.X(r).members)
        if d <= ch.ell and r > d - 1:
            raise VerificationFailed(f"offset {d} reaches X_{r}", witness=(d, r))
        out.append(r)
    return out


def random_inputs(section: TrellisSection, n: int, rng: random.Random) -> list[int]:
    x0 = sorted(section.X0.members)
    return [rng.choice(x0) for _ in range(n)]
