import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as orc
from gtrellis.errors import IndexOutOfRange, InvalidPath, LengthMismatch, NotControllable, NotHomomorphism, NotSubdirect
from gtrellis.groups import cyclic, group_from_spec, random_subgroup, symmetric
from gtrellis.textio import bundled_names, load_bundled
from gtrellis.trellis import (
    complete_section,
    componentwise_product,
    is_controllable,
    is_valid_path,
    join_paths,
    next_set,
    prev_in_pletty,
    prev_set,
    random_path,
    section_from_parts,
    sections_isomorphic,
    shift_register_section,
    validate_path,
    x_by_paths,
    y_by_paths,
)

EXTRA = {
    "complete(Z3)": lambda: complete_section(cyclic(3)),
    "complete(Z2xZ2)": lambda: complete_section(group_from_spec("Z2xZ2")),
    "SR(5,1)": lambda: shift_register_section(5, 1),
}


def all_sections():
    out = {n: load_bundled(n).section for n in bundled_names()}
    out.update({n: make() for n, make in EXTRA.items()})
    return out


SECTIONS = all_sections()
section_names = st.sampled_from(sorted(SECTIONS))


def diagonal(S):
    return section_from_parts(S, S, list(range(S.order)), list(range(S.order)))


@pytest.mark.parametrize("name", sorted(SECTIONS))
def test_chains_match_path_definitions(name):
    sec = SECTIONS[name]
    ch = sec.chains
    assert ch.ell == orc.ell_oracle(sec)
    for j in range(-1, ch.ell + 1):
        assert ch.X(j).members == orc.x_oracle(sec, j) == x_by_paths(sec, j)
        assert ch.Y(j).members == orc.y_oracle(sec, j) == y_by_paths(sec, j)
    assert ch.X(ch.ell).order == ch.Y(ch.ell).order == sec.B.order
    assert ch.X(-5) == ch.X(-1) == sec.B.trivial
    assert ch.X(ch.ell + 3) == sec.B.whole


def test_complete_section_has_ell_one():
    sec = complete_section(symmetric(3))
    assert sec.chains.ell == 1
    assert sec.X0.order == sec.Y0.order == 6


@pytest.mark.parametrize("S", [cyclic(2), cyclic(3), symmetric(3)])
def test_diagonal_is_not_controllable(S):
    sec = diagonal(S)
    assert not is_controllable(sec)
    with pytest.raises(NotControllable) as info:
        sec.chains
    assert info.value.stable.order == 1
    assert orc.ell_oracle(sec) is None


def test_trivial_state_group():
    one = cyclic(1)
    sec = section_from_parts(cyclic(3), one, [0, 0, 0], [0, 0, 0])
    assert sec.chains.ell == 0 == orc.ell_oracle(sec)


def test_construction_errors():
    z2, z4 = cyclic(2), cyclic(4)
    with pytest.raises(NotHomomorphism):
        section_from_parts(z4, z2, [0, 1, 1, 0], [0, 0, 0, 0])
    with pytest.raises(NotSubdirect):
        section_from_parts(z4, z2, [0, 1, 0, 1], [0, 0, 0, 0])
    with pytest.raises(NotHomomorphism):
        section_from_parts(z4, z2, [0, 1, 0], [0, 1, 0, 1])


def test_path_validation():
    sec = shift_register_section(2, 2)
    assert validate_path(sec, [1, 2, 4, 0]) == (1, 2, 4, 0)
    with pytest.raises(InvalidPath) as info:
        validate_path(sec, [1, 2, 4, 0, 3])
    assert info.value.position == 4
    with pytest.raises(InvalidPath):
        validate_path(sec, [1, 99])
    assert not is_valid_path(sec, [0, 1, 7])
    with pytest.raises(LengthMismatch):
        componentwise_product(sec, [1, 2], [1])


def test_prev_in_pletty_ranges():
    sec = shift_register_section(2, 2)
    ch = sec.chains
    assert prev_in_pletty(sec, 0, ch.X(1).members) == ch.X(0).members
    with pytest.raises(IndexOutOfRange):
        prev_in_pletty(sec, 2, [0])
    with pytest.raises(IndexOutOfRange):
        prev_in_pletty(sec, 0, ch.X(2).members)


@settings(max_examples=50, deadline=None)
@given(section_names, st.integers(0, 10**6))
def test_next_of_a_branch_is_an_x0_coset(name, seed):
    sec = SECTIONS[name]
    b = random.Random(seed).randrange(sec.B.order)
    T = sec.B.table
    nxt = next_set(sec, [b])
    assert nxt == orc.next_of(sec, [b])
    some = min(nxt)
    assert nxt == frozenset(T[x][some] for x in sec.X0.members)
    prv = prev_set(sec, [b])
    assert prv == orc.prev_of(sec, [b])
    assert prv == frozenset(T[y][min(prv)] for y in sec.Y0.members)


@settings(max_examples=50, deadline=None)
@given(section_names, st.integers(0, 10**6))
def test_next_of_subgroup_is_subgroup(name, seed):
    sec = SECTIONS[name]
    H = random_subgroup(sec.B, random.Random(seed))
    N = next_set(sec, H.members)
    assert orc.closure(sec.B.table, N) == N
    assert sec.X0.members <= N


@settings(max_examples=40, deadline=None)
@given(section_names, st.integers(0, 10**6), st.integers(0, 3))
def test_join_is_closed_under_products(name, seed, l):
    sec = SECTIONS[name]
    rng = random.Random(seed)
    H = random_subgroup(sec.B, rng)
    paths = join_paths(sec, H.members, l)
    assert len(paths) == H.order * sec.X0.order**l
    assert all(p[0] in H.members and is_valid_path(sec, p) for p in paths)
    sample = rng.sample(sorted(paths), min(6, len(paths)))
    for a in sample:
        for b in sample:
            assert componentwise_product(sec, a, b) in paths


@settings(max_examples=40, deadline=None)
@given(section_names, st.integers(0, 10**6), st.integers(1, 20))
def test_random_paths_are_valid(name, seed, length):
    sec = SECTIONS[name]
    p = random_path(sec, length, random.Random(seed))
    assert len(p) == length
    assert all(sec.right[a] == sec.left[b] for a, b in zip(p, p[1:]))


def test_section_isomorphism():
    sr = shift_register_section(2, 2)
    # swapping the two state digits is an automorphism of Z2xZ2
    phi = [0, 2, 1, 3]
    relabel = section_from_parts(sr.B, sr.S, [phi[v] for v in sr.left], [phi[v] for v in sr.right])
    assert sections_isomorphic(sr, relabel) and orc.isomorphic_sections(sr, relabel)
    comp = complete_section(cyclic(2))
    assert not sections_isomorphic(sr, comp)
    assert not sections_isomorphic(comp, complete_section(cyclic(3)))
