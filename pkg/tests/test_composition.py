from collections import Counter

import pytest

import oracles as orc
from gtrellis.composition import (
    refined_steps,
    schreier_array,
    solvability_equivalence,
    x_composition_chain,
    y_composition_chain,
)
from gtrellis.groups import group_from_spec, symmetric
from gtrellis.search import search_subdirect
from gtrellis.textio import bundled_names, load_bundled
from gtrellis.trellis import complete_section

SECTIONS = {n: load_bundled(n).section for n in bundled_names()}
SECTIONS["complete(Z2xZ3)"] = complete_section(group_from_spec("Z2xZ3"))
SECTIONS["z2z2_hit"] = search_subdirect(group_from_spec("Z2xZ2"), min_ell=2)[0].section


@pytest.mark.parametrize("name", sorted(SECTIONS))
def test_chains_have_composition_length(name):
    sec = SECTIONS[name]
    n = len(orc.prime_factors(sec.B.order))
    for ch in (x_composition_chain(sec), y_composition_chain(sec)):
        assert len(ch) == n
        assert orc.factor_multiset(ch.chain().orders()) == Counter(orc.prime_factors(sec.B.order))


@pytest.mark.parametrize("name", sorted(SECTIONS))
def test_subchain_lengths_constant_on_antidiagonals(name):
    sec = SECTIONS[name]
    ch = x_composition_chain(sec)
    by_sum = {}
    for (j, k), sub in ch.subchains.items():
        by_sum.setdefault(j + k, set()).add(len(sub))
    assert all(len(v) == 1 for v in by_sum.values())
    # anti-diagonal j + k = r holds r + 2 subchains (j = 0..r+1)
    assert sum((r + 2) * s for r, s in ch.sigma_bounds.items()) == len(ch)


@pytest.mark.parametrize("name", sorted(SECTIONS))
def test_subchain_endpoints_are_matrix_entries(name):
    sec = SECTIONS[name]
    T = sec.B.table
    ch = x_composition_chain(sec)
    for (j, k), sub in ch.subchains.items():
        lo = orc.setprod(T, orc.x_oracle(sec, j - 1), orc.x_oracle(sec, j) & orc.y_oracle(sec, k))
        hi = orc.setprod(T, orc.x_oracle(sec, j - 1), orc.x_oracle(sec, j) & orc.y_oracle(sec, k + 1))
        assert sub[0].members == lo and sub[-1].members == hi


@pytest.mark.parametrize("name", sorted(SECTIONS))
def test_pages(name):
    sec = SECTIONS[name]
    arr = schreier_array(sec)
    ell = sec.chains.ell
    lengths = arr.page_lengths()
    assert sum(lengths.values()) == len(orc.prime_factors(sec.B.order))
    # a page between matrix entries has as many steps as the order ratio has prime factors
    T = sec.B.table
    for (j, k), n in lengths.items():
        hi = orc.setprod(T, orc.x_oracle(sec, j - 1), orc.x_oracle(sec, j) & orc.y_oracle(sec, k))
        lo = orc.setprod(T, orc.x_oracle(sec, j - 1), orc.x_oracle(sec, j) & orc.y_oracle(sec, k - 1))
        assert n == len(orc.prime_factors(len(hi) // len(lo)))
    assert arr.page_groups(0, ell + 1) == [sec.chains.X(0)]


def test_solvability_on_nonabelian_sections():
    for sec in (complete_section(symmetric(3)), SECTIONS["d4_ell2"]):
        se = solvability_equivalence(sec)
        assert se == {"b_solvable": True, "x0_solvable": True, "agree": True}
        assert orc.solvable(sec.B.table, range(sec.B.order))


def test_refined_steps_cover_every_factor():
    sec = complete_section(symmetric(3))
    x0 = orc.x_oracle(sec, 0)
    live = [s for s in refined_steps(sec) if x0 & s.hi[0].members != x0 & s.lo[0].members]
    # X_0 = S3 x 1 has two composition factors, each feeding one generator step
    assert sorted(len(x0 & s.hi[0].members) // len(x0 & s.lo[0].members) for s in live) == [2, 3]
    assert all(len(s.key) == 3 for s in refined_steps(sec))
