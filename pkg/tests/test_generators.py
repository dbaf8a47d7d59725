import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as orc
from gtrellis.composition import refined_representative_array
from gtrellis.errors import IndexOutOfRange
from gtrellis.generators import column0_positions, eta_check, factorize, generators_at, representative_array
from gtrellis.textio import bundled_names, load_bundled
from gtrellis.trellis import shift_register_section

SECTIONS = {n: load_bundled(n).section for n in bundled_names()}
TABLES = {n: representative_array(s) for n, s in SECTIONS.items()}
REFINED = {n: refined_representative_array(s) for n, s in SECTIONS.items()}


def nontrivial(paths):
    return sorted(p for p in paths if any(p))


def test_shift_register_generator():
    # in SR(2,2) an input 1 walks through the digits: (1,0,0), (0,1,0), (0,0,1)
    t = representative_array(shift_register_section(2, 2))
    assert nontrivial(generators_at(t, 2)) == [(1, 2, 4)]
    # every transversal keeps the identity coset, so each span also has the identity path
    assert generators_at(t, 0) == [(0,)] and generators_at(t, 1) == [(0, 0)]
    with pytest.raises(IndexOutOfRange):
        generators_at(t, 3)


@pytest.mark.parametrize("p,m", [(2, 1), (2, 3), (3, 2)])
def test_shift_register_generators_are_digit_walks(p, m):
    t = representative_array(shift_register_section(p, m))
    gens = nontrivial(generators_at(t, m))
    assert gens == [tuple(v * p**i for i in range(m + 1)) for v in range(1, p)]


@pytest.mark.parametrize("name", sorted(SECTIONS))
def test_chain_runs_from_one_to_b(name):
    for t in (TABLES[name], REFINED[name]):
        orders = t.chain.orders()
        assert orders[0] == 1 and orders[-1] == SECTIONS[name].B.order
        assert all(a <= b for a, b in zip(orders, orders[1:]))
        prod = 1
        for step in t.chain_steps:
            assert len(step.reps) == step.upper.order // step.lower.order
            e = SECTIONS[name].B.identity
            assert step.reps[step.rep_of_coset[step.cosets.index_of[e]]] == e
            prod *= len(step.reps)
        assert prod == eta_check(t)["cells_product"] == SECTIONS[name].B.order


@pytest.mark.parametrize("name", sorted(SECTIONS))
def test_refined_cells_count_composition_length(name):
    sec = SECTIONS[name]
    e = eta_check(REFINED[name])
    # bundled groups are solvable, so the composition length is the number of prime factors
    assert orc.solvable(sec.B.table, range(sec.B.order))
    assert e["cell_count"] == e["eta_B"] == len(orc.prime_factors(sec.B.order))
    for reps in REFINED[name].cells.values():
        assert len(reps) in set(orc.prime_factors(sec.B.order))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(sorted(SECTIONS)), st.booleans(), st.integers(0, 10**6))
def test_factorization_round_trip(name, refined, seed):
    t = (REFINED if refined else TABLES)[name]
    sec = SECTIONS[name]
    b = random.Random(seed).randrange(sec.B.order)
    f = factorize(t, b)
    assert sec.B.prod(f.ordered_parts()) == b
    assert set(f.parts) == set(t.cells)
    for cell, r in f.parts.items():
        assert r in t.cells[cell]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(SECTIONS)), st.integers(0, 10**6))
def test_column0_positions(name, seed):
    t = TABLES[name]
    sec = SECTIONS[name]
    x0 = sorted(orc.x_oracle(sec, 0))
    x = random.Random(seed).choice(x0)
    pos = column0_positions(t, x)
    parts = [t.generators[st.key][p][0] for st, p in zip(t.steps, pos)]
    assert sec.B.prod(parts) == x


def test_factorize_range():
    with pytest.raises(IndexOutOfRange):
        factorize(TABLES["sr22"], 8)
