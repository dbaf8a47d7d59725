import pytest

from gtrellis.checks import SUITES, run_suites
from gtrellis.groups import cyclic
from gtrellis.textio import bundled_names, load_bundled
from gtrellis.trellis import section_from_parts


@pytest.mark.parametrize("name", bundled_names())
def test_every_suite_passes(name):
    results = run_suites(load_bundled(name).section, SUITES, seed=1)
    failed = [(r.name, r.detail, r.witness) for r in results if not r.passed]
    assert not failed
    assert len({r.name for r in results}) == len(results)


def test_noncontrollable_section_fails_first_check():
    z3 = cyclic(3)
    sec = section_from_parts(z3, z3, [0, 1, 2], [0, 1, 2])
    results = run_suites(sec, SUITES)
    assert results[0].name == "trellis.controllable" and not results[0].passed
    assert results[0].witness == [0]
