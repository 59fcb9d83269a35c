import cmath
import math

import pytest

from fermat_forge.fixtures import FIXTURES, run_fixture

PI = math.pi


@pytest.mark.parametrize("name", list(FIXTURES))
def test_fixture_passes(name):
    res = run_fixture(name)
    assert res.passed, [r.to_json() for r in res.rows]
    assert res.to_json()["provenance"]


@pytest.mark.parametrize("name,half", [("ex-binomial-1", (4 + 1j) + PI / 2), ("ex-binomial-2", (17 - 5j) / 2)])
def test_binomial_examples_rows(name, half):
    rows = {r.branch: r for r in run_fixture(name).rows}
    # the printed symmetric coefficients do not satisfy the equation
    assert not rows["printed-plus"].passed and not rows["printed-minus"].passed
    for key in ("reconciled-root0", "reconciled-root1"):
        assert rows[key].symbolic_zero
        assert rows[key].detail["half_total_gap"] < 1e-12


def test_trinomial_prefactors_match_printed():
    for r in run_fixture("ex-trinomial-1").rows:
        assert r.passed and r.detail["prefactor_gap"] < 1e-12


def test_trinomial_two_all_labelings():
    rows = run_fixture("ex-trinomial-2").rows
    assert len(rows) == 4 and all(r.passed for r in rows)
    assert min(r.detail["coefficient_gap"] for r in rows) < 1e-12


@pytest.mark.parametrize("name", ["rem35-case2-a", "rem35-case2-b", "rem35-case2-c", "rem35-case2-d"])
def test_linear_reduction_constants(name):
    row = run_fixture(name).rows[0]
    assert row.detail["printed_K_gap"] < 1e-12


def test_branch_selection():
    assert len(run_fixture("ex-trinomial-2", branch=3).rows) == 1
    with pytest.raises(IndexError):
        run_fixture("ex-trinomial-2", branch=9)
    with pytest.raises(KeyError):
        run_fixture("missing")
