import pytest

from shared.helper.HelperLattice import HelperLattice, lattice_from, xgcd


@pytest.mark.parametrize("a, b", [(12, 18), (-4, 6), (7, 0), (0, -5)])
def test_xgcd(a, b):
    g, s, t = xgcd(a, b)
    assert g > 0
    assert s * a + t * b == g
    assert a % g == 0 and b % g == 0


def test_coprime_generators_span_the_line_and_record_their_relation():
    lattice = HelperLattice(1, track_combinations=True)
    assert lattice.add_vector({0: 2})
    assert not lattice.add_vector({0: 3})
    assert lattice.is_full()
    assert lattice.kernel_basis() == [{0: -3, 1: 2}]
    assert lattice.solve({0: 1}) == {0: -1, 1: 1}


def test_membership_and_torsion():
    lattice = lattice_from([{0: 2}, {1: 1}], 2)
    assert lattice.contains({0: 4, 1: 3})
    assert not lattice.contains({0: 1})
    assert not lattice.is_full()
    assert lattice.invariant_factors() == [1, 2]
    assert lattice.cokernel_description() == {"rank": 2, "dimension": 2, "invariant_factors": [2]}


def test_rank_defect_is_reported():
    lattice = lattice_from([{0: 1, 1: 1}, {0: 2, 1: 2}], 2, track_combinations=True)
    assert lattice.rank() == 1
    assert lattice.kernel_basis() == [{0: -2, 1: 1}]
    assert lattice.cokernel_description()["rank"] == 1


def test_hermite_form_identifies_equal_lattices():
    first = lattice_from([{0: 1, 1: 1}, {1: 2}], 2)
    second = lattice_from([{0: 1, 1: 3}, {1: 2}], 2)
    other = lattice_from([{0: 1}, {1: 2}], 2)
    assert first.hermite_form() == second.hermite_form() == (((0, 1), (1, 1)), ((1, 2),))
    assert other.hermite_form() != first.hermite_form()


def test_empty_lattice():
    lattice = HelperLattice(3)
    assert lattice.rank() == 0
    assert lattice.contains({})
    assert not lattice.contains({2: 1})
    assert lattice.invariant_factors() == []
