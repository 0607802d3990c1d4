import pytest

from services.poly.helper.PolynomialParser import parse_polynomial
from services.schubert.GiambelliSolver import GiambelliSolver
from services.weyl.CosetDecomposer import CosetDecomposer
from shared.models.errors import GenerationError


@pytest.fixture(scope="module")
def f4_solver(f4_calculator):
    generators = {}
    for name, word in (("y3", [3, 2, 1]), ("y4", [4, 3, 2, 1])):
        r, i = CosetDecomposer.index_of(f4_calculator.table, word)
        generators[name] = f4_calculator.basis_class(r, i)
    return GiambelliSolver(f4_calculator, generators)


def test_generator_names_put_weights_first(f4_solver):
    assert f4_solver.names == ("w1", "y3", "y4")
    assert f4_solver.degrees == (1, 3, 4)


def test_degree_one_and_two_are_powers_of_the_weight(f4_solver):
    assert f4_solver.solve(1).entries[1] == parse_polynomial("w1", f4_solver.names)
    assert f4_solver.solve(2).entries[1] == parse_polynomial("w1^2", f4_solver.names)


def test_f4_degree_four_giambelli_polynomials(f4_solver):
    table = f4_solver.solve(4)
    assert table.entries[1] == parse_polynomial("w1*y3 - 2*y4", f4_solver.names)
    assert table.entries[2] == parse_polynomial("y4", f4_solver.names)
    assert f4_solver.check(table) == []


def test_solved_polynomials_re_expand(f4_solver):
    for r in range(1, 7):
        assert f4_solver.check(f4_solver.solve(r)) == []


def test_payload_lists_every_class(f4_solver):
    payload = f4_solver.solve(3).to_payload()
    assert payload["table"] == "F4/P{1}"
    assert payload["entries"] == [{"class": "s3_1", "polynomial": "y3"}]


def test_missing_generator_reports_the_cokernel(f4_calculator):
    solver = GiambelliSolver(f4_calculator, {})
    with pytest.raises(GenerationError) as info:
        solver.solve(3)
    assert info.value.details["missing"] == ["s3_1"]
    assert info.value.details["cokernel"]["invariant_factors"] == [2]
