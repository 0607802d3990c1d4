from fractions import Fraction

import pytest

from services.lie_data.models import LieType
from services.poly.Invariants import c_polynomial, classical_relation, elementary_symmetric
from services.poly.Polynomial import Polynomial, weight_variables
from services.poly.helper.PolynomialParser import format_polynomial, parse_polynomial, symbols_in
from shared.models.errors import UsageError

W2 = weight_variables(2)
W4 = weight_variables(4)


def p(text: str, variables=W2) -> Polynomial:
    return parse_polynomial(text, variables)


##########################################
############## ARITHMETIC ################
##########################################

def test_add_inverse_is_zero():
    f = p("3*w1^2 - w1*w2 + 5")
    assert (f + (-f)).is_zero
    assert (f - f) == 0


def test_product_of_weights():
    assert p("w1") * p("w2") == p("w1*w2")


def test_binomial_square():
    assert p("w1 + w2") ** 2 == p("w1^2 + 2*w1*w2 + w2^2")
    assert p("w1 + w2") ** 0 == 1


def test_scalars_mix_in():
    f = p("w1")
    assert 2 * f + 1 == p("2*w1 + 1")
    assert f * Fraction(1, 2) == p("1/2*w1")


def test_zero_coefficients_are_not_stored():
    f = Polynomial(W2, {(1, 0): 0, (0, 1): 2})
    assert f.terms == {(0, 1): 2}


def test_integral_fractions_become_ints():
    f = p("1/2*w1") * 2
    assert f.is_integral()
    assert isinstance(f.coefficient((1, 0)), int)


def test_variable_set_mismatch():
    with pytest.raises(UsageError):
        p("w1") + p("w1", W4)


def test_degree_and_homogeneity():
    assert p("w1^3 - w2^3").degree == 3
    assert p("w1^3 - w2^3").is_homogeneous()
    assert not p("w1^2 + w2").is_homogeneous()
    assert Polynomial.zero(W2).degree == -1
    assert p("4 + w1").constant_term() == 4


def test_weighted_degree():
    ring = ("w1", "c4", "y3")
    f = parse_polynomial("w1*y3 + c4", ring)
    assert f.weighted_degree({"c4": 4, "y3": 3}) == 4
    with pytest.raises(UsageError):
        parse_polynomial("w1 + c4", ring).weighted_degree({"c4": 4})


def test_substitute_linear_is_a_ring_homomorphism():
    images = {"w1": p("w1 - w2"), "w2": p("2*w2")}
    f = p("w1^2 + 3*w2")
    g = p("w1*w2 - 1")
    assert (f + g).substitute_linear(images) == f.substitute_linear(images) + g.substitute_linear(images)
    assert (f * g).substitute_linear(images) == f.substitute_linear(images) * g.substitute_linear(images)


def test_substitute_linear_rejects_nonlinear_images():
    with pytest.raises(UsageError):
        p("w1").substitute_linear({"w1": p("w2^2")})


def test_extend_into_larger_ring():
    f = p("w1^2 - w1")
    extended = f.extend(("c2", "w1", "w2"))
    assert extended == parse_polynomial("w1^2 - w1", ("c2", "w1", "w2"))
    with pytest.raises(UsageError):
        p("w2").extend(("w1",))


##########################################
################ MOD P ###################
##########################################

def test_reduce_mod_uses_symmetric_residues():
    f = p("3*w1 + 2*w2 + 4")
    assert f.reduce_mod(3) == p("-w2 + 1")
    assert f.reduce_mod(2) == p("w1")


def test_reduce_mod_rejects_fractions():
    with pytest.raises(UsageError):
        p("1/2*w1").reduce_mod(5)


##########################################
################# TEXT ###################
##########################################

def test_canonical_text_round_trips():
    text = "3*w1^2 - 3*w1*w2 + w2^2"
    f = p(text)
    assert format_polynomial(f) == text
    assert str(parse_polynomial(str(f), W2)) == text


def test_text_of_negative_leading_and_rational_terms():
    f = parse_polynomial("-w1 + 1/3", ("w1",))
    assert str(f) == "-w1 + 1/3"
    assert str(Polynomial.zero(W2)) == "0"


def test_parse_special_symbols():
    f = parse_polynomial("2*c4*y3 - 1/2*s3_1 + w2^2")
    assert f.variables == ("w2", "c4", "y3", "s3_1")
    assert f.coefficient((0, 0, 0, 1)) == Fraction(-1, 2)
    assert symbols_in("y10*w3 + c2") == ["w3", "c2", "y10"]


@pytest.mark.parametrize("text", ["x + 1", "w1 +", "w1/w2", "sqrt(w1)"])
def test_parse_rejects_bad_input(text):
    with pytest.raises(UsageError):
        parse_polynomial(text, W2)


def test_parse_rejects_symbols_outside_ring():
    with pytest.raises(UsageError):
        parse_polynomial("w3", W2)


##########################################
############## INVARIANTS ################
##########################################

def test_elementary_symmetric_small_cases():
    assert elementary_symmetric(0, 3) == 1
    assert str(elementary_symmetric(2, 2)) == "t1*t2"
    assert str(elementary_symmetric(1, 6)) == "t1 + t2 + t3 + t4 + t5 + t6"
    with pytest.raises(UsageError):
        elementary_symmetric(4, 3)


def test_first_elementary_function_of_f4_forms():
    from services.lie_data.LinearForms import t_forms
    forms = [Polynomial.linear(W4, form) for form in t_forms(LieType.parse("F4"))]
    assert elementary_symmetric(1, 6).substitute_linear(forms) == p("3*w1", W4)


@pytest.mark.parametrize("name,expected", [("F4", "3*w1"), ("E6", "3*w2"), ("E7", "3*w2"), ("E8", "3*w2")])
def test_first_chern_polynomial(name, expected):
    lie_type = LieType.parse(name)
    assert c_polynomial(lie_type, 1) == parse_polynomial(expected, weight_variables(lie_type.rank))


def test_chern_polynomials_are_homogeneous_of_their_degree():
    f4 = LieType.parse("F4")
    for r in range(1, 7):
        c = c_polynomial(f4, r)
        assert c.is_homogeneous() and c.degree == r


@pytest.mark.parametrize("name,r", [("G2", 1), ("F4", 7), ("E6", 0), ("A3", 1)])
def test_chern_polynomial_out_of_range(name, r):
    with pytest.raises(UsageError):
        c_polynomial(LieType.parse(name), r)


def test_classical_relations():
    a2 = LieType.parse("A2")
    assert classical_relation(a2, 1).is_zero
    assert classical_relation(a2, 3) == p("w1^2*w2 - w1*w2^2")
    c2 = LieType.parse("C2")
    assert classical_relation(c2, 2) == p("2*w1^2 - 2*w1*w2 + w2^2")
    with pytest.raises(UsageError):
        classical_relation(c2, 3)
    with pytest.raises(UsageError):
        classical_relation(LieType.parse("G2"), 2)
