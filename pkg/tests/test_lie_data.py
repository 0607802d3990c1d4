import pytest

from services.lie_data.CartanCatalog import CartanCatalog, classical_weyl_order
from services.lie_data.LinearForms import t_forms
from services.lie_data.RootSystem import root_system_for
from services.lie_data.models import LieType
from shared.helper.HelperMatrix import determinant, identity, is_identity, mat_mul, mat_pow, mat_vec
from shared.models.errors import UsageError

ALL_TYPES = ["A1", "A2", "A3", "C2", "C3", "G2", "F4", "E6", "E7", "E8"]

EXPECTED_ROOT_COUNTS = {
    "A1": 1, "A2": 3, "A3": 6, "C2": 4, "C3": 9,
    "G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120,
}


##########################################
################ TYPES ###################
##########################################

def test_parse_exceptional_and_classical():
    assert LieType.parse("e7").rank == 7
    assert LieType.parse("A3").name == "A3"
    assert str(LieType.parse("G2")) == "G2"


@pytest.mark.parametrize("name", ["B3", "E9", "A0", "A9", "F5", "xyz"])
def test_parse_rejects_unsupported(name):
    with pytest.raises(UsageError):
        LieType.parse(name)


##########################################
############### CARTAN ###################
##########################################

def test_cartan_g2_orientation():
    cartan = CartanCatalog.cartan_matrix(LieType.parse("G2"))
    assert cartan.entries == ((2, -1), (-3, 2))


def test_cartan_a1():
    assert CartanCatalog.cartan_matrix(LieType.parse("A1")).entries == ((2,),)


def test_cartan_f4_double_bond_between_nodes_2_and_3():
    entries = CartanCatalog.cartan_matrix(LieType.parse("F4")).entries
    assert entries[1][2] == -2 and entries[2][1] == -1
    assert entries[0][1] == entries[1][0] == -1
    assert entries[2][3] == entries[3][2] == -1
    assert entries[0][2] == entries[0][3] == entries[1][3] == 0


def test_cartan_e_branch_node():
    entries = CartanCatalog.cartan_matrix(LieType.parse("E8")).entries
    neighbours_of_4 = {j + 1 for j in range(8) if j != 3 and entries[3][j] != 0}
    assert neighbours_of_4 == {2, 3, 5}
    assert {j + 1 for j in range(8) if j != 0 and entries[0][j] != 0} == {3}


def test_half_lengths_mark_long_roots():
    assert CartanCatalog.cartan_matrix(LieType.parse("G2")).half_lengths() == (1, 3)
    assert CartanCatalog.cartan_matrix(LieType.parse("F4")).half_lengths() == (2, 2, 1, 1)
    assert CartanCatalog.cartan_matrix(LieType.parse("C3")).half_lengths() == (1, 1, 2)


##########################################
############# REFLECTIONS ################
##########################################

@pytest.mark.parametrize("name", ALL_TYPES)
def test_simple_reflections_are_involutions_with_det_minus_one(name):
    cartan = CartanCatalog.cartan_matrix(LieType.parse(name))
    for i in range(1, cartan.rank + 1):
        s = CartanCatalog.simple_reflection(cartan, i)
        assert is_identity(mat_mul(s, s))
        assert determinant(s) == -1


def test_simple_reflection_g2_node_1():
    cartan = CartanCatalog.cartan_matrix(LieType.parse("G2"))
    s1 = CartanCatalog.simple_reflection(cartan, 1)
    # σ_1(ω_1) = ω_1 − α_1 = −ω_1 + ω_2, σ_1(ω_2) = ω_2
    assert mat_vec(s1, (1, 0)) == (-1, 1)
    assert mat_vec(s1, (0, 1)) == (0, 1)


def test_simple_reflection_index_out_of_range():
    cartan = CartanCatalog.cartan_matrix(LieType.parse("G2"))
    with pytest.raises(UsageError):
        CartanCatalog.simple_reflection(cartan, 3)


@pytest.mark.parametrize("name", ["A3", "C3", "G2", "F4", "E6"])
def test_braid_relations(name):
    rs = root_system_for(LieType.parse(name))
    c = rs.cartan.entries
    order = {0: 2, 1: 3, 2: 4, 3: 6}
    for i in range(rs.rank):
        for j in range(i + 1, rs.rank):
            m = order[c[i][j] * c[j][i]]
            product = mat_mul(rs.simple_reflections[i], rs.simple_reflections[j])
            assert is_identity(mat_pow(product, m))
            assert not is_identity(mat_pow(product, m - 1)) or m == 1


##########################################
################ ROOTS ###################
##########################################

@pytest.mark.parametrize("name", ALL_TYPES)
def test_positive_root_counts(name):
    lie_type = LieType.parse(name)
    rs = root_system_for(lie_type)
    assert len(rs.positive_roots) == EXPECTED_ROOT_COUNTS[name]
    assert len(rs.positive_roots) == CartanCatalog.positive_root_count(lie_type)


def test_weyl_order_degree_lists_match_closed_forms():
    for name in ["A1", "A2", "A3", "C2", "C3"]:
        lie_type = LieType.parse(name)
        assert CartanCatalog.weyl_group_order(lie_type) == classical_weyl_order(lie_type)
    assert CartanCatalog.weyl_group_order(LieType.parse("E8")) == 696729600


def test_a2_roots():
    rs = root_system_for(LieType.parse("A2"))
    assert [r.simple for r in rs.positive_roots] == [(1, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize("name", ALL_TYPES)
def test_simple_roots_lead_and_pair_dually(name):
    rs = root_system_for(LieType.parse(name))
    for i in range(rs.rank):
        root = rs.positive_roots[i]
        assert root.simple == tuple(1 if j == i else 0 for j in range(rs.rank))
        assert root.coroot == tuple(1 if j == i else 0 for j in range(rs.rank))


def test_g2_root_norms():
    rs = root_system_for(LieType.parse("G2"))
    norms = sorted(r.norm for r in rs.positive_roots)
    assert norms == [2, 2, 2, 6, 6, 6]


def test_root_lookup_signs():
    rs = root_system_for(LieType.parse("F4"))
    beta = rs.positive_roots[10]
    assert rs.root_lookup(beta.weight) == 11
    assert rs.root_lookup(tuple(-x for x in beta.weight)) == -11
    assert rs.root_lookup((0, 0, 0, 0)) is None


@pytest.mark.parametrize("name", ["G2", "F4", "E6"])
def test_reflection_for_root(name):
    rs = root_system_for(LieType.parse(name))
    for root in rs.positive_roots:
        s = rs.reflection_for_root(root)
        assert is_identity(mat_mul(s, s))
        assert mat_vec(s, root.weight) == tuple(-x for x in root.weight)
        if root.is_simple():
            assert s == rs.simple_reflections[root.index]


def test_reflection_for_foreign_root_is_rejected():
    g2 = root_system_for(LieType.parse("G2"))
    f4 = root_system_for(LieType.parse("F4"))
    with pytest.raises(UsageError):
        g2.reflection_for_root(f4.positive_roots[0])


##########################################
########### INVARIANT FORMS ##############
##########################################

def test_f4_orbit_of_omega4_is_the_six_forms():
    rs = root_system_for(LieType.parse("F4"))
    orbit = rs.parabolic_orbit((0, 0, 0, 1), {1})
    assert orbit == set(t_forms(LieType.parse("F4")))
    assert len(orbit) == 6


@pytest.mark.parametrize("name", ["E6", "E7", "E8"])
def test_e_orbit_of_last_weight_is_the_listed_forms(name):
    lie_type = LieType.parse(name)
    rs = root_system_for(lie_type)
    omega_n = tuple(1 if j == rs.rank - 1 else 0 for j in range(rs.rank))
    orbit = rs.parabolic_orbit(omega_n, {2})
    assert orbit == set(t_forms(lie_type))
    assert len(orbit) == rs.rank


@pytest.mark.parametrize("name,total", [("F4", (3, 0, 0, 0)), ("E6", (0, 3, 0, 0, 0, 0))])
def test_forms_sum_to_three_times_the_distinguished_weight(name, total):
    forms = t_forms(LieType.parse(name))
    assert tuple(sum(col) for col in zip(*forms)) == total


def test_identity_helper():
    assert identity(2) == ((1, 0), (0, 1))
