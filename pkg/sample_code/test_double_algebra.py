"""
Tests for the Drinfeld double D(G): structure maps, R-matrices, distinguished
elements and the axiom suites.
"""

import numpy as np
import pytest

from double_algebra import (SUITES, DoubleElement, DoubleFunctional, DrinfeldDouble,
                            GroupMismatchError, antipode, basis_element, coadjoint, coadjoint_invariant_dimension,
                            coadjoint_matrix, coproduct,                            counit, dual_product, dual_unit, element_from_functional, flip,
                            from_function_grid, function_product, function_unit,
                            functional_from_element, group_element, multiply, pairing,
                            random_element, star, tensor_multiply, tensor_product,
                            to_function_grid, unit, unit_tensor)
from group_core import build_group, commuting_pair_orbits

CERTIFIED_GROUPS = ["cyclic:1", "cyclic:2", "cyclic:4", "prod(cyclic:2,cyclic:2)", "sym:3", "dihedral:4", "q8"]


def test_basis_product(s3):
    """Test (delta_h g)(delta_t l) = [g^-1 h g = t] delta_h gl"""
    h, g = 1, 3
    t = s3.mul(s3.mul(s3.inv(g), h), g)
    x = basis_element(s3, h, g)
    hit = multiply(x, basis_element(s3, t, 2))
    assert hit.coeffs == {(h, s3.mul(g, 2)): 1.0}
    other = next(u for u in range(s3.order) if u != t)
    assert len(multiply(x, basis_element(s3, other, 2))) == 0


def test_unit_laws(s3, rng):
    """Test 1 x = x 1 = x"""
    one = unit(s3)
    for _ in range(10):
        x = random_element(s3, rng)
        assert (one @ x).deviation(x) < 1e-12
        assert (x @ one).deviation(x) < 1e-12


def test_group_elements_multiply(q8):
    """Test the group embeds multiplicatively"""
    for g in range(q8.order):
        for l in range(q8.order):
            assert (group_element(q8, g) @ group_element(q8, l)).deviation(group_element(q8, q8.mul(g, l))) < 1e-12


def test_group_elements_grouplike(s3):
    """Test Delta(g) = g (x) g and eps(g) = 1"""
    for g in range(s3.order):
        x = group_element(s3, g)
        assert coproduct(x).deviation(tensor_product(x, x)) < 1e-12
        assert counit(x) == pytest.approx(1.0)


def test_antipode_inverts_group_elements(s3):
    """Test S(g) = g^-1"""
    for g in range(s3.order):
        assert antipode(group_element(s3, g)).deviation(group_element(s3, s3.inv(g))) < 1e-12


def test_star_conjugate_linear(s3, rng):
    """Test star(i x) = -i star(x)"""
    x = random_element(s3, rng)
    assert star(1j * x).deviation(-1j * star(x)) < 1e-12


def test_linear_operations(c4):
    """Test sums, differences and scalar multiples"""
    x = basis_element(c4, 1, 2, 2.0)
    y = basis_element(c4, 1, 2, 0.5)
    assert (x - y).coefficient(1, 2) == pytest.approx(1.5)
    assert (3 * y).coefficient(1, 2) == pytest.approx(1.5)
    assert len(x - 4 * y) == 0
    vec = (x + basis_element(c4, 3, 0)).to_vector()
    assert vec[1 * 4 + 2] == pytest.approx(2.0)
    assert DoubleElement.from_vector(c4, vec).deviation(x + basis_element(c4, 3, 0)) < 1e-12


def test_group_mismatch(c2, c4):
    """Test combining elements over different groups"""
    with pytest.raises(GroupMismatchError):
        unit(c2) + unit(c4)
    with pytest.raises(GroupMismatchError):
        multiply(unit(c2), unit(c4))


def test_r_matrix_terms(s3):
    """Test R = sum delta_h g (x) delta_g e has |G|^2 terms"""
    double = DrinfeldDouble(s3)
    r = double.r_matrix()
    assert len(r) == 36
    assert r.coeffs[((2, 1), (1, 0))] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        double.r_matrix("bogus")


@pytest.mark.parametrize("variant", ["R", "Rprime"])
def test_r_inverse(s3, variant):
    """Test R R^-1 = 1 (x) 1"""
    double = DrinfeldDouble(s3)
    r = double.r_matrix(variant)
    assert tensor_multiply(r, double.r_inverse(variant)).deviation(unit_tensor(s3)) < 1e-12


def test_rprime_is_inverse_of_flipped_r(d4):
    """Test R' (tau R) = 1 (x) 1"""
    double = DrinfeldDouble(d4)
    product = tensor_multiply(double.r_matrix("Rprime"), flip(double.r_matrix("R")))
    assert product.deviation(unit_tensor(d4)) < 1e-12


@pytest.mark.parametrize("variant", ["R", "Rprime"])
def test_closed_forms(s3, variant):
    """Test the closed-form u and Q against their definitions"""
    double = DrinfeldDouble(s3)
    assert double.drinfeld_u(variant).deviation(double.drinfeld_u(variant, closed_form=False)) < 1e-12
    assert double.monodromy_q(variant).deviation(double.monodromy_q(variant, closed_form=False)) < 1e-12


def test_drinfeld_elements_are_mutually_inverse(q8):
    """Test u u' = 1 with u = sum delta_{g^-1} g and u' = sum delta_g g"""
    double = DrinfeldDouble(q8)
    assert (double.drinfeld_u("R") @ double.drinfeld_u("Rprime")).deviation(unit(q8)) < 1e-12


def test_drinfeld_u_central(s3):
    """Test u commutes with every basis element"""
    double = DrinfeldDouble(s3)
    u = double.ribbon_v()
    for h, g in double.basis():
        b = double.element(h, g)
        assert (u @ b).deviation(b @ u) < 1e-12


@pytest.mark.parametrize("spec", CERTIFIED_GROUPS)
def test_all_suites_pass(spec):
    """Test every axiom suite on the certified groups"""
    double = DrinfeldDouble(build_group(spec))
    reports = double.verify_axioms()
    assert [r.suite for r in reports] == list(SUITES)
    for report in reports:
        assert report.passed, report.to_dict()
        assert report.max_deviation <= 1e-9


def test_trivial_group_exact(trivial_group):
    """Test D(C1) satisfies every check with zero deviation"""
    reports = DrinfeldDouble(trivial_group).verify_axioms()
    assert all(r.passed for r in reports)
    assert max(r.max_deviation for r in reports) == 0.0


def test_triple_limit_skips(s3):
    """Test pair and triple checks are skipped above the limit"""
    double = DrinfeldDouble(s3, triple_limit=4)
    (report,) = double.verify_axioms(["ybe"])
    assert report.passed
    assert all(c.skipped for c in report.checks)
    (bialgebra,) = double.verify_axioms(["bialgebra"])
    skipped = {c.name for c in bialgebra.checks if c.skipped}
    assert skipped == {"coproduct_multiplicative", "counit_multiplicative"}


def test_wrong_r_matrix_fails(s3):
    """Test a supplied R-matrix that does not intertwine the coproduct"""
    double = DrinfeldDouble(s3)
    (report,) = double.verify_axioms(["quasitriangular"], r_matrix=unit_tensor(s3))
    assert not report.passed
    failing = report.to_dict()
    assert "witness" in failing
    assert "R Delta = Delta^op R" in failing["witness"]


def test_unknown_suite(s3):
    """Test an unknown suite name"""
    with pytest.raises(ValueError, match="unknown suites"):
        DrinfeldDouble(s3).verify_axioms(["nope"])


def test_center(s3):
    """Test the center has one basis element per commuting-pair orbit"""
    double = DrinfeldDouble(s3)
    assert len(double.center_basis()) == 8
    assert double.center_dimension() == 8


def test_integral(s3):
    """Test the normalized integral is sum_g delta_e g"""
    lam = DrinfeldDouble(s3).integral()
    expected = DoubleElement.from_terms(s3, {(0, g): 1.0 for g in range(s3.order)})
    assert lam.deviation(expected) < 1e-9


def test_haar_functional(c4):
    """Test h(delta_h g) = [g = e]"""
    values = DrinfeldDouble(c4).haar_functional().values
    assert np.allclose(values[:, 0], 1.0)
    assert np.allclose(values[:, 1:], 0.0)


def test_factorizability_map_is_permutation(s3):
    """Test the factorizability map of R permutes the basis"""
    mat = DrinfeldDouble(s3).factorizability_map("R")
    assert np.allclose(mat.sum(axis=0), 1.0)
    assert np.allclose(mat.sum(axis=1), 1.0)
    assert set(np.unique(mat.real)) <= {0.0, 1.0}


def test_pairing_transport(s3, rng):
    """Test <F(x), f> = f(x) and the round trip through the pairing"""
    n = s3.order
    f = DoubleFunctional(s3, rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    x = random_element(s3, rng)
    assert pairing(functional_from_element(x), f) == pytest.approx(f(x))
    assert element_from_functional(functional_from_element(x)).deviation(x) < 1e-12


def test_dual_unit(s3, rng):
    """Test the counit is the unit of the dual algebra"""
    n = s3.order
    f = DoubleFunctional(s3, rng.standard_normal((n, n)) + 0j)
    assert dual_product(dual_unit(s3), f).deviation(f) < 1e-12
    assert dual_product(f, dual_unit(s3)).deviation(f) < 1e-12


def test_function_realization(q8, rng):
    """Test products agree in the function realization"""
    x = random_element(q8, rng)
    y = random_element(q8, rng)
    lhs = to_function_grid(x @ y)
    rhs = function_product(q8, to_function_grid(x), to_function_grid(y))
    assert np.allclose(lhs, rhs)
    assert np.allclose(to_function_grid(unit(q8)), function_unit(q8))
    assert from_function_grid(q8, to_function_grid(x)).deviation(x) < 1e-12


def test_coadjoint_invariance_of_orbit_indicator(s3):
    """Test an orbit indicator is invariant under the coadjoint action"""
    orbits = commuting_pair_orbits(s3)
    values = np.zeros((s3.order, s3.order), dtype=complex)
    for h, g in orbits.orbits[3]:
        values[h, g] = 1.0
    f = DoubleFunctional(s3, values)
    for g in range(s3.order):
        assert coadjoint(group_element(s3, g), f).deviation(f) < 1e-12
    for t in range(s3.order):
        expected = f if t == 0 else 0 * f
        assert coadjoint(basis_element(s3, t, 0), f).deviation(expected) < 1e-12


def test_coadjoint_moves_non_invariant_functional(s3):
    """Test a point mass off the commuting pairs is not invariant"""
    h, g = next((h, g) for h in range(6) for g in range(6) if not s3.commute(h, g))
    values = np.zeros((6, 6), dtype=complex)
    values[h, g] = 1.0
    f = DoubleFunctional(s3, values)
    deviations = [coadjoint(group_element(s3, x), f).deviation(f) for x in range(6)]
    deviations += [coadjoint(basis_element(s3, t, 0), f).deviation(f if t == 0 else 0 * f) for t in range(6)]
    assert max(deviations) > 0.5


@pytest.mark.parametrize("spec", ["cyclic:1", "cyclic:2", "cyclic:4", "sym:3", "dihedral:4", "q8"])
def test_coadjoint_invariants_match_orbits(spec):
    """Test the coadjoint-fixed functionals have exactly one dimension per commuting-pair orbit"""
    group = build_group(spec)
    assert coadjoint_invariant_dimension(group) == commuting_pair_orbits(group).num_orbits


def test_coadjoint_matrix_of_group_element(s3, rng):
    """Test g . f (delta_h l) = f(delta_{g^-1 h g} g^-1 l g)"""
    values = rng.standard_normal((6, 6))
    for g in range(6):
        gi = s3.inv(g)
        expected = np.array([[values[s3.conjugate(gi, h), s3.conjugate(gi, l)] for l in range(6)]
                             for h in range(6)])
        via_matrix = (coadjoint_matrix(group_element(s3, g)) @ values.reshape(-1)).reshape(6, 6)
        assert np.allclose(via_matrix, expected)
    assert coadjoint_matrix(unit(s3)) == pytest.approx(np.eye(36))
