"""
Tests for the irreducible D(G)-modules, their characters, braidings and the
Nichols algebra degree dimensions.
"""

import itertools
from math import comb

import numpy as np
import pytest

from group_core import build_group
from mackey_irreps import (InvariantFunction, MackeyClassifier, SymmetrizerBudgetError,
                           braiding_matrix, braiding_naturality_deviation, bubble_sort_word,
                           enumerate_labels, flip_braiding, insertion_sort_word,
                           irreducible_character, nichols_degree_dims, random_invariant,
                           reduced_word_deviation, verify_character_orthonormality,
                           yang_baxter_deviation)

SMALL_GROUPS = ["cyclic:1", "cyclic:2", "cyclic:4", "prod(cyclic:2,cyclic:2)", "sym:3", "dihedral:4", "q8"]


def _compose(perm, word):
    """Apply adjacent swaps to the sorted list in reverse word order to rebuild perm."""
    arr = sorted(perm)
    for i in reversed(word):
        arr[i], arr[i + 1] = arr[i + 1], arr[i]
    return arr


def test_s3_labels(s3):
    """Test the eight labels of D(S3) and their dimensions"""
    labels = enumerate_labels(s3)
    assert [lab.dimension for lab in labels] == [1, 1, 2, 3, 3, 2, 2, 2]
    assert str(labels[0]) == "(0,0)"
    assert labels[3].to_dict() == {"class": 1, "irrep": 0, "representative": 1, "dim": 3}


@pytest.mark.parametrize("spec", SMALL_GROUPS + ["alt:4", "dihedral:6", "sym:4"])
def test_label_counts(spec):
    """Test #labels = #orbits and sum of squared dimensions = |G|^2"""
    group = build_group(spec)
    classifier = MackeyClassifier(group)
    labels = classifier.labels()
    assert len(labels) == classifier.orbits.num_orbits
    assert sum(lab.dimension ** 2 for lab in labels) == group.order ** 2


@pytest.mark.parametrize("spec", SMALL_GROUPS + ["alt:4", "dihedral:6"])
def test_character_orthonormality(spec):
    """Test the character Gram matrix is the identity"""
    report = verify_character_orthonormality(build_group(spec))
    assert report.passed, report.to_dict()


def test_character_values(s3):
    """Test chi(e, e) = dim on the unit class and zero off commuting pairs"""
    classifier = MackeyClassifier(s3)
    for lab in classifier.labels():
        chi = classifier.irreducible_character(lab)
        grid = chi.to_grid()
        if lab.class_index == 0:
            assert grid[0, 0] == pytest.approx(lab.dimension / 1)
        for h, g in itertools.product(range(6), repeat=2):
            if not s3.commute(h, g):
                assert grid[h, g] == 0


def test_unit_label_character(q8):
    """Test the unit module character is the indicator of h = e"""
    chi = irreducible_character(q8, 0, 0)
    grid = chi.to_grid()
    assert np.allclose(grid[0], 1.0)
    assert np.allclose(grid[1:], 0.0)


@pytest.mark.parametrize("spec", ["cyclic:2", "sym:3", "q8", "dihedral:4"])
def test_induced_modules(spec):
    """Test module axioms, characters, twists, YBE and naturality of the induced modules"""
    report = MackeyClassifier(build_group(spec)).verify_modules()
    assert report.passed, report.to_dict()


def test_induced_module_dimensions(s3):
    """Test the induced module has the label dimension and its grading hits the class"""
    classifier = MackeyClassifier(s3)
    for lab in classifier.labels():
        module = classifier.induce_module(lab)
        assert module.dimension == lab.dimension
        assert set(module.grading) == set(classifier.classes.classes[lab.class_index])
        assert np.allclose(module.character_grid(), classifier.irreducible_character(lab).to_grid())


def test_twist_scalars(s3):
    """Test theta = chi_rho(g_O) / dim rho on a few labels of D(S3)"""
    classifier = MackeyClassifier(s3)
    assert classifier.twist_scalar(classifier.label(0, 2)) == pytest.approx(1.0)
    assert classifier.twist_scalar(classifier.label(1, 0)) == pytest.approx(1.0)
    assert classifier.twist_scalar(classifier.label(1, 1)) == pytest.approx(-1.0)
    thetas = [classifier.twist_scalar(classifier.label(2, r)) for r in range(3)]
    assert all(abs(abs(t) - 1) < 1e-9 for t in thetas)
    assert len({complex(round(t.real, 6), round(t.imag, 6)) for t in thetas}) == 3


def test_missing_label(s3):
    """Test asking for a label that does not exist"""
    with pytest.raises(ValueError, match="no label"):
        MackeyClassifier(s3).label(1, 5)


def test_expand_and_match(d4, rng):
    """Test expansion in the character basis reproduces a function"""
    classifier = MackeyClassifier(d4)
    f = random_invariant(d4, classifier.orbits, rng)
    coeffs = classifier.expand(f)
    rebuilt = sum((chi * c for c, chi in zip(coeffs, classifier.characters())),
                  InvariantFunction(d4, classifier.orbits, np.zeros(classifier.orbits.num_orbits)))
    assert rebuilt.deviation(f) < 1e-9
    chars = classifier.characters()
    assert classifier.match_label(chars[4]) == 4


def test_from_grid_rejects_non_invariant(s3):
    """Test a grid off the commuting pairs is rejected"""
    classifier = MackeyClassifier(s3)
    grid = np.zeros((6, 6), dtype=complex)
    h, g = next((h, g) for h in range(6) for g in range(6) if not s3.commute(h, g))
    grid[h, g] = 1.0
    with pytest.raises(ValueError, match="not conjugation invariant"):
        InvariantFunction.from_grid(s3, classifier.orbits, grid)


def test_tensor_and_dual_modules(s3):
    """Test tensor products and duals are modules with the expected characters"""
    classifier = MackeyClassifier(s3)
    v = classifier.induce_module(classifier.label(1, 1))
    w = classifier.induce_module(classifier.label(2, 0))
    vw = v.tensor(w)
    assert vw.dimension == v.dimension * w.dimension
    assert vw.check().passed
    dual = v.dual()
    assert dual.check().passed
    assert braiding_naturality_deviation(v, w) < 1e-9


def test_braiding_of_unit_module_is_flip(c2):
    """Test the braiding on the unit module is the flip"""
    classifier = MackeyClassifier(c2)
    module = classifier.induce_module(classifier.label(0, 0))
    assert np.allclose(braiding_matrix(module, module), flip_braiding(1))


@pytest.mark.parametrize("sign", [1.0, -1.0])
def test_flip_fixture_satisfies_ybe(sign):
    """Test the signed flip is a braiding"""
    assert yang_baxter_deviation(flip_braiding(3, sign), 3) == 0.0


def test_reduced_words():
    """Test bubble and insertion sort give reduced words for the same permutation"""
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i, j in itertools.combinations(range(4), 2) if perm[i] > perm[j])
        for word in (bubble_sort_word(perm), insertion_sort_word(perm)):
            assert len(word) == inversions
            assert _compose(perm, word) == list(perm)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_symmetric_algebra_dims(dim):
    """Test the flip gives binomial(d + n - 1, n)"""
    nmax = 5 if dim <= 2 else 4
    dims = nichols_degree_dims(flip_braiding(dim), dim, n_max=nmax, limit=10 ** 4)
    assert dims == [comb(dim + n - 1, n) for n in range(1, nmax + 1)]


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_exterior_algebra_dims(dim):
    """Test minus the flip gives binomial(d, n)"""
    nmax = 5 if dim <= 2 else 4
    dims = nichols_degree_dims(flip_braiding(dim, -1.0), dim, n_max=nmax, limit=10 ** 4)
    assert dims == [comb(dim, n) for n in range(1, nmax + 1)]


def test_nichols_fixture_values():
    """Test the two d = 2 fixtures up to degree 4"""
    assert nichols_degree_dims(flip_braiding(2), 2) == [2, 3, 4, 5]
    assert nichols_degree_dims(flip_braiding(2, -1.0), 2) == [2, 1, 0, 0]


def test_nichols_of_modules(c2):
    """Test the unit module gives a polynomial ring and the sign module an exterior algebra"""
    classifier = MackeyClassifier(c2)
    unit_module = classifier.induce_module(classifier.label(0, 0))
    sign_module = classifier.induce_module(classifier.label(1, 1))
    assert nichols_degree_dims(braiding_matrix(unit_module, unit_module), 1) == [1, 1, 1, 1]
    assert nichols_degree_dims(braiding_matrix(sign_module, sign_module), 1) == [1, 0, 0, 0]


def test_reduced_word_independence(s3):
    """Test both reduced-word families lift to the same braid operator"""
    classifier = MackeyClassifier(s3)
    module = classifier.induce_module(classifier.label(2, 1))
    c = braiding_matrix(module, module)
    assert reduced_word_deviation(c, module.dimension, 3) < 1e-9
    assert reduced_word_deviation(flip_braiding(2, -1.0), 2, 4) < 1e-12


def test_symmetrizer_budget():
    """Test the size guard"""
    with pytest.raises(SymmetrizerBudgetError):
        nichols_degree_dims(flip_braiding(3), 3, n_max=6, limit=256)


def test_character_table_json(s3):
    """Test the exported character table shape"""
    table = MackeyClassifier(s3).character_table_json()
    assert table["order"] == 6
    assert len(table["columns"]) == 8
    assert len(table["rows"]) == 8
    assert table["rows"][0]["dim"] == 1
    assert len(table["rows"][0]["values"]) == 8
