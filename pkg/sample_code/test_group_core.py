"""
Tests for finite group construction, validation, conjugacy classes and
commuting-pair orbits.
"""

import numpy as np
import pytest

from group_core import (BUILTIN_SPECS, GroupAxiomError, GroupSpecError, build_group,
                        check_conjugacy_invariants, commuting_pair_orbits, conjugacy_classes,
                        cyclic, direct_product, group_from_table, load_cayley_file,
                        save_cayley_file, summarize_group, validate_group)

# order, classes, commuting-pair orbits
EXPECTED_COUNTS = {
    "cyclic:1": (1, 1, 1),
    "cyclic:2": (2, 2, 4),
    "cyclic:4": (4, 4, 16),
    "prod(cyclic:2,cyclic:2)": (4, 4, 16),
    "sym:3": (6, 3, 8),
    "dihedral:4": (8, 5, 22),
    "q8": (8, 5, 22),
    "alt:4": (12, 4, 14),
    "dihedral:6": (12, 6, 32),
    "sym:4": (24, 5, 21),
}

NON_ASSOCIATIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


@pytest.mark.parametrize("spec", sorted(EXPECTED_COUNTS))
def test_builtin_counts(spec):
    """Test order, class count and orbit count of the builtin groups"""
    group = build_group(spec)
    order, num_classes, num_orbits = EXPECTED_COUNTS[spec]
    assert group.order == order
    assert conjugacy_classes(group).num_classes == num_classes
    assert commuting_pair_orbits(group).num_orbits == num_orbits


@pytest.mark.parametrize("spec", BUILTIN_SPECS)
def test_builtin_groups_validate(spec):
    """Test every builtin table passes the axioms and the class invariants"""
    group = build_group(spec)
    assert validate_group(group.cayley).passed
    assert group.identity == 0
    assert check_conjugacy_invariants(conjugacy_classes(group)) == []


def test_inverse_and_identity(s3):
    """Test inverse table and identity row"""
    for g in range(s3.order):
        assert s3.mul(g, s3.inv(g)) == 0
        assert s3.mul(0, g) == g


def test_s3_summary(s3):
    """Test the summary of S3"""
    summary = summarize_group(s3)
    assert summary["order"] == 6
    assert summary["num_classes"] == 3
    assert summary["class_sizes"] == [1, 3, 2]
    assert summary["centralizer_orders"] == [6, 2, 3]
    assert summary["commuting_pairs"] == 18
    assert summary["commuting_pair_orbits"] == 8
    assert summary["abelian"] is False


def test_commuting_pairs_count_equals_order_times_classes(d4):
    """Test |{(h, g): hg = gh}| = |G| * number of classes"""
    orbits = commuting_pair_orbits(d4)
    assert len(orbits.pairs) == d4.order * conjugacy_classes(d4).num_classes
    assert int(orbits.orbit_sizes().sum()) == len(orbits.pairs)
    assert orbits.representatives()[0] == (0, 0)


def test_orbit_of_marks_non_commuting_pairs(s3):
    """Test orbit_of is -1 exactly on non-commuting pairs"""
    orbits = commuting_pair_orbits(s3)
    for h in range(s3.order):
        for g in range(s3.order):
            assert (orbits.orbit_of[h, g] >= 0) == s3.commute(h, g)


def test_element_orders():
    """Test element orders and powers in a cyclic group"""
    c6 = cyclic(6)
    assert sorted(c6.element_order(a) for a in range(6)) == [1, 2, 3, 3, 6, 6]
    assert c6.power(1, 6) == 0
    assert c6.power(1, -1) == c6.inv(1)


def test_abelian_flags(c4, q8):
    """Test abelian detection"""
    assert c4.is_abelian()
    assert not q8.is_abelian()
    assert direct_product(c4, cyclic(2)).is_abelian()


def test_reindexes_identity():
    """Test a table with identity at index 1 is re-indexed to identity 0"""
    group = group_from_table(np.array([[1, 0], [0, 1]]), name="C2")
    assert group.identity == 0
    assert group.mul(0, 1) == 1
    assert group.mul(1, 1) == 0


def test_non_latin_table_rejected():
    """Test a table with a repeated row entry"""
    with pytest.raises(GroupAxiomError, match="latin-rows"):
        group_from_table(np.array([[0, 1], [1, 1]]))


def test_non_associative_loop_rejected():
    """Test a Latin square with identity that is not associative"""
    report = validate_group(np.array(NON_ASSOCIATIVE_LOOP))
    assert [axiom for axiom, _ in report.failures] == ["associativity"]
    with pytest.raises(GroupAxiomError, match="associativity"):
        group_from_table(np.array(NON_ASSOCIATIVE_LOOP))


def test_out_of_range_entries_rejected():
    """Test entries outside 0..n-1"""
    report = validate_group(np.array([[0, 2], [2, 0]]))
    assert not report.passed
    assert report.failures[0][0] == "entries"


@pytest.mark.parametrize("spec", ["foo:3", "sym:6", "alt:5", "prod(cyclic:2)", "cyclic:0", ""])
def test_bad_specs(spec):
    """Test malformed or unsupported spec strings"""
    with pytest.raises(GroupSpecError):
        build_group(spec)


def test_max_order_guard():
    """Test the order limit"""
    with pytest.raises(GroupSpecError, match="exceeds"):
        build_group("sym:4", max_order=12)


@pytest.mark.parametrize("spec,name", [("S3", "S3"), ("C4", "C4"), ("Q8", "Q8"), ("D4", "D4"), ("A4", "A4")])
def test_short_names(spec, name):
    """Test the short aliases"""
    assert build_group(spec).name == name


def test_cayley_file_roundtrip(tmp_path, d4):
    """Test writing a table and loading it back through the file: spec"""
    path = save_cayley_file(d4, str(tmp_path / "d4.cayley"))
    loaded = build_group(f"file:{path}")
    assert loaded.same_group(d4)
    assert loaded.name == "d4"


def test_cayley_file_missing(tmp_path):
    """Test a missing Cayley file"""
    with pytest.raises(GroupSpecError, match="not found"):
        load_cayley_file(str(tmp_path / "missing.cayley"))


def test_cayley_file_not_a_group(tmp_path):
    """Test a Cayley file whose table fails an axiom"""
    path = tmp_path / "bad.cayley"
    path.write_text("5\n" + "\n".join(" ".join(map(str, row)) for row in NON_ASSOCIATIVE_LOOP) + "\n")
    with pytest.raises(GroupAxiomError):
        load_cayley_file(str(path))


def test_cayley_file_malformed(tmp_path):
    """Test a Cayley file with the wrong number of rows"""
    path = tmp_path / "short.cayley"
    path.write_text("3\n0 1 2\n1 2 0\n")
    with pytest.raises(GroupSpecError, match="malformed"):
        load_cayley_file(str(path))
