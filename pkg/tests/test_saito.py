"""Flat-coordinate construction for the deformed-singularity potentials."""

from fractions import Fraction

import pytest

from qsing.saito import (
    ZeroLambda,
    bmodel_correlators,
    bmodel_potential,
    flat_coordinates,
    label_sort_key,
    pochhammer,
    rescale_potential,
    sort_labels,
)


def quadratic_part(series):
    return {combo: c for combo, c in series.items() if len(combo) == 2}


def test_pochhammer():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(Fraction(3), 0) == 1
    assert pochhammer(Fraction(-1, 3), 2) == Fraction(-2, 9)


def test_label_sorting():
    labels = [9, 1, 6, 3]
    assert sort_labels(labels) == tuple(sorted(labels, key=label_sort_key))
    assert sort_labels(labels)[0] == 1
    assert sort_labels([2, "mu"]) == (2, "mu")


def test_e7_flat_coordinate_series():
    fc = flat_coordinates("E7", order=3)
    ts = fc.t_series
    # linear parts are always the identity
    for label, series in ts.items():
        assert series[(label,)] == 1
    # quadratic corrections of the degree-shifted coordinates
    assert quadratic_part(ts[4]) == {(1, 3): Fraction(4, 9)}
    assert quadratic_part(ts[6]) == {(1, 5): Fraction(1, 3),
                                     (3, 3): Fraction(5, 18)}
    assert quadratic_part(ts[7]) == {(1, 6): Fraction(1, 9),
                                     (3, 4): Fraction(1, 9)}
    assert quadratic_part(ts[9]) == {(3, 6): Fraction(2, 9),
                                     (4, 5): Fraction(1, 3)}
    # the primitive and the two lowest-degree coordinates stay linear
    for label in (1, 3, 5):
        assert quadratic_part(ts[label]) == {}


@pytest.mark.parametrize("family,n", [
    ("A", 5), ("D", 5), ("E6", None), ("E7", None), ("E8", None),
])
def test_composition_with_inverse_is_identity(family, n):
    fc = flat_coordinates(family, n, order=3)
    defect = fc.compose_identity_defect()
    for label, series in defect.items():
        assert series == {}, (family, label)


def test_bmodel_metric_and_cubic_values():
    b = bmodel_correlators("E7")
    # metric pairs complementary-degree coordinates
    assert b.eta(1, 9) != 0
    assert b.eta(1, 1) == 0
    # the top cubic term of the potential in flat coordinates
    pot = bmodel_potential("E7")
    assert pot[(1, 9, 9)] == Fraction(1, 2)
    assert pot[(5, 5, 9)] == Fraction(-3, 2)


def test_bmodel_potential_a_series():
    pot = bmodel_potential("A", 3)
    # only weight-compatible index combinations appear
    assert all(len(combo) >= 3 for combo in pot)
    assert any(len(combo) == 4 for combo in pot)


def test_rescale_potential():
    pot = bmodel_potential("A", 3)
    doubled, note = rescale_potential(pot, Fraction(2))
    for combo, coeff in pot.items():
        expect = coeff * 2 if len(combo) == 4 else coeff
        assert doubled[combo] == expect
    assert "lambda" in note
    with pytest.raises(ZeroLambda):
        rescale_potential(pot, Fraction(0))
