"""Closed-form B-model tables against an independent residue recomputation.

The metric and three-point tables are checked against the graded residue
of the undeformed Milnor ring; the four-point tables are checked against
the sigma-linear term of deformed three-point residues along a generic
flat-coordinate direction.
"""

import itertools
from fractions import Fraction as F

import pytest
import sympy as sp

from qsing.saito import FamilyData, bmodel_correlators

from oracle import (graded_residue, primitive_scale,
                    quartic_linear_coefficients, variables)

A_CASES = [("A", n) for n in range(2, 7)]
D_CASES = [("D", n) for n in range(3, 7)]
CASES = A_CASES + D_CASES


def _ids(cases):
    return ["%s%d" % c for c in cases]


@pytest.mark.parametrize("family,n", CASES, ids=_ids(CASES))
def test_metric_matches_residue(family, n):
    data = FamilyData(family, n)
    B = bmodel_correlators(family, n)
    res, xs = graded_residue(family, n)
    monos = {lab: sp.prod([v ** e for v, e in zip(xs, data.nus[lab])])
             for lab in data.labels}
    # The A table's metric sits two primitive-form powers above the
    # residue; the D table's metric sits one power above it.
    scale = sp.Rational(primitive_scale(family, n))
    if family == "A":
        scale = scale ** 2
    for i in data.labels:
        for j in data.labels:
            assert sp.Rational(B.eta(i, j)) == scale * res(monos[i] * monos[j])


@pytest.mark.parametrize("family,n", CASES, ids=_ids(CASES))
def test_three_point_matches_residue(family, n):
    data = FamilyData(family, n)
    B = bmodel_correlators(family, n)
    res, xs = graded_residue(family, n)
    monos = {lab: sp.prod([v ** e for v, e in zip(xs, data.nus[lab])])
             for lab in data.labels}
    scale = sp.Rational(primitive_scale(family, n))
    for combo in itertools.combinations_with_replacement(data.labels, 3):
        product = monos[combo[0]] * monos[combo[1]] * monos[combo[2]]
        assert sp.Rational(B.three(*combo)) == scale * res(product)


@pytest.mark.parametrize("family,n", CASES, ids=_ids(CASES))
def test_four_point_matches_deformed_residue(family, n):
    data = FamilyData(family, n)
    B = bmodel_correlators(family, n)
    linear, direction = quartic_linear_coefficients(family, n)
    assert linear, "no quartic triples in range"
    unit = data.labels[0]
    for triple, lin in linear.items():
        weight = 3 - data.c_hat - sum(data.sigma[t] for t in triple)
        tails = [l for l in data.labels
                 if l != unit and data.sigma[l] == weight]
        closed = sum((sp.Rational(B.four(*(triple + (l,))))
                      * sp.Rational(direction[l]) for l in tails),
                     sp.Integer(0))
        assert sp.Rational(lin) == closed, (triple, lin, closed)
