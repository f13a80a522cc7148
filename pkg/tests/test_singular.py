"""Weights, nondegeneracy, Milnor number, and diagonal symmetry groups."""

from fractions import Fraction

import pytest

from qsing.exactalg import parse_polynomial
from qsing.milnor import MilnorRing
from qsing.singular import (GroupElement, MissingJ, NonIsolatedSingularity,
                            NonUniqueWeights, check_nondegenerate,
                            exponential_grading_element, max_diagonal_group,
                            subgroup_from_generators)


def sing(text, variables=None):
    return check_nondegenerate(parse_polynomial(text, variables))


def test_weights_loop_polynomial():
    s = sing("x^3 + x*y^3", ("x", "y"))
    assert s.q == (Fraction(1, 3), Fraction(2, 9))
    assert s.c_hat == Fraction(8, 9)
    assert s.mu == 7


def test_weights_chain_polynomial():
    s = sing("x^7 + x*y^2", ("x", "y"))
    assert s.q == (Fraction(1, 7), Fraction(3, 7))
    assert s.mu == 8


def test_fermat_weights():
    s = sing("x^3 + y^4", ("x", "y"))
    assert s.q == (Fraction(1, 3), Fraction(1, 4))
    assert s.mu == 6


def test_non_unique_weights_rejected():
    with pytest.raises(NonUniqueWeights):
        sing("x^2*y", ("x", "y"))


def test_non_isolated_rejected():
    with pytest.raises(NonIsolatedSingularity):
        sing("x^2*y^2 + x^4", ("x", "y"))


def test_group_order_loop():
    s = sing("x^3 + x*y^3", ("x", "y"))
    G = max_diagonal_group(s)
    assert G.order == 9
    assert G.J in G


def test_group_order_chain():
    for n in (4, 5, 7):
        s = sing("x^%d + x*y^2" % n, ("x", "y"))
        assert max_diagonal_group(s).order == 2 * n


def test_exponential_grading_element():
    s = sing("x^3 + x*y^3", ("x", "y"))
    J = exponential_grading_element(s)
    assert J.theta == s.q
    order = 1
    g = J
    while not g.is_identity():
        g = g * J
        order += 1
    assert order == 9


def test_subgroup_from_generators():
    s = sing("x^7 + x*y^2", ("x", "y"))
    G_W = max_diagonal_group(s)
    H = subgroup_from_generators(G_W, [G_W.J])
    assert H.order == 7
    with pytest.raises(MissingJ):
        subgroup_from_generators(G_W, [GroupElement((Fraction(0),
                                                     Fraction(1, 2)))])


def test_group_element_arithmetic():
    g = GroupElement((Fraction(2, 3), Fraction(5, 6)))
    assert (g * g).theta == (Fraction(1, 3), Fraction(2, 3))
    assert (g * g.inverse()).is_identity()
    assert (g ** 6).is_identity()
    assert g.fixed_indices() == ()
    assert GroupElement((Fraction(0), Fraction(1, 2))).fixed_indices() == (0,)


def test_milnor_ring_dimension_and_residue():
    s = sing("x^3 + x*y^3", ("x", "y"))
    ring = MilnorRing(s)
    assert len(ring.basis) == 7
    hess = ring.reduce(__import__("qsing.milnor", fromlist=["hessian"])
                       .hessian(s.W))
    assert ring.residue(hess) == s.mu
