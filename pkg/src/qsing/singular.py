"""Quasi-homogeneous singularity analysis.

Weights, nondegeneracy, central charge, Milnor number, the maximal
diagonal symmetry group (via Smith normal form of the exponent matrix),
the exponential grading element J, and subgroups containing J.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .exactalg import (Poly, groebner_basis, smith_normal_form,
                       det_unimodular, lcm)


class SingularError(ValueError):
    pass


class NonUniqueWeights(SingularError):
    pass


class NoPositiveSolution(SingularError):
    pass


class NonIsolatedSingularity(SingularError):
    pass


class MissingJ(SingularError):
    pass


class ElementNotInGroup(SingularError):
    pass


class GroupElement:
    """Diagonal symmetry as a phase vector Theta in [0,1)^N."""

    __slots__ = ("theta",)

    def __init__(self, theta):
        self.theta = tuple(Fraction(t) % 1 for t in theta)

    def __mul__(self, other):
        return GroupElement(a + b for a, b in zip(self.theta, other.theta))

    def inverse(self):
        return GroupElement(-t for t in self.theta)

    def __pow__(self, k):
        return GroupElement(k * t for t in self.theta)

    def is_identity(self):
        return all(t == 0 for t in self.theta)

    def order(self):
        return lcm([t.denominator for t in self.theta])

    def fixed_indices(self):
        return tuple(i for i, t in enumerate(self.theta) if t == 0)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.theta == other.theta

    def __hash__(self):
        return hash(self.theta)

    def __repr__(self):
        return "GroupElement(%s)" % (", ".join(map(str, self.theta)),)


class SymmetryGroup:
    """A finite group of diagonal symmetries, always containing J."""

    def __init__(self, elements, generators, J):
        self.elements = list(elements)
        self.generators = list(generators)
        self.J = J
        self._index = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._index

    def __iter__(self):
        return iter(self.elements)

    def contains_J(self):
        return self.J in self._index


class QSingularity:
    """A nondegenerate quasi-homogeneous polynomial with its invariants."""

    def __init__(self, W, B, q, d, n_i, c_hat, mu, jacobian_gb):
        self.W = W
        self.variables = W.vars
        self.B = B
        self.q = tuple(q)
        self.d = d
        self.n_i = tuple(n_i)
        self.c_hat = c_hat
        self.mu = mu
        self.jacobian_gb = jacobian_gb

    def __repr__(self):
        return ("QSingularity(%s, q=%s, c_hat=%s, mu=%d)"
                % (self.W, self.q, self.c_hat, self.mu))


def exponent_matrix(W):
    """Rows are the exponent vectors of the monomials of W (sorted)."""
    return [list(m) for m in W.monomials()]


def compute_weights(W):
    """Solve B*q = (1,...,1) for the unique positive rational weights.

    Returns (q, d, n_i) with q_i = n_i/d and gcd(d, n_1, ..., n_N) = 1.
    """
    n_vars = len(W.vars)
    for i in range(n_vars):
        if all(m[i] == 0 for m in W.terms):
            raise SingularError("variable %r does not occur" % (W.vars[i],))
    B = exponent_matrix(W)
    # Gaussian elimination over Q on the augmented system.
    rows = [[Fraction(e) for e in row] + [Fraction(1)] for row in B]
    pivots = []
    r = 0
    for c in range(n_vars):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if len(pivots) < n_vars:
        raise NonUniqueWeights("exponent matrix has rank %d < %d"
                               % (len(pivots), n_vars))
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            raise NoPositiveSolution("inconsistent weight system")
    q = [Fraction(0)] * n_vars
    for i, c in enumerate(pivots):
        q[c] = rows[i][-1]
    if any(w <= 0 for w in q):
        raise NoPositiveSolution("weights %s not all positive" % (q,))
    d = lcm([w.denominator for w in q])
    n_i = [int(w * d) for w in q]
    g = math.gcd(d, *n_i)
    d //= g
    n_i = [x // g for x in n_i]
    return tuple(Fraction(ni, d) for ni in n_i), d, tuple(n_i)


def _pure_power_leads(gb, n_vars):
    """Check each variable has a pure-power leading monomial in the basis."""
    covered = [False] * n_vars
    for g in gb:
        lead = g.leading_monomial()
        nz = [i for i, e in enumerate(lead) if e]
        if len(nz) == 1:
            covered[nz[0]] = True
    return all(covered)


def standard_monomials(gb, n_vars):
    """Monomials not divisible by any leading monomial of gb."""
    leads = [g.leading_monomial() for g in gb]
    caps = []
    for i in range(n_vars):
        pure = [l[i] for l in leads if all(e == 0 for j, e in enumerate(l)
                                           if j != i) and l[i] > 0]
        if not pure:
            raise NonIsolatedSingularity(
                "no pure power of variable %d in the leading ideal" % i)
        caps.append(min(pure))
    out = []
    for exps in itertools.product(*[range(c) for c in caps]):
        if not any(all(e >= l for e, l in zip(exps, lead)) for lead in leads):
            out.append(exps)
    return out


def check_nondegenerate(W):
    """Verify isolated singularity and build the QSingularity record."""
    q, d, n_i = compute_weights(W)
    jac = [W.derivative(v) for v in W.vars]
    gb = groebner_basis(jac)
    n_vars = len(W.vars)
    if not gb or not _pure_power_leads(gb, n_vars):
        raise NonIsolatedSingularity("Jacobian ideal is not zero-dimensional")
    basis = standard_monomials(gb, n_vars)
    mu_formula = 1
    for w in q:
        mu_formula *= (1 / w - 1)
    if mu_formula != len(basis):
        raise NonIsolatedSingularity(
            "milnor number mismatch: %s vs %d standard monomials"
            % (mu_formula, len(basis)))
    c_hat = sum((1 - 2 * w for w in q), Fraction(0))
    B = exponent_matrix(W)
    return QSingularity(W, B, q, d, n_i, c_hat, int(mu_formula), gb)


def _close_under_product(gens, limit=100000):
    elems = {GroupElement([Fraction(0)] * len(gens[0].theta))}
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = a * g
                if b not in elems:
                    elems.add(b)
                    new.append(b)
                    if len(elems) > limit:
                        raise SingularError("group enumeration blew up")
        frontier = new
    return elems


def max_diagonal_group(s):
    """All diagonal symmetries of W, computed from the SNF of B.

    Solutions of B*Theta in Z^s: with B = V*T*Q, set y = Q*Theta; then
    t_ll * y_l must be integral, so y_l runs over multiples of 1/t_ll.
    Generators are the columns-of-Q^{-1} scaled rows, i.e. Theta solving
    Q*Theta = e_l / t_ll.
    """
    B = s.B
    n = len(s.variables)
    V, T, Q = smith_normal_form(B)
    # invert Q over the rationals (it is unimodular)
    Qf = [[Fraction(x) for x in row] for row in Q]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if Qf[i][c] != 0)
        Qf[c], Qf[pivot] = Qf[pivot], Qf[c]
        inv[c], inv[pivot] = inv[pivot], inv[c]
        pv = Qf[c][c]
        Qf[c] = [x / pv for x in Qf[c]]
        inv[c] = [x / pv for x in inv[c]]
        for i in range(n):
            if i != c and Qf[i][c] != 0:
                f = Qf[i][c]
                Qf[i] = [a - f * b for a, b in zip(Qf[i], Qf[c])]
                inv[i] = [a - f * b for a, b in zip(inv[i], inv[c])]
    gens = []
    for l in range(n):
        t = T[l][l] if l < len(T) else 0
        if t in (0, 1):
            continue
        theta = [inv[i][l] / t for i in range(n)]
        g = GroupElement(theta)
        if not g.is_identity():
            gens.append(g)
    J = GroupElement(s.q)
    if not gens:
        gens = [J]
    elems = _close_under_product(gens)
    if J not in elems:
        raise MissingJ("J missing from the maximal group (internal error)")
    order = 1
    for l in range(min(len(T), n)):
        if T[l][l] != 0:
            order *= T[l][l]
    if len(elems) != order:
        raise SingularError("group order %d != invariant-factor product %d"
                            % (len(elems), order))
    elements = sorted(elems, key=lambda g: g.theta)
    return SymmetryGroup(elements, gens, J)


def exponential_grading_element(s):
    return GroupElement(s.q)


def subgroup_from_generators(G_W, gens):
    """Subgroup generated by gens; must contain J."""
    for g in gens:
        if g not in G_W:
            raise ElementNotInGroup("%r is not a symmetry" % (g,))
    if not gens:
        raise MissingJ("empty generating set cannot contain J")
    elems = _close_under_product(list(gens))
    if G_W.J not in elems:
        raise MissingJ("generated subgroup does not contain J")
    elements = sorted(elems, key=lambda g: g.theta)
    return SymmetryGroup(elements, list(gens), G_W.J)
