"""Milnor ring Q_W = Q[x]/Jac(W): basis, Hessian, residue, pairing.

The residue functional is normalized by Res(Hessian) = mu and is
supported in top weighted degree, which pins it uniquely on the graded
quotient of a quasi-homogeneous W.
"""

from __future__ import annotations

from fractions import Fraction

from .exactalg import Poly, groebner_basis, normal_form
from .singular import QSingularity, standard_monomials


class MilnorError(ValueError):
    pass


def _weighted_degree(mono, weights):
    return sum(Fraction(w) * e for w, e in zip(weights, mono))


class MilnorRing:
    """Finite-dimensional local algebra of an isolated singularity."""

    def __init__(self, singularity: QSingularity):
        self.singularity = singularity
        self.W = singularity.W
        self.vars = singularity.variables
        self.weights = singularity.q
        self.gb = singularity.jacobian_gb
        basis = standard_monomials(self.gb, len(self.vars))
        basis.sort(key=lambda m: (_weighted_degree(m, self.weights),
                                  (sum(m), tuple(-e for e in reversed(m)))))
        self.basis = basis
        self.mu = len(basis)
        if self.mu != singularity.mu:
            raise MilnorError("basis size %d != mu %d" % (self.mu,
                                                          singularity.mu))
        top = _weighted_degree(basis[-1], self.weights)
        socle_candidates = [m for m in basis
                            if _weighted_degree(m, self.weights) == top]
        if len(socle_candidates) != 1:
            raise MilnorError("socle is not one-dimensional: %s"
                              % socle_candidates)
        self.socle = socle_candidates[0]
        if top != singularity.c_hat:
            raise MilnorError("socle degree %s != c_hat %s"
                              % (top, singularity.c_hat))
        self.hessian_nf = normal_form(hessian(self.W), self.gb)
        self._socle_hess_coeff = self.hessian_nf.coeff(self.socle)
        if self._socle_hess_coeff == 0:
            raise MilnorError("Hessian reduces to zero on the socle")

    def reduce(self, f):
        return normal_form(f, self.gb)

    def residue(self, f):
        """Res(f) = mu * [socle coefficient of NF(f)] / [same for Hessian]."""
        nf = self.reduce(f)
        return (Fraction(self.mu) * nf.coeff(self.socle)
                / self._socle_hess_coeff)

    def residue_pairing(self, f, g):
        return self.residue(f * g)

    def basis_poly(self, mono):
        return Poly.monomial(self.vars, mono)

    def gram_matrix(self):
        polys = [self.basis_poly(m) for m in self.basis]
        return [[self.residue_pairing(a, b) for b in polys] for a in polys]

    def multiply_nf(self, f, g):
        return self.reduce(f * g)

    def coordinates(self, f):
        """Coordinates of NF(f) on the standard-monomial basis."""
        nf = self.reduce(f)
        coords = [nf.coeff(m) for m in self.basis]
        rebuilt = Poly(self.vars,
                       {m: c for m, c in zip(self.basis, coords) if c != 0})
        if rebuilt != nf:
            raise MilnorError("normal form leaves the standard-monomial span")
        return coords


def hessian(W):
    """Determinant of the matrix of second partials."""
    n = len(W.vars)
    second = [[W.derivative(W.vars[i]).derivative(W.vars[j])
               for j in range(n)] for i in range(n)]
    return _det(second, W.vars)


def _det(M, variables):
    n = len(M)
    if n == 0:
        return Poly.constant(variables, 1)
    if n == 1:
        return M[0][0]
    total = Poly.zero(variables)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor, variables)
        total = total + term if j % 2 == 0 else total - term
    return total


def milnor_basis(s: QSingularity) -> MilnorRing:
    return MilnorRing(s)


def hessian_class(r: MilnorRing) -> Poly:
    return r.hessian_nf


def residue(r: MilnorRing, f: Poly) -> Fraction:
    return r.residue(f)


def residue_pairing(r: MilnorRing, f: Poly, g: Poly) -> Fraction:
    return r.residue_pairing(f, g)
