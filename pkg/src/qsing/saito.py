"""Singularity-side Frobenius data for the simple families.

Flat coordinates via the Noumi-Yamada series, closed-form metric and
three/four-point tables for the x^{n+1} and x^n + x*y^2 families, the
transcribed tables for the three exceptional families, potential assembly,
and the primitive-form rescaling law.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

F = Fraction


class SaitoError(ValueError):
    pass


class UnknownFamily(SaitoError):
    pass


class ZeroLambda(SaitoError):
    pass


def pochhammer(z, k):
    """(z;k) = Gamma(z+k)/Gamma(z) for integer k of either sign."""
    out = F(1)
    if k >= 0:
        for j in range(k):
            out *= z + j
    else:
        for j in range(1, -k + 1):
            out /= z - j
    return out


# -- family descriptions ------------------------------------------------------


class FamilyData:
    """Deformation exponents, weights and Noumi-Yamada data for one family.

    labels: hashable coordinate names in the standard convention (exponents
    for the one- and two-variable chains, scaled-weight integers for the
    exceptional families).  sigma[label]: the coordinate weight 1 - <nu, q>.
    """

    def __init__(self, family, n=None):
        self.family = family
        self.n = n
        if family == "A":
            if n is None or n < 2:
                raise UnknownFamily("A requires n >= 2")
            self.q = (F(1, n + 1),)
            self.nus = {nu: (nu,) for nu in range(n)}
        elif family == "D":
            if n is None or n < 3:
                raise UnknownFamily("D requires n >= 3")
            self.q = (F(1, n), F(n - 1, 2 * n))
            self.nus = {i: (i, 0) for i in range(n)}
            self.nus["01"] = (0, 1)
        elif family == "E6":
            # exponents ordered (y, x) for W = x^3 + y^4
            self.q = (F(1, 4), F(1, 3))
            self.nus = {}
            for n1 in range(3):
                for n2 in range(2):
                    nu = (n1, n2)
                    self.nus[self._elabel(nu, 12)] = nu
        elif family == "E7":
            # exponents ordered (x, y) for W = x^3 + x*y^3
            self.q = (F(1, 3), F(2, 9))
            self.nus = {}
            for nu in [(a, b) for a in range(3) for b in range(2)] + [(0, 2)]:
                self.nus[self._elabel(nu, 9)] = nu
        elif family == "E8":
            # exponents ordered (y, x) for W = x^3 + y^5
            self.q = (F(1, 5), F(1, 3))
            self.nus = {}
            for n1 in range(4):
                for n2 in range(2):
                    nu = (n1, n2)
                    self.nus[self._elabel(nu, 15)] = nu
        else:
            raise UnknownFamily(family)
        self.labels = sorted(self.nus,
                             key=lambda l: (isinstance(l, str), l))
        self.sigma = {l: 1 - sum(e * qi for e, qi in zip(self.nus[l], self.q))
                      for l in self.labels}
        self.c_hat = sum(1 - 2 * qi for qi in self.q)

    def _elabel(self, nu, d):
        s = 1 - sum(e * qi for e, qi in zip(nu, self.q))
        lab = d * s
        assert lab.denominator == 1
        return int(lab)

    def ny_coefficient(self, label, ell):
        """Noumi-Yamada c_nu evaluated at the total exponent vector ell."""
        nu = self.nus[label]
        if self.family == "A":
            diff = ell[0] - nu[0]
            n = self.n
            if diff % (n + 1):
                return F(0)
            k = diff // (n + 1)
            return (-1) ** k * pochhammer(F(nu[0] + 1, n + 1), k)
        if self.family == "D":
            n = self.n
            d2 = ell[1] - nu[1]
            if d2 % 2:
                return F(0)
            k2 = d2 // 2
            d1 = ell[0] - nu[0] - k2
            if d1 % n:
                return F(0)
            k1 = d1 // n
            return ((-1) ** (k1 + k2)
                    * pochhammer(F(nu[0] + 1, n) - F(nu[1] + 1, 2 * n), k1)
                    * pochhammer(F(nu[1] + 1, 2), k2))
        if self.family == "E7":
            d2 = ell[1] - nu[1]
            if d2 % 3:
                return F(0)
            k2 = d2 // 3
            d1 = ell[0] - nu[0] - k2
            if d1 % 3:
                return F(0)
            k1 = d1 // 3
            return ((-1) ** (k1 + k2)
                    * pochhammer(F(nu[0] + 1, 3) - F(nu[1] + 1, 9), k1)
                    * pochhammer(F(nu[1] + 1, 3), k2))
        m1, m2 = (4, 3) if self.family == "E6" else (5, 3)
        d1, d2 = ell[0] - nu[0], ell[1] - nu[1]
        if d1 % m1 or d2 % m2 or d1 < 0 or d2 < 0:
            return F(0)
        k1, k2 = d1 // m1, d2 // m2
        return ((-1) ** (k1 + k2)
                * pochhammer(F(nu[0] + 1, m1), k1)
                * pochhammer(F(nu[1] + 1, m2), k2))


# -- flat coordinates ---------------------------------------------------------


class FlatCoordMap:
    """Series s(t) and its inverse t(s), truncated at a fixed total order.

    Series are stored as {label: {multiset-of-labels tuple: coefficient}};
    each key is a sorted tuple of coordinate labels with multiplicity.
    """

    def __init__(self, data: FamilyData, order):
        self.data = data
        self.order = order
        self.s_series = {l: self._s_of_t(l) for l in data.labels}
        self.t_series = self._invert()

    def _s_of_t(self, label):
        data = self.data
        target = data.sigma[label]
        out = {(label,): F(1)}
        for k in range(2, self.order + 1):
            for combo in itertools.combinations_with_replacement(
                    data.labels, k):
                if sum(data.sigma[l] for l in combo) != target:
                    continue
                ell = [0] * len(data.q)
                for l in combo:
                    for i, e in enumerate(data.nus[l]):
                        ell[i] += e
                c = data.ny_coefficient(label, tuple(ell))
                if c == 0:
                    continue
                counts = {}
                for l in combo:
                    counts[l] = counts.get(l, 0) + 1
                alpha_fact = 1
                for m in counts.values():
                    for j in range(2, m + 1):
                        alpha_fact *= j
                out[combo] = c / alpha_fact
        return out

    def _invert(self):
        """t(s) by fixed-point iteration on t = s - higher(t)."""
        t = {l: {(l,): F(1)} for l in self.data.labels}
        for _ in range(self.order):
            new = {}
            for l in self.data.labels:
                acc = {(l,): F(1)}
                for combo, c in self.s_series[l].items():
                    if len(combo) < 2:
                        continue
                    for key, cc in self._monomial_of_series(combo, t).items():
                        acc[key] = acc.get(key, F(0)) - c * cc
                        if acc[key] == 0:
                            del acc[key]
                new[l] = acc
            if new == t:
                break
            t = new
        return t

    def _monomial_of_series(self, combo, series):
        prod = {(): F(1)}
        for l in combo:
            nxt = {}
            for key, c in prod.items():
                for key2, c2 in series[l].items():
                    merged = tuple(sorted(key + key2))
                    if len(merged) > self.order:
                        continue
                    nxt[merged] = nxt.get(merged, F(0)) + c * c2
            prod = nxt
        return prod

    def compose_identity_defect(self, order=None):
        """s(t(s)) minus the identity, truncated; zero iff inverse is exact."""
        order = order or self.order
        defect = {}
        for l in self.data.labels:
            acc = {}
            for combo, c in self.s_series[l].items():
                for key, cc in self._monomial_of_series(
                        combo, self.t_series).items():
                    if len(key) > order:
                        continue
                    acc[key] = acc.get(key, F(0)) + c * cc
            acc[(l,)] = acc.get((l,), F(0)) - 1
            defect[l] = {k: v for k, v in acc.items() if v != 0}
        return defect


def flat_coordinates(family, n=None, order=3):
    return FlatCoordMap(FamilyData(family, n), order)


# -- closed-form correlators --------------------------------------------------


def label_sort_key(label):
    """Canonical coordinate-label order: integers first, then strings."""
    return (isinstance(label, str), label)


def sort_labels(labels):
    return tuple(sorted(labels, key=label_sort_key))


def _aut(combo):
    counts = {}
    for x in combo:
        counts[x] = counts.get(x, 0) + 1
    out = 1
    for m in counts.values():
        for j in range(2, m + 1):
            out *= j
    return out


class BModelCorrelators:
    """Metric and flat three/four-point values for one family.

    Chain families use the closed forms at the bases stated with them
    (the x^{n+1} tables as printed, the x^n + x*y^2 tables at the
    2n*dx1^dx2 base); exceptional families use the transcribed tables.
    `primitive_scale` multiplies everything linearly.
    """

    def __init__(self, family, n=None, primitive_scale=F(1)):
        self.data = FamilyData(family, n)
        self.family = family
        self.n = n
        self.scale = F(primitive_scale)
        if family in ("E6", "E7", "E8"):
            self._eta, self._c3, self._c4 = _exceptional_tables(family)

    # dimension filter shared by k = 3 and k = 4: sum of coordinate
    # weights must equal 3 - c_hat
    def _weight_ok(self, labels):
        return sum(self.data.sigma[l] for l in labels) == 3 - self.data.c_hat

    def eta(self, p, q):
        n = self.n
        if self.family == "A":
            if isinstance(p, str) or isinstance(q, str):
                raise UnknownFamily("bad label")
            return self.scale * ((n + 1) if p + q == n - 1 else 0)
        if self.family == "D":
            if p == "01" and q == "01":
                return self.scale * (-n)
            if p == "01" or q == "01":
                return F(0)
            return self.scale * (1 if p + q == n - 1 else 0)
        return self.scale * self._eta.get(tuple(sorted((p, q))), F(0))

    def three(self, p, q, r):
        n = self.n
        key = sort_labels((p, q, r))
        if self.family == "A":
            return self.scale * (1 if p + q + r == n - 1 else 0)
        if self.family == "D":
            m01 = sum(1 for x in key if x == "01")
            ints = [x for x in key if x != "01"]
            if m01 == 0:
                return self.scale * (1 if sum(ints) == n - 1 else 0)
            if m01 == 2:
                return self.scale * (-n if ints[0] == 0 else 0)
            return F(0)
        return self.scale * self._c3.get(key, F(0))

    def four(self, p, q, r, l):
        n = self.n
        if self.family == "A":
            if not self._weight_ok((p, q, r, l)):
                return F(0)
            i, j, k, m = sorted((p, q, r, l), reverse=True)
            val = m
            val -= (n - j - k) if j + k <= n - 1 else 0
            val -= (n - i - k) if i + k <= n - 1 else 0
            val -= (n - i - j) if i + j <= n - 1 else 0
            return self.scale * F(-val, n + 1)
        if self.family == "D":
            key = (p, q, r, l)
            m01 = sum(1 for x in key if x == "01")
            ints = sorted((x for x in key if x != "01"), reverse=True)
            if m01 % 2:
                return F(0)
            if m01 == 4:
                return F(0)
            if m01 == 2:
                return self.scale * (F(-1, 2) if sum(ints) == n else F(0))
            if not self._weight_ok(key):
                return F(0)
            i, j, k, m = ints
            val = F(m)
            val -= (n - i - j - F(1, 2)) if i + j <= n - 1 else 0
            val -= (n - k - j - F(1, 2)) if k + j <= n - 1 else 0
            val -= (n - i - k - F(1, 2)) if i + k <= n - 1 else 0
            return self.scale * (-val / n)
        key = sort_labels((p, q, r, l))
        hit = self._c4.get(key)
        return None if hit is None else self.scale * hit


def _exceptional_tables(family):
    """(eta, C3, C4) keyed by sorted label tuples, at the stated bases.

    The x^3 + x*y^3 cubic table is rebuilt from the three-point values
    C_991 = C_946 = C_667 = C_937 = 1/9 and C_577 = C_559 = -1/3 at the
    unit volume form, times the stated base 9 (the separately displayed
    cubic polynomial is inconsistent with those values)."""
    if family == "E7":
        eta = {(1, 9): F(1), (3, 7): F(1), (4, 6): F(1), (5, 5): F(-3)}
        c3 = {(1, 9, 9): F(1), (4, 6, 9): F(1), (6, 6, 7): F(1),
              (3, 7, 9): F(1), (5, 7, 7): F(-3), (5, 5, 9): F(-3)}
        c4 = {(3, 4, 6, 6): F(-1, 9), (3, 3, 6, 7): F(1, 9),
              (1, 4, 7, 7): F(-1, 3)}
        return eta, c3, c4
    if family == "E6":
        eta = {(2, 12): F(1), (5, 9): F(1), (6, 8): F(1)}
        c3 = {(6, 8, 12): F(1), (5, 9, 12): F(1), (2, 12, 12): F(1),
              (8, 9, 9): F(1)}
        # from F4 = -(1/8)s5 s9 s6^2 - (1/12)s8^2 s5^2 - (1/18)s2 s8^3
        #           -(1/8)s2 s6 s9^2
        c4 = {(5, 6, 6, 9): F(-1, 4), (5, 5, 8, 8): F(-1, 3),
              (2, 8, 8, 8): F(-1, 3), (2, 6, 9, 9): F(-1, 4)}
        return eta, c3, c4
    if family == "E8":
        eta = {(1, 15): F(1), (4, 12): F(1), (6, 10): F(1), (7, 9): F(1)}
        c3 = {(4, 12, 15): F(1), (7, 9, 15): F(1), (6, 10, 15): F(1),
              (1, 15, 15): F(1), (9, 10, 12): F(1), (7, 12, 12): F(1)}
        # from F4 = -(1/18)s7^3 s10 - (1/10)s6 s7 s9^2 - (1/10)s7 s6^2 s12
        #          - (1/15)s4 s9^3 - (1/6)s4 s7 s10^2 - (1/5)s4 s6 s9 s12
        #          - (1/18)s1 s10^3 - (1/10)s1 s9^2 s12 - (1/10)s1 s6 s12^2
        c4 = {(7, 7, 7, 10): F(-1, 3), (6, 7, 9, 9): F(-1, 5),
              (6, 6, 7, 12): F(-1, 5), (4, 9, 9, 9): F(-2, 5),
              (4, 7, 10, 10): F(-1, 3), (4, 6, 9, 12): F(-1, 5),
              (1, 10, 10, 10): F(-1, 3), (1, 9, 9, 12): F(-1, 5),
              (1, 6, 12, 12): F(-1, 5)}
        return eta, c3, c4
    raise UnknownFamily(family)


def bmodel_correlators(family, n=None, primitive_scale=F(1)):
    return BModelCorrelators(family, n, primitive_scale)


# -- potentials ---------------------------------------------------------------


def bmodel_potential(family, n=None, primitive_scale=F(1)):
    """F3+F4 as {sorted label tuple: coefficient} with 1/k! symmetry factors.

    Exceptional-family quartics cover only the monomials the source tables
    list; unlisted quartic coefficients are unknown, not zero.
    """
    B = bmodel_correlators(family, n, primitive_scale)
    labels = B.data.labels
    out = {}
    for combo in itertools.combinations_with_replacement(labels, 3):
        v = B.three(*combo)
        if v:
            out[combo] = v / _aut(combo)
    for combo in itertools.combinations_with_replacement(labels, 4):
        v = B.four(*combo)
        if v:
            out[combo] = v / _aut(combo)
    return out


def rescale_potential(potential, lam):
    """Primitive-form rescale: cubic part fixed, quartic part times lambda.

    The tracked volume-form factor is lambda**(-c_hat), kept symbolic in
    the returned metadata string rather than evaluated.
    """
    lam = F(lam)
    if lam == 0:
        raise ZeroLambda("rescale factor must be nonzero")
    out = {k: (v * lam if len(k) == 4 else v) for k, v in potential.items()}
    return out, "c = lambda^(-c_hat) with lambda = %s" % (lam,)
