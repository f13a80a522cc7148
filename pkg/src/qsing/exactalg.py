"""Exact rational computer algebra kernel.

Sparse multivariate polynomials over Q with a text parser, graded
reverse-lexicographic Groebner bases / normal forms (wrapping sympy), and
an integer-matrix Smith normal form with unimodular transforms.

No floating point is used anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import sympy


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    """Syntax error; carries the offending position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


def _grevlex_key(exps):
    # Descending sort with reverse=True puts the grevlex-largest monomial
    # first: compare total degree, then negated exponents read from the last
    # variable backwards.
    return (sum(exps), tuple(-e for e in reversed(exps)))


class Poly:
    """Immutable sparse polynomial: {exponent tuple: Fraction}."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms):
        self.vars = tuple(variables)
        clean = {}
        for mono, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(self.vars):
                raise PolyError("monomial length %d != %d variables"
                                % (len(mono), len(self.vars)))
            if any(e < 0 for e in mono):
                raise PolyError("negative exponent in %r" % (mono,))
            clean[mono] = clean.get(mono, Fraction(0)) + coeff
        self.terms = {m: c for m, c in clean.items() if c != 0}
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c):
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: Fraction(c)})

    @classmethod
    def variable(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, variables, exps, coeff=1):
        return cls(variables, {tuple(exps): Fraction(coeff)})

    # -- basic queries ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self):
        n = len(self.vars)
        return self.terms.get((0,) * n, Fraction(0))

    def monomials(self):
        return sorted(self.terms, key=_grevlex_key, reverse=True)

    def leading_monomial(self):
        if self.is_zero():
            raise PolyError("zero polynomial has no leading monomial")
        return max(self.terms, key=_grevlex_key)

    def coeff(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=0)

    def weighted_degree(self, weights):
        """Weighted degree; requires the polynomial to be homogeneous."""
        degs = {sum(Fraction(w) * e for w, e in zip(weights, m))
                for m in self.terms}
        if len(degs) > 1:
            raise PolyError("not weighted-homogeneous: degrees %s"
                            % sorted(degs))
        return degs.pop() if degs else Fraction(0)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise PolyError("variable mismatch: %s vs %s"
                            % (self.vars, other.vars))

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Poly(self.vars, terms)

    def __neg__(self):
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.vars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.vars,
                        {m: c * Fraction(other) for m, c in self.terms.items()})
        self._check(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return Poly(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise PolyError("negative power")
        out = Poly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def derivative(self, name):
        i = self.vars.index(name)
        terms = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            m2 = list(m)
            m2[i] -= 1
            terms[tuple(m2)] = terms.get(tuple(m2), Fraction(0)) + c * m[i]
        return Poly(self.vars, terms)

    def substitute_zero(self, names):
        """Set the given variables to 0 and drop them from the ring."""
        drop = {self.vars.index(n) for n in names}
        keep = [i for i in range(len(self.vars)) if i not in drop]
        new_vars = tuple(self.vars[i] for i in keep)
        terms = {}
        for m, c in self.terms.items():
            if any(m[i] for i in drop):
                continue
            m2 = tuple(m[i] for i in keep)
            terms[m2] = terms.get(m2, Fraction(0)) + c
        return Poly(new_vars, terms)

    def rename(self, new_vars):
        if len(new_vars) != len(self.vars):
            raise PolyError("rename arity mismatch")
        return Poly(new_vars, dict(self.terms))

    def evaluate(self, values):
        """Evaluate at a point given as {name: Fraction}."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for name, e in zip(self.vars, m):
                if e:
                    v *= Fraction(values[name]) ** e
            total += v
        return total

    def __repr__(self):
        return "Poly(%s)" % render(self)


# -- parser ---------------------------------------------------------------
#
# expr   := term (("+"|"-") term)*
# term   := coeff ("*" factor)* | factor ("*" factor)*
# factor := ident ("^" uint)?
# coeff  := int | int "/" uint


class _Tok:
    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^":
            toks.append(_Tok(ch, ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("ident", text[i:j], i))
            i = j
        else:
            raise ParseError("unexpected character %r" % ch, i)
    toks.append(_Tok("end", None, n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok.kind != kind:
            raise ParseError("expected %s, found %r" % (kind, tok.value),
                             tok.pos)
        self.i += 1
        return tok

    def parse(self):
        # Returns list of (sign, coeff_fraction, [(name, exp), ...]).
        out = [self.term(1)]
        while self.peek().kind in "+-":
            sign = 1 if self.take(self.peek().kind).kind == "+" else -1
            out.append(self.term(sign))
        self.take("end")
        return out

    def term(self, sign):
        neg = False
        while self.peek().kind == "-":  # unary minus on the leading term
            self.take("-")
            neg = not neg
        if neg:
            sign = -sign
        coeff = Fraction(1)
        factors = []
        if self.peek().kind == "int":
            coeff = Fraction(self.take("int").value)
            if self.peek().kind == "/":
                self.take("/")
                den = self.take("int").value
                if den == 0:
                    raise ParseError("zero denominator", self.peek().pos)
                coeff /= den
        else:
            factors.append(self.factor())
        while self.peek().kind == "*":
            self.take("*")
            factors.append(self.factor())
        return (sign, coeff, factors)

    def factor(self):
        name = self.take("ident").value
        exp = 1
        if self.peek().kind == "^":
            self.take("^")
            exp = self.take("int").value
        return (name, exp)


def parse_polynomial(text, variables=None):
    """Parse a polynomial expression into a Poly.

    If `variables` is omitted the variable list is inferred, ordered by
    first appearance.
    """
    parsed = _Parser(text).parse()
    if variables is None:
        seen = []
        for _, _, factors in parsed:
            for name, _ in factors:
                if name not in seen:
                    seen.append(name)
        variables = seen
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    terms = {}
    for sign, coeff, factors in parsed:
        exps = [0] * len(variables)
        for name, e in factors:
            if name not in index:
                raise PolyError("unknown variable %r" % name)
            exps[index[name]] += e
        mono = tuple(exps)
        terms[mono] = terms.get(mono, Fraction(0)) + sign * coeff
    return Poly(variables, terms)


def _render_coeff(c):
    return str(c)  # Fraction renders as "p/q" or "p"


def render(p):
    """Canonical renderer: terms in descending grevlex order."""
    if p.is_zero():
        return "0"
    pieces = []
    for mono in p.monomials():
        c = p.terms[mono]
        factors = []
        for name, e in zip(p.vars, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        if not factors:
            body = _render_coeff(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_render_coeff(abs(c))] + factors)
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(("+ " if c > 0 else "- ") + body)
    return " ".join(pieces)


# -- sympy bridge for Groebner bases ---------------------------------------


def _to_sympy(p, symbols):
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, m):
            if e:
                t *= s ** e
        expr += t
    return expr


def _from_sympy(expr, variables, symbols):
    poly = sympy.Poly(expr, *symbols, domain="QQ")
    terms = {}
    for mono, coeff in poly.terms():
        terms[tuple(int(e) for e in mono)] = Fraction(coeff.p, coeff.q)
    return Poly(variables, terms)


def groebner_basis(generators):
    """Reduced Groebner basis under grevlex with the fixed variable order."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    variables = gens[0].vars
    for g in gens:
        if g.vars != variables:
            raise PolyError("generators live in different rings")
    symbols = sympy.symbols(variables)
    if len(variables) == 1:
        symbols = (symbols[0],) if not isinstance(symbols, tuple) else symbols
    exprs = [_to_sympy(g, symbols) for g in gens]
    gb = sympy.groebner(exprs, *symbols, order="grevlex", domain="QQ")
    return [_from_sympy(e, variables, symbols) for e in gb.exprs]


def normal_form(f, gb):
    """Unique remainder of f modulo the ideal of the Groebner basis gb."""
    if not gb:
        return f
    variables = gb[0].vars
    if f.vars != variables:
        raise PolyError("polynomial/basis ring mismatch")
    if f.is_zero():
        return f
    symbols = sympy.symbols(variables)
    if len(variables) == 1 and not isinstance(symbols, tuple):
        symbols = (symbols,)
    basis = sympy.GroebnerBasis([_to_sympy(g, symbols) for g in gb],
                                *symbols, order="grevlex", domain="QQ")
    rem = basis.reduce(_to_sympy(f, symbols))[1]
    return _from_sympy(rem, variables, symbols)


# -- Smith normal form ------------------------------------------------------


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a, b):
    rows, mid, cols = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(mid)) for j in range(cols)]
            for i in range(rows)]


def smith_normal_form(B):
    """Return (V, T, Q) with B = V*T*Q, V and Q unimodular, T in SNF.

    Classical row/column reduction.  Pivot choice: smallest nonzero
    magnitude, ties broken by lowest row index then lowest column index,
    so the transforms are reproducible.
    """
    s = len(B)
    n = len(B[0]) if s else 0
    T = [list(map(int, row)) for row in B]
    V = _identity(s)   # accumulates inverses of row ops
    Q = _identity(n)   # accumulates inverses of column ops

    def swap_rows(i, j):
        T[i], T[j] = T[j], T[i]
        for r in range(s):  # V <- V * P_ij (inverse of the swap)
            V[r][i], V[r][j] = V[r][j], V[r][i]

    def swap_cols(i, j):
        for r in range(s):
            T[r][i], T[r][j] = T[r][j], T[r][i]
        Q[i], Q[j] = Q[j], Q[i]

    def add_row(src, dst, k):
        # T[dst] += k*T[src]; compensate V by the inverse operation.
        for c in range(n):
            T[dst][c] += k * T[src][c]
        for r in range(s):
            V[r][src] -= k * V[r][dst]

    def add_col(src, dst, k):
        for r in range(s):
            T[r][dst] += k * T[r][src]
        for c in range(n):
            Q[src][c] -= k * Q[dst][c]

    def negate_row(i):
        for c in range(n):
            T[i][c] = -T[i][c]
        for r in range(s):
            V[r][i] = -V[r][i]

    rank = min(s, n)
    for t in range(rank):
        while True:
            pivot = None
            for i in range(t, s):
                for j in range(t, n):
                    if T[i][j] != 0:
                        if pivot is None or abs(T[i][j]) < abs(T[pivot[0]][pivot[1]]):
                            pivot = (i, j)
            if pivot is None:
                break
            i, j = pivot
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            if T[t][t] < 0:
                negate_row(t)
            done = True
            for i in range(t + 1, s):
                k = T[i][t] // T[t][t]
                if k:
                    add_row(t, i, -k)
                if T[i][t]:
                    done = False
            for j in range(t + 1, n):
                k = T[t][j] // T[t][t]
                if k:
                    add_col(t, j, -k)
                if T[t][j]:
                    done = False
            if done:
                # enforce divisibility: fold any non-multiple into column t
                bad = None
                for i in range(t + 1, s):
                    for j in range(t + 1, n):
                        if T[i][j] % T[t][t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, 1)
        if T[t][t] == 0:
            break
    return V, T, Q


def snf_diagonal(B):
    _, T, _ = smith_normal_form(B)
    return [T[i][i] for i in range(min(len(T), len(T[0]) if T else 0))]


def det_unimodular(M):
    """Determinant by fraction-free expansion; used in tests/invariants."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * M[0][j] * det_unimodular(minor)
    return total


def lcm(values):
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)
