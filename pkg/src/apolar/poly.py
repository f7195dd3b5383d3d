"""Sparse multivariate polynomials over an exact field.

Monomials are plain exponent tuples of fixed length n (the ambient variable
count); variables are indexed 0..n-1.  The monomial order used everywhere is
graded lexicographic, listed highest first, so bases of graded slices,
subspace coordinates and printed output are all deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .errors import PreconditionError
from .fields import Field, QQ, same_field


@lru_cache(maxsize=None)
def graded_basis(nvars: int, degree: int):
    """All monomials of the given degree, as exponent tuples in descending
    lexicographic order (so x^k comes first and the last variable's power
    comes last).  len == C(nvars + degree - 1, degree)."""
    if degree < 0:
        raise PreconditionError("degree must be non-negative")
    if nvars == 0:
        return ((),) if degree == 0 else ()

    def gen(rem_vars, rem_deg):
        if rem_vars == 1:
            yield (rem_deg,)
            return
        for e in range(rem_deg, -1, -1):
            for tail in gen(rem_vars - 1, rem_deg - e):
                yield (e,) + tail

    return tuple(gen(nvars, degree))


@lru_cache(maxsize=None)
def basis_index(nvars: int, degree: int):
    """Monomial -> position lookup for graded_basis(nvars, degree)."""
    return {m: i for i, m in enumerate(graded_basis(nvars, degree))}


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _term_sort_key(mono: tuple):
    return (sum(mono), mono)


class Poly:
    """A sparse polynomial: {exponent tuple: nonzero coefficient}."""

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: Field, terms: dict):
        self.nvars = nvars
        self.field = field
        self.terms = terms

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_terms(cls, nvars: int, field: Field, items) -> "Poly":
        """Sum an iterable of (exponent tuple, coefficient) pairs."""
        zero = field.zero
        terms: dict = {}
        for mono, coef in items:
            mono = tuple(mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise PreconditionError(f"bad exponent tuple {mono}")
            coef = field.coerce(coef)
            acc = terms.get(mono)
            if acc is None:
                if coef != zero:
                    terms[mono] = coef
            else:
                acc = field.add(acc, coef)
                if acc == zero:
                    del terms[mono]
                else:
                    terms[mono] = acc
        return cls(nvars, field, terms)

    @classmethod
    def zero(cls, nvars: int, field: Field) -> "Poly":
        return cls(nvars, field, {})

    @classmethod
    def constant(cls, nvars: int, field: Field, value) -> "Poly":
        value = field.coerce(value)
        if value == field.zero:
            return cls.zero(nvars, field)
        return cls(nvars, field, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, field: Field, index: int) -> "Poly":
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, field, {mono: field.one})

    @classmethod
    def monomial(cls, nvars: int, field: Field, exponents, coef=1) -> "Poly":
        return cls.from_terms(nvars, field, [(tuple(exponents), coef)])

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.field.zero)

    def sorted_terms(self):
        """Terms as (mono, coef), highest monomial first."""
        return [(m, self.terms[m])
                for m in sorted(self.terms, key=_term_sort_key, reverse=True)]

    def _same_ring(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise PreconditionError(
                f"mixed ambient rings: {self.nvars} vs {other.nvars} variables")
        same_field(self.field, other.field)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._same_ring(other)
        f = self.field
        zero = f.zero
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            if acc is None:
                terms[m] = c
            else:
                acc = f.add(acc, c)
                if acc == zero:
                    del terms[m]
                else:
                    terms[m] = acc
        return Poly(self.nvars, f, terms)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(self.nvars, f, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_ring(other)
        f = self.field
        zero = f.zero
        terms: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                c = f.mul(ca, cb)
                acc = terms.get(m)
                if acc is None:
                    terms[m] = c
                else:
                    acc = f.add(acc, c)
                    if acc == zero:
                        del terms[m]
                    else:
                        terms[m] = acc
        return Poly(self.nvars, f, terms)

    def scale(self, value) -> "Poly":
        f = self.field
        value = f.coerce(value)
        if value == f.zero:
            return Poly.zero(self.nvars, f)
        return Poly(self.nvars, f,
                    {m: f.mul(c, value) for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise PreconditionError("negative power of a polynomial")
        result = Poly.constant(self.nvars, self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def evaluate(self, point):
        """Evaluate at a point (sequence of scalars)."""
        f = self.field
        xs = [f.coerce(v) for v in point]
        if len(xs) != self.nvars:
            raise PreconditionError("point has the wrong number of coordinates")
        total = f.zero
        for m, c in self.terms.items():
            v = c
            for x, e in zip(xs, m):
                for _ in range(e):
                    v = f.mul(v, x)
            total = f.add(total, v)
        return total

    def relabel(self, sigma) -> "Poly":
        """Substitute x_i -> x_sigma[i]; sigma is a permutation of 0..n-1."""
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(self.nvars)):
            raise PreconditionError("sigma is not a permutation")
        terms: dict = {}
        for m, c in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(m):
                new[sigma[i]] = e
            terms[tuple(new)] = c
        return Poly(self.nvars, self.field, terms)

    # -- slice coordinates ----------------------------------------------------

    def coords(self, degree: int):
        """Coordinate vector over graded_basis(nvars, degree).

        Only valid for a homogeneous polynomial of that degree (or zero).
        """
        idx = basis_index(self.nvars, degree)
        vec = [self.field.zero] * len(idx)
        for m, c in self.terms.items():
            pos = idx.get(m)
            if pos is None:
                raise PreconditionError(
                    f"term of degree {sum(m)} in a degree-{degree} slice")
            vec[pos] = c
        return vec

    @classmethod
    def from_coords(cls, nvars, degree, field, vector) -> "Poly":
        basis = graded_basis(nvars, degree)
        if len(vector) != len(basis):
            raise PreconditionError("coordinate vector has the wrong length")
        zero = field.zero
        return cls(nvars, field,
                   {m: field.coerce(v) for m, v in zip(basis, vector)
                    if field.coerce(v) != zero})

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and self.field == other.field and self.terms == other.terms)

    def __repr__(self):
        names = default_names(self.nvars)
        return f"Poly[{format_poly(self, names)}]"


def default_names(nvars: int):
    return tuple(f"x{i}" for i in range(nvars))


def format_poly(p: Poly, names) -> str:
    """Canonical text form: graded-lex order, highest monomial first,
    reduced-fraction coefficients, explicit '*' and '^'."""
    names = tuple(names)
    if len(names) != p.nvars:
        raise PreconditionError("one name per variable is required")
    if p.is_zero():
        return "0"
    parts = []
    for mono, coef in p.sorted_terms():
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if isinstance(coef, Fraction):
            negative = coef < 0
            mag = -coef if negative else coef
            coef_str = str(mag)
            drop_coef = mag == 1 and factors
        else:
            negative = False
            coef_str = str(coef)
            drop_coef = coef == 1 and factors
        body = "*".join(([] if drop_coef else [coef_str]) + factors)
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# linear substitution


class LinearSubstitution:
    """A full-rank-checked m x n scalar matrix sending x_j to sum_i y_i m_ij.

    Rows index the new variables y_1..y_m, columns the old variables
    x_1..x_n; substitution follows the row-vector convention
    (x_1 ... x_n) = (y_1 ... y_m) M.
    """

    __slots__ = ("matrix", "rank")

    def __init__(self, field: Field, rows, ncols=None):
        self.matrix = linalg.Matrix.from_rows(field, rows, ncols)
        self.rank = linalg.rank(self.matrix)

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def nrows(self) -> int:
        return self.matrix.nrows

    @property
    def ncols(self) -> int:
        return self.matrix.ncols

    @property
    def is_full_rank(self) -> bool:
        return self.rank == min(self.nrows, self.ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "LinearSubstitution":
        return cls(field, linalg.Matrix.identity(field, n).rows)

    def compose(self, inner: "LinearSubstitution") -> "LinearSubstitution":
        """The substitution performing `self` first, then `inner`.

        If x = y*M (self) and y = z*N (inner), the combined map is
        x = z*(N*M).
        """
        prod = inner.matrix.matmul(self.matrix)
        return LinearSubstitution(prod.field, prod.rows, prod.ncols)

    def __eq__(self, other):
        return (isinstance(other, LinearSubstitution)
                and self.matrix == other.matrix)

    def __repr__(self):
        return f"LinearSubstitution({self.nrows}x{self.ncols})"


def substitute_linear(F: Poly, sub: LinearSubstitution) -> Poly:
    """G(y) = F(y*M): replace each x_j by the linear form sum_i y_i m_ij.

    M must have full rank min(m, n); the result lives in m variables and is
    homogeneous of the same degree whenever F is homogeneous and G != 0.
    """
    same_field(F.field, sub.field)
    if sub.ncols != F.nvars:
        raise PreconditionError(
            f"substitution has {sub.ncols} columns but F has {F.nvars} "
            "variables")
    if not sub.is_full_rank:
        raise PreconditionError(
            f"substitution matrix must have full rank min({sub.nrows}, "
            f"{sub.ncols}); got rank {sub.rank}")
    m = sub.nrows
    f = F.field
    columns = []
    for j in range(F.nvars):
        col = Poly.from_terms(
            m, f, [(tuple(1 if t == i else 0 for t in range(m)),
                    sub.matrix.rows[i][j]) for i in range(m)])
        columns.append(col)
    pow_cache: dict = {}

    def col_power(j: int, e: int) -> Poly:
        key = (j, e)
        got = pow_cache.get(key)
        if got is None:
            got = columns[j] ** e
            pow_cache[key] = got
        return got

    total = Poly.zero(m, f)
    for mono, coef in F.terms.items():
        term = Poly.constant(m, f, coef)
        for j, e in enumerate(mono):
            if e:
                term = term * col_power(j, e)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# symmetric monomials


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise PreconditionError("partition parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise PreconditionError("partition parts must be non-increasing")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)


def partitions_of(weight: int, max_parts: int):
    """All partitions of `weight` into at most `max_parts` parts,
    longest part first, in descending lex order."""
    out = []

    def rec(rem, largest, acc):
        if rem == 0:
            out.append(Partition(tuple(acc)))
            return
        if len(acc) == max_parts:
            return
        for p in range(min(rem, largest), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(weight, weight, [])
    return out


def monomial_symmetric(lam: Partition, nvars: int, field: Field = QQ) -> Poly:
    """The monomial symmetric polynomial m_lambda: the sum of all distinct
    monomials whose nonzero exponents, sorted, equal lambda."""
    if len(lam) > nvars:
        raise PreconditionError(
            f"partition has {len(lam)} parts but only {nvars} variables")
    padded = tuple(lam.parts) + (0,) * (nvars - len(lam))
    monos = _distinct_permutations(padded)
    one = field.one
    return Poly(nvars, field, {m: one for m in monos})


def _distinct_permutations(values: tuple):
    """All distinct orderings of a tuple, without generating duplicates."""
    values = sorted(values, reverse=True)
    n = len(values)
    out = []

    def rec(remaining, acc):
        if not remaining:
            out.append(tuple(acc))
            return
        seen = set()
        for i, v in enumerate(remaining):
            if v in seen:
                continue
            seen.add(v)
            acc.append(v)
            rec(remaining[:i] + remaining[i + 1:], acc)
            acc.pop()

    rec(values, [])
    return out


# ---------------------------------------------------------------------------
# differentiation and variable elimination


def partials(F: Poly):
    """The first partial derivatives of F, in variable order."""
    f = F.field
    zero = f.zero
    out = []
    for i in range(F.nvars):
        terms: dict = {}
        for m, c in F.terms.items():
            e = m[i]
            if e:
                nm = m[:i] + (e - 1,) + m[i + 1:]
                nc = f.mul(c, f.coerce(e))
                if nc != zero:
                    acc = terms.get(nm)
                    if acc is None:
                        terms[nm] = nc
                    else:
                        acc = f.add(acc, nc)
                        if acc == zero:
                            del terms[nm]
                        else:
                            terms[nm] = acc
        out.append(Poly(F.nvars, f, terms))
    return out


def restrict_variables(F: Poly, nvars: int) -> Poly:
    """Reinterpret F in the first `nvars` variables; the dropped trailing
    variables must not occur."""
    terms = {}
    for m, c in F.terms.items():
        if any(m[nvars:]):
            raise PreconditionError("polynomial uses a dropped variable")
        terms[m[:nvars]] = c
    return Poly(nvars, F.field, terms)


def linear_relations(F: Poly) -> linalg.Matrix:
    """Canonical basis (rows = coefficient vectors over the variables) of
    the linear forms sum c_i x_i whose associated directional derivative
    kills F."""
    n = F.nvars
    d = F.degree
    if d <= 0:
        return linalg.Matrix.identity(F.field, n)
    cols = graded_basis(n, d - 1)
    idx = basis_index(n, d - 1)
    rows = []
    for dp in partials(F):
        vec = [F.field.zero] * len(cols)
        for m, c in dp.terms.items():
            vec[idx[m]] = c
        rows.append(vec)
    # relations are the left kernel of the stacked partials
    A = linalg.Matrix(F.field, rows, ncols=len(cols))
    return linalg.kernel(A.transpose())


def eliminate_variables(F: Poly):
    """Rewrite F, by an invertible change of variables, in as few variables
    as its partial derivatives span.

    Returns (F_reduced, witness) where F_reduced lives in n' variables
    (n' = dim span of the partials) and substitute_linear(F_reduced,
    witness) == F.  The change of variables is completed deterministically
    with the leftmost unit vectors that keep the matrix invertible.
    """
    f = F.field
    n = F.nvars
    if F.is_zero():
        return Poly.zero(0, f), LinearSubstitution(f, [[] for _ in range(n)],
                                                   ncols=0)
    relations = linear_relations(F)
    k = relations.nrows
    n_prime = n - k
    if k == 0:
        return F, LinearSubstitution.identity(f, n)
    chosen = []
    for j in range(n):
        if len(chosen) == n_prime:
            break
        unit = [f.one if t == j else f.zero for t in range(n)]
        trial = linalg.Matrix(f, list(relations.rows) + chosen + [unit],
                              ncols=n)
        if linalg.rank(trial) == k + len(chosen) + 1:
            chosen.append(unit)
    P = linalg.Matrix(f, chosen + list(relations.rows), ncols=n)
    sub = LinearSubstitution(f, P.rows)
    G = substitute_linear(F, sub)
    reduced = restrict_variables(G, n_prime)
    P_inv = linalg.inverse(P)
    witness_rows = [row[:n_prime] for row in P_inv.rows]
    witness = LinearSubstitution(f, witness_rows, ncols=n_prime)
    return reduced, witness
