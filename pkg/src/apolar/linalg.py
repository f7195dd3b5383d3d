"""Exact dense linear algebra: row echelon forms, ranks, kernels, determinants.

Everything is computed exactly.  Over the rationals the elimination engine
works on primitive integer rows (denominators cleared, content divided out)
and picks pivots of minimal bit size, which keeps coefficient growth flat on
the structured matrices this package produces.  Over F_p it reduces mod p.

`Subspace` is the canonical representation of a subspace of a graded slice
R_k: the reduced row echelon basis over the fixed monomial order.  Two
subspaces are equal iff their canonical rows are identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .fields import Field, same_field


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise PreconditionError("ragged rows in matrix")
        else:
            self.ncols = 0 if ncols is None else ncols

    @classmethod
    def from_rows(cls, field: Field, rows, ncols=None) -> "Matrix":
        """Build a matrix, coercing every entry into the field."""
        return cls(field, [[field.coerce(v) for v in r] for r in rows], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)]
                           for i in range(n)])

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(col) for col in zip(*self.rows)],
                      ncols=self.nrows)

    def matmul(self, other: "Matrix") -> "Matrix":
        f = same_field(self.field, other.field)
        if self.ncols != other.nrows:
            raise PreconditionError("inner dimensions do not match")
        ot = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for c in range(other.ncols):
                acc = f.zero
                col = ot[c] if ot else ()
                for a, b in zip(r, col):
                    acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(f, out, ncols=other.ncols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"


# ---------------------------------------------------------------------------
# rational path: primitive integer rows


def _primitive(row):
    """Divide an integer row by its content (gcd); keeps zero rows as-is."""
    g = 0
    for v in row:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def _int_rows(rows):
    """Clear denominators rowwise and strip content: row space is unchanged."""
    out = []
    for row in rows:
        den = 1
        for v in row:
            d = v.denominator
            if d != 1:
                den = den * d // math.gcd(den, d)
        if den == 1:
            ints = [v.numerator for v in row]
        else:
            ints = [v.numerator * (den // v.denominator) for v in row]
        out.append(_primitive(ints))
    return out


def _forward_int(rows, ncols):
    """Forward elimination on primitive integer rows.

    Returns (echelon_rows, pivot_cols); echelon rows stay primitive integer.
    Pivot choice: smallest bit size in the current column, then lowest index.
    """
    work = [r for r in rows if any(r)]
    echelon, pivots = [], []
    for col in range(ncols):
        if not work:
            break
        best_idx = -1
        best_bits = 0
        for idx, r in enumerate(work):
            v = r[col]
            if v:
                b = v.bit_length()
                if best_idx < 0 or b < best_bits:
                    best_idx, best_bits = idx, b
                    if b == 1:
                        break
        if best_idx < 0:
            continue
        prow = work.pop(best_idx)
        p = prow[col]
        nxt = []
        for r in work:
            v = r[col]
            if v:
                g = math.gcd(p, v)
                mp, mv = p // g, v // g
                r = _primitive([mp * a - mv * b for a, b in zip(r, prow)])
                if not any(r):
                    continue
            nxt.append(r)
        work = nxt
        echelon.append(prow)
        pivots.append(col)
    return echelon, pivots


def _rref_int(echelon, pivots):
    """Back-substitute an integer echelon form and scale pivots to 1.

    Returns rows of Fractions in canonical reduced echelon form.
    """
    rows = [list(r) for r in echelon]
    for i in range(len(rows) - 1, 0, -1):
        ri = rows[i]
        c = pivots[i]
        p = ri[c]
        for j in range(i):
            v = rows[j][c]
            if v:
                g = math.gcd(p, v)
                mp, mv = p // g, v // g
                rows[j] = _primitive(
                    [mp * a - mv * b for a, b in zip(rows[j], ri)])
    out = []
    for r, c in zip(rows, pivots):
        p = r[c]
        out.append([Fraction(v, p) for v in r])
    return out


def _kernel_vectors_int(echelon, pivots, ncols):
    """One kernel vector per free column, by back-solving the echelon form."""
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        x = {f: Fraction(1)}
        for i in range(len(echelon) - 1, -1, -1):
            row = echelon[i]
            c = pivots[i]
            s = 0
            for pos, val in x.items():
                if pos > c:
                    e = row[pos]
                    if e:
                        s += val * e
            if s:
                x[c] = Fraction(-s, 1) / row[c] if isinstance(s, int) \
                    else -s / row[c]
        vec = [Fraction(0)] * ncols
        for pos, val in x.items():
            vec[pos] = val
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# prime field path


def _forward_mod(rows, ncols, p):
    work = [r for r in rows if any(r)]
    echelon, pivots = [], []
    for col in range(ncols):
        if not work:
            break
        best_idx = -1
        for idx, r in enumerate(work):
            if r[col]:
                best_idx = idx
                break
        if best_idx < 0:
            continue
        prow = work.pop(best_idx)
        pinv = pow(prow[col], -1, p)
        prow = [v * pinv % p for v in prow]
        nxt = []
        for r in work:
            v = r[col]
            if v:
                r = [(a - v * b) % p for a, b in zip(r, prow)]
                if not any(r):
                    continue
            nxt.append(r)
        work = nxt
        echelon.append(prow)
        pivots.append(col)
    return echelon, pivots


def _rref_mod(echelon, pivots, p):
    rows = [list(r) for r in echelon]
    for i in range(len(rows) - 1, 0, -1):
        ri = rows[i]
        c = pivots[i]
        for j in range(i):
            v = rows[j][c]
            if v:
                rows[j] = [(a - v * b) % p for a, b in zip(rows[j], ri)]
    return rows


def _kernel_vectors_mod(echelon, pivots, ncols, p):
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        x = {f: 1}
        for i in range(len(echelon) - 1, -1, -1):
            row = echelon[i]
            c = pivots[i]
            s = 0
            for pos, val in x.items():
                if pos > c:
                    e = row[pos]
                    if e:
                        s += val * e
            s %= p
            if s:
                x[c] = -s % p  # pivot entries are normalised to 1
        vec = [0] * ncols
        for pos, val in x.items():
            vec[pos] = val
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# public operations


def _echelon(M: Matrix):
    if M.field.char == 0:
        return _forward_int(_int_rows(M.rows), M.ncols)
    return _forward_mod([list(r) for r in M.rows], M.ncols, M.field.char)


def rank(M: Matrix) -> int:
    """Exact rank (forward elimination only)."""
    return len(_echelon(M)[1])


def rref(M: Matrix):
    """Canonical reduced row echelon form.  Returns (Matrix, rank)."""
    echelon, pivots = _echelon(M)
    if M.field.char == 0:
        rows = _rref_int(echelon, pivots)
    else:
        rows = _rref_mod(echelon, pivots, M.field.char)
    return Matrix(M.field, rows, ncols=M.ncols), len(pivots)


def kernel(M: Matrix) -> Matrix:
    """Canonical basis (as rows) of the right null space {v : Mv = 0}."""
    echelon, pivots = _echelon(M)
    if M.field.char == 0:
        vecs = _kernel_vectors_int(echelon, pivots, M.ncols)
    else:
        vecs = _kernel_vectors_mod(echelon, pivots, M.ncols, M.field.char)
    if not vecs:
        return Matrix(M.field, [], ncols=M.ncols)
    return rref(Matrix(M.field, vecs, ncols=M.ncols))[0]


def det(M: Matrix):
    """Exact determinant of a square matrix."""
    if M.nrows != M.ncols:
        raise PreconditionError("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return M.field.one
    if M.field.char == 0:
        return _det_int(M)
    return _det_mod(M)


def _det_int(M: Matrix):
    # Bareiss fraction-free elimination; row scalings are tracked so the
    # result is the true rational determinant.
    n = M.nrows
    a = []
    scale = Fraction(1)
    for row in M.rows:
        den = 1
        for v in row:
            d = v.denominator
            if d != 1:
                den = den * d // math.gcd(den, d)
        a.append([v.numerator * (den // v.denominator) for v in row])
        scale *= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = -1
        bits = 0
        for i in range(k, n):
            v = a[i][k]
            if v:
                b = v.bit_length()
                if piv < 0 or b < bits:
                    piv, bits = i, b
        if piv < 0:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1]) / scale


def _det_mod(M: Matrix):
    p = M.field.char
    n = M.nrows
    a = [list(r) for r in M.rows]
    result = 1
    for k in range(n):
        piv = -1
        for i in range(k, n):
            if a[i][k]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        akk = a[k][k]
        result = result * akk % p
        inv = pow(akk, -1, p)
        for i in range(k + 1, n):
            v = a[i][k]
            if v:
                m = v * inv % p
                a[i] = [(x - m * y) % p for x, y in zip(a[i], a[k])]
    return result % p


# ---------------------------------------------------------------------------
# graded-slice subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of the degree-k slice R_k in canonical echelon form.

    Coordinates are taken over the fixed ordered monomial basis of R_k; the
    stored rows are the unique reduced row echelon basis, so equality of
    subspaces is literal equality of rows.
    """

    nvars: int
    degree: int
    field: Field
    rows: tuple

    @property
    def ambient_dim(self) -> int:
        return slice_dim(self.nvars, self.degree)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def from_vectors(cls, nvars, degree, field, vectors) -> "Subspace":
        amb = slice_dim(nvars, degree)
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != amb:
                raise PreconditionError(
                    f"vector length {len(v)} does not match the slice "
                    f"dimension {amb}")
        reduced, _ = rref(Matrix(field, vecs, ncols=amb))
        return cls(nvars, degree, field,
                   tuple(tuple(r) for r in reduced.rows))

    @classmethod
    def zero(cls, nvars, degree, field) -> "Subspace":
        return cls(nvars, degree, field, ())

    @classmethod
    def full(cls, nvars, degree, field) -> "Subspace":
        amb = slice_dim(nvars, degree)
        one, zero = field.one, field.zero
        rows = tuple(tuple(one if j == i else zero for j in range(amb))
                     for i in range(amb))
        return cls(nvars, degree, field, rows)

    def _check_ambient(self, other: "Subspace"):
        if (self.nvars, self.degree) != (other.nvars, other.degree) \
                or self.field != other.field:
            raise PreconditionError(
                "subspaces live in different ambient slices")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(self.nvars, self.degree, self.field,
                                     list(self.rows) + list(other.rows))

    def reduce_vector(self, vector):
        """Remainder of a coordinate vector after reduction by the basis."""
        f = self.field
        v = [f.coerce(x) for x in vector]
        zero = f.zero
        for row in self.rows:
            c = next(i for i, e in enumerate(row) if e != zero)
            coef = v[c]
            if coef != zero:
                v = [f.sub(a, f.mul(coef, b)) for a, b in zip(v, row)]
        return v

    def contains_vector(self, vector) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self.reduce_vector(vector))

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains_vector(r) for r in other.rows)

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim


def slice_dim(nvars: int, degree: int) -> int:
    """dim R_k = C(n + k - 1, k) for n variables."""
    if degree < 0:
        return 0
    if nvars == 0:
        return 1 if degree == 0 else 0
    return math.comb(nvars + degree - 1, degree)
