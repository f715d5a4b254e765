"""Canonical-form linear algebra over the exact base rings.

Conventions used across the whole package:

* vectors are rows; a linear map is a matrix acting on the right, so the
  image of ``x`` under ``f`` is ``x @ F``;
* composition "f then g" is the product ``F @ G``;
* the Kronecker product indexes pairs as ``(i, j) -> i * n2 + j``.

``normal_form`` computes the canonical row form for the ring (reduced row
echelon over fields, Hermite over Z, Howell over Z/N), so two matrices have
equal row span exactly when their normal forms are identical.  Canonical
forms drop zero rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .rings import IntegerRing, RationalField, ResidueRing, Ring, RingHom, ZZ, xgcd


class Matrix:
    """Immutable matrix over an exact ring; ``data`` is a tuple of row tuples."""

    __slots__ = ("ring", "nrows", "ncols", "data")

    def __init__(self, ring: Ring, data, ncols: int | None = None):
        rows = tuple(tuple(ring.normalize(x) for x in row) for row in data)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, *args):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, ring, rows, ncols):
        """Wrap already-normalized rows without renormalizing."""
        self = object.__new__(cls)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "data", tuple(tuple(r) for r in rows))
        return self

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls._raw(ring, [(z,) * ncols] * nrows, ncols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls._raw(ring, [tuple(o if i == j else z for j in range(n)) for i in range(n)], n)

    @classmethod
    def row_vector(cls, ring, entries):
        entries = list(entries)
        return cls(ring, [entries], ncols=len(entries))

    # -- basic structure ---------------------------------------------------

    def row(self, i) -> "Matrix":
        return Matrix._raw(self.ring, [self.data[i]], self.ncols)

    def entry(self, i, j):
        return self.data[i][j]

    def tolist(self):
        return [list(r) for r in self.data]

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(x == z for row in self.data for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.ring, self.ncols, self.data))

    def __repr__(self):
        if self.nrows == 0 or self.ncols == 0:
            return f"Matrix({self.ring}, {self.nrows}x{self.ncols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix({self.ring}, [{body}])"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._match(other)
        norm = self.ring.normalize
        rows = [tuple(norm(a + b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)]
        return Matrix._raw(self.ring, rows, self.ncols)

    def __sub__(self, other):
        self._match(other)
        norm = self.ring.normalize
        rows = [tuple(norm(a - b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)]
        return Matrix._raw(self.ring, rows, self.ncols)

    def __neg__(self):
        norm = self.ring.normalize
        return Matrix._raw(self.ring, [tuple(norm(-a) for a in r) for r in self.data], self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.ring.normalize(c)
        norm = self.ring.normalize
        return Matrix._raw(self.ring, [tuple(norm(c * a) for a in r) for r in self.data], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        norm = self.ring.normalize
        cols = list(zip(*other.data)) if other.nrows else [()] * other.ncols
        rows = [
            tuple(norm(sum(a * b for a, b in zip(ra, col))) for col in cols)
            for ra in self.data
        ]
        return Matrix._raw(self.ring, rows, other.ncols)

    def transpose(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix._raw(self.ring, [()] * self.ncols, 0)
        return Matrix._raw(self.ring, list(zip(*self.data)), self.nrows)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; row (i1, i2) -> i1 * other.nrows + i2, ditto columns."""
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        norm = self.ring.normalize
        rows = []
        for ra in self.data:
            for rb in other.data:
                rows.append(tuple(norm(a * b) for a in ra for b in rb))
        return Matrix._raw(self.ring, rows, self.ncols * other.ncols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        rows = [ra + rb for ra, rb in zip(self.data, other.data)]
        return Matrix._raw(self.ring, rows, self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix._raw(self.ring, self.data + other.data, self.ncols)

    def take_columns(self, cols) -> "Matrix":
        cols = list(cols)
        rows = [tuple(r[c] for c in cols) for r in self.data]
        return Matrix._raw(self.ring, rows, len(cols))

    def map_entries(self, hom: RingHom) -> "Matrix":
        if hom.source != self.ring:
            raise ValueError(f"{hom} does not apply to a matrix over {self.ring}")
        return Matrix(hom.target, self.tolist(), ncols=self.ncols)

    def _match(self, other):
        if self.ring != other.ring or self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("matrix shape/ring mismatch")


def stack(ring, matrices, ncols) -> Matrix:
    rows = []
    for m in matrices:
        rows.extend(m.data)
    return Matrix._raw(ring, rows, ncols)


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------


def _unit_scaling_to_gcd(a: int, N: int) -> tuple[int, int]:
    """A unit u mod N with (u * a) % N == gcd(a, N); returns (u, gcd)."""
    a %= N
    g = gcd(a, N)
    if g == a:  # already the canonical generator (covers a == 0)
        return 1, g % N
    step = N // g
    _, s, _ = xgcd(a // g, step)
    u = s % step
    if u == 0:
        u = step
    while gcd(u, N) != 1:
        u += step
    return u % N, g


def _echelon_mod(N: int, pairs):
    """Echelon form over Z/N via unimodular 2x2 gcd transforms.

    ``pairs`` is a list of (row, tag) where tags ride along under the same
    row operations.  Returns the echelon pairs sorted by pivot column.
    """
    ech: dict[int, tuple[list, list]] = {}
    for v, t in pairs:
        v = list(v)
        t = list(t)
        col = 0
        ncols = len(v)
        while col < ncols:
            if v[col]:
                if col in ech:
                    p, tp = ech[col]
                    a, b = p[col], v[col]
                    g, s, tt = xgcd(a, b)
                    u, vv = -(b // g), a // g
                    ech[col] = (
                        [(s * x + tt * y) % N for x, y in zip(p, v)],
                        [(s * x + tt * y) % N for x, y in zip(tp, t)],
                    )
                    v = [(u * x + vv * y) % N for x, y in zip(p, v)]
                    t = [(u * x + vv * y) % N for x, y in zip(tp, t)]
                else:
                    ech[col] = (v, t)
                    break
            col += 1
    return [ech[c] for c in sorted(ech)]


def _howell_mod(N: int, rows, ncols: int, track: bool):
    """Howell form over Z/N (the canonical form characterizing row spans).

    Iterates echelonization with the annihilator closure until, for every
    row, N/gcd(pivot, N) times the row lies in the span of the rows below
    it; that condition is equivalent to the Howell span property.  Returns
    (hrows, pivots, trows) with hrows = trows @ original when ``track``.
    """
    nin = len(rows)
    pairs = []
    for i, r in enumerate(rows):
        t = [0] * nin if track else []  # empty tags make tag updates no-ops
        if track:
            t[i] = 1
        pairs.append(([x % N for x in r], t))

    while True:
        pairs = _echelon_mod(N, pairs)
        by_col = {}
        for row, _ in pairs:
            for j, x in enumerate(row):
                if x:
                    by_col[j] = row
                    break
        extra = []
        for v, t in pairs:
            piv = next((x for x in v if x), 0)
            if not piv:
                continue
            c = N // gcd(piv, N)
            if c % N == 0:
                continue
            ann_v = [(c * x) % N for x in v]
            if any(ann_v) and not _reduces_to_zero_mod(N, ann_v, by_col):
                extra.append((ann_v, [(c * x) % N for x in t]))
        if not extra:
            break
        pairs = pairs + extra

    hrows, trows, pivots = [], [], []
    for idx, (v, t) in enumerate(pairs):
        c = next(j for j, x in enumerate(v) if x)
        u, g = _unit_scaling_to_gcd(v[c], N)
        if u != 1:
            v = [(u * x) % N for x in v]
            t = [(u * x) % N for x in t]
        hrows.append(v)
        trows.append(t)
        pivots.append((idx, c, g))
    for idx, c, d in pivots:
        for j in range(idx):
            q = hrows[j][c] // d
            if q:
                hrows[j] = [(x - q * y) % N for x, y in zip(hrows[j], hrows[idx])]
                trows[j] = [(x - q * y) % N for x, y in zip(trows[j], trows[idx])]
    return hrows, pivots, trows


def _reduces_to_zero_mod(N, v, by_col) -> bool:
    """Greedy reduction of v against an echelon pivot table; True iff 0."""
    v = list(v)
    for col in range(len(v)):
        if v[col]:
            row = by_col.get(col)
            if row is None:
                return False
            a, b = row[col], v[col]
            g = gcd(a, N)
            if b % g:
                return False
            q = (b // g) * _inv_mod(a // g, N // g) % N if N // g > 1 else 0
            v = [(x - q * y) % N for x, y in zip(v, row)]
            if v[col]:
                return False
    return True


def _inv_mod(a, m):
    _, s, _ = xgcd(a % m, m)
    return s % m


def _hermite_int(rows, ncols: int, track: bool):
    """Row-style Hermite normal form over Z: positive pivots, entries above
    each pivot reduced into [0, pivot)."""
    ech: dict[int, tuple[list, list]] = {}
    nin = len(rows)

    for i, r in enumerate(rows):
        v = list(r)
        t = [0] * nin if track else []
        if track:
            t[i] = 1
        col = 0
        while col < ncols:
            if v[col]:
                if col in ech:
                    p, tp = ech[col]
                    a, b = p[col], v[col]
                    g, s, tt = xgcd(a, b)
                    u, vv = -(b // g), a // g
                    ech[col] = (
                        [s * x + tt * y for x, y in zip(p, v)],
                        [s * x + tt * y for x, y in zip(tp, t)],
                    )
                    v = [u * x + vv * y for x, y in zip(p, v)]
                    t = [u * x + vv * y for x, y in zip(tp, t)]
                else:
                    if v[col] < 0:
                        v = [-x for x in v]
                        t = [-x for x in t]
                    ech[col] = (v, t)
                    break
            col += 1

    cols = sorted(ech)
    hrows = [ech[c][0] for c in cols]
    trows = [ech[c][1] for c in cols]
    for idx, c in enumerate(cols):
        d = hrows[idx][c]
        for j in range(idx):
            q = hrows[j][c] // d  # floor division lands the entry in [0, d)
            if q:
                hrows[j] = [x - q * y for x, y in zip(hrows[j], hrows[idx])]
                trows[j] = [x - q * y for x, y in zip(trows[j], trows[idx])]
    pivots = [(i, c, hrows[i][c]) for i, c in enumerate(cols)]
    return hrows, pivots, trows


def _rref_field(ring, rows, ncols: int, track: bool):
    """Reduced row echelon form over a field (used for Q)."""
    ech: dict[int, tuple[list, list]] = {}
    nin = len(rows)
    zero, one = ring.zero, ring.one

    for i, r in enumerate(rows):
        v = [ring.normalize(x) for x in r]
        t = [zero] * nin if track else []
        if track:
            t[i] = one
        col = 0
        while col < ncols:
            if v[col] != zero:
                if col in ech:
                    p, tp = ech[col]
                    c = v[col]
                    v = [ring.normalize(x - c * y) for x, y in zip(v, p)]
                    t = [ring.normalize(x - c * y) for x, y in zip(t, tp)]
                else:
                    cinv = ring.inv(v[col])
                    ech[col] = (
                        [ring.normalize(cinv * x) for x in v],
                        [ring.normalize(cinv * x) for x in t],
                    )
                    break
            col += 1

    cols = sorted(ech)
    hrows = [ech[c][0] for c in cols]
    trows = [ech[c][1] for c in cols]
    for idx, c in enumerate(cols):
        for j in range(idx):
            q = hrows[j][c]
            if q != zero:
                hrows[j] = [ring.normalize(x - q * y) for x, y in zip(hrows[j], hrows[idx])]
                trows[j] = [ring.normalize(x - q * y) for x, y in zip(trows[j], trows[idx])]
    pivots = [(i, c, hrows[i][c]) for i, c in enumerate(cols)]
    return hrows, pivots, trows


def _canonical_core(M: Matrix, track: bool):
    ring = M.ring
    if isinstance(ring, ResidueRing):
        return _howell_mod(ring.modulus, [list(r) for r in M.data], M.ncols, track)
    if isinstance(ring, IntegerRing):
        return _hermite_int([list(r) for r in M.data], M.ncols, track)
    if isinstance(ring, RationalField):
        return _rref_field(ring, [list(r) for r in M.data], M.ncols, track)
    raise ValueError(f"unsupported ring {ring}")


def normal_form(M: Matrix) -> Matrix:
    """Canonical matrix with the same row span as M (RREF / Hermite / Howell)."""
    hrows, _, _ = _canonical_core(M, track=False)
    return Matrix._raw(M.ring, hrows, M.ncols)


def normal_form_with_pivots(M: Matrix):
    hrows, pivots, _ = _canonical_core(M, track=False)
    return Matrix._raw(M.ring, hrows, M.ncols), pivots


def _nf_with_transform(M: Matrix):
    """(H, pivots, T) with H canonical, span(H) = span(M) and H = T @ M."""
    hrows, pivots, trows = _canonical_core(M, track=True)
    H = Matrix._raw(M.ring, hrows, M.ncols)
    T = Matrix(M.ring, trows, ncols=M.nrows)
    return H, pivots, T


def kernel(M: Matrix) -> Matrix:
    """Generators of {x : x @ M = 0}, returned in normal form.

    The rows of the canonical form of [M | I] whose left block vanishes
    have right blocks spanning the kernel (by the span property of the
    canonical forms), and they inherit canonicity from the full matrix.
    """
    ring = M.ring
    n, m = M.ncols, M.nrows
    aug = [list(r) + [ring.one if j == i else ring.zero for j in range(m)]
           for i, r in enumerate(M.data)]
    if isinstance(ring, ResidueRing):
        hrows, _, _ = _howell_mod(ring.modulus, aug, n + m, False)
    elif isinstance(ring, IntegerRing):
        hrows, _, _ = _hermite_int(aug, n + m, False)
    else:
        hrows, _, _ = _rref_field(ring, aug, n + m, False)
    zero = ring.zero
    ker = [tuple(r[n:]) for r in hrows if not any(x != zero for x in r[:n])]
    return Matrix._raw(ring, ker, m)


def solve(M: Matrix, b: Matrix) -> Matrix | None:
    """Some x (1 x M.nrows) with x @ M = b, or None.

    Reduces M to its canonical echelon form and solves greedily down the
    pivots (sound by the Howell/Hermite span property), then maps the
    coefficients back through the tracked transform.
    """
    if b.nrows != 1 or b.ncols != M.ncols:
        raise ValueError("b must be a single row of matching width")
    ring = M.ring
    H, pivots, T = _nf_with_transform(M)
    resid = list(b.data[0])
    y = [ring.zero] * H.nrows
    zero = ring.zero
    for i, c, _ in pivots:
        coeff = ring.solve_scalar(H.data[i][c], resid[c])
        if coeff is None:
            return None
        if coeff != zero:
            y[i] = coeff
            resid = [ring.normalize(x - coeff * h) for x, h in zip(resid, H.data[i])]
    if any(x != zero for x in resid):
        return None
    return Matrix(ring, [y], ncols=H.nrows) @ T


def in_rowspan(M: Matrix, v: Matrix) -> bool:
    return solve(M, v) is not None


def reduce_mod_rowspan(H: Matrix, pivots, v: Matrix) -> Matrix:
    """Canonical coset representative of v modulo rowspan(H); H canonical."""
    ring = H.ring
    resid = list(v.data[0])
    for i, c, d in pivots:
        if isinstance(ring, (ResidueRing, IntegerRing)):
            q = resid[c] // d
        else:
            q = ring.normalize(resid[c] / d)
        if q:
            resid = [ring.normalize(x - q * h) for x, h in zip(resid, H.data[i])]
    return Matrix._raw(ring, [tuple(resid)], H.ncols)


def matrix_inverse(M: Matrix) -> Matrix | None:
    """Two-sided inverse of a square matrix, or None if not invertible."""
    if M.nrows != M.ncols:
        return None
    n = M.nrows
    ident = Matrix.identity(M.ring, n)
    rows = []
    for i in range(n):
        x = solve(M, ident.row(i))
        if x is None:
            return None
        rows.append(x.data[0])
    X = Matrix._raw(M.ring, rows, n)
    if (M @ X) != ident:
        return None
    return X


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------


def smith(M: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """(U, D, V) with U @ M @ V = D diagonal, d_i | d_{i+1}, U, V unimodular."""
    if not isinstance(M.ring, IntegerRing):
        raise ValueError("smith requires a matrix over the integers")
    m, n = M.nrows, M.ncols
    A = [list(r) for r in M.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, s, t, u, v):
        A[i], A[j] = (
            [s * x + t * y for x, y in zip(A[i], A[j])],
            [u * x + v * y for x, y in zip(A[i], A[j])],
        )
        U[i], U[j] = (
            [s * x + t * y for x, y in zip(U[i], U[j])],
            [u * x + v * y for x, y in zip(U[i], U[j])],
        )

    def col_op(i, j, s, t, u, v):
        for row in A:
            row[i], row[j] = s * row[i] + t * row[j], u * row[i] + v * row[j]
        for row in V:
            row[i], row[j] = s * row[i] + t * row[j], u * row[i] + v * row[j]

    def clear_position(k):
        # Plain subtraction leaves the pivot row alone when the pivot divides;
        # a gcd transform is used otherwise and strictly shrinks |pivot|, so
        # the pass loop terminates.
        while True:
            if A[k][k] < 0:
                A[k] = [-x for x in A[k]]
                U[k] = [-x for x in U[k]]
            for i in range(k + 1, m):
                b = A[i][k]
                if b:
                    a = A[k][k]
                    if b % a == 0:
                        q = b // a
                        A[i] = [x - q * y for x, y in zip(A[i], A[k])]
                        U[i] = [x - q * y for x, y in zip(U[i], U[k])]
                    else:
                        g, s, t = xgcd(a, b)
                        row_op(k, i, s, t, -(b // g), a // g)
            for j in range(k + 1, n):
                b = A[k][j]
                if b:
                    a = A[k][k]
                    if b % a == 0:
                        q = b // a
                        for row in A:
                            row[j] -= q * row[k]
                        for row in V:
                            row[j] -= q * row[k]
                    else:
                        g, s, t = xgcd(a, b)
                        col_op(k, j, s, t, -(b // g), a // g)
            if all(A[i][k] == 0 for i in range(k + 1, m)) and all(
                A[k][j] == 0 for j in range(k + 1, n)
            ):
                return

    for k in range(min(m, n)):
        found = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j]:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        if i != k:
            row_op(k, i, 0, 1, -1, 0)
        if j != k:
            col_op(k, j, 0, 1, -1, 0)
        clear_position(k)
        while True:
            bad = None
            for i in range(k + 1, m):
                if any(A[i][j] % A[k][k] for j in range(k + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            row_op(k, bad, 1, 1, 0, 1)
            clear_position(k)

    for k in range(min(m, n)):
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]

    return Matrix(ZZ, U, ncols=m), Matrix(ZZ, A, ncols=n), Matrix(ZZ, V, ncols=n)


def det_sign_unimodular(M: Matrix) -> int:
    """Determinant of an integer matrix via exact fraction elimination."""
    n = M.nrows
    if n != M.ncols:
        raise ValueError("square matrix required")
    A = [[Fraction(x) for x in row] for row in M.data]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            if A[i][k]:
                f = A[i][k] / A[k][k]
                A[i] = [x - f * y for x, y in zip(A[i], A[k])]
    if det.denominator != 1:
        raise AssertionError("integer determinant expected")
    return det.numerator


def span_size_mod(H: Matrix) -> int:
    """Cardinality of the row span of a canonical-form matrix over Z/N."""
    ring = H.ring
    if not isinstance(ring, ResidueRing):
        raise ValueError("span_size_mod needs a residue ring")
    N = ring.modulus
    size = 1
    for row in H.data:
        piv = next((x for x in row if x), None)
        if piv is not None:
            size *= N // gcd(piv, N)
    return size
