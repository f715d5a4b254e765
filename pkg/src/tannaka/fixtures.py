"""Standard small inputs: the one-object comatrix functor, monoid-graded
lines with their monoidal/symmetry/duality data, the biproduct category
used by the recognition checkers, and grouplike coalgebras.

These are the worked examples of the library; the demo scripts walk
through them and the test suite pins their reconstructions.
"""

from __future__ import annotations

from .category import LinearCategory, LinearFunctor
from .coalgebroid import Coalgebroid
from .linalg import Matrix
from .modules import BAlgebra, BModule
from .monoidal import DualityData, FunctorMonoidalData, MonoidalData, SymmetryData
from .rings import Ring


def one_object_category(ring: Ring, label="*") -> LinearCategory:
    """A single object with endomorphisms R . id."""
    alg = BAlgebra.trivial(ring)
    hom = {(label, label): BModule.free(alg, 1)}
    comp = {(label, label, label): Matrix(ring, [[1]])}
    ids = {label: Matrix.row_vector(ring, [1])}
    return LinearCategory(ring, (label,), hom, comp, ids)


def comatrix_functor(ring: Ring, n: int, label="*") -> LinearFunctor:
    """Fiber functor sending the one-object category to a free rank-n module."""
    cat = one_object_category(ring, label)
    alg = BAlgebra.trivial(ring)
    obj = {label: BModule.free(alg, n)}
    mor = {(label, label): (Matrix.identity(ring, n),)}
    return LinearFunctor(cat, alg, obj, mor)


class GradedLines:
    """Lines graded by a finite commutative monoid: Hom(g, g) = R . id and no
    morphisms between distinct grades.  Carries the full monoidal package,
    the symmetry, and (when every element is invertible) the duality data."""

    def __init__(self, ring: Ring, elements, mul, unit):
        self.ring = ring
        self.elements = tuple(elements)
        self.mul = dict(mul)
        self.unit = unit
        self.alg = BAlgebra.trivial(ring)
        self._build()

    def _build(self):
        ring = self.ring
        alg = self.alg
        objs = self.elements
        hom = {}
        comp = {}
        ids = {}
        for a in objs:
            for b in objs:
                hom[(a, b)] = BModule.free(alg, 1 if a == b else 0)
        for a in objs:
            for b in objs:
                for c in objs:
                    rows = hom[(b, c)].ambient * hom[(a, b)].ambient
                    cols = hom[(a, c)].ambient
                    if a == b == c:
                        comp[(a, b, c)] = Matrix(ring, [[1]])
                    else:
                        comp[(a, b, c)] = Matrix.zeros(ring, rows, cols)
            ids[a] = Matrix.row_vector(ring, [1])
        self.category = LinearCategory(ring, objs, hom, comp, ids)

        obj = {a: BModule.free(alg, 1) for a in objs}
        mor = {}
        for a in objs:
            for b in objs:
                mor[(a, b)] = (Matrix.identity(ring, 1),) if a == b else ()
        self.functor = LinearFunctor(self.category, alg, obj, mor)

        one = Matrix(ring, [[1]])
        tensor_hom = {}
        for a in objs:
            for b in objs:
                tensor_hom[((a, a), (b, b))] = one
        self.monoidal = MonoidalData(
            tensor_obj={(a, b): self.mul[(a, b)] for a in objs for b in objs},
            unit=self.unit,
            tensor_hom=tensor_hom,
            associator={(a, b, c): Matrix.row_vector(ring, [1])
                        for a in objs for b in objs for c in objs},
            left_unitor={a: Matrix.row_vector(ring, [1]) for a in objs},
            right_unitor={a: Matrix.row_vector(ring, [1]) for a in objs},
        )
        self.functor_monoidal = FunctorMonoidalData(
            psi={(a, b): one for a in objs for b in objs},
            psi0=one,
        )
        self.symmetry = SymmetryData(
            sigma={(a, b): Matrix.row_vector(ring, [1]) for a in objs for b in objs}
        )
        inverses = {}
        for a in objs:
            for b in objs:
                if self.mul[(a, b)] == self.unit:
                    inverses[a] = b
        if len(inverses) == len(objs):
            self.duality = DualityData(
                dual=inverses,
                ev={a: Matrix.row_vector(ring, [1]) for a in objs},
                coev={a: Matrix.row_vector(ring, [1]) for a in objs},
            )
        else:
            self.duality = None


def c2_graded_lines(ring: Ring) -> GradedLines:
    """Lines graded by the group of order two."""
    e, g = "+", "-"
    mul = {(e, e): e, (e, g): g, (g, e): g, (g, g): e}
    return GradedLines(ring, [e, g], mul, e)


def idempotent_monoid_lines(ring: Ring) -> GradedLines:
    """Lines graded by the monoid {e, t} with t*t = t; t has no dual."""
    e, t = "e", "t"
    mul = {(e, e): e, (e, t): t, (t, e): t, (t, t): t}
    return GradedLines(ring, [e, t], mul, e)


def grouplike_coalgebroid(ring: Ring, n: int) -> Coalgebroid:
    """The coalgebra on n grouplike elements over the trivial algebra."""
    alg = BAlgebra.trivial(ring)
    ident = Matrix.identity(ring, n)
    delta_rows = []
    for i in range(n):
        row = [ring.zero] * (n * n)
        row[i * n + i] = ring.one
        delta_rows.append(row)
    delta = Matrix(ring, delta_rows, ncols=n * n) if delta_rows \
        else Matrix.zeros(ring, 0, 0)
    eps = Matrix(ring, [[1]] * n, ncols=1) if n else Matrix.zeros(ring, 0, 1)
    return Coalgebroid(alg, n, Matrix.zeros(ring, 0, n), (ident,), (ident,), delta, eps)


def grouplike_line(C: Coalgebroid, i: int):
    """(comodule, inclusion) for the i-th grouplike line of a grouplike
    coalgebra."""
    from .coalgebroid import Comodule

    ring = C.ring
    M = BModule.free(C.algebra, 1)
    rho = Matrix(ring, [Matrix.identity(ring, C.ambient).row(i).data[0]], ncols=C.ambient)
    phi = Matrix(ring, [Matrix.identity(ring, C.ambient).row(i).data[0]], ncols=C.ambient)
    return Comodule(C, M, rho), phi


def biproduct_category(ring: Ring):
    """Objects {+, -, P} with P a biproduct of + and -; returns the category
    and its forgetful fiber functor over the trivial algebra."""
    alg = BAlgebra.trivial(ring)
    plus, minus, P = "+", "-", "P"
    objs = (plus, minus, P)
    rank = {
        (plus, plus): 1, (minus, minus): 1, (P, P): 2,
        (plus, minus): 0, (minus, plus): 0,
        (plus, P): 1, (P, plus): 1, (minus, P): 1, (P, minus): 1,
    }
    hom = {k: BModule.free(alg, r) for k, r in rank.items()}
    ids = {
        plus: Matrix.row_vector(ring, [1]),
        minus: Matrix.row_vector(ring, [1]),
        P: Matrix.row_vector(ring, [1, 1]),
    }

    # fiber data first: w(+) = R, w(-) = R, w(P) = R^2
    sign_slot = {plus: 0, minus: 1}
    w_obj = {plus: BModule.free(alg, 1), minus: BModule.free(alg, 1), P: BModule.free(alg, 2)}

    def gen_matrix(a, b, idx):
        """Matrix of the idx-th hom generator under the fiber functor."""
        if a == b and a != P:
            return Matrix.identity(ring, 1)
        if a == b == P:
            rows = [[0, 0], [0, 0]]
            rows[idx][idx] = 1
            return Matrix(ring, rows)
        if b == P:     # inclusion of a sign line
            row = [0, 0]
            row[sign_slot[a]] = 1
            return Matrix(ring, [row])
        if a == P:     # projection onto a sign line
            col = [[0], [0]]
            col[sign_slot[b]][0] = 1
            return Matrix(ring, col)
        raise AssertionError

    mor = {}
    for a, b in rank:
        mor[(a, b)] = tuple(gen_matrix(a, b, i) for i in range(rank[(a, b)]))

    comp = {}
    for a in objs:
        for b in objs:
            for c in objs:
                rows = []
                hbc, hab, hac = hom[(b, c)], hom[(a, b)], hom[(a, c)]
                for gi in range(hbc.ambient):
                    for fi in range(hab.ambient):
                        mat = mor[(a, b)][fi] @ mor[(b, c)][gi]
                        # express the composite in the generators of hom(a, c)
                        coeffs = _matrix_in_generators(ring, mat, mor[(a, c)])
                        rows.append(coeffs)
                comp[(a, b, c)] = Matrix(ring, rows, ncols=hac.ambient) if rows \
                    else Matrix.zeros(ring, 0, hac.ambient)
    cat = LinearCategory(ring, objs, hom, comp, ids)
    w = LinearFunctor(cat, alg, w_obj, mor)
    return cat, w


def _matrix_in_generators(ring, mat: Matrix, gens) -> list:
    """Coefficients expressing mat as a combination of the generator matrices."""
    from .linalg import solve
    from .modules import flatten_matrix

    if not gens:
        if not mat.is_zero():
            raise ValueError("composite not expressible: no generators")
        return []
    stacked = Matrix(ring, [flatten_matrix(g).data[0] for g in gens],
                     ncols=mat.nrows * mat.ncols)
    sol = solve(stacked, flatten_matrix(mat))
    if sol is None:
        raise ValueError("composite not expressible in the chosen generators")
    return list(sol.data[0])
