"""Finitely presented modules over a finite-rank commutative R-algebra.

A ``BModule`` is an R-module presentation (ambient free module modulo a
span of relation rows) together with action matrices, one per basis vector
of the algebra.  Everything downstream (categories, coalgebroids, coends)
reduces to solving linear conditions on these presentations, so this module
also hosts the two workhorse solvers ``homogeneous_solutions`` and
``affine_solutions``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedError
from .linalg import (
    Matrix,
    kernel,
    matrix_inverse,
    normal_form,
    normal_form_with_pivots,
    reduce_mod_rowspan,
    smith,
    solve,
    stack,
)
from .rings import IntegerRing, ResidueRing, Ring, RingHom


# ---------------------------------------------------------------------------
# linear-condition solvers
# ---------------------------------------------------------------------------


def homogeneous_solutions(ring: Ring, nvars: int, conditions) -> Matrix:
    """Generators of {x in R^nvars : x @ L lies in rowspan(S) for all (L, S)}.

    Implemented by adjoining one auxiliary variable per relation row and
    computing one kernel: x @ L = y @ S becomes (x, y) @ [L; -S] = 0.
    """
    conditions = [(L, S) for (L, S) in conditions if L.ncols > 0]
    if not conditions:
        return Matrix.identity(ring, nvars)
    widths = [L.ncols for L, _ in conditions]
    total = sum(widths)
    rows = []
    for v in range(nvars):
        row = []
        for L, _ in conditions:
            row.extend(L.data[v])
        rows.append(row)
    for idx, (_, S) in enumerate(conditions):
        before = sum(widths[:idx])
        after = total - before - widths[idx]
        z1, z2 = (ring.zero,) * before, (ring.zero,) * after
        for srow in S.data:
            rows.append(list(z1) + [ring.neg(x) for x in srow] + list(z2))
    big = Matrix(ring, rows, ncols=total)
    K = kernel(big)
    return normal_form(K.take_columns(range(nvars)))


def affine_solutions(ring: Ring, nvars: int, conditions):
    """(particular, homogeneous) for the system x @ L = b mod rowspan(S).

    ``conditions`` is a list of (L, S, b); particular is None when the
    system is unsolvable.  The full solution set is particular + span(hom).
    """
    kept = [(L, S, b) for (L, S, b) in conditions if L.ncols > 0]
    hom = homogeneous_solutions(ring, nvars, [(L, S) for L, S, _ in kept])
    if not kept:
        return Matrix.zeros(ring, 1, nvars), hom
    widths = [L.ncols for L, _, _ in kept]
    total = sum(widths)
    rows = []
    for v in range(nvars):
        row = []
        for L, _, _ in kept:
            row.extend(L.data[v])
        rows.append(row)
    for idx, (_, S, _) in enumerate(kept):
        before = sum(widths[:idx])
        after = total - before - widths[idx]
        z1, z2 = (ring.zero,) * before, (ring.zero,) * after
        for srow in S.data:
            rows.append(list(z1) + [ring.neg(x) for x in srow] + list(z2))
    big = Matrix(ring, rows, ncols=total)
    target = []
    for _, _, b in kept:
        target.extend(b.data[0])
    sol = solve(big, Matrix(ring, [target], ncols=total))
    if sol is None:
        return None, hom
    return sol.take_columns(range(nvars)), hom


def flatten_matrix(M: Matrix) -> Matrix:
    """Row-major flattening to a single row."""
    return Matrix(M.ring, [[x for row in M.data for x in row]], ncols=M.nrows * M.ncols)


class ConditionSystem:
    """Linear conditions on a family of unknown matrices.

    Each condition has the shape  sum_t P_t @ X_{k_t} @ Q_t == rhs  modulo a
    row span, compared row by row.  Unknowns are flattened row-major; the
    flattened operator of X -> P @ X @ Q is P^T kron Q, and "rowwise mod
    rel" becomes "mod I kron rel" on the flattened side.
    """

    def __init__(self, ring: Ring):
        self.ring = ring
        self.shapes: dict = {}
        self.order: list = []
        self.conditions: list = []

    def unknown(self, key, nrows: int, ncols: int):
        if key in self.shapes:
            if self.shapes[key] != (nrows, ncols):
                raise ValueError(f"conflicting shapes for unknown {key!r}")
            return
        self.shapes[key] = (nrows, ncols)
        self.order.append(key)

    def require(self, terms, modulo: Matrix, equals: Matrix | None = None):
        """terms: list of (key, P, Q); all P @ X @ Q must share one shape."""
        shape = None
        for key, P, Q in terms:
            m, n = self.shapes[key]
            if P.ncols != m or Q.nrows != n:
                raise ValueError("term does not fit its unknown")
            s = (P.nrows, Q.ncols)
            if shape is None:
                shape = s
            elif shape != s:
                raise ValueError("terms of one condition must agree in shape")
        self.conditions.append((terms, shape, modulo, equals))

    def _offsets(self):
        off, total = {}, 0
        for key in self.order:
            m, n = self.shapes[key]
            off[key] = total
            total += m * n
        return off, total

    def _assemble(self):
        ring = self.ring
        off, nvars = self._offsets()
        assembled = []
        for terms, (p, q), modulo, equals in self.conditions:
            width = p * q
            if width == 0:
                continue
            rows = [[ring.zero] * width for _ in range(nvars)]
            for key, P, Q in terms:
                block = P.transpose().kron(Q)
                start = off[key]
                for i in range(block.nrows):
                    tgt = rows[start + i]
                    for j, x in enumerate(block.data[i]):
                        if x != ring.zero:
                            tgt[j] = ring.add(tgt[j], x)
            L = Matrix(ring, rows, ncols=width) if nvars else Matrix.zeros(ring, 0, width)
            S = Matrix.identity(ring, p).kron(modulo)
            b = flatten_matrix(equals) if equals is not None else Matrix.zeros(ring, 1, width)
            assembled.append((L, S, b))
        return assembled, nvars, off

    def homogeneous(self) -> list[dict]:
        assembled, nvars, off = self._assemble()
        gens = homogeneous_solutions(self.ring, nvars, [(L, S) for L, S, _ in assembled])
        return [self._split(g, off) for g in (gens.row(i) for i in range(gens.nrows))]

    def solve(self):
        """(particular dict or None, list of homogeneous dicts)."""
        assembled, nvars, off = self._assemble()
        part, hom = affine_solutions(self.ring, nvars, assembled)
        gens = [self._split(hom.row(i), off) for i in range(hom.nrows)]
        if part is None:
            return None, gens
        return self._split(part, off), gens

    def _split(self, row: Matrix, off) -> dict:
        out = {}
        for key in self.order:
            m, n = self.shapes[key]
            start = off[key]
            vals = row.data[0][start:start + m * n]
            out[key] = Matrix(self.ring, [vals[i * n:(i + 1) * n] for i in range(m)], ncols=n) \
                if m else Matrix.zeros(self.ring, 0, n)
        return out


# ---------------------------------------------------------------------------
# the algebra B
# ---------------------------------------------------------------------------


class BAlgebra:
    """Commutative R-algebra of finite rank given by structure constants.

    ``structure[i]`` is the d x d matrix of multiplication by the i-th
    basis vector: row j holds the coefficients of b_i * b_j.
    """

    def __init__(self, ring: Ring, structure, unit_row):
        self.ring = ring
        self.structure = tuple(structure)
        self.rank = len(self.structure)
        self.unit = unit_row if isinstance(unit_row, Matrix) else Matrix.row_vector(ring, unit_row)
        for S in self.structure:
            if S.nrows != self.rank or S.ncols != self.rank:
                raise ValueError("structure constant block of wrong shape")
        if self.unit.ncols != self.rank:
            raise ValueError("unit vector of wrong length")

    @classmethod
    def trivial(cls, ring: Ring) -> "BAlgebra":
        one = Matrix.row_vector(ring, [ring.one])
        return cls(ring, [Matrix(ring, [[ring.one]])], one)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        out = Matrix.zeros(self.ring, 1, self.rank)
        for i in range(self.rank):
            c = a.entry(0, i)
            if c != self.ring.zero:
                out = out + (b @ self.structure[i]).scale(c)
        return out

    def mult_matrix(self, a: Matrix) -> Matrix:
        """Matrix of multiplication by a, acting on row vectors."""
        out = Matrix.zeros(self.ring, self.rank, self.rank)
        for i in range(self.rank):
            c = a.entry(0, i)
            if c != self.ring.zero:
                out = out + self.structure[i].scale(c)
        return out

    def basis_row(self, i: int) -> Matrix:
        return Matrix.identity(self.ring, self.rank).row(i)

    def check(self) -> list[str]:
        problems = []
        d = self.rank
        for i in range(d):
            for j in range(d):
                bij = self.structure[i].row(j)
                bji = self.structure[j].row(i)
                if bij != bji:
                    problems.append(f"not commutative at basis pair ({i}, {j})")
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = self.mul(self.structure[i].row(j), self.basis_row(k))
                    rhs = self.mul(self.basis_row(i), self.structure[j].row(k))
                    if lhs != rhs:
                        problems.append(f"not associative at basis triple ({i}, {j}, {k})")
        for j in range(d):
            if self.mul(self.unit, self.basis_row(j)) != self.basis_row(j):
                problems.append(f"unit fails on basis vector {j}")
        return problems

    def __eq__(self, other):
        return (
            isinstance(other, BAlgebra)
            and self.ring == other.ring
            and self.structure == other.structure
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.ring, self.structure, self.unit))

    def __repr__(self):
        return f"BAlgebra(rank {self.rank} over {self.ring})"


# ---------------------------------------------------------------------------
# modules and maps
# ---------------------------------------------------------------------------


class BModule:
    """R^ambient / rowspan(relations), with one action matrix per algebra basis
    vector.  ``basis`` optionally stores rows forming a B-basis (free modules)."""

    def __init__(self, algebra: BAlgebra, ambient: int, relations: Matrix,
                 action, basis: Matrix | None = None):
        self.algebra = algebra
        self.ring = algebra.ring
        self.ambient = ambient
        self.relations = relations
        self.action = tuple(action)
        self.basis = basis
        if relations.ncols != ambient:
            raise ValueError("relation width does not match ambient rank")
        if len(self.action) != algebra.rank:
            raise ValueError("need one action matrix per algebra basis vector")
        for A in self.action:
            if A.nrows != ambient or A.ncols != ambient:
                raise ValueError("action matrix of wrong shape")
        self._rel_nf = None
        self._rel_pivots = None

    @classmethod
    def free(cls, algebra: BAlgebra, r: int) -> "BModule":
        ring, d = algebra.ring, algebra.rank
        ident = Matrix.identity(ring, r)
        action = [ident.kron(S) for S in algebra.structure]
        basis_rows = []
        zero = [ring.zero] * (r * d)
        for j in range(r):
            row = list(zero)
            for u in range(d):
                row[j * d + u] = algebra.unit.entry(0, u)
            basis_rows.append(row)
        basis = Matrix(ring, basis_rows, ncols=r * d)
        return cls(algebra, r * d, Matrix.zeros(ring, 0, r * d), action, basis)

    @classmethod
    def zero(cls, algebra: BAlgebra) -> "BModule":
        return cls.free(algebra, 0)

    # -- quotient helpers ----------------------------------------------------

    def rel_nf(self):
        if self._rel_nf is None:
            nf, piv = normal_form_with_pivots(self.relations)
            self._rel_nf = nf
            self._rel_pivots = piv
        return self._rel_nf, self._rel_pivots

    def contains_zero(self, v: Matrix) -> bool:
        """True when v represents 0 in the quotient."""
        nf, _ = self.rel_nf()
        return solve(nf, v) is not None

    def same(self, v: Matrix, w: Matrix) -> bool:
        return self.contains_zero(v - w)

    def reduce(self, v: Matrix) -> Matrix:
        nf, piv = self.rel_nf()
        return reduce_mod_rowspan(nf, piv, v)

    def matrix_congruent(self, F: Matrix, G: Matrix) -> bool:
        """Row-wise congruence of two maps into this module."""
        nf, _ = self.rel_nf()
        diff = F - G
        return all(solve(nf, diff.row(i)) is not None for i in range(diff.nrows))

    def is_zero_module(self) -> bool:
        ident = Matrix.identity(self.ring, self.ambient)
        return all(self.contains_zero(ident.row(a)) for a in range(self.ambient))

    def elements(self, limit: int = 4096):
        """Canonical representatives of all quotient elements (finite rings)."""
        ring = self.ring
        if not ring.is_finite:
            raise UnsupportedError(f"cannot enumerate a module over {ring}")
        if ring.size ** self.ambient > limit:
            raise UnsupportedError(
                f"module too large to enumerate ({ring.size}^{self.ambient} ambient vectors)"
            )
        import itertools

        seen = set()
        out = []
        for tup in itertools.product(ring.elements(), repeat=self.ambient):
            v = self.reduce(Matrix(ring, [list(tup)], ncols=self.ambient))
            if v.data[0] not in seen:
                seen.add(v.data[0])
                out.append(v)
        return out

    # -- algebra action -------------------------------------------------------

    def action_of(self, beta: Matrix) -> Matrix:
        """Matrix of the action of the algebra element beta."""
        out = Matrix.zeros(self.ring, self.ambient, self.ambient)
        for i in range(self.algebra.rank):
            c = beta.entry(0, i)
            if c != self.ring.zero:
                out = out + self.action[i].scale(c)
        return out

    def act(self, beta: Matrix, v: Matrix) -> Matrix:
        return v @ self.action_of(beta)

    # -- stored basis ----------------------------------------------------------

    def generator_rows(self) -> Matrix:
        """Rows (j, u) = basis_j @ action_u: the R-spanning set attached to
        the stored B-basis."""
        if self.basis is None:
            raise ValueError("module has no stored B-basis")
        rows = []
        for j in range(self.basis.nrows):
            for A in self.action:
                rows.append((self.basis.row(j) @ A).data[0])
        return Matrix(self.ring, rows, ncols=self.ambient)

    def b_coords(self, v: Matrix) -> Matrix | None:
        """B-coordinates of v in the stored basis, as an r x d matrix."""
        G = self.generator_rows()
        part, _ = affine_solutions(self.ring, G.nrows, [(G, self.relations, v)])
        if part is None:
            return None
        d = self.algebra.rank
        r = self.basis.nrows
        rows = [part.data[0][j * d:(j + 1) * d] for j in range(r)]
        return Matrix(self.ring, rows, ncols=d)

    def verify_basis(self) -> list[str]:
        """Check that the stored rows really form a B-basis."""
        if self.basis is None:
            return ["no stored basis"]
        problems = []
        G = self.generator_rows()
        ident = Matrix.identity(self.ring, self.ambient)
        for a in range(self.ambient):
            part, _ = affine_solutions(self.ring, G.nrows, [(G, self.relations, ident.row(a))])
            if part is None:
                problems.append(f"ambient generator {a} not in the B-span of the basis")
        ker = homogeneous_solutions(self.ring, G.nrows, [(G, self.relations)])
        if not ker.is_zero():
            problems.append("B-linear relation among the basis vectors")
        return problems

    def check(self) -> list[str]:
        """Module invariants: actions commute, realize the structure constants,
        the unit acts as the identity, relations are action-stable."""
        problems = []
        d = self.algebra.rank
        for i in range(d):
            for j in range(d):
                prod = self.action[i] @ self.action[j]
                expect = self.action_of(self.algebra.structure[i].row(j))
                if not self.matrix_congruent(prod, expect):
                    problems.append(f"action does not realize b_{i} * b_{j}")
        unit_action = self.action_of(self.algebra.unit)
        if not self.matrix_congruent(unit_action, Matrix.identity(self.ring, self.ambient)):
            problems.append("unit does not act as the identity")
        nf, _ = self.rel_nf()
        for A in self.action:
            moved = self.relations @ A
            for i in range(moved.nrows):
                if solve(nf, moved.row(i)) is None:
                    problems.append("relation span not stable under the action")
                    break
        return problems

    def __repr__(self):
        return f"BModule(ambient {self.ambient}, {self.relations.nrows} relations over {self.ring})"


@dataclass
class BLinearMap:
    """Map of B-modules, stored ambient-to-ambient."""

    source: BModule
    target: BModule
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.nrows != self.source.ambient or self.matrix.ncols != self.target.ambient:
            raise ValueError("map matrix has wrong shape")

    def __call__(self, v: Matrix) -> Matrix:
        return v @ self.matrix

    def then(self, other: "BLinearMap") -> "BLinearMap":
        return BLinearMap(self.source, other.target, self.matrix @ other.matrix)

    @classmethod
    def identity(cls, M: BModule) -> "BLinearMap":
        return cls(M, M, Matrix.identity(M.ring, M.ambient))

    @classmethod
    def zero(cls, M: BModule, N: BModule) -> "BLinearMap":
        return cls(M, N, Matrix.zeros(M.ring, M.ambient, N.ambient))

    def check(self) -> list[str]:
        problems = []
        tnf, _ = self.target.rel_nf()
        moved = self.source.relations @ self.matrix
        for i in range(moved.nrows):
            if solve(tnf, moved.row(i)) is None:
                problems.append("source relations not mapped into target relations")
                break
        for i, (A_s, A_t) in enumerate(zip(self.source.action, self.target.action)):
            if not self.target.matrix_congruent(A_s @ self.matrix, self.matrix @ A_t):
                problems.append(f"does not commute with the action of basis vector {i}")
        return problems

    def inverse(self) -> "BLinearMap | None":
        """Quotient-level two-sided inverse, or None."""
        ring = self.matrix.ring
        ident_s = Matrix.identity(ring, self.source.ambient)
        ident_t = Matrix.identity(ring, self.target.ambient)
        sys = ConditionSystem(ring)
        sys.unknown("X", self.target.ambient, self.source.ambient)
        sys.require([("X", self.matrix, ident_s)], self.source.relations, ident_s)
        sys.require([("X", ident_t, self.matrix)], self.target.relations, ident_t)
        if self.target.relations.nrows:
            sys.require([("X", self.target.relations, ident_s)], self.source.relations)
        part, _ = sys.solve()
        if part is None:
            return None
        return BLinearMap(self.target, self.source, part["X"])


# ---------------------------------------------------------------------------
# tensor, dual, cokernel
# ---------------------------------------------------------------------------


@dataclass
class TensorProduct:
    """M tensor_B N materialized on the ambient Kronecker coordinates."""

    module: BModule
    left: BModule
    right: BModule

    def pure(self, v: Matrix, w: Matrix) -> Matrix:
        return v.kron(w)

    def map_left(self, F: Matrix) -> Matrix:
        """Ambient matrix of f tensor id."""
        return F.kron(Matrix.identity(F.ring, self.right.ambient))

    def map_right(self, G: Matrix) -> Matrix:
        return Matrix.identity(G.ring, self.left.ambient).kron(G)


def tensor_over_B(M: BModule, N: BModule) -> TensorProduct:
    """Balanced tensor product over B with the action through either factor."""
    if M.algebra != N.algebra:
        raise ValueError("tensor of modules over different algebras")
    ring = M.ring
    im = Matrix.identity(ring, M.ambient)
    im_n = Matrix.identity(ring, N.ambient)
    rel_parts = [M.relations.kron(im_n), im.kron(N.relations)]
    for A_m, A_n in zip(M.action, N.action):
        rel_parts.append(A_m.kron(im_n) - im.kron(A_n))
    relations = stack(ring, rel_parts, M.ambient * N.ambient)
    action = [A.kron(im_n) for A in M.action]
    basis = None
    if M.basis is not None and N.basis is not None:
        basis = M.basis.kron(N.basis)
    T = BModule(M.algebra, M.ambient * N.ambient, relations, action, basis)
    return TensorProduct(T, M, N)


def balanced_tensor_presentation(ring, amb_l, rel_l, acts_l, amb_r, rel_r, acts_r):
    """Relations of (P tensor Q) balancing the given actions: the quotient of
    the plain R-tensor by lifted relations and x*a tensor y - x tensor y*a."""
    il = Matrix.identity(ring, amb_l)
    ir = Matrix.identity(ring, amb_r)
    parts = [rel_l.kron(ir), il.kron(rel_r)]
    for A_l, A_r in zip(acts_l, acts_r):
        parts.append(A_l.kron(ir) - il.kron(A_r))
    return stack(ring, parts, amb_l * amb_r)


@dataclass
class DualModule:
    """Free dual of a B-free module, with the evaluation pairing."""

    module: BModule          # free of the same rank, standard coordinates
    of: BModule
    evaluation: BLinearMap   # (dual tensor_B of) -> B
    tensor: TensorProduct    # the materialized pairing domain

    def functional_row(self, coeffs: Matrix) -> Matrix:
        """Dual element with B-coordinates ``coeffs`` (r x d) as an ambient row."""
        return flatten_matrix(coeffs)


def dual_over_B(M: BModule) -> DualModule:
    """Free dual with <e_i^v, e_j> = delta_ij; requires a stored, verified basis."""
    if M.basis is None:
        raise UnsupportedError("dual requires a module marked free with a stored B-basis")
    ring, alg = M.ring, M.algebra
    r, d = M.basis.nrows, alg.rank
    D = BModule.free(alg, r)
    T = tensor_over_B(D, M)
    bmod = BModule.free(alg, 1)
    coords = [M.b_coords(Matrix.identity(ring, M.ambient).row(b)) for b in range(M.ambient)]
    rows = []
    for j in range(r):
        for u in range(d):
            for b in range(M.ambient):
                if coords[b] is None:
                    raise UnsupportedError("stored basis does not span the module")
                val = alg.mul(alg.basis_row(u), coords[b].row(j))
                rows.append(val.data[0])
    eval_matrix = Matrix(ring, rows, ncols=d) if rows else Matrix.zeros(ring, 0, d)
    evaluation = BLinearMap(T.module, bmod, eval_matrix)
    return DualModule(D, M, evaluation, T)


def cokernel(f: BLinearMap) -> tuple[BModule, BLinearMap]:
    """Target presentation with the image rows appended to the relations."""
    N = f.target
    relations = N.relations.vstack(f.matrix)
    Q = BModule(N.algebra, N.ambient, relations, N.action, basis=None)
    proj = BLinearMap(N, Q, Matrix.identity(N.ring, N.ambient))
    return Q, proj


# ---------------------------------------------------------------------------
# freeness over local algebras
# ---------------------------------------------------------------------------


def is_free_over_local(M: BModule, maxideal_gens) -> Matrix | None:
    """A B-basis of M when M is free over the local algebra B, else None.

    ``maxideal_gens`` lists algebra elements generating the maximal ideal
    (empty for fields, [p] for Z/p^n).  Raises UnsupportedError when the
    data cannot describe a local algebra.
    """
    ring, alg = M.ring, M.algebra
    gens = [g if isinstance(g, Matrix) else Matrix.row_vector(ring, g) for g in maxideal_gens]
    _check_local_data(alg, gens)

    # relations of M / mM
    parts = [M.relations]
    for g in gens:
        parts.append(M.action_of(g))
    quot = stack(ring, parts, M.ambient)
    H, pivots = normal_form_with_pivots(quot)
    unit_cols = {c for _, c, piv in pivots if ring.is_unit(piv)}
    cand = [a for a in range(M.ambient) if a not in unit_cols]

    ident = Matrix.identity(ring, M.ambient)
    basis = Matrix(ring, [ident.data[c] for c in cand], ncols=M.ambient) \
        if cand else Matrix.zeros(ring, 0, M.ambient)
    probe = BModule(alg, M.ambient, M.relations, M.action, basis=basis)
    G = probe.generator_rows()
    for a in range(M.ambient):
        part, _ = affine_solutions(ring, G.nrows, [(G, M.relations, ident.row(a))])
        if part is None:
            raise UnsupportedError(
                "candidate lift fails to generate; the maximal-ideal data is not valid"
            )
    ker = homogeneous_solutions(ring, G.nrows, [(G, M.relations)])
    if not ker.is_zero():
        return None
    return basis


def _check_local_data(alg: BAlgebra, gens) -> None:
    ring = alg.ring
    if isinstance(ring, IntegerRing) and alg.rank == 1:
        raise UnsupportedError("Z is not local; freeness over Z is decided by Smith form")
    if isinstance(ring, ResidueRing) and alg.rank == 1:
        pp = ring.prime_power()
        if pp is None:
            raise UnsupportedError(f"{ring} is not local")
    # the ideal must be proper: the unit must not lie in m*B
    if gens:
        rows = []
        for g in gens:
            rows.extend(alg.mult_matrix(g).data)
        mB = Matrix(ring, rows, ncols=alg.rank)
        if solve(mB, alg.unit) is not None:
            raise UnsupportedError("maximal-ideal data generates the unit ideal")


def maximal_ideal_gens(ring: Ring) -> list:
    """Maximal ideal generators for the supported local base rings (B = R)."""
    if ring.is_field:
        return []
    if isinstance(ring, ResidueRing):
        pp = ring.prime_power()
        if pp is not None:
            return [[pp[0]]]
    raise UnsupportedError(f"{ring} is not a supported local ring")


# ---------------------------------------------------------------------------
# presentation simplification
# ---------------------------------------------------------------------------


def simplify(M: BModule) -> tuple[BModule, BLinearMap, BLinearMap]:
    """Smaller presentation of the same module: (M2, fwd: M -> M2, bwd: M2 -> M).

    Over fields and Z/N the columns carrying unit pivots of the relation
    form are eliminated; over Z the relations are diagonalized by Smith
    form first.  fwd and bwd are mutually inverse on the quotients.
    """
    ring = M.ring
    if isinstance(ring, IntegerRing):
        return _simplify_int(M)
    H, pivots = normal_form_with_pivots(M.relations)
    unit_rows = {i for i, c, piv in pivots if ring.is_unit(piv)}
    unit_cols = {c for i, c, piv in pivots if ring.is_unit(piv)}
    keep = [a for a in range(M.ambient) if a not in unit_cols]
    fwd_rows = []
    for a in range(M.ambient):
        red = reduce_mod_rowspan(H, pivots, Matrix.identity(ring, M.ambient).row(a))
        fwd_rows.append([red.data[0][c] for c in keep])
    fwd = Matrix(ring, fwd_rows, ncols=len(keep))
    bwd_rows = [Matrix.identity(ring, M.ambient).data[c] for c in keep]
    bwd = Matrix(ring, bwd_rows, ncols=M.ambient) if keep else Matrix.zeros(ring, 0, M.ambient)
    new_rel_rows = [
        [H.data[i][c] for c in keep] for i in range(H.nrows) if i not in unit_rows
    ]
    new_rel = Matrix(ring, new_rel_rows, ncols=len(keep)) if new_rel_rows else Matrix.zeros(ring, 0, len(keep))
    return _finish_simplify(M, fwd, bwd, new_rel)


def _simplify_int(M: BModule):
    ring = M.ring
    rel = M.relations
    if rel.nrows == 0:
        D = Matrix.zeros(ring, 0, M.ambient)
        V = Matrix.identity(ring, M.ambient)
        Vinv = V
        diag = []
    else:
        _, D, V = smith(rel)
        Vinv = matrix_inverse(V)
        diag = [D.entry(i, i) for i in range(min(D.nrows, D.ncols))]
    keep, new_rel_rows = [], []
    for j in range(M.ambient):
        d = diag[j] if j < len(diag) else 0
        if d == 1:
            continue
        keep.append(j)
        if d != 0:
            row = [0] * M.ambient
            row[j] = d
            new_rel_rows.append(row)
    fwd = V.take_columns(keep)
    bwd = Matrix(ring, [Vinv.data[j] for j in keep], ncols=M.ambient) \
        if keep else Matrix.zeros(ring, 0, M.ambient)
    new_rel = Matrix(ring, [[r[j] for j in keep] for r in new_rel_rows], ncols=len(keep)) \
        if new_rel_rows else Matrix.zeros(ring, 0, len(keep))
    return _finish_simplify(M, fwd, bwd, new_rel)


def _finish_simplify(M: BModule, fwd: Matrix, bwd: Matrix, new_rel: Matrix):
    new_action = [bwd @ A @ fwd for A in M.action]
    new_basis = M.basis @ fwd if M.basis is not None else None
    M2 = BModule(M.algebra, fwd.ncols, new_rel, new_action, new_basis)
    return M2, BLinearMap(M, M2, fwd), BLinearMap(M2, M, bwd)


# ---------------------------------------------------------------------------
# base change
# ---------------------------------------------------------------------------


def base_change(h: RingHom, X):
    """Apply a supported ring map entrywise to a Matrix / BAlgebra / BModule /
    BLinearMap."""
    if isinstance(X, Matrix):
        return X.map_entries(h)
    if isinstance(X, BAlgebra):
        return BAlgebra(h.target, [S.map_entries(h) for S in X.structure], X.unit.map_entries(h))
    if isinstance(X, BModule):
        return BModule(
            base_change(h, X.algebra),
            X.ambient,
            X.relations.map_entries(h),
            [A.map_entries(h) for A in X.action],
            X.basis.map_entries(h) if X.basis is not None else None,
        )
    if isinstance(X, BLinearMap):
        return BLinearMap(base_change(h, X.source), base_change(h, X.target), X.matrix.map_entries(h))
    raise UnsupportedError(f"base_change does not apply to {type(X).__name__}")
