"""B-B-coalgebroids and their comodules.

The carrier is one R-module presentation with two commuting actions of the
algebra (source action s, target action t).  The comultiplication lands in
the balanced square C tensor_B C, where the tensor balances the t-action of
the left factor against the s-action of the right factor; a coaction
rho: M -> C tensor_B M balances t against the module action.  For the
trivial algebra all balancings reduce to the plain tensor over R.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, stack
from .modules import (
    BAlgebra,
    BLinearMap,
    BModule,
    ConditionSystem,
    balanced_tensor_presentation,
    base_change,
)
from .reports import Report
from .rings import RingHom


@dataclass
class Coalgebroid:
    algebra: BAlgebra
    ambient: int
    relations: Matrix
    s_action: tuple
    t_action: tuple
    delta: Matrix          # ambient x ambient^2
    eps: Matrix            # ambient x rank(B)

    def __post_init__(self):
        self.s_action = tuple(self.s_action)
        self.t_action = tuple(self.t_action)
        d = self.algebra.rank
        if self.delta.nrows != self.ambient or self.delta.ncols != self.ambient ** 2:
            raise ValueError("comultiplication has the wrong shape")
        if self.eps.nrows != self.ambient or self.eps.ncols != d:
            raise ValueError("counit has the wrong shape")

    @property
    def ring(self):
        return self.algebra.ring

    def carrier_s(self) -> BModule:
        return BModule(self.algebra, self.ambient, self.relations, self.s_action)

    def carrier_t(self) -> BModule:
        return BModule(self.algebra, self.ambient, self.relations, self.t_action)

    def square_relations(self) -> Matrix:
        """Relations of C tensor_B C balancing (t, s)."""
        return balanced_tensor_presentation(
            self.ring, self.ambient, self.relations, self.t_action,
            self.ambient, self.relations, self.s_action,
        )

    def triple_relations(self) -> Matrix:
        """Relations of C tensor_B C tensor_B C balancing (t, s) twice."""
        ring, c = self.ring, self.ambient
        ident = Matrix.identity(ring, c)
        sq_rel = self.square_relations()
        mid_t = [ident.kron(t) for t in self.t_action]
        return balanced_tensor_presentation(
            ring, c * c, sq_rel, mid_t, c, self.relations, self.s_action
        )

    def counit_identification_s(self) -> Matrix:
        """B tensor_B C -> C for the s-action: rows (u, a) = e_a @ s_u."""
        return stack(self.ring, list(self.s_action), self.ambient)

    def counit_identification_t(self) -> Matrix:
        """C tensor_B B -> C for the t-action: rows (a, u) = e_a @ t_u."""
        ring, c, d = self.ring, self.ambient, self.algebra.rank
        rows = []
        for a in range(c):
            for u in range(d):
                rows.append(self.t_action[u].data[a])
        return Matrix(ring, rows, ncols=c) if rows else Matrix.zeros(ring, 0, c)


def check_coalgebroid(C: Coalgebroid) -> Report:
    """Both coassociativity composites, both counit composites, and the
    bimodule conditions, evaluated on every ambient generator."""
    rep = Report()
    ring, c, d = C.ring, C.ambient, C.algebra.rank
    ident = Matrix.identity(ring, c)

    for label, carrier in (("s", C.carrier_s()), ("t", C.carrier_t())):
        for p in carrier.check():
            rep.fail(f"{label}-action", (), p)
    helper = C.carrier_s()
    for i in range(d):
        for j in range(d):
            if not helper.matrix_congruent(
                C.s_action[i] @ C.t_action[j], C.t_action[j] @ C.s_action[i]
            ):
                rep.fail("actions-do-not-commute", (i, j))

    sq_rel = C.square_relations()
    sq = BModule(C.algebra, c * c, sq_rel, [s.kron(ident) for s in C.s_action])
    if not sq.matrix_congruent(C.relations @ C.delta,
                               Matrix.zeros(ring, C.relations.nrows, c * c)):
        rep.fail("delta-ill-defined", ())
    bmod = BModule.free(C.algebra, 1)
    if not bmod.matrix_congruent(C.relations @ C.eps,
                                 Matrix.zeros(ring, C.relations.nrows, d)):
        rep.fail("eps-ill-defined", ())

    for i in range(d):
        lhs = C.s_action[i] @ C.delta
        rhs = C.delta @ C.s_action[i].kron(ident)
        if not sq.matrix_congruent(lhs, rhs):
            rep.fail("delta-not-s-linear", (i,))
        lhs = C.t_action[i] @ C.delta
        rhs = C.delta @ ident.kron(C.t_action[i])
        if not sq.matrix_congruent(lhs, rhs):
            rep.fail("delta-not-t-linear", (i,))
        mult = C.algebra.mult_matrix(C.algebra.basis_row(i))
        if not bmod.matrix_congruent(C.s_action[i] @ C.eps, C.eps @ mult):
            rep.fail("eps-not-s-linear", (i,))
        if not bmod.matrix_congruent(C.t_action[i] @ C.eps, C.eps @ mult):
            rep.fail("eps-not-t-linear", (i,))

    tr_rel = C.triple_relations()
    triple = BModule(
        C.algebra, c ** 3, tr_rel, [s.kron(ident).kron(ident) for s in C.s_action]
    )
    lhs = C.delta @ C.delta.kron(ident)
    rhs = C.delta @ ident.kron(C.delta)
    for a in range(c):
        if not triple.same(lhs.row(a), rhs.row(a)):
            rep.fail("coassociativity", (a,))

    carrier = C.carrier_s()
    left_counit = C.delta @ C.eps.kron(ident) @ C.counit_identification_s()
    right_counit = C.delta @ ident.kron(C.eps) @ C.counit_identification_t()
    for a in range(c):
        if not carrier.same(left_counit.row(a), ident.row(a)):
            rep.fail("left-counit", (a,))
        if not carrier.same(right_counit.row(a), ident.row(a)):
            rep.fail("right-counit", (a,))
    return rep


# ---------------------------------------------------------------------------
# comodules
# ---------------------------------------------------------------------------


@dataclass
class Comodule:
    coalgebroid: Coalgebroid
    module: BModule
    rho: Matrix            # module.ambient x (C.ambient * module.ambient)

    def __post_init__(self):
        c = self.coalgebroid.ambient
        m = self.module.ambient
        if self.rho.nrows != m or self.rho.ncols != c * m:
            raise ValueError("coaction has the wrong shape")

    def target_relations(self) -> Matrix:
        """Relations of C tensor_B M balancing (t, module action)."""
        C = self.coalgebroid
        return balanced_tensor_presentation(
            C.ring, C.ambient, C.relations, C.t_action,
            self.module.ambient, self.module.relations, self.module.action,
        )

    def target_module(self) -> BModule:
        C = self.coalgebroid
        ident = Matrix.identity(C.ring, self.module.ambient)
        return BModule(
            C.algebra,
            C.ambient * self.module.ambient,
            self.target_relations(),
            [s.kron(ident) for s in C.s_action],
        )


def regular_comodule(C: Coalgebroid) -> Comodule:
    return Comodule(C, C.carrier_s(), C.delta)


def check_comodule(M: Comodule) -> Report:
    rep = Report()
    C = M.coalgebroid
    ring, c, d = C.ring, C.ambient, C.algebra.rank
    m = M.module.ambient
    ident_m = Matrix.identity(ring, m)
    ident_c = Matrix.identity(ring, c)

    for p in M.module.check():
        rep.fail("module", (), p)

    tgt = M.target_module()
    if not tgt.matrix_congruent(M.module.relations @ M.rho,
                                Matrix.zeros(ring, M.module.relations.nrows, c * m)):
        rep.fail("rho-ill-defined", ())
    for i in range(d):
        lhs = M.module.action[i] @ M.rho
        rhs = M.rho @ C.s_action[i].kron(ident_m)
        if not tgt.matrix_congruent(lhs, rhs):
            rep.fail("rho-not-B-linear", (i,))

    # coassociativity: (delta tensor id) rho == (id tensor rho) rho
    mid_t = [ident_c.kron(t) for t in C.t_action]
    triple_rel = balanced_tensor_presentation(
        ring, c * c, C.square_relations(), mid_t, m, M.module.relations, M.module.action
    )
    triple = BModule(
        C.algebra, c * c * m, triple_rel, [s.kron(ident_c).kron(ident_m) for s in C.s_action]
    )
    lhs = M.rho @ C.delta.kron(ident_m)
    rhs = M.rho @ ident_c.kron(M.rho)
    for a in range(m):
        if not triple.same(lhs.row(a), rhs.row(a)):
            rep.fail("coaction-coassociativity", (a,))

    # counit: (eps tensor id) rho == id through b tensor x -> b.x
    action_ident = stack(ring, list(M.module.action), m)
    counit = M.rho @ C.eps.kron(ident_m) @ action_ident
    for a in range(m):
        if not M.module.same(counit.row(a), ident_m.row(a)):
            rep.fail("coaction-counit", (a,))
    return rep


def is_comodule_map(M: Comodule, N: Comodule, F: Matrix) -> bool:
    """Does the ambient matrix F define a comodule map M -> N?"""
    if M.coalgebroid is not N.coalgebroid and M.coalgebroid != N.coalgebroid:
        return False
    C = M.coalgebroid
    ring, c = C.ring, C.ambient
    lin = BLinearMap(M.module, N.module, F)
    if lin.check():
        return False
    tgt = N.target_module()
    lhs = F @ N.rho
    rhs = M.rho @ Matrix.identity(ring, c).kron(F)
    return tgt.matrix_congruent(lhs, rhs)


@dataclass
class ComoduleHomSpace:
    source: Comodule
    target: Comodule
    generators: list           # ambient matrices

    def rank(self) -> int:
        return len(self.generators)

    def maps(self) -> list:
        return [BLinearMap(self.source.module, self.target.module, G) for G in self.generators]


def comodule_hom_space(M: Comodule, N: Comodule) -> ComoduleHomSpace:
    """Solutions of rho_N f = (C tensor f) rho_M together with B-linearity."""
    C = M.coalgebroid
    ring, c = C.ring, C.ambient
    sys = _comodule_map_system(M, N)
    gens = sys.homogeneous()
    return ComoduleHomSpace(M, N, [g["X"] for g in gens])


def _comodule_map_system(M: Comodule, N: Comodule) -> ConditionSystem:
    C = M.coalgebroid
    ring, c, d = C.ring, C.ambient, C.algebra.rank
    m, n = M.module.ambient, N.module.ambient
    ident_m = Matrix.identity(ring, m)
    ident_n = Matrix.identity(ring, n)
    ident_c = Matrix.identity(ring, c)
    sys = ConditionSystem(ring)
    sys.unknown("X", m, n)
    if M.module.relations.nrows:
        sys.require([("X", M.module.relations, ident_n)], N.module.relations)
    for i in range(d):
        sys.require(
            [("X", M.module.action[i], ident_n), ("X", -ident_m, N.module.action[i])],
            N.module.relations,
        )
    # X @ rho_N - rho_M @ (I_c kron X) == 0 mod target relations of N
    # the second term is linear in X: rho_M @ (I kron X) has flattened
    # operator (I kron X) applied after a fixed matrix; express it by
    # rewriting rows: P @ X @ Q with P, Q built from rho_M columns.
    tgt_rel = N.target_relations()
    terms = [("X", M.rho_to_left(), ident_n)] if False else None
    # Assemble via an explicit sum over the C-index: (I_c kron X) splits as
    # sum_k E_k kron X with E_k the matrix units; rho_M @ (E_k kron X) =
    # (rho_M restricted to block k) @ X embedded in block k.
    blocks = []
    for k in range(c):
        cols = list(range(k * m, (k + 1) * m))
        Pk = M.rho.take_columns(cols)            # m x m: block k of rho_M
        Qk = _block_embed(ring, n, c, k)         # n -> block k of width c*n
        blocks.append(("X", Pk, Qk))
    sys.require([("X", ident_m, N.rho)] + [(key, -P, Q) for key, P, Q in blocks], tgt_rel)
    return sys


def _block_embed(ring, width: int, nblocks: int, k: int) -> Matrix:
    """width x (nblocks*width) matrix placing a row block at position k."""
    rows = []
    zero = [ring.zero] * (nblocks * width)
    for i in range(width):
        row = list(zero)
        row[k * width + i] = ring.one
        rows.append(row)
    return Matrix(ring, rows, ncols=nblocks * width)


def base_change_coalgebroid(h: RingHom, C: Coalgebroid) -> Coalgebroid:
    return Coalgebroid(
        base_change(h, C.algebra),
        C.ambient,
        C.relations.map_entries(h),
        [A.map_entries(h) for A in C.s_action],
        [A.map_entries(h) for A in C.t_action],
        C.delta.map_entries(h),
        C.eps.map_entries(h),
    )
