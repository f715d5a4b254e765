"""The reconstruction coend and its coalgebroid structure.

For a fiber functor w with B-free fibers, the carrier is the quotient of
the direct sum of the components T_A = w(A) tensor_B w(A)^dual by the
relations identifying, for every hom generator f: A -> A' and all basis
indices, the two ways of absorbing f.  Structure maps are defined on the
chosen bases: the comultiplication splits an elementary tensor along a
fiber basis, the counit evaluates the functional on the element.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import LinearFunctor, check_functor
from .coalgebroid import (
    Comodule,
    Coalgebroid,
    _comodule_map_system,
    check_comodule,
    is_comodule_map,
    regular_comodule,
)
from .errors import WellDefinednessError
from .linalg import Matrix, solve, stack
from .modules import (
    BLinearMap,
    BModule,
    balanced_tensor_presentation,
    homogeneous_solutions,
    simplify,
)
from .reports import Report


def _block_diag(ring, blocks):
    total = sum(b.nrows for b in blocks)
    width = sum(b.ncols for b in blocks)
    rows = []
    col_off = 0
    for b in blocks:
        for r in b.data:
            row = [ring.zero] * width
            row[col_off:col_off + b.ncols] = r
            rows.append(row)
        col_off += b.ncols
    return Matrix(ring, rows, ncols=width) if rows else Matrix.zeros(ring, 0, width)


def action_closure(rows: Matrix, actions) -> Matrix:
    """Rows spanning the B-stable closure of the given row span."""
    parts = [rows @ A for A in actions]
    return stack(rows.ring, parts, rows.ncols)


@dataclass
class CoendComponent:
    obj: object
    rank: int       # B-rank of the fiber
    offset: int     # start of this component in the total coordinates

    def t_index(self, j: int, k: int, u: int, d: int) -> int:
        return self.offset + (j * self.rank + k) * d + u

    def width(self, d: int) -> int:
        return self.rank * self.rank * d


@dataclass
class CoendPresentation:
    functor: LinearFunctor
    components: dict
    total_ambient: int
    relation_rows: Matrix          # in total coordinates, B-stably closed
    module: BModule                # the simplified quotient carrier L
    project: Matrix                # total -> L coordinates
    lift: Matrix                   # L -> total coordinates
    _coalgebroid: Coalgebroid | None = field(default=None, repr=False)

    @property
    def algebra(self):
        return self.functor.algebra

    def insertion(self, A) -> Matrix:
        """T_A coordinates -> L coordinates."""
        comp = self.components[A]
        d = self.algebra.rank
        width = comp.width(d)
        ring = self.algebra.ring
        rows = [self.project.data[comp.offset + i] for i in range(width)]
        return Matrix(ring, rows, ncols=self.project.ncols) if rows \
            else Matrix.zeros(ring, 0, self.project.ncols)

    def insert_element(self, A, x_coords: Matrix, phi_coords: Matrix) -> Matrix:
        """iota_A(x tensor phi) in L coordinates, from B-coordinates of x in
        the fiber basis (r x d) and of phi in the dual basis (r x d)."""
        comp = self.components[A]
        d = self.algebra.rank
        alg = self.algebra
        ring = alg.ring
        total = Matrix.zeros(ring, 1, self.module.ambient)
        ins = self.insertion(A)
        for j in range(comp.rank):
            for k in range(comp.rank):
                coeff = alg.mul(x_coords.row(j), phi_coords.row(k))
                for u in range(d):
                    c = coeff.entry(0, u)
                    if c != ring.zero:
                        total = total + ins.row((j * comp.rank + k) * d + u).scale(c)
        return total

    def coalgebroid(self) -> Coalgebroid:
        if self._coalgebroid is None:
            self._coalgebroid = induced_coalgebroid(self)
        return self._coalgebroid

    def factor_cowedge(self, maps: dict, target: BModule) -> Matrix | None:
        """Factor a cowedge {T_A -> target} through L; None if it is not a
        cowedge.  The factorization is unique because the insertions jointly
        surject onto L."""
        ring = self.algebra.ring
        d = self.algebra.rank
        rows = [None] * self.total_ambient
        for A, comp in self.components.items():
            mat = maps[A]
            for i in range(comp.width(d)):
                rows[comp.offset + i] = mat.data[i]
        total_map = Matrix(ring, rows, ncols=target.ambient) if rows \
            else Matrix.zeros(ring, 0, target.ambient)
        # the cowedge condition: coend relations die in the target
        zero = Matrix.zeros(ring, self.relation_rows.nrows, target.ambient)
        if not target.matrix_congruent(self.relation_rows @ total_map, zero):
            return None
        return self.lift @ total_map


def coend(w: LinearFunctor) -> CoendPresentation:
    """The universal quotient of the direct sum of all w(A) tensor_B w(A)^dual."""
    report = check_functor(w)
    if not report.ok:
        raise ValueError(f"functor check failed: {report}")
    cat = w.cat
    alg = w.algebra
    ring = alg.ring
    d = alg.rank

    components = {}
    offset = 0
    for A in cat.objects:
        r = w.fiber_rank(A)
        components[A] = CoendComponent(A, r, offset)
        offset += r * r * d
    total = offset

    rel_rows = []
    for A in cat.objects:
        for A2 in cat.objects:
            hom = cat.hom[(A, A2)]
            cA, cA2 = components[A], components[A2]
            if hom.ambient == 0 or cA.rank == 0 or cA2.rank == 0:
                continue
            for gi in range(hom.ambient):
                W = w.mor[(A, A2)][gi]
                beta = []
                for i in range(cA.rank):
                    image = w.obj[A].basis.row(i) @ W
                    coords = w.obj[A2].b_coords(image)
                    if coords is None:
                        raise ValueError("fiber image misses the stored basis span")
                    beta.append(coords)    # r' x d each
                for i in range(cA.rank):
                    for k in range(cA2.rank):
                        row = [ring.zero] * total
                        for j in range(cA2.rank):
                            for u in range(d):
                                c = beta[i].entry(j, u)
                                if c != ring.zero:
                                    idx = cA2.t_index(j, k, u, d)
                                    row[idx] = ring.add(row[idx], c)
                        for l in range(cA.rank):
                            for u in range(d):
                                c = beta[l].entry(k, u)
                                if c != ring.zero:
                                    idx = cA.t_index(i, l, u, d)
                                    row[idx] = ring.sub(row[idx], c)
                        rel_rows.append(row)
    base_rel = Matrix(ring, rel_rows, ncols=total) if rel_rows else Matrix.zeros(ring, 0, total)

    blocks = []
    for A in cat.objects:
        r = components[A].rank
        blocks.append([Matrix.identity(ring, r * r).kron(S) for S in alg.structure])
    actions = [
        _block_diag(ring, [blk[i] for blk in blocks]) for i in range(d)
    ] if blocks else [Matrix.identity(ring, 0) for _ in range(d)]

    relations = action_closure(base_rel, actions) if base_rel.nrows else base_rel
    L0 = BModule(alg, total, relations, actions)
    L1, fwd, bwd = simplify(L0)
    return CoendPresentation(
        functor=w,
        components=components,
        total_ambient=total,
        relation_rows=relations,
        module=L1,
        project=fwd.matrix,
        lift=bwd.matrix,
    )


def induced_coalgebroid(P: CoendPresentation) -> Coalgebroid:
    """Install the comultiplication and counit on the coend carrier.

    On an elementary tensor in the A-component, the comultiplication sums
    insertions split along the fiber basis and the counit evaluates the
    functional; well-definedness over the coend relations is verified.
    """
    alg = P.algebra
    ring = alg.ring
    d = alg.rank
    L = P.module
    amb = L.ambient

    delta_total_rows = []
    eps_total_rows = []
    for A in P.functor.cat.objects:
        comp = P.components[A]
        r = comp.rank
        ins = P.insertion(A)
        unit_elt = {}
        for m in range(r):
            for k in range(r):
                row = Matrix.zeros(ring, 1, amb)
                for u in range(d):
                    c = alg.unit.entry(0, u)
                    if c != ring.zero:
                        row = row + ins.row((m * r + k) * d + u).scale(c)
                unit_elt[(m, k)] = row
        for j in range(r):
            for k in range(r):
                for u in range(d):
                    out = Matrix.zeros(ring, 1, amb * amb)
                    for m in range(r):
                        left = ins.row((j * r + m) * d + u)
                        out = out + left.kron(unit_elt[(m, k)])
                    delta_total_rows.append(out.data[0])
                    eps_row = [ring.zero] * d
                    if j == k:
                        eps_row[u] = ring.one
                    eps_total_rows.append(eps_row)
    delta_total = Matrix(ring, delta_total_rows, ncols=amb * amb) \
        if delta_total_rows else Matrix.zeros(ring, 0, amb * amb)
    eps_total = Matrix(ring, eps_total_rows, ncols=d) \
        if eps_total_rows else Matrix.zeros(ring, 0, d)

    # in the balanced tensor over B, the source and target actions coincide
    # on each component; both transports are the carrier action of L
    s_action = tuple(L.action)
    t_action = tuple(L.action)

    square_rel = balanced_tensor_presentation(
        ring, amb, L.relations, t_action, amb, L.relations, s_action
    )
    sq = BModule(alg, amb * amb, square_rel, [a.kron(Matrix.identity(ring, amb)) for a in s_action])
    moved = P.relation_rows @ delta_total
    if not sq.matrix_congruent(moved, Matrix.zeros(ring, moved.nrows, amb * amb)):
        raise WellDefinednessError("comultiplication does not respect the coend relations")
    moved = P.relation_rows @ eps_total
    if not moved.is_zero():
        raise WellDefinednessError("counit does not respect the coend relations")

    delta = P.lift @ delta_total
    eps = P.lift @ eps_total
    return Coalgebroid(alg, amb, L.relations, s_action, t_action, delta, eps)


def universal_coaction(P: CoendPresentation, A) -> Comodule:
    """The coaction rho(x) = sum_k iota_A(x tensor e_k^dual) tensor e_k on
    the fiber w(A)."""
    C = P.coalgebroid()
    w = P.functor
    alg = P.algebra
    ring = alg.ring
    M = w.obj[A]
    comp = P.components[A]
    r, d = comp.rank, alg.rank
    ins = P.insertion(A)
    rows = []
    for a in range(M.ambient):
        coords = M.b_coords(Matrix.identity(ring, M.ambient).row(a))
        out = Matrix.zeros(ring, 1, C.ambient * M.ambient)
        for k in range(r):
            elt = Matrix.zeros(ring, 1, C.ambient)
            for j in range(r):
                for u in range(d):
                    c = coords.entry(j, u)
                    if c != ring.zero:
                        elt = elt + ins.row((j * r + k) * d + u).scale(c)
            out = out + elt.kron(M.basis.row(k))
        rows.append(out.data[0])
    rho = Matrix(ring, rows, ncols=C.ambient * M.ambient) \
        if rows else Matrix.zeros(ring, 0, C.ambient * M.ambient)
    return Comodule(C, M, rho)


def coaction_naturality_report(P: CoendPresentation) -> Report:
    """(L tensor w(f)) rho_A == rho_A' w(f) for every hom generator f."""
    rep = Report()
    w = P.functor
    cat = w.cat
    ring = P.algebra.ring
    C = P.coalgebroid()
    coactions = {A: universal_coaction(P, A) for A in cat.objects}
    for A in cat.objects:
        for A2 in cat.objects:
            hom = cat.hom[(A, A2)]
            tgt = coactions[A2].target_module()
            for gi in range(hom.ambient):
                W = w.mor[(A, A2)][gi]
                lhs = coactions[A].rho @ Matrix.identity(ring, C.ambient).kron(W)
                rhs = W @ coactions[A2].rho
                if not tgt.matrix_congruent(lhs, rhs):
                    rep.fail("coaction-naturality", (A, A2), f"generator {gi}")
    return rep


# ---------------------------------------------------------------------------
# counit comparison
# ---------------------------------------------------------------------------


@dataclass
class ComparisonResult:
    verdict: str               # "iso" | "epi_not_mono" | "not_epi"
    witness: Matrix | None     # element of C missed, or colimit class killed
    colimit_ambient: int
    note: str = ""

    @property
    def is_iso(self):
        return self.verdict == "iso"


def counit_comparison(C: Coalgebroid, family) -> ComparisonResult:
    """Colimit comparison over a finite family of comodule maps into the
    regular comodule.

    ``family`` lists (M_i, phi_i) with phi_i: M_i -> (C, delta).  The
    verdict is relative to the supplied family: the diagram has the phi_i
    as objects and all comodule maps commuting with them as morphisms.
    """
    reg = regular_comodule(C)
    ring = C.ring
    for idx, (M, phi) in enumerate(family):
        rep = check_comodule(M)
        if not rep.ok:
            raise ValueError(f"family member {idx} is not a comodule: {rep}")
        if not is_comodule_map(M, reg, phi):
            raise ValueError(f"family member {idx} is not a map into the regular comodule")

    sizes = [M.module.ambient for M, _ in family]
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s

    def embed(i: int, mat: Matrix) -> Matrix:
        """(m_i x something) rows placed into total coordinates: here columns."""
        rows = []
        for r in mat.data:
            row = [ring.zero] * total
            row[offsets[i]:offsets[i] + mat.ncols] = r
            rows.append(row)
        return Matrix(ring, rows, ncols=total) if rows else Matrix.zeros(ring, 0, total)

    rel_parts = []
    for i, (M, _) in enumerate(family):
        if M.module.relations.nrows:
            rel_parts.append(embed(i, M.module.relations))

    for i, (Mi, phi_i) in enumerate(family):
        for j, (Mj, phi_j) in enumerate(family):
            sys = _comodule_map_system(Mi, Mj)
            sys.require(
                [("X", Matrix.identity(ring, Mi.module.ambient), phi_j)],
                C.relations,
                phi_i,
            )
            part, hom = sys.solve()
            if part is not None:
                g0 = part["X"]
                diff_rows = (g0 @ _embed_matrix(ring, j, offsets, sizes, total)) \
                    - _embed_matrix(ring, i, offsets, sizes, total)
                rel_parts.append(diff_rows)
                for h in hom:
                    H = h["X"]
                    if not H.is_zero():
                        rel_parts.append(H @ _embed_matrix(ring, j, offsets, sizes, total))

    colim_rel = stack(ring, rel_parts, total) if rel_parts else Matrix.zeros(ring, 0, total)
    # close the span under the direct-sum action so the quotient is B-stable
    sum_actions = [
        _block_diag(ring, [M.module.action[u] for M, _ in family])
        for u in range(C.algebra.rank)
    ]
    if colim_rel.nrows and family:
        colim_rel = action_closure(colim_rel, sum_actions)

    kappa_rows = []
    for i, (M, phi) in enumerate(family):
        kappa_rows.extend(phi.data)
    kappa = Matrix(ring, kappa_rows, ncols=C.ambient) if kappa_rows \
        else Matrix.zeros(ring, 0, C.ambient)

    # surjectivity: every generator of C is hit modulo the relations of C
    reach = kappa.vstack(C.relations)
    for a in range(C.ambient):
        e = Matrix.identity(ring, C.ambient).row(a)
        if solve(reach, e) is None:
            return ComparisonResult("not_epi", e, total,
                                    "generator of the regular comodule not in the image")

    # injectivity: preimages of relations must already be colimit relations
    pre = homogeneous_solutions(ring, total, [(kappa, C.relations)])
    colim_nf_src = colim_rel
    for i in range(pre.nrows):
        if solve(colim_nf_src, pre.row(i)) is None:
            if total and not pre.row(i).is_zero():
                return ComparisonResult("epi_not_mono", pre.row(i), total,
                                        "colimit class killed in the regular comodule")
    return ComparisonResult("iso", None, total)


def _embed_matrix(ring, i, offsets, sizes, total) -> Matrix:
    """m_i x total block embedding matrix."""
    rows = []
    for a in range(sizes[i]):
        row = [ring.zero] * total
        row[offsets[i] + a] = ring.one
        rows.append(row)
    return Matrix(ring, rows, ncols=total) if rows else Matrix.zeros(ring, 0, total)


# ---------------------------------------------------------------------------
# isomorphism checks (basis independence, base change)
# ---------------------------------------------------------------------------


def verify_coalgebroid_isomorphism(C1: Coalgebroid, C2: Coalgebroid, F: Matrix) -> Report:
    """Is F: C1 -> C2 an isomorphism of coalgebroids (coefficientwise)?"""
    rep = Report()
    ring = C1.ring
    lin = BLinearMap(C1.carrier_s(), C2.carrier_s(), F)
    for p in lin.check():
        rep.fail("not-s-linear", (), p)
    lin_t = BLinearMap(C1.carrier_t(), C2.carrier_t(), F)
    for p in lin_t.check():
        rep.fail("not-t-linear", (), p)
    if lin.inverse() is None:
        rep.fail("not-invertible", ())
        return rep
    sq2_rel = C2.square_relations()
    sq2 = BModule(C2.algebra, C2.ambient ** 2, sq2_rel,
                  [a.kron(Matrix.identity(ring, C2.ambient)) for a in C2.s_action])
    lhs = C1.delta @ F.kron(F)
    rhs = F @ C2.delta
    if not sq2.matrix_congruent(lhs, rhs):
        rep.fail("delta-not-intertwined", ())
    bmod = BModule.free(C2.algebra, 1)
    if not bmod.matrix_congruent(C1.eps, F @ C2.eps):
        rep.fail("eps-not-intertwined", ())
    return rep


def rebase_transport(P_new: CoendPresentation, P_old: CoendPresentation) -> Matrix:
    """L_new -> L_old for two presentations of the same functor whose fibers
    differ only in the stored bases; built from the change-of-basis data."""
    alg = P_old.algebra
    ring = alg.ring
    d = alg.rank
    rows = []
    for A in P_new.functor.cat.objects:
        comp = P_new.components[A]
        new_mod = P_new.functor.obj[A]
        old_mod = P_old.functor.obj[A]
        r = comp.rank
        # B-coordinates of the new basis in the old one and vice versa
        c_new_in_old = [old_mod.b_coords(new_mod.basis.row(j)) for j in range(r)]
        c_old_in_new = [new_mod.b_coords(old_mod.basis.row(j)) for j in range(r)]
        for j in range(r):
            for k in range(r):
                for u in range(d):
                    # b_u . (y_j tensor y_k^dual) expanded in old coordinates:
                    # y_j = sum_j' c[j][j'] x_j',  y_k^dual = sum_k' delta[k'] x_k'^dual
                    # with delta[k'] = k-th new-coordinate of x_k'
                    total = Matrix.zeros(ring, 1, P_old.module.ambient)
                    for j2 in range(r):
                        for k2 in range(r):
                            coeff = alg.mul(
                                alg.mul(alg.basis_row(u), c_new_in_old[j].row(j2)),
                                c_old_in_new[k2].row(k),
                            )
                            ins = P_old.insertion(A)
                            for v in range(d):
                                cc = coeff.entry(0, v)
                                if cc != ring.zero:
                                    total = total + ins.row((j2 * r + k2) * d + v).scale(cc)
                    rows.append(total.data[0])
    total_map = Matrix(ring, rows, ncols=P_old.module.ambient) if rows \
        else Matrix.zeros(ring, 0, P_old.module.ambient)
    return P_new.lift @ total_map
