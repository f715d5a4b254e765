"""Filtered modules with divided Frobenius over Z/p^n.

An object is a free Z/p^n-module with a decreasing split filtration on a
finite window [a, b] (full at a, zero past b) and maps phi^i defined on
each filtration step, satisfying phi^i restricted one step up = p phi^{i+1};
the images of all phi^i must span.  Splittings are stored explicitly as
retractions, and every direct-summand argument goes through them.

Below the window the filtration is full and phi^i extends as p^(a-i)
phi^a; above it everything is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category import LinearCategory, LinearFunctor
from .errors import WellDefinednessError
from .linalg import Matrix, kernel, normal_form_with_pivots, solve, stack
from .modules import BAlgebra, BModule, ConditionSystem, flatten_matrix
from .reports import Report
from .rings import Zmod


@dataclass
class FLObject:
    p: int
    n: int
    rank: int
    window: tuple            # (a, b), inclusive
    fil: dict                # i -> basis rows of Fil^i (k_i x rank)
    retraction: dict         # i -> rank x k_i with fil[i] @ retraction[i] = I
    phi: dict                # i -> k_i x rank

    @property
    def ring(self):
        return Zmod(self.p ** self.n)

    def level(self, i: int):
        """(basis, retraction, phi) at any integer level, extended outside
        the window: full module below, zero above."""
        a, b = self.window
        ring = self.ring
        if i in self.fil:
            return self.fil[i], self.retraction[i], self.phi[i]
        if i < a:
            scale = ring.normalize(self.p ** (a - i))
            return self.fil[a], self.retraction[a], self.phi[a].scale(scale)
        return (Matrix.zeros(ring, 0, self.rank), Matrix.zeros(ring, self.rank, 0),
                Matrix.zeros(ring, 0, self.rank))


def fl_unit(p: int, n: int) -> FLObject:
    return fl_twist(p, n, 0)


def fl_twist(p: int, n: int, k: int) -> FLObject:
    """Rank-1 object with the filtration jumping at k and phi^k = 1."""
    ring = Zmod(p ** n)
    one = Matrix.identity(ring, 1)
    return FLObject(p, n, 1, (k, k), {k: one}, {k: one}, {k: one})


def check_fl_object(X: FLObject) -> Report:
    """The four defining conditions, each as a matrix computation."""
    rep = Report()
    ring = X.ring
    a, b = X.window
    if a > b:
        rep.fail("window-empty", (a, b))
        return rep
    for i in range(a, b + 1):
        if i not in X.fil or i not in X.phi or i not in X.retraction:
            rep.fail("window-data-missing", (i,))
            return rep
        F, R, P = X.fil[i], X.retraction[i], X.phi[i]
        if F.ncols != X.rank or P.ncols != X.rank or F.nrows != P.nrows:
            rep.fail("level-shapes", (i,))
            return rep
        if (F @ R) != Matrix.identity(ring, F.nrows):
            rep.fail("retraction", (i,), "fil @ retraction is not the identity")
    # exhaustive at the left end: Fil^a is everything
    Fa = X.fil[a]
    for j in range(X.rank):
        if solve(Fa, Matrix.identity(ring, X.rank).row(j)) is None:
            rep.fail("not-exhaustive", (a,), f"generator {j} not in Fil^{a}")
    # decreasing
    for i in range(a, b):
        Fn = X.fil[i + 1]
        for r in range(Fn.nrows):
            if solve(X.fil[i], Fn.row(r)) is None:
                rep.fail("not-decreasing", (i,), f"row {r} of Fil^{i+1} escapes Fil^{i}")
    # compatibility: phi^i restricted one step up is p phi^{i+1}
    for i in range(a, b + 1):
        Fn, _, Pn = X.level(i + 1)
        C = Fn @ X.retraction[i]
        if (C @ X.fil[i]) != Fn:
            rep.fail("splitting-mismatch", (i,),
                     "retraction does not restrict to the next step")
            continue
        lhs = C @ X.phi[i]
        rhs = Pn.scale(X.p)
        if lhs != rhs:
            rep.fail("frobenius-compatibility", (i,))
    # images of the phi^i span
    rows = stack(ring, [X.phi[i] for i in range(a, b + 1)], X.rank)
    for j in range(X.rank):
        if solve(rows, Matrix.identity(ring, X.rank).row(j)) is None:
            rep.fail("images-do-not-span", (j,))
    return rep


def fl_hom_space(X: FLObject, Y: FLObject) -> list:
    """Generators of the module of morphisms: filtration-preserving maps
    commuting with every phi^i, solved over the common window."""
    if (X.p, X.n) != (Y.p, Y.n):
        raise ValueError("objects live over different rings")
    ring = X.ring
    a = min(X.window[0], Y.window[0])
    b = max(X.window[1], Y.window[1])
    sys = ConditionSystem(ring)
    sys.unknown("G", X.rank, Y.rank)
    none = Matrix.zeros(ring, 0, 0)
    for i in range(a, b + 1):
        FX, _, PX = X.level(i)
        FY, _, PY = Y.level(i)
        key = ("Z", i)
        sys.unknown(key, FX.nrows, FY.nrows)
        zero_rel = Matrix.zeros(ring, 0, Y.rank)
        sys.require(
            [("G", FX, Matrix.identity(ring, Y.rank)), (key, -Matrix.identity(ring, FX.nrows), FY)],
            zero_rel,
        )
        sys.require(
            [("G", PX, Matrix.identity(ring, Y.rank)), (key, -Matrix.identity(ring, FX.nrows), PY)],
            zero_rel,
        )
    gens = sys.homogeneous()
    out = []
    for g in gens:
        if not g["G"].is_zero():
            out.append(g["G"])
    # canonicalize: distinct generators of the projected solution module
    if not out:
        return []
    from .linalg import normal_form

    flat = Matrix(ring, [flatten_matrix(G).data[0] for G in out], ncols=X.rank * Y.rank)
    nf = normal_form(flat)
    return [
        Matrix(ring, [nf.data[i][j * Y.rank:(j + 1) * Y.rank] for j in range(X.rank)],
               ncols=Y.rank)
        for i in range(nf.nrows)
    ]


def fl_tensor(X: FLObject, Y: FLObject) -> FLObject:
    """Tensor product: Fil^n = sum of Fil^i tensor Fil^j over i + j = n,
    with phi^n assembled from phi^i tensor phi^j through the splittings.

    A well-definedness failure (a level that is not a free summand, or an
    inconsistent phi assignment across overlaps) raises."""
    if (X.p, X.n) != (Y.p, Y.n):
        raise ValueError("objects live over different rings")
    ring = X.ring
    r = X.rank * Y.rank
    aX, bX = X.window
    aY, bY = Y.window
    a, b = aX + aY, bX + bY
    fil, retr, phi = {}, {}, {}
    for lvl in range(a, b + 1):
        gen_parts, phi_parts = [], []
        for i in range(aX, bX + 1):
            j = lvl - i
            if j > bY:
                continue
            FX, _, PX = X.level(i)
            FY, _, PY = Y.level(j)
            if FX.nrows == 0 or FY.nrows == 0:
                continue
            gen_parts.append(FX.kron(FY))
            phi_parts.append(PX.kron(PY))
        gens = stack(ring, gen_parts, r) if gen_parts else Matrix.zeros(ring, 0, r)
        phis = stack(ring, phi_parts, r) if phi_parts else Matrix.zeros(ring, 0, r)
        # the assignment on generators must kill every linear relation
        ker = kernel(gens)
        if not (ker @ phis).is_zero():
            raise WellDefinednessError(
                f"phi at level {lvl} depends on the choice of splittings"
            )
        H, pivots = normal_form_with_pivots(gens)
        if any(not ring.is_unit(piv) for _, _, piv in pivots):
            raise WellDefinednessError(
                f"level {lvl} of the tensor filtration is not a free summand"
            )
        fil[lvl] = H
        rows = []
        for idx in range(H.nrows):
            lam = solve(gens, H.row(idx))
            rows.append((lam @ phis).data[0])
        phi[lvl] = Matrix(ring, rows, ncols=r) if rows else Matrix.zeros(ring, 0, r)
        # retraction: select the pivot columns (H has unit pivots, reduced)
        cols = [c for _, c, _ in pivots]
        sel = []
        for cidx in range(r):
            row = [ring.zero] * H.nrows
            if cidx in cols:
                row[cols.index(cidx)] = ring.one
            sel.append(row)
        retr[lvl] = Matrix(ring, sel, ncols=H.nrows) if sel else Matrix.zeros(ring, 0, H.nrows)
    out = FLObject(X.p, X.n, r, (a, b), fil, retr, phi)
    rep = check_fl_object(out)
    if not rep.ok:
        raise WellDefinednessError(f"tensor object fails the axioms: {rep}")
    return out


def fl_to_category(objects: dict) -> tuple[LinearCategory, LinearFunctor]:
    """Package labelled objects as a linear category with hom modules from
    fl_hom_space and the forgetful fiber functor to free Z/p^n-modules."""
    if not objects:
        raise ValueError("need at least one labelled object to fix the ring")
    some = next(iter(objects.values()))
    ring = some.ring
    alg = BAlgebra.trivial(ring)
    labels = tuple(objects)
    for lab, X in objects.items():
        rep = check_fl_object(X)
        if not rep.ok:
            raise ValueError(f"object {lab!r} fails the axioms: {rep}")

    gens = {}
    hom = {}
    for A in labels:
        for B in labels:
            gs = fl_hom_space(objects[A], objects[B])
            gens[(A, B)] = gs
            width = objects[A].rank * objects[B].rank
            if gs:
                flat = Matrix(ring, [flatten_matrix(G).data[0] for G in gs], ncols=width)
                rel = kernel(flat)
            else:
                rel = Matrix.zeros(ring, 0, 0)
            hom[(A, B)] = BModule(alg, len(gs), rel,
                                  [Matrix.identity(ring, len(gs))])

    def coords(A, B, mat: Matrix) -> Matrix:
        gs = gens[(A, B)]
        if not gs:
            if not mat.is_zero():
                raise ValueError("map not in the computed hom module")
            return Matrix.zeros(ring, 1, 0)
        flat = Matrix(ring, [flatten_matrix(G).data[0] for G in gs],
                      ncols=mat.nrows * mat.ncols)
        sol = solve(flat, flatten_matrix(mat))
        if sol is None:
            raise ValueError("map not in the computed hom module")
        return sol

    comp = {}
    ids = {}
    for A in labels:
        for B in labels:
            for C in labels:
                rows = []
                for g in gens[(B, C)]:
                    for f in gens[(A, B)]:
                        rows.append(coords(A, C, f @ g).data[0])
                comp[(A, B, C)] = Matrix(ring, rows, ncols=len(gens[(A, C)])) if rows \
                    else Matrix.zeros(ring, 0, len(gens[(A, C)]))
        ids[A] = coords(A, A, Matrix.identity(ring, objects[A].rank))
    cat = LinearCategory(ring, labels, hom, comp, ids)

    obj = {A: BModule.free(alg, objects[A].rank) for A in labels}
    mor = {(A, B): tuple(gens[(A, B)]) for A in labels for B in labels}
    w = LinearFunctor(cat, alg, obj, mor)
    return cat, w
