"""Desk-scale checkers for the three recognition hypotheses of a fiber
functor: (i) faithful and reflecting isomorphisms, (ii) cofiltered category
of elements, (iii) preservation of the cokernels that are forced to exist.

Conditions needing enumeration are exact only over finite rings; anything
else is reported "unverified" with the reason, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .category import LinearFunctor
from .errors import UnsupportedError
from .linalg import Matrix, smith, solve
from .modules import (
    BLinearMap,
    affine_solutions,
    cokernel,
    homogeneous_solutions,
    is_free_over_local,
    maximal_ideal_gens,
)
from .rings import IntegerRing


@dataclass
class RecognitionReport:
    condition: str
    verdict: str                 # "pass" | "fail" | "unverified"
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {
            "condition": self.condition,
            "verdict": self.verdict,
            "witnesses": [str(w) for w in self.witnesses],
            "notes": list(self.notes),
        }


def _image_matrix_system(w: LinearFunctor, A, B):
    """L with f_coeffs @ L = flattened w(f), plus the flattened relation span."""
    ring = w.cat.ring
    mats = w.mor[(A, B)]
    mA = w.obj[A].ambient
    mB = w.obj[B].ambient
    rows = []
    for mat in mats:
        rows.append([x for r in mat.data for x in r])
    L = Matrix(ring, rows, ncols=mA * mB) if rows else Matrix.zeros(ring, 0, mA * mB)
    S = Matrix.identity(ring, mA).kron(w.obj[B].relations)
    return L, S


def check_condition_i(w: LinearFunctor, bound: int = 4096) -> RecognitionReport:
    """Faithfulness is a kernel computation on any ring; reflecting
    isomorphisms is decided by enumeration on finite rings."""
    rep = RecognitionReport("i", "pass")
    cat = w.cat
    ring = cat.ring
    for A in cat.objects:
        for B in cat.objects:
            hom = cat.hom[(A, B)]
            if hom.ambient == 0:
                continue
            L, S = _image_matrix_system(w, A, B)
            gens = homogeneous_solutions(ring, hom.ambient, [(L, S)])
            for i in range(gens.nrows):
                if not hom.contains_zero(gens.row(i)):
                    rep.verdict = "fail"
                    rep.witnesses.append(("not-faithful", A, B, gens.row(i).tolist()))
    if rep.verdict == "fail":
        return rep

    if not ring.is_finite:
        rep.verdict = "unverified"
        rep.notes.append(f"reflecting isomorphisms needs enumeration; {ring} is infinite")
        return rep
    try:
        for A in cat.objects:
            for B in cat.objects:
                hom = cat.hom[(A, B)]
                hom_back = cat.hom[(B, A)]
                for f in hom.elements(bound):
                    W = w.on_map(A, B, f)
                    lin = BLinearMap(w.obj[A], w.obj[B], W)
                    if lin.inverse() is None:
                        continue
                    # solve g with g.f == id_A and f.g == id_B
                    rows_gf, rows_fg = [], []
                    for vi in range(hom_back.ambient):
                        e = Matrix.identity(ring, hom_back.ambient).row(vi)
                        rows_gf.append(cat.compose(A, B, A, e, f).data[0])
                        rows_fg.append(cat.compose(B, A, B, f, e).data[0])
                    L1 = Matrix(ring, rows_gf, ncols=cat.rank(A, A)) if rows_gf \
                        else Matrix.zeros(ring, 0, cat.rank(A, A))
                    L2 = Matrix(ring, rows_fg, ncols=cat.rank(B, B)) if rows_fg \
                        else Matrix.zeros(ring, 0, cat.rank(B, B))
                    part, _ = affine_solutions(ring, hom_back.ambient, [
                        (L1, cat.hom[(A, A)].relations, cat.ids[A]),
                        (L2, cat.hom[(B, B)].relations, cat.ids[B]),
                    ])
                    if part is None:
                        rep.verdict = "fail"
                        rep.witnesses.append(("iso-not-reflected", A, B, f.tolist()))
    except UnsupportedError as exc:
        rep.verdict = "unverified"
        rep.notes.append(str(exc))
    return rep


def check_condition_ii(w: LinearFunctor, bound: int = 4096) -> RecognitionReport:
    """Cofilteredness of the category of elements, by exhaustive search."""
    rep = RecognitionReport("ii", "pass")
    cat = w.cat
    ring = cat.ring
    if not ring.is_finite:
        rep.verdict = "unverified"
        rep.notes.append(f"cofilteredness is infinitary over {ring}; not sampled")
        return rep
    if not cat.objects:
        rep.verdict = "fail"
        rep.witnesses.append(("empty-category",))
        return rep

    try:
        elements = []
        for A in cat.objects:
            for x in w.obj[A].elements(bound):
                elements.append((A, x))
    except UnsupportedError as exc:
        rep.verdict = "unverified"
        rep.notes.append(str(exc))
        return rep
    rep.notes.append(f"exhaustive over {len(elements)} element objects")

    def maps_to(B, y, A, x):
        """Is there f in Hom(B, A) with w(f)(y) == x?  Returns the affine data."""
        hom = cat.hom[(B, A)]
        rows = [(y @ w.mor[(B, A)][c]).data[0] for c in range(hom.ambient)]
        L = Matrix(ring, rows, ncols=w.obj[A].ambient) if rows \
            else Matrix.zeros(ring, 0, w.obj[A].ambient)
        return affine_solutions(ring, hom.ambient, [(L, w.obj[A].relations, x)])

    for A, x in elements:
        for A2, x2 in elements:
            found = False
            for B in cat.objects:
                for y in w.obj[B].elements(bound):
                    if maps_to(B, y, A, x)[0] is not None and maps_to(B, y, A2, x2)[0] is not None:
                        found = True
                        break
                if found:
                    break
            if not found:
                rep.verdict = "fail"
                rep.witnesses.append(("no-cone", A, x.tolist(), A2, x2.tolist()))
                return rep

    for A, x in elements:
        for A2, x2 in elements:
            hom = cat.hom[(A, A2)]
            if hom.ambient == 0:
                continue
            arrows = [f for f in hom.elements(bound)
                      if w.obj[A2].same(x @ w.on_map(A, A2, f), x2)]
            for fi in range(len(arrows)):
                for gi in range(fi + 1, len(arrows)):
                    f, g = arrows[fi], arrows[gi]
                    diff = f - g
                    equalized = False
                    for B in cat.objects:
                        hom_h = cat.hom[(B, A)]
                        if hom_h.ambient == 0:
                            continue
                        rows_h = [cat.compose(B, A, A2, diff, e).data[0]
                                  for e in (Matrix.identity(ring, hom_h.ambient).row(i)
                                            for i in range(hom_h.ambient))]
                        L_eq = Matrix(ring, rows_h, ncols=cat.rank(B, A2))
                        for y in w.obj[B].elements(bound):
                            rows = [(y @ w.mor[(B, A)][c]).data[0]
                                    for c in range(hom_h.ambient)]
                            L_map = Matrix(ring, rows, ncols=w.obj[A].ambient)
                            part, _ = affine_solutions(ring, hom_h.ambient, [
                                (L_map, w.obj[A].relations, x),
                                (L_eq, cat.hom[(B, A2)].relations,
                                 Matrix.zeros(ring, 1, cat.rank(B, A2))),
                            ])
                            if part is not None:
                                equalized = True
                                break
                        if equalized:
                            break
                    if not equalized:
                        rep.verdict = "fail"
                        rep.witnesses.append(
                            ("no-equalizing-map", A, x.tolist(), A2, x2.tolist(),
                             f.tolist(), g.tolist())
                        )
                        return rep
    return rep


@dataclass
class CokernelDeclaration:
    source: object          # A
    target: object          # A2,  f: A -> A2
    f: Matrix
    obj: object             # Q
    q: Matrix               # q: A2 -> Q


def _presentation_is_free(module, ring):
    """Freeness of a presented module over the supported base rings."""
    if isinstance(ring, IntegerRing):
        if module.relations.nrows == 0:
            return True
        _, D, _ = smith(module.relations)
        diag = [D.entry(i, i) for i in range(min(D.nrows, D.ncols))]
        return all(d in (0, 1) for d in diag)
    basis = is_free_over_local(module, maximal_ideal_gens(ring))
    return basis is not None


def check_condition_iii(w: LinearFunctor, declared, bound: int = 4096) -> RecognitionReport:
    """For every candidate morphism whose fiber cokernel is free, require a
    declared categorical cokernel that the functor takes to it bijectively.
    Undeclared required cokernels are reported unverified, never pass."""
    rep = RecognitionReport("iii", "pass")
    cat = w.cat
    ring = cat.ring
    declared = list(declared)

    candidates = []
    for A in cat.objects:
        for B in cat.objects:
            hom = cat.hom[(A, B)]
            if ring.is_finite:
                try:
                    for f in hom.elements(bound):
                        candidates.append((A, B, f))
                    continue
                except UnsupportedError:
                    rep.notes.append(f"hom({A}, {B}) too large; only generators checked")
            for c in range(hom.ambient):
                candidates.append((A, B, Matrix.identity(ring, hom.ambient).row(c)))

    unverified = []
    for A, B, f in candidates:
        W = w.on_map(A, B, f)
        coker, proj = cokernel(BLinearMap(w.obj[A], w.obj[B], W))
        try:
            free = _presentation_is_free(coker, ring)
        except UnsupportedError as exc:
            rep.notes.append(f"freeness undecided for a map {A} -> {B}: {exc}")
            unverified.append((A, B, f))
            continue
        if not free:
            continue
        decl = None
        for dec in declared:
            if dec.source == A and dec.target == B and cat.hom[(A, B)].same(dec.f, f):
                decl = dec
                break
        if decl is None:
            unverified.append((A, B, f))
            continue
        Q = decl.obj
        qf = cat.compose(A, B, Q, decl.q, f)
        if not cat.hom[(A, Q)].contains_zero(qf):
            rep.verdict = "fail"
            rep.witnesses.append(("q-after-f-nonzero", A, B, f.tolist()))
            continue
        # couniversality among the declared homs: every generator killing f
        # factors through q
        for X in cat.objects:
            hom_bx = cat.hom[(B, X)]
            for gi in range(hom_bx.ambient):
                g = Matrix.identity(ring, hom_bx.ambient).row(gi)
                if not cat.hom[(A, X)].contains_zero(cat.compose(A, B, X, g, f)):
                    continue
                hom_qx = cat.hom[(Q, X)]
                rows = [cat.compose(B, Q, X, e, decl.q).data[0]
                        for e in (Matrix.identity(ring, hom_qx.ambient).row(i)
                                  for i in range(hom_qx.ambient))]
                L = Matrix(ring, rows, ncols=cat.rank(B, X)) if rows \
                    else Matrix.zeros(ring, 0, cat.rank(B, X))
                part, _ = affine_solutions(ring, hom_qx.ambient,
                                           [(L, cat.hom[(B, X)].relations, g)])
                if part is None:
                    rep.verdict = "fail"
                    rep.witnesses.append(("not-couniversal", A, B, f.tolist(), X, gi))
        # the fiber of q must induce a bijection from the cokernel
        Wq = w.on_map(B, Q, decl.q)
        induced = BLinearMap(coker, w.obj[Q], Wq)
        if induced.check() or induced.inverse() is None:
            rep.verdict = "fail"
            rep.witnesses.append(("cokernel-not-preserved", A, B, f.tolist()))
    if rep.verdict == "pass" and unverified:
        rep.verdict = "unverified"
        for A, B, f in unverified:
            rep.witnesses.append(("undeclared-cokernel", A, B, f.tolist()))
        rep.notes.append("required cokernels without declarations are not assumed")
    return rep
