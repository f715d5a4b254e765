"""The model document: a single JSON schema describing rings, algebras,
categories, fiber functors, monoidal data, coalgebroids, comodule families,
cokernel declarations, and filtered-module objects.

Matrices are row-major nested arrays; an empty matrix is written
{"rows": 0, "cols": k}.  Rationals are "a/b" strings or integers, residues
are integers in [0, N), labels are strings.  Keys joining labels use "->"
for hom data and "|" for object pairs.  Parse errors carry the offending
field path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import json

from .category import LinearCategory, LinearFunctor
from .coalgebroid import Coalgebroid, Comodule
from .errors import ParseError
from .flmod import FLObject, fl_twist
from .linalg import Matrix
from .modules import BAlgebra, BModule
from .monoidal import Bialgebroid, DualityData, FunctorMonoidalData, MonoidalData, SymmetryData
from .recognition import CokernelDeclaration
from .rings import GF, QQ, RationalField, ResidueRing, Ring, ZZ, Zmod


def parse_ring(node, path) -> Ring:
    if not isinstance(node, dict) or "kind" not in node:
        raise ParseError(path, "ring must be an object with a 'kind'")
    kind = node["kind"]
    if kind == "Integers":
        return ZZ
    if kind == "Rationals":
        return QQ
    if kind == "PrimeField":
        try:
            return GF(int(node["p"]))
        except (KeyError, ValueError) as exc:
            raise ParseError(path + ".p", str(exc))
    if kind == "IntegersMod":
        try:
            N = int(node["modulus"])
        except (KeyError, ValueError) as exc:
            raise ParseError(path + ".modulus", str(exc))
        if N < 2:
            raise ParseError(path + ".modulus", f"modulus must be >= 2, got {N}")
        return Zmod(N)
    raise ParseError(path + ".kind", f"unknown ring kind {kind!r}")


def ring_to_json(ring: Ring):
    if ring == ZZ:
        return {"kind": "Integers"}
    if isinstance(ring, RationalField):
        return {"kind": "Rationals"}
    if isinstance(ring, ResidueRing):
        if ring.is_field:
            return {"kind": "PrimeField", "p": ring.modulus}
        return {"kind": "IntegersMod", "modulus": ring.modulus}
    raise ValueError(f"cannot serialize {ring}")


def _parse_scalar(ring, node, path):
    if isinstance(node, str):
        if not isinstance(ring, RationalField):
            raise ParseError(path, f"fraction syntax only allowed over Q, got {node!r}")
        try:
            return Fraction(node)
        except ValueError:
            raise ParseError(path, f"bad rational {node!r}")
    if isinstance(node, bool) or not isinstance(node, (int,)):
        raise ParseError(path, f"expected a scalar, got {node!r}")
    if isinstance(ring, ResidueRing) and not (0 <= node < ring.modulus):
        raise ParseError(path, f"residue {node} out of range [0, {ring.modulus})")
    return node


def parse_matrix(ring, node, path, rows=None, cols=None) -> Matrix:
    if isinstance(node, dict):
        try:
            r, c = int(node["rows"]), int(node["cols"])
        except (KeyError, ValueError):
            raise ParseError(path, "matrix object needs integer 'rows' and 'cols'")
        entries = node.get("entries", [])
        if len(entries) != r:
            raise ParseError(path, f"declared {r} rows, found {len(entries)}")
        data = [[_parse_scalar(ring, x, f"{path}[{i}][{j}]")
                 for j, x in enumerate(row)] for i, row in enumerate(entries)]
        for i, row in enumerate(data):
            if len(row) != c:
                raise ParseError(f"{path}[{i}]", f"declared {c} cols, found {len(row)}")
        M = Matrix(ring, data, ncols=c)
    elif isinstance(node, list):
        if node and not isinstance(node[0], list):
            node = [node]          # a bare row vector
        data = [[_parse_scalar(ring, x, f"{path}[{i}][{j}]")
                 for j, x in enumerate(row)] for i, row in enumerate(node)]
        widths = {len(row) for row in data}
        if len(widths) > 1:
            raise ParseError(path, "ragged matrix rows")
        if not data:
            raise ParseError(path, "empty matrix needs the {rows, cols} form")
        M = Matrix(ring, data, ncols=len(data[0]))
    else:
        raise ParseError(path, f"expected a matrix, got {type(node).__name__}")
    if rows is not None and M.nrows != rows:
        raise ParseError(path, f"expected {rows} rows, found {M.nrows}")
    if cols is not None and M.ncols != cols:
        raise ParseError(path, f"expected {cols} cols, found {M.ncols}")
    return M


def matrix_to_json(M: Matrix):
    if M.nrows == 0 or M.ncols == 0:
        return {"rows": M.nrows, "cols": M.ncols, "entries": [[] for _ in range(M.nrows)]}
    def enc(x):
        return str(x) if isinstance(x, Fraction) and x.denominator != 1 else (
            x.numerator if isinstance(x, Fraction) else x)
    return [[enc(x) for x in row] for row in M.data]


def _split_key(key, sep, parts, path):
    bits = key.split(sep)
    if len(bits) != parts:
        raise ParseError(path, f"key {key!r} must have {parts} parts joined by {sep!r}")
    return tuple(bits)


@dataclass
class ModelDocument:
    ring: Ring
    algebra: BAlgebra
    category: LinearCategory | None = None
    functor: LinearFunctor | None = None
    monoidal: MonoidalData | None = None
    functor_monoidal: FunctorMonoidalData | None = None
    symmetry: SymmetryData | None = None
    duality: DualityData | None = None
    coalgebroid: Coalgebroid | None = None
    bialgebroid: Bialgebroid | None = None
    comodules: dict = field(default_factory=dict)
    counit_family: list = field(default_factory=list)
    cokernels: list = field(default_factory=list)
    fl_p: int | None = None
    fl_n: int | None = None
    fl_objects: dict = field(default_factory=dict)
    base_change_ring: Ring | None = None


def parse_model(path_or_text) -> ModelDocument:
    """Parse and validate a model file (a path or raw JSON text)."""
    if "\n" in str(path_or_text) or str(path_or_text).lstrip().startswith("{"):
        text = str(path_or_text)
    else:
        with open(path_or_text, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        root = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("$", f"invalid JSON: {exc}")
    if not isinstance(root, dict):
        raise ParseError("$", "top level must be an object")
    if "ring" not in root:
        raise ParseError("$.ring", "missing")
    ring = parse_ring(root["ring"], "$.ring")

    algebra = _parse_algebra(ring, root.get("algebra"), "$.algebra")
    doc = ModelDocument(ring=ring, algebra=algebra)

    if "category" in root:
        doc.category = _parse_category(ring, algebra, root["category"], "$.category")
    if "functor" in root:
        if doc.category is None:
            raise ParseError("$.functor", "a functor needs a category section")
        doc.functor = _parse_functor(doc.category, algebra, root["functor"], "$.functor")
    if "monoidal" in root:
        if doc.category is None:
            raise ParseError("$.monoidal", "monoidal data needs a category section")
        doc.monoidal = _parse_monoidal(doc.category, root["monoidal"], "$.monoidal")
    if "functor_monoidal" in root:
        if doc.functor is None or doc.monoidal is None:
            raise ParseError("$.functor_monoidal", "needs functor and monoidal sections")
        doc.functor_monoidal = _parse_functor_monoidal(
            doc, root["functor_monoidal"], "$.functor_monoidal")
    if "symmetry" in root:
        doc.symmetry = _parse_symmetry(doc.category, doc.monoidal, root["symmetry"], "$.symmetry")
    if "duality" in root:
        doc.duality = _parse_duality(doc.category, doc.monoidal, root["duality"], "$.duality")
    if "coalgebroid" in root:
        doc.coalgebroid = _parse_coalgebroid(ring, algebra, root["coalgebroid"], "$.coalgebroid")
    if "bialgebroid" in root:
        if doc.coalgebroid is None:
            raise ParseError("$.bialgebroid", "needs a coalgebroid section")
        doc.bialgebroid = _parse_bialgebroid(doc.coalgebroid, root["bialgebroid"], "$.bialgebroid")
    if "comodules" in root:
        if doc.coalgebroid is None:
            raise ParseError("$.comodules", "comodules need a coalgebroid section")
        for name, node in root["comodules"].items():
            doc.comodules[name] = _parse_comodule(doc.coalgebroid, node, f"$.comodules.{name}")
    if "counit_family" in root:
        for i, node in enumerate(root["counit_family"]):
            p = f"$.counit_family[{i}]"
            if not isinstance(node, dict) or "comodule" not in node or "map" not in node:
                raise ParseError(p, "entries need 'comodule' and 'map'")
            name = node["comodule"]
            if name not in doc.comodules:
                raise ParseError(p + ".comodule", f"unknown comodule {name!r}")
            M = doc.comodules[name]
            phi = parse_matrix(ring, node["map"], p + ".map",
                               rows=M.module.ambient, cols=doc.coalgebroid.ambient)
            doc.counit_family.append((M, phi))
    if "cokernels" in root:
        if doc.category is None:
            raise ParseError("$.cokernels", "declarations need a category section")
        for i, node in enumerate(root["cokernels"]):
            doc.cokernels.append(_parse_cokernel(doc.category, node, f"$.cokernels[{i}]"))
    if "fl" in root:
        _parse_fl(doc, root["fl"], "$.fl")
    if "base_change" in root:
        node = root["base_change"]
        if not isinstance(node, dict) or "target_ring" not in node:
            raise ParseError("$.base_change", "needs a 'target_ring'")
        doc.base_change_ring = parse_ring(node["target_ring"], "$.base_change.target_ring")
    return doc


def _parse_algebra(ring, node, path) -> BAlgebra:
    if node is None:
        return BAlgebra.trivial(ring)
    if not isinstance(node, dict) or "structure" not in node or "unit" not in node:
        raise ParseError(path, "algebra needs 'structure' and 'unit'")
    structure = node["structure"]
    if not isinstance(structure, list) or not structure:
        raise ParseError(path + ".structure", "need at least one structure block")
    d = len(structure)
    blocks = [parse_matrix(ring, S, f"{path}.structure[{i}]", rows=d, cols=d)
              for i, S in enumerate(structure)]
    unit = parse_matrix(ring, node["unit"], path + ".unit", rows=1, cols=d)
    alg = BAlgebra(ring, blocks, unit)
    problems = alg.check()
    if problems:
        raise ParseError(path, "; ".join(problems))
    return alg


def _parse_presented_module(algebra, node, path) -> BModule:
    ring = algebra.ring
    if isinstance(node, dict) and set(node) <= {"rank"}:
        return BModule.free(algebra, int(node.get("rank", 0)))
    if not isinstance(node, dict) or "ambient" not in node:
        raise ParseError(path, "module needs 'rank' or 'ambient'")
    amb = int(node["ambient"])
    rel = parse_matrix(ring, node["relations"], path + ".relations", cols=amb) \
        if "relations" in node else Matrix.zeros(ring, 0, amb)
    if "action" in node:
        action = [parse_matrix(ring, A, f"{path}.action[{i}]", rows=amb, cols=amb)
                  for i, A in enumerate(node["action"])]
        if len(action) != algebra.rank:
            raise ParseError(path + ".action", "one action matrix per algebra basis vector")
    else:
        if algebra.rank != 1:
            raise ParseError(path, "modules over a nontrivial algebra need 'action'")
        action = [Matrix.identity(ring, amb)]
    basis = parse_matrix(ring, node["basis"], path + ".basis", cols=amb) \
        if "basis" in node else None
    return BModule(algebra, amb, rel, action, basis)


def _parse_category(ring, algebra, node, path) -> LinearCategory:
    if "objects" not in node:
        raise ParseError(path + ".objects", "missing")
    objects = tuple(node["objects"])
    hom = {}
    declared = node.get("hom", {})
    for key, h in declared.items():
        A, B = _split_key(key, "->", 2, f"{path}.hom.{key}")
        if A not in objects or B not in objects:
            raise ParseError(f"{path}.hom.{key}", "unknown object label")
        hom[(A, B)] = _parse_presented_module(algebra, h, f"{path}.hom.{key}")
    for A in objects:
        for B in objects:
            hom.setdefault((A, B), BModule.free(algebra, 0))
    comp = {}
    for key, c in node.get("compose", {}).items():
        A, B, C = _split_key(key, "->", 3, f"{path}.compose.{key}")
        rows = hom[(B, C)].ambient * hom[(A, B)].ambient
        comp[(A, B, C)] = parse_matrix(ring, c, f"{path}.compose.{key}",
                                       rows=rows, cols=hom[(A, C)].ambient)
    for A in objects:
        for B in objects:
            for C in objects:
                comp.setdefault((A, B, C), Matrix.zeros(
                    ring, hom[(B, C)].ambient * hom[(A, B)].ambient, hom[(A, C)].ambient))
    ids = {}
    for A, row in node.get("identities", {}).items():
        if A not in objects:
            raise ParseError(f"{path}.identities.{A}", "unknown object label")
        ids[A] = parse_matrix(ring, row, f"{path}.identities.{A}",
                              rows=1, cols=hom[(A, A)].ambient)
    for A in objects:
        if A not in ids:
            if hom[(A, A)].ambient == 0:
                ids[A] = Matrix.zeros(ring, 1, 0)
            else:
                raise ParseError(f"{path}.identities", f"missing identity for {A!r}")
    return LinearCategory(ring, objects, hom, comp, ids)


def _parse_functor(cat, algebra, node, path) -> LinearFunctor:
    ring = cat.ring
    obj = {}
    for A, spec in node.get("objects", {}).items():
        if A not in cat.objects:
            raise ParseError(f"{path}.objects.{A}", "unknown object label")
        obj[A] = _parse_presented_module(algebra, spec, f"{path}.objects.{A}")
    for A in cat.objects:
        if A not in obj:
            raise ParseError(f"{path}.objects", f"missing fiber for {A!r}")
    mor = {}
    for key, mats in node.get("morphisms", {}).items():
        A, B = _split_key(key, "->", 2, f"{path}.morphisms.{key}")
        expected = cat.hom[(A, B)].ambient
        if len(mats) != expected:
            raise ParseError(f"{path}.morphisms.{key}",
                             f"need {expected} matrices, found {len(mats)}")
        mor[(A, B)] = tuple(
            parse_matrix(ring, m, f"{path}.morphisms.{key}[{i}]",
                         rows=obj[A].ambient, cols=obj[B].ambient)
            for i, m in enumerate(mats))
    for A in cat.objects:
        for B in cat.objects:
            if (A, B) not in mor:
                if cat.hom[(A, B)].ambient != 0:
                    raise ParseError(f"{path}.morphisms", f"missing images for {A}->{B}")
                mor[(A, B)] = ()
    return LinearFunctor(cat, algebra, obj, mor)


def _parse_monoidal(cat, node, path) -> MonoidalData:
    ring = cat.ring
    if "unit" not in node or "tensor_objects" not in node:
        raise ParseError(path, "monoidal data needs 'unit' and 'tensor_objects'")
    tensor_obj = {}
    for key, val in node["tensor_objects"].items():
        A, B = _split_key(key, "|", 2, f"{path}.tensor_objects.{key}")
        if val not in cat.objects:
            raise ParseError(f"{path}.tensor_objects.{key}", f"unknown object {val!r}")
        tensor_obj[(A, B)] = val
    tensor_hom = {}
    for key, mat in node.get("tensor_hom", {}).items():
        ab, cd = _split_key(key, "|", 2, f"{path}.tensor_hom.{key}")
        A, A2 = _split_key(ab, "->", 2, f"{path}.tensor_hom.{key}")
        B, B2 = _split_key(cd, "->", 2, f"{path}.tensor_hom.{key}")
        rows = cat.rank(A, A2) * cat.rank(B, B2)
        cols = cat.rank(tensor_obj[(A, B)], tensor_obj[(A2, B2)])
        tensor_hom[((A, A2), (B, B2))] = parse_matrix(
            ring, mat, f"{path}.tensor_hom.{key}", rows=rows, cols=cols)
    associator = {}
    for key, row in node.get("associator", {}).items():
        A, B, C = _split_key(key, "|", 3, f"{path}.associator.{key}")
        src = tensor_obj[(tensor_obj[(A, B)], C)]
        tgt = tensor_obj[(A, tensor_obj[(B, C)])]
        associator[(A, B, C)] = parse_matrix(ring, row, f"{path}.associator.{key}",
                                             rows=1, cols=cat.rank(src, tgt))
    left_unitor, right_unitor = {}, {}
    for store, name in ((left_unitor, "left_unitor"), (right_unitor, "right_unitor")):
        for A, row in node.get(name, {}).items():
            src = tensor_obj[(node["unit"], A)] if name == "left_unitor" \
                else tensor_obj[(A, node["unit"])]
            store[A] = parse_matrix(ring, row, f"{path}.{name}.{A}",
                                    rows=1, cols=cat.rank(src, A))
    return MonoidalData(tensor_obj, node["unit"], tensor_hom, associator,
                        left_unitor, right_unitor)


def _parse_functor_monoidal(doc, node, path) -> FunctorMonoidalData:
    ring = doc.ring
    w, mon = doc.functor, doc.monoidal
    psi = {}
    for key, mat in node.get("psi", {}).items():
        A, B = _split_key(key, "|", 2, f"{path}.psi.{key}")
        rows = w.obj[A].ambient * w.obj[B].ambient
        cols = w.obj[mon.tensor_obj[(A, B)]].ambient
        psi[(A, B)] = parse_matrix(ring, mat, f"{path}.psi.{key}", rows=rows, cols=cols)
    for A in w.cat.objects:
        for B in w.cat.objects:
            if (A, B) not in psi:
                raise ParseError(f"{path}.psi", f"missing psi for ({A}, {B})")
    if "psi0" not in node:
        raise ParseError(f"{path}.psi0", "missing")
    psi0 = parse_matrix(ring, node["psi0"], path + ".psi0",
                        rows=doc.algebra.rank, cols=w.obj[mon.unit].ambient)
    return FunctorMonoidalData(psi=psi, psi0=psi0)


def _parse_symmetry(cat, mon, node, path) -> SymmetryData:
    if cat is None or mon is None:
        raise ParseError(path, "symmetry needs category and monoidal sections")
    sigma = {}
    for key, row in node.items():
        A, B = _split_key(key, "|", 2, f"{path}.{key}")
        src = mon.tensor_obj[(A, B)]
        tgt = mon.tensor_obj[(B, A)]
        sigma[(A, B)] = parse_matrix(cat.ring, row, f"{path}.{key}",
                                     rows=1, cols=cat.rank(src, tgt))
    return SymmetryData(sigma)


def _parse_duality(cat, mon, node, path) -> DualityData:
    if cat is None or mon is None:
        raise ParseError(path, "duality needs category and monoidal sections")
    dual, ev, coev = {}, {}, {}
    for A, spec in node.items():
        p = f"{path}.{A}"
        if "dual" not in spec or "ev" not in spec or "coev" not in spec:
            raise ParseError(p, "need 'dual', 'ev', 'coev'")
        Ad = spec["dual"]
        dual[A] = Ad
        ev[A] = parse_matrix(cat.ring, spec["ev"], p + ".ev", rows=1,
                             cols=cat.rank(mon.tensor_obj[(Ad, A)], mon.unit))
        coev[A] = parse_matrix(cat.ring, spec["coev"], p + ".coev", rows=1,
                               cols=cat.rank(mon.unit, mon.tensor_obj[(A, Ad)]))
    return DualityData(dual, ev, coev)


def _parse_coalgebroid(ring, algebra, node, path) -> Coalgebroid:
    if "ambient" not in node:
        raise ParseError(path + ".ambient", "missing")
    amb = int(node["ambient"])
    rel = parse_matrix(ring, node["relations"], path + ".relations", cols=amb) \
        if "relations" in node else Matrix.zeros(ring, 0, amb)
    d = algebra.rank

    def actions(name):
        if name in node:
            mats = node[name]
            if len(mats) != d:
                raise ParseError(f"{path}.{name}", f"need {d} matrices")
            return [parse_matrix(ring, m, f"{path}.{name}[{i}]", rows=amb, cols=amb)
                    for i, m in enumerate(mats)]
        if d == 1:
            return [Matrix.identity(ring, amb)]
        raise ParseError(f"{path}.{name}", "missing action data")

    s_action = actions("s_action")
    t_action = actions("t_action")
    delta = parse_matrix(ring, node["delta"], path + ".delta", rows=amb, cols=amb * amb)
    eps = parse_matrix(ring, node["eps"], path + ".eps", rows=amb, cols=d)
    return Coalgebroid(algebra, amb, rel, s_action, t_action, delta, eps)


def _parse_bialgebroid(C, node, path) -> Bialgebroid:
    ring = C.ring
    amb, d = C.ambient, C.algebra.rank
    mu = parse_matrix(ring, node["mu"], path + ".mu", rows=amb * amb, cols=amb)
    unit_row = parse_matrix(ring, node["unit"], path + ".unit", rows=1, cols=amb)
    source = parse_matrix(ring, node["source"], path + ".source", rows=d, cols=amb)
    target = parse_matrix(ring, node["target"], path + ".target", rows=d, cols=amb)
    antipode = parse_matrix(ring, node["antipode"], path + ".antipode",
                            rows=amb, cols=amb) if "antipode" in node else None
    return Bialgebroid(C, mu, unit_row, source, target, antipode)


def _parse_comodule(C, node, path) -> Comodule:
    if "module" not in node or "rho" not in node:
        raise ParseError(path, "comodule needs 'module' and 'rho'")
    module = _parse_presented_module(C.algebra, node["module"], path + ".module")
    rho = parse_matrix(C.ring, node["rho"], path + ".rho",
                       rows=module.ambient, cols=C.ambient * module.ambient)
    return Comodule(C, module, rho)


def _parse_cokernel(cat, node, path) -> CokernelDeclaration:
    for key in ("source", "target", "f", "obj", "q"):
        if key not in node:
            raise ParseError(path, f"missing '{key}'")
    A, B, Q = node["source"], node["target"], node["obj"]
    for label, p in ((A, "source"), (B, "target"), (Q, "obj")):
        if label not in cat.objects:
            raise ParseError(f"{path}.{p}", f"unknown object {label!r}")
    f = parse_matrix(cat.ring, node["f"], path + ".f", rows=1, cols=cat.rank(A, B))
    q = parse_matrix(cat.ring, node["q"], path + ".q", rows=1, cols=cat.rank(B, Q))
    return CokernelDeclaration(A, B, f, Q, q)


def _parse_fl(doc: ModelDocument, node, path):
    if "p" not in node or "n" not in node:
        raise ParseError(path, "fl section needs 'p' and 'n'")
    p, n = int(node["p"]), int(node["n"])
    doc.fl_p, doc.fl_n = p, n
    ring = Zmod(p ** n)
    for name, spec in node.get("objects", {}).items():
        pp = f"{path}.objects.{name}"
        if "twist" in spec:
            doc.fl_objects[name] = fl_twist(p, n, int(spec["twist"]))
            continue
        for key in ("rank", "window", "fil", "retraction", "phi"):
            if key not in spec:
                raise ParseError(pp, f"missing '{key}'")
        rank = int(spec["rank"])
        a, b = int(spec["window"][0]), int(spec["window"][1])
        fil, retr, phi = {}, {}, {}
        for i in range(a, b + 1):
            key = str(i)
            if key not in spec["fil"]:
                raise ParseError(f"{pp}.fil.{key}", "missing level")
            fil[i] = parse_matrix(ring, spec["fil"][key], f"{pp}.fil.{key}", cols=rank)
            retr[i] = parse_matrix(ring, spec["retraction"][key], f"{pp}.retraction.{key}",
                                   rows=rank, cols=fil[i].nrows)
            phi[i] = parse_matrix(ring, spec["phi"][key], f"{pp}.phi.{key}",
                                  rows=fil[i].nrows, cols=rank)
        doc.fl_objects[name] = FLObject(p, n, rank, (a, b), fil, retr, phi)


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def coalgebroid_to_json(C: Coalgebroid, bialgebroid: Bialgebroid | None = None):
    doc = {
        "ring": ring_to_json(C.ring),
        "coalgebroid": {
            "ambient": C.ambient,
            "relations": matrix_to_json(C.relations),
            "s_action": [matrix_to_json(A) for A in C.s_action],
            "t_action": [matrix_to_json(A) for A in C.t_action],
            "delta": matrix_to_json(C.delta),
            "eps": matrix_to_json(C.eps),
        },
    }
    if C.algebra.rank != 1:
        doc["algebra"] = {
            "structure": [matrix_to_json(S) for S in C.algebra.structure],
            "unit": matrix_to_json(C.algebra.unit),
        }
    if bialgebroid is not None:
        doc["bialgebroid"] = {
            "mu": matrix_to_json(bialgebroid.mu),
            "unit": matrix_to_json(bialgebroid.unit_row),
            "source": matrix_to_json(bialgebroid.source_map),
            "target": matrix_to_json(bialgebroid.target_map),
        }
        if bialgebroid.antipode is not None:
            doc["bialgebroid"]["antipode"] = matrix_to_json(bialgebroid.antipode)
    return doc


def category_to_json(cat: LinearCategory, w: LinearFunctor | None = None):
    doc = {
        "ring": ring_to_json(cat.ring),
        "category": {
            "objects": list(cat.objects),
            "hom": {
                f"{A}->{B}": {"rank": cat.hom[(A, B)].ambient}
                if cat.hom[(A, B)].relations.nrows == 0 else {
                    "ambient": cat.hom[(A, B)].ambient,
                    "relations": matrix_to_json(cat.hom[(A, B)].relations),
                }
                for A in cat.objects for B in cat.objects
            },
            "compose": {
                f"{A}->{B}->{C}": matrix_to_json(cat.comp[(A, B, C)])
                for A in cat.objects for B in cat.objects for C in cat.objects
                if cat.comp[(A, B, C)].nrows and cat.comp[(A, B, C)].ncols
            },
            "identities": {str(A): matrix_to_json(cat.ids[A]) for A in cat.objects
                           if cat.ids[A].ncols},
        },
    }
    if w is not None:
        doc["functor"] = {
            "objects": {str(A): {"rank": w.fiber_rank(A)} for A in cat.objects},
            "morphisms": {
                f"{A}->{B}": [matrix_to_json(m) for m in w.mor[(A, B)]]
                for A in cat.objects for B in cat.objects if w.mor[(A, B)]
            },
        }
    return doc
