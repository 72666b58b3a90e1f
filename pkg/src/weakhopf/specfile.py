"""Canonical JSON files holding algebras and laws as sparse structure constants.

Layout::

    {"field": {"field": "Q"},
     "algebras": {name: {"basis": [...], "mu": [[i, j, k, c]], "eta": [[k, c]],
                         "delta": [[i, j, k, c]], "eps": [[i, c]], "antipode": [[i, j, c]]}},
     "laws": {name: {"A": name, "B": name, "psi": [[a, b, b', a', c]], "phi": [[b, a, a', b', c]]}}}

``mu`` lists μ(e_i⊗e_j) ∋ c·e_k, ``delta`` lists Δ(e_i) ∋ c·e_j⊗e_k, ``antipode``
lists S(e_i) ∋ c·e_j.  Coefficients are strings in the declared field.
Serialization sorts every list, so emit → parse → emit is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from dataclasses import field as dc_field
from pathlib import Path

from .errors import ParseError
from .linalg import K, DenseMap, LinMap, Space
from .scalars import QQ, Field, make_field
from .wdl import WeakDistLaw
from .wha import WeakBialgebra, WeakHopfAlgebra

ALGEBRA_KEYS = ("basis", "mu", "eta", "delta", "eps", "antipode")


@dataclass
class SpecFile:
    field: Field = QQ
    algebras: dict = dc_field(default_factory=dict)
    laws: dict = dc_field(default_factory=dict)

    @classmethod
    def collect(cls, *objs, field: Field | None = None) -> "SpecFile":
        """Gather algebras and laws, pulling in each law's factors under their names."""
        spec = cls(field or _first_field(objs))
        for o in objs:
            if isinstance(o, WeakDistLaw):
                spec.add_law(o)
            else:
                spec.add_algebra(o)
        return spec

    def add_algebra(self, H: WeakBialgebra, name: str | None = None) -> str:
        for k, v in self.algebras.items():
            if v is H:
                return k
        base = name or H.name or f"H{len(self.algebras)}"
        key, n = base, 1
        while key in self.algebras:
            n += 1
            key = f"{base}_{n}"
        self.algebras[key] = H
        return key

    def add_law(self, law: WeakDistLaw, name: str | None = None) -> str:
        self.add_algebra(law.A)
        self.add_algebra(law.B)
        key = name or law.name or f"law{len(self.laws)}"
        self.laws[key] = law
        return key

    def name_of(self, H: WeakBialgebra) -> str:
        for k, v in self.algebras.items():
            if v is H:
                return k
        raise KeyError(H.name)

    def __getitem__(self, name: str):
        if name in self.algebras:
            return self.algebras[name]
        return self.laws[name]

    def __contains__(self, name: str) -> bool:
        return name in self.algebras or name in self.laws

    def to_dict(self) -> dict:
        F = self.field
        return {
            "field": F.descriptor,
            "algebras": {k: algebra_entry(H, F) for k, H in sorted(self.algebras.items())},
            "laws": {
                k: law_entry(law, self.name_of(law.A), self.name_of(law.B), F)
                for k, law in sorted(self.laws.items())
            },
        }

    def dumps(self) -> str:
        return dumps(self.to_dict())

    def dump(self, path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")


def _first_field(objs) -> Field:
    for o in objs:
        return o.field
    return QQ


# ---------------------------------------------------------------------------
# Writing


def _sparse(m: LinMap, F: Field) -> list:
    """Sorted [*domain_index, *codomain_index, coeff] rows of a map."""
    rows = []
    for idx in m.domain.basis():
        for out, c in m.image(idx).items():
            rows.append([*idx, *out, F.format(c)])
    return sorted(rows, key=lambda r: r[:-1])


def algebra_entry(H: WeakBialgebra, F: Field | None = None) -> dict:
    F = F or H.field
    entry = {
        "basis": list(H.labels),
        "mu": _sparse(H.mu, F),
        "eta": _sparse(H.eta, F),
        "delta": _sparse(H.delta, F),
        "eps": _sparse(H.eps, F),
    }
    if isinstance(H, WeakHopfAlgebra):
        entry["antipode"] = _sparse(H.antipode, F)
    return entry


def law_entry(law: WeakDistLaw, a_name: str, b_name: str, F: Field | None = None) -> dict:
    F = F or law.field
    entry = {"A": a_name, "B": b_name, "psi": _sparse(law.psi, F)}
    if law.phi is not None:
        entry["phi"] = _sparse(law.phi, F)
    return entry


def _encode(obj, indent: int) -> str:
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_encode(v, indent + 2)}" for k, v in sorted(obj.items())]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        items = [inner + _encode(x, indent + 2) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def dumps(data: dict) -> str:
    """Canonical text: sorted keys, one sparse entry per line, trailing newline."""
    return _encode(data, 0) + "\n"


# ---------------------------------------------------------------------------
# Reading


def _coeff(F: Field, raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ParseError(f"coefficient must be a string or integer, got {raw!r}", where)
    try:
        return F.parse(raw) if isinstance(raw, str) else F.coerce(raw)
    except (ValueError, ArithmeticError) as exc:
        raise ParseError(f"unparseable coefficient {raw!r}: {exc}", where) from None


def _rows(entries, dims: tuple, F: Field, where: str) -> dict:
    """Parse [*indices, coeff] rows into {indices: coeff}, checking ranges."""
    if not isinstance(entries, list):
        raise ParseError("expected a list of entries", where)
    out: dict = {}
    for n, row in enumerate(entries):
        at = f"{where}[{n}]"
        if not isinstance(row, list) or len(row) != len(dims) + 1:
            raise ParseError(f"expected {len(dims)} indices and a coefficient", at)
        idx = row[:-1]
        for i, (v, d) in enumerate(zip(idx, dims)):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < d:
                raise ParseError(f"index #{i + 1} = {v!r} out of range 0..{d - 1}", at)
        key = tuple(idx)
        if key in out:
            raise ParseError(f"duplicate entry for {key}", at)
        out[key] = _coeff(F, row[-1], at)
    return out


def _map(domain: Space, codomain: Space, table: dict, F: Field) -> DenseMap:
    nd = domain.nfactors
    images: dict = {}
    for key, c in table.items():
        images.setdefault(key[:nd], {})[key[nd:]] = c
    return DenseMap.from_images(domain, codomain, lambda i: images.get(i, {}), F)


def parse_algebra(name: str, raw, F: Field) -> WeakBialgebra:
    where = f"algebras.{name}"
    if not isinstance(raw, dict):
        raise ParseError("algebra entry must be an object", where)
    for k in raw:
        if k not in ALGEBRA_KEYS:
            raise ParseError(f"unknown key {k!r}", where)
    for k in ALGEBRA_KEYS[:5]:
        if k not in raw:
            raise ParseError(f"missing key {k!r}", where)
    basis = raw["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise ParseError("basis must be a list of strings", f"{where}.basis")
    d = len(basis)
    if d == 0:
        raise ParseError("dimension must be positive", f"{where}.basis")
    if len(set(basis)) != d:
        raise ParseError("basis labels must be distinct", f"{where}.basis")
    H = Space((d,))
    maps = {
        "mu": (H @ H, H),
        "eta": (K, H),
        "delta": (H, H @ H),
        "eps": (H, K),
        "antipode": (H, H),
    }
    built = {}
    for k, (dom, cod) in maps.items():
        if k not in raw:
            continue
        dims = (d,) * (dom.nfactors + cod.nfactors)
        built[k] = _map(dom, cod, _rows(raw[k], dims, F, f"{where}.{k}"), F)
    alg = WeakBialgebra(F, built["mu"], built["eta"], built["delta"], built["eps"], tuple(basis), name)
    return alg.with_antipode(built["antipode"]) if "antipode" in built else alg


def parse_law(name: str, raw, algebras: dict, F: Field) -> WeakDistLaw:
    where = f"laws.{name}"
    if not isinstance(raw, dict):
        raise ParseError("law entry must be an object", where)
    for k in raw:
        if k not in ("A", "B", "psi", "phi"):
            raise ParseError(f"unknown key {k!r}", where)
    for k in ("A", "B", "psi"):
        if k not in raw:
            raise ParseError(f"missing key {k!r}", where)
    for k in ("A", "B"):
        if raw[k] not in algebras:
            raise ParseError(f"unknown algebra {raw[k]!r}", f"{where}.{k}")
    A, B = algebras[raw["A"]], algebras[raw["B"]]
    AB, BA = A.space @ B.space, B.space @ A.space
    da, db = A.dim, B.dim
    psi = _map(AB, BA, _rows(raw["psi"], (da, db, db, da), F, f"{where}.psi"), F)
    phi = None
    if raw.get("phi") is not None:
        phi = _map(BA, AB, _rows(raw["phi"], (db, da, da, db), F, f"{where}.phi"), F)
    return WeakDistLaw(A, B, psi, phi, name)


def loads(text: str) -> SpecFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object", "$")
    for k in raw:
        if k not in ("field", "algebras", "laws"):
            raise ParseError(f"unknown key {k!r}", "$")
    try:
        F = make_field(raw.get("field", {"field": "Q"}))
    except (ValueError, KeyError, TypeError, ArithmeticError) as exc:
        raise ParseError(f"bad field descriptor: {exc}", "field") from None
    spec = SpecFile(F)
    algs = raw.get("algebras", {})
    laws = raw.get("laws", {})
    if not isinstance(algs, dict) or not isinstance(laws, dict):
        raise ParseError("algebras and laws must be objects", "$")
    for name, entry in algs.items():
        spec.algebras[name] = parse_algebra(name, entry, F)
    for name, entry in laws.items():
        spec.laws[name] = parse_law(name, entry, spec.algebras, F)
    return spec


def load(path) -> SpecFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    return loads(text)
