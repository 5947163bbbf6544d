"""JSON and CSV shapes for every invariant type.

Every emitted record carries a field-descriptor header and a schema
version, so output files are self-describing and reproducible: polygons
are arrays of [x, J] pairs, residues are element strings (comma-separated
coefficient vectors), tame points are flagged by listing their abscissas,
and the generalized point records expose the attained/excluded relation
per p-power position.
"""

from __future__ import annotations

from typing import Any

from .analyzer import EisensteinData
from .polygons import (
    FinePolygon,
    FinePolygonWithResidues,
    InvariantWithUnif,
    PointSpec,
    RamPolygon,
    fine_point_specs,
    ram_point_specs,
)
from .residue_field import BaseField, make_field
from .templates import Template

SCHEMA_VERSION = 1


def field_to_json(base: BaseField) -> dict[str, Any]:
    return {
        "p": base.p,
        "f": base.f,
        "e": base.e,
        "gamma": str(base.gamma),
        "modulus": list(base.fq.modulus),
    }


def field_from_json(data: dict[str, Any]) -> BaseField:
    return make_field(int(data["p"]), int(data["f"]), int(data["e"]), data["gamma"])


def point_spec_to_json(spec: PointSpec) -> dict[str, Any]:
    out: dict[str, Any] = {"x": spec.x, "J": spec.J, "rel": spec.rel.value}
    if spec.rho is not None:
        out["rho"] = str(spec.rho)
    return out


def ram_to_json(P: RamPolygon) -> dict[str, Any]:
    return {
        "n": P.n,
        "vertices": [[x, J] for x, J in P.vertices],
        "point_specs": [point_spec_to_json(s) for s in ram_point_specs(P)],
    }


def ram_from_json(base: BaseField, data: dict[str, Any]) -> RamPolygon:
    return RamPolygon(base.p, int(data["n"]), tuple((x, J) for x, J in data["vertices"]))


def fine_to_json(Pstar: FinePolygon) -> dict[str, Any]:
    return {
        "n": Pstar.n,
        "points": [[x, J] for x, J in Pstar.points],
        "tame": Pstar.tame_abscissas(),
        "hull": [[x, J] for x, J in Pstar.hull.vertices],
        "point_specs": [point_spec_to_json(s) for s in fine_point_specs(Pstar)],
    }


def fine_from_json(base: BaseField, data: dict[str, Any]) -> FinePolygon:
    return FinePolygon(base.p, int(data["n"]), tuple((x, J) for x, J in data["points"]))


def res_to_json(Pres: FinePolygonWithResidues) -> dict[str, Any]:
    out = fine_to_json(Pres.polygon)
    out["points"] = [[x, J, str(rho)] for x, J, rho in Pres.items()]
    out["point_specs"] = [
        point_spec_to_json(s) for s in fine_point_specs(Pres.polygon, Pres.residues)
    ]
    return out


def res_from_json(base: BaseField, data: dict[str, Any]) -> FinePolygonWithResidues:
    points = tuple((x, J) for x, J, _ in data["points"])
    residues = tuple(base.fq.parse(rho) for _, _, rho in data["points"])
    return FinePolygonWithResidues(FinePolygon(base.p, int(data["n"]), points), residues)


def unif_to_json(inv: InvariantWithUnif) -> dict[str, Any]:
    out = res_to_json(inv.res)
    out["phi0"] = str(inv.phi0)
    return out


def unif_from_json(base: BaseField, data: dict[str, Any]) -> InvariantWithUnif:
    return InvariantWithUnif(res_from_json(base, data), base.fq.parse(data["phi0"]))


def template_to_json(T: Template) -> dict[str, Any]:
    return {
        "n": T.n,
        "field": field_to_json(T.base),
        "cutoff": T.cutoff,
        "slots": [
            {"i": i, "k": k, "set": sorted(str(v) for v in values)}
            for (i, k), values in sorted(T.slots.items())
        ],
    }


def template_from_json(data: dict[str, Any]) -> Template:
    base = field_from_json(data["field"])
    slots = {
        (slot["i"], slot["k"]): frozenset(base.fq.parse(v) for v in slot["set"])
        for slot in data["slots"]
    }
    return Template(base, int(data["n"]), slots, data["cutoff"])


def polynomial_to_json(f: EisensteinData) -> dict[str, Any]:
    return {
        "n": f.n,
        "digits": [
            {"i": i, "k": k, "residue": str(d)} for i, k, d in f.nonzero_digits()
        ],
    }


def polynomial_from_json(base: BaseField, data: dict[str, Any]) -> EisensteinData:
    table = {
        (entry["i"], entry["k"]): base.fq.parse(entry["residue"])
        for entry in data["digits"]
    }
    return EisensteinData.from_digit_map(base, int(data["n"]), table)


# ---------------------------------------------------------------------------
# invariant records for the CLI streams


def invariant_to_json(obj) -> dict[str, Any]:
    if isinstance(obj, RamPolygon):
        return ram_to_json(obj)
    if isinstance(obj, FinePolygon):
        return fine_to_json(obj)
    if isinstance(obj, FinePolygonWithResidues):
        return res_to_json(obj)
    if isinstance(obj, InvariantWithUnif):
        return unif_to_json(obj)
    raise TypeError(f"no JSON shape for {type(obj).__name__}")


def _encode_pairs(pairs) -> str:
    return ";".join(":".join(str(part) for part in pair) for pair in pairs)


def _decode_pairs(text: str) -> list[list[str]]:
    if not text:
        return []
    return [item.split(":") for item in text.split(";")]


CSV_COLUMNS = {
    "ram": ["index", "n", "vertices"],
    "fine": ["index", "n", "points", "tame"],
    "res": ["index", "n", "points", "tame"],
    "unif": ["index", "n", "points", "tame", "phi0"],
}


def invariant_to_csv_row(level: str, index: int, obj) -> list[str]:
    """Row form carrying exactly the same data as the JSON record."""
    if level == "ram":
        return [str(index), str(obj.n), _encode_pairs(obj.vertices)]
    if level == "fine":
        return [
            str(index),
            str(obj.n),
            _encode_pairs(obj.points),
            _encode_pairs((x,) for x in obj.tame_abscissas()),
        ]
    polygon = obj.polygon if level == "res" else obj.res.polygon
    res = obj if level == "res" else obj.res
    row = [
        str(index),
        str(polygon.n),
        _encode_pairs((x, J, _flat(rho)) for x, J, rho in res.items()),
        _encode_pairs((x,) for x in polygon.tame_abscissas()),
    ]
    if level == "unif":
        row.append(_flat(obj.phi0))
    return row


def _flat(elem) -> str:
    # element strings use commas, which CSV fields reserve; use dots inside rows
    return str(elem).replace(",", ".")


def _unflat(text: str) -> str:
    return text.replace(".", ",")


def invariant_from_csv_row(base: BaseField, level: str, row: list[str]):
    n = int(row[1])
    if level == "ram":
        return RamPolygon(base.p, n, tuple((int(x), int(J)) for x, J in _decode_pairs(row[2])))
    if level == "fine":
        return FinePolygon(base.p, n, tuple((int(x), int(J)) for x, J in _decode_pairs(row[2])))
    triples = _decode_pairs(row[2])
    points = tuple((int(x), int(J)) for x, J, _ in triples)
    residues = tuple(base.fq.parse(_unflat(rho)) for _, _, rho in triples)
    res = FinePolygonWithResidues(FinePolygon(base.p, n, points), residues)
    if level == "res":
        return res
    return InvariantWithUnif(res, base.fq.parse(_unflat(row[4])))
