"""JSON schemas for models, fields and reports.

Coefficients are encoded as an integer (real), a pair ``[re, im]`` of
integers, or the exact form ``[re_num, re_den, im_num, im_den]``.

Model spec, monomial triple form::

    {"name": "...", "pqr": {"alpha": [..], "beta": [..], "gamma": [..],
                            "cP": coeff, "cQ": coeff, "cR": coeff}}

Model spec, term list form (``u`` exponents are accepted so that the
validator can reject them with a precise message)::

    {"n": 3, "terms": [{"z": [..], "zbar": [..], "coeff": coeff}, ...]}

Field spec::

    {"n": 3, "F": [poly, ...], "G": poly}   poly = [{"z": [..], "w": m, "coeff": coeff}, ...]
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import GaussRational, HoloPoly, MixedPoly
from .fields import VectorField
from .grading import AlgebraReport, rigid_split, weight_label
from .model import ModelSurface, NondegeneracyCertificate, PQRSpec, build_from_pqr, pqr_from_phi

__all__ = [
    "SchemaError",
    "decode_coeff",
    "encode_coeff",
    "model_from_json",
    "model_to_json",
    "field_from_json",
    "field_to_json",
    "load_model",
    "load_field",
    "report_to_json",
    "report_to_text",
    "dumps",
    "STATED_TOTALS",
]


class SchemaError(ValueError):
    """Input does not follow the JSON schema."""


# Totals printed in the source for the two explicit families, keyed by the
# canonical form of the monomial triple.
STATED_TOTALS = {
    PQRSpec((1, 0, 0), (0, 3, 0), (0, 1, 1)).canonical_key(): 13,
    PQRSpec((1, 1, 0), (0, 2, 0), (0, 1, 1)).canonical_key(): 9,
}


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{what} must be an integer, got {x!r}")
    return x


def _exponents(v, n: int | None, what: str) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise SchemaError(f"{what} must be a list of integers")
    out = tuple(_int(x, what) for x in v)
    if any(x < 0 for x in out):
        raise SchemaError(f"{what} must be nonnegative")
    if n is not None and len(out) != n:
        raise SchemaError(f"{what} must have length {n}")
    return out


def decode_coeff(c) -> GaussRational:
    if isinstance(c, int) and not isinstance(c, bool):
        return GaussRational(c)
    if isinstance(c, list) and len(c) == 2:
        return GaussRational(_int(c[0], "coefficient"), _int(c[1], "coefficient"))
    if isinstance(c, list) and len(c) == 4:
        try:
            return GaussRational.decode(c)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad coefficient {c!r}: {exc}") from None
    raise SchemaError(f"coefficient must be an integer, [re, im] or [re_num, re_den, im_num, im_den], got {c!r}")


def encode_coeff(c: GaussRational) -> list[int]:
    return c.encode()


def _require(obj, key: str, what: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{what} must be a JSON object")
    if key not in obj:
        raise SchemaError(f"{what} is missing {key!r}")
    return obj[key]


def model_from_json(obj) -> ModelSurface:
    """Build a model; raises :class:`SchemaError` or ``ValidationError``."""
    if not isinstance(obj, dict):
        raise SchemaError("model spec must be a JSON object")
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("name must be a string")
    if ("pqr" in obj) == ("terms" in obj):
        raise SchemaError("model spec needs exactly one of 'pqr' or 'terms'")
    if "pqr" in obj:
        p = obj["pqr"]
        if "n" in obj and obj["n"] != 3:
            raise SchemaError("the monomial triple form lives in n = 3")
        spec = PQRSpec(
            _exponents(_require(p, "alpha", "pqr"), 3, "alpha"),
            _exponents(_require(p, "beta", "pqr"), 3, "beta"),
            _exponents(_require(p, "gamma", "pqr"), 3, "gamma"),
            *(decode_coeff(p.get(k, 1)) for k in ("cP", "cQ", "cR")),
        )
        return build_from_pqr(spec, name=name)
    n = _int(_require(obj, "n", "model spec"), "n")
    if n < 1:
        raise SchemaError("n must be positive")
    terms = obj["terms"]
    if not isinstance(terms, list):
        raise SchemaError("terms must be a list")
    out = []
    for t in terms:
        z = _exponents(_require(t, "z", "term"), n, "z")
        zb = _exponents(_require(t, "zbar", "term"), n, "zbar")
        k = _int(t.get("u", 0), "u")
        out.append(((z, zb, k), decode_coeff(_require(t, "coeff", "term"))))
    return ModelSurface(MixedPoly(n, out), name=name)


def model_to_json(model: ModelSurface) -> dict:
    out: dict = {}
    if model.name:
        out["name"] = model.name
    out["n"] = model.n
    if model.pqr is not None:
        out["pqr"] = model.pqr.to_json()
    else:
        out["terms"] = [
            {"z": list(a), "zbar": list(b), **({"u": k} if k else {}), "coeff": encode_coeff(c)}
            for (a, b, k), c in model.phi.sorted_items()
        ]
    return out


def _poly_from_json(obj, n: int) -> HoloPoly:
    if not isinstance(obj, list):
        raise SchemaError("polynomial must be a list of terms")
    terms = []
    for t in obj:
        a = _exponents(_require(t, "z", "polynomial term"), n, "z")
        m = _int(t.get("w", 0), "w")
        if m < 0:
            raise SchemaError("w exponent must be nonnegative")
        terms.append(((a, m), decode_coeff(_require(t, "coeff", "polynomial term"))))
    return HoloPoly(n, terms)


def _poly_to_json(p: HoloPoly) -> list:
    return [{"z": list(a), "w": m, "coeff": encode_coeff(c)} for (a, m), c in p.sorted_items()]


def field_from_json(obj, n: int | None = None) -> VectorField:
    n_obj = _int(_require(obj, "n", "field spec"), "n")
    if n is not None and n_obj != n:
        raise SchemaError(f"field has n = {n_obj} but the model has n = {n}")
    F = _require(obj, "F", "field spec")
    if not isinstance(F, list) or len(F) != n_obj:
        raise SchemaError(f"F must be a list of {n_obj} polynomials")
    return VectorField([_poly_from_json(f, n_obj) for f in F], _poly_from_json(obj.get("G", []), n_obj))


def field_to_json(x: VectorField) -> dict:
    return {"n": x.n, "F": [_poly_to_json(f) for f in x.F], "G": _poly_to_json(x.G)}


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def load_model(path: str) -> ModelSurface:
    return model_from_json(_load(path))


def load_field(path: str, n: int | None = None) -> VectorField:
    return field_from_json(_load(path), n)


def stated_total(model: ModelSurface) -> int | None:
    spec = model.pqr if model.pqr is not None else pqr_from_phi(model.phi)
    if spec is None:
        return None
    return STATED_TOTALS.get(spec.canonical_key())


def certificate_to_json(cert: NondegeneracyCertificate) -> dict:
    return {
        "nondegenerate": cert.verdict,
        "jacobian": None if cert.determinant is None else str(cert.determinant),
        "witness": None if cert.witness is None else str(cert.witness),
        "reason": cert.reason,
    }


def report_to_json(report: AlgebraReport, cert: NondegeneracyCertificate | None = None) -> dict:
    """Plain-data report with a fixed key order."""
    model = report.model
    d = model.d
    comps = []
    for c in report.components:
        rigid, _ = rigid_split(c)
        comps.append(
            {
                "weight": weight_label(c.weight),
                "dim": c.dimension,
                "rigid_dim": len(rigid),
                "basis": [{"text": str(x), **field_to_json(x)} for x in c.basis],
            }
        )
    total = report.total_dimension
    stated = stated_total(model)
    out = {
        "model": {**model_to_json(model), "d": d, "phi": str(model.phi)},
        "certificate": None if cert is None else certificate_to_json(cert),
        "components": comps,
        "totals": {
            "computed": total,
            "stated": stated,
            "agrees": None if stated is None else stated == total,
        },
        "gc": report.gc_dimension(),
        "g_minus": report.dim(Fraction(-1, d)),
        "g_dual": report.dim(1 - Fraction(1, d)),
        "g0": report.dim(0),
        "g1": report.dim(1),
        "closure_failures": list(report.closure_failures),
        "structure": report.structure,
        "diagnostics": report.diagnostics,
    }
    return out


def report_to_text(data: dict) -> str:
    """Human-readable summary of :func:`report_to_json` output."""
    m = data["model"]
    lines = [f"model {m.get('name') or '(unnamed)'}: n = {m['n']}, d = {m['d']}", f"  Im w = {m['phi']}"]
    for c in data["components"]:
        if c["dim"]:
            lines.append(f"  g_{c['weight']}: dim {c['dim']} (rigid {c['rigid_dim']})")
            lines.extend(f"      {b['text']}" for b in c["basis"])
    t = data["totals"]
    line = f"total dimension: {t['computed']}"
    if t["stated"] is not None:
        line += f" (stated {t['stated']}, {'agreement' if t['agrees'] else 'MISMATCH'})"
    lines.append(line)
    lines.append(f"gc: {data['gc']}  g1: {data['g1']}  g_-1/d: {data['g_minus']}  g_1-1/d: {data['g_dual']}")
    st = data["structure"]
    if st:
        if st.get("flags"):
            f = st["flags"]
            lines.append(f"real diagonal rotation: {f['real_diagonal']}  imaginary diagonal rotation: {f['imaginary_diagonal']}")
        if st.get("normal_form"):
            lines.append(f"normal form: {st['normal_form']['family']}")
        disc = st.get("discrepancies", [])
        lines.append(f"discrepancies: {len(disc)}")
        lines.extend(f"  {x}" for x in disc)
    if data["closure_failures"]:
        lines.append(f"bracket closure failures: {len(data['closure_failures'])}")
    return "\n".join(lines)


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
