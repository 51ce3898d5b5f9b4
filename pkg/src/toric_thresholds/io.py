"""JSON input documents, report serialization and CSV rendering."""

from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import ratgeom as rg
from .errors import ValidationError
from .toricvar import Fan, ToricDivisor, anticanonical, normal_fan


class InputError(ValidationError):
    pass


@dataclass(frozen=True)
class InputDocument:
    raw: dict
    fan: Fan
    divisor: ToricDivisor | None
    divisor_source: str  # "given", "anticanonical" or "polytope"
    valuations: tuple
    m_range: tuple


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"expected an integer or 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse rational {x!r}") from e


def _int_vector(xs, n, what):
    if not isinstance(xs, list) or len(xs) != n or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise InputError(f"{what} must be a list of {n} integers, got {xs!r}")
    return tuple(xs)


def parse_document(doc: dict) -> InputDocument:
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    fan_mode = "rays" in doc or "max_cones" in doc or "lattice_rank" in doc
    poly_mode = "inequalities" in doc
    if fan_mode == poly_mode:
        raise InputError("input must contain exactly one of fan-mode (rays/max_cones) or polytope-mode (inequalities)")
    if fan_mode:
        for key in ("lattice_rank", "rays", "max_cones"):
            if key not in doc:
                raise InputError(f"fan-mode input is missing '{key}'")
        n = doc["lattice_rank"]
        if not isinstance(n, int) or n < 1:
            raise InputError("lattice_rank must be a positive integer")
        rays = tuple(_int_vector(r, n, f"ray {i}") for i, r in enumerate(doc["rays"]))
        cones = []
        for k, c in enumerate(doc["max_cones"]):
            if not isinstance(c, list) or not all(isinstance(i, int) and 0 <= i < len(rays) for i in c):
                raise InputError(f"max_cones[{k}] must list ray indices, got {c!r}")
            cones.append(tuple(c))
        fan = Fan(n, rays, tuple(cones))
        div = doc.get("divisor")
        if div is None or div == "anticanonical":
            divisor, source = anticanonical(fan), "anticanonical"
        else:
            if not isinstance(div, list) or len(div) != len(rays):
                raise InputError(f"divisor must list {len(rays)} coefficients")
            divisor, source = ToricDivisor(fan, tuple(parse_rational(b) for b in div)), "given"
    else:
        ineqs = doc["inequalities"]
        if not isinstance(ineqs, list) or not ineqs:
            raise InputError("inequalities must be a nonempty list")
        n = len(ineqs[0].get("normal", [])) if isinstance(ineqs[0], dict) else 0
        if n < 1:
            raise InputError("each inequality needs a nonempty 'normal'")
        hs = []
        for k, h in enumerate(ineqs):
            if not isinstance(h, dict) or "normal" not in h or "offset" not in h:
                raise InputError(f"inequalities[{k}] must have 'normal' and 'offset'")
            normal = _int_vector(h["normal"], n, f"inequalities[{k}].normal")
            if not any(normal):
                raise InputError(f"inequalities[{k}] has a zero normal")
            hs.append(rg.HalfSpace(normal, parse_rational(h["offset"])))
        try:
            fan, divisor = normal_fan(rg.Polytope(tuple(hs), n))
        except (rg.EmptyError, rg.UnboundedError, rg.ZeroVolumeError) as e:
            raise InputError(f"polytope-mode input is not a full-dimensional polytope: {e}") from e
        source = "polytope"
    vals = []
    for k, v in enumerate(doc.get("valuations", [])):
        if not isinstance(v, list) or len(v) != fan.rank:
            raise InputError(f"valuations[{k}] must have {fan.rank} entries")
        vals.append(tuple(parse_rational(x) for x in v))
    m_range = doc.get("m_range", [1, 4])
    if not (isinstance(m_range, list) and len(m_range) == 2 and all(isinstance(x, int) for x in m_range)
            and 1 <= m_range[0] <= m_range[1]):
        raise InputError("m_range must be [m_min, m_max] with 1 <= m_min <= m_max")
    return InputDocument(doc, fan, divisor, source, tuple(vals), tuple(m_range))


def load_document(path) -> InputDocument:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from e
    return parse_document(doc)


def fan_document(fan: Fan, divisor: ToricDivisor | None = None) -> dict:
    doc = {
        "lattice_rank": fan.rank,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }
    if divisor is not None:
        doc["divisor"] = [rat(b) for b in divisor.coeffs]
    return doc


def rat(x) -> str:
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return str(Fraction(x))


def decimal12(x) -> str:
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 12
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, "g") if d != 0 else "0"


def jsonable(obj):
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return rat(obj)
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2) + "\n"


def csv_text(header, rows) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
