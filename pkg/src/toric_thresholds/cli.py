"""toric-thresholds command line interface.

Exit codes: 0 success, 1 validation failure, 2 precondition failure,
3 certificate violation.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import factorial
from pathlib import Path

from . import ratgeom as rg
from .errors import CertificateViolation, ToricError
from .invariants import invariant_bundle, mu_m_unmerged, slice_volume_function
from .io import InputDocument, csv_text, decimal12, dumps, fan_document, load_document, parse_rational, rat
from .kstability import kstability_report
from .thresholds import threshold_report
from .toricvar import check_fan, is_q_fano, validate_fan

G_SAMPLES_PER_PIECE = 8


def _pmap(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def validation_section(doc: InputDocument) -> dict:
    diags = validate_fan(doc.fan)
    out = {"valid": not diags, "diagnostics": [{"kind": d.kind, "message": d.message} for d in diags]}
    if not diags:
        cert = doc.divisor.ample_certificate
        out["divisor_ample"] = cert.ample
        out["ample_reason"] = cert.reason
        out["valid"] = cert.ample
    return out


def polytope_section(D) -> dict:
    P = D.polytope
    vol = rg.volume(P)
    return {
        "vertices": [list(u) for u in P.vertices],
        "volume": vol,
        "degree": factorial(D.rank) * vol,
        "barycenter": list(rg.barycenter(P)),
    }


def thresholds_section(doc: InputDocument) -> dict:
    D = doc.divisor.require_ample()
    rep = threshold_report(D, doc.valuations)
    return {
        "alpha": rep.alpha,
        "delta": rep.delta,
        "alpha_witness": {"vertex": list(rep.alpha_witness[0]), "ray": rep.alpha_witness[1]},
        "delta_rays": list(rep.delta_rays),
        "barycenter": list(rep.barycenter),
        "per_vertex_lct": [{"vertex": list(u), "lct": val} for u, val in rep.per_vertex_lct],
        "certificates": [
            {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "relation": c.relation, "slack": c.slack, "pass": c.passed}
            for c in rep.certificates
        ],
    }


def kstability_section(doc: InputDocument) -> dict:
    check = is_q_fano(doc.fan)
    if not check:
        return {"is_q_fano": False, "reason": check.reason}
    rep = kstability_report(doc.fan)
    return {
        "is_q_fano": True,
        "barycenter": list(rep.barycenter),
        "k_semistable": rep.k_semistable,
        "uniformly_k_stable": rep.uniformly_k_stable,
        "delta": rep.delta,
        "c": rep.c_value,
        "alpha": rep.alpha,
        "alpha_criterion_fires": rep.alpha_criterion_fires,
        "theorem_d_checks": [
            {"valuation": list(ch.valuation), "lhs": ch.lhs, "rhs": ch.rhs, "pass": ch.passed, "equality": ch.equality}
            for ch in rep.theorem_d_checks
        ],
    }


def valuation_section(D, v, m_values) -> dict:
    b = invariant_bundle(D, v, m_values)
    return {
        "vector": list(b.vector),
        "A": b.A,
        "S": b.S,
        "T": b.T,
        "S_via_integral": b.S_integral,
        "levels": [{"m": m, "S_m": s, "T_m": t, "N_m": N} for m, s, t, N in b.levels],
        "slice_volume": {
            "breakpoints": list(b.G.G.breakpoints),
            "pieces": [list(p.coeffs) for p in b.G.G.pieces],
        },
    }


def report_document(doc: InputDocument, jobs: int = 1) -> dict:
    report = {"input": doc.raw, "divisor_source": doc.divisor_source}
    if doc.divisor_source == "polytope":
        report["derived_fan"] = fan_document(doc.fan, doc.divisor)
    report["validation"] = validation_section(doc)
    if not report["validation"]["valid"]:
        return report
    D = doc.divisor
    report["polytope"] = polytope_section(D)
    report["thresholds"] = thresholds_section(doc)
    report["kstability"] = kstability_section(doc)
    vals = list(doc.valuations) or [tuple(Fraction(x) for x in r) for r in doc.fan.rays]
    m_values = range(doc.m_range[0], doc.m_range[1] + 1)
    report["valuations"] = _pmap(lambda v: valuation_section(D, v, m_values), vals, jobs)
    return report


def g_rows(G):
    bps = G.G.breakpoints
    ts = []
    for a, b in zip(bps, bps[1:]):
        h = (b - a) / G_SAMPLES_PER_PIECE
        ts.extend(a + k * h for k in range(G_SAMPLES_PER_PIECE))
    ts.append(bps[-1])
    return [(rat(t), rat(G(t)), decimal12(t), decimal12(G(t))) for t in ts]


def mu_rows(atoms):
    return [(rat(x), rat(w), decimal12(x), decimal12(w)) for x, w in atoms]


# -- commands ---------------------------------------------------------------


def cmd_validate(args) -> int:
    doc = load_document(args.input)
    sec = validation_section(doc)
    sys.stdout.write(dumps({"input": args.input, "divisor_source": doc.divisor_source, **sec}))
    return 0 if sec["valid"] else 1


def load_checked(path) -> InputDocument:
    """Load an input document and raise on an invalid fan."""
    doc = load_document(path)
    check_fan(doc.fan)
    return doc


def _checked(args) -> InputDocument:
    return load_checked(args.input)


def cmd_thresholds(args) -> int:
    doc = _checked(args)
    out = {"input": doc.raw, "divisor_source": doc.divisor_source, "thresholds": thresholds_section(doc)}
    sys.stdout.write(dumps(out))
    return 0


def cmd_kstability(args) -> int:
    doc = _checked(args)
    sec = kstability_section(doc)
    if not sec["is_q_fano"]:
        sys.stderr.write(f"NotQFano: {sec['reason']}\n")
        return 2
    sys.stdout.write(dumps({"input": doc.raw, "kstability": sec}))
    return 0


def cmd_measure(args) -> int:
    doc = _checked(args)
    D = doc.divisor.require_ample()
    if args.v is not None:
        v = tuple(parse_rational(x) for x in args.v.split(","))
    elif doc.valuations:
        v = doc.valuations[0]
    else:
        sys.stderr.write("measure needs --v or a valuation in the input\n")
        return 2
    if len(v) != doc.fan.rank or not any(v):
        sys.stderr.write(f"--v must be a nonzero vector of length {doc.fan.rank}\n")
        return 2
    m = args.m if args.m is not None else doc.m_range[1]
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    G = slice_volume_function(D, v)
    atoms = mu_m_unmerged(D, v, m)
    g_path, mu_path = out_dir / "G.csv", out_dir / f"mu_{m}.csv"
    g_path.write_text(csv_text(("t", "G", "t_decimal", "G_decimal"), g_rows(G)))
    mu_path.write_text(csv_text(("location", "weight", "location_decimal", "weight_decimal"), mu_rows(atoms)))
    sys.stdout.write(dumps({"valuation": list(v), "m": m, "atoms": len(atoms), "files": [g_path.name, mu_path.name]}))
    return 0


def cmd_report(args) -> int:
    doc = load_document(args.input)
    report = report_document(doc, jobs=args.jobs)
    text = dumps(report)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / (Path(args.input).stem + ".report.json")).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report["validation"]["valid"] else 1


def _positive_int(s):
    k = int(s)
    if k < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toric-thresholds", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in [
        ("validate", cmd_validate),
        ("thresholds", cmd_thresholds),
        ("kstability", cmd_kstability),
        ("measure", cmd_measure),
        ("report", cmd_report),
    ]:
        sp = sub.add_parser(name)
        sp.add_argument("input")
        sp.add_argument("--v", help="valuation as comma-separated rationals, e.g. 1,1/2")
        sp.add_argument("--m", type=_positive_int, help="level for the jumping measure")
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--jobs", type=_positive_int, default=1, help="worker threads")
        sp.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CertificateViolation as e:
        sys.stderr.write(f"CertificateViolation: {e}\n")
        return 3
    except ToricError as e:
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
