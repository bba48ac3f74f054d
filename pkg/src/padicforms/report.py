"""Versioned JSON reports and a structural validator.

Reports are deterministic: keys are sorted, rationals are numerator/denominator
strings, and no timestamps or machine data are embedded, so identical run
manifests produce identical bytes.
"""

import json
from fractions import Fraction

SCHEMA_VERSION = "1"

# kind -> {field: type spec}; "?" marks optional fields.  A type spec is a
# python type, a list [elem spec], or a dict for nested objects.
SCHEMA = {
    "cohomology": {
        "version": str, "kind": str, "manifest": dict,
        "degrees": [dict], "products?": [dict], "stable?": dict,
        "diagnostics?": dict,
    },
    "massey": {
        "version": str, "kind": str, "manifest": dict,
        "degree": int, "representative": [str], "indeterminacy": [[str]],
        "defining_system": dict, "vanishes": bool, "verdict?": str,
        "sq_route?": dict,
    },
    "verify": {
        "version": str, "kind": str, "manifest": dict,
        "suites": [dict], "passed": bool,
    },
    "space": {
        "version": str, "kind": str, "manifest": dict,
        "name": str, "cells": [int], "euler_characteristic": int,
        "text": str,
    },
    "lattice": {
        "version": str, "kind": str, "manifest": dict,
        "level": int, "weight": int, "prime": int,
        "degrees": [dict], "closure_equals_naive_span": bool,
    },
}


def rat(x):
    """Canonical string form of an integer or Fraction."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def vec(values):
    return [rat(x) for x in values]


def group_payload(report):
    """JSON shape of an AbelianGroupReport."""
    return {
        "free_rank": report.free_rank,
        "torsion": list(report.torsion),
        "prime_to_p_torsion": list(report.prime_to_p_torsion),
        "generators": [vec(g) for g in report.generators],
    }


def cohomology_report(manifest, reports, products=None, stable=None,
                      diagnostics=None):
    degrees = []
    for q in sorted(reports):
        payload = group_payload(reports[q])
        payload["degree"] = q
        degrees.append(payload)
    out = {
        "version": SCHEMA_VERSION,
        "kind": "cohomology",
        "manifest": manifest,
        "degrees": degrees,
    }
    if products is not None:
        out["products"] = [
            {"left": [k[0], k[1]], "right": [k[2], k[3]],
             "coordinates": None if v is None else vec(v)}
            for k, v in sorted(products.items())]
    if stable is not None:
        out["stable"] = {str(q): bool(v) for q, v in sorted(stable.items())}
    if diagnostics is not None:
        out["diagnostics"] = diagnostics
    return out


def massey_report(manifest, result, extra=None):
    out = {
        "version": SCHEMA_VERSION,
        "kind": "massey",
        "manifest": manifest,
        "degree": result.degree,
        "representative": vec(result.representative),
        "indeterminacy": [vec(g) for g in result.indeterminacy],
        "defining_system": {k: vec(v) for k, v in result.defining_system.items()},
        "vanishes": result.vanishes,
    }
    if extra:
        out.update(extra)
    return out


def verify_report(manifest, suites):
    return {
        "version": SCHEMA_VERSION,
        "kind": "verify",
        "manifest": manifest,
        "suites": suites,
        "passed": all(s.get("passed") for s in suites),
    }


def lattice_report(manifest, level):
    """Serialize an OmegaLevel basis: monomials as exponent vectors plus the
    sorted dx index set, one block per form degree."""
    degrees = []
    for k in sorted(level.basis):
        degrees.append({
            "degree": k,
            "monomials": [{"exponents": list(m.exponents), "dx": list(m.dx)}
                          for m in level.basis[k]],
            "differential": [[rat(x) for x in row]
                             for row in level.diff_matrix(k)],
        })
    comparison = level.closure_comparison()
    return {
        "version": SCHEMA_VERSION,
        "kind": "lattice",
        "manifest": manifest,
        "level": level.n,
        "weight": level.weight,
        "prime": level.prime,
        "degrees": degrees,
        "closure_equals_naive_span": comparison["closure_equals_naive_span"],
    }


def space_report(manifest, space):
    return {
        "version": SCHEMA_VERSION,
        "kind": "space",
        "manifest": manifest,
        "name": space.name,
        "cells": [len(level) for level in space.simplices],
        "euler_characteristic": space.euler_characteristic(),
        "text": space.dump(),
    }


def validate_report(obj):
    """Structural check against the shipped schema; returns a list of errors."""
    errors = []
    kind = obj.get("kind")
    if kind not in SCHEMA:
        return [f"unknown report kind {kind!r}"]
    if obj.get("version") != SCHEMA_VERSION:
        errors.append(f"version {obj.get('version')!r} != {SCHEMA_VERSION!r}")
    spec = SCHEMA[kind]
    required = {k.rstrip("?"): v for k, v in spec.items() if not k.endswith("?")}
    optional = {k.rstrip("?"): v for k, v in spec.items() if k.endswith("?")}
    for key, want in required.items():
        if key not in obj:
            errors.append(f"missing field {key!r}")
            continue
        errors.extend(_check_type(obj[key], want, key))
    for key, want in optional.items():
        if key in obj:
            errors.extend(_check_type(obj[key], want, key))
    for key in obj:
        if key not in required and key not in optional:
            errors.append(f"unexpected field {key!r}")
    return errors


def _check_type(value, want, path):
    if isinstance(want, list):
        if not isinstance(value, list):
            return [f"{path}: expected a list"]
        out = []
        for i, item in enumerate(value):
            out.extend(_check_type(item, want[0], f"{path}[{i}]"))
        return out
    if isinstance(want, dict):
        if not isinstance(value, dict):
            return [f"{path}: expected an object"]
        return []
    if want is int and isinstance(value, bool):
        return [f"{path}: expected an integer"]
    if not isinstance(value, want):
        return [f"{path}: expected {want.__name__}"]
    return []


def dump_json(obj):
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"
