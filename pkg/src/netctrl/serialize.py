"""Structured-text (YAML) documents for reports, certificates and verification runs.

Every document starts with ``format`` and ``version`` keys. Rationals are
written as ``"p/q"`` strings (plain integers when the denominator is 1);
number-field elements as polynomial strings in ``x`` with the modulus kept
alongside. Nothing time-dependent goes into a payload, so identical inputs
give byte-identical documents.
"""
from __future__ import annotations

from fractions import Fraction

import yaml

from netctrl.exactalg import FieldElement, IntegerPolynomial, NumberField, format_poly, parse_poly
from netctrl.exactalg.poly import to_integer_primitive

FORMAT = "netctrl-report"
VERSION = 1


class FormatError(ValueError):
    pass


def scalar_to_text(x) -> str:
    if isinstance(x, FieldElement):
        return format_poly(x.c)
    return str(Fraction(x))


def scalar_from_text(text: str, modulus: IntegerPolynomial | None = None):
    if modulus is None or modulus.degree <= 1:
        return Fraction(text)
    return NumberField(modulus).element(parse_poly(text))


def modulus_text(f: IntegerPolynomial) -> str:
    return format_poly(f.coeffs)


def modulus_from_text(text: str) -> IntegerPolynomial:
    return to_integer_primitive(parse_poly(text))


def eigen_block(lam, vector, modulus: IntegerPolynomial) -> dict:
    return {
        "eigenvalue": scalar_to_text(lam),
        "modulus": modulus_text(modulus),
        "vector": [scalar_to_text(v) for v in vector],
    }


def document(kind: str, body: dict) -> dict:
    return {"format": FORMAT, "version": VERSION, "kind": kind, **body}


def dump(doc: dict) -> str:
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)


def load(text: str, kind: str | None = None) -> dict:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise FormatError(f"not a structured-text document: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise FormatError("missing netctrl-report header")
    if doc.get("version") != VERSION:
        raise FormatError(f"unsupported document version {doc.get('version')!r}")
    if kind is not None and doc.get("kind") != kind:
        raise FormatError(f"expected a {kind} document, got {doc.get('kind')!r}")
    return doc


def report_to_dict(rep) -> dict:
    """Body of a controllability report document."""
    return document("controllability", {
        "n": rep.graph.n,
        "edges": [list(e) for e in rep.graph.edges()],
        "leaders": list(rep.leaders),
        "controllable": rep.controllable,
        "kalman_controllable": rep.kalman_controllable,
        "shared_eigenvalue_found": rep.shared_eigenvalue_found,
        "gcd": format_poly(rep.gcd_poly.coeffs),
        "certificates": [
            {**eigen_block(c.eigenvalue, c.vector, c.modulus), "support": list(c.support)}
            for c in rep.certificates
        ],
    })


def report_from_dict(doc: dict):
    """Rebuild a :class:`ControllabilityReport`, re-running its consistency checks."""
    from netctrl.controllability import ControllabilityReport, EigCertificate
    from netctrl.graph import graph_from_edges

    g = graph_from_edges(doc["n"], [tuple(e) for e in doc["edges"]])
    certs = []
    for c in doc["certificates"]:
        f = modulus_from_text(c["modulus"])
        lam = scalar_from_text(c["eigenvalue"], f)
        vec = tuple(scalar_from_text(v, f) for v in c["vector"])
        certs.append(EigCertificate(lam, vec, tuple(c["support"]), f))
    return ControllabilityReport(
        g,
        tuple(doc["leaders"]),
        doc["kalman_controllable"],
        doc["shared_eigenvalue_found"],
        modulus_from_text(doc["gcd"]),
        tuple(certs),
    )


def dcd_to_dict(c) -> dict:
    return {"pair": [c.p, c.q], "adjacent": c.adjacent, "eigenvalue": scalar_to_text(c.eigenvalue),
            "vector": [scalar_to_text(v) for v in c.vector]}


def tcd_to_dict(c) -> dict:
    return {"triple": [c.p, c.q, c.r], "class": c.topology_class,
            "eigenvalue": scalar_to_text(c.eigenvalue), "vector": [scalar_to_text(v) for v in c.vector]}


def qcd_to_dict(c) -> dict:
    return {"quad": list(c.quad), "outside": c.k, "catalog_code": c.catalog_code.hex(),
            "eigenvalue": scalar_to_text(c.eigenvalue), "vector": [scalar_to_text(v) for v in c.vector]}


def design_to_dict(out, spec_dict: dict) -> dict:
    return document("design", {
        "spec": spec_dict,
        "n": out.graph.n,
        "edges": [list(e) for e in out.graph.edges()],
        "sigma": out.sigma,
        "eigenvalue": out.eigenvalue,
        "eta": list(out.eta),
        "verified": True,
    })
