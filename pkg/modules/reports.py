"""
JSON codec and plain-text rendering for every report the toolkit produces.

Every JSON object carries a "kind" tag so from_json can rebuild the matching
type; from_json(to_json(report)) == report for all of them. Text layouts live
in templates/ and are filled with str.format.
"""

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from modules.congruence import (
    CongruenceStatement,
    Counterexample,
    KimingOlssonReport,
    MultipartitionRouteReport,
    VerificationReport,
    WitnessReport,
)
from modules.errors import PlaneCongError
from modules.periodicity import PeriodCertificate
from modules.search import ScanResult, ScanRow, SearchConfig, SearchResult

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"


@dataclass(frozen=True)
class SeriesListing:
    """Leading coefficients of one generating function, as printed by `series`."""

    label: str
    modulus: int
    coefficients: tuple

    @property
    def passed(self):
        return True


@dataclass(frozen=True)
class OracleValue:
    """Exact count from an enumeration oracle."""

    counter: str
    n: int
    value: int
    k: int = None
    parts: str = None

    @property
    def passed(self):
        return True


@lru_cache(maxsize=None)
def _load_template(name):
    """
    Load a text template from the templates directory.

    Args:
        name (str): Template name without the .txt suffix

    Returns:
        str: Template content
    """
    path = TEMPLATES_DIR / f"{name}.txt"
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _format(name, **kwargs):
    return _load_template(name).format(**kwargs).rstrip("\n")


# --- JSON -------------------------------------------------------------------


def _verification_to_dict(report, timing):
    data = {
        "kind": "verification",
        "statement": report.statement.to_dict(),
        "method": report.method,
        "bound": report.bound,
        "checks": report.checks_performed,
        "verdict": report.verdict,
    }
    if report.counterexample is not None:
        data["counterexample"] = report.counterexample.to_dict()
    if report.certificate is not None:
        data["certificate"] = report.certificate.to_dict()
    if timing:
        data["elapsed_ms"] = round(report.elapsed_ms, 3)
    return data


def _verification_from_dict(data):
    cex = data.get("counterexample")
    cert = data.get("certificate")
    return VerificationReport(
        statement=CongruenceStatement.from_dict(data["statement"]),
        method=data["method"],
        checks_performed=int(data["checks"]),
        bound=int(data["bound"]),
        verdict=data["verdict"],
        counterexample=None if cex is None else Counterexample(
            int(cex["n"]), int(cex["lhs_value"]), int(cex["rhs_value"])
        ),
        certificate=None if cert is None else PeriodCertificate.from_dict(cert),
        elapsed_ms=float(data.get("elapsed_ms", 0.0)),
    )


def to_dict(obj, timing=True):
    """
    Plain JSON-ready dict for a report.

    Args:
        obj: Any report type listed in the module docstring
        timing (bool): Include elapsed_ms fields (off for byte-stable output)

    Raises:
        PlaneCongError: For an object with no JSON form
    """
    if isinstance(obj, VerificationReport):
        return _verification_to_dict(obj, timing)
    if isinstance(obj, PeriodCertificate):
        return {"kind": "certificate", **obj.to_dict(),
                "closed_form_is_minimal": obj.closed_form_is_minimal}
    if isinstance(obj, SearchResult):
        data = {
            "kind": "search",
            "config": obj.config.to_dict(),
            "results": [_verification_to_dict(r, timing) for r in obj.results],
        }
        if timing:
            data["elapsed_ms"] = round(obj.elapsed_ms, 3)
        return data
    if isinstance(obj, ScanResult):
        data = {
            "kind": "scan",
            "config": obj.config.to_dict(),
            "rows": [{"prime": r.prime, "alpha": r.alpha, "witness": r.witness} for r in obj.rows],
        }
        if timing:
            data["elapsed_ms"] = round(obj.elapsed_ms, 3)
        return data
    if isinstance(obj, WitnessReport):
        return {
            "kind": "witness",
            "case": obj.case,
            "modulus": obj.modulus,
            "coefficients": list(obj.coefficients),
            "checked": [list(pair) for pair in obj.checked],
            "condition": obj.condition,
            "holds": obj.holds,
        }
    if isinstance(obj, MultipartitionRouteReport):
        return {
            "kind": "route",
            "horizon": obj.horizon,
            "vanishing": [list(pair) for pair in obj.vanishing],
            "identity_holds": obj.identity_holds,
            "conclusions": [_verification_to_dict(r, timing) for r in obj.conclusions],
        }
    if isinstance(obj, KimingOlssonReport):
        return {
            "kind": "kiming-olsson",
            "prime": obj.prime,
            "horizon": obj.horizon,
            "rows": [list(row) for row in obj.rows],
        }
    if isinstance(obj, SeriesListing):
        return {"kind": "series", "label": obj.label, "modulus": obj.modulus,
                "coefficients": list(obj.coefficients)}
    if isinstance(obj, OracleValue):
        return {"kind": "oracle", "counter": obj.counter, "n": obj.n, "k": obj.k,
                "parts": obj.parts, "value": obj.value}
    raise PlaneCongError(f"no JSON form for {type(obj).__name__}")


def from_dict(data):
    kind = data.get("kind")
    if kind == "verification":
        return _verification_from_dict(data)
    if kind == "certificate":
        return PeriodCertificate.from_dict(data)
    if kind == "search":
        return SearchResult(
            SearchConfig.from_dict(data["config"]),
            tuple(_verification_from_dict(r) for r in data["results"]),
            float(data.get("elapsed_ms", 0.0)),
        )
    if kind == "scan":
        return ScanResult(
            SearchConfig.from_dict(data["config"]),
            tuple(ScanRow(int(r["prime"]), int(r["alpha"]), r["witness"]) for r in data["rows"]),
            float(data.get("elapsed_ms", 0.0)),
        )
    if kind == "witness":
        return WitnessReport(
            data["case"],
            int(data["modulus"]),
            tuple(int(c) for c in data["coefficients"]),
            tuple((int(e), int(c)) for e, c in data["checked"]),
            data["condition"],
            bool(data["holds"]),
        )
    if kind == "route":
        return MultipartitionRouteReport(
            int(data["horizon"]),
            tuple((int(a), bool(ok)) for a, ok in data["vanishing"]),
            bool(data["identity_holds"]),
            tuple(_verification_from_dict(r) for r in data["conclusions"]),
        )
    if kind == "kiming-olsson":
        return KimingOlssonReport(
            int(data["prime"]),
            int(data["horizon"]),
            tuple((int(a), bool(p), bool(o)) for a, p, o in data["rows"]),
        )
    if kind == "series":
        return SeriesListing(data["label"], int(data["modulus"]),
                             tuple(int(c) for c in data["coefficients"]))
    if kind == "oracle":
        return OracleValue(data["counter"], int(data["n"]), int(data["value"]),
                           data.get("k"), data.get("parts"))
    raise PlaneCongError(f"unknown report kind {kind!r}")


def to_json(obj, timing=True):
    return json.dumps(to_dict(obj, timing), indent=2)


def from_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PlaneCongError(f"malformed report JSON: {e}")
    if not isinstance(data, dict):
        raise PlaneCongError("a report must be a JSON object")
    return from_dict(data)


# --- text -------------------------------------------------------------------


def _render_verification(report):
    details = ""
    if report.counterexample is not None:
        cex = report.counterexample
        details = f"\ncounterex : n={cex.n}: lhs={cex.lhs_value}, rhs={cex.rhs_value}"
    elif report.certificate is not None:
        cert = report.certificate
        details = f"\nperiod    : {cert.period} (F_{cert.prime} mod {cert.prime})"
    return _format(
        "verification",
        statement=report.statement.describe(),
        method=report.method,
        bound=report.bound,
        checks=report.checks_performed,
        verdict=report.verdict,
        details=details,
    )


def _render_certificate(cert):
    minimal = "yes" if cert.closed_form_is_minimal else "no (single copy, N >= 2: a period, not the least)"
    return _format(
        "certificate",
        period=cert.period,
        prime=cert.prime,
        exponent=cert.exponent,
        multiset=cert.multiset,
        m_of_s=cert.m_of_s,
        b_of_s=cert.b_of_s,
        minimal=minimal,
    )


def _render_witness(report):
    checked = ", ".join(f"q^{e}:{c}" for e, c in report.checked)
    return _format(
        "witness",
        case=report.case,
        arithmetic=f"mod {report.modulus}" if report.modulus else "integers",
        polynomial=" ".join(str(c) for c in report.coefficients),
        checked=checked,
        condition=report.condition,
        holds="yes" if report.holds else "NO",
    )


def _render_search(result):
    rows = "\n".join(
        f"  {r.statement.describe()}   [B={r.bound}]" for r in result.results
    )
    return _format(
        "search",
        prime=result.config.prime,
        max_terms=result.config.max_terms_per_side,
        count=len(result.results),
        rows=rows,
    )


def _render_scan(result):
    header = f"{'ell':>5} {'alpha':>5} {'witness n':>10}"
    rows = "\n".join(
        f"{r.prime:>5} {r.alpha:>5} {('-' if r.witness is None else r.witness):>10}"
        for r in result.rows
    )
    vanishing = [f"({r.prime},{r.alpha})" for r in result.rows if r.witness is None]
    return _format(
        "scan",
        limit=result.config.scan_prime_limit,
        header=header,
        rows=rows,
        vanishing=", ".join(vanishing) or "none",
    )


def _render_route(report):
    lines = [f"multipartition route, horizon {report.horizon}"]
    for a, ok in report.vanishing:
        lines.append(f"  p_2(5n+{a}) == 0 (mod 5): {'yes' if ok else 'NO'}")
    lines.append(f"  pl_2(n) == p_2(n) - p_2(n-1): {'yes' if report.identity_holds else 'NO'}")
    for r in report.conclusions:
        lines.append(f"  {r.statement.describe()}: {r.verdict}")
    return "\n".join(lines)


def _render_kiming_olsson(report):
    lines = [f"p_{report.prime - 3}({report.prime}n+a) == 0 (mod {report.prime}), horizon {report.horizon}"]
    lines.append(f"{'a':>4} {'predicted':>10} {'observed':>10}")
    for a, predicted, observed in report.rows:
        lines.append(f"{a:>4} {str(predicted):>10} {str(observed):>10}")
    return "\n".join(lines)


def render_text(obj):
    """Human-readable form of any report; verdicts match the JSON form."""
    if isinstance(obj, VerificationReport):
        return _render_verification(obj)
    if isinstance(obj, PeriodCertificate):
        return _render_certificate(obj)
    if isinstance(obj, SearchResult):
        return _render_search(obj)
    if isinstance(obj, ScanResult):
        return _render_scan(obj)
    if isinstance(obj, WitnessReport):
        return _render_witness(obj)
    if isinstance(obj, MultipartitionRouteReport):
        return _render_route(obj)
    if isinstance(obj, KimingOlssonReport):
        return _render_kiming_olsson(obj)
    if isinstance(obj, SeriesListing):
        return " ".join(str(c) for c in obj.coefficients)
    if isinstance(obj, OracleValue):
        return str(obj.value)
    raise PlaneCongError(f"no text form for {type(obj).__name__}")
