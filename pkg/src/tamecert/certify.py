"""Certificate reports for diagonal algebras and symmetric pairs.

Roots enter every verdict only through the lower bound ``mu`` of a stratum,
so a verdict stays valid for any true root set lying above the bound.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .exact import fmt_q
from .liealg.chevalley import ChevalleyAlgebra, chevalley
from .liealg.roots import cartan_matrix, classify_cartan
from .pairs import SymmetricPair, class_lambdas, enumerate_strata_pair, nice_pair_check, pair_classes
from .quasib import (
    TameVerdictInput,
    b_n_poly,
    certify_membership,
    conic_tame_along,
    integer_weight_vectors,
    tame_along,
    weak_tame_along,
)
from .strata import Stratum, delta_of_algebra, enumerate_strata_diagonal, stratum_classes
from .weyl import BPoly, WeightVector, euler_poly, fourier, theta

SCHEMA = 1
INFINITY = "infinity"
KINDS = ("ConicTame", "Tame", "DeltaTame", "WeaklyTame", "NotCertified")


@dataclass(frozen=True)
class Verdict:
    kind: str
    delta: Fraction | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown verdict {self.kind!r}")
        if self.kind == "DeltaTame" and not (self.delta is not None and self.delta > 0):
            raise ValueError("DeltaTame carries a positive delta")

    def to_json(self):
        return {"kind": self.kind, "delta": None if self.delta is None else fmt_q(self.delta)}


@dataclass
class CertificateReport:
    subject: dict
    strata: list
    global_: dict
    assumptions: list
    provenance: dict
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "subject": self.subject,
            "strata": self.strata,
            "global": self.global_,
            "assumptions": self.assumptions,
            "provenance": self.provenance,
        }
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return canonical_json(self.to_json())

    @property
    def certified(self) -> bool:
        g = self.global_
        return bool(g["weakly_tame"]) and not g["incomplete"]


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _q_or_inf(x):
    return INFINITY if x is None else fmt_q(x)


def stratum_verdict(s: Stratum) -> tuple[Verdict, TameVerdictInput | None]:
    if s.mu_bound is None or (s.codim > 0 and s.trace_t <= 0):
        return Verdict("NotCertified"), None
    v = TameVerdictInput(roots=(s.mu_bound,), trace=s.trace_t, codim=s.codim, conic=s.conic,
                         conormal_escape=not s.distinguished)
    if conic_tame_along(v):
        return Verdict("ConicTame"), v
    if tame_along(v):
        return Verdict("Tame"), v
    if weak_tame_along(v):
        return Verdict("WeaklyTame"), v
    # mu < 0 here, so delta-tame for every delta below -t/mu
    return Verdict("DeltaTame", -s.trace_t / s.mu_bound), v


def stratum_delta(s: Stratum):
    """Supremum of admissible ``delta`` on one stratum; ``None`` means unbounded."""
    if s.codim == 0 or s.mu_bound is None or s.mu_bound >= 0:
        return None
    return -s.trace_t / s.mu_bound


def _stratum_json(s: Stratum, verdict: Verdict) -> dict:
    return {
        "class_id": s.class_id,
        "p_label": s.p_label,
        "orbit": s.orbit_label,
        "codim": s.codim,
        "trace": fmt_q(s.trace_t),
        "mu_bound": None if s.mu_bound is None else fmt_q(s.mu_bound),
        "lambda": s.lam,
        "redim": s.redim,
        "rank_s": s.rank_s,
        "conic": s.conic,
        "distinguished": s.distinguished,
        "weights": list(s.weights),
        "partitions": None if s.partitions is None else [list(p) for p in s.partitions],
        "delta_sup": None if s.mu_bound is None else _q_or_inf(stratum_delta(s)),
        "integer_roots_assumed": True,
        "verdict": verdict.to_json(),
    }


def _global(strata: Sequence[Stratum], verdicts, nice, missing) -> dict:
    incomplete = bool(missing) or any(v.kind == "NotCertified" for v, _ in verdicts)
    inputs = [vi for _, vi in verdicts]
    tame = not incomplete and all(tame_along(v) for v in inputs)
    conic = tame and all(conic_tame_along(v) for v in inputs) and all(
        s.lam > 0 for s in strata if s.redim > 0)
    # with complete data the two conditions coincide: on a distinguished orbit O of class P,
    # mu + t >= (lambda_Q - redim_Q + lambda_O + redim_P)/2 > 0 once every lambda_Q > 0
    weak = not incomplete and bool(nice.ok) and all(weak_tame_along(v) for v in inputs)
    if incomplete:
        dsup = None
    else:
        vals = [stratum_delta(s) for s in strata]
        vals = [x for x in vals if x is not None]
        dsup = _q_or_inf(min(vals) if vals else None)
    return {
        "tame": tame,
        "conic_tame": conic,
        "weakly_tame": weak,
        "delta_sup": dsup,
        "nice_pair": nice.ok,
        "nice_witnesses": [{"class_id": c, "lambda": lam} for c, lam in nice.witnesses],
        "incomplete": incomplete,
        "missing": list(missing),
    }


def zero_stratum_check(mu, dim: int) -> dict:
    """Zero-stratum bound together with the Fourier spot check.

    With ``theta`` the Euler operator on ``dim`` coordinates, the transform of
    ``theta - mu`` must be ``-(theta - R)`` where ``R = -dim - mu``; mapping
    ``R`` back by ``r -> -r - dim`` must give ``mu`` again.
    """
    if mu is None:
        return {"mu": None, "tame_at_zero": None, "trace": dim, "fourier": None}
    w = WeightVector((1,) * dim)
    th = theta(dim)
    R = -dim - mu
    lhs = fourier(euler_poly(BPoly([mu]), w))
    rhs = -euler_poly(BPoly([R]), w)
    theta_ok = fourier(th) == -th - dim
    return {
        "mu": fmt_q(mu),
        "tame_at_zero": mu > -dim,
        "trace": dim,
        "fourier": {
            "theta_transform_ok": theta_ok,
            "transformed_root": fmt_q(R),
            "roots_agree": lhs == rhs and -R - dim == mu,
        },
    }


def hk_zero_stratum_bound(alg: ChevalleyAlgebra) -> tuple[Fraction, bool]:
    mu = Fraction(alg.rank - alg.dim, 2)
    return mu, mu > -alg.dim


_ASSUME_CONIC_DIAGONAL = "strata are conic for every Euler field of the stratification (diagonal type)"
_ASSUME_CONIC_PAIR = "strata are assumed conic; not derived from descriptor data"
_ASSUME_BOUND = "roots enter only through the lower bound mu_bound of each stratum"
_ASSUME_INTEGER = "b-function roots are integers; non-integer root data would relax support conclusions"
_ASSUME_DATA = "nilpotent orbit data for non type A factors or pairs are user supplied and taken as given"

IMPLICATIONS = [
    "conic_tame: local integrability statements for solutions are consequences of the theory, not computed here",
    "weakly_tame: conclusions hold after the conormal escape for non distinguished orbits",
    "delta_sup: delta-tameness holds for every delta strictly below this value",
]


def _sha(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _assemble(subject, canonical_input, strata, nice, missing, delta_formula, mu0, dim, assumptions):
    verdicts = [stratum_verdict(s) for s in strata]
    rep = CertificateReport(
        subject=subject,
        strata=[_stratum_json(s, v) for s, (v, _) in zip(strata, verdicts)],
        global_=_global(strata, verdicts, nice, missing),
        assumptions=assumptions,
        provenance={"input_sha256": _sha(canonical_input), "version": __version__},
        extra={
            "delta_formula": None if delta_formula is None else fmt_q(delta_formula),
            "zero_stratum": zero_stratum_check(mu0, dim),
            "implications": IMPLICATIONS,
        },
    )
    check_report(rep.to_json())
    return rep


def _algebra_nice(alg, strata):
    from .pairs import NiceResult

    bad = sorted({(s.class_id, s.lam) for s in strata if s.distinguished and s.redim > 0 and s.lam <= 0})
    return NiceResult(not bad, list(bad), [])


def certify_diagonal(alg, nilpotent_data=None) -> CertificateReport:
    """Report for the diagonal case of a semisimple algebra."""
    if isinstance(alg, str):
        name, alg = alg, chevalley(alg)
    else:
        try:
            name = classify_cartan(alg.rs.cartan)
        except Exception:
            name = "custom"

    strata = enumerate_strata_diagonal(alg, nilpotent_data)
    mu0, _ = hk_zero_stratum_bound(alg)
    top = [s.mu_bound for s in strata if s.class_id == strata[-1].class_id]
    if top and top[0] != mu0:
        raise AssertionError(f"zero-stratum bound {mu0} differs from top-class mu {top[0]}")
    subject = {"kind": "algebra", "name": name, "cartan": alg.rs.cartan, "dim": alg.dim, "rank": alg.rank}
    return _assemble(subject, {"cartan": alg.rs.cartan, "nilpotent_data": nilpotent_data or {}}, strata,
                     _algebra_nice(alg, strata), [], delta_of_algebra(alg), mu0, alg.dim,
                     [_ASSUME_CONIC_DIAGONAL, _ASSUME_BOUND, _ASSUME_INTEGER, _ASSUME_DATA])


def _pair_delta_formula(pc):
    u = None
    for sub in pc.subs:
        if sub.reduced_dim > 0:
            q = Fraction(sub.rank_s, sub.reduced_dim)
            u = q if u is None or q < u else u
    return None if u is None else (1 + u) / (1 - u)


def certify_pair(pair: SymmetricPair) -> CertificateReport:
    """Report for a validated symmetric pair."""
    pc = pair_classes(pair)
    strata, missing = enumerate_strata_pair(pair, pc)
    nice = nice_pair_check(pair, pc)
    missing = sorted(set(missing) | set(nice.missing))
    top = [s.mu_bound for s in strata if s.class_id == pc.ids[-1]]
    mu0 = top[0] if top else None
    diagonal = pair.kind == "diagonal"
    if diagonal:
        assumptions = [_ASSUME_CONIC_DIAGONAL, _ASSUME_BOUND, _ASSUME_INTEGER, _ASSUME_DATA]
        formula = _pair_delta_formula(pc)
    else:
        assumptions = [_ASSUME_CONIC_PAIR, _ASSUME_BOUND, _ASSUME_INTEGER, _ASSUME_DATA]
        formula = None
    subject = {"kind": "pair", "type": pair.kind, "cartan": pair.algebra.rs.cartan,
               "dim_g": pair.algebra.dim, "dim_p": pair.dim_p, "rank_a": len(pair.a_basis)}
    return _assemble(subject, pair.raw, strata, nice, missing, formula, mu0, pair.dim_p, assumptions)


def check_report(rep: dict) -> None:
    """Implication chain every report must satisfy."""
    g = rep["global"]
    if g["conic_tame"] and not g["tame"]:
        raise AssertionError("conic_tame without tame")
    if g["tame"] and not g["weakly_tame"]:
        raise AssertionError("tame without weakly_tame")
    if g["tame"] and g["delta_sup"] not in (None, INFINITY) and Fraction(g["delta_sup"]) < 1:
        raise AssertionError("tame with delta_sup < 1")


def comparable(rep: dict) -> dict:
    """Report without the fields that name the input."""
    return {k: v for k, v in rep.items() if k not in ("subject", "provenance")}


# --- membership suite ---------------------------------------------------------------------

@dataclass
class SuiteSummary:
    bounds: dict
    checked: int
    failures: list
    root_audit_failures: list

    @property
    def ok(self) -> bool:
        return not self.failures and not self.root_audit_failures

    def to_json(self) -> dict:
        return {"bounds": self.bounds, "checked": self.checked, "failures": self.failures,
                "root_audit_failures": self.root_audit_failures, "ok": self.ok}


def verify_bn_suite(max_d: int = 3, max_weight: int = 3, max_N: int = 5) -> SuiteSummary:
    """Build and re-expand the membership certificate for every ``(w, N)`` in range."""
    checked, failures, audit = 0, [], []
    for w in integer_weight_vectors(max_d, max_weight):
        ws = [int(x) for x in w.weights]
        for N in range(1, max_N + 1):
            checked += 1
            cert = certify_membership(w, N)
            if not cert.verify():
                failures.append({"weights": ws, "N": N})
            b = b_n_poly(w, N)
            if any(r.denominator != 1 or r > -w.trace for r in b.root_list()):
                audit.append({"weights": ws, "N": N})
    return SuiteSummary({"max_d": max_d, "max_weight": max_weight, "max_N": max_N}, checked, failures, audit)


def algebra_from_arg(text_or_matrix):
    """Type string such as ``"A3"`` or an explicit integer Cartan matrix."""
    if isinstance(text_or_matrix, str):
        return chevalley(cartan_matrix(text_or_matrix))
    return chevalley(text_or_matrix)


__all__ = [
    "CertificateReport",
    "SuiteSummary",
    "Verdict",
    "algebra_from_arg",
    "canonical_json",
    "certify_diagonal",
    "certify_pair",
    "check_report",
    "comparable",
    "hk_zero_stratum_bound",
    "stratum_classes",
    "stratum_verdict",
    "verify_bn_suite",
    "zero_stratum_check",
    "class_lambdas",
]
