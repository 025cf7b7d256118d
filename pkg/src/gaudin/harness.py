"""Configuration, verification pipelines, and JSON reports.

A config describes one instance (rank, twist exponents, partitions with
evaluation points, target weight) plus options; pipelines assemble the
spectral, Bethe-ansatz, and function-side checks and emit deterministic
reports keyed by descriptive check names.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .algebra import ModuleSpec, Partition, build_embedded_module
from .bae import bae_residual, factorized_values, newton_solve, verify_eigenvector
from .betheop import (
    build_bethe_operator,
    check_polynomiality,
    commutativity_check,
    exact_sample_points,
    expected_leading_symbol,
    first_coefficient_residual,
    leading_symbol,
    weight_blocks_preserved,
)
from .polynomials import Poly
from .ratfun import rational_reconstruct
from .scalars import GaussianRational, format_scalar, parse_scalar, to_complex
from .spaces import QuasiExpSpace, fundamental_operator, membership_test, wronskian_of_space
from .spectral import (
    SpectralConfig,
    joint_diagonalize,
    reconstruction_points,
    spectrum_analysis,
)


class ConfigError(ValueError):
    """The instance description is rejected before any computation."""


@dataclass
class Tolerances:
    residual: float = 1e-9
    cluster: float = 1e-7
    dedup: float = 1e-8
    kernel_fit: float = 1e-8

    @staticmethod
    def from_dict(d):
        t = Tolerances()
        for key in ("residual", "cluster", "dedup", "kernel_fit"):
            if key in d:
                setattr(t, key, float(d[key]))
        return t


@dataclass
class InstanceConfig:
    spec: ModuleSpec
    run_bae: bool = True
    run_wronski: bool = True
    samples: int = 5
    seed: int = 2024
    tolerances: Tolerances = field(default_factory=Tolerances)
    space: QuasiExpSpace = None
    raw: dict = field(default_factory=dict)

    @staticmethod
    def from_dict(data) -> "InstanceConfig":
        try:
            rank = int(data["N"])
            exponents = [parse_scalar(k) for k in data["K"]]
            points = [parse_scalar(b) for b in data["b"]]
            partitions = [Partition(p) for p in data["partitions"]]
            weight = Partition(data["weight"])
            spec = ModuleSpec(rank, exponents, partitions, points, weight)
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc
        options = data.get("options", {})
        space = None
        if "space" in data:
            try:
                polys = [
                    Poly([parse_scalar(c) for c in coeffs]) for coeffs in data["space"]["polys"]
                ]
                space = QuasiExpSpace(tuple(spec.exponents), tuple(polys))
            except (KeyError, ValueError, TypeError) as exc:
                raise ConfigError(f"bad space description: {exc}") from exc
        return InstanceConfig(
            spec=spec,
            run_bae=bool(options.get("run_bae", True)),
            run_wronski=bool(options.get("run_wronski", True)),
            samples=int(options.get("samples", 5)),
            seed=int(options.get("seed", 2024)),
            tolerances=Tolerances.from_dict(options.get("tolerances", {})),
            space=space,
            raw=data,
        )

    @staticmethod
    def from_file(path) -> "InstanceConfig":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"invalid JSON: {exc}") from exc
        return InstanceConfig.from_dict(data)

    def spectral_config(self) -> SpectralConfig:
        return SpectralConfig(
            residual_tol=self.tolerances.residual,
            cluster_tol=self.tolerances.cluster,
            kernel_tol=self.tolerances.kernel_fit,
            seed=self.seed,
        )


@dataclass
class Check:
    name: str
    passed: bool
    value: object = None

    def to_dict(self):
        out = {"name": self.name, "passed": bool(self.passed)}
        if self.value is not None:
            out["value"] = self.value
        return out


def _complex_pair(z):
    z = to_complex(z)
    return [z.real, z.imag]


def _poly_pairs(p: Poly):
    return [_complex_pair(c) for c in p.coeffs]


def cleared_numerators(op, spec: ModuleSpec, tol=1e-6, avoid=()):
    """Numerator coefficient arrays of h_i over the pole polynomial.

    Reconstructed from samples so that removable factors (for instance the
    interior root poles of a factorized operator at a solution) cancel
    before comparison; pass those root locations in ``avoid`` so no sample
    sits on a nearly-cancelling pole.
    """
    n = spec.size
    den = Poly([to_complex(c) for c in spec.pole_polynomial().coeffs])
    points = reconstruction_points(spec, n + 3, avoid=avoid)
    out = []
    for i in range(1, spec.rank + 1):
        h = op.coeff_of_dpower_from_top(i)
        samples = [(complex(pt), complex(h.evaluate(complex(pt)))) for pt in points]
        rec = rational_reconstruct(samples, n, den, tol=tol)
        out.append([complex(rec.num.coeff(k)) for k in range(n + 1)])
    return out


def operator_distance(numers_a, numers_b) -> float:
    """Max relative coefficient distance between cleared numerator arrays."""
    worst = 0.0
    for row_a, row_b in zip(numers_a, numers_b):
        scale = max([abs(c) for c in row_a + row_b] + [1.0])
        for x, y in zip(row_a, row_b):
            worst = max(worst, abs(x - y) / scale)
    return worst


def _is_real_data(spec: ModuleSpec) -> bool:
    return not any(
        isinstance(v, GaussianRational) and v.im != 0 for v in spec.exponents + spec.points
    )


def spectrum_pipeline(config: InstanceConfig) -> dict:
    """Exact identities, commutativity, diagonalization, kernel recovery."""
    spec = config.spec
    checks = []
    t0 = time.time()
    module = build_embedded_module(spec)
    dim = len(module.weight_indices(spec.weight))
    op = build_bethe_operator(spec, module)

    checks.append(Check("first-coefficient-identity", first_coefficient_residual(op).is_zero()))
    checks.append(Check("leading-symbol-identity", leading_symbol(op) == expected_leading_symbol(op)))
    poly_report = check_polynomiality(op)
    checks.append(Check("cleared-coefficients-polynomial", not any("not polynomial" in f for f in poly_report.failures)))
    checks.append(Check("local-values-scalar", not any("not scalar" in f for f in poly_report.failures)))
    checks.append(Check("indicial-identity", poly_report.indicial_ok))
    checks.append(Check("coefficient-degree-bound", all(d <= spec.size for d in poly_report.degrees), value=poly_report.degrees))
    sample_count = max(2, config.samples)
    checks.append(
        Check(
            "commutativity",
            commutativity_check(op, exact_sample_points(spec.points, sample_count)),
        )
    )
    checks.append(Check("weight-blocks-preserved", weight_blocks_preserved(op)))

    scfg = config.spectral_config()
    if config.run_wronski:
        report = spectrum_analysis(op, scfg)
    else:
        report = joint_diagonalize(op, scfg)
    characters = []
    memberships_ok = True
    for k, ch in enumerate(report.characters):
        entry = {
            "residual": ch.residual,
            "simple": ch.simple,
            "cluster_size": ch.cluster_size,
            "vector": [_complex_pair(z) for z in ch.vector],
        }
        D = report.operators[k] if k < len(report.operators) else None
        if D is not None:
            entry["coefficient_numerators"] = [
                [_complex_pair(c) for c in row] for row in cleared_numerators(D, spec)
            ]
        X = report.kernels[k] if k < len(report.kernels) else None
        if X is not None:
            entry["kernel_polys"] = [_poly_pairs(p) for p in X.polys]
        m = report.memberships[k] if k < len(report.memberships) else None
        if hasattr(m, "ok"):
            entry["membership"] = m.ok
            entry["membership_checks"] = [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in m.checks
            ]
            memberships_ok = memberships_ok and m.ok
        elif config.run_wronski:
            entry["membership"] = False
            entry["membership_error"] = str(m)
            memberships_ok = False
        characters.append(entry)

    if config.run_wronski:
        checks.append(Check("kernel-membership", memberships_ok))
    if _is_real_data(spec):
        checks.append(Check("character-count-equals-dimension", report.count == dim, value=[report.count, dim]))
        checks.append(Check("eigenspaces-one-dimensional", report.diagonalizable and all(ch.simple or ch.cluster_size == 1 for ch in report.characters)))
    else:
        checks.append(Check("character-count", True, value=[report.count, dim]))
    checks.append(Check("pole-orders-recorded", True, value={f"B{i}@s{s}": o for (i, s), o in poly_report.pole_orders.items()}))

    return {
        "dimension": dim,
        "module_dimension": module.dim,
        "checks": checks,
        "characters": characters,
        "spectrum": report,
        "operator": op,
        "elapsed": time.time() - t0,
    }


def bae_pipeline(config: InstanceConfig, spectrum=None) -> dict:
    """Newton solutions, eigenvector residuals, matching to the spectrum."""
    spec = config.spec
    checks = []
    t0 = time.time()
    if not spec.all_vector_factors:
        return {
            "checks": [Check("bae-applicable", False, value="needs all factor sizes equal to one")],
            "solutions": [],
            "elapsed": time.time() - t0,
        }
    if spectrum is None:
        spectrum = spectrum_pipeline(config)
    op = spectrum["operator"]
    dim = spectrum["dimension"]
    tol = config.tolerances
    sols = newton_solve(spec, seed=config.seed, dedup_tol=tol.dedup)
    if _is_real_data(spec):
        checks.append(Check("solution-count-equals-dimension", len(sols) == dim, value=[len(sols), dim]))
    else:
        checks.append(Check("solution-count", True, value=[len(sols), dim]))

    exponents = [to_complex(k) for k in spec.exponents]
    entries = []
    char_numers = []
    for k, ch_entry in enumerate(spectrum["characters"]):
        D = spectrum["spectrum"].operators[k]
        char_numers.append(cleared_numerators(D, spec) if D is not None else None)
    den_c = Poly([to_complex(c) for c in spec.pole_polynomial().coeffs])
    used = set()
    for sol in sols:
        res = bae_residual(
            type(sol)([tuple(to_complex(x) for x in lv) for lv in sol.levels]), exponents
        )
        res_norm = max((abs(r) for r in res), default=0.0)
        ev = verify_eigenvector(sol, spec, op, tol=config.tolerances.kernel_fit * 10)
        pts = reconstruction_points(spec, spec.size + 2, avoid=sol.flat_upper())
        sol_values = {pt: factorized_values(sol, exponents, pt) for pt in pts}
        best, best_dist = None, float("inf")
        for k, cn in enumerate(char_numers):
            if cn is None or k in used:
                continue
            worst = 0.0
            for pt, values in sol_values.items():
                z = complex(pt)
                for i in range(1, spec.rank + 1):
                    hc = sum(cn[i - 1][j] * z**j for j in range(len(cn[i - 1]))) / den_c(z)
                    worst = max(worst, abs(values[i - 1] - hc) / max(abs(hc), 1.0))
            if worst < best_dist:
                best, best_dist = k, worst
        matched = best is not None and best_dist <= 1e-8
        if matched:
            used.add(best)
        entries.append(
            {
                "roots": [[_complex_pair(x) for x in lv] for lv in sol.upper],
                "bae_residual": res_norm,
                "eigenvector_residual": ev.residual,
                "eigenvector_ok": ev.passed,
                "matched_character": best,
                "match_distance": None if best is None else best_dist,
            }
        )
    checks.append(Check("solutions-satisfy-equations", all(e["bae_residual"] <= 1e-10 for e in entries)))
    checks.append(Check("weight-function-eigenvectors", all(e["eigenvector_ok"] for e in entries)))
    checks.append(
        Check(
            "factorized-operators-match-characters",
            len(used) == len(entries) == len([c for c in char_numers if c is not None]),
        )
    )
    return {"checks": checks, "solutions": entries, "elapsed": time.time() - t0}


def wronski_pipeline(config: InstanceConfig) -> dict:
    """Function-side analysis of a user-supplied space."""
    spec = config.spec
    checks = []
    t0 = time.time()
    if config.space is None:
        raise ConfigError("this command needs a space entry in the config")
    space = config.space
    wd = wronskian_of_space(space)
    d = fundamental_operator(space)
    report = membership_test(space, spec, tol=None if space.is_exact_space() else 1e-8)
    checks.append(Check("membership", report.ok))
    for c in report.checks:
        checks.append(Check(f"membership/{c.name}", c.passed, value=c.detail or None))
    return {
        "checks": checks,
        "wronskian": {
            "poly": _poly_pairs(wd.poly),
            "map": [_complex_pair(a) for a in wd.coefficients],
        },
        "operator_text": str(d),
        "exponents": {
            str(s): list(data.exponents) if data.exponents else None
            for s, data in report.indicial.items()
        },
        "elapsed": time.time() - t0,
    }


def verify_pipeline(config: InstanceConfig) -> dict:
    """Counts and cross-checks across the three pipelines."""
    spectrum = spectrum_pipeline(config)
    out = {
        "checks": list(spectrum["checks"]),
        "characters": spectrum["characters"],
        "dimension": spectrum["dimension"],
    }
    dim = spectrum["dimension"]
    if config.run_bae and config.spec.all_vector_factors:
        bae = bae_pipeline(config, spectrum)
        out["bae"] = bae["solutions"]
        out["checks"].extend(bae["checks"])
        counts = [dim, spectrum["spectrum"].count, len(bae["solutions"])]
        out["checks"].append(Check("count-triple-equality", len(set(counts)) == 1, value=counts))
    else:
        out["checks"].append(
            Check("count-pair-equality", spectrum["spectrum"].count == dim, value=[spectrum["spectrum"].count, dim])
        )
    out["elapsed"] = spectrum["elapsed"]
    return out


def run_report(command: str, config: InstanceConfig, result: dict) -> dict:
    """Deterministic JSON document (timings are the only unstable fields)."""
    checks = [c.to_dict() for c in result.get("checks", [])]
    report = {
        "tool": {"name": "gaudin", "version": __version__},
        "command": command,
        "instance": config.raw,
        "seed": config.seed,
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }
    for key in ("dimension", "module_dimension", "characters", "solutions", "bae",
                "wronskian", "operator_text", "exponents"):
        if key in result:
            report[key] = result[key]
    report["timings"] = {"elapsed_seconds": result.get("elapsed", 0.0)}
    return report


def render_table(report: dict) -> str:
    lines = []
    lines.append(f"gaudin {report['command']} report (tool {report['tool']['version']})")
    if "dimension" in report:
        lines.append(f"weight-subspace dimension: {report['dimension']}")
    width = max((len(c["name"]) for c in report["checks"]), default=10)
    for c in report["checks"]:
        status = "pass" if c["passed"] else "FAIL"
        extra = f"  {c['value']}" if "value" in c else ""
        lines.append(f"  {c['name']:<{width}}  {status}{extra}")
    lines.append("all checks passed" if report["all_passed"] else "SOME CHECKS FAILED")
    return "\n".join(lines)


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=_json_default)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return format_scalar(obj)
    if isinstance(obj, GaussianRational):
        return format_scalar(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    raise TypeError(f"cannot serialize {type(obj)!r}")
