"""Simultaneous diagonalization of the Bethe operator and kernel recovery.

Construction stays exact; this module converts coefficient values at
integer sample points to complex floats, finds joint eigenvectors through
a seeded generic linear combination, reconstructs the scalar eigenvalue
rational functions, and solves for the quasi-exponential kernel of each
eigen-operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import ModuleSpec
from .betheop import BetheOperator
from .diffops import DiffOp, shifted_derivative_powers, QuasiExp
from .polynomials import Poly, poly_lcm
from .ratfun import DegreeBoundError, RatFun, _is_exact_poly, rational_reconstruct
from .scalars import to_complex
from .spaces import QuasiExpSpace, membership_test


@dataclass
class SpectralConfig:
    residual_tol: float = 1e-9
    cluster_tol: float = 1e-7
    kernel_tol: float = 1e-8
    seed: int = 2024
    max_retries: int = 6


def spectral_sample_points(spec: ModuleSpec, count: int):
    """Deterministic integer points 13, 14, ... avoiding the evaluation points."""
    avoid = {to_complex(b) for b in spec.points}
    out = []
    cand = 13
    while len(out) < count:
        if complex(cand) not in avoid:
            out.append(Fraction(cand))
        cand += 1
    return out


def reconstruction_points(spec: ModuleSpec, count: int, avoid=(), min_dist: float = 0.12):
    """Exact rational points interleaving the evaluation points.

    Numerator reconstruction from samples is only well conditioned when the
    samples surround the poles, so these points walk through the b-range in
    half-integer steps (quarter-shifted to dodge the points themselves).
    Extra locations to stay away from (for instance almost-cancelling poles
    of a factorized operator) go in ``avoid``.
    """
    reals = [to_complex(b).real for b in spec.points]
    lo = int(min(reals)) - 2
    keep_away = [to_complex(b) for b in spec.points] + [to_complex(a) for a in avoid]
    out = []
    k = 0
    while len(out) < count:
        cand = Fraction(4 * lo + 1 + 2 * k, 4)  # lo + 1/4, lo + 3/4, ...
        if all(abs(complex(cand) - a) > min_dist for a in keep_away):
            out.append(cand)
        k += 1
    return out


@dataclass
class EigenCharacter:
    """A joint eigenvector with its eigenvalue samples h_i(u_m)."""

    vector: np.ndarray
    eigenvalue_samples: dict  # (i, point) -> complex
    residual: float
    cluster_size: int = 1
    simple: bool = True
    generalized_dim: int = 1


@dataclass
class SpectrumReport:
    characters: list
    diagonalizable: bool
    sample_points: list
    combination_seed: int
    operators: list = field(default_factory=list)  # per character DiffOp or None
    kernels: list = field(default_factory=list)  # per character QuasiExpSpace or None
    memberships: list = field(default_factory=list)  # per character MembershipReport or str

    @property
    def count(self) -> int:
        return len(self.characters)


def _block_float_matrices(op: BetheOperator, points):
    """(i, point) -> complex ndarray of B_i on the target weight block."""
    mats = {}
    for i in range(1, op.rank + 1):
        for pt in points:
            exact = op.block_evaluate(i, pt)
            mats[i, pt] = np.array(exact.to_complex_list(), dtype=complex)
    return mats


def _cluster(eigvals, tol):
    """Group sorted eigenvalue indices into clusters within tol."""
    order = sorted(range(len(eigvals)), key=lambda k: (eigvals[k].real, eigvals[k].imag))
    clusters = []
    for k in order:
        if clusters and abs(eigvals[k] - eigvals[clusters[-1][-1]]) <= tol:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    return clusters


def _cluster_margin(eigvals, clusters):
    reps = [eigvals[c[0]] for c in clusters]
    best = np.inf
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            best = min(best, abs(reps[a] - reps[b]))
    return best


def joint_diagonalize(op: BetheOperator, cfg: SpectralConfig = None) -> SpectrumReport:
    """One EigenCharacter per joint eigenvector of the block coefficients.

    A generic real combination of coefficient values is diagonalized;
    clusters within tolerance are refined and verified against every
    coefficient matrix.  Clusters whose eigenspace is smaller than their
    multiplicity are flagged (the action is then not diagonalizable) and
    reported through generalized eigenspace generators.
    """
    cfg = cfg or SpectralConfig()
    spec = op.spec
    dim = len(op.module.weight_indices(spec.weight))
    if dim == 0:
        return SpectrumReport([], True, [], cfg.seed)
    n_pts = max(2, spec.size + 3)
    points = spectral_sample_points(spec, n_pts)
    mats = _block_float_matrices(op, points)
    combo_keys = [(i, pt) for i in range(1, op.rank + 1) for pt in points[:3]]
    scale = max(np.linalg.norm(m) for m in mats.values()) or 1.0

    rng = np.random.default_rng(cfg.seed)
    for attempt in range(cfg.max_retries):
        coeffs = rng.standard_normal(len(combo_keys))
        T = sum(c * mats[k] for c, k in zip(coeffs, combo_keys))
        eigvals, eigvecs = np.linalg.eig(T)
        tscale = max(np.linalg.norm(T), 1.0)
        clusters = _cluster(eigvals, cfg.cluster_tol * tscale)
        if len(clusters) > 1 and _cluster_margin(eigvals, clusters) <= 10 * cfg.cluster_tol * tscale:
            continue  # ambiguous clustering: fresh combination
        characters = []
        diagonalizable = True
        for cluster in clusters:
            size = len(cluster)
            if size == 1:
                idx = cluster[0]
                v = eigvecs[:, idx]
                v = v / np.linalg.norm(v)
                _, v = _refine_eigenpair(T, eigvals[idx], v)
                ch = _verify_joint(v, mats, cfg, scale, cluster_size=1)
                if ch is None:
                    break
                characters.append(ch)
                continue
            # multiplicity: work inside the generalized eigenspace
            mu = np.mean([eigvals[k] for k in cluster])
            A = T - mu * np.eye(dim)
            B = np.linalg.matrix_power(A, size)
            _, s, vh = np.linalg.svd(B)
            null_dim = int(np.sum(s <= max(s[0], 1.0) * 1e-10)) if len(s) else 0
            basis = vh[dim - max(null_dim, size):].conj().T  # generalized eigenspace
            sub = basis[:, -size:] if basis.shape[1] >= size else basis
            q, _ = np.linalg.qr(sub)
            found = _refine_cluster(q, mats, cfg, scale, rng)
            eig_dim = len(found)
            for v, res in found:
                characters.append(
                    EigenCharacter(
                        vector=v,
                        eigenvalue_samples=_samples(v, mats),
                        residual=res,
                        cluster_size=size,
                        simple=False,
                        generalized_dim=size,
                    )
                )
            if eig_dim < size:
                diagonalizable = False
        else:
            characters.sort(
                key=lambda ch: (
                    round(ch.eigenvalue_samples[1, points[0]].real, 6),
                    round(ch.eigenvalue_samples[1, points[0]].imag, 6),
                    round(ch.eigenvalue_samples[op.rank, points[0]].real, 6),
                    round(ch.eigenvalue_samples[op.rank, points[0]].imag, 6),
                )
            )
            return SpectrumReport(characters, diagonalizable, points, cfg.seed)
    raise RuntimeError("persistent clustering ambiguity in joint diagonalization")


def _samples(v, mats):
    return {key: complex(v.conj() @ (m @ v)) for key, m in mats.items()}


def _refine_eigenpair(T, mu, v, sweeps=4):
    """Newton iteration on (T - mu)v = 0 with a fixed normalization row.

    numpy's eig is only first-order accurate for non-normal matrices; a few
    Newton sweeps push the eigenpair to machine precision, which the
    downstream rational reconstructions rely on.
    """
    dim = T.shape[0]
    c = v.conj()
    for _ in range(sweeps):
        F = np.concatenate([(T - mu * np.eye(dim)) @ v, [c @ v - 1.0]])
        J = np.zeros((dim + 1, dim + 1), dtype=complex)
        J[:dim, :dim] = T - mu * np.eye(dim)
        J[:dim, dim] = -v
        J[dim, :dim] = c
        try:
            delta = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            break
        v = v + delta[:dim]
        mu = mu + delta[dim]
        if float(np.linalg.norm(F)) < 1e-15:
            break
    return mu, v / np.linalg.norm(v)


def _verify_joint(v, mats, cfg, scale, cluster_size):
    worst = 0.0
    for m in mats.values():
        h = complex(v.conj() @ (m @ v))
        worst = max(worst, float(np.linalg.norm(m @ v - h * v)) / scale)
    if worst > cfg.residual_tol * 100:
        return None
    return EigenCharacter(
        vector=v,
        eigenvalue_samples=_samples(v, mats),
        residual=worst,
        cluster_size=cluster_size,
    )


def _refine_cluster(q, mats, cfg, scale, rng):
    """Common eigenvectors of the coefficients restricted to a subspace."""
    keys = list(mats)
    coeffs = rng.standard_normal(len(keys))
    R = sum(c * (q.conj().T @ mats[k] @ q) for c, k in zip(coeffs, keys))
    vals, vecs = np.linalg.eig(R)
    found = []
    for k in range(len(vals)):
        v = q @ vecs[:, k]
        v = v / np.linalg.norm(v)
        worst = 0.0
        for m in mats.values():
            h = complex(v.conj() @ (m @ v))
            worst = max(worst, float(np.linalg.norm(m @ v - h * v)) / scale)
        if worst <= cfg.residual_tol * 100:
            if all(np.abs(np.vdot(u[0], v)) < 1 - 1e-8 for u in found):
                found.append((v, worst))
    return found


def character_to_operator(
    ch: EigenCharacter, op: BetheOperator, cfg: SpectralConfig = None
) -> DiffOp:
    """Monic scalar operator whose coefficients are the eigenvalue functions.

    Each h_i is reconstructed from Rayleigh-quotient samples as a rational
    function with denominator prod (u - b_s)^{n_s} and numerator degree at
    most n; a degree-bound failure means the character is not of the
    expected rational shape.
    """
    cfg = cfg or SpectralConfig()
    spec = op.spec
    n = spec.size
    den_exact = spec.pole_polynomial()
    den = Poly([to_complex(c) for c in den_exact.coeffs])
    points = reconstruction_points(spec, n + 3)
    coeffs = [RatFun.constant(1.0 + 0j)]
    for i in range(1, op.rank + 1):
        samples = []
        for pt in points:
            key = (i, pt)
            if key in ch.eigenvalue_samples:
                samples.append((complex(pt), ch.eigenvalue_samples[key]))
            else:
                exact = op.block_evaluate(i, pt)
                m = np.array(exact.to_complex_list(), dtype=complex)
                v = ch.vector
                samples.append((complex(pt), complex(v.conj() @ (m @ v))))
        coeffs.append(rational_reconstruct(samples, n, den, tol=1e-6))
    return DiffOp.from_leading(coeffs)


def kernel_from_operator(D: DiffOp, spec: ModuleSpec, cfg: SpectralConfig = None) -> QuasiExpSpace:
    """Quasi-exponential kernel with exponents K and degrees lam.

    For each i the ansatz e^{K_i u}(u^{lam_i} + sum_j x_j u^{lam_i - j})
    turns D f = 0 into a linear system after clearing the common
    denominator; the least-squares residual must stay below the kernel
    tolerance, otherwise there is no kernel of the prescribed shape.
    """
    cfg = cfg or SpectralConfig()
    N = spec.rank
    lam = spec.weight.padded(N)
    dens = [c.den for c in D.coeffs]
    if all(_is_exact_poly(d) for d in dens):
        den = Poly([Fraction(1)])
        for d in dens:
            den = poly_lcm(den, d)
    else:
        # float operators carry one shared denominator (plus constants)
        den = max(dens, key=lambda d: d.degree)
        for d in dens:
            if d.degree > 0 and d != den:
                raise ValueError("coefficient denominators do not nest")
    cleared = []
    for c in D.coeffs:
        cleared.append(c.num * den.exact_div(c.den))
    polys = []
    for i in range(N):
        kexp = to_complex(spec.exponents[i])
        d = lam[i]

        def image(p: Poly) -> Poly:
            parts = shifted_derivative_powers(QuasiExp(kexp, p), len(cleared) - 1)
            total = Poly()
            for k, cnum in enumerate(cleared):
                total = total + cnum * parts[k]
            return total

        rhs_poly = image(Poly([0.0] * d + [1.0 + 0j]))
        cols = [image(Poly([0.0] * (d - j) + [1.0 + 0j])) for j in range(1, d + 1)]
        rows = max([rhs_poly.degree] + [c.degree for c in cols if not c.is_zero()] + [0]) + 1
        A = np.zeros((rows, d), dtype=complex)
        b = np.zeros(rows, dtype=complex)
        for r in range(rows):
            b[r] = -complex(rhs_poly.coeff(r)) if rhs_poly.degree >= r else 0.0
            for j, cp in enumerate(cols):
                A[r, j] = complex(cp.coeff(r)) if cp.degree >= r else 0.0
        if d == 0:
            resid = float(np.linalg.norm(b))
            scale = max(1.0, float(np.max(np.abs(b))) if rows else 1.0)
            if resid > cfg.kernel_tol * max(scale, 1.0) * rows:
                raise ValueError("no quasi-exponential kernel of prescribed degrees")
            polys.append(Poly([1.0 + 0j]))
            continue
        x, *_ = np.linalg.lstsq(A, b, rcond=None)
        resid = float(np.linalg.norm(A @ x - b))
        scale = max(1.0, float(np.max(np.abs(A))), float(np.max(np.abs(b))))
        if resid > cfg.kernel_tol * scale * rows:
            raise ValueError("no quasi-exponential kernel of prescribed degrees")
        coeffs = [complex(x[d - 1 - j]) for j in range(d)] + [1.0 + 0j]
        polys.append(Poly(coeffs))
    return QuasiExpSpace(tuple(to_complex(k) for k in spec.exponents), tuple(polys))


def spectrum_analysis(op: BetheOperator, cfg: SpectralConfig = None) -> SpectrumReport:
    """Full pipeline: diagonalize, rebuild operators, recover kernels, test."""
    cfg = cfg or SpectralConfig()
    report = joint_diagonalize(op, cfg)
    for ch in report.characters:
        try:
            D = character_to_operator(ch, op, cfg)
            report.operators.append(D)
        except DegreeBoundError as exc:
            report.operators.append(None)
            report.kernels.append(None)
            report.memberships.append(f"operator reconstruction failed: {exc}")
            continue
        try:
            X = kernel_from_operator(D, op.spec, cfg)
            report.kernels.append(X)
        except ValueError as exc:
            report.kernels.append(None)
            report.memberships.append(f"kernel recovery failed: {exc}")
            continue
        report.memberships.append(membership_test(X, op.spec, tol=1e-6))
    return report
