"""Spaces of quasi-exponentials: Wronskians, fundamental operators, exponents.

A space is an N-dimensional span of e^{K_i u} p_i(u) with distinct
exponents and monic polynomial parts whose degrees realize a partition.
Everything here works over exact scalars and, with a tolerance, over
complex floats (for spaces recovered from numerical spectra).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ModuleSpec, Partition
from .diffops import DiffOp, QuasiExp, shifted_derivative_powers, wronskian
from .polynomials import Poly, falling_product, poly_det
from .ratfun import RatFun, ratfun_pole_order
from .scalars import is_exact, to_complex


class DegenerateSpaceError(ValueError):
    """The putative basis is linearly dependent (identically zero Wronskian)."""


class IrregularSingularityError(ValueError):
    """A coefficient is too singular for a regular singular point."""


@dataclass(frozen=True)
class QuasiExpSpace:
    """Exponents K plus monic polynomial parts p_i of degree lam_i."""

    exponents: tuple
    polys: tuple

    def __init__(self, exponents, polys):
        exponents = tuple(exponents)
        polys = tuple(polys)
        if len(set(exponents)) != len(exponents):
            raise ValueError("exponents must be pairwise distinct")
        if len(exponents) != len(polys):
            raise ValueError("need one polynomial part per exponent")
        degrees = [p.degree for p in polys]
        if any(d < 0 for d in degrees):
            raise ValueError("polynomial parts must be nonzero")
        if any(degrees[i] < degrees[i + 1] for i in range(len(degrees) - 1)):
            raise ValueError("degrees must be non-increasing")
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "polys", polys)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def degrees(self) -> tuple:
        return tuple(p.degree for p in self.polys)

    @property
    def weight(self) -> Partition:
        return Partition(self.degrees)

    @property
    def size(self) -> int:
        return sum(self.degrees)

    def is_exact_space(self) -> bool:
        return all(is_exact(k) for k in self.exponents) and all(
            all(is_exact(c) for c in p.coeffs) for p in self.polys
        )

    def basis(self) -> list:
        return [QuasiExp(k, p) for k, p in zip(self.exponents, self.polys)]


def random_exact_space(N: int, exponents, lam, rng) -> QuasiExpSpace:
    """Monic parts with small random rational coefficients (test fodder)."""
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    polys = []
    for d in lam.padded(N):
        coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(d)]
        polys.append(Poly(coeffs + [Fraction(1)]))
    return QuasiExpSpace(tuple(exponents), tuple(polys))


@dataclass(frozen=True)
class WronskiData:
    """Normalized Wronskian: prefactor, monic polynomial part, Wronski map image."""

    prefactor: object
    poly: Poly
    coefficients: tuple  # a_s with u^n + sum (-1)^s a_s u^{n-s}


def exponent_prefactor(exponents) -> object:
    out = None
    for i in range(len(exponents)):
        for j in range(i + 1, len(exponents)):
            term = exponents[j] - exponents[i]
            out = term if out is None else out * term
    return out if out is not None else Fraction(1)


def wronskian_of_space(space: QuasiExpSpace) -> WronskiData:
    """Strip the exponential and the alternant prefactor; read off the map.

    The monic polynomial part has degree exactly n = |lam|; a_s is the
    signed coefficient of u^{n-s}.
    """
    wr = wronskian(space.basis())
    if wr.poly.is_zero():
        raise DegenerateSpaceError("degenerate space: zero Wronskian")
    prefactor = exponent_prefactor(space.exponents)
    n = space.size
    if wr.poly.degree != n:
        raise DegenerateSpaceError(
            f"Wronskian degree {wr.poly.degree}, expected {n}: degenerate space"
        )
    poly = Poly([c / prefactor for c in wr.poly.coeffs])
    coefficients = tuple((-1) ** s * poly.coeff(n - s) for s in range(1, n + 1))
    return WronskiData(prefactor=prefactor, poly=poly, coefficients=coefficients)


def wronski_map_of_poles(spec: ModuleSpec) -> tuple:
    """The Wronski-map image demanded by the evaluation points."""
    target = spec.pole_polynomial()
    n = spec.size
    return tuple((-1) ** s * target.coeff(n - s) for s in range(1, n + 1))


def cleared_operator_polys(space: QuasiExpSpace) -> list:
    """Polynomials G_0..G_N with G_i = (monic Wronskian part) * F_i.

    Computed as signed maximal minors of the (N+1)-column derivative matrix
    of the basis, normalized so G_0 is monic; no rational-function division
    happens, so the same code serves exact and float spaces.
    """
    N = space.rank
    rows = [shifted_derivative_powers(f, N) for f in space.basis()]
    minors = []
    for c in range(N + 1):
        cols = [r for r in range(N + 1) if r != c]
        minors.append(poly_det([[row[r] for r in cols] for row in rows]))
    g0 = minors[N]
    if g0.is_zero():
        raise DegenerateSpaceError("degenerate space: zero Wronskian")
    lead = g0.leading
    out = []
    for i in range(N + 1):
        raw = minors[N - i]
        if i % 2 == 1:
            raw = -raw
        out.append(Poly([c / lead for c in raw.coeffs]))
    return out


def fundamental_operator(space: QuasiExpSpace, check: bool = True) -> DiffOp:
    """The unique monic order-N operator annihilating the space.

    For exact spaces the first-coefficient identity F_1 = -Wr'/Wr is
    verified on the spot; annihilation of the basis is asserted too.
    """
    gs = cleared_operator_polys(space)
    g0 = gs[0]
    coeffs = [RatFun.constant(Fraction(1))]
    exact = space.is_exact_space()
    for i in range(1, space.rank + 1):
        coeffs.append(RatFun(gs[i], g0, reduce=exact))
    op = DiffOp.from_leading(coeffs)
    if check and exact:
        total = space.exponents[0] * 0
        for k in space.exponents:
            total = total + k
        expected_f1 = RatFun(-(g0.derivative() + g0.scale(total)), g0)
        if not (op.coeff_of_dpower_from_top(1) == expected_f1):
            raise AssertionError("first coefficient does not match -Wr'/Wr")
        for f in space.basis():
            if not op.annihilates(f):
                raise AssertionError("fundamental operator misses its kernel")
    return op


def char_at_infinity(op: DiffOp) -> Poly:
    """Monic degree-N polynomial in a from the u -> infinity constant terms.

    The operator must be monic; raises ValueError when a coefficient grows
    at infinity, i.e. the operator is not of quasi-exponential type.
    """
    N = op.order
    coeffs = [Fraction(0)] * (N + 1)
    coeffs[N] = Fraction(1)
    for i in range(1, N + 1):
        c = op.coeff_of_dpower_from_top(i)
        if c.is_zero():
            continue
        try:
            coeffs[N - i] = c.expand_at_infinity(1)[0]
        except ValueError as exc:
            raise ValueError("not of quasi-exponential type") from exc
    return Poly(coeffs)


def second_symbol(op: DiffOp) -> Poly:
    """The polynomial sum_i F_{i1} a^{N-i} from the 1/u terms at infinity."""
    N = op.order
    coeffs = [Fraction(0)] * N
    for i in range(1, N + 1):
        c = op.coeff_of_dpower_from_top(i)
        if c.is_zero():
            continue
        coeffs[N - i] = c.expand_at_infinity(2)[1]
    return Poly(coeffs)


@dataclass(frozen=True)
class IndicialData:
    """Indicial polynomial at a point and its root multiset."""

    point: object
    polynomial: Poly  # monic, degree N
    exponents: tuple | None  # sorted integer roots, or None if not all integral
    repeated: bool


def _integer_roots(poly: Poly, low: int, high: int):
    roots = []
    work = poly
    for cand in range(low, high + 1):
        c = Fraction(cand)
        while work.degree > 0 and work(c) == 0:
            roots.append(cand)
            work = work.exact_div(Poly([-c, Fraction(1)]))
    if work.degree > 0:
        return None, False
    return tuple(sorted(roots)), len(set(roots)) != len(roots)


def indicial_data(op: DiffOp, point, local_multiplicity: int) -> IndicialData:
    """Frobenius indicial polynomial of a monic exact operator at a point.

    The coefficient of order i may have a pole of order at most i; a deeper
    pole raises IrregularSingularityError.
    """
    N = op.order
    chi = falling_product(N)
    for i in range(1, N + 1):
        f = op.coeff_of_dpower_from_top(i)
        if f.is_zero():
            continue
        p = ratfun_pole_order(f, point)
        if p > i:
            raise IrregularSingularityError(
                f"pole of order {p} > {i} at {point}: not a regular singular point"
            )
        if p < i:
            continue
        num_t = f.num.taylor_at(point)
        den_t = f.den.taylor_at(point)
        o_n = next(k for k, c in enumerate(num_t) if c != 0)
        o_d = next(k for k, c in enumerate(den_t) if c != 0)
        g_i = num_t[o_n] / den_t[o_d]
        chi = chi + falling_product(N - i).scale(g_i)
    bound = local_multiplicity + N + 2
    exponents, repeated = _integer_roots(chi, -1, max(bound, 3))
    if exponents is None:
        repeated = False
    return IndicialData(point=point, polynomial=chi, exponents=exponents, repeated=repeated)


def expected_exponents(partition: Partition, N: int) -> tuple:
    """lam_N, lam_{N-1}+1, ..., lam_1+N-1 as a sorted tuple."""
    padded = partition.padded(N)
    return tuple(sorted(padded[j] + N - (j + 1) for j in range(N)))


@dataclass
class MembershipCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class MembershipReport:
    ok: bool
    checks: list = field(default_factory=list)
    indicial: dict = field(default_factory=dict)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _poly_close(a: Poly, b: Poly, tol) -> bool:
    if tol is None:
        return a == b
    top = max(a.degree, b.degree, 0)
    scale = max([abs(complex(c)) for c in a.coeffs + b.coeffs] + [1.0])
    for k in range(top + 1):
        x = complex(a.coeff(k)) if a.degree >= k else 0.0
        y = complex(b.coeff(k)) if b.degree >= k else 0.0
        if abs(x - y) > tol * scale:
            return False
    return True


def membership_test(space: QuasiExpSpace, spec: ModuleSpec, tol=None) -> MembershipReport:
    """Does the space lie over the prescribed points with prescribed exponents?

    Verifies that the monic Wronskian part is exactly the pole polynomial of
    the spec (so the Wronski map lands on the point dictated by the
    evaluation points), that the fundamental operator has no finite
    singularity away from those points, and that the local exponents at
    each point match the shifted partition.  With ``tol`` the comparisons
    are numerical; otherwise they are exact.
    """
    checks = []
    indicial = {}
    N = spec.rank
    n = spec.size
    gs = cleared_operator_polys(space)
    g0 = gs[0]
    target = spec.pole_polynomial()

    wr_ok = _poly_close(g0, target, tol)
    checks.append(
        MembershipCheck(
            "wronskian-matches-pole-polynomial",
            wr_ok,
            f"got {g0}",
        )
    )

    # pole confinement: deflate the Wronskian by the known roots
    gscale = max([abs(complex(c)) for c in g0.coeffs] + [1.0]) if tol is not None else None
    work = g0
    for b, n_s in zip(spec.points, spec.factor_sizes):
        if tol is not None:
            b = complex(to_complex(b))
        for _ in range(n_s):
            quot, rem = work.divmod(Poly([-b, b * 0 + 1]))
            rem_small = rem.is_zero() or (
                tol is not None and abs(complex(rem.coeff(0))) <= tol * gscale
            )
            if not rem_small:
                break
            work = quot
    poles_ok = work.degree <= 0
    checks.append(
        MembershipCheck(
            "poles-confined-to-points",
            poles_ok,
            "" if poles_ok else "pole outside b",
        )
    )

    for s, (b_s, n_s, part) in enumerate(zip(spec.points, spec.factor_sizes, spec.partitions)):
        taylors = [g.taylor_at(b_s, n + 1) if not g.is_zero() else [] for g in gs]
        regular = True
        for i in range(N + 1):
            tc = taylors[i]
            tscale = max([abs(complex(c)) for c in tc] + [1.0]) if tol is not None else None
            for j in range(min(n_s - i, len(tc))):
                cj = tc[j]
                small = (cj == 0) if tol is None else abs(complex(cj)) <= tol * tscale
                if not small:
                    regular = False
        chi = Poly()
        for i in range(N + 1):
            tc = taylors[i]
            j = n_s - i
            if 0 <= j < len(tc):
                chi = chi + falling_product(N - i).scale(tc[j])
        const = None
        for r, (b_r, n_r) in enumerate(zip(spec.points, spec.factor_sizes)):
            if r != s:
                term = (b_s - b_r) ** n_r
                const = term if const is None else const * term
        if const is None:
            const = Fraction(1)
        expected = Poly.from_roots(
            [e for e in (part.padded(N)[j] + N - (j + 1) for j in range(N))]
        ).scale(const)
        chi_ok = regular and _poly_close(chi, expected, tol)
        exps = expected_exponents(part, N)
        repeated = False
        if tol is None and regular and not chi.is_zero():
            roots, repeated = _integer_roots(chi.monic(), -1, n + N + 2)
            if repeated:
                chi_ok = False
            got = roots
        else:
            got = exps if chi_ok else None
        indicial[s] = IndicialData(
            point=b_s, polynomial=chi, exponents=got, repeated=repeated
        )
        checks.append(
            MembershipCheck(
                f"indicial-exponents-at-point-{s}",
                chi_ok,
                f"expected exponents {exps}",
            )
        )

    return MembershipReport(ok=all(c.passed for c in checks), checks=checks, indicial=indicial)
