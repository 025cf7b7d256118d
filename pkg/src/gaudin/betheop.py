"""The universal differential operator acting on an embedded module.

The operator is the row determinant of the rank-N matrix whose diagonal
carries d/du - K_i - e_ii(u) and whose (i, j) entry off the diagonal is
-e_ji(u); note the transposed generator indexing.  Expanding on a concrete
module gives a monic operator of order N whose coefficients are exact
matrix-valued rational functions with poles at the evaluation points only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import EmbeddedModule, ModuleSpec
from .diffops import DiffOp, rdet
from .linalg import Matrix
from .polynomials import Poly, falling_product
from .ratfun import RatFun


def exact_sample_points(avoid, count: int, start: int = 2):
    """Deterministic small integers avoiding the given exact points."""
    avoid = set(avoid)
    out = []
    candidate = start
    while len(out) < count:
        c = Fraction(candidate)
        if c not in avoid:
            out.append(c)
        candidate += 1
    return out


@dataclass
class BetheOperator:
    """Monic order-N operator with matrix rational-function coefficients."""

    spec: ModuleSpec
    module: EmbeddedModule
    operator: DiffOp
    coefficients: list  # B_1 .. B_N as matrix-valued RatFun on the full module

    @property
    def rank(self) -> int:
        return self.spec.rank

    def coefficient(self, i: int) -> RatFun:
        """B_i(u), i = 1..N; B_0 is the identity."""
        if i == 0:
            return RatFun.constant(Matrix.identity(self.module.dim))
        return self.coefficients[i - 1]

    def evaluate(self, i: int, point) -> Matrix:
        """Exact value of B_i at a sample point away from the poles."""
        c = self.coefficient(i)
        if c.is_zero():
            return Matrix.zeros(self.module.dim, self.module.dim)
        return c.evaluate(point)

    def block(self, i: int, lam=None) -> RatFun:
        """B_i restricted to the weight block (target weight by default)."""
        lam = self.spec.weight if lam is None else lam
        idx = self.module.weight_indices(lam)
        c = self.coefficient(i)
        if c.is_zero():
            return RatFun(Poly())
        num = c.num.map(lambda m: m.submatrix(idx, idx))
        return RatFun(num, c.den, reduce=False)

    def block_evaluate(self, i: int, point, lam=None) -> Matrix:
        lam = self.spec.weight if lam is None else lam
        idx = self.module.weight_indices(lam)
        return self.evaluate(i, point).submatrix(idx, idx)


def build_bethe_operator(spec: ModuleSpec, module: EmbeddedModule = None) -> BetheOperator:
    """Expand the row determinant on the full embedded module."""
    if module is None:
        module = EmbeddedModule(spec)
    N = spec.rank
    dim = module.dim
    ident = RatFun.constant(Matrix.identity(dim))
    entries = []
    for i in range(N):
        row = []
        for j in range(N):
            series = module.e_series(j + 1, i + 1)  # -e_ji(u) at row i, column j
            if i == j:
                zero_order = RatFun.constant(Matrix.identity(dim) * (-spec.exponents[i])) - series
                row.append(DiffOp([zero_order, ident]))
            else:
                row.append(DiffOp([-series]))
        entries.append(row)
    op = rdet(entries)
    if op.order != N:
        raise ValueError(f"row determinant has order {op.order}, expected {N}")
    if not op.is_monic:
        raise ValueError("row determinant is not monic")
    coeffs = [op.coeff_of_dpower_from_top(i) for i in range(1, N + 1)]
    return BetheOperator(spec=spec, module=module, operator=op, coefficients=coeffs)


def first_coefficient_residual(op: BetheOperator) -> RatFun:
    """B_1(u) + sum_i (K_i + e_ii(u)); identically zero by construction."""
    total = op.coefficient(1)
    dim = op.module.dim
    for i in range(1, op.rank + 1):
        total = total + op.module.e_series(i, i)
        total = total + RatFun.constant(Matrix.identity(dim) * op.spec.exponents[i - 1])
    return total


def leading_symbol(op: BetheOperator) -> Poly:
    """Matrix polynomial sum_i B_{i0} a^{N-i} from the constant terms at infinity.

    Equals prod_i (a - K_i) times the identity.
    """
    N = op.rank
    dim = op.module.dim
    coeffs = [None] * (N + 1)
    coeffs[N] = Matrix.identity(dim)
    for i in range(1, N + 1):
        c = op.coefficient(i)
        if c.is_zero():
            coeffs[N - i] = Matrix.zeros(dim, dim)
        else:
            coeffs[N - i] = c.expand_at_infinity(1)[0]
    return Poly(coeffs)


def expected_leading_symbol(op: BetheOperator) -> Poly:
    dim = op.module.dim
    scalar = Poly.from_roots(op.spec.exponents)
    return Poly([c * Matrix.identity(dim) for c in scalar.coeffs])


@dataclass
class PolynomialityReport:
    """Cleared coefficients A_i(u) = B_i(u) * prod_s (u - b_s)^{n_s} and checks."""

    cleared: list  # matrix Poly per i = 1..N
    degrees: list
    pole_orders: dict  # (i, s) -> observed pole order of B_i at b_s
    scalar_values: dict  # (i, s) -> leading local coefficient as a scalar
    indicial_ok: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.indicial_ok and not self.failures


def check_polynomiality(op: BetheOperator) -> PolynomialityReport:
    """Clear the poles of every B_i and verify the local structure.

    Checks, exactly: the cleared products are matrix polynomials of degree
    at most n; the leading local coefficient of each B_i at each point is a
    scalar matrix; and the indicial identity at each point b_s,

        sum_i C_{i, n_s - i, s} * a(a-1)...(a-(N-i-1))
            = prod_{r != s} (b_s - b_r)^{n_r} * prod_l (a - lam^(s)_l - N + l),

    where C_{i, j, s} is the (u - b_s)^j Taylor coefficient of the cleared
    A_i and missing (negative-j) coefficients are zero.
    """
    spec = op.spec
    N = spec.rank
    dim = op.module.dim
    n = spec.size
    pole = spec.pole_polynomial()
    failures = []
    cleared = []
    degrees = []
    pole_orders = {}
    scalar_values = {}
    zero = Matrix.zeros(dim, dim)

    cleared_rats = []
    for i in range(1, N + 1):
        prod = op.coefficient(i) * RatFun(pole)
        if prod.den.degree != 0:
            failures.append(f"B_{i} * pole polynomial is not polynomial")
            prod = RatFun(prod.num, Poly([Fraction(1)]), reduce=False)
        cleared_rats.append(prod.num)
        cleared.append(prod.num)
        degrees.append(prod.num.degree)
        if prod.num.degree > n:
            failures.append(f"cleared A_{i} has degree {prod.num.degree} > {n}")

    indicial_ok = True
    for s, (b_s, n_s, part) in enumerate(
        zip(spec.points, spec.factor_sizes, spec.partitions)
    ):
        taylors = []
        a0 = pole.taylor_at(b_s, n + 1)
        taylors.append([c * Matrix.identity(dim) for c in a0])
        for i in range(1, N + 1):
            ai = cleared[i - 1]
            tc = ai.taylor_at(b_s, n + 1) if not ai.is_zero() else [zero] * (n + 1)
            taylors.append(tc)
            # observed pole order of B_i at b_s = n_s - vanishing order of A_i
            vanish = 0
            while vanish < len(tc) and tc[vanish].is_zero():
                vanish += 1
            pole_orders[i, s] = max(0, n_s - vanish)
            j = n_s - i
            local = tc[j] if 0 <= j < len(tc) else zero
            c = local.scalar_of_identity()
            if c is None:
                failures.append(
                    f"leading local coefficient of B_{i} at point {b_s} is not scalar"
                )
            else:
                scalar_values[i, s] = c
        # indicial identity at b_s
        lhs = Poly()
        for i in range(0, N + 1):
            j = n_s - i
            tc = taylors[i]
            local = tc[j] if 0 <= j < len(tc) else zero
            lhs = lhs + falling_product(N - i).scale(local)
        const = Fraction(1)
        for r, (b_r, n_r) in enumerate(zip(spec.points, spec.factor_sizes)):
            if r != s:
                const = const * (b_s - b_r) ** n_r
        expected_scalar = Poly.from_roots(
            [l_val + N - (l_idx + 1) for l_idx, l_val in enumerate(part.padded(N))]
        ).scale(const)
        expected = Poly([c * Matrix.identity(dim) for c in expected_scalar.coeffs])
        if lhs != expected:
            indicial_ok = False
            failures.append(f"indicial identity fails at point {b_s}")

    return PolynomialityReport(
        cleared=cleared,
        degrees=degrees,
        pole_orders=pole_orders,
        scalar_values=scalar_values,
        indicial_ok=indicial_ok,
        failures=failures,
    )


def commutativity_check(op: BetheOperator, sample_points=None) -> bool:
    """All pairwise commutators of coefficient values vanish exactly.

    Also checks commutation with every diagonal generator e_ii, i.e. with
    the Cartan subalgebra, which forces weight-block structure.
    """
    if sample_points is None:
        sample_points = exact_sample_points(op.spec.points, 5)
    values = [
        op.evaluate(i, pt) for i in range(1, op.rank + 1) for pt in sample_points
    ]
    for a in range(len(values)):
        for b in range(a + 1, len(values)):
            if not values[a].commutator(values[b]).is_zero():
                return False
    cartans = [op.module.cartan_matrix(i) for i in range(1, op.rank + 1)]
    for v in values:
        for h in cartans:
            if not v.commutator(h).is_zero():
                return False
    return True


def weight_blocks_preserved(op: BetheOperator, sample_points=None) -> bool:
    """Coefficient values vanish between different weight blocks."""
    from .scalars import iszero

    if sample_points is None:
        sample_points = exact_sample_points(op.spec.points, 2)
    index_weight = {}
    for w, idx in op.module.weights.items():
        for k in idx:
            index_weight[k] = w
    for i in range(1, op.rank + 1):
        for pt in sample_points:
            m = op.evaluate(i, pt)
            for r in range(m.rows):
                for c in range(m.cols):
                    if index_weight[r] != index_weight[c] and not iszero(m.get(r, c)):
                        return False
    return True
