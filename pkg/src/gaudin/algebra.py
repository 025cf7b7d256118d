"""Weight bases and gl_N actions on tensor products of evaluation modules.

Vectors in V^{(x)n} are sparse dicts keyed by index tuples J = (j_1..j_n),
1 <= j_s <= N, where e_J = e_{j_1,1}v+ (x) ... (x) e_{j_n,1}v+.  Irreducible
factors L_mu sit inside V^{(x)|mu|} as the span of a singular vector under
lowering operators, so the evaluation action of the current algebra comes
for free: g(u) acts as the block-diagonal g divided by (u - b_s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .linalg import Matrix, nullspace
from .polynomials import Poly
from .ratfun import RatFun
from .scalars import iszero, promote_field


@dataclass(frozen=True)
class Partition:
    """Non-increasing tuple of non-negative integers."""

    parts: tuple

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in partition {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def padded(self, n: int) -> tuple:
        if len(self.parts) > n:
            if any(self.parts[n:]):
                raise ValueError(f"partition {self.parts} has more than {n} parts")
            return self.parts[:n]
        return self.parts + (0,) * (n - len(self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


@dataclass(frozen=True)
class ModuleSpec:
    """A tensor product of evaluation modules plus a target weight.

    rank N, twist exponents K (distinct), partitions Lambda with evaluation
    points b (distinct), and the weight lam cut out of the tensor product.
    """

    rank: int
    exponents: tuple
    partitions: tuple
    points: tuple
    weight: Partition

    def __init__(self, rank, exponents, partitions, points, weight):
        rank = int(rank)
        exponents = tuple(promote_field(list(exponents)))
        points = tuple(promote_field(list(points)))
        partitions = tuple(p if isinstance(p, Partition) else Partition(p) for p in partitions)
        weight = weight if isinstance(weight, Partition) else Partition(weight)
        if rank < 1:
            raise ValueError("rank must be positive")
        if len(exponents) != rank:
            raise ValueError("need one exponent per row index")
        if len(set(exponents)) != rank:
            raise ValueError("exponents must be pairwise distinct")
        if len(points) != len(partitions):
            raise ValueError("need one evaluation point per tensor factor")
        if len(set(points)) != len(points):
            raise ValueError("evaluation points must be pairwise distinct")
        for p in partitions + (weight,):
            p.padded(rank)
        if sum(p.weight for p in partitions) != weight.weight:
            raise ValueError("factor sizes do not add up to the target weight")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "partitions", partitions)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weight", weight)

    @property
    def factor_sizes(self) -> tuple:
        return tuple(p.weight for p in self.partitions)

    @property
    def size(self) -> int:
        return sum(self.factor_sizes)

    @property
    def all_vector_factors(self) -> bool:
        return all(n == 1 for n in self.factor_sizes)

    def pole_polynomial(self) -> Poly:
        """prod over s of (u - b_s)^{n_s}."""
        roots = []
        for b, n in zip(self.points, self.factor_sizes):
            roots.extend([b] * n)
        return Poly.from_roots(roots)


def weight_of_index(J, N):
    counts = [0] * N
    for j in J:
        counts[j - 1] += 1
    return tuple(counts)


def enumerate_indices(N: int, n: int, counts) -> list:
    """Index tuples with the given letter counts, in lexicographic order.

    Any non-negative count vector is allowed; weight subspaces exist for
    every weight, not only for partitions.
    """
    counts = list(counts) + [0] * (N - len(counts))
    if len(counts) > N or any(c < 0 for c in counts):
        raise ValueError(f"bad count vector {counts} for rank {N}")
    if sum(counts) != n:
        raise ValueError(f"weight {tuple(counts)} is not a weight of n={n} factors")
    return _indices_with_counts(N, n, counts)


def enumerate_weight_basis(N: int, n: int, lam) -> list:
    """All index tuples of weight lam in lexicographic order.

    The count is the multinomial n! / prod(lam_i!).
    """
    lam = lam if isinstance(lam, Partition) else Partition(lam)
    return enumerate_indices(N, n, lam.padded(N))


def act_e(i: int, j: int, s: int, J) -> tuple:
    """e_ij on factor s of a pure tensor; returns (new index, coeff) or None."""
    if J[s - 1] != j:
        return None
    new = list(J)
    new[s - 1] = i
    return tuple(new), 1


def apply_e_factor(i, j, s, vec):
    """Extend e_ij on factor s linearly over a sparse dict vector."""
    out = {}
    for J, c in vec.items():
        hit = act_e(i, j, s, J)
        if hit is None:
            continue
        K, f = hit
        out[K] = out.get(K, c * 0) + c * f
    return {K: c for K, c in out.items() if not iszero(c)}


def apply_e_block(i, j, factors, vec):
    """Sum of e_ij over the given factor positions (diagonal block action)."""
    out = {}
    for s in factors:
        for J, c in apply_e_factor(i, j, s, vec).items():
            out[J] = out.get(J, c * 0) + c
    return {K: c for K, c in out.items() if not iszero(c)}


def vec_weight(vec, N):
    J = next(iter(vec))
    return weight_of_index(J, N)


def find_singular_vector(N: int, size: int, mu) -> dict:
    """One exact singular vector of weight mu in V^{(x)size}.

    Solves the joint kernel of the simple raising operators e_{i,i+1}
    restricted to the weight-mu subspace; the reduced-row-echelon solution
    with the smallest free column is returned, scaled so its first nonzero
    coordinate is 1.  Annihilation by all e_ij with i < j follows from the
    simple-root case and is asserted in the test suite.
    """
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    if mu.weight != size:
        raise ValueError("partition size must match the number of factors")
    basis = enumerate_weight_basis(N, size, mu)
    rows = []
    for i in range(1, N):
        counts = list(mu.padded(N))
        if counts[i] == 0:
            continue
        counts[i - 1] += 1
        counts[i] -= 1
        target = {J: r for r, J in enumerate(_indices_with_counts(N, size, counts))}
        block = [[Fraction(0)] * len(basis) for _ in range(len(target))]
        for col, J in enumerate(basis):
            for s in range(1, size + 1):
                hit = act_e(i, i + 1, s, J)
                if hit is None:
                    continue
                K, f = hit
                block[target[K]][col] += f
        rows.extend(block)
    kernel = nullspace(rows, len(basis))
    if not kernel:
        raise ValueError(f"no singular vector of weight {mu.parts} in V^(x){size}")
    coords = kernel[0]
    return {J: c for J, c in zip(basis, coords) if not iszero(c)}


def _indices_with_counts(N, n, counts):
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for i in range(N):
            if remaining[i]:
                remaining[i] -= 1
                prefix.append(i + 1)
                rec(prefix, remaining)
                prefix.pop()
                remaining[i] += 1

    rec([], list(counts))
    return out


class _EchelonStore:
    """Per-weight echelon rows used during the lowering-span construction."""

    def __init__(self, N, size):
        self.rank = N
        self.size = size
        self.index_lists = {}
        self.rows = {}  # weight -> list of (pivot position, coord list)

    def _coords(self, vec, weight):
        if weight not in self.index_lists:
            self.index_lists[weight] = {
                J: k for k, J in enumerate(_indices_with_counts(self.rank, self.size, weight))
            }
        lookup = self.index_lists[weight]
        coords = [Fraction(0)] * len(lookup)
        for J, c in vec.items():
            coords[lookup[J]] = c
        return coords

    def insert(self, vec):
        """Reduce against stored rows; insert if independent.  Returns True if new."""
        weight = vec_weight(vec, self.rank)
        coords = self._coords(vec, weight)
        rows = self.rows.setdefault(weight, [])
        for pivot, row in rows:
            c = coords[pivot]
            if not iszero(c):
                coords = [a - c * b for a, b in zip(coords, row)]
        pivot = next((k for k, c in enumerate(coords) if not iszero(c)), None)
        if pivot is None:
            return False
        lead = coords[pivot]
        coords = [c / lead for c in coords]
        rows.append((pivot, coords))
        rows.sort(key=lambda pr: pr[0])
        return True

    def basis(self):
        """Weight -> list of sparse vectors, echelon rows sorted by pivot."""
        out = {}
        for weight in sorted(self.rows, reverse=True):
            lookup = _indices_with_counts(self.rank, self.size, weight)
            vecs = []
            for pivot, coords in self.rows[weight]:
                vecs.append(
                    (pivot, {lookup[k]: c for k, c in enumerate(coords) if not iszero(c)})
                )
            out[weight] = vecs
        return out


def irreducible_factor_basis(N: int, mu) -> dict:
    """Weight-graded basis of L_mu realized inside V^{(x)|mu|}.

    Spans the singular vector by breadth-first words in the lowering
    operators e_{i+1,i}, with exact rank updates; every basis row keeps a
    recorded pivot index so membership reduces to forward substitution.
    """
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    size = mu.weight
    store = _EchelonStore(N, size)
    seed = find_singular_vector(N, size, mu)
    store.insert(seed)
    frontier = [seed]
    while frontier:
        fresh = []
        for vec in frontier:
            for i in range(1, N):
                image = apply_e_block(i + 1, i, range(1, size + 1), vec)
                if image and store.insert(image):
                    fresh.append(image)
        frontier = fresh
    return store.basis()


class EmbeddedModule:
    """Basis of a tensor product of irreducible factors inside V^{(x)n}.

    Basis members carry a definite weight and a distinguished lead index
    tuple; lead tuples are distinct, so expressing any ambient vector in the
    basis is a forward substitution in lex order of the leads.
    """

    def __init__(self, spec: ModuleSpec):
        self.spec = spec
        N = spec.rank
        sizes = spec.factor_sizes
        offsets = []
        acc = 0
        for n_s in sizes:
            offsets.append(acc)
            acc += n_s
        self.size = acc
        self.factor_positions = [
            range(offsets[s] + 1, offsets[s] + sizes[s] + 1) for s in range(len(sizes))
        ]
        factor_bases = [irreducible_factor_basis(N, p) for p in spec.partitions]

        members = []  # (weight, lead tuple, sparse vector)
        for combo in product(*[sorted(fb, reverse=True) for fb in factor_bases]):
            total = tuple(sum(w[i] for w in combo) for i in range(N))
            index_lists = [
                _indices_with_counts(N, n_s, w) for n_s, w in zip(sizes, combo)
            ]
            for rows in product(*[fb[w] for fb, w in zip(factor_bases, combo)]):
                lead = tuple()
                vec = {(): Fraction(1)}
                for (pivot, fvec), idx_list in zip(rows, index_lists):
                    lead = lead + idx_list[pivot]
                    vec = {
                        J + J2: c * c2 for J, c in vec.items() for J2, c2 in fvec.items()
                    }
                members.append((total, lead, vec))
        members.sort(key=lambda m: (tuple(-x for x in m[0]), m[1]))
        self.members = members
        self.dim = len(members)
        self._by_lead = sorted(range(self.dim), key=lambda k: members[k][1])
        self._weights = {}
        for k, (w, _, _) in enumerate(members):
            self._weights.setdefault(w, []).append(k)

    @property
    def weights(self):
        return dict(self._weights)

    def weight_indices(self, lam) -> list:
        lam = lam.padded(self.spec.rank) if isinstance(lam, Partition) else tuple(lam)
        return list(self._weights.get(lam, []))

    def express(self, vec: dict) -> list:
        """Coordinates of an ambient vector in the embedded basis (exact)."""
        coeffs = [Fraction(0)] * self.dim
        work = dict(vec)
        for k in self._by_lead:
            _, lead, member = self.members[k]
            c = work.get(lead)
            if c is None or iszero(c):
                continue
            coeffs[k] = c
            for J, m in member.items():
                r = work.get(J, c * 0) - c * m
                if iszero(r):
                    work.pop(J, None)
                else:
                    work[J] = r
        if any(not iszero(c) for c in work.values()):
            raise ValueError("vector does not lie in the embedded module")
        return coeffs

    def matrix_of(self, apply_fn) -> Matrix:
        """Matrix (columns indexed by input basis member) of a linear map."""
        cols = []
        for _, _, vec in self.members:
            cols.append(self.express(apply_fn(vec)))
        return Matrix([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def e_point_matrices(self, i: int, j: int) -> list:
        """Per evaluation point s, the matrix of e_ij acting in block s."""
        out = []
        for positions in self.factor_positions:
            out.append(self.matrix_of(lambda vec: apply_e_block(i, j, positions, vec)))
        return out

    def e_series(self, i: int, j: int) -> RatFun:
        """Matrix of e_ij(u): sum_s (e_ij in block s) / (u - b_s)."""
        mats = self.e_point_matrices(i, j)
        points = self.spec.points
        den = Poly.from_roots(points)
        num = None
        for s, mat in enumerate(mats):
            rest = Poly.from_roots([b for r, b in enumerate(points) if r != s])
            term = Poly([c * mat for c in rest.coeffs])
            num = term if num is None else num + term
        return RatFun(num, den)

    def cartan_matrix(self, i: int) -> Matrix:
        """Matrix of the constant diagonal generator e_ii (all blocks)."""
        return self.matrix_of(lambda vec: apply_e_block(i, i, range(1, self.size + 1), vec))

    def ambient_weight_basis(self, lam) -> list:
        lam = lam if isinstance(lam, Partition) else Partition(lam)
        return enumerate_weight_basis(self.spec.rank, self.size, lam)

    def coordinate_matrix(self, lam) -> Matrix:
        """Rows are embedded weight-lam basis vectors in ambient coordinates."""
        counts = lam.padded(self.spec.rank) if isinstance(lam, Partition) else tuple(lam)
        idx = self.weight_indices(counts)
        ambient = {
            J: k for k, J in enumerate(_indices_with_counts(self.spec.rank, self.size, counts))
        }
        rows = []
        for k in idx:
            _, _, vec = self.members[k]
            row = [Fraction(0)] * len(ambient)
            for J, c in vec.items():
                row[ambient[J]] = c
            rows.append(row)
        return Matrix(rows)


def build_embedded_module(spec: ModuleSpec) -> EmbeddedModule:
    return EmbeddedModule(spec)
