"""
Endomorphism rings, Krull-Schmidt decomposition and isomorphism tests.

End(M) is computed from a Hom basis; its radical is the radical of the trace
form tr(xy), which is exact in characteristic zero. Splitting uses the Fitting
decomposition of an endomorphism whose minimal polynomial has two distinct
irreducible factors over the rationals.
"""

import logging
import itertools
from dataclasses import dataclass, field

import errors
import config_loader
from exact_linalg import (Matrix, ZERO, ONE, kernel_basis, image_basis, inverse,
                          minimal_polynomial, factor_polynomial, evaluate_polynomial, hstack)
from representation import (Morphism, identity, hom_basis, subrepresentation, linear_combination,
                            direct_sum, morphism_matrix)

logger = logging.getLogger(__name__)

SWEEP_LIMIT = 4000


def coefficient_sweep(n, bound, limit=SWEEP_LIMIT):
    """
    Deterministic coefficient vectors for searching a span: unit vectors, then
    pairwise sums, then all vectors with entries in [-bound, bound] by growing
    max-norm. At most `limit` vectors are produced.
    """
    seen = set()
    produced = 0

    def emit(vec):
        nonlocal produced
        if vec in seen or not any(vec):
            return False
        seen.add(vec)
        produced += 1
        return True

    for i in range(n):
        vec = tuple(ONE if k == i else ZERO for k in range(n))
        if emit(vec):
            yield vec
            if produced >= limit:
                return
    for i, j in itertools.combinations(range(n), 2):
        vec = tuple(ONE if k in (i, j) else ZERO for k in range(n))
        if emit(vec):
            yield vec
            if produced >= limit:
                return
    for norm in range(1, bound + 1):
        values = range(-norm, norm + 1)
        for combo in itertools.product(values, repeat=n):
            if max(abs(c) for c in combo) != norm:
                continue
            vec = tuple(ONE * c for c in combo)
            if emit(vec):
                yield vec
                if produced >= limit:
                    return


def _trace_product(f, g):
    return sum(sum(((f.maps[v] @ g.maps[v])[i, i] for i in range(f.maps[v].rows)), ZERO)
               for v in f.algebra.vertices)


@dataclass
class EndomorphismRing:
    """End(M) with the radical of its trace form"""
    module: object
    basis: list
    gram: Matrix
    radical: list = field(default_factory=list)

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def top_dimension(self):
        """dim End/rad"""
        return self.dimension - len(self.radical)

    def element(self, coeffs):
        return linear_combination(self.basis, coeffs, self.module, self.module)


def endomorphism_ring(module):
    basis = hom_basis(module, module)
    n = len(basis)
    gram = Matrix(n, n, [[_trace_product(basis[i], basis[j]) for j in range(n)] for i in range(n)])
    radical = kernel_basis(gram) if n else []
    return EndomorphismRing(module, basis, gram, radical)


def is_indecomposable(module):
    """Nonzero with local endomorphism ring (dim End/rad = 1)"""
    if module.is_zero():
        return False
    ring = endomorphism_ring(module)
    return ring.top_dimension == 1


@dataclass
class Summand:
    """One indecomposable piece with its inclusion into and projection from the original module"""
    module: object
    inclusion: Morphism
    projection: Morphism


@dataclass
class DecomposedModule:
    """Indecomposable summands grouped by isomorphism class"""
    original: object
    pieces: list
    summands: list

    @property
    def size(self):
        """Number of pairwise non-isomorphic summands, |M|"""
        return len(self.summands)

    @property
    def is_basic(self):
        return all(mult == 1 for _, mult in self.summands)

    def verify(self):
        """Check that the inclusions and projections split the original module"""
        total = None
        for i, p in enumerate(self.pieces):
            for j, q in enumerate(self.pieces):
                composite = q.projection @ p.inclusion
                expected_identity = i == j
                if expected_identity and not composite.is_isomorphism():
                    return False
                if not expected_identity and not composite.is_zero():
                    return False
            term = p.inclusion @ p.projection
            total = term if total is None else total + term
        if total is None:
            return self.original.is_zero()
        return all(total.maps[v] == Matrix.identity(d) for v, d in self.original.dims.items())

    def to_json(self):
        return [{"module": m.to_json(), "dimension_vector": list(m.dimension_vector()),
                 "multiplicity": mult} for m, mult in self.summands]


def _power(f, n):
    maps = {}
    for v, m in f.maps.items():
        result = Matrix.identity(m.rows)
        for _ in range(n):
            result = result @ m
        maps[v] = result
    return Morphism(f.source, f.target, maps, check=False)


def _splitting_endomorphism(ring, sweep_bound):
    n = ring.dimension
    for coeffs in coefficient_sweep(n, sweep_bound):
        phi = ring.element(coeffs)
        factors = factor_polynomial(minimal_polynomial(morphism_matrix(phi)))
        if len(factors) >= 2:
            return phi, factors
    return None, None


def _fitting_split(module, phi, factor):
    """Split M = ker psi^N + im psi^N for psi = factor(phi)"""
    n = module.total_dimension
    psi_maps = {v: evaluate_polynomial(factor, m) for v, m in phi.maps.items()}
    psi = Morphism(module, module, psi_maps, check=False)
    psi_n = _power(psi, n)
    ker_spaces = {v: kernel_basis(m) for v, m in psi_n.maps.items()}
    im_spaces = {v: image_basis(m) for v, m in psi_n.maps.items()}
    kernel_part, kernel_inclusion = subrepresentation(module, ker_spaces)
    image_part, image_inclusion = subrepresentation(module, im_spaces)
    kernel_projection = {}
    image_projection = {}
    for v in module.algebra.vertices:
        k = kernel_part.dims[v]
        d = module.dims[v]
        if d == 0:
            kernel_projection[v] = Matrix.zeros(0, 0)
            image_projection[v] = Matrix.zeros(0, 0)
            continue
        change = hstack([kernel_inclusion.maps[v], image_inclusion.maps[v]], d)
        inv = inverse(change)
        kernel_projection[v] = inv.submatrix(range(k), range(d))
        image_projection[v] = inv.submatrix(range(k, d), range(d))
    return [
        (kernel_part, kernel_inclusion, Morphism(module, kernel_part, kernel_projection, check=False)),
        (image_part, image_inclusion, Morphism(module, image_part, image_projection, check=False)),
    ]


def _split(module, sweep_bound):
    ring = endomorphism_ring(module)
    if ring.top_dimension == 1:
        return [Summand(module, identity(module), identity(module))]
    phi, factors = _splitting_endomorphism(ring, sweep_bound)
    if phi is None:
        raise errors.NonSplitEndomorphismError(
            f"End/rad of dimension {ring.top_dimension} has no split element in the sweep; "
            "the module may not split over the rationals")
    logger.debug(f"Splitting module of dimension {module.total_dimension} "
                 f"with an endomorphism of {len(factors)} irreducible factors")
    pieces = []
    for part, inclusion, projection in _fitting_split(module, phi, factors[0][0]):
        for sub in _split(part, sweep_bound):
            pieces.append(Summand(sub.module, inclusion @ sub.inclusion, sub.projection @ projection))
    return pieces


def decompose(module, sweep_bound=None):
    """Krull-Schmidt decomposition with multiplicities and splitting certificates"""
    if sweep_bound is None:
        sweep_bound = config_loader.config.sweep_bound
    if module.is_zero():
        return DecomposedModule(module, [], [])
    pieces = _split(module, sweep_bound)
    classes = []
    for piece in pieces:
        for entry in classes:
            if isomorphic_indecomposables(entry[0], piece.module):
                entry[1] += 1
                break
        else:
            classes.append([piece.module, 1])
    order = {v: i for i, v in enumerate(module.algebra.vertices)}
    classes.sort(key=lambda e: (e[0].total_dimension, [e[0].dims[v] for v in sorted(order, key=order.get)]))
    logger.debug(f"Decomposed module of dimension {module.total_dimension} into "
                 f"{len(pieces)} pieces, {len(classes)} isomorphism classes")
    return DecomposedModule(module, pieces, [(m, mult) for m, mult in classes])


def isomorphic_indecomposables(m, n):
    """Exact for indecomposables: the non-isomorphisms form a proper subspace of Hom"""
    return _find_isomorphism_in_basis(m, n) is not None


def _find_isomorphism_in_basis(m, n):
    if m.dimension_vector() != n.dimension_vector():
        return None
    if m.is_zero():
        return Morphism(m, n, check=False)
    for f in hom_basis(m, n):
        if f.is_isomorphism():
            return f
    return None


def find_isomorphism(m, n, sweep_bound=None):
    """An isomorphism m -> n, or None"""
    if m.algebra is not n.algebra:
        raise errors.AlgebraMismatchError("Isomorphism test across different algebras")
    if sweep_bound is None:
        sweep_bound = config_loader.config.sweep_bound
    if m.dimension_vector() != n.dimension_vector():
        return None
    if m.is_zero():
        return Morphism(m, n, check=False)
    basis = hom_basis(m, n)
    if not basis:
        return None
    for coeffs in coefficient_sweep(len(basis), sweep_bound):
        f = linear_combination(basis, coeffs, m, n)
        if f.is_isomorphism():
            return f
    logger.warning("Isomorphism sweep exhausted; comparing decompositions")
    left = decompose(m, sweep_bound)
    right = decompose(n, sweep_bound)
    if not same_summands(left, right):
        return None
    # the summands match, so assemble the isomorphism piecewise
    remaining = list(right.pieces)
    total = None
    for piece in left.pieces:
        for k, other in enumerate(remaining):
            iso = _find_isomorphism_in_basis(piece.module, other.module)
            if iso is not None:
                term = other.inclusion @ iso @ piece.projection
                total = term if total is None else total + term
                remaining.pop(k)
                break
    return total


def same_summands(left, right):
    if len(left.summands) != len(right.summands):
        return False
    unmatched = list(right.summands)
    for module, mult in left.summands:
        for k, (other, other_mult) in enumerate(unmatched):
            if mult == other_mult and isomorphic_indecomposables(module, other):
                unmatched.pop(k)
                break
        else:
            return False
    return True


def is_isomorphic(m, n, sweep_bound=None):
    return find_isomorphism(m, n, sweep_bound) is not None


def is_basic(module, sweep_bound=None):
    return decompose(module, sweep_bound).is_basic


def reassemble(decomposed):
    """Direct sum of the summands with multiplicities, with an isomorphism to the original"""
    parts = []
    for module, mult in decomposed.summands:
        parts.extend([module] * mult)
    total, _, _ = direct_sum(parts, algebra=decomposed.original.algebra)
    return total, find_isomorphism(total, decomposed.original)
