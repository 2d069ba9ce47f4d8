"""
Projective presentations, Ext^1, the Nakayama functor and the
Auslander-Reiten translates.

Ext^1(B, A) is computed as Hom(Omega B, A) modulo the restrictions of maps
P0 -> A, where 0 -> Omega B -> P0 -> B -> 0 is the projective cover. The
translate tau M is the kernel of nu(p1) for a minimal presentation
P1 -> P0 -> M, and tau^- is computed as D tau D over the opposite algebra.
"""

import logging
import functools
from dataclasses import dataclass, field

import errors
from exact_linalg import Matrix, ZERO, hstack, vstack, solve, solve_matrix, reduce_rows, kernel_basis
from quiver_algebra import Path
from representation import (Representation, Morphism, direct_sum, zero_module, zero_morphism, top, hom_basis,
                            hom_dimension, projective, morphism_from_projective, coordinates, flatten, dual,
                            linear_combination)
from decomposition import endomorphism_ring

logger = logging.getLogger(__name__)


def _sparse(vec):
    return {i: x for i, x in enumerate(vec) if x}


def independent_extension(base, candidates):
    """Indices of the candidates that greedily extend the span of `base`"""
    pivots = reduce_rows([_sparse(v) for v in base])
    chosen = []
    for i, vec in enumerate(candidates):
        grown = reduce_rows(list(pivots.values()) + [_sparse(vec)])
        if len(grown) > len(pivots):
            chosen.append(i)
            pivots = grown
    return chosen


@dataclass
class ProjectivePresentation:
    """P1 --p1--> P0 --p0--> M --> 0 with the syzygy Omega M = ker p0"""
    module: Representation
    P0: Representation
    p0: Morphism
    P1: Representation
    p1: Morphism
    syzygy: Representation
    syzygy_inclusion: Morphism
    generators0: list = field(default_factory=list)
    generators1: list = field(default_factory=list)
    minimal: bool = True

    def is_exact(self):
        if not self.p0.is_surjective():
            return False
        if not (self.p0 @ self.p1).is_zero():
            return False
        kernel, _ = self.p0.kernel()
        return kernel.total_dimension == self.p1.rank()

    def is_minimal(self):
        """P0 has exactly as many summands P(v) as top M has copies of S(v)"""
        top_module, _ = top(self.module)
        counts = {v: 0 for v in self.module.algebra.vertices}
        for v in self.generators0:
            counts[v] += 1
        return counts == top_module.dims

    def summary(self):
        return {
            "P0": _projective_label(self.generators0),
            "P1": _projective_label(self.generators1),
            "syzygy_dimension_vector": list(self.syzygy.dimension_vector()),
        }


def _projective_label(vertices):
    return "⊕".join(f"P({v})" for v in vertices) or "0"


def _cover(module):
    """(P0, p0, generator vertices) for the projective cover of a module"""
    alg = module.algebra
    top_module, q = top(module)
    gens = []
    for v in alg.vertices:
        qv = q.maps[v]
        if not qv.rows:
            continue
        section = solve_matrix(qv, Matrix.identity(qv.rows))
        for i in range(qv.rows):
            gens.append((v, section.column(i)))
    if not gens:
        zero = zero_module(alg)
        return zero, zero_morphism(zero, module), []
    pieces = [morphism_from_projective(v, module, element) for v, element in gens]
    P0, _, _ = direct_sum([f.source for f in pieces], algebra=alg,
                          name=_projective_label([v for v, _ in gens]))
    maps = {w: hstack([f.maps[w] for f in pieces], module.dims[w]) for w in alg.vertices}
    return P0, Morphism(P0, module, maps, check=False), [v for v, _ in gens]


def projective_cover(module):
    """Minimal two-step projective presentation of a module"""
    P0, p0, gens0 = _cover(module)
    syzygy, inclusion = p0.kernel()
    P1, cover1, gens1 = _cover(syzygy)
    p1 = inclusion @ cover1
    logger.debug(f"Presentation of {module!r}: P0={_projective_label(gens0)}, P1={_projective_label(gens1)}")
    return ProjectivePresentation(module, P0, p0, P1, p1, syzygy, inclusion, gens0, gens1, True)


def is_projective_module(module):
    return projective_cover(module).syzygy.is_zero()


def is_injective_module(module):
    return is_projective_module(dual(module))


@dataclass
class ExtElement:
    """A class in Ext^1(source, target), represented by a cocycle Omega(source) -> target"""
    source: Representation
    target: Representation
    cocycle: Morphism
    presentation: ProjectivePresentation = field(repr=False)

    def to_json(self):
        return {"cocycle": self.cocycle.to_json()}


class ExtSpace:
    """Ext^1(B, A) = Hom(Omega B, A) / { g . iota : g in Hom(P0, A) }"""

    def __init__(self, source, target):
        if source.algebra is not target.algebra:
            raise errors.AlgebraMismatchError("Ext between modules over different algebras")
        self.source = source
        self.target = target
        self.presentation = projective_cover(source)
        iota = self.presentation.syzygy_inclusion
        self.cocycles = hom_basis(self.presentation.syzygy, target)
        self.coboundaries = [g @ iota for g in hom_basis(self.presentation.P0, target)]
        boundary_vectors = [flatten(b) for b in self.coboundaries]
        chosen = independent_extension(boundary_vectors, [flatten(c) for c in self.cocycles])
        self.basis = [self.cocycles[i] for i in chosen]
        logger.debug(f"dim Ext^1({source!r}, {target!r}) = {len(self.basis)}")

    @property
    def dimension(self):
        return len(self.basis)

    def elements(self):
        return [ExtElement(self.source, self.target, c, self.presentation) for c in self.basis]

    def element(self, coeffs):
        cocycle = linear_combination(self.basis, coeffs, self.presentation.syzygy, self.target)
        return ExtElement(self.source, self.target, cocycle, self.presentation)

    def coordinates(self, cocycle):
        """Coordinates of a cocycle's class in the chosen basis"""
        spanning = self.basis + self.coboundaries
        if not spanning:
            return []
        columns = [flatten(g) for g in spanning]
        target = flatten(cocycle)
        x = solve(Matrix.from_columns(columns, len(target)), target)
        if x is None:
            raise ValueError("Map is not a cocycle of this Ext space")
        return x[:len(self.basis)]

    def is_zero_class(self, cocycle):
        return not any(self.coordinates(cocycle))


def ext1_basis(source, target):
    """Basis of Ext^1(source, target) as ExtElements"""
    return ExtSpace(source, target).elements()


def ext1_dimension(source, target):
    if source.algebra is not target.algebra:
        raise errors.AlgebraMismatchError("Ext between modules over different algebras")
    if source.is_zero() or target.is_zero():
        return 0
    return ExtSpace(source, target).dimension


def realize_extension(element):
    """Pushout middle term E of 0 -> A -> E -> B -> 0; returns (E, inclusion, projection)"""
    pres = element.presentation
    A, B = element.target, element.source
    total, injections, projections = direct_sum([A, pres.P0], algebra=A.algebra)
    phi = injections[0] @ element.cocycle - injections[1] @ pres.syzygy_inclusion
    middle, pi = phi.cokernel()
    inclusion = pi @ injections[0]
    onto = pres.p0 @ projections[1]
    maps = {}
    for v in A.algebra.vertices:
        section = solve_matrix(pi.maps[v], Matrix.identity(middle.dims[v]))
        maps[v] = onto.maps[v] @ section
    projection = Morphism(middle, B, maps, check=False)
    return middle, inclusion, projection


@functools.lru_cache(maxsize=256)
def _arrow_map(algebra, arrow_name):
    """lambda_a : P(v) -> P(u), left multiplication by a : u -> v"""
    a = algebra.quiver.arrow(arrow_name)
    p_u = projective(algebra, a.source)
    paths = algebra.basis_between(a.source, a.target)
    form = algebra.normal_form(Path(a.source, a.target, (arrow_name,)))
    element = [form.get(p, ZERO) for p in paths]
    return morphism_from_projective(a.target, p_u, element)


def _nakayama_object(module):
    """nu M with (nu M)_v = D Hom(M, P(v)), together with the Hom bases used"""
    alg = module.algebra
    bases = {v: hom_basis(module, projective(alg, v)) for v in alg.vertices}
    maps = {}
    for a in alg.arrows:
        u, v = a.source, a.target
        lam = _arrow_map(alg, a.name)
        columns = [coordinates(bases[u], lam @ g) for g in bases[v]]
        pullback = Matrix.from_columns(columns, len(bases[u]))
        maps[a.name] = pullback.transpose()
    dims = {v: len(b) for v, b in bases.items()}
    name = f"ν{module.name}" if module.name else ""
    return Representation(alg, dims, maps, name=name, check=False), bases


def _nakayama_map(f, source_data, target_data):
    nu_source, source_bases = source_data
    nu_target, target_bases = target_data
    maps = {}
    for v in f.algebra.vertices:
        columns = [coordinates(source_bases[v], h @ f) for h in target_bases[v]]
        maps[v] = Matrix.from_columns(columns, len(source_bases[v])).transpose()
    return Morphism(nu_source, nu_target, maps, check=False)


def nakayama(module):
    """Nakayama functor nu = D Hom(-, A); sends P(v) to I(v)"""
    return _nakayama_object(module)[0]


def nakayama_morphism(f):
    return _nakayama_map(f, _nakayama_object(f.source), _nakayama_object(f.target))


def tau(module):
    """Auslander-Reiten translate: the kernel of nu(p1) for a minimal presentation"""
    if module.is_zero():
        return zero_module(module.algebra)
    pres = projective_cover(module)
    if pres.P1.is_zero():
        return zero_module(module.algebra)
    nu_p1 = _nakayama_map(pres.p1, _nakayama_object(pres.P1), _nakayama_object(pres.P0))
    kernel, _ = nu_p1.kernel()
    if module.name:
        kernel = kernel.renamed(f"τ{module.name}")
    logger.debug(f"tau of {module!r} has dimension vector {kernel.dimension_vector()}")
    return kernel


def tau_inverse(module):
    """Inverse translate, computed as D tau D over the opposite algebra"""
    if module.is_zero():
        return zero_module(module.algebra)
    result = dual(tau(dual(module)))
    if module.name:
        result = result.renamed(f"τ⁻{module.name}")
    return result


def is_tau_rigid(module):
    """Hom(M, tau M) = 0"""
    return hom_dimension(module, tau(module)) == 0


def is_tau_minus_rigid(module):
    """Hom(tau^- M, M) = 0"""
    return hom_dimension(tau_inverse(module), module) == 0


def is_ext_projective_in(module, modules):
    """Ext^1(module, Y) = 0 for every Y in the list"""
    return all(ext1_dimension(module, other) == 0 for other in modules)


def is_ext_injective_in(module, modules):
    """Ext^1(Y, module) = 0 for every Y in the list"""
    return all(ext1_dimension(other, module) == 0 for other in modules)


def euler_form(algebra, d, e):
    """sum_v d_v e_v - sum_{a: i -> j} d_i e_j on dimension vectors keyed by vertex"""
    value = sum(d[v] * e[v] for v in algebra.vertices)
    value -= sum(d[a.source] * e[a.target] for a in algebra.arrows)
    return value


def _lift_endomorphism(pres, r):
    """Restriction to the syzygy of a lift P0 -> P0 of an endomorphism r of the presented module"""
    maps_p0 = hom_basis(pres.P0, pres.P0)
    images = [pres.p0 @ g for g in maps_p0]
    coeffs = coordinates(images, r @ pres.p0)
    if coeffs is None:
        raise errors.CapabilityError("Endomorphism does not lift to the projective cover")
    r0 = linear_combination(maps_p0, coeffs, pres.P0, pres.P0)
    moved = r0 @ pres.syzygy_inclusion
    iota = pres.syzygy_inclusion
    maps = {v: solve_matrix(iota.maps[v], moved.maps[v]) for v in pres.module.algebra.vertices}
    return Morphism(pres.syzygy, pres.syzygy, maps, check=False)


def ar_sequence(module, translate=None):
    """
    Almost split sequence 0 -> tau X -> E -> X -> 0 ending in a non-projective
    indecomposable X. Its class spans the socle of Ext^1(X, tau X) as a module
    over End(X). Returns (E, inclusion, projection, tau X).
    """
    if translate is None:
        translate = tau(module)
    if translate.is_zero():
        raise errors.PreconditionError("Almost split sequences end in non-projective indecomposables")
    space = ExtSpace(module, translate)
    if space.dimension == 0:
        raise errors.VerificationFailure("Ext^1(X, tau X) vanishes for a non-projective indecomposable")
    if space.dimension == 1:
        element = space.elements()[0]
    else:
        ring = endomorphism_ring(module)
        actions = []
        for coeffs in ring.radical:
            r = ring.element(coeffs)
            r1 = _lift_endomorphism(space.presentation, r)
            columns = [space.coordinates(c @ r1) for c in space.basis]
            actions.append(Matrix.from_columns(columns, space.dimension))
        socle = kernel_basis(vstack(actions, space.dimension)) if actions else []
        if not socle:
            raise errors.VerificationFailure("Ext^1(X, tau X) has zero socle over End(X)")
        element = space.element(socle[0])
    middle, inclusion, projection = realize_extension(element)
    return middle, inclusion, projection, translate


