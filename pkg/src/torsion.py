"""
Torsion classes and torsion pairs over an enumerated universe of indecomposables.

A torsion class is stored extensionally as the set of labels of the
indecomposables it contains; the zero module is always implicitly a member.
Membership of arbitrary modules is decided with Hom orthogonality once the
class is completed to a pair.
"""

import logging
import itertools
from dataclasses import dataclass

import errors
import config_loader
from exact_linalg import ONE, ZERO
from representation import trace_of, reject_of, quotient, hom_basis, hom_dimension
from homological import ExtSpace, realize_extension

logger = logging.getLogger(__name__)

ALL_CLASSES_LIMIT = 16


def in_gen(generator, module):
    """module in Fac(generator): the trace of the generator is everything"""
    sub, _ = trace_of([generator], module)
    return sub.total_dimension == module.total_dimension


def in_cogen(cogenerator, module):
    """module in Sub(cogenerator): the reject of the cogenerator vanishes"""
    sub, _ = reject_of([cogenerator], module)
    return sub.is_zero()


def filtered_by_quotients(generators, module):
    """Whether the module has a filtration with factors in Fac(generators)"""
    current = module
    while not current.is_zero():
        layer, inclusion = trace_of(generators, current)
        if layer.is_zero():
            return False
        current, _ = quotient(current, sub_columns(inclusion))
    return True


def sub_columns(inclusion):
    """Columns of an inclusion, vertex by vertex, as spanning vectors"""
    return {v: [m.column(j) for j in range(m.cols)] for v, m in inclusion.maps.items()}


def filtered_by_submodules(cogenerators, module):
    """Whether the module has a filtration with factors in Sub(cogenerators)"""
    current = module
    while not current.is_zero():
        sub, _ = reject_of(cogenerators, current)
        if sub.total_dimension == current.total_dimension:
            return False
        current = sub
    return True


@dataclass(frozen=True)
class TorsionClass:
    """A set of indecomposable labels, closed under quotients and extensions"""
    universe: object
    members: frozenset

    def __contains__(self, label):
        return self.universe.canonical(label) in self.members

    def modules(self):
        return [self.universe.module(label) for label in self.sorted_members()]

    def sorted_members(self):
        return sorted(self.members, key=self.universe.sort_key)

    def contains(self, module):
        return all(label in self.members for label in self.universe.decompose_to_labels(module))

    def to_json(self):
        return {"mode": "add", "modules": self.sorted_members()}


@dataclass(frozen=True)
class TorsionPair:
    """(T, F) with F = T-perp and T = perp-F over the universe"""
    torsion: TorsionClass
    free: frozenset

    @property
    def universe(self):
        return self.torsion.universe

    def sorted_free(self):
        return sorted(self.free, key=self.universe.sort_key)

    def free_modules(self):
        return [self.universe.module(label) for label in self.sorted_free()]

    def contains(self, module):
        """module in T, i.e. Hom(module, F) = 0"""
        return all(hom_dimension(module, f) == 0 for f in self.free_modules())

    def contains_free(self, module):
        """module in F, i.e. Hom(T, module) = 0"""
        return all(hom_dimension(t, module) == 0 for t in self.torsion.modules())

    def to_json(self):
        return {"torsion": self.torsion.sorted_members(), "free": self.sorted_free()}


def perp_right(universe, labels):
    """Labels Y with Hom(X, Y) = 0 for every X in labels"""
    return frozenset(y for y in universe.labels if all(universe.hom_dimension(x, y) == 0 for x in labels))


def perp_left(universe, labels):
    """Labels X with Hom(X, Y) = 0 for every Y in labels"""
    return frozenset(x for x in universe.labels if all(universe.hom_dimension(x, y) == 0 for y in labels))


def smallest_torsion_class(universe, generators):
    """T(C): the indecomposables filtered by quotients of the generators"""
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        return TorsionClass(universe, frozenset())
    members = frozenset(e.label for e in universe if filtered_by_quotients(generators, e.module))
    logger.debug(f"Smallest torsion class has {len(members)} indecomposables")
    return TorsionClass(universe, members)


def smallest_torsion_free_class(universe, cogenerators):
    """F(C): the indecomposables filtered by submodules of the cogenerators"""
    cogenerators = [c for c in cogenerators if not c.is_zero()]
    if not cogenerators:
        return frozenset()
    return frozenset(e.label for e in universe if filtered_by_submodules(cogenerators, e.module))


def _ext_combinations(dimension, limit):
    if dimension == 0:
        return []
    if dimension <= limit:
        return [c for c in itertools.product((ZERO, ONE), repeat=dimension) if any(c)]
    singles = [tuple(ONE if i == j else ZERO for j in range(dimension)) for i in range(dimension)]
    return singles + [tuple(ONE for _ in range(dimension))]


def closure_witness(universe, members):
    """A quotient or extension of members with a summand outside the set, or None"""
    members = frozenset(universe.canonical(m) for m in members)
    ordered = sorted(members, key=universe.sort_key)
    for x in ordered:
        target = universe.module(x)
        for y in universe.labels:
            for f in hom_basis(universe.module(y), target):
                if f.is_surjective():
                    continue
                cokernel, _ = f.cokernel()
                for label in universe.decompose_to_labels(cokernel):
                    if label not in members:
                        return {"kind": "quotient", "module": x, "image_of": y, "summand": label}
    limit = config_loader.config.ext_combination_limit
    for a in ordered:
        for b in ordered:
            space = ExtSpace(universe.module(b), universe.module(a))
            for coeffs in _ext_combinations(space.dimension, limit):
                middle, _, _ = realize_extension(space.element(coeffs))
                for label in universe.decompose_to_labels(middle):
                    if label not in members:
                        return {"kind": "extension", "submodule": a, "quotient": b, "summand": label}
    return None


def complete_to_pair(universe, members):
    """
    Complete a torsion class to its torsion pair. The free part is T-perp; the
    torsion part is re-derived as perp-F and must equal the given set.
    """
    members = frozenset(universe.canonical(m) for m in members)
    free = perp_right(universe, members)
    torsion = perp_left(universe, free)
    if torsion != members:
        witness = closure_witness(universe, members)
        if witness is None:
            missing = sorted(torsion - members, key=universe.sort_key)
            witness = {"kind": "double-orthogonal", "summand": missing[0] if missing else None}
        raise errors.NotTorsionClassError(
            f"Set {sorted(members, key=universe.sort_key)} is not a torsion class", witness=witness)
    return TorsionPair(TorsionClass(universe, members), free)


def pair_from_free(universe, free_members):
    """Complete a torsion-free class to its pair"""
    free_members = frozenset(universe.canonical(m) for m in free_members)
    torsion = perp_left(universe, free_members)
    if perp_right(universe, torsion) != free_members:
        raise errors.NotTorsionClassError(
            f"Set {sorted(free_members, key=universe.sort_key)} is not a torsion-free class",
            code="not-torsion-free-class")
    return TorsionPair(TorsionClass(universe, torsion), free_members)


@dataclass
class TorsionSequence:
    """0 -> t(M) -> M -> f(M) -> 0"""
    module: object
    torsion_part: object
    inclusion: object
    free_part: object
    projection: object

    def to_json(self):
        return {"t": self.torsion_part.to_json(), "f": self.free_part.to_json(),
                "t_dimension_vector": list(self.torsion_part.dimension_vector()),
                "f_dimension_vector": list(self.free_part.dimension_vector())}


def torsion_functor(pair, module):
    """t(M) as the trace of the torsion class in M, and f(M) = M / t(M)"""
    sub, inclusion = trace_of(pair.torsion.modules(), module)
    free_part, projection = quotient(module, sub_columns(inclusion))
    return TorsionSequence(module, sub, inclusion, free_part, projection)


def is_splitting(pair):
    """Every indecomposable lies in T or in F"""
    return all(label in pair.torsion.members or label in pair.free for label in pair.universe.labels)


def fac(universe, module):
    """Labels of the indecomposables in Fac(module)"""
    return frozenset(e.label for e in universe if in_gen(module, e.module))


def sub(universe, module):
    """Labels of the indecomposables in Sub(module)"""
    return frozenset(e.label for e in universe if in_cogen(module, e.module))


def trivial_pair(universe):
    """(mod A, 0)"""
    return TorsionPair(TorsionClass(universe, frozenset(universe.labels)), frozenset())


def zero_pair(universe):
    """(0, mod A)"""
    return TorsionPair(TorsionClass(universe, frozenset()), frozenset(universe.labels))


def all_torsion_classes(universe):
    """Every torsion class of a small universe, by brute force over subsets"""
    labels = universe.labels
    if len(labels) > ALL_CLASSES_LIMIT:
        raise errors.CapExceededError(
            f"Brute-force torsion class enumeration is limited to {ALL_CLASSES_LIMIT} indecomposables")
    result = []
    for size in range(len(labels) + 1):
        for subset in itertools.combinations(labels, size):
            members = frozenset(subset)
            if perp_left(universe, perp_right(universe, members)) == members:
                result.append(TorsionClass(universe, members))
    return result
