"""
Stratifying systems: verification, induction from compatible decompositions,
recovery of the inducing data, the tau-rigid pipelines and Delta-filtrations.
"""

import logging
import itertools
from collections import Counter
from dataclasses import dataclass, field

import errors
import config_loader
from representation import direct_sum, hom_basis, hom_dimension, identity, linear_combination
from decomposition import decompose, is_indecomposable, is_isomorphic, coefficient_sweep
from homological import ext1_dimension, tau, tau_inverse, is_ext_projective_in, is_ext_injective_in
from nested_strata import (OrderedIndex, OrderedDecomposition, classify_m, classify_n, stratum, substratum,
                           induced_fac_family, induced_sub_family, admissible_orderings)

logger = logging.getLogger(__name__)


@dataclass
class StratifyingSystem:
    """Ordered indecomposables with Hom(D_k, D_j) = 0 for k > j and Ext^1(D_k, D_j) = 0 for k >= j"""
    index: OrderedIndex
    modules: dict
    certificate: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)

    @property
    def size(self):
        return len(self.index)

    def members(self):
        return [self.modules[k] for k in self.index]

    def key(self, universe):
        """Ordered tuple of universe labels"""
        return tuple(universe.identify(self.modules[k]) for k in self.index)

    def to_json(self):
        doc = {"order": self.index.to_json(),
               "modules": {k: self.labels.get(k) or self.modules[k].to_json() for k in self.index}}
        if self.certificate:
            doc["certificate"] = self.certificate
        return doc


def verify_system(index, modules):
    """Check every pair; raises StratifyingSystemError naming the first failing pair"""
    if not isinstance(index, OrderedIndex):
        index = OrderedIndex(index)
    if isinstance(modules, (list, tuple)):
        modules = dict(zip(index.labels, modules))
    if set(modules) != set(index.labels):
        raise errors.PreconditionError("System modules are not keyed by the index labels")
    algebras = {id(m.algebra) for m in modules.values()}
    if len(algebras) > 1:
        raise errors.AlgebraMismatchError("System members over different algebras")
    for k in index:
        if not is_indecomposable(modules[k]):
            raise errors.StratifyingSystemError(f"Member {k} is not indecomposable",
                                                code="not-indecomposable", witness={"k": k})
    hom_checks, ext_checks = [], []
    for k, j in itertools.product(index.labels, repeat=2):
        if index.position(k) > index.position(j):
            dim = hom_dimension(modules[k], modules[j])
            if dim:
                raise errors.StratifyingSystemError(
                    f"Hom violation at ({k},{j}): dimension {dim}",
                    code="hom-violation", witness={"k": k, "j": j, "dim": dim})
            hom_checks.append([k, j])
    for k, j in itertools.product(index.labels, repeat=2):
        if index.position(k) >= index.position(j):
            dim = ext1_dimension(modules[k], modules[j])
            if dim:
                raise errors.StratifyingSystemError(
                    f"Ext violation at ({k},{j}): dimension {dim}",
                    code="ext-violation", witness={"k": k, "j": j, "dim": dim})
            ext_checks.append([k, j])
    certificate = {"indecomposable": list(index.labels), "hom_zero": hom_checks, "ext_zero": ext_checks}
    return StratifyingSystem(index, dict(modules), certificate)


@dataclass
class InducedSystems:
    """Systems from a choice of one indecomposable summand per stratum part"""
    stratum: object
    choices: dict
    count: int
    systems: object

    def __iter__(self):
        return iter(self.systems)

    @property
    def materialized(self):
        return isinstance(self.systems, list)


def _choose(strat, choices):
    for combo in itertools.product(*(choices[k] for k in strat.index)):
        yield verify_system(strat.index, dict(zip(strat.index.labels, combo)))


def induce_systems(dec, family, side="m", induce_cap=None):
    """Every system induced by a dagger-compatible decomposition; lazy above the cap"""
    if induce_cap is None:
        induce_cap = config_loader.config.induce_cap
    if side == "m":
        flags = classify_m(dec, family)
    elif side == "n":
        flags = classify_n(dec, family)
    else:
        raise errors.PreconditionError(f"Unknown side '{side}'; expected 'm' or 'n'")
    if not flags.dagger:
        raise errors.PreconditionError(f"Decomposition is not in the dagger class on side {side}",
                                       witness=flags.failures)
    strat = stratum(dec, family) if side == "m" else substratum(dec, family)
    choices = {k: [m for m, _ in decompose(strat.parts[k]).summands] for k in strat.index}
    count = 1
    for k in strat.index:
        count *= len(choices[k])
    logger.info(f"Stratum induces {count} stratifying systems")
    systems = _choose(strat, choices)
    if count <= induce_cap:
        systems = list(systems)
    else:
        logger.info(f"{count} systems exceed the induce cap {induce_cap}; streaming")
    return InducedSystems(strat, choices, count, systems)


def characteristic_module(system):
    """Direct sum of the members"""
    total, _, _ = direct_sum(system.members())
    return total


@dataclass
class Inducers:
    decomposition: OrderedDecomposition
    fac_family: object
    sub_family: object
    m_flags: object
    n_flags: object


def recover_inducers(universe, system):
    """The characteristic decomposition with the families inducing the system from both sides"""
    dec = OrderedDecomposition(system.index, dict(system.modules))
    fac_family = induced_fac_family(universe, dec)
    sub_family = induced_sub_family(universe, dec)
    m_flags = classify_m(dec, fac_family)
    n_flags = classify_n(dec, sub_family)
    if not (m_flags.dagger and n_flags.dagger):
        raise errors.VerificationFailure("Characteristic decomposition is not dagger-compatible",
                                         witness={"m": m_flags.failures, "n": n_flags.failures})
    for strat in (stratum(dec, fac_family), substratum(dec, sub_family)):
        for k in system.index:
            if not is_isomorphic(strat.parts[k], system.modules[k]):
                raise errors.VerificationFailure(f"{strat.side.capitalize()} part {k} differs from member {k}",
                                                 witness={"k": k})
    return Inducers(dec, fac_family, sub_family, m_flags, n_flags)


def _basic_summands(module):
    if module.is_zero():
        raise errors.PreconditionError("Module is zero")
    decomposed = decompose(module)
    if not decomposed.is_basic:
        repeated = [list(m.dimension_vector()) for m, mult in decomposed.summands if mult > 1]
        raise errors.NotBasicError("Module is not basic", witness={"repeated": repeated})
    return [m for m, _ in decomposed.summands]


def _ordered(summands, orderings):
    return [OrderedDecomposition(OrderedIndex.standard(len(perm)), [summands[i] for i in perm])
            for perm in orderings]


def tf_admissible_orderings(module):
    """Orderings of the summands with M_i not in Fac of the later summands"""
    summands = _basic_summands(module)
    result = _ordered(summands, admissible_orderings(summands, "fac"))
    if not result and hom_dimension(module, tau(module)) == 0:
        raise errors.VerificationFailure("tau-rigid module without a torsion-free admissible ordering")
    return result


def ts_admissible_orderings(module):
    """Orderings of the summands with M_i not in Sub of the earlier summands"""
    summands = _basic_summands(module)
    return _ordered(summands, admissible_orderings(summands, "sub"))


def _tau_rigidity_witness(module, translate):
    return {"hom_dim": hom_dimension(module, translate), "tau": list(translate.dimension_vector())}


def tau_rigid_pipeline(universe, module):
    """One system per torsion-free admissible ordering of a basic tau-rigid module"""
    summands = _basic_summands(module)
    translate = tau(module)
    if hom_dimension(module, translate):
        raise errors.NotTauRigidError("Module is not tau-rigid", witness=_tau_rigidity_witness(module, translate))
    systems = []
    for dec in _ordered(summands, admissible_orderings(summands, "fac")):
        family = induced_fac_family(universe, dec)
        first = dec.index.labels[0]
        if not is_ext_projective_in(module, family.pair(first).torsion.modules()):
            raise errors.VerificationFailure("Module is not Ext-projective in its torsion class")
        flags = classify_m(dec, family)
        if not flags.dagger:
            raise errors.VerificationFailure("Ext-projective module failed the dagger conditions",
                                             witness=flags.failures)
        strat = stratum(dec, family)
        for k in dec.index:
            if not is_indecomposable(strat.parts[k]):
                raise errors.VerificationFailure(f"Stratum part {k} is decomposable", witness={"k": k})
        systems.append(verify_system(dec.index, strat.parts))
    logger.info(f"tau-rigid pipeline produced {len(systems)} systems of size {len(summands)}")
    return systems


def tau_minus_rigid_pipeline(universe, module):
    """Dual pipeline: substrata along orderings with N_k not in Sub of the earlier summands"""
    summands = _basic_summands(module)
    translate = tau_inverse(module)
    if hom_dimension(translate, module):
        raise errors.NotTauRigidError("Module is not tau^- -rigid",
                                      code="not-tau-minus-rigid",
                                      witness={"hom_dim": hom_dimension(translate, module)})
    systems = []
    for dec in _ordered(summands, admissible_orderings(summands, "sub")):
        family = induced_sub_family(universe, dec)
        last = dec.index.labels[-1]
        if not is_ext_injective_in(module, family.pair(last).free_modules()):
            raise errors.VerificationFailure("Module is not Ext-injective in its torsion-free class")
        flags = classify_n(dec, family)
        if not flags.dagger:
            raise errors.VerificationFailure("Ext-injective module failed the dagger conditions",
                                             witness=flags.failures)
        strat = substratum(dec, family)
        for k in dec.index:
            if not is_indecomposable(strat.parts[k]):
                raise errors.VerificationFailure(f"Substratum part {k} is decomposable", witness={"k": k})
        systems.append(verify_system(dec.index, strat.parts))
    logger.info(f"tau^- -rigid pipeline produced {len(systems)} systems of size {len(summands)}")
    return systems


@dataclass
class FiltrationResult:
    """0 = X_0 < ... < X_n = X with factors X_i / X_(i-1) isomorphic to members of the system"""
    module: object
    chain: list
    factors: list
    multiplicities: Counter

    def to_json(self):
        return {
            "factors": list(self.factors),
            "multiplicities": {k: self.multiplicities[k] for k in sorted(self.multiplicities)},
            "chain": [list(sub.dimension_vector()) for sub, _ in self.chain],
        }


def _fits(module, target):
    return all(target.dims[v] <= module.dims[v] for v in module.algebra.vertices)


def _filtrations(current, inclusion, system, sweep_bound):
    """Yield (factors, chain) top-down lists for `current`, embedded by `inclusion`"""
    if current.is_zero():
        yield [], []
        return
    for k in system.index:
        delta = system.modules[k]
        if not _fits(current, delta):
            continue
        basis = hom_basis(current, delta)
        if not basis:
            continue
        tried = []
        for coeffs in coefficient_sweep(len(basis), sweep_bound):
            f = linear_combination(basis, coeffs, current, delta)
            if not f.is_surjective():
                continue
            kernel, kernel_inclusion = f.kernel()
            if any(is_isomorphic(kernel, seen) for seen in tried
                   if seen.dimension_vector() == kernel.dimension_vector()):
                continue
            tried.append(kernel)
            embedded = inclusion @ kernel_inclusion
            for factors, chain in _filtrations(kernel, embedded, system, sweep_bound):
                yield [k] + factors, [(current, inclusion)] + chain


def _result(module, factors, chain):
    factors = list(reversed(factors))
    chain = list(reversed(chain))
    return FiltrationResult(module, chain, factors, Counter(factors))


def delta_filtrations(module, system, sweep_bound=None, limit=None):
    """Filtrations found by backtracking, up to `limit` of them"""
    if sweep_bound is None:
        sweep_bound = config_loader.config.sweep_bound
    found = _filtrations(module, identity(module), system, sweep_bound)
    for n, (factors, chain) in enumerate(found):
        if limit is not None and n >= limit:
            return
        yield _result(module, factors, chain)


def delta_filtration(module, system, sweep_bound=None):
    """The first Delta-filtration found, or NotFilteredError"""
    for result in delta_filtrations(module, system, sweep_bound, limit=1):
        total = {v: 0 for v in module.algebra.vertices}
        for k, mult in result.multiplicities.items():
            for v, d in system.modules[k].dims.items():
                total[v] += mult * d
        if total != dict(module.dims):
            raise errors.VerificationFailure("Filtration factors do not add up to the module")
        logger.debug(f"Delta-filtration with factors {result.factors}")
        return result
    raise errors.NotFilteredError("Module is not filtered by the system",
                                  witness={"dimension_vector": list(module.dimension_vector())})
