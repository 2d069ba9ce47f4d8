"""
Nested families of torsion pairs, compatible decompositions, strata and
substrata, induced families and the expansion order between families.

Index sets are finite totally ordered lists of labels. For a decomposition
compatible on the torsion side the stratum part at k is f_{succ(k)}(M_k), and
dually the substratum part is t_{pred(k)}(N_k).
"""

import logging
import itertools
from dataclasses import dataclass, field

import errors
from exact_linalg import Matrix, solve_matrix
from representation import Morphism, identity, direct_sum, dual, hom_dimension
from decomposition import decompose
from homological import ext1_dimension
from torsion import (complete_to_pair, pair_from_free, smallest_torsion_class, smallest_torsion_free_class,
                     torsion_functor, in_gen, in_cogen)

logger = logging.getLogger(__name__)


class OrderedIndex:
    """A finite strictly ordered set of labels"""

    def __init__(self, labels):
        self.labels = tuple(str(k) for k in labels)
        if len(set(self.labels)) != len(self.labels):
            raise errors.PreconditionError(f"Index labels must be distinct: {list(self.labels)}")
        self._position = {k: i for i, k in enumerate(self.labels)}

    @classmethod
    def standard(cls, n):
        """1 < 2 < ... < n"""
        return cls([str(i) for i in range(1, n + 1)])

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, k):
        return k in self._position

    def __eq__(self, other):
        return isinstance(other, OrderedIndex) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def position(self, k):
        if k not in self._position:
            raise errors.PreconditionError(f"'{k}' is not in the index {list(self.labels)}")
        return self._position[k]

    def successor(self, k):
        i = self.position(k)
        return self.labels[i + 1] if i + 1 < len(self.labels) else None

    def predecessor(self, k):
        i = self.position(k)
        return self.labels[i - 1] if i > 0 else None

    def after(self, k):
        return self.labels[self.position(k) + 1:]

    def before(self, k):
        return self.labels[:self.position(k)]

    def opposite(self):
        return OrderedIndex(reversed(self.labels))

    def to_json(self):
        return list(self.labels)

    def __repr__(self):
        return "OrderedIndex(" + " < ".join(self.labels) + ")"


@dataclass
class NestedFamily:
    """Torsion pairs indexed by an ordered set with T_k strictly containing T_l for k < l"""
    index: OrderedIndex
    pairs: dict
    witnesses: dict = field(default_factory=dict)

    @property
    def universe(self):
        return self.pairs[self.index.labels[0]].universe

    def pair(self, k):
        return self.pairs[k]

    def torsion(self, k):
        return self.pairs[k].torsion.members

    def free(self, k):
        return self.pairs[k].free

    def key(self):
        """Extensional identity of the family"""
        return tuple(self.torsion(k) for k in self.index)

    def __eq__(self, other):
        return isinstance(other, NestedFamily) and self.index == other.index and self.key() == other.key()

    def to_json(self):
        return {
            "side": "torsion",
            "order": self.index.to_json(),
            "classes": [{"mode": "add", "modules": self.pairs[k].torsion.sorted_members()} for k in self.index],
            "free": [self.pairs[k].sorted_free() for k in self.index],
        }


def verify_nested(index, pairs):
    """Check strict nesting on adjacent indices and build the family"""
    if not isinstance(index, OrderedIndex):
        index = OrderedIndex(index)
    if isinstance(pairs, (list, tuple)):
        if len(pairs) != len(index):
            raise errors.PreconditionError(f"{len(pairs)} pairs for an index of size {len(index)}")
        pairs = dict(zip(index.labels, pairs))
    if set(pairs) != set(index.labels):
        raise errors.PreconditionError("Pairs are not keyed by the index labels")
    universes = {id(p.universe) for p in pairs.values()}
    if len(universes) > 1:
        raise errors.AlgebraMismatchError("Torsion pairs over different universes")
    witnesses = {}
    for k, l in zip(index.labels, index.labels[1:]):
        larger, smaller = pairs[k].torsion.members, pairs[l].torsion.members
        universe = pairs[k].universe
        escaped = sorted(smaller - larger, key=universe.sort_key)
        if escaped:
            raise errors.NotNestedError(
                f"Not nested at ({k},{l}): T_{l} is not contained in T_{k}",
                witness={"k": k, "l": l, "module": escaped[0]})
        difference = sorted(larger - smaller, key=universe.sort_key)
        if not difference:
            raise errors.NotNestedError(
                f"Not strictly nested at ({k},{l}): T_{k} = T_{l}", witness={"k": k, "l": l})
        witnesses[(k, l)] = difference[0]
    logger.debug(f"Verified nested family over {index!r}")
    return NestedFamily(index, dict(pairs), witnesses)


class OrderedDecomposition:
    """M = sum of nonzero parts M_k indexed by an ordered set"""

    def __init__(self, index, parts):
        if not isinstance(index, OrderedIndex):
            index = OrderedIndex(index)
        if isinstance(parts, (list, tuple)):
            parts = dict(zip(index.labels, parts))
        if set(parts) != set(index.labels):
            raise errors.PreconditionError("Decomposition parts are not keyed by the index labels")
        self.index = index
        self.parts = {k: parts[k] for k in index}
        algebras = {id(m.algebra) for m in self.parts.values()}
        if len(algebras) > 1:
            raise errors.AlgebraMismatchError("Decomposition parts over different algebras")
        for k, m in self.parts.items():
            if m.is_zero():
                raise errors.PreconditionError(f"Part {k} of the decomposition is zero (condition t1/f1)",
                                               code="zero-part")
        self._total = None

    @property
    def algebra(self):
        return self.parts[self.index.labels[0]].algebra

    def part(self, k):
        return self.parts[k]

    def module(self):
        if self._total is None:
            self._total, _, _ = direct_sum([self.parts[k] for k in self.index], algebra=self.algebra)
        return self._total

    def dual(self):
        """D M over the opposite algebra, indexed by the opposite order"""
        op = self.index.opposite()
        return OrderedDecomposition(op, {k: dual(self.parts[k]) for k in op})

    def to_json(self):
        return {"order": self.index.to_json(), "parts": {k: self.parts[k].to_json() for k in self.index}}


@dataclass
class Compatibility:
    """Flags for M / M* / M-dagger (side 'M') or N / N* / N-dagger (side 'N')"""
    side: str
    compatible: bool
    star: bool
    dagger: bool
    failures: list = field(default_factory=list)

    def to_json(self):
        s = self.side
        return {f"in{s}": self.compatible, f"in{s}star": self.star, f"in{s}dagger": self.dagger,
                "failures": list(self.failures)}


def _check_alignment(dec, family):
    if dec.index != family.index:
        raise errors.PreconditionError(
            f"Decomposition index {dec.index.to_json()} differs from family index {family.index.to_json()}",
            code="index-mismatch")
    if dec.algebra is not family.universe.algebra:
        raise errors.AlgebraMismatchError("Decomposition and family are over different algebras")


def classify_m(dec, family):
    """Compatibility of a decomposition on the torsion side"""
    _check_alignment(dec, family)
    failures = []
    for k in dec.index:
        m_k = dec.part(k)
        if not family.pair(k).contains(m_k):
            failures.append({"condition": "t2", "k": k})
        for j in dec.index.after(k):
            if family.pair(j).contains(m_k):
                failures.append({"condition": "t3", "k": k, "j": j})
    compatible = not failures
    star = compatible and all(family.pair(j).contains_free(dec.part(k))
                              for k in dec.index for j in dec.index.after(k))
    dagger = False
    if compatible:
        strat = _stratum_parts(dec, family)
        dagger = True
        for k in dec.index:
            for j in dec.index.labels[:dec.index.position(k) + 1]:
                if ext1_dimension(dec.part(k), strat.parts[j]) != 0:
                    failures.append({"condition": "dagger", "k": k, "j": j})
                    dagger = False
    return Compatibility("M", compatible, star, dagger, failures)


def classify_n(dec, family):
    """Compatibility of a decomposition on the torsion-free side"""
    _check_alignment(dec, family)
    failures = []
    for k in dec.index:
        n_k = dec.part(k)
        if not family.pair(k).contains_free(n_k):
            failures.append({"condition": "f2", "k": k})
        for j in dec.index.before(k):
            if family.pair(j).contains_free(n_k):
                failures.append({"condition": "f3", "k": k, "j": j})
    compatible = not failures
    star = compatible and all(family.pair(j).contains(dec.part(k))
                              for k in dec.index for j in dec.index.before(k))
    dagger = False
    if compatible:
        strat = _substratum_parts(dec, family)
        dagger = True
        for k in dec.index:
            for j in dec.index.labels[:dec.index.position(k) + 1]:
                if ext1_dimension(strat.parts[k], dec.part(j)) != 0:
                    failures.append({"condition": "dagger", "k": k, "j": j})
                    dagger = False
    return Compatibility("N", compatible, star, dagger, failures)


@dataclass
class Stratum:
    """Parts of a stratum (quotients of M_k) or substratum (submodules of N_k) with their witness maps"""
    side: str
    index: OrderedIndex
    parts: dict
    maps: dict

    def module(self):
        first = self.parts[self.index.labels[0]]
        total, _, _ = direct_sum([self.parts[k] for k in self.index], algebra=first.algebra)
        return total

    def to_json(self):
        return {
            "side": self.side,
            "order": self.index.to_json(),
            "parts": {k: {"module": self.parts[k].to_json(),
                          "dimension_vector": list(self.parts[k].dimension_vector())} for k in self.index},
        }


def _stratum_parts(dec, family):
    parts, maps = {}, {}
    for k in dec.index:
        m_k = dec.part(k)
        nxt = dec.index.successor(k)
        if nxt is None:
            parts[k], maps[k] = m_k, identity(m_k)
        else:
            seq = torsion_functor(family.pair(nxt), m_k)
            parts[k], maps[k] = seq.free_part, seq.projection
    return Stratum("stratum", dec.index, parts, maps)


def _substratum_parts(dec, family):
    parts, maps = {}, {}
    for k in dec.index:
        n_k = dec.part(k)
        prev = dec.index.predecessor(k)
        if prev is None:
            parts[k], maps[k] = n_k, identity(n_k)
        else:
            seq = torsion_functor(family.pair(prev), n_k)
            parts[k], maps[k] = seq.torsion_part, seq.inclusion
    return Stratum("substratum", dec.index, parts, maps)


def _check_stratum(strat, family):
    for k in strat.index:
        part = strat.parts[k]
        if part.is_zero():
            raise errors.VerificationFailure(f"Stratum part {k} vanishes", witness={"k": k})
        position = strat.index.position(k)
        for j in strat.index:
            p = strat.index.position(j)
            pair = family.pair(j)
            if strat.side == "stratum":
                ok = pair.contains(part) if p <= position else pair.contains_free(part)
            else:
                ok = pair.contains_free(part) if p >= position else pair.contains(part)
            if not ok:
                raise errors.VerificationFailure(
                    f"{strat.side.capitalize()} part {k} is on the wrong side of the pair at {j}",
                    witness={"k": k, "j": j})


def stratum(dec, family):
    """Stratum of a decomposition compatible on the torsion side"""
    _check_alignment(dec, family)
    flags = classify_m(dec, family)
    if not flags.compatible:
        raise errors.PreconditionError("Decomposition is not compatible on the torsion side",
                                       witness=flags.failures)
    strat = _stratum_parts(dec, family)
    _check_stratum(strat, family)
    return strat


def substratum(dec, family):
    """Substratum of a decomposition compatible on the torsion-free side"""
    _check_alignment(dec, family)
    flags = classify_n(dec, family)
    if not flags.compatible:
        raise errors.PreconditionError("Decomposition is not compatible on the torsion-free side",
                                       witness=flags.failures)
    strat = _substratum_parts(dec, family)
    _check_stratum(strat, family)
    return strat


def induced_fac_family(universe, dec):
    """T_k = T(M_j : j >= k) with F_k its right perpendicular; the tightest family with dec compatible"""
    pairs = {}
    for k in reversed(dec.index.labels):
        generators = [dec.part(j) for j in dec.index.labels[dec.index.position(k):]]
        torsion_class = smallest_torsion_class(universe, generators)
        pairs[k] = complete_to_pair(universe, torsion_class.members)
        nxt = dec.index.successor(k)
        if nxt is not None and pairs[nxt].contains(dec.part(k)):
            raise errors.HypothesisError(
                f"Part {k} lies in the torsion class generated by the later parts",
                witness={"k": k})
    family = verify_nested(dec.index, pairs)
    flags = classify_m(dec, family)
    if not flags.compatible:
        raise errors.VerificationFailure("Induced family does not make the decomposition compatible",
                                         witness=flags.failures)
    return family


def induced_sub_family(universe, dec):
    """F_k = F(M_j : j <= k) with T_k its left perpendicular; the loosest family with dec compatible"""
    pairs = {}
    for k in dec.index:
        cogenerators = [dec.part(j) for j in dec.index.labels[:dec.index.position(k) + 1]]
        pairs[k] = pair_from_free(universe, smallest_torsion_free_class(universe, cogenerators))
        prev = dec.index.predecessor(k)
        if prev is not None and pairs[prev].contains_free(dec.part(k)):
            raise errors.HypothesisError(
                f"Part {k} lies in the torsion-free class cogenerated by the earlier parts",
                witness={"k": k})
    family = verify_nested(dec.index, pairs)
    flags = classify_n(dec, family)
    if not flags.compatible:
        raise errors.VerificationFailure("Induced family does not make the decomposition compatible",
                                         witness=flags.failures)
    return family


@dataclass
class InducedFamilies:
    """Both induced families; certificate is set when later parts never map to earlier ones"""
    fac: NestedFamily
    sub: NestedFamily
    hom_orthogonal: bool
    hom_witness: dict = None
    certificate: dict = None

    def to_json(self):
        doc = {"fac": self.fac.to_json(), "sub": self.sub.to_json(), "hom_orthogonal": self.hom_orthogonal}
        if self.hom_witness is not None:
            doc["hom_witness"] = self.hom_witness
        if self.certificate is not None:
            doc["certificate"] = self.certificate
        return doc


def _later_to_earlier_hom(dec):
    for i in dec.index:
        for j in dec.index.after(i):
            dim = hom_dimension(dec.part(j), dec.part(i))
            if dim:
                return {"i": i, "j": j, "hom_dim": dim}
    return None


def _distinctness_witness(universe, dec, fac, sub):
    """A summand of some M_k lying in T_k but not in T'_k"""
    for k in dec.index:
        for label in sorted(universe.decompose_to_labels(dec.part(k)), key=universe.sort_key):
            if label in fac.torsion(k) and label not in sub.torsion(k):
                return {"k": k, "module": label}
    return None


def certify_induced(universe, dec, fac, sub):
    """
    Check the star flags and distinctness of the two induced families when
    Hom(M_j, M_i) = 0 for all j after i. Without that hypothesis the families
    are returned uncertified with the first nonzero Hom as witness.
    """
    failure = _later_to_earlier_hom(dec)
    if failure is not None:
        logger.info(f"Hom from part {failure['j']} to part {failure['i']} is nonzero; families not certified")
        return InducedFamilies(fac, sub, False, hom_witness=failure)
    m_flags = classify_m(dec, fac)
    if not m_flags.star:
        raise errors.VerificationFailure("Decomposition is not in M* for the induced Fac family",
                                         witness={"side": "M", "failures": m_flags.failures})
    n_flags = classify_n(dec, sub)
    if not n_flags.star:
        raise errors.VerificationFailure("Decomposition is not in N* for the induced Sub family",
                                         witness={"side": "N", "failures": n_flags.failures})
    witness = _distinctness_witness(universe, dec, fac, sub)
    if witness is None:
        raise errors.VerificationFailure("Induced families coincide",
                                         witness={"fac": fac.to_json(), "sub": sub.to_json()})
    logger.debug(f"Induced families differ at {witness['k']}: {witness['module']}")
    return InducedFamilies(fac, sub, True,
                           certificate={"inMstar": True, "inNstar": True, "distinct": witness})


def induced_families(universe, dec):
    """Gamma_fac and Gamma_sub, certified distinct under Hom-orthogonality"""
    return certify_induced(universe, dec, induced_fac_family(universe, dec), induced_sub_family(universe, dec))


def tightest_family(universe, dec):
    return induced_fac_family(universe, dec)


def loosest_family(universe, dec):
    return induced_sub_family(universe, dec)


def expands(family, other):
    """family expands other: every torsion class of other lies in the matching class of family"""
    if family.index != other.index:
        raise errors.PreconditionError("Families are indexed by different sets", code="index-mismatch")
    return all(other.torsion(k) <= family.torsion(k) for k in family.index)


def is_tighter(family, other):
    """family <= other, i.e. other expands family"""
    return expands(other, family)


def strata_comparison(dec, tight, loose):
    """Surjections from the stratum for the tighter family onto the stratum for the looser one"""
    if not expands(loose, tight):
        raise errors.PreconditionError("The second family does not expand the first")
    first = stratum(dec, tight)
    second = stratum(dec, loose)
    result = {}
    for k in dec.index:
        q, q2 = first.maps[k], second.maps[k]
        maps = {}
        for v in dec.algebra.vertices:
            rows, cols = q.maps[v].shape
            section = solve_matrix(q.maps[v], Matrix.identity(rows)) if rows else Matrix.zeros(cols, 0)
            maps[v] = q2.maps[v] @ section
        g = Morphism(first.parts[k], second.parts[k], maps)
        if not g.is_surjective():
            raise errors.VerificationFailure(f"Comparison map at {k} is not surjective", witness={"k": k})
        result[k] = g
    return result


def substrata_comparison(dec, tight, loose):
    """Monomorphisms from the substratum for the tighter family into the one for the looser family"""
    if not expands(loose, tight):
        raise errors.PreconditionError("The second family does not expand the first")
    first = substratum(dec, tight)
    second = substratum(dec, loose)
    result = {}
    for k in dec.index:
        i1, i2 = first.maps[k], second.maps[k]
        maps = {}
        for v in dec.algebra.vertices:
            factor = solve_matrix(i2.maps[v], i1.maps[v])
            if factor is None:
                raise errors.VerificationFailure(f"Substratum part {k} does not embed", witness={"k": k})
            maps[v] = factor
        g = Morphism(first.parts[k], second.parts[k], maps)
        if not g.is_injective():
            raise errors.VerificationFailure(f"Comparison map at {k} is not injective", witness={"k": k})
        result[k] = g
    return result


def dual_labels(universe, opposite_universe):
    """Label of D X in the opposite universe for every label X"""
    return {e.label: opposite_universe.identify(dual(e.module)) for e in universe}


def opposite_family(family, opposite_universe):
    """(F_k, T_k) over the opposite algebra, indexed by the opposite order"""
    mapping = dual_labels(family.universe, opposite_universe)
    pairs = {}
    for k in family.index:
        torsion = frozenset(mapping[x] for x in family.free(k))
        pairs[k] = complete_to_pair(opposite_universe, torsion)
    return verify_nested(family.index.opposite(), pairs)


def admissible_orderings(summands, side="fac"):
    """
    Orderings of indecomposable summands with M_i outside Fac of the later
    summands (side 'fac') or outside Sub of the earlier ones (side 'sub').
    """
    result = []
    for perm in itertools.permutations(range(len(summands))):
        ordered = [summands[i] for i in perm]
        ok = True
        for i, m in enumerate(ordered):
            others = ordered[i + 1:] if side == "fac" else ordered[:i]
            if not others:
                continue
            total, _, _ = direct_sum(others)
            if (in_gen(total, m) if side == "fac" else in_cogen(total, m)):
                ok = False
                break
        if ok:
            result.append(list(perm))
    return result


def _compositions(n):
    """All ways to cut 0..n-1 into consecutive nonempty blocks"""
    for cuts in itertools.product((False, True), repeat=max(n - 1, 0)):
        blocks, current = [], [0]
        for i, cut in enumerate(cuts, start=1):
            if cut:
                blocks.append(current)
                current = [i]
            else:
                current.append(i)
        blocks.append(current)
        yield blocks


@dataclass
class FamilyCount:
    parameterizations: int
    distinct: int
    orderings: int
    families: list = field(default_factory=list)

    def to_json(self):
        return {"parameterizations": self.parameterizations, "distinct": self.distinct,
                "admissible_orderings": self.orderings}


def count_induced_families(universe, module, side="fac"):
    """
    Families induced by the ordered decompositions obtained from admissible
    orderings of the summands together with every choice of cuts.
    """
    decomposed = decompose(module)
    if not decomposed.is_basic:
        raise errors.NotBasicError("Module is not basic")
    summands = [m for m, _ in decomposed.summands]
    orderings = admissible_orderings(summands, side)
    seen = {}
    total = 0
    for perm in orderings:
        for blocks in _compositions(len(summands)):
            parts = []
            for block in blocks:
                pieces = [summands[perm[i]] for i in block]
                parts.append(pieces[0] if len(pieces) == 1 else direct_sum(pieces)[0])
            dec = OrderedDecomposition(OrderedIndex.standard(len(parts)), parts)
            family = induced_fac_family(universe, dec) if side == "fac" else induced_sub_family(universe, dec)
            total += 1
            seen.setdefault(family.key(), family)
    logger.info(f"{total} parameterizations induce {len(seen)} distinct nested families")
    return FamilyCount(total, len(seen), len(orderings), list(seen.values()))
