"""
Enumeration of the indecomposable modules of a representation-finite algebra.

Starting from the indecomposable projectives, simples and injectives, the set
is closed under tau, tau^- and the middle terms of almost split sequences
until nothing new appears. The result is the universe that every extensional
torsion computation quantifies over.
"""

import logging
from collections import Counter, deque

import networkx as nx

import errors
import config_loader
from representation import Representation, simple, projective, injective, radical, hom_dimension
from decomposition import decompose, is_indecomposable, isomorphic_indecomposables
from homological import ar_sequence, tau, tau_inverse, is_projective_module, is_injective_module

logger = logging.getLogger(__name__)


class UniverseEntry:
    """One indecomposable with its label and AR data"""

    def __init__(self, label, module, projective=False, injective=False):
        self.label = label
        self.module = module.renamed(label)
        self.is_projective = projective
        self.is_injective = injective
        self.aliases = []
        self.tau = None
        self.tau_inverse = None

    def to_json(self):
        return {
            "label": self.label,
            "aliases": list(self.aliases),
            "module": self.module.to_json(),
            "projective": self.is_projective,
            "injective": self.is_injective,
            "tau": self.tau,
            "tau_inverse": self.tau_inverse,
        }


class IndecUniverse:
    """Pairwise non-isomorphic indecomposables with canonical labels"""

    def __init__(self, algebra):
        self.algebra = algebra
        self.entries = []
        self._by_label = {}
        self._alias = {}
        self._hom_cache = {}
        self.irreducible = set()
        self.log = []
        self.complete = False

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def labels(self):
        return [e.label for e in self.entries]

    def entry(self, label):
        label = self._alias.get(label, label)
        if label not in self._by_label:
            raise errors.InputError(f"Unknown indecomposable '{label}'", code="unknown-module")
        return self._by_label[label]

    def module(self, label):
        return self.entry(label).module

    def canonical(self, label):
        return self.entry(label).label

    def identify(self, module):
        """Label of the entry isomorphic to an indecomposable module, or None"""
        dims = module.dimension_vector()
        for e in self.entries:
            if e.module.dimension_vector() == dims and isomorphic_indecomposables(e.module, module):
                return e.label
        return None

    def hom_dimension(self, source_label, target_label):
        key = (self.canonical(source_label), self.canonical(target_label))
        if key not in self._hom_cache:
            self._hom_cache[key] = hom_dimension(self.module(key[0]), self.module(key[1]))
        return self._hom_cache[key]

    def decompose_to_labels(self, module):
        """Multiset of universe labels of the indecomposable summands"""
        if module.algebra is not self.algebra:
            raise errors.AlgebraMismatchError("Module is over a different algebra than the universe")
        result = Counter()
        for summand, mult in decompose(module).summands:
            label = self.identify(summand)
            if label is None:
                raise errors.PreconditionError(
                    f"Summand with dimension vector {summand.dimension_vector()} is not in the universe")
            result[label] += mult
        return result

    def sort_key(self, label):
        return self.labels.index(self.canonical(label))

    def _fresh_label(self, module):
        base = "M(" + ",".join(str(d) for d in module.dimension_vector()) + ")"
        if base not in self._by_label:
            return base
        k = 2
        while f"{base}#{k}" in self._by_label:
            k += 1
        return f"{base}#{k}"

    def _insert(self, label, module):
        entry = UniverseEntry(label, module, is_projective_module(module), is_injective_module(module))
        self.entries.append(entry)
        self._by_label[label] = entry
        return entry

    def add_alias(self, label, alias):
        if alias != label and alias not in self._by_label and alias not in self._alias:
            self._alias[alias] = label
            self._by_label[label].aliases.append(alias)

    def graph(self):
        """AR quiver as a networkx MultiDiGraph with 'irreducible' and 'tau' edge kinds"""
        g = nx.MultiDiGraph()
        for e in self.entries:
            g.add_node(e.label, dims=e.module.dimension_vector())
        for source, target in sorted(self.irreducible, key=lambda st: (self.sort_key(st[0]), self.sort_key(st[1]))):
            g.add_edge(source, target, kind="irreducible")
        for e in self.entries:
            if e.tau is not None:
                g.add_edge(e.label, e.tau, kind="tau")
        return g

    def components(self):
        """Labels grouped by connected component of the AR quiver"""
        g = self.graph()
        order = {label: i for i, label in enumerate(self.labels)}
        return sorted((sorted(c, key=order.get) for c in nx.weakly_connected_components(g)),
                      key=lambda c: order[c[0]])

    def to_json(self):
        return {
            "algebra": self.algebra.to_dict(),
            "complete": self.complete,
            "indecomposables": [e.to_json() for e in self.entries],
            "irreducible": sorted([list(edge) for edge in self.irreducible]),
            "log": list(self.log),
        }

    @classmethod
    def from_json(cls, algebra, doc):
        universe = cls(algebra)
        for item in doc.get("indecomposables", []):
            module = Representation.from_json(algebra, item["module"])
            entry = UniverseEntry(item["label"], module, item.get("projective", False), item.get("injective", False))
            entry.tau = item.get("tau")
            entry.tau_inverse = item.get("tau_inverse")
            universe.entries.append(entry)
            universe._by_label[entry.label] = entry
            for alias in item.get("aliases", []):
                universe.add_alias(entry.label, alias)
        universe.irreducible = {tuple(edge) for edge in doc.get("irreducible", [])}
        universe.log = list(doc.get("log", []))
        universe.complete = bool(doc.get("complete", False))
        return universe


class _Enumerator:
    """Fixpoint loop behind enumerate_indecomposables"""

    def __init__(self, algebra, dim_cap, count_cap):
        self.universe = IndecUniverse(algebra)
        self.dim_cap = dim_cap
        self.count_cap = count_cap
        self.orbit_queue = deque()
        self.sequence_queue = deque()

    def add(self, module, name=None):
        """Insert every indecomposable summand; returns the labels"""
        if module.is_zero():
            return []
        if not is_indecomposable(module):
            labels = []
            for summand, _ in decompose(module).summands:
                labels.extend(self.add(summand))
            return labels
        # the cap bounds indecomposables only; middle terms may be larger
        if module.total_dimension > self.dim_cap:
            raise errors.CapExceededError(
                f"Indecomposable of total dimension {module.total_dimension} exceeds dim cap {self.dim_cap}; "
                "the algebra may be representation-infinite")
        universe = self.universe
        label = universe.identify(module)
        if label is not None:
            if name:
                universe.add_alias(label, name)
            return [label]
        if len(universe) >= self.count_cap:
            raise errors.CapExceededError(
                f"More than {self.count_cap} indecomposables; the algebra may be representation-infinite")
        label = name or universe._fresh_label(module)
        entry = universe._insert(label, module)
        universe.log.append(f"added {label} {list(module.dimension_vector())}")
        logger.debug(f"New indecomposable {label} with dimension vector {module.dimension_vector()}")
        self.orbit_queue.append(entry)
        if not entry.is_projective:
            self.sequence_queue.append(entry)
        return [label]

    def close_orbit(self, entry):
        if not entry.is_projective and entry.tau is None:
            labels = self.add(tau(entry.module))
            entry.tau = labels[0]
            self.universe.entry(entry.tau).tau_inverse = entry.label
        if not entry.is_injective and entry.tau_inverse is None:
            labels = self.add(tau_inverse(entry.module))
            entry.tau_inverse = labels[0]
            self.universe.entry(entry.tau_inverse).tau = entry.label

    def close_sequence(self, entry):
        universe = self.universe
        translate = universe.module(entry.tau) if entry.tau else tau(entry.module)
        middle, _, _, _ = ar_sequence(entry.module, translate)
        summands = []
        for piece, _ in decompose(middle).summands:
            summands.extend(self.add(piece))
        for label in summands:
            universe.irreducible.add((label, entry.label))
            universe.irreducible.add((universe.canonical(entry.tau), label))
        universe.log.append(f"almost split sequence ending in {entry.label}: middle {sorted(set(summands))}")

    def run(self):
        alg = self.universe.algebra
        for v in alg.vertices:
            self.add(projective(alg, v), f"P({v})")
        for v in alg.vertices:
            self.add(simple(alg, v), f"S({v})")
        for v in alg.vertices:
            self.add(injective(alg, v), f"I({v})")
        for v in alg.vertices:
            rad, _ = radical(projective(alg, v))
            for label in self.add(rad):
                self.universe.irreducible.add((label, f"P({v})"))
        while self.orbit_queue or self.sequence_queue:
            # saturate tau orbits first so that infinite orbits trip the caps early
            if self.orbit_queue:
                self.close_orbit(self.orbit_queue.popleft())
            else:
                self.close_sequence(self.sequence_queue.popleft())
        self.universe.complete = True
        return self.universe


def enumerate_indecomposables(algebra, dim_cap=None, count_cap=None):
    """All indecomposables of a representation-finite algebra, or CapExceededError"""
    if dim_cap is None:
        dim_cap = config_loader.config.dim_cap
    if count_cap is None:
        count_cap = config_loader.config.count_cap
    if dim_cap <= 0 or count_cap <= 0:
        raise errors.PreconditionError("Enumeration caps must be positive")
    components = algebra.connected_components()
    if len(components) > 1:
        logger.info(f"Algebra has {len(components)} connected components; each is closed separately")
    universe = _Enumerator(algebra, dim_cap, count_cap).run()
    for component in components:
        count = sum(1 for e in universe if set(e.module.support()) <= set(component))
        universe.log.append(f"component {sorted(component)}: {count} indecomposables")
    logger.info(f"Enumerated {len(universe)} indecomposables")
    return universe


def _dot_id(label):
    return '"' + label.replace('"', '\\"') + '"'


def ar_quiver_dot(universe):
    """DOT text of the AR quiver: solid irreducible maps, dotted translates"""
    g = universe.graph()
    lines = ['digraph ar_quiver {', '\trankdir=LR;']
    for label in universe.labels:
        dims = ",".join(str(d) for d in g.nodes[label]["dims"])
        lines.append(f'\t{_dot_id(label)} [label="{label}\\n({dims})"];')
    for source, target, data in g.edges(data=True):
        style = "solid" if data["kind"] == "irreducible" else "dotted"
        lines.append(f'\t{_dot_id(source)} -> {_dot_id(target)} [style={style}];')
    lines.append('}')
    return "\n".join(lines) + "\n"
