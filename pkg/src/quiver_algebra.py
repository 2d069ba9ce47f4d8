"""
Quivers with relations and their bound path algebras A = kQ/I.

A path is written source to target as the sequence of arrows traversed, first
arrow first, so the composite "gamma then beta" is entered as ["γ", "β"].
The path basis is found level by level: all paths up to a truncation length are
enumerated, the relation ideal is spanned inside that window, and elimination
with the longest paths as pivots leaves the residue basis.
"""

import logging
from dataclasses import dataclass, field

import networkx as nx

import errors
import config_loader
from exact_linalg import ZERO, ONE, to_scalar, format_scalar, reduce_rows

logger = logging.getLogger(__name__)

DEFAULT_PATH_LENGTH_CAP = 64
DEFAULT_MAX_PATHS = 200000


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path of the quiver; trivial paths have no arrows"""
    source: str
    target: str
    arrows: tuple = ()

    @property
    def length(self):
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    def __str__(self):
        if not self.arrows:
            return f"e{self.source}"
        return "·".join(self.arrows)

    def to_json(self):
        if not self.arrows:
            return {"vertex": self.source}
        return list(self.arrows)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths; terms are (coefficient, Path)"""
    terms: tuple

    @property
    def source(self):
        return self.terms[0][1].source

    @property
    def target(self):
        return self.terms[0][1].target

    @property
    def max_length(self):
        return max(p.length for _, p in self.terms)

    def reversed(self):
        return Relation(tuple((c, Path(p.target, p.source, tuple(reversed(p.arrows)))) for c, p in self.terms))

    def to_json(self):
        return [{"coef": format_scalar(c), "path": list(p.arrows)} for c, p in self.terms]


class Quiver:
    """Finite quiver: ordered vertex names and named arrows"""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self._by_name = {a.name: a for a in self.arrows}
        self._out = {v: [] for v in self.vertices}
        self._in = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    def arrow(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise errors.UnknownArrowError(f"Unknown arrow '{name}'")

    def has_arrow(self, name):
        return name in self._by_name

    def arrows_from(self, v):
        return self._out[v]

    def arrows_to(self, v):
        return self._in[v]

    def reversed(self):
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def underlying_graph(self):
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for a in self.arrows:
            graph.add_edge(a.source, a.target, key=a.name)
        return graph

    def connected_components(self):
        """Vertex sets of the underlying undirected graph, in vertex order"""
        graph = self.underlying_graph()
        order = {v: i for i, v in enumerate(self.vertices)}
        comps = [sorted(c, key=order.get) for c in nx.connected_components(graph)]
        return sorted(comps, key=lambda c: order[c[0]])

    def make_path(self, arrow_names):
        """Validate a nonempty arrow sequence and return it as a Path"""
        names = list(arrow_names)
        if not names:
            raise errors.NonComposablePathError("Empty path in relation")
        arrows = [self.arrow(n) for n in names]
        for first, second in zip(arrows, arrows[1:]):
            if first.target != second.source:
                raise errors.NonComposablePathError(
                    f"Arrow '{first.name}' ends at {first.target} but '{second.name}' starts at {second.source}")
        return Path(arrows[0].source, arrows[-1].target, tuple(names))


@dataclass
class PathBasisLevel:
    """Outcome of one truncation level of the path-basis computation"""
    level: int
    window: int
    basis: list
    reductions: dict = field(default_factory=dict)
    terminated: bool = False


def enumerate_paths(quiver, max_length, max_paths=DEFAULT_MAX_PATHS):
    """All paths of length <= max_length, shortest first"""
    paths = [Path(v, v) for v in quiver.vertices]
    frontier = list(paths)
    for _ in range(max_length):
        grown = []
        for p in frontier:
            for a in quiver.arrows_from(p.target):
                grown.append(Path(p.source, a.target, p.arrows + (a.name,)))
        if not grown:
            break
        paths.extend(grown)
        frontier = grown
        if len(paths) > max_paths:
            raise errors.NonTerminationError(
                f"More than {max_paths} paths of length <= {max_length}; "
                "the algebra looks infinite-dimensional")
    return paths


def _concat(p, q):
    return Path(p.source, q.target, p.arrows + q.arrows)


def path_basis_up_to(quiver, relations, level, max_paths=DEFAULT_MAX_PATHS):
    """
    Residue path classes of length <= level plus the reduction of every longer
    path inside the truncation window (level + longest relation term).
    """
    if level < 1:
        raise ValueError("Path-basis level must be at least 1")
    rel_len = max((r.max_length for r in relations), default=1)
    window = level + max(rel_len, 1)
    paths = enumerate_paths(quiver, window, max_paths)
    index = {p: i for i, p in enumerate(paths)}
    ending_at = {v: [] for v in quiver.vertices}
    starting_at = {v: [] for v in quiver.vertices}
    for p in paths:
        ending_at[p.target].append(p)
        starting_at[p.source].append(p)

    rows = []
    for rel in relations:
        budget = window - rel.max_length
        for left in ending_at[rel.source]:
            if left.length > budget:
                continue
            for right in starting_at[rel.target]:
                if left.length + right.length > budget:
                    continue
                row = {}
                for coef, term in rel.terms:
                    col = index[_concat(_concat(left, term), right)]
                    value = row.get(col, ZERO) + coef
                    if value:
                        row[col] = value
                    else:
                        row.pop(col, None)
                if row:
                    rows.append(row)

    pivots = reduce_rows(rows, priority=lambda c: (-paths[c].length, c))
    standard = [p for i, p in enumerate(paths) if i not in pivots]
    reductions = {}
    for col, row in pivots.items():
        reductions[paths[col]] = {paths[j]: -v for j, v in row.items() if j != col}
    terminated = all(p.length <= level for p in standard)
    logger.debug(f"Path basis level {level}: window {window}, {len(paths)} paths, "
                 f"{len(rows)} ideal generators, {len(standard)} standard paths, terminated={terminated}")
    return PathBasisLevel(level, window, standard, reductions, terminated)


class Algebra:
    """Bound path algebra with a computed path basis"""

    def __init__(self, quiver, relations=(), path_length_cap=DEFAULT_PATH_LENGTH_CAP,
                 max_paths=DEFAULT_MAX_PATHS, name=""):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.name = name
        self.path_length_cap = path_length_cap
        self.max_paths = max_paths
        self._opposite = None
        self._compute_basis()

    def _compute_basis(self):
        for level in range(1, self.path_length_cap + 1):
            result = path_basis_up_to(self.quiver, self.relations, level, self.max_paths)
            if result.terminated:
                break
        else:
            raise errors.NonTerminationError(
                f"Path basis did not stabilize within length {self.path_length_cap}; "
                "finite-dimensionality cannot be verified")
        order = {v: i for i, v in enumerate(self.quiver.vertices)}
        self.basis = tuple(sorted(result.basis, key=lambda p: (p.length, order[p.source], p.arrows)))
        self._basis_set = frozenset(self.basis)
        self._reductions = result.reductions
        self._window = result.window
        self.max_path_length = max((p.length for p in self.basis), default=0)
        self._from = {v: [p for p in self.basis if p.source == v] for v in self.quiver.vertices}
        self._to = {v: [p for p in self.basis if p.target == v] for v in self.quiver.vertices}
        logger.info(f"Algebra {self.name or ''} has dimension {self.dimension} "
                    f"(longest basis path {self.max_path_length})")

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    @property
    def dimension(self):
        return len(self.basis)

    def basis_from(self, v):
        return list(self._from[v])

    def basis_to(self, v):
        return list(self._to[v])

    def basis_between(self, v, w):
        return [p for p in self._from[v] if p.target == w]

    def normal_form(self, path):
        """Coordinates of a path in the path basis, as {basis path: coefficient}"""
        if path in self._basis_set:
            return {path: ONE}
        if path in self._reductions:
            return dict(self._reductions[path])
        if path.length <= self._window:
            raise ValueError(f"Path {path} is not a path of this quiver")
        head = Path(path.source, self.quiver.arrow(path.arrows[-2]).target, path.arrows[:-1])
        last = path.arrows[-1]
        result = {}
        for b, c in self.normal_form(head).items():
            extended = Path(b.source, self.quiver.arrow(last).target, b.arrows + (last,))
            for b2, c2 in self.normal_form(extended).items():
                value = result.get(b2, ZERO) + c * c2
                if value:
                    result[b2] = value
                else:
                    result.pop(b2, None)
        return result

    def multiply(self, p, q):
        """Normal form of the product p then q, empty when not composable"""
        if p.target != q.source:
            return {}
        return self.normal_form(_concat(p, q))

    def right_multiply(self, p, arrow_name):
        a = self.quiver.arrow(arrow_name)
        if p.target != a.source:
            return {}
        return self.normal_form(Path(p.source, a.target, p.arrows + (arrow_name,)))

    def left_multiply(self, arrow_name, p):
        a = self.quiver.arrow(arrow_name)
        if a.target != p.source:
            return {}
        return self.normal_form(Path(a.source, p.target, (arrow_name,) + p.arrows))

    @property
    def opposite(self):
        """Opposite algebra: arrows and relation paths reversed, names kept"""
        if self._opposite is None:
            op = Algebra(self.quiver.reversed(), [r.reversed() for r in self.relations],
                         self.path_length_cap, self.max_paths,
                         name=f"{self.name}^op" if self.name else "")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def connected_components(self):
        return self.quiver.connected_components()

    def is_connected(self):
        return len(self.connected_components()) <= 1

    def to_dict(self):
        return {
            "vertices": list(self.quiver.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.quiver.arrows],
            "relations": [r.to_json() for r in self.relations],
        }

    def summary(self):
        return {
            "vertices": len(self.quiver.vertices),
            "arrows": len(self.quiver.arrows),
            "relations": len(self.relations),
            "dimension": self.dimension,
            "max_path_length": self.max_path_length,
            "basis": [str(p) for p in self.basis],
        }

    def __repr__(self):
        return f"Algebra({self.name or 'unnamed'}, dim={self.dimension})"


def algebra_from_dict(doc, path_length_cap=None, max_paths=None, name=""):
    """Validate an algebra document and compute its path basis"""
    if path_length_cap is None:
        path_length_cap = config_loader.config.path_length_cap
    if max_paths is None:
        max_paths = config_loader.config.max_paths
    if not isinstance(doc, dict):
        raise errors.ParseError("Algebra document must be a JSON object")
    raw_vertices = doc.get("vertices")
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise errors.ParseError("'vertices' must be a nonempty list")
    vertices = [str(v) for v in raw_vertices]
    if len(set(vertices)) != len(vertices):
        raise errors.ParseError("Vertex names must be unique")

    arrows = []
    seen = set()
    for entry in doc.get("arrows", []):
        if not isinstance(entry, dict) or not {"name", "from", "to"} <= set(entry):
            raise errors.ParseError(f"Arrow entry {entry!r} needs 'name', 'from' and 'to'")
        name_ = str(entry["name"])
        if name_ in seen:
            raise errors.ParseError(f"Duplicate arrow name '{name_}'")
        seen.add(name_)
        source, target = str(entry["from"]), str(entry["to"])
        for v in (source, target):
            if v not in vertices:
                raise errors.UnknownVertexError(f"Arrow '{name_}' uses unknown vertex '{v}'")
        arrows.append(Arrow(name_, source, target))
    quiver = Quiver(vertices, arrows)

    relations = []
    for raw in doc.get("relations", []):
        if not isinstance(raw, list) or not raw:
            raise errors.ParseError("Each relation must be a nonempty list of terms")
        terms = []
        for term in raw:
            if not isinstance(term, dict) or "path" not in term:
                raise errors.ParseError(f"Relation term {term!r} needs a 'path'")
            coef = to_scalar(term.get("coef", "1"))
            if not coef:
                raise errors.ParseError("Relation coefficients must be nonzero")
            terms.append((coef, quiver.make_path(term["path"])))
        ends = {(p.source, p.target) for _, p in terms}
        if len(ends) != 1:
            raise errors.MixedRelationError(
                f"Relation mixes paths with endpoints {sorted(ends)}")
        relations.append(Relation(tuple(terms)))

    return Algebra(quiver, relations, path_length_cap, max_paths, name=name)


def parse_algebra(text, path_length_cap=None, max_paths=None, name=""):
    """Parse an algebra from JSON text (comments allowed)"""
    doc = config_loader.parse_jsonc(text)
    return algebra_from_dict(doc, path_length_cap, max_paths, name)


def load_algebra(path, path_length_cap=None, max_paths=None):
    logger.info(f"Parsing algebra from {path}")
    doc = config_loader.read_jsonc_file(path)
    return algebra_from_dict(doc, path_length_cap, max_paths, name=str(path))
