"""
Modules over a bound quiver algebra as representations, and their morphisms.

A Representation stores one vector space dimension per vertex and one matrix per
arrow, of shape dim(target) x dim(source). A Morphism stores one matrix per
vertex. Both are treated as immutable; every construction here returns new
objects together with the canonical maps (inclusions, projections) that
witness it.
"""

import logging
import functools

import errors
from exact_linalg import (Matrix, ZERO, ONE, kernel_basis, image_basis, left_kernel_basis, solve,
                          solve_matrix, sparse_kernel, vstack, block_diagonal, rank, to_scalar)

logger = logging.getLogger(__name__)


class Representation:
    """A finite-dimensional module given by vertex dimensions and arrow matrices"""

    def __init__(self, algebra, dims, maps=None, name="", check=True):
        self.algebra = algebra
        self.name = name
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        for v in dims:
            if v not in self.dims:
                raise errors.UnknownVertexError(f"Module uses unknown vertex '{v}'")
        for v, d in self.dims.items():
            if d < 0:
                raise errors.InvalidModuleError(f"Negative dimension {d} at vertex {v}")
        maps = maps or {}
        for a in maps:
            if not algebra.quiver.has_arrow(a):
                raise errors.UnknownArrowError(f"Module uses unknown arrow '{a}'")
        self.maps = {}
        for a in algebra.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = maps.get(a.name)
            if m is None:
                m = Matrix.zeros(*shape)
            if m.shape != shape:
                raise errors.DimensionMismatchError(
                    f"Arrow '{a.name}' needs a {shape[0]}x{shape[1]} matrix, got {m.rows}x{m.cols}")
            self.maps[a.name] = m
        if check:
            self._check_relations()

    def _check_relations(self):
        for rel in self.algebra.relations:
            total = Matrix.zeros(self.dims[rel.target], self.dims[rel.source])
            for coef, path in rel.terms:
                total = total + self.path_matrix(path).scale(coef)
            if not total.is_zero():
                raise errors.InvalidModuleError(
                    f"Relation {rel.to_json()} does not vanish on module {self.name or ''}".strip())

    def path_matrix(self, path):
        """Matrix of a path: the arrow matrices multiplied last arrow leftmost"""
        result = Matrix.identity(self.dims[path.source])
        for name in path.arrows:
            result = self.maps[name] @ result
        return result

    @property
    def total_dimension(self):
        return sum(self.dims.values())

    def dimension_vector(self):
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self):
        return self.total_dimension == 0

    def offsets(self):
        """Start of each vertex block in the flattened vector space"""
        result = {}
        start = 0
        for v in self.algebra.vertices:
            result[v] = start
            start += self.dims[v]
        return result

    def support(self):
        return [v for v in self.algebra.vertices if self.dims[v]]

    def renamed(self, name):
        return Representation(self.algebra, self.dims, self.maps, name=name, check=False)

    def to_json(self):
        return {
            "dims": {v: d for v, d in self.dims.items() if d},
            "maps": {a: m.to_json() for a, m in self.maps.items() if m.rows and m.cols},
        }

    @classmethod
    def from_json(cls, algebra, doc, name=""):
        if not isinstance(doc, dict) or "dims" not in doc:
            raise errors.InvalidModuleError("Module document needs a 'dims' object")
        raw_dims = doc["dims"]
        if not isinstance(raw_dims, dict):
            raise errors.InvalidModuleError("'dims' must be an object")
        dims = {}
        for v, d in raw_dims.items():
            if isinstance(d, bool) or not isinstance(d, int):
                raise errors.InvalidModuleError(f"Dimension at vertex {v} must be an integer")
            dims[str(v)] = d
        for v in dims:
            if v not in algebra.vertices:
                raise errors.UnknownVertexError(f"Module uses unknown vertex '{v}'")
        maps = {}
        for a, rows in (doc.get("maps") or {}).items():
            arrow = algebra.quiver.arrow(a)
            shape = (dims.get(arrow.target, 0), dims.get(arrow.source, 0))
            maps[a] = Matrix.from_json(rows, shape)
        return cls(algebra, dims, maps, name=name)

    def __repr__(self):
        label = self.name or "module"
        return f"<{label} dims={self.dimension_vector()}>"


class Morphism:
    """A family of vertex matrices intertwining two representations"""

    def __init__(self, source, target, maps=None, check=True):
        if source.algebra is not target.algebra:
            raise errors.AlgebraMismatchError("Morphism between modules over different algebras")
        self.source = source
        self.target = target
        maps = maps or {}
        self.maps = {}
        for v in source.algebra.vertices:
            shape = (target.dims[v], source.dims[v])
            m = maps.get(v)
            if m is None:
                m = Matrix.zeros(*shape)
            if m.shape != shape:
                raise errors.DimensionMismatchError(
                    f"Vertex {v} needs a {shape[0]}x{shape[1]} matrix, got {m.rows}x{m.cols}")
            self.maps[v] = m
        if check and not self.is_homomorphism():
            raise errors.InvalidModuleError("Vertex maps do not commute with the arrows")

    @property
    def algebra(self):
        return self.source.algebra

    def is_homomorphism(self):
        for a in self.algebra.arrows:
            left = self.maps[a.target] @ self.source.maps[a.name]
            right = self.target.maps[a.name] @ self.maps[a.source]
            if left != right:
                return False
        return True

    def compose(self, other):
        """self after other"""
        if other.target is not self.source:
            if other.target.dims != self.source.dims:
                raise errors.DimensionMismatchError("Morphisms are not composable")
        return Morphism(other.source, self.target,
                        {v: self.maps[v] @ other.maps[v] for v in self.algebra.vertices}, check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        return Morphism(self.source, self.target,
                        {v: self.maps[v] + other.maps[v] for v in self.algebra.vertices}, check=False)

    def __sub__(self, other):
        return Morphism(self.source, self.target,
                        {v: self.maps[v] - other.maps[v] for v in self.algebra.vertices}, check=False)

    def scale(self, c):
        c = to_scalar(c)
        return Morphism(self.source, self.target,
                        {v: m.scale(c) for v, m in self.maps.items()}, check=False)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self):
        return all(m.is_zero() for m in self.maps.values())

    def is_injective(self):
        return all(rank(m) == m.cols for m in self.maps.values())

    def is_surjective(self):
        return all(rank(m) == m.rows for m in self.maps.values())

    def is_isomorphism(self):
        return all(m.rows == m.cols and rank(m) == m.rows for m in self.maps.values())

    def rank(self):
        return sum(rank(m) for m in self.maps.values())

    def kernel(self):
        """(K, inclusion K -> source)"""
        spaces = {v: kernel_basis(m) for v, m in self.maps.items()}
        return subrepresentation(self.source, spaces)

    def image(self):
        """(I, inclusion I -> target, corestriction source -> I)"""
        spaces = {v: image_basis(m) for v, m in self.maps.items()}
        sub, inclusion = subrepresentation(self.target, spaces)
        factor = {v: solve_matrix(inclusion.maps[v], self.maps[v]) for v in self.algebra.vertices}
        return sub, inclusion, Morphism(self.source, sub, factor, check=False)

    def cokernel(self):
        """(C, projection target -> C)"""
        spaces = {v: image_basis(m) for v, m in self.maps.items()}
        return quotient(self.target, spaces)

    def to_json(self):
        return {v: m.to_json() for v, m in self.maps.items() if m.rows and m.cols}

    def __repr__(self):
        return f"<Morphism {self.source!r} -> {self.target!r}>"


def identity(module):
    return Morphism(module, module, {v: Matrix.identity(d) for v, d in module.dims.items()}, check=False)


def zero_morphism(source, target):
    return Morphism(source, target, check=False)


def zero_module(algebra):
    return Representation(algebra, {}, name="0", check=False)


def _basis_of_span(vectors, dim):
    if not vectors:
        return Matrix.zeros(dim, 0)
    cols = image_basis(Matrix.from_columns(vectors, dim))
    return Matrix.from_columns(cols, dim)


def subrepresentation(module, spaces, name=""):
    """
    Submodule spanned at each vertex by the given column vectors, which must be
    stable under the arrows. Returns (Sub, inclusion).
    """
    alg = module.algebra
    inclusions = {v: _basis_of_span(spaces.get(v, []), module.dims[v]) for v in alg.vertices}
    dims = {v: m.cols for v, m in inclusions.items()}
    maps = {}
    for a in alg.arrows:
        moved = module.maps[a.name] @ inclusions[a.source]
        induced = solve_matrix(inclusions[a.target], moved)
        if induced is None:
            raise errors.InvalidModuleError(f"Subspace is not stable under arrow '{a.name}'")
        maps[a.name] = induced
    sub = Representation(alg, dims, maps, name=name, check=False)
    return sub, Morphism(sub, module, inclusions, check=False)


def quotient(module, spaces, name=""):
    """Quotient by the arrow-stable subspaces spanned at each vertex. Returns (Q, projection)."""
    alg = module.algebra
    projections = {}
    sections = {}
    for v in alg.vertices:
        d = module.dims[v]
        span = _basis_of_span(spaces.get(v, []), d)
        rows = left_kernel_basis(span) if span.cols else [
            [ONE if i == j else ZERO for j in range(d)] for i in range(d)]
        q = Matrix(len(rows), d, rows) if rows else Matrix.zeros(0, d)
        projections[v] = q
        sections[v] = solve_matrix(q, Matrix.identity(q.rows)) if q.rows else Matrix.zeros(d, 0)
    maps = {}
    for a in alg.arrows:
        maps[a.name] = projections[a.target] @ module.maps[a.name] @ sections[a.source]
    quo = Representation(alg, {v: p.rows for v, p in projections.items()}, maps, name=name, check=False)
    return quo, Morphism(module, quo, projections, check=False)


def direct_sum(modules, algebra=None, name=""):
    """(S, injections, projections) for a list of modules over one algebra"""
    modules = list(modules)
    if not modules:
        if algebra is None:
            raise errors.PreconditionError("Empty direct sum needs an algebra")
        zero = zero_module(algebra)
        return zero, [], []
    alg = modules[0].algebra
    for m in modules:
        if m.algebra is not alg:
            raise errors.AlgebraMismatchError("Direct sum of modules over different algebras")
    dims = {v: sum(m.dims[v] for m in modules) for v in alg.vertices}
    maps = {}
    for a in alg.arrows:
        entries = {}
        r0 = c0 = 0
        for m in modules:
            block = m.maps[a.name]
            for i in range(block.rows):
                for j in range(block.cols):
                    if block[i, j]:
                        entries[(r0 + i, c0 + j)] = block[i, j]
            r0 += block.rows
            c0 += block.cols
        maps[a.name] = Matrix.from_sparse(dims[a.target], dims[a.source], entries)
    total = Representation(alg, dims, maps, name=name, check=False)
    injections = []
    projections = []
    start = {v: 0 for v in alg.vertices}
    for m in modules:
        inj = {}
        proj = {}
        for v in alg.vertices:
            entries = {(start[v] + i, i): ONE for i in range(m.dims[v])}
            inj[v] = Matrix.from_sparse(dims[v], m.dims[v], entries)
            proj[v] = inj[v].transpose()
            start[v] += m.dims[v]
        injections.append(Morphism(m, total, inj, check=False))
        projections.append(Morphism(total, m, proj, check=False))
    return total, injections, projections


def direct_power(module, n):
    return direct_sum([module] * n, algebra=module.algebra)[0]


def hom_basis(source, target):
    """Basis of Hom(source, target) from the intertwining linear system"""
    if source.algebra is not target.algebra:
        raise errors.AlgebraMismatchError("Hom between modules over different algebras")
    alg = source.algebra
    offsets = {}
    n = 0
    for v in alg.vertices:
        offsets[v] = n
        n += target.dims[v] * source.dims[v]
    if n == 0:
        return []

    def unknown(v, r, c):
        return offsets[v] + r * source.dims[v] + c

    rows = []
    for a in alg.arrows:
        i, j = a.source, a.target
        m_a = source.maps[a.name]
        n_a = target.maps[a.name]
        for r in range(target.dims[j]):
            for c in range(source.dims[i]):
                row = {}
                # f_j M_a
                for k in range(source.dims[j]):
                    x = m_a[k, c]
                    if x:
                        idx = unknown(j, r, k)
                        row[idx] = row.get(idx, ZERO) + x
                # - N_a f_i
                for k in range(target.dims[i]):
                    x = n_a[r, k]
                    if x:
                        idx = unknown(i, k, c)
                        row[idx] = row.get(idx, ZERO) - x
                row = {k: x for k, x in row.items() if x}
                if row:
                    rows.append(row)
    basis = []
    for vec in sparse_kernel(rows, n):
        maps = {}
        for v in alg.vertices:
            rows_v, cols_v = target.dims[v], source.dims[v]
            block = vec[offsets[v]:offsets[v] + rows_v * cols_v]
            maps[v] = Matrix(rows_v, cols_v, [block[r * cols_v:(r + 1) * cols_v] for r in range(rows_v)])
        basis.append(Morphism(source, target, maps, check=False))
    return basis


def hom_dimension(source, target):
    return len(hom_basis(source, target))


def linear_combination(morphisms, coeffs, source=None, target=None):
    if not morphisms:
        return zero_morphism(source, target)
    total = None
    for f, c in zip(morphisms, coeffs):
        if not c:
            continue
        term = f.scale(c)
        total = term if total is None else total + term
    return total if total is not None else zero_morphism(morphisms[0].source, morphisms[0].target)


def simple(algebra, v):
    """Simple module S(v)"""
    if v not in algebra.vertices:
        raise errors.UnknownVertexError(f"Unknown vertex '{v}'")
    return Representation(algebra, {v: 1}, name=f"S({v})", check=False)


@functools.lru_cache(maxsize=256)
def projective(algebra, v):
    """Indecomposable projective P(v): residue paths starting at v"""
    if v not in algebra.vertices:
        raise errors.UnknownVertexError(f"Unknown vertex '{v}'")
    bases = {w: algebra.basis_between(v, w) for w in algebra.vertices}
    index = {w: {p: i for i, p in enumerate(ps)} for w, ps in bases.items()}
    maps = {}
    for a in algebra.arrows:
        entries = {}
        for col, p in enumerate(bases[a.source]):
            for q, c in algebra.right_multiply(p, a.name).items():
                entries[(index[a.target][q], col)] = c
        maps[a.name] = Matrix.from_sparse(len(bases[a.target]), len(bases[a.source]), entries)
    return Representation(algebra, {w: len(ps) for w, ps in bases.items()}, maps, name=f"P({v})")


def dual(module):
    """D = Hom_k(-, k): a module over the opposite algebra with transposed maps"""
    op = module.algebra.opposite
    maps = {a: m.transpose() for a, m in module.maps.items()}
    name = f"D{module.name}" if module.name else ""
    return Representation(op, module.dims, maps, name=name, check=False)


def dual_morphism(f):
    """D(f): D(target) -> D(source)"""
    return Morphism(dual(f.target), dual(f.source), {v: m.transpose() for v, m in f.maps.items()}, check=False)


@functools.lru_cache(maxsize=256)
def injective(algebra, v):
    """Indecomposable injective I(v), the dual of the opposite projective"""
    return dual(projective(algebra.opposite, v)).renamed(f"I({v})")


def morphism_from_projective(v, module, element):
    """The map P(v) -> M sending e_v to the given element of M_v"""
    alg = module.algebra
    p_v = projective(alg, v)
    element = [to_scalar(x) for x in element]
    if len(element) != module.dims[v]:
        raise errors.DimensionMismatchError(f"Element of length {len(element)} at vertex {v}")
    maps = {}
    for w in alg.vertices:
        columns = [module.path_matrix(p).apply(element) for p in alg.basis_between(v, w)]
        maps[w] = Matrix.from_columns(columns, module.dims[w])
    return Morphism(p_v, module, maps, check=False)


def radical(module):
    """(rad M, inclusion): sum of the images of all arrows"""
    alg = module.algebra
    spaces = {v: [] for v in alg.vertices}
    for a in alg.arrows:
        spaces[a.target].extend(image_basis(module.maps[a.name]))
    return subrepresentation(module, spaces, name=f"rad {module.name}" if module.name else "")


def top(module):
    """(top M, projection M -> top M)"""
    alg = module.algebra
    spaces = {v: [] for v in alg.vertices}
    for a in alg.arrows:
        spaces[a.target].extend(image_basis(module.maps[a.name]))
    return quotient(module, spaces, name=f"top {module.name}" if module.name else "")


def socle(module):
    """(soc M, inclusion): vectors killed by every arrow"""
    alg = module.algebra
    spaces = {}
    for v in alg.vertices:
        outgoing = [module.maps[a.name] for a in alg.quiver.arrows_from(v)]
        if outgoing:
            spaces[v] = kernel_basis(vstack(outgoing, module.dims[v]))
        else:
            spaces[v] = [[ONE if i == j else ZERO for j in range(module.dims[v])] for i in range(module.dims[v])]
    return subrepresentation(module, spaces, name=f"soc {module.name}" if module.name else "")


def trace_of(generators, module):
    """(trace, inclusion): sum of the images of all maps from the generators"""
    alg = module.algebra
    spaces = {v: [] for v in alg.vertices}
    for g in generators:
        for f in hom_basis(g, module):
            for v in alg.vertices:
                spaces[v].extend(image_basis(f.maps[v]))
    return subrepresentation(module, spaces)


def reject_of(cogenerators, module):
    """(reject, inclusion): intersection of the kernels of all maps to the cogenerators"""
    alg = module.algebra
    maps = []
    for c in cogenerators:
        maps.extend(hom_basis(module, c))
    spaces = {}
    for v in alg.vertices:
        d = module.dims[v]
        blocks = [f.maps[v] for f in maps if f.maps[v].rows]
        if blocks:
            spaces[v] = kernel_basis(vstack(blocks, d))
        else:
            spaces[v] = [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]
    return subrepresentation(module, spaces)


def morphism_matrix(f):
    """Block-diagonal matrix of a morphism over the flattened spaces"""
    return block_diagonal([f.maps[v] for v in f.algebra.vertices])


def coordinates(morphisms, f):
    """Coordinates of f in the span of the given morphisms, or None"""
    if not morphisms:
        return [] if f.is_zero() else None
    columns = [morphism_matrix(g).entries() for g in morphisms]
    target = morphism_matrix(f).entries()
    return solve(Matrix.from_columns(columns, len(target)), target)


def flatten(f):
    return morphism_matrix(f).entries()
