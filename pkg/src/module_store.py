"""
Input documents and the universe cache.

Resolves module references (shorthands such as "P(3)", universe labels,
inline module JSON, module files and "+"-separated sums), reads torsion class,
nested family, decomposition and stratifying system documents, and keeps
enumerated universes in memory and optionally on disk with a checksum.
"""

import os
import re
import json
import hashlib
import logging

import errors
import config_loader
from representation import Representation, simple, projective, injective, direct_sum
from decomposition import isomorphic_indecomposables
from ar_enum import IndecUniverse, enumerate_indecomposables
from torsion import complete_to_pair, pair_from_free, smallest_torsion_class, smallest_torsion_free_class
from nested_strata import OrderedIndex, OrderedDecomposition, verify_nested
from stratifying import verify_system

logger = logging.getLogger(__name__)

SHORTHAND = re.compile(r'^\s*([PIS])\((.+)\)\s*$')
CACHE_FORMAT = 1

# In-memory universes keyed by algebra identity, oldest dropped first
universe_store = {}
STORE_LIMIT = 8


def shorthand_module(algebra, text):
    """P(v), I(v) or S(v), or None when the text is not a shorthand"""
    match = SHORTHAND.match(text)
    if not match:
        return None
    kind, vertex = match.group(1), match.group(2).strip()
    build = {"P": projective, "I": injective, "S": simple}[kind]
    return build(algebra, vertex).renamed(f"{kind}({vertex})")


def _split_sum(text):
    parts = [p.strip() for p in re.split(r'[+⊕]', text)]
    return [p for p in parts if p]


def resolve_module(algebra, ref, universe=None):
    """Turn a module reference into a Representation"""
    if isinstance(ref, Representation):
        return ref
    if isinstance(ref, dict):
        return Representation.from_json(algebra, ref)
    if isinstance(ref, list):
        pieces = [resolve_module(algebra, r, universe) for r in ref]
        total, _, _ = direct_sum(pieces, algebra=algebra)
        return total
    if not isinstance(ref, str):
        raise errors.InvalidModuleError(f"Cannot read a module from {ref!r}")
    text = ref.strip()
    if text.startswith("{"):
        return Representation.from_json(algebra, config_loader.parse_jsonc(text))
    if os.path.isfile(text):
        return resolve_module(algebra, config_loader.read_jsonc_file(text), universe)
    pieces = _split_sum(text)
    if len(pieces) > 1:
        return resolve_module(algebra, pieces, universe)
    return _resolve_name(algebra, text, universe)


def _resolve_name(algebra, name, universe):
    built = shorthand_module(algebra, name)
    if universe is not None:
        try:
            known = universe.module(name)
        except errors.InputError:
            known = None
        if known is not None:
            if built is not None and not isomorphic_indecomposables(built, known):
                raise errors.AmbiguousLabelError(
                    f"Label '{name}' names two non-isomorphic modules", witness={"label": name})
            return known
    if built is not None:
        return built
    if universe is None:
        raise errors.InvalidModuleError(f"'{name}' is not a module shorthand and no universe is loaded")
    raise errors.InputError(f"Unknown indecomposable '{name}'", code="unknown-module")


def _class_labels(universe, refs):
    labels = set()
    for ref in refs:
        module = resolve_module(universe.algebra, ref, universe)
        labels.update(universe.decompose_to_labels(module))
    return labels


def _modules(universe, refs):
    return [resolve_module(universe.algebra, ref, universe) for ref in refs]


def torsion_pair_from_json(universe, doc, side="torsion"):
    """Torsion class document ('generators' or 'add'), read as a torsion or torsion-free class"""
    if not isinstance(doc, dict) or "modules" not in doc:
        raise errors.ParseError("Class document needs a 'modules' list")
    mode = doc.get("mode", "add")
    refs = doc["modules"]
    if side == "torsion":
        if mode == "generators":
            members = smallest_torsion_class(universe, _modules(universe, refs)).members
        elif mode == "add":
            members = _class_labels(universe, refs)
        else:
            raise errors.ParseError(f"Unknown class mode '{mode}'")
        return complete_to_pair(universe, members)
    if side == "torsionfree":
        if mode == "generators":
            members = smallest_torsion_free_class(universe, _modules(universe, refs))
        elif mode == "add":
            members = _class_labels(universe, refs)
        else:
            raise errors.ParseError(f"Unknown class mode '{mode}'")
        return pair_from_free(universe, members)
    raise errors.ParseError(f"Unknown family side '{side}'")


def _index_of(doc, count):
    order = doc.get("order")
    if order is None:
        return OrderedIndex.standard(count)
    if len(order) != count:
        raise errors.ParseError(f"'order' has {len(order)} labels for {count} entries")
    return OrderedIndex(order)


def family_from_json(universe, doc):
    side = doc.get("side", "torsion")
    classes = doc.get("classes")
    if not isinstance(classes, list) or not classes:
        raise errors.ParseError("Family document needs a nonempty 'classes' list")
    index = _index_of(doc, len(classes))
    pairs = [torsion_pair_from_json(universe, c, side) for c in classes]
    return verify_nested(index, pairs)


def _keyed(doc, field, index):
    entries = doc.get(field)
    if isinstance(entries, list):
        return dict(zip(index.labels, entries))
    if isinstance(entries, dict):
        return {str(k): v for k, v in entries.items()}
    raise errors.ParseError(f"Document needs a '{field}' list or object")


def decomposition_from_json(universe, doc):
    count = len(doc.get("parts", []))
    index = _index_of(doc, count)
    parts = _keyed(doc, "parts", index)
    return OrderedDecomposition(index, {k: resolve_module(universe.algebra, ref, universe)
                                        for k, ref in parts.items()})


def system_from_json(universe, doc):
    count = len(doc.get("modules", []))
    index = _index_of(doc, count)
    refs = _keyed(doc, "modules", index)
    system = verify_system(index, {k: resolve_module(universe.algebra, ref, universe) for k, ref in refs.items()})
    system.labels = {k: universe.identify(m) for k, m in system.modules.items()}
    return system


def read_document(ref):
    """Parse a file path or inline JSON text"""
    if isinstance(ref, (dict, list)):
        return ref
    text = str(ref).strip()
    if text.startswith("{") or text.startswith("["):
        return config_loader.parse_jsonc(text)
    return config_loader.read_jsonc_file(text)


def _checksum(payload):
    text = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def cache_universe(universe, path):
    """Write the universe with a checksum of its canonical JSON"""
    payload = universe.to_json()
    doc = {"format": CACHE_FORMAT, "checksum": _checksum(payload), "universe": payload}
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(doc, handle, indent=1, sort_keys=True, ensure_ascii=False)
    logger.info(f"Cached {len(universe)} indecomposables in {path}")


def load_universe(algebra, path):
    """Universe from a cache file, or None when the file is missing, corrupt or for another algebra"""
    if not os.path.exists(path):
        return None
    try:
        doc = config_loader.read_jsonc_file(path)
    except errors.InputError as e:
        logger.warning(f"Universe cache {path} is unreadable ({e}); recomputing")
        return None
    if not isinstance(doc, dict) or doc.get("format") != CACHE_FORMAT or "universe" not in doc:
        logger.warning(f"Universe cache {path} has an unknown layout; recomputing")
        return None
    payload = doc["universe"]
    if doc.get("checksum") != _checksum(payload):
        logger.warning(f"Universe cache {path} failed its checksum; recomputing")
        return None
    if payload.get("algebra") != algebra.to_dict():
        logger.warning(f"Universe cache {path} belongs to another algebra; recomputing")
        return None
    try:
        return IndecUniverse.from_json(algebra, payload)
    except errors.LazyStrataError as e:
        logger.warning(f"Universe cache {path} is inconsistent ({e}); recomputing")
        return None


def get_universe(algebra, cache_path=None):
    """Enumerate once per algebra, reusing the in-memory store and the cache file"""
    key = id(algebra)
    if key in universe_store:
        return universe_store[key]
    universe = load_universe(algebra, cache_path) if cache_path else None
    if universe is not None:
        logger.info(f"Loaded {len(universe)} indecomposables from {cache_path}")
    else:
        universe = enumerate_indecomposables(algebra)
        if cache_path:
            cache_universe(universe, cache_path)
    universe_store[key] = universe
    while len(universe_store) > STORE_LIMIT:
        oldest = next(iter(universe_store))
        logger.debug(f"Dropping stored universe of {universe_store[oldest].algebra.name or 'algebra'}")
        del universe_store[oldest]
    return universe


def clear_store():
    universe_store.clear()
