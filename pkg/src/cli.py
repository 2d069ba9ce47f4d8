"""
Command-line entry point: argument parsing, command dispatch, output rendering
and the mapping from engine errors to exit codes.
"""

import sys
import json
import logging
import argparse

import errors
import config_loader
import module_store
from quiver_algebra import load_algebra
from representation import hom_basis, hom_dimension
from homological import ext1_dimension, tau, tau_inverse
from ar_enum import ar_quiver_dot
from torsion import smallest_torsion_class, perp_right
from nested_strata import (classify_m, classify_n, stratum, substratum, induced_fac_family, induced_sub_family,
                           certify_induced, expands, count_induced_families)
from stratifying import (induce_systems, recover_inducers, tf_admissible_orderings, tau_rigid_pipeline,
                         tau_minus_rigid_pipeline, delta_filtration)

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_DATEFMT = '%Y-%m-%d %H:%M:%S'


def configure_logging(level):
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATEFMT, stream=sys.stderr)
    root.setLevel(level)


class Session:
    """Algebra and universe for one invocation, loaded on first use"""

    def __init__(self, args):
        self.args = args
        self._algebra = None
        self._universe = None

    @property
    def algebra(self):
        if self._algebra is None:
            if not self.args.algebra:
                raise errors.InputError("This command needs --algebra PATH", code="usage")
            self._algebra = load_algebra(self.args.algebra)
            logger.info(f"Algebra {self.args.algebra} has dimension {self._algebra.dimension}")
        return self._algebra

    @property
    def universe(self):
        if self._universe is None:
            self._universe = module_store.get_universe(self.algebra, self.args.universe_cache)
        return self._universe

    def universe_or_none(self):
        """The universe when the algebra is representation-finite within the caps"""
        try:
            return self.universe
        except errors.CapabilityError as e:
            logger.info(f"No universe available: {e}")
            return None

    def module(self, ref):
        return module_store.resolve_module(self.algebra, ref, self.universe_or_none())

    def document(self, ref):
        return module_store.read_document(ref)


def label_of(universe, module):
    if universe is not None:
        label = universe.identify(module)
        if label is not None:
            return label
    return "M(" + ",".join(str(d) for d in module.dimension_vector()) + ")"


def describe(module, universe=None):
    doc = {"dimension_vector": list(module.dimension_vector()), "module": module.to_json()}
    if universe is not None:
        labels = universe.decompose_to_labels(module)
        doc["summands"] = {k: labels[k] for k in sorted(labels)}
    return doc


def _systems_json(universe, systems):
    return [{"order": s.index.to_json(), "modules": {k: label_of(universe, s.modules[k]) for k in s.index}}
            for s in systems]


def _stratum_json(universe, strat):
    return {
        "side": strat.side,
        "order": strat.index.to_json(),
        "parts": {k: describe(strat.parts[k], universe) for k in strat.index},
    }


# Command handlers return (document, exit code)

def cmd_check(session, args):
    return {"valid": True, "algebra": session.algebra.summary()}, 0


def cmd_indecs(session, args):
    universe = session.universe
    items = [{"label": e.label, "aliases": sorted(e.aliases), "dimension_vector": list(e.module.dimension_vector()),
              "projective": e.is_projective, "injective": e.is_injective}
             for e in sorted(universe, key=lambda e: e.label)]
    return {"count": len(items), "indecomposables": items}, 0


def cmd_universe_dump(session, args):
    return session.universe.to_json(), 0


def cmd_ar_quiver(session, args):
    universe = session.universe
    if args.output == "dot":
        return ar_quiver_dot(universe), 0
    graph = universe.graph()
    edges = [{"from": s, "to": t, "kind": d["kind"]} for s, t, d in graph.edges(data=True)]
    edges.sort(key=lambda e: (e["kind"], e["from"], e["to"]))
    return {"nodes": sorted(universe.labels), "edges": edges}, 0


def cmd_hom(session, args):
    source, target = session.module(args.source), session.module(args.target)
    basis = hom_basis(source, target)
    return {"dim": len(basis), "basis": [f.to_json() for f in basis]}, 0


def cmd_ext(session, args):
    return {"dim": ext1_dimension(session.module(args.source), session.module(args.target))}, 0


def cmd_tau(session, args):
    module = session.module(args.module)
    return {"tau": describe(tau(module), session.universe_or_none())}, 0


def cmd_tau_minus(session, args):
    module = session.module(args.module)
    return {"tau_inverse": describe(tau_inverse(module), session.universe_or_none())}, 0


def cmd_tau_rigid(session, args):
    module = session.module(args.module)
    if args.minus:
        dim = hom_dimension(tau_inverse(module), module)
        key = "tau_minus_rigid"
    else:
        dim = hom_dimension(module, tau(module))
        key = "tau_rigid"
    return {key: dim == 0, "hom_dim": dim}, (0 if dim == 0 else 1)


def cmd_torsion_closure(session, args):
    universe = session.universe
    generators = [session.module(g) for g in args.gens]
    torsion_class = smallest_torsion_class(universe, generators)
    return {"torsion": torsion_class.sorted_members(),
            "free": sorted(perp_right(universe, torsion_class.members), key=universe.sort_key)}, 0


def cmd_pair_complete(session, args):
    universe = session.universe
    pair = module_store.torsion_pair_from_json(universe, session.document(args.torsion_class), args.side)
    return pair.to_json(), 0


def cmd_nested_verify(session, args):
    family = module_store.family_from_json(session.universe, session.document(args.family))
    doc = family.to_json()
    doc["witnesses"] = [{"k": k, "l": l, "module": label} for (k, l), label in family.witnesses.items()]
    return doc, 0


def _dec_and_family(session, args):
    universe = session.universe
    dec = module_store.decomposition_from_json(universe, session.document(args.dec))
    family = module_store.family_from_json(universe, session.document(args.family))
    return dec, family


def cmd_classify(session, args):
    dec, family = _dec_and_family(session, args)
    flags = classify_m(dec, family) if args.side == "m" else classify_n(dec, family)
    return flags.to_json(), (0 if flags.compatible else 1)


def cmd_stratum(session, args):
    dec, family = _dec_and_family(session, args)
    return _stratum_json(session.universe, stratum(dec, family)), 0


def cmd_substratum(session, args):
    dec, family = _dec_and_family(session, args)
    return _stratum_json(session.universe, substratum(dec, family)), 0


def cmd_induced_families(session, args):
    universe = session.universe
    dec = module_store.decomposition_from_json(universe, session.document(args.dec))
    doc, code, built = {}, 0, {}
    for key, build in (("fac", induced_fac_family), ("sub", induced_sub_family)):
        try:
            built[key] = build(universe, dec)
            doc[key] = built[key].to_json()
        except errors.HypothesisError as e:
            doc[key] = e.to_dict()
            code = e.exit_code
    if len(built) == 2:
        doc = certify_induced(universe, dec, built["fac"], built["sub"]).to_json()
    return doc, code


def cmd_expands(session, args):
    universe = session.universe
    first = module_store.family_from_json(universe, session.document(args.first))
    second = module_store.family_from_json(universe, session.document(args.second))
    result = expands(first, second)
    return {"expands": result}, (0 if result else 1)


def cmd_induce(session, args):
    dec, family = _dec_and_family(session, args)
    induced = induce_systems(dec, family, args.side)
    systems = list(induced)
    return {"count": induced.count, "streamed": not induced.materialized,
            "systems": _systems_json(session.universe, systems)}, 0


def cmd_verify_ss(session, args):
    universe = session.universe
    system = module_store.system_from_json(universe, session.document(args.system))
    return {"valid": True, "order": system.index.to_json(), "modules": system.labels,
            "certificate": system.certificate}, 0


def cmd_recover(session, args):
    universe = session.universe
    system = module_store.system_from_json(universe, session.document(args.system))
    inducers = recover_inducers(universe, system)
    return {
        "decomposition": {"order": system.index.to_json(), "parts": system.labels},
        "fac_family": inducers.fac_family.to_json(),
        "sub_family": inducers.sub_family.to_json(),
        "inMdagger": inducers.m_flags.dagger,
        "inNdagger": inducers.n_flags.dagger,
    }, 0


def cmd_tf_orderings(session, args):
    universe = session.universe
    orderings = tf_admissible_orderings(session.module(args.module))
    return {"orderings": [[label_of(universe, dec.part(k)) for k in dec.index] for dec in orderings]}, 0


def cmd_tau_pipeline(session, args):
    universe = session.universe
    module = session.module(args.module)
    systems = tau_minus_rigid_pipeline(universe, module) if args.minus else tau_rigid_pipeline(universe, module)
    return {"count": len(systems), "systems": _systems_json(universe, systems)}, 0


def cmd_filtration(session, args):
    universe = session.universe
    system = module_store.system_from_json(universe, session.document(args.system))
    result = delta_filtration(session.module(args.module), system)
    doc = result.to_json()
    doc["multiplicities"] = {system.labels.get(k) or k: n for k, n in sorted(result.multiplicities.items())}
    return doc, 0


def cmd_count_families(session, args):
    result = count_induced_families(session.universe, session.module(args.module), args.side)
    return result.to_json(), 0


def cmd_opposite(session, args):
    return session.algebra.opposite.to_dict(), 0


def build_parser():
    parser = argparse.ArgumentParser(prog="lazystrata",
                                     description="Torsion pairs, strata and stratifying systems over bound quiver algebras")
    parser.add_argument("--algebra", help="algebra JSON file")
    parser.add_argument("--output", choices=["json", "text", "dot"], default="json")
    parser.add_argument("--universe-cache", dest="universe_cache", help="cache file for enumerated indecomposables")
    parser.add_argument("--config", help="JSONC configuration file")
    parser.add_argument("--verbose", action="store_true", help="log milestones")
    parser.add_argument("--debug", action="store_true", help="log every step")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    command("check", cmd_check, "parse and validate the algebra")
    command("indecs", cmd_indecs, "enumerate the indecomposables")
    command("universe-dump", cmd_universe_dump, "JSON of every indecomposable")
    command("ar-quiver", cmd_ar_quiver, "Auslander-Reiten quiver")
    command("opposite", cmd_opposite, "opposite algebra")
    for name, handler in (("hom", cmd_hom), ("ext", cmd_ext)):
        p = command(name, handler, f"{name} dimension")
        p.add_argument("source")
        p.add_argument("target")
    command("tau", cmd_tau, "Auslander-Reiten translate").add_argument("module")
    command("tau-minus", cmd_tau_minus, "inverse translate").add_argument("module")
    p = command("tau-rigid", cmd_tau_rigid, "test tau-rigidity")
    p.add_argument("module")
    p.add_argument("--minus", action="store_true", help="test tau^- -rigidity")
    p = command("torsion-closure", cmd_torsion_closure, "smallest torsion class containing the generators")
    p.add_argument("--gens", nargs="+", required=True)
    p = command("pair-complete", cmd_pair_complete, "complete a class to its torsion pair")
    p.add_argument("torsion_class")
    p.add_argument("--side", choices=["torsion", "torsionfree"], default="torsion")
    command("nested-verify", cmd_nested_verify, "verify a nested family").add_argument("family")
    for name, handler in (("classify", cmd_classify), ("stratum", cmd_stratum),
                          ("substratum", cmd_substratum), ("induce", cmd_induce)):
        p = command(name, handler, name)
        p.add_argument("--dec", required=True)
        p.add_argument("--family", required=True)
        if name in ("classify", "induce"):
            p.add_argument("--side", choices=["m", "n"], default="m")
    command("induced-families", cmd_induced_families, "families induced by a decomposition") \
        .add_argument("--dec", required=True)
    p = command("expands", cmd_expands, "whether the first family expands the second")
    p.add_argument("first")
    p.add_argument("second")
    command("verify-ss", cmd_verify_ss, "verify a stratifying system").add_argument("system")
    command("recover", cmd_recover, "recover the inducing decomposition and families").add_argument("system")
    command("tf-orderings", cmd_tf_orderings, "torsion-free admissible orderings").add_argument("module")
    p = command("tau-pipeline", cmd_tau_pipeline, "systems from a basic tau-rigid module")
    p.add_argument("module")
    p.add_argument("--minus", action="store_true", help="tau^- -rigid module through substrata")
    p = command("filtration", cmd_filtration, "Delta-filtration of a module")
    p.add_argument("module")
    p.add_argument("system")
    p = command("count-families", cmd_count_families, "count induced nested families")
    p.add_argument("module")
    p.add_argument("--side", choices=["fac", "sub"], default="fac")
    return parser


def render_text(doc, indent=0):
    pad = "  " * indent
    if isinstance(doc, dict):
        lines = []
        for key, value in doc.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return "\n".join(lines)
    if isinstance(doc, list):
        if all(not isinstance(x, (dict, list)) for x in doc):
            return pad + ", ".join(str(x) for x in doc)
        return "\n".join(render_text(x, indent) if isinstance(x, (dict, list)) else f"{pad}- {x}" for x in doc)
    return f"{pad}{doc}"


def emit(doc, output, stream):
    if isinstance(doc, str):
        stream.write(doc)
    elif output == "text":
        stream.write(render_text(doc) + "\n")
    else:
        stream.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def execute(argv, stream=None):
    """Run one invocation and return its exit code"""
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0

    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else None
    try:
        if args.config:
            config_loader.config.load(args.config)
        if level is None:
            level = config_loader.get_log_level({"log_level": config_loader.config.log_level})
    except SystemExit:
        return 2
    configure_logging(level)

    if args.output == "dot" and args.command != "ar-quiver":
        logger.error("--output dot is only available for ar-quiver")
        return 2

    session = Session(args)
    try:
        doc, code = args.handler(session, args)
    except errors.LazyStrataError as e:
        logger.error(f"{args.command} failed: {e}")
        emit(e.to_dict(), "json" if args.output == "dot" else args.output, stream)
        return e.exit_code
    emit(doc, args.output, stream)
    return code


def main():
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
