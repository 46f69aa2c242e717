"""Command-line interface for SimplexForge."""

import sys
import json
import argparse
import logging
import re
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

from version import __version__, __author__, __description__
from config import load_config, show_config, set_config_value
from errors import ForgeError, PreconditionError
from utils.dependencies import check_and_install_dependencies
from utils.file_utils import RunManifest, output_path, read_json, write_json

logger = logging.getLogger(__name__)

PASS, FAIL, USAGE = 0, 1, 2

CONFIG_OPTIONS = ('budget', 'fix_budget', 'node_budget', 'face_budget', 'tolerance',
                  'workers', 'seed', 'output_dir')

BOUND_KINDS = ('local-to-global', 'heavy-cosystole', 'overlap', 'eta', 'cone',
               'nonabelian-cone', 'decoder')


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--quiet', '-q', action='store_true', default=None,
                        help='Errors only on stderr')
    common.add_argument('--verbose', '-v', action='store_true', default=None,
                        help='Debug logging on stderr')
    common.add_argument('--workers', type=int, default=None,
                        help='Number of parallel workers (default: from config)')
    common.add_argument('--seed', type=int, default=None,
                        help='Random seed (default: from config)')
    common.add_argument('--budget', type=int, default=None,
                        help='Enumeration cap for exhaustive scans')
    common.add_argument('--node-budget', dest='node_budget', type=int, default=None,
                        help='Branch-and-bound node cap')
    common.add_argument('--fix-budget', dest='fix_budget', type=int, default=None,
                        help='Star reassignment cap for local correction')
    common.add_argument('--face-budget', dest='face_budget', type=int, default=None,
                        help='Largest complex to materialize')
    common.add_argument('--tolerance', type=float, default=None,
                        help='Floating point tolerance for spectral checks')
    common.add_argument('--output', '-o', default=None,
                        help='Report file (default: <output-dir>/<command>.json)')
    common.add_argument('--output-dir', '-d', dest='output_dir', default=None,
                        help='Output directory (default: from config)')
    common.add_argument('--install-missing', action='store_true',
                        help='pip-install missing dependencies before running')
    return common


def _lattice_options(parser: argparse.ArgumentParser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--building', nargs=2, type=int, metavar=('N', 'Q'),
                        help='Subspace lattice of F_Q^N')
    source.add_argument('--boolean', type=int, metavar='N', help='Boolean lattice on N atoms')
    source.add_argument('--lattice', metavar='FILE', help='Lattice JSON file')


def _cochain_options(parser: argparse.ArgumentParser, k_required: bool = True):
    parser.add_argument('complex', help='Complex JSON file')
    parser.add_argument('--k', type=int, required=k_required, help='Cochain level')
    parser.add_argument('--group', default='Z2', help='Coefficient group, e.g. Z2, Z3, S3, Z2xZ2')
    parser.add_argument('--cochain', default=None,
                        help='Cochain JSON file (default: a planted δg with random noise)')
    parser.add_argument('--noise', type=float, default=0.05,
                        help='Planted noise rate when no cochain file is given (default: 0.05)')


def parse_arguments(argv=None):
    """Parse command-line arguments."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        description='Expansion, local correction, cones and decoding on simplicial complexes',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Commands:
  gen            Build a complex (complete, partite, building, order-complex, restrict, link)
  expansion      h^k of a complex, exhaustive or randomized
  spectral       Link spectra against a target λ
  correct        η-local correction with replay and minimality checks
  cone           Abelian cone on a color restriction of a lattice
  nacone         Non-abelian cone on three colors of a lattice
  decode         Color-restriction decoding with certified color sets
  upperbound     Random cochains against the 1 + 8ε upper bound
  bounds         Evaluate a closed-form bound
  lattice-check  Rank-graph expansion of a lattice

Examples:
  ./simplexforge.sh gen building 3 2
  ./simplexforge.sh expansion ../output/building-3-2.json --k 0 --group Z2
  ./simplexforge.sh cone --building 4 2 --colors 1 2 --k 0
  ./simplexforge.sh bounds local-to-global --beta 1 --lambda 0 --k 1
  ./simplexforge.sh --set-config workers 8
        """
    )

    parser.add_argument('--version', '-V', action='store_true', help='Show version information')
    parser.add_argument('--show-config', action='store_true', help='Show current configuration')
    parser.add_argument('--set-config', nargs=2, metavar=('KEY', 'VALUE'),
                        help='Set a configuration value (e.g., --set-config workers 8)')

    commands = parser.add_subparsers(dest='command')

    gen = commands.add_parser('gen', parents=[common], help='Build a complex file')
    kinds = gen.add_subparsers(dest='kind', required=True)
    p = kinds.add_parser('complete', parents=[common], help='All (d+1)-subsets of n vertices')
    p.add_argument('n', type=int)
    p.add_argument('d', type=int)
    p = kinds.add_parser('partite', parents=[common], help='Complete partite complex')
    p.add_argument('sizes', type=int, nargs='+')
    p = kinds.add_parser('building', parents=[common], help='Spherical building of SL_n(F_q)')
    p.add_argument('n', type=int)
    p.add_argument('q', type=int)
    p = kinds.add_parser('order-complex', parents=[common], help='Order complex of a lattice file')
    p.add_argument('lattice')
    p.add_argument('--colors', type=int, nargs='+', default=None)
    p = kinds.add_parser('restrict', parents=[common], help='Color restriction X^F')
    p.add_argument('complex')
    p.add_argument('--colors', type=int, nargs='+', required=True)
    p = kinds.add_parser('link', parents=[common], help='Link of a face')
    p.add_argument('complex')
    p.add_argument('--face', type=int, nargs='+', required=True)

    p = commands.add_parser('expansion', parents=[common], help='Coboundary or cosystolic expansion')
    p.add_argument('complex')
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--group', default='Z2')
    p.add_argument('--mode', choices=['coboundary', 'cosystolic'], default='coboundary')
    p.add_argument('--method', choices=['exhaustive', 'randomized'], default='exhaustive')
    p.add_argument('--trials', type=int, default=32)

    p = commands.add_parser('spectral', parents=[common], help='Spectral certificate of all links')
    p.add_argument('complex')
    p.add_argument('--target', type=float, default=None)

    p = commands.add_parser('correct', parents=[common], help='η-local correction')
    _cochain_options(p)
    p.add_argument('--eta', required=True, help='Threshold in (0, 1], e.g. 0.01 or 1/12')

    p = commands.add_parser('cone', parents=[common], help='Build and verify an abelian cone')
    _lattice_options(p)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--colors', type=int, nargs='+', default=None,
                   help='Color set (default: sampled k-suitable colors)')

    p = commands.add_parser('nacone', parents=[common], help='Build and verify a non-abelian cone')
    _lattice_options(p)
    p.add_argument('--colors', type=int, nargs=3, default=None,
                   help='Three colors (default: sampled)')

    p = commands.add_parser('decode', parents=[common], help='Color-restriction decoding')
    _cochain_options(p)
    p.add_argument('--colors', type=int, nargs='+', default=None,
                   help='Color set F (default: select among all (k+2)-subsets)')
    p.add_argument('--p', default=None, help='Certified fraction of color sets (default: measured)')

    p = commands.add_parser('upperbound', parents=[common], help='Random upper-bound experiment')
    p.add_argument('complex')
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--trials', type=int, default=10000)

    p = commands.add_parser('bounds', parents=[common], help='Evaluate a closed-form bound')
    p.add_argument('kind', choices=BOUND_KINDS)
    p.add_argument('--k', type=int, default=None)
    p.add_argument('--beta', nargs='+', default=None, help='β, or β_0 .. β_k')
    p.add_argument('--lambda', dest='lam', default=None)
    p.add_argument('--nu', default=None)
    p.add_argument('--eps', default=None)
    p.add_argument('--p', default=None)
    p.add_argument('--radius', type=int, default=None)
    p.add_argument('--diameter', type=int, default=None)
    p.add_argument('--k-top', dest='k_top', type=int, default=None)
    p.add_argument('--level', type=int, default=None)
    p.add_argument('--stratum', type=int, default=None)

    p = commands.add_parser('lattice-check', parents=[common], help='Rank-graph expansion of a lattice')
    _lattice_options(p)
    p.add_argument('--i', type=int, default=1)
    p.add_argument('--j', type=int, default=2)
    p.add_argument('--validate', action='store_true', help='Also check the lattice axioms')

    return parser.parse_args(argv)


def apply_config(args, config: Dict[str, Any]):
    """Fill options that were not given explicitly from the config."""
    for key in CONFIG_OPTIONS:
        if getattr(args, key, None) is None:
            setattr(args, key, config[key])
    for key in ('quiet', 'verbose'):
        if getattr(args, key, None) is None:
            setattr(args, key, bool(config.get(key, False)))


def configure_logging(args):
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    else:
        level = logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(levelname)s %(name)s: %(message)s', force=True)


def show_version():
    """Show version information."""
    print(f"\nSimplexForge v{__version__}")
    print(f"{__description__}")
    print(f"Author: {__author__}\n")


def status(args, message: str):
    if not args.quiet:
        print(message, file=sys.stderr)


def banner(args, title: str):
    status(args, f"\n{'='*60}\n{title}\n{'='*60}")


def _slug(name: str) -> str:
    return re.sub(r'[^A-Za-z0-9]+', '-', name).strip('-') or 'complex'


def _number(text: Optional[str], what: str) -> Fraction:
    if text is None:
        raise PreconditionError(f"--{what} is required for this bound")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise PreconditionError(f"--{what} must be a number, got {text!r}")


def _exact(value) -> Dict[str, Any]:
    doc = {"value": float(value)}
    if isinstance(value, Fraction):
        doc["value_exact"] = str(value)
    return doc


class Run:
    """Output paths, manifest and the one-line stdout summary of a command."""

    SKIP = ('quiet', 'verbose', 'show_config', 'set_config', 'version', 'install_missing')

    def __init__(self, args, command: str, inputs: Iterable[Optional[str]] = ()):
        self.args = args
        self.command = command
        self.start = time.time()
        parameters = {k: v for k, v in sorted(vars(args).items()) if k not in self.SKIP}
        self.manifest = RunManifest(command, parameters, args.seed)
        for path in inputs:
            if path:
                self.manifest.add_input(path)

    def path(self, default_name: str) -> Path:
        return output_path(self.args.output, self.args.output_dir, default_name)

    def save(self, doc: Dict[str, Any], default_name: str) -> Path:
        return self.record(write_json(doc, self.path(default_name)))

    def record(self, path: Path) -> Path:
        self.manifest.add_output(path)
        return path

    def finish(self, code: int, **summary) -> int:
        self.manifest.wall_time = time.time() - self.start
        if self.manifest.outputs:
            self.manifest.write(self.manifest.outputs[0])
        line = {"command": self.command, "status": "pass" if code == PASS else "fail",
                "outputs": list(self.manifest.outputs)}
        line.update(summary)
        print(json.dumps(line, sort_keys=True))
        mark = '✓' if code == PASS else '⚠'
        status(self.args, f"{mark} {self.command} finished in {self.manifest.wall_time:.2f}s")
        return code


# -- loaders ---------------------------------------------------------------------------


def load_input_complex(args, path: str):
    from complexes import load_complex
    return load_complex(path, face_budget=args.face_budget)


def load_input_lattice(args):
    from lattice import BooleanLattice, load_lattice, subspace_lattice
    if args.building:
        n, q = args.building
        return subspace_lattice(n, q, workers=args.workers)
    if args.boolean:
        return BooleanLattice(args.boolean)
    return load_lattice(args.lattice)


def planted_cochain(X, k: int, group, noise: float, seed: int):
    """δg for a random g, with each face moved off its value with probability `noise`."""
    import numpy as np
    from cochains import Cochain, coboundary

    rng = np.random.default_rng(seed)
    f = coboundary(Cochain.random(X, k - 1, group, rng))
    flip = rng.random(f.values.shape[0]) < noise
    values = f.values.copy()
    if flip.any() and group.order > 1:
        shifts = rng.integers(1, group.order, size=int(flip.sum()))
        values[flip] = group.table[values[flip], shifts]
    return f.with_values(values)


def load_input_cochain(args, X):
    from cochains import Cochain, parse_group
    if args.cochain:
        f = Cochain.from_dict(read_json(args.cochain), X)
        if f.level != args.k:
            raise PreconditionError(f"Cochain file holds level {f.level}, expected {args.k}")
        return f
    return planted_cochain(X, args.k, parse_group(args.group), args.noise, args.seed)


# -- commands --------------------------------------------------------------------------


def cmd_gen(args) -> int:
    from complexes import complete_complex, complete_partite_complex, save_complex
    from lattice import load_lattice, order_complex, spherical_building

    inputs = [getattr(args, 'complex', None), getattr(args, 'lattice', None)]
    run = Run(args, 'gen', inputs)
    banner(args, f"Generating {args.kind} complex")
    if args.kind == 'complete':
        X = complete_complex(args.n, args.d, face_budget=args.face_budget)
    elif args.kind == 'partite':
        X = complete_partite_complex(args.sizes, face_budget=args.face_budget)
    elif args.kind == 'building':
        X = spherical_building(args.n, args.q, face_budget=args.face_budget)
    elif args.kind == 'order-complex':
        X = order_complex(load_lattice(args.lattice), args.colors, face_budget=args.face_budget)
    elif args.kind == 'restrict':
        X = load_input_complex(args, args.complex).color_restriction(args.colors)
    else:
        X = load_input_complex(args, args.complex).link(args.face)

    path = run.record(save_complex(X, run.path(f"{_slug(X.name)}.json")))
    status(args, f"✓ {X.name}: {len(X.vertices)} vertices, dimension {X.dimension} -> {path}")
    return run.finish(PASS, kind=args.kind, name=X.name, dimension=X.dimension,
                      vertices=len(X.vertices),
                      faces={str(k): n for k, n in sorted(X.face_counts().items()) if k >= 0})


def cmd_expansion(args) -> int:
    from cochains import parse_group
    from expansion import h_exhaustive, h_randomized

    run = Run(args, 'expansion', [args.complex])
    X = load_input_complex(args, args.complex)
    group = parse_group(args.group)
    banner(args, f"h^{args.k}({X.name}; {group.name}) [{args.mode}, {args.method}]")
    if args.method == 'exhaustive':
        report = h_exhaustive(X, args.k, group, args.mode, args.budget, args.workers, args.quiet)
    else:
        report = h_randomized(X, args.k, group, args.mode, trials=args.trials, seed=args.seed,
                              budget=args.budget, node_budget=args.node_budget)
    run.save(report.to_dict(), f"expansion-{_slug(X.name)}-k{args.k}.json")
    value = None if report.value is None else float(report.value)
    return run.finish(PASS, value=value, exact=report.exact,
                      nontrivial_cohomology=report.nontrivial_cohomology)


def cmd_spectral(args) -> int:
    from expansion import spectral_certificate

    run = Run(args, 'spectral', [args.complex])
    X = load_input_complex(args, args.complex)
    banner(args, f"Link spectra of {X.name}")
    cert = spectral_certificate(X, args.target, args.tolerance, args.workers, args.quiet)
    run.save(cert.to_dict(), f"spectral-{_slug(X.name)}.json")
    return run.finish(PASS if cert.passed else FAIL, value=cert.lam, target=args.target)


def cmd_correct(args) -> int:
    from cochains import coboundary
    from correction import as_eta, correct, is_locally_minimal

    run = Run(args, 'correct', [args.complex, args.cochain])
    X = load_input_complex(args, args.complex)
    f = load_input_cochain(args, X)
    eta = as_eta(args.eta)
    banner(args, f"η-local correction on {X.name} (k={f.level}, η={eta})")
    corrected, trace = correct(f, eta, args.fix_budget, args.node_budget)
    bound_holds = trace.distance_bound_holds()
    replayed = trace.replay()
    minimality = is_locally_minimal(coboundary(corrected), eta, args.budget, args.node_budget)
    passed = bound_holds and replayed and minimality.minimal

    doc = {
        "kind": "correction",
        "params": {"complex": X.name, "k": f.level, "group": f.group.name, "eta": str(eta)},
        "trace": trace.to_dict(),
        "initial_weight": float(coboundary(f).weight()),
        "final_weight": float(coboundary(corrected).weight()),
        "distance": float(f.distance(corrected)),
        "distance_bound_holds": bound_holds,
        "replay": replayed,
        "locally_minimal": minimality.to_dict(),
        "passed": passed,
    }
    path = run.save(doc, f"correct-{_slug(X.name)}-k{f.level}.json")
    run.record(write_json(corrected.to_dict(), path.with_name(path.stem + '.cochain.json')))
    return run.finish(PASS if passed else FAIL, iterations=trace.iterations,
                      distance=doc["distance"], distance_bound_holds=bound_holds,
                      locally_minimal=minimality.minimal)


def cmd_cone(args) -> int:
    from cones import build_cone, verify_cone
    from errors import SuitabilityError
    from expansion import cone_to_bound
    from lattice import LatticeView, sample_suitable_colors

    run = Run(args, 'cone', [args.lattice])
    L = load_input_lattice(args)
    colors = args.colors or sample_suitable_colors(L.height - 1, args.k, args.seed, fallback=True)
    if colors is None:
        raise SuitabilityError(f"No {args.k}-suitable colors below rank {L.height}")
    view = LatticeView(L, colors)
    banner(args, f"Level-{args.k} cone on {view}")
    cone = build_cone(view, args.k, workers=args.workers, quiet=args.quiet)
    check = verify_cone(cone)
    within = check.radius <= check.radius_limit
    bound = None
    if L.homogeneous and check.radius >= 1:
        bound = cone_to_bound(check.radius, view.dimension, args.k)

    doc = {
        "kind": "cone_report",
        "colors": list(view.colors),
        "k": args.k,
        "check": check.to_dict(),
        "radius_limit": check.radius_limit,
        "within_radius_limit": within,
        "bound": None if bound is None else _exact(bound),
        "cone": cone.to_dict(),
    }
    run.save(doc, f"cone-k{args.k}.json")
    passed = check.valid and within
    return run.finish(PASS if passed else FAIL, colors=list(view.colors), radius=check.radius,
                      radius_limit=check.radius_limit, valid=check.valid,
                      bound=None if bound is None else float(bound))


def cmd_nacone(args) -> int:
    from cones import DIAMETER_BOUND, build_nonabelian_cone, verify_nonabelian_cone
    from lattice import LatticeView, triple_colors

    run = Run(args, 'nacone', [args.lattice])
    L = load_input_lattice(args)
    colors = args.colors or triple_colors(L.height - 1, args.seed)
    view = LatticeView(L, colors)
    banner(args, f"Non-abelian cone on {view}")
    cone = build_nonabelian_cone(view, workers=args.workers, quiet=args.quiet)
    check = verify_nonabelian_cone(cone)
    within = check.diameter <= DIAMETER_BOUND
    bound = cone.bound(view.dimension) if check.diameter >= 1 else None

    doc = {
        "kind": "nonabelian_cone_report",
        "colors": list(view.colors),
        "check": check.to_dict(),
        "diameter_limit": DIAMETER_BOUND,
        "within_diameter_limit": within,
        "bound": None if bound is None else _exact(bound),
        "cone": cone.to_dict(),
    }
    run.save(doc, "nacone.json")
    passed = check.valid and within
    return run.finish(PASS if passed else FAIL, colors=list(view.colors), diameter=check.diameter,
                      valid=check.valid, bound=None if bound is None else float(bound))


def cmd_decode(args) -> int:
    from decoder import certify_color_set, decode, select_good_F

    run = Run(args, 'decode', [args.complex, args.cochain])
    X = load_input_complex(args, args.complex)
    f = load_input_cochain(args, X)
    group = f.group
    p = Fraction(args.p) if args.p is not None else None
    banner(args, f"Decoding level {f.level} on {X.name}")

    if args.colors:
        candidates = [tuple(sorted(args.colors))]
    else:
        candidates = list(combinations(X.color_set, f.level + 2))
    certificates = []
    for colors in candidates:
        status(args, f"  certifying F={list(colors)}")
        certificates.append(certify_color_set(X, colors, f.level, group, args.budget,
                                              args.workers, args.quiet))
    selection = select_good_F(f, certificates, p)
    g, report = decode(f, selection, node_budget=args.node_budget,
                       workers=args.workers, quiet=args.quiet)

    doc = report.to_dict()
    doc["selection"] = selection.to_dict()
    path = run.save(doc, f"decode-{_slug(X.name)}-k{f.level}.json")
    run.record(write_json(g.to_dict(), path.with_name(path.stem + '.cochain.json')))
    return run.finish(PASS if report.verified else FAIL, F=list(report.colors),
                      overall=float(report.overall), bound=report.bound, verified=report.verified)


def cmd_upperbound(args) -> int:
    from expansion import random_upper_bound_experiment

    run = Run(args, 'upperbound', [args.complex])
    X = load_input_complex(args, args.complex)
    banner(args, f"Random upper-bound experiment on {X.name} (k={args.k})")
    report = random_upper_bound_experiment(X, args.k, args.trials, args.seed, args.budget)
    run.save(report.to_dict(), f"upperbound-{_slug(X.name)}-k{args.k}.json")
    failed = report.guarantee_applies and not report.achieved
    ratio = None if report.best_ratio is None else float(report.best_ratio)
    return run.finish(FAIL if failed else PASS, best_ratio=ratio, threshold=report.threshold,
                      achieved=report.achieved, guarantee_applies=report.guarantee_applies)


def evaluate_bound(args):
    from expansion import (cone_to_bound, decoder_bound, decoder_stratum_bound, default_eta,
                           heavy_cosystole_bound, local_to_global_bound, nonabelian_cone_bound,
                           overlap_constant)

    def need(name, value):
        if value is None:
            raise PreconditionError(f"--{name} is required for the {args.kind} bound")
        return value

    def betas():
        values = [_number(b, 'beta') for b in need('beta', args.beta)]
        return values[0] if len(values) == 1 else values

    kind = args.kind
    if kind == 'local-to-global':
        return local_to_global_bound(betas(), _number(args.lam, 'lambda'), need('k', args.k))
    if kind == 'heavy-cosystole':
        return heavy_cosystole_bound(betas(), _number(args.lam, 'lambda'), need('k', args.k))
    if kind == 'overlap':
        return overlap_constant(betas(), _number(args.nu, 'nu'), _number(args.eps, 'eps'),
                                need('k', args.k))
    if kind == 'eta':
        return default_eta(betas(), need('k', args.k))
    if kind == 'cone':
        return cone_to_bound(need('radius', args.radius), need('k-top', args.k_top),
                             need('level', args.level))
    if kind == 'nonabelian-cone':
        return nonabelian_cone_bound(need('diameter', args.diameter), need('k-top', args.k_top))
    k = need('k', args.k)
    beta, p, eps = betas(), _number(args.p, 'p'), _number(args.eps, 'eps')
    if args.stratum is not None:
        return decoder_stratum_bound(args.stratum, k, beta, p, eps)
    return decoder_bound(k, beta, p, eps)


def cmd_bounds(args) -> int:
    run = Run(args, 'bounds')
    value = evaluate_bound(args)
    params = {key: getattr(args, key) for key in
              ('k', 'beta', 'lam', 'nu', 'eps', 'p', 'radius', 'diameter', 'k_top', 'level', 'stratum')
              if getattr(args, key) is not None}
    doc = {"kind": "bound", "bound": args.kind, "params": params}
    doc.update(_exact(value))
    run.save(doc, f"bounds-{args.kind}.json")
    return run.finish(PASS, bound=args.kind, **_exact(value))


def cmd_lattice_check(args) -> int:
    from lattice import verify_lattice_link_expansion

    run = Run(args, 'lattice-check', [args.lattice])
    L = load_input_lattice(args)
    banner(args, f"Rank graph ({args.i}, {args.j}) of {L.name or type(L).__name__}")
    if args.validate:
        L.validate()
        status(args, "✓ Lattice axioms hold")
    cert = verify_lattice_link_expansion(L, args.i, args.j, args.tolerance)
    run.save(cert.to_dict(), f"lattice-check-{args.i}-{args.j}.json")
    return run.finish(PASS if cert.passed else FAIL, value=cert.lam, target=cert.target)


COMMANDS = {
    'gen': cmd_gen,
    'expansion': cmd_expansion,
    'spectral': cmd_spectral,
    'correct': cmd_correct,
    'cone': cmd_cone,
    'nacone': cmd_nacone,
    'decode': cmd_decode,
    'upperbound': cmd_upperbound,
    'bounds': cmd_bounds,
    'lattice-check': cmd_lattice_check,
}


def run_forge(argv=None) -> int:
    """Main CLI logic; returns the exit code."""
    args = parse_arguments(argv)

    if args.show_config:
        show_config()
        return PASS

    if args.set_config:
        key, value = args.set_config
        return PASS if set_config_value(key, value) else FAIL

    if args.version:
        show_version()
        return PASS

    if not args.command:
        print("Error: a command is required. Run with --help to see them.", file=sys.stderr)
        return USAGE

    # Apply config defaults ONLY where options were not given explicitly
    apply_config(args, load_config())
    configure_logging(args)

    if not check_and_install_dependencies(args.install_missing, args.quiet):
        return FAIL

    try:
        return COMMANDS[args.command](args)
    except ForgeError as e:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"❌ Error: {e}", file=sys.stderr)
        return USAGE
