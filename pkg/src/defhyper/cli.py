"""Command-line entry point: ``defhyper <verb> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from .builders import BUILDERS, SplitSet, build_example
from .errors import DefhyperError
from .geometry import GenericTrialPolicy
from .hypergraph import DefinableHypergraph, density_report, induce
from .maps import param_ring, sample_map
from .oracle import estimate_dimension
from .polycore import derive_rng
from .scenarios import emit_report, interp_rank, verify_expansion, verify_main, verify_prints
from .specfile import emit_spec, parse_spec


def _load(path, prime):
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), prime)


def _hypergraph(args) -> DefinableHypergraph:
    obj = _load(args.spec, args.prime)
    if not isinstance(obj, DefinableHypergraph):
        raise DefhyperError(f"{args.spec} describes a split set, not a hypergraph")
    return obj


def _policy(args) -> GenericTrialPolicy:
    threshold = args.accept_threshold
    if threshold is None:
        threshold = min(args.trials, max(1, (4 * args.trials + 4) // 5))
    return GenericTrialPolicy(args.trials, threshold, args.seed)


def _write(text, args):
    if getattr(args, "json_out", None):
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _dump(payload) -> str:
    return json.dumps({"schema_version": 1, **payload}, indent=2) + "\n"


def cmd_density(args):
    E = _hypergraph(args)
    _write(_dump({"density": density_report(E, args.r).to_dict()}), args)


def cmd_induce(args):
    E = _hypergraph(args)
    q = param_ring(args.k, E.p).parse(args.q_poly)
    f = sample_map(args.d, args.k, E.n, q, derive_rng(args.seed, "induce"))
    Ef = induce(E, f)
    payload = {
        "map": {"k": f.k, "n": f.n, "d": f.d, "q_poly": f.q.to_str(), "numerators": [g.to_str() for g in f.numerators]},
        "induced_spec": emit_spec(Ef),
        "density": density_report(Ef, check_injective=False).to_dict(),
    }
    _write(_dump(payload), args)


def cmd_verify_main(args):
    E = _hypergraph(args)
    _write(emit_report(verify_main(E, args.d, args.k, args.q_poly, _policy(args))), args)


def cmd_verify_prints(args):
    E = _hypergraph(args)
    _write(emit_report(verify_prints(E, args.d, args.k, args.q_poly, _policy(args))), args)


def cmd_verify_expansion(args):
    A = _load(args.spec, args.prime)
    if not isinstance(A, SplitSet):
        raise DefhyperError(f"{args.spec} has no 'split' header")
    _write(emit_report(verify_expansion(A, args.d, args.k, _policy(args), args.through_origin)), args)


def cmd_interp_rank(args):
    policy = GenericTrialPolicy(args.trials, args.accept_threshold or args.trials, args.seed)
    _write(emit_report(interp_rank(args.k, args.n, args.t, args.d, args.q_poly, policy, args.prime)), args)


def cmd_oracle_dim(args):
    obj = _load(args.spec, None)
    primes = [int(x) for x in args.primes.split(",")]
    _write(_dump({"oracle": estimate_dimension(obj.set, primes).to_dict()}), args)


def cmd_build_example(args):
    params = {}
    for item in args.param:
        key, _, val = item.partition("=")
        params[key] = int(val)
    if args.prime is not None:
        params["p"] = args.prime
    text = emit_spec(build_example(args.name, **params))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="defhyper", description="Dimension and density toolkit for definable hypergraphs.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(sp, spec=True, scenario=False):
        if spec:
            sp.add_argument("spec", help="hypergraph spec file")
        sp.add_argument("--prime", type=int, default=None, help="override the working prime")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json-out", default=None, help="also write the JSON output here")
        if scenario:
            sp.add_argument("--trials", type=int, default=5)
            sp.add_argument("--accept-threshold", type=int, default=None)
            sp.add_argument("--d", type=int, required=True, help="numerator degree bound")
            sp.add_argument("--k", type=int, required=True, help="parameter-space dimension")
            sp.add_argument("--q-poly", default="1", help="denominator in y1..yk")

    sp = sub.add_parser("density", help="projection dimensions and minimal r")
    common(sp)
    sp.add_argument("--r", type=int, default=None)
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("induce", help="E[f] for one sampled f")
    common(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--q-poly", default="1")
    sp.set_defaults(func=cmd_induce)

    sp = sub.add_parser("verify-main", help="induced subhypergraphs stay almost dense")
    common(sp, scenario=True)
    sp.set_defaults(func=cmd_verify_main)

    sp = sub.add_parser("verify-prints", help="partial substitutions sweep out F^n")
    common(sp, scenario=True)
    sp.set_defaults(func=cmd_verify_prints)

    sp = sub.add_parser("verify-expansion", help="dimension of the second projection of A_f")
    common(sp, scenario=True)
    sp.add_argument("--through-origin", action="store_true", help="sample maps with zero constant terms")
    sp.set_defaults(func=cmd_verify_expansion)

    sp = sub.add_parser("interp-rank", help="rank of the evaluation system")
    common(sp, spec=False)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--accept-threshold", type=int, default=None)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--q-poly", default="1")
    sp.set_defaults(func=cmd_interp_rank)

    sp = sub.add_parser("oracle-dim", help="point-count dimension estimate")
    common(sp)
    sp.add_argument("--primes", default="5,7,11")
    sp.set_defaults(func=cmd_oracle_dim)

    sp = sub.add_parser("build-example", help="write a named example as a spec file")
    sp.add_argument("name", choices=sorted(BUILDERS))
    sp.add_argument("param", nargs="*", help="builder parameters as key=int, e.g. n=3 k=1")
    sp.add_argument("--prime", type=int, default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_build_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (DefhyperError, ValueError, OSError) as exc:
        print(f"defhyper: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
