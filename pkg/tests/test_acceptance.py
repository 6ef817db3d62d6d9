"""Acceptance gate.

Each test checks one criterion at its stated tolerance and wall-clock bound,
and records a one-line PASS/FAIL summary.  The lines are printed at the end
of the pytest session (see conftest.py) and when this file is run directly.
"""

import json
import math
import os
import subprocess
import sys
import time
from math import comb

from defhyper.builders import ap, axes, build_example, lines, subspace
from defhyper.geometry import GenericTrialPolicy, dimension, generic_fiber_dimension, projection_dimension
from defhyper.hypergraph import density_report, independence_criterion, is_injective, minimal_r_from_dims
from defhyper.oracle import check_edge_free, count_projections, enumerate_points, estimate_dimension, profile_from_counts
from defhyper.scenarios import emit_report, interp_rank, verify_expansion, verify_main, verify_prints
from defhyper.specfile import emit_spec

from suite import graph_sets, regression_suite

RESULTS = []


def _run(num, title, bound, body):
    start = time.perf_counter()
    try:
        detail = body()
        elapsed = time.perf_counter() - start
        if bound is not None:
            assert elapsed < bound, f"took {elapsed:.1f}s, bound {bound}s"
    except AssertionError as exc:
        elapsed = time.perf_counter() - start
        RESULTS.append(f"FAIL criterion {num}: {title} ({elapsed:.1f}s) :: {exc}")
        raise
    limit = f" < {bound}s" if bound is not None else ""
    RESULTS.append(f"PASS criterion {num}: {title} ({elapsed:.1f}s{limit}) {detail}")


def test_criterion_1_subspace_sharpness():
    def body():
        E = build_example("subspace", n=3, k=1)
        rep = density_report(E)
        assert rep.dimension == 5, rep.dimension
        assert rep.minimal_r == 1, rep.minimal_r
        low = verify_main(E, d=1, k=1)
        empty = sum(not tr["nonempty"] for tr in low.trials)
        assert empty >= 4, f"E[l] empty in {empty}/5 trials at k=1"
        high = verify_main(E, d=1, k=2)
        good = sum(tr["nonempty"] and tr["dense"] for tr in high.trials)
        assert good >= 4, f"E[f] nonempty and dense in {good}/5 trials at k=2"
        return f"dim E=5, r=1, empty {empty}/5 at k=1, dense {good}/5 at k=2"

    _run(1, "subspace sharpness", 30, body)


def test_criterion_2_expansion_formula():
    def body():
        A = lines()
        gen = verify_expansion(A, d=1, k=1)
        hits = sum(tr["dim_proj2_Af"] == 1 for tr in gen.trials)
        assert hits >= 4, f"dim proj2 = 1 in {hits}/5 generic trials"
        orig = verify_expansion(A, d=1, k=1, through_origin=True)
        dims = [tr["dim_proj2_Af"] for tr in orig.trials]
        assert all(v == 0 for v in dims), dims
        return f"generic {hits}/5 at 1, through-origin {dims}"

    _run(2, "expansion formula on the lines example", 10, body)


def test_criterion_3_interpolation_rank():
    def body():
        out = []
        for k, n, t, d, q in [(1, 1, 3, 2, 1), (2, 3, 3, 2, 1), (1, 2, 4, 3, 1)]:
            rep = interp_rank(k, n, t, d, q=str(q))
            assert len(rep.trials) == 20
            want = (comb(k + d, d) - t) * n
            for tr in rep.trials:
                assert tr["rank"] == t * n, (k, n, t, d, tr)
                assert tr["solution_dim"] == want, (k, n, t, d, tr)
            out.append(f"({k},{n},{t},{d}) rank {t * n} soldim {want}")
        return "; ".join(out)

    _run(3, "interpolation rank", 10, body)


def _oracle_minimal_r(E, subsets, primes=(5, 7, 11)):
    coord_sets = [[c for i in S for c in E.block(i - 1)] for S in subsets]
    table = [count_projections(E.set, coord_sets, q) for q in primes]
    dims = {}
    for j, S in enumerate(subsets):
        est = profile_from_counts(primes, [row[j] for row in table]).estimated_dim
        assert est is not None, S
        dims[S] = est
    return dims, minimal_r_from_dims(dims, E.n)


def test_criterion_4_density_arithmetic():
    def body():
        out = []
        for n, t in [(1, 3), (2, 3), (1, 4)]:
            E = ap(n, t)
            want = math.ceil(n * (t - 2) / (t - 1))
            rep = density_report(E)
            assert rep.minimal_r == want, (n, t, rep.minimal_r)
            dims, r_oracle = _oracle_minimal_r(E, sorted(rep.projection_dims))
            assert dims == rep.projection_dims, (n, t, dims, rep.projection_dims)
            assert r_oracle == want, (n, t, r_oracle)
            out.append(f"({n},{t}) r={want}")
        return ", ".join(out)

    _run(4, "AP density arithmetic", 60, body)


def test_criterion_5_independence_witness():
    def body():
        out = []
        for n in (1, 2):
            E = axes(n)
            res = independence_criterion(E)
            # criterion (ii) failing means a full-dimensional independent set exists
            assert res.has_fulldim_independent_set, n
            assert res.witness_dimension == n, (n, res.witness_dimension)
            for q in (5, 7):
                pts = enumerate_points(res.witness, q)
                assert check_edge_free(pts, E, q), (n, q)
            out.append(f"n={n} witness dim {n}")
        return ", ".join(out)

    _run(5, "independence witness on axes", 30, body)


def test_criterion_6_fiber_dimension():
    def body():
        checked = 0
        for name, S, b in graph_sets():
            res = generic_fiber_dimension(S, b)
            assert res.accepted, name
            lhs = dimension(S)
            rhs = projection_dimension(S, range(b)) + res.value
            assert lhs == rhs, (name, lhs, rhs)
            checked += 1
        suite = regression_suite()
        agree = 0
        for name, S in suite:
            sym = dimension(S)
            est = estimate_dimension(S, (5, 7, 11)).estimated_dim
            assert est is not None and abs(est - sym) < 2, (name, sym, est)
            agree += est == sym
        assert agree >= 0.9 * len(suite), f"{agree}/{len(suite)}"
        return f"{checked} graph sets exact, oracle agrees on {agree}/{len(suite)}"

    _run(6, "fiber dimension invariants", 120, body)


def test_criterion_7_char_sensitivity():
    def body():
        big = is_injective(ap(1, 3))
        small = is_injective(ap(1, 3, p=2))
        assert big is True and small is False, (big, small)
        return "injective at 2^31-1, not at 2"

    _run(7, "3-AP injectivity by characteristic", 5, body)


def test_criterion_8_prints():
    def body():
        E = subspace(3, 1)
        high = verify_prints(E, d=1, k=2)
        full = sum(tr["partial_dim"] == 3 for tr in high.trials)
        assert full >= 4, f"partial dim 3 in {full}/5 trials at k=2"
        low = verify_prints(E, d=1, k=1)
        dims = [tr["partial_dim"] for tr in low.trials]
        drops = sum(v < 3 for v in dims)
        assert drops >= 4, f"k=1 partial dims {dims}: below 3 in {drops}/5 trials"
        return f"k=2 {full}/5 at 3, k=1 dims {dims}"

    _run(8, "prints consequence on the subspace example", 60, body)


def _scenario_runs():
    yield "verify-main", lambda: verify_main(subspace(3, 1), 1, 2)
    yield "verify-main-k1", lambda: verify_main(subspace(3, 1), 1, 1)
    yield "verify-expansion", lambda: verify_expansion(lines(), 1, 1)
    yield "verify-expansion-origin", lambda: verify_expansion(lines(), 1, 1, through_origin=True)
    yield "verify-prints", lambda: verify_prints(subspace(3, 1), 1, 2)
    yield "interp-rank", lambda: interp_rank(2, 3, 3, 2)


def test_criterion_9_determinism(tmp_path):
    def body():
        for name, make in _scenario_runs():
            assert emit_report(make()) == emit_report(make()), name
        # separate interpreters with different hash seeds
        spec = tmp_path / "sub.txt"
        spec.write_text(emit_spec(subspace(3, 1)))
        lspec = tmp_path / "lines.txt"
        lspec.write_text(emit_spec(lines()))
        argvs = [
            ["verify-main", str(spec), "--d", "1", "--k", "2", "--seed", "3"],
            ["verify-prints", str(spec), "--d", "1", "--k", "2", "--seed", "3"],
            ["verify-expansion", str(lspec), "--d", "1", "--k", "1", "--seed", "3"],
            ["interp-rank", "--k", "1", "--n", "2", "--t", "4", "--d", "3", "--seed", "3"],
        ]
        for argv in argvs:
            outs = []
            for hs in ("0", "12345"):
                env = dict(os.environ, PYTHONHASHSEED=hs)
                res = subprocess.run([sys.executable, "-m", "defhyper", *argv], capture_output=True, text=True, env=env)
                assert res.returncode == 0, res.stderr
                outs.append(res.stdout)
            assert outs[0] == outs[1], argv[0]
        return "in-process and cross-process JSON byte-identical"

    _run(9, "determinism", None, body)


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            if fn.__code__.co_argcount:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            pass
    print("\n".join(RESULTS))
