"""Verification scenarios: each samples generic maps under a trial policy,
records per-trial data and reaches a majority verdict."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from .builders import SplitSet
from .errors import HypothesisViolation, NonDominantError
from .geometry import Cell, ConstructibleSet, GenericTrialPolicy, dimension, majority, projection_dimension
from .groebner import Ideal
from .hypergraph import (
    DefinableHypergraph,
    density_report,
    independence_criterion,
    induce,
    partial_induce,
)
from .maps import identity_map, interpolation_system, param_ring, sample_affine, sample_map
from .polycore import BlockMap, Ring, derive_rng, substitute_rational

SCHEMA_VERSION = 1
VERDICTS = ("pass", "fail", "flagged")


@dataclass
class ScenarioReport:
    scenario: str
    parameters: dict
    trials: list = field(default_factory=list)
    verdict: str = "fail"
    flags: list = field(default_factory=list)
    assertions: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def successes(self) -> int:
        return sum(1 for tr in self.trials if tr.get("success"))

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.scenario,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "flags": list(self.flags),
            "assertions": self.assertions,
            "summary": self.summary,
            "trials": self.trials,
        }


def emit_report(report: ScenarioReport) -> str:
    """Deterministic JSON: fixed field order, no timestamps."""
    return json.dumps(report.to_dict(), indent=2, default=_jsonable) + "\n"


def _jsonable(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not serializable: {type(obj).__name__}")


def recompute_verdict(report: ScenarioReport) -> str:
    """Verdict implied by the stored trial records, flags and policy."""
    if report.flags:
        return "flagged"
    if report.scenario == "interp-rank":
        return "pass" if all(tr["success"] for tr in report.trials) else "fail"
    threshold = report.parameters["accept_threshold"]
    return "pass" if report.successes() >= threshold else "fail"


def _policy_params(policy: GenericTrialPolicy) -> dict:
    return {"trials": policy.trials, "accept_threshold": policy.accept_threshold, "seed": policy.seed}


def _q_poly(q, k, p):
    ring = param_ring(k, p)
    if q is None:
        return ring.one
    if isinstance(q, str):
        return ring.parse(q)
    if q.ring != ring:
        raise ValueError(f"denominator must be a polynomial in {', '.join(ring.names)}")
    return q


# ---------------------------------------------------------------- main theorem

def verify_main(E: DefinableHypergraph, d: int, k: int, q=None, policy: GenericTrialPolicy = GenericTrialPolicy(), r=None) -> ScenarioReport:
    """Sample f in R_d(k, n; q), build E[f] and test nonemptiness plus
    r-almost density of E[f] at set level (cell level when components are asserted)."""
    q = _q_poly(q, k, E.p)
    base = density_report(E)
    r = base.minimal_r if r is None else r
    flags = []
    if base.minimal_r is None:
        flags.append("E is not r-almost dense for any r (a single projection is deficient)")
    if d < E.t - 1:
        flags.append(f"d={d} below t-1={E.t - 1}")
    if r is not None and k < r + 1:
        flags.append(f"k={k} below r+1={r + 1}")
    if not base.injective:
        flags.append("E is not injective")
    params = {
        "hypergraph": E.name, "n": E.n, "t": E.t, "prime": E.p, "d": d, "k": k,
        "q_poly": q.to_str(), "r": r, **_policy_params(policy),
    }
    report = ScenarioReport("verify-main", params, flags=flags)
    report.summary = {"dim_E": base.dimension, "minimal_r_E": base.minimal_r, "injective_E": base.injective}
    for i in range(policy.trials):
        f = sample_map(d, k, E.n, q, derive_rng(policy.seed, "main", i))
        Ef = induce(E, f)
        rec = {"trial": i, "nonempty": False, "dim": -1, "dense": None, "minimal_r": None, "success": False}
        dim = dimension(Ef.set)
        if dim >= 0:
            rep = density_report(Ef, r, check_injective=False) if r is not None else density_report(Ef, check_injective=False)
            rec.update(nonempty=True, dim=dim, dense=rep.passes, minimal_r=rep.minimal_r)
            rec["projection_dims"] = {",".join(map(str, S)): v for S, v in rep.projection_dims.items()}
            rec["success"] = bool(rep.passes)
            if E.components_asserted:
                crit = independence_criterion(Ef)
                rec["criterion_ii"] = not crit.has_fulldim_independent_set
        report.trials.append(rec)
    report.verdict = recompute_verdict(report)
    if report.verdict == "pass":
        bound = E.t * E.n - (E.t - 1) * k
        ok = base.dimension >= bound
        report.assertions["size_of_E"] = {"dim_E": base.dimension, "bound": bound, "holds": ok}
        if not ok:
            raise HypothesisViolation(f"dim E = {base.dimension} < tn - (t-1)k = {bound} despite a passing run")
    return report


# ---------------------------------------------------------------- expansion formula

def pull_back_base(A: SplitSet, f) -> ConstructibleSet:
    """A_f = {(y, v) : (f(y), v) in A} in F^k x F^m, with q(y) != 0."""
    ring = A.set.ring
    names = [f"y{j}" for j in range(1, f.k + 1)] + list(ring.names[A.n:])
    target = Ring.make(names, ring.p)
    pos = list(range(f.k))
    nums = tuple(g.embed(target, pos) for g in f.numerators)
    den = None if f.q == f.ring.one else f.q.embed(target, pos)
    gens = target.gens()
    blocks = [
        BlockMap(tuple(range(A.n)), nums, den),
        BlockMap(tuple(range(A.n, A.n + A.m)), tuple(gens[f.k:])),
    ]
    domain = () if den is None or den.is_constant() else (den,)
    cells = []
    for c in A.set.cells:
        eqs = tuple(substitute_rational(g, blocks, target) for g in c.equations.generators)
        neqs = tuple(substitute_rational(g, blocks, target) for g in c.inequations) + domain
        cells.append(Cell(Ideal(target, eqs), neqs))
    return ConstructibleSet(target, tuple(cells))


def verify_expansion(A: SplitSet, d: int, k: int, policy: GenericTrialPolicy = GenericTrialPolicy(), through_origin=False) -> ScenarioReport:
    """Compare dim proj_2(A_f) with min{dim A - n + k, dim proj_2 A} for sampled f."""
    base_dim = projection_dimension(A.set, range(A.n))
    if base_dim != A.n:
        raise NonDominantError(f"dim proj_1 A = {base_dim} < n = {A.n}")
    dim_A = dimension(A.set)
    dim_p2 = projection_dimension(A.set, range(A.n, A.n + A.m))
    predicted = min(dim_A - A.n + k, dim_p2)
    flags = ["through-origin family is not generic"] if through_origin else []
    params = {"set": A.name, "n": A.n, "m": A.m, "prime": A.set.ring.p, "d": d, "k": k,
              "through_origin": through_origin, **_policy_params(policy)}
    report = ScenarioReport("verify-expansion", params, flags=flags)
    report.summary = {"dim_A": dim_A, "dim_proj1_A": base_dim, "dim_proj2_A": dim_p2, "predicted": predicted}
    for i in range(policy.trials):
        f = sample_map(d, k, A.n, None, derive_rng(policy.seed, "expansion", i), through_origin, p=A.set.ring.p)
        Af = pull_back_base(A, f)
        obs = projection_dimension(Af, range(k, k + A.m))
        report.trials.append({"trial": i, "dim_proj2_Af": obs, "success": obs == predicted})
    report.verdict = recompute_verdict(report)
    return report


# ---------------------------------------------------------------- prints

def verify_prints(E: DefinableHypergraph, d: int, k: int, q=None, policy: GenericTrialPolicy = GenericTrialPolicy()) -> ScenarioReport:
    """Substitute f o l_i into the first t-1 slots (l_i in L(r, k)) and check
    that the remaining slot sweeps out a set of dimension n."""
    q = _q_poly(q, k, E.p)
    base = density_report(E)
    r = base.minimal_r
    flags = []
    if r is None:
        flags.append("E is not r-almost dense for any r")
        r = 0
    if not base.injective:
        flags.append("E is not injective")
    if len(E.set.cells) != 1:
        flags.append(f"E has {len(E.set.cells)} cells, not one")
    if k < r + 1:
        flags.append(f"k={k} below r+1={r + 1}")
    if d < E.t - 1:
        flags.append(f"d={d} below t-1={E.t - 1}")
    params = {"hypergraph": E.name, "n": E.n, "t": E.t, "prime": E.p, "d": d, "k": k,
              "q_poly": q.to_str(), "r": r, **_policy_params(policy)}
    report = ScenarioReport("verify-prints", params, flags=flags)
    report.summary = {"dim_E": base.dimension, "minimal_r_E": base.minimal_r}
    ident = identity_map(k, E.p)
    for i in range(policy.trials):
        rng = derive_rng(policy.seed, "prints", i)
        f = sample_map(d, k, E.n, q, rng)
        ells = [sample_affine(r, k, rng, E.p) for _ in range(E.t - 1)]
        C = partial_induce(E, f, ells)
        dim_C = dimension(C)
        # the same substitution read on the parameter side: the last slot of E[f]
        Ef = induce(E, f)
        pull = dimension(partial_induce(Ef, ident, ells))
        report.trials.append({"trial": i, "partial_dim": dim_C, "pullback_dim": pull, "success": dim_C == E.n})
    report.verdict = recompute_verdict(report)
    return report


# ---------------------------------------------------------------- interpolation

def interp_rank(k: int, n: int, t: int, d: int, q=None, policy: GenericTrialPolicy = GenericTrialPolicy(trials=20, accept_threshold=20), p=None) -> ScenarioReport:
    """Rank of the evaluation system at random distinct points off V(q)."""
    from .polycore import DEFAULT_PRIME

    p = p or DEFAULT_PRIME
    q = _q_poly(q, k, p)
    flags = [] if d >= t - 1 else [f"d={d} below t-1={t - 1}: rank is recorded, not predicted"]
    params = {"k": k, "n": n, "t": t, "d": d, "q_poly": q.to_str(), "prime": p, **_policy_params(policy)}
    report = ScenarioReport("interp-rank", params, flags=flags)
    predicted_rank = t * n
    predicted_dim = (comb(k + d, d) - t) * n
    report.summary = {"predicted_rank": predicted_rank, "predicted_solution_dim": predicted_dim,
                      "columns": n * comb(k + d, d)}
    for i in range(policy.trials):
        rng = derive_rng(policy.seed, "interp", i)
        pts = []
        while len(pts) < t:
            y = tuple(rng.randrange(p) for _ in range(k))
            if y not in pts and q.evaluate(y) != 0:
                pts.append(y)
        targets = [tuple(rng.randrange(p) for _ in range(n)) for _ in range(t)]
        sys_ = interpolation_system(pts, targets, d, q)
        ok = sys_.rank == predicted_rank and sys_.solution_dim == predicted_dim
        report.trials.append({"trial": i, "rank": sys_.rank, "solution_dim": sys_.solution_dim, "success": ok})
    report.verdict = recompute_verdict(report)
    return report
