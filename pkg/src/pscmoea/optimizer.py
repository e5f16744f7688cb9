"""Steady-state main loop: model fitting, surrogate search, single infill.

One expensive evaluation per iteration.  A Kendall-tau correlation between
violation ranks and objective front ranks can switch the surrogate search
to unconstrained mode while no feasible solution exists; the v3 variant
disables that switch, v1/v2 swap the cluster ranking scheme.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import infill as infill_mod
from . import kriging
from ._threads import single_threaded_blas
from .decomposition import compute_bounds, generate_mirrored_rvs
from .problems import EvaluatedSolution, ProblemDefinition, evaluate, lhs_sample
from .ranking import kendall_tau, nondominated_sort, rank_v1, rank_v2  # noqa: F401  (public surface)
from .subea import SubEAConfig, run_subea

VARIANTS = ("pscmoea", "v1", "v2", "v3")

CONSTRAINED = "constrained"
UNCONSTRAINED = "unconstrained"


class RunAbortedError(Exception):
    """Persistent surrogate fitting failure; diagnostic in the message."""


@dataclass(frozen=True)
class OptimizerConfig:
    fe_max: int = 500
    n_init: int | None = None  # defaults to 11*D - 1
    tau_threshold: float = 0.27
    eps: float = 1e-4
    subea: SubEAConfig = field(default_factory=SubEAConfig)
    variant: str = "pscmoea"
    fit_starts: int = 5
    fit_maxiter: int = 15

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")


@dataclass(frozen=True)
class IterationRecord:
    eval_index: int
    search_flag: str
    tau: float | None
    rv_index: int
    bounds_changed: bool


@dataclass
class RunResult:
    problem: str
    variant: str
    archive: list[EvaluatedSolution]
    iterations: list[IterationRecord]
    n_init: int
    fe_max: int

    def unconstrained_iterations(self) -> int:
        return sum(1 for it in self.iterations if it.search_flag == UNCONSTRAINED)


def _compute_tau(f: np.ndarray, cv: np.ndarray) -> float:
    cv_rank = stats.rankdata(cv, method="min").astype(np.int64)
    front_rank = nondominated_sort(f)
    return kendall_tau(cv_rank, front_rank)


def update_search_flag(
    current: str,
    tau: float | None,
    any_feasible: bool,
    new_cv: float,
    prev_min_cv: float,
    variant: str,
    threshold: float,
) -> str:
    """Next iteration's search mode.

    Unconstrained activates only from constrained mode, on a fully
    infeasible archive with tau at or above the threshold; it survives an
    iteration only when the newest evaluation achieved the archive-minimum
    violation.  Feasibility, or the v3 variant, forces constrained mode.
    """
    if any_feasible or variant == "v3":
        return CONSTRAINED
    if current == UNCONSTRAINED:
        return UNCONSTRAINED if new_cv <= prev_min_cv else CONSTRAINED
    if tau is not None and tau >= threshold:
        return UNCONSTRAINED
    return CONSTRAINED


def _fit_models(xn, columns, rng, warm, starts, maxiter):
    """Fit one model per response column with a shared escalation ladder."""
    models = []
    for i, y in enumerate(columns):
        last_exc = None
        for nugget_start in (1e-10, 1e-8, 1e-6):
            try:
                models.append(
                    kriging.fit(
                        xn,
                        y,
                        rng,
                        warm_start=warm[i] if warm is not None else None,
                        nugget_start=nugget_start,
                        n_starts=starts,
                        maxiter=maxiter,
                    )
                )
                break
            except kriging.FitError as exc:
                last_exc = exc
        else:
            raise RunAbortedError(f"model fit failed for response {i}: {last_exc}")
    return models


def run(problem: ProblemDefinition, config: OptimizerConfig, rng: np.random.Generator) -> RunResult:
    """Run the optimizer on a problem; returns the archive and iteration trace."""
    with single_threaded_blas():
        return _run(problem, config, rng)


def _run(problem: ProblemDefinition, config: OptimizerConfig, rng: np.random.Generator) -> RunResult:
    n_init = config.n_init if config.n_init is not None else 11 * problem.n - 1
    if n_init > config.fe_max:
        raise ValueError("initial sample exceeds evaluation budget")
    span = problem.upper - problem.lower

    x0 = lhs_sample(n_init, problem, rng)
    archive: list[EvaluatedSolution] = [
        evaluate(problem, x0[i], eval_index=i + 1) for i in range(n_init)
    ]
    iterations: list[IterationRecord] = []

    rvs = generate_mirrored_rvs(problem.m, 99 if problem.m == 2 else 12)
    shadow = infill_mod.ShadowArchive()
    tags = infill_mod.RVTagState()
    flag = CONSTRAINED
    tau: float | None = None

    def arrays():
        f = np.array([s.f for s in archive])
        g = np.array([s.g for s in archive])
        cv = np.array([s.cv for s in archive])
        feas = np.array([s.feasible for s in archive])
        x = np.array([s.x for s in archive])
        return x, f, g, cv, feas

    x_a, f_a, g_a, cv_a, feas_a = arrays()
    if feas_a.any():
        infill_mod.preseed_shadow(shadow, f_a, feas_a)

    warm = None
    prev_bounds = None
    fe = n_init
    while fe < config.fe_max:
        x_a, f_a, g_a, cv_a, feas_a = arrays()
        xn = (x_a - problem.lower) / span
        xs, _, keep = kriging.prescreen(xn, cv_a, tolerance=config.eps)
        responses = [f_a[keep, j] for j in range(problem.m)] + [
            g_a[keep, j] for j in range(problem.p)
        ]
        models = _fit_models(xs, responses, rng, warm, config.fit_starts, config.fit_maxiter)
        warm = [m.theta for m in models]

        bounds = compute_bounds(f_a, feas_a)
        changed = not bounds.same_as(prev_bounds)
        if changed:
            tags.clear()
        prev_bounds = bounds

        def predict_fn(xq):
            fm = np.empty((xq.shape[0], problem.m))
            fv = np.empty((xq.shape[0], problem.m))
            gm = np.empty((xq.shape[0], problem.p))
            gv = np.empty((xq.shape[0], problem.p))
            for j in range(problem.m):
                fm[:, j], fv[:, j] = models[j].predict_batch(xq)
            for j in range(problem.p):
                gm[:, j], gv[:, j] = models[problem.m + j].predict_batch(xq)
            return fm, fv, gm, gv

        constrained = flag == CONSTRAINED
        cands = run_subea(
            xn, f_a, cv_a, feas_a, predict_fn, rvs, bounds,
            constrained, config.variant, config.subea, rng,
        )

        if feas_a.any():
            a_ref = infill_mod.build_reference_set(f_a, feas_a)
            chosen = infill_mod.two_stage_infill(cands, a_ref, shadow, bounds)
            rv_chosen = int(cands.rv_index[chosen])
        else:
            chosen = infill_mod.select_infill_all_infeasible(
                cands, tags, constrained, config.variant, bounds
            )
            rv_chosen = int(cands.rv_index[chosen])

        x_new = problem.lower + cands.x[chosen] * span
        prev_min_cv = float(cv_a.min())
        sol = evaluate(problem, x_new, eval_index=fe + 1)
        archive.append(sol)
        fe += 1
        iterations.append(
            IterationRecord(
                eval_index=sol.eval_index,
                search_flag=flag,
                tau=tau,
                rv_index=rv_chosen,
                bounds_changed=changed,
            )
        )

        x_a, f_a, g_a, cv_a, feas_a = arrays()
        if sol.feasible and not shadow.active:
            infill_mod.preseed_shadow(shadow, f_a, feas_a)
            tags.clear()
        elif shadow.active:
            infill_mod.update_shadow(shadow, sol.f, sol.feasible, f_a, feas_a, bounds)

        if feas_a.any():
            tau = None
            flag = CONSTRAINED
        else:
            tau = _compute_tau(f_a, cv_a)
            flag = update_search_flag(
                flag, tau, False, sol.cv, prev_min_cv, config.variant, config.tau_threshold
            )
    return RunResult(
        problem=problem.name,
        variant=config.variant,
        archive=archive,
        iterations=iterations,
        n_init=n_init,
        fe_max=config.fe_max,
    )
