"""
Replication harness: repeated generate-and-fit runs summarized against the
complete-data oracle
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.random import SeedSequence

from core.exceptions import ConfigurationError, MissingBaseline, NumericalError, SurrogacyError
from domain.entities.covariate_model import BernoulliCovariate
from domain.entities.model_spec import Design, EndpointMode, ModelSpec
from domain.entities.prior import ChainConfig, PriorSet
from domain.entities.replication import EstimandSummary, EstimateRecord, ReplicationRun, ReplicationSummary
from domain.entities.simulation import CovariateKind, NoiseFamily, SimSetting
from domain.services.surrogacy import surrogate_verdict
from infrastructure.sampling import SAMPLERS

from .generators import generate
from .oracle import oracle_fit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Task:
    index: int
    data_seed: int
    chain_seed: int
    setting: SimSetting
    n: int
    noise: NoiseFamily
    template: ModelSpec
    priors: PriorSet
    cfg: ChainConfig
    algorithm: str
    x_points: Tuple[Tuple[float, ...], ...]


def _seed_from(seq: SeedSequence) -> int:
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def population_points(setting: SimSetting) -> Tuple[Tuple[float, ...], ...]:
    """
    Covariate vectors where conditional gamma0(x) is reported

    A single binary covariate gives both levels; otherwise each covariate sits
    at its population mean (uniform midpoint), squares follow their source.
    """
    if not setting.covariates:
        return ()
    if isinstance(setting.covariate_model(), BernoulliCovariate):
        return ((0.0,), (1.0,))
    values: Dict[str, float] = {}
    for source in setting.covariates:
        if source.kind is CovariateKind.UNIFORM:
            values[source.name] = 0.5 * (source.params[0] + source.params[1])
        elif source.kind is CovariateKind.SQUARE_OF:
            values[source.name] = values[source.source] ** 2
        else:
            values[source.name] = source.params[0]
    return (tuple(values[name] for name in setting.covariate_names),)


def reported_key(design: Design, estimand: str) -> str:
    """Key of the tabulated value matching an estimand, if any"""
    prefix = "O" if design.endpoint is EndpointMode.ORIGINAL else "D"
    if estimand.endswith("_marginal"):
        return f"{prefix}:{estimand[: -len('_marginal')]}"
    if design.conditional:
        return f"C:{estimand}"
    return f"{prefix}:{estimand}"


def verdict_pair(design: Design) -> Tuple[str, str]:
    """Columns whose intervals decide the valid/invalid verdict"""
    if design.conditional:
        return "gamma0_marginal", "gamma1_marginal"
    return "gamma0", "gamma1"


def _replicate_once(task: _Task) -> ReplicationRun:
    try:
        table, data = generate(task.setting, task.n, task.data_seed, task.noise)
        sampler = SAMPLERS[task.algorithm]()
        cfg = replace(task.cfg, seed=task.chain_seed)
        draws = sampler.run(data, task.template, task.priors, cfg, list(task.x_points) or None)
        estimates = {
            s.name: EstimateRecord(mean=s.mean, sd=s.sd, q025=s.q025, q975=s.q975)
            for s in draws.summary(draws.gamma_names())
        }
        oracle = oracle_fit(table, task.template.design, list(task.x_points) or None)
        g0, g1 = verdict_pair(task.template.design)
        verdict = surrogate_verdict(
            (estimates[g0].q025, estimates[g0].q975), (estimates[g1].q025, estimates[g1].q975)
        )
        return ReplicationRun(
            index=task.index, seed=task.data_seed, estimates=estimates, oracle=oracle, verdict=verdict.value
        )
    except (SurrogacyError, ValueError, np.linalg.LinAlgError, FloatingPointError) as e:
        message = e.message if isinstance(e, SurrogacyError) else str(e)
        logger.warning(f"Replication {task.index} failed: {type(e).__name__}: {message}")
        return ReplicationRun(index=task.index, seed=task.data_seed, error=f"{type(e).__name__}: {message}")


def _std(values: List[float]) -> Optional[float]:
    if len(values) < 2:
        return None
    return float(np.std(values, ddof=1))


def summarize_runs(
    runs: Sequence[ReplicationRun],
    truths: Dict[str, float],
    reported: Dict[str, float],
    design: Design,
) -> Tuple[EstimandSummary, ...]:
    """Aggregates successful runs per estimand"""
    ok = [run for run in runs if run.ok]
    out = []
    for name, truth in truths.items():
        records = [run.estimates[name] for run in ok if name in run.estimates]
        if not records:
            continue
        means = [r.mean for r in records]
        mean_estimate = float(np.mean(means))
        out.append(EstimandSummary(
            estimand=name,
            truth=float(truth),
            mean_estimate=mean_estimate,
            bias=mean_estimate - float(truth),
            se=float(np.mean([r.sd for r in records])),
            sd=_std(means),
            coverage=float(np.mean([r.covers(truth) for r in records])),
            covers_zero=float(np.mean([r.covers(0.0) for r in records])),
            reported_truth=reported.get(reported_key(design, name)),
            oracle_sd=_std([run.oracle[name] for run in ok if name in run.oracle]),
        ))
    return tuple(out)


def run_replications(
    setting: SimSetting,
    n: int,
    n_reps: int,
    design: Design,
    ci_assumed: bool,
    algorithm: str = "observed",
    priors: Optional[PriorSet] = None,
    cfg: Optional[ChainConfig] = None,
    noise: Optional[NoiseFamily] = None,
    seed: int = 0,
    threads: int = 1,
    oracle_n: int = 200_000,
) -> ReplicationSummary:
    """
    Generates and fits n_reps independent trials

    Every replication gets its own data and chain seeds spawned from the root
    seed; one further child seeds the large complete-data sample that defines
    the truth. Failed replications are counted, not raised.

    Raises:
        ConfigurationError: n_reps < 1 or unknown algorithm
        MissingBaseline: difference endpoint on a setting without baseline
        NumericalError: every replication failed
    """
    design = Design(design)
    if n_reps < 1:
        raise ConfigurationError(f"n_reps must be at least 1, got {n_reps}")
    if algorithm not in SAMPLERS:
        raise ConfigurationError(f"Unknown algorithm '{algorithm}' ({', '.join(SAMPLERS)})")
    if design.endpoint is EndpointMode.DIFF_FROM_BASELINE and setting.baseline_name is None:
        raise MissingBaseline(f"Setting {setting.name} has no baseline covariate for {design.label}")
    noise = noise or setting.noise
    priors = priors or PriorSet.default(ci_assumed)
    cfg = cfg or ChainConfig()

    children = SeedSequence(seed).spawn(n_reps + 1)
    x_points = population_points(setting) if design.conditional else ()
    truth_table, _ = generate(setting, oracle_n + oracle_n % 2, _seed_from(children[-1]), noise)
    truths = oracle_fit(truth_table, design, list(x_points) or None)
    for name, value in truths.items():
        reported = setting.reported.get(reported_key(design, name))
        logger.info(f"Truth {name} = {value:.4f}" + (f" (tabulated {reported:g})" if reported is not None else ""))

    template = ModelSpec.template(
        design,
        setting.covariate_names,
        ci_assumed=ci_assumed,
        baseline_name=setting.baseline_name,
        covariate_model=setting.covariate_model(),
        sds=setting.sds,
    )
    tasks = []
    for index, child in enumerate(children[:-1]):
        data_seq, chain_seq = child.spawn(2)
        tasks.append(_Task(
            index=index,
            data_seed=_seed_from(data_seq),
            chain_seed=_seed_from(chain_seq),
            setting=setting,
            n=n,
            noise=noise,
            template=template,
            priors=priors,
            cfg=cfg,
            algorithm=algorithm,
            x_points=x_points,
        ))

    workers = max(1, min(int(threads), n_reps))
    logger.info(
        f"Running {n_reps} replications of setting {setting.name} ({design.label}, "
        f"ci={ci_assumed}, {algorithm}, noise={noise.label}) on {workers} worker(s)"
    )
    if workers == 1:
        runs = [_replicate_once(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            runs = list(executor.map(_replicate_once, tasks))

    failed = [run for run in runs if not run.ok]
    if len(failed) == n_reps:
        raise NumericalError(f"All {n_reps} replications failed; first error: {failed[0].error}")
    if failed:
        logger.warning(f"{len(failed)} of {n_reps} replications failed")

    return ReplicationSummary(
        setting=setting.name,
        design=design,
        ci_assumed=ci_assumed,
        algorithm=algorithm,
        n=n,
        n_reps=n_reps,
        estimands=summarize_runs(runs, truths, setting.reported, design),
        runs=tuple(runs),
        noise=noise.label,
    )


def verdict_agreement(a: ReplicationSummary, b: ReplicationSummary) -> float:
    """
    Share of replications (matched by index) whose verdicts agree

    Raises:
        ConfigurationError: no replication succeeded in both summaries
    """
    left = {run.index: run.verdict for run in a.runs if run.ok}
    pairs = [(left[run.index], run.verdict) for run in b.runs if run.ok and run.index in left]
    if not pairs:
        raise ConfigurationError("The summaries share no successful replication")
    return float(np.mean([x == y for x, y in pairs]))
