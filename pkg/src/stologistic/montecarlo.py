"""Monte Carlo verification of the scaling conditions.

One step of the recurrence X' = r X (1 - X) eps is simulated on an
ensemble: X is drawn from the (untruncated) normal the analysis assumes,
eps from a nonnegative mean-1 family with prescribed second moment, and
the empirical mean/variance ratios are compared against the analytic
scaling factors.  This is the library's independent check that a
computed root really delivers the imposed conditions.

Reproducibility contract: the sample index space is split into fixed
chunks of 65536 draws; chunk i uses the generator seeded by
SeedSequence(seed, spawn_key=(i,)), and chunk results are reduced in
index order.  Statistics are therefore bit-identical for any worker
count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cubic import ModelParams, sigma2_from_root
from .errors import ValidationError
from .moments import NormalParams

CHUNK_SIZE = 1 << 16
MIN_SAMPLES = 1_000
_VARIANCE_BATCHES = 100


@dataclass(frozen=True)
class EpsilonSpec:
    """Perturbation distribution pinned by E[eps] = 1 and E[eps^2] = v.

    v = 1 forces the degenerate point mass at 1.  For v > 1 the gamma
    family with shape 1/(v-1) and scale v-1 is the simplest nonnegative
    choice hitting both moments exactly (mean shape*scale = 1, variance
    shape*scale^2 = v-1).
    """

    v: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.v) or self.v < 1.0:
            raise ValidationError(
                "v must be >= 1: no nonnegative mean-1 distribution has "
                f"E[eps^2] < 1 (got {self.v})"
            )

    @property
    def family(self) -> str:
        return "degenerate" if self.v == 1.0 else "gamma_mean_one"

    @property
    def gamma_shape(self) -> float:
        if self.v == 1.0:
            raise ValidationError("degenerate spec has no gamma shape")
        return 1.0 / (self.v - 1.0)

    @property
    def gamma_scale(self) -> float:
        if self.v == 1.0:
            raise ValidationError("degenerate spec has no gamma scale")
        return self.v - 1.0


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for chunk `index` of the stream anchored at `seed`."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _chunk_ranges(n: int) -> list[tuple[int, int]]:
    return [(start, min(start + CHUNK_SIZE, n)) for start in range(0, n, CHUNK_SIZE)]


def _map_chunks(worker, n: int, threads: int) -> list[np.ndarray]:
    """Evaluate worker(index, count) per chunk, reduced in index order."""
    ranges = _chunk_ranges(n)
    jobs = [(i, stop - start) for i, (start, stop) in enumerate(ranges)]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda job: worker(*job), jobs))
    return [worker(*job) for job in jobs]


def sample_epsilon(
    spec: EpsilonSpec, n: int, seed: int, threads: int = 1
) -> np.ndarray:
    """Draw n perturbation values, reproducible from the chunked seed."""
    if n < 0:
        raise ValidationError(f"sample count must be >= 0, got {n}")
    if spec.v == 1.0:
        return np.ones(n)

    shape, scale = spec.gamma_shape, spec.gamma_scale

    def worker(index: int, count: int) -> np.ndarray:
        return _chunk_rng(seed, index).gamma(shape, scale, count)

    parts = _map_chunks(worker, n, threads)
    return np.concatenate(parts) if parts else np.empty(0)


@dataclass(frozen=True)
class SimReport:
    """Ensemble statistics for one simulated step.

    alpha_hat and beta_hat are the empirical mean and variance scaling
    ratios; the standard errors come from the sample itself (per-draw
    standard deviation for the mean ratio, batch means over 100 batches
    for the variance ratio).
    """

    n: int
    seed: int
    alpha_hat: float
    beta_hat: float
    se_alpha: float
    se_beta: float
    mean_next: float
    var_next: float
    mean_prev: float
    var_prev: float


def simulate_step(
    p: NormalParams,
    r: float,
    spec: EpsilonSpec,
    n: int,
    seed: int,
    threads: int = 1,
) -> SimReport:
    """Simulate X' = r X (1 - X) eps on n independent draws.

    Within each chunk the state draws come first and the perturbation
    draws second from the same chunk generator, which keeps the stream
    layout independent of the worker count.  X is drawn from the
    untruncated normal on purpose: the analysis being verified assumes
    exactly that, negative excursions included.
    """
    if p.sigma2 <= 0.0:
        raise ValidationError("simulation requires sigma2 > 0")
    if n < MIN_SAMPLES:
        raise ValidationError(f"n must be >= {MIN_SAMPLES}, got {n}")
    if not math.isfinite(r):
        raise ValidationError(f"growth rate must be finite, got {r}")

    sigma = p.sigma
    degenerate = spec.v == 1.0
    shape = scale = 0.0
    if not degenerate:
        shape, scale = spec.gamma_shape, spec.gamma_scale

    def worker(index: int, count: int) -> np.ndarray:
        rng = _chunk_rng(seed, index)
        x = rng.normal(p.mu, sigma, count)
        out = r * x * (1.0 - x)
        if not degenerate:
            out *= rng.gamma(shape, scale, count)
        return out

    x_next = np.concatenate(_map_chunks(worker, n, threads))

    mean_next = float(np.mean(x_next))
    var_next = float(np.var(x_next, ddof=1))
    alpha_hat = mean_next / p.mu
    beta_hat = var_next / p.sigma2

    se_alpha = float(np.std(x_next, ddof=1)) / (abs(p.mu) * math.sqrt(n))

    batch = n // _VARIANCE_BATCHES
    batched = x_next[: batch * _VARIANCE_BATCHES].reshape(_VARIANCE_BATCHES, batch)
    batch_vars = np.var(batched, axis=1, ddof=1)
    se_beta = float(np.std(batch_vars, ddof=1)) / (
        math.sqrt(_VARIANCE_BATCHES) * p.sigma2
    )

    return SimReport(
        n=n,
        seed=seed,
        alpha_hat=alpha_hat,
        beta_hat=beta_hat,
        se_alpha=se_alpha,
        se_beta=se_beta,
        mean_next=mean_next,
        var_next=var_next,
        mean_prev=p.mu,
        var_prev=p.sigma2,
    )


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of verifying one candidate root by simulation.

    verdict is "inapplicable" when the implied variance is nonpositive
    (no normal state to draw from), otherwise "pass"/"fail" at the given
    z threshold against the analytic alpha and beta.
    """

    root: float
    sigma2: float
    verdict: str
    alpha_target: float | None = None
    beta_target: float | None = None
    report: SimReport | None = None


def verify_root(
    params: ModelParams,
    root: float,
    n: int,
    seed: int,
    z_threshold: float,
    threads: int = 1,
) -> VerifyResult:
    """Check a computed root against simulation of the recurrence.

    The variance implied by the root instantiates the state distribution;
    the empirical scaling ratios must then land within z_threshold
    standard errors of the imposed alpha and beta.
    """
    if root <= 0.0:
        raise ValidationError(f"root must be > 0, got {root}")
    if z_threshold <= 0.0:
        raise ValidationError(f"z threshold must be > 0, got {z_threshold}")

    sigma2 = sigma2_from_root(params, root)
    if sigma2 <= 0.0:
        return VerifyResult(root=root, sigma2=sigma2, verdict="inapplicable")

    spec = EpsilonSpec(v=params.v)
    report = simulate_step(
        NormalParams(mu=params.mu, sigma2=sigma2), root, spec, n, seed, threads
    )
    ok_alpha = abs(report.alpha_hat - params.alpha) <= z_threshold * report.se_alpha
    ok_beta = abs(report.beta_hat - params.beta) <= z_threshold * report.se_beta
    return VerifyResult(
        root=root,
        sigma2=sigma2,
        verdict="pass" if ok_alpha and ok_beta else "fail",
        alpha_target=params.alpha,
        beta_target=params.beta,
        report=report,
    )
