"""
Two-group Gibbs sampler for the difference of normal means.

Observations are normal with mean mu + delta (group 1) and mu - delta
(group 2) and a shared variance sigma2. With conjugate priors every full
conditional is normal (mu, delta) or inverse-gamma (sigma2).
"""
import logging
from typing import Optional, Sequence

import numpy as np

from ..errors import InvalidArgumentError
from ..schemas import GibbsConfig, GibbsPriors, PosteriorSamples

logger = logging.getLogger(__name__)

PRIOR_VARIANCE_SCALE = 10.0
VARIANCE_FLOOR = 1.0


def default_priors(x: Sequence[float], y: Sequence[float]) -> GibbsPriors:
    """
    Weakly informative priors scaled to the pooled sample.

    A pooled variance of 0 (e.g. all rates zero) falls back to 1.0.
    """
    pooled = np.concatenate([np.asarray(x, dtype=float), np.asarray(y, dtype=float)])
    var = float(pooled.var(ddof=1)) if len(pooled) > 1 else 0.0
    if var <= 0:
        var = VARIANCE_FLOOR
    return GibbsPriors(
        mu0=float(pooled.mean()),
        tau0_sq=PRIOR_VARIANCE_SCALE * var,
        delta0=0.0,
        gamma0_sq=PRIOR_VARIANCE_SCALE * var,
        nu0=1.0,
        sigma0_sq=var,
    )


def gibbs_two_group(
    x: Sequence[float],
    y: Sequence[float],
    cfg: Optional[GibbsConfig] = None,
) -> PosteriorSamples:
    """
    Sample the posterior of delta = (mu1 - mu2) / 2.

    Each sweep draws sigma2, then mu, then delta from their full conditionals.
    The first burn_in sweeps are discarded; the generator is seeded from cfg,
    so equal inputs give equal draws.
    """
    cfg = cfg or GibbsConfig()
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 1 or len(y) < 1:
        raise InvalidArgumentError("both groups need at least one observation")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise InvalidArgumentError("observations must be finite")
    p = cfg.priors or default_priors(x, y)

    n1, n2 = len(x), len(y)
    n = n1 + n2
    sx, sy = x.sum(), y.sum()
    sxx, syy = (x ** 2).sum(), (y ** 2).sum()

    total = cfg.burn_in + cfg.n_samples
    rng = np.random.default_rng(cfg.seed)
    shape = (p.nu0 + n) / 2
    gammas = rng.standard_gamma(shape, size=total)
    normals = rng.standard_normal(size=(total, 2))

    mu = (x.mean() + y.mean()) / 2
    delta = (x.mean() - y.mean()) / 2
    draws = np.empty(cfg.n_samples)
    for t in range(total):
        # sigma2 | mu, delta
        a, b = mu + delta, mu - delta
        ssr = (sxx - 2 * a * sx + n1 * a * a) + (syy - 2 * b * sy + n2 * b * b)
        sigma2 = (p.nu0 * p.sigma0_sq + max(ssr, 0.0)) / 2 / gammas[t]

        # mu | delta, sigma2
        precision = 1 / p.tau0_sq + n / sigma2
        mean = (p.mu0 / p.tau0_sq + (sx - n1 * delta + sy + n2 * delta) / sigma2) / precision
        mu = mean + normals[t, 0] / np.sqrt(precision)

        # delta | mu, sigma2
        precision = 1 / p.gamma0_sq + n / sigma2
        mean = (p.delta0 / p.gamma0_sq + ((sx - n1 * mu) - (sy - n2 * mu)) / sigma2) / precision
        delta = mean + normals[t, 1] / np.sqrt(precision)

        if t >= cfg.burn_in:
            draws[t - cfg.burn_in] = delta

    p_neg = float(np.mean(draws < 0))
    logger.debug(f"Gibbs: {cfg.n_samples} draws, mean delta {draws.mean():.4g}, p(delta<0) {p_neg:.4f}")
    return PosteriorSamples(delta_draws=draws.tolist(), p_delta_neg=p_neg)
