import numpy as np
import pytest

from qna.errors import InvalidArgumentError
from qna.ml.gibbs import default_priors, gibbs_two_group
from qna.schemas import GibbsConfig, GibbsPriors


def test_identical_groups_are_undecided():
    x = [float(v) for v in range(1, 11)]
    result = gibbs_two_group(x, list(x))
    assert len(result.delta_draws) == 2000
    assert 0.45 <= result.p_delta_neg <= 0.55


def test_clearly_separated_groups():
    result = gibbs_two_group([0.0] * 5, [10.0] * 5)
    assert result.p_delta_neg > 0.99
    assert result.delta_mean == pytest.approx(-5.0, abs=0.5)


def test_tight_prior_shrinks_delta():
    x, y = [0.0] * 5, [10.0] * 5
    tight = GibbsPriors(mu0=5.0, tau0_sq=100.0, gamma0_sq=0.01, sigma0_sq=1.0)
    shrunk = gibbs_two_group(x, y, GibbsConfig(priors=tight))
    diffuse = gibbs_two_group(x, y)
    assert abs(shrunk.delta_mean) < 0.2
    assert abs(diffuse.delta_mean) > 0.8


def test_same_seed_same_draws():
    x, y = [1.0, 3.0, 2.0], [2.0, 4.0, 6.0]
    a = gibbs_two_group(x, y, GibbsConfig(seed=11, n_samples=300, burn_in=50))
    b = gibbs_two_group(x, y, GibbsConfig(seed=11, n_samples=300, burn_in=50))
    assert a.delta_draws == b.delta_draws
    assert len(a.delta_draws) == 300


@pytest.mark.slow
def test_long_chain_agrees_with_default_chain():
    x, y = [1.0, 2.0, 3.0, 4.0, 5.0], [3.0, 4.0, 5.0, 6.0, 7.0]
    short = gibbs_two_group(x, y)
    long = gibbs_two_group(x, y, GibbsConfig(n_samples=1_000_000, burn_in=1000, seed=1))
    assert abs(short.p_delta_neg - long.p_delta_neg) < 0.03


def test_zero_variance_data_gets_a_floor():
    priors = default_priors([0.0, 0.0], [0.0])
    assert priors.sigma0_sq == 1.0
    assert priors.mu0 == 0.0
    result = gibbs_two_group([0.0, 0.0], [0.0, 0.0], GibbsConfig(n_samples=500, burn_in=100))
    assert np.all(np.isfinite(result.delta_draws))


def test_invalid_groups():
    with pytest.raises(InvalidArgumentError):
        gibbs_two_group([], [1.0])
    with pytest.raises(InvalidArgumentError):
        gibbs_two_group([np.inf], [1.0])
