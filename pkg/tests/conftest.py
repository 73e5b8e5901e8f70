import json

import pytest

from schemas.mechanism_schema import ClaimProfile, Entitlements
from schemas.policy_schema import CollarConfig


@pytest.fixture
def ent3() -> Entitlements:
    return Entitlements(L=[10.0, 10.0, 10.0])


@pytest.fixture
def scarce_profile() -> ClaimProfile:
    # X = 7 > I = 6
    return ClaimProfile(C=[12.0, 15.0, 4.0])


@pytest.fixture
def kink_profile() -> ClaimProfile:
    # v = (1, 2, 0), X = I = 3
    return ClaimProfile(C=[11.0, 12.0, 7.0], M=20.0)


@pytest.fixture
def collar() -> CollarConfig:
    return CollarConfig(
        kappa_lo=0.0,
        kappa_hi=200.0,
        kappa_schedule=[2.0, 2.0, 100.0],
        p_bar=[100.0, 100.0, 100.0],
        lambda_floor=0.3,
        p_forward=25.0,
    )


@pytest.fixture
def scenario_data() -> dict:
    return {
        "entitlements": [10.0, 10.0, 10.0],
        "profiles": [[12.0, 15.0, 4.0]],
        "alphas": [1.0],
        "M": 20.0,
        "trials": 5,
        "grid_sizes": {"best_response": 41, "coalition": 11, "nash": 41},
        "noise": {"epsilons": [0.001], "samples": 2000, "v_samples": 50, "n": 3},
        "nls_trials": 50,
        "seed": 7,
    }


@pytest.fixture
def write_scenario(tmp_path):
    def _write(data: dict, name: str = 'scenario.json'):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding='utf-8')
        return path
    return _write
