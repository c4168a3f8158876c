"""Shared fixtures: preset parameters and their LQR solutions.

Session scope keeps the Riccati solves and region builds from repeating
in every test module.
"""

import pytest

import pendroa as pr

PRESET_NAMES = ("normal", "long", "short")


@pytest.fixture(scope="session", params=PRESET_NAMES)
def preset_name(request):
    return request.param


@pytest.fixture(scope="session")
def params(preset_name):
    return pr.preset(preset_name)


@pytest.fixture(scope="session")
def solution(params):
    return pr.lqr_gain(params)


@pytest.fixture(scope="session")
def half_limit(params):
    # torque bound at half the gravity-torque scale, the most-used setting
    return 0.5 * params.gravity_torque


@pytest.fixture(scope="session")
def analytic_half(params, solution, half_limit):
    return pr.AnalyticRegion.build(params, half_limit, solution)
