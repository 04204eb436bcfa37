import numpy as np
import pytest

import curvemark as cm


@pytest.fixture(scope="session")
def sine_sample_200():
    curve = cm.rescale_unit_length(cm.sine_curve(200), 200)
    grid = cm.EvaluationGrid(200, cm.OPEN)
    return cm.CurveSample.build([curve], grid)


@pytest.fixture(scope="session")
def sine_sample_100():
    curve = cm.rescale_unit_length(cm.sine_curve(200), 100)
    grid = cm.EvaluationGrid(100, cm.OPEN)
    return cm.CurveSample.build([curve], grid)


@pytest.fixture(scope="session")
def small_sample_25():
    curve = cm.rescale_unit_length(cm.sine_curve(200), 25)
    grid = cm.EvaluationGrid(25, cm.OPEN)
    return cm.CurveSample.build([curve], grid)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
