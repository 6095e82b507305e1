import pytest

from spincool.analysis import cool, impurity_sweep, sensitivity_suite, table1_sweep
from spincool.srmodel import ModelParams


@pytest.fixture(scope="session")
def reference_params() -> ModelParams:
    return ModelParams()


@pytest.fixture(scope="session")
def fig3_run(reference_params):
    """The reference 20 us cooling run with equal qubit amplitudes."""
    return cool(1.0, 1.0, reference_params, t_final=20.0, samples=401)


@pytest.fixture(scope="session")
def table1_rows(reference_params):
    return table1_sweep(reference_params)


@pytest.fixture(scope="session")
def sensitivity_rows(reference_params):
    return sensitivity_suite(reference_params)


@pytest.fixture(scope="session")
def impurity_rows(reference_params):
    return impurity_sweep(reference_params)
