import pytest

from cepp import fixtures as fx


@pytest.fixture(scope="session")
def example1_catalog():
    return fx.example1_catalog()


@pytest.fixture(scope="session")
def aws_t2_catalog():
    return fx.aws_t2_catalog()


@pytest.fixture(scope="session")
def edocs_catalog():
    return fx.edocs_catalog()


@pytest.fixture(scope="session")
def example1_workload():
    return fx.example1_workload()


@pytest.fixture(scope="session")
def edocuments_workload():
    return fx.edocuments_workload()


@pytest.fixture
def sample_mixed():
    return fx.sample_mixed()


@pytest.fixture
def invoicing():
    return fx.invoicing()


@pytest.fixture(scope="session")
def data_dir():
    return fx.data_dir()
