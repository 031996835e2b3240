import pytest

import fixture_data
from gatherplot import ingest_csv


@pytest.fixture(scope="session")
def titanic_csv_bytes() -> bytes:
    return fixture_data.titanic_csv()


@pytest.fixture(scope="session")
def titanic(titanic_csv_bytes):
    return ingest_csv(titanic_csv_bytes)


@pytest.fixture(scope="session")
def cars_csv_bytes() -> bytes:
    return fixture_data.cars_csv()


@pytest.fixture(scope="session")
def cars(cars_csv_bytes):
    return ingest_csv(cars_csv_bytes)


@pytest.fixture(scope="session")
def airline_csv_bytes() -> bytes:
    return fixture_data.airline_csv()


@pytest.fixture(scope="session")
def airline(airline_csv_bytes):
    return ingest_csv(airline_csv_bytes)
