import json

import pytest
from hypothesis import settings

from floerlink.catalog import default_catalog_path, load_catalog
from floerlink.laurent import LaurentPoly
from floerlink.lattice import HModel, HPrimeTable

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def models(catalog):
    return {name: catalog.model(name) for name in catalog.names()}


def half_diff(n, i):
    return LaurentPoly.half_difference(n, i)


def whitehead_model():
    return HModel(2, {3: HPrimeTable(2, {(0, 0): 1})})


def borromean_model():
    return HModel(3, {7: HPrimeTable(3, {(0, 0, 0): 1})})


def bundled_raw():
    """Fresh copy of the bundled catalog JSON, for tampering."""
    with open(default_catalog_path()) as fh:
        return json.load(fh)


def raw_record(raw, name):
    return next(r for r in raw["records"] if r["name"] == name)
