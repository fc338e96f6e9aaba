import pytest

from rulercount import bh_hyperplanes, enumerate_regions, golomb_hyperplanes


@pytest.fixture(scope="session")
def bh33():
    return bh_hyperplanes(3, 3)


@pytest.fixture(scope="session")
def bh33_regions(bh33):
    return enumerate_regions(bh33)


@pytest.fixture(scope="session")
def golomb3():
    return golomb_hyperplanes(3)


@pytest.fixture(scope="session")
def golomb3_regions(golomb3):
    return enumerate_regions(golomb3)
