import pytest

from dstgap import build_instance, subset_objects, zk_objects
from dstgap.families import SubsetFamilyParams


@pytest.fixture(scope="session")
def zk4_objects():
    return zk_objects(4)


@pytest.fixture(scope="session")
def zk4_instance(zk4_objects):
    return build_instance(zk4_objects)


@pytest.fixture(scope="session")
def zk9_objects():
    return zk_objects(9)


@pytest.fixture(scope="session")
def zk9_instance(zk9_objects):
    return build_instance(zk9_objects)


@pytest.fixture(scope="session")
def subset_m6_objects():
    return subset_objects(SubsetFamilyParams(6, 2, 1))


@pytest.fixture(scope="session")
def subset_m6_instance(subset_m6_objects):
    return build_instance(subset_m6_objects)


@pytest.fixture(scope="session")
def subset_m4_instance():
    return build_instance(subset_objects(SubsetFamilyParams(4, 2, 0)))


@pytest.fixture(scope="session")
def subset_m5_instance():
    return build_instance(subset_objects(SubsetFamilyParams(5, 2, 0)))
