import pytest

from effecta import canonical_representation, generate


@pytest.fixture(scope="session")
def c3():
    return generate(("chain", 3))


@pytest.fixture(scope="session")
def b2():
    return generate(("boolean", 2))


@pytest.fixture(scope="session")
def mo2():
    return generate(("horizontal_sum", [("boolean", 2), ("boolean", 2)]))


@pytest.fixture(scope="session")
def c3_rep(c3):
    return canonical_representation(c3)


@pytest.fixture(scope="session")
def b2_rep(b2):
    return canonical_representation(b2)
