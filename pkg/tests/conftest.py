import pytest

from quiverstab import (build_context, linear_quiver, kronecker_quiver,
                        square_quiver, dtilde4_quiver, atilde_quiver)


@pytest.fixture(scope="session")
def a2():
    return build_context(linear_quiver(2))


@pytest.fixture(scope="session")
def a3():
    return build_context(linear_quiver(3))


@pytest.fixture(scope="session")
def kron():
    return build_context(kronecker_quiver())


@pytest.fixture(scope="session")
def sq():
    return build_context(square_quiver())


@pytest.fixture(scope="session")
def d4():
    return build_context(dtilde4_quiver())


@pytest.fixture(scope="session")
def a3t():
    """A~3 with a 3+1 orientation split: one rank-3 tube."""
    return build_context(atilde_quiver(3, 1))


@pytest.fixture(scope="session")
def a2t():
    """A~2 with a 2+1 orientation split: one rank-2 tube."""
    return build_context(atilde_quiver(2, 1))
