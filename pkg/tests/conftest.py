import numpy as np
import pytest

from symdom import factors as F


@pytest.fixture
def disc():
    return F.hilbert(1)


@pytest.fixture
def r22():
    return F.rectangular(2, 2)


@pytest.fixture
def r23():
    return F.rectangular(2, 3)


@pytest.fixture
def spin4():
    return F.spin(4)


@pytest.fixture
def h3():
    return F.hilbert(3)


@pytest.fixture
def p2():
    return F.polydisc(2)


@pytest.fixture
def p3():
    return F.polydisc(3)


@pytest.fixture(
    params=["rect22", "rect23", "spin4", "hilbert3", "polydisc3", "mixed"],
)
def any_factor(request):
    return {
        "rect22": F.rectangular(2, 2),
        "rect23": F.rectangular(2, 3),
        "spin4": F.spin(4),
        "hilbert3": F.hilbert(3),
        "polydisc3": F.polydisc(3),
        "mixed": F.direct_sum([F.rectangular(2, 2), F.hilbert(2)]),
    }[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240831)
