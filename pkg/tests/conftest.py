import os

import pytest
from hypothesis import HealthCheck, settings

from resurgence.algebra import GF, QQ
from resurgence.poly import plane_ring

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_PRIME = 32003


@pytest.fixture(params=["qq", "fp"], ids=["QQ", "Fp"])
def field(request):
    return QQ if request.param == "qq" else GF()


@pytest.fixture
def ring(field):
    return plane_ring(field)


@pytest.fixture
def R_qq():
    return plane_ring(QQ)


@pytest.fixture
def R_fp():
    return plane_ring(GF())
