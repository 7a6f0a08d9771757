import pytest

from mhtkit import build_bumps


@pytest.fixture(scope="session")
def bumps():
    # built once; certification runs inside and raises on any bad residual
    return build_bumps()
