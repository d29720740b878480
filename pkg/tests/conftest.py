import pytest

from k3isogeny.exact import UniPoly


@pytest.fixture
def t():
    return UniPoly.gen("t")
