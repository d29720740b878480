import pytest

from k3isogeny.corpus import load_corpus, run_fixture

FIXTURES = load_corpus()
FIXTURES = FIXTURES["fixtures"] if isinstance(FIXTURES, dict) else FIXTURES


@pytest.mark.parametrize("fx", FIXTURES, ids=[f["id"] for f in FIXTURES])
def test_fixture(fx):
    res = run_fixture(fx)
    assert res["passed"], res["observed"]


def test_ids_unique():
    ids = [f["id"] for f in FIXTURES]
    assert len(ids) == len(set(ids))
