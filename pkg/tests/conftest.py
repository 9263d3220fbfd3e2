import pytest

from wlysing.pairs import build_weighted_pair, certify_pair, load_curve
from wlysing.poly import parse

from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

QUARTIC = "(x^2+2*y^2-z^2)*(2*x^2+y^2-z^2)"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def quartic():
    return parse(QUARTIC)


@pytest.fixture(scope="session")
def sextic_pair():
    c0 = load_curve(DATA / "sextic_torus_0.curve")
    c1 = load_curve(DATA / "sextic_torus_1.curve")
    return build_weighted_pair(c0, c1, 2)


@pytest.fixture(scope="session")
def sextic_report(sextic_pair):
    return certify_pair(*sextic_pair, {"source": "generator seeds 0 and 1"})
