import pytest

from wlysing.errors import NonIsolatedError, ResourceCapExceeded
from wlysing.local_algebra import (
    local_milnor_at_rational_point,
    milnor_number,
    milnor_rank_oracle,
    torus_system_solve,
    truncated_colength,
)
from wlysing.poly import parse
from wlysing.torus import singular_points


def P2(text, names=("x", "y")):
    return parse(text, names)


def test_truncated_colength_examples():
    assert truncated_colength(P2("x^2+y^2"), 3) == 1
    assert truncated_colength(P2("x^2+y^3"), 4) == 2


def test_colength_grows_without_bound_when_not_isolated():
    values = [truncated_colength(P2("x^2*y"), d) for d in range(2, 7)]
    assert values == sorted(values) and values[-1] > values[0] + 3
    assert not milnor_rank_oracle(P2("x^2*y"), delta_cap=10).finite
    with pytest.raises(ResourceCapExceeded):
        milnor_number(P2("x^2*y"), delta_cap=10)


def test_colength_is_monotone_in_delta():
    f = P2("x^3+x*y^3")
    values = [truncated_colength(f, d) for d in range(1, 8)]
    assert values == sorted(values) and values[-1] == 7


@pytest.mark.parametrize(
    "text,mu",
    [
        ("x^3+x*y^3", 7),
        ("x^2+y^2+z^2", 1),
        ("(x^2+2*y^2-z^2)*(2*x^2+y^2-z^2)+x^5", 31),
        ("x^2+y^3+z^6", 10),
    ],
)
def test_rank_oracle(text, mu):
    f = parse(text, ("x", "y")) if "z" not in text else parse(text)
    res = milnor_rank_oracle(f)
    assert res.finite and res.stabilized and res.colength == mu


def test_local_milnor_at_points():
    uv = ("u", "v")
    assert local_milnor_at_rational_point(P2("u*v", uv), (0, 0)) == 1
    assert local_milnor_at_rational_point(P2("(u-1)^2-(v-1)^3", uv), (1, 1)) == 2
    assert local_milnor_at_rational_point(P2("(v-u^2)*(v+u^2)", uv), (0, 0)) == 3


def test_torus_system_solve(quartic):
    uv = ("u", "v")
    F = parse(str(quartic).replace("z", "1"), ("x", "y"))
    from wlysing.poly import partial_derivative

    sol = torus_system_solve([F, partial_derivative(F, 0), partial_derivative(F, 1)])
    assert sol.count == 4
    assert torus_system_solve([P2("u-1", uv), P2("v-1", uv), P2("u*v-2", uv)]).empty
    assert torus_system_solve([P2("u^2-1", uv), P2("v-u", uv)]).count == 2


def test_torus_system_rejects_curves():
    uv = ("u", "v")
    with pytest.raises(NonIsolatedError):
        torus_system_solve([P2("(u-v)*(u+1)", uv), P2("(u-v)*(v+2)", uv)])


def test_singular_points_clusters():
    # two cusps with irrational coordinates, conjugate over Q
    f = P2("(y^2-2)^2 + (x-1)^3")
    locus = singular_points(f)
    assert locus.count == 2 and set(locus.local_mu) == {2}


def test_singular_points_nonisolated():
    with pytest.raises(NonIsolatedError):
        singular_points(P2("(x+y-3)^2*(x-2)"))
