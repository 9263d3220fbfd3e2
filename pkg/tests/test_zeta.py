import random

import pytest
from gmpy2 import mpq

from generators import draw, weighted_homogeneous_nd
from wlysing.errors import DegenerateError, InputError
from wlysing.invariants import milnor_weighted_homogeneous
from wlysing.poly import parse
from wlysing.weighted import SingularityProfile, WLYTriple, singularity_profile
from wlysing.zeta import (
    LambdaExpr,
    ZetaDivisor,
    lambda_mul,
    local_factor,
    local_model,
    mo_zeta,
    oka_wly_zeta,
    phi_template,
    varchenko_zeta,
    wly_local_factors,
    zeta_degree,
)

L = LambdaExpr.symbol


def test_lambda_products():
    assert lambda_mul(L(2), L(3)) == L(6)
    assert lambda_mul(L(2), L(2)) == L(2).scale(2)
    x = L(4).scale(3) - L(6) + L(mpq(5, 2))
    assert lambda_mul(L(1), x) == x


def test_rational_lambda_symbol():
    assert L(mpq(9, 2)) == LambdaExpr({9: mpq(1, 2)})


def test_mo_zeta_examples():
    assert mo_zeta((3, 2), 6) == {6: 1, 2: -1, 3: -1}
    assert mo_zeta((1, 1, 1), 2) == {2: -1}
    z = mo_zeta((1, 1, 1), 4)
    assert z == {4: -7} and zeta_degree(z) == -28
    z = mo_zeta((3, 2), 9)
    assert z == {9: 1, 3: -1} and zeta_degree(z) == 6


def test_varchenko_examples():
    assert varchenko_zeta(parse("x^2+y^3", ("x", "y"))) == mo_zeta((3, 2), 6)
    assert varchenko_zeta(parse("x^2+y^2+z^2")) == {2: -1}
    assert varchenko_zeta(parse("u^4*v*w + u^5", ("u", "v", "w"))) == {5: -1}


def test_degree_law_on_random_weighted_homogeneous():
    for P, d, f in draw(weighted_homogeneous_nd, 3, 12):
        mu = milnor_weighted_homogeneous(P, d)
        z = mo_zeta(P, d)
        assert zeta_degree(z) == (-1) ** len(P) * mu - 1
        assert varchenko_zeta(f) == z


def test_varchenko_is_permutation_invariant():
    rng = random.Random(4)
    for P, d, f in draw(weighted_homogeneous_nd, 8, 8):
        perm = list(range(f.arity))
        rng.shuffle(perm)
        g = type(f)({tuple(e[i] for i in perm): c for e, c in f.items()}, f.arity)
        assert varchenko_zeta(g) == varchenko_zeta(f)


def test_zeta_degree():
    assert zeta_degree(ZetaDivisor({6: 1, 2: -1, 3: -1})) == 1
    assert zeta_degree(ZetaDivisor({2: -1})) == -2
    assert zeta_degree(ZetaDivisor()) == 0


def test_pretty_and_roundtrip():
    z = ZetaDivisor({6: 1, 2: -1, 3: -1})
    assert str(z) == "(1-t^6) / ((1-t^2)(1-t^3))"
    assert ZetaDivisor.from_list(z.to_list()) == z


def test_local_factors():
    node = parse("v*w", ("v", "w"))
    assert local_factor(4, 1, node) == {5: -1}
    assert local_factor(4, 1, phi_template(1)) == {5: -1}
    assert local_factor(12, 1, phi_template(2)) == {13: -1, 26: 1, 39: 1, 78: -1}
    assert local_model(2, 1, node) == parse("u^2*v*w + u^3", ("u", "v", "w"))
    with pytest.raises(InputError):
        phi_template(4, corank=2)


def test_oka_composition_quartic(quartic):
    t = WLYTriple(quartic, parse("x^5"), (1, 1, 1), 4, 1)
    prof = singularity_profile(quartic, (1, 1, 1))
    z = oka_wly_zeta(t, prof, wly_local_factors(t, prof))
    assert z == {4: -3, 5: -4}
    assert zeta_degree(z) == -32


def test_oka_composition_without_singular_points():
    t = WLYTriple(parse("x^2+y^3+z^6"), parse("z^7"), (3, 2, 1), 6, 1)
    prof = SingularityProfile.from_local_mu([])
    assert oka_wly_zeta(t, prof, []) == mo_zeta((3, 2, 1), 6)


def test_oka_rejects_low_indices(quartic):
    t = WLYTriple(quartic, parse("x^5"), (1, 1, 1), 4, 1)
    prof = singularity_profile(quartic, (1, 1, 1))
    with pytest.raises(DegenerateError):
        oka_wly_zeta(t, prof, [ZetaDivisor({3: -1})] * 4)
    with pytest.raises(InputError):
        oka_wly_zeta(t, prof, [])
