import pytest

from wlysing.errors import InputError
from wlysing.invariants import (
    MuStar,
    generic_section,
    milnor_weighted_homogeneous,
    milnor_wly,
    mu_star_triple,
    mu_tot_reverse,
    predict_section_boundary,
)
from wlysing.local_algebra import milnor_number
from wlysing.poly import parse, substitute_linear
from wlysing.weighted import SingularityProfile, WLYTriple, singularity_profile


def test_milnor_weighted_homogeneous():
    assert milnor_weighted_homogeneous((3, 2, 1), 6) == 10 == milnor_number(parse("x^2+y^3+z^6"))
    assert milnor_weighted_homogeneous((1, 1, 1), 4) == 27
    assert milnor_weighted_homogeneous((2, 1, 1), 12) == 605
    assert milnor_weighted_homogeneous((3, 2), 9) == 7
    with pytest.raises(InputError):
        milnor_weighted_homogeneous((3, 2, 2), 5)


def test_milnor_wly(quartic):
    t = WLYTriple(quartic, parse("x^5"), (1, 1, 1), 4, 1)
    assert milnor_wly(t, singularity_profile(quartic, (1, 1, 1))) == 31 == milnor_number(t.g)
    brieskorn = WLYTriple(parse("x^2+y^3+z^6"), parse("z^7"), (3, 2, 1), 6, 1)
    assert milnor_wly(brieskorn, SingularityProfile.from_local_mu([])) == 10


def test_milnor_wly_sextic(sextic_pair):
    t = sextic_pair[0]
    assert milnor_wly(t, singularity_profile(t.f, t.P)) == 629


def test_mu_tot_reverse(quartic):
    assert mu_tot_reverse(WLYTriple(quartic, parse("x^5"), (1, 1, 1), 4, 1)) == 4
    f = parse("x^2+y^3+z^6")
    assert mu_tot_reverse(WLYTriple(f, parse("z^7"), (3, 2, 1), 6, 1)) == 0
    assert mu_tot_reverse(WLYTriple(f, parse("z^8"), (3, 2, 1), 6, 2)) == 0


def test_prediction_brieskorn():
    pred = predict_section_boundary(parse("x^4+y^5+z^10"), (5, 4, 2))
    assert pred.predicted_boundary == ((0, 5), (4, 0))
    assert pred.case_tag == "p2-greater-p3"
    assert pred.special_points["A"]["point"] == [4, 0] and pred.special_points["B"]["point"] == [0, 5]


def test_prediction_equal_weights(quartic):
    pred = predict_section_boundary(quartic, (1, 1, 1))
    assert pred.predicted_nu == 9 == (4 - 1) ** 2


def test_prediction_with_axis_end():
    # A = (5, 0) lies on the axis, so the claim term x z^12 adds nothing
    f = parse("x^5+y^6+x*z^12")
    pred = predict_section_boundary(f, (6, 5, 2))
    assert pred.predicted_boundary == ((0, 6), (5, 0))
    sec = generic_section(f + parse("z^16"), (6, 5, 2), trials=3)
    assert sec.boundary == pred.predicted_boundary


def test_generic_section_quartic(quartic):
    sec = generic_section(quartic + parse("x^5"), (1, 1, 1), trials=5, seed=3)
    assert sec.nu == 9 and sec.agree and sec.consistency and sec.matches_prediction


def test_generic_section_brieskorn_family():
    sec = generic_section(parse("x^4+y^5+z^10+z^11"), (5, 4, 2), trials=3)
    assert sec.nu == 12 and sec.boundary == ((0, 5), (4, 0))
    g = parse("x^2+y^3+z^6")
    sec = generic_section(g, (3, 2, 1), trials=3)
    row = sec.trials[0]
    gH = substitute_linear(g, row["a"], row["b"])
    assert sec.nu == milnor_number(gH) == 2


def test_mu_star(quartic):
    t = WLYTriple(quartic, parse("x^5"), (1, 1, 1), 4, 1)
    ms = mu_star_triple(t)
    assert ms == MuStar(31, 9, 4) and ms.chain_holds()
    t2 = WLYTriple(parse("x^2+y^3+z^6"), parse("z^7"), (3, 2, 1), 6, 1)
    assert mu_star_triple(t2) == MuStar(10, 2, 2)
    assert ms.to_dict() == {"mu": 31, "mu2": 9, "mult": 4}
