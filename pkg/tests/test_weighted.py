import pytest

from wlysing.errors import InputError
from wlysing.newton import is_newton_nondegenerate
from wlysing.poly import parse, substitute_value
from wlysing.weighted import (
    SingularityProfile,
    WeightVector,
    WLYTriple,
    check_W,
    check_W_doubleprime,
    check_W_prime,
    cover_pullback,
    initial_form,
    multiplicity,
    p_degree,
    singularity_profile,
    weighted_homogenize,
)
from hypothesis import given, settings, strategies as st
from wlysing.poly import Polynomial


def test_weight_vector_validation():
    assert WeightVector.of((3, 2, 1)).case_tag == "p2-greater-p3"
    assert WeightVector.of((1, 1, 1)).case_tag == "equal-weights"
    assert WeightVector.of((2, 1, 1)).case_tag == "p2-equals-p3"
    with pytest.raises(InputError):
        WeightVector(1, 2, 3)
    with pytest.raises(InputError):
        WeightVector(4, 2, 2)


def test_p_degree():
    assert p_degree(parse("x^2+y^3+z^6"), (3, 2, 1)) == (6, 6)
    assert p_degree(parse("x^5 + x^2*y^2"), (1, 1, 1)) == (4, 5)
    assert p_degree(parse("z"), (5, 4, 2)) == (2, 2)


def test_initial_form():
    assert initial_form(parse("x^2+y^3+z^6+x^5"), (3, 2, 1)) == parse("x^2+y^3+z^6")
    f = parse("x^2+y^3+z^6")
    assert initial_form(f, (3, 2, 1)) == f
    assert initial_form(parse("x^5+z^5"), (1, 1, 1)) == parse("x^5+z^5")


def test_weighted_homogenize():
    F = parse("x^2+y^3", ("x", "y"))
    assert weighted_homogenize(F, (3, 2, 1)) == parse("x^2+y^3")
    assert weighted_homogenize(F, (1, 1, 1)) == parse("x^2*z+y^3")
    assert weighted_homogenize(parse("x", ("x", "y")), (2, 1, 1)) == parse("x")


def test_cover_pullback():
    assert cover_pullback(parse("x^2+y^3"), (3, 2, 1)) == parse("x^6+y^6")
    f = parse("x^2+y^3+z^6")
    assert cover_pullback(f, (1, 1, 1)) == f
    assert cover_pullback(f, (3, 2, 1)) == parse("x^6+y^6+z^6")


exps2 = st.tuples(st.integers(0, 4), st.integers(0, 4))
polys2 = st.dictionaries(exps2, st.integers(-5, 5), min_size=1, max_size=5).map(lambda d: Polynomial(d, 2))
weights = st.sampled_from([(1, 1, 1), (2, 1, 1), (3, 2, 1), (5, 3, 1)])


@settings(max_examples=50, deadline=None)
@given(polys2, weights)
def test_homogenize_properties(F, P):
    if F.is_zero():
        return
    f = weighted_homogenize(F, P)
    assert substitute_value(f, 2, 1) == F
    assert initial_form(f, P) == f
    d = p_degree(f, P)[0]
    assert p_degree(cover_pullback(f, P), (1, 1, 1)) == (d, d)


def test_check_W_prime(quartic):
    assert check_W_prime(quartic, (1, 1, 1))
    assert not check_W(quartic, (1, 1, 1))
    brieskorn = parse("x^2+y^3+z^6")
    assert check_W_prime(brieskorn, (3, 2, 1)) and check_W(brieskorn, (3, 2, 1))
    assert is_newton_nondegenerate(brieskorn)


def test_check_W_prime_edge_failure():
    bad = check_W_prime(parse("(x+y+z)*(x^2+y^2+z^2)*(x+y)"), (1, 1, 1))
    assert not bad and "edge" in bad.first_failure


def test_check_W_prime_coordinate_factor():
    # every edge is ND here, but V(f) is singular along lines in {x = 0}
    bad = check_W_prime(parse("(x+y+z)*(x^2+y^2+z^2)*x"), (1, 1, 1))
    assert not bad and "plane x=0" in bad.first_failure
    axis = check_W_prime(parse("x^2*y*z + x*y^2*z + y^4 + y*z^3 + x*y*z^2"), (1, 1, 1))
    assert not axis and "x-axis" in axis.first_failure


def test_check_W_doubleprime(quartic):
    ok = check_W_doubleprime(WLYTriple(quartic, parse("x^5"), (1, 1, 1), 4, 1))
    assert ok and any("rank oracle confirms mu = 31" in n for n in ok.notes)
    bad = check_W_doubleprime(WLYTriple(quartic, parse("(y^2-x^2)*x^3"), (1, 1, 1), 4, 1))
    assert not bad and bad.first_failure.startswith("(3')")
    assert check_W_doubleprime(WLYTriple(parse("x^2+y^3+z^6"), parse("z^7"), (3, 2, 1), 6, 1))


def test_check_W_doubleprime_conditions(quartic):
    outside = WLYTriple(quartic, parse("z^5 + x*y*z^3"), (1, 1, 1), 4, 1)
    assert check_W_doubleprime(outside)
    wrong_degree = WLYTriple(quartic, parse("x^6"), (1, 1, 1), 4, 1)
    assert not check_W_doubleprime(wrong_degree)
    capped = WLYTriple(quartic, parse("x^5 + x^30"), (1, 1, 1), 4, 1)
    assert "(2)" in check_W_doubleprime(capped).first_failure


def test_multiplicity(quartic):
    assert multiplicity(parse("x^2+y^3+z^6")) == 2
    assert multiplicity(quartic + parse("x^5")) == 4
    assert multiplicity(parse("x")) == 1


def test_singularity_profiles(quartic):
    prof = singularity_profile(quartic, (1, 1, 1))
    assert (prof.k, prof.local_mu, prof.mu_tot) == (4, (1, 1, 1, 1), 4)
    assert singularity_profile(parse("x^2+y^3+z^6"), (3, 2, 1)).k == 0


def test_profile_on_cover_scales_by_sheets():
    # P = (2, 1, 1) goes through the chart z = 1; the pullback must agree
    f = parse("(x + y^2 - 2*z^2)*(x - 3*y^2 + z^2)")
    prof = singularity_profile(f, (2, 1, 1))
    cover = singularity_profile(cover_pullback(f, (2, 1, 1)), (1, 1, 1))
    assert cover.mu_tot == 2 * prof.mu_tot


def test_sextic_pullback_profile(sextic_pair):
    prof = singularity_profile(sextic_pair[0].f, (2, 1, 1))
    assert prof.k == 12 and set(prof.local_mu) == {2} and prof.mu_tot == 24


def test_triple_serialization(quartic):
    t = WLYTriple(quartic, parse("x^5"), (1, 1, 1), 4, 1)
    assert WLYTriple.from_dict(t.to_dict()) == t
    assert WLYTriple.from_g(t.g, (1, 1, 1)) == t
    prof = SingularityProfile.from_local_mu([1, 3, 1])
    assert SingularityProfile.from_dict(prof.to_dict()) == prof
    with pytest.raises(InputError):
        WLYTriple(quartic, parse("x^5"), (1, 1, 1), 4, 0)
