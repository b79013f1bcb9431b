import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringalg import catalog, functors, repmod
from stringalg.decompose import (AuditError, CertificationError, DecompositionReport, band_split, build,
                                 certify, decompose, krs_check, make_report, merge)
from stringalg.exactla import Field, inverse, is_zero
from stringalg.laurent import BandCoefficient, parse_poly
from stringalg.words import Word, index_view, inverse as word_inverse, shift

from recipes import ALGEBRAS, random_recipe

F5 = Field(5)
Q = Field()
XY = catalog.xy_algebra()


def W(text, alg=XY):
    return Word.parse(alg, text)


def coeff(poly, r=1, field=F5):
    return BandCoefficient(field, parse_poly(field, poly), r)


def check_certificate(m, n, theta):
    f = m.field
    for a, act in m.action.items():
        arrow = m.algebra.arrow(a)
        lhs = f.matmul(theta[arrow.head], n.action[a])
        rhs = f.matmul(act, theta[arrow.tail])
        assert is_zero(f.reduce(lhs - rhs))
    for v, mat in theta.items():
        if m.dims[v]:
            inverse(f, mat)


def test_scrambled_string_module():
    m, _ = repmod.scramble(repmod.string_module(XY, F5, W("y^-1 x")), 7)
    rep = decompose(m)
    assert rep.to_json()["strings"] == [{"word": "x^-1 y", "mult": 1}]
    assert rep.bands == []
    assert rep.audit == {"v": 3}


def test_band_from_matrices():
    m = repmod.Representation(XY, F5, {"v": 2}, {"x": [[0, 1], [0, 0]], "y": [[0, 3], [0, 0]]})
    rep = decompose(m)
    assert rep.strings == []
    assert rep.to_json()["bands"] == [{"word": "periodic: x y^-1", "poly": "T-2", "power": 1, "mult": 1}]


def test_band_with_y_two_reads_the_inverse_parameter():
    m = repmod.Representation(XY, F5, {"v": 2}, {"x": [[0, 1], [0, 0]], "y": [[0, 2], [0, 0]]})
    assert decompose(m).to_json()["bands"][0]["poly"] == "T-3"


def test_zero_module():
    rep = decompose(repmod.zero_rep(XY, Q))
    assert rep.summands() == 0
    assert rep.to_json() == {"field": "Q", "strings": [], "bands": [], "audit": {"v": 0}}


def test_multiplicities_and_mixed_summands():
    mods = [repmod.string_module(XY, Q, W("x")), repmod.string_module(XY, Q, W("x^-1")),
            repmod.band_module(XY, Q, W("periodic: x y^-1"), coeff("T^2+1", 1, Q)),
            repmod.Representation(XY, Q, {"v": 1}, {"x": [[0]], "y": [["1/2"]]})]
    m, _ = repmod.scramble(repmod.direct_sum(mods), 11)
    rep = decompose(m)
    assert [(str(w), k) for w, k in rep.strings] == [("x", 2)]
    assert [(str(w), str(c), k) for w, c, k in rep.bands] == [
        ("periodic: y", "T-1/2", 1), ("periodic: x y^-1", "T^2+1", 1)]


def test_certify_two_strings():
    n = repmod.direct_sum([repmod.string_module(XY, Q, W("y^-1 x")), repmod.string_module(XY, Q, W("y y"))])
    m, _ = repmod.scramble(n, 5)
    rep = decompose(m)
    built, theta = certify(m, rep)
    check_certificate(m, built, theta)


def test_certify_band():
    m, _ = repmod.scramble(repmod.band_module(XY, F5, W("periodic: x x y^-1"), coeff("T^2+2", 2)), 2)
    rep = decompose(m)
    built, theta = certify(m, rep)
    check_certificate(m, built, theta)


def test_certify_rejects_tampered_report():
    m = repmod.string_module(XY, Q, W("y^-1 x"))
    bad = make_report(Q, [(W("y^-1 x"), 2)], [])
    with pytest.raises((CertificationError, AuditError)):
        certify(m, bad)


def test_audit_catches_imbalance():
    with pytest.raises(AuditError):
        make_report(Q, [(W("x"), 1)], [], {"v": 3})


def test_krs_examples():
    m = repmod.direct_sum([repmod.string_module(XY, F5, W("x")),
                           repmod.band_module(XY, F5, W("periodic: x y^-1"), coeff("T-2"))])
    assert krs_check(m, repmod.scramble(m, 4)[0])
    assert not krs_check(repmod.string_module(XY, F5, W("x")), repmod.string_module(XY, F5, W("y")))
    assert not krs_check(repmod.direct_sum([m, m]), m)


def test_band_inversion_normal_form():
    e = W("periodic: x x y^-1")
    c = coeff("T^2+2", 1)
    a = repmod.band_module(XY, F5, e, c)
    for k in range(3):
        rotated = repmod.band_module(XY, F5, shift(e, k), c)
        flipped = repmod.band_module(XY, F5, shift(word_inverse(e), k), c.inverted())
        assert decompose(rotated) == decompose(a)
        assert decompose(flipped) == decompose(a)


def test_second_split_point_agrees():
    # the multiplicity of a string does not depend on the index used to split it
    c0 = W("y^-1 x x y^-1")
    m = repmod.direct_sum([repmod.string_module(XY, Q, c0), repmod.string_module(XY, Q, c0)])
    dims = set()
    for i in range(5):
        b, _ = index_view(c0, i, 1)
        d, _ = index_view(c0, i, -1)
        dims.add(functors.refined(m, b, d).dim)
    assert dims == {2}


def test_report_json_round_trip():
    from stringalg.io import report_from_json
    m = repmod.direct_sum([repmod.string_module(XY, F5, W("x y^-1")),
                           repmod.band_module(XY, F5, W("periodic: x y^-1"), coeff("T^2+2", 2))])
    rep = decompose(m)
    back = report_from_json(rep.to_json(), XY)
    assert back == rep
    assert back.audit == rep.audit


def test_build_matches_recipe_dimensions():
    rep = make_report(F5, [(W("x"), 2)], [(W("periodic: y"), coeff("T-4"), 1)])
    n = build(XY, rep)
    assert n.dims == {"v": 5}


# properties

@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(ALGEBRAS)), st.sampled_from([F5, Q]), st.integers(0, 2**32 - 1))
def test_round_trip(name, field, seed):
    alg = ALGEBRAS[name]()
    rng = np.random.default_rng(seed)
    n, recipe = random_recipe(alg, field, rng)
    m, _ = repmod.scramble(n, seed)
    assert decompose(m) == recipe


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 2**32 - 1))
def test_decompose_is_additive(name, seed):
    alg = ALGEBRAS[name]()
    rng = np.random.default_rng(seed)
    a, _ = random_recipe(alg, F5, rng, n_summands=1)
    b, _ = random_recipe(alg, F5, rng, n_summands=2)
    assert decompose(repmod.direct_sum([a, b], alg, F5)) == merge(decompose(a), decompose(b))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 2**32 - 1))
def test_certificates_check_out(name, seed):
    alg = ALGEBRAS[name]()
    rng = np.random.default_rng(seed)
    n, recipe = random_recipe(alg, F5, rng)
    m, _ = repmod.scramble(n, seed)
    built, theta = certify(m, decompose(m))
    check_certificate(m, built, theta)
