import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringalg import catalog, linrel, repmod
from stringalg.exactla import Field, Subspace, is_zero
from stringalg.laurent import BandCoefficient, charpoly, parse_poly
from stringalg.words import Word

from recipes import ALGEBRAS, random_band_word, random_coefficient, random_finite_word

F5 = Field(5)
Q = Field()
XY = catalog.xy_algebra()


def W(text, alg=XY):
    return Word.parse(alg, text)


def actions(m):
    return {a: m.field.to_lists(x) for a, x in m.action.items()}


def band(text, poly, r=1, field=F5, alg=XY):
    return repmod.band_module(alg, field, W(text, alg), BandCoefficient(field, parse_poly(field, poly), r))


def test_trivial_string_module():
    m = repmod.string_module(XY, Q, W("1_v_+"))
    assert m.dims == {"v": 1}
    assert actions(m) == {"x": [[0]], "y": [[0]]}


def test_string_module_of_x():
    m = repmod.string_module(XY, Q, W("x"))
    assert actions(m) == {"x": [[0, 1], [0, 0]], "y": [[0, 0], [0, 0]]}


def test_string_module_of_inverse_y_then_x():
    m = repmod.string_module(XY, Q, W("y^-1 x"))
    assert m.dims == {"v": 3}
    # y b0 = b1 and x b2 = b1
    assert actions(m) == {"x": [[0, 0, 0], [0, 0, 1], [0, 0, 0]], "y": [[0, 0, 0], [1, 0, 0], [0, 0, 0]]}


def test_band_module_closing_letter_carries_t():
    m = band("periodic: x y^-1", "T-2")
    assert m.dims == {"v": 2}
    # the inverse closing letter y^-1 carries T^-1, so y acts through T = 2 read backwards
    assert actions(m) == {"x": [[0, 1], [0, 0]], "y": [[0, 3], [0, 0]]}


def test_band_module_square_power():
    m = band("periodic: x y^-1", "T-1", 2)
    assert m.dims == {"v": 4}
    y_block = m.action["y"][:2, 2:]
    assert charpoly(F5, y_block) == charpoly(F5, F5.array([[1, 1], [0, 1]]))
    assert is_zero(F5.matmul(m.action["x"], m.action["y"]))


@pytest.mark.parametrize("text", ["periodic: y y", "periodic: x y^-1 x y^-1", "periodic: x y"])
def test_band_module_rejects_bad_words(text):
    with pytest.raises(ValueError):
        band(text, "T-2")


def test_word_relation_of_letter_is_graph():
    m = repmod.string_module(XY, Q, W("y^-1 x x"))
    assert repmod.word_relation(m, W("x")) == linrel.from_map(Q, m.action["x"])


def test_word_relation_links_ends():
    m = repmod.string_module(XY, Q, W("y^-1 x x"))
    rel = repmod.word_relation(m, W("y^-1 x x"))
    e = Q.eye(4)
    assert rel.contains_pair(e[3], e[0])


def test_word_relation_through_zero_relation_kills_everything():
    m = band("periodic: x y^-1", "T-2")
    rel = repmod.word_relation(m, (W("x").letters[0], W("y").letters[0]))
    assert linrel.apply(rel, Subspace.full(F5, 2)).is_zero()


def test_relations_checked():
    with pytest.raises(repmod.RelationError):
        repmod.Representation(XY, Q, {"v": 1}, {"x": [[1]], "y": [[1]]})


def test_shape_checked():
    with pytest.raises(ValueError):
        repmod.Representation(XY, Q, {"v": 2}, {"x": [[1]], "y": [[0]]})


def test_torsion_of_string():
    t = repmod.torsion(repmod.string_module(XY, Q, W("x")))["v"]
    assert t["tau0"].is_full() and t["tau1"].is_zero()


def test_torsion_of_band_is_nilpotent():
    t = repmod.torsion(band("periodic: x y^-1", "T-2"))["v"]
    assert t["tau0"].is_full() and t["tau1"].is_zero()
    assert all(k1.is_zero() for _, k1 in t["cycles"].values())


def test_torsion_of_invertible_loop():
    m = repmod.Representation(XY, F5, {"v": 1}, {"x": [[2]], "y": [[0]]})
    t = repmod.torsion(m)["v"]
    assert t["tau0"].is_zero()
    assert t["cycles"]["x"][1].is_full()


def test_direct_sum_and_scramble():
    assert repmod.direct_sum([], XY, Q).dims == {"v": 0}
    a = repmod.string_module(XY, Q, W("x"))
    b = repmod.string_module(XY, Q, W("y^-1 x"))
    s = repmod.direct_sum([a, b])
    assert s.dims == {"v": 5}
    same, conj = repmod.scramble(s, None)
    assert actions(same) == actions(s)
    other, conj = repmod.scramble(s, 3)
    assert repmod.transform(s, conj).dims == s.dims
    assert actions(repmod.transform(s, conj)) == actions(other)


def test_direct_sum_rejects_mixed_fields():
    with pytest.raises(ValueError):
        repmod.direct_sum([repmod.zero_rep(XY, Q), repmod.zero_rep(XY, F5)])


def test_gamma_window_quiver():
    alg = repmod.gamma_window(0, 2)
    assert list(alg.vertices) == ["0", "1", "2"]
    assert sorted(alg.relations) == [("x_2", "y_1"), ("y_2", "x_1")]


def test_graded_zero_module():
    m, notes = repmod.graded_ingest(Q, [0, 0, 0], [[], []], [[], []])
    assert m.total_dim == 0 and notes == []


def test_graded_simple():
    m, notes = repmod.graded_ingest(F5, [1], [], [], start=3)
    assert m.dims == {"3": 1} and notes == []


def test_graded_direct_word_is_string_module():
    m, notes = repmod.graded_ingest(Q, [1, 1, 1], [[[1]], [[1]]], [[[0]], [[0]]])
    assert notes == []
    s = repmod.string_module(m.algebra, Q, W("x_2 x_1", m.algebra))
    assert actions(s) == actions(m)


def test_graded_boundary_warning():
    with pytest.warns(repmod.BoundaryWarning):
        m, notes = repmod.graded_ingest(Q, [1, 1, 1], [[[1]], [[1]]], [[[0]], [[0]]], window=(1, 2))
    assert m.dims == {"1": 1, "2": 1}
    assert len(notes) == 1 and "x_1" in notes[0]


def test_graded_relation_violation():
    with pytest.raises(repmod.RelationError):
        repmod.graded_ingest(Q, [1, 1, 1], [[[1]], [[0]]], [[[0]], [[1]]])


# properties

@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(ALGEBRAS)), st.sampled_from([F5, Q]), st.integers(0, 2**32 - 1))
def test_dimension_formulas(name, field, seed):
    alg = ALGEBRAS[name]()
    rng = np.random.default_rng(seed)
    c = random_finite_word(alg, rng)
    m = repmod.string_module(alg, field, c)
    assert m.total_dim == len(c.letters) + 1
    e = random_band_word(alg, rng)
    if e is not None:
        coeff = random_coefficient(field, rng)
        b = repmod.band_module(alg, field, e, coeff)
        assert b.total_dim == len(e.period) * coeff.r * (len(coeff.g) - 1)
        for rel in alg.relations:
            assert is_zero(b.path_matrix(rel))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 2**32 - 1))
def test_torsion_dimensions_survive_scramble(name, seed):
    alg = ALGEBRAS[name]()
    rng = np.random.default_rng(seed)
    mods = [repmod.string_module(alg, F5, random_finite_word(alg, rng))]
    e = random_band_word(alg, rng)
    if e is not None:
        mods.append(repmod.band_module(alg, F5, e, random_coefficient(F5, rng)))
    m = repmod.direct_sum(mods, alg, F5)
    s, _ = repmod.scramble(m, seed)
    t1, t2 = repmod.torsion(m), repmod.torsion(s)
    for v in alg.vertices:
        assert t1[v]["tau0"].dim == t2[v]["tau0"].dim
        assert t1[v]["tau1"].dim == t2[v]["tau1"].dim


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(ALGEBRAS)), st.integers(0, 2**32 - 1))
def test_finite_strings_are_nilpotent(name, seed):
    alg = ALGEBRAS[name]()
    m = repmod.string_module(alg, Q, random_finite_word(alg, np.random.default_rng(seed)))
    for v, t in repmod.torsion(m).items():
        assert t["tau0"].is_full()
        assert t["tau1"].is_zero()
