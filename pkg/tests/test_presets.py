"""Tests for the preset text format: parsing, loading, round-trips."""

from fractions import Fraction

import pytest

from conftest import make_u1_calculus, make_u1_hopf
from qchern.presets import (PresetError, available_presets, load_preset,
                            parse_expression, parse_preset, scalar_text,
                            serialize_preset, _Env)
from qchern.scalar import LAM, MU, ONE, Scalar, from_fraction


def eval_scalar(text):
    v = _Env().evaluate(parse_expression(text))
    assert v[0] == "scalar"
    return v[1]


def test_expression_grammar():
    assert eval_scalar("3*2^-1") == from_fraction(Fraction(3, 2))
    assert eval_scalar("mu^-2") == ONE / MU ** 2
    assert eval_scalar("(1 - lam)^-1 * (1 - lam^2)") == ONE + LAM
    assert eval_scalar("-mu + mu") == Scalar(0)
    assert eval_scalar("2^3") == from_fraction(8)


def test_expression_errors():
    with pytest.raises(PresetError):
        parse_expression("mu +")
    with pytest.raises(PresetError):
        parse_expression("(mu")
    with pytest.raises(PresetError):
        parse_expression("mu ^ lam")
    with pytest.raises(PresetError):
        eval_scalar("nosuchname")


def test_load_u1_matches_handbuilt():
    preset = load_preset("u1")
    ref_h = make_u1_hopf()
    ref_c = make_u1_calculus(ref_h)
    assert preset.name == "u1"
    assert preset.hopf.generators == ref_h.generators
    assert preset.hopf.rules == ref_h.rules
    assert preset.hopf.coproduct_table == ref_h.coproduct_table
    assert preset.hopf.counit_table == ref_h.counit_table
    assert preset.hopf.antipode_table == ref_h.antipode_table
    assert preset.hopf.star_table == ref_h.star_table
    assert preset.calculus.basis_names == ref_c.basis_names
    assert preset.calculus.pi_gen == ref_c.pi_gen
    assert preset.calculus.circ_gen == ref_c.circ_gen
    assert preset.calculus.representatives == ref_c.representatives


def test_u1_preset_validates():
    preset = load_preset("u1")
    assert preset.validate(max_degree=2, samples=500) == []


def test_u1_representations():
    preset = load_preset("u1")
    assert set(preset.representations) == {"fundamental", "doubled"}
    fund = preset.representations["fundamental"]
    assert fund.matrix == ((preset.hopf.gen("u"),),)
    assert fund.conjugation == ((ONE,),)
    doubled = preset.representations["doubled"]
    assert doubled.matrix[0][0] == preset.hopf.gen("u")
    assert doubled.matrix[0][1] == {}
    assert doubled.matrix[1][1] == preset.hopf.gen("v")
    assert len(doubled.braid) == 4


def test_round_trip_is_canonical():
    preset = load_preset("u1")
    doc = serialize_preset(preset)
    reparsed = parse_preset(doc)
    assert serialize_preset(reparsed) == doc
    assert reparsed.hopf.rules == preset.hopf.rules
    assert reparsed.calculus.pi_gen == preset.calculus.pi_gen
    assert reparsed.calculus.circ_gen == preset.calculus.circ_gen
    assert (reparsed.representations["doubled"].braid
            == preset.representations["doubled"].braid)
    assert reparsed.options == preset.options


def test_scalar_text_is_grammar_conformant():
    samples = [ONE / (ONE - LAM), MU + ONE / MU, from_fraction(Fraction(-3, 7)),
               (ONE + MU ** 2) / (MU ** 3), Scalar(0), -LAM]
    for s in samples:
        assert eval_scalar(scalar_text(s)) == s


def test_unknown_section_rejected():
    with pytest.raises(PresetError):
        parse_preset("[nosuch]\nkey = 1\n")


def test_unknown_key_rejected():
    doc = "[hopf]\ngenerators = x\nflavor = strange\n"
    with pytest.raises(PresetError) as err:
        parse_preset(doc)
    assert "flavor" in str(err.value)


def test_missing_sections_rejected():
    with pytest.raises(PresetError):
        parse_preset("[hopf]\ngenerators = x\n")


def test_duplicate_lines_rejected():
    doc = (
        "[hopf]\n"
        "generators = u v\n"
        "rule = u*v -> 1\n"
        "rule = u*v -> 1\n"
    )
    with pytest.raises(PresetError):
        parse_preset(doc)


def test_preset_dir_env_override(tmp_path, monkeypatch):
    src = serialize_preset(load_preset("u1"))
    custom = tmp_path / "mycopy.preset"
    custom.write_text(src)
    monkeypatch.setenv("QCHERN_PRESET_DIR", str(tmp_path))
    assert "mycopy" in available_presets()
    loaded = load_preset("mycopy")
    assert loaded.hopf.generators == ("u", "v")
    # names from the options section win over the file name
    assert loaded.name == "u1"


def test_load_by_path(tmp_path):
    src = serialize_preset(load_preset("u1"))
    path = tmp_path / "direct.preset"
    path.write_text(src)
    loaded = load_preset(str(path))
    assert loaded.hopf.generators == ("u", "v")


def test_broken_counit_control():
    doc = serialize_preset(load_preset("u1")).replace(
        "counit = u -> 1", "counit = u -> lam")
    preset = parse_preset(doc)
    failures = preset.validate(max_degree=1, samples=100)
    assert any("counit" in f for f in failures)


def test_broken_circ_module_control():
    doc = serialize_preset(load_preset("u1")).replace(
        "circ = zeta o u -> lam*zeta", "circ = zeta o u -> zeta")
    preset = parse_preset(doc)
    failures = preset.validate(max_degree=2, samples=100)
    assert any("pi is not well defined" in f or "circ" in f
               for f in failures)
