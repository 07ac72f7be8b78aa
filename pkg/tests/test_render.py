import pytest

from oritatami.fixtures import glider_seed, glider_system
from oritatami.folding import Conformation, fold_all
from oritatami.render import RenderOptions, render, render_ascii, render_svg


def test_single_bead_svg():
    svg = render_svg(Conformation.build([(0, 0)], ["a"]))
    assert svg.count("<circle") == 1
    assert "<polyline" not in svg


def test_empty_conformation_is_valid_empty_document():
    svg = render_svg(Conformation((), ()))
    assert svg.startswith("<?xml")
    assert "</svg>" in svg
    assert render_ascii(Conformation((), ())) == ""


def test_bond_segments_match_bond_count():
    conf = fold_all(glider_system(periods=2), "enumerate")[0].conformation
    svg = render_svg(conf)
    assert svg.count("<line") == len(conf.bonds)
    assert svg.count("<circle") == len(conf.path)


def test_byte_stability():
    conf = fold_all(glider_system(periods=1), "enumerate")[0].conformation
    assert render_svg(conf) == render_svg(conf)
    assert render_ascii(conf) == render_ascii(conf)


def test_show_bonds_off():
    conf = glider_seed()
    assert "<line" not in render_svg(conf, RenderOptions(show_bonds=False))


def test_labels_off():
    conf = glider_seed()
    assert "<text" not in render_svg(conf, RenderOptions(label_beads=False))
    assert "<text" in render_svg(conf)


def test_render_dispatch():
    conf = glider_seed()
    assert render(conf, RenderOptions(format="ascii")) == render_ascii(conf)
    assert render(conf) == render_svg(conf)


def test_ascii_rows_follow_grid_rows():
    conf = glider_seed()
    text = render_ascii(conf)
    lines = text.splitlines()
    assert len(lines) == 3  # the hexagon spans three grid rows
    assert "585" in lines[0] and "590" in lines[0]
    assert "587" in lines[2] and "588" in lines[2]


def test_bad_options_rejected():
    with pytest.raises(ValueError):
        RenderOptions(format="png")
    with pytest.raises(ValueError):
        RenderOptions(scale=0)
