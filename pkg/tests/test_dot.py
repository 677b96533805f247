from pathlib import Path

from dpic.catalog import builtin
from dpic.dot import render_dot, render_knitted_dot
from dpic.knitting import knit
from dpic.quiver import Quiver
from dpic.translation import build_window

GOLDEN = Path(__file__).parent / "golden"


def test_a3_window_matches_golden():
    a3 = builtin("@A3")
    text = render_dot(build_window(a3, -1, 2), knit(a3), name="ZA3")
    assert text == (GOLDEN / "a3_window.dot").read_text()


def test_d4_window_matches_golden():
    d4 = builtin("@D4")
    text = render_dot(build_window(d4, 0, 3), knit(d4), name="ZD4")
    assert text == (GOLDEN / "d4_window.dot").read_text()


def test_empty_window_header_only():
    empty = Quiver([], [])
    text = render_dot(build_window(empty, 0, 0))
    body = [ln for ln in text.splitlines()
            if ln and not ln.startswith(("digraph", "}", "  rankdir", "  node"))]
    assert body == []


def test_rendering_is_deterministic():
    d4 = builtin("@D4")
    a = render_dot(build_window(d4, 0, 2), knit(d4))
    b = render_dot(build_window(d4, 0, 2), knit(d4))
    assert a == b


def test_knitted_dot_flags():
    text = render_knitted_dot(knit(builtin("@A2")))
    assert "P1" in text and "I2" in text and "S1" in text
    assert '"(0,1)" -> "(0,2)"' in text
