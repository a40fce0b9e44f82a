from latticework import FiniteLattice, FinitePoset, hasse_figure, to_dot

DIAMOND = FinitePoset(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)])


def test_to_dot_lists_nodes_in_id_order():
    dot = to_dot(DIAMOND, labels=["bot", "l", "r", "top"])
    lines = dot.splitlines()
    assert lines[0].startswith("digraph")
    order = [l for l in lines if "label=" in l]
    assert order[0].startswith("  e0") and order[3].startswith("  e3")
    assert 'e0 [label="bot"]' in dot
    assert "e0 -> e1;" in dot and "e0 -> e3;" not in dot  # covers only


def test_to_dot_defaults_to_indices():
    dot = to_dot(DIAMOND)
    assert 'e2 [label="2"]' in dot


def test_to_dot_accepts_lattice():
    dot = to_dot(FiniteLattice(DIAMOND))
    assert dot.count("->") == 4


def test_hasse_figure_writes_file(tmp_path):
    out = tmp_path / "diamond.png"
    hasse_figure(DIAMOND, ["bot", "l", "r", "top"], str(out), title="diamond")
    assert out.exists() and out.stat().st_size > 0


def test_hasse_figure_single_element(tmp_path):
    out = tmp_path / "one.png"
    hasse_figure(FinitePoset(1), None, str(out))
    assert out.exists()
