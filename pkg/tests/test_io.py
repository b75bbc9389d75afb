import json

import pytest
from hypothesis import given, settings, strategies as st

from precohom.algebra import KINDS, StructurePresentation, regular_bimodule
from precohom.cli import fixture_path
from precohom.generators import random_tables
from precohom.io import FileFormatError, dump_algebra, dumps, load_algebra, parse_algebra, save_algebra
from precohom.rng import SplitMix64

FIXTURES = ["dend_example_n2.json", "dend_example_n3.json", "dend_example_n4.json",
            "free_perm_g2_d2.json", "lie_2dim.json", "mutated_dend.json", "not_perm.json",
            "perm_dual_numbers.json", "prelie_example.json"]


def _same(a, b):
    assert a.algebra.kind == b.algebra.kind
    assert a.algebra.dim == b.algebra.dim
    assert a.algebra.basis_names == b.algebra.basis_names
    assert a.algebra.tables == b.algebra.tables
    assert (a.module is None) == (b.module is None)
    if a.module is not None:
        assert a.module.module_dim == b.module.module_dim
        assert a.module.actions == b.module.actions
    assert a.expected == b.expected


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name, tmp_path):
    f = load_algebra(fixture_path(name))
    out = tmp_path / name
    save_algebra(out, f.algebra, f.module, f.expected)
    _same(f, load_algebra(out))


def test_round_trip_with_module(tmp_path):
    f = load_algebra(fixture_path("dend_example_n2.json"))
    m = regular_bimodule(f.algebra)
    save_algebra(tmp_path / "m.json", f.algebra, m)
    g = load_algebra(tmp_path / "m.json")
    assert g.module.actions == m.actions
    assert g.coefficients.actions == m.actions


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), st.integers(1, 3), st.integers(0, 2**32))
def test_random_tables_round_trip(kind, dim, seed):
    p = random_tables(kind, SplitMix64(seed), dim)
    q = parse_algebra(json.loads(dumps(dump_algebra(p)))).algebra
    assert q.tables == p.tables and q.kind == p.kind


def test_zero_entries_are_dropped():
    data = {"kind": "prelie", "dimension": 2,
            "products": {"mul": [[1, 2, ["1", "0"]], [2, 2, ["0", "0"]]]}}
    p = parse_algebra(data).algebra
    assert p.tables["mul"] == StructurePresentation.build("prelie", 2, {"mul": {(0, 1): {0: 1}}}).tables["mul"]


def test_fractions_parse():
    data = {"kind": "associative", "dimension": 1, "products": {"mul": [[1, 1, ["-3/6"]]]}}
    p = parse_algebra(data).algebra
    assert dump_algebra(p)["products"]["mul"] == [[1, 1, ["-1/2"]]]


def test_missing_module_means_regular():
    f = load_algebra(fixture_path("prelie_example.json"))
    assert f.module is None
    assert f.coefficients.actions == regular_bimodule(f.algebra).actions


BASE = {"kind": "dendriform", "dimension": 2, "products": {"prec": [[2, 1, ["0", "1"]]]}}


def _with(**changes):
    data = json.loads(json.dumps(BASE))
    data.update(changes)
    return data


@pytest.mark.parametrize("data", [
    [],
    _with(kind="magma"),
    _with(kind=None),
    _with(dimension=-1),
    _with(dimension="2"),
    _with(basis=["e1"]),
    _with(products=[]),
    _with(products={"mul": []}),
    _with(products={"prec": [[3, 1, ["0", "1"]]]}),
    _with(products={"prec": [[0, 1, ["0", "1"]]]}),
    _with(products={"prec": [[1.0, 1, ["0", "1"]]]}),
    _with(products={"prec": [[1, 1, ["0"]]]}),
    _with(products={"prec": [[1, 1, ["0", "x"]]]}),
    _with(products={"prec": [[1, 1, ["0", "1/0"]]]}),
    _with(products={"prec": [[1, 1]]}),
    _with(products={"prec": {"1": 1}}),
    _with(products={"prec": [[1, 1, ["1", "0"]], [1, 1, ["0", "1"]]]}),
    _with(module=[]),
    _with(module={"module_dimension": -2}),
    _with(module={"module_dimension": 1, "module_basis": []}),
    _with(module={"module_dimension": 1, "actions": {"left_mul": []}}),
    _with(module={"module_dimension": 1, "actions": {"left_prec": [[1, 2, ["1"]]]}}),
    _with(module={"module_dimension": 1, "actions": []}),
    _with(expected=[]),
])
def test_malformed_inputs_raise(data):
    with pytest.raises(FileFormatError):
        parse_algebra(data)


def test_bad_json_and_missing_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{kind: dendriform")
    with pytest.raises(FileFormatError, match="invalid JSON"):
        load_algebra(bad)
    with pytest.raises(FileFormatError, match="cannot read"):
        load_algebra(tmp_path / "missing.json")


def test_dumps_is_valid_json_one_entry_per_line():
    f = load_algebra(fixture_path("dend_example_n3.json"))
    text = dumps(dump_algebra(f.algebra, expected=f.expected))
    assert json.loads(text)["dimension"] == 3
    assert '      [2, 1, ["0", "1", "0"]],' in text.splitlines()
