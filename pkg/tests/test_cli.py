import json

import pytest

from precohom.cli import BAD_INPUT, FAILED, OK, UNSUPPORTED, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_example(capsys):
    code, out, _ = run(capsys, "validate", "fixtures/dend_example_n3.json")
    assert code == OK and out.strip().endswith("valid")


def test_validate_not_perm_reports_the_triple(capsys):
    code, out, _ = run(capsys, "validate", "fixtures/not_perm.json")
    assert code == FAILED
    assert "(1,2,2)" in out and "invalid" in out


def test_validate_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "perm", "dimension": 2, "products": {"mul": [[3, 1, ["1", "0"]]]}}')
    code, _, err = run(capsys, "validate", str(bad))
    assert code == BAD_INPUT and "out of range" in err
    bad.write_text("{")
    assert run(capsys, "validate", str(bad))[0] == BAD_INPUT
    assert run(capsys, "validate", str(tmp_path / "none.json"))[0] == BAD_INPUT


def test_cohomology_examples(capsys):
    code, out, _ = run(capsys, "cohomology", "fixtures/dend_example_n3.json", "--degree", "2")
    assert code == OK and "H^2: dim C=54 Z=5 B=5 H=0" in out
    code, out, _ = run(capsys, "cohomology", "fixtures/prelie_example.json", "--degree", "2",
                       "--subspace", "ansatz")
    assert code == OK and "H^2: dim C=4 Z=2 B=1 H=1" in out
    code, out, _ = run(capsys, "cohomology", "fixtures/lie_2dim.json", "--degree", "1")
    assert code == OK and "H^1: dim C=4 Z=2 B=2 H=0" in out


def test_cohomology_degree_range_and_errors(capsys):
    code, out, _ = run(capsys, "cohomology", "fixtures/lie_2dim.json", "--degree", "0..2")
    assert code == OK and out.count("H^") == 3
    assert run(capsys, "cohomology", "fixtures/lie_2dim.json", "--degree", "x")[0] == BAD_INPUT
    assert run(capsys, "cohomology", "fixtures/dend_example_n2.json", "--subspace", "ansatz")[0] == BAD_INPUT


def test_cohomology_of_invalid_algebra_fails(capsys):
    code, _, err = run(capsys, "cohomology", "fixtures/not_perm.json", "--degree", "1")
    assert code == FAILED and "axioms fail" in err


def test_cohomology_with_module_file(capsys, tmp_path):
    data = json.loads(open(_fixture("prelie_example.json")).read())
    data["module"] = {"module_dimension": 1, "actions": {}}
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps(data))
    code, out, _ = run(capsys, "cohomology", "fixtures/prelie_example.json", "--degree", "1",
                       "--coefficients", str(mod))
    assert code == OK and "dim C=2" in out


def _fixture(name):
    from precohom.cli import fixture_path
    return fixture_path(name)


def test_tensor_examples(capsys):
    code, out, _ = run(capsys, "tensor", "--perm", "free:2,3", "--with", "fixtures/dend_example_n2.json", "--check")
    assert code == OK and out.strip().endswith("pass")
    code, out, _ = run(capsys, "tensor", "--perm", "free:2,3", "--with", "fixtures/prelie_example.json", "--check")
    assert code == OK and "checked as lie" in out


def test_tensor_mutant_prints_residual_triples(capsys):
    code, out, _ = run(capsys, "tensor", "--perm", "free:2,3", "--with", "fixtures/mutated_dend.json", "--check")
    assert code == FAILED
    assert "(xy)z = x(yz) at (2,1,1): residual 2*x1x1x1(x)e2" in out


def test_bad_perm_spec(capsys):
    for spec in ("free:bad", "free:0,2", "free:1"):
        assert run(capsys, "tensor", "--perm", spec, "--with", "fixtures/dend_example_n2.json")[0] == BAD_INPUT
    assert run(capsys, "tensor", "--perm", "fixtures/lie_2dim.json",
               "--with", "fixtures/dend_example_n2.json")[0] == BAD_INPUT


def test_non_perm_file_as_perm_factor_fails(capsys):
    code, _, err = run(capsys, "tensor", "--perm", "fixtures/not_perm.json",
                       "--with", "fixtures/dend_example_n2.json")
    assert code == FAILED and "perm axioms fail" in err


def test_embed_chain_map(capsys):
    code, out, _ = run(capsys, "embed", "--perm", "free:2,3", "--with", "fixtures/dend_example_n2.json",
                       "--degree", "2", "--trials", "10", "--check", "chain-map")
    assert code == OK and "10/10 trials" in out


def test_embed_injectivity(capsys):
    code, out, _ = run(capsys, "embed", "--perm", "free:2,2", "--with", "fixtures/dend_example_n2.json",
                       "--degree", "2", "--check", "injectivity")
    assert code == OK and "injective=true" in out


def test_embed_prelie_degree_gate(capsys):
    code, _, err = run(capsys, "embed", "--perm", "free:1,2", "--with", "fixtures/prelie_example.json",
                       "--degree", "4", "--check", "chain-map")
    assert code == UNSUPPORTED and "unsupported" in err


def test_embed_short_truncation_is_unsupported(capsys):
    code, _, _ = run(capsys, "embed", "--perm", "free:2,1", "--with", "fixtures/dend_example_n2.json",
                     "--degree", "2", "--check", "chain-map")
    assert code == UNSUPPORTED


def test_embed_les(capsys):
    code, out, _ = run(capsys, "embed", "--perm", "free:1,2", "--with", "fixtures/dend_example_n2.json",
                       "--degree", "2", "--check", "les")
    assert code == OK and "feasible" in out


def test_embed_les_size_guard(capsys):
    code, _, err = run(capsys, "embed", "--perm", "free:2,3", "--with", "fixtures/dend_example_n2.json",
                       "--degree", "2", "--check", "les")
    assert code == UNSUPPORTED and "limited to" in err


def test_embed_is_deterministic(capsys, tmp_path):
    args = ["embed", "--perm", "free:2,3", "--with", "fixtures/dend_example_n2.json",
            "--degree", "1", "--trials", "5", "--seed", "9"]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(capsys, *args, "--out", str(a))
    run(capsys, *args, "--out", str(b))
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    da["command"] = db["command"] = None
    assert da == db and da["seed"] == 9


def test_out_report_contents(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "validate", "fixtures/dend_example_n2.json", "--out", str(out))
    data = json.loads(out.read_text())
    assert code == OK and data["status"] == OK
    assert data["command"][:2] == ["precohom", "validate"]
    (digest,) = data["inputs"].values()
    assert len(digest) == 64
    assert data["results"][0]["violations"] == 0


@pytest.mark.parametrize("name", ["2.7", "5.4", "5.7", "lie"])
def test_reproduce_examples(capsys, name):
    code, out, _ = run(capsys, "reproduce", "--paper-example", name)
    assert code == OK
    assert "FAIL" not in out


def test_reproduce_writes_log(capsys, tmp_path):
    log = tmp_path / "d.log"
    out = tmp_path / "o.json"
    code, _, _ = run(capsys, "reproduce", "--example", "lie", "--log", str(log), "--out", str(out))
    assert code == OK
    lines = log.read_text().splitlines()
    assert len(lines) == 1 and "printed H2 = 1, computed 0" in lines[0]
    assert json.loads(out.read_text())["discrepancies"][0]["topic"] == "Lie example"


def test_unknown_command_is_input_error(capsys):
    assert run(capsys, "frobnicate")[0] == BAD_INPUT
    assert run(capsys, "reproduce", "--paper-example", "9.9")[0] == BAD_INPUT
