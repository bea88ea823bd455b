import io
import os

import pytest

from koszulkit.cli import run
from conftest import data_path

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")
UPDATE = os.environ.get("KOSZULKIT_UPDATE_GOLDEN") == "1"

SL2 = "@sl2"
A3 = "@a3"
LOOP = "@loop_sq"
FREE = "@free_loop"

# (golden name, argv); "@name" stands for a bundled algebra file
CASES = [
    ("validate", ["validate", SL2]),
    ("dual", ["dual", SL2]),
    ("dual_a3", ["dual", A3]),
    ("basis", ["basis", SL2]),
    ("basis_tsv", ["basis", A3, "--format", "tsv"]),
    ("dim", ["dim", SL2]),
    ("dim_infinite", ["dim", FREE]),
    ("hilbert", ["hilbert", SL2]),
    ("hilbert_free_loop", ["hilbert", FREE]),
    ("hilbert_truncate", ["hilbert", LOOP, "--truncate", "6"]),
    ("hilbert_module", ["hilbert", SL2, "--module", "P(1)"]),
    ("hilbert_dual_module", ["hilbert", SL2, "--module", "I(1)", "--over", "dual"]),
    ("resolve", ["resolve", SL2, "--module", "S(1)"]),
    ("resolve_tsv", ["resolve", LOOP, "--module", "S(1)", "--steps", "4", "--format", "tsv"]),
    ("coresolve", ["coresolve", SL2, "--module", "S(1)"]),
    ("betti", ["betti", SL2, "--module", "S(1)"]),
    ("betti_presented", ["betti", SL2, "--module", "coker(2; beta.alpha)"]),
    ("poincare", ["poincare", SL2, "--module", "S(1)"]),
    ("poincare_loop", ["poincare", LOOP, "--module", "S(1)"]),
    ("lindefect", ["lindefect", SL2, "--module", "coker(2; beta.alpha)"]),
    ("kfunctor", ["kfunctor", SL2, "--module", "I(1)"]),
    ("gfunctor", ["gfunctor", SL2, "--module", "P(1)", "--cutoff", "6"]),
    ("roundtrip", ["roundtrip", SL2, "--module", "S(1)", "--cutoff", "6"]),
    ("truncation", ["truncation", SL2, "--module", "sum(I(1), shift(S(2), 2))", "--cutoff", "8"]),
    ("koszul_check", ["koszul-check", SL2]),
    ("reciprocity", ["reciprocity", SL2, "--order", "10"]),
]


def expand(argv):
    return [data_path(a[1:] + ".alg") if a.startswith("@") else a for a in argv]


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(expand(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name, argv", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv):
    code, out, err = invoke(argv)
    assert code == 0, err
    path = os.path.join(GOLDEN, name + ".txt")
    if UPDATE:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out)
    with open(path, encoding="utf-8") as fh:
        assert out == fh.read()


def test_output_is_deterministic():
    argv = ["betti", SL2, "--module", "sum(S(1), S(2))"]
    assert invoke(argv) == invoke(argv)


def test_dim_example():
    assert invoke(["dim", SL2])[1].strip() == "finite: true, max_path_len: 2, dim: 5"


def test_dual_relation():
    out = invoke(["dual", SL2])[1]
    assert "relation alpha_op beta_op" in out


def test_broken_algebra_exit_2(tmp_path):
    bad = tmp_path / "broken.alg"
    bad.write_text("vertex 1\nvertex 2\narrow a 1 2\nrelation a a\n")
    code, out, err = invoke(["validate", str(bad)])
    assert code == 2 and out == ""
    assert "line 4" in err and "not composable" in err


def test_missing_file_exit_2(tmp_path):
    code, _, err = invoke(["validate", str(tmp_path / "nope.alg")])
    assert code == 2 and err


def test_bad_module_exit_2():
    code, _, err = invoke(["resolve", SL2, "--module", "S(7)"])
    assert code == 2 and "unknown vertex" in err


def test_bad_cutoff_exit_2():
    code, _, err = invoke(["resolve", SL2, "--module", "S(1)", "--steps", "0"])
    assert code == 2 and "positive integer" in err


def test_missing_module_exit_2():
    code, _, err = invoke(["resolve", SL2])
    assert code == 2 and err


def test_suite_empty_corpus(tmp_path):
    code, out, err = invoke(["suite", str(tmp_path), "--quick"])
    assert code == 0 and "warning" in err and "overall: PASS" in out
