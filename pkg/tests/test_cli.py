import io
import json

import pytest

from shukla import cli
from shukla import extensions as ext
from shukla.bicomplex import BicomplexIdentityFailure
from shukla.homology import CohomologyReport, DegreeReport, shukla_cohomology
from shukla.library import BUILTINS, builtin
from shukla.scalars import QQ

DUAL = ["builtin:dual_numbers", "builtin:quotient_k", "builtin:trivial_module"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_cohomology_table():
    code, out, _ = run("cohomology", *DUAL, "--n", "4")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[3:7]]
    assert [r[1] for r in rows] == ["1", "0", "1", "1"]
    assert "boundary-incomplete" in out


def test_json_output_reparses_to_equal_report():
    code, out, _ = run("cohomology", *DUAL, "--format", "json")
    assert code == 0
    b = builtin("dual_numbers", QQ)
    expected, _ = shukla_cohomology(b.A, b.R, b.M, N=4)
    assert CohomologyReport.from_json(json.loads(out)) == expected


def test_output_is_deterministic():
    first = run("compare", *DUAL, "--format", "json")
    assert first == run("compare", *DUAL, "--format", "json")


def test_compare_projective():
    code, out, _ = run("compare", "builtin:k_times_k", "builtin:quotient_point", "builtin:regular_module")
    assert code == 0
    assert "alpha^n iso for n=0..3" in out


def test_lie_route():
    code, out, _ = run("cohomology", "--lie", "builtin:sl2", "builtin:sl2", "builtin:sl2", "--format", "json")
    assert code == 0
    assert CohomologyReport.from_json(json.loads(out)).dims() == [1, 0, 0, 1]


def test_builtin_list_documents_everything():
    code, out, _ = run("builtin", "list")
    assert code == 0
    for name in BUILTINS:
        assert name in out


def test_emit_then_validate(tmp_path):
    code, out, _ = run("builtin", "emit", "trunc_poly:3")
    assert code == 0
    p = tmp_path / "tp.json"
    p.write_text(out)
    assert run("validate", str(p))[0] == 0
    doc = json.loads(out)
    doc["R"]["mult"][1][1] = ["1", "1", "0"]
    p.write_text(json.dumps(doc))
    code, out, _ = run("validate", str(p))
    assert code == 1 and "violation" in out


def test_ext2_check_rejects_non_cocycle(tmp_path):
    b = builtin("dual_numbers", QQ)
    ec = ext.ExtContext(b.A, b.R, b.M)
    bad = ext.TwoCocycleDatum.from_vector(ec, {ec.block_dim(0, 2): 1})
    p = tmp_path / "z.json"
    p.write_text(json.dumps(bad.to_json()))
    code, out, _ = run("ext2", "check", *DUAL, str(p))
    assert code == 1 and "cocycle: no" in out


def test_ext3_from_crossed():
    code, out, _ = run("ext3", "from-crossed", *DUAL, "builtin:dual_numbers_crossed")
    assert code == 0 and "class: nonzero" in out
    code, out, _ = run("ext3", "from-crossed", *DUAL, "builtin:trivial")
    assert code == 0 and "class: zero" in out


def test_classify_needs_f2():
    assert run("ext2", "classify", *DUAL)[0] == 64
    code, out, _ = run("ext2", "classify", *DUAL, "--field", "Fp:2")
    assert code == 0 and "classes" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["cohomology", *DUAL, "--n", "0"],
        ["cohomology", *DUAL, "--cap", "10"],
        ["cohomology", "builtin:nope", "builtin:quotient_k", "builtin:trivial_module"],
        ["cohomology", *DUAL, "--field", "Fp:4"],
        ["hochschild", "builtin:quotient_k"],
        ["validate", "/nonexistent/file.json"],
    ],
)
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == 64 and err.startswith("usage error")


def test_size_cap_is_a_rejection():
    code, _, err = run("cohomology", "builtin:k_times_k", "builtin:regular", "builtin:regular_module",
                       "--n", "6", "--cap", "1000")
    assert code == 1 and "cap" in err


def test_internal_failure_exit_code(monkeypatch):
    def broken(*a, **k):
        raise BicomplexIdentityFailure("d.d != 0")

    monkeypatch.setattr(cli, "shukla_cohomology", broken)
    code, _, err = run("cohomology", *DUAL)
    assert code == 2 and "internal" in err


def test_render_empty_and_wide():
    empty = CohomologyReport("empty", "Q", 0)
    text = cli.render_report(empty)
    assert len(text.splitlines()) == 3
    wide = CohomologyReport("wide", "Q", 1, [DegreeReport(0, 123456, 123456, 0, 999999)])
    lines = cli.render_report(wide).splitlines()[1:]
    assert len({len(line) for line in lines[:2]}) == 1
    assert lines[2].split()[1] == "123456"


def test_selftest_seed_42():
    code, out, _ = run("selftest", "--seed", "42")
    assert code == 0, out
    assert "FAIL" not in out
