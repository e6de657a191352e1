"""Command-line surface: exit codes, JSON payload round-trips, kernel file
loading, enumeration budgets, and DOT output."""

import io
import json
import sys
from fractions import Fraction as F

import pytest

from operad_forge.bv import bv_normalize, iota, raw_bv
from operad_forge.cells import UpsilonIndex
from operad_forge.cli import main
from operad_forge.mapping import assoc_reversal_eta, window_loop, xi
from operad_forge.operads import AssocOperad, identity_eta
from operad_forge.serialize import bv_to_json, dumps, upsilon_to_json, wb_to_json
from operad_forge.trees import PlanarTree, corolla
from operad_forge.wb import raw_wb, wb_normalize

A = AssocOperad()


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_normalize_bv_roundtrip(capsys, monkeypatch):
    shape = PlanarTree((PlanarTree((None, None)),))
    raw = raw_bv(A, shape, (A.unit(), (2, 1)), (F(1, 3),))
    code, out, _ = run(
        capsys, monkeypatch, ["normalize-bv"], dumps(bv_to_json(raw))
    )
    assert code == 0
    assert json.loads(out) == json.loads(dumps(bv_to_json(iota(A, (2, 1)))))


def test_normalize_bv_dot_format(capsys, monkeypatch):
    p = iota(A, (2, 1))
    code, out, _ = run(
        capsys,
        monkeypatch,
        ["--format", "dot", "normalize-bv"],
        dumps(bv_to_json(p)),
    )
    assert code == 0 and out.startswith("digraph")


def test_mu_and_mu_tilde_values(capsys, monkeypatch):
    p = iota(A, (3, 1, 2))
    code, out, _ = run(capsys, monkeypatch, ["mu"], dumps(bv_to_json(p)))
    assert code == 0 and json.loads(out)["value"] == [3, 1, 2]
    w = raw_wb(A, corolla(3), (p,), (F(1, 2),))
    code, out, _ = run(capsys, monkeypatch, ["mu-tilde"], dumps(wb_to_json(w)))
    assert code == 0 and json.loads(out)["value"] == [3, 1, 2]


def test_deloop_constant_kernel(capsys, monkeypatch):
    w = raw_wb(A, corolla(3), (iota(A, (1, 3, 2)),), (F(1, 2),))
    code, out, _ = run(capsys, monkeypatch, ["deloop"], dumps(wb_to_json(w)))
    assert code == 0 and json.loads(out)["value"] == [1, 3, 2]


def test_deloop_table_kernel_matches_function_kernel(
    capsys, monkeypatch, tmp_path
):
    rev = assoc_reversal_eta()
    table = {}
    for n in range(1, 5):
        for x in A.elements(n):
            y = rev(x)
            if y != x:
                table[json.dumps(A.encode(x), sort_keys=True)] = A.encode(y)
    spec = tmp_path / "rev.json"
    spec.write_text(
        json.dumps({"window": ["1/3", "2/3"], "table": table}),
        encoding="utf-8",
    )
    w = wb_normalize(raw_wb(A, corolla(3), (iota(A, (1, 3, 2)),), (F(1, 2),)))
    code, out, _ = run(
        capsys,
        monkeypatch,
        ["deloop", "--kernel", f"table:{spec}"],
        dumps(wb_to_json(w)),
    )
    assert code == 0
    want = xi(window_loop(identity_eta(A), rev))(w)
    assert json.loads(out)["value"] == A.encode(want)
    assert json.loads(out)["value"] != [1, 3, 2]


def test_cells_counts(capsys, monkeypatch):
    code, out, _ = run(
        capsys, monkeypatch, ["cells", "--k", "3", "--l", "2", "--nontrivial"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["census"] == 9
    assert sum(c["size"] for c in data["classes"]) == 9


def test_graph_counts_and_dot(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["graph", "--k", "4", "--l", "3"])
    assert code == 0
    data = json.loads(out)
    assert len(data["classes"]) == 63 and len(data["edges"]) == 41
    code, out, _ = run(
        capsys,
        monkeypatch,
        ["--format", "dot", "graph", "--k", "4", "--l", "3"],
    )
    assert code == 0 and out.count("->") == 41


def test_budget_flag_and_env(capsys, monkeypatch):
    code, out, _ = run(
        capsys,
        monkeypatch,
        ["--budget", "5", "graph", "--k", "4", "--l", "3"],
    )
    assert code == 1 and "exceeds budget" in json.loads(out)["error"]
    monkeypatch.setenv("OPERAD_FORGE_BUDGET", "5")
    code, out, _ = run(capsys, monkeypatch, ["graph", "--k", "4", "--l", "3"])
    assert code == 1
    monkeypatch.setenv("OPERAD_FORGE_BUDGET", "bogus")
    code, _, err = run(capsys, monkeypatch, ["graph", "--k", "4", "--l", "3"])
    assert code == 2 and "OPERAD_FORGE_BUDGET" in err


def test_homotopy_h_hand_value(capsys, monkeypatch):
    # single corolla main trees are rejected: the deformation needs a
    # non-corolla index
    cor = UpsilonIndex(corolla(2), (corolla(2),))
    payload = {
        "index": upsilon_to_json(cor),
        "heights": ["1/2"],
        "auxParams": [[]],
    }
    code, out, _ = run(
        capsys, monkeypatch, ["homotopy-h", "--u", "1/4"], dumps(payload)
    )
    assert code == 1
    path2 = UpsilonIndex(
        PlanarTree((PlanarTree((None,)),)), (corolla(1), corolla(1))
    )
    payload = {
        "index": upsilon_to_json(path2),
        "heights": ["0", "1/2"],
        "auxParams": [[], []],
    }
    code, out, _ = run(
        capsys, monkeypatch, ["homotopy-h", "--u", "1/4"], dumps(payload)
    )
    assert code == 0
    data = json.loads(out)
    assert data["heights"] == ["0", "3/4"]
    assert data["membership"]["H"] is True


def test_exit_code_2_on_bad_input(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["normalize-bv"], "{not json")
    assert code == 2 and "JSON" in err
    code, _, err = run(
        capsys, monkeypatch, ["--operad", "nonsense", "normalize-bv"], "{}"
    )
    assert code == 2
    w = raw_wb(A, corolla(2), (iota(A, (2, 1)),), (F(1, 2),))
    code, _, err = run(
        capsys,
        monkeypatch,
        ["deloop", "--kernel", "warp"],
        dumps(wb_to_json(w)),
    )
    assert code == 2 and "unknown kernel" in err
    # argparse grammar errors also exit 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_exit_code_1_with_witness_on_invalid_point(capsys, monkeypatch):
    bad = bv_to_json(iota(A, (2, 1)))
    bad["labels"] = [[1, 2, 3]]  # arity mismatch with the 2-leaf corolla
    code, out, _ = run(capsys, monkeypatch, ["normalize-bv"], json.dumps(bad))
    assert code == 1
    assert "error" in json.loads(out)


def test_compose_bv_command(capsys, monkeypatch):
    x = iota(A, (2, 1))
    y = iota(A, (1, 2))
    payload = {"x": bv_to_json(x), "y": bv_to_json(y)}
    code, out, _ = run(
        capsys, monkeypatch, ["compose-bv", "--slot", "1"], dumps(payload)
    )
    assert code == 0
    want = bv_normalize(
        raw_bv(
            A,
            PlanarTree((PlanarTree((None, None)), None)),
            ((2, 1), (1, 2)),
            (F(1),),
        )
    )
    assert json.loads(out) == json.loads(dumps(bv_to_json(want)))
    code, out, _ = run(
        capsys, monkeypatch, ["compose-bv", "--slot", "9"], dumps(payload)
    )
    assert code == 1 and json.loads(out)["slot"] == 9


def test_selftest_scaled_down(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["selftest", "--scale", "0.02"])
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.startswith("[")]
    assert len(lines) == 9 and all(ln.startswith("[PASS]") for ln in lines)
