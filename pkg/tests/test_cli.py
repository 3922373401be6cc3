import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from rgcost.cli import main
from rgcost.certificate import certificate_from_json, check_certificate
from rgcost.coxeter import trace_from_json

B4_GRAPH = "vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\n"
HEX_GRAPH = "".join(f"vertex v{i}\n" for i in range(6)) + "".join(
    f"edge v{i} v{(i + 1) % 6} 2\n" for i in range(6))
K4_GRAPH = ("vertex a\nvertex b\nvertex c\nvertex d\n"
            "edge a b 2\nedge a c 2\nedge a d 2\nedge b c 2\nedge b d 2\nedge c d 2\n")


def run_cli(args, capsys):
    code = main(["--no-timestamp"] + args)
    return code, capsys.readouterr().out


class TestArtinCommand:
    def test_braid_graph(self, tmp_path, capsys):
        path = tmp_path / "b4.graph"
        path.write_text(B4_GRAPH)
        code, out = run_cli(["artin", str(path)], capsys)
        assert code == 0
        assert "components=1 cost=1 rg=0 betti1=0" in out

    def test_two_isolated_vertices(self, tmp_path, capsys):
        path = tmp_path / "f2.graph"
        path.write_text("vertex a\nvertex b\n")
        code, out = run_cli(["artin", str(path)], capsys)
        assert code == 0
        assert "components=2" in out and "rg=1" in out

    def test_malformed_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.graph"
        path.write_text("vertex a\nedge a a 2\n")
        code, out = run_cli(["artin", str(path)], capsys)
        assert code == 2
        assert "line 2" in out

    def test_certify_flag_writes_valid_certificate(self, tmp_path, capsys):
        path = tmp_path / "b4.graph"
        path.write_text(B4_GRAPH)
        out_path = tmp_path / "b4.cert.json"
        code, out = run_cli(["artin", str(path), "--certify", str(out_path)], capsys)
        assert code == 0
        cert = certificate_from_json(out_path.read_text())
        assert check_certificate(cert).valid


class TestCoxeterCommand:
    def test_hexagon(self, tmp_path, capsys):
        path = tmp_path / "hex.graph"
        path.write_text(HEX_GRAPH)
        code, out = run_cli(["coxeter", str(path)], capsys)
        assert code == 0
        assert "rg=1/2 betti1=1/2 trace_sum=1/2 OK" in out

    def test_k4_fails_hypothesis_exit_3(self, tmp_path, capsys):
        path = tmp_path / "k4.graph"
        path.write_text(K4_GRAPH)
        code, out = run_cli(["coxeter", str(path)], capsys)
        assert code == 3
        assert "girth(3) < 6; nonplanar=false" in out

    def test_single_edge_label_4(self, tmp_path, capsys):
        path = tmp_path / "edge.graph"
        path.write_text("vertex a\nvertex b\nedge a b 4\n")
        code, out = run_cli(["coxeter", str(path)], capsys)
        assert code == 0
        assert "rg=-1/8" in out

    def test_trace_flag(self, tmp_path, capsys):
        path = tmp_path / "hex.graph"
        path.write_text(HEX_GRAPH)
        trace_path = tmp_path / "trace.json"
        code, _ = run_cli(["coxeter", str(path), "--trace", str(trace_path)], capsys)
        assert code == 0
        trace = trace_from_json(trace_path.read_text())
        assert trace.total() == Fraction(1, 2)


class TestExprCommand:
    def test_sl2z_amalgam(self, tmp_path, capsys):
        path = tmp_path / "e.expr"
        path.write_text("(amalgam-finite (cyclic 6) (cyclic 4) 2)\n")
        code, out = run_cli(["expr", str(path)], capsys)
        assert code == 0
        assert "cost=13/12 rg=1/12 betti1=1/12" in out

    def test_psl2z(self, tmp_path, capsys):
        path = tmp_path / "e.expr"
        path.write_text("(amalgam-finite (cyclic 2) (cyclic 3) 1)\n")
        code, out = run_cli(["expr", str(path)], capsys)
        assert code == 0
        assert "rg=1/6" in out

    def test_generation_unknown(self, tmp_path, capsys):
        path = tmp_path / "e.expr"
        path.write_text('(generation (free 2) (free 3) "declared")\n')
        code, out = run_cli(["expr", str(path)], capsys)
        assert code == 0
        assert "cost=unknown(" in out and "price 1" in out

    def test_parse_error_exit_2(self, tmp_path, capsys):
        path = tmp_path / "e.expr"
        path.write_text("(cyclic 1)\n")
        code, out = run_cli(["expr", str(path)], capsys)
        assert code == 2


class TestCertifyCommand:
    def test_sl2z(self, tmp_path, capsys, monkeypatch):
        monkeypatch.chdir(tmp_path)
        code, out = run_cli(["certify", "SL2Z"], capsys)
        assert code == 0
        assert "valid=true assumptions=0 cost=13/12" in out

    def test_mcg_2(self, tmp_path, capsys):
        out_path = tmp_path / "mcg2.json"
        code, out = run_cli(["certify", "MCG", "2", "--out", str(out_path)], capsys)
        assert code == 0
        assert "valid=true assumptions=4" in out

    def test_disconnected_graph_redirects(self, tmp_path, capsys):
        path = tmp_path / "two.graph"
        path.write_text("vertex a\nvertex b\n")
        code, out = run_cli(["certify", str(path)], capsys)
        assert code == 2
        assert "use the artin command for multi-component graphs" in out

    def test_connected_graph_certificate(self, tmp_path, capsys):
        path = tmp_path / "b4.graph"
        path.write_text(B4_GRAPH)
        out_path = tmp_path / "b4.json"
        code, out = run_cli(["certify", str(path), "--out", str(out_path)], capsys)
        assert code == 0
        assert "valid=true assumptions=0 cost=1" in out

    def test_out_of_range_param(self, capsys):
        code, out = run_cli(["certify", "MCG", "1"], capsys)
        assert code == 2


class TestVerifyCommand:
    def test_sl2z_chain(self, capsys):
        code, out = run_cli(["verify", "SL2Z", "--mod", "3,4,5"], capsys)
        assert code == 0
        assert "24,3,3,1/12,1/12" in out
        assert "48,5,5,1/12,1/12" in out
        assert "120,11,11,1/12,1/12" in out
        assert "matches symbolic 1/12" in out

    def test_braid3_abelian_kill(self, capsys):
        code, out = run_cli(["verify", "braid3", "--abelian-kill", "2,6,24"], capsys)
        assert code == 0
        assert "symbolic target 0" in out

    def test_low_index(self, capsys):
        code, out = run_cli(["verify", "dihedral-inf", "--low-index", "4"], capsys)
        assert code == 0
        assert "symbolic" in out

    def test_dump_presentation(self, capsys):
        code, out = run_cli(["verify", "SL2Z", "--dump-presentation"], capsys)
        assert code == 0
        assert "gens: a b" in out
        assert "rel: a a B B B" in out

    def test_requires_exactly_one_chain_flag(self, capsys):
        code, out = run_cli(["verify", "SL2Z"], capsys)
        assert code == 2
        code, out = run_cli(["verify", "SL2Z", "--mod", "3", "--low-index", "2"], capsys)
        assert code == 2

    def test_mod_rejected_for_other_targets(self, capsys):
        code, out = run_cli(["verify", "braid3", "--mod", "3"], capsys)
        assert code == 2

    def test_coset_limit_exceeded_exits_5(self, capsys):
        code, out = run_cli(
            ["verify", "SL2Z", "--mod", "5", "--coset-limit", "50"], capsys)
        assert code == 5
        assert "inconclusive" in out

    def test_presentation_file_target(self, tmp_path, capsys):
        path = tmp_path / "b3.pres"
        path.write_text("gens: x y\nrel: x y x Y X Y\n")
        code, out = run_cli(["verify", str(path), "--abelian-kill", "1,2"], capsys)
        assert code == 0
        assert "symbolic value unknown" in out

    def test_csv_file_round_trips(self, tmp_path, capsys):
        csv_path = tmp_path / "out.csv"
        code, out = run_cli(
            ["verify", "SL2Z", "--mod", "3", "--csv", str(csv_path)], capsys)
        assert code == 0
        lines = csv_path.read_text().strip().split("\n")
        assert lines[0] == "index,d_lower,d_upper,r_lower,r_upper"
        index, dl, du, rl, ru = lines[1].split(",")
        assert Fraction(rl) == Fraction(1, 12) and Fraction(ru) == Fraction(1, 12)


class TestDeterminism:
    def test_byte_identical_across_processes(self, tmp_path):
        path = tmp_path / "b4.graph"
        path.write_text(B4_GRAPH)
        outs = []
        for seed in ("0", "1"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run(
                [sys.executable, "-m", "rgcost.cli", "--no-timestamp",
                 "artin", str(path)],
                capture_output=True, text=True, env=env, check=True)
            outs.append(proc.stdout)
        assert outs[0] == outs[1]

    def test_verify_deterministic(self, capsys):
        _, out1 = run_cli(["verify", "PSL2Z", "--mod", "3,5"], capsys)
        _, out2 = run_cli(["verify", "PSL2Z", "--mod", "3,5"], capsys)
        assert out1 == out2

    def test_timestamp_only_difference(self, tmp_path, capsys):
        path = tmp_path / "b4.graph"
        path.write_text(B4_GRAPH)
        code1 = main(["artin", str(path)])
        out1 = capsys.readouterr().out
        code2 = main(["--no-timestamp", "artin", str(path)])
        out2 = capsys.readouterr().out
        assert code1 == code2 == 0
        assert any(l.startswith("# generated") for l in out1.split("\n"))
        results1 = [l for l in out1.split("\n") if not l.startswith("#")]
        results2 = [l for l in out2.split("\n") if not l.startswith("#")]
        assert results1 == results2
