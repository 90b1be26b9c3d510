import pytest

from happycoloring import io
from happycoloring.cli import run

P3_TEXT = "p happy 3 2 2\ne 1 2\ne 2 3\nc 1 1\nc 3 2\n"
C4_RMIS = "p rmis 4 4 2 2\ne 1 2\ne 3 4\ne 1 3\ne 2 4\nq 1 1\nq 1 2\nq 2 3\nq 2 4\n"


@pytest.fixture
def p3_file(tmp_path):
    path = tmp_path / "p3.happy"
    path.write_text(P3_TEXT)
    return str(path)


def verdict(capsys):
    return capsys.readouterr().out.strip().splitlines()[-1]


@pytest.mark.parametrize("k,code,line", [(1, 0, "VERDICT yes OPT 1"), (2, 1, "VERDICT no OPT 1")])
def test_solve_mhv(p3_file, capsys, k, code, line):
    assert run(["solve-mhv", p3_file, "-k", str(k)]) == code
    assert verdict(capsys) == line


def test_solve_mhv_cluster_fpt_with_witness(p3_file, tmp_path, capsys):
    wit = tmp_path / "w.txt"
    assert run(["solve-mhv", p3_file, "-k", "1", "--algo", "cluster-fpt", "--witness", str(wit)]) == 0
    assert verdict(capsys) == "VERDICT yes OPT 1"
    assert wit.read_text().splitlines()[0] == "c 1 1"


def test_solve_mhe(p3_file, capsys):
    assert run(["solve-mhe", p3_file, "-k", "1"]) == 0
    assert verdict(capsys) == "VERDICT yes OPT 1"


def test_to_gmc_then_solve(p3_file, tmp_path, capsys):
    out = tmp_path / "p3.gmc"
    assert run(["to-gmc", p3_file, "-k", "1", "-o", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# vertex map")
    assert run(["solve-gmc", str(out)]) == 0
    assert verdict(capsys) == "VERDICT yes OPT 1"


def test_to_gmc_trivial_no(p3_file, capsys):
    assert run(["to-gmc", p3_file, "-k", "3"]) == 1


@pytest.mark.parametrize("mode", ["linear", "cubic", "gmc-compress"])
def test_kernelize(p3_file, tmp_path, capsys, mode):
    out = tmp_path / "k.happy"
    assert run(["kernelize", p3_file, "-k", "1", "--mode", mode, "-o", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# k ")
    k = int(text.splitlines()[0].split()[2])
    assert run(["solve-mhv", str(out), "-k", str(k)]) == 0


def test_gen_rmis_chain(tmp_path, capsys):
    src = tmp_path / "c4.rmis"
    src.write_text(C4_RMIS)
    out = tmp_path / "t.happy"
    assert run(["gen", "rmis-mhe", str(src), "--variant", "triangle", "-o", str(out)]) == 0
    assert out.read_text().startswith("# k 84\n")
    assert "k' = 84" in capsys.readouterr().err
    assert run(["gen", "rmis-mhv", str(src), "-o", str(out)]) == 0
    assert run(["solve-mhv", str(out), "-k", "4"]) == 0


def test_gen_random_kinds(tmp_path, capsys):
    for kind in ("random-rmis", "random-crbds", "random-wexpr"):
        out = tmp_path / kind
        assert run(["gen", kind, "--seed", "3", "-o", str(out)]) == 0
        fmt = {"random-rmis": "rmis", "random-crbds": "crbds", "random-wexpr": "wexpr"}[kind]
        io.PARSERS[fmt](out.read_text())


def test_gen_bad_variant(capsys):
    assert run(["gen", "rmis-mhv", "x", "--variant", "star"]) == 2


def test_solve_nmc(tmp_path, capsys):
    expr = tmp_path / "e.wexpr"
    assert run(["gen", "random-wexpr", "--n", "6", "--w", "2", "--seed", "1", "-o", str(expr)]) == 0
    capsys.readouterr()
    code = run(["solve-nmc", "--expr", str(expr), "--terminals", "1,6", "-k", "6", "--check"])
    assert code == 0
    assert verdict(capsys).startswith("VERDICT yes OPT ")


def test_solve_nmc_inseparable(tmp_path, capsys):
    expr = tmp_path / "e.wexpr"
    expr.write_text(io.serialize_wexpr(io.parse_wexpr(_edge_wexpr())))
    assert run(["solve-nmc", "--expr", str(expr), "--terminals", "1 2", "-k", "3"]) == 1
    assert verdict(capsys) == "VERDICT no OPT inf"


def _edge_wexpr():
    from happycoloring.cwexpr import Introduce, Join, Union

    return io.serialize_wexpr(Join(1, 2, Union(Introduce(1, 1), Introduce(2, 2))))


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.happy"
    bad.write_text("p happy 2 1 1\ne 1 3\n")
    assert run(["solve-mhv", str(bad), "-k", "1"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file_and_usage(capsys):
    assert run(["solve-mhv", "/nonexistent/file", "-k", "1"]) == 2
    assert run(["solve-mhv"]) == 2
    assert run(["nope"]) == 2


def test_budget_exit(tmp_path, capsys):
    big = tmp_path / "big.happy"
    big.write_text("p happy 20 0 4\n")
    assert run(["solve-mhv", str(big), "-k", "1", "--budget", "1000"]) == 3
    assert "too large for oracle" in capsys.readouterr().err


def test_verify_subcommand(capsys):
    assert run(["verify", "cluster-fpt", "--seeds", "0:5"]) == 0
    assert capsys.readouterr().out.startswith("PASS cluster-fpt")


def test_bench(capsys):
    assert run(["bench", "--seeds", "2"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3
