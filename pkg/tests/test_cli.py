import io

from latpack.cli import run
from latpack.craig import read_basis
from latpack.exactnum import gram_det


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_density_report():
    code, out = invoke("density", "--n", "52", "--m", "6", "--l", "53", "--k", "1")
    assert code == 0
    assert "10.705" in out
    assert "n=52 m=6 l=53" in out


def test_gv_report():
    code, out = invoke("gv", "--n", "4096", "--d", "1024")
    assert code == 0
    assert "781" in out
    assert "772" in out


def test_construct_rows():
    code, out = invoke("construct", "--n", "2", "--m", "1", "--l", "3")
    assert code == 0
    assert out.splitlines() == ["3 2", "-1 1 0", "0 -1 1"]


def test_construct_verify_round_trip(tmp_path):
    path = tmp_path / "basis.txt"
    code, _ = invoke("construct", "--n", "6", "--m", "2", "--l", "7", "--out", str(path))
    assert code == 0
    with open(path) as fh:
        lat = read_basis(fh)
    assert gram_det(lat.basis) == 343
    code, out = invoke("verify", "--basis", str(path), "--bound", "4")
    assert code == 0
    assert "holds" in out
    code, out = invoke("verify", "--basis", str(path), "--bound", "5")
    assert code == 0
    assert "violated" in out and "witness" in out


def test_lift_subcommand(tmp_path):
    gen = tmp_path / "rep.txt"
    gen.write_text("2 12 1\n" + " ".join(["1"] * 12) + "\n")
    code, out = invoke("lift", "--n", "12", "--m", "1", "--l", "13", "--code", str(gen))
    assert code == 0
    assert "k=1" in out and "constructed basis rank 12" in out


def test_exit_codes():
    assert run(["nosuchcommand"], io.StringIO()) == 2
    assert run(["density", "--n", "4", "--m", "9", "--l", "5"], io.StringIO()) == 2
    assert run(["construct", "--n", "600"], io.StringIO()) == 3
    assert run(["table", "--id", "11"], io.StringIO()) == 2


def test_table_subcommand():
    code, out = invoke("table", "--id", "1")
    assert code == 0
    assert "2908.8254" in out
    code, out = invoke("table", "--id", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "table,dim,computed,stated,diff,agrees,note"


def test_compare_subcommand():
    code, out = invoke("compare", "--dim", "4096", "--value", "11529")
    assert code == 0
    assert "beats by 2.0000" in out


def test_sweep_and_pipelines():
    code, out = invoke("sweep", "--n", "100")
    assert code == 0 and "log2 center density" in out
    code, out = invoke("pipeline24", "--dim", "4104")
    assert code == 0 and "11555.3287" in out
    code, out = invoke("mwbeat", "--p", "1667")
    assert code == 0 and "8921.2677" in out and "8895.4142" in out


def test_conditional_subcommand():
    code, out = invoke(
        "conditional", "--n", "128", "--m", "4", "--l", "131",
        "--req-n", "128", "--req-k", "59", "--req-d", "32",
    )
    assert code == 0
    assert "98.3941" in out and "open" in out


def test_precision_flag():
    code, out = invoke("--precision", "6", "density", "--n", "2", "--m", "1", "--l", "3")
    assert code == 0
    assert "-1.792481" in out
