import subprocess
import sys

from fiberfaces.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and "tri v1" in out


def test_module_entry():
    r = subprocess.run([sys.executable, "-m", "fiberfaces", "--version"], capture_output=True,
                       text=True)
    assert r.returncode == 0 and r.stdout.startswith("fiberfaces")


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "fiber", "--tri", "nosuch", "--class", "1")[0] == 1
    assert run(capsys, "fiber", "--tri", "figure8", "--class", "1,2")[0] == 1
    assert run(capsys, "fiber", "--tri", "figure8", "--class", "0")[0] == 1
    assert run(capsys, "fiber", "--tri", "figure8", "--class", "x")[0] == 1
    bad = tmp_path / "bad.tri"
    bad.write_text("tri v1\ntets 1\nglue 0 0 0 1 1023\n")
    assert run(capsys, "fiber", "--tri", str(bad), "--class", "1")[0] == 1
    pres = tmp_path / "bad.pres"
    pres.write_text("rel ab\n")
    assert run(capsys, "alex", "--pres", str(pres))[0] == 1
    assert run(capsys, "tower", "--n", "0")[0] == 1
    assert run(capsys, "primes", "--limit", "1")[0] == 1
    assert run(capsys, "--budget", "-1", "tower", "--n", "1")[0] == 1
    assert run(capsys, "bogus")[0] == 1
    assert run(capsys)[0] == 1


def test_fiber_figure8(capsys):
    code, out, _ = run(capsys, "fiber", "--tri", "figure8", "--class", "1")
    assert code == 0
    assert "surface v1" in out and "verdict Fibers" in out and "chi -1" in out


def test_fiber_separating_is_not_an_error(capsys):
    code, out, _ = run(capsys, "fiber", "--tri", "t3", "--class", "2,0,0")
    assert code == 0 and "verdict Unknown" in out and "reason separating" in out


def test_alex_trefoil_and_rank_zero(capsys, tmp_path):
    p = tmp_path / "trefoil.pres"
    p.write_text("pres v1\ngens a b\nrel abaBAB\n")
    code, out, _ = run(capsys, "alex", "--pres", str(p))
    assert code == 0 and out.startswith("poly vars t") and "b1 = 1" in out
    q = tmp_path / "finite.pres"
    q.write_text("pres v1\ngens a\nrel a^5\n")
    code, out, _ = run(capsys, "alex", "--pres", str(q))
    assert code == 0 and "zero-ideal" in out


def test_covers_cyclic(capsys, tmp_path):
    p = tmp_path / "t.pres"
    p.write_text("pres v1\ngens a b\nrel abAB\n")
    code, out, _ = run(capsys, "covers", "--pres", str(p), "--cyclic", "2")
    assert code == 0 and "covers 3" in out and out.count("homology Z^2") == 4


def test_primes_and_tower(capsys):
    code, out, _ = run(capsys, "primes", "--limit", "100")
    assert code == 0 and out.splitlines()[:5] == ["13", "19", "31", "61", "73"]
    code, out, _ = run(capsys, "tower", "--n", "1")
    assert code == 0 and "d_n\t196" in out


def test_norm_ball_deterministic(capsys, tmp_path):
    argv = ["norm-ball", "--tri", "whitehead", "--classes", "1,0", "--budget", "20", "--seed", "4"]
    c1, o1, _ = run(capsys, *argv)
    c2, o2, _ = run(capsys, *argv)
    assert c1 == c2 == 0 and o1 == o2 and "search v1" in o1
    out = tmp_path / "r.txt"
    assert run(capsys, *argv, "--out", str(out))[0] == 0
    assert out.read_text() == o1


def test_norm_ball_rejects_bad_classes(capsys):
    assert run(capsys, "norm-ball", "--tri", "whitehead", "--classes", "1,0,0")[0] == 1
    assert run(capsys, "norm-ball", "--tri", "s3")[0] == 1
