import csv
import json
import subprocess
import sys

import pytest
from fractions import Fraction

from intcheb import Poly
from intcheb.cli import run_command
from intcheb.plot import emit_plot, render_svg

x, y = Poly.var(0, 2), Poly.var(1, 2)
C5 = x * y * (y - 1) * (x - 1) * (x - y)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


@pytest.fixture
def files(tmp_path):
    f = {
        "unit": write(tmp_path, "unit.json", {"type": "box", "bounds": [["0", "1"]]}),
        "square": write(tmp_path, "sq.json", {"type": "box", "bounds": [["0", "1"], ["0", "1"]]}),
        "pd": write(tmp_path, "pd.json", {"type": "polydisk", "radii": ["1/2", "1/3"]}),
        "c5": write(tmp_path, "c5.json", C5.to_json_obj()),
        "lat5": write(tmp_path, "lat5.json", [{"coeffs": ["1", "-5", "5"], "coordinate": 1, "irreducible": True}]),
        "lat01": write(
            tmp_path,
            "lat01.json",
            [
                {"coeffs": ["0", "1"], "coordinate": 1, "irreducible": True},
                {"coeffs": ["-1", "1"], "coordinate": 1, "irreducible": True},
                {"coeffs": ["0", "1"], "coordinate": 2, "irreducible": True},
                {"coeffs": ["-1", "1"], "coordinate": 2, "irreducible": True},
            ],
        ),
        "bad": write(tmp_path, "bad.json", "{bad"),
    }
    f["dir"] = tmp_path
    return f


def run(argv, capsys):
    code = run_command(argv)
    return code, capsys.readouterr().out


def test_search_polydisk(files, capsys):
    code, out = run(["search", "--region", files["pd"], "--degree", "4"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["norm"]["upper"] == "1/81" and obj["certified"]
    assert Poly.from_json_obj(obj["coeffs"]) == y**4


def test_sequence_csv(files, capsys, tmp_path):
    svg = tmp_path / "seq.svg"
    code, out = run(["sequence", "--region", files["unit"], "--nmax", "2", "--plot", str(svg)], capsys)
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["n", "norm", "root", "strategy", "certified"]
    assert rows[1] == ["1", "1", "1", "exhaustive", "yes"]
    assert rows[2] == ["2", "1/4", "0.5", "exhaustive", "yes"]
    assert svg.read_text().startswith("<svg")


def test_fekete_and_tdiam(files, capsys):
    code, out = run(["fekete", "--region", files["unit"], "--degree", "2", "--seed", "0"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["h_n"] == 3 and obj["l_n"] == 3
    assert sorted(obj["points"], key=lambda p: Fraction(p[0])) == [["0"], ["1/2"], ["1"]]
    code, out = run(["tdiam", "--region", files["unit"], "--nmax", "3", "--seed", "0"], capsys)
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["n", "h_n", "l_n", "log_abs_V", "diam_estimate"]
    assert [r[0] for r in rows[1:]] == ["1", "2", "3"]
    assert rows[1][4] == "1"


def test_certify_command(files, capsys, tmp_path):
    p = write(tmp_path, "p.json", Poly.from_coeffs([-1, 2]).to_json_obj())
    code, out = run(["certify", "--poly", p, "--lattice", files["lat5"], "--region", files["unit"], "--degree", "1"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["N"]["value"] == "-1"
    assert obj["finite_lower_bound"]["exact"] == "5^(-1/2)"
    code, out = run(["certify", "--poly", files["c5"], "--lattice", files["lat01"]], capsys)
    obj = json.loads(out)
    assert obj["N"]["value"] == "0"
    assert all(v["verdict"] == "vanishes" for v in obj["vanishing"])


def test_verify_claims(files, capsys, tmp_path):
    claims = {
        "restriction": [{"line": ["1", "-1"], "equals": Poly.from_coeffs([0, 0, -1, 4, -5, 2]).to_json_obj()}],
        "divisible_by": [f.to_json_obj() for f in (x, y, x - 1, y - 1, x - y)],
        "not_divisible_by": [(1 - x - y).to_json_obj()],
        "norm": {"upper": "1/50", "lower": "1/100"},
    }
    c = write(tmp_path, "claims.json", claims)
    code, out = run(["verify", "--region", files["square"], "--poly", files["c5"], "--claims", c], capsys)
    assert code == 0 and json.loads(out)["all_pass"]
    bad = write(tmp_path, "bad_claims.json", {"norm": {"upper": "1/100"}})
    code, out = run(["verify", "--region", files["square"], "--poly", files["c5"], "--claims", bad], capsys)
    assert code == 1 and not json.loads(out)["all_pass"]


def test_bounds_report(files, capsys):
    code, out = run(["bounds", "--region", files["unit"], "--nmax", "2", "--lattice", files["lat5"]], capsys)
    assert code == 0
    rep = json.loads(out)
    row1 = rep["table"][0]
    assert row1["upper"] == "1" and row1["lower"] == "1"  # exhaustive optimum beats 5^(-1/2)
    assert rep["hilbert_fekete_bound"]["estimate"] is True
    for r in rep["table"]:
        if r["lower"] is not None:
            assert Fraction(r["lower"]) <= Fraction(r["upper"])


def test_exit_codes(files, capsys):
    assert run(["search", "--region", files["bad"], "--degree", "2"], capsys)[0] == 2
    assert run(["search", "--region", files["unit"].replace("unit", "missing"), "--degree", "2"], capsys)[0] == 2
    assert run(["search", "--region", files["square"], "--degree", "6", "--strategy", "exhaustive"], capsys)[0] == 3
    # a norm claim left unresolved by the subdivision budget is exit 4, a refuted one exit 1
    c5 = files["c5"]
    tight = write(files["dir"], "tight.json", {"norm": {"upper": "17888543/1000000000"}})
    argv = ["verify", "--region", files["square"], "--poly", c5, "--claims", tight, "--budget", "3", "--tol", "1e-30"]
    code, out = run(argv, capsys)
    assert code == 4 and json.loads(out)["converged"] is False
    low = write(files["dir"], "low.json", {"norm": {"upper": "1/1000"}})
    argv = ["verify", "--region", files["square"], "--poly", c5, "--claims", low, "--budget", "20", "--tol", "1e-30"]
    assert run(argv, capsys)[0] == 1
    malformed = write(files["dir"], "neg.json", {"type": "polydisk", "radii": ["-1"]})
    assert run(["search", "--region", malformed, "--degree", "1"], capsys)[0] == 2


def test_deterministic_byte_identical(files, tmp_path):
    outs = []
    for i in range(2):
        a, b = tmp_path / f"t{i}.csv", tmp_path / f"t{i}.svg"
        cmd = [sys.executable, "-m", "intcheb.cli", "tdiam", "--region", files["square"], "--nmax", "3",
               "--seed", "4", "--out", str(a), "--plot", str(b)]
        assert subprocess.run(cmd, check=False).returncode == 0
        outs.append((a.read_bytes(), b.read_bytes()))
    assert outs[0] == outs[1]


def test_plot_errors_and_determinism(tmp_path):
    with pytest.raises(ValueError):
        render_svg([])
    s = [(1, 1.0), (2, 0.5), (3, 0.45)]
    emit_plot(s, tmp_path / "a.svg")
    emit_plot(s, tmp_path / "b.svg")
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
