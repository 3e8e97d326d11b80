import json
import subprocess
import sys

from qwitt.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_classify(capsys):
    got = run_json(capsys, "classify", '{"name":"ZP_2"}')
    assert got == {"symmetry": 1, "height": 3, "complement": []}
    got = run_json(capsys, "classify", '{"name":"ZP"}')
    assert got["height"] == "inf"
    got = run_json(capsys, "classify", '{"name":"Q-","sum":[5]}')
    assert got == {"symmetry": -1, "height": 1, "complement": [5]}


def test_witt_group(capsys):
    got = run_json(capsys, "witt-group", '{"name":"ZL_2","sum":[2]}')
    assert got["group"] == [2]
    got = run_json(capsys, "witt-group", '{"name":"ZP_3"}')
    assert got["group"] == [4, 0]
    assert got["generators"] == ["sigma*", "rho_3*"]


def test_tensor(capsys):
    got = run_json(capsys, "tensor", '{"G":[4],"Q":"Q^+"}')
    assert got == {"group": [8]}
    got = run_json(capsys, "tensor", '{"G":[2,3],"Q":"Q-"}')
    assert got == {"group": [2]}


def test_gw_group(capsys):
    got = run_json(capsys, "gw-group", '{"name":"Q^-"}')
    assert got["group"] == [0]
    got = run_json(capsys, "gw-group", '{"name":"Q-"}')
    assert got["group"] == [2, 0]


def test_split(capsys):
    payload = '{"carrier":{"orders":[0,3]},"h":[1,0],"pOne":[2,1]}'
    got = run_json(capsys, "split", payload)
    assert got["standard"] == "Q^+"
    assert got["complement"] == [3]


def test_witt_class_and_metabolic(capsys):
    payload = '{"param":"Q-","form":{"lambda":[[0,1],[-1,0]],"mu":[[1],[1]]}}'
    got = run_json(capsys, "witt-class", payload)
    assert got == {
        "coords": [1],
        "generators": ["c*"],
        "orders": [2],
        "zero": False,
    }
    payload = '{"param":"ZL_2","form":{"lambda":[[0,1],[-1,0]],"mu":[[2],[2]]}}'
    got = run_json(capsys, "metabolic", payload, "--bound", "5")
    assert got["status"] == "no"
    payload = '{"param":"Q+","form":{"lambda":[[0,1],[1,0]],"mu":[[0],[0]]}}'
    got = run_json(capsys, "metabolic", payload)
    assert got["status"] == "found"
    assert got["lagrangian"] == [[0, 1]] or got["lagrangian"] == [[1, 0]]


def test_isometric_and_absorbing(capsys):
    payload = json.dumps(
        {
            "param": "Q^+",
            "form1": {"lambda": [[0, 1], [1, 0]], "mu": [[0], [0]]},
            "form2": {"lambda": [[0, 1], [1, 0]], "mu": [[0], [0]]},
        }
    )
    got = run_json(capsys, "isometric", payload)
    assert got["status"] == "found"

    payload = json.dumps(
        {
            "param": "Q^+",
            "form": {"lambda": [[1, 0], [0, -1]], "mu": [[1], [-1]]},
        }
    )
    got = run_json(capsys, "absorbing", payload)
    assert got == {"absorbing": True, "indefinite": True, "full": True}


def test_embed(capsys):
    payload = json.dumps(
        {
            "param": "Q-",
            "form": {"lambda": [[0, 1], [-1, 0]], "mu": [[0], [0]]},
            "eta": {"lambda": [[0, 1], [-1, 0]], "mu": [[0], [1]]},
        }
    )
    got = run_json(capsys, "embed", payload)
    assert len(got["matrix"]) == 6 and got["copies"] == 3


def test_induced_map(capsys):
    payload = json.dumps(
        {
            "source": "Q+",
            "target": "ZP",
            "matrix": [[2], [-1]],
        }
    )
    got = run_json(capsys, "induced-map", payload)
    assert got["matrix"] == [[8], [1]]


def test_exit_codes(capsys):
    code, _, err = run_cli(capsys, "classify", "not json")
    assert code == 3
    code, _, err = run_cli(capsys, "tensor", '{"G":[4]}')
    assert code == 3
    code, _, err = run_cli(capsys, "classify", '{"carrier":{"orders":[0]},"h":[1],"pOne":[1]}')
    assert code == 2
    assert "h(p(1))" in err  # the violated axiom is named


def test_output_deterministic(capsys):
    a = run_cli(capsys, "witt-group", '{"name":"ZP_2"}')
    b = run_cli(capsys, "witt-group", '{"name":"ZP_2"}')
    assert a == b


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qwitt.cli", "classify", '{"name":"Q+"}'],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {
        "complement": [],
        "height": 0,
        "symmetry": 1,
    }
