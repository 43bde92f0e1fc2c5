import copy
import json
from pathlib import Path

import pytest

from ncyorders.scenarios import (BUILTINS, OutOfRangeN, ParseError, SchemaError, UnknownScenario, builtin,
                                 hirzebruch2, load_scenario, p2_sextic, perturbed_sextic, quadric, run_scenario,
                                 scenario_from_json)

DATA = Path(__file__).resolve().parents[1] / "src" / "ncyorders" / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"

ALL = [p2_sextic(n) for n in range(3, 19)] + [quadric(), hirzebruch2(), perturbed_sextic()]


@pytest.mark.parametrize("sc", ALL, ids=lambda s: s.name)
def test_pinned_data_files_match_builtins(sc):
    assert json.loads((DATA / f"{sc.name}.json").read_text()) == sc.to_json()


@pytest.mark.parametrize("sc", ALL, ids=lambda s: s.name)
def test_json_round_trip(sc):
    again = scenario_from_json(json.loads(sc.dumps()))
    assert again.dumps() == sc.dumps()


@pytest.mark.parametrize("name", ["p2-sextic-n3", "p2-sextic-n18", "quadric", "hirzebruch2",
                                  "p2-sextic-n3-perturbed"])
def test_golden_reports(name):
    report = run_scenario(load_scenario(DATA / f"{name}.json"))
    assert report.dumps() + "\n" == (GOLDEN / f"{name}.json").read_text()


def test_file_and_builtin_give_identical_reports(tmp_path):
    path = tmp_path / "q.json"
    path.write_text(quadric().dumps())
    assert run_scenario(load_scenario(path)).dumps() == run_scenario(quadric()).dumps()


def test_builtin_lookup():
    assert builtin("p2-sextic", 5).name == "p2-sextic-n5"
    assert set(BUILTINS) == {"p2-sextic", "quadric", "hirzebruch2"}
    with pytest.raises(UnknownScenario):
        builtin("cubic")
    with pytest.raises(OutOfRangeN):
        p2_sextic(19)


def base():
    return quadric().to_json()


def test_schema_non_symmetric_gram():
    d = base()
    d["sublattice"]["gram"][0][1] = 7
    with pytest.raises(SchemaError) as exc:
        scenario_from_json(d)
    assert "gram" in exc.value.path


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d.pop("embedding"), "embedding"),
    (lambda d: d["embedding"].pop(), "embedding"),
    (lambda d: d["involution"].update(order="two"), "involution.order"),
    (lambda d: d["involution"]["matrix"][0].append(0), "involution.matrix[0]"),
    (lambda d: d.update(ambient="K4"), "ambient"),
    (lambda d: d.update(extra=1), "extra"),
    (lambda d: d["order_data"]["ramification"][0].pop("index"), "order_data.ramification[0]"),
    (lambda d: d["effective_seed"][0].__setitem__(0, True), "effective_seed[0][0]"),
])
def test_schema_paths(mutate, path):
    d = base()
    mutate(d)
    with pytest.raises(SchemaError) as exc:
        scenario_from_json(d)
    assert exc.value.path == path


def test_decimal_string_integers():
    d = base()
    d["involution"]["matrix"][0][0] = "1"
    d["sublattice"]["gram"] = [[str(x) for x in row] for row in d["sublattice"]["gram"]]
    assert scenario_from_json(d).dumps() == quadric().dumps()


def test_huge_integers_encoded_as_strings():
    d = base()
    d["ample_candidate"] = [str(10 ** 40), 0, 0, 0]
    sc = scenario_from_json(d)
    assert sc.ample_candidate[0] == 10 ** 40
    assert sc.to_json()["ample_candidate"][0] == str(10 ** 40)


def test_parse_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_scenario(p)
    with pytest.raises(ParseError):
        load_scenario(tmp_path / "missing.json")


def test_order_three_matrix_declared_order_two():
    d = {"ambient": {"gram": [[2, -1], [-1, 2]]}, "sublattice": {"gram": [[2, -1], [-1, 2]]},
         "embedding": [[1, 0], [0, 1]], "involution": {"matrix": [[0, -1], [1, -1]], "order": 2}}
    report = run_scenario(scenario_from_json(d))
    assert report.check("isometry").status == "FAIL"
    assert report.errors[0]["module"] == "action"
    assert report.errors[0]["error"] == "WrongOrder"
    assert report.check("h1").status == "SKIP"


def test_generic_ambient_scenario():
    # H + H with the swap on the first H, identity sublattice embedding
    HH = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    d = {"ambient": {"gram": HH}, "sublattice": {"gram": [[0, 1], [1, 0]]},
         "embedding": [[1, 0, 0, 0], [0, 1, 0, 0]],
         "involution": {"matrix": [[0, 1], [1, 0]], "order": 2}}
    report = run_scenario(scenario_from_json(d))
    assert report.check("extension").status == "PASS"
    assert report.sections["h1"]["group"] == "0"
    assert report.check("h1").status == "FAIL"


def test_perturbed_report():
    r = run_scenario(perturbed_sextic())
    assert r.check("embedding-form").status == "FAIL"
    assert r.check("extension").status == "FAIL"
    assert r.check("extension").detail["first_non_integral"]["value"] == "-5/2"
    assert r.check("numerically-cy").status == "SKIP"
    assert not r.passed


def test_list_cap_cross_check():
    r = run_scenario(p2_sextic(10), list_cap=1000)
    assert r.sections["orders"]["count"] == 255
    assert r.sections["orders"]["materialized"] == 255
    r = run_scenario(p2_sextic(10), list_cap=4)
    assert r.sections["orders"]["materialized"] == 4
    assert r.check("orders").status == "PASS"
