import json
import subprocess
import sys

from collar_algebra import cli, freeprod, groupring, perm, smallgroups, thompson, tower
from collar_algebra.cli import canonical, main, run
from collar_algebra.freeprod import FPElement


def test_tower_iso_example(capsys):
    assert main(["tower", "iso", "--a", "2,3,5", "--b", "2,3,5", "--json"]) == 0
    assert capsys.readouterr().out.strip() == '{"iso":true}'


def test_pro_distinct_example(capsys):
    assert main(["tower", "pro-distinct", "--a", "2,3,5", "--b", "2,5,7", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"distinct": True, "witness": 3}


def test_derived_series_example():
    code, out = run(["perm", "derived-series", "--group", "S3"])
    assert code == 0 and out["orders"] == [6, 3, 1]


def test_decision_false_exits_one():
    assert run(["tower", "iso", "--a", "2,3", "--b", "2,5"])[0] == 1
    code, out = run(["tower", "epi", "--a", "2,3", "--b", "2,7"])
    assert code == 1 and out == {"epi": False, "missing": 7}
    assert run(["tower", "pro-distinct", "--a", "2,3", "--b", "2,3"])[0] == 1


def test_input_errors_exit_two(tmp_path, capsys):
    assert run(["tower", "iso", "--a", "2,4", "--b", "2,3"])[0] == 2
    assert run(["tower", "iso", "--a", "3,2", "--b", "2,3"])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run(["perm", "derived-series", "--input", str(bad)])
    assert code == 2 and "cannot read JSON" in out["error"]
    assert run(["perm", "derived-series", "--input", str(tmp_path / "missing.json")])[0] == 2
    assert run(["nonsense"])[0] == 2
    capsys.readouterr()
    assert main(["tower", "iso", "--a", "x", "--b", "2"]) == 2
    assert "error" in json.loads(capsys.readouterr().err)


def test_dual_check_on_non_acyclic_input_exits_two():
    data = {"group": "Z1", "d2": [[[2]]]}
    assert run(["groupring", "dual-check", "--input", json.dumps(data)])[0] == 2


def test_thin_wrappers_match_library():
    _, out = run(["tower", "ladder-search", "--a", "2,3,5,7,11", "--b", "2,3,5,7,13", "--depth", "4"])
    assert canonical(out) == canonical(tower.ladder_search((2, 3, 5, 7, 11), (2, 3, 5, 7, 13), 4, verify=True))
    _, out = run(["tower", "iso", "--a", "2,3", "--b", "2,3,5"])
    assert canonical(out) == canonical(tower.iso_report((2, 3), (2, 3, 5)))
    _, out = run(["thompson", "order", "--prime", "7"])
    assert out["order"] == thompson.order(thompson.element_of_order(7)) == 7
    g = dict(smallgroups.fixture_groups())["S3"]
    _, out = run(["perm", "perfect-core", "--input", json.dumps(perm.group_to_json(g))])
    assert out["perfect_core_order"] == perm.perfect_core(g).order == 1


def test_tower_order_and_epi():
    code, out = run(["tower", "order", "--a", "2,3"])
    assert code == 0 and out["order"] == 6 and out["necessary"] == {"2": True, "3": True}
    code, out = run(["tower", "epi", "--a", "2,3,5", "--b", "3"])
    assert code == 0 and out["map"]["positions"] == [1]


def test_thompson_multiply():
    a, b = thompson.element_of_order(3), thompson.A
    data = {"a": thompson.to_json(a), "b": thompson.to_json(b)}
    code, out = run(["thompson", "multiply", "--input", json.dumps(data)])
    assert code == 0 and thompson.from_json(out["product"]) == a * b


def test_freeprod_verbs():
    word = freeprod.to_json(FPElement.letter(2, thompson.C))
    code, out = run(["freeprod", "partial-conj", "--prime", "3", "--input", json.dumps({"word": word})])
    assert code == 0 and len(out["image"]) == 3
    code, out = run(["freeprod", "pattern", "--input", json.dumps({"factor_map": [1, 0]})])
    assert code == 0 and out["classification"] == "permutation"


def test_presentation_verbs():
    sd = {"k_gens": ["a"], "q_gens": ["b"], "action": {"b": {"a": "a^-1"}}, "inverse_action": {"b": {"a": "a^-1"}}}
    code, out = run(["presentation", "normal-form", "--input", json.dumps(dict(sd, word="b a"))])
    assert code == 0 and out["normal_form"] == [["a", -1], ["b", 1]]
    code, out = run(["presentation", "semidirect", "--input", json.dumps(sd)])
    assert out["presentation"]["relators"] == [[["b", 1], ["a", 1], ["b", -1], ["a", 1]]]
    code, out = run(["presentation", "gt-tower", "--j", "2"])
    assert code == 0 and out["epi_ok"] and out["presentation"]["generators"] == ["t0", "t1", "t2"]
    missing = dict(sd, inverse_action={}, word="b^-1 a")
    assert run(["presentation", "normal-form", "--input", json.dumps(missing)])[0] == 2


def test_groupring_verbs():
    code, out = run(["groupring", "kernel-split", "--group", "S3", "--seed", "4"])
    assert code == 0 and out["ok"]
    code, out = run(["groupring", "lift", "--input", json.dumps({"d": [[1, -1]], "group": "Z3"})])
    assert code == 0 and out["upstairs_rank"] == 3
    code, out = run(["groupring", "chain-check", "--input", json.dumps({"group": "Z2", "maps": [[[[1, -1]]]]})])
    assert code == 1 and out["homology"] == {"0": [0], "1": [0]}
    code, out = run(["groupring", "dual-check", "--input", json.dumps({"group": "S3", "d2": [[[1, 0, 0, 0, 0, 0]]]})])
    assert code == 0 and out["ok"]
    assert groupring.named_group("S3").order == 6


def test_perm_extension_check():
    code, out = run(["perm", "extension-check", "--group", "S4"])
    assert code == 0 and out["ok"] and out["instances"] == 4


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "collar_algebra.cli", "tower", "iso", "--a", "2", "--b", "2", "--json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == '{"iso":true}'
    assert cli.EXIT_VERIFY == 3
