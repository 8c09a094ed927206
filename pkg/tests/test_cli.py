import json

import pytest
from conftest import endos, modules
from hypothesis import given

from affine_line import cli, serial
from affine_line.derived import ev_alpha_derived
from affine_line.fincat import arrow, chain, comma_square, inclusion, poset, sieve_cosieve
from affine_line.modcat import FpModule, RingMap, iso_test
from affine_line.suites import OUT_ENV


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_arg(obj) -> str:
    return json.dumps(obj)


def module_arg(*rels, ring=("t",)):
    M = FpModule.from_relations(ring, len(rels), [list(r) for r in rels])
    return as_arg(serial.fpmodule_to_json(M))


def endo_arg(rows):
    return as_arg({"dim": len(rows), "matrix": [[str(x) for x in r] for r in rows]})


def bundle(u):
    cats = {u.source.name: u.source.to_json(), u.target.name: u.target.to_json()}
    return as_arg({"categories": cats, "functor": serial.functor_to_json(u, u.source.name, u.target.name)})


@pytest.fixture(autouse=True)
def no_env_out(monkeypatch):
    monkeypatch.delenv(OUT_ENV, raising=False)


# -- commands ----------------------------------------------------------------


def test_evalpha_at_zero(capsys):
    code, out, _ = run(capsys, "mod", "evalpha", "--module", module_arg(["t^2"]), "--alpha", "0")
    assert code == 0
    assert json.loads(out)["result"]["canonical"] == "Q"


def test_evalpha_routes_agree(capsys):
    results = []
    for route in ("substitution", "tensor"):
        _, out, _ = run(capsys, "mod", "evalpha", "--module", module_arg(["t^2 - 1"]), "--alpha", "s^2", "--ring", "s", "--route", route)
        results.append(json.loads(out)["result"]["canonical"])
    assert results[0] == results[1] == "Q[s]/(s^4 - 1)"


def test_tensor(capsys):
    code, out, _ = run(capsys, "mod", "tensor", "--m", module_arg(["(t - 1)^2"]), "--n", module_arg(["t^2 - 1"]))
    assert code == 0 and json.loads(out)["result"]["canonical"] == "Q[t]/(t - 1)"


def test_iso_exit_codes(capsys):
    assert run(capsys, "mod", "iso", "--m", module_arg(["t", "0"], ["0", "t - 1"]), "--n", module_arg(["t^2 - t"]))[0] == 0
    code, out, _ = run(capsys, "mod", "iso", "--m", module_arg(["t"]), "--n", module_arg(["t - 1"]))
    assert code == 1 and json.loads(out)["isomorphic"] is False


def test_hom(capsys):
    code, out, _ = run(capsys, "mod", "hom", "--m", endo_arg([[1, 1], [0, 1]]), "--n", endo_arg([[1]]))
    assert code == 0 and json.loads(out)["canonical"] == "Q[t]/(t - 1)"


def test_derived_ev0(capsys):
    code, out, _ = run(capsys, "derived", "ev0", "--endo", endo_arg([[0, 1], [0, 0]]))
    assert code == 0 and json.loads(out)["homology"] == {"0": 1, "1": 1}


def test_fincat_exact_comma_square(capsys):
    u = inclusion(poset([0], lambda a, b: True, name="P"), arrow(), name="u")
    code, out, err = run(capsys, "fincat", "exact", "--functor", bundle(u), "--object", "1")
    assert code == 0 and json.loads(out)["report"]["verdict"] == "Certified"
    assert "verdict: Certified" in err
    code, _, err = run(capsys, "fincat", "exact", "--functor", bundle(u), "--object", "0", "--quiet")
    assert code == 0 and err == ""


def test_fincat_exact_square_file(capsys, tmp_path):
    path = tmp_path / "sq.json"
    u = inclusion(poset([0], lambda a, b: True, name="P"), chain(2), name="u")
    path.write_text(serial.dumps(serial.square_to_json(comma_square(u, 2))))
    code, out, _ = run(capsys, "fincat", "exact", "--square", str(path), "--quiet")
    assert code == 0 and json.loads(out)["report"]["verdict"] == "Certified"


def test_fincat_sieve_and_comma(capsys):
    u = inclusion(poset([0], lambda a, b: True, name="P"), arrow(), name="u")
    code, out, _ = run(capsys, "fincat", "sieve", "--functor", bundle(u))
    assert code == 0 and json.loads(out)["kind"] == sieve_cosieve(u).kind.value
    code, out, _ = run(capsys, "fincat", "comma", "--functor", bundle(u), "--object", "1")
    assert len(json.loads(out)["category"]["objects"]) == 1


def test_fincat_trunc(capsys):
    code, out, _ = run(capsys, "fincat", "trunc", "--trunc-k", "3", "--squares", "--max-gamma", "1")
    data = json.loads(out)
    assert code == 0 and set(data["squares"]) == {"ev1", "plus", "fold"}


def test_univ_commands(capsys):
    code, out, _ = run(capsys, "univ", "type", "--image", "s^2+1")
    assert code == 0 and json.loads(out)["type"] == "s^2 + 1"
    code, _, _ = run(capsys, "univ", "decompose", "--image", "s^2", "--module", module_arg(["t - 4"]))
    assert code == 0
    code, _, _ = run(capsys, "univ", "an", "--images", "s", "s", "--module", module_arg(["t1 - t2"], ring=("t1", "t2")))
    assert code == 0
    code, out, _ = run(capsys, "univ", "projection", "--image", "s^2", "--m", endo_arg([[4]]), "--n", endo_arg([[2]]))
    assert code == 0 and json.loads(out)["agree"] is True


def test_spec_file(capsys, tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"source": ["t"], "target": ["s"], "images": ["s^3 - s"]}))
    _, out, _ = run(capsys, "univ", "type", "--spec", str(path))
    assert json.loads(out)["type"] == "s^3 - s"


# -- errors and output -------------------------------------------------------


def test_schema_error_location(capsys):
    bad = as_arg({"ring": ["t"], "generators": 1, "relations": [["t^"]]})
    code, _, err = run(capsys, "mod", "evalpha", "--module", bad, "--alpha", "0")
    assert code == 2 and err.startswith("error: module$.relations[0][0]:")


def test_missing_field_and_file(capsys):
    code, _, err = run(capsys, "mod", "hom", "--m", as_arg({"dim": 1}), "--n", endo_arg([[1]]))
    assert code == 2 and "m$: missing field 'matrix'" in err
    code, _, err = run(capsys, "mod", "hom", "--m", "/nonexistent.json", "--n", endo_arg([[1]]))
    assert code == 2 and "no such file" in err


def test_out_dir_and_env(capsys, tmp_path, monkeypatch):
    run(capsys, "--out", str(tmp_path / "a"), "univ", "type", "--image", "s")
    assert json.loads((tmp_path / "a" / "univ-type.json").read_text())["type"] == "s"
    monkeypatch.setenv(OUT_ENV, str(tmp_path / "b"))
    run(capsys, "univ", "type", "--image", "s")
    assert (tmp_path / "b" / "univ-type.json").exists()


def test_suite_run_is_deterministic(capsys, tmp_path):
    args = ["--seed", "1", "--scale", "0.1", "--suites", "monoidal-unit,derived,universal-property"]
    for d in ("x", "y"):
        code, _, _ = run(capsys, "suite", "run", *args, "--out", str(tmp_path / d))
        assert code == 0
    for name in ("report.json", "report.txt"):
        assert (tmp_path / "x" / name).read_bytes() == (tmp_path / "y" / name).read_bytes()


def test_suite_run_honours_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_ENV, str(tmp_path))
    run(capsys, "suite", "run", "--scale", "0.05", "--suites", "derived", "--stem", "small")
    data = json.loads((tmp_path / "small.json").read_text())
    assert list(data["suites"]) == ["derived"]


# -- round trips -------------------------------------------------------------


@given(modules(max_gens=3))
def test_fpmodule_round_trip(M):
    again = serial.fpmodule_from_json(json.loads(serial.dumps(serial.fpmodule_to_json(M))))
    assert again.presentation == M.presentation and iso_test(again, M)


@given(endos(4))
def test_endopair_and_complex_round_trip(m):
    assert serial.endopair_from_json(serial.endopair_to_json(m)).endo == m.endo
    C = ev_alpha_derived(m, 1)
    assert serial.complex_from_json(serial.complex_to_json(C)).to_json() == C.to_json()


def test_spec_round_trip():
    phi = RingMap.build(("x", "y"), ("s", "u"), ["s^2 - u", "3/2"])
    assert serial.spec_from_json(serial.spec_to_json(phi)) == phi


def test_fincat_functor_square_round_trip():
    sq = comma_square(inclusion(poset([0, 1], lambda a, b: a <= b, name="P"), chain(2), name="u"), 1)
    data = serial.square_to_json(sq)
    again = serial.square_from_json(json.loads(serial.dumps(data)))
    assert serial.square_to_json(again) == data
    u = inclusion(poset([0], lambda a, b: True, name="P"), arrow(), name="u")
    cats = {"P": u.source, "[1]": u.target}
    assert serial.functor_from_json(serial.functor_to_json(u, "P", "[1]"), cats).to_json() == u.to_json()


def test_bad_category_rejected():
    data = arrow().to_json()
    data["morphisms"][0]["src"] = "nowhere"
    with pytest.raises(serial.SchemaError) as exc:
        serial.fincat_from_json(data)
    assert exc.value.location == "$.morphisms[0].src"
