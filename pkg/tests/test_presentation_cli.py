import json
from fractions import Fraction

import pytest

from hkmult.cli import main
from hkmult.corpus import NAMES, CorpusError, corpus, corpus_entry, corpus_text
from hkmult.pipeline import PipelineConfig, reports_to_csv, reports_to_json, run_pipeline
from hkmult.presentation import PresentationError, parse_presentation
from hkmult.report import BOUND_IDS

QUADRIC = """\
hkring v1
char 5
vars x y z
rel x*y - z^2
flags homogeneous gorenstein_asserted unmixed_asserted normal_asserted
params x+y, z
"""


def test_parse_quadric_file():
    pres = parse_presentation(QUADRIC)
    assert pres.variables == ("x", "y", "z") and pres.relations == ("x*y - z^2",)
    assert pres.flags["gorenstein_asserted"] and not pres.flags["cm_asserted"]
    assert pres.parameter_ideal == ("x+y", "z")
    assert parse_presentation(pres.to_text()) == pres


@pytest.mark.parametrize("text, message, line, column", [
    (QUADRIC.replace("char 5", "char 4"), "characteristic must be prime", 2, 6),
    (QUADRIC.replace("x*y - z^2", "x*w - z^2"), "unknown identifier 'w'", 4, 7),
    (QUADRIC.replace("x*y - z^2", "x*y - z^3"), "inhomogeneous relation", 4, 5),
    (QUADRIC.replace("params x+y, z", "params x+y, q"), "unknown identifier 'q'", 6, 13),
    (QUADRIC.replace("homogeneous ", "homogenous "), "unknown flag", 5, 7),
    (QUADRIC.replace("vars x y z", "vars x y x"), "duplicate variable", 3, 10),
    ("hkring v2\n", "missing header", 1, 1),
])
def test_parse_errors_carry_locations(text, message, line, column):
    with pytest.raises(PresentationError) as info:
        parse_presentation(text)
    err = info.value
    assert message in err.message
    assert (err.line, err.column) == (line, column)


def test_weights_and_extensions():
    pres = corpus_entry("cusp")
    assert pres.weights == (2, 3) and pres.flags["homogeneous"]
    pres = corpus_entry("two_lines")
    assert pres.components == ((("x",), 1), (("y",), 1))
    assert corpus_entry("quadric_d3").emax == 2


def test_corpus_contents():
    entries = corpus()
    assert len(entries) >= 9
    assert [e.name for e in entries] == list(NAMES)
    with pytest.raises(CorpusError, match="p must be odd for the quadric corpus entry"):
        corpus_entry("quadric_d3", 2)
    assert "quadric_d3" not in [e.name for e in corpus(2)]
    assert corpus_text("regular2").startswith("hkring v1\n")


def test_every_report_lists_each_bound_once():
    for pres in corpus(3):
        rep = run_pipeline(pres, PipelineConfig(e_max=1))
        assert [r.bound_id for r in rep.bounds] == list(BOUND_IDS)
        assert not rep.violations


def test_regular2_pipeline():
    rep = run_pipeline(corpus_entry("regular2"))
    assert rep.estimate == 1 and rep.regularity_class == "regular"
    assert all(r.status != "violated" for r in rep.bounds)


def test_quadric_pipeline_window():
    rep = run_pipeline(corpus_entry("quadric_A1"), PipelineConfig(e_max=2))
    assert 1.45 <= rep.estimate <= 1.55
    assert rep.regularity_class == "F-regular+Gorenstein"


def test_two_lines_pipeline():
    rep = run_pipeline(corpus_entry("two_lines"))
    assert abs(rep.estimate - 2) < 0.01
    assert rep.associativity.status == "holds"
    assert rep.regularity_class == "none"


def test_random_parameters_when_none_given():
    text = corpus_text("quadric_A1").replace("params x+y, z\n", "")
    rep = run_pipeline(parse_presentation(text), PipelineConfig(seed=11, e_max=1))
    assert rep.params_source == "random" and rep.params_certified
    again = run_pipeline(parse_presentation(text), PipelineConfig(seed=11, e_max=1))
    assert rep.params == again.params


def test_stage_failures_downgrade():
    rep = run_pipeline(corpus_entry("quadric_A1"), PipelineConfig(e_max=2, gb_budget=1))
    assert [r.bound_id for r in rep.bounds] == list(BOUND_IDS)
    assert all(r.status == "inconclusive" and "stage failed" in r.note for r in rep.bounds)
    assert "GB budget exceeded" in rep.notes[0]
    assert rep.regularity_class == "none"


def test_truncated_estimate_keeps_an_honest_tolerance():
    rep = run_pipeline(corpus_entry("quadric_A1"), PipelineConfig(e_max=2, gb_budget=40))
    assert rep.truncated and [s["q"] for s in rep.samples] == [1, 5]
    assert rep.tolerance == Fraction(12, 25)
    assert rep.regularity_class == "none"
    assert not rep.violations


def test_json_and_csv_are_deterministic():
    cfg = PipelineConfig(e_max=1, seed=3)
    reps = [run_pipeline(corpus_entry("quadric_A1"), cfg)]
    a = reports_to_json(reps, cfg)
    b = reports_to_json([run_pipeline(corpus_entry("quadric_A1"), cfg)], cfg)
    assert a == b
    doc = json.loads(a)
    assert doc["reports"][0]["ehk_estimate"] == "37/25"
    assert "timings_s" not in doc["reports"][0]
    lines = reports_to_csv(reps).splitlines()
    assert lines[0].startswith("ring,p,bound_id,status")
    assert len(lines) == 1 + len(BOUND_IDS) + 1


def test_cli_run_and_exit_codes(tmp_path, capsys):
    path = tmp_path / "quadric.hkr"
    path.write_text(QUADRIC)
    out_json = tmp_path / "out.json"
    out_csv = tmp_path / "out.csv"
    assert main(["run", str(path), "--emax", "2", "--json", str(out_json),
                 "--csv", str(out_csv)]) == 0
    doc = json.loads(out_json.read_text())
    assert doc["reports"][0]["name"] == "quadric"
    assert out_csv.read_text().count("\n") == 15
    bad = tmp_path / "bad.hkr"
    bad.write_text(QUADRIC.replace("char 5", "char 4"))
    assert main(["run", str(bad)]) == 1
    assert "characteristic must be prime" in capsys.readouterr().err
    assert main(["corpus", "--bogus"]) == 1
    assert main(["run", str(tmp_path / "missing.hkr")]) == 1
    assert main(["corpus", "--only", "quadric_d3", "--char", "2"]) == 1


def test_cli_radical_and_tower(tmp_path, capsys):
    path = tmp_path / "quadric.hkr"
    path.write_text(QUADRIC)
    assert main(["radical", str(path), "--z", "x", "--n", "2", "--emax", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [r["bound_id"] for r in doc["reports"]] == ["scaling_4_1", "radical_4_4"]
    assert main(["tower", str(path), "--gens", "x, y", "--n", "2", "--depth", "1",
                 "--emax", "1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["reports"][0]["status"] == "holds"
    assert main(["radical", str(path), "--z", "x*y - z^2", "--n", "2"]) == 1


def test_cli_corpus_text_output(capsys):
    assert main(["corpus", "--only", "regular2", "--timings"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("regular2") and "sandwich" in out
