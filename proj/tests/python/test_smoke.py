import json
import math
from pathlib import Path

import pytest

import framelimit

DATA = Path(__file__).resolve().parents[2] / "data"
BENCHMARK = DATA / "benchmark.json"


def test_benchmark_collapse_multipliers():
    report = framelimit.analyze(BENCHMARK)
    by_name = {p["name"]: p for p in report["patterns"]}
    assert by_name["mass_proportional"]["collapse"]["lambda0"] == pytest.approx(0.7996, rel=5e-3)
    assert by_name["inverse_triangular"]["collapse"]["lambda0"] == pytest.approx(0.6551, rel=1e-2)
    assert by_name["mass_proportional"]["curve"]["u_u"] == pytest.approx(0.2995, rel=1e-2)


def test_assess_reports_safety_factor_identity():
    report = framelimit.assess(BENCHMARK, pattern="mass_proportional")
    (entry,) = report["patterns"]
    sdof, verification = entry["sdof"], entry["verification"]
    assert verification["safety_factor"] == pytest.approx(sdof["d_u_star"] / verification["demand"], rel=1e-12)


def test_dict_documents_and_validation_errors():
    doc = json.loads(BENCHMARK.read_text())
    doc["section_library"] = str(DATA / "sections" / "european_h.json")
    del doc["assessment"]
    report = framelimit.analyze(doc, pattern="inverse_triangular")
    assert report["patterns"][0]["collapse"]["heights"] == [0.0, 3.0]

    doc["frame"]["bay_length"] = [4.0]
    with pytest.raises(framelimit.ValidationError, match=r"\$\.frame\.bay_length"):
        framelimit.analyze(doc)


def test_lambda0_of_a_single_sway():
    labels = framelimit.mechanism_labels(str(BENCHMARK), "mass_proportional")
    genes = [0] * len(labels)
    genes[labels.index("floor(storey=0)")] = 1
    lam = framelimit.evaluate_lambda0(str(BENCHMARK), "mass_proportional", genes)
    assert lam == pytest.approx(6 * 1.628e-3 * 235000 / (3 * 800))
    with pytest.raises(framelimit.NumericalError):
        framelimit.evaluate_lambda0(str(BENCHMARK), "mass_proportional", [0] * len(labels))


def test_curve_csv_and_spectrum():
    rows = framelimit.curve_csv(str(BENCHMARK), "mass_proportional").strip().splitlines()
    assert rows[0] == "displacement_m,base_shear_kN"
    assert float(rows[-1].split(",")[0]) == pytest.approx(0.2995, rel=1e-2)
    se = framelimit.spectral_acceleration(0.2, 1.2, 1.0, 2.4, 0.15, 0.45, 2.54, 0.3)
    assert se == pytest.approx(0.2 * 9.81 * 1.2 * 2.4)
    assert math.isfinite(se)


def test_bundled_files_match_the_schemas():
    jsonschema = pytest.importorskip("jsonschema")
    from referencing import Registry, Resource

    schema_dir = DATA.parent / "schema"
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())

    def validate(instance, name):
        jsonschema.Draft202012Validator(schemas[name], registry=registry).validate(instance)

    validate(json.loads(BENCHMARK.read_text()), "frame_document.schema.json")
    validate(json.loads((DATA / "sections" / "european_h.json").read_text()), "section_library.schema.json")
    for spectrum in (DATA / "spectra").glob("*.json"):
        validate(json.loads(spectrum.read_text()), "spectrum.schema.json")
    validate(framelimit.assess(BENCHMARK), "report.schema.json")
