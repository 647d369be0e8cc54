import json
from pathlib import Path

import pytest

from figlab.errors import ModuleFileError
from figlab.generator import GeneratorParams, random_presentation
from figlab.module_parser import module_parser
from figlab.modules import Presentation, TruncatedFiGModule, materialize, validate_module

SAMPLES = Path(__file__).resolve().parents[1] / "sample_modules"


@pytest.mark.parametrize("name, dims", [
    ("kG0", [1, 0, 0, 0, 0]),
    ("kG1", [0, 1, 0, 0, 0, 0, 0]),
    ("J0", [0, 1, 1, 1, 1, 1, 1]),
])
def test_sample_presentations(name, dims):
    parsed = module_parser.parse_file(SAMPLES / f"{name}.json")
    assert parsed.name == name
    assert isinstance(parsed.source, Presentation)
    module = materialize(parsed.source, parsed.source.default_window())
    assert list(module.dims) == dims
    assert validate_module(module) == []


def test_c2_sample_carries_its_group():
    parsed = module_parser.parse_file(SAMPLES / "C2_trivial.json")
    assert parsed.name == "C2-trivial-1"
    assert parsed.source.group.order == 2
    module = materialize(parsed.source, 4)
    assert list(module.dims) == [0, 1, 2, 3, 4]


def test_prime_field_sample():
    parsed = module_parser.parse_file(SAMPLES / "C2_regular.json")
    assert parsed.source.field.p == 3


def test_raw_sample():
    parsed = module_parser.parse_file(SAMPLES / "raw_M0.json")
    module = parsed.source
    assert isinstance(module, TruncatedFiGModule)
    assert module.dims == (1, 1, 1, 1)
    assert module.valid_through == 3
    assert not module.presented
    assert validate_module(module) == []


def test_file_name_is_the_default_module_id(tmp_path):
    data = json.loads((SAMPLES / "kG0.json").read_text())
    del data["name"]
    path = tmp_path / "unnamed.json"
    path.write_text(json.dumps(data))
    assert module_parser.parse_file(path).name == "unnamed"


def test_window_is_read_from_the_file():
    data = json.loads((SAMPLES / "kG0.json").read_text())
    data["window"] = 7
    assert module_parser.parse_data(data).window == 7


def test_bad_json_reports_a_position():
    with pytest.raises(ModuleFileError) as exc:
        module_parser.parse_text('{"field": "Q",', origin="broken.json")
    assert exc.value.path == "broken.json"
    assert exc.value.location.startswith("line 1")


def test_unknown_key_is_rejected():
    with pytest.raises(ModuleFileError) as exc:
        module_parser.parse_data({"field": "Q", "colour": "blue"})
    assert "colour" in exc.value.location


def test_bad_field_is_rejected():
    with pytest.raises(ModuleFileError):
        module_parser.parse_data({"field": {"char": 2}})


def test_composite_characteristic_is_rejected():
    with pytest.raises(ModuleFileError):
        module_parser.parse_data({"field": {"Fp": 4}})


def test_bad_subset_location():
    data = json.loads((SAMPLES / "J0.json").read_text())
    data["relations"][0]["map"]["terms"][0]["subset"] = [3]
    with pytest.raises(ModuleFileError) as exc:
        module_parser.parse_data(data)
    assert exc.value.location == "relations/0/map/terms/0/subset"


def test_missing_generator_location():
    data = json.loads((SAMPLES / "J0.json").read_text())
    data["relations"][0]["map"]["terms"][1]["gen"] = 4
    with pytest.raises(ModuleFileError) as exc:
        module_parser.parse_data(data)
    assert exc.value.location == "relations/0/map/terms/1/gen"


def test_raw_mode_needs_its_data():
    with pytest.raises(ModuleFileError):
        module_parser.parse_data({"mode": "raw", "dims": [1]})


def test_raw_matrix_shapes_are_checked():
    data = json.loads((SAMPLES / "raw_M0.json").read_text())
    data["trans"][0] = [[1, 0]]
    with pytest.raises(ModuleFileError) as exc:
        module_parser.parse_data(data)
    assert exc.value.location == "trans/0"


def test_rep_matrix_count_is_checked():
    data = {
        "generators": [{"degree": 2, "rep": {"dim": 1, "mats": []}}],
    }
    with pytest.raises(ModuleFileError) as exc:
        module_parser.parse_data(data)
    assert exc.value.location == "generators/0/rep/mats"


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_dumped_presentation_parses_back(seed):
    p = random_presentation(seed, GeneratorParams(max_generator_degree=1))
    parsed = module_parser.parse_data(module_parser.dump_presentation(p, name=f"random-{seed}"))
    assert parsed.name == f"random-{seed}"
    window = p.default_window()
    assert parsed.source.default_window() == window
    assert materialize(parsed.source, window).dims == materialize(p, window).dims
