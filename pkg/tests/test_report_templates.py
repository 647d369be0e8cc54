import json

from figlab.models import OutputFormat
from figlab.report_templates import render, render_csv, render_json, render_table

ROWS = [
    {"module-id": "J0", "reg": 1, "lc_td": ["-inf", 0, "-inf"], "certified": True, "gap": None},
    {"module-id": "kG0", "reg": 0, "lc_td": [0, "-inf"], "certified": False, "gap": 0},
]


def test_json_is_sorted_and_stable():
    text = render_json(ROWS)
    assert json.loads(text) == ROWS
    assert text.index('"certified"') < text.index('"module-id"')
    assert text.endswith("\n")


def test_csv_joins_lists_and_blanks_missing_values():
    lines = render_csv(ROWS).splitlines()
    assert lines[0] == "module-id,reg,lc_td,certified,gap"
    assert lines[1] == "J0,1,-inf;0;-inf,yes,"
    assert lines[2] == "kG0,0,0;-inf,no,0"


def test_csv_column_order():
    lines = render_csv(ROWS, columns=["reg", "module-id"]).splitlines()
    assert lines[0] == "reg,module-id"
    assert lines[1] == "1,J0"


def test_table_layout():
    lines = render_table(ROWS, title="invariants").splitlines()
    assert lines[0] == "invariants"
    assert lines[1].split() == ["module-id", "reg", "lc_td", "certified", "gap"]
    assert set(lines[2].replace(" ", "")) == {"-"}
    assert lines[3].split()[-1] == "-"


def test_empty_reports():
    assert render_csv([]) == ""
    assert render_table([], title="depth") == "depth\n(no rows)\n"


def test_render_dispatch():
    assert render(ROWS, OutputFormat.JSON) == render_json(ROWS)
    assert render(ROWS, OutputFormat.CSV) == render_csv(ROWS)
    assert render(ROWS, OutputFormat.TABLE, title="t") == render_table(ROWS, title="t")
