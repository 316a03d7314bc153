import pytest

from fermat_prank.errors import ParameterError
from fermat_prank.formats import render
from fermat_prank.tables import TABLE_COLUMNS, build_table


def by_label(rows):
    out = {}
    for r in rows:
        out.setdefault(r.row, []).append(r)
    return out


def test_table3_contains_c8():
    rows = build_table(3, 3, r=[1, 2])
    hit = [r for r in rows if r.curve == "y^2 = x^8 + 1" and r.params == "r=2"]
    assert hit and hit[0].closed == "2" and hit[0].flag == "ok"


@pytest.mark.parametrize("table", [1, 2, 3, 4, 5])
def test_no_mismatches_at_seven(table):
    rows = build_table(table, 7)
    assert rows
    assert all(r.flag == "ok" or r.flag.startswith("n/a: ") for r in rows)


def test_not_applicable_rows_name_the_predicate():
    rows = by_label(build_table(2, 7))
    (c47,) = rows["C47_char2_zero"]
    assert c47.flag == "n/a: p must be 2"
    assert all(r.flag == "ok" for r in rows["T48_ss_zero"])


def test_table4_items_at_five():
    rows = by_label(build_table(4, 5, h=range(1, 5)))
    assert set(rows) == {f"T54 ({i})" for i in ("i", "ii", "iii", "iv", "v")}
    for rs in rows.values():
        assert {r.quantity for r in rs} == {"delta", "gamma"}
        assert all(r.flag == "ok" for r in rs)


def test_single_alpha_case():
    rows = build_table(4, 7, alpha_cases="ii")
    assert {r.row for r in rows} == {"T54 (ii)"}


@pytest.mark.parametrize("bad", [dict(table=6, p=7), dict(table=4, p=7, alpha_cases="vi"), dict(table=1, p=9)])
def test_rejects(bad):
    with pytest.raises(ParameterError):
        build_table(**bad)


def test_render_formats():
    rows = [r.as_dict() for r in build_table(3, 3, r=[1])]
    csv_text = render(rows, TABLE_COLUMNS, "csv")
    assert csv_text.splitlines()[0] == ",".join(TABLE_COLUMNS)
    assert "\r" not in csv_text
    md = render(rows, TABLE_COLUMNS, "md").splitlines()
    assert md[0].startswith("| table |") and md[1].startswith("|---")
    js = render(rows, TABLE_COLUMNS, "json").splitlines()
    assert len(js) == len(rows)
