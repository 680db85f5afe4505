import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icpkit.cli import main
from icpkit.documents import (
    InstanceDocument,
    WitnessDocument,
    parse_document,
    parse_instance_document,
    parse_witness_document,
)
from icpkit.errors import DomainError, ParseError
from icpkit.reduction import build_icp_instance

from conftest import SOLVABLE, UNSOLVABLE, group_words

FIX = Path(__file__).resolve().parent.parent / "fixtures"
ALL_FIXTURES = sorted(p for p in FIX.iterdir() if p.suffix in (".txt", ".witness"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- documents -------------------------------------------------------------

def test_fixture_set_is_present():
    assert len(ALL_FIXTURES) >= 10


@pytest.mark.parametrize("path", ALL_FIXTURES, ids=lambda p: p.name)
def test_fixture_round_trip(path):
    text = path.read_text()
    assert parse_document(text).serialize() == text


@pytest.mark.parametrize("P", list(SOLVABLE.values()) + list(UNSOLVABLE.values()))
def test_instance_round_trip_through_objects(P):
    for inst in (P, build_icp_instance(P)):
        doc = InstanceDocument.from_instance(inst)
        back = parse_instance_document(doc.serialize()).to_instance()
        assert back.pairs == inst.pairs and back.alphabet == inst.alphabet
        assert getattr(back, "tags", None) == getattr(inst, "tags", None)


@given(st.lists(st.tuples(group_words(5), group_words(5)), min_size=1, max_size=5))
def test_icp_document_round_trip(pairs):
    doc = InstanceDocument("icp", ("a", "b"), pairs)
    text = doc.serialize()
    again = parse_instance_document(text)
    assert again.pairs == pairs
    assert again.serialize() == text


@given(st.lists(st.integers(1, 99), min_size=1, max_size=20))
def test_witness_round_trip(indices):
    text = WitnessDocument("icp", tuple(indices), meta={"states": "3"}).serialize()
    assert parse_witness_document(text).indices == tuple(indices)
    assert parse_witness_document(text).serialize() == text


def test_comments_and_blank_lines_are_skipped():
    text = "# note\nformat: 1\n\nkind: icp\nalphabet: a b\npair: a | b\n"
    assert parse_instance_document(text).pairs[0][1].letters[0].base == "b"


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("format: 1\nkind: icp\nalphabet: a b\npair: a A | b\n", 4, 9),
        ("format: 1\nkind: icp\nalphabet: a b\npair: a b\n", 4, 7),
        ("format: 2\nkind: icp\n", 1, 9),
        ("format: 1\nkind: nonsense\n", 2, 7),
        ("format: 1\nkind: icp\nalphabet: a b\nbogus\n", 4, 1),
        ("format: 1\nkind: witness\ntarget: icp\nstatus: found\nindices: 1 x\n", 5, 10),
    ],
)
def test_parse_errors_name_line_and_column(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


def test_tagged_document_without_tags_is_a_domain_error():
    doc = parse_instance_document("format: 1\nkind: tagged-icp\nalphabet: a\npair: a | a\n")
    with pytest.raises(DomainError):
        doc.to_instance()


# -- commands --------------------------------------------------------------

def test_verify_two_tile_example(capsys):
    code, out, _ = run(capsys, "verify", FIX / "two-tile-pcp.txt", FIX / "two-tile-pcp.witness")
    assert code == 0
    assert out == "ACCEPT\nword: a a b a a b a a\n"


def test_verify_reject(capsys, tmp_path):
    w = tmp_path / "w.txt"
    w.write_text(WitnessDocument("pcp", (1, 2)).serialize())
    code, out, _ = run(capsys, "verify", FIX / "two-tile-pcp.txt", w)
    assert code == 1 and out.startswith("REJECT\n")


def test_verify_wrong_kind(capsys):
    code, _, err = run(capsys, "verify", FIX / "two-tile-pcp.txt", FIX / "toy-icp.witness")
    assert code == 2 and "icp witness" in err


def test_verify_index_out_of_range(capsys, tmp_path):
    w = tmp_path / "w.txt"
    w.write_text(WitnessDocument("pcp", (1, 3)).serialize())
    code, _, err = run(capsys, "verify", FIX / "two-tile-pcp.txt", w)
    assert code == 2 and "error:" in err


def test_reduce_seven_tiles(capsys):
    code, out, _ = run(capsys, "reduce", FIX / "seven-rpcp.txt")
    assert code == 0
    assert sum(line.startswith("pair: ") for line in out.splitlines()) == 48
    assert sum(line.startswith("tag: ") for line in out.splitlines()) == 48


def test_reduce_matches_shipped_fixture(capsys):
    code, out, _ = run(capsys, "reduce", FIX / "toy-rpcp.txt")
    assert code == 0 and out == (FIX / "toy-icp.txt").read_text()


def test_reduce_rejects_wrong_kind(capsys):
    assert run(capsys, "reduce", FIX / "cancel-icp.txt")[0] == 2


def test_reduce_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("format: 1\nkind: restricted-pcp\nalphabet: a b\npair: a | a\npair: a ?b | b\n")
    code, _, err = run(capsys, "reduce", bad)
    assert code == 2 and "line 5, column" in err


def test_pipeline_solvable(capsys, tmp_path):
    icp, wit = tmp_path / "icp.txt", tmp_path / "icp.witness"
    assert run(capsys, "reduce", FIX / "toy-rpcp.txt", "-o", icp)[0] == 0
    assert run(capsys, "translate", FIX / "toy-rpcp.txt", FIX / "toy-rpcp.witness", "-o", wit)[0] == 0
    code, out, _ = run(capsys, "verify", icp, wit)
    assert code == 0 and out.startswith("ACCEPT")
    assert wit.read_text() == (FIX / "toy-icp.witness").read_text()


def test_translate_non_solution(capsys):
    code, _, err = run(capsys, "translate", FIX / "toy-rpcp.txt", FIX / "toy-rpcp-wrong.witness")
    assert code == 1 and "not a solution" in err


def test_translate_empty_inner_sequence(capsys, tmp_path):
    P = SOLVABLE["mixed"]
    inst, wit = tmp_path / "p.txt", tmp_path / "w.txt"
    inst.write_text(InstanceDocument.from_instance(P).serialize())
    wit.write_text(WitnessDocument("restricted-pcp", ()).serialize())
    code, out, _ = run(capsys, "translate", inst, wit)
    assert code == 0
    assert parse_witness_document(out).indices == tuple(
        build_icp_instance(P).index_of(s) for s in range(0, 16, 2)
    )


def test_search_cancelling_instance(capsys):
    code, out, _ = run(capsys, "search", FIX / "cancel-icp.txt", "--max-len", 2)
    doc = parse_witness_document(out)
    assert code == 0 and doc.indices == (1, 2) and "states" in doc.meta


def test_search_absent(capsys, tmp_path):
    inst = tmp_path / "stuck.txt"
    inst.write_text("format: 1\nkind: icp\nalphabet: a b\npair: a | b\n")
    code, out, err = run(capsys, "search", inst, "--max-len", 6)
    assert code == 1 and "ABSENT" in err and not parse_witness_document(out).found


def test_search_unsolvable_fixture(capsys):
    code, _, err = run(capsys, "search", FIX / "unsolvable-icp.txt", "--max-len", 20)
    assert code == 1 and "ABSENT" in err


def test_search_reduced_toy_finds_translation(capsys):
    code, out, _ = run(capsys, "search", FIX / "toy-icp.txt", "--max-len", 16)
    assert code == 0
    assert parse_witness_document(out).indices == parse_witness_document((FIX / "toy-icp.witness").read_text()).indices


def test_search_restricted_and_plain_pcp(capsys):
    code, out, _ = run(capsys, "search", FIX / "toy-rpcp.txt", "--max-len", 3)
    assert code == 0 and parse_witness_document(out).indices == (2,)
    code, out, _ = run(capsys, "search", FIX / "two-tile-pcp.txt", "--max-len", 4)
    assert code == 0 and parse_witness_document(out).indices == (1, 1, 2, 2)


def test_search_bad_bound(capsys):
    assert run(capsys, "search", FIX / "cancel-icp.txt", "--max-len", 0)[0] == 2


def test_embed_matrix_collapse_48(capsys, tmp_path):
    icp = tmp_path / "icp.txt"
    run(capsys, "reduce", FIX / "seven-rpcp.txt", "-o", icp)
    code, out, _ = run(capsys, "embed", icp, "--collapse")
    assert code == 0
    lines = out.splitlines()
    assert "count: 48" in lines
    starts = [i for i, line in enumerate(lines) if line.startswith("generator: ")]
    assert len(starts) == 48
    for i in starts:
        assert all(len(row.split()) == 4 for row in lines[i + 1:i + 5])


def test_embed_identity_pair(capsys, tmp_path):
    inst = tmp_path / "e.txt"
    inst.write_text("format: 1\nkind: icp\nalphabet: a b\npair: | \n")
    code, out, _ = run(capsys, "embed", inst)
    assert code == 0
    assert out.splitlines()[-4:] == ["1 0 0 0", "0 1 0 0", "0 0 1 0", "0 0 0 1"]


def test_embed_quaternion(capsys):
    code, out, _ = run(capsys, "embed", FIX / "toy-icp.txt", "--collapse", "--target", "quaternion")
    assert code == 0
    rows = [line for line in out.splitlines() if "/" in line]
    assert len(rows) == 32
    for row in rows:
        for value in row.split():
            d = int(value.split("/")[1])
            while d % 5 == 0:
                d //= 5
            assert d == 1


def test_embed_without_collapse_on_reduction_alphabet(capsys):
    code, _, err = run(capsys, "embed", FIX / "toy-icp.txt")
    assert code == 2 and "binary alphabet" in err


def test_analyze_translated_witness(capsys):
    code, out, _ = run(capsys, "analyze", FIX / "toy-icp.txt", FIX / "toy-icp.witness")
    assert code == 0
    assert "segment: 0 15 cycle" in out.splitlines()
    assert out.splitlines()[-1] == "zeta: 0"


def test_analyze_unsolvable_cycle(capsys):
    code, out, _ = run(capsys, "analyze", FIX / "unsolvable-icp.txt", FIX / "unsolvable-cycle.witness")
    assert code == 0
    assert int(out.splitlines()[-1].split()[1]) >= 4


def test_analyze_reports_malformed_parts(capsys, tmp_path):
    inst, wit = tmp_path / "t.txt", tmp_path / "w.txt"
    inst.write_text("format: 1\nkind: tagged-icp\nalphabet: a x1\npair: a | x1 a x1^-1\ntag: 1 2\n")
    wit.write_text(WitnessDocument("icp", (1,)).serialize())
    code, out, err = run(capsys, "analyze", inst, wit)
    assert code == 0
    assert "zeta-part: A 0 malformed" in out.splitlines()
    assert out.splitlines()[-1].startswith("zeta: undefined")
    assert "warning:" in err


def test_analyze_untagged(capsys):
    assert run(capsys, "analyze", FIX / "cancel-icp.txt", FIX / "toy-icp.witness")[0] == 2


def test_missing_file_and_usage(capsys):
    assert run(capsys, "verify", FIX / "nope.txt", FIX / "toy-icp.witness")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_stdin_input(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO((FIX / "toy-rpcp.txt").read_text()))
    code, out, _ = run(capsys, "reduce", "-")
    assert code == 0 and out == (FIX / "toy-icp.txt").read_text()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "icpkit.cli", "verify", FIX / "toy-icp.txt", FIX / "toy-icp.witness"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("ACCEPT")
