import json

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from chainsaw_josephus.cli import (
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    SCHEMAS,
    Command,
    UsageError,
    execute,
    main,
    parse,
)


def run_cli(*argv):
    return execute(parse(list(argv)))


# -- parse -------------------------------------------------------------------------


def test_parse_survivor_defaults():
    cmd = parse(["survivor", "--n", "605", "--k", "7"])
    assert cmd.name == "survivor"
    o = cmd.options
    assert (o["n"], o["k"], o["lives"], o["method"], o["mode"], o["ring"]) == (605, 7, 1, "auto", "reconciled", "linked")


def test_parse_elim_time():
    cmd = parse(["elim-time", "--n", "52", "--k", "3", "--soldier", "48"])
    assert (cmd.name, cmd.options["soldier"]) == ("elim-time", 48)


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["survivor", "--n", "0", "--k", "3"], "--n"),
        (["survivor", "--n", "5", "--k", "x"], "--k"),
        (["survivor", "--n", "5"], "--k"),
        (["survivor", "--n", "5", "--k", "2", "--bogus"], "--bogus"),
        (["survivor", "--n", "5", "--k", "2", "--lives", "-1"], "--lives"),
        (["survivor", "--n", "5", "--k", "2", "--ring", "tree"], "--ring"),
        (["bench", "--n", "5", "--k", "2", "--rings", "dense,tree"], "--rings"),
    ],
)
def test_usage_errors_name_the_flag(argv, flag, capsys):
    with pytest.raises(UsageError, match=flag):
        parse(argv)
    assert main(argv) == EXIT_USAGE
    assert flag in capsys.readouterr().err


def test_missing_subcommand_is_usage_error():
    with pytest.raises(UsageError):
        parse([])


_ints = st.integers(1, 10**6)


@st.composite
def commands(draw):
    name = draw(st.sampled_from(["survivor", "simulate", "order", "elim-time", "one-life", "verify", "sweep", "card-trick", "bench"]))
    argv = [name]
    fmt = ["--format", draw(st.sampled_from(["text", "json", "csv"]))]
    if name in ("survivor", "simulate", "order", "one-life", "bench", "elim-time"):
        argv += ["--n", str(draw(_ints)), "--k", str(draw(_ints))]
        if name != "elim-time":
            argv += ["--lives", str(draw(_ints))]
    if name in ("survivor", "elim-time"):
        argv += ["--method", draw(st.sampled_from(["auto", "closed", "simulate"]))]
    if name == "survivor":
        argv += ["--mode", draw(st.sampled_from(["paper", "reconciled"]))]
    if name == "elim-time":
        argv += ["--soldier", str(draw(st.integers(0, 100)))]
    if name in ("simulate", "order", "bench") and draw(st.booleans()):
        argv.append("--deplete")
    if name in ("verify", "sweep"):
        if name == "verify":
            argv += ["--subject", draw(st.sampled_from(["Theorem1", "Lemma2", "OneLifeSetReconciled"]))]
            argv += ["--jobs", str(draw(st.integers(1, 4)))]
        else:
            argv += ["--kind", draw(st.sampled_from(["constant", "k-gt-n", "noncoprime", "table"]))]
        argv += ["--k-max", str(draw(_ints)), "--n-min", str(draw(_ints))]
        if draw(st.booleans()):
            argv.append("--coprime-only")
    if name == "card-trick":
        argv += ["--cards", str(draw(_ints)), "--last", str(draw(st.integers(1, 9)))]
    if name == "bench":
        argv += ["--rings", draw(st.sampled_from(["dense", "linked,indexed", "dense,linked,indexed"]))]
    else:
        argv += fmt
    if name != "bench" and draw(st.booleans()):
        argv += ["--out", draw(st.sampled_from(["r.json", "out dir/x.csv"]))]
    return argv


@settings(max_examples=200, deadline=None)
@given(commands())
def test_command_round_trips_through_canonical_argv(argv):
    cmd = parse(argv)
    canonical = cmd.to_argv()
    assert parse(canonical) == cmd
    assert parse(canonical).to_argv() == canonical
    assert isinstance(str(cmd), str)


def test_command_equality_is_by_value():
    assert Command("survivor", {"n": 1}) == Command("survivor", {"n": 1})


# -- execute -------------------------------------------------------------------------


def test_survivor_paper_example():
    assert run_cli("survivor", "--n", "605", "--k", "7") == (EXIT_OK, "472\n")


def test_order_paper_example():
    assert run_cli("order", "--n", "10", "--k", "2") == (EXIT_OK, "1,2,4,5,7,8,0,3,9\n")


def test_elim_time_paper_example_both_methods():
    for method in ("closed", "simulate"):
        code, text = run_cli("elim-time", "--n", "52", "--k", "3", "--soldier", "48", "--method", method)
        assert (code, text) == (EXIT_OK, "52\n")


def test_card_trick_prediction():
    code, text = run_cli("card-trick", "--cards", "52", "--k", "3")
    assert code == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "last 4 in order: 0, 16, 32, 48"
    assert "1st, 17th, 33rd, 49th" in lines[1]
    assert len(lines) == 2 + 52
    doc = json.loads(run_cli("card-trick", "--cards", "52", "--k", "3", "--format", "json")[1])
    assert doc["last"] == [0, 16, 32, 48]
    assert doc["last_positions"] == [1, 17, 33, 49]
    assert sorted(doc["ordinals"]) == list(range(1, 53))


def test_survivor_method_and_mode():
    assert run_cli("survivor", "--n", "13", "--k", "4", "--lives", "4", "--mode", "paper", "--method", "closed")[1] == "9\n"
    assert run_cli("survivor", "--n", "13", "--k", "4", "--lives", "4")[1] == "10\n"
    assert run_cli("survivor", "--n", "13", "--k", "4", "--lives", "4", "--method", "simulate")[1] == "10\n"
    # no closed form for (7,3,2): auto falls back, closed refuses
    doc = json.loads(run_cli("survivor", "--n", "7", "--k", "3", "--lives", "2", "--format", "json")[1])
    assert (doc["survivor"], doc["method"]) == (4, "simulate")
    code, text = run_cli("survivor", "--n", "7", "--k", "3", "--lives", "2", "--method", "closed")
    assert code == EXIT_USAGE and text.startswith("error: ")


def test_domain_errors_exit_2():
    assert run_cli("elim-time", "--n", "5", "--k", "2", "--soldier", "5")[0] == EXIT_USAGE
    assert run_cli("order", "--n", "5", "--k", "2", "--lives", "2", "--deplete")[0] == EXIT_USAGE
    assert run_cli("survivor", "--n", str(2**64), "--k", "2", "--method", "closed")[0] == EXIT_USAGE
    assert run_cli("verify", "--subject", "Theorem1", "--k-min", "3", "--k-max", "2")[0] == EXIT_USAGE


def test_resource_cap_exit_4():
    code, text = run_cli("survivor", "--n", "1000000001", "--k", "3", "--lives", "2")
    assert code == EXIT_RESOURCE and text.startswith("error: ")


def test_verify_exit_codes():
    clean = run_cli("verify", "--subject", "Theorem1", "--k-max", "3", "--n-max", "50")
    assert clean[0] == EXIT_OK
    code, text = run_cli("verify", "--subject", "Theorem3PaperPrinted", "--k-min", "4", "--k-max", "4",
                         "--n-min", "13", "--n-max", "13", "--format", "json")
    assert code == EXIT_MISMATCH
    assert json.loads(text)["mismatches"][0]["oracle"] == 10
    code, _ = run_cli("verify", "--subject", "Theorem1", "--k-max", "3", "--n-max", "200", "--max-slots", "100")
    assert code == EXIT_RESOURCE


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from(["Theorem1", "Theorem3PaperPrinted", "Theorem3Reconciled", "OneLifeSetPaperPrinted", "ConstantSurvivor"]),
    st.integers(1, 5),
    st.integers(1, 30),
    st.integers(1, 4),
)
def test_exit_3_iff_mismatches(subject, k_max, n_max, lives_max):
    code, text = run_cli("verify", "--subject", subject, "--k-max", str(k_max), "--n-max", str(n_max),
                         "--lives-max", str(lives_max), "--format", "json")
    doc = json.loads(text)
    assert (code == EXIT_MISMATCH) == bool(doc["mismatches"])


# -- output formats ---------------------------------------------------------------------

SCHEMA_CASES = [
    ["survivor", "--n", "605", "--k", "7"],
    ["simulate", "--n", "10", "--k", "2", "--trace"],
    ["simulate", "--n", "10", "--k", "2", "--deplete"],
    ["order", "--n", "7", "--k", "3", "--lives", "2"],
    ["elim-time", "--n", "52", "--k", "3", "--soldier", "28"],
    ["one-life", "--n", "13", "--k", "4", "--lives", "3"],
    ["one-life", "--n", "5", "--k", "3", "--lives", "2"],
    ["one-life", "--n", "12", "--k", "3", "--lives", "2"],
    ["verify", "--subject", "Theorem2", "--k-max", "2", "--n-max", "20"],
    ["sweep", "--kind", "constant", "--k-min", "4", "--k-max", "4", "--n-max", "30", "--lives-max", "4"],
    ["sweep", "--kind", "k-gt-n", "--k-max", "8", "--n-max", "5"],
    ["sweep", "--kind", "noncoprime", "--k-max", "3", "--n-max", "40", "--lives-max", "2"],
    ["sweep", "--kind", "table", "--k-max", "2", "--n-max", "6"],
    ["card-trick", "--cards", "52", "--k", "3"],
    ["bench", "--n", "200", "--k", "3", "--rings", "dense,linked"],
]


@pytest.mark.parametrize("argv", SCHEMA_CASES, ids=lambda a: "-".join(a[:2]))
def test_json_output_matches_schema(argv):
    code, text = run_cli(*argv, "--format", "json")
    assert code == EXIT_OK
    jsonschema.validate(json.loads(text), SCHEMAS[argv[0]])


@pytest.mark.parametrize("argv", [c for c in SCHEMA_CASES if c[0] != "bench"], ids=lambda a: "-".join(a[:2]))
def test_csv_output_has_header(argv):
    code, text = run_cli(*argv, "--format", "csv")
    assert code == EXIT_OK
    assert text.splitlines()[0]


@pytest.mark.parametrize(
    "argv, key",
    [
        (["survivor", "--n", "605", "--k", "7"], "survivor"),
        (["survivor", "--n", "28", "--k", "3", "--lives", "2"], "survivor"),
        (["elim-time", "--n", "52", "--k", "3", "--soldier", "16"], "ordinal"),
    ],
)
def test_text_and_json_agree_on_scalars(argv, key):
    text = run_cli(*argv)[1]
    doc = json.loads(run_cli(*argv, "--format", "json")[1])
    assert text.strip() == str(doc[key])


@pytest.mark.parametrize("n, k, lives", [(10, 2, 1), (7, 3, 2), (52, 3, 1), (13, 4, 4)])
def test_text_and_json_agree_on_outcome(n, k, lives):
    argv = ["simulate", "--n", str(n), "--k", str(k), "--lives", str(lives)]
    text = run_cli(*argv)[1].splitlines()
    doc = json.loads(run_cli(*argv, "--format", "json")[1])
    assert text[0] == f"survivor: {doc['survivor']}"
    assert text[1] == "order: " + ",".join(str(label) for label, _ in doc["order"])
    assert [o for _, o in doc["order"]] == list(range(1, len(doc["order"]) + 1))
    order_text = run_cli("order", "--n", str(n), "--k", str(k), "--lives", str(lives))[1]
    assert order_text.strip() == text[1].removeprefix("order: ")


def test_verify_text_and_json_agree():
    argv = ["verify", "--subject", "Theorem3PaperPrinted", "--k-max", "4", "--n-max", "30"]
    text = run_cli(*argv)[1].splitlines()
    doc = json.loads(run_cli(*argv, "--format", "json")[1])
    assert text[0] == f"Theorem3PaperPrinted: checked {doc['checked']}, mismatches {len(doc['mismatches'])}"


def test_one_life_text_reports_comparison():
    text = run_cli("one-life", "--n", "13", "--k", "4", "--lives", "3")[1]
    assert "snapshot: alive 2 4 5 7 9 10 12" in text
    assert "agrees: no" in text
    assert "none" in run_cli("one-life", "--n", "5", "--k", "3", "--lives", "2")[1]


def test_main_writes_out_file(tmp_path, capsys):
    path = tmp_path / "report.csv"
    code = main(["verify", "--subject", "Theorem3PaperPrinted", "--k-min", "4", "--k-max", "4",
                 "--n-min", "13", "--n-max", "13", "--format", "csv", "--out", str(path)])
    assert code == EXIT_MISMATCH
    assert capsys.readouterr().out == ""
    lines = path.read_text().splitlines()
    assert lines[0].startswith("subject,k,n,lives,expected,oracle")
    assert lines[1].startswith("Theorem3PaperPrinted,4,13,4,9,10")


def test_main_prints_to_stdout(capsys):
    assert main(["order", "--n", "10", "--k", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "1,2,4,5,7,8,0,3,9\n"
    assert main(["elim-time", "--n", "3", "--k", "2", "--soldier", "7"]) == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error: ")
