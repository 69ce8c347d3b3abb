import csv
import io
import json
import re

import pytest

from lib.mediatrix.bounds import best_upper_bound
from lib.mediatrix.errors import CertificateError
from mediatrix import main
from modules.certificates import (
    Certificate,
    certificate_from_bound,
    dumps,
    loads,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from modules.cli import load_commands


def run(*args):
    return main(["--no-progress", "--log-level", "WARNING", *args])


def covered_by_brute_force(n, arc_list):
    closed = [{v} | {s for s, t in arc_list if t == v} for v in range(n)]
    return all(
        any(a in block and b in block for block in closed)
        for a in range(n)
        for b in range(a + 1, n)
    )


def construct(tmp_path, n, *args):
    path = tmp_path / f"cert_{n}.json"
    assert run("construct", "--n", str(n), *args, "--out", str(path)) == 0
    return path


def test_commands_are_loaded_in_order():
    assert [c.name() for c in load_commands()] == ["bounds", "construct", "verify", "diffcover", "exact"]


def test_construct_plane(tmp_path):
    cert = read_certificate(construct(tmp_path, 7, "--method", "plane"))
    assert cert.kind == "digraph"
    assert cert.n == 7
    assert cert.claimed_max_in_degree == 2
    assert cert.method == "plane"
    assert cert.params == {"q": 2}
    assert len(cert.arcs) == 14


def test_construct_extension(tmp_path):
    cert = read_certificate(construct(tmp_path, 10, "--method", "extend"))
    assert cert.claimed_max_in_degree == 3
    assert cert.params == {"q": 2, "m": 1, "t": 0}


def test_construct_explicit_extension(tmp_path):
    cert = read_certificate(construct(tmp_path, 20, "--method", "extend", "--q", "3", "--m", "2", "--t", "1"))
    assert cert.claimed_max_in_degree == 5
    assert run("construct", "--n", "21", "--method", "extend", "--q", "3", "--m", "2", "--t", "1") == 2


def test_construct_exact(tmp_path):
    cert = read_certificate(construct(tmp_path, 4, "--method", "exact"))
    assert cert.claimed_max_in_degree == 2
    assert cert.method == "exact"


def test_construct_diffcover(tmp_path):
    cert = read_certificate(construct(tmp_path, 7, "--method", "diffcover"))
    assert cert.claimed_max_in_degree == 2
    assert cert.params == {"k": 3, "elems": [0, 1, 3]}


def test_construct_inapplicable_method(tmp_path):
    assert run("construct", "--n", "10", "--method", "plane") == 2
    assert run("construct", "--n", "5", "--method", "extend") == 2
    assert run("construct", "--n", "11", "--method", "exact") == 2


def test_construct_to_stdout(capsys):
    assert run("construct", "--n", "7") == 0
    cert = loads(capsys.readouterr().out)
    assert cert.method == "plane"


def test_family_certificate(tmp_path):
    path = construct(tmp_path, 10, "--kind", "family")
    cert = read_certificate(path)
    assert cert.kind == "family"
    assert cert.claimed_mcard == 4
    assert len(cert.blocks) == 10
    assert run("verify", str(path)) == 0


def test_certificates_are_byte_stable(tmp_path):
    first = construct(tmp_path, 13, "--method", "plane").read_bytes()
    second = construct(tmp_path, 13, "--method", "plane").read_bytes()
    assert first == second
    assert dumps(loads(first.decode("utf8"))).encode("utf8") == first


def test_certificate_text_layout():
    text = dumps(certificate_from_bound(best_upper_bound(7, effort=0)))
    lines = text.splitlines()
    assert lines[:3] == ["{", '  "schema_version": 1,', '  "kind": "digraph",']
    assert lines[7] == '  "arcs": ['
    assert lines[-2:] == ["  ]", "}"]
    assert all(re.fullmatch(r"    \[\d+, \d+\],?", line) for line in lines[8:-2])
    assert json.loads(text)["arcs"] == sorted(json.loads(text)["arcs"])


def test_verify_plane(tmp_path, capsys):
    path = construct(tmp_path, 7, "--method", "plane")
    assert run("verify", str(path)) == 0
    assert "valid" in capsys.readouterr().out


def test_verify_catches_deleted_arc(tmp_path, capsys):
    path = construct(tmp_path, 7, "--method", "plane")
    cert = read_certificate(path)
    cert.arcs = cert.arcs[1:]
    write_certificate(cert, str(path))
    capsys.readouterr()
    assert run("verify", str(path)) == 1
    assert "not mediated" in capsys.readouterr().out
    report = verify_certificate(cert)
    assert report.counterexample is not None


def test_verify_catches_lowered_claim(tmp_path, capsys):
    path = construct(tmp_path, 7, "--method", "plane")
    cert = read_certificate(path)
    cert.claimed_max_in_degree -= 1
    write_certificate(cert, str(path))
    capsys.readouterr()
    assert run("verify", str(path)) == 1
    assert "max in-degree 2 exceeds claim 1" in capsys.readouterr().out


def test_verify_family_claims():
    blocks = [[0, 1], [1, 2], [0, 2]]
    good = Certificate(kind="family", n=3, method="manual", claimed_mcard=2, blocks=blocks)
    assert verify_certificate(good).ok
    assert not verify_certificate(good.model_copy(update={"claimed_mcard": 1})).ok
    missing = verify_certificate(good.model_copy(update={"blocks": blocks[:2] + [[2]]}))
    assert not missing.ok
    assert missing.counterexample == (0, 2)
    not_symmetric = verify_certificate(good.model_copy(update={"blocks": blocks + [[0]]}))
    assert not not_symmetric.ok
    no_sdr = Certificate(kind="family", n=3, method="manual", claimed_mcard=3, blocks=[[0, 1, 2], [0], [0]])
    assert "distinct representatives" in verify_certificate(no_sdr).messages[0]


def test_verify_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run("verify", str(path)) == 2
    path.write_text(json.dumps({"schema_version": 1, "kind": "digraph", "n": 3, "method": "x"}))
    assert run("verify", str(path)) == 2
    path.write_text(json.dumps({"schema_version": 2, "kind": "digraph", "n": 3, "method": "x", "claimed_max_in_degree": 1, "arcs": []}))
    assert run("verify", str(path)) == 2
    assert run("verify", str(tmp_path / "missing.json")) == 2


@pytest.mark.parametrize(
    "arc_list",
    [
        [[0, 0]],
        [[0, 3]],
        [[0, 1], [0, 1]],
    ],
)
def test_verify_rejects_structural_problems(arc_list):
    cert = Certificate(kind="digraph", n=3, method="x", claimed_max_in_degree=2, arcs=arc_list)
    with pytest.raises(CertificateError):
        verify_certificate(cert)


def test_single_arc_corruption_is_judged_independently(rng, config):
    for n in (7, 10, 13):
        cert = certificate_from_bound(best_upper_bound(n, effort=1, config=config))
        claim = cert.claimed_max_in_degree
        for i in range(len(cert.arcs)):
            corrupted = [list(a) for a in cert.arcs]
            choice = rng.random()
            if choice < 0.5:
                del corrupted[i]
            else:
                corrupted[i][1] = rng.randrange(n)
            if any(s == t for s, t in corrupted) or len({tuple(a) for a in corrupted}) != len(corrupted):
                continue
            report = verify_certificate(cert.model_copy(update={"arcs": corrupted}))
            in_degrees = [sum(1 for _, t in corrupted if t == v) for v in range(n)]
            expected = covered_by_brute_force(n, corrupted) and max(in_degrees) <= claim
            assert report.ok is expected


def test_round_trip_for_every_n(config):
    for n in range(1, 61):
        cert = certificate_from_bound(best_upper_bound(n, effort=1, config=config))
        assert verify_certificate(loads(dumps(cert))).ok, n


@pytest.mark.slow
def test_round_trip_for_every_n_to_150(config):
    for n in range(61, 151):
        for kind in ("digraph", "family"):
            cert = certificate_from_bound(best_upper_bound(n, effort=1, config=config), kind)
            assert verify_certificate(loads(dumps(cert))).ok, n


def test_bounds_csv(capsys):
    assert run("bounds", "--from", "6", "--to", "7", "--format", "csv") == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows == [
        ["n", "f", "mu_ub", "method", "gap", "strict_gap"],
        ["6", "2", "2", "diff-cover(3)", "0", "false"],
        ["7", "2", "2", "plane(2)", "0", "false"],
    ]


def test_bounds_json(capsys):
    assert run("bounds", "--from", "43", "--to", "43", "--effort", "0") == 0
    (row,) = json.loads(capsys.readouterr().out)
    assert row["f_lower"] == 6
    assert row["strict_gap_proved"] is True
    assert row["mu_lower"] == 7


def test_bounds_summary(capsys):
    assert main(["--no-progress", "bounds", "--from", "1", "--to", "150", "--effort", "0", "--summary"]) == 0
    err = capsys.readouterr().err
    assert "strict gaps at [43, 111]" in err


def test_bounds_bad_range():
    assert run("bounds", "--from", "7", "--to", "6") == 2
    assert run("bounds", "--from", "0", "--to", "6") == 2


def test_diffcover_command(capsys):
    assert run("diffcover", "--n", "7") == 0
    assert json.loads(capsys.readouterr().out) == {"n": 7, "k": 3, "elems": [0, 1, 3], "mu_ub": 2}
    assert run("diffcover", "--n", "7", "--k-budget", "2") == 1


def write_config(tmp_path, **sections):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(sections), encoding="utf8")
    return str(path)


def test_diffcover_commands_ignore_the_search_node_limit(tmp_path, capsys):
    config = write_config(tmp_path, diffcover={"node_limit": 1})
    assert run("--config", config, "diffcover", "--n", "13") == 0
    assert json.loads(capsys.readouterr().out) == {"n": 13, "k": 4, "elems": [0, 1, 3, 9], "mu_ub": 3}

    path = tmp_path / "cert_13.json"
    assert run("--config", config, "construct", "--n", "13", "--method", "diffcover", "--out", str(path)) == 0
    assert read_certificate(path).params == {"k": 4, "elems": [0, 1, 3, 9]}


def test_exact_node_limit_gives_unknown(tmp_path, capsys):
    config = write_config(tmp_path, exact={"node_limit": 1})
    assert run("--config", config, "construct", "--n", "9", "--method", "exact") == 1
    assert json.loads(capsys.readouterr().out) == {"n": 9, "mu": None, "status": "unknown"}
    assert run("--config", config, "exact", "--n", "9") == 1
    assert json.loads(capsys.readouterr().out)["status"] == "unknown"


def test_exact_command(capsys):
    assert run("exact", "--n", "6") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["mu"] == out["f"] == 2
    assert run("exact", "--n", "12") == 2
    assert run("exact", "--n", "6", "--k-cap", "1") == 2


def test_exact_cap_environment(monkeypatch):
    monkeypatch.setenv("MEDIATRIX_EXACT_CAP", "4")
    assert run("exact", "--n", "5") == 2
    monkeypatch.setenv("MEDIATRIX_EXACT_CAP", "x")
    assert run("exact", "--n", "5") == 2


def test_unknown_command():
    with pytest.raises(SystemExit) as e:
        run("plot")
    assert e.value.code == 2
