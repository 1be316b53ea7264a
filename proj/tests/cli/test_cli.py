import json
import os
import subprocess
from fractions import Fraction

import pytest

CLI = os.environ.get("WEFSUB_CLI", "wefsub")


def run(*args, expect=None):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if expect is not None:
        assert proc.returncode == expect, proc.stdout + proc.stderr
    return proc


def write(path, doc):
    path.write_text(json.dumps(doc))
    return path


def fixture_instance(tmp_path, name):
    out = tmp_path / f"{name}.json"
    run("fixtures", "--name", name, "--emit-instance", out, expect=0)
    return out


@pytest.fixture
def inheritance(tmp_path):
    return fixture_instance(tmp_path, "example-1-inheritance")


def additive(weights, values, items=None):
    m = len(values[0])
    items = items or [f"g{k + 1}" for k in range(m)]
    return {
        "agents": [{"id": f"a{i + 1}", "weight": w} for i, w in enumerate(weights)],
        "items": items,
        "valuations": [{"kind": "additive", "values": v} for v in values],
    }


def test_check_inheritance_all_to_spouse(tmp_path, inheritance):
    alloc = write(tmp_path / "a.json", {"bundles": [["house", "car"], [], []]})
    out = run("check", inheritance, alloc, expect=0).stdout
    assert "envy-freeable: true" in out
    assert "subsidies: (0, 65, 65)" in out

    doc = json.loads(run("--format", "json", "check", inheritance, alloc, expect=0).stdout)
    assert doc["subsidies"] == ["0", "65", "65"]
    assert doc["envy_freeable"] is True


def test_check_house_and_car_needs_nothing(tmp_path, inheritance):
    alloc = write(tmp_path / "b.json", {"bundles": [["house"], ["car"], []]})
    doc = json.loads(run("--format", "json", "check", inheritance, alloc, expect=0).stdout)
    assert doc["subsidies"] == ["0", "0", "0"]


def test_emit_graph(tmp_path, inheritance):
    alloc = write(tmp_path / "a.json", {"bundles": [["house", "car"], [], []]})
    doc = json.loads(run("--format", "json", "check", inheritance, alloc, "--emit-graph", expect=0).stdout)
    lengths = doc["graph"]["lengths"]
    assert Fraction(lengths[1][0]) == 260


def test_malformed_weights_are_input_errors(tmp_path):
    bad = write(tmp_path / "bad.json", additive(["1/2", "1/3"], [[1], [1]]))
    proc = run("solve", bad, expect=2)
    assert "WeightSum" in proc.stderr + proc.stdout

    floaty = write(tmp_path / "float.json", additive([0.5, 0.5], [[1], [1]]))
    run("solve", floaty, expect=2)
    run("solve", tmp_path / "missing.json", expect=2)


def test_invalid_allocation_is_input_error(tmp_path, inheritance):
    dup = write(tmp_path / "dup.json", {"bundles": [["house"], ["house", "car"], []]})
    run("check", inheritance, dup, expect=2)


def test_incompatibility_reports_cycle(tmp_path):
    inst = fixture_instance(tmp_path, "example-incompatibility")
    alloc = write(tmp_path / "a.json", {"bundles": [["g1"], ["g2"]]})
    out = run("check", inst, alloc, expect=1).stdout
    assert "envy-freeable: false" in out
    assert "positive cycle: a1 -> a2 -> a1 (length 160)" in out


@pytest.mark.parametrize(
    "name,algorithm",
    [
        ("thm-lb-binary-additive", "alg2"),
        ("thm-lb-identical-items", "alg3"),
        ("thm-lb-identical-additive", "alg1"),
        ("example-1-inheritance", "greedy"),
        ("example-incompatibility", "all-to-max"),
    ],
)
def test_solve_dispatch(tmp_path, name, algorithm):
    inst = fixture_instance(tmp_path, name)
    out_file = tmp_path / "outcome.json"
    doc = json.loads(run("--format", "json", "solve", inst, "--output", out_file, expect=0).stdout)
    assert doc["algorithm"] == algorithm

    # The written outcome re-parses as an allocation and is envy-freeable.
    check = json.loads(run("--format", "json", "check", inst, out_file, expect=0).stdout)
    assert check["envy_freeable"] is True
    assert check["subsidies"] == doc["subsidies"]


def test_solve_explicit_algorithm(tmp_path, inheritance):
    doc = json.loads(run("--format", "json", "solve", inheritance, "--algorithm", "all-to-max", expect=0).stdout)
    assert doc["algorithm"] == "all-to-max"
    run("solve", inheritance, "--algorithm", "alg2", expect=2)
    run("solve", inheritance, "--algorithm", "nonsense", expect=2)


def test_vcg(tmp_path):
    inst = fixture_instance(tmp_path, "prop-lb-general")
    doc = json.loads(run("--format", "json", "mechanism", "vcg", inst, expect=0).stdout)
    assert [Fraction(q) for q in doc["vcg_payments"]] == [Fraction(29, 10), 0, 0]
    assert Fraction(doc["upfront_constant"]) == 15
    run("mechanism", "vcg", inst, "--upfront", "1", expect=2)

    # Additive valuations are modular, so VCG accepts them.
    run("mechanism", "vcg", fixture_instance(tmp_path, "example-1-inheritance"), expect=0)
    unit_demand = fixture_instance(tmp_path, "example-incompatibility")
    out = run("mechanism", "vcg", unit_demand, expect=2)
    assert "NotSupermodular" in out.stderr + out.stdout


def test_adjusted_winner(tmp_path):
    inst = fixture_instance(tmp_path, "sec6-picking-sequence-counterexample")
    doc = json.loads(run("--format", "json", "mechanism", "aw", inst, expect=0).stdout)
    assert doc["bundles"] == [[], ["g1"]]
    out = run("mechanism", "aw", fixture_instance(tmp_path, "example-1-inheritance"), expect=2)
    assert "WrongAgentCount" in out.stderr + out.stdout


@pytest.mark.parametrize(
    "budget,regime,payments",
    [
        ("130", "exact", ["0", "65", "65"]),
        ("65", "deficit", ["0", "65/2", "65/2"]),
        ("134", "surplus", ["2", "66", "66"]),
    ],
)
def test_mef_regimes(tmp_path, inheritance, budget, regime, payments):
    alloc = write(tmp_path / "a.json", {"bundles": [["house", "car"], [], []]})
    out_file = tmp_path / "mef.json"
    doc = json.loads(
        run("--format", "json", "mef", inheritance, alloc, "--budget", budget, "--output", out_file, expect=0).stdout
    )
    assert doc["regime"] == regime
    assert doc["payments"] == payments
    assert json.loads(out_file.read_text())["payments"] == payments


def test_mef_rejects_bad_budgets(tmp_path, inheritance):
    alloc = write(tmp_path / "a.json", {"bundles": [["house", "car"], [], []]})
    run("mef", inheritance, alloc, "--budget", "-1", expect=2)
    run("mef", inheritance, alloc, "--budget", "0.5", expect=2)
    inc = fixture_instance(tmp_path, "example-incompatibility")
    one_each = write(tmp_path / "b.json", {"bundles": [["g1"], ["g2"]]})
    run("mef", inc, one_each, "--budget", "5", expect=1)


def test_fixtures_all_pass():
    out = run("fixtures", "--all", expect=0).stdout
    lines = [line for line in out.splitlines() if line.startswith(("PASS", "FAIL"))]
    assert len(lines) == 10
    assert all(line.startswith("PASS") for line in lines)
    run("fixtures", "--name", "no-such-fixture", expect=2)


def test_instance_round_trip_is_byte_stable(tmp_path):
    first = fixture_instance(tmp_path, "thm-lb-matroidal")
    second = tmp_path / "again.json"
    # Emitting twice gives identical bytes.
    run("fixtures", "--name", "thm-lb-matroidal", "--emit-instance", second, expect=0)
    assert first.read_bytes() == second.read_bytes()


def test_outputs_are_deterministic(tmp_path):
    inst = fixture_instance(tmp_path, "thm-lb-identical-items")
    a = run("--format", "json", "solve", inst, expect=0).stdout
    b = run("--format", "json", "solve", inst, expect=0).stdout
    assert a == b
    text_a = run("solve", inst, "--trace", expect=0).stdout
    text_b = run("solve", inst, "--trace", expect=0).stdout
    assert text_a == text_b
