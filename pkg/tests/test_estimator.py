import csv
import io
import math
from fractions import Fraction

import numpy as np
import pytest

from exactalg.errors import DimensionError, InvalidConfigError
from exactalg.estimator import (
    BENCH_HEADER,
    Decision,
    EstimateConfig,
    GateCircuit,
    additive_estimate,
    amplitude,
    bqp_decide,
    default_samples,
    gb_scaling_bench,
    unitary,
)
from exactalg.poly import DEGREVLEX, LEX

IDENTITY = GateCircuit(1)
XGATE = GateCircuit(1, [("X", 0)])
HGATE = GateCircuit(1, [("H", 0)])


def test_amplitude_examples():
    assert amplitude(IDENTITY, "0") == 1
    assert abs(amplitude(HGATE, "0") - 1 / math.sqrt(2)) < 1e-12
    assert amplitude(XGATE, "0") == 0
    with pytest.raises(DimensionError):
        amplitude(IDENTITY, "00")


def test_clifford_amplitudes_against_algebraic_values():
    s = GateCircuit(1, [("H", 0), ("S", 0), ("H", 0)])
    # H S H |0>: <0| = (1 + i) / 2
    assert abs(amplitude(s, "0") - (1 + 1j) / 2) < 1e-12
    bell = GateCircuit(2, [("H", 0), ("CNOT", 0, 1)])
    assert abs(amplitude(bell, "00") - 1 / math.sqrt(2)) < 1e-12
    assert abs(amplitude(bell, "11")) < 1e-12
    assert amplitude(GateCircuit(1, [("Z", 0)]), "1") == -1
    assert amplitude(GateCircuit(1, [("X", 0), ("Z", 0)]), "1") == 0


def test_cnot_against_kron_oracle():
    # qubit 0 is the most significant bit
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    assert np.allclose(unitary(GateCircuit(2, [("CNOT", 0, 1)])), cnot)
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    assert np.allclose(unitary(GateCircuit(2, [("H", 1)])), np.kron(np.eye(2), h))


@pytest.mark.parametrize("seed", range(5))
def test_unitarity_random_circuits(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    gates = []
    for _ in range(12):
        name = rng.choice(["H", "X", "Z", "S", "CNOT"])
        if name == "CNOT" and n > 1:
            c, t = rng.choice(n, 2, replace=False)
            gates.append(("CNOT", int(c), int(t)))
        elif name != "CNOT":
            gates.append((str(name), int(rng.integers(n))))
    U = unitary(GateCircuit(n, gates))
    assert np.allclose(U.conj().T @ U, np.eye(2**n), atol=1e-10)


def test_circuit_validation_and_parse():
    with pytest.raises(DimensionError):
        GateCircuit(2, [("CNOT", 1, 1)])
    with pytest.raises(DimensionError):
        GateCircuit(11)
    c = GateCircuit.parse(2, "H 0\nCNOT 0 1")
    assert c.gates == (("H", 0), ("CNOT", 0, 1))


def test_config_validation():
    with pytest.raises(InvalidConfigError):
        EstimateConfig(Fraction(0))
    with pytest.raises(InvalidConfigError):
        bqp_decide(IDENTITY, "0", EstimateConfig(Fraction(1, 10)), (Fraction(1, 4), Fraction(3, 4)))


def test_default_sample_count():
    assert default_samples(Fraction(1, 10)) == math.ceil(4 * math.log(16) / 0.01)


def test_estimate_is_deterministic():
    cfg = EstimateConfig(Fraction(1, 10), seed=42)
    a = additive_estimate(HGATE, "0", cfg)
    b = additive_estimate(HGATE, "0", cfg)
    assert a.z == b.z and a.n_samples == b.n_samples
    assert abs(a.z.real) <= 1 + 0.1 and abs(a.z.imag) <= 1 + 0.1


def test_estimator_unbiased_on_h():
    cfg = EstimateConfig(Fraction(1, 10), seed=3)
    trials = 10_000
    zs = [additive_estimate(HGATE, "0", cfg, i).z for i in range(trials)]
    mean = sum(zs) / trials
    assert abs(mean - amplitude(HGATE, "0")) <= 3 * 0.1 / math.sqrt(trials)


@pytest.mark.parametrize("delta", [Fraction(1, 5), Fraction(1, 10)])
@pytest.mark.parametrize("circuit", [IDENTITY, XGATE, HGATE])
def test_coverage(circuit, delta):
    cfg = EstimateConfig(delta, seed=1)
    exact = amplitude(circuit, "0")
    hits = sum(abs(additive_estimate(circuit, "0", cfg, i).z - exact) <= delta for i in range(200))
    assert hits >= 150


def test_decisions():
    cfg = EstimateConfig(Fraction(1, 10), seed=2)
    assert bqp_decide(IDENTITY, "0", cfg) is Decision.ACCEPT
    assert bqp_decide(XGATE, "0", cfg) is Decision.REJECT
    assert bqp_decide(HGATE, "0", cfg) is Decision.INCONCLUSIVE


def test_bench_csv_schema_and_determinism():
    buf1, buf2 = io.StringIO(), io.StringIO()
    gb_scaling_bench("random-binomial", range(1, 4), 2, DEGREVLEX, buf1, seed=5)
    gb_scaling_bench("random-binomial", range(1, 4), 2, DEGREVLEX, buf2, seed=5)
    rows1 = list(csv.reader(io.StringIO(buf1.getvalue())))
    rows2 = list(csv.reader(io.StringIO(buf2.getvalue())))
    assert tuple(rows1[0]) == BENCH_HEADER
    assert [r[:6] for r in rows1] == [r[:6] for r in rows2]
    assert [r[1] for r in rows1[1:]] == ["1", "2", "3"]
    assert all(int(r[6]) >= 0 for r in rows1[1:])


def test_bench_drl_not_larger_than_lex_on_binomials():
    drl = gb_scaling_bench("random-binomial", range(1, 6), 3, DEGREVLEX, seed=0)
    lex = gb_scaling_bench("random-binomial", range(1, 6), 3, LEX, seed=0)
    assert [r.basis_size for r in drl] == [1, 2, 2, 8, 5]
    assert all(a.basis_size <= b.basis_size for a, b in zip(drl, lex))


def test_bench_rejects_bad_input(tmp_path):
    with pytest.raises(InvalidConfigError):
        gb_scaling_bench("nope", [1], 2, DEGREVLEX)
    with pytest.raises(InvalidConfigError):
        gb_scaling_bench("katsura-like", [9], 2, DEGREVLEX)
    path = tmp_path / "b.csv"
    gb_scaling_bench("katsura-like", [1, 2, 3], 2, DEGREVLEX, str(path))
    assert path.read_text().splitlines()[0] == ",".join(BENCH_HEADER)
