"""Statevector simulation of small Clifford+S circuits and sampling estimators.

This is the only module that uses floating point. Amplitudes come from a
dense statevector; the additive estimator draws +-1 samples whose means are
the real and imaginary parts of ``<x|U|x>`` (the Hadamard-test statistics).
"""

from __future__ import annotations

import csv
import enum
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, InvalidConfigError, ParseError
from .groebner import Ideal, buchberger
from .poly import MonomialOrder, PolyRing

MAX_QUBITS = 10
GATE_ARITY = {"H": 1, "X": 1, "Z": 1, "S": 1, "CNOT": 2}

_SQRT_HALF = 1 / math.sqrt(2)
_ONE_QUBIT = {
    "H": np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
}


@dataclass(frozen=True)
class GateCircuit:
    """``n`` qubits and an ordered gate list such as ``("CNOT", 0, 1)``.

    Qubit 0 is the leftmost character of a bitstring.
    """

    n: int
    gates: tuple = ()

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise DimensionError(f"qubit count must be in 1..{MAX_QUBITS}")
        gates = tuple(tuple(g) for g in self.gates)
        for g in gates:
            name, *idx = g
            if name not in GATE_ARITY:
                raise ValueError(f"unknown gate {name!r}")
            if len(idx) != GATE_ARITY[name]:
                raise ValueError(f"{name} takes {GATE_ARITY[name]} qubit index(es)")
            if any(not 0 <= i < self.n for i in idx):
                raise DimensionError(f"qubit index out of range in {name} {idx}")
            if name == "CNOT" and idx[0] == idx[1]:
                raise DimensionError("CNOT control and target must differ")
        object.__setattr__(self, "gates", gates)

    @classmethod
    def parse(cls, n: int, text: str | Iterable[str]) -> "GateCircuit":
        """Parse one gate per line (or ``;``-separated), e.g. ``H 0`` or ``CNOT 0 1``."""
        lines = text.replace(";", "\n").splitlines() if isinstance(text, str) else list(text)
        gates = []
        for lineno, line in enumerate(lines, 1):
            parts = line.split()
            if not parts:
                continue
            try:
                gates.append((parts[0].upper(), *map(int, parts[1:])))
            except ValueError:
                raise ParseError(f"bad gate line {line.strip()!r}", line=lineno) from None
        return cls(n, tuple(gates))

    def __str__(self):
        return "; ".join(" ".join(map(str, g)) for g in self.gates)


def _apply(state: np.ndarray, gate, n: int) -> np.ndarray:
    psi = state.reshape([2] * n)
    name, *idx = gate
    if name == "CNOT":
        c, t = idx
        psi = psi.copy()
        sel = [slice(None)] * n
        sel[c] = 1
        sub = psi[tuple(sel)]
        axis = t if t < c else t - 1
        psi[tuple(sel)] = np.flip(sub, axis=axis)
        return psi.reshape(-1)
    (q,) = idx
    psi = np.tensordot(_ONE_QUBIT[name], psi, axes=([1], [q]))
    return np.moveaxis(psi, 0, q).reshape(-1)


def _basis_index(x: str, n: int) -> int:
    if len(x) != n or set(x) - {"0", "1"}:
        raise DimensionError(f"bitstring must have {n} characters from 0/1")
    return int(x, 2)


def simulate(c: GateCircuit, x: str) -> np.ndarray:
    """``U|x>`` as a dense vector of length ``2^n``."""
    state = np.zeros(2**c.n, dtype=complex)
    state[_basis_index(x, c.n)] = 1
    for g in c.gates:
        state = _apply(state, g, c.n)
    return state


def unitary(c: GateCircuit) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix of the circuit (column ``k`` is ``U|k>``)."""
    dim = 2**c.n
    cols = [simulate(c, format(k, f"0{c.n}b")) for k in range(dim)]
    return np.column_stack(cols)


def amplitude(c: GateCircuit, x: str) -> complex:
    """``<x|U|x>`` by statevector simulation."""
    return complex(simulate(c, x)[_basis_index(x, c.n)])


def default_samples(delta: Fraction) -> int:
    """Samples per part so that ``|Z - a| <= delta`` fails with probability at most 1/4.

    Each part is a mean of +-1 variables; Hoeffding with deviation
    ``delta/sqrt(2)`` and failure ``1/8`` per part gives ``4 ln 16 / delta^2``.
    """
    return math.ceil(4 * math.log(16) / float(delta) ** 2)


@dataclass(frozen=True)
class EstimateConfig:
    delta: Fraction
    seed: int = 0
    samples: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.delta <= 0:
            raise InvalidConfigError("delta must be positive")
        if self.seed < 0:
            raise InvalidConfigError("seed must be nonnegative")
        if self.samples is not None and self.samples < 1:
            raise InvalidConfigError("samples must be positive")

    @property
    def n_samples(self) -> int:
        return self.samples if self.samples is not None else default_samples(self.delta)


@dataclass(frozen=True)
class EstimateResult:
    z: complex
    n_samples: int
    delta: Fraction

    def format(self) -> str:
        return f"Z = {self.z.real:.6f} {'+' if self.z.imag >= 0 else '-'} {abs(self.z.imag):.6f}i (N = {self.n_samples})"


def _pm_mean(rng, p: float, n: int) -> float:
    hits = int(np.count_nonzero(rng.random(n) < p))
    return (2 * hits - n) / n


def additive_estimate(c: GateCircuit, x: str, cfg: EstimateConfig, trial: int = 0) -> EstimateResult:
    """Sample estimate of ``<x|U|x>`` from two streams of +-1 outcomes.

    Randomness derives from ``(cfg.seed, trial)`` only, so repeated trials can
    run in any order and still reproduce.
    """
    a = amplitude(c, x)
    n = cfg.n_samples
    rng = np.random.default_rng([cfg.seed, trial])
    re = _pm_mean(rng, (1 + a.real) / 2, n)
    im = _pm_mean(rng, (1 + a.imag) / 2, n)
    return EstimateResult(complex(re, im), n, cfg.delta)


class Decision(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    INCONCLUSIVE = "inconclusive"

    def __str__(self):
        return self.value


def bqp_decide(
    c: GateCircuit,
    x: str,
    cfg: EstimateConfig,
    thresholds: tuple = (Fraction(3, 4), Fraction(1, 4)),
    trial: int = 0,
) -> Decision:
    """Threshold the estimated ``|<x|U|x>|^2``: accept at or above, reject at or below."""
    accept, reject = (Fraction(t) for t in thresholds)
    if not accept > reject:
        raise InvalidConfigError("accept threshold must exceed reject threshold")
    z = additive_estimate(c, x, cfg, trial).z
    p = abs(z) ** 2
    if p >= accept:
        return Decision.ACCEPT
    if p <= reject:
        return Decision.REJECT
    return Decision.INCONCLUSIVE


# ---------------------------------------------------------------------------
# Groebner scaling benchmark
# ---------------------------------------------------------------------------

BENCH_HEADER = ("family", "n", "d", "order", "generators", "basis_size", "wall_time_ns")
FAMILIES = ("random-binomial", "katsura-like")


def _random_monomial(rng: random.Random, n: int, d: int) -> list:
    deg = rng.randint(1, d)
    e = [0] * n
    for _ in range(deg):
        e[rng.randrange(n)] += 1
    return e


def bench_ideal(family: str, n: int, d: int, seed: int) -> Ideal:
    """Seeded test ideal in ``n`` variables of degree at most ``d``."""
    ring = PolyRing.from_names([f"x{i + 1}" for i in range(n)])
    if family == "random-binomial":
        rng = random.Random(f"{seed}:{n}:{d}")
        gens = []
        while len(gens) < n:
            a, b = _random_monomial(rng, n, d), _random_monomial(rng, n, d)
            if a != b:
                gens.append(ring.monomial(a) - ring.monomial(b))
        return Ideal(gens, ring)
    if family == "katsura-like":
        if d < 2 and n > 1:
            raise InvalidConfigError("katsura-like systems are quadratic; need d >= 2")
        u = ring.gens

        def var(k):
            k = abs(k)
            return u[k] if k < n else ring.zero()

        gens = [sum((2 * u[i] for i in range(1, n)), u[0]) - 1]
        for m in range(n - 1):
            s = ring.zero()
            for l in range(-(n - 1), n):
                s = s + var(l) * var(m - l)
            gens.append(s - u[m])
        return Ideal(gens, ring)
    raise InvalidConfigError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass
class BenchRow:
    family: str
    n: int
    d: int
    order: str
    generators: int
    basis_size: int
    wall_time_ns: int = field(compare=False)

    def as_tuple(self):
        return (self.family, self.n, self.d, self.order, self.generators, self.basis_size, self.wall_time_ns)


def gb_scaling_bench(
    family: str,
    n_range: Sequence[int],
    d: int,
    order: MonomialOrder,
    out=None,
    seed: int = 0,
) -> list:
    """Time ``buchberger`` on one seeded ideal per ``n`` and write CSV rows.

    ``out`` may be a path, a text stream or ``None``. Only raw measurements
    are reported.
    """
    if family not in FAMILIES:
        raise InvalidConfigError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if not 1 <= d <= 4:
        raise InvalidConfigError("degree bound must be in 1..4")
    rows = []
    for n in n_range:
        if not 1 <= n <= 8:
            raise InvalidConfigError("variable count must be in 1..8")
        ideal = bench_ideal(family, n, d, seed)
        start = time.perf_counter_ns()
        gb = buchberger(Ideal(ideal.generators, ideal.ring), order)
        elapsed = time.perf_counter_ns() - start
        rows.append(BenchRow(family, n, d, order.name, len(ideal.generators), len(gb), elapsed))
    if out is not None:
        if hasattr(out, "write"):
            _write_csv(out, rows)
        else:
            with open(out, "w", newline="") as fh:
                _write_csv(fh, rows)
    return rows


def _write_csv(fh, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(BENCH_HEADER)
    for r in rows:
        w.writerow(r.as_tuple())
