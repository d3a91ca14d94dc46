"""Sweep driver: runs the valuation solver across rows i <= i_max, prunes j
by the running upper bound d', adapts the number of weights from the kernel
bound, and maintains a checkpointable record of all (i, j, nu) results."""

from __future__ import annotations

import json
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .basis import dim_mk
from .expand import psi
from .family import eis_ratio_by_s
from .solver import build_system, f_bound, solve_row

CHECKPOINT_VERSION = 1

# Retry policy: initial margin on the conclusiveness target, doubled on each
# retry, at most this many retries per row.
_INITIAL_MARGIN = 2
_MAX_RETRIES = 3


class CheckpointError(ValueError):
    """Checkpoint file does not match the expected schema."""


def c_p(p: int) -> Fraction:
    """Proven lower-bound slope: (2/3)(1 - p/(p-1)^2)/(p+1)."""
    return Fraction(2, 3) * (1 - Fraction(p, (p - 1) ** 2)) / (p + 1)


def d_p(p: int) -> Fraction:
    """Conjectured optimal slope (p-1)/(p(p+1))."""
    return Fraction(p - 1, p * (p + 1))


def lambda_for(p: int, target_gamma: int, j_max: int) -> int:
    """Smallest number of canonical weights n (with n >= j_max + 1) whose
    kernel threshold on components 0..j_max is at least target_gamma, using
    the bound gamma >= n - j - f(n) for 0-based component j."""
    if target_gamma < 1:
        raise ValueError("target_gamma must be >= 1")
    n = max(j_max + 1, 1)
    while n - j_max - f_bound(p, n) < target_gamma:
        n += 1
    return n


def worker_count() -> int:
    env = os.environ.get("KATZ_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SweepEntry:
    i: int
    j: int
    exact: bool
    value: int | None
    gamma: int

    @property
    def status(self) -> str:
        return "exact" if self.exact else "inconclusive"


@dataclass
class SweepState:
    """Persistent record of a d'_p sweep.

    d_prime is the running minimum of (nu(b_{i,j}) + j)/i over all exact
    entries, as an exact rational; attained is the set of (i, j) achieving it.
    """

    p: int
    lam_current: int = 1
    i_max: int = 0
    d_prime: Fraction = Fraction(1)
    entries: list[SweepEntry] = field(default_factory=list)
    attained: set[tuple[int, int]] = field(default_factory=set)
    completed_rows: set[int] = field(default_factory=set)


def _record_row(state: SweepState, i: int, row) -> None:
    for j in sorted(row.entries):
        st = row.entries[j]
        state.entries.append(
            SweepEntry(i=i, j=j, exact=st.exact, value=st.value, gamma=st.gamma_int)
        )
        if st.exact and i > 0:
            val = Fraction(st.value + j, i)
            if val < state.d_prime:
                state.d_prime = val
                state.attained = {(i, j)}
            elif val == state.d_prime:
                state.attained.add((i, j))


class WeightCoordCache:
    """Per-weight Katz coordinates, computed once at the largest (lam, n) seen
    and re-sliced (truncation prefix) and reduced (mod p^lam) for smaller
    requests."""

    def __init__(self, p: int):
        self.p = p
        self._store: dict[int, tuple[int, int, tuple[int, ...]]] = {}

    def _compute(self, s: int, lam: int, n: int) -> tuple[int, ...]:
        N = dim_mk(n * (self.p - 1))
        ratio = eis_ratio_by_s(self.p, s, lam, N)
        return psi(self.p, n, lam, ratio).x

    def ensure(self, s_values, lam: int, n: int) -> None:
        todo = []
        for s in s_values:
            got = self._store.get(s)
            if got is None or got[0] < lam or got[1] < n:
                lam_new = lam if got is None else max(lam, got[0])
                n_new = n if got is None else max(n, got[1])
                todo.append((s, lam_new, n_new))
        if not todo:
            return
        workers = min(worker_count(), len(todo))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(
                    pool.map(lambda args: self._compute(*args), todo)
                )
        else:
            results = [self._compute(*args) for args in todo]
        for (s, lam_new, n_new), x in zip(todo, results):
            self._store[s] = (lam_new, n_new, x)

    def coords(self, s: int, lam: int, n: int) -> tuple[int, ...]:
        """Full coordinate vector for weight s at precision (lam, N=d_{n(p-1)})."""
        got = self._store.get(s)
        if got is None or got[0] < lam or got[1] < n:
            self.ensure([s], lam, n)
            got = self._store[s]
        _, _, x = got
        mod = self.p**lam
        return tuple(c % mod for c in x[: dim_mk(n * (self.p - 1))])

    def row_coords(self, s: int, lam: int, r: int, n: int) -> tuple[int, ...]:
        """Coordinates of the i=r block only (the solver needs just these)."""
        x = self.coords(s, lam, n)
        lo = 0 if r == 0 else dim_mk((r - 1) * (self.p - 1))
        hi = dim_mk(r * (self.p - 1))
        return x[lo:hi]


def run_sweep(
    p: int,
    i_max: int,
    resume: SweepState | None = None,
    checkpoint_path: str | None = None,
    progress=None,
) -> SweepState:
    """Sweep rows 1..i_max, maintaining the running upper bound d' and pruning
    each row at j <= ceil(d' * i).  Rows with an empty basis block contribute
    nothing and are skipped."""
    if i_max < 1:
        raise ValueError("i_max must be >= 1")
    if resume is not None:
        if resume.p != p:
            raise ValueError(f"resume state is for p = {resume.p}, not {p}")
        state = resume
        state.i_max = max(state.i_max, i_max)
    else:
        state = SweepState(p=p, i_max=i_max)

    cache = WeightCoordCache(p)
    systems: dict[int, object] = {}

    for i in range(1, i_max + 1):
        if i in state.completed_rows:
            continue
        if dim_mk(i * (p - 1)) == dim_mk((i - 1) * (p - 1)):
            # Empty basis block: b_{i,j} = 0, nothing to solve.
            state.completed_rows.add(i)
            if checkpoint_path:
                save_checkpoint(state, checkpoint_path)
            continue

        margin = _INITIAL_MARGIN
        row = None
        for attempt in range(_MAX_RETRIES + 1):
            target_j = math.ceil(state.d_prime * i)
            j_max = min(i, target_j)
            lam = max(lambda_for(p, target_j + margin, j_max), state.lam_current)
            system = systems.get(lam)
            if system is None:
                system = build_system(p, lam)
                systems[lam] = system
            s_values = [w.s for w in system.weights]
            cache.ensure(s_values, lam, i_max)
            coords = [cache.row_coords(s, lam, i, i_max) for s in s_values]
            row = solve_row(
                p, i, lam, j_max=j_max, system=system, row_coords=coords
            )
            state.lam_current = lam
            stuck = [
                j
                for j in range(1, j_max + 1)
                if j in row.entries and not row.entries[j].exact
            ]
            if not stuck or attempt == _MAX_RETRIES:
                break
            margin *= 2

        _record_row(state, i, row)
        state.completed_rows.add(i)
        if progress:
            progress(state, i)
        if checkpoint_path:
            save_checkpoint(state, checkpoint_path)

    return state


def theorem_b_audit(state: SweepState):
    """Exact entries violating the proven bound v >= c_p i - j (must be empty)
    and the conjectured bound v >= d_p i - j (expected empty)."""
    cp, dp = c_p(state.p), d_p(state.p)
    c_viol, d_viol = [], []
    for entry in state.entries:
        if not entry.exact:
            continue
        if entry.value < cp * entry.i - entry.j:
            c_viol.append((entry.i, entry.j, entry.value))
        if entry.value < dp * entry.i - entry.j:
            d_viol.append((entry.i, entry.j, entry.value))
    return c_viol, d_viol


def summary(state: SweepState) -> dict:
    c_viol, d_viol = theorem_b_audit(state)
    return {
        "p": state.p,
        "d_prime": _frac_str(state.d_prime),
        "attained": sorted({i for i, _ in state.attained}),
        "c_p": _frac_str(c_p(state.p)),
        "d_p_conj": _frac_str(d_p(state.p)),
        "audits": {
            "theorem_b_violations": len(c_viol),
            "conjecture_violations": len(d_viol),
        },
    }


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _frac_parse(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def state_to_json(state: SweepState) -> dict:
    return {
        "version": CHECKPOINT_VERSION,
        "p": state.p,
        "lambda": state.lam_current,
        "i_max": state.i_max,
        "d_prime": _frac_str(state.d_prime),
        "completed_rows": sorted(state.completed_rows),
        "entries": [
            {
                "i": e.i,
                "j": e.j,
                "status": e.status,
                "value": e.value,
                "gamma": e.gamma,
            }
            for e in state.entries
        ],
    }


def state_from_json(data: dict) -> SweepState:
    if not isinstance(data, dict) or data.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(
            f"unsupported checkpoint version: {data.get('version') if isinstance(data, dict) else data!r}"
        )
    try:
        state = SweepState(
            p=data["p"],
            lam_current=data["lambda"],
            i_max=data["i_max"],
            d_prime=_frac_parse(data["d_prime"]),
            completed_rows=set(data["completed_rows"]),
        )
        for e in data["entries"]:
            state.entries.append(
                SweepEntry(
                    i=e["i"],
                    j=e["j"],
                    exact=e["status"] == "exact",
                    value=e["value"],
                    gamma=e["gamma"],
                )
            )
    except (KeyError, TypeError) as exc:
        raise CheckpointError(f"malformed checkpoint: {exc}") from exc
    # Re-derive the attainment set from the recorded entries.
    for e in state.entries:
        if e.exact and Fraction(e.value + e.j, e.i) == state.d_prime:
            state.attained.add((e.i, e.j))
    return state


def save_checkpoint(state: SweepState, path: str) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(state_to_json(state), fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_checkpoint(path: str) -> SweepState:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CheckpointError(f"checkpoint is not valid JSON: {exc}") from exc
    return state_from_json(data)
