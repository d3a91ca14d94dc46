"""Recovering the valuations nu(b_{r,j}) of the formal Katz expansion from
Katz expansions at finitely many classical weights.

The coefficients a_mu(b_{r,j}) satisfy Vandermonde systems V x = theta over
Z/p^lam whose solutions are only determined up to the kernel of V; the per-
component thresholds gamma_j from a generating set of the kernel decide which
recovered valuations are conclusive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arithmetic import CappedVal, RingSpec, padic_val
from .basis import dim_mk, g_form
from .classical import WeightSpec
from .expand import psi
from .family import eis_ratio_by_s


class UnsolvableSystem(RuntimeError):
    """V x = theta has no solution mod p^lam (implementation or precision fault)."""


def int_val(p: int, x: int) -> int:
    """Plain p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def f_bound(p: int, n: int) -> int:
    """f(n) = sum_i floor((n-1) / ((p-1) p^{i-1}))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    base = p - 1
    while base <= n - 1:
        total += (n - 1) // base
        base *= p
    return total


def nu_w(p: int, k: int, e: int) -> CappedVal:
    """nu_p((1+p)^k - 1) computed mod p^e; equals nu_p(k) + 1."""
    expected = int_val(p, k) + 1
    if e <= expected:
        raise ValueError(f"precision e = {e} too small to certify valuation {expected}")
    got = padic_val(pow(p + 1, k, p**e) - 1, p, e)
    if got.v != expected:
        raise ArithmeticError(f"valuation {got} does not match closed form {expected}")
    return got


def weight_list(p: int, lam: int) -> list[WeightSpec]:
    """The first lam naturals prime to p, as weights k = s(p-1) mod p^lam."""
    if lam < 1:
        raise ValueError("lam must be >= 1")
    ring = RingSpec(p, lam)
    out = []
    s = 1
    while len(out) < lam:
        if s % p:
            out.append(WeightSpec(ring, s))
        s += 1
    return out


def _smith_diagonalize(V, p: int, lam: int):
    """Diagonalize A.V.B = diag(p^t_0, ..., p^t_{n-1}) over Z/p^lam.

    A and B are invertible (products of swaps, unit scalings and transvections).
    Pivots are chosen with minimal valuation, so t_0 <= t_1 <= ...; t_k = lam
    encodes a zero diagonal entry.
    """
    mod = p**lam
    n = len(V)
    M = [[x % mod for x in row] for row in V]
    A = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    B = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    ts = [lam] * n
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                if M[i][j]:
                    v = int_val(p, M[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        t, pi, pj = best
        if pi != k:
            M[k], M[pi] = M[pi], M[k]
            A[k], A[pi] = A[pi], A[k]
        if pj != k:
            for row in M:
                row[k], row[pj] = row[pj], row[k]
            for row in B:
                row[k], row[pj] = row[pj], row[k]
        pt = p**t
        u = M[k][k] // pt
        uinv = pow(u, -1, mod)
        M[k] = [x * uinv % mod for x in M[k]]
        A[k] = [x * uinv % mod for x in A[k]]
        for i in range(k + 1, n):
            if M[i][k]:
                c = M[i][k] // pt
                M[i] = [(a - c * b) % mod for a, b in zip(M[i], M[k])]
                A[i] = [(a - c * b) % mod for a, b in zip(A[i], A[k])]
        for j in range(k + 1, n):
            if M[k][j]:
                c = M[k][j] // pt
                for row in M:
                    row[j] = (row[j] - c * row[k]) % mod
                for row in B:
                    row[j] = (row[j] - c * row[k]) % mod
        ts[k] = t
    return A, ts, B


@dataclass(frozen=True)
class VandermondeSystem:
    """The Vandermonde matrix V[i][j] = w_i^j over Z/p^lam, a generating set of
    its right kernel {x : Vx = 0}, and the conclusiveness thresholds gamma_j =
    min over generators of nu(component j)."""

    p: int
    lam: int
    weights: tuple[WeightSpec, ...]
    V: tuple[tuple[int, ...], ...]
    kernel_gens: tuple[tuple[int, ...], ...]
    gamma: tuple[CappedVal, ...]
    _A: tuple[tuple[int, ...], ...]
    _ts: tuple[int, ...]
    _B: tuple[tuple[int, ...], ...]

    @property
    def modulus(self) -> int:
        return self.p**self.lam

    def apply(self, x) -> list[int]:
        mod = self.modulus
        return [sum(r * v for r, v in zip(row, x)) % mod for row in self.V]

    def solve(self, theta) -> tuple[int, ...]:
        """One particular solution of Vx = theta mod p^lam."""
        mod = self.modulus
        n = self.lam
        c = [sum(a * t for a, t in zip(row, theta)) % mod for row in self._A]
        y = [0] * n
        for k in range(n):
            pt = self.p ** self._ts[k]
            if c[k] % pt:
                raise UnsolvableSystem(
                    f"component {k} needs valuation >= {self._ts[k]}, "
                    f"got residue {c[k]}"
                )
            y[k] = c[k] // pt
        return tuple(
            sum(self._B[i][k] * y[k] for k in range(n)) % mod for i in range(n)
        )


def build_system(p: int, lam: int, weights=None) -> VandermondeSystem:
    if weights is None:
        weights = weight_list(p, lam)
    if len(weights) != lam:
        raise ValueError(f"expected {lam} weights, got {len(weights)}")
    mod = p**lam
    ws = [w.w for w in weights]
    if len(set(ws)) != len(ws):
        raise ValueError("duplicate weight coordinates mod p^lam")
    V = [[pow(w, j, mod) for j in range(lam)] for w in ws]
    A, ts, B = _smith_diagonalize(V, p, lam)
    gens = []
    for k, t in enumerate(ts):
        if t == 0:
            continue
        scale = p ** (lam - t)
        g = tuple(B[i][k] * scale % mod for i in range(lam))
        if any(g):
            gens.append(g)
    system = VandermondeSystem(
        p=p,
        lam=lam,
        weights=tuple(weights),
        V=tuple(tuple(row) for row in V),
        kernel_gens=tuple(gens),
        gamma=tuple(
            _component_gamma(gens, j, p, lam) for j in range(lam)
        ),
        _A=tuple(tuple(row) for row in A),
        _ts=tuple(ts),
        _B=tuple(tuple(row) for row in B),
    )
    for g in system.kernel_gens:
        if any(system.apply(g)):
            raise AssertionError("kernel generator does not annihilate V")
    return system


def _component_gamma(gens, j: int, p: int, lam: int) -> CappedVal:
    best = CappedVal.at_least_e(lam)
    for g in gens:
        best = best.min_with(padic_val(g[j], p, lam))
    return best


@dataclass(frozen=True)
class ValStatus:
    """Outcome for one (r, j): an exact valuation (strictly below the kernel
    ambiguity gamma_j) or inconclusive at threshold gamma_j."""

    exact: bool
    value: int | None
    gamma: CappedVal

    @property
    def status(self) -> str:
        return "exact" if self.exact else "inconclusive"

    @property
    def gamma_int(self) -> int:
        return self.gamma.lower_bound


@dataclass(frozen=True)
class ValuationRow:
    p: int
    r: int
    lam: int
    entries: dict[int, ValStatus]


def sturm_count(p: int, r: int) -> int:
    """S = ceil(r(p-1)/12): coefficients a_0..a_S pin down the valuation of a
    weight-r(p-1) form."""
    return -(-(r * (p - 1)) // 12)


def katz_row_coeffs(p: int, r: int, lam: int, coords, count: int) -> list[int]:
    """First `count` q-coefficients of the weight-r(p-1) form with the given
    coordinates over the basis forms g_{r,j}."""
    ring = RingSpec(p, lam)
    mod = ring.modulus
    if r == 0:
        return [coords[0] % mod] + [0] * (count - 1)
    lo, hi = dim_mk((r - 1) * (p - 1)), dim_mk(r * (p - 1))
    if len(coords) != hi - lo:
        raise ValueError(f"expected {hi - lo} coordinates for row {r}")
    acc = [0] * count
    for x, j in zip(coords, range(lo, hi)):
        if x:
            g = g_form(p, r, j, ring, count).series
            for mu in range(count):
                acc[mu] += x * g.coeffs[mu]
    return [c % mod for c in acc]


def _row_coords_from_ratio(p: int, r: int, lam: int, s: int):
    N = dim_mk(r * (p - 1))
    ratio = eis_ratio_by_s(p, s, lam, N)
    t = psi(p, r, lam, ratio)
    lo, hi = (0, 1) if r == 0 else (dim_mk((r - 1) * (p - 1)), dim_mk(r * (p - 1)))
    return t.x[lo:hi]


def row_solutions(p, r, lam, weights=None, system=None, row_coords=None):
    """Particular solutions x_mu of V x_mu = theta_mu for mu = 0..S, where
    theta_mu collects the mu-th q-coefficient of the r-th Katz component
    across the weights.  Returns (system, solutions)."""
    if system is None:
        system = build_system(p, lam, weights)
    if row_coords is None:
        row_coords = [_row_coords_from_ratio(p, r, lam, w.s) for w in system.weights]
    count = sturm_count(p, r) + 1
    betas = [katz_row_coeffs(p, r, lam, coords, count) for coords in row_coords]
    thetas = [[beta[mu] for beta in betas] for mu in range(count)]
    return system, [system.solve(theta) for theta in thetas]


def collect_statuses(system: VandermondeSystem, solutions, j_max: int):
    """Per-component minimum valuation over the solutions, classified against
    the kernel thresholds.  Ambiguity-proof: perturbing any solution by a
    kernel element cannot change an exact entry."""
    p, lam = system.p, system.lam
    out = {}
    for j in range(j_max + 1):
        alpha = CappedVal.at_least_e(lam)
        for sol in solutions:
            alpha = alpha.min_with(padic_val(sol[j], p, lam))
        gamma = system.gamma[j]
        if alpha.less_than(gamma):
            out[j] = ValStatus(exact=True, value=alpha.v, gamma=gamma)
        else:
            out[j] = ValStatus(exact=False, value=None, gamma=gamma)
    return out


def solve_row(
    p: int,
    r: int,
    lam: int,
    j_max: int | None = None,
    weights=None,
    system=None,
    row_coords=None,
) -> ValuationRow:
    """Valuations nu(b_{r,j}) for 0 <= j <= j_max, each exact or inconclusive."""
    if j_max is None:
        j_max = min(r, lam - 1)
    if j_max > lam - 1:
        raise ValueError(f"j_max = {j_max} exceeds lam - 1 = {lam - 1}")
    system, solutions = row_solutions(
        p, r, lam, weights=weights, system=system, row_coords=row_coords
    )
    entries = collect_statuses(system, solutions, j_max)
    return ValuationRow(p=p, r=r, lam=lam, entries=entries)
