"""The partial Katz expansion isomorphism: psi takes a truncated q-expansion
to its coordinates over the basis blocks, phi realizes the expansion back as a
q-expansion (round-trip oracle)."""

from __future__ import annotations

from dataclasses import dataclass

from .arithmetic import QSeries, RingSpec
from .basis import BasisMatrix, basis_matrix, dim_mk


class PrecisionMismatch(ValueError):
    """Input truncation or ring precision does not match (p, n, C)."""


@dataclass(frozen=True)
class KatzComponent:
    """The i-th term of a partial Katz expansion: coordinates over the basis
    forms g_{i,j} (j running over `js`) and the realized q-expansion."""

    i: int
    js: tuple[int, ...]
    coords: tuple[int, ...]
    series: QSeries


@dataclass(frozen=True)
class KatzTuple:
    p: int
    n: int
    ring: RingSpec
    x: tuple[int, ...]  # full solution vector, indexed by column j
    components: tuple[KatzComponent, ...]


def _forward_substitute(matrix: BasisMatrix, rhs) -> list[int]:
    """Solve Mx = B for unit-lower-triangular M, division-free, exact mod p^C."""
    mod = matrix.ring.modulus
    cols = matrix.columns
    x = [0] * matrix.N
    for r in range(matrix.N):
        acc = rhs[r]
        for c in range(r):
            if x[c]:
                acc -= cols[c][r] * x[c]
        x[r] = acc % mod
    return x


def _group(matrix: BasisMatrix, x) -> tuple[KatzComponent, ...]:
    comps = []
    for i, lo, hi in matrix.blocks:
        js = tuple(range(lo, hi))
        coords = tuple(x[lo:hi])
        series = QSeries.zero(matrix.ring, matrix.N)
        for j, c in zip(js, coords):
            if c:
                series = series + matrix.forms[j].series.scaled(c)
        comps.append(KatzComponent(i=i, js=js, coords=coords, series=series))
    return tuple(comps)


def psi(p: int, n: int, C: int, f: QSeries) -> KatzTuple:
    """Katz expansion of f mod (q^N, p^C), N = d_{n(p-1)}, as an (n+1)-tuple."""
    matrix = basis_matrix(p, n, C)
    if f.ring != matrix.ring:
        raise PrecisionMismatch(
            f"series ring {f.ring} does not match Z/{p}^{C}"
        )
    if f.n_trunc != matrix.N:
        raise PrecisionMismatch(
            f"series truncation {f.n_trunc} does not match required N = "
            f"d_{{{n}({p}-1)}} = {matrix.N}"
        )
    x = _forward_substitute(matrix, f.coeffs)
    return KatzTuple(p=p, n=n, ring=matrix.ring, x=tuple(x), components=_group(matrix, x))


def phi(p: int, n: int, C: int, t: KatzTuple) -> QSeries:
    """Realize a Katz tuple as sum_i b_i / E_{p-1}^i mod (q^N, p^C)."""
    matrix = basis_matrix(p, n, C)
    if len(t.components) != n + 1:
        raise ValueError(f"expected {n + 1} components, got {len(t.components)}")
    out = QSeries.zero(matrix.ring, matrix.N)
    for comp in t.components:
        expected = matrix.blocks[comp.i][2] - matrix.blocks[comp.i][1]
        if len(comp.coords) != expected:
            raise ValueError(f"component {comp.i} has wrong dimension")
        if any(comp.coords):
            out = out + comp.series * matrix.einv_pows[comp.i]
    return out


def tuple_from_coords(p: int, n: int, C: int, x) -> KatzTuple:
    """Build a KatzTuple directly from a full coordinate vector."""
    matrix = basis_matrix(p, n, C)
    if len(x) != matrix.N:
        raise ValueError(f"expected {matrix.N} coordinates")
    mod = matrix.ring.modulus
    xs = tuple(c % mod for c in x)
    return KatzTuple(p=p, n=n, ring=matrix.ring, x=xs, components=_group(matrix, xs))


def required_truncation(p: int, n: int) -> int:
    return dim_mk(n * (p - 1))
