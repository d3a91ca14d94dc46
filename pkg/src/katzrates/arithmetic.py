"""Exact arithmetic in Z/p^e and on truncated q-expansions over Z/p^e."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    """The coefficient ring Z/p^e for a prime p >= 5 and precision exponent e >= 1."""

    p: int
    e: int

    def __post_init__(self):
        if self.p < 5 or not _is_prime(self.p):
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        if self.e < 1:
            raise ValueError(f"e must be >= 1, got {self.e}")

    @cached_property
    def modulus(self) -> int:
        return self.p**self.e


@dataclass(frozen=True)
class CappedVal:
    """p-adic valuation of a residue mod p^e: either a finite value < e, or >= e.

    A residue divisible by p^e is indistinguishable from 0 at this precision,
    so its valuation is reported as "at least e", never a finite number.
    """

    cap: int
    v: int | None = None  # None means "at least cap"

    def __post_init__(self):
        if self.v is not None and not 0 <= self.v < self.cap:
            raise ValueError(f"finite valuation {self.v} out of range [0, {self.cap})")

    @classmethod
    def finite(cls, v: int, cap: int) -> "CappedVal":
        return cls(cap=cap, v=v)

    @classmethod
    def at_least_e(cls, cap: int) -> "CappedVal":
        return cls(cap=cap, v=None)

    @property
    def is_finite(self) -> bool:
        return self.v is not None

    @property
    def lower_bound(self) -> int:
        """Certified lower bound: the value itself if finite, else the cap."""
        return self.cap if self.v is None else self.v

    def at_least(self, m: int) -> bool:
        """True when the valuation is certainly >= m."""
        return self.lower_bound >= m

    def less_than(self, other: "CappedVal") -> bool:
        """True when this valuation is certainly strictly below `other`."""
        return self.v is not None and self.v < other.lower_bound

    def min_with(self, other: "CappedVal") -> "CappedVal":
        if self.cap != other.cap:
            raise ValueError("cannot compare valuations at different caps")
        return self if self.lower_bound <= other.lower_bound else other

    def __repr__(self):
        return f">={self.cap}" if self.v is None else str(self.v)


def padic_val(x: int, p: int, cap: int) -> CappedVal:
    """Valuation of the residue x mod p^cap."""
    x %= p**cap
    if x == 0:
        return CappedVal.at_least_e(cap)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return CappedVal.finite(v, cap)


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^e, stored as its canonical representative in [0, p^e)."""

    ring: RingSpec
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.ring.modulus)

    def _check(self, other: "Residue"):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        self._check(other)
        return Residue(self.ring, self.value + other.value)

    def __sub__(self, other):
        self._check(other)
        return Residue(self.ring, self.value - other.value)

    def __mul__(self, other):
        self._check(other)
        return Residue(self.ring, self.value * other.value)

    def __neg__(self):
        return Residue(self.ring, -self.value)

    @property
    def is_unit(self) -> bool:
        return self.value % self.ring.p != 0

    def inverse(self) -> "Residue":
        if not self.is_unit:
            raise ValueError(f"{self.value} is not a unit mod {self.ring.p}^{self.ring.e}")
        return Residue(self.ring, pow(self.value, -1, self.ring.modulus))

    def val(self) -> CappedVal:
        return padic_val(self.value, self.ring.p, self.ring.e)


def residue_val(x: Residue) -> CappedVal:
    return x.val()


@dataclass(frozen=True)
class QSeries:
    """A q-expansion over Z/p^e truncated at q^N (coefficients of q^0..q^{N-1}).

    Coefficients are stored as canonical integer representatives; `coeff` gives
    the Residue view of a single coefficient.
    """

    ring: RingSpec
    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, ring: RingSpec, coeffs, N: int | None = None) -> "QSeries":
        cs = list(coeffs)
        if N is not None:
            if len(cs) > N:
                cs = cs[:N]
            else:
                cs.extend([0] * (N - len(cs)))
        mod = ring.modulus
        return cls(ring, tuple(c % mod for c in cs))

    @classmethod
    def constant(cls, ring: RingSpec, c: int, N: int) -> "QSeries":
        return cls.from_coeffs(ring, [c], N)

    @classmethod
    def one(cls, ring: RingSpec, N: int) -> "QSeries":
        return cls.constant(ring, 1, N)

    @classmethod
    def zero(cls, ring: RingSpec, N: int) -> "QSeries":
        return cls.constant(ring, 0, N)

    @property
    def n_trunc(self) -> int:
        return len(self.coeffs)

    def coeff(self, n: int) -> Residue:
        return Residue(self.ring, self.coeffs[n])

    def _check(self, other: "QSeries"):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError(
                f"truncation mismatch: {len(self.coeffs)} vs {len(other.coeffs)}"
            )

    def __add__(self, other):
        self._check(other)
        mod = self.ring.modulus
        return QSeries(
            self.ring, tuple((a + b) % mod for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        mod = self.ring.modulus
        return QSeries(
            self.ring, tuple((a - b) % mod for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other):
        self._check(other)
        mod = self.ring.modulus
        n = len(self.coeffs)
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if ai:
                for k in range(n - i):
                    bk = b[k]
                    if bk:
                        out[i + k] += ai * bk
        return QSeries(self.ring, tuple(c % mod for c in out))

    def scaled(self, c: int) -> "QSeries":
        mod = self.ring.modulus
        return QSeries(self.ring, tuple(a * c % mod for a in self.coeffs))

    def __pow__(self, exponent: int) -> "QSeries":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QSeries.one(self.ring, len(self.coeffs))
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def inverse(self) -> "QSeries":
        """Multiplicative inverse mod (q^N, p^e); requires a unit constant term."""
        a = self.coeffs
        ring = self.ring
        if a[0] % ring.p == 0:
            raise ValueError("constant term is not a unit mod p")
        mod = ring.modulus
        n = len(a)
        a0inv = pow(a[0], -1, mod)
        b = [a0inv] + [0] * (n - 1)
        for k in range(1, n):
            s = 0
            for i in range(1, k + 1):
                if a[i]:
                    s += a[i] * b[k - i]
            b[k] = (-a0inv * s) % mod
        return QSeries(ring, tuple(b))

    def val(self) -> CappedVal:
        """min_n nu_p(a_n), capped at e."""
        best = CappedVal.at_least_e(self.ring.e)
        for c in self.coeffs:
            best = best.min_with(padic_val(c, self.ring.p, self.ring.e))
            if best.v == 0:
                break
        return best

    def reduce(self, e2: int) -> "QSeries":
        """The same series viewed mod p^e2 for e2 <= e."""
        if e2 > self.ring.e:
            raise ValueError("cannot raise precision")
        ring2 = RingSpec(self.ring.p, e2)
        m = ring2.modulus
        return QSeries(ring2, tuple(c % m for c in self.coeffs))

    def truncate(self, N2: int) -> "QSeries":
        if N2 > len(self.coeffs):
            raise ValueError("cannot extend truncation")
        return QSeries(self.ring, self.coeffs[:N2])


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    return f * g


def series_inverse(f: QSeries) -> QSeries:
    return f.inverse()


def series_val(f: QSeries) -> CappedVal:
    return f.val()


def v_operator(f: QSeries) -> QSeries:
    """The Frobenius V on q-expansions: q -> q^p, truncated at the input's q^N."""
    p = f.ring.p
    n = len(f.coeffs)
    out = [0] * n
    for k in range(n):
        idx = k * p
        if idx >= n:
            break
        out[idx] = f.coeffs[k]
    return QSeries(f.ring, tuple(out))
