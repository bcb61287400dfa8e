"""Iterated exponents and the scheme bound ``n_phi = p ** (2_m ** 3)``.

Values of the form ``2_m^k`` leave machine range almost immediately
(``2_3^3 = 2**256``), so they are carried as :class:`TowerInt` values: an
:class:`Exact` integer while the value is below :data:`CUTOFF`, otherwise a
symbolic :class:`Tower` ``base ** exponent`` whose exponent is itself a
``TowerInt``.  Only comparison and exponentiation are supported.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

import mpmath

CUTOFF = 1 << 64

# values up to this many bits are materialized when comparing
_COMPARE_BITS = 1 << 16
# mantissa bits for iterated-logarithm comparisons
_PREC = 1024


class TowerOverflow(OverflowError):
    """Raised by :func:`to_exact` on a value above the materialization cutoff."""

    def __init__(self, value: "TowerInt"):
        super().__init__(f"value {value} exceeds the materialization cutoff")
        self.value = value


@total_ordering
class TowerInt:
    """Common base of :class:`Exact` and :class:`Tower`; ordered by value."""

    __slots__ = ()
    __hash__ = None  # equal values may have different shapes

    def __eq__(self, other):
        if not isinstance(other, (TowerInt, int)):
            return NotImplemented
        return cmp(self, other) == 0

    def __lt__(self, other):
        if not isinstance(other, (TowerInt, int)):
            return NotImplemented
        return cmp(self, other) < 0

    def height(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Exact(TowerInt):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("TowerInt values are natural numbers")

    def height(self) -> int:
        return 0

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, eq=False)
class Tower(TowerInt):
    base: int
    exponent: TowerInt

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("tower base must be >= 2")

    def height(self) -> int:
        return 1 + self.exponent.height()

    def __str__(self):
        m = _tower2_index(self.exponent)
        if m is not None and m >= 3:
            return f"{self.base}^(2_{m}^3)"
        if isinstance(self.exponent, Exact):
            return f"{self.base}^{self.exponent.value}"
        return f"{self.base}^({self.exponent})"


def as_tower(x) -> TowerInt:
    if isinstance(x, TowerInt):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Exact(x)
    raise TypeError(f"cannot interpret {x!r} as a TowerInt")


def power(base: int, exponent) -> TowerInt:
    """``base ** exponent``, exact when the result is below :data:`CUTOFF`."""
    if base < 2:
        raise ValueError("base must be >= 2")
    exponent = as_tower(exponent)
    if isinstance(exponent, Exact):
        e = exponent.value
        # base**e >= 2**(e * floor(log2 base)); skip the big computation if hopeless
        if e * (base.bit_length() - 1) < 64:
            v = base**e
            if v < CUTOFF:
                return Exact(v)
    return Tower(base, exponent)


def tower2(m: int, k: int) -> TowerInt:
    """The iterated exponent ``2_m^k``: ``2_0^k = k`` and ``2_{m+1}^k = 2 ** 2_m^k``."""
    if m < 0 or k < 0:
        raise ValueError("tower2 takes natural arguments")
    t: TowerInt = Exact(k)
    for _ in range(m):
        t = power(2, t)
    return t


def n_phi(p: int, length: int) -> TowerInt:
    """The numeral bound of the scheme instance for a formula of the given length."""
    return power(p, tower2(length, 3))


def to_exact(x: TowerInt) -> int:
    x = as_tower(x)
    if isinstance(x, Exact):
        return x.value
    raise TowerOverflow(x)


def _tower2_index(x: TowerInt):
    """Return m if ``x`` is structurally ``tower2(m, 3)``, else None."""
    levels = 0
    while isinstance(x, Tower):
        if x.base != 2:
            return None
        levels += 1
        x = x.exponent
    small = {3: 0, 8: 1, 256: 2}
    if x.value not in small:
        return None
    if levels and x.value != 256:
        # canonical towers of 2 materialize everything below 2**64
        return None
    return small[x.value] + levels


# -- comparison -----------------------------------------------------------


def cmp(a, b) -> int:
    """Three-way comparison of the represented values: -1, 0 or 1."""
    a, b = as_tower(a), as_tower(b)
    if isinstance(a, Exact) and isinstance(b, Exact):
        return (a.value > b.value) - (a.value < b.value)
    xa, xb = _materialize(a), _materialize(b)
    if xa is not None and xb is not None:
        return (xa > xb) - (xa < xb)
    if xa is not None:
        return -1
    if xb is not None:
        return 1
    return _cmp_huge(a, b)


def _materialize(x: TowerInt):
    """Exact value if it has at most ``_COMPARE_BITS`` bits, else None."""
    if isinstance(x, Exact):
        return x.value if x.value.bit_length() <= _COMPARE_BITS else None
    e = _materialize(x.exponent)
    if e is None or e * (x.base.bit_length() - 1) > _COMPARE_BITS:
        return None
    v = x.base**e
    return v if v.bit_length() <= _COMPARE_BITS else None


def _perfect_root(b: int):
    """Smallest r with b == r**i; returns (r, i)."""
    for i in range(b.bit_length(), 1, -1):
        r = mpmath.nint(mpmath.root(b, i))
        r = int(r)
        if r >= 2 and r**i == b:
            return r, i
    return b, 1


def _cmp_huge(a: TowerInt, b: TowerInt) -> int:
    # both values exceed 2**_COMPARE_BITS
    if isinstance(a, Tower) and isinstance(b, Tower):
        ra, ia = _perfect_root(a.base)
        rb, ib = _perfect_root(b.base)
        ea, eb = _materialize(a.exponent), _materialize(b.exponent)
        if ra == rb and ea is not None and eb is not None:
            # same radical: compare ia * ea against ib * eb exactly
            lhs, rhs = ia * ea, ib * eb
            return (lhs > rhs) - (lhs < rhs)
    if isinstance(a, Exact) != isinstance(b, Exact):
        c = _cmp_exact_tower(a, b) if isinstance(a, Exact) else _cmp_exact_tower(b, a)
        if c is not None:
            return c if isinstance(a, Exact) else -c
    # compare iterated logarithms at the first depth where both are representable
    with mpmath.workprec(_PREC):
        for k in range(max(a.height(), b.height()) + 2):
            la, lb = _log_iter(a, k), _log_iter(b, k)
            if la is None or lb is None:
                continue
            if la != lb:
                return 1 if la > lb else -1
            break
    # indistinguishable at working precision
    if isinstance(a, Tower) and isinstance(b, Tower):
        c = cmp(a.exponent, b.exponent)
        return c if c != 0 else (a.base > b.base) - (a.base < b.base)
    return 0


def _cmp_exact_tower(a: Exact, b: Tower):
    """Exact comparison when b's exponent is materializable, else None."""
    e = _materialize(b.exponent)
    if e is None:
        return None
    n = a.value.bit_length()
    r, i = _perfect_root(b.base)
    if r == 2:
        # b = 2**(i*e), which has i*e + 1 binary digits
        m = i * e
        if n != m + 1:
            return 1 if n > m + 1 else -1
        return 0 if a.value == 1 << m else 1
    # b has between floor(e*log2 b) and that plus one digits
    lo = e * (b.base.bit_length() - 1)
    hi = e * b.base.bit_length()
    if n <= lo:
        return -1
    if n > hi + 1:
        return 1
    v = b.base**e
    return (a.value > v) - (a.value < v)


def _as_mpf(x: TowerInt):
    """The value as a binary float (exponent unbounded), or None when even that is too big."""
    if isinstance(x, Exact):
        return mpmath.mpf(x.value)
    e = _materialize(x.exponent)
    return None if e is None else mpmath.power(x.base, e)


def _log2(v):
    return mpmath.log(v, 2) if v > 0 else mpmath.mpf("-inf")


def _log_iter(x: TowerInt, k: int):
    """``log2`` applied k times to the value of x, or None if not representable."""
    if k == 0:
        return _as_mpf(x)
    if isinstance(x, Exact):
        v = mpmath.mpf(x.value)
        for _ in range(k):
            v = _log2(v)
        return v
    lb = mpmath.log(x.base, 2)
    if k == 1:
        e = _as_mpf(x.exponent)
        return None if e is None else e * lb
    # log2 log2 x = log2(exponent) + log2 log2(base)
    inner = _log_iter(x.exponent, 1)
    if inner is None:
        # log2(exponent) is far beyond any float precision: the additive constant is invisible
        return _log_iter(x.exponent, k - 1)
    v = inner + _log2(lb)
    for _ in range(k - 2):
        v = _log2(v)
    return v
