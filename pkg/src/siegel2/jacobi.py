"""Index-1 Jacobi forms, Cohen numbers, and the arithmetic lift to degree 2.

A holomorphic index-1 Jacobi form of even weight is determined by one
coefficient c(D) per discriminant D = 4n - r^2 >= 0 with D = 0 or 3 mod 4,
which is how ``JacobiForm1`` stores it.  The Eisenstein members are built
from Cohen's numbers H(r, N), special values of quadratic L-functions
computed exactly through generalized Bernoulli numbers.  ``maass_lift``
turns an index-1 form into a degree-2 expansion by divisor sums over
gcd(m, r, n); the cusp variant produces the weight-10 and weight-12
generators, the Eisenstein variant the weight-4 and weight-6 ones.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import PrecisionError
from .expansion import SiegelExpansion
from .rationals import (
    bernoulli,
    bernoulli_polynomial,
    divisors,
    factorize,
    normalize,
)

__all__ = [
    "JacobiForm1",
    "cohen_h",
    "jacobi_combine",
    "jacobi_eisenstein",
    "kronecker",
    "maass_lift",
]


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) of a discriminant, completely multiplicative in n."""
    if D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a discriminant (need 0 or 1 mod 4)")
    if n < 1:
        raise ValueError("kronecker needs n >= 1")
    result = 1
    for q, e in factorize(n):
        if q == 2:
            if D % 2 == 0:
                return 0
            s = 1 if D % 8 in (1, 7) else -1
        else:
            s = pow(D, (q - 1) // 2, q)
            if s == 0:
                return 0
            if s == q - 1:
                s = -1
        if e % 2:
            result *= s
    return result


def _moebius(n: int) -> int:
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def _fundamental_split(d0: int) -> tuple[int, int]:
    """Write a discriminant d0 != 0 as D * f^2 with D fundamental."""
    sign = -1 if d0 < 0 else 1
    core = sign
    f = 1
    for q, e in factorize(abs(d0)):
        if e % 2:
            core *= q
        f *= q ** (e // 2)
    if core % 4 == 1:
        return core, f
    # core = 2 or 3 mod 4: the fundamental part is 4*core and f must be even
    return 4 * core, f // 2


def _l_value(r: int, D: int):
    """L(1 - r, chi_D) for a fundamental discriminant D, via the generalized
    Bernoulli number of the Kronecker character mod |D|."""
    c = abs(D)
    total = Fraction(0)
    for a in range(1, c + 1):
        chi = kronecker(D, a)
        if chi:
            total += chi * bernoulli_polynomial(r, Fraction(a, c))
    b_chi = Fraction(c) ** (r - 1) * total
    return normalize(-b_chi / r)


def cohen_h(r: int, N: int):
    """Cohen's number H(r, N), exactly.

    H(r, 0) is the zeta value at 1 - 2r.  For N > 0 with (-1)^r N a
    discriminant, split (-1)^r N = D f^2 with D fundamental; then H(r, N)
    is L(1 - r, chi_D) times the twisted divisor sum over d | f.  The
    complementary residue classes give 0.
    """
    if r < 1:
        raise ValueError("cohen_h needs r >= 1")
    if N < 0:
        raise ValueError("cohen_h needs N >= 0")
    if N == 0:
        return normalize(-Fraction(bernoulli(2 * r), 2 * r))
    d0 = N if r % 2 == 0 else -N
    if d0 % 4 in (2, 3):
        return 0
    D, f = _fundamental_split(d0)
    total = 0
    for d in divisors(f):
        mu = _moebius(d)
        if mu:
            chi = kronecker(D, d)
            if chi:
                total += mu * chi * d ** (r - 1) * _divisor_power_sum(f // d, 2 * r - 1)
    return normalize(_l_value(r, D) * total)


def _divisor_power_sum(n: int, t: int) -> int:
    return sum(d**t for d in divisors(n))


class JacobiForm1:
    """Index-1 Jacobi form stored by discriminant: D -> c(D), 0 <= D <= dmax.

    Keys satisfy D = 0 or 3 mod 4; c(D) = 0 for D < 0 (holomorphy) and on
    the complementary classes.
    """

    __slots__ = ("weight", "dmax", "c")

    def __init__(self, weight: int, dmax: int, c=None):
        if weight % 2:
            raise ValueError("only even weights are supported")
        if dmax < 0:
            raise ValueError("dmax must be >= 0")
        self.weight = weight
        self.dmax = dmax
        clean = {}
        for d, value in (c or {}).items():
            if d < 0 or d > dmax:
                raise ValueError(f"discriminant {d} outside [0..{dmax}]")
            if d % 4 not in (0, 3):
                raise ValueError(f"discriminant {d} is not 0 or 3 mod 4")
            value = normalize(value)
            if value:
                clean[d] = value
        self.c = clean

    def coeff(self, d: int):
        if d > self.dmax:
            raise PrecisionError(f"discriminant {d} beyond stored bound {self.dmax}")
        if d < 0 or d % 4 not in (0, 3):
            return 0
        return self.c.get(d, 0)

    def __eq__(self, other):
        if not isinstance(other, JacobiForm1):
            return NotImplemented
        return (
            self.weight == other.weight
            and self.dmax == other.dmax
            and self.c == other.c
        )

    def __repr__(self):
        return f"JacobiForm1(weight={self.weight}, dmax={self.dmax}, {len(self.c)} terms)"


def jacobi_eisenstein(k: int, dmax: int) -> JacobiForm1:
    """Index-1 Eisenstein Jacobi form of weight k in {4, 6}, c(0) = 1.

    c(D) = H(k-1, D) / H(k-1, 0) for D > 0; these ratios are integers.
    """
    if k not in (4, 6):
        raise ValueError(f"jacobi_eisenstein supports k in {{4, 6}}, got {k}")
    h0 = cohen_h(k - 1, 0)
    c = {0: 1}
    for d in range(3, dmax + 1):
        if d % 4 in (0, 3):
            c[d] = normalize(Fraction(cohen_h(k - 1, d)) / h0)
    return JacobiForm1(k, dmax, c)


def jacobi_combine(terms) -> JacobiForm1:
    """Exact linear combination sum coeff * (f * phi) of index-1 forms.

    Each term is (coefficient, f, phi) with f a one-variable expansion in q
    and phi an index-1 Jacobi form; multiplying by f(tau) preserves the
    index, so the product is again stored by discriminant.  All terms must
    produce the same weight, and every f must reach q-precision
    floor(dmax/4) + 1.
    """
    if not terms:
        raise ValueError("need at least one term")
    weights = {coeff_f_phi[1].weight + coeff_f_phi[2].weight for coeff_f_phi in terms}
    if len(weights) > 1:
        raise ValueError(f"mixed result weights {sorted(weights)}")
    dmax = min(phi.dmax for _, _, phi in terms)
    need = dmax // 4 + 1
    for _, f, _ in terms:
        if f.precision < need:
            raise PrecisionError(
                f"series precision {f.precision} < {need} required for dmax {dmax}"
            )
    c = {}
    for d in range(dmax + 1):
        if d % 4 not in (0, 3):
            continue
        r = 0 if d % 4 == 0 else 1
        n = (d + r * r) // 4
        total = 0
        for coeff, f, phi in terms:
            inner = 0
            for j, fj in f.coeffs.items():
                if j <= n:
                    inner += fj * phi.coeff(d - 4 * j)
            total += coeff * inner
        if total:
            c[d] = normalize(total)
    return JacobiForm1(weights.pop(), dmax, c)


def maass_lift(phi: JacobiForm1, precision: int, mode: str = "cusp") -> SiegelExpansion:
    """Arithmetic lift of an index-1 Jacobi form to a degree-2 expansion.

    Coefficients are divisor sums a(m, r, n) = sum_{d | gcd(m, r, n)}
    d^(k-1) c((4mn - r^2)/d^2), with gcd(0, 0, n) = n so the singular rows
    come out right.  The cusp mode (c(0) = 0) keeps them zero; the
    Eisenstein mode rescales by -2k/B_k and sets the constant term to 1,
    which makes the singular rows the weight-k divisor sums.
    """
    k = phi.weight
    if mode not in ("cusp", "eisenstein"):
        raise ValueError(f"unknown lift mode {mode!r}")
    if phi.dmax < 4 * precision * precision:
        raise PrecisionError(
            f"need discriminants up to {4 * precision * precision}, have {phi.dmax}"
        )
    if mode == "cusp" and phi.coeff(0) != 0:
        raise ValueError("cusp lift requires c(0) = 0")
    factor = 1 if mode == "cusp" else normalize(Fraction(-2 * k) / bernoulli(k))
    coeffs = {}
    for m in range(precision + 1):
        for n in range(precision + 1):
            rmax = isqrt(4 * m * n)
            for r in range(-rmax, rmax + 1):
                if m == 0 and n == 0:
                    if mode == "eisenstein":
                        coeffs[(0, 0, 0)] = 1
                    continue
                disc = 4 * m * n - r * r
                g = gcd(gcd(m, n), r)
                total = 0
                for d in divisors(g):
                    total += d ** (k - 1) * phi.coeff(disc // (d * d))
                if total:
                    value = normalize(factor * total)
                    if value:
                        coeffs[(m, r, n)] = value
    return SiegelExpansion(k, precision, coeffs)
