"""One-variable q-expansions and two-variable diagonal series.

``QSeries1`` is a truncated expansion sum_{n <= P} a(n) q^n with exact
coefficients: the home of the classical Eisenstein series e2, e4, e6 and of
the discriminant cusp form.  ``DiagSeries`` is a truncated two-variable
series sum a(m, n) q1^m q2^n, the codomain of the diagonal-restriction
operators acting on degree-2 expansions.  Tensor squares of one-variable
forms land there via q ⊗ 1 -> q1 and 1 ⊗ q -> q2; the ``symmetry_sign``
tag records invariance (+1) or anti-invariance (-1) under swapping the two
tensor factors.

All operations truncate to the minimum precision of their operands and
never extrapolate.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PrecisionError
from .rationals import bernoulli, divisors, normalize

_SCALARS = (int, Fraction)


def divisor_sigma(n: int, t: int = 1) -> int:
    """Sum of t-th powers of the positive divisors of n >= 1."""
    if n < 1:
        raise ValueError("divisor_sigma needs n >= 1")
    return sum(d**t for d in divisors(n))


class QSeries1:
    """Truncated one-variable q-expansion with exact coefficients.

    ``coeffs`` maps n in [0..precision] to a nonzero rational; absent keys
    are zero.  ``weight`` is an informational tag (None when mixed).
    ``quasi_flag`` marks the weight-2 Eisenstein series only.
    """

    __slots__ = ("precision", "coeffs", "weight", "quasi_flag")

    def __init__(self, precision, coeffs=None, weight=0, quasi_flag=False):
        if precision < 0:
            raise ValueError("precision must be >= 0")
        self.precision = precision
        self.weight = weight
        self.quasi_flag = quasi_flag
        clean = {}
        for n, c in (coeffs or {}).items():
            if not 0 <= n <= precision:
                raise ValueError(f"index {n} outside [0..{precision}]")
            c = normalize(c)
            if c:
                clean[n] = c
        self.coeffs = clean

    def coeff(self, n: int):
        if not 0 <= n <= self.precision:
            raise ValueError(f"coefficient {n} is beyond precision {self.precision}")
        return self.coeffs.get(n, 0)

    def truncate(self, precision: int) -> "QSeries1":
        if precision > self.precision:
            raise PrecisionError(
                f"cannot extend precision {self.precision} to {precision}"
            )
        kept = {n: c for n, c in self.coeffs.items() if n <= precision}
        return QSeries1(precision, kept, self.weight, self.quasi_flag)

    def __add__(self, other):
        if not isinstance(other, QSeries1):
            return NotImplemented
        prec = min(self.precision, other.precision)
        out = {n: c for n, c in self.coeffs.items() if n <= prec}
        for n, c in other.coeffs.items():
            if n <= prec:
                out[n] = out.get(n, 0) + c
        weight = self.weight if self.weight == other.weight else None
        return QSeries1(prec, out, weight)

    def __neg__(self):
        return QSeries1(self.precision, {n: -c for n, c in self.coeffs.items()}, self.weight)

    def __sub__(self, other):
        if not isinstance(other, QSeries1):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                return QSeries1(self.precision, {}, self.weight)
            return QSeries1(
                self.precision,
                {n: c * other for n, c in self.coeffs.items()},
                self.weight,
            )
        if not isinstance(other, QSeries1):
            return NotImplemented
        prec = min(self.precision, other.precision)
        out = {}
        for n1, c1 in self.coeffs.items():
            if n1 > prec:
                continue
            for n2, c2 in other.coeffs.items():
                n = n1 + n2
                if n > prec:
                    continue
                out[n] = out.get(n, 0) + c1 * c2
        weight = None
        if self.weight is not None and other.weight is not None:
            weight = self.weight + other.weight
        return QSeries1(prec, out, weight)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries1(self.precision, {0: 1}, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries1):
            return NotImplemented
        return self.precision == other.precision and self.coeffs == other.coeffs

    def __repr__(self):
        return f"QSeries1(precision={self.precision}, weight={self.weight}, {len(self.coeffs)} terms)"


def eisenstein1(k: int, precision: int) -> QSeries1:
    """Degree-1 Eisenstein series e_k, k in {2, 4, 6}, constant term 1.

    e_k = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^n.  The k = 2 series is
    only quasi-modular; it is flagged but otherwise an ordinary series.
    """
    if k not in (2, 4, 6):
        raise ValueError(f"eisenstein1 supports k in {{2, 4, 6}}, got {k}")
    factor = normalize(Fraction(-2 * k) / bernoulli(k))
    coeffs = {0: 1}
    for n in range(1, precision + 1):
        coeffs[n] = factor * divisor_sigma(n, k - 1)
    return QSeries1(precision, coeffs, weight=k, quasi_flag=(k == 2))


def delta1(precision: int) -> QSeries1:
    """The weight-12 discriminant cusp form (e4^3 - e6^2)/1728, leading term q."""
    e4 = eisenstein1(4, precision)
    e6 = eisenstein1(6, precision)
    series = (e4**3 - e6**2) * Fraction(1, 1728)
    return QSeries1(precision, series.coeffs, weight=12)


class DiagSeries:
    """Truncated series sum a(m, n) q1^m q2^n with exact coefficients.

    ``symmetry_sign`` is +1 when a(m, n) = a(n, m) holds on the whole box,
    -1 when a(m, n) = -a(n, m), and None when unknown.
    """

    __slots__ = ("precision", "coeffs", "weight", "symmetry_sign")

    def __init__(self, precision, coeffs=None, weight=0, symmetry_sign=None):
        if precision < 0:
            raise ValueError("precision must be >= 0")
        self.precision = precision
        self.weight = weight
        self.symmetry_sign = symmetry_sign
        clean = {}
        for (m, n), c in (coeffs or {}).items():
            if not (0 <= m <= precision and 0 <= n <= precision):
                raise ValueError(f"index {(m, n)} outside box [0..{precision}]^2")
            c = normalize(c)
            if c:
                clean[(m, n)] = c
        self.coeffs = clean

    def coeff(self, m: int, n: int):
        if not (0 <= m <= self.precision and 0 <= n <= self.precision):
            raise ValueError(f"index {(m, n)} is beyond precision {self.precision}")
        return self.coeffs.get((m, n), 0)

    def truncate(self, precision: int) -> "DiagSeries":
        if precision > self.precision:
            raise PrecisionError(
                f"cannot extend precision {self.precision} to {precision}"
            )
        kept = {
            (m, n): c
            for (m, n), c in self.coeffs.items()
            if m <= precision and n <= precision
        }
        return DiagSeries(precision, kept, self.weight, self.symmetry_sign)

    def symmetry_violations(self) -> list:
        """Index pairs where the declared swap symmetry fails (empty = pass)."""
        if self.symmetry_sign not in (1, -1):
            return []
        bad = []
        for (m, n), c in sorted(self.coeffs.items()):
            if self.coeffs.get((n, m), 0) != self.symmetry_sign * c:
                bad.append((m, n))
        return bad

    def __add__(self, other):
        if not isinstance(other, DiagSeries):
            return NotImplemented
        prec = min(self.precision, other.precision)
        out = {k: c for k, c in self.coeffs.items() if k[0] <= prec and k[1] <= prec}
        for k, c in other.coeffs.items():
            if k[0] <= prec and k[1] <= prec:
                out[k] = out.get(k, 0) + c
        weight = self.weight if self.weight == other.weight else None
        sign = self.symmetry_sign if self.symmetry_sign == other.symmetry_sign else None
        return DiagSeries(prec, out, weight, sign)

    def __neg__(self):
        return DiagSeries(
            self.precision,
            {k: -c for k, c in self.coeffs.items()},
            self.weight,
            self.symmetry_sign,
        )

    def __sub__(self, other):
        if not isinstance(other, DiagSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                return DiagSeries(self.precision, {}, self.weight, self.symmetry_sign)
            return DiagSeries(
                self.precision,
                {k: c * other for k, c in self.coeffs.items()},
                self.weight,
                self.symmetry_sign,
            )
        if not isinstance(other, DiagSeries):
            return NotImplemented
        prec = min(self.precision, other.precision)
        out = {}
        for (m1, n1), c1 in self.coeffs.items():
            if m1 > prec or n1 > prec:
                continue
            for (m2, n2), c2 in other.coeffs.items():
                m = m1 + m2
                if m > prec:
                    continue
                n = n1 + n2
                if n > prec:
                    continue
                key = (m, n)
                out[key] = out.get(key, 0) + c1 * c2
        weight = None
        if self.weight is not None and other.weight is not None:
            weight = self.weight + other.weight
        # Swap acts multiplicatively on tensor factors, so signs multiply.
        sign = None
        if self.symmetry_sign in (1, -1) and other.symmetry_sign in (1, -1):
            sign = self.symmetry_sign * other.symmetry_sign
        return DiagSeries(prec, out, weight, sign)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = DiagSeries(self.precision, {(0, 0): 1}, 0, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, DiagSeries):
            return NotImplemented
        return self.precision == other.precision and self.coeffs == other.coeffs

    def __repr__(self):
        return (
            f"DiagSeries(precision={self.precision}, weight={self.weight}, "
            f"sign={self.symmetry_sign}, {len(self.coeffs)} terms)"
        )


def diag_tensor(f: QSeries1, g: QSeries1) -> DiagSeries:
    """Tensor product a(m, n) = f_m g_n of two equal-precision series."""
    if f.precision != g.precision:
        raise PrecisionError("tensor factors must have equal precision")
    out = {}
    for m, cf in f.coeffs.items():
        for n, cg in g.coeffs.items():
            out[(m, n)] = cf * cg
    sign = 1 if f.coeffs == g.coeffs else None
    weight = None
    if f.weight is not None and g.weight is not None:
        weight = f.weight + g.weight
    return DiagSeries(f.precision, out, weight, sign)


_DIAG_BUILDERS = ("x2", "x4", "x6", "x12", "y12", "alpha36")


def diag_builder(name: str, precision: int) -> DiagSeries:
    """Named tensor-square series: x2, x4, x6 (Eisenstein squares),
    x12 (discriminant square), y12, and the antisymmetric alpha36."""
    if name not in _DIAG_BUILDERS:
        raise ValueError(f"unknown diagonal builder {name!r}")
    if name in ("x2", "x4", "x6"):
        e = eisenstein1(int(name[1:]), precision)
        return diag_tensor(e, e)
    delta = delta1(precision)
    if name == "x12":
        return diag_tensor(delta, delta)
    e4cube = eisenstein1(4, precision) ** 3
    if name == "y12":
        series = diag_tensor(e4cube, delta) + diag_tensor(delta, e4cube)
        return _stamped(series, 1, weight=24)
    # alpha36 = x12^2 (delta ⊗ e4^3 - e4^3 ⊗ delta), anti-invariant under swap
    x12 = diag_tensor(delta, delta)
    series = (x12 * x12) * (diag_tensor(delta, e4cube) - diag_tensor(e4cube, delta))
    return _stamped(series, -1, weight=72)


def _stamped(series: DiagSeries, sign: int, weight) -> DiagSeries:
    out = DiagSeries(series.precision, series.coeffs, weight, sign)
    bad = out.symmetry_violations()
    if bad:
        raise ArithmeticError(f"builder produced asymmetric series, e.g. at {bad[0]}")
    return out
