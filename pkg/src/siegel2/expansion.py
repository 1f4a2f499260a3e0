"""Truncated Fourier expansions of degree-2 Siegel modular forms.

An expansion stores exact coefficients a(m, r, n) for the index box
0 <= m, n <= scale * precision with 4mn - r^2 >= 0.  Both signs of r are
stored explicitly; the weight tag k drives the sign symmetries

    a(m, -r, n) = (-1)^k a(m, r, n),      a(n, r, m) = (-1)^k a(m, r, n),

which every honestly constructed form satisfies and ``symmetry_violations``
checks.  Indices live in (1/scale)Z and are stored premultiplied by scale,
so level-N expansions with fractional indices use scale = N.

A ``modulus`` of p marks an expansion whose coefficients have been reduced
to F_p residues; ring operations then stay in F_p.  Operations never
extrapolate: results carry the minimum precision of their operands, which
is exact because indices add componentwise with nonnegative m and n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionError, NotPIntegral, PrecisionError
from .qexp1 import DiagSeries
from .rationals import normalize, reduce_mod_p

_SCALARS = (int, Fraction)


@dataclass(frozen=True)
class LeadingTerm:
    """Minimal-index nonzero coefficient under lexicographic (m, n, r) order."""

    m: int
    r: int
    n: int
    coefficient: object

    @property
    def index(self):
        return (self.m, self.r, self.n)


class BeyondPrecision:
    """Diagonal vanishing order known only to exceed the computed box.

    Represents the exact statement "the order is > bound".  Comparisons
    against values within the box are decided; anything else raises,
    because the truncation cannot answer it.
    """

    __slots__ = ("bound",)

    def __init__(self, bound):
        self.bound = bound

    def _decidable(self, other):
        if isinstance(other, BeyondPrecision):
            raise PrecisionError("cannot order two beyond-precision values")
        if other > self.bound:
            raise PrecisionError(
                f"comparison with {other} undecidable: only '> {self.bound}' is known"
            )

    def __gt__(self, other):
        if isinstance(other, _SCALARS) and other <= self.bound:
            return True
        self._decidable(other)
        return True

    def __ge__(self, other):
        return self.__gt__(other)

    def __lt__(self, other):
        self._decidable(other)
        return False

    def __le__(self, other):
        self._decidable(other)
        return False

    def __eq__(self, other):
        return isinstance(other, BeyondPrecision) and other.bound == self.bound

    def __hash__(self):
        return hash(("BeyondPrecision", self.bound))

    def __repr__(self):
        return f"> {self.bound}"


class SiegelExpansion:
    """Exact truncated Fourier expansion of a degree-2 form."""

    __slots__ = ("weight", "precision", "scale", "modulus", "coeffs")

    def __init__(self, weight, precision, coeffs=None, scale=1, modulus=None):
        if precision < 0:
            raise ValueError("precision must be >= 0")
        if scale < 1:
            raise ValueError("scale must be >= 1")
        self.weight = weight
        self.precision = precision
        self.scale = scale
        self.modulus = modulus
        box = scale * precision
        clean = {}
        for (m, r, n), c in (coeffs or {}).items():
            if not (0 <= m <= box and 0 <= n <= box):
                raise ValueError(f"index {(m, r, n)} outside box [0..{box}]^2")
            if 4 * m * n - r * r < 0:
                raise ValueError(f"index {(m, r, n)} is not positive semi-definite")
            if modulus is None:
                c = normalize(c)
            else:
                c = c % modulus
            if c:
                clean[(m, r, n)] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, value, precision, weight=0, scale=1):
        """The constant expansion value * q^0."""
        return cls(weight, precision, {(0, 0, 0): value}, scale)

    # -- basic access -----------------------------------------------------

    def coeff(self, m: int, r: int, n: int):
        box = self.scale * self.precision
        if not (0 <= m <= box and 0 <= n <= box):
            raise ValueError(f"index {(m, r, n)} is beyond precision {self.precision}")
        return self.coeffs.get((m, r, n), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        """Stored indices sorted by the (m, n, r) monomial order."""
        return sorted(self.coeffs, key=lambda k: (k[0], k[2], k[1]))

    def truncate(self, precision: int) -> "SiegelExpansion":
        if precision > self.precision:
            raise PrecisionError(
                f"cannot extend precision {self.precision} to {precision}"
            )
        box = self.scale * precision
        kept = {
            k: c for k, c in self.coeffs.items() if k[0] <= box and k[2] <= box
        }
        return SiegelExpansion(self.weight, precision, kept, self.scale, self.modulus)

    def with_weight(self, weight) -> "SiegelExpansion":
        return SiegelExpansion(weight, self.precision, self.coeffs, self.scale, self.modulus)

    # -- ring structure ---------------------------------------------------

    def _check_compatible(self, other):
        if self.scale != other.scale:
            raise ValueError(f"scale mismatch: {self.scale} vs {other.scale}")
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other):
        if not isinstance(other, SiegelExpansion):
            return NotImplemented
        self._check_compatible(other)
        prec = min(self.precision, other.precision)
        box = self.scale * prec
        out = {k: c for k, c in self.coeffs.items() if k[0] <= box and k[2] <= box}
        for k, c in other.coeffs.items():
            if k[0] <= box and k[2] <= box:
                out[k] = out.get(k, 0) + c
        weight = self.weight if self.weight == other.weight else None
        return SiegelExpansion(weight, prec, out, self.scale, self.modulus)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if not isinstance(other, SiegelExpansion):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                return SiegelExpansion(
                    self.weight, self.precision, {}, self.scale, self.modulus
                )
            return SiegelExpansion(
                self.weight,
                self.precision,
                {k: c * other for k, c in self.coeffs.items()},
                self.scale,
                self.modulus,
            )
        if not isinstance(other, SiegelExpansion):
            return NotImplemented
        self._check_compatible(other)
        prec = min(self.precision, other.precision)
        box = self.scale * prec
        # Group rows by (m, n) so the bound checks run once per block pair.
        out = {}
        get = out.get
        blocks = other._grouped()
        for (m1, n1), rows1 in self._grouped().items():
            if m1 > box or n1 > box:
                continue
            for (m2, n2), rows2 in blocks.items():
                m = m1 + m2
                if m > box:
                    continue
                n = n1 + n2
                if n > box:
                    continue
                for r1, c1 in rows1:
                    for r2, c2 in rows2:
                        key = (m, r1 + r2, n)
                        prev = get(key)
                        out[key] = c1 * c2 if prev is None else prev + c1 * c2
        weight = None
        if self.weight is not None and other.weight is not None:
            weight = self.weight + other.weight
        return SiegelExpansion(weight, prec, out, self.scale, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = SiegelExpansion.constant(1, self.precision, 0, self.scale)
        if self.modulus is not None:
            result = result.reduce_mod(self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _grouped(self):
        groups = {}
        for (m, r, n), c in self.coeffs.items():
            groups.setdefault((m, n), []).append((r, c))
        return groups

    def __eq__(self, other):
        if not isinstance(other, SiegelExpansion):
            return NotImplemented
        return (
            self.scale == other.scale
            and self.precision == other.precision
            and self.modulus == other.modulus
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        mod = f", mod {self.modulus}" if self.modulus else ""
        return (
            f"SiegelExpansion(weight={self.weight}, precision={self.precision}, "
            f"scale={self.scale}{mod}, {len(self.coeffs)} terms)"
        )

    # -- reductions and invariants ----------------------------------------

    def reduce_mod(self, p: int) -> "SiegelExpansion":
        """Coefficientwise reduction to F_p; rejects non-p-integral entries."""
        if self.modulus is not None:
            raise ValueError("expansion is already reduced")
        out = {}
        for key in self.support():
            try:
                out[key] = reduce_mod_p(self.coeffs[key], p)
            except NotPIntegral:
                raise NotPIntegral(
                    f"coefficient at {key} = {self.coeffs[key]} is not {p}-integral"
                ) from None
        return SiegelExpansion(self.weight, self.precision, out, self.scale, modulus=p)

    def symmetry_violations(self) -> list:
        """Indices violating the weight-driven sign symmetries (empty = pass)."""
        if self.weight is None:
            raise ValueError("symmetry check needs a weight tag")
        sign = -1 if self.weight % 2 else 1
        bad = []
        for (m, r, n), c in self.coeffs.items():
            mirror = sign * self.coeffs.get((m, -r, n), 0)
            swap = sign * self.coeffs.get((n, r, m), 0)
            if self.modulus is not None:
                mirror %= self.modulus
                swap %= self.modulus
            if mirror != c or swap != c:
                bad.append((m, r, n))
        return sorted(bad, key=lambda k: (k[0], k[2], k[1]))

    def leading_term(self) -> LeadingTerm:
        """Nonzero coefficient at the minimal index, ordering by m, then n, then r."""
        if not self.coeffs:
            raise ValueError("the zero expansion has no leading term")
        m, n, r = min((m, n, r) for (m, r, n) in self.coeffs)
        return LeadingTerm(m, r, n, self.coeffs[(m, r, n)])

    def diagonal_vanishing_order(self, p: int | None = None):
        """Size of the largest vanishing box of the mod-p reduction.

        Returns min over the mod-p support of max(m, n)/scale, or a
        ``BeyondPrecision`` sentinel when the reduction vanishes on the
        whole computed box.
        """
        if self.modulus is None:
            if p is None:
                raise ValueError("a prime is required for an unreduced expansion")
            red = self.reduce_mod(p)
        else:
            if p is not None and p != self.modulus:
                raise ValueError(f"expansion is reduced mod {self.modulus}, not {p}")
            red = self
        if not red.coeffs:
            return BeyondPrecision(red.precision)
        smallest = min(max(m, n) for (m, r, n) in red.coeffs)
        return normalize(Fraction(smallest, red.scale))

    # -- operators ----------------------------------------------------------

    def witt(self, order: int = 0) -> DiagSeries:
        """Diagonal restriction and its first two normalised Taylor layers.

        order 0 sums a(m, r, n) over r; order 1 takes (1/2) sum r a(m, r, n);
        order 2 takes (1/2) sum r^2 a(m, r, n).  Requires scale 1 and exact
        coefficients.
        """
        if order not in (0, 1, 2):
            raise ValueError("order must be 0, 1 or 2")
        if self.scale != 1:
            raise ValueError("diagonal restriction requires scale 1")
        if self.modulus is not None:
            raise ValueError("diagonal restriction requires exact coefficients")
        sums = {}
        for (m, r, n), c in self.coeffs.items():
            if order == 1:
                c = r * c
            elif order == 2:
                c = r * r * c
            key = (m, n)
            sums[key] = sums.get(key, 0) + c
        if order:
            sums = {k: normalize(Fraction(v, 2)) for k, v in sums.items() if v}
        sign = None
        if self.weight is not None:
            even = self.weight % 2 == 0
            if order in (0, 2) and even:
                sign = 1
            elif order == 1 and not even:
                sign = -1
        weight = None if self.weight is None else self.weight + order
        return DiagSeries(self.precision, sums, weight, sign)

    def theta(self, direction: int) -> "SiegelExpansion":
        """Normalised derivative along tau_1 (1), tau_12 (12) or tau_2 (2).

        Acts as multiplication of a(m, r, n) by m, r or n; the weight tag
        moves up by 2 (informational only).
        """
        if direction not in (1, 12, 2):
            raise ValueError("direction must be 1, 12 or 2")
        if self.scale != 1:
            raise ValueError("theta derivatives require scale 1")
        pick = {1: 0, 12: 1, 2: 2}[direction]
        out = {}
        for (m, r, n), c in self.coeffs.items():
            factor = (m, r, n)[pick]
            if factor:
                out[(m, r, n)] = factor * c
        weight = None if self.weight is None else self.weight + 2
        return SiegelExpansion(weight, self.precision, out, self.scale, self.modulus)


def symmetry_check(f: SiegelExpansion) -> list:
    """Convenience wrapper: list of indices violating f's sign symmetries."""
    return f.symmetry_violations()


# -- the odd-weight determinant construction --------------------------------

_LAPLACE = (
    # (columns for rows 0-1, complementary columns for rows 2-3, sign)
    ((0, 1), (2, 3), 1),
    ((0, 2), (1, 3), -1),
    ((0, 3), (1, 2), 1),
    ((1, 2), (0, 3), 1),
    ((1, 3), (0, 2), -1),
    ((2, 3), (0, 1), 1),
)


def _det4(a):
    """Determinant of a 4x4 matrix over any commutative ring.

    Laplace expansion along the first two rows: six 2x2 minors against
    their complements, 30 multiplications instead of 72.
    """
    def minor(i, j, k, l):
        return a[i][k] * a[j][l] - a[i][l] * a[j][k]

    total = None
    for (c1, c2), (d1, d2), sign in _LAPLACE:
        term = minor(0, 1, c1, c2) * minor(2, 3, d1, d2)
        if sign < 0:
            term = -term
        total = term if total is None else total + term
    return total


def wronskian35(f4, f6, f10, f12) -> SiegelExpansion:
    """The weight-35 cusp form as a normalised theta-derivative determinant.

    Rows are (k_i f_i), (theta_1 f_i), ((1/2) theta_12 f_i), (theta_2 f_i)
    over the four even generators; the result is rescaled by the unique
    rational constant making the coefficient at (2, -1, 3) equal to 1.
    """
    forms = (f4, f6, f10, f12)
    weights = tuple(f.weight for f in forms)
    if weights != (4, 6, 10, 12):
        raise ValueError(f"expected weights (4, 6, 10, 12), got {weights}")
    for f in forms:
        if f.scale != 1 or f.modulus is not None:
            raise ValueError("the determinant needs exact scale-1 expansions")
    prec = min(f.precision for f in forms)
    if prec < 3:
        raise PrecisionError("precision >= 3 is needed to normalise at (2, -1, 3)")
    forms = tuple(f.truncate(prec) for f in forms)
    half = Fraction(1, 2)
    rows = [
        [k * f for k, f in zip(weights, forms)],
        [f.theta(1) for f in forms],
        [f.theta(12) * half for f in forms],
        [f.theta(2) for f in forms],
    ]
    det = _det4(rows)
    pivot = det.coeff(2, -1, 3)
    if pivot == 0:
        raise ConstructionError(
            "determinant vanishes at (2, -1, 3); cannot normalise"
        )
    scaled = det * (1 / Fraction(pivot))
    return scaled.with_weight(35)
