"""Construction, pinning, and caching of the seven named generators.

The ring of even-weight degree-2 forms with integer coefficients is
generated in low weight by X4, X6 (Eisenstein), the cusp forms X10, X12,
and the integral companions Y12 and X16; the odd part is X35 times the
even part.  This module builds pinned normalisations of all seven:

* X4, X6   -- Eisenstein-mode lifts of the index-1 Jacobi Eisenstein series,
* X10, X12 -- cusp-mode lifts of the index-1 cusp forms with c(3) = 1,
* Y12      -- (X4^3 - X6^2)/1728 + 144 X12,
* X16      -- (X4 X12 - X6 X10)/12,
* X35      -- the normalised theta-derivative determinant of X4, X6, X10, X12.

Every build must pass its pinning suite before it is served or cached:
integer coefficients throughout, the sign symmetries, the declared
diagonal-restriction images, and the declared leading term.  Builds are
cached on disk in the text format and served at lower precision by
truncation.  The cache directory defaults to $SIEGEL2_CACHE or ./cache.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import qformat
from .errors import ConstructionError, PrecisionError
from .expansion import SiegelExpansion, wronskian35
from .jacobi import jacobi_combine, jacobi_eisenstein, maass_lift
from .qexp1 import DiagSeries, diag_builder, eisenstein1

GENERATOR_WEIGHTS = {
    "X4": 4,
    "X6": 6,
    "X10": 10,
    "X12": 12,
    "Y12": 12,
    "X16": 16,
    "X35": 35,
}
GENERATOR_NAMES = tuple(GENERATOR_WEIGHTS)

# Declared leading terms (index, coefficient) used as build pins.  A build
# must reach at least the leading index, else the pin cannot be checked.
_LEADING = {
    "X4": ((0, 0, 0), 1),
    "X6": ((0, 0, 0), 1),
    "X10": ((1, -1, 1), 1),
    "X12": ((1, -1, 1), 1),
    "Y12": ((0, 0, 1), 1),
    "X16": ((1, 0, 1), 1),
    "X35": ((2, -1, 3), 1),
}
_MIN_PRECISION = {
    name: max(index[0], index[2]) for name, (index, _) in _LEADING.items()
}


@dataclass(frozen=True)
class MonomialSpec:
    """A monomial in the named generators, e.g. X10^2 * X12.

    ``exponents`` holds (name, exponent) pairs with exponent >= 1, in the
    canonical generator order.  The empty monomial is the constant 1.
    """

    exponents: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for name, e in self.exponents:
            if name not in GENERATOR_WEIGHTS:
                raise ValueError(f"unknown generator {name!r}")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            if name in seen:
                raise ValueError(f"duplicate generator {name!r}")
            seen.add(name)
        order = {name: i for i, name in enumerate(GENERATOR_NAMES)}
        ordered = tuple(sorted(self.exponents, key=lambda item: order[item[0]]))
        object.__setattr__(self, "exponents", ordered)

    @classmethod
    def from_dict(cls, exponents: dict) -> "MonomialSpec":
        return cls(tuple((k, v) for k, v in exponents.items() if v))

    @property
    def weight(self) -> int:
        return sum(GENERATOR_WEIGHTS[name] * e for name, e in self.exponents)

    def times(self, name: str) -> "MonomialSpec":
        """The monomial multiplied by one more factor of ``name``."""
        d = dict(self.exponents)
        d[name] = d.get(name, 0) + 1
        return MonomialSpec.from_dict(d)

    def __str__(self):
        if not self.exponents:
            return "1"
        return "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in self.exponents
        )


class GeneratorRegistry:
    """Named, pinned, disk-cached generator expansions and their monomials.

    A cached entry at precision B serves any request at precision <= B by
    truncation, both in memory and from disk.  Writes go through a temp
    file and an atomic rename, so concurrent builders of the same entry
    can race and still leave identical bytes.
    """

    def __init__(self, cache_dir=None):
        if cache_dir is None:
            cache_dir = os.environ.get("SIEGEL2_CACHE", "cache")
        self.cache_dir = Path(cache_dir)
        self._forms: dict[str, SiegelExpansion] = {}
        self._powers: dict[tuple[str, int, int], SiegelExpansion] = {}
        self._monomials: dict[tuple[MonomialSpec, int], SiegelExpansion] = {}

    # -- generators ---------------------------------------------------------

    def generator(self, name: str, precision: int) -> SiegelExpansion:
        """The named generator, complete to the requested precision."""
        if name not in GENERATOR_WEIGHTS:
            raise ValueError(f"unknown generator {name!r}")
        if precision < 0:
            raise ValueError("precision must be >= 0")
        held = self._forms.get(name)
        if held is not None and held.precision >= precision:
            return held.truncate(precision)
        loaded = self._load(name, precision)
        if loaded is None:
            loaded = _build(name, precision, self)
            _pin(name, loaded)
            self._store(name, loaded)
        self._forms[name] = loaded
        return loaded.truncate(precision)

    def _cache_path(self, name: str, precision: int) -> Path:
        return self.cache_dir / f"{name}.p{precision}.qexp"

    def _load(self, name: str, precision: int) -> SiegelExpansion | None:
        candidates = []
        if self.cache_dir.is_dir():
            for path in self.cache_dir.glob(f"{name}.p*.qexp"):
                try:
                    prec = int(path.name.split(".p")[-1].removesuffix(".qexp"))
                except ValueError:
                    continue
                if prec >= precision:
                    candidates.append((prec, path))
        if not candidates:
            return None
        _, path = min(candidates)
        stored_name, exp = qformat.parse_siegel(path.read_text(encoding="utf-8"))
        if stored_name != name or exp.weight != GENERATOR_WEIGHTS[name]:
            raise ConstructionError(f"cache file {path} does not hold {name}")
        return exp

    def _store(self, name: str, exp: SiegelExpansion) -> None:
        path = self._cache_path(name, exp.precision)
        qformat.save_atomic(path, qformat.dump_siegel(exp, name))

    # -- monomials ------------------------------------------------------------

    def power(self, name: str, exponent: int, precision: int) -> SiegelExpansion:
        """Cached generator power; the chain g, g^2, ... g^e is kept around
        so nearby monomials reuse the intermediate products."""
        if exponent == 0:
            return SiegelExpansion.constant(1, precision)
        if exponent == 1:
            return self.generator(name, precision)
        key = (name, exponent, precision)
        held = self._powers.get(key)
        if held is None:
            held = self.power(name, exponent - 1, precision) * self.generator(
                name, precision
            )
            self._powers[key] = held
        return held

    def monomial(self, spec: MonomialSpec, precision: int) -> SiegelExpansion:
        """Product expansion of a generator monomial at the given precision."""
        key = (spec, precision)
        held = self._monomials.get(key)
        if held is None:
            held = SiegelExpansion.constant(1, precision)
            for name, e in spec.exponents:
                held = held * self.power(name, e, precision)
            self._monomials[key] = held
        return held


_DEFAULT_REGISTRY: GeneratorRegistry | None = None


def default_registry() -> GeneratorRegistry:
    """Process-wide registry honouring $SIEGEL2_CACHE."""
    global _DEFAULT_REGISTRY
    if _DEFAULT_REGISTRY is None:
        _DEFAULT_REGISTRY = GeneratorRegistry()
    return _DEFAULT_REGISTRY


def build_generator(name: str, precision: int, registry=None) -> SiegelExpansion:
    """Build (or fetch) a named generator at the given precision."""
    return (registry or default_registry()).generator(name, precision)


def monomial_eval(spec: MonomialSpec, precision: int, registry=None) -> SiegelExpansion:
    """Evaluate a generator monomial at the given precision."""
    return (registry or default_registry()).monomial(spec, precision)


# -- builders ----------------------------------------------------------------


def _build(name: str, precision: int, registry: GeneratorRegistry) -> SiegelExpansion:
    if precision < _MIN_PRECISION[name]:
        raise PrecisionError(
            f"{name} needs precision >= {_MIN_PRECISION[name]} to pin its leading term"
        )
    dmax = 4 * precision * precision
    if name in ("X4", "X6"):
        k = GENERATOR_WEIGHTS[name]
        return maass_lift(jacobi_eisenstein(k, dmax), precision, "eisenstein")
    if name in ("X10", "X12"):
        qprec = dmax // 4 + 1
        e4 = eisenstein1(4, qprec)
        e6 = eisenstein1(6, qprec)
        e41 = jacobi_eisenstein(4, dmax)
        e61 = jacobi_eisenstein(6, dmax)
        c = Fraction(1, 144)
        if name == "X10":
            phi = jacobi_combine([(c, e6, e41), (-c, e4, e61)])
        else:
            phi = jacobi_combine([(c, e4 * e4, e41), (-c, e6, e61)])
        return maass_lift(phi, precision, "cusp")
    if name == "Y12":
        x4 = registry.generator("X4", precision)
        x6 = registry.generator("X6", precision)
        x12 = registry.generator("X12", precision)
        return ((x4**3 - x6**2) * Fraction(1, 1728) + 144 * x12).with_weight(12)
    if name == "X16":
        x4 = registry.generator("X4", precision)
        x6 = registry.generator("X6", precision)
        x10 = registry.generator("X10", precision)
        x12 = registry.generator("X12", precision)
        return ((x4 * x12 - x6 * x10) * Fraction(1, 12)).with_weight(16)
    if name == "X35":
        return wronskian35(
            registry.generator("X4", precision),
            registry.generator("X6", precision),
            registry.generator("X10", precision),
            registry.generator("X12", precision),
        )
    raise ValueError(f"unknown generator {name!r}")


def _pin(name: str, exp: SiegelExpansion) -> None:
    """Fail loudly unless the build satisfies every pinned identity."""
    for key, c in exp.coeffs.items():
        if not isinstance(c, int):
            raise ConstructionError(f"{name}: non-integral coefficient {c} at {key}")
    bad = exp.symmetry_violations()
    if bad:
        raise ConstructionError(f"{name}: sign symmetry fails at {bad[0]}")
    index, value = _LEADING[name]
    lt = exp.leading_term()
    if lt.index != index or lt.coefficient != value:
        raise ConstructionError(
            f"{name}: leading term {lt.index} -> {lt.coefficient}, "
            f"expected {index} -> {value}"
        )
    P = exp.precision
    image = exp.witt(0)
    if name in ("X4", "X6"):
        _pin_equal(name, "restriction", image, diag_builder(f"x{exp.weight}", P))
    elif name == "X10":
        _pin_zero(name, "restriction", image)
        _pin_equal(name, "second layer", exp.witt(2), diag_builder("x12", P))
    elif name == "X12":
        _pin_equal(name, "restriction", image, diag_builder("x12", P) * 12)
        x2x12 = diag_builder("x2", P) * diag_builder("x12", P)
        _pin_equal(name, "second layer", exp.witt(2), x2x12)
    elif name == "Y12":
        _pin_equal(name, "restriction", image, diag_builder("y12", P))
    elif name == "X16":
        x4x12 = diag_builder("x4", P) * diag_builder("x12", P)
        _pin_equal(name, "restriction", image, x4x12)
    elif name == "X35":
        _pin_zero(name, "restriction", image)
        _pin_equal(name, "first layer", exp.witt(1), diag_builder("alpha36", P))


def _pin_equal(name: str, what: str, got: DiagSeries, want: DiagSeries) -> None:
    if got != want:
        keys = sorted(set(got.coeffs) | set(want.coeffs))
        witness = next(k for k in keys if got.coeffs.get(k) != want.coeffs.get(k))
        raise ConstructionError(
            f"{name}: {what} image differs from its pin at {witness}"
        )


def _pin_zero(name: str, what: str, got: DiagSeries) -> None:
    if got.coeffs:
        witness = sorted(got.coeffs)[0]
        raise ConstructionError(f"{name}: {what} image should vanish, got {witness}")
