"""Finite atomic complex measures on a one-dimensional lattice.

A measure stores finitely many complex weights on the grid ``{j * unit}``,
indexed by integer ``j``.  The ``unit_tag`` is an opaque token naming the
base lattice symbolically, so that e.g. the spacing-1 lattice and the
spacing-sqrt(2) lattice stay incommensurable even when their floating
units happen to collide; every binary operation requires matching tags.

The class closes under the convolution Banach-algebra operations: addition,
scalar multiple, convolution (exact integer index addition, which is why
only a single shared lattice is supported), total variation (atom-wise
modulus, exact for atomic measures), Fourier transform, first and second
moments, and a truncated power-series exponential with an explicit tail
bound.  Kept free of any symbol- or simulation-level concepts on purpose.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .errors import BudgetExceeded, UnitMismatch

#: stored weights below this modulus are dropped (true zeros only;
#: small weights carry tail information and must survive)
PRUNE_THRESHOLD = 1e-300

#: hard cap on the number of power-series terms in ``exp_measure``
EXP_TERM_CAP = 512

#: default relative tolerance for symmetry classification
SYMMETRY_RTOL = 1e-12


class LatticeComplexMeasure:
    """Immutable finite complex measure on the lattice ``{j * unit : j in Z}``."""

    __slots__ = ("unit", "unit_tag", "_w")

    def __init__(self, unit: float, unit_tag: str, weights):
        if not unit > 0.0:
            raise ValueError(f"lattice unit must be positive, got {unit!r}")
        if not unit_tag or any(ch.isspace() for ch in unit_tag):
            raise ValueError(f"unit_tag must be a non-empty token, got {unit_tag!r}")
        object.__setattr__(self, "unit", float(unit))
        object.__setattr__(self, "unit_tag", str(unit_tag))
        w = {}
        for j, z in dict(weights).items():
            z = complex(z)
            if abs(z) > PRUNE_THRESHOLD:
                w[int(j)] = z
        object.__setattr__(self, "_w", w)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeComplexMeasure is immutable")

    @property
    def weights(self):
        """Read-only view of the index -> weight map (nonzero entries only)."""
        return MappingProxyType(self._w)

    def location(self, j: int) -> float:
        return j * self.unit

    def __len__(self) -> int:
        return len(self._w)

    def __repr__(self) -> str:
        return (
            f"LatticeComplexMeasure(unit={self.unit!r}, tag={self.unit_tag!r}, "
            f"atoms={len(self._w)}, mass={self.total_mass():.6g})"
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LatticeComplexMeasure)
            and self.unit == other.unit
            and self.unit_tag == other.unit_tag
            and self._w == other._w
        )

    def _require_same_lattice(self, other: "LatticeComplexMeasure"):
        if self.unit_tag != other.unit_tag or self.unit != other.unit:
            raise UnitMismatch(
                f"cannot combine lattice ({self.unit!r}, {self.unit_tag!r}) "
                f"with ({other.unit!r}, {other.unit_tag!r})"
            )

    # ------------------------------------------------------------------
    # mass, variation, norms
    # ------------------------------------------------------------------
    def total_mass(self) -> complex:
        """Measure of the whole line, sum of all weights."""
        return sum(self._w.values(), 0j)

    def total_variation(self) -> "LatticeComplexMeasure":
        """Atom-wise modulus measure |mu| (exact: atoms cannot be split)."""
        return LatticeComplexMeasure(
            self.unit, self.unit_tag, {j: abs(z) for j, z in self._w.items()}
        )

    def tv_norm(self) -> float:
        """Total variation norm, sum of atom moduli."""
        return sum(abs(z) for z in self._w.values())

    # ------------------------------------------------------------------
    # linear structure
    # ------------------------------------------------------------------
    def add(self, other: "LatticeComplexMeasure") -> "LatticeComplexMeasure":
        self._require_same_lattice(other)
        w = dict(self._w)
        for j, z in other._w.items():
            w[j] = w.get(j, 0j) + z
        return LatticeComplexMeasure(self.unit, self.unit_tag, w)

    def scale(self, z: complex) -> "LatticeComplexMeasure":
        z = complex(z)
        return LatticeComplexMeasure(
            self.unit, self.unit_tag, {j: z * w for j, w in self._w.items()}
        )

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scale(-1.0))

    def __mul__(self, z):
        return self.scale(z)

    __rmul__ = __mul__

    # ------------------------------------------------------------------
    # convolution algebra
    # ------------------------------------------------------------------
    def convolve(self, other: "LatticeComplexMeasure") -> "LatticeComplexMeasure":
        """Convolution: weight at m is sum over j+l=m of self[j]*other[l]."""
        self._require_same_lattice(other)
        if not self._w or not other._w:
            return LatticeComplexMeasure(self.unit, self.unit_tag, {})
        if len(self._w) * len(other._w) > 4096:
            return self._convolve_dense(other)
        w: dict[int, complex] = {}
        for j, a in self._w.items():
            for l, b in other._w.items():
                m = j + l
                w[m] = w.get(m, 0j) + a * b
        return LatticeComplexMeasure(self.unit, self.unit_tag, w)

    def _convolve_dense(self, other):
        ja = np.array(list(self._w.keys()), dtype=np.int64)
        wa = np.array(list(self._w.values()), dtype=np.complex128)
        jb = np.array(list(other._w.keys()), dtype=np.int64)
        wb = np.array(list(other._w.values()), dtype=np.complex128)
        idx = np.add.outer(ja, jb).ravel()
        val = np.multiply.outer(wa, wb).ravel()
        lo = int(idx.min())
        shifted = idx - lo
        n = int(shifted.max()) + 1
        acc = np.bincount(shifted, weights=val.real, minlength=n) + 1j * np.bincount(
            shifted, weights=val.imag, minlength=n
        )
        nz = np.nonzero(np.abs(acc) > PRUNE_THRESHOLD)[0]
        return LatticeComplexMeasure(
            self.unit, self.unit_tag, {int(i) + lo: complex(acc[i]) for i in nz}
        )

    # ------------------------------------------------------------------
    # transforms and moments
    # ------------------------------------------------------------------
    def fourier(self, u: float) -> complex:
        """Fourier transform at frequency u: sum of w_j * exp(i*u*j*unit)."""
        return sum(
            z * cmath.exp(1j * u * (j * self.unit)) for j, z in self._w.items()
        ) + 0j

    def moment(self, p: int) -> complex:
        """p-th moment (p in {1, 2}); for p = 2 the location enters as |x|^2."""
        if p == 1:
            return sum(z * (j * self.unit) for j, z in self._w.items()) + 0j
        if p == 2:
            return sum(z * (j * self.unit) ** 2 for j, z in self._w.items()) + 0j
        raise ValueError(f"only moments p in {{1, 2}} are supported, got {p}")

    # ------------------------------------------------------------------
    # symmetry
    # ------------------------------------------------------------------
    def symmetry_class(self, tol: float | None = None) -> str:
        """Classify as 'symmetric', 'antisymmetric' or 'neither'.

        Symmetric wins the tie on the zero measure.  Default tolerance is
        SYMMETRY_RTOL relative to the total variation norm.
        """
        if tol is None:
            tol = SYMMETRY_RTOL * self.tv_norm()
        indices = set(self._w) | {-j for j in self._w}
        symmetric = all(
            abs(self._w.get(j, 0j) - self._w.get(-j, 0j)) <= tol for j in indices
        )
        if symmetric:
            return "symmetric"
        antisymmetric = all(
            abs(self._w.get(j, 0j) + self._w.get(-j, 0j)) <= tol for j in indices
        )
        return "antisymmetric" if antisymmetric else "neither"


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------
def zero_measure(unit: float = 1.0, unit_tag: str = "unit") -> LatticeComplexMeasure:
    return LatticeComplexMeasure(unit, unit_tag, {})


def dirac(index: int, unit: float = 1.0, unit_tag: str = "unit",
          weight: complex = 1.0) -> LatticeComplexMeasure:
    """Point mass ``weight * delta_{index * unit}``."""
    return LatticeComplexMeasure(unit, unit_tag, {index: weight})


# ----------------------------------------------------------------------
# power-series exponential
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ExpSeriesReport:
    """Truncation order and the tail bound actually achieved."""

    terms: int
    tail_bound: float


def _series_order(norm: float, tol: float, cap: int) -> tuple[int, float]:
    """Smallest M with sum_{m>M} norm^m/m! <= tol (geometric tail majorant)."""
    term = 1.0  # norm^0 / 0!
    for m in range(cap + 1):
        term *= norm / (m + 1)  # now norm^(m+1)/(m+1)!
        if norm < m + 2:
            tail = term / (1.0 - norm / (m + 2))
            if tail <= tol:
                return m, tail
    raise BudgetExceeded(
        f"exp series needs more than {cap} terms for norm {norm:.3g}, tol {tol:.3g}"
    )


def _exp_series(mu: LatticeComplexMeasure, tol: float, cap: int, parity) -> tuple:
    order, tail = _series_order(mu.tv_norm(), tol, cap)
    unit_tag, unit = mu.unit_tag, mu.unit
    total = zero_measure(unit, unit_tag)
    term = dirac(0, unit, unit_tag)
    if parity(0):
        total = total.add(term)
    for m in range(1, order + 1):
        term = term.convolve(mu).scale(1.0 / m)
        if parity(m):
            total = total.add(term)
    return total, ExpSeriesReport(order, tail)


def exp_measure(mu: LatticeComplexMeasure, tol: float = 1e-12,
                max_terms: int = EXP_TERM_CAP, with_report: bool = False):
    """Truncated convolution exponential sum_{m<=M} mu^{*m} / m!.

    M is the smallest order whose crude tail bound sum_{m>M} ||mu||^m/m!
    falls below ``tol``; raises BudgetExceeded when that would take more
    than ``max_terms`` terms (the norm is too large for the tolerance).
    """
    result, report = _exp_series(mu, tol, max_terms, lambda m: True)
    return (result, report) if with_report else result


def cosh_measure(mu, tol: float = 1e-12, max_terms: int = EXP_TERM_CAP):
    """Even part of the exponential series (functional cosh)."""
    result, _ = _exp_series(mu, tol, max_terms, lambda m: m % 2 == 0)
    return result


def sinh_measure(mu, tol: float = 1e-12, max_terms: int = EXP_TERM_CAP):
    """Odd part of the exponential series (functional sinh)."""
    result, _ = _exp_series(mu, tol, max_terms, lambda m: m % 2 == 1)
    return result


# ----------------------------------------------------------------------
# sequence convolution with truncation diagnostics
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ConvolveSequenceReport:
    """Diagnostics for a finite convolution of a measure sequence.

    ``second_moment_sum`` is the finiteness diagnostic sum over terms of the
    second absolute moments; ``centered_violations`` lists positions whose
    total variation has first moment larger than the tolerance (the
    hypothesis under which infinite convolutions converge).
    """

    second_moment_sum: float
    centered_violations: tuple[int, ...]


def convolve_sequence(measures, tol: float = 1e-9, unit: float = 1.0,
                      unit_tag: str = "unit", with_report: bool = False):
    """Left-fold convolution of an ordered, already-truncated sequence."""
    measures = list(measures)
    if measures:
        unit, unit_tag = measures[0].unit, measures[0].unit_tag
    result = dirac(0, unit, unit_tag)
    second_sum = 0.0
    violations = []
    for pos, mu in enumerate(measures):
        tv = mu.total_variation()
        if abs(tv.moment(1)) > tol:
            violations.append(pos)
        second_sum += tv.moment(2).real
        result = result.convolve(mu)
    if violations:
        import warnings

        warnings.warn(
            f"convolve_sequence: |mu| not centered at positions {violations} "
            f"(first absolute moment above {tol:g})",
            stacklevel=2,
        )
    if with_report:
        return result, ConvolveSequenceReport(second_sum, tuple(violations))
    return result


# ----------------------------------------------------------------------
# CSV serialization
# ----------------------------------------------------------------------
def to_csv(mu: LatticeComplexMeasure) -> str:
    """Serialize: metadata comment line, header, one row per atom."""
    lines = [f"# unit={mu.unit:.17g} tag={mu.unit_tag}", "index,weight_re,weight_im"]
    for j in sorted(mu.weights):
        z = mu.weights[j]
        lines.append(f"{j},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> LatticeComplexMeasure:
    unit = None
    unit_tag = None
    weights: dict[int, complex] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for field in line[1:].split():
                key, _, value = field.partition("=")
                if key == "unit":
                    unit = float(value)
                elif key == "tag":
                    unit_tag = value
            continue
        if line.startswith("index,"):
            continue
        j_s, re_s, im_s = line.split(",")
        weights[int(j_s)] = complex(float(re_s), float(im_s))
    if unit is None or unit_tag is None:
        raise ValueError("measure CSV is missing the '# unit=... tag=...' line")
    return LatticeComplexMeasure(unit, unit_tag, weights)
