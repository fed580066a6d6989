"""Monte Carlo statistics bridging simulations and closed-form claims.

Covers the closed-form moments of the two doubling families, CLT-based
moment estimates, empirical characteristic functions, the weighted
sup-distance sup_u |phi_A(u) - phi_B(u)| / (1 + u^2) between two ensembles,
exact lattice-support audits, and the martingale (Dynkin) residual
E f(X(T)) - f(x0) - int_0^T E[Af(X(s))] ds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import simulate
from .errors import DegenerateSample, RepresentationLost
from .simulate import ExactState, SimConfig
from .symbols import TestFunction, apply_generator

#: default frequency grid for weighted-norm scans
DEFAULT_UGRID = np.linspace(-20.0, 20.0, 201)


@dataclass(frozen=True)
class Sample:
    """Endpoint sample of an ensemble at a fixed time.

    ``values`` holds ExactState objects when lattice information is retained
    (required by :func:`support_audit`) or plain floats otherwise.
    """

    values: tuple
    horizon: float
    label: str = ""

    def __post_init__(self):
        if len(self.values) == 0:
            raise DegenerateSample("sample is empty")

    @staticmethod
    def from_ensemble(result: simulate.EnsembleResult, label: str = "") -> "Sample":
        return Sample(result.endpoints, result.horizon, label)

    @property
    def exact(self) -> bool:
        return isinstance(self.values[0], ExactState)

    def to_floats(self) -> np.ndarray:
        if self.exact:
            return np.array([state.value for state in self.values])
        return np.asarray(self.values, dtype=float)


# ----------------------------------------------------------------------
# closed-form moments of the doubling families
# ----------------------------------------------------------------------
def closed_moment(family: str, n: int, t: float) -> float:
    """n-th moment at time t of the doubling-family laws started at 0.

    * ``symmetric_doubling``: 0 for odd n, else
      t^(n/2)/(n/2)! * prod_{k=1}^{n/2} (2^(2k-1) - 1).
    * ``increasing_doubling``: t^n/n! * prod_{k=1}^{n} (2^k - 1).

    The integer products are evaluated exactly before the float cast.
    """
    if n < 0:
        raise ValueError("moment order must be nonnegative")
    if n == 0:
        return 1.0
    if family == "symmetric_doubling":
        if n % 2 == 1:
            return 0.0
        half = n // 2
        coeff = Fraction(1, math.factorial(half))
        for k in range(1, half + 1):
            coeff *= 2 ** (2 * k - 1) - 1
        return float(coeff) * t**half
    if family == "increasing_doubling":
        coeff = Fraction(1, math.factorial(n))
        for k in range(1, n + 1):
            coeff *= 2**k - 1
        return float(coeff) * t**n
    raise ValueError(f"unknown moment family {family!r}")


# ----------------------------------------------------------------------
# CLT estimates
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    se: float
    n: int


def moment_ci(sample: Sample, p: int) -> MomentEstimate:
    """Sample mean of X^p with its CLT standard error."""
    if p < 1:
        raise ValueError("moment order must be >= 1")
    xs = sample.to_floats() ** p
    if xs.size < 2:
        raise DegenerateSample("need at least two observations for a standard error")
    return MomentEstimate(float(xs.mean()), float(xs.std(ddof=1) / math.sqrt(xs.size)),
                          int(xs.size))


@dataclass(frozen=True)
class EcfEstimate:
    """Empirical characteristic function on a frequency grid."""

    u: np.ndarray
    mean: np.ndarray
    se: np.ndarray  # euclidean norm of the componentwise standard errors


def ecf(sample: Sample, ugrid) -> EcfEstimate:
    u = np.asarray(ugrid, dtype=float)
    xs = sample.to_floats()
    z = np.exp(1j * np.outer(u, xs))
    mean = z.mean(axis=1)
    scale = 1.0 / math.sqrt(xs.size)
    se_re = z.real.std(axis=1, ddof=1) * scale if xs.size > 1 else np.zeros_like(u)
    se_im = z.imag.std(axis=1, ddof=1) * scale if xs.size > 1 else np.zeros_like(u)
    return EcfEstimate(u, mean, np.hypot(se_re, se_im))


def _weighted_gap(sample_a: Sample, sample_b: Sample, u: float) -> float:
    za = np.exp(1j * u * sample_a.to_floats()).mean()
    zb = np.exp(1j * u * sample_b.to_floats()).mean()
    return abs(za - zb) / (1.0 + u * u)


@dataclass(frozen=True)
class EcfDistanceReport:
    """Weighted sup-distance between two empirical characteristic functions."""

    distance: float
    u_at: float
    se_bound: float  # sum of the two per-u standard errors at the arg max
    u: np.ndarray
    weighted_gap: np.ndarray


def ecf_distance(sample_a: Sample, sample_b: Sample, ugrid=None,
                 refine: bool = True) -> EcfDistanceReport:
    """max over u of |phi_A(u) - phi_B(u)| / (1 + u^2), with SE bound.

    The grid argmax is polished by a golden-section pass on the bracketing
    interval; the SE bound stays conservative (sum of both per-u standard
    errors, same weighting as the distance).
    """
    if sample_a.horizon != sample_b.horizon:
        raise ValueError("samples must share the same horizon")
    u = np.asarray(DEFAULT_UGRID if ugrid is None else ugrid, dtype=float)
    ea = ecf(sample_a, u)
    eb = ecf(sample_b, u)
    weight = 1.0 / (1.0 + u * u)
    gap = np.abs(ea.mean - eb.mean) * weight
    i = int(np.argmax(gap))
    best_u, best = u[i], float(gap[i])
    if refine and 0 < i < u.size - 1:
        best_u, best = _golden_max(
            lambda v: _weighted_gap(sample_a, sample_b, v), u[i - 1], u[i + 1]
        )
        if best < gap[i]:
            best_u, best = u[i], float(gap[i])
    ga = ecf(sample_a, [best_u])
    gb = ecf(sample_b, [best_u])
    se_bound = float((ga.se[0] + gb.se[0]) / (1.0 + best_u * best_u))
    return EcfDistanceReport(best, float(best_u), se_bound, u, gap)


def _golden_max(f, lo: float, hi: float, iters: int = 40) -> tuple[float, float]:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = (a + b) / 2.0
    return x, f(x)


# ----------------------------------------------------------------------
# exact lattice support audit
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class SupportAudit:
    off_lattice: int
    total: int
    nonzero_total: int

    @property
    def clean(self) -> bool:
        return self.off_lattice == 0


def support_audit(sample: Sample, unit_tag: str, kind: str = "geometric",
                  scale: int | None = None) -> SupportAudit:
    """Count sample values outside the named lattice, exactly.

    ``geometric`` audits against M_k = k {+-2^z} u {0} (membership: the
    canonical mantissa is 0 or a power of two); ``dyadic`` audits against
    {k m 2^-scale : m in N}.  Zero belongs to every lattice; any nonzero
    state whose unit tag differs is off-lattice by incommensurability,
    no float comparison involved.
    """
    if not sample.exact:
        raise RepresentationLost(
            "support audit needs ExactState values; this sample was projected to floats"
        )
    off = 0
    nonzero = 0
    for state in sample.values:
        if state.is_zero:
            continue
        nonzero += 1
        if state.unit_tag != unit_tag:
            off += 1
        elif kind == "geometric":
            off += not state.in_geometric_lattice()
        elif kind == "dyadic":
            if scale is None:
                raise ValueError("dyadic audit needs the lattice scale")
            off += state.s > scale or state.m < 0
        else:
            raise ValueError(f"unknown lattice kind {kind!r}")
    return SupportAudit(off, len(sample.values), nonzero)


# ----------------------------------------------------------------------
# Dynkin martingale residual
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class DynkinReport:
    """E f(X(T)) - f(x0) - trapezoid of E[Af(X(s))] over the time grid."""

    residual: float
    se: float
    quadrature_error: float
    mean_f_terminal: float
    generator_means: tuple[float, ...]
    time_grid: tuple[float, ...]
    finite_difference_derivatives: bool


def dynkin_residual(spec, tf: TestFunction, x0: ExactState, horizon: float,
                    timegrid, paths: int, seed: int) -> DynkinReport:
    """Monte Carlo check that f(X(t)) - int Af(X(s)) ds is a martingale.

    Fresh independent ensembles are simulated to every grid time (snapshot
    seeds are split off the master seed), plus one more for the terminal
    expectation, so all quantities are statistically independent.
    """
    ts = [float(t) for t in timegrid]
    if ts[0] != 0.0 or ts[-1] != horizon or any(
        b <= a for a, b in zip(ts, ts[1:])
    ):
        raise ValueError("time grid must increase from 0 to the horizon")
    rule = simulate.jump_rule_of(spec)
    g_means = []
    g_ses = []
    for i, t_snap in enumerate(ts):
        if t_snap == 0.0:
            g_means.append(apply_generator(spec, tf, x0.value))
            g_ses.append(0.0)
            continue
        cfg = SimConfig(horizon=t_snap, seed=_split_seed(seed, i), paths=paths)
        result = simulate.simulate_ensemble(rule, x0, cfg)
        vals = np.array(
            [apply_generator(spec, tf, state.value) for state in result.endpoints]
        )
        g_means.append(float(vals.mean()))
        g_ses.append(float(vals.std(ddof=1) / math.sqrt(vals.size)))
    cfg = SimConfig(horizon=horizon, seed=_split_seed(seed, len(ts)), paths=paths)
    result = simulate.simulate_ensemble(rule, x0, cfg)
    f_vals = np.array([tf.f(state.value) for state in result.endpoints])
    mean_f = float(f_vals.mean())
    se_f = float(f_vals.std(ddof=1) / math.sqrt(f_vals.size))

    ts_arr = np.array(ts)
    g_arr = np.array(g_means)
    integral = float(np.trapezoid(g_arr, ts_arr))
    residual = mean_f - tf.f(x0.value) - integral
    # trapezoid weights for the SE combination
    w = np.zeros(len(ts))
    w[0] = (ts_arr[1] - ts_arr[0]) / 2.0
    w[-1] = (ts_arr[-1] - ts_arr[-2]) / 2.0
    w[1:-1] = (ts_arr[2:] - ts_arr[:-2]) / 2.0
    se = math.sqrt(se_f**2 + float(np.sum((w * np.array(g_ses)) ** 2)))
    # Euler-Maclaurin estimate: |error| ~ h^2/12 |g'(T) - g'(0)|
    h = float(np.max(np.diff(ts_arr)))
    slope0 = (g_arr[1] - g_arr[0]) / (ts_arr[1] - ts_arr[0])
    slope1 = (g_arr[-1] - g_arr[-2]) / (ts_arr[-1] - ts_arr[-2])
    quad = h * h / 12.0 * abs(slope1 - slope0)
    return DynkinReport(
        residual, se, quad, mean_f, tuple(g_means), tuple(ts),
        tf.finite_difference,
    )


def _split_seed(seed: int, index: int) -> int:
    from . import rng

    return int(rng.path_keys(seed ^ 0xD1B54A32D192ED03, [index])[0])


# ----------------------------------------------------------------------
# report CSVs
# ----------------------------------------------------------------------
def moment_report_csv(rows) -> str:
    """rows: iterables of (order, mc_mean, mc_se, closed_form, abs_error, passed)."""
    lines = ["order,mc_mean,mc_se,closed_form,abs_error,pass"]
    for order, mean, se, closed, err, passed in rows:
        lines.append(
            f"{order},{mean:.17g},{se:.17g},{closed:.17g},{err:.17g},{str(bool(passed)).lower()}"
        )
    return "\n".join(lines) + "\n"


def ecf_report_csv(ea: EcfEstimate, eb: EcfEstimate) -> str:
    lines = ["u,re_a,im_a,re_b,im_b,weighted_abs_diff"]
    for i, u in enumerate(ea.u):
        diff = abs(ea.mean[i] - eb.mean[i]) / (1.0 + u * u)
        lines.append(
            f"{u:.17g},{ea.mean[i].real:.17g},{ea.mean[i].imag:.17g},"
            f"{eb.mean[i].real:.17g},{eb.mean[i].imag:.17g},{diff:.17g}"
        )
    return "\n".join(lines) + "\n"
