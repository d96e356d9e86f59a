"""Pole atlas and quantitative boundary probes.

Enumerates the pole families of the continued series, finds the roots w_k of
the log-derivative numerator, and runs the probes that exhibit the natural
boundary numerically: density of the Re = 2 pole ordinates, the
linear-forms-in-logarithms gap, and the blow-up of the Re = 1 residue series
at boundary points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from numpy.polynomial import polynomial as P

from .continuation import DecompositionConfig, _zld, gamma_ratio, i_N, r_0, sigma_0, sigma_1, sigma_half, sigma_N
from .errors import DegenerateRatio, RootFindingFailed, ValidationError
from .ff_models import FunctionFieldSpec, PrimePower
from .goldbach import FieldPair

ROOT_RESIDUAL_TOL = 1e-9
W_BOUND_TOL = 1e-9

DEFAULT_FAMILIES = ("b+b", "a+b", "c+b", "b-n", "a", "b", "c", "d")


@dataclass(frozen=True)
class PoleRecord:
    family: str
    indices: tuple
    location: complex
    order: int = 1


@dataclass(frozen=True)
class ProbeReport:
    name: str
    rows: tuple       # rows of (parameter, observed, predicted, bound)
    verdict: bool
    notes: tuple = ()


# -- pole families -----------------------------------------------------------

def _rho_a(spec, a):
    return 2j * math.pi * a / spec.q.log_q


def _rho_b(spec, b):
    return 1.0 + 2j * math.pi * b / spec.q.log_q


def _rho_c(spec, j, c):
    args = np.angle(spec.inverse_roots())
    return 0.5 + 1j * (args[j] + 2 * math.pi * c) / spec.q.log_q


def _rho_d(spec, k, d):
    w = numerator_roots(spec)[k]
    return -(math.log(abs(w)) + 1j * (np.angle(w) + 2 * math.pi * d)) / spec.q.log_q


def enumerate_poles(pair: FieldPair, families: Sequence[str] = DEFAULT_FAMILIES,
                    index_bound: int = 10,
                    region: Optional[Tuple[float, float, float, float]] = None
                    ) -> List[PoleRecord]:
    """All poles of the selected families with indices up to index_bound in
    absolute value, filtered to region = (re_min, re_max, im_min, im_max) and
    deduplicated by location (coinciding lattice points merge)."""
    if index_bound < 1:
        raise ValidationError("index_bound must be >= 1")
    K1, K2 = pair.K1, pair.K2
    idx = range(-index_bound, index_bound + 1)
    records: List[PoleRecord] = []

    for fam in families:
        if fam == "b+b":
            records += [PoleRecord(fam, (b1, b2), _rho_b(K1, b1) + _rho_b(K2, b2))
                        for b1 in idx for b2 in idx]
        elif fam == "a+b":
            records += [PoleRecord(fam, (a1, b2), _rho_a(K1, a1) + _rho_b(K2, b2))
                        for a1 in idx for b2 in idx]
        elif fam == "c+b":
            records += [PoleRecord(fam, (j, c1, b2), _rho_c(K1, j, c1) + _rho_b(K2, b2))
                        for j in range(2 * K1.genus) for c1 in idx for b2 in idx]
        elif fam == "b-n":
            records += [PoleRecord(fam, (b2, n), _rho_b(K2, b2) - n)
                        for b2 in idx for n in range(0, index_bound + 1)]
        elif fam == "a":
            records += [PoleRecord(fam, (a,), _rho_a(K1, a)) for a in idx]
        elif fam == "b":
            records += [PoleRecord(fam, (b,), _rho_b(K1, b)) for b in idx]
        elif fam == "c":
            records += [PoleRecord(fam, (j, c), _rho_c(K1, j, c))
                        for j in range(2 * K1.genus) for c in idx]
        elif fam == "d":
            records += [PoleRecord(fam, (k, d), _rho_d(K1, k, d))
                        for k in range(2 * K1.genus + 1) for d in idx]
        else:
            raise ValidationError(f"unknown pole family {fam!r}")

    if region is not None:
        re_min, re_max, im_min, im_max = region
        records = [r for r in records
                   if re_min <= r.location.real <= re_max
                   and im_min <= r.location.imag <= im_max]
    seen = {}
    for r in records:
        key = (round(r.location.real, 12), round(r.location.imag, 12))
        if key not in seen:
            seen[key] = r
    return list(seen.values())


def pole_lattice_distance(pair: FieldPair, s: complex,
                          families: Sequence[str] = DEFAULT_FAMILIES,
                          index_bound: int = 64) -> float:
    """Distance from s to the enumerated pole lattice (desk-scale helper)."""
    s = complex(s)
    pad = 2.0
    region = (s.real - pad, s.real + pad, s.imag - pad, s.imag + pad)
    recs = enumerate_poles(pair, families, index_bound, region)
    if not recs:
        return math.inf
    return min(abs(s - r.location) for r in recs)


# -- numerator roots ---------------------------------------------------------

def numerator_roots(spec: FunctionFieldSpec) -> np.ndarray:
    """Roots w_k of Q(u) = L'(u)(1-u)(1-qu) + L(u)(1+q-2qu), polished."""
    zld = _zld(spec)
    Q = zld.Q
    if spec.genus == 0:
        q = spec.q.q
        return np.array([(1.0 + q) / (2.0 * q)], dtype=complex)
    roots = np.roots(Q[::-1]).astype(complex)
    Qp = zld.Qp
    val = P.polyval(roots, Q)
    der = P.polyval(roots, Qp)
    roots = roots - np.where(der != 0, val / np.where(der != 0, der, 1.0), 0.0)
    residual = np.abs(P.polyval(roots, Q))
    scale = max(1.0, float(np.max(np.abs(Q))))
    if np.any(residual > ROOT_RESIDUAL_TOL * scale):
        raise RootFindingFailed(f"residuals {residual} above tolerance")
    return roots


def check_w_bound(spec: FunctionFieldSpec) -> ProbeReport:
    """Check min_k |w_k| >= q^{-2}; poles of the z=0 residue term would
    otherwise cross into Re s > 2, contradicting absolute convergence."""
    w = numerator_roots(spec)
    bound = spec.q.q ** -2.0
    min_mod = float(np.min(np.abs(w)))
    rows = tuple(("|w|", float(abs(wk)), bound, W_BOUND_TOL) for wk in w)
    verdict = min_mod >= bound - W_BOUND_TOL
    notes = ()
    if abs(min_mod - bound) <= W_BOUND_TOL:
        # boundary case: the corresponding zeros sit exactly on Re s = 2
        ords = [-(np.angle(wk)) / spec.q.log_q for wk in w
                if abs(abs(wk) - bound) <= W_BOUND_TOL]
        notes = tuple(f"zero ordinate offset {o:.12g} on Re s = 2" for o in ords)
    return ProbeReport(name="w_bound", rows=rows, verdict=verdict, notes=notes)


# -- density and gap probes --------------------------------------------------

def _require_distinct_chars(q1: PrimePower, q2: PrimePower):
    if q1.p == q2.p:
        raise DegenerateRatio(f"p1 = p2 = {q1.p}: log ratio is rational")


def _circular_gaps(points):
    pts = sorted(points)
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append(pts[0] + 1 - pts[-1])
    return gaps


def _distinct_count(gaps, tol=mpmath.mpf("1e-30")):
    vals = []
    for g in sorted(gaps):
        if not vals or abs(g - vals[-1]) > tol:
            vals.append(g)
    return len(vals)


def density_gap(q1: PrimePower, q2: PrimePower, B: int) -> ProbeReport:
    """Gap statistics of the Re = 2 pole ordinates via fractional parts of
    b * (r1 log p1)/(r2 log p2); at most three distinct gap lengths."""
    _require_distinct_chars(q1, q2)
    if B < 10:
        raise ValidationError("B must be >= 10")
    with mpmath.workdps(60):
        theta = (q1.r * mpmath.log(q1.p)) / (q2.r * mpmath.log(q2.p))
        rows = []
        distinct = []
        gap_values = []
        for bb in (B, 2 * B):
            fracs = [mpmath.frac(b * theta) for b in range(-bb, bb + 1)]
            gaps = _circular_gaps(fracs)
            max_gap = max(gaps)
            n_distinct = _distinct_count(gaps)
            rows.append((float(bb), float(max_gap), 1.0 / (2 * bb + 1), float(n_distinct)))
            distinct.append(n_distinct)
            gap_values.append(max_gap)
    verdict = (all(d <= 3 for d in distinct) and gap_values[1] <= gap_values[0])
    return ProbeReport(name="density_gap", rows=tuple(rows), verdict=verdict)


def continued_fraction_denominators(x, max_den: int) -> List[int]:
    """Convergent denominators of x up to max_den (high-precision expansion)."""
    with mpmath.workdps(80):
        y = mpmath.mpf(x)
        dens = [1]  # q_0 = 1
        q_prev, q_cur = 0, 1
        a = int(mpmath.floor(y))
        while True:
            frac = y - a
            if frac == 0:
                break
            y = 1 / frac
            a = int(mpmath.floor(y))
            q_prev, q_cur = q_cur, a * q_cur + q_prev
            if q_cur > max_den:
                break
            dens.append(q_cur)
    return dens


def gelfond_probe(q1: PrimePower, q2: PrimePower, B: int) -> ProbeReport:
    """Smallness of the linear form b log q1 - m log q2 over b <= B.

    Tracks the running minimum of |X(b)| = dist(b log q1/log q2, Z) at dyadic
    checkpoints, fits the decay exponent, and checks that every minimizer is
    a continued-fraction convergent denominator of log q1 / log q2.
    """
    _require_distinct_chars(q1, q2)
    if B < 2:
        raise ValidationError("B must be >= 2")
    with mpmath.workdps(60):
        theta = (q1.r * mpmath.log(q1.p)) / (q2.r * mpmath.log(q2.p))
        best = None
        minimizers = []
        running = []  # running minimum of |X| after each b
        for b in range(1, B + 1):
            x = mpmath.frac(b * theta)
            x = min(x, 1 - x)
            if x == 0:
                raise ValidationError(f"exact zero at b={b}: impossible for p1 != p2")
            if best is None or x < best:
                best = x
                minimizers.append(b)
            running.append(float(best))
        checkpoints = [(bp, running[bp - 1])
                       for bp in (2 ** j for j in range(1, B.bit_length()))
                       if bp <= B]
        if not checkpoints or checkpoints[-1][0] != B:
            checkpoints.append((B, running[-1]))
        log_b = np.log([c[0] for c in checkpoints])
        log_m = np.log([c[1] for c in checkpoints])
        slope = float(np.polyfit(log_b, log_m, 1)[0]) if len(checkpoints) > 1 else float("nan")
        c_hat = -slope
    cf_dens = continued_fraction_denominators(
        (q1.r * mpmath.log(q1.p)) / (q2.r * mpmath.log(q2.p)), B)
    cf_ok = all(b in cf_dens for b in minimizers)
    rows = tuple((float(bp), mn, float(bp) ** (-c_hat), c_hat)
                 for bp, mn in checkpoints)
    verdict = cf_ok and math.isfinite(c_hat)
    notes = (f"fitted exponent C_hat = {c_hat:.6g}",
             f"minimizers = {minimizers}",
             f"cf denominators = {cf_dens}")
    return ProbeReport(name="gelfond_probe", rows=rows, verdict=verdict, notes=notes)


# -- boundary blow-up probe --------------------------------------------------

def boundary_probe(pair: FieldPair, b1_0: int, b2_0: int,
                   eta_list: Sequence[float],
                   config: DecompositionConfig = DecompositionConfig()) -> ProbeReport:
    """Approach s0 = rho(b1_0) + rho(b2_0) on Re s = 2 from the right.

    For p1 != p2 the b2 = b2_0 summand of the Re=1 residue series diverges
    like q1/(eta log q1) while the remainder stays bounded; eta times the
    dominant term must converge to a closed-form constant.  For p1 = p2 the
    probe runs in control mode and checks boundedness instead.
    """
    eta_list = list(eta_list)
    if not eta_list or any(e <= 0 for e in eta_list):
        raise ValidationError("eta_list must be positive")
    if sorted(eta_list, reverse=True) != eta_list:
        raise ValidationError("eta_list must be decreasing")
    control_mode = pair.same_characteristic
    lq1, lq2 = pair.K1.q.log_q, pair.K2.q.log_q
    s0 = 2.0 + 2j * math.pi * (b1_0 / lq1 + b2_0 / lq2)
    if control_mode:
        s0 += 1j  # off the discrete pole lattice: a regular point

    rows = []
    dominants = []
    remainders = []
    sigma1_abs = []
    rho2 = 1.0 + 2j * math.pi * b2_0 / lq2
    zld1 = _zld(pair.K1)
    for eta in eta_list:
        s = s0 + eta
        # the b2 = b2_0 summand carries the divergence; summing the rest
        # separately avoids subtracting two nearly equal large numbers
        dominant = -gamma_ratio(s, rho2) * zld1.value(s - rho2)
        remainder = sigma_1(pair, s, config, skip_b=b2_0).value
        full = dominant + remainder
        rows.append((eta, abs(full), eta * abs(dominant), abs(remainder)))
        dominants.append(eta * dominant)
        remainders.append(remainder)
        sigma1_abs.append(abs(full))

    notes = []
    if control_mode:
        verdict = max(sigma1_abs) <= 10 * min(sigma1_abs) + 10.0
        notes.append("control mode (p1 = p2): checking boundedness")
    else:
        # eta times the divergent summand tends to +Gamma-ratio at s0
        # (residue -1 of zeta'/zeta against the series' overall minus sign)
        predicted = gamma_ratio(complex(s0), rho2)
        notes.append(f"predicted eta * dominant -> {predicted:.12g}")
        last, prev = dominants[-1], dominants[-2]
        converged = abs(last - prev) <= 0.1 * abs(last)
        near_pred = abs(last - predicted) <= 0.05 * abs(predicted)
        rem_abs = [abs(r) for r in remainders]
        rem_bounded = max(rem_abs) <= 2.0 * min(rem_abs) + 1e-9
        # |Sigma_1| should scale like 1/eta; demand a tenth of that growth
        span = eta_list[0] / eta_list[-1]
        blow_up = sigma1_abs[-1] >= 0.1 * span * sigma1_abs[0] if len(sigma1_abs) > 1 else True
        verdict = converged and near_pred and rem_bounded and blow_up

        # regularity of the other decomposition pieces at the largest eta
        s_far = s0 + eta_list[0]
        others = (abs(sigma_half(pair, s_far, config).value)
                  + abs(sigma_0(pair, s_far, config).value)
                  + abs(sigma_N(pair, s_far, config.N))
                  + abs(r_0(pair, s_far))
                  + abs(i_N(pair, s_far, config).value))
        notes.append(f"other components at eta={eta_list[0]:g}: total magnitude {others:.6g}")
    return ProbeReport(name="boundary_probe", rows=tuple(rows),
                       verdict=bool(verdict), notes=tuple(notes))
