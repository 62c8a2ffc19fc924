"""Horofunctions F_xi, their three evaluation routes, and horoballs.

A horofunction here is the limit F_xi(x) = lim_k (1-||z_k||^2)/(1-||g_{-x}(z_k)||^2)
along a boundary-convergent sequence; it is determined by a frame of
orthogonal minimal tripotents e_1..e_q with coefficients
1 = sigma_1 >= ... >= sigma_q > 0.  Horoballs are the sublevel sets
H(xi,s) = {F < s}, which are Bergman-operator images of the ball with
centre c_s = sum_j sigma_j/(sigma_j+s) e_j.

Evaluation routes: `eval_F_bisect` (normative; bisection on the geometric
membership test), `eval_F_sequence` (synthesized evaluating sequences with
Richardson extrapolation), `eval_F_opnorm` (the operator-norm formula).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .boundary import BoundaryComponent, classify_tripotent, component_of_tripotent
from .errors import DomainError, FrameAlignmentError, NotTripotent
from .factors import (
    Element,
    Factor,
    check_in_ball,
    element_norm,
    random_element,
    zero_element,
)
from .linops import OpNormInfo, RealLinOp, bergman_matrix, op_norm_info
from .mobius import Transvection
from .peirce import check_frame, joint_peirce_family, _peirce_matrices
from .spectral import spectral_decomposition

SIGMA_FLOOR = 1e-9
SEQ_KS = tuple(range(10, 31))
SEQ_FLUCTUATION_TOL = 1e-4


@dataclass(frozen=True)
class HorofunctionData:
    """Frame, sigma coefficients, horocentre, and cached joint Peirce family."""

    factor: Factor
    frame: tuple[Element, ...]
    sigma: tuple[float, ...]
    horocentre: Element
    family: dict = field(repr=False)

    @property
    def q(self) -> int:
        return len(self.frame)

    @property
    def rho(self) -> tuple[float, ...]:
        return tuple(math.sqrt(s) for s in self.sigma)

    def centre(self, s: float) -> Element:
        out = zero_element(self.factor)
        for sig, e in zip(self.sigma, self.frame):
            out = out + (sig / (sig + s)) * e
        return out

    def bs_matrix(self, s: float, exponent: float) -> np.ndarray:
        """Complex matrix of B_s^exponent; B_s = B(b,b), b = sum sqrt(sig/(sig+s)) e.

        The eigenvalue factors 1 - sig/(sig+s) are evaluated as s/(sig+s),
        which stays positive for every s > 0."""
        w = [1.0] + [s / (sig + s) for sig in self.sigma]
        out = np.zeros((self.factor.dim, self.factor.dim), dtype=complex)
        for (i, j), proj in self.family.items():
            out += (w[i] * w[j]) ** exponent * proj
        return out

    def membership_defect(self, x: Element, s: float) -> float:
        """||B_s^{-1/2}(x - c_s)||; < 1 means x lies in H(xi, s)."""
        diff = x - self.centre(s)
        return element_norm(Element(self.factor, self.bs_matrix(s, -0.5) @ diff.coords))


def horofunction_from_limit_data(
    frame: Sequence[Element], sigma: Sequence[float], tol: float = 1e-8
) -> HorofunctionData:
    frame = check_frame(frame, tol)
    if not frame:
        raise NotTripotent("horofunction frame must be non-empty")
    for e in frame:
        t = classify_tripotent(e, tol)
        if not t.minimal:
            raise NotTripotent("horofunction frame members must be minimal tripotents")
    sigma = [float(s) for s in sigma]
    if len(sigma) != len(frame):
        raise DomainError("one sigma per frame member required")
    if abs(sigma[0] - 1.0) > 1e-9:
        raise DomainError(f"sigma_1 must be 1, got {sigma[0]}")
    sigma[0] = 1.0
    for s0, s1 in zip(sigma, sigma[1:]):
        if s1 > s0 + 1e-12:
            raise DomainError("sigma must be non-increasing")
    if sigma[-1] <= 0.0 or sigma[0] > 1.0:
        raise DomainError("sigma values must lie in (0, 1]")
    f = frame[0].factor
    centre = zero_element(f)
    for e in frame:
        centre = centre + e
    family = joint_peirce_family(frame, tol)
    return HorofunctionData(f, tuple(frame), tuple(sigma), centre, family)


# -- geometric (bisection) evaluation -----------------------------------------

def eval_F_bisect(F: HorofunctionData, x: Element, tol: float = 1e-10) -> float:
    """inf{s > 0 : ||B_s^{-1/2}(x - c_s)|| <= 1}, located by bisection.

    The tolerance is absolute; a relative term at the double-precision floor
    keeps the loop finite for points that sit at the numerical boundary,
    where F is astronomically large."""
    check_in_ball(x)
    nx = element_norm(x)
    lo = 0.5 * (1.0 - nx) / (1.0 + nx)
    hi = 2.0 * (1.0 + nx) / max(1.0 - nx, 1e-15)
    for _ in range(80):  # safety; the (bbdd) bounds already bracket F
        if F.membership_defect(x, lo) > 1.0:
            break
        lo *= 0.25
    for _ in range(80):
        if F.membership_defect(x, hi) <= 1.0 or hi > 1e18:
            break
        hi *= 4.0
    for _ in range(200):
        if hi - lo <= tol + 1e-15 * hi:
            break
        mid = 0.5 * (lo + hi)
        if F.membership_defect(x, mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# -- evaluating-sequence route -------------------------------------------------

@dataclass(frozen=True)
class EvaluatingSequence:
    F: HorofunctionData
    schedule: tuple[float, ...]
    elements: tuple[Element, ...]


def evaluating_sequence(F: HorofunctionData, ks: Sequence[int] = SEQ_KS) -> EvaluatingSequence:
    """Synthesize y_k = sum_i alpha_ki e_i with 1 - alpha_k1^2 = t_k and
    (1 - alpha_k1^2)/(1 - alpha_ki^2) = sigma_i exactly."""
    sig_min = F.sigma[-1]
    ts, ys = [], []
    for k in ks:
        t = 2.0 ** (-k)
        while t >= 0.5 * sig_min:  # keep every alpha_ki real and < 1
            t *= 0.5
        coeffs = [math.sqrt(1.0 - t / s) for s in F.sigma]
        y = zero_element(F.factor)
        for a, e in zip(coeffs, F.frame):
            y = y + a * e
        ts.append(t)
        ys.append(y)
    return EvaluatingSequence(F, tuple(ts), tuple(ys))


def eval_F_sequence_detailed(
    F: HorofunctionData, x: Element, ks: Sequence[int] | None = None
) -> tuple[float, dict]:
    check_in_ball(x)
    seq = evaluating_sequence(F, ks if ks is not None else SEQ_KS)
    gneg = Transvection(-1 * x)
    ratios = []
    for t, y in zip(seq.schedule, seq.elements):
        gy = gneg.apply(y)
        denom = 1.0 - element_norm(gy) ** 2
        ratios.append(t / denom)
    # two Richardson levels for the O(t) + O(t^2) error of the ratio
    ts = list(seq.schedule)
    lvl1 = [
        (ratios[i + 1] * ts[i] - ratios[i] * ts[i + 1]) / (ts[i] - ts[i + 1])
        for i in range(len(ratios) - 1)
    ]
    lvl2 = [
        (lvl1[i + 1] * ts[i] - lvl1[i] * ts[i + 2]) / (ts[i] - ts[i + 2])
        for i in range(len(lvl1) - 1)
    ]
    est = lvl2 if len(lvl2) >= 2 else (lvl1 if len(lvl1) >= 2 else ratios)
    diffs = [abs(est[i] - est[i - 1]) for i in range(1, len(est))]
    best = 1 + int(np.argmin(diffs)) if diffs else len(est) - 1
    value = float(est[best])
    fluctuation = float(diffs[best - 1] / (1.0 + abs(value))) if diffs else 0.0
    diag = {
        "fluctuation": fluctuation,
        "converged": fluctuation <= SEQ_FLUCTUATION_TOL,
        "raw_first": float(ratios[0]),
        "raw_last": float(ratios[-1]),
    }
    return value, diag


def eval_F_sequence(F: HorofunctionData, x: Element, ks: Sequence[int] | None = None) -> float:
    return eval_F_sequence_detailed(F, x, ks)[0]


# -- operator-norm route -------------------------------------------------------

class FOpNormValue(NamedTuple):
    value: float
    exact: bool


def eval_F_opnorm(F: HorofunctionData, x: Element) -> FOpNormValue:
    """|| sum_{1<=i<=j<=q} rho_i rho_j B(x,x)^{-1/2} B(x,c) P_ij ||."""
    check_in_ball(x)
    f = F.factor
    rho = [0.0] + list(F.rho)
    combo = np.zeros((f.dim, f.dim), dtype=complex)
    for (i, j), proj in F.family.items():
        if i >= 1:
            combo += rho[i] * rho[j] * proj
    from .peirce import bergman_power  # local import to avoid cycle at module load

    bneg = bergman_power(x, -0.5).complex_matrix()
    bxc = bergman_matrix(f, x.coords, F.horocentre.coords)
    info: OpNormInfo = op_norm_info(RealLinOp.from_complex(f, bneg @ bxc @ combo))
    return FOpNormValue(info.value, info.exact)


def gromov_h(F: HorofunctionData, x: Element) -> float:
    """The Gromov horofunction h = (1/2) log F; 1-Lipschitz for the Kobayashi metric."""
    return 0.5 * math.log(eval_F_bisect(F, x))


# -- horoballs -----------------------------------------------------------------

@dataclass(frozen=True)
class Horoball:
    F: HorofunctionData
    s: float
    centre: Element
    bs_sqrt: np.ndarray = field(repr=False)
    bs_negsqrt: np.ndarray = field(repr=False)

    @property
    def bergman_op(self) -> RealLinOp:
        return RealLinOp.from_complex(self.F.factor, self.bs_sqrt @ self.bs_sqrt)


def horoball(F: HorofunctionData, s: float) -> Horoball:
    if s <= 0.0:
        raise DomainError(f"hororadius must be positive, got {s}")
    return Horoball(F, float(s), F.centre(s), F.bs_matrix(s, 0.5), F.bs_matrix(s, -0.5))


def horoball_contains(H: Horoball, x: Element, *, closed: bool = False, tol: float = 0.0) -> bool:
    diff = x - H.centre
    defect = element_norm(Element(H.F.factor, H.bs_negsqrt @ diff.coords))
    return defect <= 1.0 + tol if closed else defect < 1.0


def closed_intersection_component(F: HorofunctionData) -> BoundaryComponent:
    """The boundary component whose closure is the intersection of all closed
    horoballs of F: Gamma of the horocentre."""
    return component_of_tripotent(F.horocentre)


def verify_closed_intersection(
    F: HorofunctionData,
    n_samples: int = 50,
    seed: int = 0,
    s_list: Sequence[float] = (1.0, 0.1, 0.01),
    tol: float = 1e-6,
) -> dict:
    """Desk check: closure points of Gamma_c pass closed membership at every s,
    points >= 0.1 away from the closure fail at the smallest s."""
    f = F.factor
    c = F.horocentre
    p0 = _peirce_matrices(f, c.coords)[0]
    rng = np.random.default_rng(seed)
    max_defect = 0.0
    far_ok = True
    far_checked = 0
    for _ in range(n_samples):
        w = random_element(f, 0.999, rng)
        boundary_pt = Element(f, c.coords + p0 @ w.coords)
        for s in s_list:
            max_defect = max(max_defect, F.membership_defect(boundary_pt, s) - 1.0)
        y = random_element(f, 0.95, rng)
        proj = Element(f, c.coords + p0 @ y.coords)
        if element_norm(y - proj) >= 0.1:
            far_checked += 1
            if F.membership_defect(y, s_list[-1]) <= 1.0 + tol:
                far_ok = False
    return {
        "closure_max_excess": max_defect,
        "closure_ok": max_defect <= tol,
        "far_points_fail": far_ok,
        "far_points_checked": far_checked,
    }


# -- sigma estimation from boundary-convergent sequences ------------------------

@dataclass(frozen=True)
class SigmaEstimate:
    frame: tuple[Element, ...]
    sigma: tuple[float, ...]
    diagnostics: dict
    zeta: Element
    alpha_limits: tuple[float, ...]

    def horofunction(self, tol: float = 1e-8) -> HorofunctionData:
        return horofunction_from_limit_data(self.frame, self.sigma, tol)


def _richardson_limit(ts: np.ndarray, vals: np.ndarray) -> tuple[float, float]:
    """First-order Richardson limit of vals(t) as t -> 0, with an error estimate."""
    if len(ts) < 2:
        return float(vals[-1]), float("inf")
    ests = []
    for i in range(len(ts) - 1):
        t0, t1 = ts[i], ts[i + 1]
        if abs(t0 - t1) < 1e-300:
            continue
        ests.append((vals[i + 1] * t0 - vals[i] * t1) / (t0 - t1))
    if not ests:
        return float(vals[-1]), float("inf")
    if len(ests) == 1:
        return float(ests[0]), abs(float(ests[0] - vals[-1]))
    return float(ests[-1]), abs(float(ests[-1] - ests[-2]))


def estimate_sigma_from_sequence(
    z_list: Sequence[Element],
    *,
    sigma_floor: float = SIGMA_FLOOR,
    force: bool = False,
    min_overlap: float = 0.8,
) -> SigmaEstimate:
    """Recover (frame, sigma) of the horofunction defined by a sequence
    converging to the boundary.

    Spectral-decomposes every z_k, aligns the minimal frames across k by
    greedy matching on |<e_{k+1,i}, e_{k,j}>| with phase correction, and
    Richardson-extrapolates the ratios (1-alpha_k1^2)/(1-alpha_ki^2).
    """
    if len(z_list) < 8:
        raise DomainError(f"need at least 8 sequence elements, got {len(z_list)}")
    f = z_list[0].factor
    norms = [element_norm(z) for z in z_list]
    for n0, n1 in zip(norms, norms[1:]):
        if n1 < n0 - 1e-10:
            raise DomainError("sequence norms must increase toward 1")
    if norms[-1] < 0.8:
        raise DomainError(f"sequence does not approach the boundary (last norm {norms[-1]:.3g})")

    r = f.rank
    K = len(z_list)
    values = np.zeros((K, r))
    frames: list[list[np.ndarray | None]] = []
    worst_overlap = 1.0
    prev: list[np.ndarray | None] = [None] * r
    for k, z in enumerate(z_list):
        sd = spectral_decomposition(z)
        cur_vals = list(sd.values)
        cur_frames = [e.coords for e in sd.frame]
        slots_vals = [0.0] * r
        slots_frames: list[np.ndarray | None] = [None] * r
        unused = set(range(len(cur_frames)))
        if any(p is not None for p in prev):
            overlaps = []
            for ci in unused:
                for sj in range(r):
                    if prev[sj] is None:
                        continue
                    o = complex(np.vdot(prev[sj], cur_frames[ci]))
                    overlaps.append((abs(o), ci, sj, o))
            overlaps.sort(key=lambda t: -t[0])
            taken = set()
            for mag, ci, sj, o in overlaps:
                if ci not in unused or sj in taken:
                    continue
                if mag < 1e-12:
                    break
                unused.discard(ci)
                taken.add(sj)
                worst_overlap = min(worst_overlap, mag)
                phase = o.conjugate() / mag
                slots_frames[sj] = cur_frames[ci] * phase
                slots_vals[sj] = cur_vals[ci]
        free = [j for j in range(r) if slots_frames[j] is None]
        for ci, sj in zip(sorted(unused), free):
            slots_frames[sj] = cur_frames[ci]
            slots_vals[sj] = cur_vals[ci]
        values[k] = slots_vals
        frames.append(slots_frames)
        prev = [sf if sf is not None else pv for sf, pv in zip(slots_frames, prev)]

    if worst_overlap < min_overlap and not force:
        raise FrameAlignmentError(
            f"frame alignment overlap dropped to {worst_overlap:.3g}; "
            "spectra may be clustered (pass force=True to proceed)"
        )

    t = 1.0 - np.max(values, axis=1) ** 2
    sigma_hat, sigma_err, alpha_hat = [], [], []
    for i in range(r):
        ratios = t / np.maximum(1.0 - values[:, i] ** 2, 1e-300)
        s_est, s_err = _richardson_limit(t, ratios)
        a_est, _ = _richardson_limit(t, values[:, i])
        sigma_hat.append(min(max(s_est, 0.0), 1.0))
        sigma_err.append(s_err)
        alpha_hat.append(min(max(a_est, 0.0), 1.0))

    order = sorted(range(r), key=lambda i: -sigma_hat[i])
    frame_out, sigma_out, err_out = [], [], []
    for i in order:
        if sigma_hat[i] < sigma_floor or prev[i] is None:
            continue
        frame_out.append(Element(f, prev[i]))
        sigma_out.append(sigma_hat[i])
        err_out.append(sigma_err[i])
    if not sigma_out:
        raise DomainError("no sigma coefficient survived truncation")
    sigma_out[0] = 1.0

    zeta = zero_element(f)
    for i in range(r):
        if prev[i] is not None and alpha_hat[i] > 1e-12:
            zeta = zeta + alpha_hat[i] * Element(f, prev[i])

    diagnostics = {
        "worst_overlap": worst_overlap,
        "sigma_errors": tuple(err_out),
        "alignment_forced": force and worst_overlap < min_overlap,
        "n_points": K,
    }
    return SigmaEstimate(
        tuple(frame_out), tuple(sigma_out), diagnostics, zeta, tuple(alpha_hat)
    )


# -- closed forms on discs -----------------------------------------------------

def horodisc_value(z: complex, xi: complex = 1.0) -> float:
    """F on the unit disc with horocentre xi: |1 - z conj(xi)|^2 / (1 - |z|^2)."""
    w = z * np.conj(xi)
    return float(abs(1.0 - w) ** 2 / (1.0 - abs(w) ** 2))


def horodisc_value_via_re(z: complex, xi: complex = 1.0) -> float:
    """Same value through the identity |1-z|^2/(1-|z|^2) = 1/Re((1+z)/(1-z))."""
    w = z * np.conj(xi)
    return float(1.0 / ((1.0 + w) / (1.0 - w)).real)
