"""Holomorphic self-maps of the ball, Wolff horoballs, and Denjoy-Wolff reports.

Self-maps come from a small DSL of primitives that provably map D into D
(transvections, scalings, linear triple-automorphisms, coordinatewise disc
maps), plus built-in coupled bidisc maps for the three Herve scenarios.
The Wolff construction solves beta_k f(z) = z by Earle-Hamilton iteration
with a Newton polish, feeds the fixed points to the sigma estimator, and
measures horofunction invariance on random samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import (
    BoundaryComponent,
    classify_tripotent,
    component_of_boundary_point,
    component_of_tripotent,
    closure_contains,
    in_extended_shilov,
)
from .errors import ConfigError, DomainError, IterationLimitExceeded
from .factors import (
    HILBERT,
    RECT,
    SPIN,
    Element,
    Factor,
    check_in_ball,
    element_from_pairs,
    element_norm,
    element_to_pairs,
    random_element,
    zero_element,
)
from .horofunction import (
    HorofunctionData,
    SigmaEstimate,
    estimate_sigma_from_sequence,
    eval_F_bisect,
    horodisc_value,
    horodisc_value_via_re,
)
from .mobius import Transvection, kobayashi, mobius_1d


# -- map DSL -------------------------------------------------------------------

def _pair(z: complex):
    return [float(np.real(z)), float(np.imag(z))]


def _unpair(p) -> complex:
    return complex(p[0], p[1])


class SelfMap:
    """Base class: a holomorphic self-map of the open unit ball of `factor`."""

    factor: Factor

    def apply(self, x: Element) -> Element:
        raise NotImplementedError

    def __call__(self, x: Element) -> Element:
        return self.apply(x)

    def to_dict(self) -> dict:
        raise NotImplementedError


class TransvectionStep:
    def __init__(self, a: Element):
        check_in_ball(a, "transvection parameter")
        self.a = a
        self._g = Transvection(a)

    def apply(self, x: Element) -> Element:
        return self._g.apply(x)

    def to_dict(self) -> dict:
        return {"op": "transvection", "a": element_to_pairs(self.a)}


class ScaleStep:
    def __init__(self, factor: Factor, lam: complex):
        lam = complex(lam)
        if abs(lam) > 1.0:
            raise DomainError(f"scale factor must satisfy |lambda| <= 1, got {abs(lam)}")
        self.factor = factor
        self.lam = lam

    def apply(self, x: Element) -> Element:
        return self.lam * x

    def to_dict(self) -> dict:
        return {"op": "scale", "lambda": _pair(self.lam)}


def _check_unitary(u: np.ndarray, what: str):
    if np.linalg.norm(u @ u.conj().T - np.eye(u.shape[0])) > 1e-10 * u.shape[0]:
        raise ConfigError(f"{what} is not unitary")


class IsometryStep:
    """A linear triple-automorphism: unitary pair for rectangular factors,
    unitary for Hilbert, permutation with phases for polydiscs, and a real
    orthogonal matrix with a global phase for spin factors."""

    def __init__(self, factor: Factor, **data):
        self.factor = factor
        self.data = data
        if factor.kind == RECT:
            self.u = np.asarray(data["u"], dtype=complex)
            self.w = np.asarray(data["w"], dtype=complex)
            if self.u.shape != (factor.rows, factor.rows) or self.w.shape != (
                factor.cols,
                factor.cols,
            ):
                raise ConfigError("isometry matrices have wrong shapes")
            _check_unitary(self.u, "u")
            _check_unitary(self.w, "w")
        elif factor.kind == HILBERT:
            self.u = np.asarray(data["u"], dtype=complex)
            if self.u.shape != (factor.n, factor.n):
                raise ConfigError("isometry matrix has wrong shape")
            _check_unitary(self.u, "u")
        elif factor.kind == SPIN:
            self.u = np.asarray(data["u"], dtype=complex)
            self.phase = complex(data.get("phase", 1.0))
            _check_unitary(self.u, "u")
            if abs(abs(self.phase) - 1.0) > 1e-10:
                raise ConfigError("spin isometry phase must be unimodular")
            cm = factor.conj_matrix
            if np.linalg.norm(cm @ self.u.conj() - self.u @ cm) > 1e-10 * factor.n:
                raise ConfigError("spin isometry must commute with the conjugation")
        elif factor.is_polydisc:
            d = len(factor.parts)
            self.perm = list(data.get("perm", range(d)))
            if sorted(self.perm) != list(range(d)):
                raise ConfigError("perm must be a permutation of the coordinates")
            self.phases = np.array([complex(p) for p in data.get("phases", [1.0] * d)])
            if np.any(np.abs(np.abs(self.phases) - 1.0) > 1e-10):
                raise ConfigError("polydisc isometry phases must be unimodular")
        else:
            raise ConfigError(f"no isometry form for factor {factor!r}")

    def apply(self, x: Element) -> Element:
        f = self.factor
        if f.kind == RECT:
            m = x.coords.reshape(f.rows, f.cols)
            return Element(f, (self.u @ m @ self.w).reshape(-1))
        if f.kind == HILBERT:
            return Element(f, self.u @ x.coords)
        if f.kind == SPIN:
            return Element(f, self.phase * (self.u @ x.coords))
        return Element(f, self.phases * x.coords[self.perm])

    def to_dict(self) -> dict:
        f = self.factor
        if f.kind == RECT:
            return {
                "op": "isometry",
                "u": [[_pair(z) for z in row] for row in self.u],
                "w": [[_pair(z) for z in row] for row in self.w],
            }
        if f.kind == HILBERT:
            return {"op": "isometry", "u": [[_pair(z) for z in row] for row in self.u]}
        if f.kind == SPIN:
            return {
                "op": "isometry",
                "u": [[_pair(z) for z in row] for row in self.u],
                "phase": _pair(self.phase),
            }
        return {
            "op": "isometry",
            "perm": list(self.perm),
            "phases": [_pair(p) for p in self.phases],
        }


class CoordinatewiseStep:
    """Per-coordinate disc maps on a polydisc (or a single disc):
    Moebius psi_b or affine alpha z + beta with |alpha| + |beta| <= 1."""

    def __init__(self, factor: Factor, parts: list[dict]):
        d = factor.dim
        if not (factor.is_polydisc or (factor.kind == HILBERT and factor.n == 1)):
            raise ConfigError("coordinatewise maps need a polydisc or the disc")
        if len(parts) != d:
            raise ConfigError(f"need {d} coordinate maps, got {len(parts)}")
        self.factor = factor
        self.parts = []
        for p in parts:
            kind = p["type"]
            if kind == "mobius":
                b = _unpair(p["b"]) if isinstance(p["b"], (list, tuple)) else complex(p["b"])
                if abs(b) >= 1.0:
                    raise DomainError("mobius parameter must lie in the open disc")
                self.parts.append(("mobius", b))
            elif kind == "affine":
                al = _unpair(p["alpha"]) if isinstance(p["alpha"], (list, tuple)) else complex(p["alpha"])
                be = _unpair(p["beta"]) if isinstance(p["beta"], (list, tuple)) else complex(p["beta"])
                if abs(al) + abs(be) > 1.0 + 1e-12:
                    raise DomainError("affine map needs |alpha| + |beta| <= 1")
                self.parts.append(("affine", al, be))
            else:
                raise ConfigError(f"unknown coordinate map type {kind!r}")

    def apply(self, x: Element) -> Element:
        out = np.empty(self.factor.dim, dtype=complex)
        for j, spec in enumerate(self.parts):
            z = x.coords[j]
            if spec[0] == "mobius":
                out[j] = mobius_1d(spec[1], z)
            else:
                out[j] = spec[1] * z + spec[2]
        return Element(self.factor, out)

    def to_dict(self) -> dict:
        parts = []
        for spec in self.parts:
            if spec[0] == "mobius":
                parts.append({"type": "mobius", "b": _pair(spec[1])})
            else:
                parts.append({"type": "affine", "alpha": _pair(spec[1]), "beta": _pair(spec[2])})
        return {"op": "coordwise", "parts": parts}


class PipelineMap(SelfMap):
    """Composition of DSL primitives, applied in pipeline order."""

    def __init__(self, factor: Factor, steps: list):
        self.factor = factor
        self.steps = list(steps)

    def apply(self, x: Element) -> Element:
        for s in self.steps:
            x = s.apply(x)
        return x

    def to_dict(self) -> dict:
        return {"pipeline": [s.to_dict() for s in self.steps]}


class CoupledBidiscMap(SelfMap):
    """Built-in bidisc scenario maps for the Herve cases.

    case 'a':  f(x, y) = (psi_b(x), y (1 + x) / 2)   -- first coordinate escapes,
               second coordinate fixed-point curve y = eta(x) = 0
    case 'c':  f(x, y) = ((x + psi_b(y))/2, (y + psi_b(x))/2) -- cross-coupled
               fixed-point curves x = nu(y), y = eta(x)
    """

    def __init__(self, case: str, factor: Factor, b: complex = 0.5):
        if not factor.is_polydisc or len(factor.parts) != 2:
            raise ConfigError("coupled bidisc maps need Polydisc(2)")
        if case not in ("a", "c"):
            raise ConfigError(f"unknown coupled case {case!r}")
        if abs(b) >= 1.0:
            raise DomainError("coupling parameter b must lie in the open disc")
        self.factor = factor
        self.case = case
        self.b = complex(b)

    def apply(self, p: Element) -> Element:
        x, y = p.coords
        if self.case == "a":
            return Element(self.factor, [mobius_1d(self.b, x), 0.5 * y * (1.0 + x)])
        return Element(
            self.factor,
            [0.5 * (x + mobius_1d(self.b, y)), 0.5 * (y + mobius_1d(self.b, x))],
        )

    def to_dict(self) -> dict:
        return {"scenario": f"bidisc-case-{self.case}", "b": _pair(self.b)}


def map_from_dict(factor: Factor, spec: dict) -> SelfMap:
    if not isinstance(spec, dict):
        raise ConfigError("map spec must be an object")
    if "scenario" in spec:
        name = spec["scenario"]
        unknown = set(spec) - {"scenario", "b"}
        if unknown:
            raise ConfigError(f"unknown keys {sorted(unknown)} in scenario map spec")
        if name.startswith("bidisc-case-"):
            b = _unpair(spec["b"]) if "b" in spec else 0.5
            return CoupledBidiscMap(name[-1], factor, b)
        raise ConfigError(f"unknown scenario {name!r}")
    if "pipeline" not in spec:
        raise ConfigError("map spec needs a 'pipeline' or 'scenario' key")
    unknown = set(spec) - {"pipeline"}
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in map spec")
    steps = []
    for sd in spec["pipeline"]:
        op = sd.get("op")
        if op == "transvection":
            steps.append(TransvectionStep(element_from_pairs(factor, sd["a"])))
        elif op == "scale":
            steps.append(ScaleStep(factor, _unpair(sd["lambda"])))
        elif op == "isometry":
            data = {k: v for k, v in sd.items() if k != "op"}
            if "u" in data:
                data["u"] = np.array([[_unpair(z) for z in row] for row in data["u"]])
            if "w" in data:
                data["w"] = np.array([[_unpair(z) for z in row] for row in data["w"]])
            if "phases" in data:
                data["phases"] = [_unpair(p) for p in data["phases"]]
            if "phase" in data:
                data["phase"] = _unpair(data["phase"])
            steps.append(IsometryStep(factor, **data))
        elif op == "coordwise":
            steps.append(CoordinatewiseStep(factor, sd["parts"]))
        else:
            raise ConfigError(f"unknown pipeline op {op!r}")
    return PipelineMap(factor, steps)


def schwarz_pick_defect(f: SelfMap, pairs: int = 50, norm_cap: float = 0.8, seed: int = 0) -> float:
    """max over sampled pairs of kappa(f x, f y) - kappa(x, y); <= 0 up to noise."""
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(pairs):
        x = random_element(f.factor, norm_cap, rng)
        y = random_element(f.factor, norm_cap, rng)
        worst = max(worst, kobayashi(f(x), f(y)) - kobayashi(x, y))
    return worst


# -- Earle-Hamilton ------------------------------------------------------------

def _newton_polish(
    g, x: Element, tol: float, max_steps: int = 60
) -> tuple[Element, float]:
    """Drive ||g(x) - x|| below tol by Newton's method on G(z) = g(z) - z,
    using a finite-difference complex Jacobian (g is holomorphic)."""
    f = x.factor
    n = f.dim
    resid_el = g(x) - x
    resid = element_norm(resid_el)
    for _ in range(max_steps):
        if resid <= tol:
            break
        h = max(1e-9, 1e-7 * (1.0 - element_norm(x)))
        jac = np.empty((n, n), dtype=complex)
        for k in range(n):
            dv = np.zeros(n, dtype=complex)
            dv[k] = h
            jac[:, k] = (
                g(Element(f, x.coords + dv)).coords - g(Element(f, x.coords - dv)).coords
            ) / (2.0 * h)
        try:
            step = np.linalg.solve(jac - np.eye(n), -resid_el.coords)
        except np.linalg.LinAlgError:
            break
        scale = 1.0
        improved = False
        for _ in range(30):
            cand = Element(f, x.coords + scale * step)
            if element_norm(cand) < 1.0:
                cand_resid_el = g(cand) - cand
                cand_resid = element_norm(cand_resid_el)
                if cand_resid < resid:
                    x, resid_el, resid = cand, cand_resid_el, cand_resid
                    improved = True
                    break
            scale *= 0.5
        if not improved:
            break
    return x, resid


def earle_hamilton(f: SelfMap, beta: float, tol: float = 1e-12, max_iter: int = 100000) -> Element:
    """Fixed point of beta*f: iterate x -> beta f(x) from 0 until the Kobayashi
    step falls below tol, then Newton-polish the residual ||beta f(z) - z||."""
    if not (0.0 < beta < 1.0):
        raise DomainError(f"beta must lie in (0,1), got {beta}")

    def g(x: Element) -> Element:
        return beta * f(x)

    x = zero_element(f.factor)
    loose = max(tol, 1e-6)
    used = 0
    for used in range(1, max_iter + 1):
        nxt = g(x)
        step = kobayashi(nxt, x)
        x = nxt
        if step < loose:
            break
    else:
        raise IterationLimitExceeded(
            f"earle_hamilton hit the {max_iter} iteration cap (beta={beta})", x
        )
    x, resid = _newton_polish(g, x, tol)
    if resid > 10.0 * tol:
        # fall back to plain iteration at the strict tolerance
        for _ in range(used, max_iter + 1):
            nxt = g(x)
            step = kobayashi(nxt, x)
            x = nxt
            if step < tol:
                break
        else:
            raise IterationLimitExceeded(
                f"earle_hamilton residual stalled at {resid:.3g} (beta={beta})", x
            )
    return x


# -- Wolff construction ----------------------------------------------------------

def default_beta_schedule(ks=range(3, 15)) -> tuple[float, ...]:
    return tuple(1.0 - 2.0 ** (-k) for k in ks)


@dataclass(frozen=True)
class WolffData:
    beta_schedule: tuple[float, ...]
    fixed_points: tuple[Element, ...]
    residuals: tuple[float, ...]
    verdict: str  # fixed-point-free | interior-fixed-point | indeterminate
    zeta: Element | None
    F: HorofunctionData | None
    sigma_estimate: SigmaEstimate | None
    invariance_margin: float
    f_scale: float
    fixed_point: Element | None = None


def wolff(
    f: SelfMap,
    schedule=None,
    *,
    eh_tol: float = 1e-12,
    invariance_samples: int = 500,
    sample_norm: float = 0.95,
    seed: int = 0,
) -> WolffData:
    """Wolff construction: fixed points z_k of beta_k f, the estimated
    horofunction they define, and the measured invariance margin of F under f."""
    schedule = tuple(schedule) if schedule is not None else default_beta_schedule()
    zs, residuals = [], []
    for beta in schedule:
        z = earle_hamilton(f, beta, eh_tol)
        zs.append(z)
        residuals.append(element_norm(beta * f(z) - z))

    norms = [element_norm(z) for z in zs]
    if norms[-1] < 0.9:
        # z_k converge strictly inside: f has a fixed point (not an error)
        fp, _ = _newton_polish(f, zs[-1], eh_tol)
        return WolffData(
            schedule, tuple(zs), tuple(residuals), "interior-fixed-point",
            None, None, None, 0.0, 0.0, fixed_point=fp,
        )
    verdict = "fixed-point-free" if norms[-1] >= 0.999 else "indeterminate"

    try:
        est = estimate_sigma_from_sequence(zs)
    except Exception:
        est = estimate_sigma_from_sequence(zs, force=True)
    F = est.horofunction()

    rng = np.random.default_rng(seed)
    margin = -math.inf
    f_scale = 0.0
    for _ in range(invariance_samples):
        x = random_element(f.factor, sample_norm, rng)
        fx = eval_F_bisect(F, x)
        ffx = eval_F_bisect(F, f(x))
        margin = max(margin, ffx - fx)
        f_scale = max(f_scale, fx, ffx)
    return WolffData(
        schedule, tuple(zs), tuple(residuals), verdict,
        est.zeta, F, est, margin, f_scale,
    )


# -- orbits and limit functions ---------------------------------------------------

@dataclass(frozen=True)
class OrbitCluster:
    centre: Element
    count: int
    diameter: float
    indices: tuple[int, ...]


@dataclass(frozen=True)
class OrbitRecord:
    start: Element
    points: tuple[Element, ...]
    norms: tuple[float, ...]
    kappa_steps: tuple[float, ...]
    tail_clusters: tuple[OrbitCluster, ...]
    max_norm: float
    stagnation_index: int
    saturated: bool  # the orbit hit the boundary at double precision


def _agglomerate(points: list[Element], indices: list[int], tol: float) -> list[OrbitCluster]:
    m = len(points)
    dist = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            dist[i, j] = dist[j, i] = element_norm(points[i] - points[j])
    clusters = [[i] for i in range(m)]
    merged = True
    while merged and len(clusters) > 1:
        merged = False
        best = (tol, None, None)
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                d = dist[np.ix_(clusters[i], clusters[j])].min()
                if d < best[0]:
                    best = (d, i, j)
        if best[1] is not None:
            i, j = best[1], best[2]
            clusters[i].extend(clusters[j])
            del clusters[j]
            merged = True
    out = []
    for members in clusters:
        coords = np.mean([points[k].coords for k in members], axis=0)
        centre = Element(points[0].factor, coords)
        diam = float(dist[np.ix_(members, members)].max())
        out.append(
            OrbitCluster(centre, len(members), diam, tuple(sorted(indices[k] for k in members)))
        )
    out.sort(key=lambda c: -c.count)
    return out


def orbit(f: SelfMap, a: Element, N: int, cluster_tol: float = 1e-3) -> OrbitRecord:
    """Record a, f(a), ..., f^N(a) with norms, Kobayashi steps, and tail clusters.

    Boundary-converging orbits can reach norm 1 at double precision; the
    record then stops at the first saturated point and is flagged.
    """
    check_in_ball(a, "orbit start")
    points = [a]
    norms = [element_norm(a)]
    saturated = False
    for _ in range(N):
        nxt = f(points[-1])
        points.append(nxt)
        norms.append(element_norm(nxt))
        if norms[-1] >= 1.0:
            saturated = True
            break
    kappa_steps = [
        kobayashi(points[i], points[i + 1])
        for i in range(len(points) - 1)
        if norms[i] < 1.0 and norms[i + 1] < 1.0
    ]
    tail_n = max(1, len(points) // 4)
    tail_idx = list(range(len(points) - tail_n, len(points)))
    clusters = _agglomerate([points[i] for i in tail_idx], tail_idx, cluster_tol)
    stagnation = len(norms) - 1
    for i in range(len(norms) - 1):
        if all(norms[j + 1] >= norms[j] - 1e-12 for j in range(i, len(norms) - 1)):
            stagnation = i
            break
    return OrbitRecord(
        a, tuple(points), tuple(norms), tuple(kappa_steps),
        tuple(clusters), max(norms), stagnation, saturated,
    )


@dataclass(frozen=True)
class LimitFunctionData:
    subsequences: tuple[tuple[int, ...], ...]
    per_start: tuple[tuple[Element, tuple[Element, ...]], ...]
    nonfinite_omega: bool


def limit_functions(
    f: SelfMap, starts: list[Element], N: int, cluster_tol: float = 1e-3
) -> LimitFunctionData:
    """Estimate subsequential limit values: subsequence indices come from the
    tail clusters of the first start and are shared across all starts."""
    if not starts:
        raise DomainError("need at least one start")
    records = [orbit(f, a, N, cluster_tol) for a in starts]
    designated = records[0]
    # saturated orbits may stop early; shared subsequences must index into all
    min_len = min(len(rec.points) for rec in records)
    subsequences = tuple(
        idx
        for idx in (
            tuple(i for i in c.indices if i < min_len) for c in designated.tail_clusters
        )
        if idx
    )
    nonfinite = len(designated.tail_clusters) > max(4, (N // 4) // 3)
    per_start = []
    for a, rec in zip(starts, records):
        values = []
        for idx in subsequences:
            pts = [rec.points[i].coords for i in idx]
            values.append(Element(f.factor, np.mean(pts, axis=0)))
        per_start.append((a, tuple(values)))
    return LimitFunctionData(subsequences, tuple(per_start), nonfinite)


# -- Denjoy-Wolff report ----------------------------------------------------------

@dataclass(frozen=True)
class HypothesisCheck:
    status: str  # holds | fails | indeterminate
    detail: str
    classifications: tuple[dict, ...]


@dataclass(frozen=True)
class DenjoyWolffReport:
    verdict: str
    wolff: WolffData
    predicted_component: BoundaryComponent | None
    truncated_component: BoundaryComponent | None
    truncation_index: int
    s0: float
    starts: tuple[Element, ...]
    limit_points: tuple[tuple[OrbitCluster, ...], ...]
    hypothesis: HypothesisCheck | None
    clusters_captured: bool
    capture_failures: tuple[str, ...]
    nonfinite_omega: tuple[bool, ...]
    tolerances: dict


def _classify_limit_point(xi: Element, unit_threshold: float) -> dict:
    nrm = element_norm(xi)
    entry = {"norm": nrm}
    if nrm < unit_threshold:
        entry["status"] = "interior"
        return entry
    try:
        comp = component_of_boundary_point(xi, unit_threshold)
    except DomainError as exc:
        entry["status"] = f"unclassifiable: {exc}"
        return entry
    t = comp.tripotent
    entry.update(
        status="boundary",
        peirce_dims=t.peirce_dims,
        flags=t.flags,
        extended_shilov=in_extended_shilov(t),
    )
    return entry


def denjoy_wolff_report(
    f: SelfMap,
    *,
    starts: list[Element] | None = None,
    iterations: int = 200,
    seed: int = 0,
    cluster_tol: float = 1e-3,
    closure_tol: float = 1e-3,
    unit_threshold: float = 1.0 - 1e-3,
    invariance_samples: int = 500,
    beta_schedule=None,
    eh_tol: float = 1e-12,
) -> DenjoyWolffReport:
    """Run the full verification pipeline: Wolff data, predicted component with
    its truncation, orbit limit points, the extended-Shilov hypothesis check,
    and closure capture of every estimated limit point."""
    tolerances = {
        "cluster_tol": cluster_tol,
        "closure_tol": closure_tol,
        "unit_threshold": unit_threshold,
        "eh_tol": eh_tol,
    }
    w = wolff(
        f, beta_schedule, eh_tol=eh_tol,
        invariance_samples=invariance_samples, seed=seed,
    )
    if w.verdict == "interior-fixed-point":
        return DenjoyWolffReport(
            "interior-fixed-point", w, None, None, 0, 0.0,
            tuple(starts or ()), (), None, True, (), (), tolerances,
        )

    F = w.F
    a0 = F.centre(0.5)  # F(a0) < 1/2 < 1: the unit-hororadius orbit start
    s0 = eval_F_bisect(F, a0)
    d0 = max(i + 1 for i, s in enumerate(F.sigma) if s > s0)
    c0 = zero_element(f.factor)
    for e in F.frame[:d0]:
        c0 = c0 + e
    predicted = component_of_tripotent(F.horocentre)
    truncated = component_of_tripotent(c0)

    rng = np.random.default_rng(seed)
    all_starts = [a0] + (list(starts) if starts else
                         [random_element(f.factor, 0.5, rng) for _ in range(3)])
    records = [orbit(f, a, iterations, cluster_tol) for a in all_starts]
    limit_points = tuple(rec.tail_clusters for rec in records)
    nonfinite = tuple(
        len(rec.tail_clusters) > max(4, (iterations // 4) // 3) for rec in records
    )

    classifications = tuple(
        _classify_limit_point(c.centre, unit_threshold) for c in records[0].tail_clusters
    )
    if any(e.get("status") == "interior" for e in classifications):
        hyp = HypothesisCheck("indeterminate", "designated orbit tail has not reached the boundary", classifications)
    elif any(e.get("status", "").startswith("unclassifiable") for e in classifications):
        hyp = HypothesisCheck("indeterminate", "limit tripotent part could not be classified", classifications)
    elif all(e["extended_shilov"] for e in classifications):
        hyp = HypothesisCheck("holds", "all limit tripotents are maximal or structural", classifications)
    else:
        bad = next(e for e in classifications if not e["extended_shilov"])
        kind = "minimal " if bad["flags"]["minimal"] else ""
        hyp = HypothesisCheck(
            "fails", f"{kind}non-structural limit tripotent with Peirce dims {bad['peirce_dims']}",
            classifications,
        )

    failures = []
    check_pointwise = any(nonfinite)
    for si, rec in enumerate(records):
        if check_pointwise and nonfinite[si]:
            tail_n = max(1, len(rec.points) // 4)
            for i in range(len(rec.points) - tail_n, len(rec.points)):
                if not closure_contains(truncated, rec.points[i], closure_tol):
                    failures.append(f"start {si}: tail point {i} escapes the predicted closure")
                    break
        else:
            for ci, cl in enumerate(rec.tail_clusters):
                if not closure_contains(truncated, cl.centre, closure_tol):
                    failures.append(f"start {si}: cluster {ci} escapes the predicted closure")
    return DenjoyWolffReport(
        w.verdict, w, predicted, truncated, d0, s0,
        tuple(all_starts), limit_points, hyp,
        not failures, tuple(failures), nonfinite, tolerances,
    )


# -- Hilbert-ball alternatives -----------------------------------------------------

@dataclass(frozen=True)
class HilbertAlternative:
    verdict: str  # single-boundary-point | interior-dynamics
    zeta: Element | None
    max_spread: float
    consistent: bool


def hilbert_alternative(
    f: SelfMap,
    *,
    starts: list[Element] | None = None,
    iterations: int = 300,
    seed: int = 0,
    boundary_margin: float = 0.05,
    spread_tol: float = 1e-3,
) -> HilbertAlternative:
    """Alternatives check on a Hilbert ball: either interior dynamics
    (fixed point) or all limit values equal one boundary point; the interior
    branch of a fixed-point-free map cannot occur in finite dimension."""
    if f.factor.kind != HILBERT:
        raise ConfigError("hilbert_alternative needs a Hilbert factor")
    w = wolff(f, invariance_samples=0, seed=seed)
    if w.verdict == "interior-fixed-point":
        return HilbertAlternative("interior-dynamics", None, 0.0, True)
    rng = np.random.default_rng(seed)
    all_starts = list(starts) if starts else [random_element(f.factor, 0.6, rng) for _ in range(5)]
    spread = 0.0
    consistent = True
    for a in all_starts:
        rec = orbit(f, a, iterations)
        for cl in rec.tail_clusters:
            if element_norm(cl.centre) < 1.0 - boundary_margin:
                consistent = False  # interior-valued limit: excluded in finite dim
            spread = max(spread, element_norm(cl.centre - w.zeta))
    return HilbertAlternative(
        "single-boundary-point", w.zeta, spread, consistent and spread <= max(spread_tol, 1e-12) * 100
    )


# -- bidisc appendix suite -----------------------------------------------------------

@dataclass(frozen=True)
class AppendixStartReport:
    start: Element
    branch: str  # extreme0 | extreme | violation
    decay_final: float
    decay_at_60: float | None
    re_identity_max_diff: float
    clusters_captured: bool


@dataclass(frozen=True)
class AppendixReport:
    scenario: str
    map_spec: dict
    verdict: str
    horocentre: Element | None
    per_start: tuple[AppendixStartReport, ...]
    dichotomy_ok: bool


def build_bidisc_scenario(scenario: str, factor: Factor, b=0.5) -> SelfMap:
    if scenario == "case_a":
        return CoupledBidiscMap("a", factor, b)
    if scenario == "case_b":
        bb = b if isinstance(b, (tuple, list)) else (b, b)
        return PipelineMap(
            factor,
            [CoordinatewiseStep(factor, [
                {"type": "mobius", "b": _pair(bb[0])},
                {"type": "mobius", "b": _pair(bb[1])},
            ])],
        )
    if scenario == "case_c":
        return CoupledBidiscMap("c", factor, b)
    raise ConfigError(f"unknown bidisc scenario {scenario!r}")


def bidisc_appendix_suite(
    scenario: str,
    *,
    b=0.5,
    starts: list[Element] | None = None,
    iterations: int = 200,
    seed: int = 0,
    escape_tol: float = 1e-3,
    closure_tol: float = 1e-3,
) -> AppendixReport:
    """Herve-case scenario runs: orbit escape dichotomy (extreme0)/(extreme),
    horofunction decay F_c(f^m(a)) -> 0 by the coordinatewise closed form, and
    capture of the limit clusters in the predicted component closure."""
    from .factors import polydisc

    factor = polydisc(2)
    f = build_bidisc_scenario(scenario, factor, b)
    w = wolff(f, invariance_samples=0, seed=seed)
    if w.verdict == "interior-fixed-point":
        return AppendixReport(scenario, f.to_dict(), "interior-fixed-point", None, (), False)

    c = w.F.horocentre
    active = [j for j in range(2) if abs(c.coords[j]) > 0.5]
    comp = component_of_tripotent(c)

    rng = np.random.default_rng(seed)
    all_starts = list(starts) if starts else [
        random_element(factor, 0.5, rng) for _ in range(4)
    ]
    per_start = []
    dichotomy_ok = True
    for a in all_starts:
        rec = orbit(f, a, iterations)
        m1 = [abs(p.coords[0]) for p in rec.points]
        m2 = [abs(p.coords[1]) for p in rec.points]
        tail8 = max(1, len(rec.points) // 8)
        extreme0 = min(m1[-tail8:]) >= 1.0 - escape_tol
        extreme = any(min(u, v) >= 1.0 - escape_tol for u, v in zip(m1, m2))
        branch = "extreme0" if extreme0 else ("extreme" if extreme else "violation")
        if branch == "violation":
            dichotomy_ok = False
        decay, re_diff = [], 0.0
        for p in rec.points:
            vals = []
            for j in active:
                v1 = horodisc_value(p.coords[j], c.coords[j])
                v2 = horodisc_value_via_re(p.coords[j], c.coords[j])
                re_diff = max(re_diff, abs(v1 - v2))
                vals.append(v2)
            decay.append(max(vals))
        captured = all(
            closure_contains(comp, cl.centre, closure_tol) for cl in rec.tail_clusters
        )
        per_start.append(
            AppendixStartReport(
                a, branch, decay[-1],
                decay[60] if len(decay) > 60 else None,
                re_diff, captured,
            )
        )
    verdict = "ok" if dichotomy_ok and all(r.clusters_captured for r in per_start) else "check-failed"
    return AppendixReport(scenario, f.to_dict(), verdict, c, tuple(per_start), dichotomy_ok)
