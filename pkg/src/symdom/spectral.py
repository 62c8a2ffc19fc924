"""Spectral decomposition a = sum_i alpha_i e_i into orthogonal minimal tripotents.

Per-factor algorithms: SVD for rectangular factors, normalisation for
Hilbert factors, a closed form from the invariants q = <a,a>, p = <a,a*>
for spin factors, and merging for direct sums.  Spectral values within
1e-8 * ||a|| of each other form a cluster; the grouped view sums the
cluster frames into the (unique) non-minimal tripotents.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotTripotent
from .factors import (
    HILBERT,
    RECT,
    SPIN,
    Element,
    Factor,
    element_norm,
    spin_invariants,
    spin_spectral_values,
    triple_product,
    zero_element,
)
from .linops import box_matrix

CLUSTER_REL = 1e-8
_DROP_REL = 1e-13


def normalize_phase(coords: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate so the first nonzero coordinate has positive real part."""
    for c in coords:
        if abs(c) > tol:
            return coords * (c.conjugate() / abs(c))
    return coords


def tripotent_residual(e: Element) -> float:
    return element_norm(triple_product(e, e, e) - e)


def is_tripotent(e: Element, tol: float = 1e-8) -> bool:
    return abs(element_norm(e) - 1.0) <= tol and tripotent_residual(e) <= tol


def require_tripotent(e: Element, tol: float = 1e-8) -> None:
    if not is_tripotent(e, tol):
        raise NotTripotent(
            f"element with norm {element_norm(e):.3g} and triple residual "
            f"{tripotent_residual(e):.3g} is not a tripotent at tolerance {tol:g}"
        )


def orthogonality_defect(a: Element, b: Element) -> float:
    """Operator norm of a [] b on the realification; 0 iff a, b orthogonal."""
    return float(np.linalg.norm(box_matrix(a.factor, a.coords, b.coords), 2))


@dataclass(frozen=True)
class SpectralDecomposition:
    factor: Factor
    values: tuple[float, ...]
    frame: tuple[Element, ...]
    cluster_threshold: float

    def __len__(self) -> int:
        return len(self.values)

    def pairs(self):
        return list(zip(self.values, self.frame))

    def reconstruct(self) -> Element:
        out = zero_element(self.factor)
        for v, e in zip(self.values, self.frame):
            out = out + v * e
        return out

    def clusters(self) -> list[list[int]]:
        groups: list[list[int]] = []
        for i, v in enumerate(self.values):
            if groups and self.values[groups[-1][0]] - v <= self.cluster_threshold:
                groups[-1].append(i)
            else:
                groups.append([i])
        return groups

    def grouped(self) -> list[tuple[float, Element]]:
        """(value, tripotent) pairs with equal spectral values collected."""
        out = []
        for idx in self.clusters():
            val = float(np.mean([self.values[i] for i in idx]))
            trip = self.frame[idx[0]]
            for i in idx[1:]:
                trip = trip + self.frame[i]
            out.append((val, trip))
        return out

    def tripotent_part(self, unit_threshold: float = 1.0 - 1e-6) -> Element:
        """Sum of the frame members whose spectral value is 1 up to threshold."""
        out = zero_element(self.factor)
        for v, e in zip(self.values, self.frame):
            if v >= unit_threshold:
                out = out + e
        return out


def _rect_pairs(f: Factor, coords: np.ndarray, drop: float):
    m = coords.reshape(f.rows, f.cols)
    u, s, vh = np.linalg.svd(m)
    pairs = []
    for i, val in enumerate(s):
        if val <= drop:
            break
        e = np.outer(u[:, i], vh[i, :]).reshape(-1)
        pairs.append((float(val), e))
    return pairs


def _spin_star(f: Factor, coords: np.ndarray) -> np.ndarray:
    return f.conj_matrix @ coords.conj()


def _spin_real_form_unit(f: Factor, ref: np.ndarray) -> np.ndarray:
    """A *-fixed unit vector <,>-orthogonal to the *-fixed unit vector ref."""
    for k in range(f.n):
        b = np.zeros(f.n, dtype=complex)
        b[k] = 1.0
        w = 0.5 * (b + _spin_star(f, b))
        w = w - np.vdot(ref, w).real * ref
        nw = float(np.linalg.norm(w))
        if nw > 0.1:
            return w / nw
    raise NotTripotent("spin real form appears degenerate")  # pragma: no cover


def _spin_pairs(f: Factor, coords: np.ndarray, cluster_rel: float):
    _q, p, _s = spin_invariants(f, coords)
    lam1, lam2 = spin_spectral_values(f, coords)
    if lam1 <= 0.0:
        return []
    if lam2 <= cluster_rel * lam1:
        return [(lam1, coords / lam1)]
    mu = p / abs(p)
    if lam1 - lam2 > cluster_rel * lam1:
        star_a = _spin_star(f, coords)
        u_plus = (coords + mu * star_a) / (lam1 + lam2)
        u_minus = (coords - mu * star_a) / (lam1 - lam2)
        e1 = 0.5 * (u_plus + u_minus)
        e2 = 0.5 * (u_plus - u_minus)
        return [(lam1, e1), (lam2, e2)]
    # spectral values coincide up to the cluster threshold: split the
    # *-fixed direction m = a/lam deterministically
    lam = 0.5 * (lam1 + lam2)
    mu_half = np.sqrt(mu)
    m_real = coords / (lam * mu_half)
    m_real = 0.5 * (m_real + _spin_star(f, m_real))
    u = m_real / float(np.linalg.norm(m_real))
    v = _spin_real_form_unit(f, u)
    e1 = mu_half * (u + 1j * v) / np.sqrt(2.0)
    e2 = mu_half * (u - 1j * v) / np.sqrt(2.0)
    return [(lam1, e1), (lam2, e2)]


def _lex_key(coords: np.ndarray):
    out = []
    for c in coords:
        out.extend((round(float(c.real), 12), round(float(c.imag), 12)))
    return tuple(out)


def spectral_decomposition(a: Element, *, cluster_rel: float = CLUSTER_REL) -> SpectralDecomposition:
    f = a.factor
    scale = element_norm(a)
    drop = _DROP_REL * max(scale, 1e-300)
    if f.kind == RECT:
        raw = _rect_pairs(f, a.coords, drop)
    elif f.kind == HILBERT:
        raw = [] if scale <= drop else [(scale, a.coords / scale)]
    elif f.kind == SPIN:
        raw = _spin_pairs(f, a.coords, cluster_rel)
    else:
        raw = []
        offs = f.offsets
        for i, p in enumerate(f.parts):
            sub = spectral_decomposition(
                Element(p, a.coords[offs[i] : offs[i + 1]]), cluster_rel=cluster_rel
            )
            for v, e in sub.pairs():
                lifted = np.zeros(f.dim, dtype=complex)
                lifted[offs[i] : offs[i + 1]] = e.coords
                raw.append((v, lifted))
        raw = [(v, e) for v, e in raw if v > drop]
    raw.sort(key=lambda ve: (-ve[0], _lex_key(ve[1])))
    values = tuple(v for v, _ in raw)
    frame = tuple(Element(f, e) for _, e in raw)
    return SpectralDecomposition(f, values, frame, cluster_rel * max(scale, 1e-300))
