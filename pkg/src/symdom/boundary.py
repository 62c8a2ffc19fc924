"""Tripotent taxonomy, the extended Shilov boundary, and holomorphic
boundary components Gamma_c = c + (V_0(c) intersect D) with membership tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotTripotent
from .factors import Element, Factor, element_norm, element_to_pairs
from .linops import RealLinOp
from .peirce import _peirce_matrices
from .spectral import require_tripotent, spectral_decomposition

RANK_TOL = 1e-8
UNIT_THRESHOLD = 1.0 - 1e-6
COMPONENT_TOL = 1e-6


@dataclass(frozen=True)
class Tripotent:
    element: Element
    minimal: bool
    maximal: bool
    structural: bool
    unitary: bool
    peirce_dims: tuple[int, int, int]  # (dim V2, dim V1, dim V0)

    @property
    def flags(self) -> dict:
        return {
            "minimal": self.minimal,
            "maximal": self.maximal,
            "structural": self.structural,
            "unitary": self.unitary,
        }


def _complex_rank(m: np.ndarray, tol: float) -> int:
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol))


def classify_tripotent(e, tol: float = 1e-8, rank_tol: float = RANK_TOL) -> Tripotent:
    """Validate the tripotent property and fill flags and Peirce dimensions."""
    if isinstance(e, Tripotent):
        return e
    require_tripotent(e, tol)
    f = e.factor
    p0, p1, p2 = _peirce_matrices(f, e.coords)
    d0 = _complex_rank(p0, rank_tol)
    d1 = _complex_rank(p1, rank_tol)
    d2 = _complex_rank(p2, rank_tol)
    if d0 + d1 + d2 != f.dim:
        raise NotTripotent(
            f"Peirce ranks ({d2},{d1},{d0}) do not sum to dim {f.dim}; "
            "element is too far from a tripotent"
        )
    maximal = d0 == 0
    structural = d1 == 0
    return Tripotent(
        element=e,
        minimal=d2 == 1,
        maximal=maximal,
        structural=structural,
        unitary=maximal and structural,
        peirce_dims=(d2, d1, d0),
    )


def in_extended_shilov(e) -> bool:
    """Membership in Sigma*(D) = Sigma(D) union T_1(D): maximal or structural."""
    t = e if isinstance(e, Tripotent) else classify_tripotent(e)
    return t.maximal or t.structural


@dataclass(frozen=True)
class BoundaryComponent:
    tripotent: Tripotent
    factor: Factor

    @property
    def centre(self) -> Element:
        return self.tripotent.element

    def is_singleton(self) -> bool:
        return self.tripotent.maximal


def component_of_tripotent(c, tol: float = 1e-8) -> BoundaryComponent:
    t = classify_tripotent(c, tol)
    return BoundaryComponent(t, t.element.factor)


def component_of_boundary_point(
    xi: Element,
    unit_threshold: float = UNIT_THRESHOLD,
    tol: float = 1e-8,
) -> BoundaryComponent:
    """The holomorphic component of a boundary point: Gamma of the tripotent
    part of its spectral decomposition."""
    nrm = element_norm(xi)
    if nrm < unit_threshold:
        raise DomainError(f"point with norm {nrm:.6g} lies strictly inside the ball")
    sd = spectral_decomposition(xi)
    c = sd.tripotent_part(unit_threshold)
    if element_norm(c) == 0.0:
        raise DomainError("no unit spectral value found in the boundary point")
    return component_of_tripotent(c, tol)


def closure_contains(comp: BoundaryComponent, x: Element, tol: float) -> bool:
    """Whether x lies in the closure c + (V_0(c) intersect closed ball)."""
    c = comp.tripotent.element
    f = c.factor
    p0, p1, p2 = _peirce_matrices(f, c.coords)
    x2 = Element(f, p2 @ x.coords)
    x1 = Element(f, p1 @ x.coords)
    x0 = Element(f, p0 @ x.coords)
    return (
        element_norm(x2 - c) <= tol
        and element_norm(x1) <= tol
        and element_norm(x0) <= 1.0 + tol
    )


def components_equal(a: BoundaryComponent, b: BoundaryComponent, tol: float = COMPONENT_TOL) -> bool:
    """Components coincide iff their defining tripotents coincide (to tolerance)."""
    if a.factor != b.factor:
        return False
    return element_norm(a.tripotent.element - b.tripotent.element) <= tol


def component_to_dict(comp: BoundaryComponent) -> dict:
    t = comp.tripotent
    return {
        "tripotent": element_to_pairs(t.element),
        "peirce_dims": list(t.peirce_dims),
        "flags": t.flags,
    }
