"""Transvections g_a of the open unit ball and the Kobayashi distance.

g_a(x) = a + B(a,a)^{1/2} (I + x [] a)^{-1} x, with the inverse taken by a
dense solve (valid since ||x [] a|| <= ||x|| ||a|| < 1).  On polydiscs the map
acts coordinatewise as the disc Moebius maps psi_b(z) = (b+z)/(1+conj(b)z).
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .factors import HILBERT, Element, Factor, _check_same_factor, check_in_ball, element_norm
from .linops import box_matrix
from .peirce import bergman_power


def mobius_1d(b: complex, z: complex) -> complex:
    return (b + z) / (1.0 + np.conj(b) * z)


def _is_coordinatewise(f: Factor) -> bool:
    return (f.kind == HILBERT and f.n == 1) or f.is_polydisc


class Transvection:
    """g_a with the Bergman square root precomputed; reusable across points."""

    def __init__(self, a: Element):
        check_in_ball(a, "transvection parameter")
        self.a = a
        self.factor = a.factor
        self._coordinatewise = _is_coordinatewise(a.factor)
        if not self._coordinatewise:
            self._bsqrt = bergman_power(a, 0.5).complex_matrix()
            self._eye = np.eye(a.factor.dim)

    def apply(self, x: Element) -> Element:
        check_in_ball(x, "transvection argument")
        a = self.a.coords
        if self._coordinatewise:
            return Element(self.factor, (a + x.coords) / (1.0 + a.conj() * x.coords))
        y = np.linalg.solve(self._eye + box_matrix(self.factor, x.coords, a), x.coords)
        return Element(self.factor, a + self._bsqrt @ y)

    __call__ = apply


def transvection_apply(a: Element, x: Element, *, method: str = "auto") -> Element:
    """Apply g_a to x; method 'general' forces the Bergman/solve route even
    where the coordinatewise closed form applies."""
    _check_same_factor(a, x)
    check_in_ball(a, "transvection parameter")
    check_in_ball(x, "transvection argument")
    f = a.factor
    if method == "auto":
        method = "coordinatewise" if _is_coordinatewise(f) else "general"
    if method == "coordinatewise":
        if not _is_coordinatewise(f):
            raise DomainError("coordinatewise transvection needs a polydisc-like factor")
        return Element(f, (a.coords + x.coords) / (1.0 + a.coords.conj() * x.coords))
    bsqrt = bergman_power(a, 0.5).complex_matrix()
    y = np.linalg.solve(np.eye(f.dim) + box_matrix(f, x.coords, a.coords), x.coords)
    return Element(f, a.coords + bsqrt @ y)


def kobayashi(z: Element, w: Element) -> float:
    """Kobayashi distance kappa(z,w) = atanh ||g_{-z}(w)||.

    For arguments inside the ball the distance is finite, but the transvection
    image can round to norm 1 in double precision; the norm is clamped just
    below 1 so the result stays finite."""
    _check_same_factor(z, w)
    check_in_ball(z)
    check_in_ball(w)
    nm = min(element_norm(transvection_apply(-z, w)), 1.0 - 1e-16)
    return float(np.arctanh(nm))
