"""Peirce projections, joint Peirce families, and Bergman operator powers.

The joint projections are built by Lagrange interpolation of the spectral
projections of D_k = 2 e_k [] e_k at eigenvalues {0,1,2}, so no generic
eigensolver is involved; Bergman powers B(x,x)^{1/2} and B(x,x)^{-1/2} are
evaluated through the spectral decomposition of x.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NotTripotent, SingularOperator
from .factors import Element, Factor, element_norm
from .linops import RealLinOp, bergman_matrix, box_matrix, quadratic_matrix
from .spectral import orthogonality_defect, require_tripotent, spectral_decomposition

ORTHO_TOL = 1e-8


def _as_element(e) -> Element:
    return e.element if hasattr(e, "element") else e


def peirce_projection(e, k: int, tol: float = 1e-8) -> RealLinOp:
    """Peirce projection P_k(e) for k in {0,1,2}.

    P_2 = Q_e^2, P_1 = 2(e [] e - Q_e^2), P_0 = B(e,e).
    """
    e = _as_element(e)
    require_tripotent(e, tol)
    return RealLinOp.from_complex(e.factor, _peirce_matrices(e.factor, e.coords)[k])


def _peirce_matrices(f: Factor, e: np.ndarray):
    q = quadratic_matrix(f, e)
    p2 = q @ q.conj()
    p1 = 2.0 * (box_matrix(f, e, e) - p2)
    p0 = bergman_matrix(f, e, e)
    return p0, p1, p2


def check_frame(frame: Sequence[Element], tol: float = ORTHO_TOL) -> list[Element]:
    frame = [_as_element(e) for e in frame]
    for e in frame:
        require_tripotent(e, tol)
    for i in range(len(frame)):
        for j in range(i + 1, len(frame)):
            d = orthogonality_defect(frame[i], frame[j])
            if d > tol:
                raise NotTripotent(
                    f"frame members {i} and {j} are not orthogonal (defect {d:.3g})"
                )
    return frame


def joint_peirce_family(
    frame: Sequence[Element], tol: float = ORTHO_TOL
) -> dict[tuple[int, int], np.ndarray]:
    """Complex matrices of all joint Peirce projections P_ij, 0 <= i <= j <= n.

    P_ij is the product over k of the spectral projection of D_k = 2 e_k [] e_k
    at eigenvalue delta_ik + delta_jk, via Lagrange interpolation.
    """
    frame = check_frame(frame, tol)
    f = frame[0].factor
    n = len(frame)
    eye = np.eye(f.dim)
    spectral_projs = []
    for e in frame:
        d = 2.0 * box_matrix(f, e.coords, e.coords)
        s0 = 0.5 * (d - eye) @ (d - 2.0 * eye)
        s1 = d @ (2.0 * eye - d)
        s2 = 0.5 * d @ (d - eye)
        spectral_projs.append((s0, s1, s2))
    family = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            prod = eye
            for k in range(1, n + 1):
                m = int(i == k) + int(j == k)
                prod = prod @ spectral_projs[k - 1][m]
            family[(i, j)] = prod
    return family


def joint_peirce_projection(
    frame: Sequence[Element], i: int, j: int, tol: float = ORTHO_TOL
) -> RealLinOp:
    frame = [_as_element(e) for e in frame]
    n = len(frame)
    i, j = min(i, j), max(i, j)
    if not (0 <= i <= j <= n):
        raise NotTripotent(f"joint Peirce indices ({i},{j}) out of range for frame of {n}")
    fam = joint_peirce_family(frame, tol)
    return RealLinOp.from_complex(frame[0].factor, fam[(i, j)])


def _weighted_family_matrix(
    family: dict[tuple[int, int], np.ndarray],
    weights: dict[tuple[int, int], float],
    dim: int,
) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=complex)
    for key, w in weights.items():
        out += w * family[key]
    return out


def bergman_via_peirce(
    frame: Sequence[Element], lambdas: Sequence[complex], tol: float = ORTHO_TOL
) -> RealLinOp:
    """B(x,x) for x = sum lambda_i e_i, assembled from joint Peirce projections."""
    frame = [_as_element(e) for e in frame]
    lambdas = [complex(l) for l in lambdas]
    if len(lambdas) != len(frame):
        raise NotTripotent("one coefficient per frame member required")
    if any(abs(l) >= 1.0 for l in lambdas):
        raise SingularOperator("coefficients must lie in the open unit disc")
    f = frame[0].factor
    fam = joint_peirce_family(frame, tol)
    mods = [0.0] + [abs(l) ** 2 for l in lambdas]
    weights = {
        (i, j): (1.0 - mods[i]) * (1.0 - mods[j])
        for i in range(len(mods))
        for j in range(i, len(mods))
    }
    return RealLinOp.from_complex(f, _weighted_family_matrix(fam, weights, f.dim))


def bergman_power(x: Element, exponent: float, tol: float = ORTHO_TOL) -> RealLinOp:
    """B(x,x)^exponent for exponent +1/2 or -1/2, via spectral decomposition of x."""
    if exponent not in (0.5, -0.5):
        raise SingularOperator(f"unsupported Bergman exponent {exponent}")
    if exponent < 0 and element_norm(x) >= 1.0 - 1e-12:
        raise SingularOperator("B(x,x)^(-1/2) needs ||x|| < 1")
    sd = spectral_decomposition(x)
    f = x.factor
    fam = joint_peirce_family(sd.frame, tol) if sd.frame else {(0, 0): np.eye(f.dim)}
    mods = [0.0] + [v * v for v in sd.values]
    weights = {
        (i, j): ((1.0 - mods[i]) * (1.0 - mods[j])) ** exponent
        for i in range(len(mods))
        for j in range(i, len(mods))
    }
    return RealLinOp.from_complex(f, _weighted_family_matrix(fam, weights, f.dim))
