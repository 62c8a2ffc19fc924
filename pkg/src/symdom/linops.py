"""Real-linear operators on the realified factor space.

Every operator the library builds is either complex-linear or
conjugate-linear; both live as real 2n x 2n matrices on the realification
[Re z; Im z] with a linearity flag, so that Q_a (conjugate-linear) composes
soundly with complex-linear maps like box and Bergman operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import FactorMismatch, SingularOperator
from .factors import (
    HILBERT,
    RECT,
    SPIN,
    SUM,
    Element,
    Factor,
    _check_same_factor,
    _norm_raw,
    _triple_raw,
    basis_element,
    element_norm,
    spin_invariants,
)


def realify_vector(z: np.ndarray) -> np.ndarray:
    return np.concatenate([z.real, z.imag])


def complexify_vector(v: np.ndarray) -> np.ndarray:
    n = v.shape[0] // 2
    return v[:n] + 1j * v[n:]


def realify_complex_matrix(m: np.ndarray) -> np.ndarray:
    """Real representation of x -> M x."""
    a, b = m.real, m.imag
    return np.block([[a, -b], [b, a]])


def realify_antilinear_matrix(m: np.ndarray) -> np.ndarray:
    """Real representation of x -> M conj(x)."""
    a, b = m.real, m.imag
    return np.block([[a, b], [b, -a]])


@dataclass(frozen=True, eq=False)
class RealLinOp:
    """A real-linear operator on a factor, flagged complex- or conjugate-linear."""

    factor: Factor
    matrix: np.ndarray = field(repr=False)
    conjugate_linear: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        d = 2 * self.factor.dim
        if m.shape != (d, d):
            raise FactorMismatch(f"operator matrix shape {m.shape} != ({d}, {d})")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def linearity(self) -> str:
        return "conjugate-linear" if self.conjugate_linear else "complex-linear"

    @classmethod
    def from_complex(cls, factor: Factor, m) -> "RealLinOp":
        return cls(factor, realify_complex_matrix(np.asarray(m, dtype=complex)))

    @classmethod
    def from_antilinear(cls, factor: Factor, m) -> "RealLinOp":
        return cls(
            factor, realify_antilinear_matrix(np.asarray(m, dtype=complex)), True
        )

    @classmethod
    def identity(cls, factor: Factor) -> "RealLinOp":
        return cls(factor, np.eye(2 * factor.dim))

    @classmethod
    def zero(cls, factor: Factor) -> "RealLinOp":
        return cls(factor, np.zeros((2 * factor.dim, 2 * factor.dim)))

    def apply(self, x: Element) -> Element:
        if x.factor != self.factor:
            raise FactorMismatch("operator and element factors differ")
        return Element(
            self.factor, complexify_vector(self.matrix @ realify_vector(x.coords))
        )

    __call__ = apply

    def apply_raw(self, coords: np.ndarray) -> np.ndarray:
        return complexify_vector(self.matrix @ realify_vector(coords))

    def compose(self, other: "RealLinOp") -> "RealLinOp":
        """self after other; conjugate-linear composed with conjugate-linear is complex-linear."""
        if other.factor != self.factor:
            raise FactorMismatch("cannot compose operators over different factors")
        return RealLinOp(
            self.factor,
            self.matrix @ other.matrix,
            self.conjugate_linear ^ other.conjugate_linear,
        )

    __matmul__ = compose

    def __add__(self, other: "RealLinOp") -> "RealLinOp":
        if other.factor != self.factor or other.conjugate_linear != self.conjugate_linear:
            raise FactorMismatch("can only add operators of matching factor and linearity")
        return RealLinOp(self.factor, self.matrix + other.matrix, self.conjugate_linear)

    def __sub__(self, other: "RealLinOp") -> "RealLinOp":
        if other.factor != self.factor or other.conjugate_linear != self.conjugate_linear:
            raise FactorMismatch("can only subtract operators of matching factor and linearity")
        return RealLinOp(self.factor, self.matrix - other.matrix, self.conjugate_linear)

    def scale(self, lam: complex) -> "RealLinOp":
        """x -> lam * T(x); keeps the linearity flag."""
        lam = complex(lam)
        mult = realify_complex_matrix(lam * np.eye(self.factor.dim))
        return RealLinOp(self.factor, mult @ self.matrix, self.conjugate_linear)

    def inverse(self) -> "RealLinOp":
        try:
            inv = np.linalg.inv(self.matrix)
        except np.linalg.LinAlgError as exc:
            raise SingularOperator(f"operator is not invertible: {exc}") from exc
        return RealLinOp(self.factor, inv, self.conjugate_linear)

    def complex_matrix(self) -> np.ndarray:
        """The n x n complex matrix of a complex-linear operator."""
        if self.conjugate_linear:
            raise FactorMismatch("operator is conjugate-linear; use antilinear_matrix")
        n = self.factor.dim
        return self.matrix[:n, :n] + 1j * self.matrix[n:, :n]

    def antilinear_matrix(self) -> np.ndarray:
        """The matrix M of a conjugate-linear operator x -> M conj(x)."""
        if not self.conjugate_linear:
            raise FactorMismatch("operator is complex-linear; use complex_matrix")
        n = self.factor.dim
        return self.matrix[:n, :n] + 1j * self.matrix[n:, :n]


def commutes_with_i(op: RealLinOp, tol: float = 1e-10) -> bool:
    """Whether the realified matrix commutes with multiplication by i."""
    n = op.factor.dim
    j = np.block([[np.zeros((n, n)), -np.eye(n)], [np.eye(n), np.zeros((n, n))]])
    scale = max(1.0, float(np.linalg.norm(op.matrix)))
    return float(np.linalg.norm(j @ op.matrix - op.matrix @ j)) <= tol * scale


# -- box, quadratic and Bergman operators ------------------------------------

def box_matrix(f: Factor, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex matrix of x -> {a,b,x}."""
    if f.kind == HILBERT:
        return 0.5 * (np.vdot(b, a) * np.eye(f.n) + np.outer(a, b.conj()))
    if f.kind == SPIN:
        cm = f.conj_matrix
        return 0.5 * (
            np.vdot(b, a) * np.eye(f.n)
            + np.outer(a, b.conj())
            - np.outer(cm @ b.conj(), cm.conj().T @ a)
        )
    if f.kind == RECT:
        r, c = f.rows, f.cols
        A = a.reshape(r, c)
        Bh = b.reshape(r, c).conj().T
        return 0.5 * (np.kron(A @ Bh, np.eye(c)) + np.kron(np.eye(r), (Bh @ A).T))
    if f.is_polydisc:
        return np.diag(a * b.conj())
    out = np.zeros((f.dim, f.dim), dtype=complex)
    offs = f.offsets
    for i, p in enumerate(f.parts):
        s = slice(offs[i], offs[i + 1])
        out[s, s] = box_matrix(p, a[s], b[s])
    return out


def quadratic_matrix(f: Factor, a: np.ndarray) -> np.ndarray:
    """Matrix M of the conjugate-linear map Q_a: x -> {a,x,a} = M conj(x)."""
    if f.kind == HILBERT:
        return np.outer(a, a)
    if f.is_polydisc:
        return np.diag(a * a)
    if f.kind == SUM:
        out = np.zeros((f.dim, f.dim), dtype=complex)
        offs = f.offsets
        for i, p in enumerate(f.parts):
            s = slice(offs[i], offs[i + 1])
            out[s, s] = quadratic_matrix(p, a[s])
        return out
    # rect / spin: columns are Q_a(e_k) since the basis is real
    cols = [
        _triple_raw(f, a, basis_element(f, k).coords, a) for k in range(f.dim)
    ]
    return np.stack(cols, axis=1)


def box(a: Element, b: Element) -> RealLinOp:
    """The box operator a [] b: x -> {a,b,x} (complex-linear)."""
    f = _check_same_factor(a, b)
    return RealLinOp.from_complex(f, box_matrix(f, a.coords, b.coords))


def quadratic(a: Element) -> RealLinOp:
    """The quadratic operator Q_a: x -> {a,x,a} (conjugate-linear)."""
    return RealLinOp.from_antilinear(a.factor, quadratic_matrix(a.factor, a.coords))


def bergman_matrix(f: Factor, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    qb = quadratic_matrix(f, b)
    qc = quadratic_matrix(f, c)
    return np.eye(f.dim) - 2.0 * box_matrix(f, b, c) + qb @ qc.conj()


def bergman(b: Element, c: Element) -> RealLinOp:
    """Bergman operator B(b,c): x -> x - 2{b,c,x} + {b,{c,x,c},b}."""
    f = _check_same_factor(b, c)
    return RealLinOp.from_complex(f, bergman_matrix(f, b.coords, c.coords))


# -- operator norm -----------------------------------------------------------

class OpNormInfo(NamedTuple):
    value: float
    exact: bool
    lower: float
    upper: float


def _norm_gradient(f: Factor, coords: np.ndarray) -> np.ndarray:
    """(Sub)gradient of element_norm at coords, over the realified coordinates."""
    if f.kind == HILBERT:
        n = float(np.linalg.norm(coords))
        if n == 0.0:
            return np.zeros(2 * f.n)
        return realify_vector(coords) / n
    if f.kind == RECT:
        m = coords.reshape(f.rows, f.cols)
        u, _s, vh = np.linalg.svd(m)
        g = np.outer(u[:, 0], vh[0, :].conj())
        return realify_vector(g.reshape(-1))
    if f.kind == SPIN:
        q, p, s = spin_invariants(f, coords)
        lam = np.sqrt(max((q + s) / 2.0, 0.0))
        if lam == 0.0:
            return np.zeros(2 * f.n)
        gq = 2.0 * realify_vector(coords)
        gp_c = 2.0 * (f.conj_matrix.conj() @ coords)  # dp = gp_c . dz, holomorphic
        tp = np.conj(p) * gp_c
        re_pbar_dp = np.concatenate([tp.real, -tp.imag])
        if s > 1e-14 * max(q, 1e-300):
            gs = (q * gq - re_pbar_dp) / s
        else:
            gs = np.zeros_like(gq)  # subgradient choice at the degenerate point
        return (gq + gs) / (4.0 * lam)
    offs = f.offsets
    norms = [
        _norm_raw(p, coords[offs[i] : offs[i + 1]]) for i, p in enumerate(f.parts)
    ]
    i = int(np.argmax(norms))
    sub = _norm_gradient(f.parts[i], coords[offs[i] : offs[i + 1]])
    d, pd = f.dim, f.parts[i].dim
    out = np.zeros(2 * d)
    out[offs[i] : offs[i] + pd] = sub[:pd]
    out[d + offs[i] : d + offs[i] + pd] = sub[pd:]
    return out


def _exact_op_norm(op: RealLinOp) -> float | None:
    f = op.factor
    if f.kind == HILBERT:
        return float(np.linalg.norm(op.matrix, 2))
    if f.is_polydisc:
        m = op.antilinear_matrix() if op.conjugate_linear else op.complex_matrix()
        return float(np.max(np.sum(np.abs(m), axis=1)))
    return None


def op_norm_info(
    op: RealLinOp, *, starts: int = 4, iters: int = 60, seed: int = 0
) -> OpNormInfo:
    """Operator norm induced by the JB*-norm.

    Exact on Hilbert factors (largest singular value) and polydiscs
    (max modulus row sum); elsewhere a projected-ascent estimate whose value
    is a certified lower bound, with a heuristic norm-equivalence upper bound.
    """
    exact = _exact_op_norm(op)
    if exact is not None:
        return OpNormInfo(exact, True, exact, exact)

    f = op.factor
    sigma_max = float(np.linalg.norm(op.matrix, 2))
    if sigma_max == 0.0:
        return OpNormInfo(0.0, True, 0.0, 0.0)
    upper = sigma_max * np.sqrt(f.rank)

    rng = np.random.default_rng(seed)
    _u, _s, vt = np.linalg.svd(op.matrix)
    seeds = [vt[0], vt[1] if vt.shape[0] > 1 else vt[0]]
    while len(seeds) < starts:
        seeds.append(rng.standard_normal(2 * f.dim))

    def value_at(xr: np.ndarray) -> float:
        return _norm_raw(f, complexify_vector(op.matrix @ xr))

    best = 0.0
    for x0 in seeds:
        nx = _norm_raw(f, complexify_vector(x0))
        if nx == 0.0:
            continue
        x = x0 / nx
        fx = value_at(x)
        best = max(best, fx)
        step = 0.5
        stall = 0
        for _ in range(iters):
            y = complexify_vector(op.matrix @ x)
            g = op.matrix.T @ _norm_gradient(f, y)
            cand = x + step * g
            nc = _norm_raw(f, complexify_vector(cand))
            if nc == 0.0:
                break
            cand = cand / nc
            fc = value_at(cand)
            if fc > fx * (1.0 + 1e-14):
                x, fx = cand, fc
                best = max(best, fx)
                step *= 1.3
                stall = 0
            else:
                step *= 0.5
                stall += 1
                if step < 1e-13 or stall >= 8:
                    break
    return OpNormInfo(best, False, best, max(upper, best))


def op_norm(op: RealLinOp, **kwargs) -> float:
    return op_norm_info(op, **kwargs).value


def operator_eigenvalues(op: RealLinOp) -> np.ndarray:
    """Eigenvalues of a complex-linear operator, as a complex matrix."""
    return np.linalg.eigvals(op.complex_matrix())
