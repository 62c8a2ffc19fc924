"""Finite-dimensional JB*-triple factors and their elements.

Supported kinds: rectangular complex matrices with the C*-triple product
{a,b,c} = (ab*c + cb*a)/2, spin factors carrying a conjugation, Hilbert
spaces with {a,b,c} = (<a,b>c + <c,b>a)/2, and finite l-infinity direct
sums (polydiscs being sums of one-dimensional Hilbert factors).

Elements are immutable coordinate vectors over a factor; matrices are
stored row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConfigError, DomainError, FactorMismatch

RECT = "rect"
SPIN = "spin"
HILBERT = "hilbert"
SUM = "sum"

_SPIN_AXIOM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Factor:
    """A finite-dimensional JB*-triple factor (or l-infinity sum of them)."""

    kind: str
    rows: int = 0
    cols: int = 0
    n: int = 0
    parts: tuple["Factor", ...] = ()
    conj_matrix: np.ndarray | None = field(default=None, repr=False)

    @cached_property
    def dim(self) -> int:
        if self.kind == RECT:
            return self.rows * self.cols
        if self.kind in (SPIN, HILBERT):
            return self.n
        return sum(p.dim for p in self.parts)

    @cached_property
    def rank(self) -> int:
        if self.kind == RECT:
            return min(self.rows, self.cols)
        if self.kind == SPIN:
            return 2
        if self.kind == HILBERT:
            return 1
        return sum(p.rank for p in self.parts)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Start offsets of each part's coordinate block (direct sums only)."""
        offs = [0]
        for p in self.parts:
            offs.append(offs[-1] + p.dim)
        return tuple(offs)

    @cached_property
    def conj_is_identity(self) -> bool:
        return self.conj_matrix is not None and bool(
            np.array_equal(self.conj_matrix, np.eye(self.n))
        )

    @cached_property
    def _key(self):
        if self.kind == RECT:
            return (RECT, self.rows, self.cols)
        if self.kind == HILBERT:
            return (HILBERT, self.n)
        if self.kind == SPIN:
            return (SPIN, self.n, self.conj_matrix.tobytes())
        return (SUM,) + tuple(p._key for p in self.parts)

    def __eq__(self, other):
        return isinstance(other, Factor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def is_polydisc(self) -> bool:
        return self.kind == SUM and all(
            p.kind == HILBERT and p.n == 1 for p in self.parts
        )

    def __repr__(self):
        if self.kind == RECT:
            return f"Factor(rect {self.rows}x{self.cols})"
        if self.kind == SPIN:
            return f"Factor(spin {self.n})"
        if self.kind == HILBERT:
            return f"Factor(hilbert {self.n})"
        if self.is_polydisc:
            return f"Factor(polydisc {len(self.parts)})"
        return f"Factor(sum of {len(self.parts)})"


def rectangular(rows: int, cols: int) -> Factor:
    if rows < 1 or cols < 1:
        raise ConfigError(f"rectangular factor needs positive shape, got {rows}x{cols}")
    return Factor(RECT, rows=rows, cols=cols)


def hilbert(dim: int) -> Factor:
    if dim < 1:
        raise ConfigError(f"hilbert factor needs positive dimension, got {dim}")
    return Factor(HILBERT, n=dim)


def spin(dim: int, conj_matrix=None) -> Factor:
    """Spin factor of dimension >= 3.

    The conjugation x* = C conj(x) must be a conjugate-linear isometric
    involution, which forces C to be symmetric unitary; the default is the
    coordinatewise conjugation C = I.
    """
    if dim < 3:
        raise ConfigError(f"spin factor needs dimension >= 3, got {dim}")
    if conj_matrix is None:
        conj_matrix = np.eye(dim)
    conj_matrix = np.asarray(conj_matrix, dtype=complex)
    if conj_matrix.shape != (dim, dim):
        raise ConfigError("spin conjugation matrix has wrong shape")
    eye = np.eye(dim)
    if np.linalg.norm(conj_matrix @ conj_matrix.conj().T - eye) > _SPIN_AXIOM_TOL * dim:
        raise ConfigError("spin conjugation matrix is not unitary")
    if np.linalg.norm(conj_matrix @ conj_matrix.conj() - eye) > _SPIN_AXIOM_TOL * dim:
        raise ConfigError("spin conjugation is not an involution (C conj(C) != I)")
    conj_matrix.setflags(write=False)
    return Factor(SPIN, n=dim, conj_matrix=conj_matrix)


def direct_sum(parts) -> Factor:
    """l-infinity sum; nested sums are flattened at construction."""
    flat: list[Factor] = []
    for p in parts:
        if p.kind == SUM:
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        raise ConfigError("direct sum needs at least one part")
    return Factor(SUM, parts=tuple(flat))


def polydisc(d: int) -> Factor:
    if d < 1:
        raise ConfigError(f"polydisc needs d >= 1, got {d}")
    return direct_sum([hilbert(1) for _ in range(d)])


@dataclass(frozen=True, eq=False)
class Element:
    """A point of a factor's underlying vector space."""

    factor: Factor
    coords: np.ndarray

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=complex).reshape(-1)
        if coords.shape != (self.factor.dim,):
            raise FactorMismatch(
                f"coordinate length {coords.shape[0]} != factor dim {self.factor.dim}"
            )
        coords = coords.copy()
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def norm(self) -> float:
        return element_norm(self)

    def __add__(self, other):
        _check_same_factor(self, other)
        return Element(self.factor, self.coords + other.coords)

    def __sub__(self, other):
        _check_same_factor(self, other)
        return Element(self.factor, self.coords - other.coords)

    def __neg__(self):
        return Element(self.factor, -self.coords)

    def __mul__(self, scalar):
        return Element(self.factor, self.coords * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Element({self.factor!r}, {np.array2string(self.coords, precision=6)})"


def _check_same_factor(*elements):
    f = elements[0].factor
    for e in elements[1:]:
        if e.factor != f:
            raise FactorMismatch(f"elements of {e.factor!r} and {f!r} cannot mix")
    return f


def zero_element(factor: Factor) -> Element:
    return Element(factor, np.zeros(factor.dim, dtype=complex))


def basis_element(factor: Factor, k: int) -> Element:
    coords = np.zeros(factor.dim, dtype=complex)
    coords[k] = 1.0
    return Element(factor, coords)


def as_matrix(a: Element) -> np.ndarray:
    if a.factor.kind != RECT:
        raise FactorMismatch("as_matrix needs a rectangular factor")
    return a.coords.reshape(a.factor.rows, a.factor.cols)


def element_from_matrix(factor: Factor, m) -> Element:
    m = np.asarray(m, dtype=complex)
    if factor.kind != RECT or m.shape != (factor.rows, factor.cols):
        raise FactorMismatch("matrix shape does not match the rectangular factor")
    return Element(factor, m.reshape(-1))


def split_coords(factor: Factor, coords: np.ndarray) -> list[np.ndarray]:
    offs = factor.offsets
    return [coords[offs[i] : offs[i + 1]] for i in range(len(factor.parts))]


def part_element(a: Element, i: int) -> Element:
    offs = a.factor.offsets
    return Element(a.factor.parts[i], a.coords[offs[i] : offs[i + 1]])


def inner(a: Element, b: Element) -> complex:
    """Hilbert-space inner product <a,b>, linear in the first argument."""
    _check_same_factor(a, b)
    return complex(np.vdot(b.coords, a.coords))


def star(a: Element) -> Element:
    """Spin-factor conjugation a* = C conj(a)."""
    if a.factor.kind != SPIN:
        raise FactorMismatch("star is defined on spin factors only")
    return Element(a.factor, a.factor.conj_matrix @ a.coords.conj())


# -- triple product ----------------------------------------------------------

def _triple_raw(f: Factor, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    if f.kind == RECT:
        r, cdim = f.rows, f.cols
        A = a.reshape(r, cdim)
        Bh = b.reshape(r, cdim).conj().T
        C = c.reshape(r, cdim)
        return (0.5 * (A @ Bh @ C + C @ Bh @ A)).reshape(-1)
    if f.kind == HILBERT:
        return 0.5 * (np.vdot(b, a) * c + np.vdot(b, c) * a)
    if f.kind == SPIN:
        cm = f.conj_matrix
        a_star_c = a @ (cm.conj() @ c)  # <a, c*> = a^T conj(C) c
        b_star = cm @ b.conj()
        return 0.5 * (np.vdot(b, a) * c + np.vdot(b, c) * a - a_star_c * b_star)
    out = np.empty(f.dim, dtype=complex)
    offs = f.offsets
    for i, p in enumerate(f.parts):
        s = slice(offs[i], offs[i + 1])
        out[s] = _triple_raw(p, a[s], b[s], c[s])
    return out


def triple_product(a: Element, b: Element, c: Element) -> Element:
    """Jordan triple product {a,b,c}; conjugate-linear in the middle slot."""
    f = _check_same_factor(a, b, c)
    return Element(f, _triple_raw(f, a.coords, b.coords, c.coords))


# -- norms -------------------------------------------------------------------

def spin_invariants(f: Factor, coords: np.ndarray) -> tuple[float, complex, float]:
    """(q, p, s) with q = <a,a>, p = <a,a*>, s = sqrt(q^2 - |p|^2)."""
    q = float(np.real(np.vdot(coords, coords)))
    if f.conj_is_identity:
        p = complex(coords @ coords)
    else:
        p = complex(coords @ (f.conj_matrix.conj() @ coords))
    s = float(np.sqrt(max(q * q - abs(p) ** 2, 0.0)))
    return q, p, s


def spin_spectral_values(f: Factor, coords: np.ndarray) -> tuple[float, float]:
    """The two spin spectral values lam+ >= lam- >= 0."""
    q, _p, s = spin_invariants(f, coords)
    lam_plus = float(np.sqrt(max((q + s) / 2.0, 0.0)))
    lam_minus = float(np.sqrt(max((q - s) / 2.0, 0.0)))
    return lam_plus, lam_minus


def _norm_raw(f: Factor, coords: np.ndarray) -> float:
    if f.kind == RECT:
        m = coords.reshape(f.rows, f.cols)
        if m.shape[0] > m.shape[1]:
            m = m.conj().T
        if m.shape[0] == 1:
            return float(np.sqrt(np.real(np.vdot(m, m))))
        if m.shape[0] == 2:
            # closed-form top eigenvalue of the 2x2 Gram matrix; the
            # discriminant (s1^2 - s2^2)^2 cancels for clustered singular
            # values, where the LAPACK route keeps full relative accuracy
            g = m @ m.conj().T
            t = g[0, 0].real + g[1, 1].real
            det = (g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]).real
            disc = t * t - 4.0 * det
            if disc <= 1e-6 * t * t:
                return float(np.linalg.norm(m, 2))
            return float(np.sqrt(0.5 * (t + np.sqrt(disc))))
        return float(np.linalg.norm(m, 2))
    if f.kind == HILBERT:
        return float(np.linalg.norm(coords))
    if f.kind == SPIN:
        return spin_spectral_values(f, coords)[0]
    offs = f.offsets
    return max(
        _norm_raw(p, coords[offs[i] : offs[i + 1]]) for i, p in enumerate(f.parts)
    )


def element_norm(a: Element) -> float:
    """The JB*-norm (spectral norm) of an element."""
    return _norm_raw(a.factor, a.coords)


def check_in_ball(a: Element, what: str = "argument") -> None:
    if element_norm(a) >= 1.0:
        raise DomainError(f"{what} must lie in the open unit ball")


# -- random elements ---------------------------------------------------------

def random_element(factor: Factor, norm_cap: float, seed) -> Element:
    """Seed-deterministic random element with element_norm <= norm_cap."""
    if norm_cap < 0:
        raise DomainError("norm_cap must be >= 0")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    raw = rng.standard_normal(factor.dim) + 1j * rng.standard_normal(factor.dim)
    scale = norm_cap * rng.uniform()
    nrm = _norm_raw(factor, raw)
    if norm_cap == 0.0 or nrm == 0.0:
        return zero_element(factor)
    return Element(factor, raw * (scale / nrm))


# -- serialization -----------------------------------------------------------

def _matrix_to_pairs(m: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_pairs(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def factor_to_spec(f: Factor) -> dict:
    if f.kind == RECT:
        return {"type": "rect", "rows": f.rows, "cols": f.cols}
    if f.kind == HILBERT:
        return {"type": "hilbert", "dim": f.n}
    if f.kind == SPIN:
        spec = {"type": "spin", "dim": f.n}
        if not np.array_equal(f.conj_matrix, np.eye(f.n)):
            spec["conj"] = _matrix_to_pairs(f.conj_matrix)
        return spec
    if f.is_polydisc:
        return {"type": "polydisc", "d": len(f.parts)}
    return {"type": "sum", "parts": [factor_to_spec(p) for p in f.parts]}


_SPEC_KEYS = {
    "rect": {"type", "rows", "cols"},
    "spin": {"type", "dim", "conj"},
    "hilbert": {"type", "dim"},
    "polydisc": {"type", "d"},
    "sum": {"type", "parts"},
}


def factor_from_spec(spec) -> Factor:
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError(f"factor spec must be an object with a 'type' key, got {spec!r}")
    kind = spec["type"]
    if kind not in _SPEC_KEYS:
        raise ConfigError(f"unknown factor type {kind!r}")
    unknown = set(spec) - _SPEC_KEYS[kind]
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in factor spec of type {kind!r}")
    try:
        if kind == "rect":
            return rectangular(int(spec["rows"]), int(spec["cols"]))
        if kind == "hilbert":
            return hilbert(int(spec["dim"]))
        if kind == "spin":
            conj = _matrix_from_pairs(spec["conj"]) if "conj" in spec else None
            return spin(int(spec["dim"]), conj)
        if kind == "polydisc":
            return polydisc(int(spec["d"]))
        return direct_sum([factor_from_spec(p) for p in spec["parts"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed factor spec {spec!r}: {exc}") from exc


def element_to_pairs(a: Element):
    """Serialize as [re, im] pairs, row-major for matrices."""
    return [[float(z.real), float(z.imag)] for z in a.coords]


def element_from_pairs(factor: Factor, pairs) -> Element:
    try:
        coords = np.array([complex(re, im) for re, im in pairs])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed element coordinates: {exc}") from exc
    if coords.shape != (factor.dim,):
        raise ConfigError(
            f"element has {coords.shape[0]} coordinates, factor needs {factor.dim}"
        )
    return Element(factor, coords)
