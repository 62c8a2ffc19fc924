"""Seeded identity-verification suites for a factor.

Each suite draws `trials` random configurations, evaluates one family of
identities from the triple-system axioms, Peirce calculus, transvection
lemmas, or boundary structure, and reports the worst normalized residual
against its tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .boundary import classify_tripotent, closure_contains, component_of_tripotent
from .factors import (
    HILBERT,
    Element,
    Factor,
    element_norm,
    inner,
    random_element,
    triple_product,
    zero_element,
)
from .linops import (
    RealLinOp,
    bergman,
    box,
    op_norm,
    op_norm_info,
    operator_eigenvalues,
    quadratic,
)
from .mobius import kobayashi, transvection_apply
from .peirce import (
    bergman_power,
    bergman_via_peirce,
    joint_peirce_family,
    peirce_projection,
)
from .spectral import orthogonality_defect, spectral_decomposition

DEFAULT_TOLERANCES = {
    "identity_residual": 1e-10,
    "tripotent_check": 1e-8,
    "box_norm": 1e-8,
    "spectrum": 1e-10,
    "hermitian": 1e-6,
    "peirce": 1e-10,
    "bergman_consistency": 1e-10,
    "transvection_inverse": 1e-9,
    "transvection_factorization": 1e-9,
    "kobayashi_invariance": 1e-8,
    "hilbert_identity": 1e-10,
    "bid_identity": 1e-5,
    "dichotomy": 1e-8,
    "boundary": 1e-6,
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_residual: float
    tolerance: float
    passed: bool
    trials: int


def _result(name, residual, tol, trials) -> SuiteResult:
    return SuiteResult(name, float(residual), float(tol), bool(residual <= tol), trials)


def _scale(*els) -> float:
    s = 1.0
    for e in els:
        s *= 1.0 + element_norm(e)
    return s


def _orthogonal_pair(f: Factor, rng) -> tuple[Element, Element] | None:
    sd = spectral_decomposition(random_element(f, 0.9, rng))
    if len(sd.frame) < 2:
        return None
    return sd.frame[0], sd.frame[1]


def run_verification(
    factor: Factor, trials: int = 200, seed: int = 0, tolerances: dict | None = None
) -> list[SuiteResult]:
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    rng = np.random.default_rng(seed)
    results: list[SuiteResult] = []
    f = factor

    # triple identity and (jp1)
    worst_ti, worst_jp1 = 0.0, 0.0
    for _ in range(trials):
        a, b, x, y, z = (random_element(f, 0.9, rng) for _ in range(5))
        lhs = triple_product(a, b, triple_product(x, y, z))
        rhs = (
            triple_product(triple_product(a, b, x), y, z)
            - triple_product(x, triple_product(b, a, y), z)
            + triple_product(x, y, triple_product(a, b, z))
        )
        worst_ti = max(worst_ti, element_norm(lhs - rhs) / _scale(a, b, x, y, z))
        qxy = triple_product(x, y, x)
        lhs2 = triple_product(qxy, z, qxy)
        rhs2 = triple_product(x, triple_product(y, triple_product(x, z, x), y), x)
        worst_jp1 = max(worst_jp1, element_norm(lhs2 - rhs2) / _scale(x, y, z))
    results.append(_result("triple-identity", worst_ti, tol["identity_residual"], trials))
    results.append(_result("identity-jp1", worst_jp1, tol["identity_residual"], trials))

    # box operator axioms
    worst_norm2, worst_norm3, worst_spec, worst_herm = 0.0, 0.0, 0.0, 0.0
    for _ in range(trials):
        a = random_element(f, 0.9, rng)
        n = element_norm(a)
        bx = box(a, a)
        worst_norm2 = max(worst_norm2, abs(op_norm(bx) - n * n))
        worst_norm3 = max(worst_norm3, abs(element_norm(bx(a)) - n**3))
        eigs = operator_eigenvalues(bx)
        worst_spec = max(worst_spec, float(np.max(np.abs(eigs.imag), initial=0.0)))
        worst_spec = max(worst_spec, float(np.max(-eigs.real, initial=0.0)))
    results.append(_result("box-norm-squared", worst_norm2, tol["box_norm"], trials))
    results.append(_result("box-cube-norm", worst_norm3, tol["box_norm"], trials))
    results.append(_result("box-spectrum", worst_spec, tol["spectrum"], trials))
    herm_trials = min(trials, 25)
    for _ in range(herm_trials):
        a = random_element(f, 0.9, rng)
        m = box(a, a).complex_matrix()
        for t in (1.0, -1.0, 5.0, -5.0):
            expm = scipy.linalg.expm(1j * t * m)
            worst_herm = max(
                worst_herm, abs(op_norm(RealLinOp.from_complex(f, expm)) - 1.0)
            )
    results.append(_result("hermitian-exp", worst_herm, tol["hermitian"], herm_trials))

    # orthogonality (osum)
    worst_osum = 0.0
    for _ in range(trials):
        pair = _orthogonal_pair(f, rng)
        if pair is None:
            continue
        e1, e2 = pair
        al = rng.uniform(0.2, 0.9) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        be = rng.uniform(0.2, 0.9) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        a, b = al * e1, be * e2
        worst_osum = max(worst_osum, orthogonality_defect(b, a))
        worst_osum = max(
            worst_osum,
            abs(element_norm(a + b) - max(element_norm(a), element_norm(b))),
        )
    results.append(_result("orthogonality-osum", worst_osum, tol["tripotent_check"], trials))

    # Peirce projections and joint family
    worst_p, worst_joint = 0.0, 0.0
    peirce_trials = min(trials, 60)
    for _ in range(peirce_trials):
        sd = spectral_decomposition(random_element(f, 0.9, rng))
        if not sd.frame:
            continue
        e = sd.frame[0]
        ps = [peirce_projection(e, k) for k in (0, 1, 2)]
        ident = np.eye(2 * f.dim)
        total = ps[0].matrix + ps[1].matrix + ps[2].matrix
        worst_p = max(worst_p, float(np.linalg.norm(total - ident, 2)))
        for i in range(3):
            worst_p = max(
                worst_p, float(np.linalg.norm(ps[i].matrix @ ps[i].matrix - ps[i].matrix, 2))
            )
            for j in range(i + 1, 3):
                worst_p = max(worst_p, float(np.linalg.norm(ps[i].matrix @ ps[j].matrix, 2)))
        # range of P_k is the k/2 eigenspace of e [] e
        d = box(e, e).complex_matrix()
        for k in (0, 1, 2):
            pk = ps[k].complex_matrix()
            worst_p = max(worst_p, float(np.linalg.norm(d @ pk - 0.5 * k * pk, 2)))
        fam = joint_peirce_family(sd.frame)
        n = len(sd.frame)
        tot = sum(fam.values())
        worst_joint = max(worst_joint, float(np.linalg.norm(tot - np.eye(f.dim), 2)))
        for k in range(1, n + 1):
            ek = sd.frame[k - 1].coords
            for i in range(n + 1):
                for j in range(i, n + 1):
                    expect = ek if (i == j == k) else 0.0
                    worst_joint = max(
                        worst_joint, float(np.linalg.norm(fam[(i, j)] @ ek - expect))
                    )
        # truncation consistency: P_ij over a subfamily agrees per the index rules
        if n >= 2:
            sub = joint_peirce_family(sd.frame[: n - 1])
            worst_joint = max(
                worst_joint,
                float(np.linalg.norm(sub[(1, 1)] - fam[(1, 1)], 2)),
            )
            agg = sum(fam[(min(i, 1), max(i, 1))] for i in [0, n])
            worst_joint = max(worst_joint, float(np.linalg.norm(sub[(0, 1)] - agg, 2)))
            agg00 = sum(
                fam[(i, j)]
                for i in [0, n]
                for j in [0, n]
                if i <= j
            )
            worst_joint = max(worst_joint, float(np.linalg.norm(sub[(0, 0)] - agg00, 2)))
    results.append(_result("peirce-projections", worst_p, tol["peirce"], peirce_trials))
    results.append(_result("joint-peirce", worst_joint, tol["peirce"], peirce_trials))

    # Bergman consistency
    worst_bvp, worst_sqrt = 0.0, 0.0
    bergman_trials = min(trials, 60)
    for _ in range(bergman_trials):
        sd = spectral_decomposition(random_element(f, 0.9, rng))
        if not sd.frame:
            continue
        lams = [
            v * np.exp(1j * rng.uniform(0, 2 * np.pi)) for v in sd.values
        ]
        x = zero_element(f)
        for lam, e in zip(lams, sd.frame):
            x = x + lam * e
        bvp = bergman_via_peirce(sd.frame, lams)
        worst_bvp = max(
            worst_bvp, float(np.linalg.norm(bvp.matrix - bergman(x, x).matrix, 2))
        )
        y = random_element(f, 0.9, rng)
        half = bergman_power(y, 0.5)
        worst_sqrt = max(
            worst_sqrt,
            float(np.linalg.norm((half @ half).matrix - bergman(y, y).matrix, 2)),
        )
    results.append(
        _result("bergman-via-peirce", worst_bvp, tol["bergman_consistency"], bergman_trials)
    )
    results.append(
        _result("bergman-sqrt", worst_sqrt, tol["bergman_consistency"], bergman_trials)
    )

    # transvections
    worst_inv, worst_fact, worst_kappa = 0.0, 0.0, 0.0
    trans_trials = min(trials, 60)
    for _ in range(trans_trials):
        a = random_element(f, 0.6, rng)
        x = random_element(f, 0.7, rng)
        y = random_element(f, 0.7, rng)
        gx = transvection_apply(a, x)
        worst_inv = max(worst_inv, element_norm(transvection_apply(-1 * a, gx) - x))
        worst_inv = max(
            worst_inv, element_norm(transvection_apply(a, zero_element(f)) - a)
        )
        worst_kappa = max(
            worst_kappa,
            abs(kobayashi(gx, transvection_apply(a, y)) - kobayashi(x, y)),
        )
        pair = _orthogonal_pair(f, rng)
        if pair is not None:
            e1, e2 = pair
            aa = rng.uniform(0.2, 0.8) * e1
            bb = rng.uniform(0.2, 0.8) * e2
            lhs = transvection_apply(aa + bb, x)
            rhs = transvection_apply(aa, transvection_apply(bb, x))
            worst_fact = max(worst_fact, element_norm(lhs - rhs))
            c = random_element(f, 0.35, rng)
            if element_norm(c + bb) < 1.0:
                lhs2 = transvection_apply(aa, c + bb)
                rhs2 = transvection_apply(aa, c) + bb
                worst_fact = max(worst_fact, element_norm(lhs2 - rhs2))
    results.append(
        _result("transvection-inverse", worst_inv, tol["transvection_inverse"], trans_trials)
    )
    results.append(
        _result(
            "transvection-factorization",
            worst_fact,
            tol["transvection_factorization"],
            trans_trials,
        )
    )
    results.append(
        _result("kobayashi-invariance", worst_kappa, tol["kobayashi_invariance"], trans_trials)
    )

    # (bid) and (hh)
    worst_bid = 0.0
    bid_trials = min(trials, 40)
    for _ in range(bid_trials):
        y = random_element(f, 0.7, rng)
        z = random_element(f, 0.7, rng)
        lhs = 1.0 - element_norm(transvection_apply(-1 * y, z)) ** 2
        t = (
            bergman_power(z, -0.5)
            @ bergman(z, y)
            @ bergman_power(y, -0.5)
        )
        info = op_norm_info(t)
        if info.exact:
            worst_bid = max(worst_bid, abs(lhs - 1.0 / info.value))
        else:
            worst_bid = max(worst_bid, info.lower - 1.0 / lhs)
    results.append(_result("bid-identity", worst_bid, tol["bid_identity"], bid_trials))

    if f.kind == HILBERT:
        worst_hh = 0.0
        for _ in range(trials):
            a = random_element(f, 0.8, rng)
            b = random_element(f, 0.8, rng)
            lhs = 1.0 - element_norm(transvection_apply(-1 * b, a)) ** 2
            rhs = (
                (1.0 - element_norm(a) ** 2)
                * (1.0 - element_norm(b) ** 2)
                / abs(1.0 - inner(a, b)) ** 2
            )
            worst_hh = max(worst_hh, abs(lhs - rhs))
        results.append(_result("hilbert-hh", worst_hh, tol["hilbert_identity"], trials))

    # boundary escape: ||g_{-y_m}(z)|| -> 1 monotone trend
    z = random_element(f, 0.5, rng)
    xi = random_element(f, 0.9, rng)
    xi = (1.0 / element_norm(xi)) * xi
    vals = []
    for m in range(6):
        ym = (1.0 - 2.0 ** (-(m + 2))) * xi
        vals.append(element_norm(transvection_apply(-1 * ym, z)))
    escape_ok = all(v2 > v1 - 1e-12 for v1, v2 in zip(vals, vals[1:])) and vals[-1] > 0.99
    results.append(_result("boundary-escape", 0.0 if escape_ok else 1.0, 0.5, 6))

    # abelian dichotomy for minimal tripotents
    if f.is_polydisc:
        worst_dich = 0.0
        for _ in range(trials):
            sd1 = spectral_decomposition(random_element(f, 0.9, rng))
            sd2 = spectral_decomposition(random_element(f, 0.9, rng))
            if not sd1.frame or not sd2.frame:
                continue
            c, e = sd1.frame[0], sd2.frame[0]
            lam = None
            for ci, ei in zip(c.coords, e.coords):
                if abs(ei) > 1e-9:
                    lam = ci / ei
                    break
            phase_eq = lam is not None and abs(abs(lam) - 1.0) < 1e-8 and element_norm(c - lam * e) < 1e-8
            orth = orthogonality_defect(c, e) < 1e-8
            if not (phase_eq or orth):
                worst_dich = max(worst_dich, 1.0)
        results.append(_result("minimal-dichotomy", worst_dich, tol["dichotomy"], trials))

    # spectral invariants
    worst_sd = 0.0
    for _ in range(trials):
        a = random_element(f, 0.95, rng)
        sd = spectral_decomposition(a)
        worst_sd = max(
            worst_sd,
            element_norm(sd.reconstruct() - a) / (1.0 + element_norm(a)),
        )
        if sd.values:
            worst_sd = max(worst_sd, abs(sd.values[0] - element_norm(a)))
            for e in sd.frame:
                worst_sd = max(worst_sd, element_norm(triple_product(e, e, e) - e))
            for i in range(len(sd.frame)):
                for j in range(i + 1, len(sd.frame)):
                    worst_sd = max(worst_sd, orthogonality_defect(sd.frame[i], sd.frame[j]))
    results.append(_result("spectral-decomposition", worst_sd, tol["tripotent_check"], trials))

    # boundary components: partition samples, line test
    worst_bc = 0.0
    bc_trials = min(trials, 30)
    for _ in range(bc_trials):
        sd = spectral_decomposition(random_element(f, 0.9, rng))
        if not sd.frame:
            continue
        c = sd.frame[0]
        comp = component_of_tripotent(c)
        # the holomorphic line h(lam) = c + lam*v, v in V_0(c), stays in one closure
        p0 = peirce_projection(c, 0)
        v = p0(random_element(f, 0.9, rng))
        for lam in np.linspace(-0.9, 0.9, 5):
            pt = c + complex(lam) * v
            if not closure_contains(comp, pt, tol["boundary"]):
                worst_bc = max(worst_bc, 1.0)
        t = classify_tripotent(c)
        if f.kind == HILBERT and not t.maximal:
            worst_bc = max(worst_bc, 1.0)  # rank-1: every component is a singleton
    results.append(_result("boundary-components", worst_bc, tol["boundary"], bc_trials))

    return results
