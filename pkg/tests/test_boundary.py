"""Tripotent taxonomy and holomorphic boundary components."""

import numpy as np
import pytest

from symdom import boundary as B
from symdom import factors as F
from symdom import peirce as P
from symdom import spectral as S
from symdom.errors import DomainError, NotTripotent


def test_classify_polydisc_minimal(p2):
    t = B.classify_tripotent(F.Element(p2, [1.0, 0.0]))
    assert t.minimal and t.structural and not t.maximal and not t.unitary
    assert t.peirce_dims == (1, 0, 1)


def test_classify_polydisc_unitary(p2):
    t = B.classify_tripotent(F.Element(p2, [1.0, 1.0]))
    assert t.maximal and t.structural and t.unitary and not t.minimal
    assert t.peirce_dims == (2, 0, 0)


def test_classify_spin_minimal(spin4):
    e = F.Element(spin4, np.array([1, 1j, 0, 0]) / np.sqrt(2))
    t = B.classify_tripotent(e)
    assert t.minimal and not t.maximal and not t.structural
    assert t.peirce_dims == (1, 2, 1)


def test_classify_rect_e11(r22):
    t = B.classify_tripotent(F.element_from_matrix(r22, [[1, 0], [0, 0]]))
    assert t.peirce_dims == (1, 2, 1)
    assert t.minimal and not t.maximal and not t.structural
    assert not B.in_extended_shilov(t)


def test_classify_rejects_non_tripotent(r22, rng):
    with pytest.raises(NotTripotent):
        B.classify_tripotent(F.random_element(r22, 0.5, rng))


def test_extended_shilov_polydisc(p3, rng):
    # abelian: every tripotent is structural, so always in Sigma*
    for seed in range(5):
        sd = S.spectral_decomposition(F.random_element(p3, 0.9, seed))
        if not sd.frame:
            continue
        trip = sd.tripotent_part(0.0)  # sum of the whole frame
        assert B.in_extended_shilov(B.classify_tripotent(trip))


def test_extended_shilov_hilbert(h3, rng):
    a = F.random_element(h3, 0.9, rng)
    e = (1.0 / F.element_norm(a)) * a
    t = B.classify_tripotent(e)
    assert t.maximal
    assert B.in_extended_shilov(t)


def test_component_of_boundary_point_bidisc(p2):
    xi = F.Element(p2, [1.0, 0.5])
    comp = B.component_of_boundary_point(xi)
    assert np.allclose(comp.centre.coords, [1.0, 0.0])
    assert not comp.is_singleton()
    # {1} x D closure membership
    assert B.closure_contains(comp, F.Element(p2, [1.0, 0.99]), 1e-8)
    assert not B.closure_contains(comp, F.Element(p2, [0.99, 0.99]), 1e-8)


def test_component_of_maximal_is_singleton(p2):
    comp = B.component_of_boundary_point(F.Element(p2, [1.0, 1.0]))
    assert comp.is_singleton()


def test_component_rect_tripotent_part(r22):
    xi = F.element_from_matrix(r22, [[1.0, 0], [0, 0.3]])
    comp = B.component_of_boundary_point(xi)
    e11 = F.element_from_matrix(r22, [[1, 0], [0, 0]])
    assert F.element_norm(comp.centre - e11) < 1e-10


def test_component_rejects_interior(p2):
    with pytest.raises(DomainError):
        B.component_of_boundary_point(F.Element(p2, [0.5, 0.1]))


def test_closure_contains_centre_itself(spin4):
    e = F.Element(spin4, np.array([1, 1j, 0, 0]) / np.sqrt(2))
    comp = B.component_of_tripotent(e)
    assert B.closure_contains(comp, e, 1e-10)
    # spin component is c + D c*: check c + 0.7 c*
    x = e + 0.7 * F.star(e)
    assert B.closure_contains(comp, x, 1e-10)
    y = e + 0.7 * F.Element(spin4, [0, 0, 1.0, 0])  # V_1 direction
    assert not B.closure_contains(comp, y, 1e-6)


def test_components_equal_or_disjoint(p2):
    c1 = B.component_of_tripotent(F.Element(p2, [1.0, 0.0]))
    c2 = B.component_of_tripotent(F.Element(p2, [np.exp(0.3j), 0.0]))
    c3 = B.component_of_tripotent(F.Element(p2, [1.0, 0.0]))
    assert B.components_equal(c1, c3)
    assert not B.components_equal(c1, c2)
    # sampled interiors are disjoint for distinct tripotents
    for t in np.linspace(-0.9, 0.9, 7):
        x = c2.centre + complex(t) * F.Element(p2, [0, 1.0])
        assert not B.closure_contains(c1, x, 1e-6)


def test_holomorphic_line_stays_in_component(r22, rng):
    # h(lambda) = c + lambda v with v in V_0(c) lands in one component closure
    e11 = F.element_from_matrix(r22, [[1, 0], [0, 0]])
    comp = B.component_of_tripotent(e11)
    p0 = P.peirce_projection(e11, 0)
    v = p0(F.random_element(r22, 0.9, rng))
    for lam in np.linspace(-0.95, 0.95, 9):
        assert B.closure_contains(comp, e11 + complex(lam) * v, 1e-8)


def test_rank1_components_are_singletons(h3, rng):
    for seed in range(5):
        a = F.random_element(h3, 0.9, seed)
        if F.element_norm(a) == 0:
            continue
        e = (1.0 / F.element_norm(a)) * a
        comp = B.component_of_tripotent(e)
        assert comp.is_singleton()


def test_component_serialization(p2):
    comp = B.component_of_tripotent(F.Element(p2, [1.0, 0.0]))
    d = B.component_to_dict(comp)
    assert d["peirce_dims"] == [1, 0, 1]
    assert d["flags"]["minimal"] is True
    assert d["tripotent"] == [[1.0, 0.0], [0.0, 0.0]]
