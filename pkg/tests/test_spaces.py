import math
from fractions import Fraction

import numpy as np
import pytest

from delbound import (
    MeasureSpec,
    ValidationError,
    Variant,
    custom_space,
    hamming_space,
    max_degree,
    moment_functional,
    node_weights,
    quadrature,
    sphere_space,
    variant_mass,
)


def test_hamming_nodes_and_weights_exact():
    spec = hamming_space(4)
    assert spec.nodes == (1.0, 0.5, 0.0, -0.5, -1.0)
    assert spec.weights == (1 / 16, 4 / 16, 6 / 16, 4 / 16, 1 / 16)
    assert spec.label() == "hamming:4"
    assert spec.discrete


def test_hamming_weights_sum_to_one_exactly():
    for n in (1, 2, 3, 7, 12, 33, 64):
        spec = hamming_space(n)
        # binomial weights over 2^n are exactly representable and sum to 1
        assert math.fsum(spec.weights) == 1.0
        assert spec.nodes[0] == 1.0 and spec.nodes[-1] == -1.0


def test_hamming_validation():
    with pytest.raises(ValidationError):
        hamming_space(0)
    with pytest.raises(ValidationError):
        hamming_space(-3)


def test_sphere_space_basics():
    spec = sphere_space(5)
    assert spec.label() == "sphere:5"
    assert not spec.discrete
    assert spec.nodes is None
    with pytest.raises(ValidationError):
        sphere_space(2)


def test_custom_space_roundtrip():
    spec = custom_space((0.5, 0.4), (0.0, -0.1))
    assert spec.kind == "custom"
    assert max_degree(spec, Variant.BASE) == 2
    with pytest.raises(ValidationError):
        custom_space((0.5, -0.4), (0.0, 0.0))
    with pytest.raises(ValidationError):
        custom_space((0.5,), (0.0, 0.0, 0.0))


def test_minus_weights_match_shifted_binomial():
    """(1-x_j) w_j on hamming:n is the binomial(n-1) mass at j-1, exactly."""
    for n in (2, 5, 9, 16):
        spec = hamming_space(n)
        x, w = node_weights(spec, Variant.MINUS)
        assert w[0] == 0.0  # the x=1 node is killed
        for j in range(1, n + 1):
            expect = math.comb(n - 1, j - 1) / 2 ** (n - 1)
            assert w[j] == pytest.approx(expect, abs=0, rel=1e-15)
        assert math.fsum(w) == pytest.approx(1.0, abs=1e-15)


def test_plusminus_mass():
    for n in (2, 6, 11):
        spec = hamming_space(n)
        x, w = node_weights(spec, Variant.PLUSMINUS)
        assert w[0] == 0.0 and w[-1] == 0.0
        assert math.fsum(w) == pytest.approx((n - 1) / n, rel=1e-15)
        assert variant_mass(spec, Variant.PLUSMINUS) == pytest.approx((n - 1) / n)
    assert variant_mass(hamming_space(7), Variant.MINUS) == pytest.approx(1.0)
    assert variant_mass(hamming_space(7), Variant.BASE) == 1.0


def test_max_degree_per_variant():
    spec = hamming_space(10)
    assert max_degree(spec, Variant.BASE) == 10
    assert max_degree(spec, Variant.MINUS) == 9
    assert max_degree(spec, Variant.PLUSMINUS) == 8
    assert max_degree(sphere_space(4), Variant.BASE) is None


def test_moment_functional_discrete_exact():
    spec = hamming_space(6)
    # first moment of the base measure is 0, second is 1/n
    assert moment_functional(spec, Variant.BASE, lambda t: np.asarray(t), 1) == pytest.approx(0.0, abs=1e-16)
    m2 = moment_functional(spec, Variant.BASE, lambda t: np.asarray(t) ** 2, 2)
    assert m2 == pytest.approx(1 / 6, rel=1e-15)


def _gegenbauer_even_moment(d, m):
    num = 1
    for i in range(1, 2 * m, 2):
        num *= i
    den = 1
    for i in range(m):
        den *= d + 2 * i
    return Fraction(num, den)


def test_moment_functional_sphere_matches_closed_moments():
    for d in (3, 4, 5, 8):
        spec = sphere_space(d)
        for m in range(7):
            got = moment_functional(spec, Variant.BASE,
                                    lambda t, _m=m: np.asarray(t) ** (2 * _m), 2 * m)
            assert got == pytest.approx(float(_gegenbauer_even_moment(d, m)), abs=5e-14)
        odd = moment_functional(spec, Variant.BASE, lambda t: np.asarray(t) ** 3, 3)
        assert odd == pytest.approx(0.0, abs=1e-14)


def test_quadrature_weights_positive_and_sum_to_mass():
    for spec, variant, mass in [
        (hamming_space(8), Variant.BASE, 1.0),
        (hamming_space(8), Variant.MINUS, 1.0),
        (hamming_space(8), Variant.PLUSMINUS, 7 / 8),
        (sphere_space(4), Variant.BASE, 1.0),
        (sphere_space(4), Variant.PLUSMINUS, 3 / 4),
        (sphere_space(5), Variant.MINUS, 1.0),
    ]:
        for m in (1, 2, 4, 7):
            x, w = quadrature(spec, variant, m)
            assert len(x) == m and len(w) == m
            assert np.all(w > 0)
            assert np.all(np.diff(x) > 0)
            assert float(np.sum(w)) == pytest.approx(mass, rel=1e-12)


def test_quadrature_exactness_degree():
    """An m-point rule integrates monomials through degree 2m-1."""
    rng = np.random.default_rng(42)
    spec = hamming_space(12)
    xs, ws = node_weights(spec, Variant.BASE)
    for m in (2, 3, 5):
        x, w = quadrature(spec, Variant.BASE, m)
        for deg in range(2 * m):
            exact = float(np.dot(ws, xs ** deg))
            # nodes carry the 1e-13 bisection tolerance, so allow a little
            # headroom beyond it
            assert float(np.dot(w, x ** deg)) == pytest.approx(exact, abs=5e-13)


def test_quadrature_order_cap():
    spec = hamming_space(4)
    quadrature(spec, Variant.BASE, 5)  # full support is fine
    with pytest.raises(ValidationError):
        quadrature(spec, Variant.BASE, 6)
    with pytest.raises(ValidationError):
        quadrature(spec, Variant.MINUS, 5)
    with pytest.raises(ValidationError):
        quadrature(spec, Variant.BASE, 0)


def test_spec_is_hashable_and_frozen():
    a = hamming_space(6)
    b = hamming_space(6)
    assert a == b and hash(a) == hash(b)
    with pytest.raises(Exception):
        a.kind = "other"
    assert isinstance(a.to_json(), dict)
