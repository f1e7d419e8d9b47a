import math

import numpy as np
import pytest

from quatpoly.errors import ParseError, ZeroConjugator
from quatpoly.quaternion import (
    BASIS, I, J, K, ONE, Quaternion, apply_automorphism, auto_equivalent,
    format_quaternion, parse_quaternion, random_quaternion, rotation_to_complex,
)


def test_basis_multiplication_table():
    # i^2 = j^2 = k^2 = -1, ij = k and cyclic, anti-commuting
    expected = {
        ("i", "i"): -ONE, ("j", "j"): -ONE, ("k", "k"): -ONE,
        ("i", "j"): K, ("j", "i"): -K,
        ("j", "k"): I, ("k", "j"): -I,
        ("k", "i"): J, ("i", "k"): -J,
    }
    units = {"i": I, "j": J, "k": K}
    for (a, b), want in expected.items():
        assert units[a] * units[b] == want
    assert I * J * K == -ONE


def test_mul_examples():
    x = Quaternion(0.3, -1.2, 0.5, 2.0)
    assert ONE * x == x
    assert x * ONE == x
    assert (ONE + I) * (ONE + J) == Quaternion(1, 1, 1, 1)


def test_norm_multiplicative_on_random_pairs():
    rng = np.random.default_rng(1)
    for _ in range(10_000):
        a = random_quaternion(rng, 2.0)
        b = random_quaternion(rng, 2.0)
        lhs = (a * b).norm()
        rhs = a.norm() * b.norm()
        assert abs(lhs - rhs) <= 1e-12 * max(rhs, 1e-300)


def test_associativity():
    rng = np.random.default_rng(2)
    for _ in range(2000):
        a, b, c = (random_quaternion(rng, 2.0) for _ in range(3))
        lhs = (a * b) * c
        rhs = a * (b * c)
        assert (lhs - rhs).norm() <= 1e-12 * max(lhs.norm(), 1e-300)


def test_conj_norm_inverse_examples():
    q = Quaternion(1, 2, 3, 4)
    assert q.conj() == Quaternion(1, -2, -3, -4)
    assert Quaternion(1, 1, 1, 1).norm() == pytest.approx(2.0)
    assert I.inverse() == -I
    with pytest.raises(ZeroDivisionError):
        Quaternion().inverse()


def test_inverse_law():
    rng = np.random.default_rng(3)
    for _ in range(500):
        a = random_quaternion(rng, 3.0)
        if a.norm() < 1e-6:
            continue
        assert (a * a.inverse() - ONE).norm() <= 1e-12
        assert (a.inverse() * a - ONE).norm() <= 1e-12


def test_reals_commute_exactly():
    rng = np.random.default_rng(4)
    for _ in range(200):
        alpha = Quaternion(rng.uniform(-5, 5))
        x = random_quaternion(rng, 5.0)
        assert (alpha * x - x * alpha) == Quaternion()


def test_auto_equivalent_examples():
    assert auto_equivalent(I, J)
    assert not auto_equivalent(I, ONE + I)
    assert auto_equivalent(Quaternion(2, 3), Quaternion(2, 0, 3))


def test_auto_equivalent_is_equivalence_on_conjugates():
    rng = np.random.default_rng(5)
    for _ in range(50):
        a = random_quaternion(rng)
        samples = [a]
        for _ in range(3):
            w = random_quaternion(rng)
            if w.norm() < 1e-3:
                continue
            samples.append(apply_automorphism(w, a))
        for s in samples:
            assert auto_equivalent(s, s)
        for s in samples:
            for t in samples:
                assert auto_equivalent(s, t) == auto_equivalent(t, s)
                assert auto_equivalent(s, t)


def test_apply_automorphism_laws():
    rng = np.random.default_rng(6)
    for _ in range(200):
        u = random_quaternion(rng)
        if u.norm() < 1e-3:
            continue
        x = random_quaternion(rng, 2.0)
        y = random_quaternion(rng, 2.0)
        fx, fy = apply_automorphism(u, x), apply_automorphism(u, y)
        fxy = apply_automorphism(u, x * y)
        fsum = apply_automorphism(u, x + y)
        assert (fxy - fx * fy).norm() <= 1e-12 * max(1.0, fxy.norm())
        assert (fsum - (fx + fy)).norm() <= 1e-12 * max(1.0, fsum.norm())
        alpha = Quaternion(rng.uniform(-3, 3))
        assert (apply_automorphism(u, alpha) - alpha).norm() <= 1e-12 * max(1.0, alpha.norm())
    assert apply_automorphism(ONE, I) == I
    assert (apply_automorphism(J, -I) - I).norm() <= 1e-15
    with pytest.raises(ZeroConjugator):
        apply_automorphism(Quaternion(), I)


def test_rotation_examples():
    u, y = rotation_to_complex(Quaternion(5))
    assert u == ONE and y == Quaternion(5)
    u, y = rotation_to_complex(J)
    assert (u - Quaternion(0, 1 / math.sqrt(2), 1 / math.sqrt(2))).norm() <= 1e-15
    assert (y - I).norm() <= 1e-15
    x = Quaternion(2, 0, 0, -2)
    u, y = rotation_to_complex(x)
    assert (y - Quaternion(2, 2)).norm() <= 1e-12
    assert (apply_automorphism(u, x) - y).norm() <= 1e-12 * y.norm()


def test_rotation_randoms_and_degenerate_directions():
    rng = np.random.default_rng(7)
    cases = [random_quaternion(rng, 2.0) for _ in range(300)]
    cases += [Quaternion(0.5, -0.8, 0, 0),              # already complex, negative i
              Quaternion(0.1, -1.0, 1e-13, 0),          # near the -i direction
              Quaternion(0.1, -1.0, 0, 1e-13),
              Quaternion(-2, -3, 0, 0),
              Quaternion(4)]
    for x in cases:
        u, y = rotation_to_complex(x)
        assert abs(u.norm() - 1.0) <= 1e-12
        assert abs(y.im_j) <= 1e-12 and abs(y.im_k) <= 1e-12
        back = apply_automorphism(u, x)
        assert (back - y).norm() <= 1e-12 * max(1.0, y.norm())


def test_parse_and_format_round_trips():
    samples = ["1-2k", "i", "0", "-j", "1+2i+3j+4k", "0.5i-0.25", "2e-3k+1e2"]
    for text in samples:
        q = parse_quaternion(text)
        again = parse_quaternion(format_quaternion(q))
        assert q == again
    rng = np.random.default_rng(8)
    for _ in range(200):
        q = random_quaternion(rng, 10.0)
        assert parse_quaternion(format_quaternion(q)) == q
        assert parse_quaternion(format_quaternion(q, digits=17)) == q


def test_parse_examples_and_errors():
    assert parse_quaternion("1 - 2 k") == Quaternion(1, 0, 0, -2)
    assert parse_quaternion("i+i") == Quaternion(0, 2)
    for bad in ["", "1+", "x", "2.5.3", "1 2", "+"]:
        with pytest.raises(ParseError):
            parse_quaternion(bad)


def test_format_styles():
    assert format_quaternion(Quaternion()) == "0"
    assert format_quaternion(Quaternion(0, -1)) == "-i"
    assert format_quaternion(Quaternion(1.5, 0, 0, -1)) == "1.5-k"
    assert format_quaternion(BASIS[2]) == "j"
