import itertools
import random
from fractions import Fraction as Q

import pytest

from mlvkit import fpoly
from mlvkit.errors import (NotAKeyPolynomial, ValueNotIncreased, ZeroInput)
from mlvkit.ffield import is_irreducible
from mlvkit.fields import FpPerfField, FqtField, QpField
from mlvkit.indval import InductiveValuation as IV, truncation_eval
from mlvkit.poly import Poly
from mlvkit.values import INFINITY, is_inf, vadd


def brute_depth_zero(K, center, gamma, f):
    """Independent oracle: min over the literal (x-a)-expansion terms."""
    best = None
    for k, c in enumerate(f.taylor_coeffs(center)):
        if K.is_zero(c):
            continue
        v = vadd(K.valuate(c), 0 if k == 0 else k * gamma)
        best = v if best is None or v < best else best
    return INFINITY if best is None else best


def test_depth_zero_examples():
    K = QpField(2)
    mu = IV.depth_zero(K, Q(0), Q(1, 2))
    f = Poly.from_ints(K, [8, 2, 1])
    # brute force over the three expansion terms: min{3, 3/2, 1} = 1
    assert brute_depth_zero(K, Q(0), Q(1, 2), f) == Q(1)
    assert mu(f) == Q(1)
    assert mu(Poly.x(K)) == Q(1, 2)
    gauss = IV.depth_zero(K, Q(0), Q(0))
    g = Poly.from_ints(K, [6, 4, 3])
    assert gauss(g) == min(K.valuate(Q(6)), K.valuate(Q(4)), K.valuate(Q(3)))


def test_depth_zero_matches_brute_force_randomly():
    rng = random.Random(3)
    K = QpField(3)
    for _ in range(120):
        center = Q(rng.randrange(-6, 7))
        gamma = Q(rng.randrange(-4, 9), rng.randrange(1, 5))
        mu = IV.depth_zero(K, center, gamma)
        f = Poly.from_ints(K, [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 7))])
        if f.is_zero():
            continue
        assert mu(f) == brute_depth_zero(K, center, gamma, f)


def test_augment_examples():
    K = QpField(2)
    mu = IV.depth_zero(K, Q(0), Q(1, 2))
    phi = Poly.from_ints(K, [-2, 0, 1])
    nu = mu.augment(phi, Q(3, 2))
    f = Poly.from_ints(K, [-4, 0, -4, 0, 1])
    assert nu(f) == Q(3)  # min{mu(-8), inf, 2*(3/2)} = 3
    term = mu.augment(phi, INFINITY)
    assert term(Poly.from_ints(K, [2, 0, 1])) == Q(2)
    with pytest.raises(ValueNotIncreased):
        mu.augment(phi, Q(1))  # mu(phi) = 1
    with pytest.raises(NotAKeyPolynomial):
        mu.augment(Poly.from_ints(K, [0, 0, 1]), Q(2))  # x^2 is no key


def test_evaluate_examples():
    K3 = QpField(3)
    gauss = IV.depth_zero(K3, Q(0), Q(0))
    assert gauss(Poly.from_ints(K3, [9, 3])) == Q(1)
    K = QpField(2)
    gauss2 = IV.depth_zero(K, Q(0), Q(0))
    h = Poly.from_ints(K, [1, 1, 1])
    mu1 = gauss2.augment(h, Q(1))
    assert mu1(h) == Q(1)


def test_value_group_and_ram_indices():
    K = QpField(2)
    mu = IV.depth_zero(K, Q(0), Q(0))
    nu = mu.augment(Poly.x(K), Q(1, 2))  # collapses to depth zero at 1/2
    assert str(nu.value_group()) == "(1/2)Z"
    assert nu.ram_indices() == [2]
    gauss3 = IV.depth_zero(FqtField(3), FqtField(3).zero(), Q(0))
    assert str(gauss3.value_group()) == "(1)Z"
    assert gauss3.ram_indices() == [1]
    # gammas 1/2 then 3/2
    phi = Poly.from_ints(K, [-2, 0, 1])
    chain = nu.augment(phi, Q(3, 2))
    assert str(chain.value_group()) == "(1/2)Z"
    assert chain.ram_indices() == [2, 1]


def test_equiv_examples():
    K = QpField(2)
    gauss = IV.depth_zero(K, Q(0), Q(0))
    x = Poly.x(K)
    assert gauss.equiv(Poly.from_ints(K, [2, 1]), x)
    assert gauss.equiv(x, x)
    assert not gauss.equiv(x, Poly.from_ints(K, [1]))
    with pytest.raises(ZeroInput):
        gauss.equiv(x, Poly(K, ()))


def test_is_minimal_examples():
    K = QpField(2)
    gauss = IV.depth_zero(K, Q(0), Q(0))
    assert gauss.is_minimal(Poly.x(K))
    assert not gauss.is_minimal(Poly.from_ints(K, [0, 0, 1]))  # x^2 = x * x
    mu = IV.depth_zero(K, Q(0), Q(1, 2))
    assert mu.is_minimal(Poly.from_ints(K, [-2, 0, 1]))


def test_residual_polynomial_examples():
    K = QpField(2)
    gauss = IV.depth_zero(K, Q(0), Q(0))
    kappa, H = gauss.residual_polynomial(Poly.from_ints(K, [1, 1, 1]))
    assert H == (1, 1, 1)
    mu = IV.depth_zero(K, Q(0), Q(1, 2))
    kappa, H = mu.residual_polynomial(Poly.from_ints(K, [-2, 0, 1]))
    assert H == (1, 1)  # y + 1, a single root
    # single attaining term gives a monomial residual
    kappa, H = mu.residual_polynomial(Poly.from_ints(K, [1]))
    assert fpoly.deg(H) == 0


def test_residual_field_and_inertia():
    K = QpField(2)
    gauss = IV.depth_zero(K, Q(0), Q(0))
    term = gauss.augment(Poly.from_ints(K, [1, 1, 1]), INFINITY)
    kappa, deg = term.residual_field()
    assert deg == 2 and kappa.order == 4
    assert term.inertia_indices() == [2]


def test_monotonicity_of_augmentation():
    rng = random.Random(9)
    K = QpField(2)
    mu = IV.depth_zero(K, Q(0), Q(1, 2))
    nu = mu.augment(Poly.from_ints(K, [-2, 0, 1]), Q(3, 2))
    for _ in range(500):
        f = Poly.from_ints(K, [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 8))])
        if f.is_zero():
            continue
        assert mu(f) <= nu(f)


def test_truncation_examples_and_bound():
    K = QpField(2)
    gauss = IV.depth_zero(K, Q(0), Q(0))
    x = Poly.x(K)
    rng = random.Random(12)
    for _ in range(60):
        f = Poly.from_ints(K, [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 7))])
        if f.is_zero():
            continue
        assert truncation_eval(gauss, x, f) == gauss(f)
    # strict inequality at the key step for the sqrt(2)-chain
    mu = IV.depth_zero(K, Q(0), Q(1, 2))
    g = Poly.from_ints(K, [-2, 0, 1])
    nu = mu.augment(g, INFINITY)
    assert truncation_eval(nu, x, g) == Q(1)
    assert is_inf(nu(g))
    # q-expansion of q itself
    assert truncation_eval(nu, g, g) == nu(g)
    # truncation at a key polynomial never exceeds nu
    for _ in range(200):
        f = Poly.from_ints(K, [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 8))])
        if f.is_zero():
            continue
        assert truncation_eval(nu, x, f) <= nu(f)
        assert truncation_eval(nu, g, f) <= nu(f)


def test_truncation_monotonicity_along_chain():
    # Lemma-style checks on chain keys: Q earlier, Q' later
    K = QpField(2)
    mu = IV.depth_zero(K, Q(0), Q(1, 2))
    g = Poly.from_ints(K, [-2, 0, 1])
    nu = mu.augment(g, INFINITY)
    x = Poly.x(K)
    rng = random.Random(31)
    # (1) nu_{Q'}(Q) = nu(Q) for Q = x, Q' = g
    assert truncation_eval(nu, g, x) == nu(x)
    # (2) nu_Q <= nu_{Q'} pointwise
    for _ in range(200):
        f = Poly.from_ints(K, [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 8))])
        if f.is_zero():
            continue
        assert truncation_eval(nu, x, f) <= truncation_eval(nu, g, f)


def test_equal_degree_value_comparison():
    # Lemma 5.6(3) flavor: same-degree keys Q, Q': nu(Q) < nu(Q') iff
    # truncation at Q drops the value of Q'
    K = QpField(5)
    # x^2+1 over Q5: keys x+2 and its refinement x+7 both have degree 1
    g = Poly.from_ints(K, [1, 0, 1])
    from mlvkit.engine import mac_lane_chains
    rep = mac_lane_chains(K, g)
    b = rep.branches[0]
    nu = lambda f: b.chain.evaluate(f)
    entries = [e["key"] for e in b.trajectory]
    for q1, q2 in zip(entries, entries[1:]):
        assert nu(q1) < nu(q2)
        assert truncation_eval(nu, q1, q2) < nu(q2)


def test_v1_v2_for_evaluate():
    rng = random.Random(40)
    K = QpField(2)
    mu0 = IV.depth_zero(K, Q(0), Q(1, 2))
    mu1 = mu0.augment(Poly.from_ints(K, [4, 0, 2, 0, 1]), Q(5, 2))
    for mu in (mu0, mu1):
        for _ in range(150):
            f = Poly.from_ints(K, [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 7))])
            h = Poly.from_ints(K, [rng.randrange(-9, 10) for _ in range(rng.randrange(1, 7))])
            if f.is_zero() or h.is_zero():
                continue
            assert mu(f * h) == vadd(mu(f), mu(h))
            s = f + h
            if not s.is_zero():
                assert mu(s) >= min(mu(f), mu(h))
                if mu(f) != mu(h):
                    assert mu(s) == min(mu(f), mu(h))


def test_key_lift_roundtrip_all_small_residuals():
    # lifting an irreducible residual and reducing returns it exactly,
    # including at stages with nontrivial graded twists
    K = QpField(2)
    mu0 = IV.depth_zero(K, Q(0), Q(1, 2))
    mu1 = mu0.augment(Poly.from_ints(K, [4, 0, 2, 0, 1]), Q(5, 2))
    for node in (mu0, mu1):
        kap = node.kappa
        elems = [()] if kap.order == 2 else []
        if kap.order == 2:
            universe = [0, 1]
        else:
            universe = [(), (1,), (0, 1), (1, 1)]
        for deg in (1, 2):
            for tail in itertools.product(universe, repeat=deg):
                rbar = tuple(tail) + ((1,) if kap.order == 4 else 1,) \
                    if kap.order == 4 else tuple(tail) + (1,)
                if fpoly.deg(rbar) != deg or not is_irreducible(kap, rbar):
                    continue
                key = node.key_from_residual(rbar)
                assert key.is_monic()
                assert key.degree == deg * node.e_rel * node.degree
                gr = node.graded_reduction(key)
                assert gr.i0 == 0
                assert fpoly.eq(kap, fpoly.monic(kap, gr.H), rbar)


def test_imperfect_residue_guard():
    from mlvkit.fields import FpctField
    from mlvkit.errors import ImperfectResidueUnsupported
    C = FpctField(2)
    mu = IV.depth_zero(C, C.zero(), Q(0))
    # degree-2 residual certification requires factorization: unsupported
    g = Poly(C, [C.add(C.one(), C.t()), C.one(), C.one()])
    with pytest.raises((ImperfectResidueUnsupported, NotAKeyPolynomial)):
        mu.augment(g, INFINITY)
