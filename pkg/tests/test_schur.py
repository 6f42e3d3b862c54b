import numpy as np
import pytest

from treehardy.errors import DivergenceError, InvalidParameterError, RecursionBreakdownError
from treehardy.hardy import HardySeries, blaschke, h2_norm, kernel, point_eval, series_mul
from treehardy.kalgebra import ONE, KElement
from treehardy.sampling import random_k, random_k2, random_series
from treehardy.schur import InterpolationProblem, gram, interpolate, is_psd, schur_kernel

GB = HardySeries.gamma_bar(1)


def test_kernel_at_zero():
    S = HardySeries([KElement([0.3], 0.2), KElement([1.0])])
    s0 = S[0]
    assert schur_kernel(S, 0.0, 0.0).allclose(ONE - s0 * s0.conj())


def test_kernel_of_zero_is_unreduced():
    c, d = KElement([0.4j], 0.3), KElement([-0.2, 0.5], 0.6j)
    ref = point_eval(kernel(d), c)
    assert schur_kernel(HardySeries.constant(0.0), c, d).allclose(ref, 1e-12)


def test_kernel_geometric_oracle():
    # sum 0.25**n * (1 - 0.25) = 1
    assert schur_kernel(GB, 0.5, 0.5).allclose(ONE, 1e-12)


def test_kernel_outside_disk():
    with pytest.raises(DivergenceError):
        schur_kernel(GB, 1.2, 0.0)


def test_single_point_gram():
    G = gram(HardySeries.constant(0.0), [KElement.const(0.0)], [KElement([1.0])])
    assert np.allclose(G.matrix, [[1.0]])
    assert is_psd(G).psd


def test_gram_dimension_mismatch():
    with pytest.raises(InvalidParameterError):
        gram(GB, [KElement.const(0.1)], [])


@pytest.mark.parametrize("seed", range(10))
def test_gram_hermitian(seed):
    rng = np.random.default_rng(seed)
    S = random_series(rng, 2, hs=False) * 0.3
    pts = [random_k(rng) for _ in range(3)]
    vecs = [random_k2(rng) for _ in range(3)]
    assert gram(S, pts, vecs).hermitian_residual() <= 1e-12


@pytest.mark.parametrize("seed", range(15))
def test_blaschke_multiplier_is_schur(seed):
    rng = np.random.default_rng(seed)
    B = blaschke(random_k(rng)).series
    pts = [random_k(rng) for _ in range(3)]
    vecs = [random_k2(rng) for _ in range(3)]
    rep = is_psd(gram(B, pts, vecs), 1e-8)
    assert rep.psd and rep.min_eigenvalue >= -1e-8


def test_twice_shift_is_not_schur():
    seven = KElement.const(0.7)
    # the kernel is the constant (1 - 1.96) / (1 - 0.49) < 0
    assert schur_kernel(2 * GB, seven, seven).tail == pytest.approx(-0.96 / 0.51)
    rep = is_psd(gram(HardySeries.gamma_bar(1, 2.0), [seven], [KElement([1.0])]))
    assert not rep.psd and rep.min_eigenvalue < 0


def test_single_point_interpolation():
    sol = interpolate(InterpolationProblem((KElement.const(0.0),)))
    assert sol.blaschke_product == GB
    assert sol.ks == (ONE,)
    sol = interpolate(InterpolationProblem((KElement.const(0.5),)))
    assert [b.tail for b in sol.blaschke_product.coeffs[:4]] == pytest.approx([-0.5, 0.75, 0.375, 0.1875], abs=1e-12)


def test_two_constant_points():
    pts = (KElement.const(0.3), KElement.const(0.5))
    sol = interpolate(InterpolationProblem(pts))
    for c in pts:
        assert point_eval(sol.blaschke_product, c).norm_inf() < 1e-8
    assert max(sol.residuals) < 1e-8


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("seed", range(4))
def test_interpolation_vanishing_and_isometry(N, seed):
    rng = np.random.default_rng(100 * N + seed)
    pts = tuple(random_k(rng) for _ in range(N))
    B = interpolate(InterpolationProblem(pts)).blaschke_product
    for _ in range(5):
        G = random_series(rng, int(rng.integers(0, 4)))
        BG = series_mul(B, G)
        assert max(point_eval(BG, c).norm_inf() for c in pts) < 1e-8
        assert abs(h2_norm(BG) - h2_norm(G)) < 1e-8


def test_breakdown_on_repeated_points():
    c = KElement([0.2], 0.4)
    with pytest.raises(RecursionBreakdownError) as err:
        interpolate(InterpolationProblem((c, c)))
    assert err.value.index == 2


def test_problem_validation():
    with pytest.raises(InvalidParameterError):
        InterpolationProblem(())
    with pytest.raises(DivergenceError):
        InterpolationProblem((KElement.const(1.0),))
    with pytest.raises(InvalidParameterError):
        InterpolationProblem.from_doc({"pts": []})


def test_solution_document():
    pts = (KElement.const(0.3), KElement([0.1], 0.2))
    doc = {"points": [p.to_doc() for p in pts], "tol": 1e-12, "inv_threshold": 1e-9}
    sol = interpolate(InterpolationProblem.from_doc(doc))
    out = sol.to_doc()
    assert set(out) == {"blaschke_product", "ks", "residuals"}
    assert HardySeries.from_doc(out["blaschke_product"]) == sol.blaschke_product
    assert len(out["ks"]) == 2
