import numpy as np
import pytest

from accelqutrit.linalg import hermitian_eigenvalues, partial_trace, partial_transpose
from accelqutrit.states import EntanglementClass, classify, horodecki_state, max_entangled

ALPHAS = np.linspace(2, 5, 31)


def horodecki_by_kets(alpha):
    """Assemble the state from explicit kets, independently of the module."""
    ket = lambda a, b: np.eye(9)[3 * a + b]  # noqa: E731
    psi = (ket(0, 0) + ket(1, 1) + ket(2, 2)) / np.sqrt(3)
    s_plus = sum(np.outer(ket(a, b), ket(a, b)) for a, b in [(0, 1), (1, 2), (2, 0)]) / 3
    s_minus = sum(np.outer(ket(a, b), ket(a, b)) for a, b in [(0, 2), (1, 0), (2, 1)]) / 3
    return 2 / 7 * np.outer(psi, psi) + alpha / 7 * s_plus + (5 - alpha) / 7 * s_minus


@pytest.mark.parametrize("alpha", ALPHAS)
def test_valid_density_matrix(alpha):
    rho = horodecki_state(alpha)
    rho.check()
    np.testing.assert_allclose(rho.matrix, horodecki_by_kets(alpha), atol=1e-15)


@pytest.mark.parametrize("alpha", [2.0, 2.5, 3.7, 5.0])
def test_diagonal(alpha):
    d = np.diag(horodecki_state(alpha).matrix).real
    np.testing.assert_allclose(d[[0, 4, 8]], 2 / 21)
    np.testing.assert_allclose(d[[1, 5, 6]], alpha / 21)
    np.testing.assert_allclose(d[[2, 3, 7]], (5 - alpha) / 21)


def test_alpha_five_spectrum():
    w = hermitian_eigenvalues(horodecki_state(5).matrix)
    np.testing.assert_allclose(w, [2 / 7] + [5 / 21] * 3 + [0] * 5, atol=1e-14)


@pytest.mark.parametrize("alpha", [1.99, 5.01, -1, float("nan")])
def test_alpha_out_of_range(alpha):
    with pytest.raises(ValueError):
        horodecki_state(alpha)


def test_ppt_boundary_at_four():
    for alpha in ALPHAS:
        lam = hermitian_eigenvalues(partial_transpose(horodecki_state(alpha)))[-1]
        if alpha <= 4:
            assert lam >= -1e-10
        else:
            assert lam < -1e-6


def test_diagonal_positive_inside_interval():
    for alpha in ALPHAS[1:-1]:
        assert np.all(np.diag(horodecki_state(alpha).matrix).real > 0)


def test_rob_swapped_is_local_relabeling():
    std = horodecki_state(3.3).matrix
    swapped = horodecki_state(3.3, "rob-swapped").matrix
    np.testing.assert_allclose(swapped[0, 0], 3.3 / 21)
    np.testing.assert_allclose(np.linalg.eigvalsh(std), np.linalg.eigvalsh(swapped), atol=1e-15)
    with pytest.raises(ValueError):
        horodecki_state(3.3, "other")


class TestMaxEntangled:
    def test_bell_is_pure(self):
        rho = max_entangled(2).matrix
        assert np.trace(rho @ rho).real == pytest.approx(1.0)

    def test_qutrit_marginals(self):
        rho = max_entangled(3)
        for side in "AB":
            np.testing.assert_allclose(partial_trace(rho, side), np.eye(3) / 3, atol=1e-15)

    def test_coherence_entry(self):
        assert max_entangled(3).matrix[0, 8] == pytest.approx(1 / 3)

    def test_rejects_small_d(self):
        with pytest.raises(ValueError):
            max_entangled(1)


@pytest.mark.parametrize(
    "alpha, tag",
    [
        (2.0, EntanglementClass.SEPARABLE),
        (3.0, EntanglementClass.SEPARABLE),
        (3.0001, EntanglementClass.BOUND_ENTANGLED),
        (4.0, EntanglementClass.BOUND_ENTANGLED),
        (4.5, EntanglementClass.FREE_ENTANGLED),
        (5.0, EntanglementClass.FREE_ENTANGLED),
    ],
)
def test_classify(alpha, tag):
    assert classify(alpha) is tag


def test_classify_rejects_out_of_range():
    with pytest.raises(ValueError):
        classify(5.5)
