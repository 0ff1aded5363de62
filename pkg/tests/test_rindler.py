import io
import math

import numpy as np
import pytest

from accelqutrit.linalg import BipartiteShape, DensityMatrix, ShapeError
from accelqutrit.rindler import (
    CLOSED_FORM_BASIS,
    REPORT_COLUMNS,
    accelerate,
    basis_label,
    closed_form_elements,
    closed_form_matrix,
    cross_check,
    embed,
    label_index,
    rindler_isometry,
    write_report,
)
from accelqutrit.states import horodecki_state

from conftest import random_state

R_GRID = np.linspace(0, math.pi / 4, 16)
ALPHAS = np.linspace(2, 5, 31)
AMBIGUOUS = {("12", "0P"), ("21", "P0"), ("11", "P2"), ("11", "2P")}


def minkowski_images(r):
    """Images of |0_k>, |1_k>, |2_k> as dicts {(region I, region II): amplitude}."""
    c, s = math.cos(r), math.sin(r)
    return [
        {(0, 0): c * c, (1, 2): c * s, (2, 1): c * s, (3, 3): s * s},
        {(1, 0): c, (3, 1): s},
        {(2, 0): c, (3, 2): -s},
    ]


def accelerate_by_loops(rho, r):
    """Expand each ket-bra term explicitly and trace region II by hand."""
    img = minkowski_images(r)
    out = np.zeros((16, 16), dtype=complex)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    coeff = rho[3 * i + j, 3 * k + l]
                    if coeff == 0:
                        continue
                    for (a1, b1), x1 in img[i].items():
                        for (c1, d1), y1 in img[j].items():
                            for (a2, b2), x2 in img[k].items():
                                for (c2, d2), y2 in img[l].items():
                                    if b1 == b2 and d1 == d2:
                                        out[4 * a1 + c1, 4 * a2 + c2] += coeff * x1 * y1 * x2 * y2
    return out


class TestIsometry:
    def test_zero_acceleration_is_embedding(self):
        v = rindler_isometry(0.0).matrix
        for level in range(3):
            expected = np.zeros(16)
            expected[4 * level] = 1.0
            np.testing.assert_array_equal(v[:, level], expected)

    def test_quarter_pi_vacuum_amplitude(self):
        v = rindler_isometry(math.pi / 4).tensor()
        assert v[0, 0, 0] == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("r", R_GRID)
    def test_orthonormal_columns(self, r):
        v = rindler_isometry(r).matrix
        np.testing.assert_allclose(v.T @ v, np.eye(3), atol=1e-12)

    @pytest.mark.parametrize("r", [-0.01, math.pi / 4 + 1e-6])
    def test_out_of_range(self, r):
        with pytest.raises(ValueError):
            rindler_isometry(r)


class TestAccelerate:
    @pytest.mark.parametrize("alpha", [2.0, 3.5, 4.5])
    @pytest.mark.parametrize("r", [0.0, 0.2, math.pi / 4])
    def test_matches_loop_oracle(self, alpha, r):
        rho = horodecki_state(alpha)
        np.testing.assert_allclose(accelerate(rho, r).matrix, accelerate_by_loops(rho.matrix, r), atol=1e-15)

    def test_independent_parameters(self, rng):
        rho = random_state(rng, 3, 3)
        out = accelerate(rho, 0.1, 0.6)
        out.check()
        assert not np.allclose(out.matrix, accelerate(rho, 0.6, 0.1).matrix)

    def test_zero_acceleration_embeds(self, rng):
        rho = random_state(rng, 3, 3)
        out = accelerate(rho, 0.0, 0.0)
        assert np.max(np.abs(out.matrix - embed(rho).matrix)) <= 1e-14
        pops = np.diag(out.matrix).real.reshape(4, 4)
        assert np.all(pops[3, :] == 0) and np.all(pops[:, 3] == 0)

    def test_vacuum_entry_standard_labeling(self):
        out = accelerate(horodecki_state(4.5), math.pi / 4).matrix
        assert out[0, 0].real == pytest.approx(2 / 21 / 16, abs=1e-15)

    def test_vacuum_entry_closed_form_labeling(self):
        out = accelerate(horodecki_state(4.5, "rob-swapped"), math.pi / 4).matrix
        assert out[0, 0].real == pytest.approx(4.5 / 336, abs=1e-15)
        assert out[0, 0].real == pytest.approx(0.0133929, abs=1e-7)

    @pytest.mark.parametrize("r", [0.1, 0.4])
    def test_vacuum_entry_general_r(self, r):
        for alpha in (2.5, 4.0):
            out = accelerate(horodecki_state(alpha, "rob-swapped"), r).matrix
            assert out[0, 0].real == pytest.approx(alpha / 21 * math.cos(r) ** 8, abs=1e-15)

    def test_validity_on_grid(self):
        for alpha in ALPHAS:
            for r in R_GRID:
                out = accelerate(horodecki_state(alpha), r)
                assert abs(out.trace() - 1) <= 1e-12
                assert out.min_eigenvalue() >= -1e-10
                assert np.max(np.abs(out.matrix.imag)) <= 1e-14

    def test_rejects_wrong_shape(self):
        with pytest.raises(ShapeError):
            accelerate(DensityMatrix(np.eye(4) / 4, BipartiteShape(2, 2)), 0.1)


class TestClosedForms:
    def test_labels(self):
        assert [label_index(lab) for lab in CLOSED_FORM_BASIS[:3]] == [0, 1, 2]
        assert label_index("0P") == 3 and label_index("PP") == 15
        assert all(basis_label(label_index(lab)) == lab for lab in CLOSED_FORM_BASIS)

    @pytest.mark.parametrize("alpha", [2.0, 3.3, 5.0])
    def test_values_at_rest(self, alpha):
        e = {(x.ket, x.bra): x for x in closed_form_elements(alpha, 0.0)}
        assert e["00", "00"].value == pytest.approx(alpha / 21)
        assert e["01", "10"].value == pytest.approx(2 / 21)
        assert e["PP", "PP"].value == 0.0

    def test_ambiguity_flags(self):
        entries = closed_form_elements(4.0, 0.3)
        flagged = {(e.ket, e.bra) for e in entries if e.ambiguous}
        assert flagged == AMBIGUOUS
        e813 = [e for e in entries if e.symbol == "e8,13"]
        assert all(len(e.alternatives) == 2 for e in e813)
        c, s = math.cos(0.3), math.sin(0.3)
        assert e813[0].alternatives[1] == pytest.approx(-2 * c**3 * s**2 / 21)

    def test_real_and_hermitian(self):
        m, amb = closed_form_matrix(3.0, 0.5)
        np.testing.assert_array_equal(m, m.T)
        np.testing.assert_array_equal(amb, amb.T)

    def test_printed_trace(self):
        for alpha in (2.0, 3.7, 5.0):
            for r in (0.0, 0.3, math.pi / 4):
                m, _ = closed_form_matrix(alpha, r)
                assert np.trace(m) == pytest.approx(1.0, abs=1e-12)


class TestCrossCheck:
    @pytest.mark.parametrize("alpha", [2.0, 3.5, 5.0])
    def test_nothing_at_rest(self, alpha):
        assert cross_check(alpha, 0.0) == []

    def test_diagonal_agrees(self):
        report = cross_check(3.0, 0.3)
        assert not [d for d in report if d.row_index == d.col_index]

    def test_only_ambiguous_positions_on_grid(self):
        for alpha in ALPHAS:
            for r in R_GRID:
                for d in cross_check(alpha, r):
                    assert d.ambiguous
                    assert (basis_label(d.row_index), basis_label(d.col_index)) in AMBIGUOUS | {
                        (b, a) for a, b in AMBIGUOUS
                    }

    def test_generic_values_at_ambiguous_positions(self):
        r = 0.5
        c, s = math.cos(r), math.sin(r)
        generic = accelerate(horodecki_state(3.0, "rob-swapped"), r).matrix.real
        assert generic[label_index("12"), label_index("0P")] == pytest.approx(2 * s * s * c**4 / 21, abs=1e-15)
        assert generic[label_index("21"), label_index("P0")] == pytest.approx(2 * s * s * c**4 / 21, abs=1e-15)
        assert generic[label_index("11"), label_index("P2")] == pytest.approx(-2 * c**3 * s * s / 21, abs=1e-15)
        assert generic[label_index("11"), label_index("2P")] == pytest.approx(-2 * c**3 * s * s / 21, abs=1e-15)

    def test_standard_labeling_disagrees(self):
        report = cross_check(3.0, 0.3, labeling="standard")
        unambiguous = [d for d in report if not d.ambiguous]
        assert any(d.position == "|00><00|" for d in unambiguous)

    def test_report_csv(self):
        buf = io.StringIO()
        write_report(cross_check(4.5, 0.4), buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == ",".join(REPORT_COLUMNS)
        assert len(lines) > 1
        assert all(line.endswith(",1") for line in lines[1:])
