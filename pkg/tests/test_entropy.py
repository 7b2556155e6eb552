import math

import numpy as np
import pytest

from conftest import CAPTION_APT, random_state
from nhqubit import entropy
from nhqubit.dynamics import evolve_apt
from nhqubit.errors import DomainError
from nhqubit.linalg2 import DensityMatrix


def state_with_eigenvalues(lo, hi):
    return DensityMatrix(p1=hi, p2=lo, c=0.0j)


class TestRenyi:
    def test_collision_entropy_frozen_value(self):
        # lambda = (0.9, 0.1), q = 2: -log(0.81 + 0.01) = -log 0.82
        rho = state_with_eigenvalues(0.1, 0.9)
        assert entropy.renyi(rho, 2.0) == pytest.approx(
            -math.log(0.82), abs=1e-12
        )
        assert abs(entropy.renyi(rho, 2.0) - 0.198451) < 1e-6

    def test_q_one_dispatches_to_von_neumann(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            rho = random_state(rng)
            assert entropy.renyi(rho, 1.0) == entropy.von_neumann(rho)

    def test_continuity_at_q_one(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            rho = random_state(rng)
            s1 = entropy.von_neumann(rho)
            below = entropy.renyi(rho, 1.0 - 1e-6)
            above = entropy.renyi(rho, 1.0 + 1e-6)
            assert abs(below - s1) < 1e-4
            assert abs(above - s1) < 1e-4
            assert above <= s1 + 1e-12 <= below + 2e-12

    def test_nonpositive_order_rejected(self):
        rho = DensityMatrix.plus()
        for q in (0.0, -1.0):
            with pytest.raises(DomainError):
                entropy.renyi(rho, q)

    def test_pure_state_all_orders_zero(self):
        rho = DensityMatrix.plus()
        for q in (0.5, 1.0, 2.0, 7.0, math.inf):
            assert entropy.renyi(rho, q) == 0.0

    def test_maximally_mixed(self):
        rho = state_with_eigenvalues(0.5, 0.5)
        for q in (0.5, 1.0, 2.0, math.inf):
            assert entropy.renyi(rho, q) == pytest.approx(math.log(2.0))

    def test_decreasing_in_q(self):
        rng = np.random.default_rng(13)
        orders = (0.5, 1.0, 2.0, 5.0, math.inf)
        for _ in range(200):
            rho = random_state(rng)
            vals = [entropy.renyi(rho, q) for q in orders]
            assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))


class TestRenyi0:
    def test_rank_counting(self):
        assert entropy.renyi0(DensityMatrix.plus()) == 0.0
        assert entropy.renyi0(state_with_eigenvalues(0.3, 0.7)) == math.log(2)

    def test_rank_tolerance_edge(self):
        eps = 1e-13  # below RANK_TOL: does not count toward the rank
        rho = state_with_eigenvalues(eps, 1.0 - eps)
        assert entropy.renyi0(rho) == 0.0
        rho = state_with_eigenvalues(1e-11, 1.0 - 1e-11)
        assert entropy.renyi0(rho) == math.log(2)


class TestVonNeumann:
    def test_closed_form_frozen_value(self):
        # D = 0.5: log 2 - 0.5*1.5*log 1.5 - 0.5*0.5*log 0.5
        ref = (math.log(2.0) - 0.75 * math.log(1.5)
               - 0.25 * math.log(0.5))
        assert entropy.von_neumann_closed_form(0.5) == pytest.approx(
            ref, abs=1e-15
        )
        # same thing through the eigenvalue route: -0.75 ln 0.75 - 0.25 ln 0.25
        assert abs(ref - 0.5623351446188083) < 1e-15

    def test_closed_form_equals_eigen_route(self):
        for d in (0.0, 0.1, 0.5, 0.9, 1.0):
            rho = DensityMatrix(p1=0.5, p2=0.5, c=0.5 * d + 0.0j)
            assert entropy.von_neumann(rho) == pytest.approx(
                entropy.von_neumann_closed_form(d), abs=1e-12
            )

    def test_closed_form_domain(self):
        for d in (-0.1, 1.1):
            with pytest.raises(DomainError):
                entropy.von_neumann_closed_form(d)

    def test_closed_form_limits(self):
        assert entropy.von_neumann_closed_form(1.0) == 0.0
        assert entropy.von_neumann_closed_form(0.0) == pytest.approx(
            math.log(2.0)
        )


class TestRenyiInf:
    def test_frozen_value(self):
        rho = state_with_eigenvalues(0.25, 0.75)
        assert entropy.renyi_inf(rho) == pytest.approx(
            -math.log(0.75), abs=1e-12
        )
        assert abs(entropy.renyi_inf(rho) - 0.287682) < 1e-6


class TestHierarchy:
    def test_random_states(self):
        rng = np.random.default_rng(14)
        for _ in range(1000):
            rho = random_state(rng)
            s0 = entropy.renyi0(rho)
            s1 = entropy.von_neumann(rho)
            s2 = entropy.renyi(rho, 2.0)
            sinf = entropy.renyi_inf(rho)
            assert s0 >= s1 - 1e-10
            assert s1 >= s2 - 1e-10
            assert s2 >= sinf - 1e-10


class TestSeries:
    def test_orders_and_shapes(self, caption_bath):
        traj = evolve_apt(CAPTION_APT, caption_bath,
                          np.linspace(0.0, 5.0, 21))
        table = entropy.entropy_series(traj, (0, 1, 2, math.inf))
        assert set(table) == {0, 1, 2, math.inf}
        for vals in table.values():
            assert vals.shape == (21,)
        # dephasing only ever mixes the state further
        assert np.all(np.diff(table[1]) > 0)
        assert table[0][0] == 0.0
        assert np.all(table[0][1:] == math.log(2.0))
