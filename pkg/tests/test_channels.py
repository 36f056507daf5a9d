import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonic_bounds import channels as chn
from bosonic_bounds import gaussian_core as gc
from bosonic_bounds.errors import (
    ChannelKindError,
    DomainError,
    InfeasibleBoundError,
    InvalidChannelError,
    InvalidStateError,
)

EPS_DEG_075_05 = 0.3803362222154039858821  # frozen 40-digit evaluation


class TestConstructors:
    def test_thermal(self):
        ch = chn.thermal(0.6, 1.0)
        assert ch.tau == pytest.approx(0.6)
        assert ch.nu == pytest.approx(1.2)

    def test_amplifier_quantum_limited(self):
        ch = chn.amplifier(2.0, 0.0)
        assert (ch.tau, ch.nu) == (2.0, 1.0)

    def test_additive(self):
        ch = chn.additive_noise(0.5)
        assert (ch.tau, ch.nu) == (1.0, 1.0)

    def test_make_channel_dispatch(self):
        assert chn.make_channel("thermal", eta=0.7, nb=0.2).kind == "thermal"
        assert chn.make_channel("amplifier", g=1.5, nb=0.0).kind == "amplifier"
        assert chn.make_channel("additive", nbar=0.3).kind == "additive"
        with pytest.raises(ChannelKindError):
            chn.make_channel("squeezer", r=1.0)

    @pytest.mark.parametrize("bad", [lambda: chn.thermal(0.0, 1.0),
                                     lambda: chn.thermal(1.2, 0.0),
                                     lambda: chn.thermal(0.5, -0.1),
                                     lambda: chn.amplifier(0.9, 0.0),
                                     lambda: chn.additive_noise(0.0)])
    def test_parameter_domain(self, bad):
        with pytest.raises(DomainError):
            bad()

    def test_raw_cptp_violation(self):
        with pytest.raises(InvalidChannelError):
            chn.raw_channel(0.5, 0.1)  # nu^2 < (1-tau)^2

    def test_channel_action_matches_tau_nu(self):
        ch = chn.thermal(0.7, 0.3)
        out = ch.apply(gc.thermal_state(2.0))
        assert np.allclose(out.cov, (ch.tau * 5.0 + ch.nu) * np.eye(2))


class TestEntanglementBreaking:
    def test_additive_boundary(self):
        assert chn.is_entanglement_breaking(chn.additive_noise(1.0))  # nu = tau + 1
        assert not chn.is_entanglement_breaking(chn.additive_noise(0.99))

    @pytest.mark.parametrize("g,nb", [(2.0, 1.0), (3.0, 0.5), (1.5, 2.0)])
    def test_amplifier_condition(self, g, nb):
        # (g-1) nb >= 1 is exactly nu >= tau + 1
        assert chn.is_entanglement_breaking(chn.amplifier(g, nb)) == ((g - 1) * nb >= 1)

    @pytest.mark.parametrize("eta,nb", [(0.3, 1.0), (0.5, 1.0), (0.5, 0.9),
                                        (0.2, 0.3), (0.9, 5.0)])
    def test_thermal_condition(self, eta, nb):
        # nu >= tau + 1 reduces to eta <= nb/(nb+1)
        assert chn.is_entanglement_breaking(chn.thermal(eta, nb)) == (eta <= nb / (nb + 1))


class TestDecompositions:
    def test_loss_then_amp_pure_loss(self):
        d = chn.decompose_loss_then_amp(chn.thermal(0.8, 0.0))
        assert d.second.params["g"] == pytest.approx(1.0)
        assert d.first.params["eta"] == pytest.approx(0.8)

    def test_loss_then_amp_values(self):
        d = chn.decompose_loss_then_amp(chn.thermal(0.5, 1.0))
        assert d.second.params["g"] == pytest.approx(1.5)
        assert d.first.params["eta"] == pytest.approx(1.0 / 3.0)

    def test_loss_then_amp_kind_check(self):
        with pytest.raises(ChannelKindError):
            chn.decompose_loss_then_amp(chn.additive_noise(0.5))

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.01, 1.0), st.floats(0.0, 5.0))
    def test_loss_then_amp_recomposes(self, eta, nb):
        ch = chn.thermal(eta, nb)
        re = chn.decompose_loss_then_amp(ch).recompose()
        assert abs(re.tau - ch.tau) < 1e-12
        assert abs(re.nu - ch.nu) < 1e-12 * max(1.0, ch.nu)

    def test_amp_then_loss_thermal(self):
        eta, nb = 0.8, 0.5
        d = chn.decompose_amp_then_loss(chn.thermal(eta, nb))
        assert d.second.params["eta"] == pytest.approx(eta - (1 - eta) * nb)
        assert d.first.params["g"] > 1.0

    def test_amp_then_loss_additive(self):
        d = chn.decompose_amp_then_loss(chn.additive_noise(0.5))
        assert d.second.params["eta"] == pytest.approx(0.5)
        assert d.first.params["g"] == pytest.approx(2.0)

    def test_amp_then_loss_entanglement_breaking(self):
        with pytest.raises(InfeasibleBoundError):
            chn.decompose_amp_then_loss(chn.thermal(0.5, 2.0))  # nu=2.5 >= 1.5

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.1, 3.0), st.floats(0.0, 3.0))
    def test_amp_then_loss_recomposes(self, tau, nu_frac):
        # draw a valid non-EB channel: nu in [|1-tau|, tau+1)
        lo, hi = abs(1.0 - tau), tau + 1.0
        nu = lo + nu_frac / 3.0 * (hi - lo) * 0.999
        ch = chn.raw_channel(tau, nu)
        if chn.is_entanglement_breaking(ch):
            return
        re = chn.decompose_amp_then_loss(ch).recompose()
        assert abs(re.tau - ch.tau) < 1e-12 * max(1.0, tau)
        assert abs(re.nu - ch.nu) < 1e-12 * max(1.0, ch.nu)


class TestEpsilons:
    def test_eps_degradable_zero_noise(self):
        assert chn.epsilon_degradable(chn.thermal(0.75, 0.0)).epsilon == 0.0

    def test_eps_degradable_eta_one(self):
        assert chn.epsilon_degradable(chn.thermal(1.0, 2.0)).epsilon == pytest.approx(0.0, abs=1e-12)

    def test_eps_degradable_frozen_value(self):
        rep = chn.epsilon_degradable(chn.thermal(0.75, 0.5))
        assert rep.epsilon == pytest.approx(EPS_DEG_075_05, abs=1e-14)
        assert rep.lower is None

    def test_eps_degradable_matches_fidelity_route(self):
        eta, nb = 0.75, 0.5
        tms = gc.tms_state(nb)
        oq, op = chn.noisy_tms_qblocks(nb, eta)
        cov = np.zeros((4, 4))
        cov[:2, :2] = oq
        cov[2:, 2:] = op
        fid = gc.two_mode_fidelity(tms, gc.GaussianState(2, np.zeros(4), cov))
        assert chn.epsilon_degradable(chn.thermal(eta, nb)).epsilon == \
            pytest.approx(np.sqrt(1 - fid), abs=1e-10)

    def test_eps_degradable_domain(self):
        with pytest.raises(DomainError):
            chn.epsilon_degradable(chn.thermal(0.4, 0.5))

    def test_eps_degradable_monotone_in_nb(self):
        for eta in (0.6, 0.8, 0.95):
            eps = [chn.epsilon_degradable(chn.thermal(eta, nb)).epsilon
                   for nb in np.linspace(0.0, 4.0, 30)]
            assert all(a <= b + 1e-12 for a, b in zip(eps, eps[1:]))
            assert eps[0] == 0.0

    def test_eps_close_degradable(self):
        rep = chn.epsilon_close_degradable(0.0)
        assert (rep.epsilon, rep.lower) == (0.0, 0.0)
        assert chn.epsilon_close_degradable(1.0).epsilon == pytest.approx(0.5)
        assert chn.epsilon_close_degradable(3.0).lower == pytest.approx(0.5)


class TestDegradingSimulation:
    def test_zero_noise_reduces_to_pure_loss(self):
        q = np.array([[2.0, 0.5], [0.5, 3.0]])
        A, B = chn.degrading_simulation_check(0.8, 0.0, q)
        assert np.max(np.abs(A - B)) < 1e-12
        # with nb = 0 both environments are vacuum
        assert A[2, 2] == pytest.approx(1.0)
        assert A[1, 2] == pytest.approx(0.0)

    def test_matches_explicit_closed_form(self):
        a, c, b = 3.0, 1.2, 2.0
        eta, nb = 0.75, 0.5
        A, B = chn.degrading_simulation_check(eta, nb, np.array([[a, c], [c, b]]))
        want = np.array([
            [a, c * np.sqrt(1 - eta), 0.0],
            [c * np.sqrt(1 - eta), b + eta * (1 - b + 2 * nb),
             2 * np.sqrt(nb * (1 + nb) * (2 - 1 / eta))],
            [0.0, 2 * np.sqrt(nb * (1 + nb) * (2 - 1 / eta)), 2 * nb + 1],
        ])
        assert np.max(np.abs(A - want)) < 1e-12
        assert np.max(np.abs(B - want)) < 1e-12

    def test_half_transmissivity_kills_offdiagonal(self):
        q = gc.tms_qblocks(1.0)[0]
        A, B = chn.degrading_simulation_check(0.5, 0.7, q)
        assert A[1, 2] == pytest.approx(0.0, abs=1e-12)
        assert B[1, 2] == pytest.approx(0.0, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.5, 1.0), st.floats(0.0, 3.0),
           st.floats(0.0, np.pi), st.floats(0.0, 5.0), st.floats(0.0, 5.0))
    def test_routes_agree(self, eta, nb, th, d1, d2):
        R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
        q = R @ np.diag([1.0 + d1, 1.0 + d2]) @ R.T
        A, B = chn.degrading_simulation_check(eta, nb, q)
        assert np.max(np.abs(A - B)) < 1e-10

    @settings(max_examples=100, deadline=None)
    @given(st.floats(1.000001, 3.0), st.floats(0.0, 3.0), st.floats(0.0, 5.0))
    def test_amp_routes_agree(self, g, nb, d1):
        q = np.diag([1.0 + d1, 1.5])
        A, B = chn.degrading_simulation_check_amp(g, nb, q)
        assert np.max(np.abs(A - B)) < 1e-10

    def test_p_block_route_carries_sign_flips(self):
        # momentum blocks of both routes agree and equal the q-block answer
        # with the documented off-diagonal sign flips
        q = np.array([[2.5, 0.8], [0.8, 1.7]])
        ch = chn.thermal(0.8, 0.6)
        Vd, Vs = chn._deg_sim_routes(ch, q, chn._flip_offdiag(q))
        assert np.max(np.abs(Vd - Vs)) < 1e-10
        qblk, pblk = Vd[:3, :3], Vd[3:, 3:]
        signs = np.sign(qblk * pblk)
        offdiag = ~np.eye(3, dtype=bool) & (np.abs(qblk) > 1e-12)
        assert np.all(signs[offdiag] == -1.0)
        assert np.allclose(np.abs(pblk), np.abs(qblk), atol=1e-12)

    def test_invalid_block_rejected(self):
        with pytest.raises(InvalidStateError):
            chn.degrading_simulation_check(0.8, 0.5, np.array([[1.0, 2.0], [0.0, 1.0]]))
        with pytest.raises(InvalidStateError):
            chn.degrading_simulation_check(0.8, 0.5, np.array([[1.0, 2.0], [2.0, -1.0]]))
