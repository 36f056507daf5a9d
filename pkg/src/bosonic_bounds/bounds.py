"""Energy-constrained quantum and private capacity bounds.

All closed-form bounds for thermal, amplifier, and additive-noise channels,
the shared continuity penalty of the approximate-degradability bounds, the
coherent-information lower bounds, the displaced-thermal private lower
bound, unconstrained limits, and comparison bounds from prior work.

Formulas are evaluated in natural log internally and converted to bits
once; the D^2 discriminants are computed in factored form and the g
arguments in rationalized form, so the large-energy regime is free of
catastrophic cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import channels as chn
from . import gaussian_core as gc
from .errors import ChannelKindError, DomainError, InfeasibleBoundError
from .gaussian_core import LN2
from .optimize import maximize_scalar, minimize_scalar

__all__ = [
    "PenaltyParams", "BoundResult", "penalty",
    "q_lower_thermal", "q_lower_amp", "q_u1", "q_u2", "q_u3", "q_u4",
    "q_u1_unconstrained", "q_u4_unconstrained",
    "p_bounds", "p_lower_displaced", "comparison_bounds",
    "gap_qu1_ql", "gaussian_c_distance", "coherent_info_thermal",
]

_gn = gc._g_nats  # nats; callers guarantee nonnegative arguments


# ---------------------------------------------------------------------------
# Continuity penalty
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PenaltyParams:
    """Parameters of the approximate-degradability continuity penalty.

    k selects the bound family: 1 for the quantum eps-degradable bound,
    2 for quantum eps-close-degradable, 3 and 4 for the private versions.
    """

    epsilon: float
    epsilon_prime: float
    w_prime: float
    k: int = 1

    def __post_init__(self):
        if not 0.0 <= self.epsilon < 1.0:
            raise DomainError("epsilon must lie in [0, 1)")
        if not self.epsilon < self.epsilon_prime <= 1.0:
            raise DomainError("epsilon_prime must lie in (epsilon, 1]")
        if self.w_prime < 0.0:
            raise DomainError("output energy cap W' must be >= 0")
        if self.k not in (1, 2, 3, 4):
            raise DomainError("multiplier k must be one of 1, 2, 3, 4")

    @property
    def delta(self) -> float:
        return (self.epsilon_prime - self.epsilon) / (1.0 + self.epsilon_prime)


def _penalty_eval(eps: float, eps_prime, w_prime: float, k: int):
    """Vectorized penalty; +inf wherever delta <= 0."""
    e = np.asarray(eps_prime, dtype=float)
    scalar = e.ndim == 0
    e = np.atleast_1d(e)
    delta = (e - eps) / (1.0 + e)
    out = np.full(e.shape, np.inf)
    ok = delta > 0.0
    d = delta[ok]
    eo = e[ok]
    out[ok] = k * ((2.0 * eo + 4.0 * d) * _gn(w_prime / d)
                   + _gn(eo)
                   + 2.0 * (-(d * np.log(d) + (1.0 - d) * np.log1p(-d)))) / LN2
    return float(out[0]) if scalar else out


def penalty(p: PenaltyParams) -> float:
    """k [ (2 eps' + 4 delta) g(W'/delta) + g(eps') + 2 h2(delta) ] in bits,
    with delta = (eps' - eps)/(1 + eps'); +inf if delta degenerates."""
    return _penalty_eval(p.epsilon, p.epsilon_prime, p.w_prime, p.k)


def _min_penalty(eps: float, w_prime: float, k: int):
    """Minimize the penalty over eps' in (eps, 1]; (value, argmin)."""
    res = minimize_scalar(lambda x: _penalty_eval(eps, x, w_prime, k),
                          eps, 1.0, lo_open=True, tol=1e-9)
    return res.value, res.arg


# ---------------------------------------------------------------------------
# Result type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundResult:
    """A bound value in bits with its provenance.

    `value` carries the max{0, raw} clamp exactly for the bound kinds whose
    statements clamp (QU1, QU4, QL); all other kinds report raw.
    """

    kind: str
    value: float
    raw: float
    argopt: float | None = None
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value_bits": self.value,
            "raw_bits": self.raw,
            "arg_opt": self.argopt,
            "params": dict(self.params),
        }


def _clamped(kind, raw, params, argopt=None):
    return BoundResult(kind, max(0.0, float(raw)), float(raw), argopt, params)


def _unclamped(kind, raw, params, argopt=None):
    return BoundResult(kind, float(raw), float(raw), argopt, params)


def _check_point(nb, ns):
    if nb < 0.0:
        raise DomainError("environment photon number must be >= 0")
    if ns < 0.0:
        raise DomainError("input mean photon number must be >= 0")


# ---------------------------------------------------------------------------
# Raw closed forms (array-aware, bits)
# ---------------------------------------------------------------------------

def _ql_thermal_raw(eta, nb, ns):
    eta = np.asarray(eta, dtype=float)
    nb = np.asarray(nb, dtype=float)
    ns = np.asarray(ns, dtype=float)
    y = (1.0 - eta) * nb
    d2 = ((1.0 - eta) * ns) ** 2 + 2.0 * ns * ((1.0 + eta) * y + (1.0 - eta)) + (y + 1.0) ** 2
    dd = np.sqrt(d2)
    u = y + 1.0 - (1.0 - eta) * ns
    # rationalized forms avoid the D - (...) cancellation at large ns
    arg_p = np.where(u > 0.0,
                     2.0 * ns * (y + 1.0 - eta) / (dd + np.abs(u)),
                     (dd - u) / 2.0)
    w = (1.0 - eta) * ns + 1.0 - y
    arg_m = np.where(w > 0.0,
                     2.0 * y * (ns + 1.0) / (dd + np.abs(w)),
                     (dd - w) / 2.0)
    val = (_gn(eta * ns + y) - _gn(arg_p) - _gn(arg_m)) / LN2
    return val if val.shape else float(val)


def _ql_amp_raw(g, nb, ns):
    g = np.asarray(g, dtype=float)
    nb = np.asarray(nb, dtype=float)
    ns = np.asarray(ns, dtype=float)
    z = (g - 1.0) * (nb + 1.0)
    d2 = ((g - 1.0) * ns) ** 2 + 2.0 * ns * (g - 1.0) * ((nb + 1.0) * (g + 1.0) - 1.0) + (z + 1.0) ** 2
    dd = np.sqrt(d2)
    arg_p = (dd + (g - 1.0) * (ns + nb + 1.0) - 1.0) / 2.0  # >= 0 since D >= z+1
    arg_m = 2.0 * ns * (g - 1.0) * nb / (dd + (g - 1.0) * ns + z + 1.0)
    val = (_gn(g * ns + z) - _gn(arg_p) - _gn(arg_m)) / LN2
    return val if val.shape else float(val)


def _qu1_thermal_raw(eta, nb, ns):
    eta = np.asarray(eta, dtype=float)
    etp = eta / ((1.0 - eta) * np.asarray(nb, dtype=float) + 1.0)
    ns = np.asarray(ns, dtype=float)
    val = (_gn(etp * ns) - _gn((1.0 - etp) * ns)) / LN2
    return val if val.shape else float(val)


def _qu1_amp_raw(g, nb, ns):
    g = np.asarray(g, dtype=float)
    gp = g / (1.0 - np.asarray(nb, dtype=float) * (g - 1.0))
    ns = np.asarray(ns, dtype=float)
    val = (_gn(gp * ns + gp - 1.0) - _gn((gp - 1.0) * (ns + 1.0))) / LN2
    return val if val.shape else float(val)


def _qu1_additive_raw(nbar, ns):
    nbar = np.asarray(nbar, dtype=float)
    ns = np.asarray(ns, dtype=float)
    val = (_gn(ns / (nbar + 1.0)) - _gn(nbar * ns / (nbar + 1.0))) / LN2
    return val if val.shape else float(val)


def _qu4_thermal_raw(eta, nb, ns):
    eta = np.asarray(eta, dtype=float)
    nb = np.asarray(nb, dtype=float)
    ns = np.asarray(ns, dtype=float)
    etp = eta - (1.0 - eta) * nb
    out = eta * ns + (1.0 - eta) * nb
    val = (_gn(out) - _gn((1.0 / etp - 1.0) * out)) / LN2
    return val if val.shape else float(val)


def _qu4_additive_raw(nbar, ns):
    nbar = np.asarray(nbar, dtype=float)
    ns = np.asarray(ns, dtype=float)
    val = (_gn(ns + nbar) - _gn(nbar * (ns + nbar) / (1.0 - nbar))) / LN2
    return val if val.shape else float(val)


def _ud_thermal_raw(eta, nb, ns):
    """Conditional entropy of degradation at thermal input, thermal channel."""
    eta = np.asarray(eta, dtype=float)
    nb = np.asarray(nb, dtype=float)
    ns = np.asarray(ns, dtype=float)
    rho = 4.0 * nb * (nb + 1.0) * (2.0 * eta - 1.0) / eta
    th = eta * nb + (1.0 - eta) * ns
    inner = np.sqrt(np.maximum((1.0 + nb + th) ** 2 - rho, 0.0))
    common = (1.0 + 2.0 * nb) ** 2 - 2.0 * rho + (1.0 + 2.0 * th) ** 2
    zp = 0.5 * (np.sqrt(np.maximum((common + 4.0 * (th - nb) * inner) / 2.0, 1.0)) - 1.0)
    zm = 0.5 * (np.sqrt(np.maximum((common - 4.0 * (th - nb) * inner) / 2.0, 1.0)) - 1.0)
    val = (_gn(eta * ns + (1.0 - eta) * nb) - _gn(zp) - _gn(zm)) / LN2
    return val if val.shape else float(val)


def _ud_amp_raw(g, nb, ns):
    """Amplifier analogue of :func:`_ud_thermal_raw`.

    The leading term is the channel output entropy g(G ns + (G-1)(nb+1));
    it matches the conditional-entropy oracle through the degrading
    dilation, which the g(G ns + (G-1) nb) variant does not.
    """
    g = np.asarray(g, dtype=float)
    nb = np.asarray(nb, dtype=float)
    ns = np.asarray(ns, dtype=float)
    rho = 4.0 * nb * (nb + 1.0) * (2.0 * g - 1.0) / g
    th = g * (1.0 + nb) + (g - 1.0) * ns
    inner = np.sqrt(np.maximum((nb + th) ** 2 - rho, 0.0))
    common = (1.0 + 2.0 * nb) ** 2 - 2.0 * rho + (2.0 * th - 1.0) ** 2
    zp = 0.5 * (np.sqrt(np.maximum((common + 4.0 * (th - nb - 1.0) * inner) / 2.0, 1.0)) - 1.0)
    zm = 0.5 * (np.sqrt(np.maximum((common - 4.0 * (th - nb - 1.0) * inner) / 2.0, 1.0)) - 1.0)
    val = (_gn(g * ns + (g - 1.0) * (nb + 1.0)) - _gn(zp) - _gn(zm)) / LN2
    return val if val.shape else float(val)


# ---------------------------------------------------------------------------
# Lower bounds
# ---------------------------------------------------------------------------

def q_lower_thermal(eta: float, nb: float, ns: float) -> BoundResult:
    """Coherent-information lower bound Q_L of the thermal channel at
    thermal input with mean photon number ns."""
    if not 0.0 < eta <= 1.0:
        raise DomainError("thermal channel requires eta in (0, 1]")
    _check_point(nb, ns)
    raw = _ql_thermal_raw(eta, nb, ns)
    return _clamped("QL", raw, {"channel": "thermal", "eta": eta, "nb": nb, "ns": ns})


def q_lower_amp(g: float, nb: float, ns: float) -> BoundResult:
    """Coherent-information lower bound of the amplifier channel."""
    if g <= 1.0:
        raise DomainError("q_lower_amp requires gain > 1")
    _check_point(nb, ns)
    raw = _ql_amp_raw(g, nb, ns)
    return _clamped("QL", raw, {"channel": "amplifier", "g": g, "nb": nb, "ns": ns})


def coherent_info_thermal(eta: float, nb: float, ns: float) -> float:
    """Raw (unclamped) thermal coherent information; the P_L building block."""
    return _ql_thermal_raw(eta, nb, ns)


# ---------------------------------------------------------------------------
# Data-processing bounds
# ---------------------------------------------------------------------------

def _amp_not_eb(g, nb):
    if (g - 1.0) * nb >= 1.0:
        raise InfeasibleBoundError(
            f"(G-1)*NB >= 1: amplifier(g={g:.6g}, nb={nb:.6g}) is entanglement-breaking")


def _additive_window(nbar):
    if not 0.0 < nbar < 1.0:
        raise InfeasibleBoundError(
            f"nbar >= 1: additive-noise channel with nbar={nbar:.6g} is "
            "entanglement-breaking (bound needs nbar in (0,1))")


def _thermal_half(eta, what):
    if eta < 0.5:
        raise InfeasibleBoundError(f"eta < 1/2: {what} needs eta in [1/2, 1]")


def q_u1(ch: chn.PhaseInsensitiveChannel, ns: float) -> BoundResult:
    """Data-processing bound from the loss-then-amplifier decomposition."""
    if ns < 0.0:
        raise DomainError("input mean photon number must be >= 0")
    p = dict(ch.params)
    p["channel"] = ch.kind
    p["ns"] = ns
    if ch.kind == "thermal":
        _thermal_half(p["eta"], "QU1")
        raw = _qu1_thermal_raw(p["eta"], p["nb"], ns)
    elif ch.kind == "amplifier":
        _amp_not_eb(p["g"], p["nb"])
        raw = _qu1_amp_raw(p["g"], p["nb"], ns)
    elif ch.kind == "additive":
        _additive_window(p["nbar"])
        raw = _qu1_additive_raw(p["nbar"], ns)
    else:
        raise ChannelKindError("QU1 needs a thermal, amplifier, or additive channel")
    return _clamped("QU1", raw, p)


def q_u1_unconstrained(ch: chn.PhaseInsensitiveChannel) -> float:
    """Infinite-energy limit of QU1 (raw, unclamped)."""
    if ch.kind == "thermal":
        eta, nb = ch.params["eta"], ch.params["nb"]
        _thermal_half(eta, "QU1")
        if eta == 1.0:
            return np.inf
        return float(np.log2(eta / (1.0 - eta)) - np.log2(nb + 1.0))
    if ch.kind == "amplifier":
        g, nb = ch.params["g"], ch.params["nb"]
        _amp_not_eb(g, nb)
        if g == 1.0:
            return np.inf
        return float(np.log2(g / (g - 1.0)) - np.log2(nb + 1.0))
    if ch.kind == "additive":
        _additive_window(ch.params["nbar"])
        return float(np.log2(1.0 / ch.params["nbar"]))
    raise ChannelKindError("QU1 needs a thermal, amplifier, or additive channel")


def q_u4(ch: chn.PhaseInsensitiveChannel, ns: float) -> BoundResult:
    """Data-processing bound from the amplifier-then-loss decomposition."""
    if ns < 0.0:
        raise DomainError("input mean photon number must be >= 0")
    p = dict(ch.params)
    p["channel"] = ch.kind
    p["ns"] = ns
    if ch.kind == "thermal":
        eta, nb = p["eta"], p["nb"]
        if eta <= (1.0 - eta) * nb:
            raise InfeasibleBoundError(
                f"eta <= (1-eta)*NB: amp-then-loss decomposition infeasible "
                f"at eta={eta:.6g}, nb={nb:.6g}")
        raw = _qu4_thermal_raw(eta, nb, ns)
    elif ch.kind == "additive":
        _additive_window(p["nbar"])
        raw = _qu4_additive_raw(p["nbar"], ns)
    else:
        raise ChannelKindError("QU4 is defined for thermal and additive channels")
    return _clamped("QU4", raw, p)


def q_u4_unconstrained(ch: chn.PhaseInsensitiveChannel) -> float:
    """Infinite-energy limit of QU4 (raw, unclamped)."""
    if ch.kind == "thermal":
        eta, nb = ch.params["eta"], ch.params["nb"]
        if eta <= (1.0 - eta) * nb:
            raise InfeasibleBoundError("eta <= (1-eta)*NB")
        if eta == 1.0:
            return np.inf
        return float(np.log2((eta - (1.0 - eta) * nb) / ((1.0 - eta) * (nb + 1.0))))
    if ch.kind == "additive":
        _additive_window(ch.params["nbar"])
        nbar = ch.params["nbar"]
        return float(np.log2((1.0 - nbar) / nbar))
    raise ChannelKindError("QU4 is defined for thermal and additive channels")


# ---------------------------------------------------------------------------
# Approximate-degradability bounds
# ---------------------------------------------------------------------------

def _deg_base_and_caps(ch, ns):
    """(U_D term, W', channel params) for the eps-degradable family."""
    p = dict(ch.params)
    p["channel"] = ch.kind
    p["ns"] = ns
    if ch.kind == "thermal":
        eta, nb = p["eta"], p["nb"]
        _thermal_half(eta, "the degrading construction")
        return _ud_thermal_raw(eta, nb, ns), (1.0 - eta) * ns + (1.0 + eta) * nb, p
    if ch.kind == "amplifier":
        g, nb = p["g"], p["nb"]
        if g <= 1.0:
            raise DomainError("amplifier eps-degradable bound requires gain > 1")
        _amp_not_eb(g, nb)
        return _ud_amp_raw(g, nb, ns), (g - 1.0) * ns + (1.0 + g) * nb, p
    raise ChannelKindError("eps-degradable bounds need a thermal or amplifier channel")


def _close_base_and_caps(ch, ns):
    """(degradable-reference coherent info, W', params) for eps-close bounds."""
    p = dict(ch.params)
    p["channel"] = ch.kind
    p["ns"] = ns
    if ch.kind == "thermal":
        eta, nb = p["eta"], p["nb"]
        _thermal_half(eta, "QU3")
        base = (_gn(eta * ns) - _gn((1.0 - eta) * ns)) / LN2
        return float(base), eta * ns + (1.0 - eta) * nb, p
    if ch.kind == "amplifier":
        g, nb = p["g"], p["nb"]
        _amp_not_eb(g, nb)
        base = (_gn(g * ns + g - 1.0) - _gn((g - 1.0) * (ns + 1.0))) / LN2
        return float(base), g * ns + (g - 1.0) * nb, p
    raise ChannelKindError("eps-close-degradable bounds need a thermal or amplifier channel")


def _with_penalty(kind, base, eps, w_prime, k, eps_prime, params):
    """Assemble base + penalty, optimizing eps' when it is not supplied."""
    params = dict(params)
    params["eps"] = eps
    params["w_prime"] = w_prime
    if eps_prime is not None:
        pp = PenaltyParams(eps, float(eps_prime), w_prime, k)
        params["eps_prime"] = pp.epsilon_prime
        params["delta"] = pp.delta
        return _unclamped(kind, base + penalty(pp), params, argopt=pp.epsilon_prime)
    if eps == 0.0:
        # exactly degradable reference: the penalty infimum over eps' is 0,
        # unattained; report the limiting penalty-free value
        return _unclamped(kind, base, params, argopt=None)
    pen, arg = _min_penalty(eps, w_prime, k)
    params["eps_prime"] = arg
    params["delta"] = (arg - eps) / (1.0 + arg)
    return _unclamped(kind, base + pen, params, argopt=arg)


def q_u2(ch: chn.PhaseInsensitiveChannel, ns: float, eps_prime: float = None) -> BoundResult:
    """eps-degradable bound: U_D plus the k=1 continuity penalty, minimized
    over eps' in (eps, 1] unless eps_prime is supplied."""
    if ns < 0.0:
        raise DomainError("input mean photon number must be >= 0")
    base, w_prime, p = _deg_base_and_caps(ch, ns)
    eps = chn.epsilon_degradable(ch).epsilon
    return _with_penalty("QU2", base, eps, w_prime, 1, eps_prime, p)


def q_u3(ch: chn.PhaseInsensitiveChannel, ns: float, eps_prime: float = None) -> BoundResult:
    """eps-close-degradable bound: the degradable reference's coherent
    information plus the k=2 penalty with eps = nb/(nb+1)."""
    if ns < 0.0:
        raise DomainError("input mean photon number must be >= 0")
    base, w_prime, p = _close_base_and_caps(ch, ns)
    eps = chn.epsilon_close_degradable(p["nb"]).epsilon
    return _with_penalty("QU3", base, eps, w_prime, 2, eps_prime, p)


def p_bounds(ch: chn.PhaseInsensitiveChannel, ns: float, which: str,
             eps_prime: float = None) -> BoundResult:
    """Private-capacity upper bounds PU1, PU2, PU3.

    PU1 shares the QU1 closed form; PU2 is U_D with the k=3 penalty; PU3 is
    the degradable reference with the k=4 penalty.
    """
    if which == "PU1":
        r = q_u1(ch, ns)
        return BoundResult("PU1", r.value, r.raw, r.argopt, r.params)
    if which == "PU2":
        if ns < 0.0:
            raise DomainError("input mean photon number must be >= 0")
        base, w_prime, p = _deg_base_and_caps(ch, ns)
        eps = chn.epsilon_degradable(ch).epsilon
        return _with_penalty("PU2", base, eps, w_prime, 3, eps_prime, p)
    if which == "PU3":
        if ns < 0.0:
            raise DomainError("input mean photon number must be >= 0")
        base, w_prime, p = _close_base_and_caps(ch, ns)
        eps = chn.epsilon_close_degradable(p["nb"]).epsilon
        return _with_penalty("PU3", base, eps, w_prime, 4, eps_prime, p)
    raise DomainError(f"unknown private bound {which!r}")


# ---------------------------------------------------------------------------
# Private lower bound (displaced thermal ensemble)
# ---------------------------------------------------------------------------

def _pl_seed_grid(ns: float) -> np.ndarray:
    # the coherent-information dip sits at small absolute photon numbers, so
    # seed logarithmically down to ~1e-12 in addition to the endpoints
    if ns <= 0.0:
        return np.array([0.0])
    return np.concatenate(([0.0], np.geomspace(min(1e-12, ns), ns, 63)))


def p_lower_displaced(eta: float, nb: float, ns: float) -> BoundResult:
    """Private-rate lower bound from displaced thermal inputs:
    max over n2 in [0, ns] of I_c(ns) - I_c(n2); argopt records n2*."""
    if not 0.0 < eta <= 1.0:
        raise DomainError("thermal channel requires eta in (0, 1]")
    _check_point(nb, ns)
    icns = _ql_thermal_raw(eta, nb, ns)
    if ns == 0.0:
        return _unclamped("PL", 0.0, {"channel": "thermal", "eta": eta, "nb": nb, "ns": ns},
                          argopt=0.0)
    res = maximize_scalar(lambda x: icns - _ql_thermal_raw(eta, nb, x),
                          0.0, ns, tol=1e-9, seed_grid=_pl_seed_grid(ns))
    return _unclamped("PL", res.value,
                      {"channel": "thermal", "eta": eta, "nb": nb, "ns": ns},
                      argopt=res.arg)


# ---------------------------------------------------------------------------
# Comparison bounds and derived quantities
# ---------------------------------------------------------------------------

def comparison_bounds(ch: chn.PhaseInsensitiveChannel, which: str) -> float:
    """Unconstrained comparison bounds from prior work, in bits.

    PLOB_* values are reported as stated; RMG carries its max{0, .} clamp.
    """
    if which == "PLOB_thermal":
        if ch.kind != "thermal":
            raise ChannelKindError("PLOB_thermal needs a thermal channel")
        eta, nb = ch.params["eta"], ch.params["nb"]
        if eta == 1.0:
            return np.inf
        return float(-np.log2((1.0 - eta) * eta ** nb) - gc.g_entropy(nb))
    if which == "PLOB_amp":
        if ch.kind != "amplifier":
            raise ChannelKindError("PLOB_amp needs an amplifier channel")
        g, nb = ch.params["g"], ch.params["nb"]
        if g == 1.0:
            return np.inf
        return float(np.log2(g ** (nb + 1.0) / (g - 1.0)) - gc.g_entropy(nb))
    if which == "PLOB_addnoise":
        if ch.kind != "additive":
            raise ChannelKindError("PLOB_addnoise needs an additive-noise channel")
        nbar = ch.params["nbar"]
        _additive_window(nbar)
        return float((nbar - 1.0) / LN2 + np.log2(1.0 / nbar))
    if which == "RMG":
        if ch.kind != "thermal":
            raise ChannelKindError("RMG needs a thermal channel")
        eta, nb = ch.params["eta"], ch.params["nb"]
        if eta <= (1.0 - eta) * nb:
            raise InfeasibleBoundError("eta <= (1-eta)*NB: RMG bound infeasible")
        if eta == 1.0:
            return np.inf
        return max(0.0, float(np.log2((eta - (1.0 - eta) * nb) / ((1.0 - eta) * (nb + 1.0)))))
    raise DomainError(f"unknown comparison bound {which!r}")


def gap_qu1_ql(eta: float, nb: float, ns: float) -> float:
    """QU1 - QL for the thermal channel (raw values, both unclamped);
    lies in [0, 1/ln 2] for eta in [1/2, 1]."""
    _thermal_half(eta, "the gap law")
    if eta > 1.0:
        raise DomainError("eta must lie in [1/2, 1]")
    _check_point(nb, ns)
    return float(_qu1_thermal_raw(eta, nb, ns) - _ql_thermal_raw(eta, nb, ns))


def gaussian_c_distance(a: chn.PhaseInsensitiveChannel,
                        b: chn.PhaseInsensitiveChannel, ns: float) -> float:
    """Gaussian energy-constrained channel C-distance sqrt(1 - F) at the
    two-mode squeezed vacuum input saturating the energy constraint.

    Both channels must share tau (the same X matrix), the hypothesis under
    which the TMS input is optimal among Gaussian states.
    """
    if abs(a.tau - b.tau) > 1e-12:
        raise DomainError("gaussian_c_distance requires channels with equal tau")
    if ns < 0.0:
        raise DomainError("input mean photon number must be >= 0")
    probe = gc.tms_state(ns)
    out_a = a.apply(probe, modes=(1,))
    out_b = b.apply(probe, modes=(1,))
    fid = gc.two_mode_fidelity(out_a, out_b)
    return float(np.sqrt(max(1.0 - fid, 0.0)))
