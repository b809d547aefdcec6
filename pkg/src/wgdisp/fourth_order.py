"""Brute-force fourth-order perturbation-theory oracle.

The pair energy is the fourth-order ground-state shift

    U = - sum over intermediate chains  N / (D1 D2 D3)

summed over the distinct time orderings of the four dipole-field
vertices (two per atom, each photon emitted at one atom and absorbed at
the other).  The orderings are generated programmatically: choose the
interleaving of the two atoms' vertices (6 ways) and the pairing of
atom-1 vertices with atom-2 vertices into photons (2 ways); within each
photon the earlier vertex is the emission.  That yields the full set of
12 diagrams with their energy denominators, four of which share the
dominant denominator

    D_a = (w_P + E_a)(E_1 + E_2)(w_Q + E_b).

Every diagram has the same numerator, a product over the two photons of

    V_X = (w_X / 2 eps) (d_ab . E_X(p_ab)) (d_em . E_X(p_em))* e^{i k (z_ab - z_em)}

integrated over the axial wavenumber of each photon.  Wavenumber
integrals are evaluated on the rotated contour around the dispersion
branch cut (k = i kappa, kappa = k_mn cosh psi), where the integrand is
real, decaying and free of oscillatory-regularization ambiguities.
Denominators mixing the two photon frequencies are decoupled with a
Schwinger parameter, 1/M = integral dtau exp(-M tau), leaving smooth
per-photon integrals on a Gauss-Laguerre tau grid.

Natural units hbar = c = 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .energy import PairConfiguration, dispersion_energy, quadratic_contraction
from .errors import InputError
from .waveguide import TE, ModeIndex, cutoff_wavenumber, transverse_profile
from .coupling import tm_profile_factor

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Diagram:
    """One time ordering: atom sequence, photon pairing, denominators.

    Denominators are coefficient tuples (c_wP, c_wQ, c_E1, c_E2); the
    first and third are always a single photon frequency plus a single
    transition energy.
    """

    atom_sequence: tuple[int, int, int, int]
    pairing: str
    denominators: tuple[tuple[int, int, int, int], ...]
    photon_atoms: dict  # photon -> (emitter_atom, absorber_atom)

    @property
    def middle(self) -> tuple[int, int, int, int]:
        return self.denominators[1]

    @property
    def is_dominant(self) -> bool:
        return self.middle == (0, 0, 1, 1)


def enumerate_diagrams() -> list[Diagram]:
    """All 12 fourth-order time orderings with their denominators."""
    diagrams = []
    patterns = sorted(set(itertools.permutations((1, 1, 2, 2))))
    for pattern in patterns:
        a1 = [i for i, atom in enumerate(pattern) if atom == 1]
        a2 = [i for i, atom in enumerate(pattern) if atom == 2]
        for pairing, pairs in (("first-first", ((a1[0], a2[0]), (a1[1], a2[1]))),
                               ("first-second", ((a1[0], a2[1]), (a1[1], a2[0])))):
            photon_of_vertex = {}
            photon_atoms = {}
            for name, pair in zip("PQ", pairs):
                emit_v, absorb_v = min(pair), max(pair)
                photon_of_vertex[emit_v] = (name, "emit")
                photon_of_vertex[absorb_v] = (name, "absorb")
                photon_atoms[name] = (pattern[emit_v], pattern[absorb_v])
            excited = {1: 0, 2: 0}
            photons = {"P": 0, "Q": 0}
            denoms = []
            for v in range(4):
                atom = pattern[v]
                excited[atom] ^= 1
                name, role = photon_of_vertex[v]
                photons[name] += 1 if role == "emit" else -1
                if v < 3:
                    denoms.append((photons["P"], photons["Q"],
                                   excited[1], excited[2]))
            diagrams.append(Diagram(pattern, pairing, tuple(denoms),
                                    photon_atoms))
    assert len(diagrams) == 12
    assert sum(d.is_dominant for d in diagrams) == 4
    return diagrams


# ---------------------------------------------------------------------------
# rotated-contour photon integrals
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _psi_grid(zeta: float, kmn: float, Ws: tuple[float, ...], tau: float):
    """Graded composite Gauss-Legendre mesh on [0, psi_max].

    The denominator factors 1/(W - i w) peak at the branch point with
    width W/k_mn in psi, and exp(i w tau) oscillates with local frequency
    k_mn cosh(psi) tau, so panel widths start at a fraction of the
    narrowest feature and grow geometrically, capped by the oscillation
    wavelength.
    """
    psi_max = math.acosh(1.0 + 46.0 / zeta)
    scale = min([w / kmn for w in Ws] + [1.0])
    edges = [0.0]
    width = max(scale / 8.0, psi_max * 1e-13)
    while edges[-1] < psi_max:
        local_freq = kmn * math.cosh(min(edges[-1], psi_max)) * tau
        cap = (math.pi / local_freq) if local_freq > 0 else math.inf
        step = min(width, max(cap, psi_max * 1e-13))
        edges.append(min(edges[-1] + step, psi_max))
        width *= 1.7
    e = np.asarray(edges)
    half = 0.5 * (e[1:] - e[:-1])
    mid = 0.5 * (e[1:] + e[:-1])
    psi = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return psi, w


def _denominator_factor(w: np.ndarray, Ws: tuple[float, ...],
                        tau: float) -> np.ndarray:
    """Re[exp(i w tau) / prod_r (W_r - i w)] on the rotated contour."""
    val = np.exp(1j * w * tau)
    for W in Ws:
        val = val / (W - 1j * w)
    return val.real


class _PhotonTable:
    """Cached rotated-contour integrals for one mode and denominator set."""

    def __init__(self, geom, mode: ModeIndex, z: float,
                 Ws: tuple[float, ...], taus: np.ndarray):
        self.mode = mode
        kmn = cutoff_wavenumber(geom, mode)
        zeta = kmn * z
        self.kmn = kmn
        self.is_te = mode.polarization == TE
        n_tau = taus.size
        self.r0 = np.zeros(n_tau)
        self.r1 = np.zeros(n_tau)
        self.r2 = np.zeros(n_tau)
        self.rh = np.zeros(n_tau)
        for it, tau in enumerate(taus):
            psi, wq = _psi_grid(zeta, kmn, Ws, tau)
            cosh = np.cosh(psi)
            w = kmn * np.sinh(psi)
            damp = np.exp(-zeta * cosh)
            den = _denominator_factor(w, Ws, tau)
            if self.is_te:
                self.rh[it] = -2.0 * kmn ** 2 * np.sum(
                    wq * np.sinh(psi) ** 2 * damp * den)
            else:
                base = wq * damp * den
                self.r0[it] = 2.0 * np.sum(base)
                self.r1[it] = 2.0 * np.sum(base * (kmn * cosh))
                self.r2[it] = 2.0 * np.sum(base * (kmn * cosh) ** 2)


def _w_tensors(geom, mode, p1, p2, epsilon, table: _PhotonTable,
               conventions) -> np.ndarray:
    """Per-tau 3x3 photon-exchange tensors (index i at p2, j at p1)."""
    n_tau = table.rh.size if table.is_te else table.r0.size
    out = np.zeros((n_tau, 3, 3))
    if table.is_te:
        e2 = transverse_profile(geom, mode, 0.0, p2,
                                conventions.normalization).real
        e1 = transverse_profile(geom, mode, 0.0, p1,
                                conventions.normalization).real
        out += table.rh[:, None, None] * np.outer(e2, e1)[None, :, :] \
            / (2.0 * epsilon)
        return out
    kmn = table.kmn
    pref = 2.0 / (epsilon * geom.area)
    t2 = np.array([tm_profile_factor(geom, mode, ax, p2) for ax in "xyz"])
    t1 = np.array([tm_profile_factor(geom, mode, ax, p1) for ax in "xyz"])
    for i in range(3):
        for j in range(3):
            prof = t2[i] * t1[j]
            if i == 2 and j == 2:
                out[:, i, j] = pref * kmn ** 2 * prof * table.r0
            elif i < 2 and j < 2:
                out[:, i, j] = -pref * prof * table.r2
            elif i < 2:  # transverse at p2, axial at p1
                out[:, i, j] = -pref * kmn * prof * table.r1
            else:        # axial at p2, transverse at p1
                out[:, i, j] = pref * kmn * prof * table.r1
    return out


def _gauss_laguerre(n: int):
    return np.polynomial.laguerre.laggauss(n)


def fourth_order_oracle(
    config: PairConfiguration,
    modes: list[ModeIndex],
    diagrams: str = "all",
    n_tau: int = 48,
    mode_cap: int = 8,
) -> float:
    """Full fourth-order energy restricted to an explicit mode set.

    ``diagrams="dominant"`` keeps only the four orderings with the small
    denominator; ``"all"`` sums every ordering.  The double mode sum is
    quadratic in ``len(modes)``, capped at ``mode_cap``.
    """
    if len(modes) == 0:
        raise InputError("oracle needs at least one mode")
    if len(modes) > mode_cap:
        raise InputError(f"oracle restricted to at most {mode_cap} modes, "
                         f"got {len(modes)}")
    if diagrams not in ("all", "dominant"):
        raise InputError(f"diagrams must be 'all' or 'dominant', got {diagrams!r}")
    if not (4 <= n_tau <= 170):
        # Gauss-Laguerre weights underflow past ~180 points.
        raise InputError(f"n_tau must lie in [4, 170], got {n_tau}")
    geom, eps = config.geom, config.epsilon
    diags = enumerate_diagrams()
    if diagrams == "dominant":
        diags = [d for d in diags if d.is_dominant]

    lag_x, lag_w = _gauss_laguerre(n_tau)

    total = 0.0
    for t1 in config.species1.transitions:
        for t2 in config.species2.transitions:
            E = {1: t1.energy, 2: t2.energy}
            p1m = config.species1.second_moment(t1)
            p2m = config.species2.second_moment(t2)
            tables: dict = {}

            def table_for(mode, Ws, taus, key):
                if key not in tables:
                    tables[key] = _PhotonTable(geom, mode, config.z, Ws, taus)
                return tables[key]

            for diag in diags:
                d1, mid, d3 = diag.denominators
                # Which photon each outer denominator rides on, and the
                # transition energy it carries.
                ws_by_photon = {"P": [], "Q": []}
                for den in (d1, d3):
                    photon = "P" if den[0] == 1 else "Q"
                    energy = E[1] if den[2] == 1 else E[2]
                    ws_by_photon[photon].append(energy)
                e_mid = mid[2] * E[1] + mid[3] * E[2]
                mixes = mid[0] == 1  # middle contains both photon frequencies

                for mp in modes:
                    for mq in modes:
                        k_p = cutoff_wavenumber(geom, mp)
                        k_q = cutoff_wavenumber(geom, mq)
                        if not mixes:
                            taus = np.array([0.0])
                            wp = _w_tensors(geom, mp, config.p1, config.p2, eps,
                                            table_for(mp, tuple(ws_by_photon["P"]),
                                                      taus, (mp, "P0", diag_key(ws_by_photon["P"]))),
                                            config.conventions)[0]
                            wq_t = _w_tensors(geom, mq, config.p1, config.p2, eps,
                                              table_for(mq, tuple(ws_by_photon["Q"]),
                                                        taus, (mq, "Q0", diag_key(ws_by_photon["Q"]))),
                                              config.conventions)[0]
                            val = quadratic_contraction(p2m, p1m, wp, wq_t) / e_mid
                        else:
                            lam = k_p + k_q + e_mid
                            taus = lag_x / lam
                            wp_t = _w_tensors(geom, mp, config.p1, config.p2, eps,
                                              table_for(mp, tuple(ws_by_photon["P"]),
                                                        taus, (mp, "tau", lam, diag_key(ws_by_photon["P"]))),
                                              config.conventions)
                            wq_t = _w_tensors(geom, mq, config.p1, config.p2, eps,
                                              table_for(mq, tuple(ws_by_photon["Q"]),
                                                        taus, (mq, "tau", lam, diag_key(ws_by_photon["Q"]))),
                                              config.conventions)
                            n_tau_vals = np.einsum("il,jq,tij,tlq->t",
                                                   p2m, p1m, wp_t, wq_t)
                            val = float(np.sum(
                                lag_w * np.exp(lag_x) * n_tau_vals
                                * np.exp(-e_mid * taus)) / lam)
                        total += val
    return -total / TWO_PI ** 2


def diag_key(ws: list[float]) -> tuple:
    return tuple(sorted(round(w, 14) for w in ws))


def weighted_reference_energy(config: PairConfiguration,
                              modes: list[ModeIndex]) -> float:
    """Pair energy from the frequency-weighted coupling integrals.

    Assembles the dominant-denominator energy formula using the
    quadrature couplings that keep the omega/(omega + E) weight, for
    comparison against the dominant-diagram restriction of the oracle.
    """
    from .coupling import QuadratureSpec, f_quadrature

    eps = config.epsilon
    pref = -1.0 / (TWO_PI * eps) ** 2
    spec = QuadratureSpec(rel_tol=1e-9)
    cache: dict[float, np.ndarray] = {}

    def tensor_for(energy: float) -> np.ndarray:
        if energy not in cache:
            f = np.zeros((3, 3))
            for mode in modes:
                for i_ax, i in enumerate("xyz"):
                    for j_ax, j in enumerate("xyz"):
                        f[i_ax, j_ax] += f_quadrature(
                            config.geom, mode, i + j, config.p1, config.p2,
                            config.z, energy=energy,
                            include_energy_factor=True, spec=spec,
                            normalization=config.conventions.normalization).value
            cache[energy] = f
        return cache[energy]

    total = 0.0
    for t1 in config.species1.transitions:
        for t2 in config.species2.transitions:
            f1 = tensor_for(t1.energy)
            f2 = tensor_for(t2.energy)
            p1m = config.species1.second_moment(t1)
            p2m = config.species2.second_moment(t2)
            total += pref / (t1.energy + t2.energy) \
                * quadratic_contraction(p2m, p1m, f2, f1)
    return total


def closed_form_reference_energy(config: PairConfiguration,
                                 modes: list[ModeIndex]) -> float:
    """Closed-form pair energy restricted to the same mode set."""
    return dispersion_energy(config, mode_list=modes).total
