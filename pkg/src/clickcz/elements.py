"""Linear-optical elements as creation-operator transformations.

Five elements act on the rail structure of a state:

* ``PR(theta)``  rotates the polarization basis of one mode,
* ``PS(phi)``    phases every photon in one mode,
* ``PDPS(phi)``  phases only vertically polarized photons in one mode,
* ``PBS``        transmits H and exchanges the V rails of two modes,
* ``BS``         50:50 polarization-preserving splitter on two modes.

The beam splitter uses the real (Hadamard) convention
``a → (a + b)/√2, b → (a − b)/√2``; the polarizing beam splitter reflects
with unit coefficient.  Both choices are pinned by the end-to-end
controlled-phase validation in the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .fock import FockVector, PureState

Matrix2 = tuple[tuple[complex, complex], tuple[complex, complex]]

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

KINDS = ("BS", "PBS", "PR", "PS", "PDPS")
_ARITY = {"BS": 2, "PBS": 2, "PR": 1, "PS": 1, "PDPS": 1}


@dataclass(frozen=True)
class ElementDescriptor:
    """One linear-optical element: kind, angle parameter, target modes."""

    kind: str
    targets: tuple[int, ...]
    theta: float | None = None
    phi: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown element kind {self.kind!r}")
        if len(self.targets) != _ARITY[self.kind]:
            raise ValueError(
                f"{self.kind} takes {_ARITY[self.kind]} target(s), got {self.targets}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"targets must be distinct, got {self.targets}")
        if self.kind == "PR" and self.theta is None:
            raise ValueError("PR requires theta")
        if self.kind in ("PS", "PDPS") and self.phi is None:
            raise ValueError(f"{self.kind} requires phi")

    def to_json_dict(self, *, one_based: bool = False) -> dict:
        shift = 1 if one_based else 0
        out: dict = {"kind": self.kind, "targets": [t + shift for t in self.targets]}
        if self.theta is not None:
            out["theta"] = self.theta
        if self.phi is not None:
            out["phi"] = self.phi
        return out

    @staticmethod
    def from_json_dict(data: Mapping, *, one_based: bool = False) -> "ElementDescriptor":
        shift = 1 if one_based else 0
        return ElementDescriptor(
            kind=str(data["kind"]),
            targets=tuple(int(t) - shift for t in data["targets"]),
            theta=float(data["theta"]) if "theta" in data else None,
            phi=float(data["phi"]) if "phi" in data else None,
        )


def pr(mode: int, theta: float) -> ElementDescriptor:
    return ElementDescriptor("PR", (mode,), theta=theta)


def ps(mode: int, phi: float) -> ElementDescriptor:
    return ElementDescriptor("PS", (mode,), phi=phi)


def pdps(mode: int, phi: float) -> ElementDescriptor:
    return ElementDescriptor("PDPS", (mode,), phi=phi)


def pbs(mode_a: int, mode_b: int) -> ElementDescriptor:
    return ElementDescriptor("PBS", (mode_a, mode_b))


def bs(mode_a: int, mode_b: int) -> ElementDescriptor:
    return ElementDescriptor("BS", (mode_a, mode_b))


def _check_mode(state: PureState, mode: int) -> None:
    if not 0 <= mode < state.modes:
        raise ValueError(f"mode {mode} out of range for {state.modes}-mode state")


def _phase_map(state: PureState, mode: int, phi: float, count_h: bool) -> PureState:
    """Multiply each term by exp(i*phi*n) with n the counted photons at ``mode``."""
    _check_mode(state, mode)
    amps: dict[FockVector, complex] = {}
    for vec, amp in state.items():
        n_h, n_v = vec[mode]
        n = n_h + n_v if count_h else n_v
        amps[vec] = amp * cmath.exp(1j * phi * n)
    return PureState(state.modes, amps, photon_cap=state.photon_cap)


def _two_rail_transform(
    state: PureState,
    rail_a: tuple[int, int],
    rail_b: tuple[int, int],
    u: Matrix2,
) -> PureState:
    """Apply a 2x2 creation-operator map to two rails.

    ``rail = (mode, pol)`` with pol 0 for H, 1 for V.  The image of rail a's
    creation operator is column 0 of ``u``; rail b's is column 1.  Expansion
    of the substituted monomials carries the bosonic factorial factors.
    """
    out: dict[FockVector, complex] = {}
    (ma, pa), (mb, pb) = rail_a, rail_b
    for vec, amp in state.items():
        n_a = vec[ma][pa]
        n_b = vec[mb][pb]
        if n_a == 0 and n_b == 0:
            out[vec] = out.get(vec, 0j) + amp
            continue
        base = amp / math.sqrt(math.factorial(n_a) * math.factorial(n_b))
        for i in range(n_a + 1):
            ca = math.comb(n_a, i) * u[0][0] ** i * u[1][0] ** (n_a - i)
            if ca == 0:
                continue
            for j in range(n_b + 1):
                cb = math.comb(n_b, j) * u[0][1] ** j * u[1][1] ** (n_b - j)
                if cb == 0:
                    continue
                k_a = i + j
                k_b = n_a + n_b - k_a
                coeff = base * ca * cb * math.sqrt(
                    math.factorial(k_a) * math.factorial(k_b)
                )
                mut = [list(m) for m in vec]
                mut[ma][pa] = 0
                mut[mb][pb] = 0
                mut[ma][pa] += k_a
                mut[mb][pb] += k_b
                new_vec = tuple(tuple(m) for m in mut)
                out[new_vec] = out.get(new_vec, 0j) + coeff
    return PureState(state.modes, out, photon_cap=state.photon_cap)


def apply_pr(state: PureState, mode: int, theta: float) -> PureState:
    """Polarization rotation: a†_H → cosθ a†_H + sinθ a†_V, a†_V → −sinθ a†_H + cosθ a†_V."""
    _check_mode(state, mode)
    c, s = math.cos(theta), math.sin(theta)
    u: Matrix2 = ((c, -s), (s, c))
    return _two_rail_transform(state, (mode, 0), (mode, 1), u)


def apply_ps(state: PureState, mode: int, phi: float) -> PureState:
    """Phase shifter: each term gains exp(i*phi*(n_H + n_V)) at ``mode``."""
    return _phase_map(state, mode, phi, count_h=True)


def apply_pdps(state: PureState, mode: int, phi: float) -> PureState:
    """Polarization-dependent phase shifter: phases V photons only."""
    return _phase_map(state, mode, phi, count_h=False)


def apply_pbs(state: PureState, mode_a: int, mode_b: int) -> PureState:
    """Polarizing beam splitter: H transmitted, V rails exchanged, no extra phase."""
    _check_mode(state, mode_a)
    _check_mode(state, mode_b)
    if mode_a == mode_b:
        raise ValueError("PBS needs two distinct modes")
    swap: Matrix2 = ((0, 1), (1, 0))
    return _two_rail_transform(state, (mode_a, 1), (mode_b, 1), swap)


def apply_bs(state: PureState, mode_a: int, mode_b: int) -> PureState:
    """50:50 beam splitter applied identically to the H and V rails."""
    _check_mode(state, mode_a)
    _check_mode(state, mode_b)
    if mode_a == mode_b:
        raise ValueError("BS needs two distinct modes")
    h: Matrix2 = ((_INV_SQRT2, _INV_SQRT2), (_INV_SQRT2, -_INV_SQRT2))
    state = _two_rail_transform(state, (mode_a, 0), (mode_b, 0), h)
    return _two_rail_transform(state, (mode_a, 1), (mode_b, 1), h)


def apply_element(state: PureState, element: ElementDescriptor) -> PureState:
    """Dispatch one descriptor to its concrete transformation."""
    kind = element.kind
    if kind == "PR":
        return apply_pr(state, element.targets[0], element.theta)
    if kind == "PS":
        return apply_ps(state, element.targets[0], element.phi)
    if kind == "PDPS":
        return apply_pdps(state, element.targets[0], element.phi)
    if kind == "PBS":
        return apply_pbs(state, element.targets[0], element.targets[1])
    if kind == "BS":
        return apply_bs(state, element.targets[0], element.targets[1])
    raise ValueError(f"unknown element kind {kind!r}")


def apply_circuit(state: PureState, elements: Sequence[ElementDescriptor]) -> PureState:
    for element in elements:
        state = apply_element(state, element)
    return state
