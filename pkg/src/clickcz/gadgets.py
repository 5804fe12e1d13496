"""Heralded gate gadgets: Bell-to-GHZ, error filter, ancilla conversion,
fusion, and the end-to-end controlled-phase pipeline.

Every gadget returns all measurement branches, discarded ones included, so
that probability bookkeeping stays complete.  Success probabilities are
recomputed from branch weights on every access.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import states
from .detection import RuleAction, apply_feed_forward, measure_nr, pid, pid_split
from .elements import (
    ElementDescriptor,
    apply_circuit,
    apply_bs,
    apply_pbs,
    apply_pdps,
    apply_pr,
    pdps,
    pr,
    ps,
)
from .fock import Branch, Ensemble, FeedForwardError, PureState

PI = math.pi


def _all_keep(branch: Branch) -> bool:
    return branch.disposition == "keep"


@dataclass(frozen=True)
class GadgetResult:
    """Ensemble of branches plus the predicate defining heralded success."""

    ensemble: Ensemble
    success_predicate: Callable[[Branch], bool] = _all_keep

    @property
    def success_probability(self) -> float:
        return sum(
            b.weight for b in self.ensemble.branches if self.success_predicate(b)
        )

    def success_branches(self) -> tuple[Branch, ...]:
        return tuple(b for b in self.ensemble.branches if self.success_predicate(b))


# -- Bell pairs to a partial GHZ mixture ----------------------------------------

B2G_RULES = {
    # one or more photons on the rotated H rail: fix the sign of the V chain
    "Hn0": RuleAction(elements=(pdps(0, PI),)),
    "0Vn": RuleAction(),
    "00": RuleAction(disposition="discard"),
    "HnVn": RuleAction(disposition="discard"),
}


def b2g(state: PureState, site: str = "b2g") -> GadgetResult:
    """Convert two Bell pairs (modes 0..3) into the partial-GHZ mixture.

    A PBS fuses the two inner modes, the leftover mode is read out with a
    PID, and the click pattern conditions a corrective phase.  Silent
    detectors herald failure.
    """
    if state.modes != 4:
        raise ValueError("Bell-to-GHZ conversion expects a 4-mode input")
    fused = apply_pbs(state, 1, 2)
    # move the leftover PBS output behind the survivors before detection
    rearranged = fused.reorder_modes((0, 1, 3, 2))
    ensemble = pid(rearranged, 3, B2G_RULES, site=site)
    return GadgetResult(ensemble)


# -- error filter on the fragile register modes ---------------------------------


def ecc_optics(
    state: PureState, mode_a: int, mode_b: int
) -> tuple[PureState, tuple[int, int, int, int]]:
    """Run the error-filter optics, stopping just before the detectors.

    Both target modes are rotated by π/4, fused on a PBS, and the vertical
    photons pick up a π/4 phase on each output before the PID rail split.
    Returns the widened state and the four detector rails in reporting
    order (H_a, H_b, V_a, V_b).
    """
    out = apply_pr(state, mode_a, PI / 4)
    out = apply_pr(out, mode_b, PI / 4)
    out = apply_pbs(out, mode_a, mode_b)
    out = apply_pdps(out, mode_a, PI / 4)
    out = apply_pdps(out, mode_b, PI / 4)
    out, rail_va = pid_split(out, mode_a)
    out, rail_vb = pid_split(out, mode_b)
    return out, (mode_a, mode_b, rail_va, rail_vb)


_ECC_KEEP = frozenset({"3", "4", "5", "6"})


def ecc(state: PureState, mode_a: int, mode_b: int, site: str = "ecc") -> Ensemble:
    """Error filter: two-click outcomes 3..6 are kept, everything else is not.

    A register pair damaged upstream can put at most one photon into the
    filter, so it can never produce two clicks; silence on all four rails
    is the unique double-damage signature.
    """
    pre, rails = ecc_optics(state, mode_a, mode_b)
    measured = measure_nr(pre, rails, site=site, site_kind="fusion")
    out = []
    for branch in measured.branches:
        disposition = "keep" if branch.record[-1].label in _ECC_KEEP else "discard"
        out.append(branch.with_last_disposition(disposition))
    return Ensemble(tuple(out))


# -- GHZ pair to the four-qubit gate ancilla ------------------------------------

# Deterministic conversion shared by all kept filter outcomes.
_G2A_CONVERSION = (
    pr(1, PI / 2),
    pr(2, PI / 2),
    pdps(1, PI / 2),
    pdps(2, -PI / 2),
)

G2A_RULES = {
    "5": RuleAction(elements=(pdps(1, PI), pdps(2, PI)) + _G2A_CONVERSION),
    "6": RuleAction(elements=(pdps(1, PI), pdps(2, PI)) + _G2A_CONVERSION),
    "3": RuleAction(elements=(ps(0, PI / 2),) + _G2A_CONVERSION),
    "4": RuleAction(elements=(ps(0, PI / 2),) + _G2A_CONVERSION),
    "one-click": RuleAction(disposition="discard"),
    "silent": RuleAction(disposition="discard"),
    "1": RuleAction(disposition="discard"),
    "2": RuleAction(disposition="discard"),
}


def g2a(input_ensemble: Ensemble | PureState, site: str = "g2a") -> GadgetResult:
    """Convert two partial-GHZ registers (6 modes) into the gate ancilla.

    The second mode of each register runs through the error filter; kept
    outcomes are steered onto the four-qubit ancilla by outcome-conditioned
    phases followed by a fixed conversion.  Every kept branch ends in the
    same state including its global phase.
    """
    if isinstance(input_ensemble, PureState):
        input_ensemble = Ensemble.pure(input_ensemble)

    out: list[Branch] = []
    for parent in input_ensemble.branches:
        if parent.disposition == "discard":
            out.append(parent)
            continue
        if parent.state.modes != 6:
            raise ValueError("ancilla conversion expects 6-mode registers")
        filtered = apply_feed_forward(
            ecc(parent.state, 1, 4, site=f"{site}/ecc"), G2A_RULES
        )
        for sub in filtered.branches:
            out.append(
                Branch(parent.weight * sub.weight, sub.state, parent.record + sub.record)
            )
    return GadgetResult(Ensemble(tuple(out)))


# -- fusion of a computational rail with an ancilla rail -------------------------

_A2C_KEEP = frozenset({"1", "2", "3", "4", "5", "6"})


def a2c(state: PureState, mode_x: int, mode_y: int, site: str = "a2c") -> Ensemble:
    """Gate fusion: 50:50 splitter then PID readout of both outputs.

    Exactly two clicks herald success; a single click means the photons
    bunched and the attempt is discarded.
    """
    mixed = apply_bs(state, mode_x, mode_y)
    split, rail_vx = pid_split(mixed, mode_x)
    split, rail_vy = pid_split(split, mode_y)
    measured = measure_nr(
        split, (mode_x, mode_y, rail_vx, rail_vy), site=site, site_kind="fusion"
    )
    out = []
    for branch in measured.branches:
        disposition = "keep" if branch.record[-1].label in _A2C_KEEP else "discard"
        out.append(branch.with_last_disposition(disposition))
    return Ensemble(tuple(out))


# -- controlled-phase gate -------------------------------------------------------

# Post-processing on the two surviving modes, keyed by the fusion outcome
# pair.  Derived by requiring every kept branch to equal the exact
# controlled-phase image of the input, global phase included: outcomes 1/2
# teleport with a bit-flip that a π/2 rotation undoes, outcomes 3/4 without.
_R0 = pr(0, PI / 2)
_R1 = pr(1, PI / 2)
_Z0 = pdps(0, PI)
_Z1 = pdps(1, PI)
_P = ps(0, PI)

CZ_RULES: dict[str, tuple[ElementDescriptor, ...]] = {
    "11": (_R0, _R1, _Z1),
    "22": (_R0, _R1, _Z1),
    "12": (_R0, _R1, _Z1, _P),
    "21": (_R0, _R1, _Z1, _P),
    "31": (_R1, _Z0, _P),
    "42": (_R1, _Z0, _P),
    "41": (_R1, _Z0),
    "32": (_R1, _Z0),
    "13": (_R0, _Z0, _P),
    "24": (_R0, _Z0, _P),
    "14": (_R0, _Z0),
    "23": (_R0, _Z0),
    "33": (_Z1, _P),
    "44": (_Z1, _P),
    "34": (_Z1,),
    "43": (_Z1,),
}


def cz_gate(input_state: PureState, ancilla: PureState | None = None) -> GadgetResult:
    """Controlled-phase gate on a two-mode dual-rail input.

    The input qubits fuse with the outer ancilla rails; the two inner
    ancilla rails carry the gate output after outcome-paired corrections.
    """
    if input_state.modes != 2:
        raise ValueError("controlled-phase input must be a 2-mode state")
    if ancilla is None:
        ancilla = states.t1_prime()
    if ancilla.modes != 4:
        raise ValueError("ancilla must be a 4-mode state")

    # layout: (input qubit 1, ancilla 1..4, input qubit 2)
    full = input_state.tensor(ancilla).reorder_modes((0, 2, 3, 4, 5, 1))
    first = a2c(full, 0, 1, site="a2c1")

    out: list[Branch] = []
    for parent in first.branches:
        # modes now (ancilla 2, ancilla 3, ancilla 4, input qubit 2)
        second = a2c(parent.state, 2, 3, site="a2c2")
        for sub in second.branches:
            merged = Branch(
                parent.weight * sub.weight, sub.state, parent.record + sub.record
            )
            if merged.disposition == "keep":
                pair = merged.record[-2].label + merged.record[-1].label
                elements = CZ_RULES.get(pair)
                if elements is None:
                    raise FeedForwardError(f"no post-processing for outcome pair {pair}")
                merged = merged.with_state(apply_circuit(merged.state, elements))
            out.append(merged)
    return GadgetResult(Ensemble(tuple(out)))


# -- the whole pipeline ----------------------------------------------------------


@dataclass(frozen=True)
class PipelineResult(GadgetResult):
    """Controlled-phase pipeline outcome with the ancilla stage broken out."""

    @property
    def ancilla_probability(self) -> float:
        """Probability that four Bell pairs yielded the gate ancilla."""
        total = 0.0
        for branch in self.ensemble.branches:
            pre = [e for e in branch.record if not e.site.startswith("a2c")]
            if pre and all(e.disposition == "keep" for e in pre):
                total += branch.weight
        return total


def cz_full_pipeline(
    input_state: PureState, bell_source: Callable[[], PureState] = states.bell_phi_plus
) -> PipelineResult:
    """Compose two Bell-to-GHZ runs, the ancilla conversion, and the gate.

    Returns every branch of the whole tree: failed conversions keep their
    partial records, successes end in the exact controlled-phase image of
    the input.
    """
    pair = bell_source().tensor(bell_source())
    first = b2g(pair, site="b2g1")
    second = b2g(pair, site="b2g2")
    registers = first.ensemble.combine(second.ensemble)
    converted = g2a(registers, site="g2a")

    out: list[Branch] = []
    for parent in converted.ensemble.branches:
        if parent.disposition == "discard":
            out.append(parent)
            continue
        gate = cz_gate(input_state, ancilla=parent.state)
        for sub in gate.ensemble.branches:
            out.append(
                Branch(parent.weight * sub.weight, sub.state, parent.record + sub.record)
            )
    return PipelineResult(Ensemble(tuple(out)))
