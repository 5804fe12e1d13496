"""Sparse multi-mode bosonic states with two polarization rails (H, V) per spatial mode.

A basis vector assigns an occupancy pair ``(n_h, n_v)`` to each spatial mode.
Pure states are sparse complex-amplitude maps over such vectors; measurement
results are collected into weighted ensembles of renormalized pure states.
All values are immutable: every operation returns a new object.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

DEFAULT_PHOTON_CAP = 8
PRUNE_EPS = 1e-14
NORM_TOL = 1e-12


class SimulatorError(Exception):
    """Base class for simulator failures."""


class CapacityError(SimulatorError):
    """A basis vector would exceed the configured photon cap."""


class ModeMismatchError(SimulatorError):
    """Two states with different spatial mode counts were combined."""


class FeedForwardError(SimulatorError):
    """A measured click pattern has no feed-forward rule."""


class ConsistencyError(SimulatorError):
    """A click pattern or reference check is internally impossible."""


class Occupancy(NamedTuple):
    """Photon count per polarization rail of one spatial mode."""

    n_h: int
    n_v: int

    @property
    def total(self) -> int:
        return self.n_h + self.n_v


# A basis vector is a tuple of (n_h, n_v) pairs, one per spatial mode.
FockVector = tuple[tuple[int, int], ...]

VACUUM_MODE: tuple[int, int] = (0, 0)


def as_fock_vector(modes: Iterable[Sequence[int]]) -> FockVector:
    """Coerce nested sequences into a canonical basis-vector tuple."""
    vec = tuple((int(m[0]), int(m[1])) for m in modes)
    for n_h, n_v in vec:
        if n_h < 0 or n_v < 0:
            raise ValueError(f"negative occupancy in {vec}")
    return vec


def total_photons(vec: FockVector) -> int:
    return sum(n_h + n_v for n_h, n_v in vec)


class PureState:
    """Sparse pure state: mapping from basis vectors to complex amplitudes.

    May be sub-normalized (or super-normalized, e.g. right after a raw
    creation operator); gadget entry points check normalization explicitly.
    Amplitudes below the prune threshold are dropped so that interference
    cancellation cannot leave phantom terms behind.
    """

    __slots__ = ("modes", "photon_cap", "_amps")

    def __init__(
        self,
        modes: int,
        amplitudes: Mapping[FockVector, complex] | None = None,
        *,
        photon_cap: int = DEFAULT_PHOTON_CAP,
    ) -> None:
        self.modes = int(modes)
        self.photon_cap = int(photon_cap)
        amps: dict[FockVector, complex] = {}
        for vec, amp in (amplitudes or {}).items():
            if len(vec) != self.modes:
                raise ModeMismatchError(
                    f"basis vector {vec} has {len(vec)} modes, state has {self.modes}"
                )
            if abs(amp) < PRUNE_EPS:
                continue
            n = total_photons(vec)
            if n > self.photon_cap:
                raise CapacityError(
                    f"{n} photons in {vec} exceeds the cap of {self.photon_cap}"
                )
            amps[vec] = complex(amp)
        self._amps = amps

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def vacuum(modes: int, *, photon_cap: int = DEFAULT_PHOTON_CAP) -> "PureState":
        return PureState(modes, {(VACUUM_MODE,) * modes: 1.0}, photon_cap=photon_cap)

    @staticmethod
    def from_terms(
        terms: Mapping[Sequence[Sequence[int]], complex],
        *,
        photon_cap: int = DEFAULT_PHOTON_CAP,
    ) -> "PureState":
        """Build a state from occupancy sequences, inferring the mode count."""
        items = {as_fock_vector(vec): amp for vec, amp in terms.items()}
        if not items:
            raise ValueError("cannot infer mode count from an empty term map")
        modes = len(next(iter(items)))
        return PureState(modes, items, photon_cap=photon_cap)

    # -- basic queries ---------------------------------------------------------

    def items(self) -> list[tuple[FockVector, complex]]:
        """Terms in canonical (lexicographic) basis order."""
        return sorted(self._amps.items())

    def amplitude(self, vec: Sequence[Sequence[int]]) -> complex:
        return self._amps.get(as_fock_vector(vec), 0j)

    def __len__(self) -> int:
        return len(self._amps)

    def __iter__(self) -> Iterator[FockVector]:
        return iter(sorted(self._amps))

    @property
    def norm2(self) -> float:
        return sum(abs(a) ** 2 for a in self._amps.values())

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm2 - 1.0) <= tol

    def normalized(self) -> "PureState":
        n2 = self.norm2
        if n2 <= 0.0:
            raise ValueError("cannot normalize a zero state")
        scale = 1.0 / math.sqrt(n2)
        return self.scaled(scale)

    def scaled(self, factor: complex) -> "PureState":
        return PureState(
            self.modes,
            {v: a * factor for v, a in self._amps.items()},
            photon_cap=self.photon_cap,
        )

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        terms = ", ".join(f"{v}: {a:.4g}" for v, a in self.items())
        return f"PureState({self.modes}, {{{terms}}})"

    # -- algebra ---------------------------------------------------------------

    def tensor(self, other: "PureState") -> "PureState":
        """Tensor product; the other state's modes are appended after ours."""
        cap = max(self.photon_cap, other.photon_cap)
        amps: dict[FockVector, complex] = {}
        for va, aa in self._amps.items():
            for vb, ab in other._amps.items():
                amps[va + vb] = aa * ab
        return PureState(self.modes + other.modes, amps, photon_cap=cap)

    def reorder_modes(self, permutation: Sequence[int]) -> "PureState":
        """Permute spatial modes: new mode ``i`` is old mode ``permutation[i]``.

        Rail occupancies are commuting labels, so amplitudes are unchanged.
        """
        perm = tuple(permutation)
        if sorted(perm) != list(range(self.modes)):
            raise ValueError(f"{perm} is not a permutation of 0..{self.modes - 1}")
        amps = {
            tuple(vec[p] for p in perm): amp for vec, amp in self._amps.items()
        }
        return PureState(self.modes, amps, photon_cap=self.photon_cap)

    def drop_modes(self, modes: Sequence[int]) -> "PureState":
        """Remove the given modes from every basis vector (no projection)."""
        drop = set(modes)
        amps: dict[FockVector, complex] = {}
        for vec, amp in self._amps.items():
            kept = tuple(m for i, m in enumerate(vec) if i not in drop)
            if kept in amps:
                amps[kept] += amp
            else:
                amps[kept] = amp
        return PureState(self.modes - len(drop), amps, photon_cap=self.photon_cap)

    def inner_product(self, other: "PureState") -> complex:
        """⟨self|other⟩ over the sparse intersection."""
        if self.modes != other.modes:
            raise ModeMismatchError(
                f"inner product between {self.modes}- and {other.modes}-mode states"
            )
        small, big = self._amps, other._amps
        if len(big) < len(small):
            return sum(big[v].conjugate() * small[v] for v in big if v in small).conjugate()
        return sum(small[v].conjugate() * big[v] for v in small if v in big)

    def equal_up_to_global_phase(self, other: "PureState", tol: float = NORM_TOL) -> bool:
        """True iff |⟨self|other⟩| ≥ 1 − tol. Both states must be normalized."""
        return abs(self.inner_product(other)) >= 1.0 - tol

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        """Canonical JSON form with terms in canonical basis order."""
        return {
            "modes": self.modes,
            "terms": [
                {"occ": [list(m) for m in vec], "re": amp.real, "im": amp.imag}
                for vec, amp in self.items()
            ],
        }

    @staticmethod
    def from_json_dict(data: Mapping, *, photon_cap: int = DEFAULT_PHOTON_CAP) -> "PureState":
        modes = int(data["modes"])
        amps: dict[FockVector, complex] = {}
        for term in data["terms"]:
            vec = as_fock_vector(term["occ"])
            amps[vec] = complex(float(term["re"]), float(term.get("im", 0.0)))
        return PureState(modes, amps, photon_cap=photon_cap)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "PureState":
        return PureState.from_json_dict(json.loads(text))


def creation_apply(state: PureState, mode: int, rail: str) -> PureState:
    """Apply the creation operator for one rail; the √(n+1) factor is kept.

    The result is intentionally not normalized.
    """
    if not 0 <= mode < state.modes:
        raise ValueError(f"mode {mode} out of range for {state.modes}-mode state")
    if rail not in ("H", "V"):
        raise ValueError(f"rail must be 'H' or 'V', got {rail!r}")
    idx = 0 if rail == "H" else 1
    amps: dict[FockVector, complex] = {}
    for vec, amp in state._amps.items():
        occ = vec[mode]
        n = occ[idx]
        if total_photons(vec) + 1 > state.photon_cap:
            raise CapacityError(
                f"creation on {vec} would exceed the photon cap {state.photon_cap}"
            )
        new_occ = (n + 1, occ[1]) if idx == 0 else (occ[0], n + 1)
        new_vec = vec[:mode] + (new_occ,) + vec[mode + 1 :]
        amps[new_vec] = amps.get(new_vec, 0j) + amp * math.sqrt(n + 1)
    return PureState(state.modes, amps, photon_cap=state.photon_cap)


# -- measurement records and ensembles -----------------------------------------


@dataclass(frozen=True)
class OutcomeEvent:
    """One detection event: where it happened, what clicked, how it was read."""

    site: str
    pattern: tuple[bool, ...]
    label: str
    disposition: str = "keep"

    def to_json_dict(self) -> dict:
        return {
            "site": self.site,
            "pattern": list(self.pattern),
            "label": self.label,
            "disposition": self.disposition,
        }


@dataclass(frozen=True)
class Branch:
    """A weighted pure state tagged with its classical outcome record."""

    weight: float
    state: PureState
    record: tuple[OutcomeEvent, ...] = ()

    @property
    def disposition(self) -> str:
        return "discard" if any(e.disposition == "discard" for e in self.record) else "keep"

    @property
    def label(self) -> str:
        """Joined outcome labels, e.g. ``'Hn0'`` or ``'3+1'`` for two sites."""
        return "+".join(e.label for e in self.record) if self.record else ""

    def with_state(self, state: PureState) -> "Branch":
        return replace(self, state=state)

    def with_last_disposition(self, disposition: str) -> "Branch":
        if not self.record:
            raise ValueError("branch has no recorded events")
        new_last = replace(self.record[-1], disposition=disposition)
        return replace(self, record=self.record[:-1] + (new_last,))


@dataclass(frozen=True)
class Ensemble:
    """Weighted collection of pure-state branches (a classical mixture)."""

    branches: tuple[Branch, ...] = field(default_factory=tuple)

    @staticmethod
    def pure(state: PureState) -> "Ensemble":
        return Ensemble((Branch(1.0, state),))

    @property
    def total_weight(self) -> float:
        return sum(b.weight for b in self.branches)

    @property
    def keep_weight(self) -> float:
        return sum(b.weight for b in self.branches if b.disposition == "keep")

    @property
    def discard_weight(self) -> float:
        return sum(b.weight for b in self.branches if b.disposition == "discard")

    def kept(self) -> tuple[Branch, ...]:
        return tuple(b for b in self.branches if b.disposition == "keep")

    def map_branches(self, fn: Callable[[Branch], Iterable[Branch]]) -> "Ensemble":
        out: list[Branch] = []
        for branch in self.branches:
            out.extend(fn(branch))
        return Ensemble(tuple(out))

    def combine(self, other: "Ensemble") -> "Ensemble":
        """Branch-wise product: states tensored, weights multiplied."""
        out = [
            Branch(a.weight * b.weight, a.state.tensor(b.state), a.record + b.record)
            for a in self.branches
            for b in other.branches
        ]
        return Ensemble(tuple(out))


def trace_out(ensemble: Ensemble, mode: int) -> Ensemble:
    """Discard one mode, splitting each branch per that mode's occupancy.

    Weights are multiplied by the marginal probability of each occupancy;
    records are unchanged.
    """
    out: list[Branch] = []
    for branch in ensemble.branches:
        if not 0 <= mode < branch.state.modes:
            raise ValueError(f"mode {mode} out of range")
        groups: dict[tuple[int, int], dict[FockVector, complex]] = {}
        for vec, amp in branch.state.items():
            rest = vec[:mode] + vec[mode + 1 :]
            groups.setdefault(vec[mode], {})[rest] = amp
        for occ in sorted(groups):
            sub = groups[occ]
            prob = sum(abs(a) ** 2 for a in sub.values())
            if prob <= 0.0:
                continue
            scale = 1.0 / math.sqrt(prob)
            state = PureState(
                branch.state.modes - 1,
                {v: a * scale for v, a in sub.items()},
                photon_cap=branch.state.photon_cap,
            )
            out.append(Branch(branch.weight * prob, state, branch.record))
    return Ensemble(tuple(out))
