import json
import math

import pytest

from clickcz.fock import (
    Branch,
    CapacityError,
    Ensemble,
    ModeMismatchError,
    PureState,
    creation_apply,
    trace_out,
)
from clickcz import states

from conftest import assert_states_equal, random_state

H = (1, 0)
V = (0, 1)
E = (0, 0)


class TestCreation:
    def test_single_quantum_on_vacuum(self):
        out = creation_apply(PureState.vacuum(1), 0, "H")
        assert out.amplitude(((1, 0),)) == pytest.approx(1.0)
        assert len(out) == 1

    def test_bosonic_ladder_factor(self):
        one = PureState(1, {(H,): 1.0})
        out = creation_apply(one, 0, "H")
        assert out.amplitude(((2, 0),)) == pytest.approx(math.sqrt(2))

    def test_distinct_rails_commute(self):
        one = PureState(1, {(H,): 1.0})
        out = creation_apply(one, 0, "V")
        assert out.amplitude(((1, 1),)) == pytest.approx(1.0)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_ladder_consistency(self, n):
        below = PureState(1, {((n - 1, 0),): 1.0})
        target = PureState(1, {((n, 0),): 1.0})
        raised = creation_apply(below, 0, "H")
        assert target.inner_product(raised) == pytest.approx(math.sqrt(n))

    def test_photon_cap_is_a_hard_error(self):
        full = PureState(1, {((8, 0),): 1.0})
        with pytest.raises(CapacityError):
            creation_apply(full, 0, "H")

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            creation_apply(PureState.vacuum(1), 1, "H")


class TestTensor:
    def test_product_ket(self):
        out = PureState(1, {(H,): 1.0}).tensor(PureState(1, {(V,): 1.0}))
        assert out.amplitude((H, V)) == pytest.approx(1.0)
        assert out.modes == 2

    def test_two_bell_pairs(self):
        out = states.bell_phi_plus().tensor(states.bell_phi_plus())
        assert len(out) == 4
        for vec, amp in out.items():
            assert amp == pytest.approx(0.5)

    def test_vacuum_padding(self):
        psi = states.qubit(1, 1j)
        out = psi.tensor(PureState.vacuum(1))
        assert out.modes == 2
        assert out.amplitude((H, E)) == pytest.approx(psi.amplitude((H,)))

    def test_norm_multiplicativity(self, rng):
        for _ in range(50):
            a, b = random_state(rng, 2), random_state(rng, 2)
            a, b = a.scaled(0.7), b.scaled(1.2)
            assert a.tensor(b).norm2 == pytest.approx(a.norm2 * b.norm2, abs=1e-12)

    def test_cap_enforced(self):
        five = PureState(1, {((5, 0),): 1.0})
        with pytest.raises(CapacityError):
            five.tensor(five)


class TestReorder:
    def test_identity(self):
        psi = states.two_qubit(1, 2, 3, 4j)
        assert_states_equal(psi.reorder_modes((0, 1)), psi)

    def test_swap(self):
        psi = PureState(2, {(H, V): 1.0})
        assert psi.reorder_modes((1, 0)).amplitude((V, H)) == pytest.approx(1.0)

    def test_roundtrip_is_exact(self, rng):
        perm = (2, 0, 3, 1)
        inverse = tuple(perm.index(i) for i in range(4))
        psi = random_state(rng, 4)
        back = psi.reorder_modes(perm).reorder_modes(inverse)
        assert dict(back.items()) == dict(psi.items())

    def test_malformed_permutation(self):
        psi = PureState.vacuum(3)
        with pytest.raises(ValueError):
            psi.reorder_modes((0, 1))
        with pytest.raises(ValueError):
            psi.reorder_modes((0, 0, 1))


class TestInnerProduct:
    def test_unit_overlap(self):
        psi = PureState(1, {(H,): 1.0})
        assert psi.inner_product(psi) == pytest.approx(1.0)

    def test_ghz_conventions_are_orthogonal(self):
        assert states.ghz_plus().inner_product(states.ghz_minus()) == pytest.approx(0)

    def test_ancilla_is_normalized(self):
        t1 = states.t1_prime()
        assert t1.inner_product(t1) == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ModeMismatchError):
            PureState.vacuum(2).inner_product(PureState.vacuum(3))

    def test_conjugation_order(self):
        a = PureState(1, {(H,): 1j})
        b = PureState(1, {(H,): 1.0})
        assert a.inner_product(b) == pytest.approx(-1j)

    def test_asymmetric_sparsity(self):
        a = PureState(1, {(H,): 1j})
        b = PureState(1, {(H,): 0.6, (V,): 0.8})
        assert a.inner_product(b) == pytest.approx(-0.6j)
        assert b.inner_product(a) == pytest.approx(0.6j)


class TestGlobalPhase:
    def test_phase_factor_is_ignored(self):
        psi = states.t1_prime()
        rotated = psi.scaled(complex(math.cos(math.pi / 4), math.sin(math.pi / 4)))
        assert psi.equal_up_to_global_phase(rotated)

    def test_orthogonal_states_differ(self):
        assert not states.ghz_plus().equal_up_to_global_phase(states.ghz_minus())


class TestTraceOut:
    def test_trailing_vacuum(self):
        ens = Ensemble.pure(PureState(2, {(H, E): 1.0}))
        out = trace_out(ens, 1)
        assert len(out.branches) == 1
        assert out.branches[0].weight == pytest.approx(1.0)
        assert out.branches[0].state.amplitude((H,)) == pytest.approx(1.0)

    def test_bell_marginal_is_maximally_mixed(self):
        out = trace_out(Ensemble.pure(states.bell_phi_plus()), 1)
        assert len(out.branches) == 2
        for branch in out.branches:
            assert branch.weight == pytest.approx(0.5)

    def test_error_branch_marginal(self):
        ens = Ensemble((Branch(0.25, states.v0h()),))
        out = trace_out(ens, 1)
        assert len(out.branches) == 1
        assert out.branches[0].weight == pytest.approx(0.25)
        assert out.branches[0].state.amplitude((V, H)) == pytest.approx(1.0)

    def test_weight_conservation(self, rng):
        for _ in range(25):
            ens = Ensemble.pure(random_state(rng, 3))
            out = trace_out(ens, rng.randrange(3))
            assert out.total_weight == pytest.approx(ens.total_weight, abs=1e-12)


class TestHygiene:
    def test_prune_threshold(self):
        psi = PureState(1, {(H,): 1.0, (V,): 1e-15})
        assert len(psi) == 1

    def test_mode_count_validation(self):
        with pytest.raises(ModeMismatchError):
            PureState(2, {(H,): 1.0})

    def test_negative_occupancy_rejected(self):
        with pytest.raises(ValueError):
            PureState.from_terms({((-1, 0),): 1.0})

    def test_normalized(self):
        psi = PureState(1, {(H,): 2.0}).normalized()
        assert psi.norm2 == pytest.approx(1.0)


class TestSerialization:
    def test_roundtrip(self):
        psi = states.t1_prime()
        again = PureState.from_json(psi.to_json())
        assert_states_equal(again, psi)

    def test_canonical_term_order(self):
        psi = states.two_qubit(1, 1, 1, -1)
        data = json.loads(psi.to_json())
        occs = [tuple(map(tuple, t["occ"])) for t in data["terms"]]
        assert occs == sorted(occs)

    def test_byte_stability(self):
        psi = states.ghz_plus()
        assert psi.to_json() == PureState.from_json(psi.to_json()).to_json()
