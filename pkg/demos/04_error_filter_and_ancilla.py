"""Filtering out damaged registers, then steering to the gate ancilla.

The second mode of each GHZ register runs through the error filter.  Two
clicks mean both registers were clean; one click exposes a damaged pair;
total silence is the unique double-damage signature.  Kept outcomes are
steered by feed-forward onto the same four-qubit ancilla state, global
phase included.

Run with: python3 demos/04_error_filter_and_ancilla.py
"""

from clickcz import states
from clickcz.gadgets import b2g, ecc, g2a


def main():
    print("filter responses (two middle modes of a register pair):")
    cases = {
        "clean x clean": states.ghz_plus().tensor(states.ghz_plus()),
        "clean x damaged": states.ghz_plus().tensor(states.v0h()),
        "damaged x damaged": states.v0h().tensor(states.v0h()),
    }
    for name, state in cases.items():
        ens = ecc(state, 1, 4)
        labels = {}
        for branch in ens.branches:
            key = (branch.record[-1].label, branch.disposition)
            labels[key] = labels.get(key, 0.0) + branch.weight
        summary = ", ".join(
            f"{label}({disp[:4]})={w:.3f}" for (label, disp), w in sorted(labels.items())
        )
        print(f"  {name:18}: {summary}")

    print("\nancilla conversion from two clean registers:")
    result = g2a(states.ghz_plus().tensor(states.ghz_plus()))
    t1 = states.t1_prime()
    for branch in result.success_branches():
        overlap = branch.state.inner_product(t1)
        print(
            f"  outcome {branch.record[-1].label}: weight {branch.weight:.4f}, "
            f"<t1'|psi> = {overlap:.6f}"
        )
    print(f"  success probability: {result.success_probability:.4f} (= 1/2)")

    print("\nstarting from raw Bell pairs instead (two converter runs):")
    pair = states.bell_phi_plus().tensor(states.bell_phi_plus())
    registers = b2g(pair, site="b2g1").ensemble.combine(b2g(pair, site="b2g2").ensemble)
    full = g2a(registers)
    print(f"  ancilla probability from four Bell pairs: {full.success_probability:.4f} (= 1/8)")


if __name__ == "__main__":
    main()
