"""Two Bell pairs in, a three-photon GHZ state (usually) out.

The converter fuses the inner modes of two Bell pairs on a polarizing
splitter and reads the leftover mode with a PID.  Because the detectors
cannot count photons, the kept output is a mixture: mostly GHZ, with a
heralded-later error component riding along.

Run with: python3 demos/03_bell_to_ghz.py
"""

from clickcz import states
from clickcz.gadgets import b2g
from clickcz.oracle import density_of, fidelity


def main():
    pair = states.bell_phi_plus().tensor(states.bell_phi_plus())
    result = b2g(pair)

    print("branches after detection and feed-forward:")
    ghz, err = states.ghz_plus(), states.v0h()
    for branch in result.ensemble.branches:
        kind = "?"
        if branch.disposition == "discard":
            kind = "discarded"
        elif branch.state.equal_up_to_global_phase(ghz):
            kind = "GHZ+"
        elif branch.state.equal_up_to_global_phase(err):
            kind = "|V 0 H>"
        print(
            f"  pattern {branch.record[-1].label:>4} ({branch.disposition:7}): "
            f"weight {branch.weight:.4f}  ->  {kind}"
        )

    print(f"\nkeep probability:            {result.success_probability:.4f}")
    rho = density_of(result.ensemble, keep_only=True)
    print(f"kept-state fidelity with GHZ+: {fidelity(rho, ghz):.4f} (= 2/3)")
    pure = sum(
        b.weight for b in result.ensemble.kept()
        if b.state.equal_up_to_global_phase(ghz)
    )
    print(f"overall pure-GHZ probability:  {pure:.4f} (= 1/2)")


if __name__ == "__main__":
    main()
