"""Run the alternating-power construction from several seeds and bounds."""
import argparse

from probzeta.catalog import AlternatingTruncated, Lattice
from probzeta.construct import run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-steps", type=int, default=50)
    args = ap.parse_args()

    seeds = [("A5", Lattice.named("A5"), [380, 1000]),
             ("A9", AlternatingTruncated(9), [72]),
             ("A12", AlternatingTruncated(12), [132]),
             ("A20", AlternatingTruncated(20), [380])]
    for label, seed, bounds in seeds:
        for bound in bounds:
            state, trace, reason = run(seed, bound, args.max_steps)
            steps = " ".join(f"{r.m}^{r.f}" for r in trace)
            print(f"{label:>4} bound {bound:>5}: {steps}")
            print(f"{'':>17} frontier {state.frontier}, stopped: {reason}")


if __name__ == "__main__":
    main()
