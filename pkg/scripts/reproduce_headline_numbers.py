"""Recompute the headline numbers: P_A5, c_20(A5), the C2^2 x C5^2 x A5 scan."""
import argparse
import time

from probzeta.catalog import example_recipe, example_recurrence_coefficients, recipe_series
from probzeta.dseries import first_negative, invert
from probzeta.moebius import group_series, moebius_table
from probzeta.permgroup import enumerate_subgroups, group_from_name


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=50000)
    args = ap.parse_args()

    t0 = time.perf_counter()
    L = enumerate_subgroups(group_from_name("A5"))
    P = group_series(moebius_table(L), 60)
    print(f"A5: {len(L)} subgroups, P = {P}")
    C = invert(P.truncate(60))
    print(f"A5: first negative inverse coefficient {first_negative(C)}")

    C = invert(recipe_series(example_recipe(), args.bound))
    print(f"C2^2 x C5^2 x A5 up to {args.bound}: {len(C)} nonzero inverse coefficients")
    print(f"  first negative over all indices: {first_negative(C)}")
    rec = example_recurrence_coefficients(20, 10)
    smooth = sorted((2 ** i * 5 ** k, v) for (i, k), v in rec.items()
                    if 2 ** i * 5 ** k <= args.bound)
    neg = next(((n, v) for n, v in smooth if v < 0), None)
    print(f"  first negative at 2^i 5^k (recurrence): {neg}")
    print(f"  recurrence agrees with inversion: {all(C[n] == v for n, v in smooth)}")
    early = [(n, c) for n, c in C if c < 0][:8]
    print(f"  earliest negatives: {early}")
    print(f"done in {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
