"""Recompute every table of the bundled worked example next to its printed value.

    python3 scripts/reproduce_tables.py [--precision 4]

Prints one markdown table per quantity with the recomputed value, the
printed value and their difference, then the largest deviation per table.
"""

import argparse

from pfconflict import reference as ref
from pfconflict.group import group_matrices
from pfconflict.render import fmt_number
from pfconflict.risk import closeness_rows, expected_loss_matrix, score_rows
from pfconflict.system import aggregate_all


def pfn_table(title, rows, printed, prec):
    print(f"### {title}\n")
    print("| agent | action | recomputed | printed | max diff |")
    print("|---|---|---|---|---|")
    worst = 0.0
    for r in rows:
        for name, g, want in zip("PBN", r.losses, printed[r.agent]):
            d = max(abs(g.mu - want[0]), abs(g.nu - want[1]))
            worst = max(worst, d)
            got = f"P({fmt_number(g.mu, prec)},{fmt_number(g.nu, prec)})"
            print(f"| {r.agent} | {name} | {got} | P({want[0]:.4f},{want[1]:.4f}) | {d:.1e} |")
    print(f"\nlargest deviation: {worst:.2e}\n")
    return worst


def real_table(title, rows, printed, prec):
    print(f"### {title}\n")
    print("| agent | P | B | N | max diff |")
    print("|---|---|---|---|---|")
    worst = 0.0
    for r in rows:
        want = printed[r.agent]
        d = max(abs(a - b) for a, b in zip(r[1:], want))
        worst = max(worst, d)
        cells = " | ".join(f"{fmt_number(a, prec)} ({b:.4f})" for a, b in zip(r[1:], want))
        print(f"| {r.agent} | {cells} | {d:.1e} |")
    print(f"\nlargest deviation: {worst:.2e}\n")
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--precision", type=int, default=4)
    args = ap.parse_args()
    prec = args.precision

    s, loss, panel = ref.reference_system(), ref.reference_loss(), ref.reference_panel()
    print("### Aggregates\n")
    print("| agent | aggregate | score (printed) | closeness (printed) |")
    print("|---|---|---|---|")
    for a in aggregate_all(s):
        print(
            f"| {a.agent} | P({fmt_number(a.value.mu, prec)},{fmt_number(a.value.nu, prec)}) "
            f"| {fmt_number(a.score, prec)} ({ref.AGGREGATE_SCORES[a.agent]:.4f}) "
            f"| {fmt_number(a.closeness, prec)} ({ref.AGGREGATE_CLOSENESS[a.agent]:.4f}) |"
        )
    print()

    rows = expected_loss_matrix(s, loss)
    summary = {
        "expected loss": pfn_table("Expected loss", rows, ref.EXPECTED_LOSS, prec),
        "score matrix": real_table("Score matrix", score_rows(rows), ref.SCORE_MATRIX, prec),
        "closeness matrix": real_table("Closeness matrix", closeness_rows(rows), ref.CLOSENESS_MATRIX, prec),
    }
    gm = group_matrices(s, panel)
    summary["group expected loss"] = pfn_table("Group expected loss", gm.pfn, ref.GROUP_EXPECTED_LOSS, prec)
    summary["group score matrix"] = real_table("Group score matrix", gm.score, ref.GROUP_SCORE_MATRIX, prec)
    summary["group closeness matrix"] = real_table("Group closeness matrix", gm.closeness, ref.GROUP_CLOSENESS_MATRIX, prec)

    print("### Summary\n")
    for name, worst in summary.items():
        print(f"- {name}: {worst:.2e}")


if __name__ == "__main__":
    main()
