"""Tally each correspondence statement over an exhaustive frame enumeration.

Prints, per statement, how often each outcome tuple occurs.  Useful for
seeing whether a one-way statement also holds in the converse direction
at the chosen bounds.

    python3 scripts/correspondence_probe.py --max1 3 --maxd 3
"""

import argparse
import collections
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import correspondence_suite as cs  # noqa: E402
from dfml.search import SearchBounds, enumerate_frames  # noqa: E402

PROBES = [
    ("tbox", cs.items_tbox, "refined", ("Rbox",)),
    ("s4box", cs.items_s4box, "refined", ("Rbox",)),
    ("tdia", cs.items_tdia, "refined", ("Rdia",)),
    ("s4dia", cs.items_s4dia, "refined", ("Rdia",)),
    ("d items", cs.items_d, "refined", ("Rbox", "Rdia")),
    ("FD, box<=dia", cs.implied_d, "refined", ("Rbox", "Rdia")),
    ("FB, residuated", cs.implied_b, "F1,F2,F3,F4", ("Rbox", "Rdia")),
    ("S5 inclusions", cs.s5_inclusions, "refined+FS5", ("Rbox", "Rdia")),
    ("heyting, FHEYT", lambda F: (cs.heyting(F), cs.passes(F, "FHEYT")), "refined", ("T",)),
    ("K, heyting, upsets", lambda F: (cs.k_inclusion(F), cs.heyting(F), cs.upset_implication(F)),
     "F1,F2,F3,F4,F5,FHEYT", ("Rbox", "T")),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max1", type=int, default=2)
    ap.add_argument("--maxd", type=int, default=2)
    ap.add_argument("--only", help="substring of a probe name")
    args = ap.parse_args()
    for name, fn, cls, rels in PROBES:
        if args.only and args.only not in name:
            continue
        t0 = time.perf_counter()
        tally = collections.Counter(fn(F) for F in
                                    enumerate_frames(SearchBounds(args.max1, args.maxd, cls, relations=rels)))
        print(f"{name:20} {cls:22} {dict(tally)}  {time.perf_counter() - t0:.1f}s", flush=True)


if __name__ == "__main__":
    main()
