"""Prove a list of sequents in each logic and validate the proofs on small frames.

Reads sequents one per line from a file (default: the acceptance list) and
reports, per logic, how many were proved and whether any proved sequent
has a countermodel in the matching frame class.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from dfml.formula import parse_sequent  # noqa: E402
from dfml.logics import LOGICS, frame_class  # noqa: E402
from dfml.proofs import check_derivation, search_proof  # noqa: E402
from dfml.search import SearchBounds, validate_sequents  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sequents", help="file with one sequent per line")
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--size", type=int, default=3, help="points per sort")
    args = ap.parse_args()
    if args.sequents:
        texts = [ln.strip() for ln in Path(args.sequents).read_text().splitlines() if ln.strip()]
    else:
        from test_acceptance import SOUNDNESS_SEQUENTS as texts
    seqs = [parse_sequent(t) for t in texts]
    violations = 0
    for logic in LOGICS:
        t0 = time.perf_counter()
        proved = []
        for s in seqs:
            d = search_proof(s, logic, depth=args.depth)
            if d is not None:
                assert check_derivation(d, logic).ok
                proved.append(s)
        t1 = time.perf_counter()
        res = validate_sequents(proved, SearchBounds(args.size, args.size, frame_class(logic)))
        bad = [str(s) for s, cm in zip(proved, res) if cm is not None]
        violations += len(bad)
        print(f"{logic:4} proved {len(proved):2}/{len(seqs)}  violations {bad or 0}  "
              f"search {t1 - t0:.1f}s  validate {time.perf_counter() - t1:.1f}s", flush=True)
    return 1 if violations else 0


if __name__ == "__main__":
    sys.exit(main())
