"""Serial-parallel width on random networks, each answer backed by a G_SP(k) witness.

    python3 demos/random_witnesses.py [count] [seed]
"""

from __future__ import annotations

import random
import sys

from dminor.families import random_tdag
from dminor.ops import verify_witness
from dminor.width import parallel_width, serial_parallel_width, spw_witness, witness_matches_variant


def main(count: int = 12, seed: int = 1):
    rng = random.Random(seed)
    print(f"{'n':>3} {'m':>3} {'pw':>3} {'spw':>4}  witness")
    for _ in range(count):
        g = random_tdag(rng.randint(4, 9), rng, max_multiplicity=2)
        k = serial_parallel_width(g)
        note = "-"
        if k >= 2:
            w = spw_witness(g, k)
            good = verify_witness(w.minor_sequence).ok and witness_matches_variant(w)
            note = (f"{len(w.minor_sequence.ops)} steps to variant forward={list(w.variant.forward)} "
                    f"backward={list(w.variant.backward)} ({'ok' if good else 'BROKEN'})")
        print(f"{g.n:>3} {g.m:>3} {parallel_width(g):>3} {k:>4}  {note}")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
