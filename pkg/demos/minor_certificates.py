"""d-embedding versus h-embedding, and replayable certificates.

The hourglass (s => u => t with doubled edges) does not sit inside its split
form by subdivision alone, but it does once u is split.  The same machinery
produces an explicit sequence of d-minor steps that anyone can replay.

    python3 demos/minor_certificates.py
"""

from __future__ import annotations

import json

from dminor.embed import is_d_embedded, is_d_minor, is_h_embedded
from dminor.families import braess, gsp, hourglass, hourglass_split
from dminor.ops import op_to_dict, verify_witness


def show(seq):
    for i, op in enumerate(seq.ops, start=1):
        print(f"   {i:>2}. {json.dumps(op_to_dict(op), sort_keys=True)}")


def main():
    left, right = hourglass(), hourglass_split()
    print("hourglass -> split hourglass")
    print("  h-embedded:", is_h_embedded(left, right) is not None)
    emb = is_d_embedded(left, right)
    print("  d-embedded:", emb is not None, "via expansion #", emb.expansion_index)
    for op in emb.expansion.provenance:
        print("    expansion step:", op_to_dict(op))

    res = is_d_minor(left, right)
    seq = res.op_sequence()
    print("  d-minor steps from the split hourglass back to the hourglass:")
    show(seq)
    print("  replay:", verify_witness(seq))

    host = gsp(3)
    res = is_d_minor(braess(), host)
    seq = res.op_sequence()
    print(f"\nBraess inside G_SP(3) ({host.n} vertices, {host.m} edges): {len(seq.ops)} steps")
    show(seq)
    print("  replay:", verify_witness(seq))

    print("\nG_SP(3) inside Braess:", bool(is_d_minor(host, braess())))


if __name__ == "__main__":
    main()
