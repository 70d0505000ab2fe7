#!/usr/bin/env python3
"""Following the set decoder by hand.

Messages are sets of field elements.  A check node answers "which
values of your symbol keep my parity equation satisfiable" (a scaled
sumset of the other sets); a variable node answers with the
intersection of everything it knows.  Sets only shrink, and the true
symbol is never lost.
"""

import numpy as np

from pecldpc import (
    GF,
    PartialErasureChannel,
    SymbolSet,
    TannerGraph,
    build_regular,
    ctv_message,
    decode,
)

# --- one check node over GF(5) ----------------------------------------------
# Variables v1, v2, v3 attached to a single check with labels 2, 4, 3:
#     2*v1 + 4*v2 + 3*v3 = 0.
# The channel told us v1 in {0,1} and v2 in {0,2,3}; v3 is fully unknown.
f = GF(5)
v1 = SymbolSet(f, (0, 1))
v2 = SymbolSet(f, (0, 2, 3))
msg = ctv_message([(v1, 2), (v2, 4)], out_label=3, field=f)
print("check tells v3:", msg)  # every value of -(2*v1 + 4*v2)/3

# Decoding the same three-variable code end to end:
g = TannerGraph(f, [0, 1, 2], [0, 0, 0], [2, 4, 3])
received = [v1, v2, SymbolSet.full(f)]
res = decode(g, received, record_messages=True)
print("status:", res.status)
print("posteriors:", [str(s) for s in res.estimate])

# --- a real code ------------------------------------------------------------
rng = np.random.default_rng(7)
field = GF(4)
code = build_regular(n=1200, d_v=3, d_c=6, field=field, rng=rng)
ch = PartialErasureChannel(field, M=2, epsilon=0.55)

received = ch.transmit_zero_word(code.n, rng)
res = decode(code, received, max_iters=50)
print(f"\nn={code.n} (3,6) code over GF(4), M=2, eps=0.55")
print("status:", res.status, "after", res.iterations, "iterations")

print("\nedge-message size histogram by iteration (size: count):")
for it, hist in enumerate(res.vtc_size_history):
    parts = ", ".join(f"{s}:{int(c)}" for s, c in enumerate(hist) if s and c)
    print(f"  iter {it:2d}  {parts}")

# Push the erasure rate past the code's limit and the decoder stalls at
# a fixed point instead of resolving:
received = ch.with_epsilon(0.95).transmit_zero_word(code.n, rng)
res = decode(code, received, max_iters=50)
unresolved = sum(1 for s in res.estimate if len(s) > 1)
print(f"\nat eps=0.95: {res.status}, {unresolved}/{code.n} symbols unresolved")
