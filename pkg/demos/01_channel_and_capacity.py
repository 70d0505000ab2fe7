#!/usr/bin/env python3
"""A first look at the partial-erasure channel.

A read that goes wrong on a q-level cell does not necessarily destroy
the symbol: often it narrows it down to a handful of candidate levels.
The channel model here captures exactly that: with probability
1 - epsilon you receive the symbol, with probability epsilon you
receive a uniformly chosen M-element set containing it.
"""

import numpy as np

from pecldpc import GF, PartialErasureChannel

rng = np.random.default_rng(0)

# --- sampling ---------------------------------------------------------------
field = GF(4)
ch = PartialErasureChannel(field, M=2, epsilon=0.6)
print("channel:", ch)
print("distinct supersets per symbol (i_max):", ch.i_max)

print("\nten transmissions of symbol 1:")
for _ in range(10):
    print("  received", ch.transmit(1, rng))

# --- capacity ---------------------------------------------------------------
# Capacity is linear in epsilon: 1 - epsilon * log_q(M).  At M=q the set
# tells you nothing beyond "erased" and the line is the familiar 1 - eps.
print("\ncapacity (q-ary symbols/use), q=4:")
print("eps     M=2     M=3     M=4")
for eps in (0.0, 0.25, 0.5, 0.75, 1.0):
    caps = [PartialErasureChannel(field, M, eps).capacity() for M in (2, 3, 4)]
    print(f"{eps:4.2f}  " + "  ".join(f"{c:6.4f}" for c in caps))

# Even a fully unreliable read (eps = 1) with M=2 candidates leaves half
# a symbol of information per use:
print("\ncapacity at eps=1, q=4, M=2:", PartialErasureChannel(field, 2, 1.0).capacity())

# --- equivocation -----------------------------------------------------------
print("\nconditional entropy H(Y|X) in q-ary units, q=4, M=2:")
for eps in (0.0, 0.3, 0.7, 1.0):
    h = PartialErasureChannel(field, 2, eps).conditional_entropy()
    print(f"  eps={eps:3.1f}: {h:.4f}")

# --- empirical check of the transition law ----------------------------------
n = 200_000
ch1 = PartialErasureChannel(field, 2, 1.0)
counts = {}
for _ in range(3000):
    out = tuple(ch1.transmit(0, rng))
    counts[out] = counts.get(out, 0) + 1
print("\neps=1, x=0: each 2-set containing 0 should appear ~1/3 of the time")
for out, c in sorted(counts.items()):
    print(f"  {set(out)}: {c / 3000:.3f}")
