"""Set-valued message passing for LDPC codes on partial-erasure channels.

Messages are subsets of GF(q).  A check node tells a neighbor every
value consistent with its parity equation given the other neighbors'
sets (a scaled sumset); a variable node intersects what it hears with
its channel set.  Messages only ever shrink, and they always contain
the transmitted symbol, so decoding either resolves every variable to
a singleton or stalls at a fixed point.

For q up to MASK_TABLE_MAX_Q the iteration runs on numpy mask arrays
with whole-array table lookups (the path the Monte Carlo harness uses);
larger fields fall back to a per-node Python loop on int masks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import GF
from .ldpc import TannerGraph
from .symbol_sets import (
    MASK_TABLE_MAX_Q,
    SymbolSet,
    mask_tables,
    scale_mask,
    sumset_pair_mask,
)

STATUS_SUCCESS = "success"
STATUS_STALLED = "stalled"


class DecodingInconsistency(RuntimeError):
    """A message intersection came out empty: the received sets cannot
    all contain one codeword symbol, so the input data is corrupt."""


def ctv_message(incoming, out_label: int, field: GF) -> SymbolSet:
    """Check-to-variable message.

    ``incoming`` holds (set, label) pairs for the check's other edges;
    the result is every value of the target variable that satisfies the
    parity equation: the sumset of the incoming sets scaled by
    -label/out_label.
    """
    if out_label == 0:
        raise ValueError("edge labels must be nonzero")
    acc = 1  # {0}
    for s, label in incoming:
        if not s:
            raise ValueError("incoming message sets must be nonempty")
        acc = sumset_pair_mask(field, acc, scale_mask(field, s.mask, field.neg(label)))
    return SymbolSet.from_mask(field, scale_mask(field, acc, field.inv(out_label)))


def vtc_message(channel_info: SymbolSet, incoming_ctv) -> SymbolSet:
    """Variable-to-check message: channel set intersected with the
    other edges' check messages.  Raises DecodingInconsistency if the
    intersection is empty."""
    if not channel_info:
        raise ValueError("channel information must be nonempty")
    mask = channel_info.mask
    for s in incoming_ctv:
        mask &= s.mask
    if mask == 0:
        raise DecodingInconsistency("empty variable-to-check message")
    return SymbolSet.from_mask(channel_info.field, mask)


@dataclass
class DecodeResult:
    """Outcome of a decoding run.

    ``status`` is 'success' when every posterior set (channel info
    intersected with all incoming check messages) is a singleton, else
    'stalled'.  ``vtc_resolved`` additionally reports whether every
    edge message reached size 1.  ``vtc_size_history[l][s]`` counts
    edge messages of size s after iteration l.  ``message_history`` is
    populated only on request with (ctv, vtc) mask sequences per
    iteration (ctv is None at iteration 0).
    """

    status: str
    estimate: list[SymbolSet]
    iterations: int
    vtc_resolved: bool
    vtc_size_history: list[np.ndarray]
    message_history: list | None = None

    def size_history_rows(self) -> list[tuple[int, int, int]]:
        """(iteration, size, count) rows of the edge-message size
        histogram, ready for CSV dumping."""
        rows = []
        for it, hist in enumerate(self.vtc_size_history):
            for size, count in enumerate(hist):
                if size and count:
                    rows.append((it, size, int(count)))
        return rows


class _GraphIndex:
    """Sorted edge views plus fold-step index arrays for one graph."""

    def __init__(self, graph: TannerGraph):
        self.graph = graph
        f = graph.field
        labels = graph.edge_label

        self.by_chk = np.argsort(graph.edge_chk, kind="stable")
        self.by_var = np.argsort(graph.edge_var, kind="stable")
        self.sfac = f.neg_table[labels[self.by_chk]].astype(np.int64)
        self.ofac = f.inv_table[labels[self.by_chk]].astype(np.int64)
        self.var_sorted = graph.edge_var[self.by_var]

        self.pre_c, self.suf_c = _fold_steps(graph.chk_degrees)
        self.pre_v, self.suf_v = _fold_steps(graph.var_degrees)

        deg_v = graph.var_degrees
        off_v = np.concatenate(([0], np.cumsum(deg_v)))
        has = deg_v > 0
        self.last_pos_v = (off_v[:-1] + deg_v - 1)[has]
        self.last_vars = np.flatnonzero(has)


def _fold_steps(degrees: np.ndarray):
    """(prefix, suffix) step lists; each step is (targets, sources) in
    the sorted-edge coordinate system."""
    off = np.concatenate(([0], np.cumsum(degrees)))[:-1]
    maxdeg = int(degrees.max()) if degrees.size else 0
    pre = []
    for p in range(1, maxdeg):
        tgt = off[degrees > p] + p
        pre.append((tgt, tgt - 1))
    suf = []
    for p in range(maxdeg - 2, -1, -1):
        tgt = off[degrees > p + 1] + p
        suf.append((tgt, tgt + 1))
    return pre, suf


def decode(
    graph: TannerGraph,
    received,
    max_iters: int = 100,
    *,
    record_messages: bool = False,
) -> DecodeResult:
    """Run flooding-schedule decoding until every posterior is a
    singleton, the edge messages reach a fixed point, or ``max_iters``.

    ``received`` is one channel output per variable, as SymbolSets or
    as a bitmask array.
    """
    q = graph.field.q
    chan = _received_masks(graph, received)
    if q <= MASK_TABLE_MAX_Q:
        return _decode_tables(graph, chan, max_iters, record_messages)
    return _decode_scalar(graph, chan, max_iters, record_messages)


def _received_masks(graph: TannerGraph, received) -> list[int]:
    if isinstance(received, np.ndarray):
        masks = [int(x) for x in received]
    else:
        masks = []
        for s in received:
            if isinstance(s, SymbolSet):
                if s.field.q != graph.field.q:
                    raise ValueError("received set field does not match the graph")
                masks.append(s.mask)
            else:
                masks.append(int(s))
    if len(masks) != graph.n:
        raise ValueError(f"expected {graph.n} received sets, got {len(masks)}")
    if any(m == 0 for m in masks):
        raise DecodingInconsistency("empty channel set")
    return masks


def _result(graph, status, posterior_masks, iterations, vtc_sizes_all_one, history, msgs):
    estimate = [SymbolSet.from_mask(graph.field, int(m)) for m in posterior_masks]
    return DecodeResult(
        status=status,
        estimate=estimate,
        iterations=iterations,
        vtc_resolved=vtc_sizes_all_one,
        vtc_size_history=history,
        message_history=msgs,
    )


def _decode_tables(graph, chan_masks, max_iters, record_messages):
    f = graph.field
    t = mask_tables(f)
    gi = _GraphIndex(graph)
    n_edges = graph.n_edges

    chan = np.asarray(chan_masks, dtype=np.uint16)
    vtc = chan[graph.edge_var]
    posterior = chan.copy()

    def size_hist(arr):
        return np.bincount(t.popcount[arr], minlength=f.q + 1)

    history = [size_hist(vtc)]
    msgs = [(None, vtc.copy())] if record_messages else None

    if bool((t.popcount[posterior] == 1).all()):
        return _result(
            graph, STATUS_SUCCESS, posterior, 0,
            bool((t.popcount[vtc] == 1).all()), history, msgs,
        )

    iterations = 0
    status = STATUS_STALLED
    for it in range(1, max_iters + 1):
        # check pass: leave-one-out sumsets of the negated-label scaled sets
        y = t.scale[gi.sfac, vtc[gi.by_chk]]
        pre = np.ones(n_edges, dtype=np.uint16)
        for tgt, src in gi.pre_c:
            pre[tgt] = t.pair_sum[pre[src], y[src]]
        suf = np.ones(n_edges, dtype=np.uint16)
        for tgt, src in gi.suf_c:
            suf[tgt] = t.pair_sum[suf[src], y[src]]
        out = t.scale[gi.ofac, t.pair_sum[pre, suf]]
        ctv = np.empty_like(vtc)
        ctv[gi.by_chk] = out

        # variable pass: leave-one-out intersections with the channel set
        c = ctv[gi.by_var]
        pre = np.full(n_edges, t.full_mask, dtype=np.uint16)
        for tgt, src in gi.pre_v:
            pre[tgt] = pre[src] & c[src]
        suf = np.full(n_edges, t.full_mask, dtype=np.uint16)
        for tgt, src in gi.suf_v:
            suf[tgt] = suf[src] & c[src]
        new_sorted = chan[gi.var_sorted] & pre & suf
        new_vtc = np.empty_like(vtc)
        new_vtc[gi.by_var] = new_sorted

        posterior = chan.copy()
        posterior[gi.last_vars] = (
            chan[gi.last_vars] & pre[gi.last_pos_v] & c[gi.last_pos_v]
        )

        if bool((new_vtc == 0).any()) or bool((posterior == 0).any()):
            raise DecodingInconsistency("received sets admit no common codeword")

        history.append(size_hist(new_vtc))
        if record_messages:
            msgs.append((ctv.copy(), new_vtc.copy()))

        if bool((t.popcount[posterior] == 1).all()):
            iterations = it
            status = STATUS_SUCCESS
            vtc = new_vtc
            break
        if np.array_equal(new_vtc, vtc):
            iterations = it
            break
        vtc = new_vtc
    else:
        iterations = max_iters

    return _result(
        graph, status, posterior, iterations,
        bool((t.popcount[vtc] == 1).all()), history, msgs,
    )


def _decode_scalar(graph, chan_masks, max_iters, record_messages):
    f = graph.field
    q = f.q
    full = (1 << q) - 1
    chk_edges = [[] for _ in range(graph.m)]
    var_edges = [[] for _ in range(graph.n)]
    for e in range(graph.n_edges):
        chk_edges[int(graph.edge_chk[e])].append(e)
        var_edges[int(graph.edge_var[e])].append(e)
    labels = [int(x) for x in graph.edge_label]
    evar = [int(x) for x in graph.edge_var]

    vtc = [chan_masks[evar[e]] for e in range(graph.n_edges)]
    posterior = list(chan_masks)

    def size_hist(masks):
        h = np.zeros(q + 1, dtype=np.int64)
        for m in masks:
            h[m.bit_count()] += 1
        return h

    history = [size_hist(vtc)]
    msgs = [(None, list(vtc))] if record_messages else None

    if all(m.bit_count() == 1 for m in posterior):
        return _result(
            graph, STATUS_SUCCESS, posterior, 0,
            all(m.bit_count() == 1 for m in vtc), history, msgs,
        )

    iterations = 0
    status = STATUS_STALLED
    for it in range(1, max_iters + 1):
        ctv = [0] * graph.n_edges
        for edges in chk_edges:
            ys = [scale_mask(f, vtc[e], f.neg(labels[e])) for e in edges]
            d = len(edges)
            pre = [1] * (d + 1)
            for k in range(d):
                pre[k + 1] = sumset_pair_mask(f, pre[k], ys[k])
            suf = [1] * (d + 1)
            for k in range(d - 1, -1, -1):
                suf[k] = sumset_pair_mask(f, suf[k + 1], ys[k])
            for k, e in enumerate(edges):
                ctv[e] = scale_mask(
                    f, sumset_pair_mask(f, pre[k], suf[k + 1]), f.inv(labels[e])
                )

        new_vtc = [0] * graph.n_edges
        posterior = []
        for v, edges in enumerate(var_edges):
            cs = [ctv[e] for e in edges]
            d = len(edges)
            pre = [full] * (d + 1)
            for k in range(d):
                pre[k + 1] = pre[k] & cs[k]
            suf = [full] * (d + 1)
            for k in range(d - 1, -1, -1):
                suf[k] = suf[k + 1] & cs[k]
            base = chan_masks[v]
            posterior.append(base & pre[d])
            for k, e in enumerate(edges):
                new_vtc[e] = base & pre[k] & suf[k + 1]

        if any(m == 0 for m in new_vtc) or any(m == 0 for m in posterior):
            raise DecodingInconsistency("received sets admit no common codeword")

        history.append(size_hist(new_vtc))
        if record_messages:
            msgs.append((list(ctv), list(new_vtc)))

        if all(m.bit_count() == 1 for m in posterior):
            iterations = it
            status = STATUS_SUCCESS
            vtc = new_vtc
            break
        if new_vtc == vtc:
            iterations = it
            break
        vtc = new_vtc
    else:
        iterations = max_iters

    return _result(
        graph, status, posterior, iterations,
        all(m.bit_count() == 1 for m in vtc), history, msgs,
    )
