"""Network simplex kernel for the dense transport polytope.

Solves  min <cost, x>  over nonnegative n-by-m matrices whose rows each sum
to ``m`` and whose columns each sum to ``n`` (integer-scaled uniform
marginals; total flow ``n*m``).  Integer supplies keep every basic solution
integral, so feasibility is exact and the caller recovers probability masses
by a single division by ``n*m``.

Layout: sources are nodes ``0..n-1``, targets ``n..n+m-1``, and the arc from
source ``i`` to target ``j`` has id ``i*m + j`` into the flattened cost
array.  The basis is a spanning tree stored as parent/child-sibling arrays;
flows live on the arc between a node and its parent.

Pivoting is Dantzig-style over circular blocks of ~sqrt(n*m) arcs (most
negative reduced cost seen in the block enters).  A long run of consecutive
degenerate pivots switches the search permanently to Bland's rule
(lowest-index entering arc, lowest-index leaving arc), which cannot cycle.
"""

from __future__ import annotations

import numpy as np
from numba import njit

OPTIMAL = 0
PIVOT_LIMIT = 1

# Relative slack for "negative" reduced costs; scaled by the local magnitude
# of the potentials and cost involved, never by an absolute floor, so the
# test adapts to any cost scale.
_EPS = 1e-14


@njit(cache=True, nogil=True, inline="always")
def _attach(v, p, parent, first_child, next_sib, prev_sib):
    parent[v] = p
    head = first_child[p]
    next_sib[v] = head
    prev_sib[v] = -1
    if head != -1:
        prev_sib[head] = v
    first_child[p] = v


@njit(cache=True, nogil=True, inline="always")
def _detach(v, parent, first_child, next_sib, prev_sib):
    p = parent[v]
    nxt = next_sib[v]
    prv = prev_sib[v]
    if prv != -1:
        next_sib[prv] = nxt
    else:
        first_child[p] = nxt
    if nxt != -1:
        prev_sib[nxt] = prv
    parent[v] = -1


@njit(cache=True, nogil=True)
def _recompute_potentials(n, cost, pedge, first_child, next_sib, pot, stack):
    # Preorder walk from the root (node 0); on a basic arc the reduced cost
    # vanishes: cost = pot[source] - pot[target].
    pot[0] = 0.0
    top = 0
    stack[top] = 0
    while top >= 0:
        u = stack[top]
        top -= 1
        c = first_child[u]
        while c != -1:
            if c >= n:
                pot[c] = pot[u] - cost[pedge[c]]
            else:
                pot[c] = pot[u] + cost[pedge[c]]
            top += 1
            stack[top] = c
            c = next_sib[c]


@njit(cache=True, nogil=True)
def solve(cost, n, m, pivot_cap):
    """Solve one transport problem.

    cost : contiguous float64 array of length n*m (row-major matrix)
    Returns (arc_ids, flows, status, pivots) where arc_ids/flows describe
    the n+m-1 basic arcs (flows may include zeros on degenerate bases).
    """
    num_nodes = n + m
    num_arcs = n * m

    parent = np.full(num_nodes, -1, np.int64)
    pedge = np.full(num_nodes, -1, np.int64)
    flow_at = np.zeros(num_nodes, np.int64)
    depth = np.zeros(num_nodes, np.int64)
    pot = np.zeros(num_nodes, np.float64)
    first_child = np.full(num_nodes, -1, np.int64)
    next_sib = np.full(num_nodes, -1, np.int64)
    prev_sib = np.full(num_nodes, -1, np.int64)
    stack = np.empty(num_nodes, np.int64)

    # ---- north-west corner starting basis ----
    i = np.int64(0)
    j = np.int64(0)
    ra = np.int64(m)  # supply left at source i
    rb = np.int64(n)  # demand left at target j
    x = ra if ra < rb else rb
    _attach(n + 0, 0, parent, first_child, next_sib, prev_sib)
    pedge[n + 0] = 0
    flow_at[n + 0] = x
    ra -= x
    rb -= x
    while not (i == n - 1 and j == m - 1):
        # exactly one of ra, rb is zero here; ties advance down the rows,
        # leaving a zero-flow basic arc (degenerate but still a tree)
        if ra == 0 and i < n - 1:
            i += 1
            ra = np.int64(m)
            child = i
            par = n + j
        else:
            j += 1
            rb = np.int64(n)
            child = n + j
            par = i
        x = ra if ra < rb else rb
        _attach(child, par, parent, first_child, next_sib, prev_sib)
        pedge[child] = i * m + j
        flow_at[child] = x
        ra -= x
        rb -= x

    # depths and potentials for the initial tree
    depth[0] = 0
    top = 0
    stack[top] = 0
    while top >= 0:
        u = stack[top]
        top -= 1
        c = first_child[u]
        while c != -1:
            depth[c] = depth[u] + 1
            top += 1
            stack[top] = c
            c = next_sib[c]
    _recompute_potentials(n, cost, pedge, first_child, next_sib, pot, stack)

    block = np.int64(np.sqrt(num_arcs)) + 1
    if block < 64:
        block = 64
    if block > num_arcs:
        block = num_arcs
    next_arc = np.int64(0)
    refresh = num_nodes if num_nodes > 256 else 256

    pivots = np.int64(0)
    degen_run = np.int64(0)
    bland = False
    status = OPTIMAL

    while True:
        # ---- entering arc ----
        enter = np.int64(-1)
        if bland:
            e = np.int64(0)
            for src in range(n):
                pi_i = pot[src]
                done = False
                for tgt in range(m):
                    r = cost[e] - pi_i + pot[n + tgt]
                    a = abs(pi_i)
                    b = abs(pot[n + tgt])
                    if b > a:
                        a = b
                    b = abs(cost[e])
                    if b > a:
                        a = b
                    if r < -_EPS * a:
                        enter = e
                        done = True
                        break
                    e += 1
                if done:
                    break
        else:
            count = block
            best_r = 0.0
            best_e = np.int64(-1)
            e = next_arc
            src = e // m
            tgt = e - src * m
            pi_i = pot[src]
            scanned = np.int64(0)
            while scanned < num_arcs:
                r = cost[e] - pi_i + pot[n + tgt]
                if r < best_r:
                    best_r = r
                    best_e = e
                scanned += 1
                count -= 1
                e += 1
                tgt += 1
                if tgt == m:
                    tgt = 0
                    src += 1
                    if src == n:
                        src = 0
                        e = 0
                    pi_i = pot[src]
                if count == 0 or scanned == num_arcs:
                    if best_e != -1:
                        bi = best_e // m
                        bj = n + (best_e - bi * m)
                        a = abs(pot[bi])
                        b = abs(pot[bj])
                        if b > a:
                            a = b
                        b = abs(cost[best_e])
                        if b > a:
                            a = b
                        if best_r < -_EPS * a:
                            enter = best_e
                            next_arc = e
                            break
                    count = block

        if enter == -1:
            break  # optimal

        src_e = enter // m
        tgt_e = n + (enter - src_e * m)
        r_enter = cost[enter] - pot[src_e] + pot[tgt_e]

        # ---- apex of the basis cycle ----
        u = src_e
        v = tgt_e
        while u != v:
            if depth[u] >= depth[v]:
                u = parent[u]
            else:
                v = parent[v]
        apex = u

        # ---- leaving arc: minimum flow over the minus-arcs of the cycle.
        # Walking up from either endpoint, arcs at even positions lose flow
        # (node types alternate along any tree path, so signs alternate too).
        theta = np.int64(-1)
        leave = np.int64(-1)
        leave_on_src_side = True
        minus = True
        u = src_e
        while u != apex:
            if minus:
                f = flow_at[u]
                take = False
                if theta < 0 or f < theta:
                    take = True
                elif bland and f == theta and leave != -1 and pedge[u] < pedge[leave]:
                    take = True
                if take:
                    theta = f
                    leave = u
                    leave_on_src_side = True
            minus = not minus
            u = parent[u]
        minus = True
        u = tgt_e
        while u != apex:
            if minus:
                f = flow_at[u]
                take = False
                if theta < 0 or f < theta:
                    take = True
                elif bland and f == theta and leave != -1 and pedge[u] < pedge[leave]:
                    take = True
                if take:
                    theta = f
                    leave = u
                    leave_on_src_side = False
            minus = not minus
            u = parent[u]

        # ---- push theta around the cycle ----
        if theta > 0:
            minus = True
            u = src_e
            while u != apex:
                if minus:
                    flow_at[u] -= theta
                else:
                    flow_at[u] += theta
                minus = not minus
                u = parent[u]
            minus = True
            u = tgt_e
            while u != apex:
                if minus:
                    flow_at[u] -= theta
                else:
                    flow_at[u] += theta
                minus = not minus
                u = parent[u]

        # ---- basis exchange: re-root the cut-off subtree at q and hang it
        # below the other endpoint via the entering arc.
        if leave_on_src_side:
            q = src_e
            p_other = tgt_e
            delta = r_enter
        else:
            q = tgt_e
            p_other = src_e
            delta = -r_enter

        prev_node = p_other
        prev_edge = enter
        prev_flow = theta
        v = q
        while True:
            old_parent = parent[v]
            old_edge = pedge[v]
            old_flow = flow_at[v]
            _detach(v, parent, first_child, next_sib, prev_sib)
            _attach(v, prev_node, parent, first_child, next_sib, prev_sib)
            pedge[v] = prev_edge
            flow_at[v] = prev_flow
            if v == leave:
                break
            prev_node = v
            prev_edge = old_edge
            prev_flow = old_flow
            v = old_parent

        # shift potentials and refresh depths across the moved subtree
        depth[q] = depth[p_other] + 1
        pot[q] += delta
        top = 0
        stack[top] = q
        while top >= 0:
            u = stack[top]
            top -= 1
            c = first_child[u]
            while c != -1:
                depth[c] = depth[u] + 1
                pot[c] += delta
                top += 1
                stack[top] = c
                c = next_sib[c]

        pivots += 1
        if theta == 0:
            degen_run += 1
            if not bland and degen_run > num_nodes + 50:
                bland = True
        else:
            degen_run = 0
        if pivots % refresh == 0:
            # bound float drift accumulated by repeated subtree shifts
            _recompute_potentials(n, cost, pedge, first_child, next_sib, pot, stack)
        if pivots >= pivot_cap:
            status = PIVOT_LIMIT
            break

    arcs_out = np.empty(num_nodes - 1, np.int64)
    flows_out = np.empty(num_nodes - 1, np.int64)
    k = 0
    for v in range(1, num_nodes):
        arcs_out[k] = pedge[v]
        flows_out[k] = flow_at[v]
        k += 1
    return arcs_out, flows_out, status, pivots
