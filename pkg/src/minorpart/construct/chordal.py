"""Chordal partitions of K_t-minor-free graphs."""

from ..bits import bit_iter, lowest, to_mask
from ..errors import InputError, PreconditionError
from ..graph import Graph, component_masks, neighborhood_mask, shortest_path_between
from ..minors import Model
from ..partitions import HPartition, PartSplit


def _as_path(g, comp):
    """The vertices of g[comp] in path order if g[comp] is a path, else None."""
    size = comp.bit_count()
    degs = [(g.adj[v] & comp).bit_count() for v in bit_iter(comp)]
    if size == 1:
        return (lowest(comp),)
    if sum(degs) != 2 * (size - 1) or max(degs) > 2:
        return None
    ends = [v for v in bit_iter(comp) if (g.adj[v] & comp).bit_count() == 1]
    if len(ends) != 2:
        return None
    seq = [ends[0]]
    prev = -1
    while len(seq) < size:
        nxt = [w for w in bit_iter(g.adj[seq[-1]] & comp) if w != prev]
        prev = seq[-1]
        seq.append(nxt[0])
    return tuple(seq)


def chordal_parts(g, t):
    """Ordered parts, H edges and per-part geodesics.

    Repeatedly take the component of the unassigned vertices holding the
    smallest one. For each earlier part it touches pick the smallest adjacent
    vertex of the component, and join those vertices by shortest paths inside
    the component. The union becomes the next part. A component that induces a
    path is taken whole, as a single geodesic.
    """
    if t < 3:
        raise InputError("t must be at least 3")
    parts, geos, edges = [], [], set()
    part_masks = []
    left = g.full
    while left:
        comp = next(c for c in component_masks(g, left) if c >> lowest(left) & 1)
        nb = neighborhood_mask(g, comp)
        touching = [i for i, pm in enumerate(part_masks) if pm & nb]
        if len(touching) >= t - 1:
            chosen = touching[: t - 1]
            model = Model(tuple(frozenset(bit_iter(part_masks[i])) for i in chosen)
                          + (frozenset(bit_iter(comp)),))
            raise PreconditionError(f"found a K_{t} model", evidence=model.to_json())
        line = _as_path(g, comp)
        if line is not None:
            paths = [line]
            new = comp
        elif not touching:
            start = lowest(comp)
            paths = [(start,)]
            new = 1 << start
        else:
            anchors = []
            for i in touching:
                cand = comp & neighborhood_mask(g, part_masks[i])
                anchors.append(lowest(cand))
            new = 1 << anchors[0]
            paths = []
            for v in anchors[1:]:
                if new >> v & 1:
                    continue
                p = shortest_path_between(g, new, 1 << v, within=comp)
                paths.append(tuple(p))
                new |= to_mask(p)
            if not paths:
                paths = [(anchors[0],)]
        idx = len(parts)
        for i in touching:
            edges.add((i, idx))
        parts.append(frozenset(bit_iter(new)))
        part_masks.append(new)
        geos.append(tuple(paths))
        left &= ~new
    return parts, sorted(edges), geos


def chordal_partition(g, t):
    """HPartition in creation order; every part is B-only and carries its geodesics."""
    parts, edges, geos = chordal_parts(g, t)
    h = Graph(len(parts), edges)
    ab = tuple(PartSplit(frozenset(), p, gs, tuple(() for _ in gs)) for p, gs in zip(parts, geos))
    return HPartition(h, tuple(parts), tuple(range(len(parts))), ab)
