"""Tree-decompositions, treewidth, treedepth, natural decompositions, Helly and interfaces."""

from dataclasses import dataclass

from .bits import bit_iter, lowest, to_mask
from .errors import BudgetExceeded, InputError, VerificationError
from .graph import Graph, component_masks, is_connected, is_connected_mask, neighborhood_mask

DEFAULT_EXACT_N = 18


@dataclass(frozen=True)
class RootedForest:
    """parent[v] is v's parent, or None for a root."""

    parent: tuple

    def __post_init__(self):
        n = len(self.parent)
        for v in range(n):
            seen = set()
            p = v
            while p is not None:
                if p in seen or not (0 <= p < n):
                    raise InputError("parent map is not a forest")
                seen.add(p)
                p = self.parent[p]

    @property
    def n(self):
        return len(self.parent)

    def roots(self):
        return [v for v, p in enumerate(self.parent) if p is None]

    def children(self):
        ch = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                ch[p].append(v)
        return ch

    def depth(self, v):
        d = 1
        while self.parent[v] is not None:
            v = self.parent[v]
            d += 1
        return d

    def height(self):
        """Vertex-height: the most vertices on a root-to-leaf path."""
        return max((self.depth(v) for v in range(self.n)), default=0)

    def subtree(self, v):
        ch = self.children()
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(ch[u])
        return sorted(out)


@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple

    @property
    def width(self):
        return max((len(b) for b in self.bags), default=0) - 1

    def to_json(self):
        return {"nodes": self.tree.n, "tree_edges": [list(e) for e in self.tree.edges],
                "bags": [sorted(b) for b in self.bags]}

    @classmethod
    def from_json(cls, obj):
        return cls(Graph(obj["nodes"], obj["tree_edges"]),
                   tuple(frozenset(b) for b in obj["bags"]))

    def rooted(self, root=0):
        """Parent map of the tree rooted at ``root`` (breadth-first, smallest id first)."""
        parent = [None] * self.tree.n
        seen = {root}
        order = [root]
        for u in order:
            for w in self.tree.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    parent[w] = u
                    order.append(w)
        return RootedForest(tuple(parent)), order


def check_tree_decomposition(g, td):
    t = td.tree
    if t.n == 0 or len(td.bags) != t.n:
        raise VerificationError("decomposition needs a non-empty tree with one bag per node")
    if t.m != t.n - 1 or not is_connected(t):
        raise VerificationError("decomposition tree is not a tree")
    for b in td.bags:
        if any(not (0 <= v < g.n) for v in b):
            raise VerificationError("bag vertex out of range")
    masks = [to_mask(b) for b in td.bags]
    for u, v in g.edges:
        if not any(m >> u & 1 and m >> v & 1 for m in masks):
            raise VerificationError(f"edge ({u},{v}) in no bag")
    for v in range(g.n):
        nodes = to_mask(i for i, m in enumerate(masks) if m >> v & 1)
        if not nodes or not is_connected_mask(t, nodes):
            raise VerificationError(f"vertex {v} does not induce a non-empty subtree")
    return True


# ---------------------------------------------------------------- treewidth

def _reach_out(g, s, v):
    """Vertices outside S ∪ {v} reachable from v through S."""
    comp = frontier = 1 << v
    while frontier:
        nxt = 0
        for u in bit_iter(frontier):
            nxt |= g.adj[u]
        nxt &= s & ~comp
        comp |= nxt
        frontier = nxt
    return neighborhood_mask(g, comp) & ~s


def min_fill_order(g):
    adj = list(g.adj)
    left = g.full
    order = []
    width = -1
    while left:
        best = None
        for v in bit_iter(left):
            nb = adj[v] & left
            fill = sum((nb & ~adj[u] & ~(1 << u)).bit_count() for u in bit_iter(nb)) // 2
            key = (fill, nb.bit_count(), v)
            if best is None or key < best:
                best = key
        v = best[2]
        nb = adj[v] & left
        width = max(width, nb.bit_count())
        for u in bit_iter(nb):
            adj[u] |= nb & ~(1 << u)
        left &= ~(1 << v)
        order.append(v)
    return order, width


def elimination_width(g, order):
    adj = list(g.adj)
    left = g.full
    width = -1
    for v in order:
        nb = adj[v] & left & ~(1 << v)
        width = max(width, nb.bit_count())
        for u in bit_iter(nb):
            adj[u] |= nb & ~(1 << u)
        left &= ~(1 << v)
    return width


def decomposition_from_order(g, order):
    """Tree-decomposition whose bags are {v} ∪ later filled neighbours of v."""
    if g.n == 0:
        return TreeDecomposition(Graph(1), (frozenset(),))
    pos = {v: i for i, v in enumerate(order)}
    adj = list(g.adj)
    left = g.full
    bags, parent = [], []
    for v in order:
        nb = adj[v] & left & ~(1 << v)
        for u in bit_iter(nb):
            adj[u] |= nb & ~(1 << u)
        left &= ~(1 << v)
        bags.append(frozenset(bit_iter(nb | (1 << v))))
        parent.append(min(bit_iter(nb), key=pos.__getitem__) if nb else None)
    edges = []
    roots = []
    for i, v in enumerate(order):
        if parent[i] is None:
            roots.append(i)
        else:
            edges.append((i, pos[parent[i]]))
    edges.extend((roots[j], roots[j + 1]) for j in range(len(roots) - 1))
    return TreeDecomposition(Graph(len(order), edges), tuple(bags))


def exact_treewidth(g, budget_n=DEFAULT_EXACT_N):
    """Exact treewidth by dynamic programming over eliminated vertex sets.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v)
    is the set of vertices outside S ∪ {v} reachable from v through S. States
    whose value already reaches the min-fill upper bound are discarded.
    """
    if g.n > budget_n:
        raise BudgetExceeded(f"exact treewidth limited to n <= {budget_n}")
    if g.n == 0:
        return -1, decomposition_from_order(g, [])
    heur_order, ub = min_fill_order(g)
    layer = {0: -1}
    pred = {}
    for _ in range(g.n):
        nxt = {}
        for s, val in layer.items():
            for v in bit_iter(g.full & ~s):
                q = _reach_out(g, s, v).bit_count()
                w = val if val > q else q
                if w >= ub:
                    continue
                t = s | (1 << v)
                if t not in nxt or w < nxt[t]:
                    nxt[t] = w
                    pred[t] = (s, v)
        layer = nxt
        if not layer:
            break
    if g.full in layer:
        order = []
        s = g.full
        while s:
            s, v = pred[s]
            order.append(v)
        order.reverse()
        width = layer[g.full]
    else:
        order, width = heur_order, ub
    td = decomposition_from_order(g, order)
    if td.width != width:
        raise VerificationError("decomposition width disagrees with the computed value")
    return width, td


def treewidth_bb(g):
    """Treewidth by plain branch-and-bound over elimination orderings (oracle)."""
    if g.n == 0:
        return -1
    _, best = min_fill_order(g)

    def rec(adj, left, cur):
        nonlocal best
        if cur >= best:
            return
        if left.bit_count() - 1 <= cur:
            best = cur
            return
        for v in bit_iter(left):
            nb = adj[v] & left
            w = max(cur, nb.bit_count())
            if w >= best:
                continue
            new = list(adj)
            for u in bit_iter(nb):
                new[u] |= nb & ~(1 << u)
            rec(new, left & ~(1 << v), w)

    rec(list(g.adj), g.full, -1)
    return best


# ---------------------------------------------------------------- treedepth

def exact_treedepth(g, budget_n=DEFAULT_EXACT_N):
    """Exact treedepth with an optimal elimination forest."""
    if g.n > budget_n:
        raise BudgetExceeded(f"exact treedepth limited to n <= {budget_n}")
    memo = {}

    def td(mask):
        if mask in memo:
            return memo[mask][0]
        if mask & (mask - 1) == 0:
            memo[mask] = (1 if mask else 0, lowest(mask) if mask else None)
            return memo[mask][0]
        comps = component_masks(g, mask)
        if len(comps) > 1:
            val = max(td(c) for c in comps)
            memo[mask] = (val, None)
            return val
        best, root = None, None
        for v in bit_iter(mask):
            rest = mask & ~(1 << v)
            val = 1 + td(rest)
            if best is None or val < best:
                best, root = val, v
        memo[mask] = (best, root)
        return best

    depth = td(g.full)
    parent = [None] * g.n

    def build(mask, above):
        for c in component_masks(g, mask):
            if c & (c - 1) == 0:
                parent[lowest(c)] = above
                continue
            root = memo[c][1]
            parent[root] = above
            build(c & ~(1 << root), root)

    build(g.full, None)
    forest = RootedForest(tuple(parent))
    if forest.height() != depth:
        raise VerificationError("forest height disagrees with treedepth")
    return depth, forest


def closure_contains(g, forest):
    anc = [0] * g.n
    for v in range(g.n):
        p = forest.parent[v]
        while p is not None:
            anc[v] |= 1 << p
            p = forest.parent[p]
    return all(anc[v] >> u & 1 or anc[u] >> v & 1 for u, v in g.edges)


# ---------------------------------------------------------------- natural decompositions

def _tree_side(tree, x, y):
    """Nodes of the component of tree - xy containing y, as a bitset."""
    comp = frontier = 1 << y
    block = 1 << x
    while frontier:
        nxt = 0
        for u in bit_iter(frontier):
            nxt |= tree.adj[u]
        nxt &= ~comp & ~block
        comp |= nxt
        frontier = nxt
    return comp


def _union_bags(bags, nodes):
    out = 0
    for i in bit_iter(nodes):
        out |= bags[i]
    return out


def natural_violation(g, td):
    """First (x, y) such that the side of tree edge xy containing y has a disconnected bag union."""
    bags = [to_mask(b) for b in td.bags]
    for x, y in td.tree.edges:
        for a, b in ((x, y), (y, x)):
            union = _union_bags(bags, _tree_side(td.tree, a, b))
            if not is_connected_mask(g, union):
                return a, b
    return None


def is_natural(g, td):
    return natural_violation(g, td) is None


def _drop_empty_bags(tree, bags):
    nodes = list(range(tree.n))
    adj = {v: set(tree.neighbors(v)) for v in nodes}
    alive = [True] * tree.n
    for v in nodes:
        if bags[v] or sum(alive) == 1:
            continue
        nbrs = sorted(adj[v])
        alive[v] = False
        for w in nbrs:
            adj[w].discard(v)
        if nbrs:
            hub = nbrs[0]
            for w in nbrs[1:]:
                adj[hub].add(w)
                adj[w].add(hub)
        del adj[v]
    keep = [v for v in nodes if alive[v]]
    pos = {v: i for i, v in enumerate(keep)}
    edges = {(min(pos[u], pos[w]), max(pos[u], pos[w])) for u in keep for w in adj[u]}
    return Graph(len(keep), edges), [bags[v] for v in keep]


def make_natural(g, td):
    """Rewrite td until every tree-edge side has a connected bag union.

    The side of a violating edge is replaced by one copy per component of its
    bag union, each copy's bags restricted to that component. The sorted bag
    size sequence drops lexicographically each round, so the loop ends.
    """
    if not is_connected(g):
        raise InputError("make_natural needs a connected graph")
    check_tree_decomposition(g, td)
    tree = td.tree
    bags = [to_mask(b) for b in td.bags]
    while True:
        bad = natural_violation(g, TreeDecomposition(tree, tuple(frozenset(bit_iter(b)) for b in bags)))
        if bad is None:
            break
        x, y = bad
        side = _tree_side(tree, x, y)
        comps = component_masks(g, _union_bags(bags, side))
        keep = [v for v in range(tree.n) if not side >> v & 1]
        new_bags = [bags[v] for v in keep]
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[w]) for u, w in tree.edges if u in pos and w in pos]
        side_nodes = list(bit_iter(side))
        side_edges = [(u, w) for u, w in tree.edges if side >> u & 1 and side >> w & 1]
        for c in comps:
            local = {}
            for v in side_nodes:
                local[v] = len(new_bags)
                new_bags.append(bags[v] & c)
            edges.extend((local[u], local[w]) for u, w in side_edges)
            edges.append((pos[x], local[y]))
        tree = Graph(len(new_bags), edges)
        bags = new_bags
    tree, bags = _drop_empty_bags(tree, bags)
    out = TreeDecomposition(tree, tuple(frozenset(bit_iter(b)) for b in bags))
    check_tree_decomposition(g, out)
    return out


# ---------------------------------------------------------------- Helly property

@dataclass(frozen=True)
class DisjointFamily:
    members: tuple


@dataclass(frozen=True)
class HittingBags:
    nodes: tuple


def _subtree_masks(td, root=0):
    forest, order = td.rooted(root)
    bags = [to_mask(b) for b in td.bags]
    sub = list(bags)
    for v in reversed(order):
        p = forest.parent[v]
        if p is not None:
            sub[p] |= sub[v]
    return forest, sub


def helly_search(td, d, member_within):
    """Core of the Helly step driven by an oracle.

    ``member_within(mask)`` returns a family member (bitset) inside mask or
    None. Up to d times: descend from the root to a node whose subtree holds a
    member but no child subtree does, record its bag, and discard its subtree.
    """
    forest, sub = _subtree_masks(td)
    children = forest.children()
    universe = _union_bags([to_mask(b) for b in td.bags], (1 << td.tree.n) - 1)
    nodes, members = [], []
    while len(nodes) < d:
        found = member_within(universe & sub[0])
        if found is None:
            return HittingBags(tuple(nodes))
        node = 0
        descended = True
        while descended:
            descended = False
            for c in children[node]:
                m = member_within(universe & sub[c])
                if m is not None:
                    node, found, descended = c, m, True
                    break
        nodes.append(node)
        members.append(found)
        universe &= ~sub[node]
    return DisjointFamily(tuple(frozenset(bit_iter(m)) for m in members))


def helly_hit(g, td, fam, d):
    """d pairwise disjoint members of fam, or at most d-1 bags meeting every member."""
    if d < 1:
        raise InputError("d must be positive")
    masks = [to_mask(m) for m in fam]
    for m in masks:
        if not m or not is_connected_mask(g, m):
            raise InputError("family members must be non-empty and connected")

    def within(w):
        for m in masks:
            if m & ~w == 0:
                return m
        return None

    out = helly_search(td, d, within)
    check_helly(g, td, fam, d, out)
    return out


def check_helly(g, td, fam, d, out):
    if isinstance(out, DisjointFamily):
        if len(out.members) != d:
            raise VerificationError("disjoint family must have d members")
        seen = set()
        for m in out.members:
            if seen & m:
                raise VerificationError("family members overlap")
            seen |= m
        if fam is not None and any(m not in {frozenset(f) for f in fam} for m in out.members):
            raise VerificationError("member not from the family")
    else:
        if len(out.nodes) > d - 1:
            raise VerificationError("too many hitting bags")
        hit = _union_bags([to_mask(b) for b in td.bags], to_mask(out.nodes))
        if fam is not None and any(not to_mask(m) & hit for m in fam):
            raise VerificationError("a member is not hit")
    return True


# ---------------------------------------------------------------- interfaces

def mark_tree(forest, u_set):
    """Marked node set V ⊇ U of size at most 2|U|-1 on a single rooted tree.

    At each node: if no child subtree meets U, keep the node; if exactly one
    does, recurse into it and keep the node only when it lies in U; if several
    do, keep the node and recurse into all of them.
    """
    u_set = set(u_set)
    if not u_set:
        raise InputError("U must be non-empty")
    roots = forest.roots()
    if len(roots) != 1:
        raise InputError("mark_tree needs a single tree")
    children = forest.children()
    has_u = [False] * forest.n
    order = []
    stack = [roots[0]]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(children[v])
    for v in reversed(order):
        has_u[v] = v in u_set or any(has_u[c] for c in children[v])
    if not u_set <= set(order):
        raise InputError("U must lie in the tree")
    marked = set()
    stack = [roots[0]]
    while stack:
        v = stack.pop()
        rel = [c for c in children[v] if has_u[c]]
        if len(rel) == 1:
            if v in u_set:
                marked.add(v)
            stack.append(rel[0])
        else:
            marked.add(v)
            stack.extend(rel)
    return frozenset(marked)


def capture_interfaces(g, td, y_nodes):
    """Grow the bag set Y to at most 2|Y|-1 bags whose union X has small interfaces.

    Returns (X, marked nodes).
    """
    if not y_nodes:
        raise InputError("need at least one node")
    forest, _ = td.rooted(0)
    marked = mark_tree(forest, y_nodes)
    x = frozenset().union(*(td.bags[v] for v in marked))
    return x, tuple(sorted(marked))


def interface_report(g, td, x, marked):
    """For each component C of g - X: (C, N(C) ∩ X, bag pair covering it or None)."""
    xm = to_mask(x)
    rows = []
    bag_masks = [(v, to_mask(td.bags[v])) for v in marked]
    for c in component_masks(g, g.full & ~xm):
        nb = neighborhood_mask(g, c) & xm
        cover = None
        for i, (u, bu) in enumerate(bag_masks):
            for v, bv in bag_masks[i:]:
                if nb & ~(bu | bv) == 0:
                    cover = (u, v)
                    break
            if cover:
                break
        if nb == 0:
            cover = ()
        rows.append((c, nb, cover))
    return rows


def check_capture(g, td, y_nodes, x, marked, natural=False):
    if not set(y_nodes) <= set(marked):
        raise VerificationError("Y must be among the marked bags")
    if len(marked) > 2 * len(set(y_nodes)) - 1:
        raise VerificationError("too many marked bags")
    if x != frozenset().union(*(td.bags[v] for v in marked)):
        raise VerificationError("X is not the union of the marked bags")
    for c, nb, cover in interface_report(g, td, x, marked):
        if cover is None:
            raise VerificationError("component interface needs more than two bags")
        if natural:
            touched = sum(1 for comp in component_masks(g, g.full & ~c) if comp & nb)
            if touched > 2:
                raise VerificationError("interface meets more than two components")
    return True
