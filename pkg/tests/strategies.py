"""Hypothesis strategies for small graphs."""

from hypothesis import strategies as st

from minorpart.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [e for e in pairs if draw(st.booleans())]
    if connected:
        # a random spanning tree keeps the graph connected
        for v in range(1, n):
            edges.append((draw(st.integers(0, v - 1)), v))
    return Graph(n, edges)


@st.composite
def trees(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    return Graph(n, [(draw(st.integers(0, v - 1)), v) for v in range(1, n)])
