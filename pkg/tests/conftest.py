import pytest

from cubicpm import from_edge_list, named


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance-criteria checks")


NAMED_CUBIC_BRIDGELESS = ("theta", "k4", "k33", "prism", "cube", "petersen")


@pytest.fixture(scope="session")
def named_graphs():
    return {name: named(name) for name in (
        "theta", "k4", "k33", "prism", "cube", "petersen",
        "moebius_kantor", "dodecahedron", "exceptional6",
    )}


def circular_ladder(k: int):
    """Prism graph CL_k: two k-cycles joined by a perfect matching."""
    pairs = []
    for i in range(k):
        pairs.append((i, (i + 1) % k))
        pairs.append((k + i, k + (i + 1) % k))
        pairs.append((i, k + i))
    return from_edge_list(2 * k, pairs)


def moebius_ladder(k: int):
    """C_{2k} plus the k diameters."""
    n = 2 * k
    pairs = [(i, (i + 1) % n) for i in range(n)]
    pairs += [(i, i + k) for i in range(k)]
    return from_edge_list(n, pairs)


def two_block_chain():
    """Two K4-minus-edge blocks, degree-2 vertices joined pairwise (cubic, one 2-cut)."""
    blk = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = blk + [(u + 4, v + 4) for u, v in blk] + [(0, 4), (1, 5)]
    return from_edge_list(8, edges)


def pendant_triangle_chain():
    """Two triangles with pendants, pendant tips joined: a unique-PM graph."""
    return from_edge_list(
        8, [(0, 1), (1, 2), (1, 3), (2, 3), (4, 5), (5, 6), (5, 7), (6, 7), (0, 4)]
    )


def bridged_cubic():
    """Cubic graph with a bridge: two 5-vertex blocks joined by one edge."""
    blk = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (4, 2), (4, 3)]
    edges = blk + [(5 + u, 5 + v) for u, v in blk] + [(4, 9)]
    return from_edge_list(10, edges)


def ladder_host(k: int):
    """A cyclically 4-edge-connected cubic graph whose 4-cut side is a 2xk grid.

    The four grid corners attach to a 4-cycle so that the grid's end rungs
    sit opposite the cycle's pairs.
    """
    from cubicpm import ladder

    g = ladder(k)
    n = 2 * k
    pairs = list(g.edges)
    # corners are 0, 1 (first rung) and n-2, n-1 (last rung)
    pairs += [(0, n), (1, n + 1), (n - 2, n + 2), (n - 1, n + 3)]
    pairs += [(n, n + 1), (n + 1, n + 2), (n + 2, n + 3), (n, n + 3)]
    return from_edge_list(n + 4, pairs)
