"""Shared fixture builders for the test suite."""

from poscat import FinPoset, PosetDiagram, make_poset, monotone_maps
from poscat.corpus import poset_classes


def two_chain():
    return make_poset(["0", "1"], [("0", "1")], name="two-chain")


def three_chain():
    return make_poset(["0", "1", "2"], [("0", "1"), ("1", "2")], name="three-chain")


def two_antichain():
    return make_poset(["a", "b"], [], name="two-antichain")


def singleton():
    return make_poset(["x"], [], name="pt")


def v_poset():
    return make_poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="V")


def relabel(poset, prefix):
    """Copy with every element renamed `prefix + old`."""
    return FinPoset(tuple(prefix + e for e in poset.elements), poset.up_rows, name=poset.name)


def random_diagram(rng, max_nodes=4, max_elems=4):
    """Seeded random multidigraph of small posets with monotone edge maps."""
    n_nodes = rng.randint(1, max_nodes)
    nodes = {}
    for k in range(n_nodes):
        size = rng.randint(1, max_elems)
        classes = poset_classes(size)
        base = classes[rng.randrange(len(classes))]
        nodes[f"N{k}"] = relabel(base, f"n{k}.")
    node_ids = sorted(nodes)
    edges = []
    for t in range(rng.randint(0, n_nodes + 1)):
        src = node_ids[rng.randrange(n_nodes)]
        dst = node_ids[rng.randrange(n_nodes)]
        maps = monotone_maps(nodes[src], nodes[dst])
        edges.append((f"e{t}", src, dst, maps[rng.randrange(len(maps))]))
    return PosetDiagram(nodes=nodes, edges=edges, name=f"random{rng.randrange(10**6)}")
