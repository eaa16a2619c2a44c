"""Colimits of finite poset diagrams and bounded universal-property verification.

A colimit is computed in three stages: quotient of the disjoint union by the
edge identifications (union-find), the preorder generated by the images of the
node relations, and condensation of its strongly connected components.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .posets import FinPoset, MonotoneMap


class ColimitError(Exception):
    pass


class SubcategoryError(ColimitError):
    """A diagram node lies outside the requested subcategory."""


@dataclass
class PosetDiagram:
    """Finite multidigraph with poset nodes and monotone edge maps."""

    nodes: dict
    edges: list  # (edge_id, src_node, dst_node, MonotoneMap)
    name: str = ""

    def __post_init__(self):
        self.edges = [tuple(e) for e in self.edges]
        seen = set()
        for edge_id, src, dst, f in self.edges:
            if edge_id in seen:
                raise ColimitError(f"duplicate edge id {edge_id!r}")
            seen.add(edge_id)
            if src not in self.nodes or dst not in self.nodes:
                raise ColimitError(f"edge {edge_id!r} references an unknown node")
            if f.source != self.nodes[src] or f.target != self.nodes[dst]:
                raise ColimitError(f"edge {edge_id!r} map endpoints do not match its nodes")

    @property
    def node_ids(self):
        return tuple(sorted(self.nodes))

    def total_elements(self):
        return sum(p.n for p in self.nodes.values())


@dataclass
class Cocone:
    diagram: PosetDiagram
    apex: FinPoset
    legs: dict  # node id -> MonotoneMap into apex

    def __post_init__(self):
        for nid in self.diagram.nodes:
            if nid not in self.legs:
                raise ColimitError(f"missing leg for node {nid!r}")
            leg = self.legs[nid]
            if leg.source != self.diagram.nodes[nid] or leg.target != self.apex:
                raise ColimitError(f"leg for node {nid!r} has wrong endpoints")

    def commutes(self):
        for _, src, dst, f in self.diagram.edges:
            if self.legs[dst].compose(f) != self.legs[src]:
                return False
        return True


def _set_colimit_classes(diagram):
    """Stage one: disjoint union of carriers modulo x ~ f(x) for every edge.

    Returns (class_members, class_of) with classes sorted by their smallest
    'node.element' label.
    """
    parent = {}

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for nid, poset in diagram.nodes.items():
        for e in poset.elements:
            parent[(nid, e)] = (nid, e)
    for _, src, dst, f in diagram.edges:
        for x in diagram.nodes[src].elements:
            union((src, x), (dst, f(x)))

    groups = {}
    for key in parent:
        groups.setdefault(find(key), []).append(key)
    members = sorted(
        (sorted(g, key=lambda t: f"{t[0]}.{t[1]}") for g in groups.values()),
        key=lambda g: f"{g[0][0]}.{g[0][1]}",
    )
    class_of = {key: c for c, group in enumerate(members) for key in group}
    return members, class_of


def _class_relation_pairs(diagram, class_of):
    """Distinct class pairs (c1, c2) induced by some node relation x <= y."""
    pairs = set()
    for nid, poset in diagram.nodes.items():
        for i, j in poset.leq_pairs:
            c1 = class_of[(nid, poset.elements[i])]
            c2 = class_of[(nid, poset.elements[j])]
            if c1 != c2:
                pairs.add((c1, c2))
    return sorted(pairs)


def _tarjan_scc(succ):
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, iter(succ[root]))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def colimit_pos(diagram) -> Cocone:
    """Colimit in the category of finite posets, by the three-stage recipe."""
    members, class_of = _set_colimit_classes(diagram)
    n = len(members)
    pairs = _class_relation_pairs(diagram, class_of)
    succ = [[] for _ in range(n)]
    for c1, c2 in pairs:
        succ[c1].append(c2)

    comps = _tarjan_scc(succ)
    comp_of = {}
    comp_names = []
    comp_members = []
    for comp in comps:
        cells = sorted(key for c in comp for key in members[c])
        comp_members.append(cells)
        comp_names.append(f"{cells[0][0]}.{cells[0][1]}")
    order = sorted(range(len(comps)), key=lambda k: comp_names[k])
    rank = {old: new for new, old in enumerate(order)}
    for k, comp in enumerate(comps):
        for c in comp:
            comp_of[c] = rank[k]
    names = [comp_names[k] for k in order]
    m = len(names)

    adj = [0] * m
    for c1, c2 in pairs:
        a, b = comp_of[c1], comp_of[c2]
        if a != b:
            adj[a] |= 1 << b
    closed = _kernels.transitive_closure(adj)
    apex = FinPoset(names, closed, name=diagram.name and f"colim({diagram.name})")

    legs = {}
    for nid, poset in diagram.nodes.items():
        values = tuple(names[comp_of[class_of[(nid, e)]]] for e in poset.elements)
        legs[nid] = MonotoneMap(poset, apex, values)
    return Cocone(diagram, apex, legs)


def _require_nodes(diagram, allow_empty):
    for nid, poset in diagram.nodes.items():
        if not poset.is_total:
            raise SubcategoryError(f"node {nid!r} is not totally ordered")
        if not allow_empty and poset.n == 0:
            raise SubcategoryError(f"node {nid!r} is empty, hence not an object of the simplex category")


def colimit_delta(diagram):
    """Colimit within the simplex category, when the poset colimit lands there.

    The inclusion into posets is full, so it reflects colimits: the result is
    the poset colimit when that is a non-empty total order, and None otherwise.
    """
    _require_nodes(diagram, allow_empty=False)
    cocone = colimit_pos(diagram)
    if cocone.apex.n > 0 and cocone.apex.is_total:
        return cocone
    return None


def colimit_tos(diagram):
    """Colimit among total orders: the poset colimit when its apex is total."""
    _require_nodes(diagram, allow_empty=True)
    cocone = colimit_pos(diagram)
    if cocone.apex.is_total:
        return cocone
    return None


@dataclass
class ApexVerdict:
    apex_label: str
    apex_size: int
    cocones: int
    existence_ok: bool
    uniqueness_ok: bool

    @property
    def ok(self):
        return self.existence_ok and self.uniqueness_ok


@dataclass
class UniversalReport:
    bound: int
    entries: list = field(default_factory=list)
    witness: str = ""

    @property
    def passed(self):
        return all(e.ok for e in self.entries)

    @property
    def cocones_checked(self):
        return sum(e.cocones for e in self.entries)


def _components(n_slots, pairs):
    parent = list(range(n_slots))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j, _ in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri
    groups = {}
    for s in range(n_slots):
        groups.setdefault(find(s), []).append(s)
    return sorted(groups.values())


def verify_universal(diagram, candidate: Cocone, apex_size_bound: int) -> UniversalReport:
    """Check the universal property of `candidate` against every cocone whose
    apex has at most `apex_size_bound` elements (one apex per isomorphism
    class).

    A cocone corresponds to a function on the stage-one quotient classes that
    respects every node relation; the mediating map is forced on apex elements
    hit by the legs, so existence and uniqueness reduce to counting
    constraint-satisfying functions.
    """
    from .corpus import all_posets

    if not candidate.commutes():
        raise ColimitError("invalid-cocone: candidate legs do not commute")

    members, class_of = _set_colimit_classes(diagram)
    n = len(members)
    node_pairs = [(a, b, _kernels.LEQ) for a, b in _class_relation_pairs(diagram, class_of)]

    apex = candidate.apex
    class_to_apex = []
    for group in members:
        images = {candidate.legs[nid](e) for nid, e in group}
        if len(images) > 1:
            raise ColimitError("invalid-cocone: legs disagree on an identified element")
        class_to_apex.append(apex.index(images.pop()))
    hit = set(class_to_apex)
    report = UniversalReport(bound=apex_size_bound)

    if len(hit) == apex.n:
        rep_slot = {}
        for slot, a in enumerate(class_to_apex):
            rep_slot.setdefault(a, slot)
        extra = []
        for slot, a in enumerate(class_to_apex):
            if rep_slot[a] != slot:
                extra.append((rep_slot[a], slot, _kernels.EQ))
        for i, j in apex.leq_pairs:
            extra.append((rep_slot[i], rep_slot[j], _kernels.LEQ))
        good_pairs = node_pairs + extra
        comps = _components(n, good_pairs)

        for target in all_posets(apex_size_bound):
            total = 1
            ok = True
            for comp in comps:
                slot_pos = {s: k for k, s in enumerate(comp)}
                sub_all = [
                    (slot_pos[i], slot_pos[j], k) for i, j, k in node_pairs if i in slot_pos
                ]
                sub_good = [
                    (slot_pos[i], slot_pos[j], k) for i, j, k in good_pairs if i in slot_pos
                ]
                c_all = _kernels.count_maps(len(comp), target.n, list(target.up_rows), sub_all)
                c_good = _kernels.count_maps(len(comp), target.n, list(target.up_rows), sub_good)
                total *= c_all
                if c_all != c_good:
                    ok = False
                    if not report.witness:
                        report.witness = _describe_witness(
                            comp, sub_all, sub_good, target, members
                        )
            report.entries.append(
                ApexVerdict(_label(target), target.n, total, ok, ok)
            )
        return report

    # Some apex elements are unhit: mediating maps are no longer forced, so
    # enumerate cocones and count monotone completions directly.
    for target in all_posets(apex_size_bound):
        assignments = _kernels.list_maps(n, target.n, list(target.up_rows), node_pairs)
        exist_ok = True
        unique_ok = True
        for h in assignments:
            count = _count_mediating(apex, class_to_apex, h, target, cap=2)
            if count == 0:
                exist_ok = False
            if count > 1:
                unique_ok = False
        report.entries.append(
            ApexVerdict(_label(target), target.n, len(assignments), exist_ok, unique_ok)
        )
    return report


def _label(poset):
    return poset.name or f"poset<{poset.n}:{sum(bin(r).count('1') for r in poset.up_rows)}>"


def _describe_witness(comp, sub_all, sub_good, target, members):
    for h in _kernels.list_maps(len(comp), target.n, list(target.up_rows), sub_all):
        for i, j, kind in sub_good:
            vi, vj = h[i], h[j]
            bad_eq = kind == _kernels.EQ and vi != vj
            bad_le = kind == _kernels.LEQ and not target.up_rows[vi] & (1 << vj)
            if bad_eq or bad_le:
                cells = ", ".join(f"{n}.{e}" for n, e in members[comp[i]])
                return (
                    f"cocone into {_label(target)} assigns {target.elements[vi]} to "
                    f"[{cells}] but admits no mediating map"
                )
    return "mediating map missing or ambiguous"


def _count_mediating(apex, class_to_apex, h, target, cap=2):
    """Number of monotone maps apex -> target compatible with the cocone h."""
    forced = {}
    for slot, a in enumerate(class_to_apex):
        if a in forced and forced[a] != h[slot]:
            return 0
        forced[a] = h[slot]
    free = [a for a in range(apex.n) if a not in forced]
    count = 0

    def rec(k, partial):
        nonlocal count
        if count >= cap:
            return
        if k == len(free):
            count += 1
            return
        a = free[k]
        for v in range(target.n):
            trial = dict(partial)
            trial[a] = v
            if _monotone_so_far(apex, target, trial, a):
                rec(k + 1, trial)

    for a, v in forced.items():
        if not _monotone_so_far(apex, target, forced, a):
            return 0
    if not free:
        return 1
    rec(0, dict(forced))
    return count


def _monotone_so_far(apex, target, partial, focus):
    v = partial[focus]
    for b, w in partial.items():
        if b == focus:
            continue
        if apex.up_rows[focus] & (1 << b) and not target.up_rows[v] & (1 << w):
            return False
        if apex.up_rows[b] & (1 << focus) and not target.up_rows[w] & (1 << v):
            return False
    return True
