"""Finite partial orders, monotone maps, chains, linear extensions, retractions."""

from __future__ import annotations

from functools import cached_property

from . import _kernels


class PosetError(Exception):
    pass


class CycleError(PosetError):
    """Declared relations force x <= y <= x for distinct x, y."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        chain = " <= ".join(self.cycle + (self.cycle[0],))
        super().__init__(f"antisymmetry violation: {chain}")


class NotSplitMonoError(PosetError):
    pass


class FinPoset:
    """Finite poset: element identifiers plus the full <= relation as row bitmasks.

    up_rows[i] has bit j set iff elements[i] <= elements[j].  The relation is
    validated (reflexive, transitive, antisymmetric) on construction and the
    value is immutable afterwards; `name` is metadata and ignored by equality.
    """

    def __init__(self, elements, up_rows, name=""):
        self.elements = tuple(elements)
        self.up_rows = tuple(up_rows)
        self.name = name
        self._index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        if len(self._index) != n:
            raise PosetError("duplicate element identifiers")
        if len(self.up_rows) != n:
            raise PosetError("relation table size mismatch")
        full = (1 << n) - 1
        for i, row in enumerate(self.up_rows):
            if row & ~full:
                raise PosetError("relation table out of range")
            if not row & (1 << i):
                raise PosetError(f"relation not reflexive at {self.elements[i]}")
        for i in range(n):
            for j in range(n):
                if self.up_rows[i] & (1 << j):
                    if i != j and self.up_rows[j] & (1 << i):
                        raise PosetError(
                            f"relation not antisymmetric at {self.elements[i]}, {self.elements[j]}"
                        )
                    if self.up_rows[j] & ~self.up_rows[i]:
                        raise PosetError("relation not transitive")

    @property
    def n(self):
        return len(self.elements)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, FinPoset):
            return NotImplemented
        return self.elements == other.elements and self.up_rows == other.up_rows

    def __hash__(self):
        return hash((self.elements, self.up_rows))

    def __repr__(self):
        shown = self.name or ",".join(self.elements)
        return f"FinPoset({shown!r}, n={self.n})"

    def index(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise PosetError(f"unknown element {x!r}") from None

    def leq(self, x, y):
        return bool(self.up_rows[self.index(x)] & (1 << self.index(y)))

    @cached_property
    def down_rows(self):
        cols = [0] * self.n
        for i, row in enumerate(self.up_rows):
            for j in range(self.n):
                if row & (1 << j):
                    cols[j] |= 1 << i
        return tuple(cols)

    @cached_property
    def leq_pairs(self):
        """Index pairs (i, j) with i <= j and i != j."""
        return tuple(
            (i, j)
            for i in range(self.n)
            for j in range(self.n)
            if i != j and self.up_rows[i] & (1 << j)
        )

    @cached_property
    def cover_pairs(self):
        """Hasse diagram edges: (i, j) with j covering i."""
        out = []
        for i, j in self.leq_pairs:
            between = self.up_rows[i] & self.down_rows[j] & ~(1 << i) & ~(1 << j)
            if not between:
                out.append((i, j))
        return tuple(out)

    @cached_property
    def is_total(self):
        return all(
            self.up_rows[i] & (1 << j) or self.up_rows[j] & (1 << i)
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )

    @cached_property
    def height(self):
        """Number of covers in a longest chain (0 for antichains and the empty poset)."""
        depth = [0] * self.n
        for i in self.toposort:
            for a, b in self.cover_pairs:
                if a == i:
                    depth[b] = max(depth[b], depth[i] + 1)
        return max(depth, default=0)

    @cached_property
    def toposort(self):
        """Element indices in an order compatible with <=."""
        order = sorted(range(self.n), key=lambda i: (bin(self.down_rows[i]).count("1"), i))
        return tuple(order)

    def sorted_by_order(self):
        """Elements of a total order listed smallest first."""
        if not self.is_total:
            raise PosetError("poset is not totally ordered")
        return tuple(self.elements[i] for i in self.toposort)


def make_poset(elements, pairs, name="") -> FinPoset:
    """Close declared pairs reflexively and transitively; fail on cycles.

    Elements are stored sorted lexicographically so output listings are
    deterministic regardless of input order.
    """
    elements = sorted(elements)
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise PosetError("duplicate element identifiers")
    n = len(elements)
    rows = [0] * n
    declared = []
    for x, y in pairs:
        if x not in index or y not in index:
            missing = x if x not in index else y
            raise PosetError(f"pair mentions unknown element {missing!r}")
        rows[index[x]] |= 1 << index[y]
        declared.append((index[x], index[y]))
    closed = _kernels.transitive_closure(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if closed[i] & (1 << j) and closed[j] & (1 << i):
                raise CycleError(_find_cycle(elements, declared, i, j))
    return FinPoset(elements, closed, name=name)


def _find_cycle(elements, declared, i, j):
    """One offending cycle i -> ... -> j -> ... -> i along declared pairs."""
    adj = {}
    for a, b in declared:
        adj.setdefault(a, []).append(b)

    def path(src, dst):
        prev = {src: None}
        queue = [src]
        while queue:
            u = queue.pop(0)
            if u == dst:
                out = []
                while u is not None:
                    out.append(u)
                    u = prev[u]
                return out[::-1]
            for v in sorted(adj.get(u, ())):
                if v not in prev:
                    prev[v] = u
                    queue.append(v)
        return None

    there = path(i, j)
    back = path(j, i)
    cycle = there + back[1:-1]
    return tuple(elements[k] for k in cycle)


class MonotoneMap:
    """Order-preserving function between finite posets.

    values[i] names the image of source.elements[i]; monotonicity is checked
    on construction.
    """

    def __init__(self, source, target, values):
        self.source = source
        self.target = target
        self.values = tuple(values)
        if len(self.values) != source.n:
            raise PosetError("value table does not cover the source")
        self._tgt_idx = tuple(target.index(v) for v in self.values)
        for i, j in source.leq_pairs:
            if not target.up_rows[self._tgt_idx[i]] & (1 << self._tgt_idx[j]):
                raise PosetError(
                    f"not monotone: {source.elements[i]} <= {source.elements[j]} "
                    f"but {self.values[i]} !<= {self.values[j]}"
                )

    @classmethod
    def from_dict(cls, source, target, mapping):
        return cls(source, target, tuple(mapping[e] for e in source.elements))

    @classmethod
    def identity(cls, poset):
        return cls(poset, poset, poset.elements)

    def __call__(self, x):
        return self.values[self.source.index(x)]

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.source, self.target, self.values))

    def __repr__(self):
        body = ", ".join(f"{x}->{y}" for x, y in zip(self.source.elements, self.values))
        return f"MonotoneMap({body})"

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise PosetError("composition endpoint mismatch")
        return MonotoneMap(other.source, self.target, tuple(self(v) for v in other.values))

    @cached_property
    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    @cached_property
    def is_surjective(self):
        return len(set(self.values)) == self.target.n

    def is_order_isomorphism(self):
        if not (self.is_injective and self.is_surjective):
            return False
        inv = {y: x for x, y in zip(self.source.elements, self.values)}
        try:
            MonotoneMap.from_dict(self.target, self.source, inv)
        except PosetError:
            return False
        return True

    def inverse(self):
        if not self.is_order_isomorphism():
            raise PosetError("map is not an order isomorphism")
        inv = {y: x for x, y in zip(self.source.elements, self.values)}
        return MonotoneMap.from_dict(self.target, self.source, inv)


def chains(poset, n, strict=False):
    """All weakly (or strictly) increasing (n+1)-tuples, lexicographically ordered."""
    if n < 0:
        raise PosetError("chain length must be >= 0")
    kind = _kernels.LT if strict else _kernels.LEQ
    pairs = [(k, k + 1, kind) for k in range(n)]
    order = sorted(range(poset.n), key=lambda i: poset.elements[i])
    rows = [0] * poset.n
    for a in range(poset.n):
        for b in range(poset.n):
            if poset.up_rows[order[a]] & (1 << order[b]):
                rows[a] |= 1 << b
    tuples = _kernels.list_maps(n + 1, poset.n, rows, pairs)
    return [tuple(poset.elements[order[v]] for v in t) for t in tuples]


def monotone_maps(source, target):
    """All monotone maps source -> target, deterministically ordered."""
    pairs = [(i, j, _kernels.LEQ) for i, j in source.cover_pairs]
    tables = _kernels.list_maps(source.n, target.n, list(target.up_rows), pairs)
    return [
        MonotoneMap(source, target, tuple(target.elements[v] for v in t)) for t in tables
    ]


def count_monotone_maps(source, target):
    pairs = [(i, j, _kernels.LEQ) for i, j in source.cover_pairs]
    return _kernels.count_maps(source.n, target.n, list(target.up_rows), pairs)


def linear_extensions(poset):
    """Every total order containing the poset, as FinPosets on the same elements."""
    remaining = list(range(poset.n))
    seq = []
    out = []

    def rec():
        if not remaining:
            out.append(chain_poset([poset.elements[i] for i in seq]))
            return
        for i in list(remaining):
            below = poset.down_rows[i] & ~(1 << i)
            if all(not below & (1 << j) for j in remaining):
                remaining.remove(i)
                seq.append(i)
                rec()
                seq.pop()
                remaining.append(i)
                remaining.sort()

    rec()
    return out


def intersection_of_extensions(poset):
    """Pointwise conjunction of all linear extensions, as a relation on the poset."""
    exts = linear_extensions(poset)
    rows = [(1 << poset.n) - 1] * poset.n if exts else list(poset.up_rows)
    for ext in exts:
        for i, e in enumerate(poset.elements):
            mask = 0
            for j, f in enumerate(poset.elements):
                if ext.leq(e, f):
                    mask |= 1 << j
            rows[i] &= mask
    return FinPoset(poset.elements, rows, name=poset.name)


def split_retraction(f: MonotoneMap) -> MonotoneMap:
    """Left inverse of an injective monotone map between finite total orders.

    g sends t to the largest source element whose image is <= t, bottoming out
    at the least element; g(f(x)) = x.
    """
    src, tgt = f.source, f.target
    if src.n == 0:
        raise NotSplitMonoError("source must be non-empty")
    if not (src.is_total and tgt.is_total):
        raise NotSplitMonoError("source and target must be totally ordered")
    if not f.is_injective:
        raise NotSplitMonoError("map is not injective")
    xs = src.sorted_by_order()
    images = [f(x) for x in xs]
    values = []
    for t in tgt.sorted_by_order():
        if tgt.leq(t, images[0]) and t != images[0]:
            values.append(xs[0])
            continue
        pick = xs[-1]
        for k in range(len(xs) - 1):
            if tgt.leq(images[k], t) and tgt.leq(t, images[k + 1]) and t != images[k + 1]:
                pick = xs[k]
                break
        values.append(pick)
    order = {t: v for t, v in zip(tgt.sorted_by_order(), values)}
    return MonotoneMap.from_dict(tgt, src, order)


def _signatures(poset, rounds=3):
    sig = [
        (bin(poset.down_rows[i]).count("1"), bin(poset.up_rows[i]).count("1"))
        for i in range(poset.n)
    ]
    for _ in range(rounds):
        sig = [
            (
                sig[i],
                tuple(sorted(sig[j] for j in range(poset.n) if poset.up_rows[j] & (1 << i) and j != i)),
                tuple(sorted(sig[j] for j in range(poset.n) if poset.up_rows[i] & (1 << j) and j != i)),
            )
            for i in range(poset.n)
        ]
    return sig


def _iter_isomorphisms(p, q):
    if p.n != q.n:
        return
    sp, sq = _signatures(p), _signatures(q)
    if sorted(map(repr, sp)) != sorted(map(repr, sq)):
        return
    cands = [[j for j in range(q.n) if sq[j] == sp[i]] for i in range(p.n)]
    order = sorted(range(p.n), key=lambda i: (len(cands[i]), i))
    assign = [-1] * p.n
    used = set()

    def rec(k):
        if k == p.n:
            yield MonotoneMap(p, q, tuple(q.elements[assign[i]] for i in range(p.n)))
            return
        i = order[k]
        for j in cands[i]:
            if j in used:
                continue
            ok = True
            for k2 in range(k):
                i2 = order[k2]
                if bool(p.up_rows[i] & (1 << i2)) != bool(q.up_rows[j] & (1 << assign[i2])):
                    ok = False
                    break
                if bool(p.up_rows[i2] & (1 << i)) != bool(q.up_rows[assign[i2]] & (1 << j)):
                    ok = False
                    break
            if ok:
                assign[i] = j
                used.add(j)
                yield from rec(k + 1)
                used.discard(j)
                assign[i] = -1

    yield from rec(0)


def isomorphisms(p, q):
    """All order isomorphisms p -> q, by signature-pruned backtracking."""
    return list(_iter_isomorphisms(p, q))


def find_isomorphism(p, q):
    """First order isomorphism p -> q in canonical search order, or None."""
    return next(_iter_isomorphisms(p, q), None)


def chain_poset(elements_in_order, name=""):
    """Total order with the given elements listed smallest first."""
    seq = list(elements_in_order)
    index = {e: i for i, e in enumerate(seq)}
    if len(index) != len(seq):
        raise PosetError("duplicate element identifiers")
    stored = sorted(seq)
    rows = []
    for e in stored:
        mask = 0
        for f in stored:
            if index[e] <= index[f]:
                mask |= 1 << stored.index(f)
        rows.append(mask)
    return FinPoset(stored, rows, name=name)


def ordinal_poset(n):
    """The chain 0 < 1 < ... < n as a poset named [n]."""
    if n < 0:
        raise PosetError("ordinal must be >= 0")
    elems = [str(i) for i in range(n + 1)]
    rows = []
    for i in range(n + 1):
        mask = 0
        for j in range(n + 1):
            if i <= j:
                mask |= 1 << j
        rows.append(mask)
    return FinPoset(elems, rows, name=f"[{n}]")


def antichain_poset(elements, name=""):
    elems = sorted(elements)
    return FinPoset(elems, [1 << i for i in range(len(elems))], name=name)


def empty_poset(name=""):
    return FinPoset((), (), name=name)


def product_poset(p, q, name=""):
    """Componentwise order on pairs; element names are 'x,y'."""
    elems = []
    rows = []
    pairs = [(x, y) for x in p.elements for y in q.elements]
    pairs.sort(key=lambda t: f"{t[0]},{t[1]}")
    for x, y in pairs:
        elems.append(f"{x},{y}")
    for x, y in pairs:
        mask = 0
        for k, (x2, y2) in enumerate(pairs):
            if p.leq(x, x2) and q.leq(y, y2):
                mask |= 1 << k
        rows.append(mask)
    return FinPoset(elems, rows, name=name or f"{p.name}x{q.name}")
