"""Skeletal simplex category: finite ordinals, monotone maps, generator calculus.

The object [n] is the chain {0,...,n}; maps are stored as value tables.  Words
of face/degeneracy generators are a derived view with a fixed normal form:
degeneracies (strictly increasing indices, largest applied first) followed by
faces (strictly increasing indices, smallest applied first).
"""

from __future__ import annotations

from dataclasses import dataclass

from .colimits import Cocone, PosetDiagram
from .posets import MonotoneMap, ordinal_poset


class DeltaError(Exception):
    pass


@dataclass(frozen=True)
class DeltaMap:
    source: int
    target: int
    values: tuple

    def __post_init__(self):
        if self.source < 0 or self.target < 0:
            raise DeltaError("ordinals must be non-negative")
        if len(self.values) != self.source + 1:
            raise DeltaError("value table does not cover the source ordinal")
        for v in self.values:
            if not 0 <= v <= self.target:
                raise DeltaError(f"value {v} outside [{self.target}]")
        for a, b in zip(self.values, self.values[1:]):
            if a > b:
                raise DeltaError("value table is not weakly increasing")

    def __call__(self, j):
        return self.values[j]

    def is_identity(self):
        return self.source == self.target and self.values == tuple(range(self.source + 1))


def identity_delta(n) -> DeltaMap:
    return DeltaMap(n, n, tuple(range(n + 1)))


def face(n, i) -> DeltaMap:
    """delta_i : [n-1] -> [n], skipping i."""
    if n < 1 or not 0 <= i <= n:
        raise DeltaError(f"no face map delta_{i} into [{n}]")
    return DeltaMap(n - 1, n, tuple(j if j < i else j + 1 for j in range(n)))


def degeneracy(n, i) -> DeltaMap:
    """sigma_i : [n+1] -> [n], duplicating i."""
    if n < 0 or not 0 <= i <= n:
        raise DeltaError(f"no degeneracy map sigma_{i} onto [{n}]")
    return DeltaMap(n + 1, n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def generator(kind, n, i) -> DeltaMap:
    if kind == "face":
        return face(n, i)
    if kind == "degeneracy":
        return degeneracy(n, i)
    raise DeltaError(f"unknown generator kind {kind!r}")


def compose(g: DeltaMap, f: DeltaMap) -> DeltaMap:
    """g after f."""
    if f.target != g.source:
        raise DeltaError(
            f"cannot compose [{f.source}]->[{f.target}] with [{g.source}]->[{g.target}]"
        )
    return DeltaMap(f.source, g.target, tuple(g.values[v] for v in f.values))


@dataclass(frozen=True)
class GeneratorWord:
    """Normal form of a map out of [source]: degeneracies then faces."""

    source: int
    faces: tuple
    degeneracies: tuple

    def __post_init__(self):
        for seq in (self.faces, self.degeneracies):
            for a, b in zip(seq, seq[1:]):
                if a >= b:
                    raise DeltaError("word indices must be strictly increasing")

    @property
    def target(self):
        return self.source - len(self.degeneracies) + len(self.faces)

    def evaluate(self) -> DeltaMap:
        out = identity_delta(self.source)
        for j in reversed(self.degeneracies):
            out = compose(degeneracy(out.target - 1, j), out)
        for i in self.faces:
            out = compose(face(out.target + 1, i), out)
        return out


def factorize(f: DeltaMap) -> GeneratorWord:
    """Epi-mono normal form: degeneracy indices are the repeated positions of f,
    face indices the values f misses."""
    degeneracies = tuple(
        j for j in range(f.source) if f.values[j] == f.values[j + 1]
    )
    hit = set(f.values)
    faces = tuple(i for i in range(f.target + 1) if i not in hit)
    return GeneratorWord(f.source, faces, degeneracies)


def identity_instances(max_n):
    """All instances of the five simplicial identities whose ordinals stay <= [max_n].

    Yields (family, n, i, j, lhs, rhs) where lhs/rhs are generator-reference
    sequences ((kind, ordinal, index), ...) composed left after right.
    """
    if max_n < 1:
        raise DeltaError("max_n must be >= 1")
    for n in range(0, max_n - 1):
        # delta_j delta_i = delta_i delta_{j-1}  (i < j), maps [n] -> [n+2]
        for j in range(0, n + 3):
            for i in range(0, min(j, n + 2)):
                yield (
                    "delta_j delta_i = delta_i delta_{j-1} (i < j)",
                    n,
                    i,
                    j,
                    (("face", n + 2, j), ("face", n + 1, i)),
                    (("face", n + 2, i), ("face", n + 1, j - 1)),
                )
    for n in range(0, max_n - 1):
        # sigma_j sigma_i = sigma_i sigma_{j+1}  (i <= j), maps [n+2] -> [n]
        for j in range(0, n + 1):
            for i in range(0, j + 1):
                yield (
                    "sigma_j sigma_i = sigma_i sigma_{j+1} (i <= j)",
                    n,
                    i,
                    j,
                    (("degeneracy", n, j), ("degeneracy", n + 1, i)),
                    (("degeneracy", n, i), ("degeneracy", n + 1, j + 1)),
                )
    for n in range(1, max_n):
        # sigma_j delta_i = delta_i sigma_{j-1}  (i < j), maps [n] -> [n]
        for j in range(1, n + 1):
            for i in range(0, j):
                yield (
                    "sigma_j delta_i = delta_i sigma_{j-1} (i < j)",
                    n,
                    i,
                    j,
                    (("degeneracy", n, j), ("face", n + 1, i)),
                    (("face", n, i), ("degeneracy", n - 1, j - 1)),
                )
    for n in range(0, max_n):
        # sigma_j delta_i = id  (i = j or i = j + 1), maps [n] -> [n]
        for j in range(0, n + 1):
            for i in (j, j + 1):
                yield (
                    "sigma_j delta_i = id (i = j or i = j+1)",
                    n,
                    i,
                    j,
                    (("degeneracy", n, j), ("face", n + 1, i)),
                    (),
                )
    for n in range(1, max_n):
        # sigma_j delta_i = delta_{i-1} sigma_j  (i > j + 1), maps [n] -> [n]
        for j in range(0, n):
            for i in range(j + 2, n + 2):
                yield (
                    "sigma_j delta_i = delta_{i-1} sigma_j (i > j+1)",
                    n,
                    i,
                    j,
                    (("degeneracy", n, j), ("face", n + 1, i)),
                    (("face", n, i - 1), ("degeneracy", n - 1, j)),
                )


def instance_source(refs):
    """Source ordinal of a non-empty generator-reference composite."""
    kind, n, _ = refs[-1]
    return n - 1 if kind == "face" else n + 1


def _evaluate_refs(refs, source):
    out = identity_delta(source)
    for kind, n, i in reversed(refs):
        out = compose(generator(kind, n, i), out)
    return out


@dataclass
class IdentityReport:
    max_n: int
    entries: list  # (family, n, i, j, passed)

    @property
    def passed(self):
        return all(ok for *_, ok in self.entries)

    @property
    def checked(self):
        return len(self.entries)

    def failures(self):
        return [e for e in self.entries if not e[-1]]


def verify_simplicial_identities(max_n) -> IdentityReport:
    """Evaluate both sides of every identity instance pointwise."""
    entries = []
    for family, n, i, j, lhs, rhs in identity_instances(max_n):
        source = instance_source(lhs)
        left = _evaluate_refs(lhs, source)
        right = _evaluate_refs(rhs, source)
        entries.append((family, n, i, j, left == right))
    return IdentityReport(max_n, entries)


def delta_to_monotone(f: DeltaMap) -> MonotoneMap:
    """The same map between the chain posets [source] and [target]."""
    return MonotoneMap(
        ordinal_poset(f.source),
        ordinal_poset(f.target),
        tuple(str(v) for v in f.values),
    )


def _face_chain(source, indices):
    """Composite of faces applied in the listed order, starting at [source]."""
    out = identity_delta(source)
    for i in indices:
        out = compose(face(out.target + 1, i), out)
    return out


def paper_pushout_square(case, n, i=None):
    """One of the four generator pushout squares, as a span diagram plus its
    claimed colimit cocone.

    Cases 1-3 glue a face map onto [n+2] with corner [n+3]; the degeneracy
    case glues sigma_i onto [n+2] with corner [n+1].
    """
    if n < 0:
        raise DeltaError("square parameter n must be >= 0")
    if case == 1:
        if i not in (None, 0):
            raise DeltaError("case 1 admits no face index")
        left = face(1, 0)
        top = _face_chain(0, range(1, n + 3))
        right = face(n + 3, 0)
        bottom = _face_chain(1, range(2, n + 4))
    elif case == 2:
        if i not in (None, n + 3):
            raise DeltaError("case 2 admits no face index")
        left = face(1, 1)
        top = _face_chain(0, range(0, n + 2))
        right = face(n + 3, n + 3)
        bottom = _face_chain(1, range(0, n + 2))
    elif case == 3:
        if i is None or not 0 < i < n + 3:
            raise DeltaError(f"case 3 needs 0 < i < {n + 3}")
        left = face(2, 1)
        top = _face_chain(1, list(range(0, i - 1)) + list(range(i + 1, n + 3)))
        right = face(n + 3, i)
        bottom = _face_chain(2, list(range(0, i - 1)) + list(range(i + 2, n + 4)))
    elif case == "degeneracy":
        if i is None or not 0 <= i <= n + 1:
            raise DeltaError(f"degeneracy case needs 0 <= i <= {n + 1}")
        left = degeneracy(0, 0)
        top = _face_chain(1, list(range(0, i)) + list(range(i + 2, n + 3)))
        right = degeneracy(n + 1, i)
        bottom = _face_chain(0, list(range(0, i)) + list(range(i + 1, n + 2)))
    else:
        raise DeltaError(f"unknown square case {case!r}")

    diagram = PosetDiagram(
        nodes={
            "span": ordinal_poset(left.source),
            "left": ordinal_poset(left.target),
            "top": ordinal_poset(top.target),
        },
        edges=[
            ("l", "span", "left", delta_to_monotone(left)),
            ("t", "span", "top", delta_to_monotone(top)),
        ],
    )
    corner = ordinal_poset(right.target)
    legs = {
        "left": delta_to_monotone(bottom),
        "top": delta_to_monotone(right),
        "span": delta_to_monotone(compose(right, top)),
    }
    legs = {k: MonotoneMap(diagram.nodes[k], corner, m.values) for k, m in legs.items()}
    return diagram, Cocone(diagram, corner, legs)
