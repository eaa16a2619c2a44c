"""Continuity diagnostics on truncated simplicial sets and poset reconstruction.

A truncated simplicial set is accepted as "continuous up to truncation K" when
it passes the finite diagram checks: the edge-pair map is injective, every
level is in bijection with the weakly increasing vertex tuples, faces delete
and degeneracies duplicate positions, and the edge relation is antisymmetric.
Passing data is the nerve of the poset it determines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .colimits import Cocone, colimit_pos
from .kan import _comma_data, _restriction_mediator, inclusion_functor
from .posets import FinPoset, MonotoneMap, PosetError, monotone_maps
from .simplicial import (
    SimplicialMap,
    nerve,
    nerve_map,
    simplex_label,
    simplicial_maps,
)


class ContinuityError(Exception):
    pass


class BoundError(ContinuityError):
    pass


@dataclass
class Verdict:
    name: str
    passed: bool
    detail: str = ""

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"


@dataclass
class Relation:
    """The edge relation on vertex labels extracted from level one."""

    labels: tuple
    rows: tuple

    def index(self, label):
        return self.labels.index(label)

    def holds(self, a, b):
        return bool(self.rows[self.index(a)] & (1 << self.index(b)))

    def pairs(self):
        out = []
        for i, a in enumerate(self.labels):
            for j, b in enumerate(self.labels):
                if self.rows[i] & (1 << j):
                    out.append((a, b))
        return out


@dataclass
class ContinuityReport:
    truncation: int
    verdicts: dict = field(default_factory=dict)
    relation: Relation | None = None
    poset: FinPoset | None = None
    iso: SimplicialMap | None = None

    @property
    def passed(self):
        return all(v.passed for v in self.verdicts.values())

    def failing(self):
        return [v for v in self.verdicts.values() if not v.passed]

    def text_lines(self):
        out = [f"continuity up to truncation {self.truncation}"]
        for v in self.verdicts.values():
            suffix = f"  [{v.detail}]" if v.detail else ""
            out.append(f"  {v.name}: {v.status}{suffix}")
        out.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        if self.poset is not None:
            out.append(f"reconstructed poset on {self.poset.n} elements")
        return out

    def machine_lines(self):
        out = []
        for name, v in sorted(self.verdicts.items()):
            out.append(f"check.{name}={v.status}")
            if not v.passed and v.detail:
                out.append(f"check.{name}.witness={v.detail}")
        out.append(f"overall={'PASS' if self.passed else 'FAIL'}")
        if self.poset is not None:
            out.append(f"poset.size={self.poset.n}")
        return out


def _vertex_labels(X):
    labels = tuple(simplex_label(v) for v in X.levels[0])
    if len(set(labels)) != len(labels):
        raise ContinuityError("vertex labels collide; rename level-0 simplices")
    return labels


def _edge_pair(X, e):
    """(source, target) vertices of a 1-simplex, via d_1 and d_0."""
    return (X.face(1, 1, e), X.face(1, 0, e))


def extract_relation(X) -> Relation:
    """Image of the edge-pair map as a relation table on level-0 labels."""
    if X.K < 1:
        raise ContinuityError("relation extraction needs truncation >= 1")
    labels = _vertex_labels(X)
    index = {v: k for k, v in enumerate(X.levels[0])}
    rows = [0] * len(labels)
    for e in X.levels[1]:
        a, b = _edge_pair(X, e)
        rows[index[a]] |= 1 << index[b]
    return Relation(labels, tuple(rows))


def check_relation_injective(X) -> Verdict:
    """No two 1-simplices may share the ordered vertex pair."""
    if X.K < 1:
        return Verdict("relation_injective", True, "vacuous below truncation 1")
    seen = {}
    for e in X.levels[1]:
        pair = _edge_pair(X, e)
        if pair in seen:
            return Verdict(
                "relation_injective",
                False,
                f"1-simplices {simplex_label(seen[pair])} and {simplex_label(e)} "
                f"both cover ({simplex_label(pair[0])}, {simplex_label(pair[1])})",
            )
        seen[pair] = e
    return Verdict("relation_injective", True)


def extract_order(X) -> Relation:
    """The relation on level-0, available only once injectivity has passed."""
    verdict = check_relation_injective(X)
    if not verdict.passed:
        raise ContinuityError(f"protocol error: {verdict.detail}")
    return extract_relation(X)


def _vertex_tuple(X, n, x):
    """Vertex tuple of an n-simplex through the iterated-face edge composites.

    Edge k is reached by applying d_n ... d_{k+2} then d_{k-1} ... d_0; the
    simplex is consistent when consecutive edges share endpoint vertices.
    """
    if n == 0:
        return (x,), True
    pairs = []
    for k in range(n):
        y = x
        level = n
        for idx in range(n, k + 1, -1):
            y = X.face(level, idx, y)
            level -= 1
        for idx in range(k - 1, -1, -1):
            y = X.face(level, idx, y)
            level -= 1
        pairs.append(_edge_pair(X, y))
    consistent = all(pairs[k][1] == pairs[k + 1][0] for k in range(n - 1))
    points = tuple(p[0] for p in pairs) + (pairs[-1][1],)
    return points, consistent


def _label_tuple(X, points):
    return tuple(simplex_label(p) for p in points)


def check_chain_condition(X, n) -> Verdict:
    """Level n must biject onto the weakly increasing vertex tuples."""
    name = f"chain_condition_n{n}"
    if not 2 <= n <= X.K:
        raise ContinuityError(f"chain condition applies for 2 <= n <= {X.K}")
    rel = extract_relation(X)
    index = {v: k for k, v in enumerate(X.levels[0])}
    seen = {}
    for x in X.levels[n]:
        points, consistent = _vertex_tuple(X, n, x)
        if not consistent:
            return Verdict(
                name, False, f"simplex {simplex_label(x)} has mismatched edge endpoints"
            )
        if points in seen:
            return Verdict(
                name,
                False,
                f"simplices {simplex_label(seen[points])} and {simplex_label(x)} share "
                f"vertex tuple ({','.join(simplex_label(p) for p in points)})",
            )
        seen[points] = x
    pairs = [(k, k + 1, _kernels.LEQ) for k in range(n)]
    expected = _kernels.list_maps(n + 1, len(rel.labels), list(rel.rows), pairs)
    if len(expected) != len(seen):
        got = {tuple(index[p] for p in points) for points in seen}
        missing = next(t for t in expected if t not in got)
        label = ",".join(rel.labels[v] for v in missing)
        return Verdict(
            name,
            False,
            f"{len(seen)} simplices vs {len(expected)} weakly increasing tuples; "
            f"missing ({label})",
        )
    return Verdict(name, True, f"{len(seen)} simplices")


def check_face_formulas(X) -> Verdict:
    """Under the vertex-tuple bijection every d_i must delete position i, and
    the extracted relation must be transitive (the d_1 : X_2 -> X_1 witness)."""
    name = "face_formulas"
    if X.K < 2:
        return Verdict(name, True, "no levels >= 2")
    for n in range(2, X.K + 1):
        for x in X.levels[n]:
            points, _ = _vertex_tuple(X, n, x)
            for i in range(n + 1):
                got, _ = _vertex_tuple(X, n - 1, X.face(n, i, x))
                if got != points[:i] + points[i + 1 :]:
                    return Verdict(
                        name,
                        False,
                        f"d_{i} at level {n} on {simplex_label(x)} is not deletion of position {i}",
                    )
    rel = extract_relation(X)
    m = len(rel.labels)
    for a in range(m):
        for b in range(m):
            if rel.rows[a] & (1 << b):
                for c in range(m):
                    if rel.rows[b] & (1 << c) and not rel.rows[a] & (1 << c):
                        return Verdict(
                            name,
                            False,
                            f"relation not transitive: {rel.labels[a]} <= {rel.labels[b]} <= "
                            f"{rel.labels[c]} without {rel.labels[a]} <= {rel.labels[c]}",
                        )
    return Verdict(name, True)


def check_degeneracy_formulas(X) -> Verdict:
    """Every s_i must duplicate position i; s_0 exhibits reflexivity on level 0."""
    name = "degeneracy_formulas"
    if X.K < 1:
        return Verdict(name, True, "no degeneracy tables below truncation 1")
    rel = extract_relation(X)
    for k, label in enumerate(rel.labels):
        if not rel.rows[k] & (1 << k):
            return Verdict(name, False, f"relation not reflexive at {label}")
    for n in range(X.K):
        for x in X.levels[n]:
            points, _ = _vertex_tuple(X, n, x)
            for i in range(n + 1):
                got, _ = _vertex_tuple(X, n + 1, X.deg(n, i, x))
                if got != points[: i + 1] + points[i:]:
                    return Verdict(
                        name,
                        False,
                        f"s_{i} at level {n} on {simplex_label(x)} is not duplication of position {i}",
                    )
    return Verdict(name, True)


def check_antisymmetry(X) -> Verdict:
    """Oppositely oriented edge pairs are only allowed on the diagonal."""
    name = "antisymmetry"
    if X.K < 1:
        return Verdict(name, True, "vacuous below truncation 1")
    rel = extract_relation(X)
    m = len(rel.labels)
    for a in range(m):
        for b in range(m):
            if a != b and rel.rows[a] & (1 << b) and rel.rows[b] & (1 << a):
                return Verdict(
                    name,
                    False,
                    f"both ({rel.labels[a]}, {rel.labels[b]}) and the reverse are edges",
                )
    return Verdict(name, True)


def check_continuity(X) -> ContinuityReport:
    """Run every diagram check; attach the reconstruction when all pass."""
    report = ContinuityReport(truncation=X.K)
    violations = X.identity_violations()
    detail = "; ".join(str(v) for v in violations[:2])
    if len(violations) > 2:
        detail += f" (+{len(violations) - 2} more)"
    report.verdicts["validation"] = Verdict("validation", not violations, detail)
    if X.K >= 1:
        report.verdicts["relation_injective"] = check_relation_injective(X)
        report.relation = extract_relation(X)
        for n in range(2, X.K + 1):
            report.verdicts[f"chain_condition_n{n}"] = check_chain_condition(X, n)
        report.verdicts["face_formulas"] = check_face_formulas(X)
        report.verdicts["degeneracy_formulas"] = check_degeneracy_formulas(X)
        report.verdicts["antisymmetry"] = check_antisymmetry(X)
    if report.passed:
        report.poset, report.iso = _reconstruct(X, report.relation)
    return report


def _reconstruct(X, relation):
    if relation is None:  # truncation 0 carries no order information
        labels = _vertex_labels(X)
        poset = FinPoset(sorted(labels), [1 << i for i in range(len(labels))])
    else:
        order = sorted(range(len(relation.labels)), key=lambda k: relation.labels[k])
        labels = [relation.labels[k] for k in order]
        rows = []
        for k in order:
            mask = 0
            for pos, k2 in enumerate(order):
                if relation.rows[k] & (1 << k2):
                    mask |= 1 << pos
            rows.append(mask)
        poset = FinPoset(labels, rows)
    comps = []
    for n in range(X.K + 1):
        comp = {}
        for x in X.levels[n]:
            points, _ = _vertex_tuple(X, n, x)
            comp[x] = _label_tuple(X, points)
        comps.append(comp)
    iso = SimplicialMap(X, nerve(poset, X.K), comps)
    if not iso.is_levelwise_bijective():
        raise ContinuityError("reconstruction map is not levelwise bijective")
    return poset, iso


def reconstruct(X):
    """The poset (X_0, <=_X) together with the isomorphism onto its nerve."""
    report = check_continuity(X)
    if not report.passed:
        failing = ", ".join(v.name for v in report.failing())
        raise ContinuityError(f"protocol error: checks failed ({failing})")
    return report.poset, report.iso


@dataclass
class DensityResult:
    cocone: Cocone
    iso: MonotoneMap | None
    stabilized: bool
    bound: int

    @property
    def passed(self):
        return self.stabilized and self.iso is not None and self.iso.is_order_isomorphism()


def density_colimit(poset, length_bound, check_stability=True) -> DensityResult:
    """Colimit of the chain diagram of a poset, compared against the poset itself.

    The canonical map sends the class of (chain t, position j) to t[j]; density
    of the chain inclusion makes it an order isomorphism once the length bound
    reaches the poset height.
    """
    if length_bound < poset.height:
        raise BoundError(
            f"length bound {length_bound} is below the poset height {poset.height}"
        )
    functor = inclusion_functor()
    diagram, node_chain = _comma_data(functor, poset, length_bound)
    cocone = colimit_pos(diagram)
    values = {}
    iso = None
    ok = True
    for nid, t in node_chain.items():
        leg = cocone.legs[nid]
        for j, point in enumerate(t):
            a = leg(str(j))
            if values.get(a, point) != point:
                ok = False
            values[a] = point
    if ok and len(values) == cocone.apex.n:
        try:
            iso = MonotoneMap.from_dict(cocone.apex, poset, values)
        except PosetError:
            iso = None
    stabilized = True
    if check_stability:
        bigger = colimit_pos(_comma_data(functor, poset, length_bound + 1)[0])
        u = _restriction_mediator(cocone, bigger)
        stabilized = u is not None and u.is_order_isomorphism()
    return DensityResult(cocone, iso, stabilized, length_bound)


@dataclass
class FullFaithfulnessReport:
    monotone_count: int
    simplicial_count: int
    injective: bool
    surjective: bool

    @property
    def passed(self):
        return (
            self.injective
            and self.surjective
            and self.monotone_count == self.simplicial_count
        )


def fully_faithful_witness(p, q, K) -> FullFaithfulnessReport:
    """Compare monotone maps p -> q with simplicial maps between the nerves:
    the nerve functor must induce a bijection."""
    if K < 1:
        raise ContinuityError("full faithfulness needs truncation >= 1")
    monotone = monotone_maps(p, q)
    simplicial = simplicial_maps(nerve(p, K), nerve(q, K))

    def key(components):
        return tuple(tuple(sorted(c.items())) for c in components)

    image_keys = [key(nerve_map(f, K).components) for f in monotone]
    simp_keys = {key(m.components) for m in simplicial}
    injective = len(set(image_keys)) == len(image_keys)
    surjective = simp_keys == set(image_keys)
    return FullFaithfulnessReport(len(monotone), len(simplicial), injective, surjective)
