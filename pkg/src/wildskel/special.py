"""Stable degree-two morphisms from genus one to genus zero.

The classification machinery: root subtrees (the rational trees that
can hang off a skeleton core, with their slope indices), the predicate
for a delta-morphism to be special, the twelve-type classification, and
metric lifting with its length constraints.

Shapes are named by reduction behaviour: ``B`` bad (a loop), ``G`` good
(a genus-one vertex), ``O`` ordinary (valence two at the genus-one
vertex), ``S``/``SS`` supersingular and strongly supersingular, ``E``
exceptional; prefixed by the characteristic class ``T``/``M``/``W``
(tame, mixed, wild).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .delta_morphism import (
    DeltaMorphism,
    MetricDeltaMorphism,
    applicable_moves,
)
from .genus_graph import GenusGraph, MetricGenusGraph, OrientedEdge
from .valuation import INF, NEG_INF, LogAbs, ResidueSetting, ZERO


class UnclassifiableError(ValueError):
    """The morphism passes the special checks but matches no known shape."""


class UnliftableError(ValueError):
    pass


SPECIAL_TAGS: Tuple[str, ...] = (
    "TB",
    "MB",
    "WB",
    "TG",
    "MO",
    "WO",
    "MS",
    "WS",
    "MSS",
    "WSS",
    "ME",
    "MES",
)

LIFTABLE_TAGS: Tuple[str, ...] = tuple(
    t for t in SPECIAL_TAGS if t not in ("ME", "MES")
)

_CLASS_BY_PREFIX = {"T": "tame", "M": "mixed", "W": "wild"}


@dataclass(frozen=True)
class SpecialType:
    tag: str

    def __post_init__(self):
        if self.tag not in SPECIAL_TAGS:
            raise ValueError(f"unknown special type {self.tag!r}")

    @property
    def characteristic_class(self) -> str:
        return _CLASS_BY_PREFIX[self.tag[0]]

    @property
    def liftable(self) -> bool:
        return self.tag in LIFTABLE_TAGS

    def __str__(self):
        return self.tag


# -- root subtrees --------------------------------------------------------------


@dataclass(frozen=True)
class RootSubtree:
    """A rational tree hanging off a skeleton core.

    ``label`` is the slope of the different read toward the root on the
    edge connecting the tree to the core (equivalently minus the slope
    toward the leaves); the slope index of the tree is ``label + 1``.
    Empty ``children`` means the edge ends in a ramification leaf with
    ``R = label + 1``; otherwise the tree continues through a balanced
    genus-zero vertex with at least two child subtrees whose slope
    indices sum to the slope index of the tree.
    """

    label: int
    children: Tuple["RootSubtree", ...] = ()

    def __post_init__(self):
        if self.label < 0:
            raise ValueError("labels are nonnegative (the different cannot grow "
                             "toward a ramification leaf)")
        if self.label != 0 and self.label % 2 == 0:
            raise ValueError(f"nonzero label {self.label} must be odd")
        kids = tuple(sorted(self.children, key=_subtree_key))
        object.__setattr__(self, "children", kids)
        if kids:
            if len(kids) < 2:
                raise ValueError("an inner vertex needs at least two subtrees "
                                 "(a single one could be smoothed away)")
            if sum(c.slope_index for c in kids) != self.slope_index:
                raise ValueError(
                    "child slope indices must sum to the slope index "
                    f"({self.slope_index})"
                )

    @property
    def slope_index(self) -> int:
        return self.label + 1

    @property
    def is_leaf_edge(self) -> bool:
        return not self.children

    def leaf_r_values(self) -> Tuple[int, ...]:
        if self.is_leaf_edge:
            return (self.slope_index,)
        return tuple(
            sorted(r for c in self.children for r in c.leaf_r_values())
        )

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_r_values())

    @property
    def vertex_count(self) -> int:
        """Vertices added by attaching this tree (root excluded)."""
        return 1 + sum(c.vertex_count for c in self.children)

    def describe(self) -> str:
        if self.is_leaf_edge:
            return f"{self.label}"
        inner = ",".join(c.describe() for c in self.children)
        return f"{self.label}({inner})"

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "slope_index": self.slope_index,
            "children": [c.to_json_dict() for c in self.children],
        }


def _subtree_key(t: RootSubtree):
    return (t.label, tuple(_subtree_key(c) for c in t.children))


#: Caps on the number of ramification leaves per differential index,
#: forced by the total sum of indices being four.
_LEAF_CAPS = {1: 4, 2: 2, 4: 1}

_VALID_SLOPE_INDICES = (1, 2, 4)


def _partitions(total: int, parts: Sequence[int], minimum_parts: int):
    """Multisets (weakly decreasing tuples) of allowed parts summing to total."""
    out = set()

    def rec(remaining, chosen, max_part):
        if remaining == 0:
            if len(chosen) >= minimum_parts:
                out.add(tuple(chosen))
            return
        for p in parts:
            if p <= max_part and p <= remaining:
                rec(remaining - p, chosen + [p], p)

    rec(total, [], max(parts) if parts else 0)
    return sorted(out, reverse=True)


def _bodies(slope_index: int, leaf_r: int, budget: int) -> List[RootSubtree]:
    """All subtrees with the given index whose leaves all carry ``leaf_r``."""
    found: List[RootSubtree] = []
    if slope_index == leaf_r and budget >= 1:
        found.append(RootSubtree(slope_index - 1))
    for parts in _partitions(slope_index, _VALID_SLOPE_INDICES, 2):
        options = [_bodies(p, leaf_r, budget) for p in parts]
        for combo in itertools.product(*options):
            if sum(c.leaf_count for c in combo) > budget:
                continue
            try:
                found.append(RootSubtree(slope_index - 1, tuple(combo)))
            except ValueError:
                continue
    unique = {t: None for t in found}
    return list(unique)


def enumerate_root_subtrees(max_leaves: int) -> List[RootSubtree]:
    """All root subtrees with at most ``max_leaves`` ramification leaves.

    Leaves within one tree all carry the same differential index R (the
    ramification points of a single covering do), R is one of 1, 2, 4,
    and at most 4/R leaves occur.  Slope indices of whole trees and of
    every hanging subtree are 1, 2 or 4, so that all slopes are odd or
    zero.
    """
    if max_leaves < 1:
        raise ValueError("max_leaves must be at least 1")
    trees: Dict[RootSubtree, None] = {}
    for leaf_r in (1, 2, 4):
        budget = min(max_leaves, _LEAF_CAPS[leaf_r])
        for s in _VALID_SLOPE_INDICES:
            for t in _bodies(s, leaf_r, budget):
                trees[t] = None
    return sorted(trees, key=_subtree_key)


# -- the special predicate --------------------------------------------------------


@dataclass(frozen=True)
class SpecialCheck:
    ok: bool
    reason: str = ""
    characteristic_class: Optional[str] = None

    def __bool__(self):
        return self.ok


def _wild_vertices(m: DeltaMorphism) -> frozenset:
    return frozenset(
        v
        for v in m.source.vertices
        if any(m.sdelta(b) != 0 for b in m.source.branches(v))
    )


def ramification_signature(m: DeltaMorphism) -> Tuple[int, ...]:
    return tuple(
        sorted(m.differential_index(v) for v in m.unbalanced_vertices())
    )


def is_special(m: DeltaMorphism) -> SpecialCheck:
    """Check the five defining conditions, reporting the first failure."""
    # (1) stable, degree two, genus 1 -> 0
    if applicable_moves(m):
        return SpecialCheck(False, "violated(1): the morphism is contractible")
    if m.degree != 2:
        return SpecialCheck(False, f"violated(1): degree is {m.degree}, not 2")
    if m.source.genus() != 1 or m.target.genus() != 0:
        return SpecialCheck(
            False,
            f"violated(1): genera are {m.source.genus()} -> "
            f"{m.target.genus()}, not 1 -> 0",
        )
    # (2) unbalanced vertices: genus-zero leaves, R > 0, multiplicity 2
    for v in m.source.vertices:
        r = m.differential_index(v)
        if r == 0:
            continue
        if not m.source.is_leaf(v):
            return SpecialCheck(
                False, f"violated(2): vertex {v} has R = {r} but is not a leaf"
            )
        if m.source.genus_of(v) != 0:
            return SpecialCheck(
                False, f"violated(2): leaf {v} has R = {r} and positive genus"
            )
        if r < 0:
            return SpecialCheck(False, f"violated(2): leaf {v} has R = {r} < 0")
        if m.vertex_mult[v] != 2:
            return SpecialCheck(
                False,
                f"violated(2): leaf {v} has R = {r} but multiplicity "
                f"{m.vertex_mult[v]}",
            )
    # (3) tame / mixed / wild trichotomy
    wild = _wild_vertices(m)
    ram = set(m.unbalanced_vertices())
    if not wild:
        cls = "tame"
    elif ram.isdisjoint(wild):
        cls = "mixed"
    elif ram <= wild:
        cls = "wild"
    else:
        return SpecialCheck(
            False,
            "violated(3): ramification leaves are neither all tame nor all wild",
        )
    # (4) split edges carry slope zero
    for e in m.source.edge_ids:
        if m.mult[e] == 1 and m.sdelta_stored(e) != 0:
            return SpecialCheck(
                False, f"violated(4): split edge {e} has nonzero slope"
            )
    # (5) nonzero slopes are odd
    for e in m.source.edge_ids:
        s = m.sdelta_stored(e)
        if s != 0 and s % 2 == 0:
            return SpecialCheck(
                False, f"violated(5): edge {e} has even nonzero slope {s}"
            )
    return SpecialCheck(True, characteristic_class=cls)


def _class_coherent(m: DeltaMorphism, cls: str) -> bool:
    """Structural coherence of the characteristic class.

    In the mixed family every balanced vertex is wild, and in the wild
    family every vertex is wild.  A mixed shape violating this cannot
    carry a different function: a tame balanced vertex sits at the tail
    value while some other part of the shape forces a strictly larger
    value at the same vertex.  The enumeration uses this cut; the
    plain :func:`is_special` predicate does not.
    """
    wild = _wild_vertices(m)
    if cls == "mixed":
        return all(
            v in wild for v in m.source.vertices if m.differential_index(v) == 0
        )
    if cls == "wild":
        return wild == frozenset(m.source.vertices)
    return True


# -- building the shapes ------------------------------------------------------------


class _ShapeBuilder:
    """Accumulates a degree-two morphism (optionally metric) shape by shape."""

    def __init__(self, metric: bool, lengths: "Lengths | None" = None,
                 setting: ResidueSetting | None = None):
        self.metric = metric
        self.lengths = lengths
        self.setting = setting
        self.src_genus: Dict[str, int] = {}
        self.src_edges: Dict[str, Tuple[str, str]] = {}
        self.src_lengths: Dict[str, object] = {}
        self.src_leaves: List[str] = []
        self.tgt_genus: Dict[str, int] = {}
        self.tgt_edges: Dict[str, Tuple[str, str]] = {}
        self.tgt_lengths: Dict[str, object] = {}
        self.tgt_leaves: List[str] = []
        self.vmap: Dict[str, str] = {}
        self.emap: Dict[str, str] = {}
        self.mult: Dict[str, int] = {}
        self.sdelta: Dict[str, int] = {}
        self.delta: Dict[str, LogAbs] = {}
        self._counter = 0

    def _fresh(self, prefix: str) -> str:
        self._counter += 1
        return f"{prefix}{self._counter}"

    def add_vertex(self, name: str, genus: int, delta: LogAbs = ZERO) -> str:
        self.src_genus[name] = genus
        self.tgt_genus[name + "'"] = genus if genus == 0 else 0
        self.vmap[name] = name + "'"
        self.delta[name] = delta
        return name

    def add_edge(self, name, u, v, n, sdelta_uv, length=None, target_edge=None):
        self.src_edges[name] = (u, v)
        self.mult[name] = n
        self.sdelta[name] = sdelta_uv
        if target_edge is None:
            target_edge = name + "'"
            self.tgt_edges[target_edge] = (self.vmap[u], self.vmap[v])
            if self.metric:
                self.tgt_lengths[target_edge] = n * length
        self.emap[name] = target_edge
        if self.metric:
            self.src_lengths[name] = length
        return target_edge

    def attach_tree(self, at: str, tree: RootSubtree) -> None:
        child = self._fresh("v")
        label = tree.label
        delta_at = self.delta[at]
        if tree.is_leaf_edge:
            if self.metric:
                d = delta_at if label == 0 else NEG_INF
                self.add_vertex(child, 0, d)
                self.src_leaves.append(child)
                self.tgt_leaves.append(child + "'")
                self.add_edge(
                    self._fresh("e"), at, child, 2, -label, INF
                )
            else:
                self.add_vertex(child, 0)
                self.add_edge(self._fresh("e"), at, child, 2, -label)
            return
        if self.metric:
            l = self.lengths.of_slope(label)
            d = delta_at + Fraction(-label) * l
            self.add_vertex(child, 0, d)
            self.add_edge(self._fresh("e"), at, child, 2, -label, l)
        else:
            self.add_vertex(child, 0)
            self.add_edge(self._fresh("e"), at, child, 2, -label)
        for sub in tree.children:
            self.attach_tree(child, sub)

    def build(self):
        if self.metric:
            source = MetricGenusGraph(
                self.src_genus, self.src_edges, self.src_lengths,
                infinite_leaves=self.src_leaves,
            )
            target = MetricGenusGraph(
                self.tgt_genus, self.tgt_edges, self.tgt_lengths,
                infinite_leaves=self.tgt_leaves,
            )
        else:
            source = GenusGraph(self.src_genus, self.src_edges)
            target = GenusGraph(self.tgt_genus, self.tgt_edges)
        m = DeltaMorphism(
            source, target, self.vmap, self.emap, self.mult, self.sdelta
        )
        if self.metric:
            return MetricDeltaMorphism(m, self.delta, self.setting)
        return m


_0L = RootSubtree(0)
_1L = RootSubtree(1)
_3L = RootSubtree(3)
_1C = RootSubtree(1, (_0L, _0L))

#: Source shape of each type: ("loop", per-side trees) or ("genus1", trees).
_SHAPES: Dict[str, tuple] = {
    "TB": ("loop", ((_0L, _0L), (_0L, _0L))),
    "MB": ("loop", ((_1C,), (_1C,))),
    "WB": ("loop", ((_1L,), (_1L,))),
    "TG": ("genus1", (_0L, _0L, _0L, _0L)),
    "MO": ("genus1", (_1C, _1C)),
    "WO": ("genus1", (_1L, _1L)),
    "MS": ("genus1", (RootSubtree(3, (_1C, _1C)),)),
    "WS": ("genus1", (RootSubtree(3, (_1L, _1L)),)),
    "MSS": ("genus1", (RootSubtree(3, (_0L, _0L, _0L, _0L)),)),
    "WSS": ("genus1", (_3L,)),
    "ME": ("genus1", (_1C, _0L, _0L)),
    "MES": ("genus1", (RootSubtree(3, (_1C, _0L, _0L)),)),
}


def _build_loop(builder: _ShapeBuilder, sides, lengths: "Lengths | None"):
    builder.add_vertex("t", 0)
    builder.add_vertex("s", 0)
    if builder.metric:
        loop_target = builder.add_edge(
            "a", "t", "s", 1, 0, lengths.l0
        )
        builder.add_edge("b", "t", "s", 1, 0, lengths.l0, target_edge=loop_target)
    else:
        loop_target = builder.add_edge("a", "t", "s", 1, 0)
        builder.add_edge("b", "t", "s", 1, 0, target_edge=loop_target)
    for core, trees in zip(("t", "s"), sides):
        for tree in trees:
            builder.attach_tree(core, tree)


def _build_shape(tag: str, metric: bool = False,
                 lengths: "Lengths | None" = None,
                 setting: ResidueSetting | None = None):
    kind, data = _SHAPES[tag]
    builder = _ShapeBuilder(metric, lengths, setting)
    if kind == "loop":
        _build_loop(builder, data, lengths)
    else:
        builder.add_vertex("r", 1)
        for tree in data:
            builder.attach_tree("r", tree)
    return builder.build()


def build_special(tag: str) -> DeltaMorphism:
    """The canonical combinatorial representative of a special type."""
    if tag not in SPECIAL_TAGS:
        raise ValueError(f"unknown special type {tag!r}")
    return _build_shape(tag)


# -- enumeration and classification ---------------------------------------------------


def _multisets_with_index_sum(trees: Sequence[RootSubtree], total: int):
    """All multisets of trees whose slope indices add to ``total``."""
    out = []

    def rec(start: int, remaining: int, chosen: list):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        for i in range(start, len(trees)):
            s = trees[i].slope_index
            if s <= remaining:
                rec(i, remaining - s, chosen + [trees[i]])

    rec(0, total, [])
    return out


def _homogeneous(tree_multiset: Sequence[RootSubtree]) -> bool:
    rs = [r for t in tree_multiset for r in t.leaf_r_values()]
    if len(set(rs)) != 1:
        return False
    r = rs[0]
    return r in _LEAF_CAPS and len(rs) <= _LEAF_CAPS[r]


def _candidate_shapes():
    inventory = enumerate_root_subtrees(4)
    # good reduction: trees hang on the genus-one vertex, indices sum to 4
    for combo in _multisets_with_index_sum(inventory, 4):
        if _homogeneous(combo):
            yield ("genus1", tuple(combo))
    # bad reduction: two sides of the loop, indices sum to 2 on each
    sides = [
        tuple(c) for c in _multisets_with_index_sum(inventory, 2)
    ]
    seen = set()
    for a, b in itertools.product(sides, repeat=2):
        key = tuple(sorted((tuple(map(_subtree_key, a)), tuple(map(_subtree_key, b)))))
        if key in seen:
            continue
        seen.add(key)
        if _homogeneous(a + b):
            yield ("loop", (a, b))


def enumerate_special() -> List[Tuple[SpecialType, DeltaMorphism]]:
    """Exhaustive search for special morphisms, up to isomorphism.

    Candidates are assembled from the root-subtree inventory (at most
    four ramification leaves, homogeneous differential indices), run
    through :func:`is_special` and the class-coherence cut, and returned
    as the twelve classified types.
    """
    results: Dict[str, DeltaMorphism] = {}
    for kind, data in _candidate_shapes():
        builder = _ShapeBuilder(metric=False)
        if kind == "loop":
            _build_loop(builder, data, None)
        else:
            builder.add_vertex("r", 1)
            for tree in data:
                builder.attach_tree("r", tree)
        m = builder.build()
        check = is_special(m)
        if not check:
            continue
        if not _class_coherent(m, check.characteristic_class):
            continue
        tag = classify_special(m).tag
        if tag in results:
            raise AssertionError(f"duplicate special type {tag}")
        results[tag] = m
    return [
        (SpecialType(tag), results[tag]) for tag in SPECIAL_TAGS if tag in results
    ]


def _two_core(g: GenusGraph) -> Tuple[frozenset, frozenset]:
    """Vertices and edges left after iterated leaf stripping."""
    verts = set(g.vertices)
    edges = {e: g.endpoints(e) for e in g.edge_ids}
    changed = True
    while changed:
        changed = False
        for v in sorted(verts):
            deg = sum(
                (1 if u == v else 0) + (1 if w == v else 0)
                for u, w in edges.values()
            )
            if deg <= 1:
                verts.remove(v)
                for e in [e for e, (u, w) in edges.items() if v in (u, w)]:
                    del edges[e]
                changed = True
    return frozenset(verts), frozenset(edges)


def _extract_tree(m: DeltaMorphism, parent: str, branch: OrientedEdge) -> RootSubtree:
    if m.mult[branch.edge] != 2:
        raise UnclassifiableError(
            f"tree edge {branch.edge} has multiplicity {m.mult[branch.edge]}"
        )
    label = -m.sdelta(branch)
    child = m.source.head(branch)
    sub = []
    for b in m.source.branches(child):
        if b.edge == branch.edge:
            continue
        sub.append(_extract_tree(m, child, b))
    try:
        return RootSubtree(label, tuple(sub))
    except ValueError as exc:
        raise UnclassifiableError(str(exc)) from exc


def classify_special(m: DeltaMorphism) -> SpecialType:
    """Match a special morphism against the twelve shapes."""
    check = is_special(m)
    if not check:
        raise ValueError(f"not special: {check.reason}")
    genus1 = [v for v in m.source.vertices if m.source.genus_of(v) == 1]

    if genus1 and m.source.h1() == 0:
        root = genus1[0]
        trees = tuple(
            sorted(
                (_extract_tree(m, root, b) for b in m.source.branches(root)),
                key=_subtree_key,
            )
        )
        key = tuple(t.describe() for t in trees)
        table = {
            ("0", "0", "0", "0"): "TG",
            ("1(0,0)", "1(0,0)"): "MO",
            ("1", "1"): "WO",
            ("3(1(0,0),1(0,0))",): "MS",
            ("3(1,1)",): "WS",
            ("3(0,0,0,0)",): "MSS",
            ("3",): "WSS",
            ("0", "0", "1(0,0)"): "ME",
            ("3(0,0,1(0,0))",): "MES",
        }
        tag = table.get(key)
        if tag is None:
            raise UnclassifiableError(f"unknown good-reduction shape {key}")
        return SpecialType(tag)

    if not genus1 and m.source.h1() == 1:
        core_verts, core_edges = _two_core(m.source)
        if len(core_verts) != 2 or len(core_edges) != 2:
            raise UnclassifiableError(
                "the cycle is not a two-vertex double edge"
            )
        sides = []
        for v in sorted(core_verts):
            trees = tuple(
                sorted(
                    (
                        _extract_tree(m, v, b)
                        for b in m.source.branches(v)
                        if b.edge not in core_edges
                    ),
                    key=_subtree_key,
                )
            )
            sides.append(tuple(t.describe() for t in trees))
        key = tuple(sorted(sides))
        table = {
            (("0", "0"), ("0", "0")): "TB",
            (("1(0,0)",), ("1(0,0)",)): "MB",
            (("1",), ("1",)): "WB",
        }
        tag = table.get(key)
        if tag is None:
            raise UnclassifiableError(f"unknown bad-reduction shape {key}")
        return SpecialType(tag)

    raise UnclassifiableError(
        "neither a genus-one vertex with trees nor a loop with trees"
    )


# -- metric lifting -----------------------------------------------------------------


@dataclass(frozen=True)
class Lengths:
    """Inner edge lengths per slope class (tails are always infinite)."""

    l0: Fraction = Fraction(0)
    l1: Fraction = Fraction(0)
    l3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("l0", "l1", "l3"):
            val = Fraction(getattr(self, name))
            if val < 0:
                raise ValueError(f"{name} must be nonnegative")
            object.__setattr__(self, name, val)

    def of_slope(self, slope: int) -> Fraction:
        return {0: self.l0, 1: self.l1, 3: self.l3}[slope]

    def to_json_dict(self) -> dict:
        return {"l0": str(self.l0), "l1": str(self.l1), "l3": str(self.l3)}


#: Which slope classes have inner edges, per liftable type.
_INNER_SLOPES: Dict[str, Tuple[int, ...]] = {
    "TB": (0,),
    "MB": (0, 1),
    "WB": (0,),
    "TG": (),
    "MO": (1,),
    "WO": (),
    "MS": (1, 3),
    "WS": (3,),
    "MSS": (3,),
    "WSS": (),
}


def metric_lift(
    tag_or_type, lengths: Lengths, setting: ResidueSetting
) -> MetricDeltaMorphism:
    """Lift a special type to a metric morphism with the given lengths.

    Tails are infinite; inner edges of slope ``i`` get length ``l_i``,
    which must be positive exactly for the slope classes the shape
    contains, and in the mixed case must satisfy
    ``sum_i i*l_i = -log|2|``.  The two exceptional types never lift.
    """
    tag = tag_or_type.tag if isinstance(tag_or_type, SpecialType) else str(tag_or_type)
    if tag not in SPECIAL_TAGS:
        raise ValueError(f"unknown special type {tag!r}")
    if tag not in LIFTABLE_TAGS:
        raise UnliftableError(f"{tag} is exceptional and admits no metric lift")

    cls = SpecialType(tag).characteristic_class
    two = setting.int_abs(2)
    setting_cls = (
        "tame" if two == ZERO else ("wild" if two.is_neg_inf else "mixed")
    )
    if cls != setting_cls:
        raise UnliftableError(
            f"{tag} is a {cls} type but the setting is {setting_cls}"
        )

    inner = _INNER_SLOPES[tag]
    for slope in (0, 1, 3):
        have = lengths.of_slope(slope)
        if slope in inner and have <= 0:
            raise UnliftableError(
                f"{tag} has inner edges of slope {slope}; l{slope} must be positive"
            )
        if slope not in inner and have != 0:
            raise UnliftableError(
                f"{tag} has no inner edges of slope {slope}; l{slope} must be 0"
            )
    if cls == "mixed":
        weighted = lengths.l1 + 3 * lengths.l3
        if weighted != -two.value:
            raise UnliftableError(
                f"mixed lengths must satisfy l1 + 3*l3 = {-two.value}, "
                f"got {weighted}"
            )
    try:
        return _build_shape(tag, metric=True, lengths=lengths, setting=setting)
    except ValueError as exc:  # pragma: no cover - the prechecks are complete
        raise UnliftableError(str(exc)) from exc


def metric_lengths(mm: MetricDeltaMorphism) -> Lengths:
    """Read the per-slope-class inner edge lengths off a metric morphism.

    Inner edges of the same absolute slope must agree in length (true
    for every special metric morphism).
    """
    found: Dict[int, Fraction] = {}
    src = mm.source
    for e in src.edge_ids:
        if src.is_tail(e):
            continue
        slope = abs(mm.morphism.sdelta_stored(e))
        length = src.length(e)
        if slope in found and found[slope] != length:
            raise ValueError(
                f"inner edges of slope {slope} have different lengths"
            )
        found[slope] = length
    return Lengths(
        l0=found.get(0, Fraction(0)),
        l1=found.get(1, Fraction(0)),
        l3=found.get(3, Fraction(0)),
    )


def bar_discriminator(lengths: Lengths, setting: ResidueSetting) -> SpecialType:
    """Separate the mixed H-shapes by the bar length ``4*l1 + l0``.

    Longer than ``-log|16|`` means a loop survives (MB), equality is the
    ordinary case (MO), shorter is supersingular (MS).
    """
    two = setting.int_abs(2)
    if two == ZERO or two.is_neg_inf:
        raise ValueError("the bar discriminator applies to the mixed case only")
    bar = 4 * lengths.l1 + lengths.l0
    threshold = -4 * two.value
    if bar > threshold:
        return SpecialType("MB")
    if bar == threshold:
        return SpecialType("MO")
    return SpecialType("MS")
