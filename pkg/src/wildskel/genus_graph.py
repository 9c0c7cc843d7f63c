"""Finite genus graphs, metric genus graphs and divisors.

A genus graph is a finite multigraph (loops and parallel edges allowed)
with a nonnegative genus attached to every vertex; its genus is
``h^1 + sum of vertex genera``.  The metric variant adds a length in
``(0, inf]`` per edge, where infinite length is reserved for tails
ending in genus-zero infinite leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple

from .valuation import INF, ExtendedRational, format_length, parse_length


class DisconnectedError(ValueError):
    pass


class OrientedEdge(NamedTuple):
    """An edge with a direction; ``forward`` follows the stored (from, to)."""

    edge: str
    forward: bool

    def __neg__(self) -> "OrientedEdge":
        return OrientedEdge(self.edge, not self.forward)


class GenusGraph:
    """Finite connected-or-not multigraph with per-vertex genus."""

    def __init__(
        self,
        genera: Mapping[str, int],
        edges: Mapping[str, Tuple[str, str]],
    ):
        self._genus: Dict[str, int] = {str(v): int(g) for v, g in genera.items()}
        for v, g in self._genus.items():
            if g < 0:
                raise ValueError(f"vertex {v} has negative genus")
        self._ends: Dict[str, Tuple[str, str]] = {}
        for e, (u, v) in edges.items():
            u, v = str(u), str(v)
            if u not in self._genus or v not in self._genus:
                raise ValueError(f"edge {e} has an endpoint outside the vertex set")
            self._ends[str(e)] = (u, v)

    # -- basic structure ------------------------------------------------

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(sorted(self._genus))

    @property
    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(sorted(self._ends))

    def genus_of(self, v: str) -> int:
        return self._genus[v]

    def endpoints(self, e: str) -> Tuple[str, str]:
        return self._ends[e]

    def is_loop(self, e: str) -> bool:
        u, v = self._ends[e]
        return u == v

    def source(self, oe: OrientedEdge) -> str:
        u, v = self._ends[oe.edge]
        return u if oe.forward else v

    def head(self, oe: OrientedEdge) -> str:
        u, v = self._ends[oe.edge]
        return v if oe.forward else u

    def branches(self, v: str) -> Tuple[OrientedEdge, ...]:
        """Oriented edges leaving ``v``; a loop contributes two."""
        out = []
        for e in sorted(self._ends):
            a, b = self._ends[e]
            if a == v:
                out.append(OrientedEdge(e, True))
            if b == v:
                out.append(OrientedEdge(e, False))
        return tuple(out)

    def valence(self, v: str) -> int:
        return len(self.branches(v))

    def is_leaf(self, v: str) -> bool:
        return self.valence(v) == 1

    def neighbors(self, v: str) -> Tuple[str, ...]:
        return tuple(sorted({self.head(b) for b in self.branches(v)}))

    def is_connected(self) -> bool:
        verts = self.vertices
        if not verts:
            return True
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(verts)

    # -- invariants ------------------------------------------------------

    def h1(self) -> int:
        if not self.is_connected():
            raise DisconnectedError("h^1 is defined for connected graphs")
        return len(self._ends) - len(self._genus) + 1

    def genus(self) -> int:
        return self.h1() + sum(self._genus.values())

    def canonical_divisor(self) -> "Divisor":
        return Divisor(
            {v: self.valence(v) + 2 * self.genus_of(v) - 2 for v in self.vertices}
        )

    # -- misc -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GenusGraph):
            return NotImplemented
        return self._genus == other._genus and self._ends == other._ends

    def __hash__(self):
        return hash(
            (tuple(sorted(self._genus.items())), tuple(sorted(self._ends.items())))
        )

    def __repr__(self):
        return (
            f"{type(self).__name__}({len(self._genus)} vertices, "
            f"{len(self._ends)} edges)"
        )

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {"id": v, "genus": self._genus[v]} for v in self.vertices
            ],
            "edges": [
                {"id": e, "from": self._ends[e][0], "to": self._ends[e][1]}
                for e in self.edge_ids
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "GenusGraph":
        genera = {v["id"]: v.get("genus", 0) for v in data["vertices"]}
        edges = {e["id"]: (e["from"], e["to"]) for e in data["edges"]}
        if any("length" in e for e in data["edges"]) or data.get("infinite_leaves"):
            lengths = {
                e["id"]: parse_length(e["length"]) for e in data["edges"]
            }
            return MetricGenusGraph(
                genera,
                edges,
                lengths,
                infinite_leaves=data.get("infinite_leaves", ()),
            )
        return cls(genera, edges)


class MetricGenusGraph(GenusGraph):
    """Genus graph with edge lengths; infinite lengths mark tails.

    An edge has length ``inf`` exactly when one of its endpoints is a
    marked infinite leaf, and infinite leaves have genus zero.
    """

    def __init__(
        self,
        genera: Mapping[str, int],
        edges: Mapping[str, Tuple[str, str]],
        lengths: Mapping[str, ExtendedRational],
        infinite_leaves: Iterable[str] = (),
    ):
        super().__init__(genera, edges)
        self._lengths: Dict[str, ExtendedRational] = {}
        for e in self.edge_ids:
            if e not in lengths:
                raise ValueError(f"edge {e} has no length")
            l = lengths[e]
            if l is not INF:
                l = Fraction(l)
                if l <= 0:
                    raise ValueError(f"edge {e} has nonpositive length {l}")
            self._lengths[e] = l
        self._infinite_leaves = frozenset(str(v) for v in infinite_leaves)
        for v in self._infinite_leaves:
            if v not in self._genus:
                raise ValueError(f"infinite leaf {v} is not a vertex")
            if self.genus_of(v) != 0:
                raise ValueError(f"infinite leaf {v} must have genus 0")
            if not self.is_leaf(v):
                raise ValueError(f"infinite leaf {v} must have valence 1")
        for e in self.edge_ids:
            u, v = self.endpoints(e)
            is_tail = u in self._infinite_leaves or v in self._infinite_leaves
            if is_tail != (self._lengths[e] is INF):
                raise ValueError(
                    f"edge {e} must have infinite length iff it is a tail"
                )

    @property
    def infinite_leaves(self) -> frozenset:
        return self._infinite_leaves

    def length(self, e: str) -> ExtendedRational:
        return self._lengths[e]

    def is_tail(self, e: str) -> bool:
        return self._lengths[e] is INF

    def __eq__(self, other):
        if not isinstance(other, MetricGenusGraph):
            return NotImplemented
        return (
            super().__eq__(other)
            and self._lengths == other._lengths
            and self._infinite_leaves == other._infinite_leaves
        )

    def __hash__(self):
        return hash(
            (
                super().__hash__(),
                tuple(sorted(self._lengths.items(), key=lambda kv: kv[0])),
                self._infinite_leaves,
            )
        )

    def to_json_dict(self) -> dict:
        data = super().to_json_dict()
        for e in data["edges"]:
            e["length"] = format_length(self._lengths[e["id"]])
        if self._infinite_leaves:
            data["infinite_leaves"] = sorted(self._infinite_leaves)
        return data


@dataclass(frozen=True)
class Divisor:
    """Formal integer combination of vertices."""

    coefficients: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(
            self,
            "coefficients",
            {str(v): int(c) for v, c in dict(self.coefficients).items() if c != 0},
        )

    def coefficient(self, v: str) -> int:
        return self.coefficients.get(v, 0)

    def degree(self) -> int:
        return sum(self.coefficients.values())

    def __add__(self, other: "Divisor") -> "Divisor":
        coeffs = dict(self.coefficients)
        for v, c in other.coefficients.items():
            coeffs[v] = coeffs.get(v, 0) + c
        return Divisor(coeffs)

    def __sub__(self, other: "Divisor") -> "Divisor":
        coeffs = dict(self.coefficients)
        for v, c in other.coefficients.items():
            coeffs[v] = coeffs.get(v, 0) - c
        return Divisor(coeffs)

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(sorted(self.coefficients.items())))

    def __repr__(self):
        if not self.coefficients:
            return "Divisor(0)"
        terms = " + ".join(
            f"{c}*{v}" for v, c in sorted(self.coefficients.items())
        )
        return f"Divisor({terms})"

    def to_json_dict(self) -> dict:
        return {v: c for v, c in sorted(self.coefficients.items())}


def degree(d: Divisor) -> int:
    return d.degree()
