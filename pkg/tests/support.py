"""Random generators shared by the property and acceptance tests.

``random_proper_delta_morphism`` builds proper morphisms by
construction: it draws a target multigraph, splits the degree into
fiber multiplicities over every target vertex, and realizes each target
edge as a random transportation plan between the two fibers (row and
column sums are the vertex multiplicities), splitting plan entries into
parallel edges.  Local constancy and constant rank hold by
construction; only source connectivity is enforced by rejection.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Tuple

from wildskel import DeltaMorphism, GenusGraph, ValuedSeries


def _random_composition(rng: random.Random, total: int) -> List[int]:
    """Random composition of ``total`` into positive parts."""
    parts = []
    remaining = total
    while remaining > 0:
        p = rng.randint(1, remaining)
        parts.append(p)
        remaining -= p
    rng.shuffle(parts)
    return parts


def _random_target(rng: random.Random, max_vertices: int) -> GenusGraph:
    nv = rng.randint(2, max_vertices)
    genera = {f"T{i}": rng.randint(0, 2) for i in range(nv)}
    edges: Dict[str, Tuple[str, str]] = {}
    order = list(genera)
    rng.shuffle(order)
    for i in range(1, nv):
        j = rng.randrange(i)
        edges[f"F{len(edges)}"] = (order[j], order[i])
    for _ in range(rng.randint(0, 2)):
        u, v = rng.sample(order, 2)
        edges[f"F{len(edges)}"] = (u, v)
    return GenusGraph(genera, edges)


def _transportation(
    rng: random.Random, rows: List[int], cols: List[int]
) -> Dict[Tuple[int, int], int]:
    """Random nonnegative matrix with the given row and column sums."""
    rem_r = list(rows)
    rem_c = list(cols)
    plan: Dict[Tuple[int, int], int] = {}
    while sum(rem_r) > 0:
        i = rng.choice([k for k, r in enumerate(rem_r) if r > 0])
        j = rng.choice([k for k, c in enumerate(rem_c) if c > 0])
        amount = rng.randint(1, min(rem_r[i], rem_c[j]))
        plan[(i, j)] = plan.get((i, j), 0) + amount
        rem_r[i] -= amount
        rem_c[j] -= amount
    return plan


def random_proper_delta_morphism(
    rng: random.Random, max_target_vertices: int = 4, max_degree: int = 3
) -> DeltaMorphism:
    """A random proper delta-morphism with a connected source."""
    while True:
        target = _random_target(rng, max_target_vertices)
        degree = rng.randint(1, max_degree)
        fiber_mult: Dict[str, List[int]] = {
            v2: _random_composition(rng, degree) for v2 in target.vertices
        }
        genera: Dict[str, int] = {}
        vertex_map: Dict[str, str] = {}
        for v2, mults in fiber_mult.items():
            for i in range(len(mults)):
                name = f"{v2}_{i}"
                genera[name] = rng.randint(0, 2)
                vertex_map[name] = v2
        edges: Dict[str, Tuple[str, str]] = {}
        edge_map: Dict[str, str] = {}
        mult: Dict[str, int] = {}
        sdelta: Dict[str, int] = {}
        for e2 in target.edge_ids:
            u2, v2 = target.endpoints(e2)
            plan = _transportation(rng, fiber_mult[u2], fiber_mult[v2])
            for (i, j), total in plan.items():
                for part in _random_composition(rng, total):
                    name = f"e{len(edges)}"
                    edges[name] = (f"{u2}_{i}", f"{v2}_{j}")
                    edge_map[name] = e2
                    mult[name] = part
                    sdelta[name] = rng.randint(-3, 3)
        source = GenusGraph(genera, edges)
        if not source.is_connected():
            continue
        return DeltaMorphism(source, target, vertex_map, edge_map, mult, sdelta)


def random_valued_series(
    rng: random.Random, max_support: int = 12
) -> ValuedSeries:
    """Finite support in [-6, 8], rational values in [-6, 0]."""
    n = rng.randint(1, max_support)
    indices = rng.sample(range(-6, 9), n)
    den = rng.choice([1, 2, 3, 4])
    return ValuedSeries(
        {i: Fraction(rng.randint(-6 * den, 0), den) for i in indices}
    )
