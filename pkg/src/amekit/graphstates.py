"""Graphs, graph-state circuits and local complementation.

A :class:`Graph` keeps an *ordered* edge list.  The order fixes the order of
the controlled-Z gates in :func:`graph_to_circuit` (snapshot spectra depend
on it), and a repeated pair stands for a weighted edge ``CZ^w``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable

import numpy as np

from .circuit import Circuit, Gate
from .errors import InputError


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise InputError("a graph needs at least one vertex")
        edges = []
        for e in self.edges:
            if len(e) != 2:
                raise InputError(f"edge {e!r} is not a vertex pair")
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise InputError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"edge ({i}, {j}) outside {n} vertices")
            edges.append((min(i, j), max(i, j)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def adjacency(self) -> np.ndarray:
        """Symmetric integer matrix; entries count edge multiplicity."""
        a = np.zeros((self.n, self.n), dtype=int)
        for i, j in self.edges:
            a[i, j] += 1
            a[j, i] += 1
        return a

    @property
    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return sorted({j for i, j in self.edges if i == v} | {i for i, j in self.edges if j == v})

    def is_connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            for w in self.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    @classmethod
    def from_adjacency(cls, adj) -> Graph:
        """Graph with edges in lexicographic order, repeated by multiplicity."""
        a = np.asarray(adj, dtype=int)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("adjacency must be square")
        if not np.array_equal(a, a.T):
            raise InputError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0):
            raise InputError("self-interactions are not allowed")
        if np.any(a < 0):
            raise InputError("negative edge weight")
        edges = [(i, j) for i, j in combinations(range(a.shape[0]), 2) for _ in range(a[i, j])]
        return cls(a.shape[0], tuple(edges))

    def same_edges(self, other: Graph) -> bool:
        return self.n == other.n and np.array_equal(self.adjacency, other.adjacency)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        try:
            return cls(int(data["n"]), tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed graph JSON: {exc}") from exc

    @classmethod
    def from_json(cls, source: str | Path) -> Graph:
        path = Path(source)
        text = path.read_text() if path.exists() else str(source)
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid graph JSON: {exc}") from exc


def graph_to_circuit(g: Graph, d: int) -> Circuit:
    """Uniform superposition on every site, then one CZ_d per edge in edge order."""
    if d < 2:
        raise InputError("d must be >= 2")
    if d == 2:
        gates = [Gate("H", (v,)) for v in range(g.n)]
        gates += [Gate("CZ", e) for e in g.edges]
    else:
        gates = [Gate("F_D", (v,), d=d) for v in range(g.n)]
        gates += [Gate("CZ_D", e, d=d) for e in g.edges]
    return Circuit((d,) * g.n, tuple(gates))


def star_graph(k: int) -> Graph:
    return Graph(k, tuple((0, v) for v in range(1, k)))


def path_graph(k: int) -> Graph:
    return Graph(k, tuple((v, v + 1) for v in range(k - 1)))


def complete_graph(k: int) -> Graph:
    return Graph(k, tuple(combinations(range(k), 2)))


# Edge lists are kept in gate order; snapshot spectra depend on it.
_KNOWN: dict[str, Graph] = {
    "bell": Graph(2, ((0, 1),)),
    # pentagon, AME(5,d) for every prime d
    "ame5_cycle": Graph(5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4))),
    # hexagon plus three chords, AME(6,d)
    "ame6": Graph(6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 4), (1, 3), (2, 5))),
    # square with the 1-3 edge listed twice (weight 2): AME(4,d) for prime d >= 3
    "ame4_prime": Graph(4, ((0, 1), (1, 3), (1, 3), (2, 3), (0, 2))),
    # octagon on 8 qubits; parties are the pairs (0,1), (2,3), (4,5), (6,7)
    "ame44_qubits": Graph(8, ((1, 2), (2, 5), (5, 7), (3, 7), (0, 3), (0, 4), (4, 6), (1, 6))),
    # 5-qubit bow-tie coupling map (two triangles sharing vertex 2)
    "ibmqx4_topology": Graph(5, ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4))),
}

AME44_PARTIES = ((0, 1), (2, 3), (4, 5), (6, 7))


def known_graph(name: str) -> Graph:
    """Named graph: one of ``bell``, ``ame5_cycle``, ``ame6``, ``ame4_prime``,
    ``ame44_qubits``, ``ibmqx4_topology``, ``ghz_<k>`` (star), ``path_<k>``,
    ``complete_<k>``."""
    if name in _KNOWN:
        return _KNOWN[name]
    for prefix, build in (("ghz_", star_graph), ("path_", path_graph), ("complete_", complete_graph)):
        if name.startswith(prefix):
            try:
                k = int(name[len(prefix):])
            except ValueError:
                break
            if k < 2:
                raise InputError(f"{name}: need at least 2 vertices")
            return build(k)
    raise InputError(f"unknown graph {name!r}")


def known_graph_names() -> list[str]:
    return sorted(_KNOWN) + ["ghz_<k>", "path_<k>", "complete_<k>"]


def lc_transform(g: Graph, v: int) -> Graph:
    """Local complementation at ``v``: toggle every edge between two neighbours of ``v``.

    Untouched edges keep their order; new edges are appended lexicographically.
    """
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range")
    if not g.is_simple:
        raise InputError("local complementation needs a simple graph")
    toggled = set(combinations(g.neighbors(v), 2))
    kept = [e for e in g.edges if e not in toggled]
    present = set(g.edges)
    added = sorted(e for e in toggled if e not in present)
    return Graph(g.n, tuple(kept + added))


def lc_sequence(g: Graph, vertices: Iterable[int]) -> Graph:
    for v in vertices:
        g = lc_transform(g, v)
    return g


def is_path_graph(g: Graph) -> bool:
    if not g.is_simple or len(g.edges) != g.n - 1:
        return False
    degrees = g.adjacency.sum(axis=1)
    return g.is_connected() and int(degrees.max(initial=0)) <= 2

