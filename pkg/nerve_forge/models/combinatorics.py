"""
Tipos combinatórios: partições, traços de construção, grafos e nervos
"""
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from ..core.exceptions import BijectionError, NotATree, PartitionError
from .geometry import Hyperplane, PointSet, RadonPair

Edge = Tuple[int, int]


def _normalize_edges(edges: Iterable[Sequence[int]]) -> FrozenSet[Edge]:
    out = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise ValueError(f"Laço no vértice {u}")
        out.add((min(u, v), max(u, v)))
    return frozenset(out)


# Eventos de construção

@dataclass(frozen=True)
class RadonStep:
    """Passo de Radon sobre d+2 índices globais"""

    indices: Tuple[int, ...]
    pair: RadonPair


@dataclass(frozen=True)
class LeafLine:
    """Hiperplano de uma folha; o lado positivo fechado contém a folha"""

    hyperplane: Hyperplane
    leaf: int
    parent: int
    through: Tuple[int, ...] = ()


@dataclass(frozen=True)
class SubpolytopeSplit:
    """Q e R compartilham exatamente o vértice x_k"""

    q_indices: Tuple[int, ...]
    r_indices: Tuple[int, ...]
    shared: int


@dataclass(frozen=True)
class SectorAssignment:
    sector: int
    part: int


@dataclass(frozen=True)
class PartSeparator:
    """Hiperplano com a parte `first` no lado negativo aberto e `second` no positivo"""

    first: int
    second: int
    hyperplane: Hyperplane


TraceEvent = Union[RadonStep, LeafLine, SubpolytopeSplit, SectorAssignment, PartSeparator]


@dataclass(frozen=True)
class ConstructionTrace:
    """Eventos de uma construção sobre o conjunto base `points`"""

    kind: str
    points: PointSet
    events: Tuple[TraceEvent, ...]
    root: int = 0
    orientation: int = 1

    def leaf_lines(self) -> List[LeafLine]:
        return [e for e in self.events if isinstance(e, LeafLine)]

    def of_type(self, cls) -> List[TraceEvent]:
        return [e for e in self.events if isinstance(e, cls)]


@dataclass(frozen=True)
class Partition:
    """Atribuição de cada índice de ponto a uma classe de cor em [0, n_parts)"""

    n_parts: int
    assignment: Tuple[int, ...]
    trace: Optional[ConstructionTrace] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n_parts < 1:
            raise PartitionError("Partição sem partes")
        seen = set()
        for idx, part in enumerate(self.assignment):
            if not 0 <= part < self.n_parts:
                raise PartitionError(f"Ponto {idx} atribuído à parte inexistente {part}")
            seen.add(part)
        if len(seen) != self.n_parts:
            missing = sorted(set(range(self.n_parts)) - seen)
            raise PartitionError(f"Partes vazias: {missing}")

    @classmethod
    def from_parts(cls, parts: Sequence[Iterable[int]], size: int,
                   trace: Optional[ConstructionTrace] = None) -> "Partition":
        assignment = [-1] * size
        for label, members in enumerate(parts):
            for i in members:
                if assignment[i] != -1:
                    raise PartitionError(f"Ponto {i} em duas partes")
                assignment[i] = label
        if -1 in assignment:
            raise PartitionError(f"Ponto {assignment.index(-1)} sem parte")
        return cls(n_parts=len(parts), assignment=tuple(assignment), trace=trace)

    @classmethod
    def from_mapping(cls, colors: Mapping[int, int], size: int, n_parts: int,
                     trace: Optional[ConstructionTrace] = None) -> "Partition":
        try:
            assignment = tuple(colors[i] for i in range(size))
        except KeyError as e:
            raise PartitionError(f"Ponto {e.args[0]} sem parte") from None
        return cls(n_parts=n_parts, assignment=assignment, trace=trace)

    def __len__(self) -> int:
        return len(self.assignment)

    def parts(self) -> List[Tuple[int, ...]]:
        buckets: Dict[int, List[int]] = defaultdict(list)
        for idx, part in enumerate(self.assignment):
            buckets[part].append(idx)
        return [tuple(buckets[p]) for p in range(self.n_parts)]

    def part(self, label: int) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.assignment) if p == label)

    def restrict(self, indices: Sequence[int]) -> Tuple[int, ...]:
        return tuple(self.assignment[i] for i in indices)

    def transported(self, sigma: Sequence[int]) -> "Partition":
        """σP: o ponto i passa a ser o ponto sigma[i]"""
        n = len(self.assignment)
        if len(sigma) != n or sorted(sigma) != list(range(n)):
            raise BijectionError("sigma não é uma bijeção dos índices")
        new = [0] * n
        for i, target in enumerate(sigma):
            new[target] = self.assignment[i]
        return Partition(n_parts=self.n_parts, assignment=tuple(new))


class GraphKind(str, Enum):
    """Tipos de grafo alvo"""

    TREE = "tree"
    CYCLE = "cycle"
    GENERAL = "general"


@dataclass(frozen=True)
class GraphSpec:
    """Grafo abstrato alvo, com o tipo verificado na construção"""

    n: int
    edges: FrozenSet[Edge]
    kind: GraphKind = GraphKind.GENERAL

    def __post_init__(self):
        object.__setattr__(self, "edges", _normalize_edges(self.edges))
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"Aresta ({u}, {v}) fora de [0, {self.n})")
        g = self.to_networkx()
        if self.kind == GraphKind.TREE and not nx.is_tree(g):
            raise NotATree(f"Grafo com {self.n} vértices e {len(self.edges)} arestas não é árvore")
        if self.kind == GraphKind.CYCLE:
            if self.n < 3 or not nx.is_connected(g) or any(d != 2 for _, d in g.degree()):
                raise ValueError("Grafo não é um ciclo")

    # Construtores

    @classmethod
    def tree(cls, n: int, edges: Iterable[Sequence[int]]) -> "GraphSpec":
        return cls(n=n, edges=frozenset(map(tuple, edges)), kind=GraphKind.TREE)

    @classmethod
    def general(cls, n: int, edges: Iterable[Sequence[int]]) -> "GraphSpec":
        return cls(n=n, edges=frozenset(map(tuple, edges)), kind=GraphKind.GENERAL)

    @classmethod
    def path(cls, n: int) -> "GraphSpec":
        return cls.tree(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, n: int) -> "GraphSpec":
        return cls.tree(n, [(0, i) for i in range(1, n)])

    @classmethod
    def cycle(cls, n: int) -> "GraphSpec":
        return cls(n=n, edges=frozenset((i, (i + 1) % n) for i in range(n)), kind=GraphKind.CYCLE)

    @classmethod
    def spider(cls, legs: int, length: int) -> "GraphSpec":
        edges = []
        label = 1
        for _ in range(legs):
            prev = 0
            for _ in range(length):
                edges.append((prev, label))
                prev = label
                label += 1
        return cls.tree(label, edges)

    @classmethod
    def convex_obstruction(cls) -> "GraphSpec":
        """Grafo bipartido de 10 vértices induzido por partições planares, nunca em posição convexa

        Rótulos 0..9 correspondem a A..J: D e E tocam A, B, C; F, G, H tocam A, B, C
        respectivamente; I e J tocam F, G, H.
        """
        a, b, c, d, e, f, g, h, i, j = range(10)
        edges = [(d, a), (d, b), (d, c), (e, a), (e, b), (e, c), (f, a), (g, b), (h, c),
                 (i, f), (i, g), (i, h), (j, f), (j, g), (j, h)]
        return cls.general(10, edges)

    @classmethod
    def from_networkx(cls, g: nx.Graph, kind: Optional[GraphKind] = None) -> "GraphSpec":
        mapping = {v: i for i, v in enumerate(sorted(g.nodes()))}
        edges = [(mapping[u], mapping[v]) for u, v in g.edges()]
        if kind is None:
            kind = GraphKind.TREE if g.number_of_nodes() and nx.is_tree(g) else GraphKind.GENERAL
        return cls(n=g.number_of_nodes(), edges=frozenset(edges), kind=kind)

    @classmethod
    def parse(cls, text: str) -> "GraphSpec":
        """Grafos nomeados: path:4, cycle:5, star:6, spider:3x2, convex-obstruction"""
        name, _, arg = text.partition(":")
        name = name.strip().lower()
        if name == "convex-obstruction" and not arg:
            return cls.convex_obstruction()
        try:
            if name == "path":
                return cls.path(int(arg))
            if name == "cycle":
                return cls.cycle(int(arg))
            if name == "star":
                return cls.star(int(arg))
            if name == "spider":
                legs, length = arg.lower().split("x")
                return cls.spider(int(legs), int(length))
        except ValueError as e:
            raise ValueError(f"Grafo nomeado inválido: {text}") from e
        raise ValueError(f"Grafo nomeado desconhecido: {text}")

    # Consultas

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v: [] for v in range(self.n)}
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_triangle_free(self) -> bool:
        return sum(nx.triangles(self.to_networkx()).values()) == 0


@dataclass(frozen=True)
class IntersectionGraph:
    """1-esqueleto do nervo de uma partição"""

    n: int
    edges: FrozenSet[Edge]

    def as_spec(self) -> GraphSpec:
        return GraphSpec.general(self.n, self.edges)


@dataclass(frozen=True)
class NerveComplex:
    """Faces do nervo (fechado para subconjuntos)"""

    n: int
    faces: FrozenSet[FrozenSet[int]]

    def one_skeleton(self) -> IntersectionGraph:
        edges = frozenset(tuple(sorted(f)) for f in self.faces if len(f) == 2)
        return IntersectionGraph(n=self.n, edges=edges)

    def faces_of_size(self, k: int) -> List[Tuple[int, ...]]:
        return sorted(tuple(sorted(f)) for f in self.faces if len(f) == k)


@dataclass(frozen=True)
class CaterpillarDecomposition:
    """Caminho central e folhas de cada vértice do caminho"""

    path: Tuple[int, ...]
    leaves: Mapping[int, Tuple[int, ...]] = field(hash=False)

    def edges(self) -> FrozenSet[Edge]:
        out = [(a, b) for a, b in zip(self.path, self.path[1:])]
        for v, ls in self.leaves.items():
            out.extend((v, leaf) for leaf in ls)
        return _normalize_edges(out)


@dataclass(frozen=True)
class SearchOutcome:
    """Resultado da busca exaustiva; partition None significa NotFound"""

    partition: Optional[Partition]
    leaves: int
    nodes: int
    pruned: int
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.partition is not None
