"""
Dinâmica de Glauber (Metropolis) no espaço estendido de rotulações.

Este módulo contém rotulações, sequências de atualização, o passo de
Metropolis, a evolução de trajetórias com o registro de atualizações
bem-sucedidas, a simulação em tempo contínuo e as ferramentas de Hamming.
"""

import logging
import os
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .erros import ErroEntrada
from .graphlib import DiGraph, Graph

logger = logging.getLogger(__name__)

GrafoQualquer = Union[Graph, DiGraph]
Atualizacao = Tuple[int, int]


class Labeling:
    """
    Rotulação vértice -> cor em 1..k, não necessariamente própria.
    """

    def __init__(self, colors: Iterable[int], k: int):
        cores = np.asarray(list(colors) if not isinstance(colors, np.ndarray) else colors,
                           dtype=np.int64)
        if k < 1:
            raise ErroEntrada(f"Número de cores inválido: k={k}")
        if cores.size and (cores.min() < 1 or cores.max() > k):
            raise ErroEntrada(f"Cores devem estar em 1..{k}")
        self.colors = cores
        self.colors.setflags(write=False)
        self.k = int(k)

    @property
    def n(self) -> int:
        return int(self.colors.size)

    def __getitem__(self, v: int) -> int:
        return int(self.colors[v])

    def __len__(self) -> int:
        return self.n

    def tolist(self) -> List[int]:
        return [int(c) for c in self.colors]

    def with_color(self, v: int, c: int) -> "Labeling":
        """Cópia com o vértice v recolorido para c."""
        cores = self.colors.copy()
        cores[v] = c
        return Labeling(cores, self.k)

    def is_proper(self, g: GrafoQualquer) -> bool:
        cores = self.colors
        return all(cores[u] != cores[w] for u in range(g.n) for w in g.neighbors(u))

    def __eq__(self, outro: object) -> bool:
        return (isinstance(outro, Labeling) and self.k == outro.k
                and np.array_equal(self.colors, outro.colors))

    def __hash__(self) -> int:
        return hash((self.k, self.colors.tobytes()))

    def __repr__(self) -> str:
        return f"Labeling(k={self.k}, colors={self.tolist()})"


class UpdateSequence:
    """
    Sequência de propostas (v_t, c_t), t = 1..T.

    A sequência inteira é mantida em memória porque o acoplamento lê e
    reescreve coordenadas futuras.
    """

    def __init__(self, vertices: Iterable[int], colors: Iterable[int]):
        self.vertices = np.asarray(list(vertices) if not isinstance(vertices, np.ndarray)
                                   else vertices, dtype=np.int64)
        self.colors = np.asarray(list(colors) if not isinstance(colors, np.ndarray)
                                 else colors, dtype=np.int64)
        if self.vertices.shape != self.colors.shape:
            raise ErroEntrada("Vértices e cores da sequência com tamanhos diferentes")
        self.vertices.setflags(write=False)
        self.colors.setflags(write=False)

    @classmethod
    def from_steps(cls, passos: Iterable[Atualizacao]) -> "UpdateSequence":
        passos = list(passos)
        return cls([v for v, _ in passos], [c for _, c in passos])

    @property
    def T(self) -> int:
        return int(self.vertices.size)

    def __len__(self) -> int:
        return self.T

    def step(self, t: int) -> Atualizacao:
        """Atualização (v_t, c_t) no tempo t, indexado a partir de 1."""
        return int(self.vertices[t - 1]), int(self.colors[t - 1])

    @property
    def steps(self) -> List[Atualizacao]:
        return list(zip(self.vertices.tolist(), self.colors.tolist()))

    def with_colors(self, cores: Iterable[int]) -> "UpdateSequence":
        return UpdateSequence(self.vertices, np.asarray(list(cores), dtype=np.int64))

    def validar(self, n: int, k: int) -> "UpdateSequence":
        if self.T and (self.vertices.min() < 0 or self.vertices.max() >= n):
            raise ErroEntrada(f"Sequência com vértice fora de 0..{n - 1}")
        if self.T and (self.colors.min() < 1 or self.colors.max() > k):
            raise ErroEntrada(f"Sequência com cor fora de 1..{k}")
        return self

    def chave(self) -> bytes:
        """Representação binária usada para comparar e indexar sequências."""
        return self.vertices.tobytes() + b"|" + self.colors.tobytes()

    def __eq__(self, outro: object) -> bool:
        return (isinstance(outro, UpdateSequence)
                and np.array_equal(self.vertices, outro.vertices)
                and np.array_equal(self.colors, outro.colors))

    def __hash__(self) -> int:
        return hash(self.chave())

    def __repr__(self) -> str:
        return f"UpdateSequence(T={self.T})"


@dataclass(frozen=True)
class CTEvent:
    """Toque de relógio em tempo contínuo com a cor proposta."""

    time: float
    vertex: int
    color: int


class Trajectory:
    """
    Evolução de uma rotulação inicial sob uma sequência de atualização.

    Guarda, por vértice, os tempos e as cores das atualizações bem-sucedidas
    e os tempos em que o vértice foi proposto, de modo que X_s(w), as épocas
    e os conjuntos trocáveis são consultados por busca binária.
    """

    def __init__(self, initial: Labeling, sequence: UpdateSequence, accepted: np.ndarray,
                 checkpoints: Dict[int, Labeling]):
        self.initial = initial
        self.sequence = sequence
        self.accepted = accepted
        self.checkpoints = checkpoints

        n = initial.n
        self._tempos_sucesso: List[List[int]] = [[] for _ in range(n)]
        self._cores_sucesso: List[List[int]] = [[] for _ in range(n)]
        self._tempos_proposta: List[List[int]] = [[] for _ in range(n)]
        vs = sequence.vertices.tolist()
        cs = sequence.colors.tolist()
        for t, (v, c, ok) in enumerate(zip(vs, cs, accepted.tolist()), start=1):
            self._tempos_proposta[v].append(t)
            if ok:
                self._tempos_sucesso[v].append(t)
                self._cores_sucesso[v].append(c)
        self._final: Optional[Labeling] = None

    @property
    def T(self) -> int:
        return self.sequence.T

    @property
    def k(self) -> int:
        return self.initial.k

    def color(self, w: int, s: int) -> int:
        """X_s(w): cor de w após s passos."""
        i = bisect_right(self._tempos_sucesso[w], s)
        if i == 0:
            return self.initial[w]
        return self._cores_sucesso[w][i - 1]

    def labeling_at(self, s: int) -> Labeling:
        if s in self.checkpoints:
            return self.checkpoints[s]
        if s == self.T and self._final is not None:
            return self._final
        rotulacao = Labeling([self.color(w, s) for w in range(self.initial.n)], self.k)
        if s == self.T:
            self._final = rotulacao
        return rotulacao

    @property
    def final(self) -> Labeling:
        return self.labeling_at(self.T)

    def last_success(self, w: int, t: int) -> int:
        """Maior tempo s <= t de atualização bem-sucedida de w (0 se não houver)."""
        tempos = self._tempos_sucesso[w]
        i = bisect_right(tempos, t)
        return tempos[i - 1] if i else 0

    def next_success(self, w: int, t: int) -> int:
        """Menor tempo s > t de atualização bem-sucedida de w (T+1 se não houver)."""
        tempos = self._tempos_sucesso[w]
        i = bisect_right(tempos, t)
        return tempos[i] if i < len(tempos) else self.T + 1

    def success_times(self, w: int) -> List[int]:
        return list(self._tempos_sucesso[w])

    def proposal_times(self, u: int, inicio: int, fim: int) -> List[int]:
        """Tempos s em [inicio, fim) nos quais u foi o vértice proposto."""
        tempos = self._tempos_proposta[u]
        return tempos[bisect_left(tempos, inicio):bisect_left(tempos, fim)]


# ---------------------------------------------------------------------------
# Passo de Metropolis
# ---------------------------------------------------------------------------

def available_colors(g: GrafoQualquer, x: Labeling, v: int) -> FrozenSet[int]:
    """
    Cores disponíveis A(x, v) = [k] ∖ x(N(v)).

    Em um DiGraph, N(v) são os vizinhos de entrada.
    """
    usadas = {x[w] for w in g.neighbors(v)}
    return frozenset(c for c in range(1, x.k + 1) if c not in usadas)


def available_colors_excluding(g: GrafoQualquer, x: Labeling, w: int, v: int) -> FrozenSet[int]:
    """Cores A_v(x, w) = [k] ∖ x(N(w) ∖ {v}), ignorando a cor de v."""
    usadas = {x[u] for u in g.neighbors(w) if u != v}
    return frozenset(c for c in range(1, x.k + 1) if c not in usadas)


def _aceita(vizinhos: Sequence[int], cores: Sequence[int], c: int) -> bool:
    for w in vizinhos:
        if cores[w] == c:
            return False
    return True


def metropolis_step(g: GrafoQualquer, x: Labeling, upd: Atualizacao) -> Labeling:
    """
    Aplica a regra de Metropolis no espaço estendido.

    x'(u) = c se c ∉ x(N(u)); caso contrário x'(u) = x(u).
    """
    u, c = int(upd[0]), int(upd[1])
    g.validar_vertice(u)
    if not 1 <= c <= x.k:
        raise ErroEntrada(f"Cor {c} fora de 1..{x.k}")
    if c == x[u] or not _aceita(g.neighbors(u), x.colors, c):
        return x
    return x.with_color(u, c)


def evolve(g: GrafoQualquer, x0: Labeling, sigma: UpdateSequence,
           checkpoints: Iterable[int] = ()) -> Trajectory:
    """
    Evolui x0 sob a sequência sigma.

    Args:
        g: Grafo
        x0: Rotulação inicial
        sigma: Sequência de atualização
        checkpoints: Tempos em que a rotulação completa deve ser materializada

    Returns:
        Trajectory com as marcas de aceitação de cada passo
    """
    if x0.n != g.n:
        raise ErroEntrada(f"Rotulação com {x0.n} vértices para grafo com {g.n}")
    sigma.validar(g.n, x0.k)
    marcas = set(int(t) for t in checkpoints)
    cores = x0.tolist()
    adj = [g.neighbors(v) for v in range(g.n)]
    aceitos = np.zeros(sigma.T, dtype=bool)
    guardados: Dict[int, Labeling] = {}
    if 0 in marcas:
        guardados[0] = x0
    for t, (v, c) in enumerate(zip(sigma.vertices.tolist(), sigma.colors.tolist()), start=1):
        if _aceita(adj[v], cores, c):
            aceitos[t - 1] = True
            cores[v] = c
        if t in marcas:
            guardados[t] = Labeling(cores, x0.k)
    return Trajectory(x0, sigma, aceitos, guardados)


def evolve_batch(g: GrafoQualquer, x0: Labeling, passos: int, replicas: int,
                 rng: np.random.Generator) -> np.ndarray:
    """
    Evolui várias cadeias independentes em paralelo vetorizado.

    Returns:
        Matriz (replicas, n) com as rotulações finais
    """
    n, k = g.n, x0.k
    grau = max(g.max_degree, 1)
    # adjacência preenchida com o índice n, cuja coluna de estados vale sempre 0
    viz = np.full((n, grau), n, dtype=np.int64)
    for v in range(n):
        vizinhos = g.neighbors(v)
        viz[v, :len(vizinhos)] = vizinhos
    estados = np.zeros((replicas, n + 1), dtype=np.int64)
    estados[:, :n] = x0.colors
    linhas = np.arange(replicas)
    for _ in range(passos):
        v = rng.integers(0, n, size=replicas)
        c = rng.integers(1, k + 1, size=replicas)
        bloqueado = (estados[linhas[:, None], viz[v]] == c[:, None]).any(axis=1)
        livres = ~bloqueado
        estados[linhas[livres], v[livres]] = c[livres]
    return estados[:, :n]


def sample_update_sequence(n: int, k: int, T: int, seed=None) -> UpdateSequence:
    """
    Sorteia T pares (v, c) i.i.d., v uniforme em V e c uniforme em [k].

    Raises:
        ErroEntrada: Se T < 0, n < 1 ou k < 1
    """
    if T < 0:
        raise ErroEntrada(f"Comprimento negativo: T={T}")
    if n < 1 or k < 1:
        raise ErroEntrada(f"Parâmetros inválidos: n={n}, k={k}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    vertices = rng.integers(0, n, size=T)
    cores = rng.integers(1, k + 1, size=T)
    return UpdateSequence(vertices, cores)


@dataclass
class CTResult:
    """Resultado da simulação em tempo contínuo."""

    events: List[CTEvent]
    final: Labeling
    t_end: float
    trajectory: Trajectory = field(repr=False)
    _tempos: List[float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._tempos = [e.time for e in self.events]

    def steps_until(self, tempo: float) -> int:
        """Número de toques ocorridos em [0, tempo]."""
        return bisect_right(self._tempos, tempo)


def ct_simulate(g: GrafoQualquer, x0: Labeling, t_end: float, seed=None) -> CTResult:
    """
    Dinâmica de Metropolis em tempo contínuo com relógios de Poisson de taxa 1.

    Os n relógios independentes são superpostos em um único relógio de taxa n;
    a cada toque sorteia-se o vértice e a cor uniformemente.

    Args:
        g: Grafo (ou DiGraph, com vizinhos de entrada)
        x0: Rotulação inicial
        t_end: Horizonte de tempo
        seed: Semente ou numpy Generator

    Returns:
        CTResult com o registro de eventos, a rotulação em t_end e a cadeia de saltos
    """
    if t_end < 0:
        raise ErroEntrada(f"Horizonte negativo: t_end={t_end}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    eventos: List[CTEvent] = []
    t = 0.0
    taxa = float(g.n)
    while taxa > 0:
        t += rng.exponential(1.0 / taxa)
        if t > t_end:
            break
        v = int(rng.integers(0, g.n))
        c = int(rng.integers(1, x0.k + 1))
        eventos.append(CTEvent(t, v, c))
    sigma = UpdateSequence([e.vertex for e in eventos], [e.color for e in eventos])
    trajetoria = evolve(g, x0, sigma)
    return CTResult(eventos, trajetoria.final, float(t_end), trajetoria)


# ---------------------------------------------------------------------------
# Hamming
# ---------------------------------------------------------------------------

def hamming(x: Labeling, y: Labeling) -> Tuple[int, FrozenSet[int]]:
    """Tamanho e conjunto de discordância X ⊕ Y."""
    if x.n != y.n or x.k != y.k:
        raise ErroEntrada("Rotulações com n ou k diferentes")
    diferentes = np.flatnonzero(x.colors != y.colors)
    return int(diferentes.size), frozenset(int(v) for v in diferentes)


def hamming_interpolation(x: Labeling, y: Labeling) -> List[Labeling]:
    """
    Interpolação Z_0 = x, ..., Z_d = y trocando os vértices discordantes
    em ordem crescente de id.
    """
    _, diferentes = hamming(x, y)
    caminho = [x]
    atual = x
    for v in sorted(diferentes):
        atual = atual.with_color(v, y[v])
        caminho.append(atual)
    return caminho


# ---------------------------------------------------------------------------
# Enumeração de colorações próprias
# ---------------------------------------------------------------------------

def enumerate_proper_colorings(g: Graph, k: int) -> Iterator[Tuple[int, ...]]:
    """Gera as k-colorações próprias por retrocesso em ordem crescente de vértice."""
    n = g.n
    anteriores = [[w for w in g.neighbors(v) if w < v] for v in range(n)]
    cores = [0] * n

    def _rec(v):
        if v == n:
            yield tuple(cores)
            return
        proibidas = {cores[w] for w in anteriores[v]}
        for c in range(1, k + 1):
            if c not in proibidas:
                cores[v] = c
                yield from _rec(v + 1)
        cores[v] = 0

    yield from _rec(0)


def count_proper_colorings(g: Graph, k: int) -> int:
    return sum(1 for _ in enumerate_proper_colorings(g, k))


def transition_matrix(g: Graph, k: int) -> Tuple[np.ndarray, List[Tuple[int, ...]]]:
    """
    Matriz de transição de um passo restrita às colorações próprias,
    obtida enumerando as n·k atualizações equiprováveis.
    """
    estados = list(enumerate_proper_colorings(g, k))
    indice = {s: i for i, s in enumerate(estados)}
    matriz = np.zeros((len(estados), len(estados)))
    peso = 1.0 / (g.n * k)
    for i, s in enumerate(estados):
        x = Labeling(s, k)
        for v, c in product(range(g.n), range(1, k + 1)):
            j = indice[tuple(metropolis_step(g, x, (v, c)).tolist())]
            matriz[i, j] += peso
    return matriz, estados


def greedy_coloring(g: Graph, k: int) -> Labeling:
    """
    Coloração própria gulosa (menor cor disponível em ordem de vértice).

    Raises:
        ErroEntrada: Se algum vértice ficar sem cor disponível
    """
    cores = [0] * g.n
    for v in range(g.n):
        usadas = {cores[w] for w in g.neighbors(v)}
        livre = next((c for c in range(1, k + 1) if c not in usadas), None)
        if livre is None:
            raise ErroEntrada(f"k={k} insuficiente para colorir gulosamente o vértice {v}")
        cores[v] = livre
    return Labeling(cores, k)


# ---------------------------------------------------------------------------
# Arquivos texto
# ---------------------------------------------------------------------------

def write_labeling(x: Labeling, caminho: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(caminho)), exist_ok=True)
    with open(caminho, "w", encoding="utf-8") as f:
        f.write(f"{x.n} {x.k}\n")
        f.write("\n".join(str(c) for c in x.tolist()))
        f.write("\n")
    return caminho


def read_labeling(caminho: str) -> Labeling:
    """Lê uma rotulação no formato "n k" seguido de n cores."""
    with open(caminho, encoding="utf-8") as f:
        tokens = f.read().split()
    try:
        n, k = int(tokens[0]), int(tokens[1])
        cores = [int(c) for c in tokens[2:]]
    except (IndexError, ValueError) as e:
        raise ErroEntrada(f"Rotulação malformada em {caminho}: {e}")
    if len(cores) != n:
        raise ErroEntrada(f"Esperadas {n} cores em {caminho}, encontradas {len(cores)}")
    return Labeling(cores, k)


def write_sequence(sigma: UpdateSequence, caminho: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(caminho)), exist_ok=True)
    with open(caminho, "w", encoding="utf-8") as f:
        f.write(f"{sigma.T}\n")
        for v, c in sigma.steps:
            f.write(f"{v} {c}\n")
    return caminho


def read_sequence(caminho: str) -> UpdateSequence:
    """Lê uma sequência no formato "T" seguido de T linhas "v c"."""
    with open(caminho, encoding="utf-8") as f:
        linhas = [linha.split() for linha in f if linha.strip()]
    try:
        T = int(linhas[0][0])
        passos = [(int(v), int(c)) for v, c in linhas[1:]]
    except (IndexError, ValueError) as e:
        raise ErroEntrada(f"Sequência malformada em {caminho}: {e}")
    if len(passos) != T:
        raise ErroEntrada(f"Esperados {T} passos em {caminho}, encontrados {len(passos)}")
    return UpdateSequence.from_steps(passos)
