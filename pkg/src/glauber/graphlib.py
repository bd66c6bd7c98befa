"""
Representação de grafos e consultas estruturais.

Este módulo contém o grafo simples não direcionado usado em todo o pacote,
a variante direcionada G_in(v,3), consultas de bola/esfera/vizinhança,
cintura (girth), testes de aciclicidade de subgrafos induzidos e geradores
de grafos determinísticos por semente.
"""

import logging
import math
import os
from collections import deque
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple, Union

import networkx as nx
import numpy as np

from .erros import ErroEntrada, ErroGeracaoGrafo

logger = logging.getLogger(__name__)

Aresta = Tuple[int, int]
Sementes = Union[int, Iterable[int]]

ORCAMENTO_PADRAO = 10 ** 4


class Graph:
    """
    Grafo simples não direcionado com vértices 0..n-1.

    O grafo é imutável após a construção: listas de adjacência ordenadas,
    graus e conjuntos de vizinhos são calculados uma única vez.
    """

    def __init__(self, n: int, arestas: Iterable[Aresta] = (), rotulo: str = ""):
        """
        Inicializa o grafo.

        Args:
            n: Número de vértices
            arestas: Pares (u, v) com 0 <= u, v < n
            rotulo: Descrição curta usada em logs e relatórios

        Raises:
            ErroEntrada: Se houver laço, aresta repetida ou vértice fora do intervalo
        """
        if n < 0:
            raise ErroEntrada(f"Número de vértices inválido: {n}")

        vizinhos: List[Set[int]] = [set() for _ in range(n)]
        for u, v in arestas:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ErroEntrada(f"Aresta ({u}, {v}) fora do intervalo 0..{n - 1}")
            if u == v:
                raise ErroEntrada(f"Laço no vértice {u} não é permitido")
            if v in vizinhos[u]:
                raise ErroEntrada(f"Aresta repetida ({u}, {v})")
            vizinhos[u].add(v)
            vizinhos[v].add(u)

        self.n = n
        self.rotulo = rotulo
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in vizinhos)
        self.degrees: Tuple[int, ...] = tuple(len(s) for s in vizinhos)
        self._conjuntos: Tuple[FrozenSet[int], ...] = tuple(frozenset(s) for s in vizinhos)
        self._metadados: Dict[str, object] = {}

    @property
    def metadados(self) -> Mapping[str, object]:
        """Anotações da geração (cintura obtida, tentativas), somente leitura."""
        return MappingProxyType(self._metadados)

    def _anotar(self, **campos) -> None:
        self._metadados.update(campos)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> FrozenSet[int]:
        return self._conjuntos[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._conjuntos[u]

    def edges(self) -> List[Aresta]:
        """Lista de arestas (u, v) com u < v em ordem lexicográfica."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def validar_vertice(self, v: int) -> int:
        if not (0 <= int(v) < self.n):
            raise ErroEntrada(f"Vértice {v} fora do intervalo 0..{self.n - 1}")
        return int(v)

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges())
        return h

    def __eq__(self, outro: object) -> bool:
        return isinstance(outro, Graph) and self.n == outro.n and self.adjacency == outro.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, rotulo={self.rotulo!r})"


class DiGraph:
    """
    Grafo direcionado produzido por build_g_in.

    Nas dinâmicas, o vizinho de w é o vizinho de entrada: as cores
    disponíveis para w são determinadas apenas pelos arcos (u, w).
    """

    def __init__(self, n: int, arcos: Iterable[Aresta], rotulo: str = ""):
        saida: List[Set[int]] = [set() for _ in range(n)]
        entrada: List[Set[int]] = [set() for _ in range(n)]
        for u, v in arcos:
            saida[u].add(v)
            entrada[v].add(u)
        self.n = n
        self.rotulo = rotulo
        self.out_adjacency: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in saida)
        self.in_adjacency: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in entrada)

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.in_adjacency), default=0)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.in_adjacency[v]

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_adjacency[u]

    def arcs(self) -> List[Aresta]:
        return [(u, v) for u in range(self.n) for v in self.out_adjacency[u]]

    def validar_vertice(self, v: int) -> int:
        if not (0 <= int(v) < self.n):
            raise ErroEntrada(f"Vértice {v} fora do intervalo 0..{self.n - 1}")
        return int(v)

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, arcos={len(self.arcs())})"


# ---------------------------------------------------------------------------
# Bolas, esferas e distâncias
# ---------------------------------------------------------------------------

def _como_conjunto(g: Graph, sementes: Sementes) -> Set[int]:
    if isinstance(sementes, (int, np.integer)):
        sementes = [sementes]
    return {g.validar_vertice(v) for v in sementes}


def distancias(g: Graph, sementes: Sementes, r: int) -> Dict[int, int]:
    """
    Distâncias em saltos até o conjunto de sementes, truncadas no raio r.

    Args:
        g: Grafo
        sementes: Vértice ou conjunto de vértices
        r: Raio máximo (inclusivo)

    Returns:
        Dicionário vértice -> distância, apenas para vértices a distância <= r
    """
    if r < 0:
        raise ErroEntrada(f"Raio negativo: {r}")
    origem = _como_conjunto(g, sementes)
    dist = {v: 0 for v in origem}
    fronteira = sorted(origem)
    for nivel in range(1, r + 1):
        proxima = []
        for u in fronteira:
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = nivel
                    proxima.append(w)
        if not proxima:
            break
        fronteira = proxima
    return dist


def ball(g: Graph, seeds: Sementes, r: int) -> FrozenSet[int]:
    """
    Bola B_r(seeds): vértices a distância <= r de alguma semente.

    Raises:
        ErroEntrada: Se alguma semente estiver fora do intervalo ou r < 0
    """
    return frozenset(distancias(g, seeds, r))


def sphere(g: Graph, seeds: Sementes, r: int) -> FrozenSet[int]:
    """Esfera S_r = B_r ∖ B_{r-1}."""
    return frozenset(v for v, d in distancias(g, seeds, r).items() if d == r)


def neighborhood(g: Graph, seeds: Sementes, r: int = 1) -> FrozenSet[int]:
    """Vizinhança N^r(S) = B_r(S) ∖ S."""
    return frozenset(v for v, d in distancias(g, seeds, r).items() if d > 0)


# ---------------------------------------------------------------------------
# Cintura e aciclicidade
# ---------------------------------------------------------------------------

def girth(g: Graph) -> Union[int, float]:
    """
    Comprimento do menor ciclo, ou math.inf para florestas.

    Busca em largura a partir de cada vértice, com corte quando nenhum ciclo
    menor que o melhor encontrado ainda é possível.
    """
    melhor: Union[int, float] = math.inf
    adj = g.adjacency
    for raiz in range(g.n):
        prof = {raiz: 0}
        pai = {raiz: -1}
        fila = deque([raiz])
        while fila:
            u = fila.popleft()
            if 2 * prof[u] >= melhor:
                break
            for w in adj[u]:
                if w not in prof:
                    prof[w] = prof[u] + 1
                    pai[w] = u
                    fila.append(w)
                elif w != pai[u]:
                    melhor = min(melhor, prof[u] + prof[w] + 1)
    return melhor


class _UniaoBusca:
    """Union-find com compressão de caminho, indexado por vértice."""

    def __init__(self):
        self.pai: Dict[int, int] = {}

    def raiz(self, v: int) -> int:
        self.pai.setdefault(v, v)
        while self.pai[v] != v:
            self.pai[v] = self.pai[self.pai[v]]
            v = self.pai[v]
        return v

    def unir(self, a: int, b: int) -> bool:
        ra, rb = self.raiz(a), self.raiz(b)
        if ra == rb:
            return False
        self.pai[ra] = rb
        return True


def induced_is_acyclic(g: Graph, s: Iterable[int]) -> bool:
    """
    Verifica se o subgrafo induzido G[s] é uma floresta.

    Args:
        g: Grafo
        s: Conjunto de vértices

    Returns:
        True se G[s] não contém ciclos
    """
    conjunto = _como_conjunto(g, s)
    uf = _UniaoBusca()
    for u in conjunto:
        for w in g.adjacency[u]:
            if u < w and w in conjunto and not uf.unir(u, w):
                return False
    return True


def _excursoes(g: Graph, s: Set[int]):
    """Caminhos a-x1-...-b com 1 a 3 vértices internos fora de s e extremos em s."""
    adj = g.adjacency
    for a in sorted(s):
        for x1 in adj[a]:
            if x1 in s:
                continue
            for b in adj[x1]:
                if b in s and b != a:
                    yield a, b, (x1,)
            for x2 in adj[x1]:
                if x2 in s:
                    continue
                for b in adj[x2]:
                    if b in s:
                        yield a, b, (x1, x2)
                for x3 in adj[x2]:
                    if x3 in s or x3 == x1:
                        continue
                    for b in adj[x3]:
                        if b in s:
                            yield a, b, (x1, x2, x3)


def completion_is_acyclic(g: Graph, s: Iterable[int]) -> bool:
    """
    Verifica se G[s ∪ {v1, v2, v3}] é acíclico para quaisquer três vértices.

    Um ciclo que use no máximo três vértices fora de s e toque s se decompõe
    em excursões (caminhos com 1 a 3 vértices internos fora de s entre
    vértices de s). O teste procura excursões que fechem um ciclo sozinhas
    (extremos na mesma componente de G[s]) ou combinadas entre componentes.
    Ciclos inteiramente fora de s (triângulos) não são considerados.
    """
    conjunto = _como_conjunto(g, s)
    if not induced_is_acyclic(g, conjunto):
        return False
    if not conjunto:
        return True

    uf = _UniaoBusca()
    for u in conjunto:
        uf.raiz(u)
        for w in g.adjacency[u]:
            if w in conjunto:
                uf.unir(u, w)

    por_par: Dict[FrozenSet[int], List[FrozenSet[int]]] = {}
    simples: Dict[FrozenSet[int], Set[int]] = {}
    for a, b, interior in _excursoes(g, conjunto):
        ca, cb = uf.raiz(a), uf.raiz(b)
        if ca == cb:
            return False
        par = frozenset((ca, cb))
        interno = frozenset(interior)
        for outro in por_par.get(par, []):
            if not (outro & interno) and len(outro) + len(interno) <= 3:
                return False
        por_par.setdefault(par, []).append(interno)
        if len(interior) == 1:
            simples.setdefault(par, set()).add(interior[0])

    # três excursões de um vértice formando um triângulo entre componentes
    componentes = sorted({c for par in simples for c in par})
    for i, c1 in enumerate(componentes):
        for j in range(i + 1, len(componentes)):
            c2 = componentes[j]
            a12 = simples.get(frozenset((c1, c2)))
            if not a12:
                continue
            for c3 in componentes[j + 1:]:
                a23 = simples.get(frozenset((c2, c3)))
                a13 = simples.get(frozenset((c1, c3)))
                if not a23 or not a13:
                    continue
                for x in a12:
                    for y in a23:
                        if y == x:
                            continue
                        if any(z != x and z != y for z in a13):
                            return False
    return True


# ---------------------------------------------------------------------------
# Grafo direcionado G_in(v, 3)
# ---------------------------------------------------------------------------

def build_g_in(g: Graph, v: int, raio: int = 3) -> DiGraph:
    """
    Constrói G_in(v, raio), orientando para o centro as arestas da bola.

    Uma aresta {x, y} com ambos os extremos em B_raio(v) e d(x,v) > d(y,v)
    vira o arco (x, y); todas as demais arestas viram o par de arcos.

    Args:
        g: Grafo não direcionado
        v: Centro
        raio: Raio da bola orientada (3 na construção usual)

    Returns:
        DiGraph com os mesmos vértices
    """
    v = g.validar_vertice(v)
    dist = distancias(g, v, raio)
    arcos = []
    for x, y in g.edges():
        dx, dy = dist.get(x), dist.get(y)
        if dx is not None and dy is not None and dx != dy:
            arcos.append((x, y) if dx > dy else (y, x))
        else:
            arcos.append((x, y))
            arcos.append((y, x))
    return DiGraph(g.n, arcos, rotulo=f"G_in({v},{raio}) de {g.rotulo}")


# ---------------------------------------------------------------------------
# Geradores
# ---------------------------------------------------------------------------

def _gerador(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _regular_por_pareamento(n: int, d: int, rng: np.random.Generator,
                            orcamento: int) -> Set[Aresta]:
    """
    Grafo d-regular aleatório pelo modelo de pareamento de pontas.

    As pontas que formariam laço ou aresta repetida voltam para a próxima
    rodada de pareamento; a tentativa é descartada quando não há mais pares
    possíveis.
    """

    def _ha_par_possivel(arestas, pendentes):
        if not pendentes:
            return True
        for s1 in pendentes:
            for s2 in pendentes:
                if s1 == s2:
                    break
                if (min(s1, s2), max(s1, s2)) not in arestas:
                    return True
        return False

    def _tentar():
        arestas: Set[Aresta] = set()
        pontas = list(range(n)) * d
        while pontas:
            pendentes: Dict[int, int] = {}
            rng.shuffle(pontas)
            iterador = iter(pontas)
            for s1, s2 in zip(iterador, iterador):
                s1, s2 = min(s1, s2), max(s1, s2)
                if s1 != s2 and (s1, s2) not in arestas:
                    arestas.add((s1, s2))
                else:
                    pendentes[s1] = pendentes.get(s1, 0) + 1
                    pendentes[s2] = pendentes.get(s2, 0) + 1
            if not _ha_par_possivel(arestas, pendentes):
                return None
            pontas = [v for v, qtd in sorted(pendentes.items()) for _ in range(qtd)]
        return arestas

    for _ in range(orcamento):
        arestas = _tentar()
        if arestas is not None:
            return arestas
    raise ErroGeracaoGrafo(f"Pareamento {d}-regular com n={n} falhou", orcamento)


def _bola_sem_aresta(adj: List[Set[int]], raiz: int, raio: int, proibida: Aresta) -> Set[int]:
    a, b = proibida
    vistos = {raiz}
    fronteira = [raiz]
    for _ in range(raio):
        proxima = []
        for u in fronteira:
            for w in adj[u]:
                if w in vistos or (u == a and w == b) or (u == b and w == a):
                    continue
                vistos.add(w)
                proxima.append(w)
        fronteira = proxima
    return vistos


def _aresta_em_ciclo_curto(adj: List[Set[int]], u: int, v: int, g_min: int) -> bool:
    # ciclo pela aresta uv tem comprimento d_{G-uv}(u, v) + 1
    limite = g_min - 2
    r1 = limite // 2
    r2 = limite - r1
    return bool(_bola_sem_aresta(adj, u, r1, (u, v)) & _bola_sem_aresta(adj, v, r2, (u, v)))


def _arestas_em_ciclos_curtos(adj: List[Set[int]], g_min: int) -> List[Aresta]:
    h = (g_min - 1) // 2
    ruins: Set[Aresta] = set()
    for raiz in range(len(adj)):
        prof = {raiz: 0}
        pai = {raiz: -1}
        fila = deque([raiz])
        while fila:
            u = fila.popleft()
            for w in adj[u]:
                if w not in prof:
                    if prof[u] < h:
                        prof[w] = prof[u] + 1
                        pai[w] = u
                        fila.append(w)
                elif w != pai[u] and prof[u] + prof[w] + 1 < g_min:
                    ruins.add((min(u, w), max(u, w)))
    return sorted(ruins)


def _regular_com_cintura(n: int, d: int, g_min: int, rng: np.random.Generator,
                         orcamento: int, estrito: bool) -> Graph:
    if (n * d) % 2 != 0:
        raise ErroEntrada(f"n·Δ deve ser par (n={n}, Δ={d})")
    if not 0 <= d < n:
        raise ErroEntrada(f"É necessário 0 <= Δ < n (n={n}, Δ={d})")

    arestas = _regular_por_pareamento(n, d, rng, orcamento)
    adj: List[Set[int]] = [set() for _ in range(n)]
    for u, v in arestas:
        adj[u].add(v)
        adj[v].add(u)

    lista = sorted(arestas)
    posicao = {e: i for i, e in enumerate(lista)}
    pendentes = deque(_arestas_em_ciclos_curtos(adj, g_min)) if g_min > 3 else deque()
    logger.debug("Pareamento concluído: %d arestas em ciclos curtos", len(pendentes))

    def _remover(e):
        i = posicao.pop(e)
        ultima = lista.pop()
        if i < len(lista):
            lista[i] = ultima
            posicao[ultima] = i

    def _inserir(e):
        posicao[e] = len(lista)
        lista.append(e)

    tentativas = 0
    while pendentes:
        a, b = pendentes.popleft()
        if (a, b) not in posicao or not _aresta_em_ciclo_curto(adj, a, b, g_min):
            continue
        if tentativas >= orcamento:
            pendentes.appendleft((a, b))
            break
        tentativas += 1

        c, e = lista[int(rng.integers(len(lista)))]
        if rng.random() < 0.5:
            c, e = e, c
        if len({a, b, c, e}) < 4 or c in adj[a] or e in adj[b]:
            pendentes.append((a, b))
            continue

        # troca ab, ce -> ac, be
        for x, y in ((a, b), (c, e)):
            adj[x].discard(y)
            adj[y].discard(x)
            _remover((min(x, y), max(x, y)))
        for x, y in ((a, c), (b, e)):
            adj[x].add(y)
            adj[y].add(x)
            _inserir((min(x, y), max(x, y)))

        if _aresta_em_ciclo_curto(adj, a, c, g_min) or _aresta_em_ciclo_curto(adj, b, e, g_min):
            for x, y in ((a, c), (b, e)):
                adj[x].discard(y)
                adj[y].discard(x)
                _remover((min(x, y), max(x, y)))
            for x, y in ((a, b), (c, e)):
                adj[x].add(y)
                adj[y].add(x)
                _inserir((min(x, y), max(x, y)))
            pendentes.append((a, b))

    g = Graph(n, sorted(posicao), rotulo=f"regular(n={n},Δ={d},g>={g_min})")
    alcancada = girth(g)
    g._anotar(girth=alcancada, g_min=g_min, tentativas=tentativas)
    if alcancada < g_min:
        if estrito:
            raise ErroGeracaoGrafo(
                f"Cintura {g_min} não alcançada para n={n}, Δ={d} (obtida {alcancada})",
                orcamento,
            )
        logger.warning("Cintura %s não alcançada para n=%d, Δ=%d; obtida %s",
                       g_min, n, d, alcancada)
    logger.info("Grafo regular gerado: n=%d, Δ=%d, cintura=%s, tentativas=%d",
                n, d, alcancada, tentativas)
    return g


def gen_graph(kind: str, params: Optional[Dict] = None, seed=None) -> Graph:
    """
    Gera um grafo de forma determinística a partir da semente.

    Args:
        kind: 'cycle', 'path', 'star', 'random_tree', 'random_regular_girth'
            ou 'from_edge_list'
        params: Parâmetros do tipo ('n', 'delta', 'g_min', 'orcamento',
            'estrito', 'arestas', 'caminho')
        seed: Semente inteira ou numpy Generator

    Returns:
        Grafo gerado, com a cintura obtida em g.metadados['girth']

    Raises:
        ErroEntrada: Se o tipo ou os parâmetros forem inválidos
        ErroGeracaoGrafo: Se a cintura pedida não for alcançada no orçamento
    """
    params = dict(params or {})
    rng = _gerador(seed)

    if kind == "cycle":
        n = int(params.get("n", 0))
        if n < 3:
            raise ErroEntrada(f"Ciclo exige n >= 3 (recebido {n})")
        g = Graph(n, [(i, (i + 1) % n) for i in range(n)], rotulo=f"cycle:{n}")
    elif kind == "path":
        n = int(params.get("n", 0))
        if n < 1:
            raise ErroEntrada(f"Caminho exige n >= 1 (recebido {n})")
        g = Graph(n, [(i, i + 1) for i in range(n - 1)], rotulo=f"path:{n}")
    elif kind == "star":
        d = int(params.get("delta", params.get("n", 0)))
        if d < 0:
            raise ErroEntrada(f"Estrela exige Δ >= 0 (recebido {d})")
        g = Graph(d + 1, [(0, i) for i in range(1, d + 1)], rotulo=f"star:{d}")
    elif kind == "random_tree":
        n = int(params.get("n", 0))
        if n < 1:
            raise ErroEntrada(f"Árvore exige n >= 1 (recebido {n})")
        if n == 1:
            arestas = []
        elif n == 2:
            arestas = [(0, 1)]
        else:
            prufer = [int(x) for x in rng.integers(0, n, size=n - 2)]
            arestas = list(nx.from_prufer_sequence(prufer).edges())
        g = Graph(n, arestas, rotulo=f"tree:{n}")
    elif kind == "random_regular_girth":
        try:
            n, d, g_min = int(params["n"]), int(params["delta"]), int(params["g_min"])
        except KeyError as e:
            raise ErroEntrada(f"Parâmetro obrigatório ausente para random_regular_girth: {e}")
        g = _regular_com_cintura(n, d, g_min, rng,
                                 int(params.get("orcamento", ORCAMENTO_PADRAO)),
                                 bool(params.get("estrito", True)))
        return g
    elif kind == "from_edge_list":
        if "caminho" in params:
            return read_edge_list(params["caminho"])
        if "n" not in params:
            raise ErroEntrada("from_edge_list exige 'n' e 'arestas' ou 'caminho'")
        g = Graph(int(params["n"]), params.get("arestas", ()), rotulo="from_edge_list")
    else:
        raise ErroEntrada(f"Tipo de grafo '{kind}' não suportado")

    g._anotar(girth=girth(g))
    return g


# ---------------------------------------------------------------------------
# Entrada e saída
# ---------------------------------------------------------------------------

def write_edge_list(g: Graph, caminho: str) -> str:
    """
    Salva o grafo no formato texto "n m" seguido de m linhas "u v".

    Returns:
        Caminho do arquivo salvo
    """
    os.makedirs(os.path.dirname(os.path.abspath(caminho)), exist_ok=True)
    arestas = g.edges()
    with open(caminho, "w", encoding="utf-8") as f:
        f.write(f"{g.n} {len(arestas)}\n")
        for u, v in arestas:
            f.write(f"{u} {v}\n")
    logger.info("Grafo salvo em: %s", caminho)
    return caminho


def read_edge_list(caminho: str) -> Graph:
    """
    Lê um grafo no formato "n m" + m linhas "u v".

    Raises:
        ErroEntrada: Se o arquivo estiver malformado
    """
    with open(caminho, encoding="utf-8") as f:
        linhas = [linha.split() for linha in f if linha.strip()]
    if not linhas or len(linhas[0]) != 2:
        raise ErroEntrada(f"Cabeçalho 'n m' ausente em {caminho}")
    try:
        n, m = int(linhas[0][0]), int(linhas[0][1])
        arestas = [(int(u), int(v)) for u, v in linhas[1:]]
    except ValueError as e:
        raise ErroEntrada(f"Lista de arestas malformada em {caminho}: {e}")
    if len(arestas) != m:
        raise ErroEntrada(f"Esperadas {m} arestas em {caminho}, encontradas {len(arestas)}")
    rotulo = os.path.basename(caminho)
    g = Graph(n, arestas, rotulo=rotulo)
    g._anotar(girth=girth(g))
    return g
