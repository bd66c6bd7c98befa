"""
Cadeia limitante Z_t e o predicado BC.

Cada Z(v) é guardado como máscara de bits em um int (bit c para a cor c),
o que dá igualdade e pertinência exatas para qualquer k.
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from .dynamics import GrafoQualquer, Labeling, UpdateSequence, hamming
from .erros import ErroEntrada

logger = logging.getLogger(__name__)

P_MAX_PADRAO = 10 ** 5

DISPONIVEL = "A"
BLOQUEADA = "B"
PERIGOSA = "H"

MOTIVO_NENHUM = "none"
MOTIVO_CICLO = "cycle"
MOTIVO_REPROPAGACAO = "repropagation"
MOTIVO_TAMANHO = "size_cap"


def mascara(cores: Iterable[int]) -> int:
    m = 0
    for c in cores:
        m |= 1 << int(c)
    return m


def cores_de_mascara(m: int) -> FrozenSet[int]:
    cores = set()
    c = 0
    while m:
        if m & 1:
            cores.add(c)
        m >>= 1
        c += 1
    return frozenset(cores)


def _tamanho(m: int) -> int:
    return bin(m).count("1")


class BoundingState:
    """
    Estado Z da cadeia limitante e o índice dos vértices com |Z(v)| > 1.
    """

    def __init__(self, zsets: List[int]):
        if any(m == 0 for m in zsets):
            raise ErroEntrada("Z(v) deve ser não vazio para todo v")
        self.zsets = list(zsets)
        self.multiplos: Set[int] = {v for v, m in enumerate(self.zsets) if m & (m - 1)}

    @classmethod
    def inicial(cls, x0: Labeling, y0: Labeling) -> "BoundingState":
        """Z_0(v) = {X_0(v), Y_0(v)}."""
        return cls([(1 << x0[v]) | (1 << y0[v]) for v in range(x0.n)])

    def definir(self, v: int, m: int) -> None:
        self.zsets[v] = m
        if m & (m - 1):
            self.multiplos.add(v)
        else:
            self.multiplos.discard(v)

    def cores(self, v: int) -> FrozenSet[int]:
        return cores_de_mascara(self.zsets[v])

    def contem(self, v: int, c: int) -> bool:
        return bool(self.zsets[v] >> c & 1)

    def tamanho(self, v: int) -> int:
        return _tamanho(self.zsets[v])

    def copia(self) -> "BoundingState":
        return BoundingState(self.zsets)

    def __eq__(self, outro: object) -> bool:
        return isinstance(outro, BoundingState) and self.zsets == outro.zsets

    def __repr__(self) -> str:
        return f"BoundingState(|P_t|={len(self.multiplos)})"


def classify(g: GrafoQualquer, z: BoundingState, v: int, c: int) -> str:
    """
    Classifica a cor c em v como disponível ("A"), bloqueada ("B") ou
    potencialmente perigosa ("H"). Perigosa tem precedência sobre bloqueada.
    """
    bit = 1 << c
    presente = False
    for w in g.neighbors(v):
        if z.zsets[w] & bit:
            if w in z.multiplos:
                return PERIGOSA
            presente = True
    return BLOQUEADA if presente else DISPONIVEL


def _fonte(g: GrafoQualquer, z: BoundingState, v: int) -> Optional[int]:
    """Primeiro vizinho de v em 𝒫 (ordem crescente de id)."""
    candidatos = [w for w in g.neighbors(v) if w in z.multiplos]
    return min(candidatos) if candidatos else None


def bounding_step(g: GrafoQualquer, z: BoundingState, upd: Tuple[int, int],
                  p_atual: Optional[Set[int]] = None) -> BoundingState:
    """
    Aplica uma atualização à cadeia limitante, devolvendo um novo estado.

    Args:
        g: Grafo
        z: Estado Z_{t-1}
        upd: Atualização (v_t, c_t)
        p_atual: Conjunto 𝒫_{t-1}; por padrão, os vértices múltiplos de z

    Returns:
        Estado Z_t
    """
    v, c = int(upd[0]), int(upd[1])
    g.validar_vertice(v)
    novo = z.copia()
    _aplicar(g, novo, v, c, p_atual)
    return novo


def _aplicar(g: GrafoQualquer, z: BoundingState, v: int, c: int,
             p_atual: Optional[Set[int]] = None) -> Tuple[str, Optional[int]]:
    p_atual = z.multiplos if p_atual is None else p_atual
    classe = classify(g, z, v, c)
    fonte = None
    if classe == DISPONIVEL:
        z.definir(v, 1 << c)
    elif classe == PERIGOSA:
        fonte = min(w for w in g.neighbors(v) if w in p_atual)
        if v not in p_atual:
            z.definir(v, z.zsets[fonte] | z.zsets[v])
    return classe, fonte


def _vizinhos_em(g: GrafoQualquer, x: int, conjunto: Set[int]) -> int:
    return sum(1 for w in g.neighbors(x) if w in conjunto)


def _entrada_preserva_arvore(g: GrafoQualquer, uniao: Set[int], v: int) -> bool:
    """
    Verifica se a entrada de v em 𝒫 mantém G[𝒫 ∪ {v1, v2, v3}] acíclico
    para quaisquer três vértices externos, supondo que valia antes.

    Todo ciclo novo passa por v e sai dele por um vértice externo, fechando
    em 𝒫 ∪ {v} após no máximo três vértices externos.
    """
    if uniao and _vizinhos_em(g, v, uniao) != 1:
        return False
    nova = uniao | {v}
    for x1 in g.neighbors(v):
        if x1 in nova:
            continue
        if _vizinhos_em(g, x1, nova) >= 2:
            return False
        for x2 in g.neighbors(x1):
            if x2 in nova:
                continue
            if _vizinhos_em(g, x2, nova) >= 1:
                return False
            for x3 in g.neighbors(x2):
                if x3 in nova or x3 == x1:
                    continue
                if _vizinhos_em(g, x3, nova) >= 1:
                    return False
    return True


@dataclass
class BoundingTrace:
    """
    Registro completo de uma execução da cadeia limitante.

    O estado Z_t de qualquer tempo pode ser reconstruído por estados(), já
    que só a coordenada v_t muda no passo t.
    """

    z0: List[int]
    sequence: UpdateSequence = field(repr=False)
    classes: List[str] = field(repr=False)
    z_novo: List[int] = field(repr=False)
    fontes: List[Optional[int]] = field(repr=False)
    entrada: Dict[int, int]
    pai: Dict[int, Optional[int]]
    uniao: FrozenSet[int]
    bc: bool
    motivo: str
    tempo_falha: Optional[int]
    z_star: int
    p_max: int

    @property
    def T(self) -> int:
        return self.sequence.T

    @property
    def bc_verdict(self) -> bool:
        return self.bc

    @property
    def failure_reason(self) -> str:
        return self.motivo

    def zsize(self, t: int) -> int:
        """|Z_t(v_t)| após o passo t."""
        return _tamanho(self.z_novo[t - 1])

    def classe(self, t: int) -> str:
        return self.classes[t - 1]

    def fonte(self, t: int) -> Optional[int]:
        """Primeiro vizinho de v_t em 𝒫_{t-1} quando o passo t é perigoso."""
        return self.fontes[t - 1]

    def p_ate(self, t: int) -> FrozenSet[int]:
        """𝒫_{≤t}."""
        return frozenset(v for v, s in self.entrada.items() if s <= t)

    def estados(self) -> Iterator[Tuple[int, BoundingState]]:
        """
        Reproduz Z_0, Z_1, ..., Z_T.

        O estado entregue é mutável e reutilizado entre iterações; use
        copia() para guardá-lo.
        """
        z = BoundingState(self.z0)
        yield 0, z
        for t, (v, m) in enumerate(zip(self.sequence.vertices.tolist(), self.z_novo), start=1):
            z.definir(v, m)
            yield t, z

    def estado_em(self, t: int) -> BoundingState:
        for s, z in self.estados():
            if s == t:
                return z.copia()
        raise ErroEntrada(f"Tempo {t} fora de 0..{self.T}")

    def to_dict(self) -> Dict:
        passos = [
            {"t": t, "v": v, "c": c, "classe": self.classes[t - 1], "zsize": self.zsize(t)}
            for t, (v, c) in enumerate(self.sequence.steps, start=1)
        ]
        return {
            "z_star": self.z_star,
            "bc": self.bc,
            "failure_reason": self.motivo,
            "tempo_falha": self.tempo_falha,
            "p_max": self.p_max,
            "P": sorted(self.uniao),
            "entrada": {str(v): s for v, s in sorted(self.entrada.items())},
            "passos": passos,
        }


def run_bounding_chain(g: GrafoQualquer, x0: Labeling, y0: Labeling, sigma: UpdateSequence,
                       p_max: Optional[int] = None) -> BoundingTrace:
    """
    Executa a cadeia limitante e avalia BC incrementalmente.

    A primeira violação fixa o veredito e o motivo, mas a trajetória de Z é
    sempre completada.

    Args:
        g: Grafo
        x0: Primeira rotulação
        y0: Segunda rotulação, diferindo de x0 em exatamente um vértice
        sigma: Sequência de atualização
        p_max: Teto para |𝒫|; por padrão GLAUBER_P_MAX ou 10⁵

    Returns:
        BoundingTrace

    Raises:
        ErroEntrada: Se x0 e y0 não diferirem em exatamente um vértice
    """
    tamanho, diferentes = hamming(x0, y0)
    if tamanho != 1:
        raise ErroEntrada(f"Rotulações devem diferir em exatamente um vértice (diferem em {tamanho})")
    if p_max is None:
        p_max = int(os.getenv("GLAUBER_P_MAX", P_MAX_PADRAO))
    sigma.validar(g.n, x0.k)
    z_star = next(iter(diferentes))

    z = BoundingState.inicial(x0, y0)
    z0 = list(z.zsets)
    uniao: Set[int] = set()
    entrada: Dict[int, int] = {}
    pai: Dict[int, Optional[int]] = {}
    motivo = MOTIVO_NENHUM
    tempo_falha: Optional[int] = None

    def _falhar(razao: str, t: int):
        nonlocal motivo, tempo_falha
        if motivo == MOTIVO_NENHUM:
            motivo, tempo_falha = razao, t
            logger.debug("BC falhou em t=%d: %s", t, razao)

    def _entrar(v: int, t: int, origem: Optional[int]):
        if not _entrada_preserva_arvore(g, uniao, v):
            _falhar(MOTIVO_CICLO, t)
        uniao.add(v)
        entrada[v] = t
        pai[v] = origem
        if len(uniao) > p_max:
            _falhar(MOTIVO_TAMANHO, t)

    _entrar(z_star, 0, None)

    classes: List[str] = []
    z_novo: List[int] = []
    fontes: List[Optional[int]] = []
    for t, (v, c) in enumerate(zip(sigma.vertices.tolist(), sigma.colors.tolist()), start=1):
        ja_estava = v in uniao
        classe, fonte = _aplicar(g, z, v, c)
        if classe == PERIGOSA:
            if ja_estava:
                _falhar(MOTIVO_REPROPAGACAO, t)
            else:
                _entrar(v, t, fonte)
        classes.append(classe)
        z_novo.append(z.zsets[v])
        fontes.append(fonte)

    bc = motivo == MOTIVO_NENHUM
    logger.debug("Cadeia limitante: |P|=%d, BC=%s, motivo=%s", len(uniao), bc, motivo)
    return BoundingTrace(
        z0=z0,
        sequence=sigma,
        classes=classes,
        z_novo=z_novo,
        fontes=fontes,
        entrada=entrada,
        pai=pai,
        uniao=frozenset(uniao),
        bc=bc,
        motivo=motivo,
        tempo_falha=tempo_falha,
        z_star=z_star,
        p_max=p_max,
    )
