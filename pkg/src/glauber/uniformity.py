"""
Estatísticas de uniformidade local de rotulações.

Contagem de cores disponíveis, conjuntos i-vezes-bloqueados, somas
ponderadas de vizinhos desbloqueados, cargas de cor em B_2(v), o evento de
uniformidade local ao longo de uma trajetória, a condição C-leve e o campo
de viés.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.stats import poisson

from .dynamics import (CTResult, Labeling, Trajectory, UpdateSequence, available_colors,
                       evolve)
from .erros import ErroEntrada
from .graphlib import Graph, ball

logger = logging.getLogger(__name__)

CONDICAO_DISPONIVEIS = "disponiveis"
CONDICAO_SOMA_PONDERADA = "soma_ponderada"
CONDICAO_CARGA = "carga_b2"
CONDICAO_BLOQUEIO_DUPLO = "bloqueio_duplo"

FATOR_CARGA_PADRAO = 400


@dataclass
class CheckLimits:
    """
    Limites de tratabilidade das verificações de uniformidade.

    Attributes:
        i_max: Maior multiplicidade de bloqueio avaliada
        pair_budget: Número de pares de cores sorteados quando nenhum par é dado
        raio: Raio R da bola verificada (None usa o padrão do chamador)
        exaustivo: Avalia todos os pares de cores
        cores: Par fixo de cores (por exemplo as duas cores em disputa)
        seed: Semente do sorteio de pares
        fator_carga: Constante da carga máxima por cor em B_2(v), em unidades de Δ
    """

    i_max: int = 3
    pair_budget: int = 4
    raio: Optional[int] = None
    exaustivo: bool = False
    cores: Optional[Tuple[int, int]] = None
    seed: int = 0
    fator_carga: float = FATOR_CARGA_PADRAO

    def __post_init__(self):
        if self.i_max < 0:
            raise ErroEntrada(f"i_max deve ser >= 0, recebido {self.i_max}")
        if self.pair_budget < 1:
            raise ErroEntrada(f"pair_budget deve ser >= 1, recebido {self.pair_budget}")
        if self.raio is not None and self.raio < 0:
            raise ErroEntrada(f"Raio negativo: {self.raio}")

    def pares(self, k: int) -> List[Tuple[int, int]]:
        if self.cores is not None:
            return [tuple(sorted(self.cores))]
        todos = list(combinations(range(1, k + 1), 2))
        if self.exaustivo or len(todos) <= self.pair_budget:
            return todos
        rng = np.random.default_rng(self.seed)
        escolhidos = rng.choice(len(todos), size=self.pair_budget, replace=False)
        return [todos[i] for i in sorted(escolhidos)]


@dataclass
class UniformityReport:
    """Registros por vértice e condição de uma verificação de ε-uniformidade."""

    z_star: int
    raio: int
    eps: float
    limites: CheckLimits
    registros: List[Dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.registros if r["ok"] is not None)

    @property
    def falhas(self) -> List[Dict]:
        return [r for r in self.registros if r["ok"] is False]

    def fracao_ok(self, condicao: str) -> float:
        """Fração de vértices que passam em uma condição."""
        linhas = [r for r in self.registros if r["condicao"] == condicao and r["ok"] is not None]
        if not linhas:
            return 1.0
        return sum(1 for r in linhas if r["ok"]) / len(linhas)

    def to_frame(self) -> pd.DataFrame:
        colunas = ["v", "condicao", "cor", "i1", "i2", "medido", "alvo", "desvio", "limite", "ok"]
        return pd.DataFrame(self.registros, columns=colunas)

    def to_dict(self) -> Dict:
        return {
            "z_star": self.z_star,
            "raio": self.raio,
            "eps": self.eps,
            "limites": asdict(self.limites),
            "ok": self.ok,
            "falhas": len(self.falhas),
            "fracao_ok": {
                c: self.fracao_ok(c)
                for c in (CONDICAO_DISPONIVEIS, CONDICAO_SOMA_PONDERADA, CONDICAO_CARGA)
            },
        }


def _registro(v, condicao, medido, alvo, limite, ok, cor=None, i1=None, i2=None) -> Dict:
    return {
        "v": v, "condicao": condicao, "cor": cor, "i1": i1, "i2": i2,
        "medido": float(medido), "alvo": float(alvo),
        "desvio": abs(float(medido) - float(alvo)),
        "limite": None if limite is None else float(limite), "ok": ok,
    }


def blocked_set(g: Graph, x: Labeling, v: int, S: Iterable[int], c: int, i: int) -> FrozenSet[int]:
    """
    Vértices de S bloqueados exatamente i vezes para c.

    w ∈ S entra quando |(N(w) ∖ {v}) ∩ x⁻¹(c)| = i.

    Raises:
        ErroEntrada: Se S não estiver contido em N(v)
    """
    S = frozenset(S)
    if not S <= g.neighbor_set(v):
        raise ErroEntrada(f"S deve estar contido em N({v})")
    return frozenset(
        w for w in S
        if sum(1 for u in g.neighbors(w) if u != v and x[u] == c) == i
    )


def blocked_intersection_target(g: Graph, v: int, S: Iterable[int], i1: int, i2: int,
                                k: int) -> float:
    """
    Valor esperado de |S_{c1,i1} ∩ S_{c2,i2}| sob bloqueios Poisson independentes:
    Σ_{w∈S} e^{-2d(w)/k} (d(w)/k)^{i1+i2} / (i1! i2!).
    """
    if i1 < 0 or i2 < 0:
        raise ErroEntrada(f"Multiplicidades negativas: i1={i1}, i2={i2}")
    graus = np.array([g.degrees[w] for w in S], dtype=float)
    if graus.size == 0:
        return 0.0
    taxa = graus / k
    return float(np.sum(poisson.pmf(i1, taxa) * poisson.pmf(i2, taxa)))


def weighted_unblocked_sum(g: Graph, x: Labeling, v: int, c: int) -> float:
    """Σ de e^{d(w)/k} sobre os vizinhos w de v para os quais c ∈ A(x, w)."""
    return float(sum(
        math.exp(g.degrees[w] / x.k)
        for w in g.neighbors(v)
        if c in available_colors(g, x, w)
    ))


def _carga_maxima(g: Graph, x: Labeling, v: int) -> int:
    bola = list(ball(g, v, 2))
    return int(np.bincount(x.colors[bola], minlength=x.k + 1).max())


def eps_uniform_at(g: Graph, x: Labeling, z_star: int, R: int, eps: float,
                   limites: Optional[CheckLimits] = None) -> UniformityReport:
    """
    Verifica a ε-uniformidade de x em todos os vértices de B_R(z*).

    Para cada v avalia: ||A(x,v)| − k e^{-d(v)/k}| ≤ εk; a soma ponderada de
    vizinhos desbloqueados a até εΔ de d(v) para cada cor no escopo; e no
    máximo fator_carga·Δ vértices de cada cor em B_2(v). Os desvios dos
    conjuntos duplamente bloqueados entram no relatório apenas como
    informação.

    Args:
        g: Grafo
        x: Rotulação
        z_star: Centro da verificação
        R: Raio
        eps: Tolerância ε
        limites: Escopo de cores e multiplicidades

    Returns:
        UniformityReport
    """
    limites = limites or CheckLimits()
    k = x.k
    delta = g.max_degree
    pares = limites.pares(k) if k >= 2 else []
    cores_escopo = sorted({c for par in pares for c in par})
    relatorio = UniformityReport(z_star, R, eps, limites)

    for v in sorted(ball(g, z_star, R)):
        d = g.degrees[v]
        n_disp = len(available_colors(g, x, v))
        alvo = k * math.exp(-d / k)
        relatorio.registros.append(_registro(
            v, CONDICAO_DISPONIVEIS, n_disp, alvo, eps * k, abs(n_disp - alvo) <= eps * k))

        for c in cores_escopo:
            soma = weighted_unblocked_sum(g, x, v, c)
            relatorio.registros.append(_registro(
                v, CONDICAO_SOMA_PONDERADA, soma, d, eps * delta,
                abs(soma - d) <= eps * delta, cor=c))

        carga = _carga_maxima(g, x, v)
        teto = limites.fator_carga * delta
        relatorio.registros.append(_registro(v, CONDICAO_CARGA, carga, teto, teto, carga <= teto))

        vizinhos = g.neighbors(v)
        for c1, c2 in pares:
            for i1 in range(limites.i_max + 1):
                s1 = blocked_set(g, x, v, vizinhos, c1, i1)
                for i2 in range(limites.i_max + 1):
                    medido = len(s1 & blocked_set(g, x, v, vizinhos, c2, i2))
                    alvo_b = blocked_intersection_target(g, v, vizinhos, i1, i2, k)
                    relatorio.registros.append(_registro(
                        v, CONDICAO_BLOQUEIO_DUPLO, medido, alvo_b, None, None,
                        cor=f"{c1},{c2}", i1=i1, i2=i2))
    return relatorio


def raio_lu(g: Graph) -> int:
    """max(1, ⌊Δ^{1/10}⌋), com correção de arredondamento em potências exatas."""
    delta = g.max_degree
    r = int(math.floor(delta ** 0.1)) if delta > 0 else 0
    while (r + 1) ** 10 <= delta:
        r += 1
    while r > 0 and r ** 10 > delta:
        r -= 1
    return max(1, r)


def lu_event(g: Graph, x0: Labeling, sigma: UpdateSequence, eps: float, z_star: int,
             limites: Optional[CheckLimits] = None,
             traj: Optional[Trajectory] = None) -> Tuple[bool, Optional[Dict]]:
    """
    Verifica se X_t é ε-uniforme em B_R(z*) para todo 0 <= t <= T.

    A verificação só é refeita nos tempos em que uma atualização bem-sucedida
    cai em B_{R+2}(z*), pois fora disso nenhuma das estatísticas muda.

    Returns:
        (veredito, primeira falha {t, v, condicao, ...} ou None)
    """
    limites = limites or CheckLimits()
    R = limites.raio if limites.raio is not None else raio_lu(g)
    traj = traj or evolve(g, x0, sigma)
    zona = ball(g, z_star, R + 2)

    def _avaliar(t: int, x: Labeling) -> Optional[Dict]:
        relatorio = eps_uniform_at(g, x, z_star, R, eps, limites)
        falhas = relatorio.falhas
        if not falhas:
            return None
        return dict(falhas[0], t=t)

    falha = _avaliar(0, x0)
    if falha:
        return False, falha
    cores = x0.tolist()
    for t, (v, c) in enumerate(sigma.steps, start=1):
        if not traj.accepted[t - 1]:
            continue
        cores[v] = c
        if v in zona:
            falha = _avaliar(t, Labeling(cores, x0.k))
            if falha:
                logger.debug("LU falhou em t=%d, v=%d (%s)", t, falha["v"], falha["condicao"])
                return False, falha
    return True, None


def above_suspicion(g: Graph, x: Labeling, v: int, R: int, C: float) -> bool:
    """
    Verifica se todo w ∈ B_R(v) é C-leve.

    w é C-leve quando cada cor aparece no máximo CΔ vezes em N²(w) = B_2(w) ∖ {w}
    e no máximo CΔ/ln Δ vezes em N(w).

    Raises:
        ErroEntrada: Se Δ < 2
    """
    delta = g.max_degree
    if delta < 2:
        raise ErroEntrada(f"C-leveza exige Δ >= 2, recebido Δ={delta}")
    teto_2 = C * delta
    teto_1 = C * delta / math.log(delta)
    for w in ball(g, v, R):
        segunda = [u for u in ball(g, w, 2) if u != w]
        if np.bincount(x.colors[segunda], minlength=x.k + 1).max() > teto_2:
            return False
        primeira = list(g.neighbors(w))
        if primeira and np.bincount(x.colors[primeira], minlength=x.k + 1).max() > teto_1:
            return False
    return True


def bias_field(g: Graph, fonte: Union[Trajectory, CTResult], v: int, c: int,
               T: Union[int, float]) -> float:
    """
    Campo de viés P(U_T, v, c).

    Soma, sobre os vizinhos w de v já recoloridos até T, de
    1{c ∈ A_v(U_{τ⁻}, w)} / |A_v(U_{τ⁻}, w)|, onde τ é a última recoloração
    de w e U_{τ⁻} o estado imediatamente anterior. Para um CTResult, T é um
    tempo contínuo.
    """
    if isinstance(fonte, CTResult):
        passos = fonte.steps_until(T)
        traj = fonte.trajectory
    else:
        passos = int(T)
        traj = fonte
        if not 0 <= passos <= traj.T:
            raise ErroEntrada(f"T={T} fora de 0..{traj.T}")
    total = 0.0
    for w in g.neighbors(v):
        tau = traj.last_success(w, passos)
        if tau == 0:
            continue
        usadas = {traj.color(u, tau - 1) for u in g.neighbors(w) if u != v}
        livres = traj.k - len(usadas)
        if c not in usadas:
            total += 1.0 / livres
    return total
