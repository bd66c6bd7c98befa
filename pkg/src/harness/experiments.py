"""
Experimentos sobre a dinâmica de Glauber e o acoplamento não markoviano.

Este módulo contém os roteiros de verificação (bijetividade, involução,
dominação), o teste de estacionariedade, os experimentos de contração, de
acoplamento por blocos e de escala do tempo de mistura, e os relatórios
reprodutíveis que eles produzem.
"""

import logging
import math
import os
import time
from dataclasses import dataclass, field
from datetime import datetime
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.glauber.coupling import (MODO_IDENTIDADE, MODO_JERRUM, MODO_NM, global_coupling,
                                  nm_involution_check)
from src.glauber.dynamics import (Labeling, UpdateSequence, available_colors, evolve,
                                  evolve_batch, greedy_coloring, hamming, hamming_interpolation,
                                  metropolis_step, sample_update_sequence, transition_matrix,
                                  enumerate_proper_colorings)
from src.glauber.erros import ErroEntrada
from src.glauber.graphlib import Graph, ball, gen_graph, girth
from src.glauber.uniformity import (CheckLimits, bias_field, eps_uniform_at, lu_event, raio_lu)
from src.utils.data_processing import (ajustar_inclinacao, digest_relatorio,
                                       intervalo_bootstrap, intervalo_confianca_normal,
                                       salvar_dados, salvar_json)
from src.utils.visualization import (grafico_distancia_blocos, grafico_escala,
                                     grafico_histograma_p)

from .config import ExperimentConfig, parse_grafo

logger = logging.getLogger(__name__)

LIMITE_ESTADOS = 10 ** 6
TETO_D_MAX = 10 ** 9
CINTURA_MIN_NM = 11

_progresso_ativo = True


def configurar_progresso(ativo: bool) -> None:
    """Liga ou desliga as barras de progresso das réplicas."""
    global _progresso_ativo
    _progresso_ativo = ativo


def _progresso(iteravel: Iterable, desc: str, total: Optional[int] = None):
    return tqdm(iteravel, desc=desc, total=total, disable=None if _progresso_ativo else True,
                leave=False)


# ---------------------------------------------------------------------------
# Relatórios
# ---------------------------------------------------------------------------

@dataclass
class ExperimentReport:
    """
    Relatório de um experimento.

    O conteúdo (registros, agregados, eventos, configuração) é reprodutível
    bit a bit a partir de (config, seed); os metadados de execução ficam
    fora do digest.
    """

    nome: str
    config: Dict
    registros: List[Dict] = field(default_factory=list)
    agregados: Dict = field(default_factory=dict)
    eventos: Dict = field(default_factory=dict)
    metadados: Dict = field(default_factory=dict)
    ok: bool = True

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.registros)

    def conteudo(self) -> Dict:
        return {
            "nome": self.nome,
            "config": self.config,
            "ok": self.ok,
            "agregados": self.agregados,
            "eventos": self.eventos,
            "registros": self.registros,
        }

    @property
    def digest(self) -> str:
        return digest_relatorio(self.conteudo())

    def to_dict(self) -> Dict:
        dados = self.conteudo()
        dados["metadados"] = self.metadados
        dados["digest"] = self.digest
        return dados

    def salvar(self, diretorio: Optional[str] = None, formato: Optional[str] = None) -> Dict[str, str]:
        """
        Salva a tabela de registros e o resumo JSON.

        Returns:
            Dicionário com os caminhos gerados
        """
        diretorio = diretorio or self.config.get("saida", "resultados")
        formato = formato or self.config.get("formato", "json")
        caminhos = {"resumo": salvar_json(self.to_dict(), os.path.join(diretorio, f"{self.nome}_resumo.json"))}
        tabela = salvar_dados(self.to_frame(), os.path.join(diretorio, self.nome), formato)
        if tabela:
            caminhos["registros"] = tabela
        return caminhos


def _novo_relatorio(nome: str, cfg: ExperimentConfig) -> Tuple[ExperimentReport, float]:
    relatorio = ExperimentReport(nome, cfg.to_dict())
    relatorio.metadados = {"inicio": datetime.now().isoformat(timespec="seconds"), "rng": "PCG64"}
    return relatorio, time.perf_counter()


def _encerrar(relatorio: ExperimentReport, inicio: float) -> ExperimentReport:
    relatorio.metadados["duracao_s"] = round(time.perf_counter() - inicio, 3)
    logger.info("Experimento %s concluído em %.1fs (ok=%s)", relatorio.nome,
                relatorio.metadados["duracao_s"], relatorio.ok)
    return relatorio


def _fluxos(seed: int, quantidade: int, rotulo: int = 0) -> List[np.random.Generator]:
    """Geradores independentes derivados de (seed, rotulo) por SeedSequence.spawn."""
    raiz = np.random.SeedSequence([seed, rotulo])
    return [np.random.Generator(np.random.PCG64(s)) for s in raiz.spawn(quantidade)]


def _semente(cfg: ExperimentConfig, replica: int) -> Dict:
    return {"rng": "PCG64", "seed": cfg.seed, "replica": replica}


def _media_ic(valores: List[float]) -> Dict[str, float]:
    media, inferior, superior = intervalo_confianca_normal(valores)
    return {"media": media, "ic_inferior": inferior, "ic_superior": superior}


# ---------------------------------------------------------------------------
# Estados iniciais e acoplamentos de um passo
# ---------------------------------------------------------------------------

def estado_inicial(g: Graph, k: int, rng: np.random.Generator, burn_in: int) -> Labeling:
    """Coloração gulosa seguida de burn_in passos da dinâmica."""
    x = greedy_coloring(g, k)
    if burn_in > 0:
        x = evolve(g, x, sample_update_sequence(g.n, k, burn_in, rng)).final
    return x


def par_vizinho(g: Graph, x: Labeling, rng: np.random.Generator) -> Tuple[Labeling, int]:
    """
    Sorteia z* e uma nova cor para ele, preferindo cores que mantêm a
    coloração própria.
    """
    z = int(rng.integers(g.n))
    livres = sorted(available_colors(g, x, z) - {x[z]})
    if not livres:
        livres = [c for c in range(1, x.k + 1) if c != x[z]]
    if not livres:
        raise ErroEntrada("k=1 não admite par de rotulações vizinhas")
    return x.with_color(z, int(livres[rng.integers(len(livres))])), z


def _cor_acoplada(g: Graph, xs: List[int], ys: List[int], diff, v: int, c: int, modo: str) -> int:
    if modo != MODO_JERRUM or v in diff:
        return c
    viz = [w for w in g.neighbors(v) if w in diff]
    if not viz:
        return c
    p = min(viz)
    H = {xs[p], ys[p]}
    if c in H and len(H) == 2:
        return next(iter(H - {c}))
    return c


def passo_acoplado(g: Graph, x: Labeling, y: Labeling, upd: Tuple[int, int],
                   modo: str = MODO_JERRUM) -> Tuple[Labeling, Labeling]:
    """
    Um passo do acoplamento markoviano (identidade ou Jerrum).

    No modo Jerrum, se v é vizinho do conjunto de discordância, o primeiro
    vizinho discordante p define H = {X(p), Y(p)} e a cor proposta a Y é a
    outra cor de H quando c ∈ H.
    """
    _, diff = hamming(x, y)
    v, c = upd
    c_y = _cor_acoplada(g, x.tolist(), y.tolist(), diff, v, c, modo)
    return metropolis_step(g, x, (v, c)), metropolis_step(g, y, (v, c_y))


def exact_drift(g: Graph, x: Labeling, y: Labeling, modo: str = MODO_JERRUM) -> Dict[str, float]:
    """
    Variação esperada exata de |X ⊕ Y| em um passo, enumerando as n·k
    atualizações equiprováveis.

    Também devolve a contagem analítica: movimentos bons (v ∈ D recebendo uma
    cor disponível nas duas cadeias) e o teto de movimentos ruins (duas cores
    por vizinho de D na identidade, uma no Jerrum).
    """
    d0, diff = hamming(x, y)
    total = 0
    bons = ruins = 0
    for v, c in product(range(g.n), range(1, x.k + 1)):
        x1, y1 = passo_acoplado(g, x, y, (v, c), modo)
        delta = hamming(x1, y1)[0] - d0
        total += delta
        bons += delta < 0
        ruins += delta > 0
    fronteira = {w for z in diff for w in g.neighbors(z) if w not in diff}
    por_vizinho = 1 if modo == MODO_JERRUM else 2
    bons_analitico = sum(len(available_colors(g, x, z) & available_colors(g, y, z)) for z in diff)
    ruins_teto = por_vizinho * sum(
        sum(1 for z in g.neighbors(w) if z in diff) for w in fronteira
    )
    m = g.n * x.k
    return {
        "deriva": total / m,
        "bons": bons,
        "ruins": ruins,
        "bons_analitico": bons_analitico,
        "ruins_teto": ruins_teto,
        "deriva_teto": (ruins_teto - bons_analitico) / m,
    }


def _coalescencia(g: Graph, xs: List[int], ys: List[int], k: int, rng: np.random.Generator,
                  limite: int, modo: str = MODO_JERRUM) -> Tuple[int, bool]:
    """Passos até X = Y sob o acoplamento markoviano; (limite, False) se não coalescer."""
    diff = {v for v in range(len(xs)) if xs[v] != ys[v]}
    adj = [g.neighbors(v) for v in range(g.n)]
    t = 0
    lote = 4096
    while t < limite:
        if not diff:
            return t, True
        vs = rng.integers(0, g.n, size=lote)
        cs = rng.integers(1, k + 1, size=lote)
        for v, c in zip(vs.tolist(), cs.tolist()):
            t += 1
            c_y = _cor_acoplada(g, xs, ys, diff, v, c, modo)
            if all(xs[w] != c for w in adj[v]):
                xs[v] = c
            if all(ys[w] != c_y for w in adj[v]):
                ys[v] = c_y
            if xs[v] != ys[v]:
                diff.add(v)
            else:
                diff.discard(v)
            if not diff:
                return t, True
            if t >= limite:
                break
    return limite, not diff


# ---------------------------------------------------------------------------
# Verificação
# ---------------------------------------------------------------------------

def _instancia_exaustiva() -> Tuple[Graph, Labeling, Labeling]:
    g = gen_graph("path", {"n": 4})
    return g, Labeling([1, 2, 1, 2], 3), Labeling([3, 2, 1, 2], 3)


def verificacao_exaustiva(p_max: int, T: int = 3) -> Dict:
    """
    Injetividade e reversão de F sobre todas as (n·k)^T sequências do
    caminho com 4 vértices e k = 3.
    """
    g, x0, y0 = _instancia_exaustiva()
    passos = [(v, c) for v in range(g.n) for c in range(1, x0.k + 1)]
    imagens: Dict[bytes, UpdateSequence] = {}
    colisao = None
    reversao_falhou = None
    violacoes = 0
    total = 0
    for tripla in _progresso(product(passos, repeat=T), "exaustivo", len(passos) ** T):
        sigma = UpdateSequence.from_steps(tripla)
        ida = global_coupling(g, x0, y0, sigma, p_max)
        violacoes += len(ida.violacoes)
        chave = ida.sigma_prime.chave()
        if chave in imagens and colisao is None:
            colisao = {"sigma_1": imagens[chave].steps, "sigma_2": sigma.steps}
        imagens.setdefault(chave, sigma)
        volta = global_coupling(g, y0, x0, ida.sigma_prime, p_max, verificar=False)
        if volta.sigma_prime != sigma and reversao_falhou is None:
            reversao_falhou = {"sigma": sigma.steps, "imagem": ida.sigma_prime.steps}
        total += 1
    return {
        "total": total,
        "imagens_distintas": len(imagens),
        "injetiva": len(imagens) == total,
        "reversao_ok": reversao_falhou is None,
        "violacoes": violacoes,
        "colisao": colisao,
        "contraexemplo_reversao": reversao_falhou,
    }


def verify_suite(cfg: ExperimentConfig) -> ExperimentReport:
    """
    Verifica bijetividade, involução do NM, geometria de Temp e dominação.

    Roda a instância exaustiva e cfg.amostras_sigma sequências sorteadas no
    grafo da configuração. Falhas entram no relatório, com o primeiro
    contraexemplo completo.
    """
    relatorio, inicio = _novo_relatorio("verify", cfg)
    exaustivo = verificacao_exaustiva(cfg.p_max)
    relatorio.agregados["exaustivo"] = exaustivo

    g = cfg.construir_grafo()
    T = cfg.t_cp(g.n)
    burn_in = cfg.burn_in if cfg.burn_in is not None else 10 * g.n
    contraexemplo = None
    contagem = {"reversao": 0, "involucao": 0, "geometria": 0, "violacoes": 0,
                "bc_falso": 0, "nm_aplicados": 0}

    for i, rng in _progresso(enumerate(_fluxos(cfg.seed, cfg.amostras_sigma)), "verify",
                             cfg.amostras_sigma):
        x0 = estado_inicial(g, cfg.k, rng, burn_in)
        y0, z = par_vizinho(g, x0, rng)
        sigma = sample_update_sequence(g.n, cfg.k, T, rng)
        res = global_coupling(g, x0, y0, sigma, cfg.p_max)
        volta = global_coupling(g, y0, x0, res.sigma_prime, cfg.p_max, verificar=False)
        reversao_ok = volta.sigma_prime == sigma
        involucoes = [nm_involution_check(g, x0, y0, sigma, res.contextos[t], cfg.p_max)
                      for t in res.nm_applied]
        involucao_ok = all(r.involucao for r in involucoes)
        geometria_ok = all(r.geometria for r in involucoes)

        contagem["reversao"] += not reversao_ok
        contagem["involucao"] += not involucao_ok
        contagem["geometria"] += not geometria_ok
        contagem["violacoes"] += len(res.violacoes)
        contagem["bc_falso"] += not res.bc_true
        contagem["nm_aplicados"] += len(res.nm_applied)

        falhou = not (reversao_ok and involucao_ok and geometria_ok) or res.violacoes
        if falhou and contraexemplo is None:
            contraexemplo = {"replica": i, "x0": x0.tolist(), "y0": y0.tolist(),
                             "sigma": sigma.steps, "violacoes": res.violacoes[:5]}
            logger.warning("Contraexemplo encontrado na réplica %d", i)
        relatorio.registros.append({
            **_semente(cfg, i), "z_star": z, "bc": res.bc_true,
            "motivo": res.bounding.motivo, "nm": len(res.nm_applied),
            "nm_falhas": len(res.nm_failed), "reversao_ok": reversao_ok,
            "involucao_ok": involucao_ok, "geometria_ok": geometria_ok,
            "violacoes": len(res.violacoes),
        })

    relatorio.agregados["amostrado"] = contagem
    relatorio.agregados["contraexemplo"] = contraexemplo
    relatorio.ok = (exaustivo["injetiva"] and exaustivo["reversao_ok"] and exaustivo["violacoes"] == 0
                    and contraexemplo is None)
    return _encerrar(relatorio, inicio)


# ---------------------------------------------------------------------------
# Estacionariedade
# ---------------------------------------------------------------------------

def _variacao_total_uniforme(indices: np.ndarray, total_estados: int) -> float:
    contagem = np.bincount(indices.astype(np.int64), minlength=total_estados)
    return float(0.5 * np.abs(contagem / indices.size - 1.0 / total_estados).sum())


def stationarity_test(cfg: ExperimentConfig) -> ExperimentReport:
    """
    Distância de variação total entre a distribuição empírica de cfg.cadeias
    cadeias independentes e a uniforme sobre as colorações próprias.

    Raises:
        ErroEntrada: Se não houver colorações próprias ou forem mais de 10⁶
    """
    relatorio, inicio = _novo_relatorio("stationarity", cfg)
    g = cfg.construir_grafo()
    estados = []
    for s in enumerate_proper_colorings(g, cfg.k):
        estados.append(s)
        if len(estados) > LIMITE_ESTADOS:
            raise ErroEntrada(f"Mais de {LIMITE_ESTADOS} colorações próprias; instância grande demais")
    if not estados:
        raise ErroEntrada(f"Não há {cfg.k}-colorações próprias de {g.rotulo}")
    indice = {s: i for i, s in enumerate(estados)}
    omega = len(estados)

    rng_cadeias, rng_ic, rng_ref = _fluxos(cfg.seed, 3, rotulo=1)
    T = cfg.passos_ou(cfg.passos_burn_in(g.n))
    x0 = greedy_coloring(g, cfg.k)
    finais = evolve_batch(g, x0, T, cfg.cadeias, rng_cadeias)
    indices = np.array([indice[tuple(int(c) for c in linha)] for linha in finais])

    tv, inferior, superior = intervalo_bootstrap(
        indices, lambda a: _variacao_total_uniforme(a, omega), reamostras=200, seed=rng_ic)
    referencia = _variacao_total_uniforme(rng_ref.integers(0, omega, size=cfg.cadeias), omega)
    relatorio.agregados = {
        "estados": omega,
        "passos": T,
        "cadeias": cfg.cadeias,
        "tv": tv,
        "tv_ic": [inferior, superior],
        "tv_amostra_uniforme": referencia,
    }
    if omega <= 2000:
        matriz, _ = transition_matrix(g, cfg.k)
        uniforme = np.full(omega, 1.0 / omega)
        relatorio.agregados["desvio_estacionario"] = float(np.abs(uniforme @ matriz - uniforme).max())
        relatorio.agregados["simetrica"] = bool(np.allclose(matriz, matriz.T))
    relatorio.registros = [{"estado": i, "frequencia": int(f)}
                           for i, f in enumerate(np.bincount(indices, minlength=omega)) if f]
    return _encerrar(relatorio, inicio)


# ---------------------------------------------------------------------------
# Contração e acoplamento por blocos
# ---------------------------------------------------------------------------

def contraction_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """
    Compara E[|X ⊕ Y|] após T_cp passos nos braços NM, Jerrum e identidade,
    com a frequência do evento de uniformidade local.

    O braço NM exige cintura >= 11; abaixo disso é omitido e o motivo fica
    em agregados["nm_omitido"].
    """
    relatorio, inicio = _novo_relatorio("contraction", cfg)
    g = cfg.construir_grafo()
    T = cfg.t_cp(g.n)
    burn_in = cfg.passos_burn_in(g.n)
    bracos = (MODO_NM, MODO_JERRUM, MODO_IDENTIDADE)
    cintura = girth(g)
    if cintura < CINTURA_MIN_NM:
        motivo = f"cintura {cintura} < {CINTURA_MIN_NM}"
        logger.warning("Braço NM omitido em %s: %s", g.rotulo, motivo)
        relatorio.agregados["nm_omitido"] = motivo
        bracos = (MODO_JERRUM, MODO_IDENTIDADE)
    derivas = {MODO_JERRUM: [], MODO_IDENTIDADE: []}

    for i, rng in _progresso(enumerate(_fluxos(cfg.seed, cfg.replicas, rotulo=2)), "contraction",
                             cfg.replicas):
        x0 = estado_inicial(g, cfg.k, rng, burn_in)
        y0, z = par_vizinho(g, x0, rng)
        sigma = sample_update_sequence(g.n, cfg.k, T, rng)
        limites = CheckLimits(cores=(x0[z], y0[z]))
        lu, _ = lu_event(g, x0, sigma, cfg.eps, z, limites)
        for modo in derivas:
            derivas[modo].append(exact_drift(g, x0, y0, modo)["deriva"])
        for modo in bracos:
            res = global_coupling(g, x0, y0, sigma, cfg.p_max, modo, verificar=False)
            dist = len(res.disagreement_final)
            relatorio.registros.append({
                **_semente(cfg, i), "braco": modo, "z_star": z, "distancia": dist,
                "lu": lu, "distancia_lu": dist * lu, "bc": res.bc_true,
                "nm": len(res.nm_applied), "nm_falhas": len(res.nm_failed),
            })

    df = relatorio.to_frame()
    for modo in bracos:
        parte = df[df["braco"] == modo]
        relatorio.agregados[modo] = {
            "distancia": _media_ic(parte["distancia"].tolist()),
            "distancia_lu": _media_ic(parte["distancia_lu"].tolist()),
            "nm": float(parte["nm"].mean()),
            "nm_falhas": float(parte["nm_falhas"].mean()),
        }
    relatorio.agregados["frequencia_lu"] = float(df[df["braco"] == bracos[0]]["lu"].mean())
    relatorio.agregados["deriva_um_passo"] = {m: _media_ic(v) for m, v in derivas.items()}
    return _encerrar(relatorio, inicio)


def _d_max(delta: int, c_blk: float) -> Tuple[float, bool]:
    if delta < 2:
        return float(TETO_D_MAX), True
    expoente = 100 * c_blk * math.log(delta)
    if expoente >= math.log(TETO_D_MAX):
        return float(TETO_D_MAX), True
    return math.exp(expoente), False


class _MonitorBloco:
    """
    Eventos ruins de um bloco: D (soma das distâncias acima de D_max),
    E (D* saindo da bola em torno de z*) e H (muitas discordâncias em
    alguma B_2(v)). D* é a união das discordâncias desde o início.
    """

    def __init__(self, g: Graph, z_star: int, d_max: float, raio_e: int, limiar_h: int):
        self.g = g
        self.bola_e = ball(g, z_star, raio_e)
        self.d_max = d_max
        self.limiar_h = limiar_h
        self.d_estrela = set()
        self.soma = 0

    def registrar(self, diff: Iterable[int]) -> Optional[str]:
        diff = set(diff)
        self.soma += len(diff)
        novos = diff - self.d_estrela
        self.d_estrela |= novos
        if self.soma >= self.d_max:
            return "D"
        if novos - self.bola_e:
            return "E"
        for u in novos:
            for v in ball(self.g, u, 2):
                if len(ball(self.g, v, 2) & self.d_estrela) >= self.limiar_h:
                    return "H"
        return None


def _percorrer_bloco(g: Graph, x: Labeling, y: Labeling, sigma_x: UpdateSequence,
                     sigma_y: UpdateSequence, monitor: Optional[_MonitorBloco]) -> Tuple[Labeling, Labeling, Optional[Tuple[int, str]]]:
    traj_x = evolve(g, x, sigma_x)
    traj_y = evolve(g, y, sigma_y)
    evento = None
    if monitor is not None:
        diff = set(hamming(x, y)[1])
        evento_tipo = monitor.registrar(diff)
        if evento_tipo:
            evento = (0, evento_tipo)
        for t in range(1, sigma_x.T + 1):
            if evento:
                break
            for v in {int(sigma_x.vertices[t - 1]), int(sigma_y.vertices[t - 1])}:
                if traj_x.color(v, t) != traj_y.color(v, t):
                    diff.add(v)
                else:
                    diff.discard(v)
            evento_tipo = monitor.registrar(diff)
            if evento_tipo:
                evento = (t, evento_tipo)
    return traj_x.final, traj_y.final, evento


def _acoplar_por_interpolacao(g: Graph, x: Labeling, y: Labeling, sigma: UpdateSequence,
                              p_max: int, modo: str) -> UpdateSequence:
    """Compõe o acoplamento global ao longo da interpolação de Hamming de x a y."""
    caminho = hamming_interpolation(x, y)
    atual = sigma
    for a, b in zip(caminho, caminho[1:]):
        atual = global_coupling(g, a, b, atual, p_max, modo, verificar=False).sigma_prime
    return atual


def block_coupling(cfg: ExperimentConfig) -> ExperimentReport:
    """
    Acoplamento por blocos: bloco 0 de γ·T_blk passos com a identidade e
    blocos seguintes de T_cp passos colados ao longo da interpolação de
    Hamming. No primeiro evento ruim, o braço passa à identidade a partir do
    bloco seguinte.
    """
    relatorio, inicio = _novo_relatorio("block", cfg)
    g = cfg.construir_grafo()
    delta = g.max_degree
    T_cp = cfg.t_cp(g.n)
    T_blk = cfg.t_blk(g.n, delta)
    T_0 = max(1, int(math.ceil(cfg.gamma * T_blk)))
    n_blocos = max(1, int(math.ceil((1 - cfg.gamma) * T_blk / max(T_cp, 1))))
    d_max, limitado = _d_max(delta, cfg.c_blk)
    raio_e = max(1, int(math.floor(delta ** 0.01))) if delta else 1
    limiar_h = max(1, int(math.ceil(delta ** (2 / 3))))
    burn_in = cfg.passos_burn_in(g.n)
    if limitado:
        logger.warning("D_max limitado a %.0e", d_max)
    eventos = {"D": 0, "NU": 0, "E": 0, "H": 0}

    for i, rng in _progresso(enumerate(_fluxos(cfg.seed, cfg.replicas, rotulo=3)), "block",
                             cfg.replicas):
        x0 = estado_inicial(g, cfg.k, rng, burn_in + cfg.t_buffer(g.n))
        y0, z = par_vizinho(g, x0, rng)
        sigma_0 = sample_update_sequence(g.n, cfg.k, T_0, rng)
        sequencias = [sample_update_sequence(g.n, cfg.k, T_cp, rng) for _ in range(n_blocos)]
        limites = CheckLimits(cores=(x0[z], y0[z]))

        for braco in (MODO_NM, MODO_IDENTIDADE):
            x, y, _ = _percorrer_bloco(g, x0, y0, sigma_0, sigma_0, None)
            monitor = _MonitorBloco(g, z, d_max, raio_e, limiar_h)
            identidade = braco == MODO_IDENTIDADE
            evento_registrado = None
            relatorio.registros.append({**_semente(cfg, i), "braco": braco, "bloco": 0,
                                        "distancia": hamming(x, y)[0], "evento": None})
            for b, sigma in enumerate(sequencias, start=1):
                if identidade or hamming(x, y)[0] == 0:
                    sigma_y = sigma
                else:
                    sigma_y = _acoplar_por_interpolacao(g, x, y, sigma, cfg.p_max, MODO_NM)
                x_ini = x
                x, y, evento = _percorrer_bloco(g, x, y, sigma, sigma_y,
                                                monitor if not identidade else None)
                if not identidade and evento is None:
                    lu, _ = lu_event(g, x_ini, sigma, cfg.eps, z, limites)
                    if not lu:
                        evento = (0, "NU")
                if evento and not identidade:
                    identidade = True
                    evento_registrado = {"bloco": b, "t": evento[0], "tipo": evento[1]}
                    eventos[evento[1]] += 1
                    logger.debug("Réplica %d: evento %s no bloco %d, t=%d", i, evento[1], b, evento[0])
                relatorio.registros.append({**_semente(cfg, i), "braco": braco, "bloco": b,
                                            "distancia": hamming(x, y)[0],
                                            "evento": evento_registrado["tipo"] if evento_registrado else None})

    df = relatorio.to_frame()
    resumo = df.groupby(["braco", "bloco"])["distancia"].agg(["mean", "std", "count"]).reset_index()
    relatorio.agregados = {
        "T_cp": T_cp, "T_blk": T_blk, "T_0": T_0, "blocos": n_blocos,
        "d_max": d_max, "d_max_limitado": limitado, "raio_e": raio_e, "limiar_h": limiar_h,
        "distancia_por_bloco": resumo.to_dict(orient="records"),
    }
    relatorio.eventos = {tipo: c / cfg.replicas for tipo, c in eventos.items()}
    if cfg.graficos:
        salvar_dados(resumo, os.path.join(cfg.saida, "block_curva"), cfg.formato)
        grafico_distancia_blocos(df, salvar=os.path.join(cfg.saida, "block_distancia.png"))
    return _encerrar(relatorio, inicio)


# ---------------------------------------------------------------------------
# Escala, crescimento e diagnósticos
# ---------------------------------------------------------------------------

def _familia(descricao: str, n: int) -> str:
    tipo, _, resto = descricao.partition(":")
    if tipo in ("cycle", "path", "tree"):
        return f"{tipo}:{n}"
    if tipo == "regular":
        _, d, g_min = resto.split(":")
        return f"regular:{n}:{d}:{g_min}"
    raise ErroEntrada(f"Campo 'grafo' inválido para estudo de escala: {descricao!r}")


def mixing_scaling(cfg: ExperimentConfig) -> ExperimentReport:
    """
    Tempo de coalescência do acoplamento de Jerrum por tamanho n e ajuste da
    inclinação de log T_coal contra log(n log n).
    """
    relatorio, inicio = _novo_relatorio("scaling", cfg)
    medias = []
    for j, n in enumerate(cfg.tamanhos):
        g = parse_grafo(_familia(cfg.grafo, n), cfg.seed)
        rng_burn, *rngs = _fluxos(cfg.seed, cfg.replicas + 1, rotulo=100 + j)
        finais = evolve_batch(g, greedy_coloring(g, cfg.k), cfg.passos_burn_in(g.n),
                              cfg.replicas, rng_burn)
        limite = cfg.passos_ou(int(200 * g.n * math.log(max(g.n, 2))))
        tempos = []
        for i, rng in _progresso(enumerate(rngs), f"scaling n={n}", cfg.replicas):
            x0 = Labeling(finais[i], cfg.k)
            y0, z = par_vizinho(g, x0, rng)
            tempo, coalesceu = _coalescencia(g, x0.tolist(), y0.tolist(), cfg.k, rng, limite)
            tempos.append(tempo)
            relatorio.registros.append({**_semente(cfg, i), "n": n, "passos": tempo,
                                        "coalesceu": coalesceu})
        medias.append(float(np.mean(tempos)))

    escala = [n * math.log(n) for n in cfg.tamanhos]
    relatorio.agregados["medias"] = dict(zip([str(n) for n in cfg.tamanhos], medias))
    if len(cfg.tamanhos) >= 3:
        ajuste = ajustar_inclinacao(escala, medias, log=True)
        relatorio.agregados["ajuste"] = ajuste
        relatorio.ok = 0.8 <= ajuste["inclinacao"] <= 1.3
        if cfg.graficos:
            grafico_escala(escala, medias, ajuste["inclinacao"], ajuste["intercepto"],
                           salvar=os.path.join(cfg.saida, "scaling.png"))
    return _encerrar(relatorio, inicio)


def identity_growth(cfg: ExperimentConfig) -> ExperimentReport:
    """E|X_T ⊕ Y_T| sob a identidade para T ∈ {n, 3n}, comparado a e^{T/n}."""
    relatorio, inicio = _novo_relatorio("identity", cfg)
    g = cfg.construir_grafo()
    rng_burn, *rngs = _fluxos(cfg.seed, cfg.replicas + 1, rotulo=4)
    finais = evolve_batch(g, greedy_coloring(g, cfg.k), cfg.passos_burn_in(g.n), cfg.replicas, rng_burn)
    horizontes = (g.n, 3 * g.n)
    for i, rng in _progresso(enumerate(rngs), "identity", cfg.replicas):
        x0 = Labeling(finais[i], cfg.k)
        y0, z = par_vizinho(g, x0, rng)
        sigma = sample_update_sequence(g.n, cfg.k, max(horizontes), rng)
        traj_x, traj_y = evolve(g, x0, sigma), evolve(g, y0, sigma)
        for T in horizontes:
            dist = sum(1 for v in range(g.n) if traj_x.color(v, T) != traj_y.color(v, T))
            relatorio.registros.append({**_semente(cfg, i), "T": T, "distancia": dist})
    df = relatorio.to_frame()
    for T in horizontes:
        estat = _media_ic(df[df["T"] == T]["distancia"].tolist())
        estat["cota"] = math.exp(T / g.n)
        estat["dentro"] = estat["ic_inferior"] <= estat["cota"]
        relatorio.agregados[str(T)] = estat
    relatorio.ok = all(relatorio.agregados[str(T)]["dentro"] for T in horizontes)
    return _encerrar(relatorio, inicio)


def bounding_diagnostics(cfg: ExperimentConfig) -> ExperimentReport:
    """
    Frequência de falha de BC por motivo, cauda de |𝒫|, volume temporário
    por aplicação do NM, entradas no caso 3a e divergências de (p, H).
    """
    relatorio, inicio = _novo_relatorio("diagnostics", cfg)
    g = cfg.construir_grafo()
    T = cfg.t_cp(g.n)
    burn_in = cfg.passos_burn_in(g.n)
    for i, rng in _progresso(enumerate(_fluxos(cfg.seed, cfg.replicas, rotulo=5)), "diagnostics",
                             cfg.replicas):
        x0 = estado_inicial(g, cfg.k, rng, burn_in)
        y0, z = par_vizinho(g, x0, rng)
        sigma = sample_update_sequence(g.n, cfg.k, T, rng)
        res = global_coupling(g, x0, y0, sigma, cfg.p_max, verificar=False)
        temp = [len(res.temp_sets[t]) for t in res.nm_applied]
        relatorio.registros.append({
            **_semente(cfg, i), "motivo": res.bounding.motivo, "tamanho_p": len(res.bounding.uniao),
            "nm": len(res.nm_applied), "nm_falhas": len(res.nm_failed),
            "temp_total": int(sum(temp)), "temp_medio": float(np.mean(temp)) if temp else 0.0,
            "entradas_3a": res.entradas_3a, "divergencias": len(res.divergencias),
        })
    df = relatorio.to_frame()
    relatorio.agregados = {
        "motivos": df["motivo"].value_counts(normalize=True).to_dict(),
        "quantis_p": {str(q): float(df["tamanho_p"].quantile(q)) for q in (0.5, 0.9, 0.99, 1.0)},
        "temp_medio": float(df["temp_medio"].mean()),
        "entradas_3a": int(df["entradas_3a"].sum()),
        "divergencias": int(df["divergencias"].sum()),
    }
    if cfg.graficos:
        grafico_histograma_p(df["tamanho_p"].tolist(), salvar=os.path.join(cfg.saida, "tamanho_p.png"))
    return _encerrar(relatorio, inicio)


def uniformity_audit(cfg: ExperimentConfig) -> ExperimentReport:
    """
    Após o aquecimento T_0 = 20·n·ln Δ, mede em cada ponto de verificação a
    fração de vértices com |A| a até εk de k·e^{-d/k} e confere a identidade
    Σ_c P(X_t, v, c) = d(v) nos vértices com todos os vizinhos recoloridos.
    """
    relatorio, inicio = _novo_relatorio("uniformity", cfg)
    g = cfg.construir_grafo()
    rng, rng_amostra = _fluxos(cfg.seed, 2, rotulo=6)
    T_0 = cfg.passos_ou(int(math.ceil(20 * g.n * math.log(max(g.max_degree, 2)))))
    tempos = [T_0 + j * g.n for j in range(cfg.checkpoints)]
    sigma = sample_update_sequence(g.n, cfg.k, tempos[-1], rng)
    traj = evolve(g, greedy_coloring(g, cfg.k), sigma, checkpoints=tempos)
    graus = np.array(g.degrees, dtype=float)
    alvo = cfg.k * np.exp(-graus / cfg.k)
    amostra = sorted(rng_amostra.choice(g.n, size=min(g.n, 200), replace=False).tolist())
    limites = CheckLimits(raio=raio_lu(g), seed=cfg.seed)

    for t in _progresso(tempos, "uniformity"):
        x = traj.labeling_at(t)
        disponiveis = np.array([len(available_colors(g, x, v)) for v in range(g.n)])
        fracao = float(np.mean(np.abs(disponiveis - alvo) <= cfg.eps * cfg.k))
        erro_bias = 0.0
        verificados = 0
        for v in amostra:
            if all(traj.last_success(w, t) > 0 for w in g.neighbors(v)):
                soma = sum(bias_field(g, traj, v, c, t) for c in range(1, cfg.k + 1))
                erro_bias = max(erro_bias, abs(soma - g.degrees[v]))
                verificados += 1
        local = eps_uniform_at(g, x, 0, limites.raio, cfg.eps, limites)
        relatorio.registros.append({"t": t, "fracao_disponiveis": fracao,
                                    "erro_bias": erro_bias, "vertices_bias": verificados,
                                    "uniforme_em_0": local.ok})
    df = relatorio.to_frame()
    relatorio.agregados = {
        "T_0": T_0,
        "fracao_minima": float(df["fracao_disponiveis"].min()),
        "erro_bias_maximo": float(df["erro_bias"].max()),
    }
    relatorio.ok = relatorio.agregados["fracao_minima"] >= 0.95 and relatorio.agregados["erro_bias_maximo"] < 1e-9
    return _encerrar(relatorio, inicio)


EXPERIMENTOS: Dict[str, Callable[[ExperimentConfig], ExperimentReport]] = {
    "verify": verify_suite,
    "stationarity": stationarity_test,
    "contraction": contraction_experiment,
    "block": block_coupling,
    "scaling": mixing_scaling,
    "identity": identity_growth,
    "diagnostics": bounding_diagnostics,
    "uniformity": uniformity_audit,
}


def run_experiment(nome: str, cfg: ExperimentConfig) -> ExperimentReport:
    """
    Executa um experimento pelo nome.

    Raises:
        ErroEntrada: Se o experimento não existir
    """
    if nome not in EXPERIMENTOS:
        raise ErroEntrada(f"Experimento '{nome}' desconhecido. Use um de {sorted(EXPERIMENTOS)}")
    logger.info("Iniciando experimento %s em %s (k=%d, seed=%d)", nome, cfg.grafo, cfg.k, cfg.seed)
    return EXPERIMENTOS[nome](cfg)
