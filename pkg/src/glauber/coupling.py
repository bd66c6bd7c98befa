"""
Acoplamento global não markoviano entre duas cadeias vizinhas.

Dado (x0, y0, σ) com x0 e y0 diferindo em um único vértice z*, constrói a
sequência σ' aplicada a y0 compondo, tempo a tempo, a identidade, a troca
local de Jerrum e a transformação não markoviana (NM), que reescreve
propostas passadas na vizinhança de v_t para bloquear a propagação de uma
discrepância persistente.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import numpy as np

from .bounding import PERIGOSA, BoundingTrace, run_bounding_chain
from .dynamics import (GrafoQualquer, Labeling, Trajectory, UpdateSequence, evolve,
                       hamming)
from .erros import ErroContrato, ErroEntrada

logger = logging.getLogger(__name__)

MODO_NM = "nm"
MODO_JERRUM = "jerrum"
MODO_IDENTIDADE = "identidade"
MODOS = (MODO_NM, MODO_JERRUM, MODO_IDENTIDADE)

MAPA_ID = "id"
MAPA_JERRUM = "jerrum"
MAPA_NM = "nm"

# Rótulos das condições de boa definição do NM, na ordem em que são verificadas
FALHA_PRELIM = "PRELIM"
FALHA_BC = "BC"
FALHA_VIZINHOS_P = "VIZINHOS_P"
FALHA_EVITADOS = "EVITADOS"
FALHA_ALFA = "ALFA"
FALHA_BETA = "BETA"
FALHA_INTERSECAO = "INTERSECAO"


# ---------------------------------------------------------------------------
# Épocas e conjuntos locais
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Epoch:
    """Época de atualização de w em torno de t: I(w,t) = [τ⁻, τ⁺)."""

    w: int
    t: int
    tau_minus: int
    tau_plus: int

    @property
    def definida(self) -> bool:
        return self.tau_minus > 0

    def interior(self) -> range:
        """Tempos de I(w,t); vazio quando a época não está definida."""
        if not self.definida:
            return range(0)
        return range(self.tau_minus, self.tau_plus)


def epoch(traj: Trajectory, w: int, t: int) -> Epoch:
    return Epoch(w, t, traj.last_success(w, t), traj.next_success(w, t))


def _cores_disponiveis_em(g: GrafoQualquer, traj: Trajectory, w: int, s: int) -> Set[int]:
    usadas = {traj.color(u, s) for u in g.neighbors(w)}
    return {c for c in range(1, traj.k + 1) if c not in usadas}


def _propostas_vizinhas(g: GrafoQualquer, traj: Trajectory, w: int, ep: Epoch) -> List[int]:
    """Tempos s ∈ I°(w,t) em que algum vizinho de w foi proposto."""
    tempos = []
    for u in g.neighbors(w):
        tempos.extend(s for s in traj.proposal_times(u, ep.tau_minus, ep.tau_plus) if s != ep.t)
    return sorted(tempos)


def exchangeable(g: GrafoQualquer, traj: Trajectory, w: int, t: int) -> FrozenSet[int]:
    """
    Cores trocáveis Ex(w,t).

    São a cor atual X_{t-1}(w) mais as cores disponíveis a w em sua última
    recoloração que nenhum vizinho propôs durante I°(w,t). Vazio se w nunca
    foi recolorido até t.
    """
    ep = epoch(traj, w, t)
    if not ep.definida:
        return frozenset()
    disponiveis = _cores_disponiveis_em(g, traj, w, ep.tau_minus - 1)
    cores = traj.sequence.colors
    propostas = {int(cores[s - 1]) for s in _propostas_vizinhas(g, traj, w, ep)}
    return frozenset((disponiveis - propostas) | {traj.color(w, t - 1)})


def _evita(traj: Trajectory, w: int, t: int, v: int) -> bool:
    """v propôs a cor corrente de w em algum s ∈ I°(w,t)."""
    ep = epoch(traj, w, t)
    if not ep.definida:
        return False
    cores = traj.sequence.colors
    return any(
        int(cores[s - 1]) == traj.color(w, s - 1)
        for s in traj.proposal_times(v, ep.tau_minus, ep.tau_plus)
        if s != t
    )


def _ordenar_troca(candidatos: Iterable[int], ex: Dict[int, FrozenSet[int]]) -> Tuple[int, ...]:
    return tuple(sorted(candidatos, key=lambda w: (-len(ex[w]), w)))


def avoid_swap(g: GrafoQualquer, traj: Trajectory, P: FrozenSet[int], t: int,
               c: int) -> Tuple[FrozenSet[int], Tuple[int, ...]]:
    """
    Conjunto evitado Avoid_𝒫(t) e conjunto trocável Swap_𝒫(c, t).

    Swap vem ordenado por |Ex| decrescente com desempate por id crescente.
    """
    v = int(traj.sequence.vertices[t - 1])
    evitados = {w for w in g.neighbors(v) if _evita(traj, w, t, v)} | set(P)
    ex = {w: exchangeable(g, traj, w, t) for w in g.neighbors(v) if w not in P}
    troca = _ordenar_troca((w for w, cores in ex.items() if c in cores and w not in evitados), ex)
    return frozenset(evitados), troca


def build_alpha_beta(swap_b: Tuple[int, ...], swap_u: Tuple[int, ...],
                     ex: Dict[int, FrozenSet[int]]) -> Tuple[Dict[int, int], Dict[int, Dict[int, int]]]:
    """
    Mapa de vizinhos complementares α e mapas de cores complementares β_z.

    α casa o i-ésimo de swap_b com o i-ésimo de swap_u; β_z casa as cores de
    Ex(α(z)) com as de Ex(z) em ordem crescente, ambos até o menor tamanho.
    """
    alfa = dict(zip(swap_b, swap_u))
    beta = {z: dict(zip(sorted(ex[az]), sorted(ex[z]))) for z, az in alfa.items()}
    return alfa, beta


# ---------------------------------------------------------------------------
# Contexto NM
# ---------------------------------------------------------------------------

@dataclass
class NMContext:
    """Dados locais da transformação não markoviana no tempo t."""

    t: int
    v: int
    c: int
    p: int
    hstar: FrozenSet[int]
    P: FrozenSet[int] = field(repr=False)
    c_b: Optional[int] = None
    c_u: Optional[int] = None
    ex: Dict[int, FrozenSet[int]] = field(default_factory=dict, repr=False)
    epocas: Dict[int, Epoch] = field(default_factory=dict, repr=False)
    cor_atual: Dict[int, int] = field(default_factory=dict, repr=False)
    avoid: FrozenSet[int] = frozenset()
    swap_b: Tuple[int, ...] = ()
    swap_u: Tuple[int, ...] = ()
    alpha: Dict[int, int] = field(default_factory=dict)
    beta: Dict[int, Dict[int, int]] = field(default_factory=dict, repr=False)
    B: FrozenSet[int] = frozenset()
    W: FrozenSet[int] = frozenset()
    tempos_bloqueio: Dict[int, List[int]] = field(default_factory=dict, repr=False)
    bem_definido: bool = False
    tag: Optional[str] = None

    @property
    def temp(self) -> FrozenSet[int]:
        return self.W

    def tau_menos(self, w: int) -> int:
        return self.epocas[w].tau_minus

    def to_dict(self) -> Dict:
        return {
            "t": self.t,
            "v": self.v,
            "p": self.p,
            "hstar": sorted(self.hstar),
            "c_b": self.c_b,
            "c_u": self.c_u,
            "B": sorted(self.B),
            "alpha": {str(w): a for w, a in sorted(self.alpha.items())},
            "W": sorted(self.W),
            "bem_definido": self.bem_definido,
            "tag": self.tag,
        }


def contexto_nm(g: GrafoQualquer, traj: Trajectory, bounding: BoundingTrace, t: int,
                p: int, hstar: Iterable[int]) -> NMContext:
    """
    Monta o contexto NM para (t, H*) com o pai p já escolhido.

    As condições preliminares que dependem de 𝒫 final (cores bloqueada e
    livre, épocas definidas dos vizinhos bloqueadores) são verificadas aqui;
    as demais condições de boa definição ficam em nm_well_defined.
    """
    v, c = traj.sequence.step(t)
    hstar = frozenset(hstar)
    P = bounding.uniao
    ctx = NMContext(t=t, v=v, c=c, p=p, hstar=hstar, P=P)

    vizinhos = [w for w in g.neighbors(v) if w != p]
    fora_p = [w for w in vizinhos if w not in P]
    for w in vizinhos:
        ctx.cor_atual[w] = traj.color(w, t - 1)
        ctx.epocas[w] = epoch(traj, w, t)
        ctx.ex[w] = exchangeable(g, traj, w, t)

    intersecao = {ctx.cor_atual[w] for w in fora_p} & hstar
    if len(intersecao) != 1 or len(hstar) != 2:
        ctx.tag = FALHA_PRELIM
        return ctx
    ctx.c_b = next(iter(intersecao))
    ctx.c_u = next(iter(hstar - intersecao))
    if any(ctx.cor_atual[w] == ctx.c_b and not ctx.epocas[w].definida for w in vizinhos):
        ctx.tag = FALHA_PRELIM
        return ctx

    ctx.avoid = frozenset({w for w in vizinhos if _evita(traj, w, t, v)} | P)
    disponiveis = [w for w in fora_p if w not in ctx.avoid]
    ctx.swap_b = _ordenar_troca((w for w in disponiveis if ctx.c_b in ctx.ex[w]), ctx.ex)
    ctx.swap_u = _ordenar_troca((w for w in disponiveis if ctx.c_u in ctx.ex[w]), ctx.ex)
    ctx.alpha, ctx.beta = build_alpha_beta(ctx.swap_b, ctx.swap_u, ctx.ex)
    ctx.B = frozenset(w for w in fora_p if ctx.cor_atual[w] == ctx.c_b)
    ctx.W = ctx.B | frozenset(ctx.alpha[w] for w in ctx.B if w in ctx.alpha)

    cores = traj.sequence.colors
    for w in ctx.W:
        ctx.tempos_bloqueio[w] = [
            s for s in _propostas_vizinhas(g, traj, w, ctx.epocas[w])
            if int(cores[s - 1]) == traj.color(w, s - 1)
        ]

    ctx.bem_definido, ctx.tag = nm_well_defined(ctx, bounding)
    return ctx


def nm_prelim(g: GrafoQualquer, traj: Trajectory, bounding: BoundingTrace,
              t: int) -> Optional[NMContext]:
    """
    Contexto NM no tempo t, ou None se as condições preliminares falham.

    Exige c_t perigosa em Z_{t-1}, c_t diferente da cor do pai p e exatamente
    uma cor de H* entre os vizinhos de v_t fora de 𝒫.
    """
    if bounding.classe(t) != PERIGOSA:
        return None
    _, c = traj.sequence.step(t)
    p = bounding.fonte(t)
    cor_p = traj.color(p, t - 1)
    if c == cor_p:
        return None
    ctx = contexto_nm(g, traj, bounding, t, p, {cor_p, c})
    if ctx.tag == FALHA_PRELIM:
        return None
    return ctx


def nm_well_defined(ctx: NMContext, bounding: BoundingTrace) -> Tuple[bool, Optional[str]]:
    """
    Verifica, em ordem, as condições sob as quais o NM é aplicado.

    Returns:
        (True, None) ou (False, rótulo da primeira condição violada)
    """
    if ctx.c_b is None:
        return False, FALHA_PRELIM
    if not bounding.bc:
        return False, FALHA_BC
    cores_p = {ctx.cor_atual[w] for w in ctx.cor_atual if w in ctx.P}
    if cores_p & ctx.hstar:
        return False, FALHA_VIZINHOS_P
    if ctx.B & ctx.avoid:
        return False, FALHA_EVITADOS
    if any(w not in ctx.alpha for w in ctx.B):
        return False, FALHA_ALFA
    for w in ctx.B:
        if ctx.alpha[w] == w:
            # w autocasado recebe c_u, não β_w
            continue
        cor = ctx.beta[w].get(ctx.cor_atual[ctx.alpha[w]])
        if cor is None or cor in ctx.hstar:
            return False, FALHA_BETA
    imagem = {ctx.alpha[w] for w in ctx.B}
    if imagem & ctx.B != {w for w in ctx.B if ctx.alpha[w] == w}:
        return False, FALHA_INTERSECAO
    return True, None


def _edicoes_nm(ctx: NMContext, c_t: int) -> Dict[int, int]:
    """Novas cores por tempo editado pela transformação NM."""
    if not ctx.bem_definido:
        raise ErroContrato(f"NM aplicado fora das condições em t={ctx.t} ({ctx.tag})")
    if c_t not in ctx.hstar:
        raise ErroContrato(f"c_t={c_t} fora de H*={sorted(ctx.hstar)} em t={ctx.t}")
    nova_cor: Dict[int, int] = {}
    for w in sorted(ctx.B):
        a = ctx.alpha[w]
        if a == w:
            nova_cor[w] = ctx.c_u
        else:
            nova_cor[w] = ctx.beta[w][ctx.cor_atual[a]]
            nova_cor[a] = ctx.c_u
    edicoes = {ctx.tau_menos(w): cor for w, cor in nova_cor.items()}
    for w, cor in nova_cor.items():
        for s in ctx.tempos_bloqueio[w]:
            edicoes[s] = cor
    edicoes[ctx.t] = next(iter(ctx.hstar - {c_t}))
    return edicoes


def nm_transform(sigma: UpdateSequence, ctx: NMContext) -> UpdateSequence:
    """
    Aplica a transformação NM a sigma; os vértices nunca mudam.

    Raises:
        ErroContrato: Se o contexto não está bem definido
    """
    cores = sigma.colors.copy()
    for s, c in _edicoes_nm(ctx, int(cores[ctx.t - 1])).items():
        cores[s - 1] = c
    return sigma.with_colors(cores)


def jerrum_transform(sigma: UpdateSequence, t: int, H: Iterable[int]) -> UpdateSequence:
    """Troca c_t pela outra cor de H quando c_t ∈ H e |H| = 2."""
    H = frozenset(H)
    if not 1 <= len(H) <= 2:
        raise ErroEntrada(f"|H| deve ser 1 ou 2, recebido {sorted(H)}")
    c = int(sigma.colors[t - 1])
    if len(H) < 2 or c not in H:
        return sigma
    cores = sigma.colors.copy()
    cores[t - 1] = next(iter(H - {c}))
    return sigma.with_colors(cores)


@dataclass
class InvolucaoNM:
    """Resultado da verificação NM(NM(σ)) = σ em um tempo t."""

    t: int
    involucao: bool
    segunda_bem_definida: bool
    tag_segunda: Optional[str]
    geometria: bool


def nm_involution_check(g: GrafoQualquer, x0: Labeling, y0: Labeling, sigma: UpdateSequence,
                        ctx: NMContext, p_max: Optional[int] = None) -> InvolucaoNM:
    """
    Aplica o NM duas vezes com o mesmo (t, p, H*) e confere que volta a σ.

    Também confere a geometria do conjunto temporário: W independente e
    N(w) ∩ 𝒫 = {v_t} para todo w ∈ W.
    """
    geometria = all(
        not any(g.has_edge(a, b) for b in ctx.W if b > a) for a in ctx.W
    ) and all(
        {u for u in g.neighbors(w) if u in ctx.P} == {ctx.v} for w in ctx.W
    )
    sigma1 = nm_transform(sigma, ctx)
    traj1 = evolve(g, x0, sigma1)
    bounding1 = run_bounding_chain(g, x0, y0, sigma1, p_max)
    ctx1 = contexto_nm(g, traj1, bounding1, ctx.t, ctx.p, ctx.hstar)
    volta = ctx1.bem_definido and nm_transform(sigma1, ctx1) == sigma
    return InvolucaoNM(ctx.t, volta, ctx1.bem_definido, ctx1.tag, geometria)


# ---------------------------------------------------------------------------
# Acoplamento global
# ---------------------------------------------------------------------------

@dataclass
class CouplingResult:
    """Saída do acoplamento global F(x0, y0, σ)."""

    sigma_prime: UpdateSequence = field(repr=False)
    d_sets: List[FrozenSet[int]] = field(repr=False)
    temp_sets: List[FrozenSet[int]] = field(repr=False)
    bc_true: bool
    nm_applied: List[int]
    nm_failed: List[Tuple[int, str]]
    mapas: List[str] = field(repr=False)
    casos: List[str] = field(repr=False)
    entradas_3a: int
    divergencias: List[int]
    violacoes: List[Tuple[int, str, str]]
    contextos: Dict[int, NMContext] = field(repr=False)
    bounding: BoundingTrace = field(repr=False)
    x_final: Labeling = field(repr=False)
    y_final: Labeling = field(repr=False)
    y_digest: str
    modo: str

    @property
    def disagreement_final(self) -> FrozenSet[int]:
        return hamming(self.x_final, self.y_final)[1]

    def to_dict(self) -> Dict:
        passos = [
            {"t": t, "caso": self.casos[t - 1], "mapa": self.mapas[t - 1],
             "D": len(self.d_sets[t]), "temp": len(self.temp_sets[t])}
            for t in range(1, len(self.mapas) + 1)
        ]
        return {
            "modo": self.modo,
            "bc_true": self.bc_true,
            "failure_reason": self.bounding.motivo,
            "nm_applied": list(self.nm_applied),
            "nm_failed": [{"t": t, "bullet": tag} for t, tag in self.nm_failed],
            "entradas_3a": self.entradas_3a,
            "divergencias": list(self.divergencias),
            "violacoes": [{"t": t, "tipo": tipo, "detalhe": d} for t, tipo, d in self.violacoes],
            "passos": passos,
            "disagreement_final": sorted(self.disagreement_final),
            "y_digest": self.y_digest,
        }


def _digest(y: Iterable[int]) -> str:
    return hashlib.sha256(np.asarray(list(y), dtype=np.int64).tobytes()).hexdigest()


class _CadeiaY:
    """
    Cadeia Y evoluída sob a sequência intermediária, com desfazer por log.

    Quando uma edição atinge um tempo já simulado, o estado volta ao tempo
    anterior à edição e os passos são refeitos com as cores atuais.
    """

    def __init__(self, g: GrafoQualquer, y0: Labeling, vertices: np.ndarray, cores: np.ndarray,
                 xs: List[int]):
        self.g = g
        self.ys = y0.tolist()
        self.vertices = vertices
        self.cores = cores
        self.xs = xs
        self.log: List[Tuple[int, int]] = []
        self.diff: Set[int] = {v for v in range(len(self.ys)) if self.ys[v] != xs[v]}

    @property
    def tempo(self) -> int:
        return len(self.log)

    def atualizar_diff(self, v: int):
        if self.ys[v] != self.xs[v]:
            self.diff.add(v)
        else:
            self.diff.discard(v)

    def passo(self) -> None:
        s = self.tempo + 1
        v, c = int(self.vertices[s - 1]), int(self.cores[s - 1])
        self.log.append((v, self.ys[v]))
        if all(self.ys[w] != c for w in self.g.neighbors(v)):
            self.ys[v] = c

    def refazer_desde(self, s0: int) -> None:
        """Volta ao estado Y_{s0-1} e refaz os passos até o tempo atual."""
        alvo = self.tempo
        if s0 > alvo:
            return
        tocados = set()
        while self.tempo >= s0:
            v, antiga = self.log.pop()
            self.ys[v] = antiga
            tocados.add(v)
        while self.tempo < alvo:
            self.passo()
            tocados.add(int(self.vertices[self.tempo - 1]))
        for v in tocados:
            self.atualizar_diff(v)


def global_coupling(g: GrafoQualquer, x0: Labeling, y0: Labeling, sigma: UpdateSequence,
                    p_max: Optional[int] = None, modo: str = MODO_NM, verificar: bool = True,
                    estrito: bool = False) -> CouplingResult:
    """
    Calcula σ' = F(x0, y0, σ).

    Primeiro roda a cadeia limitante e o predicado BC; com BC falso (ou no
    modo identidade) σ' = σ. Caso contrário percorre t = 1..T escolhendo o
    mapa local pelo caso em que v_t se encontra em relação a D_{t-1}.

    Args:
        g: Grafo
        x0: Rotulação da cadeia X
        y0: Rotulação da cadeia Y, diferindo de x0 apenas em z*
        sigma: Sequência aplicada a x0
        p_max: Teto para |𝒫|
        modo: "nm", "jerrum" (Jerrum em toda a zona de perigo) ou "identidade"
        verificar: Confere as relações de dominação a cada passo
        estrito: Levanta ErroContrato na primeira violação em vez de registrá-la

    Returns:
        CouplingResult

    Raises:
        ErroEntrada: Se x0 e y0 não diferem em exatamente um vértice ou o modo é desconhecido
    """
    if modo not in MODOS:
        raise ErroEntrada(f"Modo de acoplamento desconhecido: {modo}. Use um de {MODOS}")
    tamanho, diferentes = hamming(x0, y0)
    if tamanho != 1:
        raise ErroEntrada(f"Rotulações devem diferir em exatamente um vértice (diferem em {tamanho})")
    z_star = next(iter(diferentes))

    traj = evolve(g, x0, sigma)
    bounding = run_bounding_chain(g, x0, y0, sigma, p_max)
    T = sigma.T
    vertices = sigma.vertices
    cores_sigma = sigma.colors
    aceitos = traj.accepted

    eta = sigma.colors.copy()
    xs = x0.tolist()
    y = _CadeiaY(g, y0, vertices, eta, xs)
    estados_z = bounding.estados()
    next(estados_z)

    acoplar = bounding.bc and modo != MODO_IDENTIDADE
    vazio: FrozenSet[int] = frozenset()
    D: Set[int] = {z_star} if acoplar else set(y.diff)
    d_atual = frozenset(D)
    d_sets = [d_atual]
    temp_sets: List[FrozenSet[int]] = [vazio]
    temp_total: Set[int] = set()
    mapas: List[str] = []
    casos: List[str] = []
    nm_applied: List[int] = []
    nm_failed: List[Tuple[int, str]] = []
    divergencias: List[int] = []
    violacoes: List[Tuple[int, str, str]] = []
    contextos: Dict[int, NMContext] = {}
    editados: Set[int] = set()
    entradas_3a = 0

    def _violar(t: int, tipo: str, detalhe: str):
        violacoes.append((t, tipo, detalhe))
        logger.warning("Violação em t=%d (%s): %s", t, tipo, detalhe)
        if estrito:
            raise ErroContrato(f"t={t} {tipo}: {detalhe}")

    def _jerrum(t: int, H: FrozenSet[int]):
        c = int(eta[t - 1])
        if len(H) == 2 and c in H:
            eta[t - 1] = next(iter(H - {c}))

    for t in range(1, T + 1):
        v, c = int(vertices[t - 1]), int(cores_sigma[t - 1])
        mapa, caso, W = MAPA_ID, "-", vazio
        s0 = t

        if acoplar:
            viz_d = [w for w in g.neighbors(v) if w in D]
            if v in D:
                caso = "2"
                if aceitos[t - 1]:
                    D.discard(v)
            elif not viz_d:
                caso = "1"
            else:
                p = min(viz_d)
                H = frozenset({xs[p], y.ys[p]})
                if len(H) == 1:
                    caso = "3a"
                    entradas_3a += 1
                elif c != y.ys[p]:
                    caso = "3b"
                    mapa = MAPA_JERRUM
                else:
                    caso = "3c"
                    cores_np = {xs[w] for w in g.neighbors(v) if w != p}
                    intersecao = H & cores_np
                    if H <= cores_np:
                        mapa = MAPA_JERRUM
                    elif modo == MODO_JERRUM:
                        mapa = MAPA_JERRUM
                        D.add(v)
                    else:
                        ctx = nm_prelim(g, traj, bounding, t)
                        if ctx is not None and (ctx.p != p or ctx.hstar != H):
                            divergencias.append(t)
                            ctx = contexto_nm(g, traj, bounding, t, p, H)
                        if ctx is not None:
                            contextos[t] = ctx
                        ok = ctx is not None and ctx.bem_definido
                        if ok and intersecao in ({c}, H - {c}):
                            mapa = MAPA_NM
                            if intersecao == H - {c}:
                                D.add(v)
                        else:
                            mapa = MAPA_JERRUM
                            D.add(v)
                            if not ok:
                                nm_failed.append((t, ctx.tag if ctx is not None else FALHA_PRELIM))

                if caso in ("3b", "3c") and t in editados:
                    _violar(t, "edicao_previa", f"coordenada {t} editada por NM anterior")
                if mapa == MAPA_JERRUM:
                    _jerrum(t, H)
                elif mapa == MAPA_NM:
                    edicoes = _edicoes_nm(ctx, int(eta[t - 1]))
                    for s, cor in edicoes.items():
                        eta[s - 1] = cor
                    editados.update(s for s in edicoes if s != t)
                    s0 = min(edicoes)
                    W = ctx.W
                    temp_total.update(W)
                    nm_applied.append(t)
            if caso == "2" and t in editados:
                _violar(t, "edicao_previa", f"coordenada {t} editada por NM anterior")

        if s0 < t:
            y.refazer_desde(s0)

        if aceitos[t - 1]:
            xs[v] = c
        y.passo()
        y.atualizar_diff(v)
        _, z = next(estados_z)

        if not acoplar:
            D = set(y.diff)
        if frozenset(D) != d_atual:
            d_atual = frozenset(D)
        d_sets.append(d_atual)
        temp_sets.append(W)
        mapas.append(mapa)
        casos.append(caso)

        if verificar and acoplar:
            fora = y.diff - D - temp_total
            if fora:
                _violar(t, "dominacao", f"discordâncias fora de D ∪ Temp: {sorted(fora)}")
            for u in D:
                if u not in y.diff:
                    _violar(t, "persistente", f"{u} ∈ D sem discordância")
                elif not (z.contem(u, xs[u]) and z.contem(u, y.ys[u])):
                    _violar(t, "cobertura", f"cores de {u} fora de Z_t({u})")
            if not D <= z.multiplos:
                _violar(t, "inclusao_p", f"D ⊄ 𝒫_t: {sorted(D - z.multiplos)}")

    sigma_prime = sigma.with_colors(eta) if acoplar else sigma
    x_final = Labeling(xs, x0.k)
    y_final = Labeling(y.ys, y0.k)
    if verificar and acoplar:
        referencia = evolve(g, y0, sigma_prime).final
        if referencia != y_final:
            _violar(T, "recomputo", "cadeia Y incremental difere da reevolução completa")

    logger.debug("Acoplamento (%s): BC=%s, NM=%d, falhas NM=%d, |D_T|=%d",
                 modo, bounding.bc, len(nm_applied), len(nm_failed), len(d_atual))
    return CouplingResult(
        sigma_prime=sigma_prime,
        d_sets=d_sets,
        temp_sets=temp_sets,
        bc_true=bounding.bc,
        nm_applied=nm_applied,
        nm_failed=nm_failed,
        mapas=mapas,
        casos=casos,
        entradas_3a=entradas_3a,
        divergencias=divergencias,
        violacoes=violacoes,
        contextos=contextos,
        bounding=bounding,
        x_final=x_final,
        y_final=y_final,
        y_digest=_digest(y.ys),
        modo=modo,
    )


def reverse_check(g: GrafoQualquer, x0: Labeling, y0: Labeling, sigma: UpdateSequence,
                  p_max: Optional[int] = None, modo: str = MODO_NM) -> bool:
    """Confere F_{y0,x0}(F_{x0,y0}(σ)) = σ coordenada a coordenada."""
    ida = global_coupling(g, x0, y0, sigma, p_max, modo, verificar=False)
    volta = global_coupling(g, y0, x0, ida.sigma_prime, p_max, modo, verificar=False)
    return volta.sigma_prime == sigma
