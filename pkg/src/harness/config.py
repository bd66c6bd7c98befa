"""
Configuração dos experimentos.

Os valores padrão de alguns campos vêm de variáveis de ambiente, lidas de um
arquivo .env quando presente (veja .env.example).
"""

import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

from src.glauber.erros import ErroEntrada
from src.glauber.graphlib import Graph, gen_graph

load_dotenv()

logger = logging.getLogger(__name__)

FORMATOS = ('csv', 'json')


def _env_int(nome: str, padrao: int) -> int:
    valor = os.getenv(nome)
    if valor is None or valor == "":
        return padrao
    try:
        return int(valor)
    except ValueError:
        raise ErroEntrada(f"Variável de ambiente {nome} inválida: {valor!r}")


@dataclass
class ExperimentConfig:
    """
    Parâmetros de um experimento.

    Attributes:
        grafo: Especificação do grafo ("cycle:12", "path:5", "star:5", "tree:50",
            "regular:n:Δ:g_min" ou "file:<caminho>")
        k: Número de cores
        delta: Folga pedida, k >= (1+δ)Δ (apenas verificada e registrada)
        c_cp: Constante do horizonte de acoplamento, T_cp = ⌈c_cp·n⌉
        c_buffer: Constante do período de aquecimento antes do primeiro bloco
        c_blk: Constante do comprimento dos blocos, T_blk = ⌈c_blk·n·ln Δ⌉
        gamma: Fração de T_blk usada no bloco 0
        eps: Tolerância ε da uniformidade local
        p_max: Teto para |𝒫| no predicado BC
        replicas: Número de réplicas independentes
        seed: Semente raiz
        passos: Número de passos das simulações diretas (None usa o padrão de cada comando)
        saida: Diretório de saída
        formato: Formato das tabelas ('csv' ou 'json')
        amostras_sigma: Sequências sorteadas na verificação de bijetividade
        burn_in: Passos de aquecimento (None usa 50·n·ln n)
        cadeias: Cadeias independentes no teste de estacionariedade
        checkpoints: Pontos de verificação na auditoria de uniformidade
        tamanhos: Tamanhos de ciclo do estudo de escala
        graficos: Gera gráficos PNG junto com as tabelas
    """

    grafo: str = "cycle:12"
    k: int = 4
    delta: float = 0.0
    c_cp: float = 5.0
    c_buffer: float = 1.0
    c_blk: float = 1.0
    gamma: float = 0.1
    eps: float = 0.1
    p_max: int = field(default_factory=lambda: _env_int("GLAUBER_P_MAX", 10 ** 5))
    replicas: int = field(default_factory=lambda: _env_int("GLAUBER_REPLICAS", 200))
    seed: int = 0
    passos: Optional[int] = None
    saida: str = field(default_factory=lambda: os.getenv("GLAUBER_SAIDA", "resultados"))
    formato: str = 'json'
    amostras_sigma: int = 1000
    burn_in: Optional[int] = None
    cadeias: int = 10000
    checkpoints: int = 20
    tamanhos: List[int] = field(default_factory=lambda: [128, 256, 512, 1024])
    graficos: bool = False

    def __post_init__(self):
        self.validar()

    def validar(self) -> "ExperimentConfig":
        """
        Confere os invariantes dos campos.

        Raises:
            ErroEntrada: Nomeando o primeiro campo inválido
        """
        def _erro(campo: str, motivo: str):
            raise ErroEntrada(f"Campo '{campo}' inválido: {motivo} (recebido {getattr(self, campo)!r})")

        if not isinstance(self.grafo, str) or ":" not in self.grafo:
            _erro('grafo', "use o formato tipo:parametros")
        if not isinstance(self.k, int) or self.k < 1:
            _erro('k', "deve ser inteiro >= 1")
        if self.delta < 0:
            _erro('delta', "deve ser >= 0")
        for campo in ('c_cp', 'c_buffer', 'c_blk'):
            if getattr(self, campo) < 0:
                _erro(campo, "deve ser >= 0")
        if not 0 < self.gamma < 1:
            _erro('gamma', "deve estar em (0, 1)")
        if self.eps <= 0:
            _erro('eps', "deve ser > 0")
        for campo in ('p_max', 'replicas', 'amostras_sigma', 'cadeias', 'checkpoints'):
            if not isinstance(getattr(self, campo), int) or getattr(self, campo) < 1:
                _erro(campo, "deve ser inteiro >= 1")
        if self.passos is not None and (not isinstance(self.passos, int) or self.passos < 0):
            _erro('passos', "deve ser inteiro >= 0 ou nulo")
        if self.burn_in is not None and (not isinstance(self.burn_in, int) or self.burn_in < 0):
            _erro('burn_in', "deve ser inteiro >= 0 ou nulo")
        if self.formato not in FORMATOS:
            _erro('formato', f"use um de {FORMATOS}")
        if not self.tamanhos or any(not isinstance(n, int) or n < 1 for n in self.tamanhos):
            _erro('tamanhos', "deve ser lista não vazia de inteiros >= 1")
        return self

    @classmethod
    def from_dict(cls, dados: Dict[str, Any]) -> "ExperimentConfig":
        conhecidos = {f.name for f in fields(cls)}
        desconhecidos = sorted(set(dados) - conhecidos)
        if desconhecidos:
            raise ErroEntrada(f"Campo '{desconhecidos[0]}' desconhecido na configuração")
        try:
            return cls(**dados)
        except TypeError as e:
            raise ErroEntrada(f"Configuração malformada: {e}")

    @classmethod
    def from_json(cls, caminho: str) -> "ExperimentConfig":
        try:
            with open(caminho, encoding='utf-8') as f:
                dados = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ErroEntrada(f"Não foi possível ler a configuração {caminho}: {e}")
        if not isinstance(dados, dict):
            raise ErroEntrada(f"Configuração em {caminho} deve ser um objeto JSON")
        return cls.from_dict(dados)

    def atualizar(self, **alteracoes) -> "ExperimentConfig":
        """Cópia com os campos alterados (valores None são ignorados)."""
        dados = self.to_dict()
        dados.update({c: v for c, v in alteracoes.items() if v is not None})
        return ExperimentConfig.from_dict(dados)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def t_cp(self, n: int) -> int:
        return int(math.ceil(self.c_cp * n))

    def t_blk(self, n: int, max_degree: int) -> int:
        return int(math.ceil(self.c_blk * n * math.log(max(max_degree, 2))))

    def t_buffer(self, n: int) -> int:
        return int(math.ceil(self.c_buffer * n))

    def passos_burn_in(self, n: int) -> int:
        if self.burn_in is not None:
            return self.burn_in
        return int(math.ceil(50 * n * math.log(max(n, 2))))

    def passos_ou(self, padrao: int) -> int:
        """Passos pedidos explicitamente (0 inclusive) ou o padrão do comando."""
        return padrao if self.passos is None else self.passos

    def construir_grafo(self) -> Graph:
        g = parse_grafo(self.grafo, self.seed)
        folga = (1 + self.delta) * g.max_degree
        if self.k < folga:
            logger.warning("k=%d abaixo de (1+δ)Δ=%.1f para %s", self.k, folga, g.rotulo)
        return g


def parse_grafo(descricao: str, seed=None) -> Graph:
    """
    Constrói o grafo descrito por uma especificação textual.

    Raises:
        ErroEntrada: Se a especificação for inválida
    """
    tipo, _, resto = descricao.partition(":")
    try:
        if tipo == "cycle":
            return gen_graph("cycle", {"n": int(resto)}, seed)
        if tipo == "path":
            return gen_graph("path", {"n": int(resto)}, seed)
        if tipo == "star":
            return gen_graph("star", {"delta": int(resto)}, seed)
        if tipo == "tree":
            return gen_graph("random_tree", {"n": int(resto)}, seed)
        if tipo == "regular":
            n, d, g_min = (int(x) for x in resto.split(":"))
            return gen_graph("random_regular_girth",
                             {"n": n, "delta": d, "g_min": g_min, "estrito": False}, seed)
        if tipo == "file":
            return gen_graph("from_edge_list", {"caminho": resto}, seed)
    except (ValueError, OSError) as e:
        if isinstance(e, ErroEntrada):
            raise
        raise ErroEntrada(f"Campo 'grafo' inválido: {descricao!r} ({e})")
    raise ErroEntrada(f"Campo 'grafo' inválido: tipo '{tipo}' desconhecido em {descricao!r}")
