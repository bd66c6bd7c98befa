"""
Módulo para visualização dos resultados dos experimentos.

Este módulo contém funções para gráficos estáticos das distâncias entre
cadeias acopladas, das curvas de escala do tempo de mistura e da
distribuição de |𝒫|.
"""

import logging
import os
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

logger = logging.getLogger(__name__)


def configurar_tema(tema: str = 'default') -> None:
    """
    Configura o tema global para visualizações.

    Args:
        tema: Nome do tema ('default', 'dark', 'minimal')
    """
    if tema == 'default':
        plt.style.use('seaborn-v0_8-whitegrid')
        sns.set_theme(style="whitegrid")
    elif tema == 'dark':
        plt.style.use('dark_background')
        sns.set_theme(style="darkgrid")
    elif tema == 'minimal':
        plt.style.use('seaborn-v0_8-white')
        sns.set_theme(style="ticks")
    else:
        logger.warning("Tema '%s' não reconhecido. Usando tema padrão.", tema)
        plt.style.use('seaborn-v0_8-whitegrid')
        sns.set_theme(style="whitegrid")


def _finalizar(fig: plt.Figure, salvar: Optional[str]) -> plt.Figure:
    fig.tight_layout()
    if salvar:
        os.makedirs(os.path.dirname(os.path.abspath(salvar)), exist_ok=True)
        fig.savefig(salvar, dpi=300, bbox_inches='tight')
        logger.info("Gráfico salvo em: %s", salvar)
    return fig


def grafico_distancia_blocos(df: pd.DataFrame, x: str = 'bloco', y: str = 'distancia',
                             cor: Optional[str] = 'braco', titulo: str = None,
                             figsize: Tuple[int, int] = (10, 6),
                             salvar: str = None) -> plt.Figure:
    """
    Cria o gráfico da distância de Hamming média por bloco, um traço por braço.

    Args:
        df: DataFrame com uma linha por (réplica, bloco, braço)
        x: Coluna do eixo x
        y: Coluna da distância
        cor: Coluna que separa os braços do experimento
        titulo: Título do gráfico (opcional)
        figsize: Tamanho da figura (largura, altura)
        salvar: Caminho para salvar o gráfico (opcional)

    Returns:
        Objeto Figure do matplotlib
    """
    fig, ax = plt.subplots(figsize=figsize)
    sns.lineplot(data=df, x=x, y=y, hue=cor, marker='o', errorbar=('ci', 95), ax=ax)
    ax.set_title(titulo or 'Distância de Hamming por bloco')
    ax.set_xlabel(x)
    ax.set_ylabel(y)
    return _finalizar(fig, salvar)


def grafico_escala(regressor: Sequence[float], tempos: Sequence[float], inclinacao: float = None,
                   intercepto: float = None, rotulo_x: str = 'n ln n', titulo: str = None,
                   figsize: Tuple[int, int] = (8, 6), salvar: str = None) -> plt.Figure:
    """
    Cria o gráfico log-log do tempo de coalescência contra o regressor do
    ajuste (n ln n por padrão), com a reta ajustada.
    """
    fig, ax = plt.subplots(figsize=figsize)
    ax.loglog(regressor, tempos, 'o', label='medido')
    if inclinacao is not None and len(regressor):
        x = np.asarray(regressor, dtype=float)
        if intercepto is None:
            intercepto = np.mean(np.log(np.asarray(tempos, dtype=float)) - inclinacao * np.log(x))
        ax.loglog(x, np.exp(intercepto) * x ** inclinacao, '--', label=f'inclinação {inclinacao:.2f}')
        ax.legend()
    ax.set_title(titulo or 'Tempo de coalescência por tamanho')
    ax.set_xlabel(rotulo_x)
    ax.set_ylabel('passos')
    return _finalizar(fig, salvar)



def grafico_histograma_p(tamanhos_p: Sequence[int], titulo: str = None, bins: int = 30,
                         figsize: Tuple[int, int] = (10, 6), salvar: str = None) -> plt.Figure:
    """Cria o histograma de |𝒫| sobre as réplicas."""
    fig, ax = plt.subplots(figsize=figsize)
    sns.histplot(x=list(tamanhos_p), bins=bins, ax=ax)
    ax.set_yscale('log')
    ax.set_title(titulo or 'Distribuição de |P|')
    ax.set_xlabel('|P|')
    ax.set_ylabel('frequência')
    return _finalizar(fig, salvar)
