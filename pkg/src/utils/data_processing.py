"""
Módulo para processamento dos resultados dos experimentos.

Este módulo contém funções estatísticas (intervalos de confiança, distância
de variação total, ajuste de inclinação, testes de duas amostras) e de
persistência dos relatórios produzidos pelo harness.
"""

import hashlib
import json
import logging
import os
from typing import Any, Callable, Dict, List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import statsmodels.api as sm
from scipy import stats

logger = logging.getLogger(__name__)


def intervalo_confianca_normal(valores: Sequence[float], nivel: float = 0.95) -> Tuple[float, float, float]:
    """
    Intervalo de confiança normal para a média.

    Args:
        valores: Amostra
        nivel: Nível de confiança

    Returns:
        Tupla (média, limite inferior, limite superior)
    """
    dados = np.asarray(valores, dtype=float)
    if dados.size == 0:
        raise ValueError("Amostra vazia: não é possível calcular intervalo de confiança.")
    media = float(dados.mean())
    if dados.size < 2:
        return media, media, media
    z = stats.norm.ppf(0.5 + nivel / 2)
    erro = z * dados.std(ddof=1) / np.sqrt(dados.size)
    return media, float(media - erro), float(media + erro)


def intervalo_bootstrap(valores: Sequence[float], estatistica: Callable = np.mean,
                        reamostras: int = 1000, nivel: float = 0.95,
                        seed: Union[int, np.random.Generator, None] = None) -> Tuple[float, float, float]:
    """
    Intervalo de confiança bootstrap (percentil) para uma estatística.

    Returns:
        Tupla (estimativa, limite inferior, limite superior)
    """
    dados = np.asarray(valores, dtype=float)
    if dados.size == 0:
        raise ValueError("Amostra vazia: não é possível calcular intervalo bootstrap.")
    estimativa = float(estatistica(dados))
    if dados.size < 2 or np.all(dados == dados[0]):
        return estimativa, estimativa, estimativa
    resultado = stats.bootstrap((dados,), estatistica, n_resamples=reamostras,
                                confidence_level=nivel, method='percentile',
                                random_state=np.random.default_rng(seed))
    ic = resultado.confidence_interval
    return estimativa, float(ic.low), float(ic.high)


def distancia_variacao_total(p: Sequence[float], q: Sequence[float]) -> float:
    """
    Distância de variação total entre duas distribuições sobre o mesmo suporte.

    Raises:
        ValueError: Se os vetores tiverem tamanhos diferentes
    """
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"Distribuições com suportes diferentes: {p.shape} e {q.shape}")
    return float(0.5 * np.abs(p - q).sum())


def ajustar_inclinacao(x: Sequence[float], y: Sequence[float], log: bool = True,
                       nivel: float = 0.95) -> Dict[str, float]:
    """
    Ajusta y = a + b·x por mínimos quadrados (statsmodels OLS).

    Args:
        x: Variável explicativa
        y: Resposta
        log: Se True, ajusta em escala log-log
        nivel: Nível do intervalo para a inclinação

    Returns:
        Dicionário com inclinação, intercepto, intervalo e R²
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.size < 3:
        raise ValueError(f"São necessários ao menos 3 pontos para o ajuste, recebidos {x.size}.")
    if log:
        x, y = np.log(x), np.log(y)
    modelo = sm.OLS(y, sm.add_constant(x)).fit()
    inferior, superior = modelo.conf_int(alpha=1 - nivel)[1]
    return {
        'inclinacao': float(modelo.params[1]),
        'intercepto': float(modelo.params[0]),
        'ic_inferior': float(inferior),
        'ic_superior': float(superior),
        'r2': float(modelo.rsquared),
    }


def teste_duas_amostras(a: Sequence[float], b: Sequence[float]) -> Dict[str, float]:
    """Teste de Kolmogorov-Smirnov de duas amostras."""
    resultado = stats.ks_2samp(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    return {'estatistica': float(resultado.statistic), 'p_valor': float(resultado.pvalue)}


def resumir_replicas(df: pd.DataFrame, colunas_grupo: Union[str, List[str]],
                     colunas_valor: Union[str, List[str]]) -> pd.DataFrame:
    """
    Agrupa réplicas e calcula média, desvio padrão e contagem.

    Args:
        df: DataFrame com uma linha por réplica
        colunas_grupo: Coluna(s) para agrupar
        colunas_valor: Coluna(s) para agregar

    Returns:
        DataFrame agrupado com colunas achatadas (ex.: 'passos_mean')
    """
    if isinstance(colunas_grupo, str):
        colunas_grupo = [colunas_grupo]

    if isinstance(colunas_valor, str):
        colunas_valor = [colunas_valor]

    agg_dict = {coluna: ['mean', 'std', 'count'] for coluna in colunas_valor}
    df_agrupado = df.groupby(colunas_grupo).agg(agg_dict)
    df_agrupado.columns = [f"{coluna}_{agg}" for coluna, agg in df_agrupado.columns]
    return df_agrupado.reset_index()


def salvar_dados(df: pd.DataFrame, caminho: str, formato: str = 'csv', index: bool = False) -> str:
    """
    Salva os dados em um arquivo.

    Args:
        df: DataFrame com os dados
        caminho: Caminho para o arquivo (sem extensão)
        formato: Formato do arquivo ('csv', 'json', 'pickle')
        index: Se True, inclui o índice

    Returns:
        Caminho completo do arquivo salvo

    Raises:
        ValueError: Se o formato não for suportado
    """
    if df.empty:
        logger.warning("DataFrame vazio, nenhum arquivo será salvo.")
        return ""

    os.makedirs(os.path.dirname(os.path.abspath(caminho)), exist_ok=True)

    if formato == 'csv':
        caminho_completo = f"{caminho}.csv"
        df.to_csv(caminho_completo, index=index)
    elif formato == 'json':
        caminho_completo = f"{caminho}.json"
        df.to_json(caminho_completo, orient='records')
    elif formato == 'pickle':
        caminho_completo = f"{caminho}.pkl"
        df.to_pickle(caminho_completo)
    else:
        raise ValueError(f"Formato '{formato}' não suportado. Use 'csv', 'json' ou 'pickle'.")

    logger.info("Dados salvos em: %s", caminho_completo)
    return caminho_completo


def _serializavel(obj: Any) -> Any:
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"Objeto do tipo {type(obj).__name__} não é serializável em JSON")


def para_json(obj: Any) -> str:
    """JSON canônico (chaves ordenadas) aceitando tipos numpy e conjuntos."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, default=_serializavel)


def salvar_json(obj: Any, caminho: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(caminho)), exist_ok=True)
    with open(caminho, 'w', encoding='utf-8') as f:
        f.write(para_json(obj))
    logger.info("Relatório salvo em: %s", caminho)
    return caminho


def digest_relatorio(obj: Any) -> str:
    """SHA-256 do JSON canônico de um relatório."""
    return hashlib.sha256(para_json(obj).encode('utf-8')).hexdigest()
