"""
Módulo de utilidades para o projeto.

Este pacote contém funções utilitárias para estatística, persistência de
relatórios e visualização dos experimentos.
"""

from .data_processing import *
from .visualization import *

__all__ = [
    # Data Processing
    'intervalo_confianca_normal', 'intervalo_bootstrap', 'distancia_variacao_total',
    'ajustar_inclinacao', 'teste_duas_amostras', 'resumir_replicas', 'salvar_dados',
    'para_json', 'salvar_json', 'digest_relatorio',

    # Visualization
    'configurar_tema', 'grafico_distancia_blocos', 'grafico_escala', 'grafico_histograma_p',
]
