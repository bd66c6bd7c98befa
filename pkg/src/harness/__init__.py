"""
Harness de experimentos.

Este pacote contém a configuração dos experimentos, os roteiros de
verificação e de mistura e a interface de linha de comando.
"""

from .config import ExperimentConfig, parse_grafo
from .experiments import (
    EXPERIMENTOS, ExperimentReport, block_coupling, bounding_diagnostics, configurar_progresso,
    contraction_experiment, estado_inicial, exact_drift, identity_growth, mixing_scaling,
    par_vizinho, passo_acoplado, run_experiment, stationarity_test, uniformity_audit,
    verificacao_exaustiva, verify_suite,
)
from .cli import main

__all__ = [
    # Configuração
    'ExperimentConfig', 'parse_grafo',

    # Experimentos
    'EXPERIMENTOS', 'ExperimentReport', 'run_experiment', 'configurar_progresso',
    'estado_inicial', 'par_vizinho', 'passo_acoplado', 'exact_drift',
    'verificacao_exaustiva', 'verify_suite', 'stationarity_test', 'contraction_experiment',
    'block_coupling', 'mixing_scaling', 'identity_growth', 'bounding_diagnostics',
    'uniformity_audit',

    # CLI
    'main',
]
