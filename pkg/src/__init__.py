"""
Módulo principal do projeto.

Este módulo reúne a dinâmica de Glauber para colorações, a cadeia limitante,
o acoplamento não markoviano e o harness de experimentos.
"""

# Importar módulos do projeto
from src.glauber import (
    Graph, DiGraph, gen_graph, Labeling, UpdateSequence, Trajectory, evolve,
    metropolis_step, run_bounding_chain, global_coupling, reverse_check,
    eps_uniform_at, lu_event, ErroEntrada, ErroContrato,
)
from src.harness import ExperimentConfig, ExperimentReport, run_experiment, main
from src.utils import configurar_tema, intervalo_confianca_normal, salvar_dados

# Configurações globais
__version__ = "0.1.0"
__author__ = "Equipe Acoplamento Glauber"
