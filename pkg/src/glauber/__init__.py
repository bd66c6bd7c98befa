"""
Dinâmica de Glauber para colorações e acoplamento não markoviano.

Este pacote contém os grafos e geradores, a dinâmica de Metropolis, a cadeia
limitante com o predicado BC, o acoplamento global entre cadeias vizinhas e
as estatísticas de uniformidade local.
"""

from .erros import ErroContrato, ErroEntrada, ErroGeracaoGrafo, ErroGlauber
from .graphlib import (
    DiGraph, Graph, ball, build_g_in, completion_is_acyclic, distancias, gen_graph, girth,
    induced_is_acyclic, neighborhood, read_edge_list, sphere, write_edge_list,
)
from .dynamics import (
    CTEvent, CTResult, Labeling, Trajectory, UpdateSequence, available_colors,
    available_colors_excluding, count_proper_colorings, ct_simulate,
    enumerate_proper_colorings, evolve, evolve_batch, greedy_coloring, hamming,
    hamming_interpolation, metropolis_step, read_labeling, read_sequence,
    sample_update_sequence, transition_matrix, write_labeling, write_sequence,
)
from .bounding import BoundingState, BoundingTrace, bounding_step, classify, run_bounding_chain
from .coupling import (
    CouplingResult, Epoch, NMContext, avoid_swap, build_alpha_beta, contexto_nm, epoch,
    exchangeable, global_coupling, jerrum_transform, nm_involution_check, nm_prelim,
    nm_transform, nm_well_defined, reverse_check,
)
from .uniformity import (
    CheckLimits, UniformityReport, above_suspicion, bias_field, blocked_intersection_target,
    blocked_set, eps_uniform_at, lu_event, weighted_unblocked_sum,
)

__all__ = [
    # Erros
    'ErroGlauber', 'ErroEntrada', 'ErroGeracaoGrafo', 'ErroContrato',

    # Grafos
    'Graph', 'DiGraph', 'distancias', 'ball', 'sphere', 'neighborhood', 'girth',
    'induced_is_acyclic', 'completion_is_acyclic', 'build_g_in', 'gen_graph',
    'write_edge_list', 'read_edge_list',

    # Dinâmica
    'Labeling', 'UpdateSequence', 'Trajectory', 'CTEvent', 'CTResult',
    'available_colors', 'available_colors_excluding', 'metropolis_step', 'evolve',
    'evolve_batch', 'sample_update_sequence', 'ct_simulate', 'hamming',
    'hamming_interpolation', 'enumerate_proper_colorings', 'count_proper_colorings',
    'transition_matrix', 'greedy_coloring', 'write_labeling', 'read_labeling',
    'write_sequence', 'read_sequence',

    # Cadeia limitante
    'BoundingState', 'BoundingTrace', 'classify', 'bounding_step', 'run_bounding_chain',

    # Acoplamento
    'Epoch', 'NMContext', 'CouplingResult', 'epoch', 'exchangeable', 'avoid_swap',
    'build_alpha_beta', 'contexto_nm', 'nm_prelim', 'nm_well_defined', 'nm_transform',
    'nm_involution_check', 'jerrum_transform', 'global_coupling', 'reverse_check',

    # Uniformidade
    'CheckLimits', 'UniformityReport', 'blocked_set', 'blocked_intersection_target',
    'weighted_unblocked_sum', 'eps_uniform_at', 'lu_event', 'above_suspicion', 'bias_field',
]
