"""
Testes para as estatísticas de uniformidade local.
"""

import math
import os
import sys
import unittest

import numpy as np

# Adicionar diretório raiz ao path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Importar módulo a ser testado
from src.glauber.dynamics import (Labeling, UpdateSequence, ct_simulate, evolve, greedy_coloring,
                                  sample_update_sequence)
from src.glauber.erros import ErroEntrada
from src.glauber.graphlib import gen_graph
from src.glauber.uniformity import (CONDICAO_CARGA, CONDICAO_DISPONIVEIS, CheckLimits,
                                    above_suspicion, bias_field, blocked_intersection_target,
                                    blocked_set, eps_uniform_at, lu_event, raio_lu,
                                    weighted_unblocked_sum)


class TestEstatisticas(unittest.TestCase):
    """Testes para os conjuntos bloqueados e as somas ponderadas."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.g = gen_graph("cycle", {"n": 4})
        self.x = Labeling([1, 2, 3, 2], 4)

    def test_conjunto_bloqueado(self):
        """Testa S_{c,i} com v excluído da contagem."""
        self.assertEqual(blocked_set(self.g, self.x, 0, {1, 3}, 3, 1), {1, 3})
        self.assertEqual(blocked_set(self.g, self.x, 0, {1, 3}, 3, 0), frozenset())
        self.assertEqual(blocked_set(self.g, self.x, 0, {1, 3}, 4, 0), {1, 3})
        with self.assertRaises(ErroEntrada):
            blocked_set(self.g, self.x, 0, {2}, 3, 1)

    def test_alvo_poisson(self):
        """Testa o valor esperado da interseção de bloqueios."""
        alvo = blocked_intersection_target(self.g, 0, [1, 3], 0, 0, 4)
        self.assertAlmostEqual(alvo, 2 * math.exp(-1))
        self.assertEqual(blocked_intersection_target(self.g, 0, [], 1, 1, 4), 0.0)
        with self.assertRaises(ErroEntrada):
            blocked_intersection_target(self.g, 0, [1], -1, 0, 4)

    def test_soma_ponderada(self):
        """Testa a soma de e^{d(w)/k} sobre vizinhos desbloqueados."""
        self.assertAlmostEqual(weighted_unblocked_sum(self.g, self.x, 0, 2), 2 * math.exp(0.5))
        self.assertEqual(weighted_unblocked_sum(self.g, self.x, 0, 1), 0.0)

    def test_raio(self):
        """Testa o raio padrão em potências exatas e graus pequenos."""
        self.assertEqual(raio_lu(gen_graph("star", {"delta": 1024})), 2)
        self.assertEqual(raio_lu(gen_graph("cycle", {"n": 5})), 1)


class TestLimites(unittest.TestCase):
    """Testes para CheckLimits."""

    def test_validacao(self):
        """Testa parâmetros inválidos."""
        with self.assertRaises(ErroEntrada):
            CheckLimits(i_max=-1)
        with self.assertRaises(ErroEntrada):
            CheckLimits(pair_budget=0)
        with self.assertRaises(ErroEntrada):
            CheckLimits(raio=-2)

    def test_pares(self):
        """Testa o escopo de pares de cores."""
        self.assertEqual(CheckLimits(cores=(3, 1)).pares(5), [(1, 3)])
        self.assertEqual(len(CheckLimits(exaustivo=True).pares(4)), 6)
        sorteados = CheckLimits(pair_budget=4, seed=2).pares(4)
        self.assertEqual(len(sorteados), 4)
        self.assertEqual(len(set(sorteados)), 4)
        self.assertEqual(sorteados, CheckLimits(pair_budget=4, seed=2).pares(4))


class TestUniformidade(unittest.TestCase):
    """Testes para eps_uniform_at e lu_event."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.g = gen_graph("cycle", {"n": 10})
        self.x = greedy_coloring(self.g, 5)

    def test_relatorio(self):
        """Testa a estrutura do relatório em B_1(0)."""
        rel = eps_uniform_at(self.g, self.x, 0, 1, 10.0, CheckLimits(cores=(1, 2), i_max=1))
        self.assertTrue(rel.ok)
        self.assertEqual(rel.falhas, [])
        df = rel.to_frame()
        self.assertEqual(set(df["v"]), {0, 1, 9})
        self.assertEqual(len(df[df["condicao"] == CONDICAO_DISPONIVEIS]), 3)
        self.assertEqual(rel.fracao_ok(CONDICAO_CARGA), 1.0)
        self.assertIn("fracao_ok", rel.to_dict())

    def test_tolerancia_minima(self):
        """Testa falha com ε muito pequeno."""
        rel = eps_uniform_at(self.g, self.x, 0, 1, 1e-9)
        self.assertFalse(rel.ok)
        self.assertLess(rel.fracao_ok(CONDICAO_DISPONIVEIS), 1.0)

    def test_evento_lu(self):
        """Testa o evento ao longo de uma trajetória."""
        sigma = sample_update_sequence(10, 5, 100, 3)
        ok, falha = lu_event(self.g, self.x, sigma, 10.0, 0)
        self.assertTrue(ok)
        self.assertIsNone(falha)

        ok, falha = lu_event(self.g, self.x, sigma, 1e-9, 0)
        self.assertFalse(ok)
        self.assertEqual(falha["t"], 0)


class TestCampoDeVies(unittest.TestCase):
    """Testes para above_suspicion e bias_field."""

    def test_c_leveza(self):
        """Testa a condição C-leve em um ciclo bicolorido."""
        g = gen_graph("cycle", {"n": 6})
        x = Labeling([1, 2, 1, 2, 1, 2], 3)
        self.assertTrue(above_suspicion(g, x, 0, 1, 1.0))
        self.assertFalse(above_suspicion(g, x, 0, 1, 0.5))
        with self.assertRaises(ErroEntrada):
            above_suspicion(gen_graph("path", {"n": 2}), Labeling([1, 2], 2), 0, 1, 1.0)

    def test_soma_sobre_cores(self):
        """Testa que Σ_c P(U_T, v, c) conta os vizinhos já recoloridos."""
        g = gen_graph("random_tree", {"n": 40}, seed=1)
        x0 = greedy_coloring(g, 6)
        traj = evolve(g, x0, sample_update_sequence(g.n, 6, 200, 5))
        for v in range(0, g.n, 7):
            total = sum(bias_field(g, traj, v, c, traj.T) for c in range(1, 7))
            recoloridos = sum(1 for w in g.neighbors(v) if traj.last_success(w, traj.T) > 0)
            self.assertAlmostEqual(total, recoloridos)

    def test_tempo_continuo(self):
        """Testa o campo em tempo contínuo e tempos inválidos."""
        g = gen_graph("cycle", {"n": 8})
        x0 = greedy_coloring(g, 4)
        ct = ct_simulate(g, x0, 3.0, seed=2)
        valor = bias_field(g, ct, 0, 1, 3.0)
        self.assertGreaterEqual(valor, 0.0)
        self.assertEqual(bias_field(g, ct, 0, 1, 0.0), 0.0)

        traj = evolve(g, x0, UpdateSequence([], []))
        with self.assertRaises(ErroEntrada):
            bias_field(g, traj, 0, 1, 5)


if __name__ == '__main__':
    unittest.main()
