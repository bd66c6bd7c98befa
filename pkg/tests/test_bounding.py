"""
Testes para a cadeia limitante.

Este módulo contém testes unitários para a classificação de cores, o passo
da cadeia limitante e o predicado BC com seus três motivos de falha.
"""

import os
import sys
import unittest

import numpy as np

# Adicionar diretório raiz ao path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Importar módulo a ser testado
from src.glauber.bounding import (BLOQUEADA, DISPONIVEL, MOTIVO_CICLO, MOTIVO_NENHUM,
                                  MOTIVO_REPROPAGACAO, MOTIVO_TAMANHO, PERIGOSA, BoundingState,
                                  _entrada_preserva_arvore, bounding_step, classify,
                                  cores_de_mascara, mascara, run_bounding_chain)
from src.glauber.dynamics import (Labeling, UpdateSequence, evolve, greedy_coloring,
                                  sample_update_sequence)
from src.glauber.erros import ErroEntrada
from src.glauber.graphlib import gen_graph


def _par(g, k, rng, burn_in=50):
    x0 = evolve(g, greedy_coloring(g, k), sample_update_sequence(g.n, k, burn_in, rng)).final
    z = int(rng.integers(g.n))
    outras = [c for c in range(1, k + 1) if c != x0[z]]
    return x0, x0.with_color(z, outras[int(rng.integers(len(outras)))])


class TestClassificacao(unittest.TestCase):
    """Testes para classify e bounding_step."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.g = gen_graph("path", {"n": 3})
        self.z = BoundingState([mascara({1, 2}), mascara({3}), mascara({1})])

    def test_mascaras(self):
        """Testa a conversão entre conjuntos e máscaras."""
        self.assertEqual(cores_de_mascara(mascara({1, 4})), {1, 4})
        self.assertEqual(self.z.multiplos, {0})
        self.assertTrue(self.z.contem(0, 2))
        with self.assertRaises(ErroEntrada):
            BoundingState([0, mascara({1})])

    def test_classes(self):
        """Testa cores disponíveis, bloqueadas e perigosas."""
        self.assertEqual(classify(self.g, self.z, 1, 1), PERIGOSA)
        self.assertEqual(classify(self.g, self.z, 1, 2), PERIGOSA)
        self.assertEqual(classify(self.g, self.z, 1, 3), DISPONIVEL)

        z = BoundingState([mascara({1}), mascara({3}), mascara({2, 4})])
        self.assertEqual(classify(self.g, z, 1, 1), BLOQUEADA)
        self.assertEqual(classify(self.g, z, 1, 2), PERIGOSA)

    def test_perigosa_tem_precedencia(self):
        """Testa cor presente em vizinho simples e em vizinho múltiplo."""
        z = BoundingState([mascara({1}), mascara({3}), mascara({1, 2})])
        self.assertEqual(classify(self.g, z, 1, 1), PERIGOSA)

    def test_passo(self):
        """Testa as três regras de atualização sem alterar o estado de entrada."""
        novo = bounding_step(self.g, self.z, (1, 1))
        self.assertEqual(novo.cores(1), {1, 2, 3})
        self.assertEqual(novo.multiplos, {0, 1})
        self.assertEqual(self.z.cores(1), {3})

        self.assertEqual(bounding_step(self.g, self.z, (1, 4)).cores(1), {4})

        z = BoundingState([mascara({1}), mascara({3}), mascara({2, 4})])
        self.assertEqual(bounding_step(self.g, z, (1, 1)).cores(1), {3})


class TestPredicadoBC(unittest.TestCase):
    """Testes para run_bounding_chain."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.caminho = gen_graph("path", {"n": 3})
        self.x0 = Labeling([1, 2, 1], 3)
        self.y0 = Labeling([1, 3, 1], 3)
        self.sigma = UpdateSequence.from_steps([(0, 2), (0, 3)])

    def test_sem_passos(self):
        """Testa a execução vazia."""
        tr = run_bounding_chain(gen_graph("path", {"n": 4}), Labeling([1, 2, 1, 2], 3),
                                Labeling([3, 2, 1, 2], 3), UpdateSequence([], []))
        self.assertTrue(tr.bc_verdict)
        self.assertEqual(tr.failure_reason, MOTIVO_NENHUM)
        self.assertEqual(tr.p_ate(0), {0})

    def test_ciclo_curto_na_raiz(self):
        """Testa falha por ciclo já em t=0 no ciclo de 4 vértices."""
        tr = run_bounding_chain(gen_graph("cycle", {"n": 4}), Labeling([1, 2, 1, 2], 3),
                                Labeling([3, 2, 1, 2], 3), UpdateSequence([], []))
        self.assertFalse(tr.bc)
        self.assertEqual(tr.motivo, MOTIVO_CICLO)
        self.assertEqual(tr.tempo_falha, 0)

    def test_repropagacao(self):
        """Testa v perigoso depois de já ter entrado em 𝒫."""
        tr = run_bounding_chain(self.caminho, self.x0, self.y0, self.sigma)
        self.assertEqual(tr.classes, [PERIGOSA, PERIGOSA])
        self.assertEqual(tr.fonte(1), 1)
        self.assertEqual(tr.zsize(1), 3)
        self.assertEqual(tr.motivo, MOTIVO_REPROPAGACAO)
        self.assertEqual(tr.tempo_falha, 2)
        self.assertEqual(tr.uniao, {0, 1})

    def test_teto_de_tamanho(self):
        """Testa falha quando |𝒫| passa de p_max."""
        tr = run_bounding_chain(self.caminho, self.x0, self.y0, self.sigma, p_max=1)
        self.assertEqual(tr.motivo, MOTIVO_TAMANHO)
        self.assertEqual(tr.tempo_falha, 1)
        # a trajetória de Z é completada mesmo após a falha
        self.assertEqual(len(tr.classes), 2)

    def test_par_nao_vizinho(self):
        """Testa rotulações que diferem em dois vértices."""
        with self.assertRaises(ErroEntrada):
            run_bounding_chain(self.caminho, self.x0, Labeling([2, 3, 1], 3), self.sigma)

    def test_entrada_preserva_arvore(self):
        """Testa a verificação incremental de ciclos em C_12."""
        ciclo = gen_graph("cycle", {"n": 12})
        self.assertTrue(_entrada_preserva_arvore(ciclo, set(range(7)), 7))
        self.assertFalse(_entrada_preserva_arvore(ciclo, set(range(8)), 8))
        self.assertFalse(_entrada_preserva_arvore(ciclo, {0, 1, 2, 4}, 3))

    def test_tamanho_maximo_no_ciclo(self):
        """Testa que BC verdadeiro em C_12 implica |𝒫| <= 8."""
        ciclo = gen_graph("cycle", {"n": 12})
        rng = np.random.default_rng(3)
        for _ in range(30):
            x0, y0 = _par(ciclo, 3, rng)
            tr = run_bounding_chain(ciclo, x0, y0, sample_update_sequence(12, 3, 150, rng))
            if tr.bc:
                self.assertLessEqual(len(tr.uniao), 8)
            else:
                self.assertIn(tr.motivo, (MOTIVO_CICLO, MOTIVO_REPROPAGACAO))

    def test_simetria(self):
        """Testa que trocar x0 e y0 não altera a execução."""
        g = gen_graph("random_tree", {"n": 25}, seed=2)
        rng = np.random.default_rng(8)
        for _ in range(10):
            x0, y0 = _par(g, 4, rng)
            sigma = sample_update_sequence(g.n, 4, 100, rng)
            a = run_bounding_chain(g, x0, y0, sigma)
            b = run_bounding_chain(g, y0, x0, sigma)
            self.assertEqual((a.bc, a.motivo, a.classes, a.uniao), (b.bc, b.motivo, b.classes, b.uniao))

    def test_estados_reproduzem_passos(self):
        """Testa estados() contra a aplicação de bounding_step passo a passo."""
        g = gen_graph("random_tree", {"n": 20}, seed=4)
        rng = np.random.default_rng(1)
        x0, y0 = _par(g, 4, rng)
        sigma = sample_update_sequence(g.n, 4, 80, rng)
        tr = run_bounding_chain(g, x0, y0, sigma)
        z = BoundingState.inicial(x0, y0)
        for t, estado in tr.estados():
            if t > 0:
                z = bounding_step(g, z, sigma.step(t))
            self.assertEqual(estado, z)
        self.assertEqual(tr.estado_em(40), tr.estado_em(40).copia())

    def test_cobertura(self):
        """Testa X_t(v) ∈ Z_t(v) sempre que BC é verdadeiro."""
        g = gen_graph("random_tree", {"n": 30}, seed=6)
        rng = np.random.default_rng(2)
        verificados = 0
        for _ in range(15):
            x0, y0 = _par(g, 5, rng)
            sigma = sample_update_sequence(g.n, 5, 120, rng)
            tr = run_bounding_chain(g, x0, y0, sigma)
            if not tr.bc:
                continue
            traj = evolve(g, x0, sigma)
            for t, z in tr.estados():
                for v in range(g.n):
                    self.assertTrue(z.contem(v, traj.color(v, t)), msg=f"t={t}, v={v}")
                    if t == 0:
                        self.assertTrue(z.contem(v, y0[v]))
            verificados += 1
        self.assertGreater(verificados, 0)

    def test_dicionario(self):
        """Testa a serialização do registro."""
        tr = run_bounding_chain(self.caminho, self.x0, self.y0, self.sigma)
        dados = tr.to_dict()
        self.assertFalse(dados["bc"])
        self.assertEqual(dados["failure_reason"], MOTIVO_REPROPAGACAO)
        self.assertEqual(len(dados["passos"]), 2)
        self.assertEqual(dados["P"], [0, 1])


if __name__ == '__main__':
    unittest.main()
