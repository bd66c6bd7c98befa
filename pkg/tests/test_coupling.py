"""
Testes para o acoplamento global.

Este módulo contém testes unitários para épocas, cores trocáveis, os mapas
complementares, as transformações de Jerrum e NM e a bijetividade de F.
"""

import os
import sys
import unittest
from unittest.mock import Mock

import numpy as np

# Adicionar diretório raiz ao path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Importar módulo a ser testado
from src.glauber.bounding import run_bounding_chain
from src.glauber.coupling import (FALHA_ALFA, FALHA_BC, FALHA_BETA, FALHA_EVITADOS,
                                  FALHA_INTERSECAO, FALHA_PRELIM, FALHA_VIZINHOS_P,
                                  MODO_IDENTIDADE, MODO_JERRUM, Epoch, NMContext, avoid_swap,
                                  build_alpha_beta, epoch, exchangeable, global_coupling,
                                  jerrum_transform, nm_involution_check, nm_prelim,
                                  nm_transform, nm_well_defined, reverse_check)
from src.glauber.dynamics import (Labeling, UpdateSequence, evolve, greedy_coloring,
                                  sample_update_sequence)
from src.glauber.erros import ErroContrato, ErroEntrada
from src.glauber.graphlib import gen_graph
from src.harness.experiments import verificacao_exaustiva


def _par(g, k, rng, burn_in=60):
    x0 = evolve(g, greedy_coloring(g, k), sample_update_sequence(g.n, k, burn_in, rng)).final
    z = int(rng.integers(g.n))
    outras = [c for c in range(1, k + 1) if c != x0[z]]
    return x0, x0.with_color(z, outras[int(rng.integers(len(outras)))])


class TestConjuntosLocais(unittest.TestCase):
    """Testes para épocas, cores trocáveis e conjuntos evitados."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.g = gen_graph("path", {"n": 3})
        sigma = UpdateSequence.from_steps([(1, 3), (0, 2), (2, 4)])
        self.traj = evolve(self.g, Labeling([1, 2, 1], 4), sigma)

    def test_epoca(self):
        """Testa a época de atualização em torno de t."""
        ep = epoch(self.traj, 1, 3)
        self.assertEqual((ep.tau_minus, ep.tau_plus), (1, 4))
        self.assertEqual(list(ep.interior()), [1, 2, 3])

        ep = epoch(self.traj, 2, 2)
        self.assertFalse(ep.definida)
        self.assertEqual(len(ep.interior()), 0)

    def test_trocaveis(self):
        """Testa Ex(w,t) com propostas vizinhas dentro da época."""
        self.assertEqual(exchangeable(self.g, self.traj, 1, 3), {3, 4})
        self.assertEqual(exchangeable(self.g, self.traj, 0, 3), {1, 2, 4})
        self.assertEqual(exchangeable(self.g, self.traj, 2, 2), frozenset())

    def test_evitados_e_troca(self):
        """Testa Avoid e Swap no tempo 3."""
        evitados, troca = avoid_swap(self.g, self.traj, frozenset({0}), 3, 3)
        self.assertEqual(evitados, {0})
        self.assertEqual(troca, (1,))

        _, troca = avoid_swap(self.g, self.traj, frozenset({0}), 3, 1)
        self.assertEqual(troca, ())

    def test_alfa_beta(self):
        """Testa o casamento posicional dos mapas complementares."""
        ex = {5: frozenset({1, 2, 4}), 3: frozenset({2, 3}), 7: frozenset({1, 6}),
              9: frozenset({5})}
        alfa, beta = build_alpha_beta((5, 3), (3, 7, 9), ex)
        self.assertEqual(alfa, {5: 3, 3: 7})
        self.assertEqual(beta[5], {2: 1, 3: 2})
        self.assertEqual(beta[3], {1: 2, 6: 3})


class TestJerrum(unittest.TestCase):
    """Testes para a troca de Jerrum."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.sigma = UpdateSequence.from_steps([(0, 1), (1, 2), (2, 3)])

    def test_troca_e_involucao(self):
        """Testa a troca dentro de H e a volta ao original."""
        trocada = jerrum_transform(self.sigma, 2, {2, 4})
        self.assertEqual(trocada.steps, [(0, 1), (1, 4), (2, 3)])
        self.assertEqual(jerrum_transform(trocada, 2, {2, 4}), self.sigma)

    def test_sem_efeito(self):
        """Testa c_t fora de H e H unitário."""
        self.assertEqual(jerrum_transform(self.sigma, 3, {1, 2}), self.sigma)
        self.assertEqual(jerrum_transform(self.sigma, 1, {1}), self.sigma)

    def test_h_invalido(self):
        """Testa H com três cores."""
        with self.assertRaises(ErroEntrada):
            jerrum_transform(self.sigma, 1, {1, 2, 3})


def _contexto(**campos):
    """Contexto NM montado à mão: t=6, H*={1,2}, c_b=2 em w=5 casado com 6."""
    base = dict(t=6, v=0, c=1, p=1, hstar=frozenset({1, 2}), P=frozenset({0, 1}), c_b=2, c_u=1,
                cor_atual={5: 2, 6: 3}, avoid=frozenset({0, 1}), B=frozenset({5}),
                alpha={5: 6}, beta={5: {3: 4}})
    base.update(campos)
    return NMContext(**base)


class TestCondicoesNM(unittest.TestCase):
    """Testes para nm_well_defined em contextos montados à mão."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.bounding = Mock(bc=True)

    def test_contexto_valido(self):
        """Testa um contexto em que todas as condições valem."""
        self.assertEqual(nm_well_defined(_contexto(), self.bounding), (True, None))

    def test_rotulo_de_cada_condicao(self):
        """Testa o rótulo da primeira condição violada."""
        casos = [
            (_contexto(c_b=None), FALHA_PRELIM),
            (_contexto(P=frozenset({0, 1, 7}), cor_atual={5: 2, 6: 3, 7: 1}), FALHA_VIZINHOS_P),
            (_contexto(avoid=frozenset({0, 1, 5})), FALHA_EVITADOS),
            (_contexto(alpha={}), FALHA_ALFA),
            (_contexto(beta={5: {3: 2}}), FALHA_BETA),
            (_contexto(beta={5: {}}), FALHA_BETA),
            (_contexto(B=frozenset({5, 6}), alpha={5: 6, 6: 7}, cor_atual={5: 2, 6: 2, 7: 3},
                       beta={5: {2: 4}, 6: {3: 4}}), FALHA_INTERSECAO),
        ]
        for ctx, rotulo in casos:
            self.assertEqual(nm_well_defined(ctx, self.bounding), (False, rotulo))

    def test_bc_falso(self):
        """Testa que BC falso impede o NM."""
        self.assertEqual(nm_well_defined(_contexto(), Mock(bc=False)), (False, FALHA_BC))

    def test_vizinho_autocasado(self):
        """Testa que w com α(w)=w não passa pela condição de β."""
        ctx = _contexto(cor_atual={5: 2}, alpha={5: 5}, beta={5: {1: 1, 2: 2, 3: 3}},
                        ex={5: frozenset({1, 2, 3})})
        self.assertEqual(nm_well_defined(ctx, self.bounding), (True, None))


class TestTransformacaoNM(unittest.TestCase):
    """Testes para as edições de nm_transform."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.sigma = UpdateSequence.from_steps(
            [(6, 3), (5, 2), (2, 5), (4, 2), (3, 5), (0, 1), (5, 5)])

    def test_edicoes_com_parceiro(self):
        """Testa τ⁻ de B e de α(B), tempos de bloqueio e a troca no tempo t."""
        ctx = _contexto(bem_definido=True,
                        epocas={5: Epoch(5, 6, 2, 8), 6: Epoch(6, 6, 1, 8)},
                        tempos_bloqueio={5: [4], 6: []})
        nova = nm_transform(self.sigma, ctx)
        self.assertEqual(nova.colors.tolist(), [1, 4, 5, 4, 5, 2, 5])
        self.assertTrue(np.array_equal(nova.vertices, self.sigma.vertices))

    def test_edicoes_autocasado(self):
        """Testa c'_{τ⁻} = c_u para w com α(w)=w."""
        ctx = _contexto(bem_definido=True, cor_atual={5: 2}, alpha={5: 5},
                        beta={5: {1: 1, 2: 2}}, epocas={5: Epoch(5, 6, 2, 8)},
                        tempos_bloqueio={5: [3]})
        nova = nm_transform(self.sigma, ctx)
        self.assertEqual(nova.colors.tolist(), [3, 1, 1, 2, 5, 2, 5])

    def test_contrato(self):
        """Testa contexto mal definido e c_t fora de H*."""
        with self.assertRaises(ErroContrato):
            nm_transform(self.sigma, _contexto())
        ctx = _contexto(bem_definido=True, t=7,
                        epocas={5: Epoch(5, 7, 2, 8), 6: Epoch(6, 7, 1, 8)},
                        tempos_bloqueio={5: [], 6: []})
        with self.assertRaises(ErroContrato):
            nm_transform(self.sigma, ctx)


class TestInstanciaNM(unittest.TestCase):
    """Testes do NM em um caminho com vizinho bloqueador autocasado."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.g = gen_graph("path", {"n": 5})
        self.x0 = Labeling([1, 3, 4, 1, 3], 4)
        self.y0 = Labeling([2, 3, 4, 1, 3], 4)
        self.sigma = UpdateSequence.from_steps([(3, 2), (1, 2), (2, 1)])
        self.traj = evolve(self.g, self.x0, self.sigma)
        self.bounding = run_bounding_chain(self.g, self.x0, self.y0, self.sigma)
        self.ctx = nm_prelim(self.g, self.traj, self.bounding, 3)

    def test_contexto(self):
        """Testa p, H*, α e as cores trocáveis no tempo 3."""
        self.assertTrue(self.bounding.bc)
        self.assertIsNotNone(self.ctx)
        self.assertEqual((self.ctx.p, self.ctx.c_b, self.ctx.c_u), (1, 2, 1))
        self.assertEqual(self.ctx.alpha, {3: 3})
        self.assertEqual(self.ctx.B, {3})
        self.assertEqual(self.ctx.ex[3], {1, 2})
        self.assertEqual(nm_well_defined(self.ctx, self.bounding), (True, None))

    def test_edicoes(self):
        """Testa c'_{τ⁻} = c_u e c'_t = X_{t-1}(p)."""
        nova = nm_transform(self.sigma, self.ctx)
        self.assertEqual(nova.steps, [(3, 1), (1, 2), (2, 2)])
        self.assertEqual(nova.step(self.ctx.tau_menos(3))[1], self.ctx.c_u)
        self.assertEqual(nova.step(3)[1], self.traj.color(self.ctx.p, 2))

    def test_involucao(self):
        """Testa NM(NM(σ)) = σ e a geometria de W."""
        check = nm_involution_check(self.g, self.x0, self.y0, self.sigma, self.ctx)
        self.assertTrue(check.segunda_bem_definida)
        self.assertTrue(check.involucao)
        self.assertTrue(check.geometria)

    def test_acoplamento_global(self):
        """Testa que F aplica o NM no tempo 3 e é revertido por F_{y0,x0}."""
        res = global_coupling(self.g, self.x0, self.y0, self.sigma)
        self.assertEqual(res.nm_applied, [3])
        self.assertEqual(res.nm_failed, [(2, FALHA_PRELIM)])
        self.assertEqual(res.violacoes, [])
        self.assertEqual(res.sigma_prime.steps, [(3, 1), (1, 1), (2, 2)])
        self.assertEqual(res.temp_sets[3], {3})
        self.assertTrue(reverse_check(self.g, self.x0, self.y0, self.sigma))

    def test_involucao_com_pai_sem_epoca(self):
        """Testa NM(NM(σ)) = σ quando p = z* nunca foi recolorido."""
        g = gen_graph("path", {"n": 3})
        x0, y0 = Labeling([1, 3, 4], 4), Labeling([2, 3, 4], 4)
        sigma = UpdateSequence.from_steps([(2, 2), (1, 2)])
        traj = evolve(g, x0, sigma)
        ctx = nm_prelim(g, traj, run_bounding_chain(g, x0, y0, sigma), 2)
        self.assertEqual(traj.last_success(0, 2), 0)
        self.assertTrue(ctx.bem_definido)
        self.assertEqual(nm_transform(sigma, ctx).steps, [(2, 1), (1, 1)])
        self.assertTrue(nm_involution_check(g, x0, y0, sigma, ctx).involucao)

        res = global_coupling(g, x0, y0, sigma)
        self.assertEqual(res.nm_applied, [2])
        self.assertEqual(res.violacoes, [])
        self.assertTrue(reverse_check(g, x0, y0, sigma))


class TestAcoplamentoGlobal(unittest.TestCase):
    """Testes para global_coupling e reverse_check."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.arvore = gen_graph("random_tree", {"n": 15}, seed=5)

    def test_modo_identidade(self):
        """Testa σ' = σ no modo identidade."""
        rng = np.random.default_rng(0)
        x0, y0 = _par(self.arvore, 5, rng)
        sigma = sample_update_sequence(self.arvore.n, 5, 45, rng)
        res = global_coupling(self.arvore, x0, y0, sigma, modo=MODO_IDENTIDADE)
        self.assertEqual(res.sigma_prime, sigma)
        self.assertEqual(set(res.casos), {"-"})
        self.assertEqual(res.nm_applied, [])

    def test_bc_falso_nao_altera(self):
        """Testa que BC falso no triângulo mantém σ."""
        g = gen_graph("cycle", {"n": 3})
        sigma = UpdateSequence.from_steps([(1, 4), (0, 1), (2, 2)])
        res = global_coupling(g, Labeling([1, 2, 3], 4), Labeling([4, 2, 3], 4), sigma)
        self.assertFalse(res.bc_true)
        self.assertEqual(res.bounding.motivo, "cycle")
        self.assertEqual(res.sigma_prime, sigma)

    def test_entradas_invalidas(self):
        """Testa par não vizinho e modo desconhecido."""
        g = gen_graph("path", {"n": 3})
        sigma = UpdateSequence.from_steps([(0, 1)])
        with self.assertRaises(ErroEntrada):
            global_coupling(g, Labeling([1, 2, 1], 3), Labeling([2, 3, 1], 3), sigma)
        with self.assertRaises(ErroEntrada):
            global_coupling(g, Labeling([1, 2, 1], 3), Labeling([3, 2, 1], 3), sigma, modo="outro")

    def test_vertices_preservados(self):
        """Testa que F só reescreve cores."""
        rng = np.random.default_rng(1)
        x0, y0 = _par(self.arvore, 5, rng)
        sigma = sample_update_sequence(self.arvore.n, 5, 60, rng)
        for modo in ("nm", MODO_JERRUM):
            res = global_coupling(self.arvore, x0, y0, sigma, modo=modo)
            self.assertTrue(np.array_equal(res.sigma_prime.vertices, sigma.vertices))
            self.assertEqual(len(res.d_sets), sigma.T + 1)

    def test_reversao_em_arvores(self):
        """Testa F_{y0,x0}(F_{x0,y0}(σ)) = σ e ausência de violações com BC verdadeiro."""
        rng = np.random.default_rng(7)
        for _ in range(25):
            x0, y0 = _par(self.arvore, 5, rng)
            sigma = sample_update_sequence(self.arvore.n, 5, 45, rng)
            self.assertTrue(reverse_check(self.arvore, x0, y0, sigma))
            res = global_coupling(self.arvore, x0, y0, sigma)
            if res.bc_true:
                self.assertEqual(res.violacoes, [])
                self.assertEqual(evolve(self.arvore, y0, res.sigma_prime).final, res.y_final)

    def test_involucao_nm(self):
        """Testa NM(NM(σ)) = σ em todo tempo em que o NM foi aplicado."""
        g = gen_graph("random_tree", {"n": 30}, seed=9)
        rng = np.random.default_rng(4)
        for _ in range(20):
            x0, y0 = _par(g, 4, rng)
            sigma = sample_update_sequence(g.n, 4, 90, rng)
            res = global_coupling(g, x0, y0, sigma)
            for t in res.nm_applied:
                check = nm_involution_check(g, x0, y0, sigma, res.contextos[t])
                self.assertTrue(check.geometria)

    def test_instancia_exaustiva(self):
        """Testa injetividade e reversão em todas as 1728 sequências do caminho."""
        resultado = verificacao_exaustiva(10 ** 5)
        self.assertEqual(resultado["total"], 1728)
        self.assertTrue(resultado["injetiva"])
        self.assertTrue(resultado["reversao_ok"])
        self.assertEqual(resultado["violacoes"], 0)


if __name__ == '__main__':
    unittest.main()
