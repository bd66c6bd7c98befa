"""
Testes para o módulo de processamento de resultados.

Este módulo contém testes unitários para as funções estatísticas e de
persistência usadas pelos experimentos.
"""

import json
import math
import os
import sys
import tempfile
import unittest

import numpy as np
import pandas as pd

# Adicionar diretório raiz ao path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Importar módulo a ser testado
from src.utils.data_processing import (ajustar_inclinacao, digest_relatorio,
                                       distancia_variacao_total, intervalo_bootstrap,
                                       intervalo_confianca_normal, para_json,
                                       resumir_replicas, salvar_dados, salvar_json,
                                       teste_duas_amostras)


class TestEstatisticas(unittest.TestCase):
    """Testes para as funções estatísticas."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.rng = np.random.default_rng(42)
        self.amostra = self.rng.normal(10.0, 2.0, size=500)

    def test_intervalo_normal(self):
        """Testa o intervalo normal para a média."""
        media, inferior, superior = intervalo_confianca_normal(self.amostra)
        self.assertAlmostEqual(media, float(self.amostra.mean()))
        self.assertLess(inferior, media)
        self.assertGreater(superior, media)
        self.assertEqual(intervalo_confianca_normal([3.0]), (3.0, 3.0, 3.0))
        with self.assertRaises(ValueError):
            intervalo_confianca_normal([])

    def test_intervalo_bootstrap(self):
        """Testa o intervalo bootstrap e sua reprodutibilidade."""
        a = intervalo_bootstrap(self.amostra, reamostras=300, seed=1)
        b = intervalo_bootstrap(self.amostra, reamostras=300, seed=1)
        self.assertEqual(a, b)
        self.assertLessEqual(a[1], a[0])
        self.assertGreaterEqual(a[2], a[0])
        self.assertEqual(intervalo_bootstrap([2.0, 2.0, 2.0]), (2.0, 2.0, 2.0))

    def test_variacao_total(self):
        """Testa a distância de variação total."""
        self.assertAlmostEqual(distancia_variacao_total([0.5, 0.5], [1.0, 0.0]), 0.5)
        self.assertEqual(distancia_variacao_total([0.2, 0.8], [0.2, 0.8]), 0.0)
        with self.assertRaises(ValueError):
            distancia_variacao_total([1.0], [0.5, 0.5])

    def test_inclinacao(self):
        """Testa o ajuste log-log em uma lei de potência exata."""
        x = [128, 256, 512, 1024]
        y = [3.0 * n ** 1.1 for n in x]
        ajuste = ajustar_inclinacao(x, y)
        self.assertAlmostEqual(ajuste["inclinacao"], 1.1, places=6)
        self.assertAlmostEqual(ajuste["intercepto"], math.log(3.0), places=6)
        self.assertAlmostEqual(ajuste["r2"], 1.0, places=6)
        with self.assertRaises(ValueError):
            ajustar_inclinacao([1, 2], [1, 2])

    def test_duas_amostras(self):
        """Testa o teste KS entre amostras da mesma distribuição e de distribuições distintas."""
        iguais = teste_duas_amostras(self.amostra, self.rng.normal(10.0, 2.0, size=500))
        diferentes = teste_duas_amostras(self.amostra, self.rng.normal(20.0, 2.0, size=500))
        self.assertGreater(iguais["p_valor"], 0.001)
        self.assertLess(diferentes["p_valor"], 1e-10)


class TestPersistencia(unittest.TestCase):
    """Testes para agregação e gravação de resultados."""

    def setUp(self):
        """Configuração inicial para os testes."""
        self.df = pd.DataFrame({
            'braco': ['nm', 'nm', 'jerrum', 'jerrum'],
            'distancia': [1, 3, 2, 2],
        })

    def test_resumir_replicas(self):
        """Testa a agregação por braço."""
        resumo = resumir_replicas(self.df, 'braco', 'distancia')
        self.assertIn('distancia_mean', resumo.columns)
        linha = resumo[resumo['braco'] == 'nm'].iloc[0]
        self.assertEqual(linha['distancia_mean'], 2.0)
        self.assertEqual(linha['distancia_count'], 2)

    def test_salvar_dados(self):
        """Testa a gravação em CSV e a recusa de formatos desconhecidos."""
        with tempfile.TemporaryDirectory() as tmp:
            caminho = salvar_dados(self.df, os.path.join(tmp, 'registros'))
            self.assertTrue(caminho.endswith('.csv'))
            self.assertEqual(len(pd.read_csv(caminho)), 4)
            self.assertEqual(salvar_dados(pd.DataFrame(), os.path.join(tmp, 'vazio')), "")
            with self.assertRaises(ValueError):
                salvar_dados(self.df, os.path.join(tmp, 'x'), formato='xlsx')

    def test_json_canonico(self):
        """Testa tipos numpy, conjuntos e ordem das chaves."""
        obj = {'b': np.int64(2), 'a': {3, 1}, 'c': np.array([1.5])}
        self.assertEqual(para_json(obj), '{"a": [1, 3], "b": 2, "c": [1.5]}')
        self.assertEqual(digest_relatorio({'x': 1, 'y': 2}), digest_relatorio({'y': 2, 'x': 1}))
        with tempfile.TemporaryDirectory() as tmp:
            caminho = salvar_json(obj, os.path.join(tmp, 'sub', 'r.json'))
            with open(caminho, encoding='utf-8') as f:
                self.assertEqual(json.load(f)['a'], [1, 3])


if __name__ == '__main__':
    unittest.main()
