"""
Interface de linha de comando dos experimentos.

Subcomandos:
    simulate     Simula a dinâmica de Glauber e salva a rotulação final
    couple       Roda o acoplamento global para um par de rotulações vizinhas
    verify       Verificação de bijetividade, involução e dominação
    uniformity   Auditoria de uniformidade local
    mix          Experimentos de mistura (--experimento)

Códigos de saída: 0 sucesso, 1 verificação falhou, 2 entrada inválida.
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

import numpy as np

from src.glauber.coupling import MODO_IDENTIDADE, MODO_JERRUM, MODO_NM, global_coupling
from src.glauber.dynamics import (evolve, greedy_coloring, read_labeling, read_sequence,
                                  sample_update_sequence, write_labeling)
from src.glauber.erros import ErroContrato, ErroEntrada
from src.utils.data_processing import salvar_json

from .config import ExperimentConfig
from .experiments import (configurar_progresso, estado_inicial, par_vizinho, run_experiment)

logger = logging.getLogger(__name__)

SUCESSO, FALHA_VERIFICACAO, ENTRADA_INVALIDA = 0, 1, 2

EXPERIMENTOS_MIX = ("stationarity", "contraction", "block", "scaling", "identity", "diagnostics")


def _parser() -> argparse.ArgumentParser:
    comum = argparse.ArgumentParser(add_help=False)
    comum.add_argument("--graph", dest="grafo", help="cycle:n, path:n, star:Δ, tree:n, regular:n:Δ:g ou file:<caminho>")
    comum.add_argument("--k", type=int, help="número de cores")
    comum.add_argument("--seed", type=int, help="semente raiz")
    comum.add_argument("--steps", dest="passos", type=int, help="número de passos")
    comum.add_argument("--replicas", type=int, help="réplicas independentes")
    comum.add_argument("--p-max", dest="p_max", type=int, help="teto de |P| no predicado BC")
    comum.add_argument("--config", help="arquivo JSON com a configuração")
    comum.add_argument("--out", dest="saida", help="diretório de saída")
    comum.add_argument("--format", dest="formato", choices=("csv", "json"), help="formato das tabelas")
    comum.add_argument("--checkpoints", type=int, help="pontos de verificação")
    comum.add_argument("--plots", dest="graficos", action="store_true", default=None,
                       help="gera gráficos PNG")
    comum.add_argument("--log-level", default=os.getenv("GLAUBER_LOG_LEVEL", "INFO").upper(),
                       choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    comum.add_argument("--quiet", action="store_true", help="sem barras de progresso")

    parser = argparse.ArgumentParser(prog="glauber", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="comando", required=True)

    sub.add_parser("simulate", parents=[comum], help="simula a dinâmica")

    couple = sub.add_parser("couple", parents=[comum], help="acoplamento global de um par")
    couple.add_argument("--x0", help="rotulação inicial de X (arquivo 'n k' + cores)")
    couple.add_argument("--y0", help="rotulação inicial de Y")
    couple.add_argument("--sequence", help="sequência de atualizações (arquivo)")
    couple.add_argument("--mode", dest="modo", default=MODO_NM,
                        choices=(MODO_NM, MODO_JERRUM, MODO_IDENTIDADE))
    couple.add_argument("--strict", dest="estrito", action="store_true",
                        help="aborta na primeira violação de contrato")

    verify = sub.add_parser("verify", parents=[comum], help="verificação de bijetividade")
    verify.add_argument("--samples", dest="amostras_sigma", type=int,
                        help="sequências sorteadas por verificação")

    sub.add_parser("uniformity", parents=[comum], help="auditoria de uniformidade local")

    mix = sub.add_parser("mix", parents=[comum], help="experimentos de mistura")
    mix.add_argument("--experimento", required=True, choices=EXPERIMENTOS_MIX)
    return parser


def _configuracao(args: argparse.Namespace) -> ExperimentConfig:
    base = ExperimentConfig.from_json(args.config) if args.config else ExperimentConfig()
    alteracoes = {c: getattr(args, c, None) for c in
                  ("grafo", "k", "seed", "passos", "replicas", "p_max", "saida", "formato",
                   "checkpoints", "graficos", "amostras_sigma")}
    return base.atualizar(**alteracoes)


def _simulate(cfg: ExperimentConfig) -> int:
    g = cfg.construir_grafo()
    passos = cfg.passos_ou(cfg.passos_burn_in(g.n))
    x0 = greedy_coloring(g, cfg.k)
    sigma = sample_update_sequence(g.n, cfg.k, passos, cfg.seed)
    marcas = [round(i * passos / cfg.checkpoints) for i in range(1, cfg.checkpoints + 1)]
    traj = evolve(g, x0, sigma, checkpoints=marcas)
    final = traj.final
    write_labeling(final, os.path.join(cfg.saida, "simulate_final.txt"))
    salvar_json({
        "config": cfg.to_dict(),
        "inicial": x0.tolist(),
        "final": final.tolist(),
        "aceitos": int(traj.accepted.sum()),
        "propria": final.is_proper(g),
        "checkpoints": {str(t): traj.labeling_at(t).tolist() for t in marcas},
    }, os.path.join(cfg.saida, "simulate_resumo.json"))
    logger.info("Simulação: %d passos, %d aceitos", passos, int(traj.accepted.sum()))
    return SUCESSO


def _couple(cfg: ExperimentConfig, args: argparse.Namespace) -> int:
    g = cfg.construir_grafo()
    if args.x0:
        x0 = read_labeling(args.x0)
    else:
        x0 = estado_inicial(g, cfg.k, np.random.default_rng(cfg.seed), cfg.passos_burn_in(g.n))
    if args.y0:
        y0 = read_labeling(args.y0)
    else:
        y0, _ = par_vizinho(g, x0, np.random.default_rng(cfg.seed + 1))
    if args.sequence:
        sigma = read_sequence(args.sequence).validar(g.n, x0.k)
    else:
        sigma = sample_update_sequence(g.n, x0.k, cfg.passos_ou(cfg.t_cp(g.n)), cfg.seed)
    res = global_coupling(g, x0, y0, sigma, cfg.p_max, args.modo, verificar=True, estrito=args.estrito)
    salvar_json(res.to_dict(), os.path.join(cfg.saida, "couple_resumo.json"))
    logger.info("Acoplamento %s: BC=%s, NM aplicados=%d, |X⊕Y| final=%d", args.modo, res.bc_true,
                len(res.nm_applied), len(res.disagreement_final))
    return FALHA_VERIFICACAO if res.violacoes else SUCESSO


def _relatorio(nome: str, cfg: ExperimentConfig) -> int:
    relatorio = run_experiment(nome, cfg)
    caminhos = relatorio.salvar(cfg.saida, cfg.formato)
    logger.info("Relatório %s (digest %s): %s", nome, relatorio.digest[:12], caminhos)
    return SUCESSO if relatorio.ok else FALHA_VERIFICACAO


def main(argv: Optional[List[str]] = None) -> int:
    """Ponto de entrada; devolve o código de saída."""
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return SUCESSO if e.code == 0 else ENTRADA_INVALIDA

    logging.basicConfig(level=getattr(logging, args.log_level, logging.INFO),
                        format="%(asctime)s %(name)s %(levelname)s: %(message)s")
    configurar_progresso(not args.quiet)

    try:
        cfg = _configuracao(args)
        if args.comando == "simulate":
            return _simulate(cfg)
        if args.comando == "couple":
            return _couple(cfg, args)
        if args.comando == "verify":
            return _relatorio("verify", cfg)
        if args.comando == "uniformity":
            return _relatorio("uniformity", cfg)
        return _relatorio(args.experimento, cfg)
    except ErroEntrada as e:
        logger.error("Entrada inválida: %s", e)
        return ENTRADA_INVALIDA
    except OSError as e:
        logger.error("Erro de arquivo: %s", e)
        return ENTRADA_INVALIDA
    except ErroContrato as e:
        logger.error("Violação de contrato: %s", e)
        return FALHA_VERIFICACAO


if __name__ == "__main__":
    sys.exit(main())
