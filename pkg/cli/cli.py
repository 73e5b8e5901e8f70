"""
Módulo de agrupamento dos comandos da CLI.
Define o grupo principal e registra os comandos de cada experimento.

Comandos:

- clear: Liquidação de perfis.
- dominance: Dominância do pedido máximo e equilíbrio cooperativo.
- coalition: Busca de desvios de coalizões.
- boundary: Continuidade na fronteira e viés sob ruído.
- policy: Simulação de vários períodos com faixa de penalidade.
- compare: Regras clássicas e auditoria de NLS.
"""

import logging
from typing import Dict, Optional

import click

from core.deps import get_settings
from core.errors import InvalidInputError
from schemas.scenario_schema import ReportBundle, ScenarioConfig
from .commands import boundary, clear, coalition, compare, dominance, policy
from .runner import Executor, run_experiment

COMMANDS = (clear, dominance, coalition, boundary, policy, compare)

EXECUTORES: Dict[str, Executor] = {m.comando.name: m.executar for m in COMMANDS}


def configurar_logging(verbose: bool = False) -> None:
    configuracoes = get_settings()
    logging.basicConfig(
        level=logging.DEBUG if verbose else configuracoes.LOG_LEVEL,
        format=configuracoes.LOG_FORMAT,
        force=True,
    )


@click.group()
@click.option('-v', '--verbose', is_flag=True, help='Mostra mensagens de depuração.')
def cli(verbose: bool) -> None:
    """Experimentos com a compensação de sobras proporcional ao excesso."""
    configurar_logging(verbose)


for _modulo in COMMANDS:
    cli.add_command(_modulo.comando)


def run(config: ScenarioConfig,
        command: str,
        out_dir: Optional[str] = None,
        seed: Optional[int] = None) -> ReportBundle:
    """
    Executa um comando sobre um cenário já validado e grava os relatórios.

    :param config: Cenário validado.
    :param command: Um de "clear", "dominance", "coalition", "boundary", "policy" ou "compare".
    :param out_dir: Diretório de saída; padrão "config.output_dir".
    :param seed: Semente que substitui a do cenário.

    :return: Os relatórios gravados.

    :raises InvalidInputError: Se o comando não existir.
    """
    if command not in EXECUTORES:
        raise InvalidInputError(f"Comando desconhecido: {command}.")
    return run_experiment(command, EXECUTORES[command], config, out_dir, seed)
