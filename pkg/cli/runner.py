"""
Módulo de execução compartilhado pelos comandos.
Carrega o cenário, executa o comando, grava os relatórios e converte exceções em códigos de saída.

Funções:

- "opcoes_comuns": Decorador com as opções --config, --out e --seed.
- "coletar_perfis": Reúne os perfis explícitos e os gerados do cenário.
- "limite_estrategico": Retorna M validado para a análise estratégica.
- "run_experiment": Executa um comando e grava o ReportBundle.
- "executar_comando": Ponto de entrada dos comandos click.
"""

import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional

import click

from core.deps import carregar_cenario, resolver_semente
from core.errors import EXIT_OK, EXIT_PROPERTY_VIOLATION, ConfigError, MechanismException
from core.generators import generate_scenarios
from core.reports import build_manifest, write_alerts, write_csv, write_json
from schemas.mechanism_schema import ClaimProfile, Entitlements
from schemas.scenario_schema import ExperimentResult, ReportBundle, ScenarioConfig

logger = logging.getLogger(__name__)

Executor = Callable[[ScenarioConfig, Optional[int]], ExperimentResult]


def opcoes_comuns(func: Callable) -> Callable:
    func = click.option('--seed', type=int, default=None,
                        help='Semente (substitui a do cenário).')(func)
    func = click.option('--out', 'out_dir', type=click.Path(file_okay=False), default=None,
                        help='Diretório de saída (padrão: "output_dir" do cenário).')(func)
    func = click.option('--config', 'config_path', type=click.Path(dir_okay=False), required=True,
                        help='Arquivo de cenário JSON.')(func)
    return func


def coletar_perfis(config: ScenarioConfig, seed: Optional[int] = None) -> List[ClaimProfile]:
    """
    Reúne os perfis explícitos do cenário e, se houver gerador, os perfis gerados.

    :raises ConfigError: Se não houver perfis, ou se o gerador não tiver M ou semente.
    """
    profiles = [ClaimProfile(C=p, M=config.M) for p in config.profiles]
    if config.generator is not None:
        if config.M is None:
            raise ConfigError("O gerador de perfis exige \"M\".")
        gerados = generate_scenarios(config.generator, Entitlements(L=config.entitlements), config.M,
                                     resolver_semente(config, seed), tol=config.tolerances.boundary)
        profiles.extend(gerados.profiles)
    if not profiles:
        raise ConfigError("profiles: nenhum perfil de pedidos informado (\"profiles\" ou \"generator\").")
    return profiles


def limite_estrategico(config: ScenarioConfig) -> float:
    if config.M is None or config.M <= max(config.entitlements):
        raise ConfigError(f"M: a análise estratégica exige M > max L (M={config.M}).")
    return config.M


def run_experiment(command: str,
                   executor: Executor,
                   config: ScenarioConfig,
                   out_dir: Optional[str] = None,
                   seed: Optional[int] = None) -> ReportBundle:
    """
    Executa o comando e grava tabelas CSV, "results.json", "manifest.json" e,
    quando houver alertas, "alerts.log".

    :param command: Nome do comando.
    :param executor: Função que calcula o ExperimentResult.
    :param config: Cenário validado.
    :param out_dir: Diretório de saída; padrão "config.output_dir".
    :param seed: Semente que substitui a do cenário.

    :return: O conjunto de relatórios gravados e o código de saída.
    """
    destino = Path(out_dir or config.output_dir)
    destino.mkdir(parents=True, exist_ok=True)
    result = executor(config, seed)
    manifest = build_manifest(command, config, seed if seed is not None else config.seed)

    arquivos = [write_csv(destino / nome, linhas) for nome, linhas in result.tables.items()]
    arquivos.append(write_json(destino / 'results.json', result.results))
    arquivos.append(write_json(destino / 'manifest.json', manifest.model_dump(mode='json')))
    if command == 'policy' or result.alerts:
        arquivos.append(write_alerts(destino / 'alerts.log', result.alerts))

    for finding in result.findings:
        logger.error("Violação em \"%s\": %s", command, finding)
    return ReportBundle(
        out_dir=str(destino),
        files=[str(a) for a in arquivos],
        manifest=manifest,
        findings=result.findings,
        exit_code=EXIT_PROPERTY_VIOLATION if result.findings else EXIT_OK,
    )


def executar_comando(command: str,
                     executor: Executor,
                     config_path: str,
                     out_dir: Optional[str],
                     seed: Optional[int]) -> None:
    try:
        config = carregar_cenario(config_path)
        bundle = run_experiment(command, executor, config, out_dir, seed)
    except MechanismException as exc:
        click.echo(f"Erro: {exc.detail}", err=True)
        sys.exit(exc.exit_code)

    click.echo(f"Relatórios gravados em {bundle.out_dir}")
    for finding in bundle.findings:
        click.echo(f"Violação: {finding}", err=True)
    sys.exit(bundle.exit_code)
