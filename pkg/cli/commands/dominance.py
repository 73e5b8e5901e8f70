"""
Comando "dominance": varredura de melhores respostas, equilíbrio cooperativo e,
para os perfis explícitos, o relatório de melhor resposta de cada jogador.

Tabelas gravadas:

- dominance.csv: uma linha por α com violações, falhas de argmax e maior queda.
- best_responses.csv: dobra e monotonicidade por perfil, jogador e α.
- nash.csv: verificação de C = L como equilíbrio.
"""

import click
import numpy as np

from cli.runner import executar_comando, limite_estrategico, opcoes_comuns
from core.deps import derivar_sementes, resolver_semente
from core.strategic import best_response, cooperative_nash_check, dominance_sweep
from schemas.mechanism_schema import AlphaRule, Entitlements
from schemas.scenario_schema import ExperimentResult, ScenarioConfig


def _best_responses(config: ScenarioConfig, ent: Entitlements, M: float):
    linhas = []
    for k, claims in enumerate(config.profiles):
        for alpha in config.alphas:
            for j in range(ent.n):
                report = best_response(j, np.delete(np.asarray(claims), j), ent, AlphaRule(alpha=alpha),
                                       config.grid_sizes.best_response, M, claim_cost=config.claim_cost,
                                       tol=config.tolerances.boundary, numeric_tol=config.tolerances.numeric)
                a, b, drop = report.first_violation or (None, None, 0.0)
                linhas.append({
                    'profile': k,
                    'alpha': alpha,
                    'player': j,
                    'argmax_claim': report.argmax_claim,
                    'monotone': report.monotone,
                    'monotone_by_branch': report.monotone_by_branch,
                    'kink_claim': report.kink_claim,
                    'kink_gap': report.kink_gap,
                    'violation_from': a,
                    'violation_to': b,
                    'violation_drop': drop,
                })
    return linhas


def executar(config: ScenarioConfig, seed: int = None) -> ExperimentResult:
    M = limite_estrategico(config)
    semente = resolver_semente(config, seed)
    ent = Entitlements(L=config.entitlements)
    tol = config.tolerances
    findings, resumos = [], []

    for alpha, filha in zip(config.alphas, derivar_sementes(semente, len(config.alphas))):
        summary = dominance_sweep(ent, AlphaRule(alpha=alpha), config.trials, config.grid_sizes.best_response,
                                  filha, M, claim_cost=config.claim_cost,
                                  tol=tol.boundary, numeric_tol=tol.numeric)
        if summary.theorem_mode and not summary.passed:
            findings.append(f"α={alpha}: {summary.violations} curvas não monótonas, "
                            f"{summary.argmax_failures} sem argmax em M")
        resumos.append({**summary.model_dump(), 'passed': summary.passed})

    nash = cooperative_nash_check(ent, config.grid_sizes.nash, M, tol=tol.boundary, numeric_tol=tol.numeric)
    if not nash.holds:
        findings.append(f"C = L não é equilíbrio: desvio {nash.witness}")

    respostas = _best_responses(config, ent, M)
    return ExperimentResult(
        tables={
            'dominance.csv': resumos,
            'best_responses.csv': respostas,
            'nash.csv': [{'holds': nash.holds, 'witness': nash.witness}],
        },
        results={'command': 'dominance', 'summaries': resumos, 'nash': nash.model_dump(),
                 'best_responses': respostas},
        findings=findings,
    )


@click.command(name='dominance')
@opcoes_comuns
def comando(config_path, out_dir, seed):
    """Verifica a dominância do pedido máximo."""
    executar_comando('dominance', executar, config_path, out_dir, seed)
