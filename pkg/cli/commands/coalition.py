"""
Comando "coalition": busca exaustiva de desvios de coalizões com o complemento em M.

Tabela gravada:

- coalitions.csv: soma de referência, melhor desvio, cota e conferências da forma fechada.
"""

import click

from cli.runner import executar_comando, limite_estrategico, opcoes_comuns
from core.strategic import coalition_sweep
from schemas.mechanism_schema import Entitlements
from schemas.scenario_schema import ExperimentResult, ScenarioConfig


def executar(config: ScenarioConfig, seed: int = None) -> ExperimentResult:
    M = limite_estrategico(config)
    ent = Entitlements(L=config.entitlements)
    tol = config.tolerances
    reports = coalition_sweep(ent, M, config.grid_sizes.coalition, config.coalitions or None,
                              tol=tol.boundary, numeric_tol=tol.numeric)

    findings, linhas = [], []
    for report in reports:
        nome = '-'.join(str(i) for i in report.coalition)
        if not report.bound_satisfied:
            findings.append(f"coalizão {nome}: desvio {report.best_deviation} lucrativo")
        if max(report.closed_form_check, report.case2_check) > tol.numeric:
            findings.append(f"coalizão {nome}: forma fechada diverge em "
                            f"{max(report.closed_form_check, report.case2_check):.3e}")
        linhas.append({
            'coalition': nome,
            'baseline_sum': report.baseline_sum,
            'best_deviation_sum': report.best_deviation_sum,
            'best_deviation': ' '.join(f"{c:.12g}" for c in report.best_deviation),
            'bound_satisfied': report.bound_satisfied,
            'closed_form_check': report.closed_form_check,
            'case2_check': report.case2_check,
            'evaluations': report.evaluations,
        })

    return ExperimentResult(
        tables={'coalitions.csv': linhas},
        results={'command': 'coalition', 'reports': [r.model_dump() for r in reports]},
        findings=findings,
    )


@click.command(name='coalition')
@opcoes_comuns
def comando(config_path, out_dir, seed):
    """Busca desvios lucrativos de coalizões."""
    executar_comando('coalition', executar, config_path, out_dir, seed)
