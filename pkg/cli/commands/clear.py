"""
Comando "clear": liquidação de cada perfil do cenário para cada α informado.

Tabela gravada:

- clearing.csv: regime, X, I, Λ, resíduo orçamentário e, por jogador, pagamento e cobertura.
"""

import click

from cli.runner import coletar_perfis, executar_comando, opcoes_comuns
from core.mechanism import budget_identity_residual, clear_alpha, clear_linear, decompose, scarcity_factor
from schemas.mechanism_schema import AlphaRule, Entitlements
from schemas.scenario_schema import ExperimentResult, ScenarioConfig


def executar(config: ScenarioConfig, seed: int = None) -> ExperimentResult:
    ent = Entitlements(L=config.entitlements)
    tol = config.tolerances
    orcamento_tol = tol.numeric * sum(ent.L)
    linhas, findings = [], []

    for k, profile in enumerate(coletar_perfis(config, seed)):
        os = decompose(profile, ent)
        Lambda = scarcity_factor(os.X, os.I)
        for alpha in config.alphas:
            if alpha == 1.0:
                outcome = clear_linear(profile, ent, tol.boundary)
            else:
                outcome = clear_alpha(profile, ent, AlphaRule(alpha=alpha), tol.boundary)
            residual = budget_identity_residual(outcome, ent, os)
            if abs(residual) > orcamento_tol:
                findings.append(f"perfil {k}, α={alpha}: resíduo orçamentário {residual:.3e}")
            perdedores = [j for j in os.cooperators
                           if abs(outcome.payoffs[j] - profile.C[j]) > tol.nls]
            if perdedores:
                findings.append(f"perfil {k}, α={alpha}: cooperadores {perdedores} sem o próprio pedido")

            linha = {
                'profile': k,
                'alpha': alpha,
                'regime': outcome.regime.value,
                'X': os.X,
                'I': os.I,
                'Lambda': Lambda,
                'budget_residual': residual,
                'unused_surplus': outcome.unused_surplus,
            }
            linha.update({f'pi_{j}': p for j, p in enumerate(outcome.payoffs)})
            linha.update({f'covered_{j}': c for j, c in enumerate(outcome.covered)})
            linhas.append(linha)

    return ExperimentResult(
        tables={'clearing.csv': linhas},
        results={'command': 'clear', 'outcomes': linhas},
        findings=findings,
    )


@click.command(name='clear')
@opcoes_comuns
def comando(config_path, out_dir, seed):
    """Liquida os perfis do cenário."""
    executar_comando('clear', executar, config_path, out_dir, seed)
