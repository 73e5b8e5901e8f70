"""
Comando "policy": simulação de vários períodos com faixa de penalidade, governança,
verificação de arbitragem e, se configurada, a estimativa do custo esperado de esperar.

Tabelas gravadas:

- ledger.csv: X, I, Λ, κ e, por participante, pagamento, excesso residual e penalidade.
- arbitrage.csv: decisão de cada período.
- waiting_cost.csv: estimativa de E[κ Λ] (quando "policy.waiting" existir).

O log de alertas é gravado em alerts.log.
"""

import click

from cli.runner import executar_comando, opcoes_comuns
from core.deps import resolver_semente
from core.errors import ConfigError
from core.policy import expected_waiting_cost, simulate_policy
from schemas.mechanism_schema import ClaimProfile, Entitlements
from schemas.scenario_schema import ExperimentResult, ScenarioConfig


def executar(config: ScenarioConfig, seed: int = None) -> ExperimentResult:
    if config.policy is None:
        raise ConfigError("policy: o comando \"policy\" exige a seção \"policy\".")
    spec = config.policy
    ent = Entitlements(L=config.entitlements)
    periodos = [ClaimProfile(C=c) for c in (spec.periods or config.profiles)]
    run = simulate_policy(periodos, ent, spec.collar, spec.governance, tol=config.tolerances.boundary)

    ledger = []
    for record in run.records:
        linha = {'t': record.t, 'X': record.X, 'I': record.I, 'Lambda': record.Lambda,
                 'kappa': record.kappa, 'penalty_revenue': record.penalty_revenue,
                 'alerts': len(record.alerts)}
        for j, (p, r, q) in enumerate(zip(record.payoffs, record.residuals, record.penalties)):
            linha.update({f'pi_{j}': p, f'r_{j}': r, f'penalty_{j}': q})
        ledger.append(linha)

    tables = {'ledger.csv': ledger,
              'arbitrage.csv': [d.model_dump(mode='json') for d in run.decisions]}
    results = {'command': 'policy', 'run': run.model_dump(mode='json')}
    findings = []

    if spec.waiting is not None:
        estimate = expected_waiting_cost(spec.waiting, spec.waiting_samples, resolver_semente(config, seed),
                                         tol=config.tolerances.boundary, numeric_tol=config.tolerances.numeric)
        tables['waiting_cost.csv'] = [estimate.model_dump()]
        results['waiting_cost'] = estimate.model_dump()
        if estimate.violations:
            findings.append(f"{estimate.violations} amostras com penalidade marginal abaixo de κΛ")

    alertas = [f"t={a.t} {a.kind.value} valor={a.value:.12g} revisão_até={a.review_until}: {a.message}"
               for a in run.alerts]
    return ExperimentResult(tables=tables, results=results, findings=findings, alerts=alertas)


@click.command(name='policy')
@opcoes_comuns
def comando(config_path, out_dir, seed):
    """Simula a política de vários períodos."""
    executar_comando('policy', executar, config_path, out_dir, seed)
