"""
Comando "compare": regras clássicas de rateio contra a compensação proporcional ao
excesso, com auditoria de No-Sucker-Loss.

Tabelas gravadas:

- awards.csv: prêmios de cada regra por problema.
- nls.csv: violações de NLS por problema e regra.
- nls_separation.csv: taxas de violação em problemas sob estresse (exige semente).
"""

import click

from cli.runner import executar_comando, opcoes_comuns
from core.classic_rules import RULES, nls_audit, nls_separation
from core.errors import ConfigError
from core.mechanism import decompose
from schemas.classic_schema import ClaimsProblem, RuleTag
from schemas.mechanism_schema import ClaimProfile, Entitlements
from schemas.scenario_schema import ExperimentResult, ScenarioConfig


def _problemas(config: ScenarioConfig):
    problemas = list(config.problems)
    ent = Entitlements(L=config.entitlements)
    for claims in config.profiles:
        # o montante de cada perfil é a sobra realizada I
        estate = decompose(ClaimProfile(C=claims), ent).I
        problemas.append(ClaimsProblem(claims=claims, entitlements=config.entitlements, estate=estate))
    if not problemas:
        raise ConfigError("problems: nenhum problema de reivindicações (\"problems\" ou \"profiles\").")
    return problemas


def executar(config: ScenarioConfig, seed: int = None) -> ExperimentResult:
    premios, auditoria, findings = [], [], []
    for k, problema in enumerate(_problemas(config)):
        for tag, rule in RULES.items():
            if tag == RuleTag.SLACK_CLEARING and problema.entitlements is None:
                continue
            award = rule(problema)
            linha = {'problem': k, 'rule': tag.value, 'level': award.level,
                     'unallocated': award.unallocated, 'flagged': award.flagged}
            linha.update({f'a_{j}': a for j, a in enumerate(award.awards)})
            premios.append(linha)
            if problema.entitlements is None:
                continue
            violacoes = nls_audit(tag, problema, tol=config.tolerances.nls)
            auditoria.append({'problem': k, 'rule': tag.value, 'violations': len(violacoes),
                              'agents': ' '.join(str(v.agent) for v in violacoes)})
            if violacoes and tag == RuleTag.SLACK_CLEARING:
                findings.append(f"problema {k}: compensação viola NLS para {[v.agent for v in violacoes]}")

    tables = {'awards.csv': premios, 'nls.csv': auditoria}
    results = {'command': 'compare', 'awards': premios, 'nls': auditoria}

    semente = seed if seed is not None else config.seed
    if semente is not None and len(config.entitlements) >= 2:
        separacao = nls_separation(config.nls_trials, len(config.entitlements), semente, tol=config.tolerances.nls)
        taxas = [{'rule': tag.value, 'trials': separacao.trials, 'violation_rate': taxa}
                 for tag, taxa in separacao.violation_rates.items()]
        tables['nls_separation.csv'] = taxas
        results['nls_separation'] = taxas
        if separacao.violation_rates[RuleTag.SLACK_CLEARING] > 0:
            findings.append("compensação proporcional ao excesso com violações de NLS sob estresse")

    return ExperimentResult(tables=tables, results=results, findings=findings)


@click.command(name='compare')
@opcoes_comuns
def comando(config_path, out_dir, seed):
    """Compara as regras clássicas com a compensação proporcional ao excesso."""
    executar_comando('compare', executar, config_path, out_dir, seed)
