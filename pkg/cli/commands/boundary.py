"""
Comando "boundary": varredura de continuidade na fronteira X = I, saltos dos perfis
de fronteira do cenário e viés sob ruído.

Tabelas gravadas:

- continuity.csv: maior e menor salto por α.
- jumps.csv: salto de cada perfil de fronteira por α.
- noise_bias.csv: viés, erro padrão e meio salto por perfil, α e ε.
"""

import logging

import click
import numpy as np

from cli.runner import executar_comando, opcoes_comuns
from core.boundary import boundary_jump, continuity_scan, noise_bias
from core.deps import derivar_sementes, resolver_semente
from core.generators import generate_scenarios
from core.mechanism import decompose
from schemas.mechanism_schema import ClaimProfile, Entitlements
from schemas.scenario_schema import ExperimentResult, ScenarioConfig

logger = logging.getLogger(__name__)

def _perfis_de_fronteira(config: ScenarioConfig, ent: Entitlements, semente: int):
    profiles = [ClaimProfile(C=p, M=config.M) for p in config.profiles]
    if config.generator is not None and config.M is not None:
        profiles += generate_scenarios(config.generator, ent, config.M, semente,
                                       tol=config.tolerances.boundary).profiles
    fronteira = []
    for profile in profiles:
        os = decompose(profile, ent)
        if abs(os.X - os.I) <= config.tolerances.boundary:
            fronteira.append((profile, os))
    return fronteira


def executar(config: ScenarioConfig, seed: int = None) -> ExperimentResult:
    semente = resolver_semente(config, seed)
    ent = Entitlements(L=config.entitlements)
    noise = config.noise
    scan_seed, profile_seed, noise_seed = derivar_sementes(semente, 3)

    findings = []
    tol = config.tolerances
    continuidade = continuity_scan(config.alphas, noise.v_samples, noise.n, scan_seed, tol=tol.continuity)
    for row in continuidade:
        if row.alpha == 1.0 and not row.continuous:
            findings.append(f"α=1: salto {row.max_sup_norm:.3e} na fronteira")
        if row.alpha != 1.0 and noise.n > 1 and row.min_sup_norm < tol.jump_floor:
            findings.append(f"α={row.alpha}: salto mínimo {row.min_sup_norm:.3e} abaixo de {tol.jump_floor}")

    fronteira = _perfis_de_fronteira(config, ent, profile_seed)
    if not fronteira:
        logger.info("Nenhum perfil na fronteira; viés sob ruído não avaliado.")

    saltos, vieses = [], []
    sementes = iter(derivar_sementes(noise_seed, len(fronteira) * len(config.alphas) * len(noise.epsilons)))
    for k, (profile, os) in enumerate(fronteira):
        positivos = [v for v in os.v if v > 0]
        for alpha in config.alphas:
            if positivos:
                jump = boundary_jump(positivos, alpha)
                saltos.append({'profile': k, 'alpha': alpha, 'sup_norm': jump.sup_norm,
                               **{f'jump_{d}': x for d, x in zip(os.defectors, jump.jump)}})
            for epsilon in noise.epsilons:
                result = noise_bias(ent, profile, alpha, epsilon, noise.samples, next(sementes),
                                    tol=config.tolerances.boundary)
                linha = {'profile': k, 'alpha': alpha, 'epsilon': epsilon, 'samples': result.samples,
                         'bias_norm': result.bias_norm, 'scarcity_share': result.scarcity_share}
                for j in range(ent.n):
                    linha[f'bias_{j}'] = result.bias[j]
                    linha[f'se_{j}'] = result.standard_error[j]
                    linha[f'half_jump_{j}'] = result.half_jump_limit[j]
                vieses.append(linha)

    return ExperimentResult(
        tables={'continuity.csv': [r.model_dump() for r in continuidade],
                'jumps.csv': saltos,
                'noise_bias.csv': vieses},
        results={'command': 'boundary',
                 'continuity': [r.model_dump() for r in continuidade],
                 'jumps': saltos,
                 'noise_bias': vieses},
        findings=findings,
    )


@click.command(name='boundary')
@opcoes_comuns
def comando(config_path, out_dir, seed):
    """Mede saltos e viés sob ruído na fronteira X = I."""
    executar_comando('boundary', executar, config_path, out_dir, seed)
