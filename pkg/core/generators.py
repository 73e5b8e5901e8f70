"""
Módulo de geração de perfis aleatórios para os experimentos.

Funções:

- "generate_scenarios": Gera perfis determinísticos a partir de uma especificação e de uma semente.
"""

import logging
from typing import List, Optional

import numpy as np

from schemas.mechanism_schema import ClaimProfile, Entitlements
from schemas.scenario_schema import GeneratedScenarios, GeneratorFamily, GeneratorSpec
from .configs import settings
from .deps import get_rng
from .errors import InvalidInputError

logger = logging.getLogger(__name__)


def _close_boundary(claims: np.ndarray, L: np.ndarray, M: float) -> Optional[np.ndarray]:
    # o último jogador fecha a diferença X' - I' dos demais
    v = np.maximum(claims[:-1] - L[:-1], 0.0).sum()
    s = np.maximum(L[:-1] - claims[:-1], 0.0).sum()
    closing = L[-1] - (v - s)
    if not 0.0 <= closing <= M:
        return None
    claims = claims.copy()
    claims[-1] = closing
    return claims


def generate_scenarios(spec: GeneratorSpec,
                       ent: Entitlements,
                       M: float,
                       seed: int,
                       tol: Optional[float] = None) -> GeneratedScenarios:
    """
    Gera "spec.trials" perfis de pedidos em [0, M].

    - "uniform": pedidos uniformes em [0, M].
    - "mixture": com probabilidade "defection_probability" o jogador pede M, senão um valor uniforme em [0, L_j].
    - "boundary": pedidos uniformes e o último jogador ajustado para X = I; perfis cujo
      fechamento sairia de [0, M] são descartados e contados.

    :param spec: Especificação do gerador.
    :param ent: Direitos.
    :param M: Limite das ações.
    :param seed: Semente; a mesma semente gera os mesmos perfis.
    :param tol: Tolerância de fronteira usada para conferir os perfis de fronteira.

    :return: Perfis gerados e o número de descartes.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    if M < max(ent.L):
        raise InvalidInputError(f"M={M} menor que o maior direito.")
    rng = get_rng(seed)
    L = np.asarray(ent.L, dtype=float)
    profiles: List[ClaimProfile] = []
    skipped = 0

    for _ in range(spec.trials):
        if spec.family == GeneratorFamily.MIXTURE:
            defect = rng.uniform(size=ent.n) < spec.defection_probability
            claims = np.where(defect, M, rng.uniform(0.0, 1.0, size=ent.n) * L)
        else:
            claims = rng.uniform(0.0, M, size=ent.n)
        if spec.family == GeneratorFamily.BOUNDARY:
            claims = _close_boundary(claims, L, M)
            if claims is None or abs(np.maximum(claims - L, 0.0).sum() - np.maximum(L - claims, 0.0).sum()) > tol:
                skipped += 1
                continue
        profiles.append(ClaimProfile(C=claims.tolist(), M=M))

    if skipped:
        logger.warning("%d perfis de fronteira descartados por fechamento inviável.", skipped)
    return GeneratedScenarios(profiles=profiles, skipped=skipped)
