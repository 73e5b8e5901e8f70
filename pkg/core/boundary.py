"""
Módulo da continuidade na fronteira X = I para a família de potências α.
Mede o salto entre os ramos de folga e de escassez, varre expoentes e estima
o viés de cobertura provocado por ruído de medição em torno da fronteira.

Funções:

- "boundary_jump": Salto da cobertura em I = X = Σv.
- "continuity_scan": Maior e menor salto por α sobre vetores aleatórios.
- "noise_bias": Viés de Monte Carlo sob ruído uniforme nos pedidos.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from schemas.boundary_schema import BoundaryJump, ContinuityRow, NoiseBiasResult
from schemas.mechanism_schema import ClaimProfile, Entitlements
from .configs import settings
from .deps import get_rng
from .errors import InvalidInputError
from .mechanism import clear_batch, decompose, overage_powers

logger = logging.getLogger(__name__)


def _scarcity_side(v: np.ndarray, alpha: float) -> np.ndarray:
    weights = overage_powers(v, alpha)
    return v.sum(axis=-1, keepdims=True) * weights / weights.sum(axis=-1, keepdims=True)


def boundary_jump(v: Sequence[float], alpha: float) -> BoundaryJump:
    """
    Constrói a instância de fronteira I = X = Σv e compara os dois ramos.

    :param v: Excessos estritamente positivos.
    :param alpha: Expoente da regra (> 0).

    :return: Limites laterais, salto e sua norma do supremo.

    :raises InvalidInputError: Se algum v_j <= 0 ou alpha <= 0.
    """
    v = np.asarray(v, dtype=float)
    if v.size == 0 or np.any(v <= 0):
        raise InvalidInputError("Todos os excessos devem ser estritamente positivos.")
    if alpha <= 0:
        raise InvalidInputError(f"alpha deve ser positivo (recebido {alpha}).")
    scarcity = _scarcity_side(v, alpha)
    jump = v - scarcity
    return BoundaryJump(
        overage_vector=v.tolist(),
        alpha=alpha,
        slack_limit=v.tolist(),
        scarcity_limit=scarcity.tolist(),
        jump=jump.tolist(),
        sup_norm=float(np.abs(jump).max()),
    )


def _draw_overages(rng: np.random.Generator, samples: int, n: int, min_spread: float) -> np.ndarray:
    draws = rng.uniform(0.05, 1.0, size=(samples, n))
    if n > 1:
        # reamostra linhas quase constantes
        flat = np.ptp(draws, axis=1) < min_spread * draws.max(axis=1)
        while flat.any():
            draws[flat] = rng.uniform(0.05, 1.0, size=(int(flat.sum()), n))
            flat = np.ptp(draws, axis=1) < min_spread * draws.max(axis=1)
    return draws / draws.sum(axis=1, keepdims=True)


def continuity_scan(alphas: Sequence[float],
                    v_samples: int,
                    n: int,
                    seed: int,
                    min_spread: float = 1e-2,
                    tol: Optional[float] = None) -> List[ContinuityRow]:
    """
    Para cada α, sorteia vetores de excesso positivos normalizados (Σv = 1) com pelo
    menos dois componentes distintos e reporta o maior e o menor salto.

    :param alphas: Expoentes positivos.
    :param v_samples: Número de vetores sorteados.
    :param n: Número de jogadores com excesso.
    :param seed: Semente do gerador.
    :param min_spread: Amplitude relativa mínima entre componentes.
    :param tol: Maior salto aceito como contínuo; padrão "settings.CONTINUITY_TOL".

    :return: Uma linha por expoente.
    """
    tol = settings.CONTINUITY_TOL if tol is None else tol
    if any(a <= 0 for a in alphas):
        raise InvalidInputError("Todos os expoentes devem ser positivos.")
    rng = get_rng(seed)
    draws = _draw_overages(rng, v_samples, n, min_spread)
    rows = []
    for alpha in alphas:
        sup = np.abs(draws - _scarcity_side(draws, alpha)).max(axis=1)
        rows.append(ContinuityRow(
            alpha=alpha,
            n=n,
            samples=v_samples,
            max_sup_norm=float(sup.max()),
            min_sup_norm=float(sup.min()),
            continuous=bool(sup.max() <= tol),
        ))
        logger.debug("α=%s: salto máximo %.3e.", alpha, sup.max())
    return rows


def noise_bias(ent: Entitlements,
               base_profile: ClaimProfile,
               alpha: float,
               epsilon: float,
               samples: int,
               seed: int,
               tol: Optional[float] = None) -> NoiseBiasResult:
    """
    Estima E[v̂(C + ruído)] - v̂(C) para um perfil C na fronteira X = I.

    O ruído é uniforme em [-ε, ε], independente por pedido, e os pedidos perturbados
    são limitados a [0, M]. As amostras são geradas em lotes de tamanho fixo, cada um
    com semente derivada da semente mestre, e somadas na ordem dos lotes.

    :param ent: Direitos.
    :param base_profile: Perfil com |X - I| <= τ_b.
    :param alpha: Expoente da regra.
    :param epsilon: Escala do ruído (> 0).
    :param samples: Número de amostras (>= 1).
    :param seed: Semente mestre.
    :param tol: Tolerância de fronteira.

    :return: Viés por jogador, erro padrão e o limite heurístico de meio salto.

    :raises InvalidInputError: Se samples = 0, epsilon <= 0 ou o perfil não estiver na fronteira.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    if samples < 1:
        raise InvalidInputError("samples deve ser pelo menos 1.")
    if epsilon <= 0:
        raise InvalidInputError("epsilon deve ser positivo.")
    os = decompose(base_profile, ent)
    if abs(os.X - os.I) > tol:
        raise InvalidInputError(f"O perfil base não está na fronteira (X={os.X}, I={os.I}).")

    C = np.asarray(base_profile.C, dtype=float)
    L = np.asarray(ent.L, dtype=float)
    upper = base_profile.M if base_profile.M is not None else np.inf
    base_covered = clear_batch(C, L, alpha=alpha, tol=tol).covered

    shard = settings.MC_SHARD_SIZE
    n_shards = math.ceil(samples / shard)
    total = np.zeros(ent.n)
    total_sq = np.zeros(ent.n)
    scarce = 0
    for k, child in enumerate(np.random.SeedSequence(seed).spawn(n_shards)):
        m = min(shard, samples - k * shard)
        rng = get_rng(child)
        noisy = np.clip(C + rng.uniform(-epsilon, epsilon, size=(m, ent.n)), 0.0, upper)
        res = clear_batch(noisy, L, alpha=alpha, tol=tol)
        delta = res.covered - base_covered
        total += delta.sum(axis=0)
        total_sq += (delta ** 2).sum(axis=0)
        scarce += int((res.regime == 1).sum())

    bias = total / samples
    if samples > 1:
        variance = np.maximum(total_sq - samples * bias ** 2, 0.0) / (samples - 1)
    else:
        variance = np.zeros(ent.n)
    standard_error = np.sqrt(variance / samples)

    half_jump = np.zeros(ent.n)
    positive = np.asarray(os.v) > 0
    if positive.any():
        half_jump[positive] = -0.5 * np.asarray(boundary_jump(np.asarray(os.v)[positive], alpha).jump)

    logger.info("Viés de ruído α=%s ε=%s: norma %.6g (%d amostras).",
                alpha, epsilon, np.abs(bias).max(), samples)
    return NoiseBiasResult(
        alpha=alpha,
        epsilon=epsilon,
        samples=samples,
        bias=bias.tolist(),
        bias_norm=float(np.abs(bias).max()),
        standard_error=standard_error.tolist(),
        scarcity_share=scarce / samples,
        half_jump_limit=half_jump.tolist(),
    )
