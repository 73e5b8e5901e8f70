"""
Módulo do núcleo do mecanismo de compensação proporcional ao excesso.
Reúne funções puras para decompor um perfil de pedidos, compensar a sobra
(regra linear e família de potências α), calcular pagamentos, a identidade
orçamentária e o fator de escassez.

Funções:

- "clear_batch": Compensa muitos perfis de uma vez (base de todas as varreduras).
- "decompose": Separa excessos, sobras, cooperadores e desertores.
- "clear_linear": Compensação com a regra linear (α = 1).
- "clear_alpha": Compensação com a regra de potência α.
- "budget_identity_residual": Resíduo da identidade orçamentária.
- "scarcity_factor": Fator de escassez Λ de um período.
- "scarcity_factors": Versão vetorizada de "scarcity_factor".
"""

import logging
from typing import NamedTuple, Optional, Tuple

import numpy as np

from schemas.mechanism_schema import (
    AlphaRule, ClaimProfile, ClearingOutcome, Entitlements, OverageSlack, Regime
)
from .configs import settings
from .errors import InvalidInputError

logger = logging.getLogger(__name__)

REGIME_CODES = {-1: Regime.SLACK, 0: Regime.BOUNDARY, 1: Regime.SCARCITY}


class BatchClearing(NamedTuple):
    """
    Arrays resultantes de "clear_batch". Linhas indexam perfis e colunas jogadores.
    """
    v: np.ndarray
    s: np.ndarray
    X: np.ndarray
    I: np.ndarray
    covered: np.ndarray
    payoffs: np.ndarray
    regime: np.ndarray


def overage_powers(v: np.ndarray, alpha: float) -> np.ndarray:
    """
    Calcula v^α como exp(α ln v) apenas para v > 0; excessos nulos contribuem com 0.
    """
    positive = v > 0
    safe = np.where(positive, v, 1.0)
    return np.where(positive, np.exp(alpha * np.log(safe)), 0.0)


def clear_batch(C, L, alpha: Optional[float] = None, tol: Optional[float] = None) -> BatchClearing:
    """
    Compensa um lote de perfis.

    :param C: Matriz m x n de pedidos (ou vetor de um único perfil).
    :param L: Vetor de direitos com n entradas.
    :param alpha: Expoente da regra; None usa a regra linear I/X * v.
    :param tol: Tolerância de fronteira τ_b.

    :return: Arrays de excesso, sobra, totais, cobertura, pagamentos e regime
             (-1 folga, 0 fronteira, 1 escassez).
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    C = np.asarray(C, dtype=float)
    L = np.asarray(L, dtype=float)
    single = C.ndim == 1
    C2 = np.atleast_2d(C)

    v = np.maximum(C2 - L, 0.0)
    s = np.maximum(L - C2, 0.0)
    X = v.sum(axis=1)
    I = s.sum(axis=1)
    gap = X - I
    regime = np.where(gap > tol, 1, np.where(gap < -tol, -1, 0))
    scarce = regime == 1

    if alpha is None:
        weights, total = v, X
    else:
        weights = overage_powers(v, alpha)
        total = weights.sum(axis=1)
    # X > I exige algum v_m > 0
    assert np.all(total[scarce] > 0)
    ratio = np.divide(I, total, out=np.zeros_like(total), where=scarce)
    covered = np.where(scarce[:, None], ratio[:, None] * weights, v)
    payoffs = np.where(C2 <= L, C2, L + covered)

    if single:
        return BatchClearing(v[0], s[0], X[0], I[0], covered[0], payoffs[0], regime[0])
    return BatchClearing(v, s, X, I, covered, payoffs, regime)


def _as_arrays(profile: ClaimProfile, ent: Entitlements) -> Tuple[np.ndarray, np.ndarray]:
    if len(profile.C) != ent.n:
        raise InvalidInputError(
            f"Perfil com {len(profile.C)} pedidos para {ent.n} direitos."
        )
    return np.asarray(profile.C, dtype=float), np.asarray(ent.L, dtype=float)


def decompose(profile: ClaimProfile, ent: Entitlements) -> OverageSlack:
    """
    Separa o perfil em excessos e sobras e classifica os jogadores.
    Um jogador com C_j = L_j é cooperador.

    :param profile: Perfil de pedidos.
    :param ent: Direitos dos jogadores.

    :return: Excessos, sobras, totais X e I e os conjuntos de cooperadores e desertores.

    :raises InvalidInputError: Se os tamanhos de perfil e direitos diferirem.
    """
    C, L = _as_arrays(profile, ent)
    v = np.maximum(C - L, 0.0)
    s = np.maximum(L - C, 0.0)
    defector_mask = C > L
    return OverageSlack(
        v=v.tolist(),
        s=s.tolist(),
        X=float(v.sum()),
        I=float(s.sum()),
        cooperators=np.flatnonzero(~defector_mask).tolist(),
        defectors=np.flatnonzero(defector_mask).tolist(),
    )


def _outcome(C: np.ndarray, L: np.ndarray, alpha: Optional[float], tol: Optional[float]) -> ClearingOutcome:
    result = clear_batch(C, L, alpha=alpha, tol=tol)
    unused = max(float(result.I) - float(result.X), 0.0)
    residual = float(result.payoffs.sum()) - (float(L.sum()) - unused)
    return ClearingOutcome(
        covered=result.covered.tolist(),
        payoffs=result.payoffs.tolist(),
        regime=REGIME_CODES[int(result.regime)],
        alpha=1.0 if alpha is None else alpha,
        budget_residual=residual,
        unused_surplus=unused,
    )


def clear_linear(profile: ClaimProfile, ent: Entitlements, tol: Optional[float] = None) -> ClearingOutcome:
    """
    Compensa o perfil com a regra linear: v̂_j = v_j se X <= I, senão (I/X) v_j.

    :param profile: Perfil de pedidos.
    :param ent: Direitos dos jogadores.
    :param tol: Tolerância de fronteira; padrão "settings.BOUNDARY_TOL".

    :return: Cobertura, pagamentos e regime.
    """
    C, L = _as_arrays(profile, ent)
    return _outcome(C, L, None, tol)


def clear_alpha(profile: ClaimProfile,
                ent: Entitlements,
                rule: AlphaRule,
                tol: Optional[float] = None) -> ClearingOutcome:
    """
    Compensa o perfil com a regra de potência: na escassez v̂_j = I v_j^α / Σ_{m: v_m>0} v_m^α.
    Na fronteira adota o ramo X < I.

    :param profile: Perfil de pedidos.
    :param ent: Direitos dos jogadores.
    :param rule: Regra com o expoente α > 0.
    :param tol: Tolerância de fronteira.

    :return: Cobertura, pagamentos e regime.
    """
    C, L = _as_arrays(profile, ent)
    return _outcome(C, L, rule.alpha, tol)


def budget_identity_residual(outcome: ClearingOutcome, ent: Entitlements, os: OverageSlack) -> float:
    """
    Calcula Σπ_j - (ΣL_j - max{I - X, 0}); deve ser nulo para qualquer α.
    """
    return float(np.sum(outcome.payoffs)) - (float(np.sum(ent.L)) - max(os.I - os.X, 0.0))


def scarcity_factors(X, I) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    I = np.asarray(I, dtype=float)
    ratio = np.divide(X - I, X, out=np.zeros_like(X), where=X > 0)
    return np.maximum(ratio, 0.0)


def scarcity_factor(X: float, I: float) -> float:
    """
    Fator de escassez: 0 se X = 0, senão max{0, (X - I)/X}; sempre em [0, 1].

    :param X: Excesso total do período.
    :param I: Sobra total do período.

    :return: Λ do período.

    :raises InvalidInputError: Se X ou I forem negativos.
    """
    if X < 0 or I < 0:
        raise InvalidInputError(f"X e I devem ser não negativos (X={X}, I={I}).")
    return float(scarcity_factors(X, I))
