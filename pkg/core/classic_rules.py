"""
Módulo das regras clássicas de rateio usadas como comparação.
Implementa a regra proporcional aos pedidos e a de prêmios iguais com teto (CEA)
e audita a garantia No-Sucker-Loss (NLS) contra a compensação proporcional ao excesso.

Funções:

- "proportional_on_claims": a_j = min{1, I / C_tot} C_j.
- "cea": a_j = min{C_j, λ} com λ calculado por preenchimento ordenado.
- "slack_clearing_awards": Pagamentos da compensação linear vistos como prêmios.
- "nls_audit": Lista cooperadores que não recebem o próprio pedido.
- "nls_separation": Taxas de violação de cada regra em problemas sob estresse.
"""

import logging
from typing import Callable, Dict, List, Optional

import numpy as np

from schemas.classic_schema import AwardVector, ClaimsProblem, NlsSeparation, NlsViolation, RuleTag
from schemas.mechanism_schema import ClaimProfile, Entitlements
from .configs import settings
from .deps import get_rng
from .errors import InvalidInputError
from .mechanism import clear_linear

logger = logging.getLogger(__name__)


def proportional_on_claims(p: ClaimsProblem) -> AwardVector:
    """
    Cada agente recebe a fração min{1, I / C_tot} do próprio pedido.
    Com C_tot = 0 e montante positivo os prêmios são nulos e o montante fica sinalizado.
    """
    claims = np.asarray(p.claims, dtype=float)
    total = p.total_claims
    if total == 0:
        if p.estate > 0:
            logger.warning("Σ pedidos = 0 com montante %.6g: montante não utilizado.", p.estate)
        return AwardVector(awards=np.zeros_like(claims).tolist(), rule=RuleTag.PROPORTIONAL,
                           level=1.0, unallocated=p.estate, flagged=p.estate > 0)
    fraction = min(1.0, p.estate / total)
    unallocated = max(p.estate - total, 0.0)
    return AwardVector(
        awards=(fraction * claims).tolist(),
        rule=RuleTag.PROPORTIONAL,
        level=fraction,
        unallocated=unallocated,
        flagged=unallocated > 0,
    )


def cea(p: ClaimsProblem) -> AwardVector:
    """
    Prêmios iguais com teto: a_j = min{C_j, λ} com Σ a_j = montante.

    λ é obtido de forma exata: os pedidos são ordenados em ordem crescente e os níveis
    são preenchidos até esgotar o montante; o último nível é resolvido linearmente.
    Com montante >= Σ pedidos todos recebem o pedido e o excedente é sinalizado.

    :param p: Problema de reivindicações.

    :return: Prêmios e o nível λ.
    """
    claims = np.asarray(p.claims, dtype=float)
    total = p.total_claims
    if claims.size == 0 or p.estate >= total:
        unallocated = p.estate - total
        if unallocated > 0:
            logger.warning("Montante excede Σ pedidos em %.6g: excedente não alocado.", unallocated)
        level = float(claims.max()) if claims.size else 0.0
        return AwardVector(awards=claims.tolist(), rule=RuleTag.CEA, level=level,
                           unallocated=unallocated, flagged=unallocated > 0)

    remaining = p.estate
    level = 0.0
    active = claims.size
    for c in np.sort(claims):
        step = (c - level) * active
        if step >= remaining:
            level += remaining / active
            break
        remaining -= step
        level = c
        active -= 1
    return AwardVector(awards=np.minimum(claims, level).tolist(), rule=RuleTag.CEA, level=level)


def slack_clearing_awards(p: ClaimsProblem) -> AwardVector:
    """
    Pagamentos da compensação linear para os pedidos e direitos do problema; o montante
    efetivo é a sobra realizada I, de modo que "estate" não é usado.
    """
    if p.entitlements is None:
        raise InvalidInputError("A compensação proporcional ao excesso exige os direitos L.")
    outcome = clear_linear(ClaimProfile(C=p.claims), Entitlements(L=p.entitlements))
    return AwardVector(awards=outcome.payoffs, rule=RuleTag.SLACK_CLEARING, level=1.0,
                       unallocated=outcome.unused_surplus)


RULES: Dict[RuleTag, Callable[[ClaimsProblem], AwardVector]] = {
    RuleTag.PROPORTIONAL: proportional_on_claims,
    RuleTag.CEA: cea,
    RuleTag.SLACK_CLEARING: slack_clearing_awards,
}


def nls_audit(rule: RuleTag, p: ClaimsProblem, tol: Optional[float] = None) -> List[NlsViolation]:
    """
    Lista todo agente com C_j <= L_j cujo prêmio difere de C_j.

    :param rule: Regra auditada.
    :param p: Problema com direitos informados.
    :param tol: Tolerância da igualdade; padrão "settings.NLS_TOL".

    :return: Violações encontradas (vazia quando a regra respeita NLS).

    :raises InvalidInputError: Se o problema não tiver direitos.
    """
    tol = settings.NLS_TOL if tol is None else tol
    if p.entitlements is None:
        raise InvalidInputError("A auditoria de NLS exige os direitos L.")
    awards = RULES[rule](p).awards
    return [
        NlsViolation(agent=j, claim=c, award=a)
        for j, (c, l, a) in enumerate(zip(p.claims, p.entitlements, awards))
        if c <= l and abs(a - c) > tol
    ]


def stressed_problem(rng: np.random.Generator, n: int) -> ClaimsProblem:
    """
    Sorteia um problema sob estresse: ao menos um agente com 0 < C_j <= L_j, pelo
    menos um pedido acima do direito e montante entre 10% e 90% de Σ pedidos.
    """
    L = rng.uniform(1.0, 10.0, size=n)
    claims = rng.uniform(0.0, 2.0, size=n) * L
    claims[0] = rng.uniform(0.1, 1.0) * L[0]
    claims[1] = L[1] * rng.uniform(1.1, 2.0)
    estate = float(rng.uniform(0.1, 0.9) * claims.sum())
    return ClaimsProblem(claims=claims.tolist(), entitlements=L.tolist(), estate=estate)


def nls_separation(trials: int, n: int, seed: int, tol: Optional[float] = None) -> NlsSeparation:
    """
    Sorteia problemas sob estresse e mede, por regra, a fração com violação de NLS.
    """
    if n < 2:
        raise InvalidInputError("Problemas sob estresse exigem ao menos 2 agentes.")
    rng = get_rng(seed)
    hits = {rule: 0 for rule in RULES}
    for _ in range(trials):
        p = stressed_problem(rng, n)
        for rule in RULES:
            if nls_audit(rule, p, tol=tol):
                hits[rule] += 1
    rates = {rule: count / trials for rule, count in hits.items()}
    logger.info("Taxas de violação de NLS: %s", {r.value: v for r, v in rates.items()})
    return NlsSeparation(trials=trials, violation_rates=rates)
