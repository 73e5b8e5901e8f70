"""
Módulo de simulação de política (cap-and-share com faixa de penalidade).
Liquida períodos com a regra linear, precifica o excesso residual, calcula a
penalidade marginal analítica e por diferenças finitas, avalia a arbitragem
"esperar e emitir" e monitora a governança.

Funções:

- "settle_period": Liquida um período e calcula penalidades.
- "marginal_penalty": Penalidade marginal analítica de uma unidade de excesso.
- "marginal_penalty_fd": Mesma penalidade por diferenças finitas.
- "arbitrage_check": Compara p̄_t λ̲ com o preço a termo.
- "expected_waiting_cost": Estimativa de Monte Carlo de E[κ Λ].
- "governance_monitor": Alertas de Λ_t e de sequências de escassez.
- "emergency_suspension": Gancho de suspensão de emergência (sem efeito).
- "simulate_policy": Liquidação sequencial de vários períodos.
"""

import logging
from typing import List, Optional, Sequence, Union

import numpy as np

from schemas.mechanism_schema import ClaimProfile, Entitlements, Regime
from schemas.policy_schema import (
    Alert, AlertKind, ArbitrageDecision, ArbitrageVerdict, CollarConfig, DiscreteScenario,
    GovernanceTolerances, MarginalPenalty, PeriodRecord, PolicyRun, ProfileScenario, ScenarioDistribution,
    WaitingCostEstimate
)
from .configs import settings
from .deps import get_rng
from .errors import InvalidInputError, PropertyViolationError
from .mechanism import clear_batch, clear_linear, decompose, scarcity_factor, scarcity_factors

logger = logging.getLogger(__name__)


def _kappa_at(collar: CollarConfig, t: int) -> float:
    if not 0 <= t < len(collar.kappa_schedule):
        raise InvalidInputError(f"Período {t} fora do calendário de {len(collar.kappa_schedule)} períodos.")
    kappa = collar.kappa_schedule[t]
    if not collar.kappa_lo <= kappa <= collar.kappa_hi:
        raise InvalidInputError(
            f"κ_{t}={kappa} fora da faixa [{collar.kappa_lo}, {collar.kappa_hi}]."
        )
    return kappa


def settle_period(claims: ClaimProfile,
                  ent: Entitlements,
                  collar: CollarConfig,
                  t: int,
                  tol: Optional[float] = None,
                  numeric_tol: Optional[float] = None) -> PeriodRecord:
    """
    Liquida o período t: compensação linear, fator de escassez, excesso residual
    r_i = (v_i - v̂_i)_+ e penalidades κ_t r_i.

    :param claims: Emissões realizadas (pedidos) do período.
    :param ent: Direitos do período.
    :param collar: Faixa de penalidade e calendário de κ_t.
    :param t: Índice do período no calendário.
    :param tol: Tolerância de fronteira.
    :param numeric_tol: Tolerância da verificação r_i = Λ_t v_i.

    :return: Registro do período.

    :raises InvalidInputError: Se κ_t estiver fora da faixa ou t fora do calendário.
    :raises PropertyViolationError: Se r_i = Λ_t v_i falhar na escassez
        ou se Σπ_i != ΣL_i com X_t >= I_t.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    numeric_tol = settings.NUMERIC_TOL if numeric_tol is None else numeric_tol
    kappa = _kappa_at(collar, t)
    os = decompose(claims, ent)
    outcome = clear_linear(claims, ent, tol=tol)
    Lambda = scarcity_factor(os.X, os.I)

    v = np.asarray(os.v)
    residuals = np.maximum(v - np.asarray(outcome.covered), 0.0)
    expected = Lambda * v if os.X - os.I > tol else np.zeros_like(v)
    if np.any(np.abs(residuals - expected) > numeric_tol * np.maximum(1.0, v)):
        raise PropertyViolationError(f"Excesso residual diverge de Λ_t v_i no período {t}.")
    total_L = float(np.sum(ent.L))
    if os.X - os.I >= -tol and abs(float(np.sum(outcome.payoffs)) - total_L) > numeric_tol * max(1.0, total_L):
        raise PropertyViolationError(f"Σπ_i difere de ΣL_i no período {t} com X_t >= I_t.")

    penalties = kappa * residuals
    return PeriodRecord(
        t=t,
        X=os.X,
        I=os.I,
        Lambda=Lambda,
        kappa=kappa,
        residuals=residuals.tolist(),
        penalties=penalties.tolist(),
        payoffs=outcome.payoffs,
        penalty_revenue=float(penalties.sum()),
    )


def _marginal_values(v_j, V_minus_j, I, kappa):
    X = v_j + V_minus_j
    return kappa * (1.0 - I * (X - v_j) / X ** 2)


def marginal_penalty(v_j: float,
                     V_minus_j: float,
                     I: float,
                     kappa: float,
                     tol: Optional[float] = None) -> MarginalPenalty:
    """
    Derivada de κ r_j em relação a v_j com (V_{-j}, I) fixos:
    κ (1 - I (X - v_j) / X²) na escassez, sempre >= κ Λ; fora da escassez vale 0.

    :return: Valor, cota κ Λ e região.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    if min(v_j, V_minus_j, I, kappa) < 0:
        raise InvalidInputError("v_j, V_{-j}, I e κ devem ser não negativos.")
    X = v_j + V_minus_j
    if X - I <= tol:
        region = Regime.BOUNDARY if abs(X - I) <= tol else Regime.SLACK
        return MarginalPenalty(value=0.0, floor=0.0, region=region)
    return MarginalPenalty(
        value=float(_marginal_values(v_j, V_minus_j, I, kappa)),
        floor=kappa * (1.0 - I / X),
        region=Regime.SCARCITY,
    )


def _penalties_at(v_values: np.ndarray, V_minus_j: float, I: float, kappa: float, tol: float) -> np.ndarray:
    # jogador j, um desertor agregando V_{-j} e um cooperador com sobra I
    L = np.array([1.0, 1.0, 1.0 + I])
    C = np.column_stack([
        1.0 + v_values,
        np.full(v_values.size, 1.0 + V_minus_j),
        np.ones(v_values.size),
    ])
    res = clear_batch(C, L, tol=tol)
    return kappa * np.maximum(res.v[:, 0] - res.covered[:, 0], 0.0)


def marginal_penalty_fd(v_j: float,
                        V_minus_j: float,
                        I: float,
                        kappa: float,
                        h: float,
                        tol: Optional[float] = None) -> float:
    """
    Diferença finita de P_j(v) = κ r_j(v) calculada pela liquidação de um perfil sintético.
    Usa diferença central quando todo o estêncil está do mesmo lado da dobra X = I
    e diferença à direita caso contrário.

    :raises InvalidInputError: Se h <= 0.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    if h <= 0:
        raise InvalidInputError("O passo h deve ser positivo.")
    X = v_j + V_minus_j
    left, here, right = _penalties_at(np.array([v_j - h, v_j, v_j + h]), V_minus_j, I, kappa, tol)
    same_side = v_j >= h and (X - h - I > tol or X + h - I < -tol)
    if same_side:
        return float((right - left) / (2.0 * h))
    return float((right - here) / h)


def arbitrage_check(collar: CollarConfig,
                    t: int = 0,
                    tol: Optional[float] = None) -> ArbitrageDecision:
    """
    Avalia a calibração da faixa contra a arbitragem "esperar e emitir".

    Se κ_t >= p̄_t, então E[κ_t Λ_t] >= κ_t λ̲ >= p̄_t λ̲; a compra a termo é
    estritamente mais barata se p̄_t λ̲ > p_τ e fracamente se p̄_t λ̲ = p_τ.
    Sem κ_t >= p̄_t, ou com p̄_t λ̲ < p_τ, o resultado é inconclusivo.

    :param collar: Faixa, preços e λ̲.
    :param t: Período avaliado.
    :param tol: Tolerância da igualdade p̄_t λ̲ = p_τ.

    :return: Decisão com os limites calculados.
    """
    tol = settings.NUMERIC_TOL if tol is None else tol
    kappa = _kappa_at(collar, t)
    p_bar = collar.p_bar[t]
    price_bound = p_bar * collar.lambda_floor
    applicable = kappa >= p_bar

    if not applicable or price_bound < collar.p_forward - tol:
        verdict = ArbitrageVerdict.INCONCLUSIVE
    elif price_bound > collar.p_forward + tol:
        verdict = ArbitrageVerdict.FORWARD_STRICTLY_CHEAPER
    else:
        verdict = ArbitrageVerdict.FORWARD_WEAKLY_CHEAPER

    return ArbitrageDecision(
        t=t,
        verdict=verdict,
        applicable=applicable,
        penalty_bound=kappa * collar.lambda_floor,
        price_bound=price_bound,
        p_forward=collar.p_forward,
    )


def _atom_table(dist: Union[DiscreteScenario, ProfileScenario]) -> np.ndarray:
    if isinstance(dist, DiscreteScenario):
        return np.array([[a.X, a.I, a.kappa] for a in dist.atoms])
    ent = Entitlements(L=dist.entitlements)
    rows = []
    for atom in dist.atoms:
        os = decompose(ClaimProfile(C=atom.claims), ent)
        rows.append([os.X, os.I, atom.kappa])
    return np.array(rows)


def _sample_scenarios(dist: ScenarioDistribution, rng: np.random.Generator, size: int):
    if isinstance(dist, (DiscreteScenario, ProfileScenario)):
        weights = np.array([a.weight for a in dist.atoms])
        idx = rng.choice(len(dist.atoms), size=size, p=weights / weights.sum())
        table = _atom_table(dist)[idx]
        return table[:, 0], table[:, 1], table[:, 2]
    return (rng.uniform(*dist.X_range, size=size),
            rng.uniform(*dist.I_range, size=size),
            rng.uniform(*dist.kappa_range, size=size))


def expected_waiting_cost(scenario_dist: ScenarioDistribution,
                          samples: int,
                          seed: int,
                          tol: Optional[float] = None,
                          numeric_tol: Optional[float] = None) -> WaitingCostEstimate:
    """
    Estima E[κ Λ] sob a distribuição de cenários informada e verifica, em cada amostra
    de escassez, que a penalidade marginal analítica em (v_j, V_{-j}) sorteados é >= κ Λ.

    :param scenario_dist: Distribuição explícita sobre (X, I, κ) ou sobre perfis de pedidos.
    :param samples: Número de amostras (>= 1).
    :param seed: Semente.

    :return: Média, erro padrão, menor margem e número de violações.

    :raises InvalidInputError: Se samples = 0.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    numeric_tol = settings.NUMERIC_TOL if numeric_tol is None else numeric_tol
    if samples < 1:
        raise InvalidInputError("samples deve ser pelo menos 1.")
    rng = get_rng(seed)
    X, I, kappa = _sample_scenarios(scenario_dist, rng, samples)
    cost = kappa * scarcity_factors(X, I)

    share = 1.0 - rng.uniform(0.0, 1.0, size=samples)
    v_j = share * X
    scarce = X - I > tol
    margin = np.zeros(0)
    if scarce.any():
        analytic = _marginal_values(v_j[scarce], X[scarce] - v_j[scarce], I[scarce], kappa[scarce])
        margin = analytic - cost[scarce]

    standard_error = float(cost.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    return WaitingCostEstimate(
        mean=float(cost.mean()),
        standard_error=standard_error,
        samples=samples,
        min_margin=float(margin.min()) if margin.size else 0.0,
        violations=int((margin < -numeric_tol).sum()),
    )


def governance_monitor(history: Sequence[PeriodRecord],
                       tol: GovernanceTolerances,
                       boundary_tol: Optional[float] = None) -> List[Alert]:
    """
    Compara (X_t, I_t, Λ_t) com as tolerâncias publicadas.
    Λ_t > max_lambda (estritamente) gera um alerta; uma sequência de escassez que
    atinge max_consecutive_scarcity períodos gera um alerta ao atingir o limite.

    :param history: Registros de período em ordem.
    :param tol: Tolerâncias de governança.

    :return: Um gatilho de revisão por violação.

    :raises InvalidInputError: Se o histórico estiver vazio.
    """
    boundary_tol = settings.BOUNDARY_TOL if boundary_tol is None else boundary_tol
    if not history:
        raise InvalidInputError("O histórico de períodos está vazio.")
    alerts: List[Alert] = []
    run = 0
    for record in history:
        if record.Lambda > tol.max_lambda:
            alerts.append(Alert(
                t=record.t,
                kind=AlertKind.LAMBDA_BREACH,
                value=record.Lambda,
                review_until=record.t + tol.review_window,
                message=f"Λ_{record.t}={record.Lambda:.6g} acima de {tol.max_lambda}.",
            ))
        run = run + 1 if record.X - record.I > boundary_tol else 0
        if run == tol.max_consecutive_scarcity:
            alerts.append(Alert(
                t=record.t,
                kind=AlertKind.SCARCITY_RUN,
                value=float(run),
                review_until=record.t + tol.review_window,
                message=f"{run} períodos seguidos em escassez até t={record.t}.",
            ))
    for alert in alerts:
        logger.warning("Gatilho de revisão: %s", alert.message)
    return alerts


def emergency_suspension(record: PeriodRecord) -> PeriodRecord:
    """
    Gancho da regra de suspensão de emergência. Nenhuma regra está definida,
    então o registro é devolvido sem alterações.
    """
    return record


def simulate_policy(periods: Sequence[ClaimProfile],
                    ent: Entitlements,
                    collar: CollarConfig,
                    governance: Optional[GovernanceTolerances] = None,
                    tol: Optional[float] = None) -> PolicyRun:
    """
    Liquida os períodos em sequência, anexa os alertas de governança e a decisão de
    arbitragem de cada período e compara a média empírica de Λ com o λ̲ publicado.

    :param periods: Emissões realizadas, um perfil por período.
    :param ent: Direitos (iguais em todos os períodos).
    :param collar: Faixa de penalidade com um κ_t por período.
    :param governance: Tolerâncias de monitoramento, opcional.
    :param tol: Tolerância de fronteira.

    :return: Registros, alertas, decisões e agregados da simulação.
    """
    if not periods:
        raise InvalidInputError("Nenhum período para simular.")
    if len(periods) > len(collar.kappa_schedule):
        raise InvalidInputError(
            f"{len(periods)} períodos para um calendário de {len(collar.kappa_schedule)} valores de κ."
        )
    records = [emergency_suspension(settle_period(claims, ent, collar, t, tol=tol))
               for t, claims in enumerate(periods)]
    alerts = governance_monitor(records, governance, boundary_tol=tol) if governance else []
    records = [r.model_copy(update={'alerts': [a for a in alerts if a.t == r.t]}) for r in records]
    decisions = [arbitrage_check(collar, t) for t in range(len(records))]

    mean_lambda = float(np.mean([r.Lambda for r in records]))
    if mean_lambda < collar.lambda_floor:
        logger.warning("Λ médio observado %.6g abaixo do λ̲ publicado %.6g.", mean_lambda, collar.lambda_floor)
    logger.info("Simulação de %d períodos concluída com %d alertas.", len(records), len(alerts))
    return PolicyRun(
        records=records,
        alerts=alerts,
        decisions=decisions,
        empirical_mean_lambda=mean_lambda,
        lambda_floor=collar.lambda_floor,
        total_penalty_revenue=float(sum(r.penalty_revenue for r in records)),
    )
