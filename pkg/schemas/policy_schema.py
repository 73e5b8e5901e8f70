from enum import Enum
from typing import List, Literal, Tuple, Union
from pydantic import (
    BaseModel, Field, NonNegativeFloat, PositiveFloat, PositiveInt, model_validator
)

from .mechanism_schema import Regime


class CollarConfig(BaseModel):
    """
    Schema da faixa de penalidade e dos preços de referência.

    Atributos:

    - "kappa_lo" / "kappa_hi" (float): Limites da penalidade por unidade de excesso residual.
    - "kappa_schedule" (List[float]): κ_t realizado em cada período.
    - "p_bar" (List[float]): Teto anunciado do preço à vista p̄_t em cada período.
    - "lambda_floor" (float): λ̲ publicado, em (0, 1].
    - "p_forward" (float): Preço a termo p_τ.
    """
    kappa_lo: NonNegativeFloat
    kappa_hi: NonNegativeFloat
    kappa_schedule: List[NonNegativeFloat] = Field(min_length=1)
    p_bar: List[NonNegativeFloat] = Field(min_length=1)
    lambda_floor: float = Field(gt=0.0, le=1.0)
    p_forward: NonNegativeFloat

    @model_validator(mode='after')
    def check_collar(self) -> 'CollarConfig':
        if self.kappa_lo > self.kappa_hi:
            raise ValueError("kappa_lo deve ser menor ou igual a kappa_hi.")
        if len(self.p_bar) != len(self.kappa_schedule):
            raise ValueError("kappa_schedule e p_bar devem ter o mesmo número de períodos.")
        return self

    class Config:
        frozen = True


class GovernanceTolerances(BaseModel):
    """
    Tolerâncias publicadas para o monitoramento de (X_t, I_t, Λ_t).

    Atributos:

    - "max_lambda" (float): Alerta quando Λ_t > max_lambda.
    - "max_consecutive_scarcity" (int): Alerta quando há essa quantidade de períodos seguidos em escassez.
    - "review_window" (int): Número de períodos cobertos por cada revisão disparada.
    """
    max_lambda: float = Field(ge=0.0, le=1.0)
    max_consecutive_scarcity: PositiveInt
    review_window: PositiveInt = 1


class AlertKind(str, Enum):
    LAMBDA_BREACH = 'lambda_breach'
    SCARCITY_RUN = 'scarcity_run'


class Alert(BaseModel):
    """
    Registro de gatilho de revisão.

    Atributos:

    - "t" (int): Período em que a violação ocorreu.
    - "kind" (AlertKind): Tipo da violação.
    - "value" (float): Λ_t ou tamanho da sequência de escassez.
    - "review_until" (int): Último período coberto pela revisão.
    - "message" (str): Descrição legível.
    """
    t: int
    kind: AlertKind
    value: float
    review_until: int
    message: str


class PeriodRecord(BaseModel):
    """
    Liquidação de um período.

    Atributos:

    - "t" (int): Índice do período.
    - "X" / "I" / "Lambda" (float): Agregados e fator de escassez.
    - "kappa" (float): Penalidade por unidade aplicada.
    - "residuals" (List[float]): r_i = (v_i - v̂_i)_+.
    - "penalties" (List[float]): κ_t r_i.
    - "payoffs" (List[float]): π_i da liquidação.
    - "penalty_revenue" (float): Σ penalidades (registrada, não redistribuída).
    - "alerts" (List[Alert]): Alertas de governança do período.
    """
    t: int
    X: float
    I: float
    Lambda: float
    kappa: float
    residuals: List[float]
    penalties: List[float]
    payoffs: List[float]
    penalty_revenue: float
    alerts: List[Alert] = []


class MarginalPenalty(BaseModel):
    """
    Penalidade marginal de uma unidade adicional de excesso.

    Atributos:

    - "value" (float): κ (1 - I (X - v_j) / X²) na escassez, 0 fora dela.
    - "floor" (float): κ Λ, cota inferior.
    - "region" (Regime): Região em que (v_j, V_{-j}, I) se encontra.
    """
    value: float
    floor: float
    region: Regime


class ArbitrageVerdict(str, Enum):
    FORWARD_STRICTLY_CHEAPER = 'ForwardStrictlyCheaper'
    FORWARD_WEAKLY_CHEAPER = 'ForwardWeaklyCheaper'
    INCONCLUSIVE = 'Inconclusive'


class ArbitrageDecision(BaseModel):
    """
    Decisão sobre a arbitragem "esperar e emitir" em um período.

    Atributos:

    - "t" (int): Período avaliado.
    - "verdict" (ArbitrageVerdict): Resultado da comparação.
    - "applicable" (bool): Se κ_t >= p̄_t.
    - "penalty_bound" (float): κ_t λ̲.
    - "price_bound" (float): p̄_t λ̲.
    - "p_forward" (float): Preço a termo comparado.
    """
    t: int
    verdict: ArbitrageVerdict
    applicable: bool
    penalty_bound: float
    price_bound: float
    p_forward: float


class ScenarioAtom(BaseModel):
    X: NonNegativeFloat
    I: NonNegativeFloat
    kappa: NonNegativeFloat
    weight: PositiveFloat = 1.0


class DiscreteScenario(BaseModel):
    """
    Distribuição discreta sobre (X, I, κ) dada por átomos com pesos.
    """
    kind: Literal['discrete'] = 'discrete'
    atoms: List[ScenarioAtom] = Field(min_length=1)


class UniformScenario(BaseModel):
    """
    Distribuição com X, I e κ independentes e uniformes nos intervalos dados.
    """
    kind: Literal['uniform'] = 'uniform'
    X_range: Tuple[NonNegativeFloat, NonNegativeFloat]
    I_range: Tuple[NonNegativeFloat, NonNegativeFloat]
    kappa_range: Tuple[NonNegativeFloat, NonNegativeFloat]

    @model_validator(mode='after')
    def check_ranges(self) -> 'UniformScenario':
        for name in ('X_range', 'I_range', 'kappa_range'):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} deve ser crescente.")
        return self


class ProfileAtom(BaseModel):
    claims: List[NonNegativeFloat] = Field(min_length=1)
    kappa: NonNegativeFloat
    weight: PositiveFloat = 1.0


class ProfileScenario(BaseModel):
    """
    Distribuição discreta sobre perfis completos de pedidos; X e I de cada átomo
    saem da decomposição do perfil contra os direitos informados.
    """
    kind: Literal['profiles'] = 'profiles'
    entitlements: List[PositiveFloat] = Field(min_length=1)
    atoms: List[ProfileAtom] = Field(min_length=1)

    @model_validator(mode='after')
    def check_lengths(self) -> 'ProfileScenario':
        n = len(self.entitlements)
        for atom in self.atoms:
            if len(atom.claims) != n:
                raise ValueError(f"Perfil com {len(atom.claims)} pedidos para {n} direitos.")
        return self


ScenarioDistribution = Union[DiscreteScenario, UniformScenario, ProfileScenario]


class WaitingCostEstimate(BaseModel):
    """
    Estimativa de Monte Carlo de E[κ Λ].

    Atributos:

    - "mean" (float): Média amostral de κ Λ.
    - "standard_error" (float): Erro padrão da média.
    - "samples" (int): Número de amostras.
    - "min_margin" (float): Menor valor de (penalidade marginal - κ Λ) nas amostras de escassez.
    - "violations" (int): Amostras em que a penalidade marginal ficou abaixo de κ Λ.
    """
    mean: float
    standard_error: float
    samples: int
    min_margin: float
    violations: int


class PolicyRun(BaseModel):
    """
    Resultado de uma simulação de vários períodos.

    Atributos:

    - "records" (List[PeriodRecord]): Liquidação de cada período.
    - "alerts" (List[Alert]): Todos os alertas de governança.
    - "decisions" (List[ArbitrageDecision]): Decisão de arbitragem por período.
    - "empirical_mean_lambda" (float): Média de Λ_t observada.
    - "lambda_floor" (float): λ̲ publicado, para comparação.
    - "total_penalty_revenue" (float): Receita total de penalidades.
    """
    records: List[PeriodRecord]
    alerts: List[Alert]
    decisions: List[ArbitrageDecision]
    empirical_mean_lambda: float
    lambda_floor: float
    total_penalty_revenue: float

