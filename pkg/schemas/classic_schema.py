from enum import Enum
from typing import Dict, List, Optional
from pydantic import BaseModel, NonNegativeFloat, PositiveFloat, model_validator


class RuleTag(str, Enum):
    PROPORTIONAL = 'proportional'
    CEA = 'cea'
    SLACK_CLEARING = 'slack_clearing'


class ClaimsProblem(BaseModel):
    """
    Schema de um problema de reivindicações (falência) usado na comparação de regras.

    Atributos:

    - "claims" (List[float]): Pedidos C_j >= 0.
    - "entitlements" (List[float], opcional): Direitos L_j, necessários para auditar NLS.
    - "estate" (float): Montante disponível I >= 0.
    """
    claims: List[NonNegativeFloat]
    entitlements: Optional[List[PositiveFloat]] = None
    estate: NonNegativeFloat

    @property
    def total_claims(self) -> float:
        return float(sum(self.claims))

    @model_validator(mode='after')
    def check_lengths(self) -> 'ClaimsProblem':
        if self.entitlements is not None and len(self.entitlements) != len(self.claims):
            raise ValueError("claims e entitlements devem ter o mesmo tamanho.")
        return self

    class Config:
        frozen = True


class AwardVector(BaseModel):
    """
    Schema do vetor de prêmios de uma regra.

    Atributos:

    - "awards" (List[float]): Prêmio a_j de cada agente.
    - "rule" (RuleTag): Regra que gerou os prêmios.
    - "level" (float): Parâmetro λ da regra (fração para a proporcional, nível para CEA).
    - "unallocated" (float): Parte do montante que ficou sem destino.
    - "flagged" (bool): Indica montante sem destino (montante > Σ pedidos ou Σ pedidos = 0).
    """
    awards: List[float]
    rule: RuleTag
    level: float
    unallocated: float = 0.0
    flagged: bool = False


class NlsViolation(BaseModel):
    agent: int
    claim: float
    award: float


class NlsSeparation(BaseModel):
    """
    Taxas de violação de NLS por regra em problemas sob estresse.

    Atributos:

    - "trials" (int): Problemas sorteados.
    - "violation_rates" (Dict[str, float]): Fração de problemas com ao menos uma violação.
    """
    trials: int
    violation_rates: Dict[RuleTag, float]
