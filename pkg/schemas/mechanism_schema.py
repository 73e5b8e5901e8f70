from enum import Enum
from typing import List, Optional
from pydantic import BaseModel, Field, NonNegativeFloat, PositiveFloat, model_validator


class Regime(str, Enum):
    """
    Regime de compensação determinado pela comparação entre X e I.

    - "slack": X < I, toda a sobra é coberta.
    - "boundary": |X - I| <= τ_b, segue o ramo X < I.
    - "scarcity": X > I, cobertura proporcional.
    """
    SLACK = 'slack'
    BOUNDARY = 'boundary'
    SCARCITY = 'scarcity'


class Entitlements(BaseModel):
    """
    Schema para o vetor de direitos (cotas) dos jogadores.

    Atributos:

    - "L" (List[float]): Direito L_j > 0 de cada jogador, em unidades do recurso.
    """
    L: List[PositiveFloat] = Field(min_length=1)

    @property
    def n(self) -> int:
        return len(self.L)

    class Config:
        """
        Configurações da classe "Entitlements".

        Atributos:

        - "frozen" (bool): Instâncias imutáveis após a construção.
        """
        frozen = True


class ClaimProfile(BaseModel):
    """
    Schema para o perfil de pedidos (ações) dos jogadores.

    Atributos:

    - "C" (List[float]): Pedido C_j >= 0 de cada jogador.
    - "M" (float, opcional): Limite comum das ações; quando informado, exige C_j <= M.
    """
    C: List[NonNegativeFloat]
    M: Optional[PositiveFloat] = None

    @model_validator(mode='after')
    def check_bound(self) -> 'ClaimProfile':
        if self.M is not None and any(c > self.M for c in self.C):
            raise ValueError(f"Todos os pedidos devem estar em [0, M={self.M}].")
        return self

    class Config:
        frozen = True


class OverageSlack(BaseModel):
    """
    Decomposição de um perfil em excessos e sobras.

    Atributos:

    - "v" (List[float]): Excessos (C_j - L_j)_+.
    - "s" (List[float]): Sobras (L_j - C_j)_+.
    - "X" (float): Excesso total.
    - "I" (float): Sobra total.
    - "cooperators" (List[int]): Índices com C_j <= L_j.
    - "defectors" (List[int]): Índices com C_j > L_j.
    """
    v: List[float]
    s: List[float]
    X: float
    I: float
    cooperators: List[int]
    defectors: List[int]

    class Config:
        frozen = True


class AlphaRule(BaseModel):
    """
    Regra de compensação da família de potências; "alpha" = 1 é a regra linear.
    """
    alpha: PositiveFloat = 1.0

    class Config:
        frozen = True


class ClearingOutcome(BaseModel):
    """
    Resultado da compensação de um perfil.

    Atributos:

    - "covered" (List[float]): Excesso coberto v̂_j de cada jogador.
    - "payoffs" (List[float]): Pagamento π_j de cada jogador.
    - "regime" (Regime): Regime em que o perfil foi compensado.
    - "alpha" (float): Expoente utilizado.
    - "budget_residual" (float): Σπ_j - (ΣL_j - max{I - X, 0}).
    - "unused_surplus" (float): Parcela max{I - X, 0} descartada.
    """
    covered: List[float]
    payoffs: List[float]
    regime: Regime
    alpha: float
    budget_residual: float
    unused_surplus: float

    class Config:
        frozen = True
