from typing import List
from pydantic import BaseModel


class BoundaryJump(BaseModel):
    """
    Schema com os dois limites laterais da cobertura na fronteira I = X = Σv.

    Atributos:

    - "overage_vector" (List[float]): Excessos positivos v.
    - "alpha" (float): Expoente da regra.
    - "slack_limit" (List[float]): Cobertura pelo lado X < I (igual a v).
    - "scarcity_limit" (List[float]): Cobertura pelo lado X > I, X v^α / Σ v^α.
    - "jump" (List[float]): slack_limit - scarcity_limit.
    - "sup_norm" (float): max_j |jump_j|.
    """
    overage_vector: List[float]
    alpha: float
    slack_limit: List[float]
    scarcity_limit: List[float]
    jump: List[float]
    sup_norm: float


class ContinuityRow(BaseModel):
    """
    Linha da varredura de continuidade para um expoente.

    Atributos:

    - "alpha" (float): Expoente avaliado.
    - "n" (int): Número de jogadores.
    - "samples" (int): Vetores de excesso sorteados (normalizados para Σv = 1).
    - "max_sup_norm" (float): Maior salto observado.
    - "min_sup_norm" (float): Menor salto observado.
    - "continuous" (bool): max_sup_norm <= 1e-12.
    """
    alpha: float
    n: int
    samples: int
    max_sup_norm: float
    min_sup_norm: float
    continuous: bool


class NoiseBiasResult(BaseModel):
    """
    Viés de cobertura sob ruído simétrico em torno de um perfil de fronteira.

    Atributos:

    - "alpha" (float): Expoente da regra.
    - "epsilon" (float): Escala ε do ruído uniforme em [-ε, ε].
    - "samples" (int): Número de amostras.
    - "bias" (List[float]): E[v̂(ruidoso)] - v̂(fronteira), por jogador.
    - "bias_norm" (float): max_j |bias_j|.
    - "standard_error" (List[float]): Erro padrão de Monte Carlo por jogador.
    - "scarcity_share" (float): Fração das amostras compensadas no ramo de escassez.
    - "half_jump_limit" (List[float]): Limite heurístico -jump/2 quando ε -> 0.
    """
    alpha: float
    epsilon: float
    samples: int
    bias: List[float]
    bias_norm: float
    standard_error: List[float]
    scarcity_share: float
    half_jump_limit: List[float]
