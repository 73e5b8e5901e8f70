from typing import List, Optional, Tuple
from pydantic import BaseModel


class BestResponseReport(BaseModel):
    """
    Schema com a curva de pagamento de um jogador ao longo da grade de pedidos.

    Atributos:

    - "player" (int): Índice do jogador analisado.
    - "grid" (List[float]): Pedidos testados, em ordem crescente.
    - "payoff_curve" (List[float]): Utilidade em cada ponto da grade.
    - "argmax_claim" (float): Pedido que atinge o máximo (empates resolvidos em direção a M).
    - "monotone" (bool): Se a curva é não decrescente dentro da tolerância.
    - "monotone_by_branch" (bool): Se a curva é não decrescente em cada ramo separadamente.
    - "first_violation" ((float, float, float), opcional): Par de pedidos e a queda observada.
    - "kink_claim" (float): Pedido na dobra L_j + (I_{-j} - X_{-j})_+.
    - "kink_gap" (float): Ramo de escassez menos ramo de folga avaliados na dobra.
    - "claim_cost" (float): Custo marginal ε do pedido (0 = pedidos sem custo).
    """
    player: int
    grid: List[float]
    payoff_curve: List[float]
    argmax_claim: float
    monotone: bool
    monotone_by_branch: bool
    first_violation: Optional[Tuple[float, float, float]] = None
    kink_claim: float
    kink_gap: float
    claim_cost: float = 0.0


class DominanceSummary(BaseModel):
    """
    Resumo de uma varredura de dominância.

    Atributos:

    - "alpha" (float): Expoente da regra.
    - "theorem_mode" (bool): True quando α = 1 e a ausência de violações é exigida.
    - "trials" (int): Número de perfis de adversários sorteados.
    - "evaluations" (int): Total de relatórios de melhor resposta gerados.
    - "violations" (int): Relatórios com curva não monótona.
    - "argmax_failures" (int): Relatórios cujo máximo não está em M.
    - "worst_drop" (float): Maior queda de pagamento observada.
    """
    alpha: float
    theorem_mode: bool
    trials: int
    evaluations: int
    violations: int
    argmax_failures: int
    worst_drop: float

    @property
    def passed(self) -> bool:
        return not self.theorem_mode or (self.violations == 0 and self.argmax_failures == 0)


class NashCheckResult(BaseModel):
    """
    Resultado da verificação de que C = L é equilíbrio de Nash.

    Atributos:

    - "holds" (bool): Nenhum desvio unilateral da grade é lucrativo.
    - "witness" ((int, float, float), opcional): Jogador, desvio e pagamento do contraexemplo.
    """
    holds: bool
    witness: Optional[Tuple[int, float, float]] = None


class CoalitionReport(BaseModel):
    """
    Schema com o melhor desvio encontrado para uma coalizão contra um complemento que deserta.

    Atributos:

    - "coalition" (List[int]): Índices K da coalizão.
    - "baseline_sum" (float): Σ_{i∈K} L_i.
    - "best_deviation_sum" (float): Maior Σ_{i∈K} π_i na grade.
    - "best_deviation" (List[float]): Pedidos da coalizão que atingem o máximo.
    - "bound_satisfied" (bool): best_deviation_sum <= baseline_sum + tolerância.
    - "closed_form_check" (float): Maior diferença entre o cálculo direto e a forma fechada.
    - "case2_check" (float): Maior diferença para Σ_K L - I_K X_{-K}/X nos pontos de escassez.
    - "evaluations" (int): Número de desvios avaliados.
    """
    coalition: List[int]
    baseline_sum: float
    best_deviation_sum: float
    best_deviation: List[float]
    bound_satisfied: bool
    closed_form_check: float
    case2_check: float
    evaluations: int
