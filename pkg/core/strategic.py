"""
Módulo de análise estratégica do mecanismo.
Verifica por fórmulas exatas e busca em grade as propriedades de incentivo:
respostas ótimas monótonas, dominância do pedido máximo, equilíbrio de Nash
do perfil cooperativo e a cota de coalizões sob utilidade transferível.

Funções:

- "payoff_of": Pagamento de um jogador obtido pela compensação do perfil montado.
- "payoff_branch_formula": Mesmo pagamento pela fórmula fechada por ramos.
- "best_response": Curva de pagamento ao longo de uma grade de pedidos.
- "dominance_sweep": Varredura de dominância sobre adversários aleatórios.
- "cooperative_nash_check": Verifica que C = L é equilíbrio de Nash.
- "coalition_payoff": Pagamento agregado de uma coalizão (cálculo direto).
- "coalition_payoff_closed_form": Pagamento agregado pela forma fechada.
- "tu_transfers": Transferências orçamentariamente equilibradas que tornam um desvio viável.
- "coalition_proofness_search": Busca exaustiva do melhor desvio de uma coalizão.
- "coalition_sweep": Repete a busca para todas as coalizões.
"""

import itertools
import logging
from typing import List, Optional, Sequence

import numpy as np

from schemas.mechanism_schema import AlphaRule, ClaimProfile, Entitlements
from schemas.strategic_schema import (
    BestResponseReport, CoalitionReport, DominanceSummary, NashCheckResult
)
from .configs import settings
from .deps import get_rng
from .errors import InvalidInputError, SearchSpaceError
from .mechanism import clear_alpha, clear_batch, clear_linear, overage_powers

logger = logging.getLogger(__name__)

CHUNK_ROWS = 65_536


def _check_player(player: int, others: Sequence[float], ent: Entitlements) -> np.ndarray:
    if not 0 <= player < ent.n:
        raise InvalidInputError(f"Jogador {player} fora do intervalo [0, {ent.n - 1}].")
    others = np.asarray(others, dtype=float)
    if others.shape != (ent.n - 1,):
        raise InvalidInputError(
            f"Esperados {ent.n - 1} pedidos dos demais jogadores, recebidos {others.size}."
        )
    return others


def _check_bound(ent: Entitlements, M: float) -> None:
    if M <= max(ent.L):
        raise InvalidInputError(
            f"A análise de dominância exige M > max L (M={M}, max L={max(ent.L)})."
        )


def _others_aggregates(player: int, others: np.ndarray, ent: Entitlements, alpha: float):
    L_others = np.delete(np.asarray(ent.L, dtype=float), player)
    v = np.maximum(others - L_others, 0.0)
    s = np.maximum(L_others - others, 0.0)
    return float(v.sum()), float(s.sum()), float(overage_powers(v, alpha).sum())


def payoff_of(player: int,
              claim: float,
              others: Sequence[float],
              ent: Entitlements,
              rule: AlphaRule,
              M: Optional[float] = None,
              tol: Optional[float] = None) -> float:
    """
    Retorna o pagamento do jogador quando ele pede "claim" e os demais mantêm "others".

    :param player: Índice do jogador.
    :param claim: Pedido do jogador, em [0, M].
    :param others: Pedidos dos demais jogadores, na ordem dos índices (sem o jogador).
    :param ent: Direitos.
    :param rule: Regra de compensação.
    :param M: Limite das ações, opcional.
    :param tol: Tolerância de fronteira.

    :return: π_j calculado por "clear_alpha" no perfil montado.

    :raises InvalidInputError: Se o índice ou o número de pedidos forem inválidos.
    """
    others = _check_player(player, others, ent)
    profile = ClaimProfile(C=np.insert(others, player, claim).tolist(), M=M)
    return clear_alpha(profile, ent, rule, tol=tol).payoffs[player]


def payoff_branch_formula(player: int,
                          claim: float,
                          others: Sequence[float],
                          ent: Entitlements,
                          rule: AlphaRule,
                          tol: Optional[float] = None) -> float:
    """
    Pagamento pela fórmula por ramos em y = (C_j - L_j)_+:
    L_j + y enquanto X_{-j} + y <= I_{-j}, e L_j + I_{-j} y^α / (S_{-j} + y^α) depois,
    com S_{-j} = Σ_{m≠j} v_m^α. Um cooperador recebe o próprio pedido.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    others = _check_player(player, others, ent)
    L_j = ent.L[player]
    if claim <= L_j:
        return float(claim)
    y = claim - L_j
    X_o, I_o, S_o = _others_aggregates(player, others, ent, rule.alpha)
    if X_o + y - I_o <= tol:
        return L_j + y
    y_pow = float(overage_powers(np.array(y), rule.alpha))
    return L_j + I_o * y_pow / (S_o + y_pow)


def _payoff_curve(player: int,
                  grid: np.ndarray,
                  others: np.ndarray,
                  L: np.ndarray,
                  alpha: float,
                  tol: Optional[float]) -> np.ndarray:
    base = np.insert(others, player, 0.0)
    C = np.tile(base, (grid.size, 1))
    C[:, player] = grid
    return clear_batch(C, L, alpha=alpha, tol=tol).payoffs[:, player]


def best_response(player: int,
                  others: Sequence[float],
                  ent: Entitlements,
                  rule: AlphaRule,
                  grid_size: int,
                  M: float,
                  claim_cost: float = 0.0,
                  tol: Optional[float] = None,
                  numeric_tol: Optional[float] = None) -> BestResponseReport:
    """
    Avalia a utilidade π_j - ε C_j ao longo de uma grade em [0, M].

    A grade contém pontos uniformes e, sempre, 0, L_j, a dobra
    L_j + (I_{-j} - X_{-j})_+, seu vizinho imediato à direita e M.

    :param player: Índice do jogador.
    :param others: Pedidos dos demais jogadores.
    :param ent: Direitos.
    :param rule: Regra de compensação.
    :param grid_size: Número de pontos uniformes (>= 2).
    :param M: Limite das ações (> max L).
    :param claim_cost: Custo ε por unidade pedida; 0 reproduz pedidos sem custo.
    :param tol: Tolerância de fronteira.
    :param numeric_tol: Tolerância de monotonicidade e de empates.

    :return: Relatório com a curva, o argmax (empates em direção a M) e a monotonicidade.

    :raises InvalidInputError: Se grid_size < 2 ou M <= max L.
    """
    numeric_tol = settings.NUMERIC_TOL if numeric_tol is None else numeric_tol
    if grid_size < 2:
        raise InvalidInputError("grid_size deve ser pelo menos 2.")
    _check_bound(ent, M)
    others = _check_player(player, others, ent)
    L = np.asarray(ent.L, dtype=float)
    L_j = L[player]

    X_o, I_o, S_o = _others_aggregates(player, others, ent, rule.alpha)
    y_star = max(I_o - X_o, 0.0)
    kink = L_j + y_star
    critical = [0.0, L_j, M]
    if kink <= M:
        critical.append(kink)
    kink_right = kink + settings.KINK_OFFSET * M
    if kink_right < M:
        critical.append(kink_right)
    grid = np.unique(np.concatenate([np.linspace(0.0, M, grid_size), critical]))

    utility = _payoff_curve(player, grid, others, L, rule.alpha, tol) - claim_cost * grid
    diffs = np.diff(utility)
    bad = diffs < -numeric_tol
    # intervalos em que a classificação passa de folga/fronteira para escassez
    scarce = X_o + np.maximum(grid - L_j, 0.0) - I_o > (settings.BOUNDARY_TOL if tol is None else tol)
    straddle = ~scarce[:-1] & scarce[1:]

    first_violation = None
    if bad.any():
        i = int(np.argmax(bad))
        first_violation = (float(grid[i]), float(grid[i + 1]), float(-diffs[i]))

    best = utility.max()
    argmax = int(np.flatnonzero(utility >= best - numeric_tol)[-1])

    kink_gap = 0.0
    if y_star > 0:
        y_pow = float(overage_powers(np.array(y_star), rule.alpha))
        kink_gap = I_o * y_pow / (S_o + y_pow) - y_star

    return BestResponseReport(
        player=player,
        grid=grid.tolist(),
        payoff_curve=utility.tolist(),
        argmax_claim=float(grid[argmax]),
        monotone=not bad.any(),
        monotone_by_branch=not (bad & ~straddle).any(),
        first_violation=first_violation,
        kink_claim=float(kink),
        kink_gap=float(kink_gap),
        claim_cost=claim_cost,
    )


def dominance_sweep(ent: Entitlements,
                    rule: AlphaRule,
                    trials: int,
                    grid_size: int,
                    seed: int,
                    M: float,
                    claim_cost: float = 0.0,
                    tol: Optional[float] = None,
                    numeric_tol: Optional[float] = None) -> DominanceSummary:
    """
    Sorteia "trials" perfis de adversários uniformes em [0, M] e, para cada jogador,
    verifica monotonicidade e argmax em M. Para α = 1 sem custo de pedido a ausência
    de violações é exigida ("theorem_mode"); nos demais casos o resultado é apenas reportado.

    :return: Contagem de violações, falhas de argmax e a maior queda observada.
    """
    _check_bound(ent, M)
    rng = get_rng(seed)
    theorem_mode = rule.alpha == 1.0 and claim_cost == 0.0
    violations = argmax_failures = evaluations = 0
    worst_drop = 0.0

    for _ in range(trials):
        profile = rng.uniform(0.0, M, size=ent.n)
        for j in range(ent.n):
            report = best_response(j, np.delete(profile, j), ent, rule, grid_size, M,
                                   claim_cost=claim_cost, tol=tol, numeric_tol=numeric_tol)
            evaluations += 1
            if not report.monotone:
                violations += 1
                worst_drop = max(worst_drop, float(-np.diff(report.payoff_curve).min()))
            if report.argmax_claim != M:
                argmax_failures += 1

    summary = DominanceSummary(
        alpha=rule.alpha,
        theorem_mode=theorem_mode,
        trials=trials,
        evaluations=evaluations,
        violations=violations,
        argmax_failures=argmax_failures,
        worst_drop=worst_drop,
    )
    logger.info("Dominância α=%s: %d violações em %d curvas.", rule.alpha, violations, evaluations)
    return summary


def cooperative_nash_check(ent: Entitlements,
                           grid_size: int,
                           M: float,
                           tol: Optional[float] = None,
                           numeric_tol: Optional[float] = None) -> NashCheckResult:
    """
    Verifica que nenhum desvio unilateral a partir de C = L é lucrativo.
    Desvios C_j' >= L_j precisam render exatamente L_j (I' = 0).

    :return: "holds" e, em caso de falha, a testemunha (jogador, desvio, pagamento).
    """
    numeric_tol = settings.NUMERIC_TOL if numeric_tol is None else numeric_tol
    _check_bound(ent, M)
    L = np.asarray(ent.L, dtype=float)
    for j in range(ent.n):
        grid = np.unique(np.concatenate([np.linspace(0.0, M, grid_size), [L[j], M]]))
        payoffs = _payoff_curve(j, grid, np.delete(L, j), L, 1.0, tol)
        gain = payoffs > L[j] + numeric_tol
        not_flat = (grid >= L[j]) & (np.abs(payoffs - L[j]) > numeric_tol)
        failing = np.flatnonzero(gain | not_flat)
        if failing.size:
            k = int(failing[0])
            return NashCheckResult(holds=False, witness=(j, float(grid[k]), float(payoffs[k])))
    return NashCheckResult(holds=True)


def _coalition_mask(coalition: Sequence[int], n: int) -> np.ndarray:
    if len(coalition) == 0:
        raise InvalidInputError("A coalizão não pode ser vazia.")
    if len(set(coalition)) != len(coalition) or any(not 0 <= i < n for i in coalition):
        raise InvalidInputError(f"Coalizão inválida {list(coalition)} para {n} jogadores.")
    mask = np.zeros(n, dtype=bool)
    mask[list(coalition)] = True
    return mask


def coalition_payoff(profile: ClaimProfile, ent: Entitlements, coalition: Sequence[int]) -> float:
    """
    Retorna Σ_{i∈K} π_i calculado diretamente pela regra linear.

    :raises InvalidInputError: Se a coalizão for vazia ou tiver índices inválidos.
    """
    mask = _coalition_mask(coalition, ent.n)
    outcome = clear_linear(profile, ent)
    return float(np.asarray(outcome.payoffs)[mask].sum())


def _closed_form_sums(v: np.ndarray,
                      s: np.ndarray,
                      X: np.ndarray,
                      I: np.ndarray,
                      L_K: float,
                      mask: np.ndarray,
                      tol: float) -> np.ndarray:
    X_K = v[..., mask].sum(axis=-1)
    I_K = s[..., mask].sum(axis=-1)
    scarce = X - I > tol
    covered_K = np.where(scarce, I * X_K / np.where(scarce, X, 1.0), X_K)
    return L_K - I_K + covered_K


def coalition_payoff_closed_form(profile: ClaimProfile,
                                 ent: Entitlements,
                                 coalition: Sequence[int],
                                 tol: Optional[float] = None) -> float:
    """
    Σ_{i∈K} π_i = Σ_{i∈K} L_i - I_K + Σ_{j∈K∩D} v̂_j, com a cobertura da coalizão
    X_K (caso X <= I) ou I X_K / X (caso X > I), calculada só com agregados.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    mask = _coalition_mask(coalition, ent.n)
    C = np.asarray(profile.C, dtype=float)
    L = np.asarray(ent.L, dtype=float)
    v = np.maximum(C - L, 0.0)
    s = np.maximum(L - C, 0.0)
    return float(_closed_form_sums(v, s, v.sum(), s.sum(), L[mask].sum(), mask, tol))


def tu_transfers(baseline: Sequence[float],
                 deviation: Sequence[float],
                 tol: Optional[float] = None) -> Optional[List[float]]:
    """
    Constrói transferências (t_i) com Σ t_i = 0 tais que π_i(C') + t_i >= π_i(C) para
    todo membro, com desigualdade estrita para algum. Existem se e somente se o
    pagamento agregado da coalizão aumenta estritamente.

    :param baseline: Pagamentos dos membros no perfil de referência.
    :param deviation: Pagamentos dos membros após o desvio.
    :param tol: Tolerância do ganho agregado.

    :return: Lista de transferências ou None quando o desvio não é viável sob TU.
    """
    tol = settings.NUMERIC_TOL if tol is None else tol
    baseline = np.asarray(baseline, dtype=float)
    deviation = np.asarray(deviation, dtype=float)
    surplus = deviation.sum() - baseline.sum()
    if surplus <= tol:
        return None
    return (baseline - deviation + surplus / baseline.size).tolist()


def coalition_proofness_search(ent: Entitlements,
                               M: float,
                               coalition: Sequence[int],
                               grid_size: int,
                               tol: Optional[float] = None,
                               numeric_tol: Optional[float] = None,
                               max_evaluations: Optional[int] = None) -> CoalitionReport:
    """
    Busca exaustiva do melhor desvio da coalizão K com o complemento fixo em M.

    Cada membro percorre uma grade em [0, M] que inclui 0, L_i e M. Em todos os
    pontos o pagamento direto é comparado com a forma fechada e, na escassez,
    com Σ_K L - I_K X_{-K} / X.

    :param ent: Direitos.
    :param M: Limite das ações (> max L).
    :param coalition: Índices dos membros.
    :param grid_size: Pontos uniformes por membro.
    :param tol: Tolerância de fronteira.
    :param numeric_tol: Tolerância da cota agregada.
    :param max_evaluations: Limite de |K| * (pontos por membro)^|K|.

    :return: Relatório com o melhor desvio e as verificações de forma fechada.

    :raises SearchSpaceError: Se o número de avaliações exceder o limite.
    """
    tol = settings.BOUNDARY_TOL if tol is None else tol
    max_evaluations = settings.MAX_GRID_EVALUATIONS if max_evaluations is None else max_evaluations
    _check_bound(ent, M)
    if grid_size < 2:
        raise InvalidInputError("grid_size deve ser pelo menos 2.")
    mask = _coalition_mask(coalition, ent.n)
    members = sorted(coalition)
    L = np.asarray(ent.L, dtype=float)
    L_K = float(L[mask].sum())

    grids = [np.unique(np.concatenate([np.linspace(0.0, M, grid_size), [0.0, L[i], M]]))
             for i in members]
    sizes = tuple(g.size for g in grids)
    total = int(np.prod(sizes))
    if len(members) * total > max_evaluations:
        raise SearchSpaceError(
            f"Busca da coalizão {members} exige {len(members) * total} avaliações "
            f"(limite {max_evaluations})."
        )

    best_sum = -np.inf
    best_claims: List[float] = []
    best_payoffs = np.zeros(len(members))
    closed_gap = case2_gap = 0.0
    for start in range(0, total, CHUNK_ROWS):
        idx = np.arange(start, min(start + CHUNK_ROWS, total))
        coords = np.unravel_index(idx, sizes)
        C = np.full((idx.size, ent.n), float(M))
        for k, i in enumerate(members):
            C[:, i] = grids[k][coords[k]]

        res = clear_batch(C, L, tol=tol)
        direct = res.payoffs[:, mask].sum(axis=1)
        closed = _closed_form_sums(res.v, res.s, res.X, res.I, L_K, mask, tol)
        closed_gap = max(closed_gap, float(np.abs(direct - closed).max()))

        scarce = res.regime == 1
        if scarce.any():
            X_minus_K = res.X[scarce] - res.v[scarce][:, mask].sum(axis=1)
            I_K = res.s[scarce][:, mask].sum(axis=1)
            case2 = L_K - I_K * X_minus_K / res.X[scarce]
            case2_gap = max(case2_gap, float(np.abs(direct[scarce] - case2).max()))

        row = int(np.argmax(direct))
        if direct[row] > best_sum:
            best_sum = float(direct[row])
            best_claims = C[row, mask].tolist()
            best_payoffs = res.payoffs[row, mask]

    transfers = tu_transfers(L[mask], best_payoffs, tol=numeric_tol)
    if transfers is not None:
        logger.warning("Coalizão %s melhora sob TU com transferências %s.", members, transfers)
    logger.debug("Coalizão %s: melhor soma %.12g (base %.12g).", members, best_sum, L_K)
    return CoalitionReport(
        coalition=members,
        baseline_sum=L_K,
        best_deviation_sum=best_sum,
        best_deviation=best_claims,
        bound_satisfied=transfers is None,
        closed_form_check=closed_gap,
        case2_check=case2_gap,
        evaluations=len(members) * total,
    )


def coalition_sweep(ent: Entitlements,
                    M: float,
                    grid_size: int,
                    coalitions: Optional[Sequence[Sequence[int]]] = None,
                    tol: Optional[float] = None,
                    numeric_tol: Optional[float] = None,
                    max_evaluations: Optional[int] = None) -> List[CoalitionReport]:
    """
    Executa "coalition_proofness_search" para as coalizões informadas ou, por padrão,
    para todas as 2^n - 1 coalizões não vazias.
    """
    if coalitions is None:
        coalitions = [list(c) for size in range(1, ent.n + 1)
                      for c in itertools.combinations(range(ent.n), size)]
    return [coalition_proofness_search(ent, M, c, grid_size, tol=tol, numeric_tol=numeric_tol,
                                       max_evaluations=max_evaluations)
            for c in coalitions]
