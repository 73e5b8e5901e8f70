from enum import Enum
from typing import Any, Dict, List, Optional
from pydantic import (
    BaseModel, Field, NonNegativeFloat, PositiveFloat, PositiveInt, model_validator
)

from core.configs import settings

from .classic_schema import ClaimsProblem
from .mechanism_schema import ClaimProfile
from .policy_schema import CollarConfig, GovernanceTolerances, ScenarioDistribution


class GeneratorFamily(str, Enum):
    """
    Famílias de geração de perfis.

    - "uniform": pedidos uniformes em [0, M].
    - "mixture": cada jogador deserta (pede M) com a probabilidade dada, senão pede uniforme em [0, L_j].
    - "boundary": perfis construídos com X = I fechando a diferença com o último jogador.
    """
    UNIFORM = 'uniform'
    MIXTURE = 'mixture'
    BOUNDARY = 'boundary'


class GeneratorSpec(BaseModel):
    family: GeneratorFamily
    trials: PositiveInt
    defection_probability: float = Field(0.5, ge=0.0, le=1.0)


class GeneratedScenarios(BaseModel):
    """
    Perfis gerados e a contagem de perfis descartados por fechamento inviável.
    """
    profiles: List[ClaimProfile]
    skipped: int = 0


class Tolerances(BaseModel):
    """
    Tolerâncias da execução.

    Atributos:

    - "boundary" (float): τ_b da classificação de fronteira.
    - "numeric" (float): Tolerância das verificações de propriedades.
    - "nls" (float): Tolerância da auditoria de No-Sucker-Loss.
    - "continuity" (float): Maior salto aceito como continuidade.
    - "jump_floor" (float): Menor salto esperado para α != 1.
    """
    boundary: NonNegativeFloat = settings.BOUNDARY_TOL
    numeric: NonNegativeFloat = settings.NUMERIC_TOL
    nls: NonNegativeFloat = settings.NLS_TOL
    continuity: NonNegativeFloat = settings.CONTINUITY_TOL
    jump_floor: NonNegativeFloat = settings.JUMP_FLOOR


class GridSizes(BaseModel):
    best_response: int = Field(201, ge=2)
    coalition: int = Field(21, ge=2)
    nash: int = Field(201, ge=2)


class NoiseSpec(BaseModel):
    """
    Parâmetros do experimento de fronteira.

    Atributos:

    - "epsilons" (List[float]): Escalas de ruído avaliadas.
    - "samples" (int): Amostras de Monte Carlo por escala.
    - "v_samples" (int): Vetores sorteados na varredura de continuidade.
    - "n" (int): Dimensão dos vetores sorteados.
    """
    epsilons: List[PositiveFloat] = [1e-2, 1e-3]
    samples: PositiveInt = 100_000
    v_samples: PositiveInt = 10_000
    n: PositiveInt = 3


class PolicySpec(BaseModel):
    """
    Parâmetros da simulação de política.

    Atributos:

    - "collar" (CollarConfig): Faixa de penalidade, preços e λ̲.
    - "governance" (GovernanceTolerances, opcional): Tolerâncias de monitoramento.
    - "periods" (List[List[float]]): Emissões por período; vazio usa "profiles".
    - "waiting" (ScenarioDistribution, opcional): Distribuição para E[κ Λ] (átomos, faixas uniformes ou perfis).
    - "waiting_samples" (int): Amostras da estimativa.
    """
    collar: CollarConfig
    governance: Optional[GovernanceTolerances] = None
    periods: List[List[NonNegativeFloat]] = []
    waiting: Optional[ScenarioDistribution] = Field(None, discriminator='kind')
    waiting_samples: PositiveInt = 10_000


class ScenarioConfig(BaseModel):
    """
    Schema do arquivo de cenário (JSON) que alimenta todos os comandos.

    Atributos:

    - "entitlements" (List[float]): Direitos L_j (unidades do recurso).
    - "profiles" (List[List[float]]): Perfis de pedidos explícitos.
    - "generator" (GeneratorSpec, opcional): Gerador de perfis aleatórios.
    - "alphas" (List[float]): Expoentes avaliados.
    - "M" (float, opcional): Limite comum das ações.
    - "claim_cost" (float): Custo ε por unidade pedida na análise de dominância.
    - "coalitions" (List[List[int]], opcional): Coalizões (índices a partir de 0); vazio = todas.
    - "grid_sizes" (GridSizes): Tamanhos de grade.
    - "trials" (int): Perfis de adversários na varredura de dominância.
    - "noise" (NoiseSpec): Parâmetros do experimento de fronteira.
    - "policy" (PolicySpec, opcional): Parâmetros da simulação de política.
    - "problems" (List[ClaimsProblem]): Problemas de reivindicações para "compare".
    - "nls_trials" (int): Problemas sob estresse sorteados em "compare".
    - "seed" (int, opcional): Semente; obrigatória para execuções aleatórias.
    - "tolerances" (Tolerances): Tolerâncias da execução.
    - "output_dir" (str): Diretório de saída padrão.
    """
    entitlements: List[PositiveFloat] = Field(min_length=1)
    profiles: List[List[NonNegativeFloat]] = []
    generator: Optional[GeneratorSpec] = None
    alphas: List[PositiveFloat] = Field([1.0], min_length=1)
    M: Optional[PositiveFloat] = None
    claim_cost: NonNegativeFloat = 0.0
    coalitions: Optional[List[List[int]]] = None
    grid_sizes: GridSizes = GridSizes()
    trials: PositiveInt = 1000
    noise: NoiseSpec = NoiseSpec()
    policy: Optional[PolicySpec] = None
    problems: List[ClaimsProblem] = []
    nls_trials: PositiveInt = 10_000
    seed: Optional[int] = None
    tolerances: Tolerances = Tolerances()
    output_dir: str = settings.DEFAULT_OUTPUT_DIR

    @model_validator(mode='after')
    def check_lengths(self) -> 'ScenarioConfig':
        n = len(self.entitlements)
        vectors = [('profiles', p) for p in self.profiles]
        if self.policy is not None:
            vectors += [('policy.periods', p) for p in self.policy.periods]
        for name, claims in vectors:
            if len(claims) != n:
                raise ValueError(f"{name}: perfil com {len(claims)} pedidos para {n} direitos.")
            if self.M is not None and any(c > self.M for c in claims):
                raise ValueError(f"{name}: pedidos devem estar em [0, M={self.M}].")
        for coalition in self.coalitions or []:
            if not coalition or any(not 0 <= i < n for i in coalition):
                raise ValueError(f"coalitions: coalizão inválida {coalition}.")
        return self


class RunManifest(BaseModel):
    """
    Manifesto de execução gravado em "manifest.json".

    Atributos:

    - "command" (str): Comando executado.
    - "config_hash" (str): SHA-256 da configuração canônica.
    - "seed" (int, opcional): Semente efetiva.
    - "versions" (Dict[str, str]): Versões de Python e das bibliotecas.
    - "config" (Dict[str, Any]): Configuração validada.
    """
    command: str
    config_hash: str
    seed: Optional[int] = None
    versions: Dict[str, str]
    config: Dict[str, Any]


class ExperimentResult(BaseModel):
    """
    Resultado de um comando antes da gravação.

    Atributos:

    - "tables" (Dict[str, List[Dict[str, Any]]]): Tabelas CSV por nome de arquivo.
    - "results" (Dict[str, Any]): Resultados estruturados para "results.json".
    - "findings" (List[str]): Violações de propriedades encontradas.
    - "alerts" (List[str]): Linhas do log de alertas.
    """
    tables: Dict[str, List[Dict[str, Any]]] = {}
    results: Dict[str, Any] = {}
    findings: List[str] = []
    alerts: List[str] = []


class ReportBundle(BaseModel):
    """
    Conjunto de relatórios gravados por uma execução.

    Atributos:

    - "out_dir" (str): Diretório de saída.
    - "files" (List[str]): Arquivos gravados.
    - "manifest" (RunManifest): Manifesto da execução.
    - "findings" (List[str]): Violações encontradas.
    - "exit_code" (int): Código de saída correspondente.
    """
    out_dir: str
    files: List[str]
    manifest: RunManifest
    findings: List[str]
    exit_code: int
