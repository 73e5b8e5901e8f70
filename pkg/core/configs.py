"""
Módulo de configuração da aplicação.
Define as configurações globais usando o Pydantic para validação e gerenciamento.

Configurações:

- BOUNDARY_TOL: Tolerância absoluta em X - I para classificar a fronteira.
- NUMERIC_TOL: Tolerância numérica das verificações de propriedades.
- NLS_TOL: Tolerância da auditoria de No-Sucker-Loss.
- CONTINUITY_TOL: Maior salto aceito como continuidade na fronteira.
- JUMP_FLOOR: Menor salto esperado para α != 1.
- MAX_GRID_EVALUATIONS: Limite de avaliações em buscas exaustivas.
- KINK_OFFSET: Deslocamento relativo do ponto à direita da dobra nas grades.
- MC_SHARD_SIZE: Tamanho dos lotes de Monte Carlo.
- CSV_SIGNIFICANT_DIGITS: Dígitos significativos nos CSVs.
- LOG_LEVEL / LOG_FORMAT: Configuração de logging.
- DEFAULT_OUTPUT_DIR: Diretório padrão dos relatórios.
"""

from pydantic import BaseModel


class Settings(BaseModel):
    """
    Classe que define as configurações da aplicação.
    """

    BOUNDARY_TOL: float = 1e-12
    """
    Tolerância absoluta τ_b: |X - I| <= τ_b é tratado como fronteira (ramo X < I).
    """

    NUMERIC_TOL: float = 1e-9
    """
    Tolerância usada nas identidades orçamentárias e cotas de coalizão.
    """

    NLS_TOL: float = 1e-12

    CONTINUITY_TOL: float = 1e-12

    JUMP_FLOOR: float = 1e-6
    """
    Abaixo deste valor o salto mínimo de uma regra com α != 1 é reportado como violação.
    """

    MAX_GRID_EVALUATIONS: int = 10_000_000
    """
    Limite de avaliações de grade (|K| * grid_size^|K|) aceito pela busca de coalizões.
    """

    KINK_OFFSET: float = 1e-9
    """
    Fração de M somada à dobra para incluir o vizinho imediato à direita.
    """

    MC_SHARD_SIZE: int = 10_000
    """
    Número de amostras por lote; cada lote recebe uma semente derivada da semente mestre.
    """

    CSV_SIGNIFICANT_DIGITS: int = 12

    LOG_LEVEL: str = 'INFO'

    LOG_FORMAT: str = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    DEFAULT_OUTPUT_DIR: str = 'reports'

    class Config:
        """
        Configurações adicionais para a classe Settings.
        """
        frozen = True


settings: Settings = Settings()
"""
Instância da classe Settings que carrega as configurações da aplicação.
"""
