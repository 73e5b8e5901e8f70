"""
Módulo de exceções da aplicação.
Cada exceção carrega uma mensagem ("detail") e o código de saída usado pela CLI,
no mesmo formato de "status_code" + "detail" das exceções HTTP.

Códigos de saída:

- EXIT_OK (0): Execução concluída.
- EXIT_VALIDATION (2): Configuração ou entrada inválida.
- EXIT_SEARCH_SPACE (3): Espaço de busca acima do limite configurado.
- EXIT_PROPERTY_VIOLATION (4): Uma propriedade demonstrada falhou na verificação.
"""

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SEARCH_SPACE = 3
EXIT_PROPERTY_VIOLATION = 4


class MechanismException(Exception):
    """
    Exceção base do pacote.

    :param detail: Mensagem legível descrevendo o problema.
    :param exit_code: Código de saída associado.
    """

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: int = None) -> None:
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class InvalidInputError(MechanismException):
    """Entradas inconsistentes entre si (tamanhos, índices, regiões)."""

    exit_code = EXIT_VALIDATION


class ConfigError(MechanismException):
    """Arquivo de cenário inválido; "detail" inclui o caminho do campo."""

    exit_code = EXIT_VALIDATION


class SearchSpaceError(MechanismException):
    exit_code = EXIT_SEARCH_SPACE


class PropertyViolationError(MechanismException):
    """
    Uma propriedade que deveria valer (identidade orçamentária, dominância em α=1,
    cota de coalizão) foi violada.
    """

    exit_code = EXIT_PROPERTY_VIOLATION
