"""
Módulo de dependências dos comandos.
Fornece funções auxiliares para obter as configurações, carregar o cenário validado e
derivar geradores aleatórios a partir da semente da execução.

Funções:

- "get_settings": Retorna as configurações globais.
- "carregar_cenario": Lê e valida um arquivo de cenário JSON.
- "resolver_semente": Determina a semente efetiva de uma execução aleatória.
- "get_rng": Cria um gerador aleatório a partir de uma semente.
- "derivar_sementes": Gera sementes filhas independentes a partir de uma semente.
"""

import json
import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import ValidationError

from schemas.scenario_schema import ScenarioConfig
from .configs import Settings, settings
from .errors import ConfigError

logger = logging.getLogger(__name__)


def get_settings() -> Settings:
    return settings


def _format_validation_error(exc: ValidationError) -> str:
    partes = []
    for erro in exc.errors():
        caminho = '.'.join(str(p) for p in erro['loc']) or '<raiz>'
        partes.append(f"{caminho}: {erro['msg']}")
    return '; '.join(partes)


def carregar_cenario(path: Union[str, Path]) -> ScenarioConfig:
    """
    Lê e valida um arquivo de cenário.

    :param path: Caminho do arquivo JSON.

    :return: A configuração validada.

    :raises ConfigError: Se o arquivo não existir, não for JSON válido ou falhar na validação;
        a mensagem indica o caminho do campo inválido.
    """
    path = Path(path)
    try:
        dados = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError:
        raise ConfigError(f"Arquivo de cenário não encontrado: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"JSON inválido em {path}: {exc}")

    try:
        config = ScenarioConfig.model_validate(dados)
    except ValidationError as exc:
        raise ConfigError(f"Cenário inválido ({path}): {_format_validation_error(exc)}")

    logger.debug("Cenário carregado de %s com %d jogadores.", path, len(config.entitlements))
    return config


def resolver_semente(config: ScenarioConfig, override: Optional[int] = None) -> int:
    """
    Retorna a semente informada na linha de comando ou, na falta dela, a do cenário.

    :raises ConfigError: Se nenhuma semente estiver disponível.
    """
    semente = override if override is not None else config.seed
    if semente is None:
        raise ConfigError("Execuções aleatórias exigem uma semente (--seed ou \"seed\" no cenário).")
    return semente


def get_rng(seed: Union[int, np.random.SeedSequence]) -> np.random.Generator:
    return np.random.default_rng(seed)


def derivar_sementes(seed: int, quantidade: int) -> List[int]:
    """
    Deriva sementes filhas independentes; a mesma semente gera sempre a mesma lista.
    """
    filhas = np.random.SeedSequence(seed).spawn(quantidade)
    return [int(f.generate_state(1)[0]) for f in filhas]
