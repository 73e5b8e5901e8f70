"""
Módulo de integridade das execuções: hash da configuração e verificação de manifestos.
Utiliza o `hashlib` (SHA-256) sobre o JSON canônico da configuração validada.

Funções:

- "gerar_hash_config": Gera o hash de uma configuração.
- "verificar_hash_config": Verifica se uma configuração corresponde ao hash registrado.
- "verify_manifest": Confere o hash registrado em um "manifest.json".
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Union

from pydantic import ValidationError

from schemas.scenario_schema import RunManifest, ScenarioConfig
from .errors import ConfigError


def _canonical(config: ScenarioConfig) -> str:
    return json.dumps(config.model_dump(mode='json'), sort_keys=True, separators=(',', ':'))


def gerar_hash_config(config: ScenarioConfig) -> str:
    """
    Gera o hash SHA-256 da configuração; chaves ordenadas e sem espaços.

    :param config: Configuração validada.

    :return: Hash hexadecimal.
    """
    return hashlib.sha256(_canonical(config).encode('utf-8')).hexdigest()


def verificar_hash_config(config: Union[ScenarioConfig, Dict[str, Any]], hash_config: str) -> bool:
    """
    Verifica se a configuração corresponde ao hash registrado.

    :param config: Configuração validada ou o dicionário bruto gravado no manifesto.
    :param hash_config: Hash registrado.

    :return: Retorna "True" se os hashes coincidirem e "False" caso contrário.
    """
    if not isinstance(config, ScenarioConfig):
        config = ScenarioConfig.model_validate(config)
    return gerar_hash_config(config) == hash_config


def verify_manifest(path: Union[str, Path]) -> bool:
    """
    Relê um "manifest.json" e confere o hash com a configuração nele registrada.

    :raises ConfigError: Se o manifesto estiver ilegível ou malformado.
    """
    try:
        manifest = RunManifest.model_validate_json(Path(path).read_text(encoding='utf-8'))
        return verificar_hash_config(manifest.config, manifest.config_hash)
    except (OSError, ValidationError) as exc:
        raise ConfigError(f"Manifesto inválido ({path}): {exc}")
