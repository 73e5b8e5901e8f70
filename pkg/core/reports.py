"""
Módulo de gravação dos relatórios de uma execução.

Funções:

- "format_number": Formata floats com dígitos significativos fixos.
- "write_csv": Grava uma tabela CSV.
- "write_json": Grava um JSON determinístico.
- "write_alerts": Grava o log de alertas.
- "build_manifest": Monta o manifesto de uma execução.
"""

import csv
import json
import logging
import platform
from importlib import metadata
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from schemas.scenario_schema import RunManifest, ScenarioConfig
from .configs import settings
from .security import gerar_hash_config

logger = logging.getLogger(__name__)


def format_number(value: Any, digits: Optional[int] = None) -> Any:
    digits = settings.CSV_SIGNIFICANT_DIGITS if digits is None else digits
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    return f"{value:.{digits}g}"


def write_csv(path: Path, rows: List[Dict[str, Any]]) -> Path:
    """
    Grava as linhas como CSV; as colunas seguem a ordem de primeira ocorrência das chaves.

    :param path: Arquivo de destino.
    :param rows: Linhas da tabela.

    :return: O caminho gravado.
    """
    campos: List[str] = []
    for row in rows:
        campos.extend(k for k in row if k not in campos)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=campos)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: format_number(v) for k, v in row.items()})
    logger.debug("Tabela gravada em %s (%d linhas).", path, len(rows))
    return path


def write_json(path: Path, payload: Any) -> Path:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write('\n')
    return path


def write_alerts(path: Path, lines: Iterable[str]) -> Path:
    with open(path, 'w', encoding='utf-8') as f:
        for line in lines:
            f.write(line + '\n')
    return path


def _versions() -> Dict[str, str]:
    versoes = {'python': platform.python_version()}
    for pacote in ('numpy', 'pydantic', 'click'):
        try:
            versoes[pacote] = metadata.version(pacote)
        except metadata.PackageNotFoundError:
            versoes[pacote] = 'desconhecida'
    return versoes


def build_manifest(command: str, config: ScenarioConfig, seed: Optional[int]) -> RunManifest:
    """
    Monta o manifesto com o hash da configuração, a semente efetiva e as versões do ambiente.
    """
    return RunManifest(
        command=command,
        config_hash=gerar_hash_config(config),
        seed=seed,
        versions=_versions(),
        config=config.model_dump(mode='json'),
    )
