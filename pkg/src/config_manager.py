"""
Config Manager - JSON config okuma/yazma
Oracle, kriter, harness ve çıktı varsayılanları
"""

import copy
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, List, Optional

logger = logging.getLogger(__name__)


@dataclass
class OracleConfig:
    denominator: int = 84
    max_depth: int = 30
    grid_denominators: List[int] = field(default_factory=lambda: [7, 12])


@dataclass
class CriteriaConfig:
    epsilon: float = 1e-12


@dataclass
class HarnessConfig:
    seed: int = 20240601
    samples: int = 1000
    matrix_samples: int = 1000
    workers: int = 0  # 0 = işlemci sayısı
    chunk_size: int = 2187


@dataclass
class OutputConfig:
    format: str = "text"
    path: Optional[str] = None


DEFAULT_CONFIG = {
    "oracle": {
        "denominator": 84,
        "max_depth": 30,
        "grid_denominators": [7, 12]
    },
    "criteria": {
        "epsilon": 1e-12
    },
    "harness": {
        "seed": 20240601,
        "samples": 1000,
        "matrix_samples": 1000,
        "workers": 0,
        "chunk_size": 2187
    },
    "output": {
        "format": "text",
        "path": None
    }
}


class ConfigManager:
    """Config dosyası yönetimi"""

    def __init__(self, config_path: Optional[str] = None):
        if config_path is None:
            # Proje kök dizinine göre config yolu
            project_root = Path(__file__).parent.parent
            config_path = project_root / "config" / "config.json"

        self.config_path = Path(config_path)
        self._data: dict = {}
        self.load()

    def load(self) -> None:
        """Config dosyasını oku"""
        if not self.config_path.exists():
            self._data = self._get_default_config()
            self.save()
            return

        with open(self.config_path, "r", encoding="utf-8") as f:
            self._data = json.load(f)

    def save(self) -> None:
        """Config dosyasını kaydet"""
        # config dizini yoksa oluştur
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        with open(self.config_path, "w", encoding="utf-8") as f:
            json.dump(self._data, f, indent=2, ensure_ascii=False)

    def _get_default_config(self) -> dict:
        """Varsayılan config"""
        return copy.deepcopy(DEFAULT_CONFIG)

    def as_dict(self) -> dict:
        """Eksik anahtarları varsayılanlarla tamamlanmış görünüm"""
        merged = self._get_default_config()
        for section, values in self._data.items():
            if isinstance(values, dict) and section in merged:
                merged[section].update(values)
        return merged

    # === Property Accessors ===

    @property
    def oracle(self) -> OracleConfig:
        oracle_data = self._data.get("oracle", {})
        return OracleConfig(
            denominator=oracle_data.get("denominator", 84),
            max_depth=oracle_data.get("max_depth", 30),
            grid_denominators=list(oracle_data.get("grid_denominators", [7, 12]))
        )

    @property
    def criteria(self) -> CriteriaConfig:
        criteria_data = self._data.get("criteria", {})
        return CriteriaConfig(
            epsilon=criteria_data.get("epsilon", 1e-12)
        )

    @property
    def harness(self) -> HarnessConfig:
        harness_data = self._data.get("harness", {})
        return HarnessConfig(
            seed=harness_data.get("seed", 20240601),
            samples=harness_data.get("samples", 1000),
            matrix_samples=harness_data.get("matrix_samples", 1000),
            workers=harness_data.get("workers", 0),
            chunk_size=harness_data.get("chunk_size", 2187)
        )

    @property
    def output(self) -> OutputConfig:
        output_data = self._data.get("output", {})
        return OutputConfig(
            format=output_data.get("format", "text"),
            path=output_data.get("path")
        )

    # === Updates ===

    def update(self, section: str, key: str, value: Any) -> None:
        """
        Tek bir değeri güncelle ve kaydet

        Args:
            section: "oracle", "criteria", "harness" veya "output"
            key: Bölümdeki anahtar
            value: JSON uyumlu değer
        """
        if section not in DEFAULT_CONFIG:
            raise KeyError(f"Unknown config section: {section}")
        if key not in DEFAULT_CONFIG[section]:
            raise KeyError(f"Unknown config key: {section}.{key}")

        self._data.setdefault(section, {})[key] = value
        self.save()
        logger.info(f"Config updated: {section}.{key} = {value!r}")
