"""
Конфигурация верификатора: границы, параллелизм, формат вывода, уровень логирования
"""
import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional
import logging

logger = logging.getLogger(__name__)

CONFIG_DIR_NAME = ".markoff_verifier"


class AppConfig:
    """Вложенный словарь настроек с доступом по ключам вида 'a.b'"""

    # Значения по умолчанию
    DEFAULT_CONFIG = {
        "verification": {
            "bound": 1000,
            "jobs": 1,
            "identity_bound": 100,
            "oracle_bound": 1000
        },
        "solutions": {
            "q_max": 300,
            "q_cap": 1500,
            "residue_n_max": 10000
        },
        "profile": {
            "m_max": 1000
        },
        "qforms": {
            "m_max": 1000
        },
        "orbit": {
            "m_max": 1000,
            "uv_window": 50,
            "uv_b_max": 100,
            "diagonal_n_max": 4
        },
        "output": {
            "format": "jsonl"
        },
        "logging": {
            "level": "WARNING"
        }
    }

    def __init__(self, config_file: Optional[str] = None):
        self.config_file = config_file
        self.config = copy.deepcopy(self.DEFAULT_CONFIG)

        path = config_file or self.get_default_config_path()
        if os.path.exists(path):
            self.load(path)

    def load(self, config_file: Optional[str] = None) -> bool:
        """
        Накладывает JSON-файл поверх текущих значений.
        Файл должен быть объектом; неизвестные секции сохраняются, но о них предупреждаем.
        """
        path = config_file or self.config_file
        if not path or not os.path.exists(path):
            logger.warning(f"Config file not found: {path}")
            return False

        try:
            with open(path, 'r', encoding='utf-8') as f:
                loaded = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Error loading configuration from {path}: {e}")
            return False
        if not isinstance(loaded, dict):
            logger.error(f"Config {path} must hold a JSON object, got {type(loaded).__name__}")
            return False

        unknown = sorted(set(loaded) - set(self.DEFAULT_CONFIG))
        if unknown:
            logger.warning(f"Unknown config sections in {path}: {unknown}")
        self._deep_update(self.config, loaded)
        self.config_file = path
        logger.info(f"Configuration loaded from {path}")
        return True

    def save(self, config_file: Optional[str] = None) -> bool:
        """Сохраняет конфигурацию в файл; вызывается только явно"""
        if config_file:
            self.config_file = config_file

        if not self.config_file:
            self.config_file = self.get_default_config_path()

        try:
            os.makedirs(os.path.dirname(self.config_file) or '.', exist_ok=True)

            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, ensure_ascii=False, indent=2)

            logger.info(f"Configuration saved to {self.config_file}")
            return True
        except Exception as e:
            logger.error(f"Error saving configuration: {e}")
            return False

    def get_default_config_path(self) -> str:
        return str(Path.home() / CONFIG_DIR_NAME / "config.json")

    @staticmethod
    def _split(key: str) -> List[str]:
        parts = key.split('.')
        if not all(parts):
            raise KeyError(f"bad config key {key!r}")
        return parts

    def get(self, key: str, default: Any = None) -> Any:
        """'orbit.uv_window' -> self.config['orbit']['uv_window']"""
        node: Any = self.config
        for part in self._split(key):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def set(self, key: str, value: Any) -> bool:
        *parents, leaf = self._split(key)
        node = self.config
        for part in parents:
            if not isinstance(node.get(part), dict):
                node[part] = {}
            node = node[part]
        node[leaf] = value
        logger.debug(f"config {key} = {value!r}")
        return True

    def get_int(self, key: str) -> int:
        """Целое значение; ValueError с именем ключа при мусоре в файле"""
        value = self.get(key)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"config value {key} must be an integer, got {value!r}")
        return value

    def get_log_level(self) -> str:
        return str(self.get("logging.level", "WARNING")).upper()

    def apply_overrides(self, overrides: Dict[str, Any]) -> 'AppConfig':
        """CLI flags: None means 'not given'"""
        for key, value in overrides.items():
            if value is not None:
                self.set(key, value)
        return self

    def _deep_update(self, target: Dict, source: Dict) -> Dict:
        """Рекурсивно обновляет словарь"""
        for key, value in source.items():
            if key in target and isinstance(target[key], dict) and isinstance(value, dict):
                self._deep_update(target[key], value)
            else:
                target[key] = value
        return target

    def to_dict(self) -> Dict[str, Any]:
        return copy.deepcopy(self.config)


# Глобальный экземпляр конфигурации
_config_instance: Optional[AppConfig] = None


def get_config() -> AppConfig:
    """Возвращает глобальный экземпляр конфигурации"""
    global _config_instance
    if _config_instance is None:
        _config_instance = AppConfig()
    return _config_instance


def init_config(config_file: Optional[str] = None) -> AppConfig:
    """Инициализирует глобальную конфигурацию"""
    global _config_instance
    _config_instance = AppConfig(config_file)
    return _config_instance
