from .app_config import AppConfig, get_config, init_config

__all__ = ['AppConfig', 'get_config', 'init_config']
