"""
Configuration service for packing runs
"""

import json
import yaml
from typing import Optional
from pathlib import Path

from ..exceptions import ConfigurationError
from ..models.config import RunConfig


class ConfigService:
    """Service for loading run configuration"""

    def load_raw(self, config_path: str) -> dict:
        """Read a JSON or YAML file into a dictionary"""
        try:
            config_path = Path(config_path)
            if not config_path.exists():
                raise ConfigurationError(f"Configuration file not found: {config_path}")

            with open(config_path, 'r', encoding='utf-8') as f:
                if config_path.suffix.lower() == '.json':
                    config_dict = json.load(f)
                elif config_path.suffix.lower() in ['.yml', '.yaml']:
                    config_dict = yaml.safe_load(f)
                else:
                    raise ConfigurationError(f"Unsupported configuration format: {config_path.suffix}")

            if not isinstance(config_dict, dict):
                raise ConfigurationError("Configuration root must be a mapping")
            return config_dict

        except ConfigurationError:
            raise
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Invalid JSON configuration: {e}")
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML configuration: {e}")
        except Exception as e:
            raise ConfigurationError(f"Error loading configuration: {e}")

    def load_config(self, config_path: str, overrides: Optional[dict] = None) -> RunConfig:
        """Load configuration; non-None overrides replace file values"""
        config_dict = self.load_raw(config_path)
        overrides = {key: value for key, value in (overrides or {}).items() if value is not None}
        # a source given as an override replaces the one in the file
        if 'input' in overrides:
            config_dict.pop('generate', None)
        if 'generate' in overrides:
            config_dict.pop('input', None)
        config_dict.update(overrides)
        return RunConfig.from_dict(config_dict)
