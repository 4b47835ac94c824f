import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger

from .settings import settings


class IndexCatalog:
    """Named half-integral indices, Siegel basis labels and the catalogued linear systems"""

    def __init__(self, config_file: Optional[str] = None):
        self.config_file = Path(config_file or settings.CATALOG_FILE)
        self._config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load the catalog from JSON"""
        try:
            if not self.config_file.exists():
                logger.error(f"Index catalog not found: {self.config_file}")
                return {"named_indices": {}, "families": {}, "bases": {}, "systems": {}}

            with open(self.config_file, "r") as f:
                config = json.load(f)

            logger.debug(f"Loaded {len(config.get('named_indices', {}))} named indices")
            return config

        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to load index catalog: {e}")
            return {"named_indices": {}, "families": {}, "bases": {}, "systems": {}}

    def get_index_rows(self, label: str) -> Optional[List[List[Fraction]]]:
        """Rows of a fixed named index as exact rationals"""
        entry = self._config.get("named_indices", {}).get(label)
        if entry is None:
            return None
        return [[Fraction(str(v)) for v in row] for row in entry["rows"]]

    def get_index_description(self, label: str) -> Optional[str]:
        entry = self._config.get("named_indices", {}).get(label)
        return entry.get("description") if entry else None

    def get_fixed_labels(self) -> List[str]:
        return list(self._config.get("named_indices", {}).keys())

    def get_family(self, prefix: str) -> Optional[Dict[str, Any]]:
        """Parametrised family such as D:a"""
        return self._config.get("families", {}).get(prefix)

    def get_basis_labels(self, weight: int) -> List[str]:
        """Siegel basis labels for a weight, in catalog order"""
        return list(self._config.get("bases", {}).get(str(weight), {}).keys())

    def get_basis_description(self, weight: int, label: str) -> Optional[str]:
        return self._config.get("bases", {}).get(str(weight), {}).get(label)

    def get_system(self, form: str, weight: int) -> Optional[Dict[str, Any]]:
        """Recommended columns and held-out columns for a (form, weight) pair"""
        return self._config.get("systems", {}).get(f"{form}-{weight}")

    def get_system_keys(self) -> List[str]:
        return list(self._config.get("systems", {}).keys())

    def reload_config(self):
        """Reload the catalog from disk"""
        self._config = self._load_config()
        logger.info("Index catalog reloaded")


# Global instance
index_catalog = IndexCatalog()
