from .settings import settings
from .index_catalog import IndexCatalog, index_catalog

__all__ = ["settings", "IndexCatalog", "index_catalog"]
