from fockledger._version import __version__
from fockledger.meta import Meta, init, init_config, init_logging

__all__ = ["__version__", "Meta", "init", "init_config", "init_logging"]
