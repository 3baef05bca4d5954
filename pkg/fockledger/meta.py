import logging
import os
import tempfile
import uuid
from datetime import datetime

import yaml

from fockledger.utils.utils import merge, set_random_seed

MAX_CONFIG_SEARCH_DEPTH = 25  # Max num of parent directories to look for config
MAX_CUTOFF_ENV = "FOCKLEDGER_MAX_CUTOFF"
CONFIG_NAME = "fockledger-config.yaml"
LOG_FORMAT = "[%(asctime)s][%(levelname)s] %(name)s:%(lineno)s - %(message)s"

logger = logging.getLogger(__name__)


def init(
    log_dir=None,
    log_name="fockledger.log",
    format=LOG_FORMAT,
    level=logging.INFO,
    config=None,
    config_dir=None,
    config_name=CONFIG_NAME,
):
    """Load the configuration, then open a run directory for logs and artifacts.

    The config is layered as defaults < ``config_name`` found from
    ``config_dir`` upwards < ``config`` < ``FOCKLEDGER_MAX_CUTOFF``.

    :param log_dir: Root of the run directories; when None the configured
        ``meta_config.log_path`` is used, then the system temp directory.
    :type log_dir: str, optional
    :param log_name: The log file name.
    :type log_name: str
    :param format: The logging format string to use.
    :type format: str
    :param level: The logging level to use, e.g., logging.INFO.
    :param config: Overrides, typically built from command line flags.
    :type config: dict, optional
    :param config_dir: Where to start looking for the config file.
    :type config_dir: str, optional
    :param config_name: The config file name.
    :type config_name: str
    """

    init_config()
    Meta.update_config(config or {}, config_dir, config_name)

    log_dir = log_dir or Meta.config["meta_config"].get("log_path") or tempfile.gettempdir()
    init_logging(log_dir, log_name, format, level)

    set_random_seed(Meta.config["meta_config"]["seed"])


def init_config():
    """Load the default configuration."""

    default_config_path = os.path.join(
        os.path.dirname(os.path.realpath(__file__)), "fockledger-default-config.yaml"
    )
    with open(default_config_path, "r") as f:
        Meta.config = yaml.safe_load(f)
    logger.debug(f"Loading fockledger default config from {default_config_path}.")

    apply_env_overrides()


def apply_env_overrides():
    """Cap the adaptive cutoff with FOCKLEDGER_MAX_CUTOFF when it is set."""

    value = os.environ.get(MAX_CUTOFF_ENV)
    if not value:
        return

    try:
        max_cutoff = int(value)
    except ValueError:
        raise ValueError(f"{MAX_CUTOFF_ENV} must be an integer, got {value!r}")
    if max_cutoff < 1:
        raise ValueError(f"{MAX_CUTOFF_ENV} must be positive, got {max_cutoff}")

    Meta.config["fock_config"]["max_cutoff"] = max_cutoff
    logger.debug(f"Max cutoff set to {max_cutoff} from {MAX_CUTOFF_ENV}.")


def _new_run_dir(log_dir):
    stamp = datetime.now()
    while True:
        run_dir = os.path.join(
            log_dir,
            stamp.strftime("%Y_%m_%d"),
            stamp.strftime("%H_%M_%S"),
            uuid.uuid4().hex[:8],
        )
        if not os.path.exists(run_dir):
            os.makedirs(run_dir)
            return run_dir


def init_logging(
    log_dir=None,
    log_name="fockledger.log",
    format=LOG_FORMAT,
    level=logging.INFO,
):
    """Log to stderr and to ``<log_dir>/<date>/<time>/<uid>/<log_name>``.

    Only the first call of a process opens a run directory.
    """

    if Meta.log_path:
        logger.debug(f"Logging already goes to {Meta.log_path}.")
        return

    run_dir = _new_run_dir(log_dir or tempfile.gettempdir())
    logging.basicConfig(
        format=format,
        level=level,
        handlers=[
            logging.FileHandler(os.path.join(run_dir, log_name)),
            logging.StreamHandler(),
        ],
    )
    Meta.log_path = run_dir
    logger.info(f"Writing run artifacts to {run_dir}")


def _find_config_file(path, filename):
    current_dir = os.path.abspath(path)
    for _ in range(MAX_CONFIG_SEARCH_DEPTH):
        candidate = os.path.join(current_dir, filename)
        if os.path.exists(candidate):
            return candidate
        parent = os.path.dirname(current_dir)
        if parent == current_dir:
            break
        current_dir = parent
    return None


class Meta:
    """Process-wide configuration and run directory."""

    log_path = None
    config = None

    @staticmethod
    def get_config():
        """Return the current config, loading the defaults if nothing is loaded.

        This never creates a run directory, so library code can call it freely.
        """
        if not Meta.config:
            init_config()
        return Meta.config

    @staticmethod
    def update_config(config=None, path=None, filename=CONFIG_NAME):
        """Merge a user config file, then ``config``, into the current config.

        :param config: Overrides that win over the file.
        :type config: dict, optional
        :param path: Directory where the search for ``filename`` starts; up to
            25 parent directories are tried.
        :type path: str, optional
        :param filename: The config file name.
        :type filename: str
        """

        Meta.get_config()

        if path is not None:
            config_path = _find_config_file(path, filename)
            if config_path:
                with open(config_path, "r") as f:
                    Meta.config = merge(Meta.config, yaml.safe_load(f) or {})
                logger.info(f"Updating fockledger config from {config_path}.")
            else:
                logger.debug(f"No {filename} above {path}, using defaults.")

        if config:
            Meta.config = merge(Meta.config, config)

        apply_env_overrides()

    @staticmethod
    def reset():
        Meta.log_path = None
        Meta.config = None
