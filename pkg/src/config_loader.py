import sys
import json
import logging
import jsonc_parser.parser

import errors

logger = logging.getLogger(__name__)

DEFAULTS = {
    "path_length_cap": 64,
    "max_paths": 200000,
    "dim_cap": 64,
    "count_cap": 10000,
    "sweep_bound": 2,
    "induce_cap": 10000,
    "ext_combination_limit": 4,
    "log_level": "WARNING",
}

POSITIVE_INT_KEYS = ['path_length_cap', 'max_paths', 'dim_cap', 'count_cap',
                     'sweep_bound', 'induce_cap', 'ext_combination_limit']

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']


def _json_error_position(exc, text):
    """Find line/column of a JSON syntax error, if one can be recovered"""
    seen = exc
    while seen is not None:
        if isinstance(seen, json.JSONDecodeError):
            return seen.lineno, seen.colno
        seen = seen.__cause__ or seen.__context__
    try:
        json.loads(text)
    except json.JSONDecodeError as e:
        return e.lineno, e.colno
    return None, None


def parse_jsonc(text):
    """Parse JSON-with-comments text, raising ParseError with a position on failure"""
    try:
        return jsonc_parser.parser.JsoncParser.parse_str(text)
    except Exception as e:
        line, column = _json_error_position(e, text)
        raise errors.ParseError(f"Invalid JSON: {e}", line, column)


def read_jsonc_file(path):
    """Read and parse a JSON-with-comments input file"""
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise errors.InputError(f"Cannot read {path}: {e}", code="io")
    return parse_jsonc(text)


class Config:
    """Global configuration singleton"""
    _instance = None
    _config_data = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(Config, cls).__new__(cls)
        return cls._instance

    def load(self, config_path='config.jsonc'):
        """Load configuration from JSONC file"""
        try:
            loaded = jsonc_parser.parser.JsoncParser.parse_file(config_path)
            logger.info(f"Configuration loaded successfully from {config_path}")
        except Exception as e:
            logger.error(f"Error loading configuration from {config_path}: {e}")
            logger.error("Aborting program.")
            sys.exit(2)
        self._config_data = dict(DEFAULTS)
        self._config_data.update(loaded or {})
        self._validate()

    def reset(self):
        """Drop any loaded file and go back to the defaults"""
        self._config_data = None

    def override(self, **values):
        """Replace individual settings (used by CLI flags and tests)"""
        data = dict(self._data())
        data.update({k: v for k, v in values.items() if v is not None})
        self._config_data = data
        self._validate()

    def _data(self):
        return self._config_data if self._config_data is not None else DEFAULTS

    def _validate(self):
        """Validate that the configuration has the required structure"""
        if not validate_config(self._data()):
            logger.error("Aborting program.")
            sys.exit(2)
        logger.info("Configuration validation passed")

    @property
    def path_length_cap(self):
        """Longest path length tried before declaring an algebra infinite-dimensional"""
        return self._data()['path_length_cap']

    @property
    def max_paths(self):
        """Largest number of paths enumerated per truncation window"""
        return self._data()['max_paths']

    @property
    def dim_cap(self):
        """Total-dimension cap for indecomposable enumeration"""
        return self._data()['dim_cap']

    @property
    def count_cap(self):
        """Indecomposable-count cap for enumeration"""
        return self._data()['count_cap']

    @property
    def sweep_bound(self):
        """Coefficient bound of the deterministic combination sweep"""
        return self._data()['sweep_bound']

    @property
    def induce_cap(self):
        """Cartesian-product size above which induced systems are streamed"""
        return self._data()['induce_cap']

    @property
    def ext_combination_limit(self):
        """Largest Ext dimension for which all 0/1 cocycle combinations are realized"""
        return self._data()['ext_combination_limit']

    @property
    def log_level(self):
        """Root logger level name used when neither --verbose nor --debug is given"""
        return self._data()['log_level']


# Global config instance
config = Config()


def load_config(config_path='config.jsonc'):
    """Load configuration from JSONC file (JSON with comments), filling defaults"""
    try:
        loaded = jsonc_parser.parser.JsoncParser.parse_file(config_path)
        logger.info(f"Configuration loaded successfully from {config_path}")
    except Exception as e:
        logger.error(f"Error loading configuration from {config_path}: {e}")
        logger.error("Aborting program.")
        sys.exit(2)
    merged = dict(DEFAULTS)
    merged.update(loaded or {})
    return merged


def validate_config(config):
    """Check every known key; unknown keys are reported but tolerated"""
    for key in config:
        if key not in DEFAULTS:
            logger.warning(f"Ignoring unknown configuration key: {key}")

    for key in POSITIVE_INT_KEYS:
        value = config.get(key, DEFAULTS[key])
        if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
            logger.error(f"'{key}' must be a positive integer")
            return False

    level = config.get('log_level', DEFAULTS['log_level'])
    if not isinstance(level, str) or level.upper() not in LOG_LEVELS:
        logger.error(f"'log_level' must be one of {LOG_LEVELS}")
        return False

    return True


def get_caps(config):
    """Enumeration caps as (dim_cap, count_cap)"""
    return config.get('dim_cap', DEFAULTS['dim_cap']), config.get('count_cap', DEFAULTS['count_cap'])


def get_sweep_bound(config):
    """Coefficient bound for the combination sweep"""
    return config.get('sweep_bound', DEFAULTS['sweep_bound'])


def get_log_level(config):
    return getattr(logging, config.get('log_level', DEFAULTS['log_level']).upper())
