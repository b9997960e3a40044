import math
import os
from collections.abc import Callable, Mapping
from dataclasses import dataclass, fields
from pathlib import Path

from dotenv import find_dotenv, load_dotenv

# Fields where the dataclass default is a real value, so env is read only when not passed
_ENV_OVERRIDE_FIELDS = frozenset({"threads", "cutoff", "joint_cutoff", "quadrature_nodes"})

_VALID_LOG_BASES = frozenset({"2", "e"})


def _default_threads() -> int:
    """Available parallelism for this process."""
    import psutil

    try:
        return max(1, len(psutil.Process().cpu_affinity() or []))
    except (AttributeError, NotImplementedError, psutil.Error):
        return max(1, psutil.cpu_count() or 1)


def _parse_float_list(raw: str) -> tuple[float, ...]:
    return tuple(float(part) for part in raw.split(",") if part.strip())


@dataclass
class GaussCapConfig:
    # Numerics
    log_base: str = ""
    tolerance: float = 1e-10
    physical_tolerance: float = 1e-9

    # Fock oracle
    cutoff: int = 60
    joint_cutoff: int = 30
    quadrature_nodes: int = 24

    # Execution
    log_level: str = ""
    threads: int = 0

    # Figure grids
    figure_n_list: tuple[float, ...] = (0.1, 1.0, 10.0)
    figure_k_max: float = 3.0
    figure_k_steps: int = 300
    figure_nc_max: float = 2.0
    figure_nc_steps: int = 200

    # Track which fields were explicitly set by the caller
    _explicit_fields: frozenset[str] | None = None

    def __init__(self, **kwargs: object) -> None:
        valid_fields = {f.name for f in fields(self) if f.name != "_explicit_fields"}
        unexpected = set(kwargs) - valid_fields
        if unexpected:
            raise TypeError(
                f"Unexpected GaussCapConfig field(s): {', '.join(sorted(unexpected))}"
            )

        object.__setattr__(
            self, "_explicit_fields", frozenset(kwargs.keys()) & _ENV_OVERRIDE_FIELDS
        )
        for f in fields(self):
            if f.name == "_explicit_fields":
                continue
            if f.name in kwargs:
                object.__setattr__(self, f.name, kwargs[f.name])
            else:
                object.__setattr__(self, f.name, f.default)
        self.__post_init__()

    def __post_init__(self) -> None:
        """Read env vars at instantiation time and validate."""
        from src.utils.exceptions import ConfigurationError

        explicit = self._explicit_fields or frozenset()

        if not self.log_base:
            self.log_base = os.getenv("GAUSSCAP_LOG_BASE", "2")
        if not self.log_level:
            self.log_level = os.getenv("GAUSSCAP_LOG_LEVEL", "INFO")

        try:
            if "threads" not in explicit:
                self.threads = int(os.getenv("GAUSSCAP_THREADS", "0"))
            if "cutoff" not in explicit:
                self.cutoff = int(os.getenv("GAUSSCAP_CUTOFF", str(self.cutoff)))
            if "joint_cutoff" not in explicit:
                self.joint_cutoff = int(os.getenv("GAUSSCAP_JOINT_CUTOFF", str(self.joint_cutoff)))
            if "quadrature_nodes" not in explicit:
                self.quadrature_nodes = int(
                    os.getenv("GAUSSCAP_QUADRATURE_NODES", str(self.quadrature_nodes))
                )
        except ValueError as e:
            raise ConfigurationError(f"Invalid integer in environment: {e!s}") from e

        if self.threads <= 0:
            self.threads = _default_threads()

        # Validation
        self.log_base = str(self.log_base).strip().lower()
        if self.log_base not in _VALID_LOG_BASES:
            raise ConfigurationError(
                f"GAUSSCAP_LOG_BASE must be one of 2, e; got {self.log_base!r}"
            )
        if self.cutoff < 2 or self.joint_cutoff < 2:
            raise ConfigurationError("Fock cutoffs must be at least 2")
        if self.quadrature_nodes < 2:
            raise ConfigurationError("quadrature_nodes must be at least 2")
        if self.tolerance <= 0 or self.physical_tolerance <= 0:
            raise ConfigurationError("Tolerances must be positive")
        if self.figure_k_steps < 2 or self.figure_nc_steps < 2:
            raise ConfigurationError("Figure grids need at least 2 steps")
        if not self.figure_n_list:
            raise ConfigurationError("figure_n_list cannot be empty")

    @property
    def log_base_value(self) -> float:
        """Numeric logarithm base for every entropy and capacity."""
        return math.e if self.log_base == "e" else 2.0


# Parsers for values read from a key=value config file
_FIELD_PARSERS: dict[str, Callable[[str], object]] = {
    "log_base": str,
    "log_level": str,
    "tolerance": float,
    "physical_tolerance": float,
    "cutoff": int,
    "joint_cutoff": int,
    "quadrature_nodes": int,
    "threads": int,
    "figure_n_list": _parse_float_list,
    "figure_k_max": float,
    "figure_k_steps": int,
    "figure_nc_max": float,
    "figure_nc_steps": int,
}


def parse_config_values(raw: Mapping[str, str]) -> dict[str, object]:
    """Convert string settings to typed config values.

    Raises:
        ConfigurationError: On unknown keys or unparsable values
    """
    from src.utils.exceptions import ConfigurationError

    parsed: dict[str, object] = {}
    errors = []
    for key, value in raw.items():
        parser = _FIELD_PARSERS.get(key)
        if parser is None:
            errors.append(f"unknown setting {key!r}")
            continue
        try:
            parsed[key] = parser(value.strip())
        except ValueError:
            errors.append(f"invalid value for {key}: {value!r}")
    if errors:
        raise ConfigurationError("; ".join(errors))
    return parsed


def load_config_file(path: str | Path) -> dict[str, object]:
    """Read a plain-text key=value file; '#' starts a comment.

    Raises:
        ConfigurationError: On malformed lines, unknown keys or bad values
        OSError: If the file cannot be read
    """
    from src.utils.exceptions import ConfigurationError

    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigurationError(f"{path}:{lineno}: expected key=value")
        key, value = stripped.split("=", 1)
        raw[key.strip()] = value
    return parse_config_values(raw)


def load_env_file() -> bool:
    """Load the nearest .env above the working directory; real environment variables win."""
    return load_dotenv(find_dotenv(usecwd=True))


_config: GaussCapConfig | None = None


def get_config() -> GaussCapConfig:
    """Get or create the application config singleton."""
    global _config
    if _config is None:
        load_env_file()
        _config = GaussCapConfig()
    return _config


def set_config(config: GaussCapConfig) -> None:
    """Install a config built from merged sources (CLI flags over file over env)."""
    global _config
    _config = config


def reset_config() -> None:
    """Reset config for testing. Not for production use."""
    global _config
    _config = None
