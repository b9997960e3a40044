"""Parameters and closed-form report of the one-mode attenuation/amplification channel."""

from dataclasses import asdict, dataclass
from typing import Final

from src.utils.validation import validate_nonnegative

C1_LABEL: Final[str] = "conjectured-optimal lower bound"

# Column order of a flattened report; part of the output contract
REPORT_COLUMNS: Final[tuple[str, ...]] = (
    "k",
    "nc",
    "n",
    "n_prime",
    "n0_prime",
    "d",
    "lambda1_abs",
    "lambda2_abs",
    "h_in",
    "h_out",
    "h_exch",
    "c_e",
    "c1_lower",
    "gain",
    "gain_infinite",
    "j",
    "q_g",
    "q_theta",
)


@dataclass(frozen=True)
class OneModeParams:
    """Channel a' = k a (+ environment) with classical noise of variance N_c."""

    k: float
    nc: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", validate_nonnegative(self.k, "k"))
        object.__setattr__(self, "nc", validate_nonnegative(self.nc, "nc"))

    @property
    def n0_prime(self) -> float:
        """Output photon number for the vacuum input."""
        return max(0.0, self.k * self.k - 1.0) + self.nc


@dataclass(frozen=True)
class OneModeReport:
    """Every closed-form scalar of the one-mode channel at input power n."""

    k: float
    nc: float
    n: float
    n_prime: float
    n0_prime: float
    d: float
    lambda_abs: tuple[float, float]
    h_in: float
    h_out: float
    h_exch: float
    c_e: float
    c1_lower: float
    gain: float
    gain_infinite: bool
    j: float
    q_g: float
    q_theta: float
    log_base: str = "2"

    def as_record(self) -> dict[str, float | bool]:
        """Flatten into REPORT_COLUMNS order."""
        data = asdict(self)
        lambda1, lambda2 = data.pop("lambda_abs")
        data["lambda1_abs"] = lambda1
        data["lambda2_abs"] = lambda2
        return {column: data[column] for column in REPORT_COLUMNS}
