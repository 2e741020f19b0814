from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class VerifyConfig(BaseModel):
    """
    Bounds for one full verification run. Defaults complete in seconds.
    Every bound is echoed into the certificate so a replay can rebuild it.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    n_max: int = Field(default=1000, ge=1)
    k_max: int = Field(default=50, ge=1)
    d_sweep: int = Field(default=500, ge=1)
    trace_max: int = Field(default=10000, ge=2)
    trace_pow_max: int = Field(default=2000, ge=1)
    theta_scan_max: int = Field(default=41, ge=1)
    sign_max: int = Field(default=199, ge=3)
    lte_k_max: int = Field(default=100, ge=1)
    shift_m1_max: int = Field(default=21, ge=3)
    shift_d_max: int = Field(default=100, ge=1)


class CliConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: Literal["search", "residues", "theta", "valuation", "verify", "check"]
    format: Literal["text", "json"] = "text"
    n_max: int = Field(default=1000, ge=1)
    k_max: int = Field(default=50, ge=1)
    d_sweep: int = Field(default=500, ge=1)
    m: Optional[int] = Field(default=None, ge=1)
    p: Optional[int] = Field(default=None, ge=2)
    n: Optional[int] = None
    b_sum: Optional[int] = Field(default=None, ge=1)
    out: Optional[str] = None
    in_path: Optional[str] = None
