from typing import List, Tuple

from pydantic import BaseModel

from .records import SolutionPair, ValuationField, ValuationPair


class SearchOutput(BaseModel):
    n_max: int
    solutions: List[SolutionPair]


class ResiduesOutput(BaseModel):
    modulus: int = 42
    residues: List[int]


class ThetaOutput(BaseModel):
    m: int
    difference: Tuple[int, int]
    b_m: int
    s: int
    trace: int
    holds: bool


class ValuationOutput(BaseModel):
    p: int
    n: int
    valuation: ValuationField


class BinomialValuationOutput(BaseModel):
    d: int
    valuations: ValuationPair
    equal: bool
