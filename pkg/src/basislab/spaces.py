"""Norm oracles for the fixture sequence spaces.

Coefficient vectors are plain 1-D float arrays measured against a fixed
normalized basis, so ``norm(spec, e_i) == 1`` holds exactly in every family.
Supported families:

* ``lp``        -- (sum |a_i|^p)^(1/p), p >= 1
* ``c0``        -- max |a_i|
* ``lorentz``   -- d(w, p): (sum w_i (a*_i)^p)^(1/p), a* the decreasing
                   rearrangement of |a|, weights positive non-increasing
                   with w_1 = 1
* ``tsirelson`` -- implicit interval recursion, see :mod:`.tsirelson`
* ``summing``   -- max_i |sum_{j>=i} a_j| (the summing basis of c0;
                   conditional, not unconditional)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import tsirelson as _tsi
from .errors import ConfigError, InputError

FAMILIES = ("lp", "c0", "lorentz", "tsirelson", "summing")
_WEIGHT_RULES = ("harmonic", "power", "list")


@dataclass(frozen=True)
class WeightRule:
    """Lorentz weight sequence: a named rule or an explicit finite list.

    Rules keep w computable at any index without storing it: ``harmonic``
    is w_i = 1/i, ``power`` is w_i = i^(-s) with s >= 0.
    """

    rule: str = "harmonic"
    s: float = 1.0
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.rule not in _WEIGHT_RULES:
            raise ConfigError(f"unknown weight rule {self.rule!r}")
        if self.rule == "power":
            if not np.isfinite(self.s) or self.s < 0:
                raise ConfigError("power rule needs a finite exponent s >= 0")
        if self.rule == "list":
            w = np.asarray(self.values, dtype=float)
            if w.size == 0:
                raise ConfigError("list rule needs at least one weight")
            if not np.all(np.isfinite(w)) or np.any(w <= 0):
                raise ConfigError("weights must be positive and finite")
            if abs(w[0] - 1.0) > 0:
                raise ConfigError("weights must start at w_1 = 1")
            if np.any(np.diff(w) > 0):
                raise ConfigError("weights must be non-increasing")

    def prefix(self, n: int) -> np.ndarray:
        """First n weights as an array (cached; treat as read-only)."""
        return _weight_prefix(self, n)

    def to_dict(self) -> dict:
        if self.rule == "list":
            return {"rule": "list", "values": list(self.values)}
        if self.rule == "power":
            return {"rule": "power", "s": self.s}
        return {"rule": "harmonic"}

    @classmethod
    def from_dict(cls, d) -> "WeightRule":
        if isinstance(d, str):
            d = {"rule": d}
        if not isinstance(d, dict) or "rule" not in d:
            raise ConfigError(f"bad weight rule description: {d!r}")
        rule = str(d["rule"]).lower()
        if rule == "power":
            return cls(rule="power", s=float(d.get("s", 1.0)))
        if rule == "list":
            return cls(rule="list", values=tuple(float(v) for v in d.get("values", ())))
        return cls(rule=rule)


@lru_cache(maxsize=256)
def _weight_prefix(rule: WeightRule, n: int) -> np.ndarray:
    if rule.rule == "harmonic":
        return 1.0 / np.arange(1, n + 1)
    if rule.rule == "power":
        return np.arange(1, n + 1, dtype=float) ** (-rule.s)
    if n > len(rule.values):
        raise ConfigError(
            f"weight list of length {len(rule.values)} too short for n={n}"
        )
    return np.asarray(rule.values[:n], dtype=float)


@dataclass(frozen=True)
class SpaceSpec:
    """Declarative description of one sequence-space norm."""

    family: str
    p: float | None = None
    weights: WeightRule | None = None
    theta: float = 0.5

    def __post_init__(self):
        fam = self.family.lower()
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if fam in ("lp", "lorentz"):
            if self.p is None or not np.isfinite(self.p) or self.p < 1:
                raise ConfigError(f"family {fam!r} needs an exponent p >= 1")
        if fam == "lorentz" and self.weights is None:
            object.__setattr__(self, "weights", WeightRule("harmonic"))
        if fam == "tsirelson":
            if not (0.0 < self.theta < 1.0):
                raise ConfigError("tsirelson theta must lie in (0, 1)")

    @property
    def unconditional(self) -> bool:
        return self.family != "summing"

    @property
    def symmetric(self) -> bool:
        return self.family in ("lp", "c0", "lorentz")

    # --- fixture constructors -------------------------------------------
    @classmethod
    def lp(cls, p: float) -> "SpaceSpec":
        return cls(family="lp", p=float(p))

    @classmethod
    def c0(cls) -> "SpaceSpec":
        return cls(family="c0")

    @classmethod
    def lorentz(cls, weights: WeightRule | str | dict = "harmonic", p: float = 1.0) -> "SpaceSpec":
        if not isinstance(weights, WeightRule):
            weights = WeightRule.from_dict(weights)
        return cls(family="lorentz", p=float(p), weights=weights)

    @classmethod
    def tsirelson(cls, theta: float = 0.5) -> "SpaceSpec":
        return cls(family="tsirelson", theta=float(theta))

    @classmethod
    def summing(cls) -> "SpaceSpec":
        return cls(family="summing")

    # --- serialization ---------------------------------------------------
    def to_dict(self) -> dict:
        d: dict = {"family": self.family}
        if self.family in ("lp", "lorentz"):
            d["p"] = self.p
        if self.family == "lorentz":
            d["weights"] = self.weights.to_dict()
        if self.family == "tsirelson":
            d["theta"] = self.theta
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "SpaceSpec":
        if not isinstance(d, dict) or "family" not in d:
            raise ConfigError("space description must be an object with a 'family' key")
        fam = str(d["family"]).lower()
        kwargs: dict = {"family": fam}
        if "p" in d and d["p"] is not None:
            kwargs["p"] = float(d["p"])
        if "weights" in d and d["weights"] is not None:
            kwargs["weights"] = WeightRule.from_dict(d["weights"])
        if "theta" in d and d["theta"] is not None:
            kwargs["theta"] = float(d["theta"])
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> "SpaceSpec":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid space JSON: {exc}") from exc
        return cls.from_dict(d)

    @classmethod
    def load(cls, path) -> "SpaceSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())


# --- coefficient vectors --------------------------------------------------

def as_coeffs(v) -> np.ndarray:
    """Validate and convert a coefficient vector to a 1-D float array."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim == 0:
        arr = arr[None]
    if arr.ndim != 1 or arr.size < 1:
        raise InputError("coefficient vector must be non-empty and 1-D")
    if not np.all(np.isfinite(arr)):
        raise InputError("coefficient vector has non-finite entries")
    return arr


def ones(n: int) -> np.ndarray:
    if n < 1:
        raise InputError("need n >= 1")
    return np.ones(int(n))


def unit_vector(i: int, n: int) -> np.ndarray:
    """e_i (1-based) in an n-dimensional coefficient vector."""
    if not (1 <= i <= n):
        raise InputError("unit vector index out of range")
    v = np.zeros(int(n))
    v[i - 1] = 1.0
    return v


def place_at(values, positions, length: int) -> np.ndarray:
    """Scatter values onto 1-based positions of a zero vector of the given
    length (used to probe spreading invariance)."""
    vals = as_coeffs(values)
    pos = np.asarray(positions, dtype=int)
    if pos.ndim != 1 or pos.size != vals.size:
        raise InputError("positions must match values in length")
    if np.any(np.diff(pos) <= 0):
        raise InputError("positions must be strictly increasing")
    if pos[0] < 1 or pos[-1] > length:
        raise InputError("positions out of range")
    out = np.zeros(int(length))
    out[pos - 1] = vals
    return out


# --- norms -----------------------------------------------------------------

def _scaled_power_sum(A: np.ndarray, w: np.ndarray | None, p: float) -> np.ndarray:
    """Row-wise (sum w_i A_i^p)^(1/p) with max-scaling for stability."""
    m = A.max(axis=1)
    out = np.zeros(A.shape[0])
    live = m > 0
    if np.any(live):
        Z = A[live] / m[live, None]
        if p != 1.0:
            Z = Z**p
        s = Z.sum(axis=1) if w is None else Z @ w
        out[live] = m[live] * s ** (1.0 / p)
    return out


def norm_batch(spec: SpaceSpec, X) -> np.ndarray:
    """Norms of the rows of X in the given space."""
    A = np.asarray(X, dtype=float)
    if A.ndim != 2:
        raise InputError("norm_batch expects a 2-D array")
    if not np.all(np.isfinite(A)):
        raise InputError("coefficient vectors have non-finite entries")
    fam = spec.family
    if fam == "lp":
        # summing in sorted order makes the value exactly permutation- and
        # sign-invariant, not just up to roundoff
        dec = -np.sort(-np.abs(A), axis=1)
        return _scaled_power_sum(dec, None, spec.p)
    if fam == "c0":
        return np.abs(A).max(axis=1)
    if fam == "lorentz":
        w = spec.weights.prefix(A.shape[1])
        dec = -np.sort(-np.abs(A), axis=1)
        return _scaled_power_sum(dec, w, spec.p)
    if fam == "summing":
        tails = np.cumsum(A[:, ::-1], axis=1)[:, ::-1]
        return np.abs(tails).max(axis=1)
    return _tsi.norm_batch(A, spec.theta)


def norm(spec: SpaceSpec, v) -> float:
    """Norm of a single coefficient vector in the given space."""
    return float(norm_batch(spec, as_coeffs(v)[None, :])[0])


def normalize(spec: SpaceSpec, v) -> np.ndarray:
    """Scale v to unit norm.  Raises InputError on the zero vector."""
    arr = as_coeffs(v)
    nv = norm(spec, arr)
    if nv == 0.0:
        raise InputError("cannot normalize the zero vector")
    return arr / nv


def fundamental_function(spec: SpaceSpec, n: int) -> float:
    """Norm of the sum of the first n basis vectors (the growth function
    of the basis; non-decreasing in n for the 1-unconditional families)."""
    n = int(n)
    if n < 1:
        raise InputError("fundamental_function needs n >= 1")
    return norm(spec, ones(n))
