"""Block bases generated by a single finitely supported vector.

The generator alpha = (b_1, ..., b_m) produces the disjointly supported
copies U_i occupying coordinates (i-1)m+1 .. im, with the coefficients of
alpha repeated in order; U_1 is alpha itself.  Expanding a coefficient
vector a through the blocks is exactly kron(a, alpha).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import N_MAX, TAU_NORM
from .errors import InputError
from .spaces import SpaceSpec, as_coeffs, norm, normalize


@dataclass
class GeneratedBlockSpec:
    """A generating vector together with its block arithmetic."""

    alpha: np.ndarray
    normalized: bool = False
    m: int = field(init=False)

    def __post_init__(self):
        self.alpha = as_coeffs(self.alpha)
        if not np.any(self.alpha):
            raise InputError("block generator must be nonzero")
        self.m = int(self.alpha.size)


def make_generator(spec: SpaceSpec, alpha, unit: bool = True) -> GeneratedBlockSpec:
    """Build a GeneratedBlockSpec, normalizing alpha in the space by default."""
    if unit:
        return GeneratedBlockSpec(alpha=normalize(spec, alpha), normalized=True)
    return GeneratedBlockSpec(alpha=as_coeffs(alpha), normalized=False)


def generate_block(bspec: GeneratedBlockSpec, i: int) -> np.ndarray:
    """The i-th block (1-based): alpha shifted onto coordinates
    (i-1)m+1 .. im, returned as a vector of length i*m."""
    i = int(i)
    if i < 1:
        raise InputError("block index must be >= 1")
    if i * bspec.m > N_MAX:
        raise InputError(f"block end {i * bspec.m} exceeds N_MAX={N_MAX}")
    out = np.zeros(i * bspec.m)
    out[(i - 1) * bspec.m :] = bspec.alpha
    return out


def expand(bspec: GeneratedBlockSpec, a) -> np.ndarray:
    """sum_i a_i U_i as one coefficient vector of length len(a) * m."""
    a = as_coeffs(a)
    if a.size * bspec.m > N_MAX:
        raise InputError(
            f"expansion length {a.size * bspec.m} exceeds N_MAX={N_MAX}"
        )
    return (a[:, None] * bspec.alpha[None, :]).ravel()


def block_norm(spec: SpaceSpec, bspec: GeneratedBlockSpec, a) -> float:
    """Norm of the expansion of a through the generated blocks."""
    return norm(spec, expand(bspec, a))


@dataclass
class BlockBoundCheck:
    lower_ok: bool
    upper_ok: bool
    ratio: float


def subsymmetric_bound(
    spec: SpaceSpec, bspec: GeneratedBlockSpec, a, tol: float = TAU_NORM
) -> BlockBoundCheck:
    """Check the two-sided block estimate for spreading-invariant norms:

        |b_j| * ||a||  <=  ||sum_i a_i U_i||  <=  (sum_k |b_k|) * ||a||

    with j the index of the largest |b_j|.  ratio is block norm over base
    norm.  Valid for the 1-symmetric families (lp, c0, lorentz)."""
    if not spec.symmetric:
        raise InputError("subsymmetric_bound needs a spreading-invariant family")
    a = as_coeffs(a)
    base = norm(spec, a)
    if base == 0.0:
        raise InputError("coefficient vector must be nonzero")
    bn = block_norm(spec, bspec, a)
    bmax = float(np.max(np.abs(bspec.alpha)))
    bsum = float(np.sum(np.abs(bspec.alpha)))
    return BlockBoundCheck(
        lower_ok=bool(bmax * base <= bn + tol),
        upper_ok=bool(bn <= bsum * base + tol),
        ratio=bn / base,
    )
