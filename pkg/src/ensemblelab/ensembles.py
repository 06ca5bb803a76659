"""Ensemble construction and mean aggregation.

Three dependence structures are distinguished: i.i.d. draws from a base
distribution, a fixed prediction list in uniformly random order (exchangeable
but not independent), and the duplicate triple (y1, y2, y1) whose third
member copies the first -- identically distributed but not exchangeable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .distributions import Distribution, stream_rng

__all__ = [
    "EnsembleSpec",
    "iid",
    "randomly_reordered",
    "duplicate_third",
    "build_ensemble",
    "sample_ensembles",
    "prefix_means",
    "majority_vote",
]

STRUCTURES = ("iid", "randomly_reordered", "duplicate_third")


@dataclass(frozen=True)
class EnsembleSpec:
    """Base distribution (or fixed list), dependence structure, and size K."""

    base: object
    structure: str = "iid"
    K: int = 1
    fixed: tuple = field(default=None)

    def __post_init__(self):
        if self.structure not in STRUCTURES:
            raise ValueError(f"structure must be one of {STRUCTURES}")
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if self.structure == "duplicate_third" and self.K != 3:
            raise ValueError("duplicate_third requires K = 3")
        if self.structure == "randomly_reordered":
            if self.fixed is None:
                raise ValueError("randomly_reordered needs a fixed prediction list")
            if self.K != len(self.fixed):
                raise ValueError("K must equal the fixed list length")


def iid(base: Distribution, K: int) -> EnsembleSpec:
    return EnsembleSpec(base=base, structure="iid", K=K)


def randomly_reordered(values) -> EnsembleSpec:
    vals = tuple(np.asarray(v, dtype=float) if np.ndim(v) else float(v) for v in values)
    return EnsembleSpec(base=None, structure="randomly_reordered", K=len(vals), fixed=vals)


def duplicate_third(base: Distribution) -> EnsembleSpec:
    return EnsembleSpec(base=base, structure="duplicate_third", K=3)


def build_ensemble(spec: EnsembleSpec, seed, stream=0):
    """One realization of the ensemble: array of K predictions."""
    return sample_ensembles(spec, 1, seed, stream)[0]


def sample_ensembles(spec: EnsembleSpec, R: int, seed, stream=0):
    """R independent ensemble realizations, shape (R, K) or (R, K, d).

    Deterministic in (spec, R, seed, stream); replicate r of a larger batch
    equals replicate r of any batch with the same arguments."""
    if R < 1:
        raise ValueError("R must be >= 1")
    if spec.structure == "iid":
        draws = spec.base.sample(R * spec.K, seed, stream)
        return draws.reshape((R, spec.K) + draws.shape[1:])
    if spec.structure == "duplicate_third":
        pair = spec.base.sample(R * 2, seed, stream)
        pair = pair.reshape((R, 2) + pair.shape[1:])
        return np.stack([pair[:, 0], pair[:, 1], pair[:, 0]], axis=1)
    # randomly_reordered
    vals = np.asarray(spec.fixed, dtype=float)
    rng = stream_rng(seed, stream)
    idx = np.argsort(rng.random((R, spec.K)), axis=1)
    return vals[idx]


def prefix_means(draws):
    """Running means of one ensemble: out[k-1] = mean of the first k draws.

    Accepts (K,) scalar or (K, d) vector predictions; the running sums make
    the final entry agree with a direct mean to machine precision."""
    x = np.asarray(draws, dtype=float)
    if x.size == 0:
        raise ValueError("empty ensemble")
    k = np.arange(1, x.shape[0] + 1, dtype=float).reshape((-1,) + (1,) * (x.ndim - 1))
    return np.cumsum(x, axis=0) / k


def prefix_means_batch(draws):
    """Running means along axis 1 of a (R, K, ...) batch."""
    x = np.asarray(draws, dtype=float)
    k = np.arange(1, x.shape[1] + 1, dtype=float).reshape((1, -1) + (1,) * (x.ndim - 2))
    return np.cumsum(x, axis=1) / k


def majority_vote(votes):
    """1 iff the mean vote exceeds 1/2; exact ties return 0."""
    v = np.asarray(votes, dtype=float)
    if not np.isin(v, (0.0, 1.0)).all():
        raise ValueError("votes must be 0/1")
    return int(v.mean() > 0.5)
