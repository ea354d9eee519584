"""Shapley values for the token-vs-vector cosine game.

The game: players are distinct weighted tokens of a source document; a
coalition S builds the source's term vector restricted to S, and its value
is the (floored) cosine against a fixed target vector, with v(empty) = 0.

Because cosine only needs the coalition's dot product with the target and
its squared norm, all coalition values reduce to two subset sums, which
makes exact enumeration cheap for a dozen players and permutation
sampling cheap for a few hundred.
"""
from __future__ import annotations

import math

import numpy as np


def coalition_values(num: np.ndarray, sq: np.ndarray, target_norm: float, masks: np.ndarray) -> np.ndarray:
    """v(S) for each bit mask row; num_i = w_i * y_i, sq_i = w_i^2."""
    dots = masks @ num
    norms = np.sqrt(masks @ sq) * target_norm
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = np.where(norms > 0, dots / np.where(norms > 0, norms, 1.0), 0.0)
    return np.maximum(vals, 0.0)


def _all_masks(n: int) -> np.ndarray:
    ids = np.arange(2**n, dtype=np.uint32)
    return ((ids[:, None] >> np.arange(n)) & 1).astype(float)


def exact_shapley(num: np.ndarray, sq: np.ndarray, target_norm: float) -> np.ndarray:
    """Exact Shapley values by full subset enumeration (n <= ~16)."""
    n = len(num)
    masks = _all_masks(n)
    values = coalition_values(num, sq, target_norm, masks)
    sizes = masks.sum(axis=1).astype(int)

    # weight of a coalition S (not containing i): |S|! (n-|S|-1)! / n!
    fact = np.array([float(math.factorial(k)) for k in range(n + 1)])
    coef = fact[np.arange(n)] * fact[n - 1 - np.arange(n)] / fact[n]

    phi = np.zeros(n)
    member = masks.astype(bool)
    for i in range(n):
        without = ~member[:, i]
        s_ids = np.flatnonzero(without)
        with_i = s_ids + (1 << i)
        gains = values[with_i] - values[s_ids]
        phi[i] = float(np.sum(coef[sizes[s_ids]] * gains))
    return phi


def sampled_shapley(
    num: np.ndarray,
    sq: np.ndarray,
    target_norm: float,
    permutations: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Monte Carlo Shapley over uniformly random player orderings.

    phi_i is the mean marginal contribution of i across sampled orderings;
    one ordering costs O(n) because prefix sums give every prefix value.
    """
    n = len(num)
    phi = np.zeros(n)
    for _ in range(permutations):
        perm = rng.permutation(n)
        dots = np.concatenate(([0.0], np.cumsum(num[perm])))
        sqs = np.concatenate(([0.0], np.cumsum(sq[perm])))
        norms = np.sqrt(sqs) * target_norm
        with np.errstate(invalid="ignore", divide="ignore"):
            vals = np.where(norms > 0, dots / np.where(norms > 0, norms, 1.0), 0.0)
        vals = np.maximum(vals, 0.0)
        phi[perm] += np.diff(vals)
    return phi / permutations
