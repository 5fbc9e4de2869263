"""Blocked variant of the tail test: k block statistics summed against gamma(k,1).

Splitting the sample into k blocks and summing the per-block statistics
sharpens power; under a medium tail the sum is asymptotically gamma(k,1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import BlockTooSmallError, TailClass
from .rng import erlang_criticals, gamma_cdf, make_stream
from .tail_test import Sample, as_sample, tail_test

MIN_BLOCK = 3  # a block needs X_(n), X_(n-1) and a nondegenerate survival


@dataclass(frozen=True)
class BlockedTestResult:
    k: int
    block_stats: tuple[float, ...]
    sum_stat: float
    lower_crit: float
    upper_crit: float
    decision: TailClass
    block_sizes: tuple[int, ...]
    alpha: float
    p_short: float
    p_long: float


def block_sizes(n: int, k: int) -> tuple[int, ...]:
    """Sizes of k blocks covering n points, larger blocks first, differing by <= 1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n // k < MIN_BLOCK:
        raise BlockTooSmallError(
            f"k={k} leaves blocks of fewer than {MIN_BLOCK} points for n={n}; "
            f"largest feasible k is {max(1, n // MIN_BLOCK)}"
        )
    base, extra = divmod(n, k)
    return tuple(base + 1 for _ in range(extra)) + tuple(base for _ in range(k - extra))


def partition(sample, k: int, strategy: str = "shuffle", seed: int = 0) -> list[Sample]:
    """Split a sample into k blocks of near-equal size.

    'sequential' slices the values in input order; 'shuffle' (default)
    permutes them first with the given seed, which protects real, possibly
    time-ordered data against serial structure. For i.i.d. data the two are
    equivalent in law.
    """
    s = as_sample(sample)
    sizes = block_sizes(s.n, k)
    if strategy == "sequential":
        values = s.values
    elif strategy == "shuffle":
        values = make_stream(int(seed)).permutation(s.values)
    else:
        raise ValueError(f"unknown partition strategy {strategy!r}")

    blocks: list[Sample] = []
    offset = 0
    for size in sizes:
        chunk = np.array(values[offset : offset + size])
        chunk.setflags(write=False)
        srt = np.sort(chunk)
        srt.setflags(write=False)
        blocks.append(Sample(values=chunk, sorted=srt, shift=s.shift, n=size))
        offset += size
    return blocks


def blocked_test(
    sample,
    k: int,
    alpha: float = 0.05,
    strategy: str = "shuffle",
    seed: int = 0,
) -> BlockedTestResult:
    """Sum the k block statistics and compare against gamma(k,1) quantiles.

    Any block whose maximum is not above 1 aborts the whole test (dropping
    blocks would silently change k and with it the null law); the error
    message names the offending block.
    """
    blocks = partition(sample, k, strategy=strategy, seed=seed)
    stats = []
    for j, block in enumerate(blocks):
        try:
            stats.append(tail_test(block, alpha).t_stat)
        except ValueError as exc:
            raise type(exc)(f"block {j + 1} of {k}: {exc}") from exc

    total = float(sum(stats))
    lower, upper = erlang_criticals(alpha, k)
    if total < lower:
        decision = TailClass.SHORT
    elif total > upper:
        decision = TailClass.LONG
    else:
        decision = TailClass.MEDIUM
    p_short = gamma_cdf(max(total, 0.0), k)
    return BlockedTestResult(
        k=k,
        block_stats=tuple(stats),
        sum_stat=total,
        lower_crit=lower,
        upper_crit=upper,
        decision=decision,
        block_sizes=tuple(b.n for b in blocks),
        alpha=float(alpha),
        p_short=p_short,
        p_long=1.0 - p_short,
    )


def recommend_blocks(n: int) -> tuple[int, int]:
    """Recommended inclusive range of block counts for a sample of size n.

    Guidance is 5-10 blocks, clipped so blocks hold at least 30 points;
    below n=150 the advice drops toward the unblocked test.
    """
    if n < 15:
        raise ValueError(f"too few points to recommend blocking, got n={n}")
    if n < 150:
        return (1, max(1, n // 30))
    return (min(5, n // 30), min(10, n // 30))
