"""Random commuting tuples with a known, split joint spectrum.

Instances are built block by block: each cycle point x of multiplicity m gets
commuting blocks x_j I + p_j(N) with N strictly upper triangular and p_j a
polynomial without constant term. The direct sum is conjugated by a random
invertible matrix with entries in {-3..3}, so the construction input is the
expected spectral datum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import QQ
from .matrix import Matrix
from .rng import Stream
from .spectra import MatrixTuple, ZeroCycle


@dataclass(frozen=True)
class Instance:
    tuple: MatrixTuple
    cycle: ZeroCycle
    conjugator: Matrix


def random_composition(rng: Stream, n: int) -> list[int]:
    """Multiplicities: a random composition of n."""
    parts, left = [], n
    while left:
        m = rng.randint(1, left)
        parts.append(m)
        left -= m
    return parts


def random_cycle(rng: Stream, n: int, d: int, field=QQ, coord_range: int = 3) -> ZeroCycle:
    mults = random_composition(rng, n)
    points: list[tuple] = []
    while len(points) < len(mults):
        p = tuple(field(rng.randint(-coord_range, coord_range)) for _ in range(d))
        if p not in points:
            points.append(p)
    return ZeroCycle(tuple(zip(points, mults)))


def random_local_block(rng: Stream, point, m: int, field=QQ, entry_range: int = 2) -> list[Matrix]:
    """d commuting m x m matrices whose only joint eigenvalue is ``point``."""
    nil = Matrix([[field(rng.randint(-entry_range, entry_range)) if j > i else field.zero
                   for j in range(m)] for i in range(m)], field)
    powers = [nil ** k for k in range(1, m)]
    blocks = []
    for x in point:
        b = Matrix.identity(m, field).scale(field(x))
        for pk in powers:
            c = rng.randint(-entry_range, entry_range)
            if c:
                b = b + pk.scale(field(c))
        blocks.append(b)
    return blocks


def random_invertible(rng: Stream, n: int, field=QQ, entry_range: int = 3) -> Matrix:
    while True:
        p = Matrix([[field(rng.randint(-entry_range, entry_range)) for _ in range(n)]
                    for _ in range(n)], field)
        if p.det() != 0:
            return p


def random_instance(rng: Stream, n: int, d: int, field=QQ) -> Instance:
    cycle = random_cycle(rng, n, d, field)
    per_point = [random_local_block(rng, pt, m, field) for pt, m in cycle.entries]
    thetas = tuple(Matrix.block_diag([blocks[j] for blocks in per_point], field)
                   for j in range(d))
    p = random_invertible(rng, n, field)
    return Instance(MatrixTuple(thetas, field).conjugate(p), cycle, p)


def instance_for_trial(seed: int, index: int, max_n: int, max_d: int, field=QQ) -> Instance:
    """Trial ``index`` of a seeded run; sizes are drawn uniformly within the bounds."""
    rng = Stream(seed, 1, index)
    n = rng.randint(1, max_n)
    d = rng.randint(1, max_d)
    return random_instance(rng, n, d, field)
