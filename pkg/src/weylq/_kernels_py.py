"""Pure Python counting kernel.

Counts points of (Z/q)^rank avoiding a list of congruences.  The last
coordinate is solved per item through precomputed bitmask tables, so the
loop runs over q^(rank-1) prefixes instead of q^rank points.
"""

from __future__ import annotations

from typing import Sequence, Tuple

from weylq.errors import ValidationError

Item = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _forbidden_table(q: int, coeff_last: int, bad_residues) -> list:
    """table[r] is a bitmask over z of the solutions to
    r + coeff_last * z being a bad residue mod q."""
    full = (1 << q) - 1
    a = coeff_last % q
    if a == 0:
        return [full if r in bad_residues else 0 for r in range(q)]
    zmask = [0] * q
    for z in range(q):
        zmask[(a * z) % q] |= 1 << z
    table = []
    for r in range(q):
        m = 0
        for b in bad_residues:
            m |= zmask[(b - r) % q]
        table.append(m)
    return table


def complement_count(q: int, rank: int, items: Sequence[Item]) -> int:
    """Number of points of (Z/q)^rank on which, for every item
    (coeffs, offsets), the inner product avoids every offset mod q."""
    if q < 1:
        raise ValidationError("modulus must be a positive integer")
    if rank < 1:
        raise ValidationError("rank must be a positive integer")
    prepared = []
    for coeffs, offsets in items:
        if len(coeffs) != rank:
            raise ValidationError("item length does not match the rank")
        bad = {m % q for m in offsets}
        if bad:
            prepared.append((tuple(coeffs), bad))
    if not prepared:
        return q**rank

    n_prefix = q ** (rank - 1)
    merged = [0] * n_prefix
    full = (1 << q) - 1
    for coeffs, bad in prepared:
        # residues of the prefix inner product, prefix-major then coordinate
        res = [0]
        for i in range(rank - 1):
            a = coeffs[i] % q
            if a == 0:
                res = [r for r in res for _ in range(q)]
            else:
                res = [(r + a * z) % q for r in res for z in range(q)]
        table = _forbidden_table(q, coeffs[rank - 1], bad)
        merged = [m | table[r] for m, r in zip(merged, res)]

    total = 0
    for m in merged:
        if m != full:
            total += q - m.bit_count()
    return total
