"""Residue classes of chain primes.

Along cubic steps the trace identity forces eventually-constant residues
mod 3, so any adjacent residue jump is a witness against that structure;
the report flags such jumps (informational only: the argument needs
infinitely many of them, which finite data cannot supply).
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import PrimeChain


@dataclass(frozen=True)
class ResidueReport:
    modulus: int
    residues: tuple[int, ...]
    # 1-based indices k of cubic steps with residue(k) != residue(k+1);
    # populated only for modulus 3
    witness_pairs: tuple[int, ...]
    fermat_ok: bool  # sanity: p^3 == p (mod 3) for every entry

    @property
    def constant(self) -> bool:
        return len(set(self.residues)) <= 1


def residue_report(chain: PrimeChain, modulus: int = 3) -> ResidueReport:
    """Exact residues p_k mod modulus plus cubic-step jump witnesses."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    residues = tuple(p % modulus for p in chain.primes)
    witnesses = []
    if modulus == 3:
        for k in range(1, chain.depth):
            if chain.exps.c(k + 1) == 3 and residues[k - 1] != residues[k]:
                witnesses.append(k)
    fermat_ok = all(pow(p, 3, 3) == p % 3 for p in chain.primes)
    return ResidueReport(modulus, residues, tuple(witnesses), fermat_ok)
