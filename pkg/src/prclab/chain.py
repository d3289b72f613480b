"""Minimal prime chains: the discrete skeleton of a prime-representing constant.

A chain (p_1, ..., p_K) for an exponent sequence (c_k) satisfies
p_k^{c_{k+1}} <= p_{k+1} <= (p_k + 1)^{c_{k+1}} - 2 at every step; the
minimal chain is the lexicographically smallest one, found greedily with
backtracking on dead windows.  Nested-interval structure makes that order
coincide with the order of the limits p_k^{1/C_k}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from gmpy2 import iroot, mpz

from .constants import PRIME_GAP_EXPONENT
from .primality import (
    DEFAULT_POLICY,
    CertaintyPolicy,
    is_prime,
    next_prime_at_least,
    smallest_prime_in,
)


class DeadWindowError(Exception):
    """A step window [p^c, (p+1)^c - 2] contained no accepted prime."""

    def __init__(self, k: int, window: tuple[int, int]):
        self.k = k
        self.window = window
        super().__init__(f"no prime in step-{k} window [{window[0]}, {window[1]}]")


class ChainExhaustedError(Exception):
    """Backtracking ran out of candidates at the first level."""


@dataclass(frozen=True)
class ExponentSeq:
    """Integer exponent sequence c_1, c_2, ... with cumulative products C_k.

    Three kinds: a constant value, an explicit finite list, or a repeating
    pattern.  c_1 >= 1 and c_k >= 2 for k >= 2.
    """

    kind: str  # "constant" | "explicit" | "periodic"
    values: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("constant", "explicit", "periodic"):
            raise ValueError(f"unknown exponent kind {self.kind!r}")
        if not self.values:
            raise ValueError("empty exponent data")
        if any(v != int(v) for v in self.values):
            raise ValueError("exponents must be integers")
        if self.c(1) < 1:
            raise ValueError("c(1) must be >= 1")
        check_depth = len(self.values) if self.kind != "constant" else 2
        for k in range(2, max(check_depth, 2) + 1):
            if self.kind == "explicit" and k > len(self.values):
                break
            if self.c(k) < 2:
                raise ValueError(f"c({k}) = {self.c(k)} < 2")
        if self.kind == "periodic" and min(self.values) < 2:
            # the pattern re-enters positions k >= 2 on every repeat
            raise ValueError("periodic patterns need every entry >= 2")

    @classmethod
    def constant(cls, c: int) -> "ExponentSeq":
        return cls("constant", (int(c),))

    @classmethod
    def explicit(cls, values) -> "ExponentSeq":
        return cls("explicit", tuple(int(v) for v in values))

    @classmethod
    def periodic(cls, pattern) -> "ExponentSeq":
        return cls("periodic", tuple(int(v) for v in pattern))

    def c(self, k: int) -> int:
        """Exponent c_k (1-based)."""
        if k < 1:
            raise IndexError(f"k must be >= 1, got {k}")
        if self.kind == "constant":
            return self.values[0]
        if self.kind == "periodic":
            return self.values[(k - 1) % len(self.values)]
        if k > len(self.values):
            raise IndexError(f"explicit sequence has only {len(self.values)} terms")
        return self.values[k - 1]

    def C(self, k: int) -> int:
        """Cumulative product C_k = c_1 * ... * c_k as an exact integer."""
        out = 1
        for i in range(1, k + 1):
            out *= self.c(i)
        return out

    @property
    def B(self) -> int:
        """Declared upper bound sup_k c_k."""
        return max(self.values)

    def max_depth(self) -> Optional[int]:
        return len(self.values) if self.kind == "explicit" else None

    def to_dict(self) -> dict:
        return {"kind": self.kind, "values": list(self.values)}

    @classmethod
    def from_dict(cls, d: dict) -> "ExponentSeq":
        return cls(d["kind"], tuple(int(v) for v in d["values"]))


@dataclass(frozen=True)
class PrimeChain:
    """An exponent sequence together with its prime entries.

    ``certainty`` is the worst primality status over entries: "proven"
    when every entry was decided deterministically, else "probable".
    The constructor stores data as given; window and primality
    invariants are established by the builder and checked by
    verify_chain, so synthetic chains (for trace experiments) can be
    created freely.
    """

    exps: ExponentSeq
    primes: tuple[int, ...]
    certainty: str = "proven"
    seed: int = 0
    policy_name: str = DEFAULT_POLICY.describe()

    @property
    def depth(self) -> int:
        return len(self.primes)

    @property
    def last(self) -> int:
        return self.primes[-1]

    def p(self, k: int) -> int:
        """Entry p_k (1-based)."""
        return self.primes[k - 1]

    def C(self, k: int) -> int:
        return self.exps.C(k)

    def to_json(self) -> str:
        return json.dumps(
            {
                "exponents": self.exps.to_dict(),
                "primes": [str(p) for p in self.primes],
                "certainty": self.certainty,
                "generator": {"seed": self.seed, "policy": self.policy_name},
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "PrimeChain":
        d = json.loads(text)
        gen = d.get("generator", {})
        return cls(
            exps=ExponentSeq.from_dict(d["exponents"]),
            primes=tuple(int(s) for s in d["primes"]),
            certainty=d["certainty"],
            seed=int(gen.get("seed", 0)),
            policy_name=gen.get("policy", DEFAULT_POLICY.describe()),
        )


@dataclass(frozen=True)
class StepRecord:
    k: int
    key1_ok: bool
    key2_ok: bool
    window: tuple[int, int]
    chosen: int


@dataclass(frozen=True)
class VerificationReport:
    """Per-step window and proximity checks for a chain.

    key1 is the hard admissibility inequality and must hold for any
    chain accepted as minimal; key2 is the tighter proximity inequality
    p_{k+1} <= p_k^c + p_k^{theta*c}, guaranteed only eventually, so it
    is reported but never asserted.
    """

    steps: tuple[StepRecord, ...]

    @property
    def key1_all_ok(self) -> bool:
        return all(s.key1_ok for s in self.steps)

    @property
    def key1_pass_count(self) -> int:
        return sum(1 for s in self.steps if s.key1_ok)

    @property
    def key2_pass_count(self) -> int:
        return sum(1 for s in self.steps if s.key2_ok)


def admissible_window(p: int, c: int) -> tuple[int, int]:
    """Integer window [p^c, (p+1)^c - 2] from which the next entry must come.

    (p+1)^c - 1 is excluded: it factors as p * sum_i (p+1)^i, hence is
    composite for every p >= 2, c >= 2.
    """
    if c < 2:
        raise ValueError(f"window exponent must be >= 2, got {c}")
    if p < 2:
        raise ValueError(f"window base must be >= 2, got {p}")
    p = mpz(p)
    return (int(p**c), int((p + 1) ** c - 2))


def _worse_certainty(current: str, verdict_status: str) -> str:
    if current == "probable" or verdict_status != "proven-prime":
        return "probable"
    return "proven"


def extend_min(chain: PrimeChain, policy: CertaintyPolicy = DEFAULT_POLICY) -> PrimeChain:
    """Append the smallest admissible prime to the chain."""
    if chain.depth < 1:
        raise ValueError("cannot extend an empty chain")
    k = chain.depth
    window = admissible_window(chain.last, chain.exps.c(k + 1))
    q = smallest_prime_in(window[0], window[1], policy)
    if q is None:
        raise DeadWindowError(k + 1, window)
    cert = _worse_certainty(chain.certainty, is_prime(q, policy).status)
    return PrimeChain(
        exps=chain.exps,
        primes=chain.primes + (q,),
        certainty=cert,
        seed=policy.seed,
        policy_name=policy.describe(),
    )


def build_min_chain(
    exps: ExponentSeq,
    depth: int,
    start: Optional[int] = None,
    policy: CertaintyPolicy = DEFAULT_POLICY,
) -> PrimeChain:
    """Lexicographically smallest chain of the given depth.

    Depth-first search in increasing-prime order: each level tries the
    smallest admissible prime first, so the first complete chain found
    is the lexicographic minimum.  A dead window triggers backtracking
    to the next prime of the previous level; running out of first-level
    candidates raises ChainExhaustedError (not observed in practice --
    windows at desk scale are never empty).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    md = exps.max_depth()
    if md is not None and depth > md:
        raise ValueError(f"explicit exponent sequence supports depth <= {md}")

    first = next_prime_at_least(start if start is not None else 2, policy)
    stack: list[int] = [first]
    certainty = ["proven" if is_prime(first, policy).proven else "probable"]

    while len(stack) < depth:
        k = len(stack)
        window = admissible_window(stack[-1], exps.c(k + 1))
        q = smallest_prime_in(window[0], window[1], policy)
        while q is None:
            # dead window: advance the deepest choice that still has room
            if len(stack) == 1:
                try:
                    nxt = next_prime_at_least(stack[0] + 1, policy)
                except RuntimeError as exc:  # unreachable; kept honest
                    raise ChainExhaustedError(str(exc)) from exc
                stack[0] = nxt
                certainty = [
                    "proven" if is_prime(nxt, policy).proven else "probable"
                ]
            else:
                dead_lo = stack.pop()
                certainty.pop()
                k = len(stack)
                prev_window = admissible_window(stack[-1], exps.c(k + 1))
                q = smallest_prime_in(dead_lo + 1, prev_window[1], policy)
                if q is not None:
                    break
                continue
            k = len(stack)
            window = admissible_window(stack[-1], exps.c(k + 1))
            q = smallest_prime_in(window[0], window[1], policy)
        stack.append(q)
        certainty.append("proven" if is_prime(q, policy).proven else "probable")

    overall = "proven" if all(c == "proven" for c in certainty) else "probable"
    return PrimeChain(
        exps=exps,
        primes=tuple(stack),
        certainty=overall,
        seed=policy.seed,
        policy_name=policy.describe(),
    )


def _ceil_rational_power(p: int, num: int, den: int) -> int:
    """ceil(p^(num/den)) by an exact integer root."""
    r, exact = iroot(mpz(p) ** num, den)
    return int(r) if exact else int(r) + 1


def verify_chain(chain: PrimeChain) -> VerificationReport:
    """Exact integer window and proximity checks for every step.

    key2 compares p_{k+1} - p_k^c against ceil(p_k^{theta*c}) computed by
    an exact integer root, i.e. it only reports a violation when the real
    inequality genuinely fails.
    """
    if chain.depth < 2:
        raise ValueError("verification needs a chain of length >= 2")
    theta_num, theta_den = (
        PRIME_GAP_EXPONENT.numerator,
        PRIME_GAP_EXPONENT.denominator,
    )
    steps = []
    for k in range(1, chain.depth):
        p, q = mpz(chain.p(k)), mpz(chain.p(k + 1))
        c = chain.exps.c(k + 1)
        window = admissible_window(int(p), c)
        key1 = window[0] <= q <= window[1]
        excess = q - p**c
        key2 = excess <= _ceil_rational_power(int(p), theta_num * c, theta_den)
        steps.append(StepRecord(k, bool(key1), bool(key2), window, int(q)))
    return VerificationReport(tuple(steps))
