"""Elementary number theory: Kronecker symbols, discriminants, types, mod-p forms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) for arbitrary integers a, n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # n odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    for p, e in factorize(n).items():
        if e > 1:
            return False
    return True


def is_fundamental(D: int) -> bool:
    """True for fundamental discriminants, with D = 1 admitted as the trivial one."""
    if D == 0:
        return False
    if D == 1:
        return True
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminants(lo: int, hi: int) -> list[int]:
    """Fundamental discriminants D with lo <= D <= hi, ascending."""
    return [D for D in range(lo, hi + 1) if is_fundamental(D)]


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of |n| (desk-scale inputs)."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if kronecker(a, p) == -1)


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Least primitive root modulo an odd prime p."""
    qs = list(factorize(p - 1))
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in qs))


@dataclass(frozen=True)
class TypePattern:
    """Signs (D|p) at the odd primes of a level, e.g. ``(+,0)``."""

    primes: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.primes) != len(self.signs):
            raise ValueError("primes and signs differ in length")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("primes must be strictly increasing")
        if any(s not in (-1, 0, 1) for s in self.signs):
            raise ValueError("signs must lie in {-1, 0, +1}")

    @classmethod
    def parse(cls, text: str, primes) -> "TypePattern":
        symbols = {"+": 1, "-": -1, "0": 0}
        parts = [s.strip() for s in text.strip().strip("()").split(",")]
        return cls(tuple(primes), tuple(symbols[s] for s in parts))

    def __str__(self) -> str:
        return "(" + ",".join({1: "+", -1: "-", 0: "0"}[s] for s in self.signs) + ")"


def type_of(D: int, primes) -> TypePattern:
    primes = tuple(primes)
    for p in primes:
        if p % 2 == 0:
            raise ValueError(f"type primes must be odd, got {p}")
    return TypePattern(primes, tuple(kronecker(D, p) for p in primes))


def _canonical_unit(u: int, p: int) -> int:
    """Representative unit for the square class of u: -1 or -n0 (n0 least non-residue)."""
    if kronecker(-u, p) == 1:
        return p - 1
    return (-least_nonresidue(p)) % p


def rank1_decompose(gram, p: int) -> tuple[tuple[int, int, int], int]:
    """Write Q ≡ u·ℓ² (mod p) for a ternary form of rank 1 mod p.

    ``gram`` is the even Gram matrix (Q(v) = v·G·v / 2).  The unit u is
    pinned to its square-class representative (-1 when -u is a square,
    otherwise minus the least non-residue), which fixes ℓ up to sign; the
    sign is chosen so the first nonzero coefficient of ℓ lies in 1..(p-1)/2.
    """
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    G = [[int(gram[i][j]) % p for j in range(3)] for i in range(3)]
    if _rank_mod_p(G, p) != 1:
        raise ValueError(f"form does not have rank 1 modulo {p}")
    # G = 2u·ℓℓᵀ mod p; any nonzero row is proportional to ℓ
    i = next(i for i in range(3) if G[i][i])
    row = G[i]
    k = next(j for j in range(3) if row[j])
    inv = pow(row[k], -1, p)
    ell = [r * inv % p for r in row]
    u = G[k][k] * pow(2, -1, p) % p  # Q(e_k) = u since ℓ(e_k) = 1
    target = _canonical_unit(u, p)
    # ℓ -> cℓ changes u to u/c²
    c = next(c for c in range(1, p) if u * pow(c * c, -1, p) % p == target)
    ell = [c * t % p for t in ell]
    first = next(t for t in ell if t)
    if first > (p - 1) // 2:
        ell = [(-t) % p for t in ell]
    return tuple(ell), target


def _rank_mod_p(G, p: int) -> int:
    M = [list(r) for r in G]
    rank = 0
    rows, cols = len(M), len(M[0])
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if M[r][c] % p), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for r in range(rows):
            if r != rank and M[r][c] % p:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def rank_mod_p(G, p: int) -> int:
    return _rank_mod_p([[int(x) for x in row] for row in G], p)
