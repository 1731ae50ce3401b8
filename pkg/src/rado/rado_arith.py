"""The explicit arithmetic Rado complex on the positive integers.

Vertices are all positive integers.  A pair ``a < b`` is an edge when bit
number ``p_a`` of ``b`` is set (bit ``m`` is the coefficient of ``2**m``),
and an increasing sequence ``a_0 < ... < a_k`` is a simplex when all its
proper subsequences are simplexes and bit number ``p_{a_0} ... p_{a_{k-1}}``
of ``a_k`` is set.  Here ``p_i`` is the i-th prime.

For a finite vertex set ``U`` and a subcomplex ``A`` of the induced complex
on ``U`` the vertex

    v = sum(2**N(s) for s in A) + 2**K(U),   N(s) = prod(p_a for a in s),
                                            K(U) = 1 + prod(p_w for w in U)

has link exactly ``A`` on ``U``.  Witness labels therefore grow doubly
exponentially: ``witness`` is cheap for any small ``U``, but a witness can
only serve as a *base* vertex while its label is below the prime-index
bound, since that needs its prime.
"""

from __future__ import annotations

import math
import threading
from typing import Iterable

import numpy as np

from rado.core import Complex, LazyComplex, check_simplex, materialize
from rado.errors import LabelTooLargeError, SizeLimitError, SubcomplexError

DEFAULT_MAX_PRIME_INDEX = 10**7


def _sieve(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[p]:
            is_prime[p * p::2 * p] = False
    return np.flatnonzero(is_prime)


def _prime_upper_bound(i: int) -> int:
    # Rosser: p_i < i (ln i + ln ln i) for i >= 6
    if i < 6:
        return 13
    return int(i * (math.log(i) + math.log(math.log(i)))) + 1


class ArithmeticRado:
    """Handle holding the prime table and the membership memo.

    All methods are pure; the caches only trade memory for time.  The prime
    table grows under a lock, the memo is a plain dict whose entries are
    idempotent, so sharing one handle between threads is safe.
    """

    def __init__(self, max_prime_index: int = DEFAULT_MAX_PRIME_INDEX):
        self.max_prime_index = max_prime_index
        self._primes = _sieve(100)
        self._lock = threading.Lock()
        self._memo: dict = {}

    # primes -----------------------------------------------------------------

    def nth_prime(self, i: int) -> int:
        if i < 1:
            raise ValueError("prime index must be positive")
        if i > self.max_prime_index:
            raise LabelTooLargeError(
                f"label {i} exceeds the prime-index bound {self.max_prime_index}"
            )
        if i > len(self._primes):
            with self._lock:
                if i > len(self._primes):
                    target = max(i, 2 * len(self._primes))
                    target = min(target, self.max_prime_index)
                    self._primes = _sieve(_prime_upper_bound(max(target, i)))
        return int(self._primes[i - 1])

    def n_sigma(self, sigma: Iterable[int]) -> int:
        """Product of the primes indexed by the labels of ``sigma``."""
        n = 1
        for a in sigma:
            n *= self.nth_prime(a)
        return n

    def k_u(self, U: Iterable[int]) -> int:
        """One plus the product of the primes indexed by ``U``."""
        return 1 + self.n_sigma(sorted(set(U)))

    # membership -------------------------------------------------------------

    def is_simplex(self, sigma: Iterable[int]) -> bool:
        sigma = check_simplex(sigma)
        return self._is_simplex(sigma)

    def _is_simplex(self, sigma: tuple) -> bool:
        if len(sigma) == 1:
            return True
        hit = self._memo.get(sigma)
        if hit is not None:
            return hit
        last = sigma[-1]
        ok = (last >> self.n_sigma(sigma[:-1])) & 1 == 1
        if ok:
            # codimension-one faces suffice, the recursion covers the rest
            for i in range(len(sigma)):
                if not self._is_simplex(sigma[:i] + sigma[i + 1:]):
                    ok = False
                    break
        self._memo[sigma] = ok
        return ok

    def complex_on(self, vertices: Iterable[int]) -> LazyComplex:
        """The arithmetic complex restricted to ``vertices``, queried lazily."""
        return LazyComplex(vertices, self._is_simplex, name="arithmetic")

    def window(self, U: Iterable[int], max_vertices: int = 20) -> Complex:
        """Explicit induced complex on ``U``."""
        U = set(U)
        if len(U) > max_vertices:
            raise SizeLimitError(f"window on {len(U)} vertices exceeds bound {max_vertices}")
        for u in U:
            check_simplex((u,))
        return materialize(self.complex_on(U))

    # witnesses --------------------------------------------------------------

    def witness(self, U: Iterable[int], A: Complex) -> int:
        """The closed-form vertex whose link on ``U`` is exactly ``A``."""
        U = set(U)
        if not A.vertices <= U:
            raise SubcomplexError("A uses vertices outside U")
        for s in A.simplexes:
            if not self._is_simplex(s):
                raise SubcomplexError(f"{s} is not a simplex of the arithmetic complex")
        v = 1 << self.k_u(U)
        for s in A.simplexes:
            v += 1 << self.n_sigma(s)
        return v


_default = ArithmeticRado()


def default_handle() -> ArithmeticRado:
    return _default


def nth_prime(i: int) -> int:
    return _default.nth_prime(i)


def n_sigma(sigma: Iterable[int]) -> int:
    return _default.n_sigma(sigma)


def k_u(U: Iterable[int]) -> int:
    return _default.k_u(U)


def is_simplex(sigma: Iterable[int]) -> bool:
    return _default.is_simplex(sigma)


def witness(U: Iterable[int], A: Complex) -> int:
    return _default.witness(U, A)


def window(U: Iterable[int], max_vertices: int = 20) -> Complex:
    return _default.window(U, max_vertices=max_vertices)


def complex_on(vertices: Iterable[int]) -> LazyComplex:
    return _default.complex_on(vertices)
