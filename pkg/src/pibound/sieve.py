"""Segmented prime sieve and the immutable PrimeTable it produces.

The table stores the primes up to a limit together with prefix data for
exact pi(x) and compensated theta(x) queries. Queries accept real x and
count primes p <= x; x below 2 yields the empty sum. A small binary
cache format (magic "PIBT") round-trips the prime list; prefix data is
rebuilt on load so cached and freshly built tables are bit-identical.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .accum import compensated_prefix
from .errors import CacheFormatError, CapacityError, DomainError, OutOfRangeError

MAX_LIMIT = 100_000_000
SEGMENT_ODDS = 1 << 20

_MAGIC = b"PIBT"
_VERSION = 1
_GAP_ESCAPE = 0xFF


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Primes <= limit plus pi/theta prefix arrays.

    theta_prefix has shape (2, n): row 0 the running sums of log p, row 1
    the accumulated corrections; their elementwise sum is the compensated
    theta at each prime. All arrays are read-only.
    """

    limit: int
    primes: np.ndarray
    pi_prefix: np.ndarray
    theta_prefix: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.primes, self.pi_prefix, self.theta_prefix):
            arr.setflags(write=False)

    def _check_range(self, x: float) -> None:
        if x < 0:
            raise DomainError(f"x must be nonnegative, got {x!r}")
        if x > self.limit:
            raise OutOfRangeError(f"x={x!r} exceeds table limit {self.limit}")

    def pi(self, x: float) -> int:
        """Exact count of primes <= x."""
        self._check_range(x)
        return int(np.searchsorted(self.primes, x, side="right"))

    def theta(self, x: float) -> float:
        """Compensated sum of log p over primes p <= x."""
        self._check_range(x)
        k = int(np.searchsorted(self.primes, x, side="right")) - 1
        if k < 0:
            return 0.0
        return float(self.theta_prefix[0, k] + self.theta_prefix[1, k])

    def primes_in(self, lo: float, hi: float) -> np.ndarray:
        """Primes p with lo < p <= hi, ascending."""
        if hi > self.limit:
            raise OutOfRangeError(f"hi={hi!r} exceeds table limit {self.limit}")
        i = int(np.searchsorted(self.primes, lo, side="right"))
        j = int(np.searchsorted(self.primes, hi, side="right"))
        return self.primes[i:j]

    def pi_at(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized pi over an array of query points."""
        xs = np.asarray(xs)
        if xs.size:
            self._check_range(float(xs.min()))
            self._check_range(float(xs.max()))
        return np.searchsorted(self.primes, xs, side="right")

    def theta_at(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized theta over an array of query points."""
        k = self.pi_at(xs) - 1
        kc = np.maximum(k, 0)
        out = self.theta_prefix[0, kc] + self.theta_prefix[1, kc]
        return np.where(k >= 0, out, 0.0)


def _odd_sieve_bases(limit: int) -> np.ndarray:
    """Odd primes up to isqrt(limit), by a plain boolean sieve."""
    n = isqrt(limit)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    bases = np.flatnonzero(mask)
    return bases[bases > 2]


def _sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit, odd-only segmented crossing."""
    if limit < 3:
        return np.array([2], dtype=np.int64)
    bases = _odd_sieve_bases(limit)
    n_odds = (limit - 3) // 2 + 1
    chunks = [np.array([2], dtype=np.int64)]
    for lo in range(0, n_odds, SEGMENT_ODDS):
        hi = min(lo + SEGMENT_ODDS, n_odds)
        low_val = 2 * lo + 3
        mask = np.ones(hi - lo, dtype=bool)
        for p in bases:
            p = int(p)
            if p * p > 2 * hi + 1:
                break
            m = max(p * p, ((low_val + p - 1) // p) * p)
            if m % 2 == 0:
                m += p
            j = (m - 3) // 2 - lo
            if j < mask.size:
                mask[j::p] = False
        chunks.append((2 * (lo + np.flatnonzero(mask)) + 3).astype(np.int64))
    return np.concatenate(chunks)


def build_table(limit: int, two_double: bool = False) -> PrimeTable:
    """Sieve to limit and assemble the query table.

    two_double switches the theta prefix accumulation to the exact-tail
    variant; the default Neumaier pairs already keep theta error at the
    eps*theta scale.
    """
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    if limit > MAX_LIMIT:
        raise CapacityError(f"limit {limit} exceeds cap {MAX_LIMIT}")
    primes = _sieve_primes(limit)
    return _assemble(limit, primes, two_double)


def _assemble(limit: int, primes: np.ndarray, two_double: bool) -> PrimeTable:
    logs = np.log(primes.astype(np.float64))
    values, corrections = compensated_prefix(logs.tolist(), two_double=two_double)
    theta_prefix = np.array([values, corrections], dtype=np.float64)
    pi_prefix = np.arange(1, primes.size + 1, dtype=np.int64)
    return PrimeTable(limit=limit, primes=primes, pi_prefix=pi_prefix, theta_prefix=theta_prefix)


def save_table(table: PrimeTable, path) -> None:
    """Write the prime list in the PIBT gap-delta format."""
    gaps = np.diff(table.primes, prepend=np.int64(0))
    parts = [_MAGIC, struct.pack("<IQQ", _VERSION, table.limit, table.primes.size)]
    if gaps.size and int(gaps.max()) >= _GAP_ESCAPE:
        buf = bytearray()
        for g in gaps.tolist():
            if g < _GAP_ESCAPE:
                buf.append(g)
            else:
                buf.append(_GAP_ESCAPE)
                buf += struct.pack("<I", g)
        parts.append(bytes(buf))
    else:
        parts.append(gaps.astype(np.uint8).tobytes())
    with open(path, "wb") as fh:
        fh.write(b"".join(parts))


def load_table(path, two_double: bool = False) -> PrimeTable:
    """Read a PIBT file back into a table; reject anything malformed."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != _MAGIC:
        raise CacheFormatError("bad magic; not a PIBT file")
    if len(blob) < 24:
        raise CacheFormatError("truncated header")
    version, limit, count = struct.unpack_from("<IQQ", blob, 4)
    if version != _VERSION:
        raise CacheFormatError(f"unsupported version {version}")
    payload = np.frombuffer(blob, dtype=np.uint8, offset=24)
    if _GAP_ESCAPE in payload:
        gaps = []
        i = 0
        while i < payload.size and len(gaps) < count:
            g = int(payload[i])
            if g == _GAP_ESCAPE:
                if i + 5 > payload.size:
                    raise CacheFormatError("truncated escape sequence")
                g = struct.unpack_from("<I", payload, i + 1)[0]
                i += 5
            else:
                i += 1
            gaps.append(g)
        gaps = np.asarray(gaps, dtype=np.int64)
    else:
        gaps = payload.astype(np.int64)
    if gaps.size != count:
        raise CacheFormatError(f"expected {count} gaps, found {gaps.size}")
    if count == 0:
        raise CacheFormatError("empty prime list; any valid table contains 2")
    primes = np.cumsum(gaps)
    if primes[0] != 2 or (gaps[1:] <= 0).any() or primes[-1] > limit:
        raise CacheFormatError("gap payload does not encode primes <= limit")
    if limit < 2 or limit > MAX_LIMIT:
        raise CacheFormatError(f"limit {limit} out of supported range")
    return _assemble(int(limit), primes, two_double)
