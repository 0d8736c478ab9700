"""Genus-zero invariants of [C^N / mu_r] and an exact on-disk cache.

invariant_direct integrates the compact-form Euler class against psi
insertions over M0n and divides by the group order (the stack has a
global mu_r automorphism group); invariant_weighted does the same for
the weighted-space model, where only a polynomial in the distinguished
psi class survives and integration is a multinomial coefficient.
Inadmissible monodromy data gives zero for both (the moduli space is
empty); pass coarse=True to drop the 1/r normalization.

Cached values are exact strings in a versioned JSON file; writes go
through a temporary file and an atomic rename.
"""

import json
import os
import tempfile

from .exactnum import LaurentPoly, signed_index_set
from .orbifold import OrbifoldData
from .mzeron import integrate, psi_marking, psi_integral
from .euler import euler_class_compact

CACHE_FORMAT = "hhi/1"


class InvariantKey:
    """An invariant's input data: the orbifold, the monodromies, and the
    psi exponent at each marking.  The n-th marking is distinguished."""

    __slots__ = ("data", "psi")

    def __init__(self, data, psi):
        self.data = data
        self.psi = tuple(int(v) for v in psi)
        if len(self.psi) != data.n:
            raise ValueError("need one psi exponent per marking")
        if any(v < 0 for v in self.psi):
            raise ValueError("psi exponents must be nonnegative")

    def canonical(self):
        """Sort the first n-1 (element, psi-exponent) pairs; the
        distinguished marking keeps its place.  Invariants are symmetric
        under this relabeling."""
        pairs = sorted(zip(self.data.elements[:-1], self.psi[:-1]))
        elements = [k for k, _ in pairs] + [self.data.elements[-1]]
        psi = [v for _, v in pairs] + [self.psi[-1]]
        return InvariantKey(OrbifoldData(self.data.r, self.data.weights, elements), psi)

    def __eq__(self, other):
        if not isinstance(other, InvariantKey):
            return NotImplemented
        return (self.data, self.psi) == (other.data, other.psi)

    def __hash__(self):
        return hash((self.data, self.psi))

    def cache_string(self):
        c = self.canonical()
        return "r=%d;w=%s;k=%s;v=%s" % (
            c.data.r,
            ",".join(map(str, c.data.weights)),
            ",".join(map(str, c.data.elements)),
            ",".join(map(str, c.psi)),
        )

    def to_obj(self):
        return {
            "r": self.data.r,
            "weights": list(self.data.weights),
            "elements": list(self.data.elements),
            "psi": list(self.psi),
        }

    @classmethod
    def from_obj(cls, obj):
        return cls(OrbifoldData(obj["r"], obj["weights"], obj["elements"]), obj["psi"])

    def __repr__(self):
        return "InvariantKey(%r, psi=%s)" % (self.data, self.psi)


def invariant_direct(key, coarse=False, cache=None):
    """Invariant by exact integration of the compact-form Euler class."""
    data = key.data
    if not data.admissible():
        return LaurentPoly.zero(data.N)
    if cache is not None:
        hit = cache.get(key, "direct", coarse)
        if hit is not None:
            return hit
    cls = euler_class_compact(data)
    for i in range(1, data.n + 1):
        for _ in range(key.psi[i - 1]):
            cls = cls * psi_marking(data.n, data.N, i)
    val = integrate(cls)
    if not coarse:
        val = val.scale_div(data.r)
    if cache is not None:
        cache.put(key, "direct", coarse, val)
    return val


def invariant_weighted(key, coarse=False, cache=None):
    """Invariant for the weighted-space model: only the distinguished
    psi class appears in the total class, so the integral reduces to
    multinomial coefficients."""
    data = key.data
    if not data.admissible():
        return LaurentPoly.zero(data.N)
    if cache is not None:
        hit = cache.get(key, "weighted", coarse)
        if hit is not None:
            return hit
    n, nvars = data.n, data.N
    # H-expansion of the product of (t_a - p H)^{+-1} over the signed
    # index set of (age sum over 1..n-1) - 1, truncated above H^(n-3)
    coeffs = [LaurentPoly.one(nvars)] + [LaurentPoly.zero(nvars)] * (n - 3)
    body = list(range(1, n))
    for a in range(1, nvars + 1):
        t = LaurentPoly.var_power(nvars, a, 1)
        tinv = LaurentPoly.var_power(nvars, a, -1)
        s = signed_index_set(data.age_sum(body, a) - 1)
        for p in s.positives:
            nxt = [c * t for c in coeffs]
            for j in range(1, n - 2):
                nxt[j] = nxt[j] - coeffs[j - 1] * p
            coeffs = nxt
        for p in s.negatives:
            nxt = [LaurentPoly.zero(nvars) for _ in coeffs]
            for j, c in enumerate(coeffs):
                geo = tinv
                for k in range(j, n - 2):
                    nxt[k] = nxt[k] + c * geo
                    geo = geo * tinv * p
            coeffs = nxt
    val = LaurentPoly.zero(nvars)
    exps = list(key.psi)
    for j in range(n - 2):
        w = psi_integral(n, exps[:-1] + [exps[-1] + j])
        if w:
            val = val + coeffs[j] * w
    if not coarse:
        val = val.scale_div(data.r)
    if cache is not None:
        cache.put(key, "weighted", coarse, val)
    return val


class InvariantCache:
    """Exact invariant values keyed by canonical input data and method."""

    def __init__(self, path=None):
        self.path = path
        self.records = {}
        if path and os.path.exists(path):
            self.load(path)

    @staticmethod
    def _record_key(key, method, coarse):
        return "%s;method=%s;coarse=%d" % (key.cache_string(), method, 1 if coarse else 0)

    def get(self, key, method, coarse=False):
        rec = self.records.get(self._record_key(key, method, coarse))
        if rec is None:
            return None
        return LaurentPoly.from_obj(key.data.N, rec["value"])

    def put(self, key, method, coarse, value):
        self.records[self._record_key(key, method, coarse)] = {
            "key": key.canonical().to_obj(),
            "method": method,
            "coarse": bool(coarse),
            "value": value.to_obj(),
        }

    def load(self, path):
        with open(path) as fh:
            obj = json.load(fh)
        if obj.get("format") != CACHE_FORMAT:
            raise ValueError("unrecognized cache format: %r" % obj.get("format"))
        self.records.update(obj.get("records", {}))

    def save(self, path=None):
        path = path or self.path
        if not path:
            raise ValueError("no cache path configured")
        obj = {"format": CACHE_FORMAT,
               "records": {k: self.records[k] for k in sorted(self.records)}}
        d = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=d, prefix=".hhi-cache-")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(obj, fh, indent=1, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def __len__(self):
        return len(self.records)
