"""Branching-rule combinatorics for the classical chains B/C/D.

Implements the interlacing sets tau(lambda), complete Gelfand-Tsetlin
patterns, the lattice maps xi_{+-i} with their admissibility conditions, and
the bijection between interlacing pairs and admissible maps.

All row entries are doubled integers (2*value), matching WeightCoords, so
spin weights never leave integer arithmetic.  Intermediate rows nu:

* type B: length n, nu_n may be negative;
* type C: length n, everything nonnegative integral, nu_1 = lambda_1 - c;
* type D: length n-1 (entries indexed 2..n), nonnegative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .rootdata import WeightCoords, weyl_dim


def _sub_weight(lie_type, rank, coords):
    """Wrap a mu-row as a rank-(n-1) dominant weight, allowing the degenerate
    rank-0 (B/C) and rank-1 (D) terminal algebras."""
    return WeightCoords(lie_type, rank, tuple(coords))


def sub_dim(lie_type, rank, coords):
    """weyl_dim for the branching target, with the degenerate base cases."""
    if rank == 0 or (lie_type == "D" and rank == 1):
        return 1
    return weyl_dim(WeightCoords(lie_type, rank, tuple(coords)))


@dataclass(frozen=True)
class InterlacingPair:
    """An element (nu, mu) of tau(lambda) for a type/rank fixed by context."""

    lie_type: str
    rank: int
    nu: tuple
    mu: tuple

    def key(self):
        return self.nu + self.mu

    def mu_weight(self) -> WeightCoords:
        return _sub_weight(self.lie_type, self.rank - 1, self.mu)

    def to_json(self):
        return {"lie_type": self.lie_type, "rank": self.rank,
                "nu": list(self.nu), "mu": list(self.mu)}

    @staticmethod
    def from_json(obj):
        return InterlacingPair(obj["lie_type"], obj["rank"],
                               tuple(obj["nu"]), tuple(obj["mu"]))


def validate_pair(w: WeightCoords, pair: InterlacingPair) -> bool:
    """Check the type's inbetweenness chains and integrality classes."""
    lam = w.twice_coords
    nu, mu = pair.nu, pair.mu
    n = w.rank
    lt = w.lie_type
    if pair.lie_type != lt or pair.rank != n:
        return False
    if lt in ("B", "C"):
        if len(nu) != n or len(mu) != n - 1:
            return False
        parity = {x % 2 for x in lam} or {0}
        if lt == "C" and parity != {0} and lam:
            return False
        if {x % 2 for x in nu} - parity or {x % 2 for x in mu} - parity:
            return False
        lo_last = -lam[n - 1] if lt == "B" else 0
        for j in range(n - 1):
            if not lam[j] >= nu[j] >= lam[j + 1]:
                return False
        if not lam[n - 1] >= nu[n - 1] >= lo_last:
            return False
        # second chain: nu_{j-1} >= mu_j >= nu_j, closing at -mu_n (B) / 0 (C)
        for j in range(n - 1):
            if not nu[j] >= mu[j] >= nu[j + 1]:
                return False
        if n >= 2:
            lo = -mu[n - 2] if lt == "B" else 0
            if not nu[n - 1] >= lo:
                return False
        return True
    if lt == "D":
        if len(nu) != n - 1 or len(mu) != n - 1:
            return False
        parity = {x % 2 for x in lam} or {0}
        if {x % 2 for x in nu} - parity or {x % 2 for x in mu} - parity:
            return False
        for j in range(n - 2):
            if not lam[j] >= nu[j] >= lam[j + 1]:
                return False
        if not lam[n - 2] >= nu[n - 2] >= abs(lam[n - 1]):
            return False
        for j in range(n - 2):
            if not nu[j] >= mu[j] >= nu[j + 1]:
                return False
        if not nu[n - 2] >= abs(mu[n - 2]):
            return False
        return True
    raise ValueError(f"no branching combinatorics for type {lt}")


def _range2(lo, hi, parity):
    """Doubled values lo..hi of the given doubled-parity, ascending."""
    start = lo if lo % 2 == parity else lo + 1
    return range(start, hi + 1, 2)


def enumerate_tau(w: WeightCoords):
    """All (nu, mu) in tau(lambda), duplicate-free, lexicographically sorted."""
    lam = w.twice_coords
    n = w.rank
    lt = w.lie_type
    parity = lam[0] % 2 if lam else 0
    out = []
    if lt in ("B", "C"):
        lo_last = -lam[n - 1] if lt == "B" else 0
        nu_ranges = [_range2(lam[j + 1], lam[j], parity) for j in range(n - 1)]
        nu_ranges.append(_range2(lo_last, lam[n - 1], parity))
        for nu in _product(nu_ranges):
            mu_ranges = [_range2(nu[j + 1], nu[j], parity) for j in range(n - 1)]
            for mu in _product(mu_ranges):
                if n >= 2:
                    lo = -mu[n - 2] if lt == "B" else 0
                    if nu[n - 1] < lo:
                        continue
                out.append(InterlacingPair(lt, n, nu, mu))
    elif lt == "D":
        nu_ranges = [_range2(lam[j], lam[j - 1], parity) for j in range(1, n - 1)]
        nu_ranges.append(_range2(abs(lam[n - 1]), lam[n - 2], parity))
        for nu in _product(nu_ranges):
            mu_ranges = [_range2(nu[j + 1], nu[j], parity) for j in range(n - 2)]
            mu_ranges.append(_range2(-nu[n - 2], nu[n - 2], parity))
            for mu in _product(mu_ranges):
                out.append(InterlacingPair(lt, n, nu, mu))
    else:
        raise ValueError(f"no branching combinatorics for type {lt}")
    out.sort(key=InterlacingPair.key)
    return out


def _product(ranges):
    if not ranges:
        yield ()
        return
    for head in ranges[0]:
        for tail in _product(ranges[1:]):
            yield (head,) + tail


def branch_dim_check(w: WeightCoords):
    """(dim V_lambda, sum over tau(lambda) of dim V_mu, equal?)."""
    lhs = weyl_dim(w)
    rhs = sum(sub_dim(w.lie_type, w.rank - 1, p.mu) for p in enumerate_tau(w))
    return lhs, rhs, lhs == rhs


# -- complete patterns ---------------------------------------------------


@dataclass(frozen=True)
class CompletePattern:
    """Alternating rows lambda^(1), nu^(1), lambda^(2), ... (doubled ints).

    B/C end with nu^(n); D ends with the final single-entry lambda^(n) row.
    """

    lie_type: str
    rank: int
    rows: tuple

    def flat(self):
        return tuple(x for row in self.rows for x in row)

    def steps(self):
        """Yield (rank m, lambda-row, InterlacingPair) per branching step."""
        lt, n = self.lie_type, self.rank
        last = 1 if lt in ("B", "C") else 2
        for i in range(n - last + 1):
            m = n - i
            lam = self.rows[2 * i]
            nu = self.rows[2 * i + 1]
            if lt in ("B", "C"):
                mu = self.rows[2 * i + 2] if m > 1 else ()
            else:
                mu = self.rows[2 * i + 2]
            yield m, lam, InterlacingPair(lt, m, nu, mu)

    def validate(self) -> bool:
        for m, lam, pair in self.steps():
            if not validate_pair(WeightCoords(self.lie_type, m, lam), pair):
                return False
        return True

    def to_json(self):
        return {"lie_type": self.lie_type, "rank": self.rank,
                "rows": [list(r) for r in self.rows]}

    @staticmethod
    def from_json(obj):
        return CompletePattern(obj["lie_type"], obj["rank"],
                               tuple(tuple(r) for r in obj["rows"]))


def enumerate_complete_patterns(w: WeightCoords):
    """All complete Gelfand-Tsetlin patterns below lambda, sorted."""
    lt = w.lie_type

    def rec(rank, lam):
        if lt in ("B", "C") and rank == 1:
            return [(lam, (p.nu)) for p in enumerate_tau(WeightCoords(lt, 1, lam))]
        if lt == "D" and rank == 2:
            return [(lam, p.nu, p.mu)
                    for p in enumerate_tau(WeightCoords(lt, 2, lam))]
        out = []
        for p in enumerate_tau(WeightCoords(lt, rank, lam)):
            for rest in rec(rank - 1, p.mu):
                out.append((lam, p.nu) + rest)
        return out

    pats = [CompletePattern(lt, w.rank, rows) for rows in rec(w.rank, w.twice_coords)]
    pats.sort(key=CompletePattern.flat)
    return pats


# -- lattice maps --------------------------------------------------------


@dataclass(frozen=True)
class LatticeMap:
    """A composite of unit lattice moves encoding one branching step.

    minus holds the indices t (weakly increasing as stored), plus the indices
    i (weakly decreasing as stored); c counts xi_{-1} applications and is only
    meaningful in type C, where there is no p_{-1} and the c moves are
    realized by highest-weight-drop quotients instead of strands.
    """

    lie_type: str
    rank: int
    minus: tuple = ()
    plus: tuple = ()
    c: int = 0

    def __post_init__(self):
        lt, n = self.lie_type, self.rank
        if tuple(sorted(self.minus)) != self.minus:
            raise ValueError("minus indices must be stored weakly increasing")
        if tuple(sorted(self.plus, reverse=True)) != self.plus:
            raise ValueError("plus indices must be stored weakly decreasing")
        lo_minus = 1 if lt == "B" else 2
        if any(not lo_minus <= t <= n for t in self.minus):
            raise ValueError(f"minus index out of range for {lt}{n}")
        if any(not 1 <= i <= n - 1 for i in self.plus):
            raise ValueError(f"plus index out of range for {lt}{n}")
        if self.c and lt != "C":
            raise ValueError("c is a type-C datum")
        if self.c < 0:
            raise ValueError("c must be nonnegative")

    def strand_count(self):
        """Number of alpha_1 strands of the realizing idempotent (excludes c)."""
        return len(self.minus) + len(self.plus)

    def factor_sequence(self):
        """p-factors in the admissible map's subscript order."""
        if self.lie_type == "D":
            return ([("+", i) for i in reversed(self.plus)]
                    + [("-", t) for t in reversed(self.minus)])
        return [("-", t) for t in self.minus] + [("+", i) for i in self.plus]

    def to_json(self):
        return {"lie_type": self.lie_type, "rank": self.rank,
                "minus": list(self.minus), "plus": list(self.plus), "c": self.c}

    @staticmethod
    def from_json(obj):
        return LatticeMap(obj["lie_type"], obj["rank"], tuple(obj["minus"]),
                          tuple(obj["plus"]), obj.get("c", 0))


def _counts(seq):
    out = {}
    for x in seq:
        out[x] = out.get(x, 0) + 1
    return out


def _nu_of_map(m: LatticeMap, lam):
    n = m.rank
    cm = _counts(m.minus)
    cp = _counts(m.plus)
    if m.lie_type == "B":
        return tuple(lam[j] - 2 * cm.get(j + 1, 0) for j in range(n))
    if m.lie_type == "C":
        nu = [lam[0] - 2 * m.c]
        nu += [lam[j] - 2 * cm.get(j + 1, 0) for j in range(1, n)]
        return tuple(nu)
    # D: nu indexed 2..n, built from increments of lambda's tail
    return tuple(lam[j] + 2 * cp.get(j, 0) for j in range(1, n))


def map_to_tau(m: LatticeMap, w: WeightCoords) -> InterlacingPair:
    """The pair (nu, mu) induced by an admissible map; raises on non-members."""
    pair = _pair_of_map(m, w)
    if not validate_pair(w, pair):
        raise ValueError(f"map {m} is not {w.twice_coords}-admissible")
    return pair


def _pair_of_map(m: LatticeMap, w: WeightCoords) -> InterlacingPair:
    lam = w.twice_coords
    n = m.rank
    nu = _nu_of_map(m, lam)
    cp = _counts(m.plus)
    cm = _counts(m.minus)
    if m.lie_type == "D":
        mu = tuple(nu[j] - 2 * cm.get(j + 2, 0) for j in range(n - 1))
    else:
        mu = tuple(nu[j] + 2 * cp.get(j, 0) for j in range(1, n))
    return InterlacingPair(m.lie_type, n, nu, mu)


def xi_apply(m: LatticeMap, w: WeightCoords):
    """Apply the composite lattice map; total on the lattice, returns the
    final rank-(n-1) doubled coordinate vector."""
    return _pair_of_map(m, w).mu


def is_admissible(m: LatticeMap, w: WeightCoords) -> bool:
    return validate_pair(w, _pair_of_map(m, w))


def tau_to_map(p: InterlacingPair, w: WeightCoords) -> LatticeMap:
    """The unique admissible map realizing (nu, mu); inverse of map_to_tau."""
    if not validate_pair(w, p):
        raise ValueError(f"pair {p} is not in tau({w.twice_coords})")
    lam = w.twice_coords
    n = p.rank
    lt = p.lie_type
    minus, plus, c = [], [], 0
    if lt in ("B", "C"):
        start = 0 if lt == "B" else 1
        if lt == "C":
            c = (lam[0] - p.nu[0]) // 2
        for j in range(start, n):
            minus += [j + 1] * ((lam[j] - p.nu[j]) // 2)
        for i in range(1, n):
            plus += [i] * ((p.mu[i - 1] - p.nu[i]) // 2)
    else:
        for i in range(1, n):
            plus += [i] * ((p.nu[i - 1] - lam[i]) // 2)
        for j in range(2, n + 1):
            minus += [j] * ((p.nu[j - 2] - p.mu[j - 2]) // 2)
    return LatticeMap(lt, n, tuple(sorted(minus)), tuple(sorted(plus, reverse=True)), c)


def enumerate_admissible_maps(w: WeightCoords):
    """The set D_{g,lambda} via the bijection with tau(lambda), sorted by pair."""
    return [tau_to_map(p, w) for p in enumerate_tau(w)]


def restricted_weight_refinement(w: WeightCoords, weight_dims, sub_weight_dims):
    """Check the per-restricted-weight branching identity.

    weight_dims: dict epsilon-weight (doubled tuple, length n) -> dim V_lambda[eta];
    sub_weight_dims: callable mu_pair -> dict over rank-(n-1) weights.
    Returns (ok, counterexample or None).
    """
    lhs = {}
    for eta, d in weight_dims.items():
        key = eta[1:]
        lhs[key] = lhs.get(key, 0) + d
    rhs = {}
    for p in enumerate_tau(w):
        for a, d in sub_weight_dims(p).items():
            rhs[a] = rhs.get(a, 0) + d
    for key in set(lhs) | set(rhs):
        if lhs.get(key, 0) != rhs.get(key, 0):
            return False, key
    return True, None
