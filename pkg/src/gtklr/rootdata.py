"""Exact Cartan/root data for the classical types and weight conversions.

Conventions:

* Weights are stored through their doubled coordinates ``2*lambda_i`` so that
  half-integer (spin) weights stay exact integers end to end.
* The bilinear form on the epsilon-lattice is rescaled per type so that the
  symmetrizers d_i are the minimal positive integers (B: (2,..,2,1),
  C: (1,..,1,2), A/D: all 1).  The Cartan matrix is unchanged by this rescale;
  it only fixes the normalization q_i = q^{d_i} with integral d_i.
* Node 1 is the node removed in branching; the B/C chains end in the
  short/long node n and D forks at n-2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

LIE_TYPES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class RootDatum:
    lie_type: str
    rank: int
    cartan: tuple          # rows c_ij as tuples
    d: tuple               # minimal integral symmetrizers
    simple_roots: tuple    # epsilon-coordinate integer vectors

    def __post_init__(self):
        n = self.rank
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise ValueError("diagonal Cartan entries must be 2")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if self.d[i] * self.cartan[i][j] != self.d[j] * self.cartan[j][i]:
                    raise ValueError("Cartan matrix is not symmetrizable by d")

    @property
    def epsilon_dim(self):
        return len(self.simple_roots[0])

    def form(self, v, w):
        """Rescaled symmetric form on epsilon-coordinates (exact)."""
        s = sum(a * b for a, b in zip(v, w))
        if self.lie_type == "B":
            return 2 * s
        return s


@dataclass(frozen=True)
class WeightCoords:
    """A dominant weight in epsilon-coordinates, stored doubled."""

    lie_type: str
    rank: int
    twice_coords: tuple

    def __post_init__(self):
        t = self.twice_coords
        n = self.rank
        if len(t) != (n + 1 if self.lie_type == "A" else n):
            raise ValueError("coordinate length does not match rank")
        if any(not isinstance(x, int) for x in t):
            raise TypeError("doubled coordinates must be ints")
        if not self.is_dominant():
            raise ValueError(f"not a dominant {self.lie_type}{n} weight: {t}")

    def is_dominant(self):
        t = self.twice_coords
        lt = self.lie_type
        if lt == "A":
            return all(a >= b for a, b in zip(t, t[1:])) and all(x % 2 == 0 for x in t)
        parities = {x % 2 for x in t}
        if len(parities) > 1:
            return False
        if lt == "B":
            return all(a >= b for a, b in zip(t, t[1:])) and t[-1] >= 0
        if lt == "C":
            return (parities <= {0} and all(a >= b for a, b in zip(t, t[1:]))
                    and t[-1] >= 0)
        if lt == "D":
            head = t[:-1]
            return all(a >= b for a, b in zip(head, head[1:])) and t[-2] >= abs(t[-1])
        raise ValueError(f"unknown type {lt}")

    def coords(self):
        return tuple(Fraction(x, 2) for x in self.twice_coords)


@dataclass(frozen=True)
class DynkinLabels:
    lie_type: str
    labels: tuple

    def __post_init__(self):
        if any(x < 0 or not isinstance(x, int) for x in self.labels):
            raise ValueError("Dynkin labels of a dominant weight must be nonnegative ints")


@lru_cache(maxsize=None)
def root_datum(lie_type, rank):
    """Build the root datum of the given classical type and rank.

    Rank 1 is allowed for A/B/C as sl2-like base cases; D needs rank >= 2.
    """
    n = rank
    if lie_type not in LIE_TYPES:
        raise ValueError(f"unsupported type {lie_type!r}")
    if n < 1 or (lie_type == "D" and n < 2):
        raise ValueError(f"unsupported rank {n} for type {lie_type}")

    def eps(i, dim):
        return tuple(1 if k == i else 0 for k in range(dim))

    def vsub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    def vadd(a, b):
        return tuple(x + y for x, y in zip(a, b))

    if lie_type == "A":
        roots = [vsub(eps(i, n + 1), eps(i + 1, n + 1)) for i in range(n)]
    else:
        roots = [vsub(eps(i, n), eps(i + 1, n)) for i in range(n - 1)]
        if lie_type == "B":
            roots.append(eps(n - 1, n))
        elif lie_type == "C":
            roots.append(tuple(2 * x for x in eps(n - 1, n)))
        else:
            if n >= 2:
                roots.append(vadd(eps(n - 2, n), eps(n - 1, n)))

    scale = 2 if lie_type == "B" else 1

    def form(v, w):
        return scale * sum(a * b for a, b in zip(v, w))

    d = tuple(form(a, a) // 2 for a in roots)
    cartan = tuple(
        tuple(2 * form(a, b) // form(a, a) for b in roots) for a in roots
    )
    datum = RootDatum(lie_type, n, cartan, d, tuple(roots))
    # recompute c_ij = alpha_i^vee(alpha_j) from the stored roots as a guard
    for i in range(n):
        for j in range(n):
            num = 2 * datum.form(roots[i], roots[j])
            den = datum.form(roots[i], roots[i])
            if Fraction(num, den) != cartan[i][j]:
                raise AssertionError("Cartan matrix mismatch against simple roots")
    return datum


def to_dynkin_labels(w: WeightCoords) -> DynkinLabels:
    t = w.twice_coords
    n = w.rank
    lt = w.lie_type
    diffs = [(t[j] - t[j + 1]) // 2 for j in range(len(t) - 1)]
    if lt == "A":
        labels = diffs
    elif lt == "B":
        labels = diffs + [t[-1]]
    elif lt == "C":
        labels = diffs + [t[-1] // 2]
    else:
        labels = diffs[: n - 2] + [(t[-2] - t[-1]) // 2, (t[-2] + t[-1]) // 2]
    return DynkinLabels(lt, tuple(labels))


def from_dynkin_labels(labels, lie_type, rank=None) -> WeightCoords:
    lab = labels.labels if isinstance(labels, DynkinLabels) else tuple(labels)
    n = len(lab) if rank is None else rank
    if len(lab) != n:
        raise ValueError("label count does not match rank")
    if any(x < 0 for x in lab):
        raise ValueError("labels must be nonnegative")
    if lie_type == "A":
        t = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            t[j] = t[j + 1] + 2 * lab[j]
        return WeightCoords("A", n, tuple(t))
    t = [0] * n
    if lie_type == "B":
        t[n - 1] = lab[n - 1]
    elif lie_type == "C":
        t[n - 1] = 2 * lab[n - 1]
    else:
        if n == 1:
            raise ValueError("type D needs rank >= 2")
        t[n - 1] = lab[n - 1] - lab[n - 2]
        t[n - 2] = lab[n - 1] + lab[n - 2]
    start = n - 3 if lie_type == "D" else n - 2
    for j in range(start, -1, -1):
        t[j] = t[j + 1] + 2 * lab[j]
    return WeightCoords(lie_type, n, tuple(t))


@lru_cache(maxsize=None)
def positive_roots(datum: RootDatum):
    """All positive roots in epsilon-coordinates, by reflection closure."""
    simple = list(datum.simple_roots)
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for alpha in simple:
                num = 2 * datum.form(alpha, beta)
                den = datum.form(alpha, alpha)
                k = Fraction(num, den)
                refl = tuple(b - k * a for a, b in zip(alpha, beta))
                refl = tuple(int(x) for x in refl)
                if refl not in seen:
                    seen.add(refl)
                    new.append(refl)
        frontier = new
    positives = []
    for r in seen:
        lead = next((x for x in r if x != 0), 0)
        if lead > 0:
            positives.append(r)
    return tuple(sorted(positives, reverse=True))


def weyl_dim(w: WeightCoords) -> int:
    """dim V_lambda by the Weyl dimension formula, evaluated exactly."""
    datum = root_datum(w.lie_type, w.rank)
    pos = positive_roots(datum)
    two_rho = tuple(sum(col) for col in zip(*pos))
    t = w.twice_coords
    dim = Fraction(1)
    for alpha in pos:
        num = sum((a + b) * c for a, b, c in zip(t, two_rho, alpha))
        den = sum(b * c for b, c in zip(two_rho, alpha))
        dim *= Fraction(num, den)
    if dim.denominator != 1 or dim < 1:
        raise AssertionError(f"Weyl dimension must be a positive integer, got {dim}")
    return int(dim)


def zero_weight(lie_type, rank) -> WeightCoords:
    n = rank + 1 if lie_type == "A" else rank
    return WeightCoords(lie_type, rank, (0,) * n)


def labels_of_depth(datum: RootDatum, labels, gamma):
    """Dynkin labels of lambda - sum_i gamma_i alpha_i (can be negative)."""
    lab = labels.labels if isinstance(labels, DynkinLabels) else tuple(labels)
    return tuple(
        lab[j] - sum(datum.cartan[j][i] * gamma[i] for i in range(datum.rank))
        for j in range(datum.rank)
    )
