"""Exact highest-weight module engine over Q(q).

The irreducible V(lambda) is realized as the quotient of the span of
F-monomials by the radical of the q-Shapovalov form; no Serre relations are
ever imposed symbolically.  A monomial is a word (i_1, ..., i_k) of node
indices and stands for F_{i_k} ... F_{i_1} v_lambda (leftmost applied first).

Two independent computations of the form live here:

* ``shapovalov`` -- the direct recursion peeling the leftmost F through the
  involution phi(F_i) = q_i^{-1} K_{d_i alpha_i} E_i;
* ``HWModule`` -- a weight-by-weight orthogonal-basis construction whose
  block dimensions are the Gram ranks (the form is anisotropic on rational
  vectors because it specializes at q=1 to the positive-definite classical
  contravariant form, so a vanishing self-pairing certifies a genuine
  dependency).

The form is symmetric and extended bilinearly over Q(q); monomial pairings
satisfy <a,b> = <b,a> on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from .laurent import LaurentPoly, RatFunc, qint, qbinom, poly_matrix_rank
from .rootdata import RootDatum, labels_of_depth


def _content(datum, word):
    gamma = [0] * datum.rank
    for i in word:
        gamma[i - 1] += 1
    return tuple(gamma)


def e_action(datum: RootDatum, labels, i, word):
    """E_i applied to the monomial ``word``: list of (coeff, shorter word).

    One term per occurrence of i; the coefficient is the quantum integer of
    the Dynkin label of the weight below that occurrence.
    """
    lab = labels.labels if hasattr(labels, "labels") else tuple(labels)
    out = []
    gamma = [0] * datum.rank
    for p, letter in enumerate(word):
        if letter == i:
            m = lab[i - 1] - sum(datum.cartan[i - 1][t] * gamma[t]
                                 for t in range(datum.rank))
            coeff = qint(m, datum.d[i - 1])
            if not coeff.is_zero():
                out.append((coeff, word[:p] + word[p + 1:]))
        gamma[letter - 1] += 1
    return out


class ShapovalovCache:
    """Memoized direct recursion for the q-Shapovalov pairing of monomials."""

    def __init__(self, datum: RootDatum, labels):
        self.datum = datum
        self.labels = labels.labels if hasattr(labels, "labels") else tuple(labels)
        self._memo = {}

    def pair(self, a, b):
        a, b = tuple(a), tuple(b)
        if sorted(a) != sorted(b):
            return LaurentPoly.zero()
        return self._pair(a, b)

    def _pair(self, a, b):
        if not a:
            return LaurentPoly.one()
        key = (a, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        datum = self.datum
        j = a[-1]
        dj = datum.d[j - 1]
        # scalar from phi(F_j) = q_j^{-1} K_{d_j alpha_j} E_j acting at wt(b)+alpha_j
        xbar = labels_of_depth(datum, self.labels, _content(datum, b))[j - 1]
        scale = LaurentPoly.q_power(dj * (xbar + 1))
        total = LaurentPoly.zero()
        for coeff, b2 in e_action(datum, self.labels, j, b):
            total = total + coeff * self._pair(a[:-1], b2)
        out = scale * total
        self._memo[key] = out
        return out


_SHAP_CACHES = {}


def shapovalov(datum: RootDatum, labels, a, b) -> LaurentPoly:
    """<vec(a), vec(b)> as an exact Laurent polynomial."""
    lab = labels.labels if hasattr(labels, "labels") else tuple(labels)
    key = (datum.lie_type, datum.rank, lab)
    cache = _SHAP_CACHES.get(key)
    if cache is None:
        cache = _SHAP_CACHES[key] = ShapovalovCache(datum, lab)
    return cache.pair(a, b)


@dataclass
class GramBlock:
    """Full monomial Gram data of one weight space (small beta only)."""

    datum: RootDatum
    labels: tuple
    beta: tuple
    basis: tuple
    gram: tuple

    def rank(self):
        return poly_matrix_rank([list(r) for r in self.gram])


def gram_block(datum: RootDatum, labels, beta) -> GramBlock:
    lab = labels.labels if hasattr(labels, "labels") else tuple(labels)
    words = sorted(_words_of_content(datum, beta))
    g = tuple(tuple(shapovalov(datum, lab, a, b) for b in words) for a in words)
    return GramBlock(datum, lab, tuple(beta), tuple(words), g)


def _words_of_content(datum, beta):
    letters = []
    for i, m in enumerate(beta):
        letters += [i + 1] * m
    seen = set()

    def rec(remaining, prefix):
        if not remaining:
            seen.add(prefix)
            return
        used = set()
        for t, x in enumerate(remaining):
            if x in used:
                continue
            used.add(x)
            rec(remaining[:t] + remaining[t + 1:], prefix + (x,))

    rec(tuple(letters), ())
    return seen


def _support_height(datum, labels):
    """Height of lambda - w0(lambda) in simple-root coordinates (exact)."""
    from fractions import Fraction
    from .rootdata import from_dynkin_labels
    lam = from_dynkin_labels(labels, datum.lie_type, datum.rank)
    t = lam.twice_coords
    n = datum.rank
    if datum.lie_type == "A":
        target = [a - b for a, b in zip(t, reversed(t))]
    elif datum.lie_type == "D" and n % 2 == 1:
        target = [2 * x for x in t[:-1]] + [0]
    else:
        target = [2 * x for x in t]
    # solve sum c_i * (2 alpha_i) = target over the Fractions
    dim = len(target)
    rows = [[Fraction(2 * datum.simple_roots[i][k]) for i in range(n)] + [Fraction(target[k])]
            for k in range(dim)]
    # Gaussian elimination (the simple roots are independent)
    piv = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, dim) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(dim):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv.append(col)
        r += 1
    coeffs = [Fraction(0)] * n
    for idx, col in enumerate(piv):
        coeffs[col] = rows[idx][-1]
    ht = sum(coeffs)
    if ht.denominator != 1 or any(c.denominator != 1 or c < 0 for c in coeffs):
        raise AssertionError("lambda - w0(lambda) must be a nonnegative root sum")
    return int(ht)


class _Block:
    __slots__ = ("cands", "cand_index", "words", "T", "norms", "cand_coords", "E")

    def __init__(self):
        self.cands = []        # (node j, parent basis index b)
        self.cand_index = {}
        self.words = []        # basis words, one per selected candidate
        self.T = []            # basis vectors as RatFunc rows over candidates
        self.norms = []        # <v_t, v_t>, nonzero RatFunc
        self.cand_coords = []  # every candidate over the final basis
        self.E = {}            # node -> per-basis RatFunc coords one level up


class HWModule:
    """V(lambda) built weight by weight with an orthogonal Gram-certified basis."""

    def __init__(self, datum: RootDatum, labels, height_cap=None):
        self.datum = datum
        self.labels = labels.labels if hasattr(labels, "labels") else tuple(labels)
        if height_cap is None:
            # exact height of lambda - w0(lambda) plus one probe row
            height_cap = _support_height(datum, self.labels) + 1
        self.height_cap = height_cap
        self.blocks = {}
        top = _Block()
        top.words = [()]
        top.norms = [RatFunc.one()]
        top.T = [[]]
        top.E = {i: [[]] for i in range(1, datum.rank + 1)}
        self.blocks[(0,) * datum.rank] = top

    # -- construction --------------------------------------------------

    def block(self, gamma):
        gamma = tuple(gamma)
        blk = self.blocks.get(gamma)
        if blk is None:
            if sum(gamma) > self.height_cap:
                raise RuntimeError(
                    f"support enumeration cutoff {self.height_cap} exceeded at {gamma}")
            blk = self._build(gamma)
            self.blocks[gamma] = blk
        return blk

    def dim(self, gamma):
        return len(self.block(gamma).words)

    def _parents(self, gamma):
        for j in range(1, self.datum.rank + 1):
            if gamma[j - 1]:
                parent = list(gamma)
                parent[j - 1] -= 1
                yield j, tuple(parent)

    def _build(self, gamma):
        datum = self.datum
        blk = _Block()
        for j, parent in self._parents(gamma):
            pblk = self.block(parent)
            for b in range(len(pblk.words)):
                blk.cand_index[(j, b)] = len(blk.cands)
                blk.cands.append((j, b))
        m = len(blk.cands)
        if m == 0:
            return blk
        H = self._cand_gram(gamma, blk)
        zero = RatFunc.zero()
        sel_cols = []
        for t in range(m):
            f = []
            for s in range(len(blk.T)):
                ip = zero
                for r, c in enumerate(blk.T[s]):
                    if not c.is_zero() and not H[r][t].is_zero():
                        ip = ip + c * H[r][t]
                f.append(ip / blk.norms[s])
            Tv = [zero] * m
            Tv[t] = RatFunc.one()
            for s, fs in enumerate(f):
                if fs.is_zero():
                    continue
                for r, c in enumerate(blk.T[s]):
                    Tv[r] = Tv[r] - fs * c
            N = zero
            for r, c in enumerate(Tv):
                if not c.is_zero() and not H[r][t].is_zero():
                    N = N + c * H[r][t]
            if N.is_zero():
                blk.cand_coords.append(f)
            else:
                j, b = blk.cands[t]
                parent_words = self.block(self._parent_of(gamma, j)).words
                blk.words.append(parent_words[b] + (j,))
                blk.T.append(Tv)
                blk.norms.append(N)
                blk.cand_coords.append(f + [RatFunc.one()])
                sel_cols.append(t)
        nb = len(blk.words)
        for row in blk.cand_coords:
            row.extend([zero] * (nb - len(row)))
        self._build_e(gamma, blk)
        return blk

    def _parent_of(self, gamma, j):
        parent = list(gamma)
        parent[j - 1] -= 1
        return tuple(parent)

    def _cand_gram(self, gamma, blk):
        """<c_r, c_t> for candidates c = F_j v_b via one peel of the form."""
        datum = self.datum
        m = len(blk.cands)
        zero = RatFunc.zero()
        H = [[zero] * m for _ in range(m)]
        scale = {}
        for j in {j for j, _ in blk.cands}:
            xbar = labels_of_depth(datum, self.labels, gamma)[j - 1]
            scale[j] = RatFunc(LaurentPoly.q_power(datum.d[j - 1] * (xbar + 1)))
        for t, (jp, bp) in enumerate(blk.cands):
            parent_p = self._parent_of(gamma, jp)
            pblk = self.block(parent_p)
            comm_lab = labels_of_depth(datum, self.labels, parent_p)
            for j in {jj for jj, _ in blk.cands}:
                # coords of F_jp(E_j v_bp) in the block at gamma - e_j
                target = self.block(self._parent_of(gamma, j))
                acc = [zero] * len(target.words)
                evec = pblk.E[j][bp] if pblk.E else []
                for k, ck in enumerate(evec):
                    if ck.is_zero():
                        continue
                    idx = target.cand_index.get((jp, k))
                    if idx is None:
                        continue
                    for u, cu in enumerate(target.cand_coords[idx]):
                        if not cu.is_zero():
                            acc[u] = acc[u] + ck * cu
                if j == jp:
                    mm = RatFunc(qint(comm_lab[j - 1], datum.d[j - 1]))
                    if not mm.is_zero():
                        acc[bp] = acc[bp] + mm
                for r, (jr, br) in enumerate(blk.cands):
                    if jr != j:
                        continue
                    y = acc[br]
                    if not y.is_zero():
                        H[r][t] = scale[j] * (y * target.norms[br])
        return H

    def _build_e(self, gamma, blk):
        datum = self.datum
        zero = RatFunc.zero()
        for i in range(1, datum.rank + 1):
            up = self._parent_of(gamma, i) if gamma[i - 1] else None
            rows = []
            for Tv in blk.T:
                if up is None:
                    rows.append([])
                    continue
                target = self.block(up)
                acc = [zero] * len(target.words)
                for r, cr in enumerate(Tv):
                    if cr.is_zero():
                        continue
                    j, b = blk.cands[r]
                    parent = self._parent_of(gamma, j)
                    pblk = self.block(parent)
                    if i == j:
                        mm = qint(labels_of_depth(datum, self.labels, parent)[i - 1],
                                  datum.d[i - 1])
                        if not mm.is_zero():
                            acc[b] = acc[b] + cr * RatFunc(mm)
                    evec = pblk.E.get(i, [])
                    if b < len(evec):
                        for k, ck in enumerate(evec[b]):
                            if ck.is_zero():
                                continue
                            idx = target.cand_index.get((j, k))
                            if idx is None:
                                continue
                            for u, cu in enumerate(target.cand_coords[idx]):
                                if not cu.is_zero():
                                    acc[u] = acc[u] + cr * ck * cu
                rows.append(acc)
            blk.E[i] = rows

    # -- queries ---------------------------------------------------------

    def word_coords(self, word):
        """Orthogonal-basis coordinates of vec(word) at its weight block."""
        coords = [RatFunc.one()]
        gamma = (0,) * self.datum.rank
        for j in word:
            target_gamma = tuple(g + (1 if t == j - 1 else 0)
                                 for t, g in enumerate(gamma))
            target = self.block(target_gamma)
            zero = RatFunc.zero()
            acc = [zero] * len(target.words)
            for b, cb in enumerate(coords):
                if cb.is_zero():
                    continue
                idx = target.cand_index.get((j, b))
                if idx is None:
                    continue
                for u, cu in enumerate(target.cand_coords[idx]):
                    if not cu.is_zero():
                        acc[u] = acc[u] + cb * cu
            coords = acc
            gamma = target_gamma
            if not any(not c.is_zero() for c in coords):
                return gamma, [zero] * len(target.words)
        return gamma, coords

    def pair_words(self, a, b):
        """<vec(a), vec(b)> through the module (must agree with shapovalov)."""
        if sorted(a) != sorted(b):
            return LaurentPoly.zero()
        ga, xa = self.word_coords(tuple(a))
        gb, xb = self.word_coords(tuple(b))
        blk = self.block(ga)
        acc = RatFunc.zero()
        for t in range(len(blk.words)):
            if not xa[t].is_zero() and not xb[t].is_zero():
                acc = acc + xa[t] * xb[t] * blk.norms[t]
        return acc.to_laurent()

    def support_dims(self):
        """BFS the whole support; dict gamma -> dim (nonzero blocks only)."""
        frontier = [(0,) * self.datum.rank]
        seen = {frontier[0]}
        dims = {}
        while frontier:
            nxt = []
            for gamma in frontier:
                d = self.dim(gamma)
                if d == 0:
                    continue
                dims[gamma] = d
                for j in range(1, self.datum.rank + 1):
                    child = tuple(g + (1 if t == j - 1 else 0)
                                  for t, g in enumerate(gamma))
                    if child not in seen:
                        seen.add(child)
                        nxt.append(child)
            frontier = nxt
        return dims

    def epsilon_weight(self, gamma):
        """Doubled epsilon-coordinates of lambda - sum gamma_i alpha_i."""
        from .rootdata import from_dynkin_labels
        lam = from_dynkin_labels(self.labels, self.datum.lie_type, self.datum.rank)
        t = list(lam.twice_coords)
        for i, g in enumerate(gamma):
            for k, x in enumerate(self.datum.simple_roots[i]):
                t[k] -= 2 * g * x
        return tuple(t)


_MODULES = {}


def hw_module(datum: RootDatum, labels, height_cap=None) -> HWModule:
    lab = labels.labels if hasattr(labels, "labels") else tuple(labels)
    key = (datum.lie_type, datum.rank, lab)
    mod = _MODULES.get(key)
    if mod is None:
        mod = _MODULES[key] = HWModule(datum, lab, height_cap)
    return mod


def weight_space_dim(datum: RootDatum, labels, beta) -> int:
    """dim V_lambda[lambda - beta], the Gram rank of the weight space."""
    return hw_module(datum, labels).dim(tuple(beta))


def character_dim(datum: RootDatum, labels) -> int:
    """Sum of all weight-space Gram ranks; must equal weyl_dim."""
    return sum(hw_module(datum, labels).support_dims().values())


def serre_radical_check(datum: RootDatum, labels, i, j) -> bool:
    """Serre element at (i, j), cleared of quantum-factorial denominators,
    lies in the Shapovalov radical (applied to v and to words of length <= 2)."""
    if i == j:
        raise ValueError("Serre relation needs i != j")
    lab = labels.labels if hasattr(labels, "labels") else tuple(labels)
    mod = hw_module(datum, lab)
    n = datum.rank
    N = 1 - datum.cartan[i - 1][j - 1]
    di = datum.d[i - 1]
    bases = [()]
    bases += [(a,) for a in range(1, n + 1)]
    bases += [(a, b) for a in range(1, n + 1) for b in range(1, n + 1)]
    for base in bases:
        acc = None
        gamma_ref = None
        for a in range(N + 1):
            b = N - a
            word = base + (i,) * b + (j,) + (i,) * a
            coeff = RatFunc(qbinom(N, a, di) * ((-1) ** a))
            gamma, coords = mod.word_coords(word)
            gamma_ref = gamma
            if acc is None:
                acc = [coeff * c for c in coords]
            else:
                acc = [s + coeff * c for s, c in zip(acc, coords)]
        if acc and any(not c.is_zero() for c in acc):
            return False
    return True
