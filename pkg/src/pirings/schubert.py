"""Young diagrams, Littlewood-Richardson coefficients and Schubert sampling.

The combinatorics here backs the decomposition of exterior powers of
R^k (x) R^m into spans of rotated Schubert simple vectors, and the
calibrated expected-degree pipeline for lines in projective 3-space
(the Grassmannian G(2,4) case, k = m = 2).
"""

from fractions import Fraction
import itertools
import math

import numpy as np

from .exterior import SimpleVector, span_rank, wedge_inner
from .sampling import (
    Estimate,
    SamplerZonoid,
    SchubertSampler,
    mc_wedge_length,
    sample_schubert,
    substream,
)


class YoungDiagram:
    """A partition: weakly decreasing positive parts, trailing zeros dropped."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise ValueError("negative part")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        self.parts = parts

    @property
    def size(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i] if i < len(self.parts) else 0

    def __eq__(self, other):
        if isinstance(other, YoungDiagram):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self == YoungDiagram(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __le__(self, other):
        """Containment of diagrams."""
        return all(self[i] <= other[i] for i in range(len(self)))

    def __iter__(self):
        return iter(self.parts)

    def __repr__(self):
        return f"YoungDiagram{self.parts}"

    def fits(self, k, m):
        return len(self.parts) <= k and (not self.parts or self.parts[0] <= m)

    def boxes(self):
        return [(i, j) for i, p in enumerate(self.parts) for j in range(p)]


def as_diagram(x):
    return x if isinstance(x, YoungDiagram) else YoungDiagram(x)


def transpose(lam):
    lam = as_diagram(lam)
    if not lam.parts:
        return YoungDiagram()
    return YoungDiagram(
        [sum(1 for p in lam.parts if p > j) for j in range(lam.parts[0])])


def dual(lam, k, m):
    """Complement of the diagram in the k x m rectangle, rotated 180 degrees."""
    lam = as_diagram(lam)
    if not lam.fits(k, m):
        raise ValueError("diagram does not fit the rectangle")
    return YoungDiagram([m - lam[k - 1 - i] for i in range(k)])


def outer_corners(lam):
    """Corners (row, column count) where a box can be removed, 1-based rows."""
    lam = as_diagram(lam)
    out = []
    for i, p in enumerate(lam.parts):
        if p > lam[i + 1]:
            out.append((i + 1, p))
    return out


def v_lambda(lam, k, m):
    """The coordinate Schubert simple vector: wedge of e_i (x) f_j over boxes."""
    lam = as_diagram(lam)
    if not lam.fits(k, m):
        raise ValueError("diagram does not fit the rectangle")
    factors = []
    for i, j in lam.boxes():
        vec = [Fraction(0)] * (k * m)
        vec[i * m + j] = Fraction(1)
        factors.append(vec)
    return SimpleVector(k * m, factors)


def _lr_fillings(outer, inner, content):
    """Count LR skew tableaux of shape outer/inner with the given content.

    Fillings are column-strict down, weakly increasing along rows, and
    the reverse reading word is a lattice word.
    """
    rows = len(outer)
    cells = []
    for i in range(rows):
        lo = inner[i] if i < len(inner) else 0
        for j in range(lo, outer[i]):
            cells.append((i, j))
    # reading order: rows top to bottom, right to left, so the lattice
    # condition can be checked incrementally
    cells.sort(key=lambda c: (c[0], -c[1]))
    nvals = len(content)
    remaining = list(content)
    grid = {}
    count = 0

    def place(pos, counts):
        nonlocal count
        if pos == len(cells):
            count += 1
            return
        i, j = cells[pos]
        for v in range(nvals):
            if remaining[v] == 0:
                continue
            # lattice word: value v+1 may not outnumber value v so far
            if v > 0 and counts[v] + 1 > counts[v - 1]:
                continue
            left = grid.get((i, j + 1))  # right neighbour, read earlier
            if left is not None and v > left:
                continue
            up = grid.get((i - 1, j))
            if up is not None and v <= up:
                continue
            grid[(i, j)] = v
            remaining[v] -= 1
            counts[v] += 1
            place(pos + 1, counts)
            counts[v] -= 1
            remaining[v] += 1
            del grid[(i, j)]

    place(0, [0] * nvals)
    return count


def lr_coefficients(lam, mu):
    """Littlewood-Richardson table: nu -> c^nu_{lam, mu}, by tableau count."""
    lam, mu = as_diagram(lam), as_diagram(mu)
    total = lam.size + mu.size
    rows_max = len(lam) + len(mu)
    cols_max = lam[0] + mu[0] if total else 0
    table = {}
    for nu_parts in _partitions(total, rows_max, cols_max):
        nu = YoungDiagram(nu_parts)
        if not lam <= nu:
            continue
        c = _lr_fillings(nu.parts, lam.parts, mu.parts)
        if c:
            table[nu] = c
    return table


def _partitions(total, max_rows, max_part):
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        if max_rows == 0:
            return
        for rest in _partitions(total - first, max_rows - 1, first):
            yield (first,) + rest


def lr_set(lam, mu, k, m):
    """Diagrams nu inside the k x m rectangle with c^nu_{lam, mu} > 0."""
    return {nu for nu in lr_coefficients(lam, mu) if nu.fits(k, m)}


def schur_dim(lam, k):
    """Dimension of the Schur module S_lam(C^k), hook-content formula."""
    lam = as_diagram(lam)
    if len(lam) > k:
        return 0
    num, den = 1, 1
    tr = transpose(lam)
    for i, j in lam.boxes():
        num *= k + j - i
        den *= (lam[i] - j) + (tr[j] - i) - 1  # hook length
    return num // den


def span_dim(lam, k, m):
    """Real dimension of the span of the rotated Schubert vectors for lam."""
    lam = as_diagram(lam)
    return schur_dim(lam, k) * schur_dim(transpose(lam), m)


def duality_nonvanishing(lam, mu, k, m):
    """Whether complementary Schubert classes pair nontrivially.

    True exactly when mu is the dual (rotated complement) of lam;
    cross-checked against the LR rule producing the full rectangle.
    """
    lam, mu = as_diagram(lam), as_diagram(mu)
    if lam.size + mu.size != k * m:
        raise ValueError("diagrams are not complementary in size")
    is_dual = mu == dual(lam, k, m)
    rect = YoungDiagram([m] * k)
    via_lr = rect in lr_set(lam, mu, k, m)
    if is_dual != via_lr:
        raise AssertionError("duality criteria disagree")
    return is_dual


def mc_schubert_shape(lams, k, m, samples, seed, workers=1):
    """Monte-Carlo mean of ||h_1 v_1 ^ ... ^ h_s v_s|| over independent rotations."""
    zs = [SamplerZonoid(1.0, SchubertSampler(as_diagram(l).parts, k, m))
          for l in lams]
    return mc_wedge_length(zs, samples, seed, workers)


def verify_span_decomposition(k, m, d, samples=200, tol=1e-9, seed=0):
    """Check the orthogonal decomposition of degree-d wedges of R^k (x) R^m.

    Samples orbits of each Schubert vector of size d, compares span
    ranks to the Schur dimensions, checks cross-orbit orthogonality, and
    checks wedge-span ranks against the LR prediction.
    """
    diagrams = [YoungDiagram(p) for p in _partitions(d, k, m)]
    report = {"k": k, "m": m, "d": d, "orbits": {}, "wedges": {}, "ok": True}
    mats = {}
    for lam in diagrams:
        rng = substream(seed, hash(lam.parts) % (1 << 32))
        vs = [sample_schubert(lam.parts, k, m, rng) for _ in range(samples)]
        rank = span_rank(vs, tol)
        expected = span_dim(lam, k, m)
        report["orbits"][str(lam.parts)] = {
            "rank": rank, "expected": expected, "match": rank == expected}
        report["ok"] &= rank == expected
        mats[lam] = _coord_matrix(vs)
    total = sum(span_dim(lam, k, m) for lam in diagrams)
    report["total"] = {"sum": total, "ambient": math.comb(k * m, d),
                       "match": total == math.comb(k * m, d)}
    report["ok"] &= report["total"]["match"]
    max_cross = 0.0
    for a, b in itertools.combinations(diagrams, 2):
        cross = np.abs(mats[a] @ mats[b].T).max()
        max_cross = max(max_cross, float(cross))
    report["max_cross_inner"] = max_cross
    report["orthogonal"] = max_cross < tol
    report["ok"] &= report["orthogonal"]
    # wedge spans: rank of sampled V_lam ^ V_mu should match the LR sum
    for a, b in itertools.combinations_with_replacement(diagrams, 2):
        if a.size + b.size > k * m:
            continue
        rng_a = substream(seed + 1, hash((a.parts, b.parts)) % (1 << 32))
        rng_b = substream(seed + 2, hash((b.parts, a.parts)) % (1 << 32))
        ws = []
        for _ in range(samples):
            va = sample_schubert(a.parts, k, m, rng_a)
            vb = sample_schubert(b.parts, k, m, rng_b)
            ws.append(SimpleVector(k * m, va.factors + vb.factors))
        # the relative rank tolerance is meaningless when every sampled
        # wedge is numerically zero; that is rank 0 (the Gram determinant
        # noise floor sits at machine epsilon, well below tol)
        if max(abs(wedge_inner(w, w)) for w in ws) < tol:
            rank = 0
        else:
            rank = span_rank(ws, tol)
        expected = sum(span_dim(nu, k, m) for nu in lr_set(a, b, k, m))
        key = f"{a.parts}^{b.parts}"
        report["wedges"][key] = {
            "rank": rank, "expected": expected, "match": rank == expected}
        report["ok"] &= rank == expected
    return report


def _coord_matrix(vs):
    from .exterior import expand
    n, d = vs[0].ambient_dim, vs[0].degree
    keys = list(itertools.combinations(range(n), d))
    pos = {kk: i for i, kk in enumerate(keys)}
    mat = np.zeros((len(vs), len(keys)))
    for r, v in enumerate(vs):
        for idx, c in expand(v).coords.items():
            mat[r, pos[idx]] = float(c)
    return mat


def edeg22_calibrated(samples, seed, workers=1, z=3.0):
    """Calibrated expected degree for four random Schubert conditions on G(2,4).

    The unknown cell and group volumes cancel in the combination
    E4 * sqrt(D11 * D22) / (D3 * D4), where each factor is a shape
    expectation: E4 over four single-box conditions, D11/D22 over the
    two self-dual pairs, D3/D4 over a complementary pair plus two boxes.
    Standard errors are propagated through the quotient at first order.
    """
    shapes = {
        "E4": [(1,), (1,), (1,), (1,)],
        "D11": [(1, 1), (1, 1)],
        "D22": [(2,), (2,)],
        "D3": [(1, 1), (1,), (1,)],
        "D4": [(2,), (1,), (1,)],
    }
    ests = {}
    for slot, (name, lams) in enumerate(shapes.items()):
        ests[name] = mc_schubert_shape(
            lams, 2, 2, samples, seed + slot, workers)
    e4, d11, d22, d3, d4 = (ests[k].mean for k in
                            ("E4", "D11", "D22", "D3", "D4"))
    value = e4 * math.sqrt(d11 * d22) / (d3 * d4)
    rel_var = (
        (ests["E4"].std_error / e4) ** 2
        + 0.25 * (ests["D11"].std_error / d11) ** 2
        + 0.25 * (ests["D22"].std_error / d22) ** 2
        + (ests["D3"].std_error / d3) ** 2
        + (ests["D4"].std_error / d4) ** 2
    )
    est = Estimate(value, value * math.sqrt(rel_var), samples, seed)
    est.components = {k: v for k, v in ests.items()}
    return est


def asymptotic_edeg2(m):
    """Leading-term asymptotic of the expected degree of G(2, m+2)."""
    if m < 1:
        raise ValueError("m must be positive")
    return (2.0 / 3.0) / math.sqrt(math.pi) * (math.pi ** 2 / 4.0) ** m \
        / math.sqrt(m)
