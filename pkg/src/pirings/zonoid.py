"""Exact calculus of discrete virtual zonoids.

A virtual zonoid is a signed combination of centered segments
sum_i w_i * (1/2)[-v_i, v_i] plus an optional center, where the v_i are
simple vectors in an exterior power of R^N.  Support, length, pairing,
wedge products and the derived volume functionals are all finite sums,
so they stay exact on rational input.
"""

from fractions import Fraction
import math

from .exact import exact_sqrt, is_exact
from .exterior import (
    ExteriorElement,
    SimpleVector,
    expand,
    factorize_simple,
    hodge_star,
    wedge_elements,
    wedge_inner,
    wedge_norm,
)
from .sphere_ring import ball_wedge_length, kappa

PRUNE_TOL = 1e-14


class VirtualZonoid:
    """Atoms (weight, SimpleVector of common degree) plus an optional center."""

    def __init__(self, ambient_dim, degree, atoms=(), center=None):
        self.ambient_dim = ambient_dim
        self.degree = degree
        self.atoms = []
        for w, v in atoms:
            if v.ambient_dim != ambient_dim or v.degree != degree:
                raise ValueError("atom shape mismatch")
            self.atoms.append((w, v))
        if center is not None:
            if center.ambient_dim != ambient_dim or center.degree != degree:
                raise ValueError("center shape mismatch")
            if center.is_zero():
                center = None
        self.center = center

    @classmethod
    def segment(cls, v, weight=1):
        """The centered segment weight * (1/2)[-v, v]."""
        return cls(v.ambient_dim, v.degree, [(weight, v)])

    @classmethod
    def scalar_one(cls, ambient_dim):
        """The degree-0 unit (the number 1 viewed as a zonoid)."""
        return cls(ambient_dim, 0, [(1, SimpleVector(ambient_dim, ()))])

    def translate(self, center):
        c = center if self.center is None else self.center + center
        return VirtualZonoid(self.ambient_dim, self.degree, self.atoms, c)

    def __add__(self, other):
        """Minkowski sum: concatenate atoms, add centers."""
        if (self.ambient_dim, self.degree) != (other.ambient_dim, other.degree):
            raise ValueError("shape mismatch")
        if self.center is None:
            c = other.center
        elif other.center is None:
            c = self.center
        else:
            c = self.center + other.center
        return VirtualZonoid(self.ambient_dim, self.degree,
                             self.atoms + other.atoms, c)

    def is_genuine(self):
        return all(w >= 0 for w, _ in self.atoms)

    def __repr__(self):
        return (f"VirtualZonoid(N={self.ambient_dim}, d={self.degree}, "
                f"atoms={len(self.atoms)}, center={self.center is not None})")


def support(z, u):
    """Support function h_z(u) for a direction u given as an ExteriorElement."""
    if u.ambient_dim != z.ambient_dim or u.degree != z.degree:
        raise ValueError("degree mismatch")
    total = 0
    for w, v in z.atoms:
        total += w * Fraction(1, 2) * abs(expand(v).inner(u))
    if z.center is not None:
        total += z.center.inner(u)
    return total


def length(z):
    """First intrinsic volume sum: sum of w_i ||v_i||.  Center is ignored."""
    return sum((w * wedge_norm([v]) for w, v in z.atoms), start=0)


def pairing(a, b):
    """<K, K'> = sum over atom pairs of w w' |<v, v'>| (centered parts only)."""
    if (a.ambient_dim, a.degree) != (b.ambient_dim, b.degree):
        raise ValueError("degree mismatch")
    total = 0
    for w, v in a.atoms:
        for w2, v2 in b.atoms:
            total += w * w2 * abs(wedge_inner(v, v2))
    return total


def wedge(zs):
    """Wedge product of virtual zonoids.

    Centered atoms multiply pairwise; the center of the product is the
    wedge of the centers, scaled so that the represented expectation
    product comes out right (a zonoid with center c has mean segment
    expectation 2c).
    """
    zs = list(zs)
    if not zs:
        raise ValueError("empty product")
    n = zs[0].ambient_dim
    deg = sum(z.degree for z in zs)
    if deg > n:
        raise ValueError("degree overflow")
    atoms = [(1, SimpleVector(n, ()))]
    for z in zs:
        if z.ambient_dim != n:
            raise ValueError("ambient dimension mismatch")
        new = []
        for w, v in atoms:
            for w2, v2 in z.atoms:
                nv = SimpleVector(n, v.factors + v2.factors)
                nw = w * w2
                if abs(wedge_norm([nv])) < PRUNE_TOL:
                    continue
                new.append((nw, nv))
        atoms = new
    center = None
    if all(z.center is not None for z in zs):
        c = zs[0].center
        for z in zs[1:]:
            c = wedge_elements(c, z.center)
        center = c.scale(2 ** (len(zs) - 1))
        if center.is_zero():
            center = None
    return VirtualZonoid(n, deg, atoms, center)


def mixed_volume(zs):
    """Mixed volume of n degree-1 zonoids in R^n: length(wedge)/n!."""
    zs = list(zs)
    n = zs[0].ambient_dim
    if len(zs) != n or any(z.degree != 1 for z in zs):
        raise ValueError("need exactly n zonoids of degree 1 in R^n")
    val = length(wedge(zs))
    if is_exact(val):
        return val / math.factorial(n)
    return val / float(math.factorial(n))


def volume(z):
    """Volume of the zonotope generated by a degree-1 zonoid in R^n."""
    n = z.ambient_dim
    if z.degree != 1:
        raise ValueError("volume needs a degree-1 zonoid")
    val = length(wedge([z] * n))
    if is_exact(val):
        return val / math.factorial(n)
    return val / float(math.factorial(n))


def intrinsic_volume(z, d):
    """d-th intrinsic volume of a genuine degree-1 zonoid in R^n."""
    if not z.is_genuine():
        raise ValueError("intrinsic volumes need nonnegative weights")
    n = z.ambient_dim
    if not 0 <= d <= n:
        raise ValueError("d out of range")
    if d == 0:
        return 1
    ell = length(wedge([z] * d))
    # binom(n,d)/kappa_{n-d} * MV(z[d], B[n-d]); the ball factor collapses
    # the constant to an exact rational
    factor = (ball_wedge_length(n, d, n - d, 1) / kappa(n - d)
              * math.comb(n, d) / math.factorial(n))
    assert factor.pi_exp == 0
    if is_exact(ell):
        return factor.coeff * ell
    return float(factor.coeff) * ell


def exp_truncated(L, max_degree):
    """Graded parts of e^L = sum_d (1/d!) L^(wedge d), degrees 0..max_degree."""
    if L.degree != 1:
        raise ValueError("exponential needs a degree-1 zonoid")
    parts = [VirtualZonoid.scalar_one(L.ambient_dim)]
    for d in range(1, max_degree + 1):
        zd = wedge([L] * d)
        inv = Fraction(1, math.factorial(d))
        atoms = [(w * inv, v) for w, v in zd.atoms]
        center = zd.center.scale(inv) if zd.center is not None else None
        parts.append(VirtualZonoid(L.ambient_dim, d, atoms, center))
    return parts


def crofton_evaluate(L, K):
    """Crofton valuation of L at a degree-1 zonoid K: (1/d!) <L, K^(wedge d)>."""
    if K.degree != 1:
        raise ValueError("K must have degree 1")
    if L.ambient_dim != K.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    d = L.degree
    if d == 0:
        return sum((w for w, _ in L.atoms), start=0)
    kd = wedge([K] * d)
    val = pairing(L, kd)
    if is_exact(val):
        return val / math.factorial(d)
    return val / float(math.factorial(d))


def crofton_evaluate_graded(parts, K):
    """Sum of crofton_evaluate over a list of graded parts (e.g. star of e^L)."""
    return sum(crofton_evaluate(p, K) for p in parts)


def hodge_dual(z, orientation=1):
    """Hodge dual: atoms and center mapped through the star isometry."""
    n = z.ambient_dim
    atoms = []
    for w, v in z.atoms:
        star = hodge_star(expand(v), orientation)
        if star.degree == 0:
            # orientation is not part of the zonoid data, keep the weight sign
            c = abs(star.coords.get((), 0))
            atoms.append((w * c, SimpleVector(n, ())))
        else:
            atoms.append((w, factorize_simple(star)))
    center = None
    if z.center is not None:
        center = hodge_star(z.center, orientation)
    return VirtualZonoid(n, n - z.degree, atoms, center)


def star_exp(L, orientation=1):
    """Graded parts of star(e^L); evaluating them via crofton gives vol(. + L)."""
    n = L.ambient_dim
    return [hodge_dual(p, orientation) for p in reversed(exp_truncated(L, n))]


def _num_to_json(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, int):
        return x
    return float(x)


def _num_from_json(x):
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    return x


def to_json(z):
    out = {
        "ambient": z.ambient_dim,
        "degree": z.degree,
        "atoms": [
            {"w": _num_to_json(w), "v": [[_num_to_json(x) for x in f]
                                         for f in v.factors]}
            for w, v in z.atoms
        ],
    }
    if z.center is not None:
        out["center"] = {
            ",".join(map(str, k)): _num_to_json(c)
            for k, c in z.center.coords.items()
        }
    return out


def from_json(data):
    n = data["ambient"]
    d = data["degree"]
    atoms = []
    for a in data.get("atoms", []):
        w = _num_from_json(a["w"])
        factors = [[_num_from_json(x) for x in f] for f in a["v"]]
        v = SimpleVector(n, factors)
        if v.degree != d:
            raise ValueError("atom degree mismatch")
        atoms.append((w, v))
    center = None
    if "center" in data and data["center"]:
        coords = {}
        for key, c in data["center"].items():
            idx = tuple(int(i) for i in key.split(",")) if key else ()
            coords[idx] = _num_from_json(c)
        center = ExteriorElement(n, d, coords)
    return VirtualZonoid(n, d, atoms, center)
