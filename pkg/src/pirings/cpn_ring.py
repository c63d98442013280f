"""The centered probabilistic intersection ring of complex projective space.

The ring is R[beta, gamma] modulo two relations; a monomial basis in
degree d is s^j t^(d-2j) for j in J(n, d), where t and s are the
rescaled generators t = pi^(-2/3) beta, s = pi^(2/3) gamma.  In this
basis the linear systems used to reduce out-of-basis monomials have
integer Hankel matrices, so all ring arithmetic is exact rational;
powers of pi reappear only in the length functional.
"""

from fractions import Fraction
import math

import numpy as np

from .exact import PiScalar, bareiss_solve
from .exterior import ExteriorElement
from .sampling import Estimate, haar_unitary_realified, run_blocks, substream
from .sphere_ring import kappa


def j_set(n, d):
    """Basis indices in degree d: j = 0 .. min(floor(d/2), floor((2n-d)/2))."""
    if d < 0 or d > 2 * n:
        return []
    return list(range(min(d // 2, (2 * n - d) // 2) + 1))


def dimension(n, d):
    """Dimension of the degree-d graded piece."""
    if d < 0 or d > 2 * n:
        return 0
    return len(j_set(n, d))


def monomial_length(n, j, i):
    """Exact length of gamma^j beta^i in the ring of CP^n.

    Starts from l(gamma^j) = pi^(-j) n!/(n-j)! and attaches the beta
    powers through the ball-wedge-length factor in R^(2n).
    """
    if j < 0 or i < 0:
        raise ValueError("negative exponent")
    if j > n or 2 * j + i > 2 * n:
        return PiScalar(0)
    base = PiScalar(Fraction(math.factorial(n), math.factorial(n - j)), -j)
    m = 2 * (n - j)
    fac = Fraction(math.factorial(m), math.factorial(m - i))
    return base * fac * kappa(m) / kappa(m - i)


def monomial_length_st(n, j, i):
    """Exact length of s^j t^i (rescaled basis monomials)."""
    return monomial_length(n, j, i) * PiScalar(1, Fraction(2 * j - 2 * i, 3))


def hankel_matrix(n, d):
    """Integer Hankel matrix pairing degree-d basis monomials with complements.

    Entry (j1, j2) is binom(2(n-j1-j2), n-j1-j2), i.e. the rational part
    of the full-degree length l(s^(j1+j2) t^(2n-2j1-2j2)) / (pi^(-n/3) n!).
    """
    if d < 0 or d > n:
        raise ValueError("need 0 <= d <= n")
    js = j_set(n, d)
    return [[math.comb(2 * (n - a - b), n - a - b) if a + b <= n else 0
             for b in js] for a in js]


def reduce_monomial(n, big_j, tpow):
    """Express the raw monomial s^big_j t^tpow in the degree-d basis.

    Returns a map j -> coefficient over the basis of degree d = 2 big_j
    + tpow.  Coefficients solve the system matching lengths against all
    complementary monomials of total degree 2n.
    """
    d = 2 * big_j + tpow
    if d > 2 * n or big_j > n:
        return {}
    js = j_set(n, d)
    if big_j in js:
        return {big_j: Fraction(1)}
    comp = 2 * n - d
    mat = hankel_matrix(n, comp)
    rhs = [math.comb(2 * (n - big_j - k), n - big_j - k)
           if big_j + k <= n else 0 for k in j_set(n, comp)]
    coeffs = bareiss_solve(mat, rhs)
    return {j: c for j, c in zip(js, coeffs) if c != 0}


class RingElement:
    """Element with exact rational coefficients over the (s, t) basis.

    coeffs maps (degree, j) to a Fraction.  pi_scale is a global
    PiScalar factor, so elements like gamma = pi^(-2/3) s stay exact.
    """

    def __init__(self, n, coeffs=None, pi_scale=None):
        self.n = n
        self.pi_scale = pi_scale if pi_scale is not None else PiScalar(1)
        self.coeffs = {}
        if coeffs:
            for (d, j), c in coeffs.items():
                if j not in j_set(n, d):
                    raise ValueError(f"index {(d, j)} outside the basis")
                c = Fraction(c)
                if c != 0:
                    self.coeffs[(d, j)] = c
        if not self.coeffs:
            self.pi_scale = PiScalar(1)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls(n, {(0, 0): 1})

    @classmethod
    def t(cls, n, power=1):
        return cls.monomial(n, 0, power)

    @classmethod
    def s(cls, n, power=1):
        return cls.monomial(n, power, 0)

    @classmethod
    def beta(cls, n, power=1):
        return cls.monomial(n, 0, power).scale(
            PiScalar(1, Fraction(2 * power, 3)))

    @classmethod
    def gamma(cls, n, power=1):
        return cls.monomial(n, power, 0).scale(
            PiScalar(1, Fraction(-2 * power, 3)))

    @classmethod
    def monomial(cls, n, s_exp, t_exp, coeff=1):
        red = reduce_monomial(n, s_exp, t_exp)
        d = 2 * s_exp + t_exp
        return cls(n, {(d, j): Fraction(coeff) * c for j, c in red.items()})

    def is_zero(self):
        return not self.coeffs

    def degrees(self):
        return sorted({d for d, _ in self.coeffs})

    def homogeneous_part(self, d):
        return RingElement(
            self.n, {k: c for k, c in self.coeffs.items() if k[0] == d},
            self.pi_scale)

    def scale(self, a):
        if isinstance(a, PiScalar):
            if a.is_zero():
                return RingElement.zero(self.n)
            return RingElement(self.n, self.coeffs, self.pi_scale * a)
        a = Fraction(a)
        if a == 0:
            return RingElement.zero(self.n)
        return RingElement(self.n, {k: a * c for k, c in self.coeffs.items()},
                           self.pi_scale)

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("mixed rings")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.pi_scale.pi_exp != other.pi_scale.pi_exp:
            raise ValueError("cannot add elements with different pi scales")
        a, b = self.pi_scale.coeff, other.pi_scale.coeff
        out = {k: a * c for k, c in self.coeffs.items()}
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + b * c
        return RingElement(self.n, out, PiScalar(1, self.pi_scale.pi_exp))

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, RingElement):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = RingElement.one(self.n)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    def __repr__(self):
        if not self.coeffs:
            return f"RingElement(n={self.n}, 0)"
        terms = []
        for (d, j), c in sorted(self.coeffs.items()):
            mono = f"s^{j} t^{d - 2 * j}"
            terms.append(f"{c} {mono}")
        pre = "" if self.pi_scale == PiScalar(1) else f"({self.pi_scale}) * "
        return f"RingElement(n={self.n}, {pre}{' + '.join(terms)})"


def multiply(a, b):
    """Graded product; out-of-basis raw monomials are reduced exactly."""
    if a.n != b.n:
        raise ValueError("mixed rings")
    n = a.n
    out = {}
    for (d1, j1), c1 in a.coeffs.items():
        for (d2, j2), c2 in b.coeffs.items():
            big_j = j1 + j2
            tpow = (d1 - 2 * j1) + (d2 - 2 * j2)
            d = 2 * big_j + tpow
            if d > 2 * n:
                continue
            for j, r in reduce_monomial(n, big_j, tpow).items():
                key = (d, j)
                out[key] = out.get(key, Fraction(0)) + c1 * c2 * r
    return RingElement(n, out, a.pi_scale * b.pi_scale)


def length_by_degree(e):
    """Length functional per degree, as exact PiScalars."""
    out = {}
    for (d, j), c in e.coeffs.items():
        val = monomial_length_st(e.n, j, d - 2 * j) * c
        out[d] = out.get(d, PiScalar(0)) + val
    return {d: v * e.pi_scale for d, v in out.items() if not v.is_zero()}


def length(e):
    """Length of a homogeneous element (PiScalar); zero element gives 0."""
    by_deg = length_by_degree(e)
    if not by_deg:
        return PiScalar(0)
    if len(by_deg) > 1:
        raise ValueError("inhomogeneous element; use length_by_degree")
    return next(iter(by_deg.values()))


def intersection_number(alpha, j):
    """l_j(alpha) = l(alpha * gamma^j)."""
    n = alpha.n
    return length(multiply(alpha, RingElement.gamma(n, j)))


def relation_st(n):
    """The degree-(n+1) relation of CP^n over the (s, t) basis.

    Returned as a map (s_exp, t_exp) -> Fraction with monic lead term
    s^p (n odd) or s^p t (n even), p = ceil((n+1)/2) adjusted so the
    lead has total degree n+1.
    """
    if n % 2 == 1:
        p, tlead = (n + 1) // 2, 0
    else:
        p, tlead = n // 2, 1
    red = reduce_monomial(n, p, tlead)
    out = {(p, tlead): Fraction(1)}
    for j, c in red.items():
        out[(j, n + 1 - 2 * j)] = out.get((j, n + 1 - 2 * j), Fraction(0)) - c
    return {k: v for k, v in out.items() if v != 0}


def relation_beta_gamma(n):
    """The same relation in (beta, gamma), normalised to a monic lead term.

    Coefficients are PiScalars; the key is (gamma_exp, beta_exp).
    """
    st = relation_st(n)
    if n % 2 == 1:
        lead = ((n + 1) // 2, 0)
    else:
        lead = (n // 2, 1)
    out = {}
    lead_exp = Fraction(2 * lead[0] - 2 * lead[1], 3)
    for (j, i), c in st.items():
        # s^j t^i = pi^((2j - 2i)/3) gamma^j beta^i
        exp = Fraction(2 * j - 2 * i, 3) - lead_exp
        out[(j, i)] = PiScalar(c, exp)
    return out


def relations(n):
    """The pair (F_n, F_{n+1}) presenting the ring of CP^n.

    Each entry carries the relation in both coordinate systems.
    """
    return tuple(
        {"st": relation_st(m), "beta_gamma": relation_beta_gamma(m)}
        for m in (n, n + 1)
    )


def evaluate_relation_st(rel_st, n):
    """Evaluate a relation (in s, t form) inside the ring of CP^n."""
    out = RingElement.zero(n)
    for (j, i), c in rel_st.items():
        out = out + RingElement.monomial(n, j, i, c)
    return out


def codim2_coeffs(n, d_x, delta_x):
    """Coefficients (x_r, x_c) of the class of a codimension-2 submanifold.

    x_r multiplies beta^2 and carries the pi^(-2); x_c multiplies gamma.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    d_x, delta_x = Fraction(d_x), Fraction(delta_x)
    x_r = PiScalar(-Fraction(n, 2 * (n - 1)) * delta_x, -2)
    x_c = d_x + Fraction(n, n - 1) * delta_x
    return x_r, x_c


def class_codim2(n, d_x, delta_x):
    """The degree-2 ring class x_r beta^2 + x_c gamma of a codim-2 submanifold."""
    x_r, x_c = codim2_coeffs(n, d_x, delta_x)
    # both terms share the overall scale pi^(-2/3) over the (s, t) basis
    return RingElement(
        n, {(2, 0): x_r.coeff, (2, 1): x_c},
        PiScalar(1, Fraction(-2, 3)))


def self_intersection_codim2(n, d_x, delta_x):
    """Expected count of n random copies of a codim-2 submanifold, closed form."""
    if n < 2:
        raise ValueError("need n >= 2")
    d_x, delta_x = Fraction(d_x), Fraction(delta_x)
    q = Fraction(n, 2 * (n - 1))
    total = Fraction(0)
    for k in range(n // 2 + 1):
        total += (math.comb(n, 2 * k) * math.comb(2 * k, k)
                  * q ** (2 * k) * d_x ** (n - 2 * k) * delta_x ** (2 * k))
    return total


def self_intersection_via_ring(n, d_x, delta_x):
    """Same expected count, via vol(CP^n) * l(alpha^n) in the ring."""
    alpha = class_codim2(n, d_x, delta_x)
    val = length(alpha ** n) * PiScalar(Fraction(1, math.factorial(n)), n)
    if val.pi_exp != 0:
        raise ArithmeticError("expected a rational value")
    return val.coeff


def f_k(k):
    """sum_j binom(k,j) binom(2j,j) (-1)^j 2^(k-j); 0 for odd k, central binomial else."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return sum(math.comb(k, j) * math.comb(2 * j, j) * (-1) ** j * 2 ** (k - j)
               for j in range(k + 1))


def tasaki_kernel_d2(n, x, y):
    """Closed-form degree-2 Tasaki kernel on [0,1]^2."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise ValueError("arguments must lie in [0, 1]")
    return ((1 + x) * (1 + y) + Fraction(n, n - 1) * (1 - x) * (1 - y)) / 4


def _v_theta(n, x):
    """Factor matrix of the plane spanned by e1 and cos(t) i e1 + sin(t) e2.

    x = cos^2(t); coordinates are interleaved real/imaginary in R^(2n).
    """
    c, s = math.sqrt(x), math.sqrt(1 - x)
    u1 = np.zeros(2 * n)
    u1[0] = 1.0
    u2 = np.zeros(2 * n)
    u2[1] = c
    u2[2] = s
    return np.array([u1, u2])


def mc_tasaki_kernel_d2(n, x, y, samples, seed, workers=1):
    """Monte-Carlo estimate of the degree-2 Tasaki kernel.

    Averages n * |<h V_x, V_y>| over Haar unitaries h; the inner product
    of the two planes equals the norm of the wedge of h V_x with the
    Hodge dual of V_y.  The factor n puts the Haar expectation in the
    normalisation of the closed-form kernel (checked exactly at
    x = y = 1, where E|<h V_1, V_1>| = 1/n and the kernel is 1).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    vx = _v_theta(n, x)
    vy = _v_theta(n, y)

    def block_fn(b, size):
        h = haar_unitary_realified(n, substream(seed, 0, b), size)
        moved = np.einsum("sab,db->sda", h, vx)
        g = np.einsum("sik,jk->sij", moved, vy)
        vals = n * np.abs(np.linalg.det(g))
        return float(vals.sum()), float((vals * vals).sum()), float(vals.max())

    return run_blocks(samples, seed, block_fn, workers)


def omega_element(n, k):
    """(1/k!) omega^k for the standard Kaehler form omega on R^(2n).

    With interleaved coordinates, omega = sum_j e_(2j) ^ e_(2j+1), and
    the normalised power has one unit coefficient per k-subset of the
    coordinate planes.
    """
    if not 0 <= k <= n:
        raise ValueError("k out of range")
    import itertools
    coords = {}
    for sub in itertools.combinations(range(n), k):
        idx = tuple(i for j in sub for i in (2 * j, 2 * j + 1))
        coords[idx] = Fraction(1)
    return ExteriorElement(2 * n, 2 * k, coords)


def omega_norm_sq(n, k):
    """Exact squared norm of (1/k!) omega^k; equals binom(n, k)."""
    e = omega_element(n, k)
    return sum(c * c for c in e.coords.values())


def primitive_dims(n, d):
    """Dimension of the primitive degree-d piece: 1 for even d, 0 for odd."""
    if not 0 <= d <= n:
        raise ValueError("d out of range")
    return 1 if d % 2 == 0 else 0


__all__ = [
    "Estimate", "RingElement", "class_codim2", "codim2_coeffs", "dimension",
    "f_k", "hankel_matrix", "intersection_number", "j_set", "length",
    "length_by_degree", "mc_tasaki_kernel_d2", "monomial_length",
    "monomial_length_st", "multiply", "omega_element", "omega_norm_sq",
    "primitive_dims", "reduce_monomial", "relation_beta_gamma", "relation_st",
    "relations", "self_intersection_codim2", "self_intersection_via_ring",
    "tasaki_kernel_d2", "evaluate_relation_st",
]
