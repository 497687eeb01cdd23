"""Membership in IC(g) = {q : |q| <~ g near 0} for bivariate g.

After a linear change of coordinates makes g comparable to a sum of even
monomials, IC(g) is the monomial ideal of the Newton polyhedron (convex hull
of the exponents plus the positive orthant): a series belongs iff every one
of its terms does.  Non-members get an explicit witness curve along which
|q|/g blows up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoMonomializationFound, PreconditionError, TruncationError
from .forms import count_real_roots, _strip
from .gaussian import GaussianRational
from .poly import MultiPoly, TruncatedSeries


@dataclass(frozen=True)
class MonomialIdealIC:
    """Integral closure of g presented as a Newton-polyhedron monomial ideal.

    (u, v) = change * (x, y); newton_points are the dominating even
    exponents of g in the new coordinates; halfspaces (wu, wv, m) mean
    wu*a + wv*b >= m, and together with a >= u_min, b >= v_min they cut out
    the polyhedron exactly.
    """

    change: tuple  # ((c00, c01), (c10, c11)) rows: u = c00 x + c01 y, ...
    inverse: tuple
    newton_points: tuple
    halfspaces: tuple
    u_min: int
    v_min: int
    transformed: MultiPoly  # g in (u, v) coordinates

    def contains_exponent(self, a: int, b: int) -> bool:
        if a < self.u_min or b < self.v_min:
            return False
        return all(wu * a + wv * b >= m for (wu, wv, m) in self.halfspaces)

    def slack(self, a: int, b: int):
        """Per-halfspace slack values (negative = violated)."""
        out = [("u_min", a - self.u_min), ("v_min", b - self.v_min)]
        for wu, wv, m in self.halfspaces:
            out.append((f"{wu}*a+{wv}*b>={m}", wu * a + wv * b - m))
        return out

    def to_uv(self, q: MultiPoly) -> MultiPoly:
        """Rewrite a polynomial in (x, y) in the (u, v) coordinates."""
        (i00, i01), (i10, i11) = self.inverse
        uv = ("u", "v")
        xu = MultiPoly(uv, {(1, 0): GaussianRational(i00), (0, 1): GaussianRational(i01)})
        yu = MultiPoly(uv, {(1, 0): GaussianRational(i10), (0, 1): GaussianRational(i11)})
        return q.subs({q.vars[0]: xu, q.vars[1]: yu})

    def from_uv_monomial(self, a: int, b: int, xy_vars) -> MultiPoly:
        (c00, c01), (c10, c11) = self.change
        lu = MultiPoly(
            xy_vars,
            {(1, 0): GaussianRational(c00), (0, 1): GaussianRational(c01)},
        )
        lv = MultiPoly(
            xy_vars,
            {(1, 0): GaussianRational(c10), (0, 1): GaussianRational(c11)},
        )
        return lu**a * lv**b


def _pareto_frontier(points):
    """Componentwise-minimal points, sorted by first coordinate."""
    pts = sorted(set(points))
    frontier = []
    for a, b in pts:
        if any(pa <= a and pb <= b for pa, pb in frontier):
            continue
        frontier = [(pa, pb) for pa, pb in frontier if not (a <= pa and b <= pb)]
        frontier.append((a, b))
    return sorted(frontier)


def _halfspaces(points):
    frontier = _pareto_frontier(points)
    # lower convex hull: a Pareto-minimal point strictly above the chord of
    # its neighbours is not a vertex and must not contribute an inequality
    hull = []
    for a, b in frontier:
        while len(hull) >= 2:
            (a1, b1), (a2, b2) = hull[-2], hull[-1]
            if (b2 - b1) * (a - a1) > (b - b1) * (a2 - a1):
                hull.pop()
            else:
                break
        hull.append((a, b))
    out = []
    for (a1, b1), (a2, b2) in zip(hull, hull[1:]):
        wu, wv = b1 - b2, a2 - a1
        g = math.gcd(wu, wv)
        wu, wv = wu // g, wv // g
        ineq = (wu, wv, wu * a1 + wv * b1)
        if ineq not in out:
            out.append(ineq)
    u_min = min(a for a, _ in frontier)
    v_min = min(b for _, b in frontier)
    return tuple(out), u_min, v_min, frontier


def _face_positive(face_terms: dict) -> bool:
    """Whether a compact-face polynomial is positive off the axes, exactly.

    face_terms: exponent (a, b) -> real Fraction coefficient, all on one
    supporting line.  On each side u = +-1 the face reduces to a univariate
    polynomial in v; strip the v-power, then demand positivity on R.
    """
    for eps in (1, -1):
        coeffs: dict[int, Fraction] = {}
        for (a, b), c in face_terms.items():
            coeffs[b] = coeffs.get(b, Fraction(0)) + c * (eps**a)
        if not coeffs:
            continue
        bmin = min(coeffs)
        poly = [Fraction(0)] * (max(coeffs) - bmin + 1)
        for b, c in coeffs.items():
            poly[b - bmin] = c
        poly = _strip(poly)
        if not poly:
            return False
        if poly[0] <= 0 or poly[-1] <= 0:
            return False
        if count_real_roots(poly) > 0:
            # any real root t0 != 0 is a vanishing face direction; t0 = 0
            # cannot be a root since the constant term is nonzero
            return False
    return True


_BASE_CHANGES = [
    ((1, 0), (0, 1)),
    ((0, 1), (1, 0)),
    ((1, -1), (1, 1)),
    ((1, 1), (1, -1)),
]


def _candidate_changes(g: MultiPoly):
    seen = []

    def push(m):
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det == 0 or m in seen:
            return
        seen.append(m)

    for m in _BASE_CHANGES:
        push(m)
    # frames aligned with repeated rational roots of the lowest form
    lowest = g.lowest_part()
    if not lowest.is_zero() and lowest.is_real():
        d = lowest.degree()
        poly = [Fraction(0)] * (d + 1)
        for (a, b), c in lowest.terms.items():
            poly[a] = c.re
        poly = _strip(list(poly))
        if len(poly) >= 2:
            from .puiseux import qi_roots

            roots, _left = qi_roots([GaussianRational(c) for c in poly])
            for root, mult in roots:
                # direction (t, 1) kills the form: align u with x - t*y
                if root.is_real() and mult >= 2:
                    num, den = root.re.numerator, root.re.denominator
                    push(((den, -num), (num, den)))
    # eigenvector frame of the quadratic part when rational
    quad = g.homogeneous_part(2)
    if not quad.is_zero() and quad.is_real():
        a = quad.coefficient((2, 0)).re
        b = quad.coefficient((1, 1)).re
        c = quad.coefficient((0, 2)).re
        if b != 0:
            disc = (a - c) * (a - c) + b * b
            from .gaussian import _rational_sqrt

            s = _rational_sqrt(disc)
            if s is not None:
                for lam in ((a + c + s) / 2, (a + c - s) / 2):
                    vx, vy = b / 2, lam - a
                    if vx == 0 and vy == 0:
                        continue
                    scale = vx.denominator * vy.denominator
                    m = (int(vx * scale), int(vy * scale))
                    push(((m[0], m[1]), (-m[1], m[0])))
    return seen


def monomialize(g: MultiPoly, sample_radii=None) -> MonomialIdealIC:
    """Find a linear change making g comparable to a sum of even monomials.

    Tries identity, u = x -+ y frames, repeated-factor frames of the lowest
    form, and rational eigenframes of the quadratic part.  Acceptance needs
    (a) every non-dominating term inside the Newton polyhedron of the
    dominating even terms, (b) every compact face polynomial positive off
    the axes (exact), and (c) a bounded sampled ratio g / sum-of-monomials.
    """
    if not g.is_real():
        raise PreconditionError("monomialize expects a real polynomial")
    if len(g.vars) != 2:
        raise PreconditionError("monomialize expects a bivariate polynomial")
    if sample_radii is None:
        sample_radii = [2.0**-k for k in range(4, 11)]
    for change in _candidate_changes(g):
        det = Fraction(change[0][0] * change[1][1] - change[0][1] * change[1][0])
        inverse = (
            (Fraction(change[1][1]) / det, Fraction(-change[0][1]) / det),
            (Fraction(-change[1][0]) / det, Fraction(change[0][0]) / det),
        )
        ic = _try_change(g, change, inverse, sample_radii)
        if ic is not None:
            return ic
    raise NoMonomializationFound(
        "no tried linear change makes g comparable to even monomials"
    )


def _try_change(g, change, inverse, sample_radii):
    uv = ("u", "v")
    (i00, i01), (i10, i11) = inverse
    xu = MultiPoly(uv, {(1, 0): GaussianRational(i00), (0, 1): GaussianRational(i01)})
    yu = MultiPoly(uv, {(1, 0): GaussianRational(i10), (0, 1): GaussianRational(i11)})
    G = g.subs({g.vars[0]: xu, g.vars[1]: yu})
    candidates = {
        (a, b): c.re
        for (a, b), c in G.terms.items()
        if a % 2 == 0 and b % 2 == 0 and c.re > 0
    }
    if not candidates:
        return None
    halfspaces, u_min, v_min, frontier = _halfspaces(candidates)
    ic = MonomialIdealIC(
        change=change,
        inverse=inverse,
        newton_points=tuple(frontier),
        halfspaces=halfspaces,
        u_min=u_min,
        v_min=v_min,
        transformed=G,
    )
    for (a, b), c in G.terms.items():
        if (a, b) not in candidates and not ic.contains_exponent(a, b):
            return None
    # exact positivity of each compact face off the axes
    for wu, wv, m in halfspaces:
        face = {
            (a, b): c.re
            for (a, b), c in G.terms.items()
            if wu * a + wv * b == m
        }
        if not _face_positive(face):
            return None
    # comparability gate against the dominating monomial sum, exact at
    # rational circle points so cancellation noise cannot fake a verdict
    if not _exact_ratio_gate(g, change, frontier):
        return None
    return ic


def rational_circle_points(radius: Fraction, n: int = 32):
    """Exact rational points on the circle of rational radius, both halves."""
    pts = []
    for k in range(-n, n + 1):
        t = Fraction(k, n)
        den = 1 + t * t
        x = radius * (1 - t * t) / den
        y = radius * 2 * t / den
        pts.append((x, y))
        pts.append((-x, -y))
    return pts


def _exact_ratio_gate(g, change, frontier, exponents=range(3, 11), n=16) -> bool:
    """g / (sum of frontier monomials) stays within fixed bounds on dyadic
    rational circles, computed in exact rational arithmetic."""
    spreads = []
    for e in exponents:
        radius = Fraction(1, 2**e)
        lo = None
        hi = None
        for x, y in rational_circle_points(radius, n):
            gv = g.eval_exact((x, y))
            if not gv.is_real():
                return False
            u = change[0][0] * x + change[0][1] * y
            v = change[1][0] * x + change[1][1] * y
            mono = sum((u ** a) * (v ** b) for a, b in frontier)
            if mono == 0:
                if gv.re == 0:
                    continue
                return False
            ratio = gv.re / mono
            if ratio <= 0:
                return False
            lo = ratio if lo is None or ratio < lo else lo
            hi = ratio if hi is None or ratio > hi else hi
        if lo is None:
            return False
        spreads.append(float(hi / lo))
    # incomparability shows as spread blowing up toward the origin
    if spreads[-1] > 1e9:
        return False
    for k in range(len(spreads) - 2):
        if spreads[k + 1] >= 2 * spreads[k] and spreads[k + 2] >= 2 * spreads[k + 1]:
            return False
    return True


def ic_membership(q, ic: MonomialIdealIC):
    """Decide |q| <~ g near 0 via the Newton polyhedron; exact.

    Returns (verdict, certificate): verdict True with per-term halfspace
    slacks, or False with a witness curve u = lu * s^wu, v = lv * s^wv along
    which |q| / g grows like s^(h0 - m) with h0 < m.
    """
    if isinstance(q, TruncatedSeries):
        order = q.order
        poly = q.poly
        # unseen tail lies in the polyhedron iff every exponent of total
        # degree order+1 does; otherwise the truncation cannot decide
        d = order + 1
        if not all(ic.contains_exponent(a, d - a) for a in range(d + 1)):
            raise TruncationError(
                f"series order {order} too small to decide membership"
            )
    else:
        poly = q
    quv = ic.to_uv(poly)
    if quv.is_zero():
        return True, {"terms": []}
    violated = [(a, b) for (a, b) in quv.terms if not ic.contains_exponent(a, b)]
    if not violated:
        return True, {
            "terms": [
                {"exponent": (a, b), "slack": ic.slack(a, b)}
                for (a, b) in sorted(quv.terms)
            ]
        }
    # find a separating weight with positive components and build a witness
    best = None
    for wu, wv, m in ic.halfspaces:
        h0 = min(wu * a + wv * b for (a, b) in violated)
        if h0 < m:
            gap = m - h0
            if best is None or gap > best[0]:
                best = (gap, wu, wv, m, h0)
    if best is None:
        # only an axis bound is violated; synthesize a steep weight
        W = 1 + max(
            [b for (_, b) in violated] + [b for (_, b) in ic.newton_points]
            + [a for (a, _) in violated] + [a for (a, _) in ic.newton_points]
        )
        for wu, wv in ((W, 1), (1, W)):
            m = min(wu * a + wv * b for (a, b) in ic.newton_points)
            h0 = min(wu * a + wv * b for (a, b) in violated)
            if h0 < m:
                best = (m - h0, wu, wv, m, h0)
                break
    assert best is not None, "violated exponent without separating weight"
    _, wu, wv, m, h0 = best
    # leading coefficient along u = lu s^wu, v = lv s^wv must be nonzero
    level_terms = {
        (a, b): c for (a, b), c in quv.terms.items() if wu * a + wv * b == h0
    }
    witness_lambda = None
    for lu, lv in _lambda_candidates():
        total = GaussianRational(0)
        for (a, b), c in level_terms.items():
            total = total + c * GaussianRational(Fraction(lu) ** a * Fraction(lv) ** b)
        if not total.is_zero():
            witness_lambda = (lu, lv)
            break
    witness = {
        "curve": {
            "u_weight": wu,
            "v_weight": wv,
            "lambda": witness_lambda,
            "q_order": h0,
            "g_order": m,
        },
        "violating_exponents": sorted(violated),
    }
    return False, witness


def _lambda_candidates():
    base = [1, -1, 2, -2, 3, -3, Fraction(1, 2), Fraction(-1, 2)]
    for lu in base:
        for lv in base:
            yield lu, lv


def ic_generators(ic: MonomialIdealIC, xy_vars=("x", "y"), degree_bound=200):
    """Minimal monomial generators of the polyhedron ideal, mapped back
    through the inverse linear change; returned as (x,y)-polynomials."""

    def b_floor(a: int) -> int:
        b = ic.v_min
        for wu, wv, m in ic.halfspaces:
            need = m - wu * a
            if need > wv * b:
                b = -(-need // wv)  # ceil division
        return b

    gens_uv = []
    a = ic.u_min
    prev = None
    while a <= degree_bound:
        b = b_floor(a)
        if prev is None or b < prev:
            gens_uv.append((a, b))
            prev = b
        if b == ic.v_min:
            break
        a += 1
    else:
        raise PreconditionError("degree bound exceeded before generation closed")
    gens = [ic.from_uv_monomial(a, b, xy_vars) for a, b in gens_uv]
    return gens, gens_uv
