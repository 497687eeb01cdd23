"""Solve p(x, -phi(x)) = 0 for the branch phi and classify its imaginary part.

The zero set of a stable polynomial with a smooth zero at the origin is
parametrized by z + phi(x) = 0; phi is computed degree by degree with
undetermined coefficients, using the nonzero z-derivative at 0 as the pivot.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import PreconditionError, SanityViolation
from .forms import (
    HomogeneousForm,
    is_nonnegative,
    is_positive_definite,
    sampled_sphere_nonneg,
)
from .gaussian import GaussianRational
from .poly import MultiPoly, TruncatedSeries


@dataclass(frozen=True)
class BranchSolution:
    """phi with p(x, -phi(x)) = 0 through the working order.

    residual_order is the verified vanishing order of the exact polynomial
    p(x, -phi(x)); None means the residual is identically zero (phi exact).
    """

    phi: TruncatedSeries
    grad0: tuple  # degree-1 coefficients of phi, one per x-variable
    residual_order: int | None


class PhiKind(Enum):
    ALL_REAL_UP_TO_ORDER = "AllRealUpToOrder"
    FIRST_IMAG_TERM = "FirstImagTerm"


@dataclass(frozen=True)
class PhiClassification:
    kind: PhiKind
    order_checked: int
    L: int | None = None
    im_part_2L: MultiPoly | None = None
    definite: bool | None = None
    zero_gradient_components: tuple = ()


def _z_coefficients(p: MultiPoly):
    """Split p into z-degree slices c_k(x) with z the last variable."""
    x_vars = p.vars[:-1]
    slices: dict[int, dict] = {}
    for exps, coeff in p.terms.items():
        k = exps[-1]
        slices.setdefault(k, {})[exps[:-1]] = coeff
    return {k: MultiPoly(x_vars, t) for k, t in slices.items()}


def solve_branch(p: MultiPoly, order: int) -> BranchSolution:
    """Compute phi with p(x, -phi(x)) vanishing through total degree `order`.

    Requires p(0) = 0 and dp/dz(0) != 0 (z is the last variable of p).
    """
    if len(p.vars) < 2:
        raise PreconditionError("need at least one x-variable plus z")
    n = len(p.vars)
    zero = (0,) * n
    if not p.coefficient(zero).is_zero():
        raise PreconditionError("p(0) != 0: no zero at the origin")
    z_unit = (0,) * (n - 1) + (1,)
    pivot = p.coefficient(z_unit)
    if pivot.is_zero():
        raise PreconditionError("dp/dz(0) = 0: zero is not smooth in z")

    slices = _z_coefficients(p)
    x_vars = p.vars[:-1]
    phi = MultiPoly.zero(x_vars)
    for m in range(1, order + 1):
        # degree-m part of p(x, -phi) with the current partial phi
        neg_phi = -phi
        residual = MultiPoly.zero(x_vars)
        for k, ck in slices.items():
            if k == 0:
                residual = residual + ck.truncate(m)
            else:
                residual = residual + ck.mul_truncated(
                    neg_phi.pow_truncated(k, m), m
                )
        part = residual.homogeneous_part(m)
        if part.is_zero():
            continue
        phi = phi + part.scale(GaussianRational(1) / pivot)

    # exact residual of the truncated phi
    neg_phi = -phi
    residual = MultiPoly.zero(x_vars)
    for k, ck in slices.items():
        residual = residual + ck * (neg_phi**k)
    residual_order = residual.min_degree()
    if residual_order is not None and residual_order <= order:
        raise AssertionError(
            f"solver fixed point failed: residual has degree {residual_order}"
        )

    grad0 = tuple(
        phi.coefficient(tuple(1 if j == i else 0 for j in range(n - 1)))
        for i in range(n - 1)
    )
    return BranchSolution(TruncatedSeries(phi, order), grad0, residual_order)


def classify(sol: BranchSolution, sphere_samples: int = 10_000, seed: int = 0):
    """Identify the first non-real homogeneous term of phi, with sanity checks.

    Checks required of any branch coming from a stable polynomial: the
    gradient at 0 is real and componentwise nonnegative, the first non-real
    homogeneous index is even, its imaginary part is nonnegative on real
    directions, and phi vanishes on the coordinate subspace of vanishing
    gradient components.  Any failure raises SanityViolation with a witness.
    """
    phi = sol.phi
    x_vars = phi.vars
    d = len(x_vars)

    for name, g in zip(x_vars, sol.grad0):
        if not g.is_real():
            raise SanityViolation(
                f"gradient component {name} is not real", witness=(name, g)
            )
        if g.re < 0:
            raise SanityViolation(
                f"gradient component {name} is negative", witness=(name, g)
            )

    zero_components = tuple(
        name for name, g in zip(x_vars, sol.grad0) if g.is_zero()
    )
    if zero_components:
        idx = [x_vars.index(name) for name in zero_components]
        keep = set(idx)
        for exps, coeff in phi.poly.terms.items():
            if all(k == 0 or j in keep for j, k in enumerate(exps)):
                raise SanityViolation(
                    "phi does not vanish on the zero-gradient subspace",
                    witness=(zero_components, exps, coeff),
                )

    parts = phi.homogeneous_parts()
    first_imag = None
    for deg in sorted(parts):
        if not parts[deg].is_real():
            first_imag = deg
            break

    if first_imag is None:
        return PhiClassification(
            PhiKind.ALL_REAL_UP_TO_ORDER,
            order_checked=phi.order,
            zero_gradient_components=zero_components,
        )

    if first_imag % 2 == 1:
        raise SanityViolation(
            f"first non-real homogeneous index {first_imag} is odd",
            witness=parts[first_imag],
        )

    im_part = parts[first_imag].imag_part()
    if d == 1:
        c = next(iter(im_part.terms.values()))
        if c.re < 0:
            raise SanityViolation(
                "imaginary part is negative on the real line", witness=im_part
            )
        nonneg, definite = True, c.re > 0
    elif d == 2:
        form = HomogeneousForm.from_poly(im_part)
        nonneg = is_nonnegative(form)
        definite = is_positive_definite(form)
    else:
        nonneg, witness = sampled_sphere_nonneg(im_part, sphere_samples, seed)
        if not nonneg:
            raise SanityViolation(
                "imaginary part sampled negative on a real direction",
                witness=witness,
            )
        # sampled min > 0 is the best available definiteness verdict here
        definite = _sampled_sphere_min(im_part, sphere_samples, seed) > 0.0
    if not nonneg:
        raise SanityViolation(
            "imaginary part is not nonnegative on real directions",
            witness=im_part,
        )

    return PhiClassification(
        PhiKind.FIRST_IMAG_TERM,
        order_checked=phi.order,
        L=first_imag // 2,
        im_part_2L=im_part,
        definite=definite,
        zero_gradient_components=zero_components,
    )


def _sampled_sphere_min(p: MultiPoly, n_points: int, seed: int) -> float:
    import math
    import random

    rng = random.Random(seed)
    d = len(p.vars)
    best = math.inf
    for _ in range(n_points):
        v = [rng.gauss(0.0, 1.0) for _ in range(d)]
        norm = math.sqrt(sum(t * t for t in v))
        if norm == 0.0:
            continue
        v = [t / norm for t in v]
        best = min(best, p.eval_complex(v).real)
    return best
