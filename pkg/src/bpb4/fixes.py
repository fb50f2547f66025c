"""Correction routines: given a quadruple nearly normed by a functional on an
active index set, produce a nearby quadruple attaining ||sum z_i|| = |C|.

Routes: a singleton normalization for one-element active sets; the
uniformly convex route (lp, reals) that collapses the active block onto a
common unit vector; and the l1 route built from positive parts,
nonnegativity repairs, and first-coordinate padding with explicit rescale
factors.  A convex-combination front end picks the functional and the active
set itself, and a dense-lift wrapper handles finitely supported l1 by
truncating to a finite section.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Optional, Tuple

from .errors import DomainError, PreconditionError, UnsupportedSpaceError
from .quadop import Quad, active_sum_norm, check_membership, cyclic_shift, negate
from .scalars import Scalar, coerce, tol_of
from .spaces import (
    Functional,
    SpaceDescriptor,
    YVec,
    coordinate_sum,
    modulus_convexity,
    norm,
    positive_part,
    support_functional,
    unit_first,
)


@dataclass(frozen=True)
class ConstantsSchedule:
    """Closed-form constants calculus for one space family.

    rho is the base slack function (eps/226 for l1; min{delta(eps)/2, eps/6}
    for the uniformly convex families), nu = rho^2 drives the convex
    combination route, gamma(eps) = nu(eps/4) is the definition-level slack,
    eta(eps) = nu(eps/3) calibrates the end-to-end correction,
    gamma_from_eta(eps) = eta(eps/48) extracts slack from a correction
    routine, and zeta(eps) = gamma(eps/2) survives dense limits.
    """

    space: SpaceDescriptor

    def rho(self, eps: Scalar) -> Scalar:
        eps = coerce(eps)
        if self.space.family == "l1":
            return eps / 226
        delta = modulus_convexity(self.space, eps)
        return min(delta / 2, eps / 6)

    def nu(self, eps: Scalar) -> Scalar:
        return self.rho(eps) ** 2

    def gamma(self, eps: Scalar) -> Scalar:
        return self.nu(coerce(eps) / 4)

    def eta(self, eps: Scalar) -> Scalar:
        return self.nu(coerce(eps) / 3)

    def gamma_from_eta(self, eps: Scalar) -> Scalar:
        return self.eta(coerce(eps) / 48)

    def zeta(self, eps: Scalar) -> Scalar:
        return self.gamma(coerce(eps) / 2)

    def base_slack(self, eps: Scalar) -> Scalar:
        """The pairing slack the convex-combination route runs on.

        rho for finite-dimensional families; zeta for finitely supported l1,
        where corrections go through the dense lift and need its entry slack.
        """
        if self.space.family == "l1" and self.space.infinite:
            return self.zeta(eps)
        return self.rho(eps)


def schedule(space: SpaceDescriptor) -> ConstantsSchedule:
    if space.family == "sup":
        raise UnsupportedSpaceError("no correction routine for sup-norm codomains")
    return ConstantsSchedule(space)


@dataclass(frozen=True)
class FixRequest:
    quad: Quad
    functional: Functional
    active: FrozenSet[int]
    eps: Scalar

    def __init__(self, quad, functional, active, eps):
        active = frozenset(active)
        if not active or not active <= {1, 2, 3, 4}:
            raise DomainError(f"active set must be a nonempty subset of 1..4: {active}")
        eps = coerce(eps)
        if not 0 < eps < 1:
            raise DomainError(f"eps must lie in (0, 1): {eps}")
        object.__setattr__(self, "quad", quad)
        object.__setattr__(self, "functional", functional)
        object.__setattr__(self, "active", active)
        object.__setattr__(self, "eps", eps)


@dataclass(frozen=True)
class FixResult:
    corrected: Quad
    certified: FrozenSet[int]
    displacements: Tuple[Scalar, Scalar, Scalar, Scalar]
    label: str
    transform_log: Tuple[str, ...] = field(default_factory=tuple)


def _displacements(original: Quad, corrected: Quad):
    return tuple(norm(z - y) for y, z in zip(original.ys, corrected.ys))


def _check_member(q: Quad, what: str):
    report = check_membership(q)
    if not report.member:
        raise PreconditionError(f"{what} is not an admissible quadruple "
                                f"(slack {report.slack} at {report.worst})")


def singleton_fix(q: Quad, j: int, eps: Scalar) -> FixResult:
    """Fix a one-element active set {j}: normalize y_j, nudge the rest.

    Requires ||y_j|| > 1 - eps/6.  After shifting j to the first slot, the
    other three vectors are shrunk by eps/3 and tilted along the normalized
    vector by (eps/3, eps/6, -eps/6) so every alternating triple stays inside
    the ball.
    """
    eps = coerce(eps)
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1): {eps}")
    if j not in (1, 2, 3, 4):
        raise DomainError(f"index out of range: {j}")
    _check_member(q, "input")
    if not norm(q[j - 1]) > 1 - eps / 6:
        raise PreconditionError(f"||y_{j}|| must exceed 1 - eps/6")

    r = j - 1
    qs = cyclic_shift(q, r)
    y1 = qs[0]
    z1 = y1.scale(1 / norm(y1))
    a = eps / 3
    tilts = (eps / 3, eps / 6, -eps / 6)
    zs = [z1]
    for yi, ai in zip(qs.ys[1:], tilts):
        zs.append(yi.scale(1 - a) + z1.scale(ai))
    corrected = cyclic_shift(Quad(tuple(zs)), (8 - r) % 8)
    log = (f"shift:{r}",) if r else ()
    return FixResult(corrected, frozenset({j}), _displacements(q, corrected),
                     "singleton", log)


def expand_active(q: Quad, f: Functional, active, delta: Scalar) -> FrozenSet[int]:
    """Close an active set to the full index interval [min, max].

    If the pairings at the endpoints exceed 1 - delta, every index in between
    pairs above 1 - 2*delta; a failure of that check signals violated
    preconditions on the inputs.
    """
    active = frozenset(active)
    if not active or not active <= {1, 2, 3, 4}:
        raise DomainError(f"bad active set: {active}")
    for i in active:
        if not f(q[i - 1]) > 1 - delta:
            raise PreconditionError(f"pairing at index {i} not above 1 - delta")
    interval = frozenset(range(min(active), max(active) + 1))
    for i in interval:
        if not f(q[i - 1]) > 1 - 2 * delta:
            raise PreconditionError(
                f"inconsistent input: middle pairing at index {i} below 1 - 2*delta")
    return interval


def uniformly_convex_fix(request: FixRequest) -> FixResult:
    """Correction over lp (1<p<inf) or the reals.

    With gamma = min{delta(eps)/2, eps/6}, all active vectors are within eps
    of the normalized first one, so the active block collapses onto
    y1/||y1||; a two-element block additionally shrinks-and-tilts the two
    passive vectors to restore the triple bounds.
    """
    q, f, eps = request.quad, request.functional, request.eps
    space = q.space
    if space.family not in ("lp", "r"):
        raise UnsupportedSpaceError(f"{space.family} is not uniformly convex")
    gamma = schedule(space).rho(eps)
    _check_member(q, "input")
    for i in request.active:
        if not f(q[i - 1]) > 1 - gamma:
            raise PreconditionError(f"pairing at index {i} not above 1 - gamma")
    if len(request.active) == 1:
        (j,) = request.active
        return singleton_fix(q, j, eps)

    r = min(request.active) - 1
    qs = cyclic_shift(q, r)
    shifted_active = frozenset(i - r for i in request.active)
    interval = expand_active(qs, f, shifted_active, gamma)
    k = max(interval)

    z1 = qs[0].scale(1 / norm(qs[0]))
    zs = [z1] * k + list(qs.ys[k:])
    if k == 2:
        a = gamma / (1 + gamma)
        b = gamma / (2 * (1 + gamma))
        zs[2] = qs[2].scale(1 - a) + z1.scale(b)
        zs[3] = qs[3].scale(1 - a) - z1.scale(b)
    elif k == 3:
        zs[3] = qs[3]

    corrected = cyclic_shift(Quad(tuple(zs)), (8 - r) % 8)
    certified = frozenset(i + r for i in interval)
    log = (f"shift:{r}",) if r else ()
    return FixResult(corrected, certified, _displacements(q, corrected),
                     f"uc-{k}", log)


def repair_nonnegative(x: YVec, y: YVec, z: YVec, s: Scalar, t: Scalar) -> YVec:
    """Return w >= z with ||w - z|| <= s + t and x - y + w >= 0.

    Requires 1 - s <= sum(x - y + z) and ||x - y + z|| <= 1 + t in l1: the
    coordinates where y exceeds x + z carry at most s + t of mass, and
    overwriting z there by y - x removes all negativity.
    """
    if x.space.family != "l1":
        raise UnsupportedSpaceError("nonnegativity repair is an l1 construction")
    s, t = coerce(s), coerce(t)
    if s < 0 or t < 0:
        raise DomainError("s and t must be nonnegative")
    d = x - y + z
    tol = tol_of(*d.coords)
    if not coordinate_sum(d) >= 1 - s - tol:
        raise PreconditionError("sum(x - y + z) falls below 1 - s")
    if not norm(d) <= 1 + t + tol:
        raise PreconditionError("||x - y + z|| exceeds 1 + t")
    n = max(len(x.coords), len(y.coords), len(z.coords))
    pad = lambda v: v.coords + (type(coerce(0))(0),) * (n - len(v.coords))
    xs, ys, zs = pad(x), pad(y), pad(z)
    w = tuple(zs[k] if ys[k] <= xs[k] + zs[k] else ys[k] - xs[k] for k in range(n))
    return YVec(x.space, w)


def _canonical_signs(f: Functional, width: int) -> Tuple[int, ...]:
    signs = tuple(int(c) for c in f.coords[:width])
    return signs + (1,) * (width - len(signs))


def _apply_signs(y: YVec, signs) -> YVec:
    return YVec(y.space, tuple(s * c for s, c in zip(signs, y.coords)))


def l1_fix(request: FixRequest) -> FixResult:
    """Correction over l1^n with a sign-vector functional.

    After moving the active minimum to slot 1 and flipping coordinates so
    the functional becomes summation, the active interval is corrected in
    one of three shapes keyed by its length: two-element blocks pad positive
    parts with e1 and rescale by (1+8r)(1+4r); three-element blocks run one
    nonnegativity repair and rescale by (1+36r)(1+14r); the full interval
    runs two rounds of paired repairs and rescales by 1+96r.  Displacements
    stay below 28r / 114r / 226r = eps respectively, with r = eps/226.
    """
    q, f, eps = request.quad, request.functional, request.eps
    space = q.space
    if space.family != "l1":
        raise UnsupportedSpaceError("l1_fix requires an l1 codomain")
    if space.infinite:
        raise UnsupportedSpaceError("use dense_lift for finitely supported l1")
    if f.kind != "sign-vector":
        raise UnsupportedSpaceError("l1_fix requires a sign-vector functional")
    rho = schedule(space).rho(eps)
    _check_member(q, "input")
    for i in request.active:
        if not f(q[i - 1]) > 1 - rho:
            raise PreconditionError(f"pairing at index {i} not above 1 - rho")
    if len(request.active) == 1:
        (j,) = request.active
        return singleton_fix(q, j, eps)

    log = []
    r = min(request.active) - 1
    if r:
        log.append(f"shift:{r}")
    qs = cyclic_shift(q, r)
    signs = _canonical_signs(f, space.dim)
    if any(s != 1 for s in signs):
        log.append("sign-canonicalize")
    a_vecs = [_apply_signs(y, signs) for y in qs.ys]

    max_active = max(i - r for i in request.active)
    interval = range(1, max_active + 1)
    for i in interval:
        if not coordinate_sum(a_vecs[i - 1]) > 1 - 2 * rho:
            raise PreconditionError(
                f"inconsistent input: pairing at index {i + r} below 1 - 2*rho")
    k = max_active

    e1 = unit_first(space)
    b = [positive_part(a_vecs[i]) if i < k else a_vecs[i] for i in range(4)]

    if k == 2:
        x = [b[0] + e1.scale(1 - norm(b[0])),
             b[1] + e1.scale(1 - norm(b[1])),
             a_vecs[2], a_vecs[3]]
        inv8 = 1 / (1 + 8 * rho)
        y = [x[i].scale(inv8) + e1.scale(1 - inv8) if i < 2 else x[i].scale(inv8)
             for i in range(4)]
        inv4 = 1 / (1 + 4 * rho)
        z = [y[i].scale(inv4) + e1.scale(1 - inv4) if i < 3 else y[i].scale(inv4)
             for i in range(4)]
    elif k == 3:
        b = [positive_part(a_vecs[i]) if i < 3 else a_vecs[i] for i in range(4)]
        x1 = repair_nonnegative(b[2], b[1], b[0], 4 * rho, 6 * rho)
        x = [x1, b[1], b[2], a_vecs[3]]
        inv36 = 1 / (1 + 36 * rho)
        y = [x[i].scale(inv36) + e1.scale(1 - norm(x[i]) * inv36) if i < 3
             else x[i].scale(inv36) for i in range(4)]
        inv14 = 1 / (1 + 14 * rho)
        z = [y[i].scale(inv14) + e1.scale(1 - inv14) if i < 3 else y[i].scale(inv14)
             for i in range(4)]
    else:
        b = [positive_part(a) for a in a_vecs]
        x1 = repair_nonnegative(b[2], b[1], b[0], 4 * rho, 6 * rho)
        x4 = repair_nonnegative(b[0], b[2], b[3], 4 * rho, 6 * rho)
        y1 = repair_nonnegative(b[3], b[1], x1, 4 * rho, 16 * rho)
        y4 = repair_nonnegative(b[1], b[2], x4, 4 * rho, 16 * rho)
        y = [y1, b[1], b[2], y4]
        inv96 = 1 / (1 + 96 * rho)
        z = [yi.scale(inv96) + e1.scale(1 - norm(yi) * inv96) for yi in y]

    z = [_apply_signs(zi, signs) for zi in z]
    corrected = cyclic_shift(Quad(tuple(z)), (8 - r) % 8)
    certified = frozenset(i + r for i in interval)
    return FixResult(corrected, certified, _displacements(q, corrected),
                     f"l1-{k}", tuple(log))


def dispatch_fix(request: FixRequest) -> FixResult:
    """Route a request to the fix matching its space family."""
    family = request.quad.space.family
    if family == "l1":
        if request.quad.space.infinite:
            return dense_lift(request.quad, request.functional,
                              request.active, request.eps)
        return l1_fix(request)
    if family in ("lp", "r"):
        return uniformly_convex_fix(request)
    raise UnsupportedSpaceError(f"no correction routine for {family}")


def convex_fix(q: Quad, alpha, eps: Scalar):
    """From a near-norming convex combination to a certified correction.

    Finds the support functional of sum(alpha_i y_i), collects the indices
    pairing above 1 - rho (their alpha-mass exceeds 1 - eps), and dispatches
    to the family's fix.  Returns (active set, FixResult).
    """
    eps = coerce(eps)
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1): {eps}")
    alpha = tuple(coerce(a) for a in alpha)
    tol = tol_of(*alpha)
    if len(alpha) != 4 or any(a < -tol for a in alpha) or abs(sum(alpha) - 1) > tol:
        raise DomainError("alpha must be four convex weights")
    _check_member(q, "input")
    sched = schedule(q.space)
    rho = sched.base_slack(eps)
    nu = rho * rho

    combo = q[0].scale(alpha[0])
    for i in range(1, 4):
        combo = combo + q[i].scale(alpha[i])
    if not norm(combo) > 1 - nu:
        raise PreconditionError("||sum alpha_i y_i|| must exceed 1 - nu")

    negated = False
    f = support_functional(combo)
    if f(combo) < 0:  # support functionals pair nonnegatively; kept for safety
        negated = True
        q = negate(q)
        combo = -combo
        f = support_functional(combo)

    active = frozenset(i for i in (1, 2, 3, 4) if f(q[i - 1]) > 1 - rho)
    if not active:
        raise PreconditionError("no index pairs above 1 - rho")
    mass = sum(alpha[i - 1] for i in active)
    if not mass >= 1 - nu / rho - tol:
        raise PreconditionError("active alpha-mass fell below 1 - nu/rho")

    result = dispatch_fix(FixRequest(q, f, active, eps))
    if negated:
        result = FixResult(negate(result.corrected), result.certified,
                           result.displacements, result.label,
                           result.transform_log + ("negate",))
    return active, result


def dense_lift(q: Quad, f: Functional, active, eps: Scalar) -> FixResult:
    """Correction over finitely supported l1 via a finite section.

    Chooses t below a quarter of both eps/2 and the available functional
    slack over 1 - gamma(eps/2), truncates to the smallest l1^n containing
    all supports (exact here: the vectors are already finitely supported),
    shrinks by 1/(1+3t), and corrects inside l1^n at eps/2.
    """
    space = q.space
    if space.family != "l1" or not space.infinite:
        raise UnsupportedSpaceError("dense_lift requires finitely supported l1")
    eps = coerce(eps)
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1): {eps}")
    active = frozenset(active)
    sched = schedule(space)
    g_half = sched.gamma(eps / 2)
    slack = min(f(q[i - 1]) - 1 + g_half for i in active)
    if not slack > 0:
        raise PreconditionError("pairings must exceed 1 - gamma(eps/2) on the active set")
    t = min(eps / 2, slack) / 8

    n = max(1, max(len(y.coords) for y in q.ys))
    finite = SpaceDescriptor("l1", dim=n)
    fr = f.restrict(n)
    shrink = 1 / (1 + 3 * t)
    ys = tuple(
        YVec(finite, y.coords + (Fraction(0),) * (n - len(y.coords))).scale(shrink)
        for y in q.ys
    )
    inner_q = Quad(ys)
    for i in active:
        if not fr(inner_q[i - 1]) > 1 - g_half:
            raise PreconditionError("truncated pairings lost too much slack")
    inner = l1_fix(FixRequest(inner_q, fr, active, eps / 2))

    lifted = Quad(tuple(YVec(space, z.coords) for z in inner.corrected.ys))
    log = (f"truncate:n={n}", f"shrink:t={t}") + inner.transform_log
    return FixResult(lifted, inner.certified, _displacements(q, lifted),
                     inner.label, log)
