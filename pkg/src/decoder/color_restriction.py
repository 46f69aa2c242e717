"""
Color-restriction decoding of cochains on partite complexes.

Given f on the k-faces of a partite complex and a color set F whose
restriction X^F and restricted links X_s^F expand, build g on the
(k-1)-faces with δg close to f. Faces are handled by the number m of their
vertices colored outside F: m = 0 is a nearest coboundary on X^F, and each
later stratum solves one small nearest-coboundary problem per face s of
outside colors on the link X_s^F, shifted by the values fixed in the
stratum before.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from cochains.cochain import Cochain, coboundary
from cochains.groups import FiniteGroup
from cochains.solver import DEFAULT_NODE_BUDGET
from cochains.spaces import DEFAULT_ENUMERATION_BUDGET, nearest_coboundary
from complexes.simplicial import Face, SimplicialComplex, canonical
from cones.abelian import Cone, verify_cone
from cones.nonabelian import NonAbelianCone, verify_nonabelian_cone
from errors import DecodeError, GroupError, PreconditionError
from expansion.bounds import cone_to_bound, decoder_bound, decoder_stratum_bound
from expansion.exhaustive import h_exhaustive
from expansion.reports import COBOUNDARY, exact_to_json, number_to_json
from utils.parallel import ordered_results, run_parallel

logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
CONE = "cone"
NONABELIAN_CONE = "nonabelian-cone"


# -- certificates ----------------------------------------------------------------------


@dataclass
class ColorCertificate:
    """Lower bound β on the coboundary expansion of X^F and its restricted links."""
    colors: Tuple[int, ...]
    level: int
    beta: Optional[Fraction]
    method: str
    links: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.beta is not None and self.beta > 0

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "kind": "color_certificate",
            "F": list(self.colors),
            "k": self.level,
            "beta": number_to_json(self.beta),
            "method": self.method,
            "links": self.links,
            "certified": self.certified,
        }
        if exact_to_json(self.beta):
            doc["beta_exact"] = exact_to_json(self.beta)
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


def _check_colors(X: SimplicialComplex, colors: Sequence[int], k: int) -> Tuple[int, ...]:
    if not X.is_colored:
        raise PreconditionError("Color restriction needs a partite complex")
    F = tuple(sorted(set(int(c) for c in colors)))
    unknown = set(F) - set(X.color_set)
    if unknown:
        raise PreconditionError(f"Unknown colors {sorted(unknown)}")
    if len(F) < k + 2:
        raise PreconditionError(f"Decoding level {k} needs at least {k + 2} colors, got {list(F)}")
    return F


def outside_faces(X: SimplicialComplex, colors: Sequence[int], m: int) -> List[Face]:
    """Faces with m vertices, all colored outside F, in sorted vertex order."""
    chosen = set(colors)
    return [s for s in X.faces(m - 1) if all(X.color(v) not in chosen for v in s)]


def restricted_link(X: SimplicialComplex, s: Face, colors: Sequence[int]) -> SimplicialComplex:
    return X.link(s).color_restriction(colors)


def certify_color_set(X: SimplicialComplex, colors: Sequence[int], k: int, group: FiniteGroup,
                      budget: int = DEFAULT_ENUMERATION_BUDGET, workers: int = 1,
                      quiet: bool = True) -> ColorCertificate:
    """
    β = min of h^k(X^F) and h^{k-|s|}(X_s^F) over the faces s of outside colors.

    A restriction in which every cochain is a coboundary does not constrain β;
    when nothing constrains it β is 1.

    Raises:
        BudgetExceeded: if one of the enumerations is over budget
    """
    F = _check_colors(X, colors, k)
    values: List[Fraction] = []
    notes: List[str] = []
    report = h_exhaustive(X.color_restriction(F), k, group, COBOUNDARY, budget, workers, quiet)
    if report.value is not None:
        values.append(report.value)
    if report.nontrivial_cohomology:
        notes.append(f"X^F has nontrivial H^{k}")
    links = 0
    for m in range(1, k + 1):
        for s in outside_faces(X, F, m):
            link = restricted_link(X, s, F)
            report = h_exhaustive(link, k - m, group, COBOUNDARY, budget, workers, quiet)
            links += 1
            if report.value is not None:
                values.append(report.value)
            if report.nontrivial_cohomology:
                notes.append(f"link of {s} has nontrivial H^{k - m}")
    beta = min(values) if values else Fraction(1)
    logger.info("Certified F=%s at level %d: beta=%s over %d links", list(F), k, beta, links)
    return ColorCertificate(F, k, beta, EXHAUSTIVE, links, notes)


def certify_by_cone(colors: Sequence[int], cone: Union[Cone, NonAbelianCone], k: int = 1) -> ColorCertificate:
    """
    β from a verified cone on the lattice view with these colors.

    The bound covers X^F only; the restricted links carry no certificate.

    Raises:
        DecodeError: if the cone fails verification or sits on other colors
    """
    F = tuple(sorted(colors))
    if tuple(sorted(cone.view.colors)) != F:
        raise DecodeError(f"Cone lives on colors {list(cone.view.colors)}, not {list(F)}")
    k_top = len(F) - 1
    if isinstance(cone, NonAbelianCone):
        if k != 1:
            raise PreconditionError("Non-abelian cones certify level 1 only")
        check = verify_nonabelian_cone(cone)
        if not check.valid:
            raise DecodeError(f"Non-abelian cone is invalid: {check.violations[0]}")
        beta, method = cone.bound(k_top), NONABELIAN_CONE
    else:
        check = verify_cone(cone)
        if not check.valid:
            raise DecodeError(f"Cone is invalid: {check.violations[0].reason}")
        if cone.level < k:
            raise PreconditionError(f"A level-{cone.level} cone cannot certify level {k}")
        beta = cone_to_bound(cone.radius(), k_top, k, cone.view.lattice.homogeneous)
        method = CONE
    return ColorCertificate(F, k, beta, method, 0, ["restricted links not certified"])


# -- color-set selection ---------------------------------------------------------------


def _conditional_rates(X: SimplicialComplex, level: int, mask: np.ndarray,
                       strata: np.ndarray, count: int) -> List[Fraction]:
    """Pr[mask | stratum = i] for i = 0..count-1; empty strata give 0."""
    masses = X.mass(level)
    rates = []
    for i in range(count):
        inside = strata == i
        total = int(masses[inside].sum()) if inside.any() else 0
        hit = inside & mask
        bad = int(masses[hit].sum()) if hit.any() else 0
        rates.append(Fraction(bad, total) if total else Fraction(0))
    return rates


def _strata(X: SimplicialComplex, level: int, colors: Sequence[int], inside: bool) -> np.ndarray:
    chosen = set(colors)
    return np.array([sum((X.color(v) in chosen) == inside for v in face) for face in X.faces(level)],
                    dtype=np.int64)


def conditional_error_rates(f: Cochain, colors: Sequence[int]) -> List[Fraction]:
    """ε_{F,j} = Pr[δf(t) ≠ 0 | |col(t) ∩ F| = j] over (k+1)-faces, j = 1..k+2."""
    X, k = f.complex, f.level
    if k + 1 > X.dimension:
        raise PreconditionError(f"Error rates of a level-{k} cochain need dimension at least {k + 1}")
    mask = coboundary(f).nonzero_mask()
    rates = _conditional_rates(X, k + 1, mask, _strata(X, k + 1, colors, True), k + 3)
    return rates[1:]


@dataclass
class GoodColorSet:
    colors: Tuple[int, ...]
    eps: Fraction
    eps_Fj: List[Fraction]
    certificate: ColorCertificate
    p: Fraction

    @property
    def beta(self) -> Optional[Fraction]:
        return self.certificate.beta

    def threshold(self) -> Fraction:
        return (len(self.eps_Fj)) * self.eps / self.p

    def to_dict(self) -> Dict[str, Any]:
        return {
            "F": list(self.colors),
            "eps": number_to_json(self.eps),
            "eps_Fj": [number_to_json(e) for e in self.eps_Fj],
            "p": number_to_json(self.p),
            "certificate": self.certificate.to_dict(),
        }


def select_good_F(f: Cochain, candidates: Sequence[ColorCertificate],
                  p: Optional[Fraction] = None) -> GoodColorSet:
    """
    A certified candidate with ε_{F,j} ≤ (k+2)·ε/p for every j.

    `p` defaults to the certified share of the candidates. Among qualifying
    sets the one with the smallest largest rate wins; ties keep candidate order.

    Raises:
        DecodeError: if no candidate qualifies
    """
    if not candidates:
        raise DecodeError("No candidate color sets")
    k = f.level
    if p is None:
        p = Fraction(sum(c.certified for c in candidates), len(candidates))
    p = Fraction(p)
    if p <= 0:
        raise DecodeError("No candidate color set is certified")
    eps = coboundary(f).weight()
    limit = (k + 2) * eps / p
    best: Optional[GoodColorSet] = None
    for cert in candidates:
        if not cert.certified or cert.level != k:
            continue
        _check_colors(f.complex, cert.colors, k)
        rates = conditional_error_rates(f, cert.colors)
        if any(rate > limit for rate in rates):
            logger.debug("F=%s rejected: max rate %s over %s", list(cert.colors), max(rates), limit)
            continue
        if best is None or max(rates) < max(best.eps_Fj):
            best = GoodColorSet(cert.colors, eps, rates, cert, p)
    if best is None:
        raise DecodeError(f"No certified color set has all error rates below {float(limit):.6g}")
    logger.info("Selected F=%s (max rate %s, limit %s)", list(best.colors), max(best.eps_Fj), limit)
    return best


# -- decoding --------------------------------------------------------------------------


@dataclass
class LinkSolution:
    """One stratum-m minimization: target H on X_s^F and its chosen preimage φ."""
    face: Face
    link: SimplicialComplex
    target: Cochain
    preimage: Cochain
    exact: bool


@dataclass
class DecodeReport:
    colors: Tuple[int, ...]
    level: int
    eps: Fraction
    eps_Fj: List[Fraction]
    beta: Optional[Fraction]
    p: Fraction
    dist_i: List[Fraction]
    bound_i: Optional[List[Fraction]]
    overall: Fraction
    bound: Optional[float]
    exact: bool
    link_equivalence: bool
    link_equivalence_failures: int
    disjunction: Optional[bool]
    disjunction_failures: int
    notes: List[str] = field(default_factory=list)

    @property
    def within_bounds(self) -> bool:
        if self.bound_i is None or self.bound is None:
            return False
        strata = all(d <= b for d, b in zip(self.dist_i, self.bound_i))
        return strata and self.overall <= max(self.dist_i) and self.overall <= self.bound

    @property
    def verified(self) -> bool:
        return (self.exact and self.link_equivalence and self.disjunction is not False
                and self.within_bounds)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "decode",
            "F": list(self.colors),
            "k": self.level,
            "eps": number_to_json(self.eps),
            "eps_Fj": [number_to_json(e) for e in self.eps_Fj],
            "beta": number_to_json(self.beta),
            "p": number_to_json(self.p),
            "dist_i": [number_to_json(d) for d in self.dist_i],
            "bound_i": [number_to_json(b) for b in self.bound_i] if self.bound_i is not None else None,
            "overall": number_to_json(self.overall),
            "bound": self.bound,
            "exact": self.exact,
            "link_equivalence": self.link_equivalence,
            "disjunction": self.disjunction,
            "verified": self.verified,
            "notes": list(self.notes),
        }


class _Decoder:
    def __init__(self, f: Cochain, colors: Tuple[int, ...], node_budget: int):
        self.f = f
        self.X = f.complex
        self.k = f.level
        self.group = f.group
        self.colors = colors
        self.node_budget = node_budget
        self.g: Dict[Face, int] = {}

    def g_value(self, oriented: Sequence[int]) -> int:
        face, sign = canonical(oriented)
        stored = self.g[face]
        return stored if sign > 0 else self.group.inv(stored)

    def assign(self, oriented: Sequence[int], value: int):
        face, sign = canonical(oriented)
        self.g[face] = value if sign > 0 else self.group.inv(value)

    def _best_constant(self, target: Cochain) -> Cochain:
        """The constant γ with δγ = γ closest to a level-0 target."""
        L = target.complex
        masses = L.mass(0)
        totals = [0] * self.group.order
        for value, mass in zip(target.values, masses):
            totals[int(value)] += int(mass)
        gamma = max(range(self.group.order), key=lambda a: (totals[a], -a))
        return Cochain(L, -1, self.group, [gamma])

    def minimize(self, target: Cochain) -> Tuple[Cochain, bool]:
        if target.level == 0:
            return self._best_constant(target), True
        nearest = nearest_coboundary(target, self.node_budget)
        if not nearest.exact:
            logger.warning("Nearest coboundary on %s did not finish within %d nodes",
                           target.complex.name, self.node_budget)
        return nearest.preimage, nearest.exact

    def first_stratum(self) -> LinkSolution:
        XF = self.X.color_restriction(self.colors)
        target = Cochain.from_function(XF, self.k, self.group, self.f.value)
        preimage, exact = self.minimize(target)
        for face, value in zip(XF.faces(self.k - 1), preimage.values):
            self.g[face] = int(value)
        return LinkSolution((), XF, target, preimage, exact)

    def link_target(self, s: Face, L: SimplicialComplex) -> Cochain:
        """H(a) = f(a∘s) − Σ_l (−1)^{|a|+l} g(a∘s_l); non-abelian level 1 uses f(sa)·g(a)."""
        group, f = self.group, self.f
        level = self.k - len(s)

        if not group.is_abelian:
            (v,) = s
            return Cochain.from_function(
                L, level, group, lambda a: group.mul(f.value((v,) + a), self.g_value(a)))

        def value(a: Face) -> int:
            total = f.value(a + s)
            for l in range(len(s)):
                term = self.g_value(a + s[:l] + s[l + 1:])
                if (len(a) + l) % 2 == 0:
                    term = group.inv(term)
                total = group.mul(total, term)
            return total

        return Cochain.from_function(L, level, group, value)

    def solve_link(self, s: Face) -> LinkSolution:
        L = restricted_link(self.X, s, self.colors)
        target = self.link_target(s, L)
        preimage, exact = self.minimize(target)
        return LinkSolution(s, L, target, preimage, exact)

    def store(self, solution: LinkSolution):
        s, L, phi = solution.face, solution.link, solution.preimage
        for r, value in zip(L.faces(phi.level), phi.values):
            self.assign(r + s, int(value))

    def cochain(self) -> Cochain:
        faces = self.X.faces(self.k - 1)
        return Cochain(self.X, self.k - 1, self.group, [self.g.get(face, 0) for face in faces])


def _local_coboundary(phi: Cochain, target: Cochain) -> Cochain:
    if phi.level == -1:
        return target.with_values(np.full(target.values.shape, phi.values[0]))
    return coboundary(phi)


def check_link_equivalence(f: Cochain, dg: Cochain, solutions: Sequence[LinkSolution]) -> int:
    """Faces where f(a∘s) ≠ δg(a∘s) disagrees with δφ(a) ≠ H(a); 0 when decoding is consistent."""
    failures = 0
    for sol in solutions:
        local = _local_coboundary(sol.preimage, sol.target)
        for a, want, got in zip(sol.link.faces(sol.target.level), sol.target.values, local.values):
            oriented = a + sol.face
            if (f.value(oriented) != dg.value(oriented)) != (want != got):
                failures += 1
    return failures


def check_disjunction(f: Cochain, dg: Cochain, solutions: Sequence[LinkSolution]) -> int:
    """
    Faces r of X_s^F with δH(r) ≠ 0 where f agrees with δg on every r∘s_l
    and δf(r∘s) = 0. Abelian groups only.
    """
    df = coboundary(f)
    failures = 0
    for sol in solutions:
        s, L, H = sol.face, sol.link, sol.target
        if not s or H.level + 1 > L.dimension:
            continue
        dH = coboundary(H)
        for r, value in zip(L.faces(H.level + 1), dH.values):
            if value == 0:
                continue
            sub = any(f.value(r + s[:l] + s[l + 1:]) != dg.value(r + s[:l] + s[l + 1:])
                      for l in range(len(s)))
            if not sub and df.value(r + s) == 0:
                failures += 1
    return failures


def stratum_distances(f: Cochain, dg: Cochain, colors: Sequence[int]) -> List[Fraction]:
    """dist_i(f, δg) for i = 0..k+1 vertices colored outside F."""
    X, k = f.complex, f.level
    return _conditional_rates(X, k, f.values != dg.values, _strata(X, k, colors, False), k + 2)


def decode(f: Cochain, colors: Union[GoodColorSet, ColorCertificate, Sequence[int]],
           beta: Optional[Fraction] = None, p: Fraction = Fraction(1),
           node_budget: int = DEFAULT_NODE_BUDGET, workers: int = 1,
           quiet: bool = True) -> Tuple[Cochain, DecodeReport]:
    """
    Decode f on a partite complex through the color set F.

    `colors` is a GoodColorSet from select_good_F, a certificate, or a bare
    color list; β and p come from the first two. Bounds are evaluated only
    when β is known and |F| = k+2.

    Raises:
        PreconditionError: on uncolored complexes or too few colors
        GroupError: for non-abelian groups above level 1
    """
    if isinstance(colors, GoodColorSet):
        beta, p, F = colors.beta, colors.p, colors.colors
    elif isinstance(colors, ColorCertificate):
        beta, F = colors.beta, colors.colors
    else:
        F = colors
    X, k, group = f.complex, f.level, f.group
    if k < 0:
        raise PreconditionError("Decoding needs a cochain of level at least 0")
    if not group.is_abelian and k > 1:
        raise GroupError(f"Non-abelian decoding is defined for k <= 1, got k={k}")
    F = _check_colors(X, F, k)
    if k + 1 > X.dimension:
        raise PreconditionError(f"Decoding level {k} needs dimension at least {k + 1}")

    decoder = _Decoder(f, F, node_budget)
    notes: List[str] = []
    solutions = [decoder.first_stratum()]
    exact = solutions[0].exact
    for m in range(1, k + 1):
        faces = outside_faces(X, F, m)
        results, errors = run_parallel(decoder.solve_link, faces, workers=workers, quiet=quiet,
                                       desc=f"Stratum {m}")
        if errors:
            first = min(errors)
            raise DecodeError(f"Link of {faces[first]} failed: {errors[first]}")
        step = ordered_results(results)
        for solution in step:
            decoder.store(solution)
            exact = exact and solution.exact
        solutions.extend(step)
        logger.debug("Stratum %d: %d links", m, len(step))

    g = decoder.cochain()
    dg = coboundary(g)
    equivalence_failures = check_link_equivalence(f, dg, solutions)
    if group.is_abelian:
        disjunction_failures = check_disjunction(f, dg, solutions)
        disjunction = disjunction_failures == 0
    else:
        disjunction_failures, disjunction = 0, None
        notes.append("sub-face disjunction is checked for abelian groups only")

    eps = coboundary(f).weight()
    dist_i = stratum_distances(f, dg, F)
    overall = f.distance(dg)
    bound_i, bound = None, None
    if beta is None or beta <= 0:
        notes.append("no expansion certificate; bounds not evaluated")
    elif len(F) != k + 2:
        notes.append(f"guarantee covers |F| = {k + 2}; bounds not evaluated for |F| = {len(F)}")
    else:
        bound_i = [decoder_stratum_bound(i, k, beta, p, eps) for i in range(k + 2)]
        bound = decoder_bound(k, beta, p, eps)
    if not exact:
        notes.append("some minimizations stopped at the node budget")

    report = DecodeReport(F, k, eps, conditional_error_rates(f, F), beta, Fraction(p),
                          dist_i, bound_i, overall, bound, exact,
                          equivalence_failures == 0, equivalence_failures,
                          disjunction, disjunction_failures, notes)
    if equivalence_failures or disjunction_failures:
        logger.warning("Decode consistency checks failed: %d equivalence, %d disjunction",
                       equivalence_failures, disjunction_failures)
    logger.info("Decoded level %d through F=%s: dist %s (bound %s)", k, list(F), overall, bound)
    return g, report
