"""Cross-checks of computed commuting graphs against the closed forms.

verify_ring runs three phases: ring-level hypothesis checks, an
independent graph computation (decomposition, exact spectrum, numeric
cross-check), and a comparison against the predicted decompositions.
All outcomes are verdicts on the report, never exceptions.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .config import DEFAULT_ENUMERATION_CAP, exact_cap
from .graphs import (
    CliqueUnion,
    NotCliqueUnion,
    SimpleGraph,
    clique_decomposition,
    clique_union_graph,
    commuting_graph,
)
from .rings import (
    FiniteRing,
    NotPrime,
    SizeCapExceeded,
    additive_quotient_type,
    center,
    centralizer_count,
    commuting_probability,
    direct_product,
    has_unity,
    is_cc_ring,
    is_prime,
    matrix_ring_2x2,
    noncentral_centralizer_sizes,
    prime_factors,
    ring_noncomm_p2,
    upper_triangular_ring,
    zn,
)
from .spectra import (
    NotFullyIntegral,
    SpectrumMultiset,
    cn_matrix,
    exact_spectrum,
    msn_matrix,
    numeric_spectrum,
    spectra_agree,
)
from .theorems import (
    HypothesisViolated,
    TheoremId,
    clique_union_cn_energy,
    clique_union_cn_spectrum,
    clique_union_msn_energy,
    clique_union_msn_spectrum,
    predict,
    reference_energies,
)


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    HYPOTHESIS_NOT_MET = "HYPOTHESIS_NOT_MET"
    UNSUPPORTED = "UNSUPPORTED"


REPORT_CSV_HEADER = ("theorem", "ring", "verdict", "detail",
                     "decomposition", "msn_energy")


@dataclass(frozen=True)
class VerificationReport:
    theorem: TheoremId
    ring_spec: str
    params: tuple[tuple[str, object], ...]
    verdict: Verdict
    detail: str
    computed: dict | None
    predicted: dict | None

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "ring": self.ring_spec,
            "params": {k: _jsonable(v) for k, v in self.params},
            "verdict": self.verdict.value,
            "detail": self.detail,
            "computed": self.computed,
            "predicted": self.predicted,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def csv_row(self) -> tuple[str, ...]:
        dec = ""
        energy = ""
        if self.computed:
            dec = str(self.computed.get("decomposition") or "")
            energy = str(self.computed.get("msn_energy", ""))
        return (self.theorem.value, self.ring_spec, self.verdict.value,
                self.detail, dec, energy)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    return v


class _Unmet(Exception):
    pass


def _need(cond: bool, detail: str) -> None:
    if not cond:
        raise _Unmet(detail)


def _prime_power(order: int, exp: int, given: int | None) -> int:
    factors = prime_factors(order)
    _need(len(factors) == 1, f"|R| = {order} is not a prime power")
    (pp, e), = factors.items()
    _need(e == exp, f"|R| = {order} = {pp}^{e} does not have exponent {exp}")
    _need(given is None or given == pp,
          f"|R| = {order} conflicts with the supplied p = {given}")
    return pp


def _two_prime_shape(order: int, pexp: int, given_p: int | None,
                     given_q: int | None) -> tuple[int, int]:
    factors = prime_factors(order)
    _need(len(factors) == 2, f"|R| = {order} is not of the form p^{pexp} q")
    by_exp = {e: pp for pp, e in factors.items()}
    _need(set(by_exp) == {pexp, 1},
          f"|R| = {order} is not of the form p^{pexp} q")
    pp, qq = by_exp[pexp], by_exp[1]
    _need(given_p is None or given_p == pp,
          f"|R| = {order} conflicts with the supplied p = {given_p}")
    _need(given_q is None or given_q == qq,
          f"|R| = {order} conflicts with the supplied q = {given_q}")
    return pp, qq


def center_is_field(ring: FiniteRing) -> bool:
    """Literal field test on the center: unity and no zero divisors.

    The center of a finite ring is a commutative subring, so these two
    conditions decide the matter.
    """
    z = center(ring).elements
    nonzero = [e for e in z if e != 0]
    if not nonzero:
        return False
    zset = set(z)
    t = ring.table
    if any(int(t[a, b]) not in zset for a in z for b in z):
        return False
    unity = None
    for e in nonzero:
        if all(t[e, x] == x and t[x, e] == x for x in z):
            unity = e
            break
    if unity is None:
        return False
    return all(t[a, b] != 0 for a in nonzero for b in nonzero)


def _check_hypotheses(ring: FiniteRing, theorem: TheoremId,
                      p: int | None, q: int | None, t: int | None) -> dict:
    """Named ring-level hypothesis checks; returns the predict() kwargs.

    Raises _Unmet naming the first failed hypothesis.
    """
    _need(not ring.is_commutative, "ring is commutative")
    order = ring.order
    m = center(ring).size
    tid = theorem

    if tid is TheoremId.T2_1:
        aqt = additive_quotient_type(ring)
        if p is None:
            _need(len(aqt) == 2 and aqt[0] == aqt[1] and is_prime(aqt[0]),
                  f"additive quotient type {aqt} is not of the form [p, p]")
            p = aqt[0]
        else:
            _need(aqt == [p, p],
                  f"additive quotient type {aqt} differs from [{p}, {p}]")
        return {"p": p, "m": m}
    if tid in (TheoremId.C2_2A, TheoremId.C2_2B, TheoremId.C2_2C):
        want = {TheoremId.C2_2A: 4, TheoremId.C2_2B: 5, TheoremId.C2_2C: 7}[tid]
        count = centralizer_count(ring)
        _need(count == want, f"ring has {count} centralizers, not {want}")
        return {"m": m}
    if tid is TheoremId.C2_2D:
        pp = _prime_power_any(order, p)
        count = centralizer_count(ring)
        _need(count == pp + 2, f"ring has {count} centralizers, not p + 2 = {pp + 2}")
        return {"p": pp, "m": m}
    if tid is TheoremId.C2_3A:
        pr = commuting_probability(ring)
        _need(pr == Fraction(5, 8), f"commuting probability is {pr}, not 5/8")
        return {"m": m}
    if tid is TheoremId.C2_3B:
        smallest = min(prime_factors(order))
        _need(p is None or p == smallest,
              f"smallest prime divisor of |R| = {order} is {smallest}, not {p}")
        pr = commuting_probability(ring)
        want = Fraction(smallest * smallest + smallest - 1, smallest ** 3)
        _need(pr == want, f"commuting probability is {pr}, not {want}")
        return {"p": smallest, "m": m}
    if tid is TheoremId.C2_4A:
        return {"p": _prime_power(order, 2, p)}
    if tid is TheoremId.C2_4B:
        _need(has_unity(ring) is not None, "ring has no unity")
        return {"p": _prime_power(order, 3, p)}
    if tid in (TheoremId.T3_1A, TheoremId.T3_1B):
        _need(has_unity(ring) is not None, "ring has no unity")
        pp = _prime_power(order, 4, p)
        want = pp if tid is TheoremId.T3_1A else pp * pp
        _need(m == want, f"|Z(R)| = {m}, not {want}")
        return {"p": pp}
    if tid in (TheoremId.T3_3A, TheoremId.T3_3B):
        _need(has_unity(ring) is not None, "ring has no unity")
        pp = _prime_power(order, 5, p)
        _need(not center_is_field(ring), "the center is a field")
        want = pp * pp if tid is TheoremId.T3_3A else pp ** 3
        _need(m == want, f"|Z(R)| = {m}, not {want}")
        return {"p": pp}
    if tid in (TheoremId.T4_1A, TheoremId.T4_1B):
        pp, qq = _two_prime_shape(order, 2, p, q)
        _need(m == 1, f"|Z(R)| = {m}, not 1")
        out = {"p": pp, "q": qq}
        if tid is TheoremId.T4_1A:
            out["t"] = t
        return out
    if tid is TheoremId.T4_3:
        _need(has_unity(ring) is not None, "ring has no unity")
        pp, qq = _two_prime_shape(order, 3, p, q)
        _need(m == pp * qq, f"|Z(R)| = {m}, not pq = {pp * qq}")
        return {"p": pp, "q": qq}
    if tid in (TheoremId.T4_4A, TheoremId.T4_4B, TheoremId.T4_4C):
        _need(has_unity(ring) is not None, "ring has no unity")
        pp, qq = _two_prime_shape(order, 3, p, q)
        _need(m == pp * pp, f"|Z(R)| = {m}, not p^2 = {pp * pp}")
        return {"p": pp, "q": qq}
    if tid is TheoremId.T5_1:
        _need(is_cc_ring(ring) is True,
              "some non-central element has a non-commutative centralizer")
        return {"m": m, "sizes": tuple(noncentral_centralizer_sizes(ring))}
    raise ValueError(f"no hypothesis checker for {theorem!r}")


def _prime_power_any(order: int, given: int | None) -> int:
    factors = prime_factors(order)
    _need(len(factors) == 1, f"|R| = {order} is not a prime power")
    (pp, _), = factors.items()
    _need(given is None or given == pp,
          f"|R| = {order} conflicts with the supplied p = {given}")
    return pp


def verify_ring(ring: FiniteRing, theorem: TheoremId, *,
                p: int | None = None, q: int | None = None,
                t: int | None = None,
                cap: int = DEFAULT_ENUMERATION_CAP) -> VerificationReport:
    """Check one ring instance against one closed-form result."""

    def report(verdict, detail, params=(), computed=None, predicted=None):
        return VerificationReport(theorem, ring.name, tuple(params.items())
                                  if isinstance(params, dict) else tuple(params),
                                  verdict, detail, computed, predicted)

    try:
        kwargs = _check_hypotheses(ring, theorem, p, q, t)
    except _Unmet as unmet:
        return report(Verdict.HYPOTHESIS_NOT_MET, str(unmet))

    graph = commuting_graph(ring)
    dec = clique_decomposition(graph)
    if isinstance(dec, NotCliqueUnion):
        computed = {"n": graph.n, "decomposition": None}
        return report(Verdict.FAIL, f"not a union of cliques: {dec}", kwargs, computed)

    if theorem is TheoremId.T4_1A and kwargs.get("t") is None:
        if len(dec.parts) != 1:
            return report(Verdict.HYPOTHESIS_NOT_MET,
                          f"components of {dec} have mixed sizes; no single t applies",
                          kwargs)
        kwargs["t"] = dec.parts[0][0] + 1

    computed, failure = _compute_report(graph, dec)
    if failure is not None:
        return report(Verdict.FAIL, failure, kwargs, computed)

    try:
        prediction = predict(theorem, cap=cap, **kwargs)
    except HypothesisViolated as violated:
        return report(Verdict.HYPOTHESIS_NOT_MET, str(violated), kwargs, computed)

    predicted = prediction.to_json_dict()
    params = dict(prediction.params)
    if not prediction.admits(dec):
        return report(Verdict.FAIL,
                      f"computed {dec} is not among the predicted decompositions",
                      params, computed, predicted)
    want = clique_union_msn_spectrum(dec)
    got = SpectrumMultiset.from_json_dict(computed["msn_spectrum"])
    if got.pairs != want.pairs:
        return report(Verdict.FAIL, "computed msn spectrum differs from the closed form",
                      params, computed, predicted)
    if computed["msn_energy"] != clique_union_msn_energy(dec):
        return report(Verdict.FAIL, "computed msn energy differs from the closed form",
                      params, computed, predicted)
    if not computed["msn_integral"]:
        return report(Verdict.FAIL, "msn spectrum is not integral", params,
                      computed, predicted)
    if computed["msn_hyperenergetic"]:
        return report(Verdict.FAIL, "graph is msn-hyperenergetic", params,
                      computed, predicted)
    detail = f"{dec}; msn energy {computed['msn_energy']}"
    return report(Verdict.PASS, detail, params, computed, predicted)


def _compute_report(graph: SimpleGraph, dec: CliqueUnion) -> tuple[dict, str | None]:
    """Independent computation of both spectra with a numeric cross-check.

    Below the exact-path cap the msn spectrum comes from the exact
    eigensolver, not from the closed form, so the comparison in
    verify_ring is a genuine dual route.
    """
    msn = msn_matrix(graph)
    cn = cn_matrix(graph)
    failure = None
    if graph.n <= exact_cap():
        ex = exact_spectrum(msn)
        if isinstance(ex, NotFullyIntegral):
            failure = (f"msn spectrum is not fully integral: residual degree "
                       f"{ex.residual_degree}")
            msn_s = numeric_spectrum(msn)
            integral = False
        else:
            msn_s = ex
            integral = True
        cx = exact_spectrum(cn)
        cn_s = cx if isinstance(cx, SpectrumMultiset) else numeric_spectrum(cn)
    else:
        msn_s = clique_union_msn_spectrum(dec)
        cn_s = clique_union_cn_spectrum(dec)
        integral = True
    if failure is None and not spectra_agree(msn_s, numeric_spectrum(msn)):
        failure = "numeric msn spectrum does not match the exact one"
    if failure is None and not spectra_agree(cn_s, numeric_spectrum(cn)):
        failure = "numeric cn spectrum does not match the exact one"
    esn_ref, ecn_ref = reference_energies(graph.n)
    computed = {
        "n": graph.n,
        "decomposition": str(dec),
        "msn_energy": msn_s.energy(),
        "cn_energy": cn_s.energy(),
        "msn_integral": integral,
        "msn_hyperenergetic": msn_s.energy() > esn_ref,
        "cn_hyperenergetic": cn_s.energy() > ecn_ref,
        "msn_spectrum": msn_s.to_json_dict(),
        "cn_spectrum": cn_s.to_json_dict(),
    }
    return computed, failure


_Q_DEPENDENT = {TheoremId.T4_1A, TheoremId.T4_1B, TheoremId.T4_3,
                TheoremId.T4_4A, TheoremId.T4_4B, TheoremId.T4_4C}


def builtin_instance(theorem: TheoremId, p: int, q: int | None = None) -> FiniteRing | None:
    """A built-in ring satisfying the theorem's hypotheses, if one exists.

    May raise NotPrime or SizeCapExceeded for out-of-range parameters.
    """
    tid = theorem
    if tid in (TheoremId.T2_1, TheoremId.C2_2D, TheoremId.C2_3B, TheoremId.C2_4A):
        return ring_noncomm_p2(p)
    if tid in (TheoremId.C2_2A, TheoremId.C2_3A):
        return ring_noncomm_p2(2) if p == 2 else None
    if tid is TheoremId.C2_2B:
        return ring_noncomm_p2(3) if p == 3 else None
    if tid is TheoremId.C2_2C:
        return ring_noncomm_p2(5) if p == 5 else None
    if tid in (TheoremId.C2_4B, TheoremId.T5_1):
        return upper_triangular_ring(p)
    if tid is TheoremId.T3_1A:
        return matrix_ring_2x2(p)
    if tid is TheoremId.T3_1B:
        return direct_product(upper_triangular_ring(p), zn(p))
    if tid is TheoremId.T3_3A:
        return direct_product(matrix_ring_2x2(p), zn(p))
    if tid is TheoremId.T3_3B:
        return direct_product(upper_triangular_ring(p), zn(p * p))
    if tid is TheoremId.T4_3:
        if q is None:
            return None
        return direct_product(upper_triangular_ring(p), zn(q))
    return None


def sweep(theorems, ps, qs=()) -> list[VerificationReport]:
    """verify_ring over a parameter grid with built-in instances.

    Report order follows the given theorem, p, and q orders.  Theorems
    with no built-in realization, or parameters no constructor accepts,
    yield UNSUPPORTED reports.
    """
    reports: list[VerificationReport] = []

    def unsupported(tid, reason, params):
        reports.append(VerificationReport(
            tid, "none", tuple(params.items()), Verdict.UNSUPPORTED,
            reason, None, None))

    for tid in theorems:
        needs_q = tid in _Q_DEPENDENT
        q_values = list(qs) if needs_q and qs else [None]
        for p in ps:
            for q in q_values:
                params = {"p": p} if q is None else {"p": p, "q": q}
                if needs_q and q is None:
                    unsupported(tid, "theorem needs a q range", params)
                    continue
                if needs_q and p == q:
                    unsupported(tid, "p and q must be distinct primes", params)
                    continue
                try:
                    ring = builtin_instance(tid, p, q)
                except (NotPrime, SizeCapExceeded) as exc:
                    unsupported(tid, str(exc), params)
                    continue
                if ring is None:
                    unsupported(tid,
                                "no built-in ring family realizes these hypotheses",
                                params)
                    continue
                reports.append(verify_ring(ring, tid, p=p, q=q))
    return reports


def centralizer_energy_formula(ring: FiniteRing) -> int:
    """2 sum (|S_i| - m - 1)^3 over the distinct non-central centralizers."""
    m = center(ring).size
    return 2 * sum((s - m - 1) ** 3 for s in noncentral_centralizer_sizes(ring))


def enumerate_clique_unions(max_total: int) -> list[CliqueUnion]:
    """Every clique union with at most max_total vertices, deterministically."""
    out: list[CliqueUnion] = []

    def rec(min_m: int, remaining: int, acc: list[tuple[int, int]]) -> None:
        if acc:
            out.append(CliqueUnion(tuple(acc)))
        for m in range(min_m, remaining + 1):
            for l in range(1, remaining // m + 1):
                acc.append((m, l))
                rec(m + 1, remaining - m * l, acc)
                acc.pop()

    rec(1, max_total, [])
    return out


@dataclass(frozen=True)
class PropertySuiteReport:
    seed: int
    trials: int
    enumerated: int
    checked: int
    passes: int
    equalities: tuple[str, ...]
    counterexamples: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "enumerated": self.enumerated,
            "checked": self.checked,
            "passes": self.passes,
            "equalities": list(self.equalities),
            "counterexamples": list(self.counterexamples),
        }


def _check_clique_union(parts: CliqueUnion,
                        equalities: list[str]) -> list[str]:
    """Closed forms vs the exact eigensolver, plus both energy bounds.

    The two cases where the bound is an equality rather than strict (a
    single complete graph for both energies, two isolated vertices for
    the cn energy) are recorded instead of counted as violations.
    """
    problems: list[str] = []
    g = clique_union_graph(parts)
    ex = exact_spectrum(msn_matrix(g))
    if isinstance(ex, NotFullyIntegral):
        problems.append(f"{parts}: msn spectrum not integral")
    else:
        if ex.pairs != clique_union_msn_spectrum(parts).pairs:
            problems.append(f"{parts}: msn spectrum differs from closed form")
        if ex.energy() != clique_union_msn_energy(parts):
            problems.append(f"{parts}: msn energy differs from closed form")
    cx = exact_spectrum(cn_matrix(g))
    if isinstance(cx, NotFullyIntegral):
        problems.append(f"{parts}: cn spectrum not integral")
    else:
        if cx.pairs != clique_union_cn_spectrum(parts).pairs:
            problems.append(f"{parts}: cn spectrum differs from closed form")
        if cx.energy() != clique_union_cn_energy(parts):
            problems.append(f"{parts}: cn energy differs from closed form")
    esn_ref, ecn_ref = reference_energies(g.n)
    e_sn = clique_union_msn_energy(parts)
    e_cn = clique_union_cn_energy(parts)
    if e_sn > esn_ref:
        problems.append(f"{parts}: msn energy {e_sn} exceeds complete-graph {esn_ref}")
    if e_cn > ecn_ref:
        problems.append(f"{parts}: cn energy {e_cn} exceeds complete-graph {ecn_ref}")
    is_single_complete = len(parts.parts) == 1 and parts.parts[0][1] == 1
    if is_single_complete:
        equalities.append(f"{parts}: msn energy equals the complete-graph value")
    elif e_sn >= esn_ref:
        problems.append(f"{parts}: msn energy {e_sn} not strictly below {esn_ref}")
    if g.n >= 2:
        cn_excluded = is_single_complete or parts.parts == ((1, 2),)
        if cn_excluded:
            equalities.append(f"{parts}: cn energy equals the complete-graph value")
        elif e_cn >= ecn_ref:
            problems.append(f"{parts}: cn energy {e_cn} not strictly below {ecn_ref}")
    return problems


def property_suite_clique_unions(seed: int, trials: int, *,
                                 r_max: int = 4, m_max: int = 8, l_max: int = 4,
                                 enumerate_total: int = 12) -> PropertySuiteReport:
    """Deterministic small cases plus seeded random clique unions."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    enumerated = enumerate_clique_unions(enumerate_total)
    rng = random.Random(seed)
    sampled: list[CliqueUnion] = []
    for _ in range(trials):
        r = rng.randint(1, r_max)
        ms = rng.sample(range(1, m_max + 1), r)
        sampled.append(CliqueUnion.of([(m, rng.randint(1, l_max)) for m in ms]))
    equalities: list[str] = []
    counterexamples: list[str] = []
    passes = 0
    for parts in enumerated + sampled:
        problems = _check_clique_union(parts, equalities)
        if problems:
            counterexamples.extend(problems)
        else:
            passes += 1
    return PropertySuiteReport(
        seed=seed,
        trials=trials,
        enumerated=len(enumerated),
        checked=len(enumerated) + len(sampled),
        passes=passes,
        equalities=tuple(equalities),
        counterexamples=tuple(counterexamples),
    )
