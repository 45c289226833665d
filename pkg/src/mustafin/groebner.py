"""Groebner engines and derived ideal operations.

Two engines share one reduction framework:

* field mode -- classical Buchberger with Gebauer-Moeller pair pruning and
  normal selection; the result is interreduced, so equal ideals get equal
  (hence byte-identical) bases.
* euclidean-ring mode -- coefficients in a Euclidean domain (here L[pi]).
  Each pair contributes an S-combination (leading terms cancelled through
  the coefficient lcm) and a G-combination (gcd of the leading coefficients
  realized via the extended Euclidean algorithm); together these generate
  the leading-term syzygy module over a Euclidean domain.  All pairs are
  processed: ring mode runs at desk scale only, correctness over speed.

Saturation by a single variable has a fast path: when every generator is
homogeneous for a supplied weight vector (weight 1 on that variable),
running Buchberger under ``WeightedPiOrder`` while dividing every inserted
element by its content in the variable converges directly to a basis of the
saturated ideal.  Everything else takes the textbook route: adjoin
1 - t_i * a_i, eliminate the fresh auxiliaries.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .coeffs import DomainError
from .polyring import (
    Block,
    DegRevLex,
    default_order,
    Ideal,
    MPoly,
    TermOrder,
    VarUniverse,
    WeightedPiOrder,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    order_eliminates,
)


class ResourceCapExceeded(RuntimeError):
    """A Groebner computation ran past its time budget."""


@dataclass(frozen=True)
class ReductionStep:
    """One rewriting step: subtract sum_j c_j * quotient_j * f_{reducers[j]}.

    A step with no reducers moves the (irreducible) monomial ``quotients[0]``
    into the remainder.
    """

    reducers: tuple[int, ...]
    coeffs: tuple
    quotients: tuple


@dataclass(frozen=True)
class GroebnerBasis:
    """A computed basis together with the data that make it meaningful."""

    elements: tuple
    order: TermOrder
    ring_mode: bool = False

    @property
    def domain(self):
        return self.elements[0].domain if self.elements else None

    def verify(self):
        """Re-run the syzygy criterion; returns (ok, witness)."""
        return is_groebner(list(self.elements), self.order, ring_mode=self.ring_mode)


def groebner_basis_of(I: Ideal, order: TermOrder | None = None, *, ring_mode=False) -> GroebnerBasis:
    order = order or default_order(I.universe)
    return GroebnerBasis(I.groebner_basis(order, ring_mode=ring_mode), order, ring_mode)


@dataclass
class ReductionTrace:
    """Record of a normal-form computation against a fixed basis."""

    steps: list

    def replay(self, f: MPoly, basis, order: TermOrder):
        """Re-run the steps; returns (remainder, leading coefficients of the
        working polynomial after each step)."""
        work = f
        uni, dom = f.universe, f.domain
        remainder = MPoly.zero(uni, dom)
        leads = []
        for step in self.steps:
            if step.reducers:
                delta = MPoly.zero(uni, dom)
                for j, c, q in zip(step.reducers, step.coeffs, step.quotients):
                    delta = delta + basis[j].mono_shift(q).scale(c)
                work = work - delta
            else:
                m = step.quotients[0]
                c = work.terms[m]
                t = MPoly.term(uni, dom, c, m)
                remainder = remainder + t
                work = work - t
            if work:
                leads.append(work.leading_term(order)[0])
        return remainder + work, leads


# ---------------------------------------------------------------------------
# reduction


def reduce_one_step(f: MPoly, E, order: TermOrder):
    """One leading-term rewriting step of f modulo E, or None.

    Over a field a single reducer with dividing leading monomial suffices;
    over a Euclidean domain reducers are collected greedily in basis order
    until the gcd of their leading coefficients divides lc(f), and the
    cofactors come from the extended Euclidean algorithm.
    """
    if not f:
        return None
    dom = f.domain
    lc, lm = f.leading_term(order)
    divisors = [
        (j, g)
        for j, g in enumerate(E)
        if g and mono_divides(g.leading_term(order)[1], lm)
    ]
    if not divisors:
        return None
    if getattr(dom, "is_field", False):
        j, g = divisors[0]
        glc, glm = g.leading_term(order)
        q = mono_div(lm, glm)
        c = dom.div(lc, glc)
        h = f - g.mono_shift(q).scale(c)
        return h, ReductionStep((j,), (c,), (q,))
    used: list[tuple[int, MPoly]] = []
    combo: list = []  # running gcd written over the used leading coefficients
    g_run = None
    for j, g in divisors:
        glc = g.leading_term(order)[0]
        if g_run is None:
            d, (u, _) = dom.extended_gcd(glc, dom.zero)
            g_run, combo = d, [u]
        else:
            d, (u, v) = dom.extended_gcd(g_run, glc)
            combo = [dom.mul(u, c) for c in combo] + [v]
            g_run = d
        used.append((j, g))
        if dom.divides(g_run, lc):
            break
    else:
        return None
    scale = dom.exact_div(lc, g_run)
    h = f
    reducers, coeffs, quotients = [], [], []
    for (j, g), c0 in zip(used, combo):
        c = dom.mul(scale, c0)
        if dom.is_zero(c):
            continue
        q = mono_div(lm, g.leading_term(order)[1])
        h = h - g.mono_shift(q).scale(c)
        reducers.append(j)
        coeffs.append(c)
        quotients.append(q)
    return h, ReductionStep(tuple(reducers), tuple(coeffs), tuple(quotients))


def normal_form(f: MPoly, G, order: TermOrder, *, want_trace: bool = False):
    """Normal form of f modulo G: rewrite leading terms while possible, move
    irreducible leading terms to the remainder, continue on the tail."""
    basis = [g for g in G if g]
    if getattr(f.domain, "is_field", False):
        steps = [] if want_trace else None
        nf = _nf_field(f, basis, order, trace_steps=steps)
        return (nf, ReductionTrace(steps)) if want_trace else nf
    return _nf_ring(f, basis, order, want_trace)


def _nf_field(f: MPoly, basis, order, *, trace_steps=None, key_cache=None):
    dom, uni = f.domain, f.universe
    kc = key_cache if key_cache is not None else {}
    okey = order.key
    blms = [g.leading_term(order)[1] for g in basis]
    bterms = [g.terms for g in basis]
    blcs = [t[lm] for t, lm in zip(bterms, blms)]
    div, mul, sub_, neg, iz = dom.div, dom.mul, dom.sub, dom.neg, dom.is_zero
    work = dict(f.terms)
    remainder: dict = {}

    def key_of(m):
        k = kc.get(m)
        if k is None:
            k = okey(m)
            kc[m] = k
        return k

    while work:
        lm = max(work, key=key_of)
        lc = work[lm]
        for j, glm in enumerate(blms):
            ok = True
            for a, b in zip(glm, lm):
                if a > b:
                    ok = False
                    break
            if not ok:
                continue
            q = tuple(b - a for a, b in zip(glm, lm))
            c = div(lc, blcs[j])
            for m, gv in bterms[j].items():
                mm = tuple(x + y for x, y in zip(m, q))
                cur = work.get(mm)
                if cur is None:
                    work[mm] = neg(mul(c, gv))
                else:
                    s = sub_(cur, mul(c, gv))
                    if iz(s):
                        del work[mm]
                    else:
                        work[mm] = s
            if trace_steps is not None:
                trace_steps.append(ReductionStep((j,), (c,), (q,)))
            break
        else:
            remainder[lm] = lc
            del work[lm]
            if trace_steps is not None:
                trace_steps.append(ReductionStep((), (), (lm,)))
    return MPoly(uni, dom, remainder, _clean=True)


def _nf_ring(f: MPoly, basis, order, want_trace):
    dom, uni = f.domain, f.universe
    steps = [] if want_trace else None
    work = f
    remainder = MPoly.zero(uni, dom)
    while work:
        step = reduce_one_step(work, basis, order)
        if step is None:
            lc, lm = work.leading_term(order)
            t = MPoly.term(uni, dom, lc, lm)
            remainder = remainder + t
            work = work - t
            if steps is not None:
                steps.append(ReductionStep((), (), (lm,)))
        else:
            work, s = step
            if steps is not None:
                steps.append(s)
    if want_trace:
        return remainder, ReductionTrace(steps)
    return remainder


# ---------------------------------------------------------------------------
# normalization helpers


def field_normalize(f: MPoly, order: TermOrder) -> MPoly:
    """Monic over a prime field; over Q, divide by the rational content and
    make the leading coefficient positive (tames coefficient growth)."""
    if not f:
        return f
    dom = f.domain
    lc, _ = f.leading_term(order)
    if dom.characteristic == 0:
        num_gcd, den_lcm = 0, 1
        for c in f.terms.values():
            num_gcd = int_gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
        factor = Fraction(num_gcd, den_lcm)
        if lc < 0:
            factor = -factor
        return f if factor == 1 else f.scale(1 / factor)
    if lc == dom.one:
        return f
    return f.scale(dom.inv(lc))


def var_content(f: MPoly, pos: int) -> int:
    """Largest e with (variable at pos)^e dividing the nonzero polynomial."""
    return min(m[pos] for m in f.terms)


def divide_var_power(f: MPoly, pos: int, e: int) -> MPoly:
    if e == 0:
        return f
    out = {}
    for m, c in f.terms.items():
        mm = list(m)
        mm[pos] -= e
        if mm[pos] < 0:
            raise DomainError("inexact division by variable power")
        out[tuple(mm)] = c
    return MPoly(f.universe, f.domain, out, _clean=True)


# ---------------------------------------------------------------------------
# Buchberger, field mode


def _gm_update(lms, pairs, t, order):
    """Gebauer-Moeller update of the pair set when element t is appended."""
    lm_t = lms[t]
    kept = []
    for (i, j) in pairs:
        l_ij = mono_lcm(lms[i], lms[j])
        if (
            mono_divides(lm_t, l_ij)
            and l_ij != mono_lcm(lms[i], lm_t)
            and l_ij != mono_lcm(lms[j], lm_t)
        ):
            continue
        kept.append((i, j))
    cands = [(i, mono_lcm(lms[i], lm_t)) for i in range(t)]
    cands.sort(key=lambda kv: order.key(kv[1]))
    survivors: list[tuple[int, tuple]] = []
    seen_lcms: list[tuple] = []
    for i, l in cands:
        if any(mono_divides(l2, l) and l2 != l for l2 in seen_lcms):
            continue
        survivors.append((i, l))
        seen_lcms.append(l)
    out_new = []
    used = set()
    for i, l in survivors:
        if l in used:
            continue
        used.add(l)
        if mono_coprime(lms[i], lm_t):
            continue
        out_new.append((i, t))
    return kept + out_new


def buchberger(
    gens,
    order: TermOrder,
    *,
    universe: VarUniverse | None = None,
    domain=None,
    ring_mode: bool = False,
    sat_var: int | None = None,
    cap_seconds: float | None = None,
    trace_log: list | None = None,
    reduced: bool = True,
    gb_prefix: int = 0,
):
    """Groebner basis of <gens> with respect to ``order``.

    ``sat_var`` (field mode only) divides every inserted polynomial by its
    content in that variable; with a compatible weighted order this computes
    a basis of the saturation directly.  Callers own the homogeneity
    precondition.

    ``gb_prefix`` marks the first k generators as an already-known basis
    with respect to ``order``: pairs among them are skipped.  Sound only
    when the prefix really is one (incremental queries against a cached
    basis).
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    universe = universe or gens[0].universe
    domain = domain or gens[0].domain
    if ring_mode:
        if sat_var is not None:
            raise DomainError("variable-content saturation is a field-mode path")
        if getattr(domain, "is_field", False):
            domain = _FieldAsEuclidean(domain)
            gens = [MPoly(universe, domain, dict(g.terms), _clean=True) for g in gens]
        return _buchberger_ring(gens, order, universe, domain, cap_seconds, trace_log)
    if not getattr(domain, "is_field", False):
        raise DomainError("field-mode buchberger over a non-field domain")
    return _buchberger_field(
        gens, order, universe, domain, sat_var, cap_seconds, trace_log, reduced,
        gb_prefix,
    )


def _buchberger_field(
    gens, order, universe, domain, sat_var, cap_seconds, trace_log, reduced,
    gb_prefix=0,
):
    t0 = time.monotonic()
    key_cache: dict = {}
    okey = order.key

    def prep(f):
        if sat_var is not None and f:
            c = var_content(f, sat_var)
            if c:
                f = divide_var_power(f, sat_var, c)
        return field_normalize(f, order)

    G: list[MPoly] = [field_normalize(g, order) for g in gens[:gb_prefix]]
    lms = [g.leading_term(order)[1] for g in G]
    pairs: list = []
    for f in sorted(gens[gb_prefix:], key=lambda g: okey(g.leading_term(order)[1])):
        r = _nf_field(prep(f), G, order, key_cache=key_cache)
        if r:
            r = prep(r)
            G.append(r)
            lms.append(r.leading_term(order)[1])
            pairs = _gm_update(lms, pairs, len(G) - 1, order)
    heap = [(okey(mono_lcm(lms[i], lms[j])), i, j) for i, j in pairs]
    heapq.heapify(heap)
    alive = {(i, j) for i, j in pairs}

    while heap:
        if cap_seconds is not None and time.monotonic() - t0 > cap_seconds:
            raise ResourceCapExceeded(
                f"buchberger exceeded {cap_seconds:.0f}s ({len(G)} basis elements)"
            )
        _, i, j = heapq.heappop(heap)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        l = mono_lcm(lms[i], lms[j])
        gi, gj = G[i], G[j]
        ci = domain.inv(gi.terms[lms[i]])
        cj = domain.inv(gj.terms[lms[j]])
        s = gi.mono_shift(mono_div(l, lms[i])).scale(ci) - gj.mono_shift(
            mono_div(l, lms[j])
        ).scale(cj)
        r = _nf_field(s, G, order, key_cache=key_cache)
        if trace_log is not None:
            trace_log.append(f"pair ({i},{j}) lcm {l} -> {'0' if not r else 'new'}")
        if not r:
            continue
        if sat_var is not None:
            # content division can re-enable reduction; run to a fixpoint
            while r:
                c = var_content(r, sat_var)
                if not c:
                    break
                r = divide_var_power(r, sat_var, c)
                r = _nf_field(r, G, order, key_cache=key_cache)
            if not r:
                continue
        r = field_normalize(r, order)
        G.append(r)
        lms.append(r.leading_term(order)[1])
        new_pairs = _gm_update(lms, list(alive), len(G) - 1, order)
        added = set(new_pairs) - alive
        removed = alive - set(new_pairs)
        alive = set(new_pairs)
        for (a, b) in added:
            heapq.heappush(heap, (okey(mono_lcm(lms[a], lms[b])), a, b))
        # removed pairs stay in the heap but are skipped via ``alive``
    if not reduced:
        return G
    return interreduce(G, order)


def interreduce(G, order: TermOrder):
    """The reduced basis: minimal leading monomials, fully reduced tails,
    normalized leading coefficients, sorted ascending by leading monomial."""
    items = sorted(
        [g for g in G if g], key=lambda g: order.key(g.leading_term(order)[1])
    )
    if not items:
        return []
    key_cache: dict = {}
    minimal: list[MPoly] = []
    lms: list = []
    for g in items:
        lm = g.leading_term(order)[1]
        if any(mono_divides(l, lm) for l in lms):
            continue
        minimal.append(g)
        lms.append(lm)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = _nf_field(g, others, order, key_cache=key_cache)
        if r:
            out.append(field_normalize(r, order))
    out.sort(key=lambda g: order.key(g.leading_term(order)[1]))
    return out


# ---------------------------------------------------------------------------
# Buchberger, euclidean-ring mode


class _FieldAsEuclidean:
    """Adapter running ring mode over a field (every nonzero element is a
    unit, so gcds are trivial)."""

    is_field = False

    def __init__(self, base):
        self._f = base
        self.characteristic = base.characteristic
        self.name = base.name
        self.zero = base.zero
        self.one = base.one

    def __getattr__(self, attr):
        return getattr(self._f, attr)

    def divides(self, a, b):
        return not self._f.is_zero(a) or self._f.is_zero(b)

    def exact_div(self, b, a):
        return self._f.div(b, a)

    def is_unit(self, a):
        return not self._f.is_zero(a)

    def extended_gcd(self, a, b):
        f = self._f
        if f.is_zero(a):
            if f.is_zero(b):
                raise DomainError("gcd(0, 0) undefined")
            return f.one, (f.zero, f.inv(b))
        return f.one, (f.inv(a), f.zero)

    def __eq__(self, other):
        return isinstance(other, _FieldAsEuclidean) and other._f == self._f

    def __hash__(self):
        return hash(("FieldAsEuclidean", self._f))


def _spair_gpair(gi, gj, order, dom):
    (ci, mi) = gi.leading_term(order)
    (cj, mj) = gj.leading_term(order)
    l = mono_lcm(mi, mj)
    d, (u, v) = dom.extended_gcd(ci, cj)
    s = gi.mono_shift(mono_div(l, mi)).scale(dom.exact_div(cj, d)) - gj.mono_shift(
        mono_div(l, mj)
    ).scale(dom.exact_div(ci, d))
    g = None
    if not (dom.divides(ci, cj) or dom.divides(cj, ci)):
        g = gi.mono_shift(mono_div(l, mi)).scale(u) + gj.mono_shift(
            mono_div(l, mj)
        ).scale(v)
    return l, s, g


def _buchberger_ring(gens, order, universe, domain, cap_seconds, trace_log):
    t0 = time.monotonic()
    G = list(gens)
    queue = [(j, i) for j in range(len(G)) for i in range(j)]
    while queue:
        if cap_seconds is not None and time.monotonic() - t0 > cap_seconds:
            raise ResourceCapExceeded("ring-mode buchberger exceeded budget")
        j, i = queue.pop(0)
        l, s, g = _spair_gpair(G[i], G[j], order, domain)
        for cand in (s, g):
            if cand is None:
                continue
            r = _nf_ring(cand, G, order, False)
            if trace_log is not None:
                trace_log.append(
                    f"ring pair ({i},{j}) lcm {l} -> {'0' if not r else 'new'}"
                )
            if r:
                t = len(G)
                G.append(r)
                queue.extend((t, k) for k in range(t))
    out: list[MPoly] = []
    for idx in range(len(G)):
        others = [h for k, h in enumerate(G) if k != idx and h]
        if _nf_ring(G[idx], others, order, False):
            out.append(G[idx])
        else:
            G[idx] = MPoly.zero(universe, domain)
    return out


# ---------------------------------------------------------------------------
# derived operations


def is_groebner(G, order: TermOrder, *, ring_mode: bool = False):
    """Syzygy criterion: every S- (and in ring mode G-) combination of basis
    elements reduces to zero.  Returns (ok, witness)."""
    G = [g for g in G if g]
    if len(G) <= 1:
        return True, None
    domain = G[0].domain
    field = getattr(domain, "is_field", False)
    if ring_mode and field:
        domain = _FieldAsEuclidean(domain)
        G = [MPoly(g.universe, domain, dict(g.terms), _clean=True) for g in G]
        field = False
    for j in range(len(G)):
        for i in range(j):
            if field:
                gi, gj = G[i], G[j]
                (ci, mi) = gi.leading_term(order)
                (cj, mj) = gj.leading_term(order)
                l = mono_lcm(mi, mj)
                s = gi.mono_shift(mono_div(l, mi)).scale(
                    domain.inv(ci)
                ) - gj.mono_shift(mono_div(l, mj)).scale(domain.inv(cj))
                if normal_form(s, G, order):
                    return False, s
                continue
            _, s, g = _spair_gpair(G[i], G[j], order, domain)
            for cand in (s, g):
                if cand is not None and _nf_ring(cand, G, order, False):
                    return False, cand
    return True, None


def ideal_membership(
    f: MPoly, I: Ideal, order: TermOrder | None = None, *, ring_mode: bool = False
) -> bool:
    if not f:
        return True
    if I.is_zero():
        return False
    order = order or DegRevLex()
    gb = I.groebner_basis(order, ring_mode=ring_mode)
    if ring_mode and getattr(f.domain, "is_field", False):
        dom = _FieldAsEuclidean(f.domain)
        f = MPoly(f.universe, dom, dict(f.terms), _clean=True)
        gb = [MPoly(g.universe, dom, dict(g.terms), _clean=True) for g in gb]
        return not _nf_ring(f, list(gb), order, False)
    return not normal_form(f, list(gb), order)


def fresh_aux_names(universe: VarUniverse, count: int, stem: str = "t") -> list[str]:
    out: list[str] = []
    k = 0
    while len(out) < count:
        name = f"{stem}[{k}]"
        if name not in universe:
            out.append(name)
        k += 1
    return out


def weight_homogeneous(f: MPoly, weights) -> bool:
    if not f:
        return True
    degs = {sum(w * e for w, e in zip(weights, m)) for m in f.terms}
    return len(degs) == 1


def saturate(
    I: Ideal,
    elems,
    *,
    order: TermOrder | None = None,
    pi_fast_weights=None,
    cap_seconds: float | None = None,
    trace_log: list | None = None,
) -> Ideal:
    """sat(I, a_1..a_l) = <I, 1 - t_1 a_1, ..., 1 - t_l a_l> ∩ A.

    Fresh auxiliaries t_i sit on top of a block elimination order; basis
    elements touching them are discarded.  With ``pi_fast_weights`` and a
    single saturating element that is a weight-1 variable under which all
    generators are weight homogeneous, the content-division fast path runs
    instead and returns an equal ideal.
    """
    elems = list(elems)
    uni, dom = I.universe, I.domain
    if I.is_zero() or not elems:
        return I
    for a in elems:
        if not a or a.is_constant():
            raise DomainError("saturating elements must be nonzero non-units")

    if pi_fast_weights is not None and len(elems) == 1 and elems[0].is_monomial():
        mono = next(iter(elems[0].terms))
        if sum(mono) == 1:
            pos = mono.index(1)
            wts = tuple(pi_fast_weights)
            if wts[pos] == 1 and all(
                weight_homogeneous(g, wts) for g in I.generators
            ):
                worder = WeightedPiOrder(wts, pos)
                gb = buchberger(
                    list(I.generators),
                    worder,
                    universe=uni,
                    domain=dom,
                    sat_var=pos,
                    cap_seconds=cap_seconds,
                    trace_log=trace_log,
                )
                out = Ideal(gb, uni, dom)
                out._gb_cache[(worder, False)] = tuple(gb)
                return out

    aux = fresh_aux_names(uni, len(elems))
    big = uni.extend(aux)
    lifted = [g.relabel(big) for g in I.generators]
    one = MPoly.const(big, dom, dom.one)
    for name, a in zip(aux, elems):
        lifted.append(one - MPoly.var(big, dom, name) * a.relabel(big))
    inner = order or default_order(uni)
    elim_order = Block(
        (
            (tuple(big.index(v) for v in aux), DegRevLex()),
            (tuple(i for i in range(big.nvars) if big.names[i] not in aux), inner),
        ),
        name="sat-elim",
    )
    gb = buchberger(
        lifted,
        elim_order,
        universe=big,
        domain=dom,
        cap_seconds=cap_seconds,
        trace_log=trace_log,
    )
    aux_pos = [big.index(v) for v in aux]
    kept = [g for g in gb if all(m[p] == 0 for m in g.terms for p in aux_pos)]
    gens = [g.relabel(uni) for g in kept]
    out = Ideal(gens, uni, dom)
    out._gb_cache[(inner, False)] = tuple(gens)
    return out


def eliminate(
    I: Ideal,
    var_names,
    *,
    order: TermOrder | None = None,
    cap_seconds: float | None = None,
) -> Ideal:
    """Generators of I ∩ (subring without ``var_names``); the active order
    must put the eliminated variables in a leading block."""
    var_names = list(var_names)
    uni, dom = I.universe, I.domain
    targets = set(var_names)
    keeps_grid = uni.grid is not None and not any(n.startswith("x[") for n in targets)
    small = VarUniverse(
        tuple(n for n in uni.names if n not in targets),
        uni.grid if keeps_grid else None,
    )
    if I.is_zero():
        return Ideal((), small, dom)
    if order is None:
        rest = [i for i in range(uni.nvars) if uni.names[i] not in targets]
        rest_nonpi = tuple(i for i in rest if uni.names[i] != "pi")
        segments = [(tuple(uni.index(v) for v in var_names), DegRevLex())]
        if len(rest_nonpi) != len(rest):
            segments.append((rest_nonpi, DegRevLex()))
            segments.append(((uni.index("pi"),), DegRevLex()))
        else:
            segments.append((tuple(rest), DegRevLex()))
        order = Block(tuple(segments), name="elim")
    elif not order_eliminates(order, uni, var_names):
        raise DomainError("supplied order does not eliminate the variables")
    gb = buchberger(
        list(I.generators), order, universe=uni, domain=dom, cap_seconds=cap_seconds
    )
    pos = [uni.index(v) for v in var_names]
    kept = [g for g in gb if all(m[p] == 0 for m in g.terms for p in pos)]
    return Ideal([g.relabel(small) for g in kept], small, dom)


def radical_membership(f: MPoly, I: Ideal, *, cap_seconds: float | None = None) -> bool:
    """f in sqrt(I), by the trick of adjoining 1 - t f and testing whether the
    ideal becomes the whole ring.  Field coefficients only."""
    if not getattr(I.domain, "is_field", False):
        raise DomainError("radical membership needs field coefficients")
    if not f:
        return True
    if f.is_constant():
        # a nonzero constant is in the radical iff the ideal is the ring
        return any(g.is_constant() for g in I.groebner_basis(DegRevLex()))
    uni, dom = I.universe, I.domain
    aux = fresh_aux_names(uni, 1)[0]
    big = uni.extend([aux])
    # seed with the cached basis of I: appending one trailing degrevlex
    # variable preserves leading terms of aux-free polynomials, so the many
    # radical queries against one ideal share the heavy part of the work
    base_order = default_order(uni)
    base_gb = I.groebner_basis(base_order)
    gens = [g.relabel(big) for g in base_gb]
    gens.append(
        MPoly.const(big, dom, dom.one) - MPoly.var(big, dom, aux) * f.relabel(big)
    )
    big_order = _append_aux_order(base_order, uni, big)
    gb = buchberger(
        gens,
        big_order,
        universe=big,
        domain=dom,
        cap_seconds=cap_seconds,
        reduced=False,
        gb_prefix=len(base_gb),
    )
    return any(g.is_constant() for g in gb)


def _append_aux_order(order: TermOrder, uni: VarUniverse, big: VarUniverse) -> TermOrder:
    """Extend an order on ``uni`` to ``big`` (one extra trailing variable)
    so that comparisons of old monomials are unchanged."""
    aux_pos = tuple(range(uni.nvars, big.nvars))
    if isinstance(order, Block):
        segments = tuple(order.segments) + ((aux_pos, DegRevLex()),)
        return Block(segments, name=order.name + "+aux")
    return Block(
        ((tuple(range(uni.nvars)), order), (aux_pos, DegRevLex())),
        name="base+aux",
    )


def minimalize_monomials(monos) -> list:
    """Divisibility-minimal subset, sorted (degree, exponents)."""
    out: list[tuple] = []
    for m in sorted(set(monos), key=lambda m: (sum(m), m)):
        if not any(mono_divides(o, m) for o in out):
            out.append(m)
    return out


def intersect_monomial_ideals(ideals) -> Ideal:
    """Minimal generators of the intersection: iterated pairwise lcm of
    generators followed by divisibility minimalization."""
    ideals = list(ideals)
    if not ideals:
        raise DomainError("need at least one ideal")
    uni, dom = ideals[0].universe, ideals[0].domain
    for I in ideals:
        if not I.is_monomial():
            raise DomainError("intersection requires monomial generators")

    def monos(I):
        return [next(iter(g.terms)) for g in I.generators]

    current = minimalize_monomials(monos(ideals[0]))
    for I in ideals[1:]:
        other = monos(I)
        if not other or not current:
            current = []
            break
        current = minimalize_monomials(
            [mono_lcm(a, b) for a in current for b in other]
        )
    gens = [MPoly.term(uni, dom, dom.one, m) for m in sorted(current)]
    return Ideal(gens, uni, dom)


def compositions(total: int, parts: int):
    """All tuples of ``parts`` naturals summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def hilbert_function(
    I: Ideal, blocks, box, *, order: TermOrder | None = None
) -> dict:
    """Standard-monomial counts per multidegree in the box prod [0..b_j].

    ``blocks`` lists variable positions per block.  The ideal must be
    homogeneous per block, with field coefficients.
    """
    if not getattr(I.domain, "is_field", False):
        raise DomainError("hilbert function needs field coefficients")
    uni = I.universe
    for g in I.generators:
        if not g.is_multihomogeneous(blocks):
            raise DomainError("ideal is not multihomogeneous for the blocks")
    order = order or DegRevLex()
    lms = (
        [g.leading_term(order)[1] for g in I.groebner_basis(order)]
        if not I.is_zero()
        else []
    )
    table: dict[tuple, int] = {}
    for mdeg in itertools.product(*[range(b + 1) for b in box]):
        count = 0
        per_block = [list(compositions(dg, len(blk))) for blk, dg in zip(blocks, mdeg)]
        for combo in itertools.product(*per_block):
            mono = [0] * uni.nvars
            for blk, exps in zip(blocks, combo):
                for p, e in zip(blk, exps):
                    mono[p] = e
            mono_t = tuple(mono)
            if not any(mono_divides(lm, mono_t) for lm in lms):
                count += 1
        table[mdeg] = count
    return table
