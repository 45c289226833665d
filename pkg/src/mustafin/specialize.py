"""Substitution of parameter values and certified generic sampling.

A symbolic run treats the parameters A[i][j][l] as ring variables over the
base field (with pi a variable as well).  From a basis of the saturating
ideal <gens, 1 - t*a>, computed under the block order

    t (the saturation auxiliary)  >  main variables  >  parameters  >  pi,

two families of parameter conditions fall out:

* unit conditions: for each basis element, the polynomial standing in front
  of its leading main-variable monomial, with pi content stripped.  A
  specialization turning all of these into valuation-0 elements keeps every
  leading term alive.
* nonzero conditions: the leading-group coefficients of the intermediate
  remainders in the reductions that certify the basis (the recorded
  criterion combination chains).  These must stay nonzero.

Condition sets depend on the basis and the (deterministic, greedy)
reduction strategy; different strategies give different, individually
sufficient sets.  ``check_specialization`` verifies a concrete assignment
directly: the specialized set must be a basis over the pi-coefficient ring,
and substitution must commute with saturation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .coeffs import DomainError, base_field
from .groebner import (
    buchberger,
    divide_var_power,
    is_groebner,
    normal_form,
    reduce_one_step,
    saturate,
    var_content,
)
from .polyring import (
    Block,
    DegRevLex,
    Ideal,
    MPoly,
    VarUniverse,
    format_poly,
    mono_div,
    mono_lcm,
    to_pi_coefficients,
)


# ---------------------------------------------------------------------------
# substitution


def subst(assignment: dict, target):
    """Image under the homomorphism sending parameter variables to values.

    Values may be base-field elements, pi-ring tuples (spread over the pi
    variable), or polynomials.  Parameters present in the target but absent
    from the assignment raise; unassigned non-parameter variables map to
    themselves.  The result lives in the universe without the substituted
    variables.
    """
    if isinstance(target, Ideal):
        gens = [subst(assignment, g) for g in target.generators]
        gens = [g for g in gens if g]
        uni = _shrunk_universe(target.universe, assignment)
        return Ideal(gens, uni, target.domain)
    f = target
    uni, dom = f.universe, f.domain
    missing = {
        name
        for name in f.variables()
        if name.startswith("A[") and name not in assignment
    }
    if missing:
        raise DomainError(f"assignment misses parameters {sorted(missing)}")
    small = _shrunk_universe(uni, assignment)
    values: dict[str, MPoly] = {}
    for name, val in assignment.items():
        if name not in uni:
            continue
        if isinstance(val, MPoly):
            values[name] = val.relabel(small)
        elif isinstance(val, tuple):  # pi-ring element
            if len(val) > 1 and "pi" not in small:
                raise DomainError("pi-polynomial value needs a pi variable")
            acc = MPoly.zero(small, dom)
            for k, c in enumerate(val):
                if dom.is_zero(c):
                    continue
                mono = [0] * small.nvars
                if k:
                    mono[small.index("pi")] = k
                acc = acc + MPoly.term(small, dom, c, tuple(mono))
            values[name] = acc
        else:
            values[name] = MPoly.const(small, dom, val)
    out = MPoly.zero(small, dom)
    for m, c in f.terms.items():
        factor = MPoly.const(small, dom, c)
        residual = [0] * small.nvars
        for pos, e in enumerate(m):
            if not e:
                continue
            name = uni.names[pos]
            if name in values:
                factor = factor * values[name] ** e
            else:
                residual[small.index(name)] = e
        out = out + factor.mono_shift(tuple(residual))
    return out


def _shrunk_universe(uni: VarUniverse, assignment) -> VarUniverse:
    gone = {name for name in assignment if name in uni}
    return VarUniverse(tuple(n for n in uni.names if n not in gone), uni.grid)


# ---------------------------------------------------------------------------
# symbolic setup helpers


def _split_positions(uni: VarUniverse, aux: str | None):
    top, main, params, pie = [], [], [], []
    for i, name in enumerate(uni.names):
        if aux is not None and name == aux:
            top.append(i)
        elif name.startswith("A["):
            params.append(i)
        elif name == "pi":
            pie.append(i)
        else:
            main.append(i)
    return top, main, params, pie


def _symbolic_order(uni: VarUniverse, aux: str | None):
    """Block order: saturation auxiliary > main variables > parameters > pi."""
    top, main, params, pie = _split_positions(uni, aux)
    segments = []
    if top:
        segments.append((tuple(top), DegRevLex()))
    segments.append((tuple(main), DegRevLex()))
    if params:
        segments.append((tuple(params), DegRevLex()))
    if pie:
        segments.append((tuple(pie), DegRevLex()))
    return Block(tuple(segments), name="sym"), top + main


def _leading_group(f: MPoly, order, group_pos):
    """Leading monomial in the grouped variables together with its
    polynomial coefficient in the remaining ones."""
    gset = set(group_pos)
    _, lm = f.leading_term(order)
    lead = tuple(e if i in gset else 0 for i, e in enumerate(lm))
    coeff = {}
    for m, c in f.terms.items():
        if tuple(e if i in gset else 0 for i, e in enumerate(m)) == lead:
            coeff[tuple(0 if i in gset else e for i, e in enumerate(m))] = c
    return lead, MPoly(f.universe, f.domain, coeff, _clean=True)


def _strip_pi_content(f: MPoly) -> MPoly:
    if not f or "pi" not in f.universe:
        return f
    pos = f.universe.index("pi")
    c = var_content(f, pos)
    return divide_var_power(f, pos, c) if c else f


def _adjoin_saturator(gens, a_elem):
    uni, dom = gens[0].universe, gens[0].domain
    aux = "t[0]"
    k = 0
    while aux in uni:
        k += 1
        aux = f"t[{k}]"
    big = uni.extend([aux])
    lifted = [g.relabel(big) for g in gens]
    lifted.append(
        MPoly.const(big, dom, dom.one) - MPoly.var(big, dom, aux) * a_elem.relabel(big)
    )
    return big, aux, lifted


# ---------------------------------------------------------------------------
# obstruction extraction


@dataclass
class ObstructionSet:
    """Parameter conditions under which the symbolic basis specializes to a
    basis: unit_conditions must take pi-valuation 0, nonzero_conditions must
    stay nonzero."""

    unit_conditions: list
    nonzero_conditions: list
    incomplete: bool = False

    def texts(self) -> dict:
        return {
            "unit_conditions": sorted(format_poly(f) for f in self.unit_conditions),
            "nonzero_conditions": sorted(
                format_poly(f) for f in self.nonzero_conditions
            ),
            "incomplete": self.incomplete,
        }


def obstruction_polynomials(
    gens,
    a_elem: MPoly,
    *,
    cap_seconds: float | None = None,
) -> ObstructionSet:
    """Extract unit and nonzero conditions from the symbolic basis of
    <gens, 1 - t*a> and its criterion-combination reduction chains."""
    gens = [g for g in gens if g]
    if not gens:
        return ObstructionSet([], [])
    dom = gens[0].domain
    big, aux, lifted = _adjoin_saturator(gens, a_elem)
    order, group_pos = _symbolic_order(big, aux)
    from .groebner import ResourceCapExceeded

    incomplete = False
    try:
        gb = buchberger(lifted, order, universe=big, domain=dom, cap_seconds=cap_seconds)
    except ResourceCapExceeded:
        incomplete = True
        gb = lifted

    unit_conditions: list[MPoly] = []
    seen: set = set()
    for g in gb:
        _, coeff_poly = _leading_group(g, order, group_pos)
        stripped = _strip_pi_content(coeff_poly)
        if stripped.is_constant() or stripped in seen:
            continue
        seen.add(stripped)
        unit_conditions.append(stripped)

    nonzero: list[MPoly] = []
    seen_nz: set = set()

    def harvest(work):
        # walk one reduction chain, recording the leading-group coefficient
        # each time the group-leading monomial drops
        last_lead = None
        guard = 0
        while work and guard < 10000:
            guard += 1
            lead, grp = _leading_group(work, order, group_pos)
            if lead != last_lead:
                stripped = _strip_pi_content(grp)
                if not stripped.is_constant() and stripped not in seen_nz:
                    seen_nz.add(stripped)
                    nonzero.append(stripped)
                last_lead = lead
            step = reduce_one_step(work, gb, order)
            if step is None:
                lc, lm = work.leading_term(order)
                work = work - MPoly.term(work.universe, dom, lc, lm)
            else:
                work = step[0]

    for j in range(len(gb)):
        for i in range(j):
            (ci, mi) = gb[i].leading_term(order)
            (cj, mj) = gb[j].leading_term(order)
            l = mono_lcm(mi, mj)
            s = gb[i].mono_shift(mono_div(l, mi)).scale(dom.inv(ci)) - gb[
                j
            ].mono_shift(mono_div(l, mj)).scale(dom.inv(cj))
            harvest(s)
    return ObstructionSet(unit_conditions, nonzero, incomplete)


# ---------------------------------------------------------------------------
# checking a specialization


@dataclass
class SpecializationReport:
    groebner_ok: bool
    commutation_ok: bool
    diagnosis: str = ""

    @property
    def ok(self) -> bool:
        return self.groebner_ok and self.commutation_ok

    def to_dict(self):
        return {
            "groebner_ok": self.groebner_ok,
            "commutation_ok": self.commutation_ok,
            "ok": self.ok,
            "diagnosis": self.diagnosis,
        }


def check_specialization(
    gens,
    a_elem: MPoly,
    assignment: dict,
    *,
    obstructions: ObstructionSet | None = None,
    cap_seconds: float | None = None,
) -> SpecializationReport:
    """Specialize the symbolic basis of <gens, 1 - t*a> and verify (1) that
    the result is a basis, over the pi-coefficient ring, of the specialized
    ideal, and (2) the commutation subst(sat(I, a)) = sat(subst(I),
    subst(a)), the latter computed independently."""
    gens = [g for g in gens if g]
    if not gens:
        return SpecializationReport(True, True)
    dom = gens[0].domain
    big, aux, lifted = _adjoin_saturator(gens, a_elem)
    order, _group = _symbolic_order(big, aux)
    gb = buchberger(lifted, order, universe=big, domain=dom, cap_seconds=cap_seconds)

    # (1) basis property of the specialized set over the pi-coefficient ring
    spec_gb = [h for h in (subst(assignment, g) for g in gb) if h]
    ring_gb = [to_pi_coefficients(h) for h in spec_gb]
    ring_uni = ring_gb[0].universe
    ring_order, _ = _symbolic_order(ring_uni, aux)
    ok_gb, _wit = is_groebner(ring_gb, ring_order, ring_mode=True)
    if ok_gb:
        for g in lifted:
            sg = subst(assignment, g)
            if not sg:
                continue
            from .groebner import _nf_ring  # deliberate: same reduction core

            if _nf_ring(to_pi_coefficients(sg), ring_gb, ring_order, False):
                ok_gb = False
                break

    # (2) commutation, with the right side computed from scratch
    aux_pos = big.index(aux)
    sat_sym = [g for g in gb if all(m[aux_pos] == 0 for m in g.terms)]
    lhs_gens = [h for h in (subst(assignment, g) for g in sat_sym) if h]
    spec_gens = [h for h in (subst(assignment, g) for g in gens) if h]
    spec_a = subst(assignment, a_elem)
    s_uni = _shrunk_universe(big, assignment)
    s_uni = VarUniverse(tuple(n for n in s_uni.names if n != aux), s_uni.grid)
    lhs_ideal = Ideal([g.relabel(s_uni) for g in lhs_gens], s_uni, dom)
    rhs_ideal = saturate(
        Ideal([g.relabel(s_uni) for g in spec_gens], s_uni, dom),
        [spec_a.relabel(s_uni)],
        cap_seconds=cap_seconds,
    )
    comm_ok = _same_ideal(lhs_ideal, rhs_ideal)

    diagnosis = ""
    if not (ok_gb and comm_ok):
        diagnosis = _violation_diagnosis(assignment, obstructions) or (
            "specialized set is not a basis" if not ok_gb else "saturation does not commute"
        )
    return SpecializationReport(ok_gb, comm_ok, diagnosis)


def _same_ideal(A: Ideal, B: Ideal) -> bool:
    order = DegRevLex()
    gb_a = list(A.groebner_basis(order)) if not A.is_zero() else []
    gb_b = list(B.groebner_basis(order)) if not B.is_zero() else []
    return all(not normal_form(g, gb_b, order) for g in A.generators) and all(
        not normal_form(g, gb_a, order) for g in B.generators
    )


def _violation_diagnosis(assignment, obstructions) -> str:
    if obstructions is None:
        return ""
    for cond in obstructions.unit_conditions:
        val = subst(assignment, cond)
        if (not val) or _pi_valuation_of_poly(val) > 0:
            return f"unit condition {format_poly(cond)} violated"
    for cond in obstructions.nonzero_conditions:
        if not subst(assignment, cond):
            return f"nonzero condition {format_poly(cond)} violated"
    return ""


def _pi_valuation_of_poly(f: MPoly) -> int:
    if "pi" not in f.universe:
        return 0
    return var_content(f, f.universe.index("pi"))


# ---------------------------------------------------------------------------
# generic sampling


@dataclass
class SampleReport:
    assignment: dict
    attempts: int
    seed: int

    def to_dict(self):
        return {
            "assignment": {k: str(v) for k, v in sorted(self.assignment.items())},
            "attempts": self.attempts,
            "seed": self.seed,
        }


def generic_sample(
    seed: int,
    fld,
    shape: tuple[int, int],
    obstructions: ObstructionSet | None = None,
    *,
    max_attempts: int = 200,
) -> SampleReport:
    """Uniform random parameter assignment A[i][j][l] with every matrix
    invertible mod pi; with obstructions, resample until every unit
    condition takes pi-valuation 0 and every nonzero condition is nonzero.
    Deterministic per seed; exceeding the cap raises with the last violated
    condition."""
    from .varieties import _det

    fld = base_field(fld)
    d, n = shape
    rng = random.Random(("sample", seed, d, n).__repr__())
    last_violation = ""
    for attempt in range(1, max_attempts + 1):
        assignment = {}
        ok = True
        for l in range(n + 1):
            mat = [[fld.random(rng) for _ in range(d)] for _ in range(d)]
            if fld.is_zero(_det(mat, fld)):
                ok = False
                break
            for i in range(d):
                for j in range(d):
                    assignment[f"A[{i + 1}][{j + 1}][{l}]"] = mat[i][j]
        if not ok:
            last_violation = "singular matrix"
            continue
        if obstructions is not None:
            bad = ""
            for cond in obstructions.unit_conditions:
                val = subst(assignment, cond)
                if (not val) or _pi_valuation_of_poly(val) > 0:
                    bad = f"unit condition {format_poly(cond)}"
                    break
            if not bad:
                for cond in obstructions.nonzero_conditions:
                    if not subst(assignment, cond):
                        bad = f"nonzero condition {format_poly(cond)}"
                        break
            if bad:
                last_violation = bad
                continue
        return SampleReport(assignment, attempt, seed)
    raise DomainError(
        f"sampling cap {max_attempts} exceeded; last violation: {last_violation}"
    )
