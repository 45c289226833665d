"""Admissibility of syzygy-bundle data over a lattice configuration.

A datum consists of a twist rho, degrees d_0..d_n summing to n*rho, and
witnesses F_i: multihomogeneous polynomials in the grid variables of block
degree rho - d_j in every block j != i and degree 0 in block i.  The
substitution map sends block j to the inverse trivialization of factor j;
its image f_i is homogeneous of degree d_i in the ambient coordinates.  The
membership test asks whether the pi-normalized reduction of F_i keeps a
term using only the last-row variables x[d][j], j != i; witnesses passing
it produce tuples whose zero loci avoid the deepest stratum on each primary
component.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffs import DomainError, PiRing
from .groebner import buchberger, divide_var_power, var_content
from .polyring import (
    MPoly,
    default_order,
    parse_poly,
    to_pi_coefficients,
    from_pi_coefficients,
)
from .degeneration import ambient_universe, SubvarietyInput
from .varieties import LatticeConfig, build_g


@dataclass(frozen=True)
class SyzygyDatum:
    """Twist, degree vector and witnesses for one admissibility check."""

    rho: int
    degrees: tuple[int, ...]
    witnesses: tuple  # F_0..F_n over the grid universe (pi included)

    def __post_init__(self):
        if self.rho < 1:
            raise DomainError("rho must be positive")
        degs = tuple(self.degrees)
        if any(dd < 0 or dd > self.rho for dd in degs):
            raise DomainError("degrees must lie in [0, rho]")
        object.__setattr__(self, "degrees", degs)
        object.__setattr__(self, "witnesses", tuple(self.witnesses))
        if len(self.witnesses) != len(degs):
            raise DomainError("need one witness per degree")

    @property
    def n(self) -> int:
        return len(self.degrees) - 1


def _block_degrees(F: MPoly, d: int, n: int):
    blocks = F.universe.grid_indices()
    degs = F.multidegrees(blocks)
    if len(degs) != 1:
        raise DomainError("witness is not multihomogeneous in the blocks")
    return next(iter(degs))


def check_witness_profile(F: MPoly, i: int, data: SyzygyDatum, d: int):
    degs = _block_degrees(F, d, data.n)
    for j, dj in enumerate(degs):
        want = 0 if j == i else data.rho - data.degrees[j]
        if dj != want:
            raise DomainError(
                f"witness {i} has degree {dj} in block {j}, expected {want}"
            )


def upsilon(F: MPoly, i: int, config: LatticeConfig):
    """Substitute block j by the inverse trivialization of factor j.

    Returns (h, e) with the value equal to pi^e * h up to multiplication by
    units of the valuation ring; h carries no pi content.  Each block-j
    variable vector maps to adj(g_j) applied to the ambient coordinates, and
    each block-j degree contributes a division by det(g_j) = unit * pi^N.
    When the unit is a base-field constant the division is exact; a
    pi-dependent unit that does not divide exactly is left in place (same
    zero locus, and membership predicates are unit-invariant).
    """
    if config.is_symbolic:
        raise DomainError("substitution needs concrete entries")
    d, n = config.d, config.n
    if not F:
        raise DomainError("substitution of the zero polynomial")
    if not 0 <= i <= n:
        raise DomainError(f"factor index {i} out of range")
    degs = _block_degrees(F, d, n)
    if degs[i] != 0:
        raise DomainError(f"witness must have degree 0 in block {i}")
    dom = config.field
    ring = config.pi_ring
    amb = ambient_universe(d)
    g = build_g(config)
    g_amb = [[[e.relabel(amb) for e in row] for row in mat] for mat in g]
    yvec = [MPoly.var(amb, dom, f"y[{l}]") for l in range(1, d + 1)]

    # adj(g_j) . y, one linear form per grid row
    images: dict[str, MPoly] = {}
    from .degeneration import _adjugate

    for j in range(n + 1):
        if degs[j] == 0:
            continue
        adj = _adjugate(g_amb[j], amb, dom)
        for r in range(d):
            form = MPoly.zero(amb, dom)
            for l in range(d):
                form = form + adj[r][l] * yvec[l]
            images[f"x[{r + 1}][{j}]"] = form

    out = MPoly.zero(amb, dom)
    uni = F.universe
    pow_cache: dict = {}
    pi_amb = MPoly.var(amb, dom, "pi")
    for m, c in F.terms.items():
        term = MPoly.const(amb, dom, c)
        for pos, e in enumerate(m):
            if not e:
                continue
            name = uni.names[pos]
            if name == "pi":
                term = term * pi_amb ** e
                continue
            key = (name, e)
            if key not in pow_cache:
                pow_cache[key] = images[name] ** e
            term = term * pow_cache[key]
        out = out + term
    if not out:
        return out, 0

    # divide by prod_j det(g_j)^{deg_j} = (prod det(M_j)^{deg_j]) * pi^(N*total)
    N = sum(config.n_vec)
    total = sum(e for j, e in enumerate(degs) if j != i)
    det_unit = ring.one
    for j, e in enumerate(degs):
        if j == i or e == 0:
            continue
        red = config.entries[j]
        det_j = _pi_det(red, ring)
        for _ in range(e):
            det_unit = ring.mul(det_unit, det_j)
    content = var_content(out, amb.index("pi"))
    h = divide_var_power(out, amb.index("pi"), content)
    # strip the unit if it divides exactly in the pi-ring
    val = ring.pi_valuation(det_unit)
    det_unit = ring.unshift(det_unit, val)
    h_ring = to_pi_coefficients(h)
    try:
        divided = h_ring.map_coeffs(lambda c: ring.exact_div(c, det_unit))
        h = from_pi_coefficients(divided, amb)
    except DomainError:
        pass  # unit multiple is fine; zero loci and memberships agree
    return h, content - N * total - val


def _pi_det(matrix, ring: PiRing):
    d = len(matrix)
    if d == 1:
        return matrix[0][0]
    out = ring.zero
    for j in range(d):
        sub = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = ring.mul(matrix[0][j], _pi_det(sub, ring))
        out = ring.add(out, term) if j % 2 == 0 else ring.sub(out, term)
    return out


def sigma_membership(F: MPoly, i: int, d: int, n: int) -> bool:
    """Does the pi-normalized reduction of F keep a term supported on the
    last-row variables x[d][j], j != i, alone?  (Equivalently: that
    reduction is not in the ideal of the first d-1 rows outside block i.)"""
    if not F:
        return False
    uni = F.universe
    if not 0 <= i <= n:
        raise DomainError(f"factor index {i} out of range")
    pi_pos = uni.index("pi") if "pi" in uni else None
    work = F
    if pi_pos is not None:
        c = var_content(work, pi_pos)
        if c:
            work = divide_var_power(work, pi_pos, c)
        kept = {m: cf for m, cf in work.terms.items() if m[pi_pos] == 0}
        work = MPoly(uni, F.domain, kept, _clean=True)
    if not work:
        return False
    allowed = set()
    for j in range(n + 1):
        if j != i:
            allowed.add(uni.index(f"x[{d}][{j}]"))
    if pi_pos is not None:
        allowed.add(pi_pos)
    for m in work.terms:
        if all(pos in allowed for pos, e in enumerate(m) if e):
            return True
    return False


def admissibility_certificate(data: SyzygyDatum, config: LatticeConfig):
    """Check membership for every witness and produce the substituted tuple.

    Returns (admissible, sections) where sections[i] = (f_i, pi_power).
    Deciding admissibility of an externally given tuple without witnesses is
    a different (linear-algebra over K) problem and is not attempted.
    """
    d, n = config.d, config.n
    if data.n != n:
        raise DomainError("datum length does not match the configuration")
    if sum(data.degrees) != n * data.rho:
        raise DomainError("degrees must sum to n*rho")
    admissible = True
    sections = []
    for i, F in enumerate(data.witnesses):
        check_witness_profile(F, i, data, d)
        if not sigma_membership(F, i, d, n):
            admissible = False
        sections.append(upsilon(F, i, config))
    return admissible, sections


def curve_cover_check(X: SubvarietyInput, sections, *, cap_seconds=None) -> bool:
    """True iff the subvariety misses the common zero locus of the tuple in
    projective space: each coordinate y_l lies in the radical of
    I' + <f_0..f_n> over the fraction field (pi inverted on the fly)."""
    fs = [f[0] if isinstance(f, tuple) else f for f in sections]
    uni = X.universe
    dom = X.domain
    d = sum(1 for nm in uni.names if nm.startswith("y["))
    base = [g for g in X.generators] + [f.relabel(uni) for f in fs if f]
    aux_t, aux_s = "t[0]", "s[0]"
    big = uni.extend([aux_t, aux_s])
    one = MPoly.const(big, dom, dom.one)
    inv_pi = one - MPoly.var(big, dom, aux_s) * MPoly.var(big, dom, "pi")
    for l in range(1, d + 1):
        gens = [g.relabel(big) for g in base]
        gens.append(one - MPoly.var(big, dom, aux_t) * MPoly.var(big, dom, f"y[{l}]"))
        gens.append(inv_pi)
        gb = buchberger(
            gens,
            default_order(big),
            universe=big,
            domain=dom,
            cap_seconds=cap_seconds,
        )
        if not any(g.is_constant() for g in gb):
            return False
    return True


def parse_datum(payload: dict, config: LatticeConfig) -> SyzygyDatum:
    """Datum from JSON: {"rho": int, "degrees": [..], "witnesses": [str..]}."""
    uni = config.universe() if not config.is_symbolic else None
    if uni is None:
        raise DomainError("need a concrete configuration")
    witnesses = tuple(
        parse_poly(t, uni, config.field) for t in payload["witnesses"]
    )
    return SyzygyDatum(int(payload["rho"]), tuple(payload["degrees"]), witnesses)
