"""I_Z-adic filtration of I_X: orders, leading forms and conormal data.

For a complete intersection ``Z = V(g_1..g_k)`` the associated graded ring
``gr_Z R`` is ``O_Z[y_1..y_k]`` with ``y_i`` the class of ``g_i``.  The
conormal ideal ``gr_Z I_X`` is computed from a presentation of the Rees
algebra; leading forms come from the expansion
``f = sum_{|m|=p} g^m a_m`` modulo ``I_Z^{p+1}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement

from .errors import HypothesisError
from .groebner import Ideal, eliminate, groebner, krull_dimension, quotient
from .polycore import GREVLEX, Polynomial, RingSpec, parse_polynomials

MAX_ORDER = 48


@dataclass
class PairSetup:
    """A pair ``Z subset X`` of ideals in one polynomial ring.

    ``z_ideal`` must be a complete intersection (one generator per
    codimension).  ``components`` optionally lists the prime components of
    Z; without them component-sensitive checks are reported as unverified.
    """

    ring: RingSpec
    z_ideal: Ideal
    x_ideal: Ideal
    components: tuple | None = None
    name: str = ""
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        self.z_ideal = Ideal(self.z_ideal.gens, self.ring, self.z_ideal.budget)
        self.x_ideal = Ideal(self.x_ideal.gens, self.ring, self.x_ideal.budget)
        if not self.z_ideal.gens:
            raise HypothesisError("Z proper", "Z must be cut out by at least one equation")
        if self.components is not None:
            self.components = tuple(Ideal(c.gens, self.ring) for c in self.components)

    @classmethod
    def from_strings(cls, variables, z_gens, x_gens, params=None, weights=None, components=None, name=""):
        ring = RingSpec(tuple(variables), tuple(weights) if weights else ())
        Z = Ideal(_parse_list(z_gens, ring, params), ring)
        X = Ideal(_parse_list(x_gens, ring, params), ring)
        comps = None
        if components is not None:
            comps = tuple(Ideal(_parse_list(c, ring, params), ring) for c in components)
        return cls(ring, Z, X, comps, name)

    @property
    def k(self) -> int:
        return len(self.z_ideal.gens)

    @property
    def r(self) -> int:
        return len(self.x_ideal.gens)

    @cached_property
    def z_dimension(self) -> int:
        return krull_dimension(self.z_ideal)

    def check_complete_intersection(self) -> bool:
        return self.z_dimension == self.ring.nvars - self.k

    def check_contained(self) -> bool:
        return all(self.z_ideal.contains(f) for f in self.x_ideal.gens)

    @cached_property
    def coordinate_vars(self):
        """Names ``g_i`` when every generator of I_Z is a distinct variable (up to scale)."""
        names = []
        for g in self.z_ideal.gens:
            if len(g.terms) != 1:
                return None
            (e, _), = g.terms.items()
            if sum(e) != 1:
                return None
            names.append(self.ring.variables[e.index(1)])
        if len(set(names)) != len(names):
            return None
        return tuple(names)

    def validate(self):
        if not self.check_contained():
            raise HypothesisError("Z subset X", "some generator of I_X is not in I_Z")
        if not self.check_complete_intersection():
            raise HypothesisError(
                "Z complete intersection",
                f"codim V(I_Z) = {self.ring.nvars - self.z_dimension} but I_Z has {self.k} generators",
            )


def _parse_list(items, ring, params):
    if isinstance(items, str):
        return parse_polynomials(items, ring, params)
    out = []
    for it in items:
        out.extend(parse_polynomials(it, ring, params) if isinstance(it, str) else [it.in_ring(ring)])
    return out


# orders -------------------------------------------------------------------

def _power_cache(z_ideal: Ideal):
    cache = getattr(z_ideal, "_powers", None)
    if cache is None:
        cache = {}
        z_ideal._powers = cache
    return cache


def _z_power(z_ideal: Ideal, p: int) -> Ideal:
    cache = _power_cache(z_ideal)
    if p not in cache:
        cache[p] = z_ideal.power(p)
    return cache[p]


def ord_along(f: Polynomial, z_ideal: Ideal) -> int:
    """Largest ``p`` with ``f in I_Z^p`` (membership tests on powers)."""
    if f.is_zero():
        raise ValueError("the zero polynomial has infinite order")
    p = 0
    while p < MAX_ORDER:
        if not _z_power(z_ideal, p + 1).contains(f):
            return p
        p += 1
    raise HypothesisError("finite order", f"order of {f} along Z exceeds {MAX_ORDER}")


def symbolic_membership(f: Polynomial, z_ideal: Ideal, p: int, components=None):
    """Whether ``f`` lies in the symbolic power ``I_Z^(p)``.

    With ``components`` (prime ideals of the components of Z, each a
    complete intersection so that its symbolic and ordinary powers agree)
    this tests ``f in cap_i P_i^p``.  Without them Z is treated as a single
    component and the result is flagged ``verified=False``.
    Returns ``(member, verified)``.
    """
    if components:
        return all(P.power(p).contains(f) for P in components), True
    return z_ideal.power(p).contains(f), False


# leading forms ------------------------------------------------------------

@dataclass(frozen=True)
class LeadingForm:
    order: int
    form: Polynomial
    coefficients: dict


@dataclass
class ConormalData:
    """Conormal data of a pair, presented in ``O_Z[y]``.

    ``ring`` contains the base variables followed by the fiber variables
    ``y``.  When I_Z is generated by coordinates those coordinates are
    dropped and ``O_Z`` is the polynomial ring in the remaining variables;
    otherwise all ambient variables are kept and ``z_gens`` (the
    generators of I_Z in ``ring``) must be added to every ideal.
    """

    setup: PairSetup
    ring: RingSpec
    base_vars: tuple
    fiber_vars: tuple
    coordinate: bool
    z_gens: tuple
    leading_forms: tuple
    orders: tuple
    coefficients: tuple

    @property
    def k(self) -> int:
        return len(self.fiber_vars)

    @property
    def r(self) -> int:
        return len(self.leading_forms)

    @cached_property
    def base_ring(self) -> RingSpec:
        return self.ring.drop(self.fiber_vars)

    @cached_property
    def gr_ideal(self) -> Ideal:
        return conormal_ideal(self.setup, self)

    def z_ideal_ext(self) -> Ideal:
        return Ideal(self.z_gens, self.ring)

    def to_base(self, f: Polynomial) -> Polynomial:
        """Move a polynomial of the ambient ring into ``O_Z`` (reduce mod I_Z)."""
        f = f.in_ring(self.setup.ring)
        if self.coordinate:
            g = self.setup.coordinate_vars
            return f.substitute({v: 0 for v in g}).in_ring(self.base_ring)
        return self.setup.z_ideal.reduce(f).in_ring(self.base_ring)

    def base_dimension(self) -> int:
        return self.setup.z_dimension


def _fiber_names(setup: PairSetup):
    return setup.ring.fresh("y", setup.k)


def _ext_ring(setup: PairSetup):
    ys = _fiber_names(setup)
    gvars = setup.coordinate_vars
    if gvars is not None:
        base = tuple(v for v in setup.ring.variables if v not in gvars)
    else:
        base = setup.ring.variables
    ws = [setup.ring.weight(v) for v in base]
    yws = [g.weighted_degree() if g.weighted_degree() > 0 else 1 for g in setup.z_ideal.gens]
    ring = RingSpec(base + ys, tuple(ws) + tuple(yws), base=base, fiber=ys)
    return ring, base, ys


def _monomials(k: int, p: int):
    out = []
    for combo in combinations_with_replacement(range(k), p):
        m = [0] * k
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return sorted(out, reverse=True)


def _g_power(gens, m):
    ring = gens[0].ring
    prod = Polynomial.one(ring)
    for g, a in zip(gens, m):
        if a:
            prod = prod * g ** a
    return prod


def leading_form(f: Polynomial, setup: PairSetup, ring=None) -> LeadingForm:
    """Leading form of ``f`` along Z as an element of ``O_Z[y]``.

    The coefficients ``a_m`` are read off as cofactors of ``f`` against the
    products ``g^m`` (``|m| = p``) using a tracked Groebner basis of
    ``I_Z^p``, then reduced modulo I_Z.
    """
    if ring is None:
        ring, _, _ = _ext_ring(setup)
    p = ord_along(f, setup.z_ideal)
    gens = setup.z_ideal.gens
    k = len(gens)
    gvars = setup.coordinate_vars
    zG = setup.z_ideal.gb()
    if p == 0:
        a = {(0,) * k: f}
    else:
        mons = _monomials(k, p)
        prods = [_g_power(gens, m) for m in mons]
        G = groebner(prods, GREVLEX, ring=setup.ring, track=True)
        cof, rem = G.express(f)
        if not rem.is_zero():
            raise AssertionError("order computation inconsistent with division")
        a = dict(zip(mons, cof))
    coeffs = {}
    form = Polynomial.zero(ring)
    for m, c in a.items():
        if gvars is not None:
            c = c.substitute({v: 0 for v in gvars})
        else:
            c = zG.reduce(c)
        if c.is_zero():
            continue
        cb = c.in_ring(ring)
        coeffs[m] = cb
        mono = Polynomial.monomial(ring, tuple(0 for _ in ring.base) + m)
        form = form + cb * mono
    if gvars is None:
        form = Ideal([g.in_ring(ring) for g in gens], ring).reduce(form)
    return LeadingForm(p, form, coeffs)


def conormal_data(setup: PairSetup, validate: bool = True) -> ConormalData:
    """Orders and leading forms of the supplied generators of I_X.

    The generators are sorted by nondecreasing order; sci_check decides
    whether they form a good basis.
    """
    if validate:
        setup.validate()
    ring, base, ys = _ext_ring(setup)
    forms = [leading_form(f, setup, ring) for f in setup.x_ideal.gens]
    idx = sorted(range(len(forms)), key=lambda i: (forms[i].order, i))
    forms = [forms[i] for i in idx]
    coordinate = setup.coordinate_vars is not None
    z_gens = () if coordinate else tuple(g.in_ring(ring) for g in setup.z_ideal.gens)
    return ConormalData(
        setup=setup,
        ring=ring,
        base_vars=base,
        fiber_vars=ys,
        coordinate=coordinate,
        z_gens=z_gens,
        leading_forms=tuple(lf.form for lf in forms),
        orders=tuple(lf.order for lf in forms),
        coefficients=tuple(lf.coefficients for lf in forms),
    )


def conormal_ideal(setup: PairSetup, cd: ConormalData | None = None) -> Ideal:
    """``gr_Z I_X`` in ``O_Z[y]`` via elimination from the Rees presentation.

    ``H = I_X + (y_i - t g_i)`` in ``R[y, t]``; eliminating ``t`` and adding
    ``I_Z`` presents ``gr_Z(R/I_X) = O_Z[y] / gr_Z I_X``.
    """
    if cd is None:
        cd = conormal_data(setup, validate=False)
    R = setup.ring
    ys = cd.fiber_vars
    t = R.fresh("_t", 1, numbered=False, avoid=ys)[0]
    big = R.extend(ys + (t,))
    T = Polynomial.var(big, t)
    H = [f.in_ring(big) for f in setup.x_ideal.gens]
    for y, g in zip(ys, setup.z_ideal.gens):
        H.append(Polynomial.var(big, y) - T * g.in_ring(big))
    E = eliminate(Ideal(H, big), [t])
    full = E + [g.in_ring(E.ring) for g in setup.z_ideal.gens]
    gens = []
    gvars = setup.coordinate_vars
    for g in full.gb().elements:
        if gvars is not None:
            g = g.substitute({v: 0 for v in gvars})
            if g.is_zero():
                continue
            gens.append(g.in_ring(cd.ring))
        else:
            gens.append(g.in_ring(cd.ring))
    I = Ideal(gens, cd.ring)
    return Ideal(I.reduced_gens() if I.gens else (), cd.ring)


# s.c.i. -------------------------------------------------------------------

@dataclass(frozen=True)
class SciCertificate:
    is_sci: bool
    generated: bool
    codim_ok: bool
    regular: bool
    dimension: int
    expected_dimension: int
    witness: Polynomial | None = None
    notes: tuple = ()


def sci_check(cd: ConormalData) -> SciCertificate:
    """Whether the leading forms are a regular sequence generating gr_Z I_X.

    Three certificates are computed: ideal equality of ``gr_Z I_X`` with
    the ideal of leading forms, the codimension certificate
    ``dim = dim Z + k - r`` and a colon-ideal test that each leading form
    is a non-zero-divisor modulo the previous ones.
    """
    ring = cd.ring
    lead_ideal = Ideal(list(cd.z_gens) + list(cd.leading_forms), ring)
    gr = cd.gr_ideal + list(cd.z_gens)
    generated = gr.equals(lead_ideal)
    witness = None
    if not generated:
        for g in gr.reduced_gens():
            if not lead_ideal.contains(g):
                witness = g
                break
    dim = krull_dimension(lead_ideal)
    expected = cd.base_dimension() + cd.k - cd.r
    codim_ok = dim == expected
    regular = True
    prev = Ideal(list(cd.z_gens), ring) if cd.z_gens else Ideal([], ring)
    for j, fj in enumerate(cd.leading_forms):
        domain_case = cd.coordinate and j == 0
        if not domain_case:
            col = quotient(prev, Ideal([fj], ring)) if prev.gens else Ideal([], ring)
            if prev.gens:
                extra = [g for g in col.gens if not prev.contains(g)]
                if extra:
                    regular = False
                    witness = witness or fj
                    break
        prev = prev + [fj]
    return SciCertificate(
        is_sci=generated and codim_ok and regular,
        generated=generated,
        codim_ok=codim_ok,
        regular=regular,
        dimension=dim,
        expected_dimension=expected,
        witness=witness,
    )


def multiplicity_sequence(cd: ConormalData):
    """Sorted orders ``(p_1 <= ... <= p_r)`` and their product."""
    ps = tuple(sorted(cd.orders))
    prod = 1
    for p in ps:
        prod *= p
    return ps, prod
