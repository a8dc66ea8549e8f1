"""Localization polynomial systems attached to a self-dual simple object.

For a self-dual basis element k with multiplicity-free self-dual square,
the categorification constraints localize to a small polynomial system in
variables y(i,b) (pairing scalars) and x(i,b) (triple scalars), with unit
arguments forced to explicit constants. This module generates the reduced
subsystem, the full three-argument system, the equation linking two
subsystems, and runs the two-subsystem exclusion pipeline decided by
Groebner bases.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .fields import Field, QQ
from .groebner import (
    GroebnerBasis,
    _prime_stream,
    buchberger,
    normal_form,
    specialize,
)
from .poly import GREVLEX, Polynomial
from .rings import FpData, FusionRing, fpdim_data


class LocalizationError(ValueError):
    """Hypothesis violation or invalid subsystem choice."""


@dataclass(frozen=True)
class LocalizationInput:
    """Validated localization data for one basis element.

    ``support`` is the set of a with N[k][k][a] = 1 (all self-dual, k
    among them); ``chosen`` is the user-selected subset on which every
    triple is multiplicity-free, or None when not yet chosen.
    """

    ring: FusionRing
    k: int
    support: tuple  # ascending indices
    chosen: tuple | None = None

    @property
    def k_label(self) -> str:
        return self.ring.labels[self.k]

    @property
    def support_labels(self) -> tuple:
        return tuple(self.ring.labels[i] for i in self.support)

    @property
    def chosen_labels(self) -> tuple:
        if self.chosen is None:
            return ()
        return tuple(self.ring.labels[i] for i in self.chosen)

    def with_chosen(self, subset) -> "LocalizationInput":
        chosen = _validate_sprime(self.ring, self.k, self.support, subset)
        return LocalizationInput(self.ring, self.k, self.support, chosen)


def _as_index(ring, label_or_index):
    if isinstance(label_or_index, str):
        return ring.index(label_or_index)
    return int(label_or_index)


def localization_sets(ring: FusionRing, k) -> LocalizationInput:
    """Compute the support set for k and validate the localization hypotheses.

    Errors: k not self-dual; some N[k][k][a] exceeding 1; a support
    element that is not self-dual; k itself outside the support.
    """
    k = _as_index(ring, k)
    star = ring.star
    labels = ring.labels
    if star[k] != k:
        raise LocalizationError(f"{labels[k]!r} is not self-dual")
    row = ring.N[k][k]
    for a, v in enumerate(row):
        if v > 1:
            raise LocalizationError(
                f"square of {labels[k]!r} has multiplicity {v} at {labels[a]!r}"
            )
    support = tuple(a for a, v in enumerate(row) if v == 1)
    for a in support:
        if star[a] != a:
            raise LocalizationError(
                f"support element {labels[a]!r} is not self-dual"
            )
    if k not in support:
        raise LocalizationError(
            f"{labels[k]!r} does not appear in its own square"
        )
    return LocalizationInput(ring=ring, k=k, support=support)


def _triples_free(ring, subset) -> tuple | None:
    """First offending (a,b,c) with N[b][c][a] > 1, or None."""
    for a in subset:
        for b in subset:
            for c in subset:
                if ring.N[b][c][a] > 1:
                    return (a, b, c)
    return None


def _validate_sprime(ring, k, support, subset):
    idx = tuple(sorted(_as_index(ring, x) for x in subset))
    if len(set(idx)) != len(idx):
        raise LocalizationError("chosen subset has repeated labels")
    if ring.unit_index not in idx:
        raise LocalizationError("chosen subset must contain the unit")
    if not set(idx) <= set(support):
        bad = sorted(set(idx) - set(support))
        raise LocalizationError(
            f"chosen subset leaves the support: {[ring.labels[i] for i in bad]}"
        )
    offender = _triples_free(ring, idx)
    if offender is not None:
        a, b, c = offender
        raise LocalizationError(
            "chosen subset is not multiplicity-free: "
            f"N({ring.labels[b]},{ring.labels[c]};{ring.labels[a]}) > 1"
        )
    return idx


def maximal_sprime_candidates(ring: FusionRing, k) -> tuple:
    """All maximal valid chosen subsets (as label tuples), unit included."""
    loc = localization_sets(ring, k)
    pool = [a for a in loc.support if a != ring.unit_index]
    valid = []
    for bits in range(1 << len(pool)):
        subset = (ring.unit_index,) + tuple(
            pool[i] for i in range(len(pool)) if bits >> i & 1
        )
        if _triples_free(ring, subset) is None:
            valid.append(frozenset(subset))
    maximal = [s for s in valid if not any(s < t for t in valid)]
    out = [tuple(sorted(s)) for s in maximal]
    out.sort()
    return tuple(tuple(ring.labels[i] for i in s) for s in out)


# ------------------------------------------------- variable naming / atoms


def y_var_name(tag: str, a: str, b: str) -> str:
    return f"y_{tag}[{a},{b}]"


def x_var_name(tag: str, multiset) -> str:
    """Canonical x-variable name for a sorted label multiset of size 3.

    Multisets with a repeated label render in two-argument form (single
    label first), matching the reduced subsystem's variables; all-distinct
    multisets keep three arguments.
    """
    a, b, c = multiset
    if a == b == c:
        return f"x_{tag}[{a},{a}]"
    if a == b:
        return f"x_{tag}[{c},{a}]"
    if b == c:
        return f"x_{tag}[{a},{b}]"
    return f"x_{tag}[{a},{b},{c}]"


class _Namer:
    """Atom builder for one subsystem: constants and variable monomials.

    Atoms are (coefficient, {var: power}) pairs or None for a forced zero.
    The unit and elimination rules apply the forced side constraints:
    y with a unit argument is 1/d_k; x with a unit argument is diagonal
    1/(d_b d_k); x whose triple has zero fusion coefficient vanishes; x
    with the distinguished label doubled collapses to a y square.
    """

    def __init__(self, ring: FusionRing, fp: FpData, k: int):
        self.ring = ring
        self.fp = fp
        self.k = k
        self.tag = ring.labels[k]
        self.dk = fp.dims[k]

    def y(self, i: int, b: int):
        if i == self.ring.unit_index or b == self.ring.unit_index:
            return (Fraction(1, self.dk), {})
        la, lb = sorted((i, b))
        name = y_var_name(self.tag, self.ring.labels[la], self.ring.labels[lb])
        return (Fraction(1), {name: 1})

    def x(self, triple):
        """Atom for the x scalar of an index multiset of size 3."""
        ms = tuple(sorted(triple))
        unit = self.ring.unit_index
        if unit in ms:
            rest = [t for t in ms if t != unit] or [unit, unit]
            if len(rest) == 1:
                rest = [rest[0], unit]
            if rest[0] == rest[1]:
                return (Fraction(1, self.fp.dims[rest[0]] * self.dk), {})
            return None
        a, b, c = ms
        if self.ring.N[b][c][a] == 0:
            return None
        if ms.count(self.k) >= 2:
            other = next((t for t in ms if t != self.k), self.k)
            coeff, mono = self.y(other, self.k)
            return (coeff * coeff, {name: 2 * p for name, p in mono.items()})
        labels = tuple(self.ring.labels[t] for t in ms)
        return (Fraction(1), {x_var_name(self.tag, labels): 1})


def _mul_atoms(*atoms):
    coeff = Fraction(1)
    mono = {}
    for atom in atoms:
        if atom is None:
            return None
        c, m = atom
        coeff *= c
        for name, p in m.items():
            mono[name] = mono.get(name, 0) + p
    return (coeff, mono)


class _PolyBuilder:
    """Accumulate (coeff, monomial) atoms into a Polynomial over fixed vars."""

    def __init__(self, variables):
        self.variables = tuple(variables)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.terms = {}

    def add(self, atom, scale=Fraction(1)):
        if atom is None:
            return
        coeff, mono = atom
        coeff *= scale
        if not coeff:
            return
        exp = [0] * len(self.variables)
        for name, p in mono.items():
            if name not in self.index:
                raise LocalizationError(
                    f"equation references eliminated variable {name!r}"
                )
            exp[self.index[name]] = p
        key = tuple(exp)
        v = self.terms.get(key, Fraction(0)) + coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def build(self) -> Polynomial:
        return Polynomial(self.variables, self.terms, QQ, GREVLEX)


@dataclass(frozen=True)
class LocalSystem:
    """A generated localization system with per-equation provenance."""

    ring_name: str
    tag: str
    support: tuple  # labels
    chosen: tuple  # labels
    variables: tuple
    polys: tuple
    provenance: tuple  # (family, arg labels...) per polynomial

    def alias_table(self, x_prefix: str = "u", y_prefix: str = "v") -> dict:
        """Short aliases in enumeration order: x variables then y variables."""
        table = {}
        xi = yi = 0
        for name in self.variables:
            if name.startswith("x_"):
                table[name] = f"{x_prefix}{xi}"
                xi += 1
            else:
                table[name] = f"{y_prefix}{yi}"
                yi += 1
        return table


def _require_integral(ring) -> FpData:
    fp = fpdim_data(ring)
    if not fp.integral:
        raise LocalizationError(
            "localization needs exact integer dimensions; ring is not integral"
        )
    return fp


def _subsystem_variables(ring, fp, k, support, chosen):
    """Canonical variable list for the reduced subsystem."""
    unit = ring.unit_index
    y_keys = sorted(
        {tuple(sorted((i, b))) for i in support for b in chosen if i != unit and b != unit},
        key=lambda ab: (ab[1], ab[0]),
    )
    x_keys = []
    for b in chosen:
        if b in (unit, k):
            continue
        for i in support:
            # x(k,b) with b != k stays a genuine variable; only x(a,k)
            # collapses to a y square, and b = k is excluded above
            if i != unit and ring.N[b][b][i] == 1:
                x_keys.append(tuple(sorted((i, b, b))))
    x_keys = sorted(set(x_keys))
    namer = _Namer(ring, fp, k)
    names = []
    for ms in x_keys:
        labels = tuple(ring.labels[t] for t in ms)
        names.append(x_var_name(namer.tag, labels))
    for a, b in y_keys:
        names.append(y_var_name(namer.tag, ring.labels[a], ring.labels[b]))
    return tuple(names)


def generate_Ek(ring: FusionRing, k, sprime) -> LocalSystem:
    """Reduced localization subsystem for (k, chosen subset).

    Emits the orthogonality family for ordered pairs (a >= b, a not the
    unit), the triple-product family over non-unit pairs, and the
    square-expansion family for b outside {unit, k}, after substituting
    every constant, zero, and symmetry constraint. Variables are exactly
    the surviving y and x scalars.
    """
    fp = _require_integral(ring)
    loc = localization_sets(ring, k)
    k = loc.k
    chosen = _validate_sprime(ring, k, loc.support, sprime)
    support = loc.support
    unit = ring.unit_index
    dims = fp.dims
    namer = _Namer(ring, fp, k)
    variables = _subsystem_variables(ring, fp, k, support, chosen)

    polys = []
    provenance = []

    def emit(builder, family, args):
        poly = builder.build()
        if poly.is_zero():
            return
        polys.append(poly)
        provenance.append((family,) + tuple(ring.labels[t] for t in args))

    # orthogonality: d_b sum_i d_i y(i,a) y(i,b) = delta(a,b)
    for a in chosen:
        if a == unit:
            continue
        for b in chosen:
            if b > a:
                continue
            builder = _PolyBuilder(variables)
            for i in support:
                atom = _mul_atoms(namer.y(i, a), namer.y(i, b))
                builder.add(atom, Fraction(dims[i] * dims[b]))
            if a == b:
                builder.add((Fraction(-1), {}))
            emit(builder, "orthogonality", (a, b))

    # triple product: sum_i d_i y(i,a) y(i,b)^2 = x(a,b)
    for a in chosen:
        if a == unit:
            continue
        for b in chosen:
            if b == unit:
                continue
            builder = _PolyBuilder(variables)
            for i in support:
                yb = namer.y(i, b)
                atom = _mul_atoms(namer.y(i, a), yb, yb)
                builder.add(atom, Fraction(dims[i]))
            lhs = namer.x((a, b, b))
            if lhs is not None:
                builder.add((-lhs[0], lhs[1]))
            emit(builder, "triple-product", (a, b))

    # square expansion: sum_i d_i y(i,a) x(i,b) = y(a,b)^2
    for b in chosen:
        if b in (unit, k):
            continue
        for a in chosen:
            builder = _PolyBuilder(variables)
            for i in support:
                atom = _mul_atoms(namer.y(i, a), namer.x((i, b, b)))
                builder.add(atom, Fraction(dims[i]))
            yab = namer.y(a, b)
            builder.add(_mul_atoms(yab, yab, (Fraction(-1), {})))
            emit(builder, "square-expansion", (a, b))

    return LocalSystem(
        ring_name=ring.name,
        tag=namer.tag,
        support=loc.support_labels,
        chosen=tuple(ring.labels[i] for i in chosen),
        variables=variables,
        polys=tuple(polys),
        provenance=tuple(provenance),
    )


def generate_full(ring: FusionRing, k, sprime) -> LocalSystem:
    """Full three-argument localization system over the chosen subset.

    All (a,b,c) instances of the triple-product and product-expansion
    families with the side constraints substituted; tautologies are
    dropped and duplicate equations deduplicated. Restricting to b = c
    recovers the reduced subsystem's ideal.
    """
    fp = _require_integral(ring)
    loc = localization_sets(ring, k)
    k = loc.k
    chosen = _validate_sprime(ring, k, loc.support, sprime)
    support = loc.support
    unit = ring.unit_index
    dims = fp.dims
    namer = _Namer(ring, fp, k)

    y_keys = sorted(
        {tuple(sorted((i, b))) for i in support for b in chosen if i != unit and b != unit},
        key=lambda ab: (ab[1], ab[0]),
    )
    x_keys = set()
    for b in chosen:
        for c in chosen:
            for a in chosen:
                x_keys.add(tuple(sorted((a, b, c))))
            for i in support:
                x_keys.add(tuple(sorted((i, b, c))))
    surviving = []
    for ms in sorted(x_keys):
        atom = namer.x(ms)
        if atom is not None and atom[1] and next(iter(atom[1])).startswith("x_"):
            surviving.append(next(iter(atom[1])))
    variables = tuple(dict.fromkeys(surviving)) + tuple(
        y_var_name(namer.tag, ring.labels[a], ring.labels[b]) for a, b in y_keys
    )

    polys = []
    provenance = []
    seen = set()

    def emit(builder, family, args):
        poly = builder.build()
        if poly.is_zero():
            return
        key = frozenset(poly.monic().terms.items())
        if key in seen:
            return
        seen.add(key)
        polys.append(poly)
        provenance.append((family,) + tuple(ring.labels[t] for t in args))

    for a in chosen:
        for b in chosen:
            for c in chosen:
                builder = _PolyBuilder(variables)
                for i in support:
                    atom = _mul_atoms(namer.y(i, a), namer.y(i, b), namer.y(i, c))
                    builder.add(atom, Fraction(dims[i]))
                lhs = namer.x((a, b, c))
                if lhs is not None:
                    builder.add((-lhs[0], lhs[1]))
                emit(builder, "triple-product", (a, b, c))

                builder = _PolyBuilder(variables)
                for i in support:
                    atom = _mul_atoms(namer.y(i, a), namer.x((i, b, c)))
                    builder.add(atom, Fraction(dims[i]))
                builder.add(_mul_atoms(namer.y(a, b), namer.y(a, c), (Fraction(-1), {})))
                emit(builder, "product-expansion", (a, b, c))

    return LocalSystem(
        ring_name=ring.name,
        tag=namer.tag,
        support=loc.support_labels,
        chosen=tuple(ring.labels[i] for i in chosen),
        variables=variables,
        polys=tuple(polys),
        provenance=tuple(provenance),
    )


def extra_link(ring: FusionRing, k, l) -> Polynomial:
    """The equation linking subsystems k and l over their joint variables.

    x_k(l,l) equals the weighted sum over the support intersection of
    y_l(i,l) x_k(i,l); constants substituted. The polynomial lives over
    the concatenated variable lists of the two reduced subsystems.
    """
    fp = _require_integral(ring)
    k = _as_index(ring, k)
    l = _as_index(ring, l)
    if k == l:
        raise LocalizationError("the two subsystem labels must differ")
    loc_k = localization_sets(ring, k)
    loc_l = localization_sets(ring, l)
    if l not in loc_k.support:
        raise LocalizationError(
            f"{ring.labels[l]!r} is not in the support of {ring.labels[k]!r}"
        )
    namer_k = _Namer(ring, fp, k)
    namer_l = _Namer(ring, fp, l)
    sk = set(loc_k.support)
    sl = set(loc_l.support)
    both = sorted(sk & sl)
    dims = fp.dims

    atoms = []
    for i in both:
        atom = _mul_atoms(namer_l.y(i, l), namer_k.x((i, l, l)))
        if atom is not None:
            atoms.append((Fraction(dims[i]) * atom[0], atom[1]))
    lhs = namer_k.x((l, l, l))

    used = set()
    for _, mono in atoms:
        used |= set(mono)
    if lhs is not None:
        used |= set(lhs[1])
    variables = tuple(sorted(used))
    builder = _PolyBuilder(variables)
    for coeff, mono in atoms:
        builder.add((coeff, mono))
    if lhs is not None:
        builder.add((-lhs[0], lhs[1]))
    return builder.build()


# ------------------------------------------------------------ two-parallel


EXCLUDED = "excluded"
NOT_EXCLUDED = "not-excluded"


@dataclass
class TwoParallelReport:
    verdict: str
    field: Field
    k_system: LocalSystem
    l_system: LocalSystem
    link: Polynomial
    gb_k_size: int
    gb_l_size: int
    final_basis: tuple  # canonical strings
    certified: bool
    timings: dict


def default_sprime_pair(ring: FusionRing, k, l):
    """Default subsets: {1,k,l} for k; {1,l,m} with m the smallest-
    dimension valid third element of l's support."""
    fp = _require_integral(ring)
    k = _as_index(ring, k)
    l = _as_index(ring, l)
    loc_k = localization_sets(ring, k)
    loc_l = localization_sets(ring, l)
    unit = ring.unit_index
    sk = _validate_sprime(ring, k, loc_k.support, (unit, k, l))
    candidates = [
        m
        for m in loc_l.support
        if m not in (unit, l)
        and _triples_free(ring, (unit, l, m)) is None
    ]
    if not candidates:
        sl = _validate_sprime(ring, l, loc_l.support, (unit, l))
    else:
        m = min(candidates, key=lambda t: (fp.dims[t], t))
        sl = _validate_sprime(ring, l, loc_l.support, (unit, l, m))
    return sk, sl


def _combined_ring_vars(sys_k: LocalSystem, sys_l: LocalSystem):
    overlap = set(sys_k.variables) & set(sys_l.variables)
    if overlap:
        raise LocalizationError(f"subsystem variables collide: {sorted(overlap)}")
    return sys_k.variables + sys_l.variables


def _unit_certificate(gb_k: GroebnerBasis, gb_l: GroebnerBasis, link: Polynomial, allv):
    """Exact certificate that the linked ideal is trivial.

    The union of the two reduced bases (disjoint variables) is a reduced
    basis of their sum, with finite staircase B given by concatenating the
    per-subsystem staircases. The linked ideal is trivial iff
    multiplication by the link polynomial is invertible on the quotient
    spanned by B; the multiplication matrix is built exactly, and a
    nonzero determinant modulo any prime (after clearing denominators)
    proves invertibility over the rationals.
    """
    stairs_k = gb_k.staircase()
    stairs_l = gb_l.staircase()
    if stairs_k is None or stairs_l is None:
        return False
    nk = len(gb_k.vars)
    nl = len(gb_l.vars)
    union = [g.rename(allv) for g in gb_k.polys] + [g.rename(allv) for g in gb_l.polys]
    basis_monos = [ek + el for ek in stairs_k for el in stairs_l]
    index = {m: i for i, m in enumerate(basis_monos)}
    n = len(basis_monos)
    link = link.rename(allv)
    cols = []
    for m in basis_monos:
        shifted = Polynomial(
            allv,
            {tuple(x + y for x, y in zip(e, m)): c for e, c in link.terms.items()},
        )
        nf = normal_form(shifted, union)
        col = [Fraction(0)] * n
        for e, c in nf.terms.items():
            col[index[e]] = c
        cols.append(col)
    mat = []
    for col in cols:
        den = 1
        for c in col:
            den = den * c.denominator // gcd(den, c.denominator)
        mat.append([int(c * den) for c in col])
    stream = _prime_stream()
    for _ in range(5):
        p = next(stream)
        a = [[mat[j][i] % p for j in range(n)] for i in range(n)]
        ok = True
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                ok = False
                break
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
            inv = pow(a[col][col], -1, p)
            arow = a[col]
            for r in range(col + 1, n):
                f = a[r][col]
                if f:
                    f = f * inv % p
                    row = a[r]
                    for cc in range(col, n):
                        row[cc] = (row[cc] - f * arow[cc]) % p
        if ok:
            return True
    return False


def two_parallel(
    ring: FusionRing,
    k,
    l,
    field: Field = QQ,
    sprime_k=None,
    sprime_l=None,
    pair_budget=None,
    term_budget=None,
) -> TwoParallelReport:
    """Run the two-subsystem exclusion pipeline.

    Computes the reduced bases of both subsystems separately, joins them
    with the linking equation over the combined variables, and reduces the
    union; the ring is excluded iff the final ideal is trivial. Over the
    rationals an excluded verdict is additionally certified by an exact
    invertibility check on the joint quotient.
    """
    timings = {}
    k = _as_index(ring, k)
    l = _as_index(ring, l)
    if sprime_k is None or sprime_l is None:
        dk, dl = default_sprime_pair(ring, k, l)
        sprime_k = sprime_k or dk
        sprime_l = sprime_l or dl

    if l not in tuple(_as_index(ring, x) for x in sprime_k):
        raise LocalizationError("the linking label must belong to the first chosen subset")
    if l not in tuple(_as_index(ring, x) for x in sprime_l):
        raise LocalizationError("the linking label must belong to its own chosen subset")

    t0 = time.time()
    sys_k = generate_Ek(ring, k, sprime_k)
    sys_l = generate_Ek(ring, l, sprime_l)
    link = extra_link(ring, k, l)
    timings["generate"] = time.time() - t0

    kwargs = {}
    if pair_budget is not None:
        kwargs["pair_budget"] = pair_budget
    if term_budget is not None:
        kwargs["term_budget"] = term_budget

    def in_field(polys):
        if field.is_rational:
            return list(polys)
        return specialize(field, polys)

    t0 = time.time()
    gb_k = buchberger(in_field(sys_k.polys), field=field, **kwargs)
    timings["gb_k"] = time.time() - t0
    t0 = time.time()
    gb_l = buchberger(in_field(sys_l.polys), field=field, **kwargs)
    timings["gb_l"] = time.time() - t0

    allv = _combined_ring_vars(sys_k, sys_l)
    combined = [g.rename(allv) for g in gb_k.polys]
    combined += [g.rename(allv) for g in gb_l.polys]
    combined.append(in_field([link.rename(allv)])[0])

    t0 = time.time()
    final = buchberger(combined, field=field, **kwargs)
    timings["gb_final"] = time.time() - t0

    verdict = EXCLUDED if final.is_trivial else NOT_EXCLUDED
    certified = not field.is_rational  # prime-field runs are direct
    if verdict == EXCLUDED and field.is_rational:
        t0 = time.time()
        certified = _unit_certificate(gb_k, gb_l, link, allv)
        timings["certificate"] = time.time() - t0

    return TwoParallelReport(
        verdict=verdict,
        field=field,
        k_system=sys_k,
        l_system=sys_l,
        link=link,
        gb_k_size=len(gb_k),
        gb_l_size=len(gb_l),
        final_basis=tuple(str(g) for g in final.polys),
        certified=certified,
        timings=timings,
    )
