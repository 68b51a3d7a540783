"""Orbifold product rings on the inertia sectors of [V/G].

Two products are built on top of the sector bookkeeping: a rational one on
the per-sector fundamental classes (graded by age) and an integral one on
the per-sector representation rings.  Both sum contributions over double
sector classes; every evaluation map moves class functions through the
stored alignment conjugators only.
"""

from fractions import Fraction
from functools import lru_cache

from .cyclotomic import ZERO
from .errors import UserError
from .characters import (
    ClassFunction,
    character_table,
    trivial_character,
    zero_character,
    assert_genuine_character,
    decompose,
    transport,
    restrict_between,
    induce_between,
    lambda_minus_one_dual,
    inner_product,
)
from .logtrace import age, invariants_char, twisted_pullback
from .inertia import build_sectors, build_double_sectors, triple_sectors

RING_CHECKS = (
    "identity",
    "commutativity",
    "associativity",
    "grading",
    "frobenius",
    "multiproduct",
)


class GradedAlgebra:
    """Finite-dimensional algebra with labeled basis, rational grading and
    sparse structure constants.  context carries the build inputs (group,
    character, kind, sector data) and is not serialized; an algebra parsed
    back from JSON has context None and supports only the table-level checks.
    """

    def __init__(self, labels, grading, table, scalar, identity_index,
                 context=None):
        self.labels = list(labels)
        self.grading = [Fraction(g) for g in grading]
        assert len(self.grading) == len(self.labels)
        self.table = {}
        for (i, j), terms in table.items():
            assert 0 <= i < len(self.labels) and 0 <= j < len(self.labels)
            kept = {k: Fraction(c) for k, c in terms.items() if c != 0}
            for k in kept:
                assert 0 <= k < len(self.labels)
            if kept:
                self.table[(i, j)] = kept
        self.scalar = scalar
        self.identity_index = identity_index
        self.context = context
        self.verified = {}

    @property
    def dim(self):
        return len(self.labels)

    def mul_basis(self, i, j):
        return dict(self.table.get((i, j), {}))

    def mul(self, va, vb):
        """Product of two sparse coefficient vectors (dicts index -> Fraction)."""
        out = {}
        for i, ca in va.items():
            if ca == 0:
                continue
            for j, cb in vb.items():
                terms = self.table.get((i, j))
                if not terms or cb == 0:
                    continue
                cab = ca * cb
                for k, c in terms.items():
                    out[k] = out.get(k, Fraction(0)) + cab * c
        return {k: c for k, c in out.items() if c != 0}

    def to_json(self):
        entries = []
        for (i, j) in sorted(self.table):
            terms = self.table[(i, j)]
            entries.append({
                "i": i,
                "j": j,
                "terms": [{"k": k, "c": str(terms[k])} for k in sorted(terms)],
            })
        return {
            "basis": list(self.labels),
            "grading": [str(g) for g in self.grading],
            "scalar": self.scalar,
            "identity": self.identity_index,
            "table": entries,
            "verified": {k: self.verified[k] for k in sorted(self.verified)},
        }


def algebra_from_json(data):
    """Rebuild a GradedAlgebra from its JSON form (no build context)."""
    try:
        labels = list(data["basis"])
        grading = [Fraction(g) for g in data["grading"]]
        table = {}
        for entry in data["table"]:
            terms = {int(t["k"]): Fraction(t["c"]) for t in entry["terms"]}
            table[(int(entry["i"]), int(entry["j"]))] = terms
        alg = GradedAlgebra(
            labels, grading, table,
            data.get("scalar", "rational"),
            int(data.get("identity", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise UserError("malformed algebra JSON: %s" % exc)
    alg.verified = dict(data.get("verified", {}))
    return alg


# -- the rational product on fundamental classes --------------------------------


def _fixed_dim(v, elems):
    """dim of the common fixed space of the subgroup generated by elems."""
    G = v.group
    H = G.generated(tuple(elems))
    total = ZERO
    for h in H.elements:
        total = total + v.value(h)
    q = (total * Fraction(1, H.order)).to_rational()
    assert q is not None and q.denominator == 1
    return int(q)


def _chow_contribution(v, G, cls):
    """Coefficient a double class contributes to the rational product.

    Nonzero exactly when the obstruction class of the pair has rank 0 and
    the fixed space of the pair fills the fixed space of the product; then
    the coefficient is the index of the pair centralizer in the product
    centralizer.
    """
    m1, m2 = cls.rep
    m12 = G.op(m1, m2)
    if age(v, m1) + age(v, m2) != age(v, m12):
        return Fraction(0)
    if _fixed_dim(v, (m1, m2)) != _fixed_dim(v, (m12,)):
        return Fraction(0)
    return Fraction(G.centralizer(m12).order, cls.centralizer.order)


def chow_ring(G, v, contribution=None):
    """The rational inertial product: one generator per sector, graded by age.

    contribution may replace the structure-constant rule per double class
    (same signature as the default); no alternative ships.
    """
    assert_genuine_character(v, "the linearization character")
    sectors = build_sectors(G)
    doubles = build_double_sectors(G)
    if contribution is None:
        contribution = _chow_contribution
    labels = ["x[%s]" % G.element_label(s.rep) for s in sectors.sectors]
    grading = [age(v, s.rep) for s in sectors.sectors]
    table = {}
    for cls in doubles.classes:
        coeff = contribution(v, G, cls)
        if coeff == 0:
            continue
        i = cls.maps["e1"][0]
        j = cls.maps["e2"][0]
        k = cls.maps["mu"][0]
        row = table.setdefault((i, j), {})
        row[k] = row.get(k, Fraction(0)) + coeff
    assert sectors.sectors[0].rep == 0, "identity sector must come first"
    context = {
        "kind": "chow", "group": G, "rep": v,
        "sectors": sectors, "doubles": doubles,
    }
    return GradedAlgebra(labels, grading, table, "rational", 0, context)


def otherassoc_ring(G, v):
    """Degenerate variant: identity-sector products kept, the rest zeroed."""
    base = chow_ring(G, v)
    table = {
        (i, j): terms
        for (i, j), terms in base.table.items()
        if i == base.identity_index or j == base.identity_index
    }
    alg = GradedAlgebra(base.labels, base.grading, table, "rational",
                        base.identity_index, dict(base.context))
    alg.context["kind"] = "otherassoc"
    return alg


# -- the integral product on centralizer representation rings -------------------


class _KBasis:
    """Numbering of the (sector, irreducible-of-centralizer) basis."""

    def __init__(self, G, sectors):
        self.offsets = []
        self.tables = []
        self.labels = []
        self.pairs = []
        off = 0
        for s in sectors.sectors:
            table = character_table(s.centralizer.group)
            self.offsets.append(off)
            self.tables.append(table)
            for t in range(len(table)):
                self.labels.append("[%s]:%d" % (G.element_label(s.rep), t))
                self.pairs.append((s.index, t))
            off += len(table)
        self.size = off

    def index(self, sector, t):
        return self.offsets[sector] + t


def _aligned_restrictions(G, sectors, elem, sector_idx, Zm):
    """Every irreducible of the sector's centralizer, moved to the centralizer
    of elem through the class witness and restricted to Zm."""
    Zs = sectors.sectors[sector_idx].centralizer
    w = G.witness(elem)
    out = []
    for chi in character_table(Zs.group):
        moved, sub = transport(chi, Zs, w)
        out.append(restrict_between(moved, sub, Zm))
    return out


def _koszul_factor(v, ms, prod_elem, Zm):
    """lambda_-1 of the dual of V^{prod} / V^{<ms>} as a Zm-class.

    This is the excess factor of the pushforward along the fixed-space
    inclusion; it is 1 exactly when the two fixed spaces agree.
    """
    big = invariants_char(v, (prod_elem,), Zm)
    small = invariants_char(v, tuple(ms), Zm)
    return lambda_minus_one_dual(big - small)


def _integral_mults(moved):
    mults, _ = decompose(moved)
    out = []
    for m in mults:
        q = m.to_rational()
        assert q is not None and q.denominator == 1, (
            "structure constant %r is not an integer" % m
        )
        out.append(Fraction(q))
    return out


def k_ring(G, v):
    """The inertial product on the sum of centralizer representation rings.

    For each double class: restrict both inputs to the pair centralizer
    (through alignment conjugators), multiply by lambda_-1 of the dual
    obstruction class and by the fixed-space excess factor, induce up to the
    product centralizer, and decompose at the product's sector.  The table
    is integral; this is asserted.
    """
    assert_genuine_character(v, "the linearization character")
    sectors = build_sectors(G)
    doubles = build_double_sectors(G)
    basis = _KBasis(G, sectors)
    table = {}
    for cls in doubles.classes:
        m1, m2 = cls.rep
        m12 = G.op(m1, m2)
        Zm = cls.centralizer
        s1 = cls.maps["e1"][0]
        s2 = cls.maps["e2"][0]
        s12 = cls.maps["mu"][0]
        tw = twisted_pullback(v, cls.rep)
        factor = lambda_minus_one_dual(tw.char) * _koszul_factor(v, cls.rep, m12, Zm)
        res1 = _aligned_restrictions(G, sectors, m1, s1, Zm)
        res2 = _aligned_restrictions(G, sectors, m2, s2, Zm)
        Z12 = G.centralizer(m12)
        h12 = G.inv[G.witness(m12)]
        for t1, a in enumerate(res1):
            bi = basis.index(s1, t1)
            for t2, b in enumerate(res2):
                bj = basis.index(s2, t2)
                ind = induce_between(a * b * factor, Zm, Z12)
                moved, sub = transport(ind, Z12, h12)
                assert sub is sectors.sectors[s12].centralizer
                row = table.setdefault((bi, bj), {})
                for t, m in enumerate(_integral_mults(moved)):
                    if m:
                        k = basis.index(s12, t)
                        row[k] = row.get(k, Fraction(0)) + m
    triv = trivial_character(G)
    id_t = next(
        t for t, chi in enumerate(character_table(G)) if chi == triv
    )
    context = {
        "kind": "k", "group": G, "rep": v,
        "sectors": sectors, "doubles": doubles, "kbasis": basis,
    }
    return GradedAlgebra(
        basis.labels, [Fraction(0)] * basis.size, table, "integer",
        basis.index(0, id_t), context,
    )


def lusztig_ring(G):
    """The integral product for the complete quotient [pt/G]."""
    return k_ring(G, zero_character(G))


# -- the pairing -----------------------------------------------------------------


class PairingMatrix:
    def __init__(self, labels, matrix):
        self.labels = list(labels)
        self.matrix = matrix
        n = len(matrix)
        for i in range(n):
            for j in range(n):
                assert matrix[i][j] == matrix[j][i], "pairing is not symmetric"

    def to_json(self):
        return {
            "basis": list(self.labels),
            "matrix": [[str(c) for c in row] for row in self.matrix],
        }


def eta_pairing(algebra):
    """The Poincare pairing of a complete (V = 0) quotient.

    Sectors pair only with their inverse classes.  On fundamental classes
    the value is 1 over the centralizer order; on representation classes it
    is the invariant multiplicity of the product after moving the second
    argument to the first centralizer through the inversion.
    """
    ctx = algebra.context
    if ctx is None:
        raise UserError("pairing needs a freshly built ring, not a parsed table")
    if ctx["rep"].dim() != 0:
        raise UserError(
            "the pairing is only defined for the complete quotient (V = 0)"
        )
    G = ctx["group"]
    sectors = ctx["sectors"]
    sigma = sectors.sigma
    n = algebra.dim
    matrix = [[Fraction(0)] * n for _ in range(n)]
    if ctx["kind"] in ("chow", "otherassoc"):
        for i, s in enumerate(sectors.sectors):
            matrix[i][sigma[i]] = Fraction(1, s.centralizer.order)
    elif ctx["kind"] == "k":
        basis = ctx["kbasis"]
        for bi, (si, t1) in enumerate(basis.pairs):
            sj = sigma[si]
            Zi = sectors.sectors[si].centralizer
            ri = sectors.sectors[si].rep
            Zj = sectors.sectors[sj].centralizer
            # move characters at the inverse sector onto Z(ri) through a
            # conjugator sending the inverse sector's representative to ri^-1
            w = G.witness(G.inv[ri])
            chi = basis.tables[si][t1]
            for t2 in range(len(basis.tables[sj])):
                bj = basis.index(sj, t2)
                moved, sub = transport(basis.tables[sj][t2], Zj, w)
                assert sub is Zi
                val = inner_product(chi * moved, trivial_character(Zi.group))
                q = val.to_rational()
                assert q is not None and q.denominator == 1
                matrix[bi][bj] = Fraction(q)
    else:
        raise UserError("no pairing for algebra kind %r" % ctx["kind"])
    return PairingMatrix(algebra.labels, matrix)


# -- verification ----------------------------------------------------------------


def _check_identity(alg):
    e = alg.identity_index
    one = {e: Fraction(1)}
    for j in range(alg.dim):
        unit = {j: Fraction(1)}
        if alg.mul(one, unit) != unit or alg.mul(unit, one) != unit:
            return False
    return True


def _check_commutativity(alg):
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            if alg.table.get((i, j), {}) != alg.table.get((j, i), {}):
                return False
    return True


def _check_associativity(alg):
    n = alg.dim
    for i in range(n):
        for j in range(n):
            left = alg.table.get((i, j), {})
            for k in range(n):
                lhs = {}
                for m, c in left.items():
                    for t, d in alg.table.get((m, k), {}).items():
                        lhs[t] = lhs.get(t, Fraction(0)) + c * d
                rhs = {}
                for m, c in alg.table.get((j, k), {}).items():
                    for t, d in alg.table.get((i, m), {}).items():
                        rhs[t] = rhs.get(t, Fraction(0)) + c * d
                lhs = {t: c for t, c in lhs.items() if c != 0}
                rhs = {t: c for t, c in rhs.items() if c != 0}
                if lhs != rhs:
                    return False
    return True


def _check_grading(alg):
    for (i, j), terms in alg.table.items():
        want = alg.grading[i] + alg.grading[j]
        for k, c in terms.items():
            if c != 0 and alg.grading[k] != want:
                return False
    return True


def _check_frobenius(alg):
    eta = eta_pairing(alg).matrix
    n = alg.dim
    for i in range(n):
        for j in range(n):
            tij = alg.table.get((i, j), {})
            for k in range(n):
                lhs = sum((c * eta[m][k] for m, c in tij.items()), Fraction(0))
                rhs = sum(
                    (c * eta[i][m] for m, c in alg.table.get((j, k), {}).items()),
                    Fraction(0),
                )
                if lhs != rhs:
                    return False
    return True


def _one_shot_chow(alg):
    """Triple products from length-3 classes directly, bypassing the binary table."""
    ctx = alg.context
    G, v = ctx["group"], ctx["rep"]
    out = {}
    for cls in triple_sectors(G).classes:
        a, b, c = cls.rep
        abc = G.prod([a, b, c])
        if age(v, a) + age(v, b) + age(v, c) != age(v, abc):
            continue
        if _fixed_dim(v, (a, b, c)) != _fixed_dim(v, (abc,)):
            continue
        coeff = Fraction(G.centralizer(abc).order, cls.centralizer.order)
        key = (cls.maps["e1"][0], cls.maps["e2"][0], cls.maps["e3"][0])
        row = out.setdefault(key, {})
        k = cls.maps["mu_full"][0]
        row[k] = row.get(k, Fraction(0)) + coeff
    return out


def _int_coords(vchar):
    """Exact integer coordinates of a virtual character over the irreducibles."""
    mults, _ = decompose(vchar)
    out = []
    for m in mults:
        q = m.to_rational()
        assert q is not None and q.denominator == 1, (
            "virtual character has non-integral coordinate %r" % m
        )
        out.append(int(q))
    return out


@lru_cache(maxsize=None)
def _fusion_tensor(group):
    """coords of chi_p * chi_q over the irreducibles, for every (p, q)."""
    irr = character_table(group)
    return [[_int_coords(a * b) for b in irr] for a in irr]


def _fold(u, w, fusion):
    """Coordinates of the product of two virtual characters, both given in
    coordinates, pushed through the fusion tensor."""
    out = [0] * len(u)
    for p, up in enumerate(u):
        if not up:
            continue
        row = fusion[p]
        for q, wq in enumerate(w):
            if not wq:
                continue
            uw = up * wq
            for k, n in enumerate(row[q]):
                if n:
                    out[k] += uw * n
    return out


@lru_cache(maxsize=None)
def _induced_images(sectors, Zm, Zabc, h, sk):
    """Per irreducible of Zm: induce up to Zabc, move to the product sector's
    centralizer, and decompose there.  All three maps are linear, so these
    vectors determine the map on every virtual character."""
    images = []
    for chi in character_table(Zm.group):
        moved, sub = transport(induce_between(chi, Zm, Zabc), Zabc, h)
        assert sub is sectors.sectors[sk].centralizer
        images.append(_integral_mults(moved))
    return images


def _one_shot_k(alg):
    ctx = alg.context
    G, v = ctx["group"], ctx["rep"]
    sectors, basis = ctx["sectors"], ctx["kbasis"]
    out = {}
    for cls in triple_sectors(G).classes:
        a, b, c = cls.rep
        abc = G.prod([a, b, c])
        Zm = cls.centralizer
        s1 = cls.maps["e1"][0]
        s2 = cls.maps["e2"][0]
        s3 = cls.maps["e3"][0]
        sk = cls.maps["mu_full"][0]
        tw = twisted_pullback(v, cls.rep)
        factor = lambda_minus_one_dual(tw.char) * _koszul_factor(v, cls.rep, abc, Zm)
        res1 = _aligned_restrictions(G, sectors, a, s1, Zm)
        res2 = _aligned_restrictions(G, sectors, b, s2, Zm)
        res3 = _aligned_restrictions(G, sectors, c, s3, Zm)
        Zabc = G.centralizer(abc)
        h = G.inv[G.witness(abc)]
        # everything applied to the irreducible triples below is linear, so
        # work in integer coordinates over Irr(Zm): fold through the fusion
        # tensor, then map through the images of the irreducibles
        fusion = _fusion_tensor(Zm.group)
        images = _induced_images(sectors, Zm, Zabc, h, sk)
        c1 = [_int_coords(x) for x in res1]
        c2f = [_int_coords(x * factor) for x in res2]
        c3 = [_int_coords(x) for x in res3]
        for t1, u1 in enumerate(c1):
            for t2, u2 in enumerate(c2f):
                u12 = _fold(u1, u2, fusion)
                for t3, u3 in enumerate(c3):
                    w = _fold(u12, u3, fusion)
                    key = (basis.index(s1, t1), basis.index(s2, t2),
                           basis.index(s3, t3))
                    row = out.setdefault(key, {})
                    for p, wp in enumerate(w):
                        if not wp:
                            continue
                        for t, m in enumerate(images[p]):
                            if m:
                                kk = basis.index(sk, t)
                                row[kk] = row.get(kk, Fraction(0)) + wp * m
    # signed partial sums can cancel; drop the explicit zeros they leave
    return {key: {k: c for k, c in row.items() if c != 0}
            for key, row in out.items()}


def _check_multiproduct(alg):
    ctx = alg.context
    if ctx["kind"] == "chow":
        oneshot = _one_shot_chow(alg)
    elif ctx["kind"] == "k":
        oneshot = _one_shot_k(alg)
    else:
        raise UserError("no triple-product rule for kind %r" % ctx["kind"])
    n = alg.dim
    for i in range(n):
        for j in range(n):
            tij = alg.table.get((i, j), {})
            for k in range(n):
                iterated = {}
                for m, c in tij.items():
                    for t, d in alg.table.get((m, k), {}).items():
                        iterated[t] = iterated.get(t, Fraction(0)) + c * d
                iterated = {t: c for t, c in iterated.items() if c != 0}
                direct = {
                    t: c for t, c in oneshot.get((i, j, k), {}).items() if c != 0
                }
                if iterated != direct:
                    return False
    return True


_CHECKS = {
    "identity": _check_identity,
    "commutativity": _check_commutativity,
    "associativity": _check_associativity,
    "grading": _check_grading,
    "frobenius": _check_frobenius,
    "multiproduct": _check_multiproduct,
}


def verify(algebra, checks):
    """Run the named table checks; returns {check: bool} and records them."""
    report = {}
    for name in checks:
        fn = _CHECKS.get(name)
        if fn is None:
            raise UserError(
                "unknown check %r (have: %s)" % (name, ", ".join(sorted(_CHECKS)))
            )
        if name in ("frobenius", "multiproduct") and algebra.context is None:
            raise UserError(
                "check %r needs a freshly built ring, not a parsed table" % name
            )
        report[name] = bool(fn(algebra))
    algebra.verified.update(report)
    return report
