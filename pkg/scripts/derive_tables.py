#!/usr/bin/env python3
"""Derive the 4-dimensional calculus tables for quantum SU(2).

The preset needs the right-module matrices F(g) with
theta_i o g = sum_j F(g)_ij theta_j for each algebra generator g.  The
germ table (pi on generators), the representatives and the star data
are fixed; this script solves for the 64 matrix entries from the
structural constraints that any bicovariant *-calculus satisfies:

  (L1)  pi is well defined on every rewrite rule, where
        pi(g h) = eps(g) pi(h) + pi(g) F(h);
  (L2)  the adjoint coaction on forms intertwines the o-action,
        varpi(theta_i o b) =
            sum_k (theta_k o b(2)) (x) kappa(b(1)) v_ki b(3);
  (L3)  (theta_i o g)^* = theta_i^* o kappa(g)^*.

These constraints are linear in the entries of F.  The remaining
freedom is removed by the representation property F(gh) = F(g)F(h)
applied to both sides of every rewrite rule (a quadratic condition,
imposed on the parametrized solution space) and the surviving
candidates are screened against the expected quadratic relations of the
braided exterior algebra.  The winner is written to
src/qchern/data/sumu2-4d.preset together with a derivation note in
docs/sumu2-tables.md.

Run from the repository root:  python3 scripts/derive_tables.py
"""

import itertools
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qchern import linalg
from qchern.calculus import Calculus
from qchern.hopf import HopfAlgebra
from qchern.linalg import LinearMap
from qchern.presets import Preset, RepData, serialize_preset
from qchern.scalar import LAM, MU, NU, ONE, ZERO, Scalar, from_fraction

C, CS, A, AS = 0, 1, 2, 3
TAU, ETA3, ETAP, ETAM = 0, 1, 2, 3
FORM_NAMES = ("tau", "eta3", "etap", "etam")


def build_hopf():
    return HopfAlgebra(
        generators=("c", "cs", "a", "as"),
        rules={
            (A, C): {(C, A): MU},
            (A, CS): {(CS, A): MU},
            (AS, C): {(C, AS): ONE / MU},
            (AS, CS): {(CS, AS): ONE / MU},
            (CS, C): {(C, CS): ONE},
            (AS, A): {(): ONE, (C, CS): -ONE},
            (A, AS): {(): ONE, (C, CS): -(MU ** 2)},
        },
        coproduct={
            C: {((C,), (A,)): ONE, ((AS,), (C,)): ONE},
            CS: {((A,), (CS,)): ONE, ((CS,), (AS,)): ONE},
            A: {((A,), (A,)): ONE, ((CS,), (C,)): -MU},
            AS: {((AS,), (AS,)): ONE, ((C,), (CS,)): -MU},
        },
        counit={C: ZERO, CS: ZERO, A: ONE, AS: ONE},
        antipode={
            C: {(C,): -MU},
            CS: {(CS,): -ONE / MU},
            A: {(AS,): ONE},
            AS: {(A,): ONE},
        },
        star={C: {(CS,): ONE}, CS: {(C,): ONE},
              A: {(AS,): ONE}, AS: {(A,): ONE}},
    )


# fixed data: germs, representatives
def build_fixed_tables():
    q2 = ONE + MU ** 2
    pi_gen = {
        A: {TAU: ONE / q2, ETA3: ONE / q2},
        AS: {TAU: ONE / q2, ETA3: -(MU ** 2) / q2},
        C: {ETAP: ONE},
        CS: {ETAM: ONE},
    }
    reps = {
        TAU: {(A,): MU ** 2, (AS,): ONE},
        ETA3: {(A,): ONE, (AS,): -ONE},
        ETAP: {(C,): ONE},
        ETAM: {(CS,): ONE},
    }
    return pi_gen, reps


def pi_linear(hopf, pi_gen, word):
    """pi of a word of length <= 2: (constant vec, F-linear part).

    The F-linear part maps (g, i, j) -> coefficient dict over form index
    j, encoded as {j: {(g, i): coeff}}.
    """
    const = {}
    lin = {}
    if len(word) == 0:
        return const, lin
    if len(word) == 1:
        return dict(pi_gen[word[0]]), lin
    if len(word) != 2:
        raise AssertionError("rules of this presentation are quadratic")
    g, h = word
    eps_g = hopf.counit_table[g]
    if not eps_g.is_zero:
        for j, cval in pi_gen[h].items():
            const[j] = const.get(j, ZERO) + eps_g * cval
    for i, cval in pi_gen[g].items():
        for j in range(4):
            lin.setdefault(j, {})[(h, i, j)] = \
                lin.get(j, {}).get((h, i, j), ZERO) + cval
    return const, lin


def assemble_system(hopf, pi_gen, reps):
    unknowns = [(g, i, j) for g in range(4) for i in range(4)
                for j in range(4)]
    rows = []  # (eq_key, coeff dict over unknowns, rhs Scalar)

    # ---- (L1) germ well-definedness on rules ----
    for lhs, rhs in hopf.rules.items():
        lc, ll = pi_linear(hopf, pi_gen, lhs)
        # accumulate rhs
        rc, rl = {}, {}
        for w, coeff in rhs.items():
            wc, wl = pi_linear(hopf, pi_gen, w)
            for j, v in wc.items():
                rc[j] = rc.get(j, ZERO) + coeff * v
            for j, d in wl.items():
                tgt = rl.setdefault(j, {})
                for u, v in d.items():
                    tgt[u] = tgt.get(u, ZERO) + coeff * v
        for j in range(4):
            coeffs = dict(ll.get(j, {}))
            for u, v in rl.get(j, {}).items():
                coeffs[u] = coeffs.get(u, ZERO) - v
            rhs_val = rc.get(j, ZERO) - lc.get(j, ZERO)
            coeffs = {u: v for u, v in coeffs.items() if not v.is_zero}
            if coeffs or not rhs_val.is_zero:
                rows.append((("germ", lhs, j), coeffs, rhs_val))

    # ---- star structure of the forms (from the fixed tables) ----
    # theta_m^* = -pi(kappa(rep_m)^*); representatives are letter combos,
    # so this needs no F data.
    smat = [[ZERO] * 4 for _ in range(4)]
    for m in range(4):
        x = hopf.star(hopf.antipode(reps[m]))
        for w, coeff in x.items():
            assert len(w) == 1
            for p, v in pi_gen[w[0]].items():
                smat[p][m] = smat[p][m] - coeff * v

    # ---- adjoint coaction matrix of the forms ----
    # varpi(theta_j) = sum_l theta_l (x) v[l][j]
    v = [[dict() for _ in range(4)] for _ in range(4)]
    for j in range(4):
        for (w1, w2), coeff in hopf.adjoint_coaction(reps[j]).items():
            assert len(w1) <= 1
            if not w1:
                continue
            for l, val in pi_gen[w1[0]].items():
                tgt = v[l][j]
                s = tgt.get(w2, ZERO) + coeff * val
                if s.is_zero:
                    tgt.pop(w2, None)
                else:
                    tgt[w2] = s

    # ---- (L2) bicovariance ----
    for b in range(4):
        legs = hopf.split({(b,): ONE}, 3)
        for i in range(4):
            for l in range(4):
                eq = {}
                # sum_m v[l][m] x[b,i,m]
                for m in range(4):
                    for w, val in v[l][m].items():
                        d = eq.setdefault(w, {})
                        d[(b, i, m)] = d.get((b, i, m), ZERO) + val
                # - sum_k kappa(b1) v_ki b3 x[gamma(b2),k,l]
                for (w1, w2, w3), coeff in legs.items():
                    assert len(w2) == 1
                    gamma = w2[0]
                    for k in range(4):
                        tail = hopf.product(hopf.antipode({w1: ONE}),
                                            v[k][i], {w3: ONE})
                        for w, val in tail.items():
                            d = eq.setdefault(w, {})
                            d[(gamma, k, l)] = (d.get((gamma, k, l), ZERO)
                                                - coeff * val)
                for w, coeffs in eq.items():
                    coeffs = {u: cv for u, cv in coeffs.items()
                              if not cv.is_zero}
                    if coeffs:
                        rows.append((("cov", b, i, l, w), coeffs, ZERO))

    # ---- (L3) star compatibility ----
    for g in range(4):
        twisted = hopf.star(hopf.antipode({(g,): ONE}))
        for i in range(4):
            for p in range(4):
                coeffs = {}
                for m in range(4):
                    if not smat[p][m].is_zero:
                        coeffs[(g, i, m)] = (coeffs.get((g, i, m), ZERO)
                                             + smat[p][m])
                for w, coeff in twisted.items():
                    assert len(w) == 1
                    gamma = w[0]
                    for q in range(4):
                        if smat[q][i].is_zero:
                            continue
                        coeffs[(gamma, q, p)] = (
                            coeffs.get((gamma, q, p), ZERO)
                            - coeff * smat[q][i])
                coeffs = {u: cv for u, cv in coeffs.items()
                          if not cv.is_zero}
                if coeffs:
                    rows.append((("star", g, i, p), coeffs, ZERO))

    columns = {u: {} for u in unknowns}
    rhs_vec = {}
    for eq_key, coeffs, rhs_val in rows:
        for u, cv in coeffs.items():
            columns[u][eq_key] = cv
        if not rhs_val.is_zero:
            rhs_vec[eq_key] = rhs_val
    return unknowns, LinearMap(unknowns, columns), rhs_vec, smat


def matrices_from_solution(sol):
    mats = {}
    for g in range(4):
        mats[g] = tuple(tuple(sol.get((g, i, j), ZERO) for j in range(4))
                        for i in range(4))
    return mats


def mat_mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(4)),
                           ZERO) for j in range(4)) for i in range(4))


def rule_residuals(hopf, mats):
    """F(lhs) - F(rhs) for every rewrite rule; zero iff F is a rep."""
    out = []
    ident = tuple(tuple(ONE if i == j else ZERO for j in range(4))
                  for i in range(4))
    for lhs, rhs in hopf.rules.items():
        left = ident
        for g in lhs:
            left = mat_mul(left, mats[g])
        acc = [[ZERO] * 4 for _ in range(4)]
        for w, coeff in rhs.items():
            m = ident
            for g in w:
                m = mat_mul(m, mats[g])
            for i in range(4):
                for j in range(4):
                    acc[i][j] = acc[i][j] + coeff * m[i][j]
        for i in range(4):
            for j in range(4):
                out.append(left[i][j] - acc[i][j])
    return out


def scalar_from_expr(expr):
    """Exact conversion of a sympy rational function in mu to a Scalar."""
    import sympy

    mu = sympy.Symbol("mu")
    expr = sympy.together(sympy.expand(expr))
    num, den = sympy.fraction(expr)

    def poly_to_scalar(p):
        poly = sympy.Poly(p, mu, domain="QQ")
        out = ZERO
        for (k,), coeff in poly.terms():
            out = out + from_fraction(Fraction(coeff.p, coeff.q)) * MU ** k
        return out

    return poly_to_scalar(num) / poly_to_scalar(den)


def find_multiplicative_points(hopf, particular, kernel):
    """Points of the affine solution space where F is multiplicative.

    The solution space is parametrized exactly by the spare field
    generators lam and nu (this model never uses them), the rule
    residuals become polynomials in those parameters over Q(mu), and the
    polynomial system is solved symbolically.  Every reported point is
    verified against all residuals before being returned.
    """
    if not kernel:
        return [matrices_from_solution(particular)]
    if len(kernel) > 2:
        raise SystemExit(
            f"solution space too large ({len(kernel)}); refine constraints")
    import sympy

    names = ["lam", "nu"][: len(kernel)]
    params = [LAM, NU][: len(kernel)]
    sol = dict(particular)
    for t, kvec in zip(params, kernel):
        for u, val in kvec.items():
            s = sol.get(u, ZERO) + t * val
            if s.is_zero:
                sol.pop(u, None)
            else:
                sol[u] = s
    mats = matrices_from_solution(sol)
    residuals = [r for r in rule_residuals(hopf, mats) if not r.is_zero]
    if not residuals:
        raise SystemExit("rule consistency does not cut the solution "
                         "space; the tables are underdetermined")
    syms = [sympy.Symbol(n) for n in names]
    eqs = []
    for r in residuals:
        num, _den = sympy.fraction(sympy.together(r.as_expression()))
        eqs.append(sympy.expand(num))
    eqs = sorted(set(eqs), key=sympy.count_ops)

    solutions = []
    for subset in (eqs[: len(syms) + 1], eqs[: 2 * len(syms) + 2], eqs):
        try:
            solutions = sympy.solve(subset, syms, dict=True)
        except NotImplementedError:
            solutions = []
        concrete = [s for s in solutions
                    if all(v.free_symbols <= {sympy.Symbol("mu")}
                           for v in s.values())
                    and set(s) == set(syms)]
        if concrete:
            solutions = concrete
            break
    else:
        raise SystemExit("could not solve the multiplicativity system")

    points = []
    for assignment in solutions:
        scalars = {}
        try:
            for name, sym in zip(names, syms):
                scalars[name] = scalar_from_expr(assignment[sym])
        except (ZeroDivisionError, sympy.PolynomialError):
            continue
        final = {}
        try:
            for u, val in sol.items():
                v = val.replace(scalars)
                if not v.is_zero:
                    final[u] = v
        except ZeroDivisionError:
            continue
        cand = matrices_from_solution(final)
        if all(r.is_zero for r in rule_residuals(hopf, cand)):
            if cand not in points:
                points.append(cand)
    return points


def expected_quadratic_relations():
    """The six vectors that must span im(I - sigma) on the tensor square.

    These are the degree-2 relations of the braided polynomial algebra:
    tau (x) eta_i + c kappa_i and eta_i (x) tau + c kappa_i for the
    triplet forms eta_i, with c = (1-mu^3)/((1-mu^2)(1+mu)).
    """
    cconst = (ONE - MU ** 3) / ((ONE - MU ** 2) * (ONE + MU))
    kp = {(ETAP, ETA3): ONE, (ETA3, ETAP): -(MU ** 2)}
    km = {(ETA3, ETAM): ONE, (ETAM, ETA3): -(MU ** 2)}
    k3 = {(ETA3, ETA3): ONE - MU ** 2,
          (ETAP, ETAM): MU * (ONE + MU ** 2),
          (ETAM, ETAP): -MU * (ONE + MU ** 2)}
    rels = []
    for eta, kappa in ((ETAP, kp), (ETAM, km), (ETA3, k3)):
        for pair in ((TAU, eta), (eta, TAU)):
            vec = {pair: ONE}
            for key, val in kappa.items():
                vec[key] = vec.get(key, ZERO) + cconst * val
            rels.append({k: s for k, s in vec.items() if not s.is_zero})
    return rels


def screen_candidate(hopf, pi_gen, reps, mats):
    """Build the calculus and test it; returns (ok, messages)."""
    msgs = []
    cal = Calculus(hopf, FORM_NAMES, pi_gen,
                   {g: mats[g] for g in range(4)}, reps)
    failures = cal.validate(max_degree=3)
    if failures:
        return False, [f"validate: {f}" for f in failures], None

    # image of (id - sigma) on the tensor square: the quadratic
    # relation space of the braided polynomial algebra
    pairs = [(i, j) for i in range(4) for j in range(4)]
    image = []
    for (i, j) in pairs:
        col = {k: -v for k, v in cal.sigma(i, j).items()}
        col[(i, j)] = col.get((i, j), ZERO) + ONE
        image.append({k: v for k, v in col.items() if not v.is_zero})
    ech = linalg.row_reduce(image)
    expected = expected_quadratic_relations()
    if linalg.row_reduce(expected).rank != len(expected):
        raise AssertionError("expected relations are not independent")
    if ech.rank != len(expected):
        msgs.append(f"im(I-sigma) has dimension {ech.rank}, expected "
                    f"{len(expected)}")
        return False, msgs, cal
    for rel in expected:
        if not ech.contains(rel):
            msgs.append("an expected quadratic relation is outside "
                        "im(I-sigma)")
            return False, msgs, cal
    return True, msgs, cal


def derive_braid(hopf, rep_matrix):
    """A braiding of the tensor square of a 2-dim corepresentation.

    Solves for intertwiners of u x u, then picks the Yang-Baxter
    solution normalized to fix the deformed-symmetric part pointwise
    (so the exterior square is the image of id - braid).
    """
    dim = len(rep_matrix)
    pairs = [(i, j) for i in range(dim) for j in range(dim)]
    # (u x u)_{(p,q),(k,l)} = u_pk u_ql
    big = {}
    for (p, q) in pairs:
        for (k, l) in pairs:
            big[((p, q), (k, l))] = hopf.mul(rep_matrix[p][k],
                                             rep_matrix[q][l])
    # intertwiner: sum_s big[r,s] B[s,c] - B[r,s] big[s,c] = 0
    unknowns = [(s, c) for s in pairs for c in pairs]
    columns = {u: {} for u in unknowns}
    for r in pairs:
        for c in pairs:
            for s in pairs:
                for w, val in big[(r, s)].items():
                    col = columns[(s, c)]
                    key = ("eq", r, c, w)
                    col[key] = col.get(key, ZERO) + val
                for w, val in big[(s, c)].items():
                    col = columns[(r, s)]
                    key = ("eq", r, c, w)
                    col[key] = col.get(key, ZERO) - val
    fmap = LinearMap(unknowns, columns)
    kern = linalg.kernel_basis(fmap)
    if len(kern) != 2:
        raise AssertionError(
            f"intertwiner space has dimension {len(kern)}, expected 2")

    def as_matrix(vecdict):
        idx = {p: i for i, p in enumerate(pairs)}
        m = [[ZERO] * len(pairs) for _ in range(len(pairs))]
        for (s, c), val in vecdict.items():
            m[idx[s]][idx[c]] = val
        return m

    def yang_baxter_defect(m):
        d2 = dim * dim
        n3 = dim ** 3
        # act on triples: m12 and m23
        def apply12(t):
            out = {}
            for (x, y, z), val in t.items():
                for xi in range(dim):
                    for yi in range(dim):
                        coeff = m[xi * dim + yi][x * dim + y]
                        if not coeff.is_zero:
                            key = (xi, yi, z)
                            s = out.get(key, ZERO) + coeff * val
                            if s.is_zero:
                                out.pop(key, None)
                            else:
                                out[key] = s
            return out

        def apply23(t):
            out = {}
            for (x, y, z), val in t.items():
                for yi in range(dim):
                    for zi in range(dim):
                        coeff = m[yi * dim + zi][y * dim + z]
                        if not coeff.is_zero:
                            key = (x, yi, zi)
                            s = out.get(key, ZERO) + coeff * val
                            if s.is_zero:
                                out.pop(key, None)
                            else:
                                out[key] = s
            return out

        for trip in itertools.product(range(dim), repeat=3):
            t = {trip: ONE}
            lhs = apply12(apply23(apply12(t)))
            rhs = apply23(apply12(apply23(t)))
            if lhs != rhs:
                return True
        return False

    # parametrize candidates tau = alpha*id + beta*M over a small grid of
    # exact shapes: tau must satisfy Yang-Baxter, fix a 3-dim subspace
    # pointwise, and differ from the identity.
    m1, m2 = as_matrix(kern[0]), as_matrix(kern[1])

    def combo(al, be, mA, mB):
        return [[al * mA[i][j] + be * mB[i][j] for j in range(4)]
                for i in range(4)]

    # the eigenvalues of any YB solution here follow from the quadratic
    # minimal polynomial of the nonscalar intertwiner; instead of
    # computing roots we scan combinations built from the kernel basis
    # scaled to fix the symmetric part.
    candidates = []
    for vec in (m1, m2, combo(ONE, ONE, m1, m2), combo(ONE, -ONE, m1, m2),
                combo(ONE, MU, m1, m2), combo(ONE, -MU, m1, m2),
                combo(ONE, ONE / MU, m1, m2), combo(ONE, -ONE / MU, m1, m2),
                combo(MU, ONE, m1, m2), combo(MU, -ONE, m1, m2)):
        # normalize: require a 3-dim fixed space; scale so the fixed
        # eigenvalue is exactly one by finding an eigenvalue via the
        # kernel ranks of (vec - t id) for t among simple guesses
        for t in (ONE, -ONE, MU, -MU, MU ** 2, -(MU ** 2), ONE / MU,
                  -ONE / MU, ONE / MU ** 2, -(ONE / MU ** 2)):
            if t.is_zero:
                continue
            scaled = [[vec[i][j] / t for j in range(4)] for i in range(4)]
            shifted = {}
            for ci, pair in enumerate(pairs):
                col = {}
                for ri, rpair in enumerate(pairs):
                    val = scaled[ri][ci]
                    if ri == ci:
                        val = val - ONE
                    if not val.is_zero:
                        col[rpair] = val
                shifted[pair] = col
            fixed = linalg.kernel_basis(LinearMap(pairs, shifted))
            if len(fixed) != 3:
                continue
            if yang_baxter_defect(scaled):
                continue
            candidates.append(tuple(tuple(row) for row in scaled))
    # deduplicate
    uniq = []
    for cand in candidates:
        if cand not in uniq:
            uniq.append(cand)
    if not uniq:
        raise AssertionError("no Yang-Baxter braiding found")
    # prefer the one whose nonunit eigenvalue specializes to -1 at mu=1
    # (the classical flip) and pick deterministically among the rest
    def classical_score(cand):
        try:
            from fractions import Fraction
            vals = [cand[i][j].substitute({"mu": Fraction(1)})
                    for i in range(4) for j in range(4)]
        except (ValueError, ZeroDivisionError):
            return 1
        flip = {(0, 0): 1, (1, 2): 1, (2, 1): 1, (3, 3): 1}
        for i in range(4):
            for j in range(4):
                expect = flip.get((i, j), 0)
                if vals[i * 4 + j] != expect:
                    return 1
        return 0

    uniq.sort(key=lambda cand: (classical_score(cand),
                                str([[str(x) for x in row]
                                     for row in cand])))
    return uniq[0]


def main():
    hopf = build_hopf()
    bad = hopf.validate(max_degree=3, samples=3000)
    if bad:
        raise SystemExit(f"presentation invalid: {bad}")
    pi_gen, reps = build_fixed_tables()

    unknowns, system, rhs_vec, smat = assemble_system(hopf, pi_gen, reps)
    print(f"linear system: {len(unknowns)} unknowns")
    particular = linalg.solve(system, rhs_vec)
    if particular is None:
        raise SystemExit("linear constraints are inconsistent")
    kernel = linalg.kernel_basis(system)
    print(f"solution space dimension: {len(kernel)}")

    # star matrix sanity: tau* = -tau, eta3* = -eta3, etap* = mu etam,
    # etam* = mu^-1 etap
    expected_s = [[-ONE, ZERO, ZERO, ZERO],
                  [ZERO, -ONE, ZERO, ZERO],
                  [ZERO, ZERO, ZERO, ONE / MU],
                  [ZERO, ZERO, MU, ZERO]]
    assert [[smat[p][m] for m in range(4)] for p in range(4)] == expected_s, \
        "star matrix differs from the expected table"

    candidates = find_multiplicative_points(hopf, particular, kernel)

    print(f"multiplicative candidates: {len(candidates)}")
    winners = []
    for mats in candidates:
        ok, msgs, cal = screen_candidate(hopf, pi_gen, reps, mats)
        for m in msgs:
            print("  " + m)
        if ok:
            winners.append((mats, cal))
    if not winners:
        raise SystemExit("no candidate passes validation and the expected "
                         "quadratic relations")
    if len(winners) > 1:
        # drop duplicates (distinct parameter points can reach the same F)
        seen = []
        for mats, cal in winners:
            if mats not in [m for m, _ in seen]:
                seen.append((mats, cal))
        winners = seen
    print(f"surviving calculi: {len(winners)}")
    mats, cal = winners[0]

    for g, name in enumerate(hopf.generators):
        print(f"F({name}):")
        for i in range(4):
            print("   ", [str(mats[g][i][j]) for j in range(4)])

    # fundamental corepresentation, its conjugation, and a braiding
    a = hopf.gen("a")
    c = hopf.gen("c")
    cs = hopf.gen("cs")
    as_ = hopf.gen("as")
    rep_matrix = ((a, {k: -MU * v for k, v in cs.items()}), (c, as_))
    conj = ((ONE / MU, ZERO), (ZERO, MU))
    braid = derive_braid(hopf, rep_matrix)
    print("braid:")
    for row in braid:
        print("   ", [str(x) for x in row])

    preset = Preset(
        name="sumu2-4d",
        hopf=hopf,
        calculus=cal,
        representations={"fundamental": RepData(rep_matrix, conj, braid)},
        options={"name": "sumu2-4d"},
    )
    doc = serialize_preset(preset)
    out_path = os.path.join(os.path.dirname(__file__), "..", "src",
                            "qchern", "data", "sumu2-4d.preset")
    header = (
        "# Quantum SU(2) with its 4-dimensional bicovariant *-calculus.\n"
        "# Generated by scripts/derive_tables.py; do not edit by hand.\n"
        "# The circ table is the unique solution of the germ/covariance/\n"
        "# star constraints that extends multiplicatively; see\n"
        "# docs/sumu2-tables.md for the derivation.\n\n")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(header + doc)
    print(f"wrote {os.path.normpath(out_path)}")


if __name__ == "__main__":
    main()
