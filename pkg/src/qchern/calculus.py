"""Bicovariant first-order differential calculi.

A calculus over a presented Hopf *-algebra is described by finite
tables on a basis theta_1..theta_n of left-invariant 1-forms:

  * the quantum germs map pi on generators, pi(a) = kappa(a(1)) d a(2),
    extended to all elements by the cocycle rule
        pi(a b) = eps(a) pi(b) + pi(a) o b;
  * the right module structure o ("circ") through matrices F(g) with
        theta_i o g = sum_j F(g)_ij theta_j,   F(a b) = F(a) F(b);
  * representatives rep_i with pi(rep_i) = theta_i.

Everything else is derived: the adjoint-coaction matrix v with
varpi(theta_j) = sum_l theta_l (x) v_lj, the braiding

    sigma(theta_i (x) theta_j) = sum_{l,m} F(v_lj)_im theta_l (x) theta_m,

its partial contraction c_top = (id (x) pi) varpi, the star structure
theta_i^* = -pi(kappa(rep_i)^*), the space of invariant quadratic
relations spanned by (pi (x) pi) cop(a) for a in ker eps intersect
ker pi, and the hermitian contraction delta solving

    (sigma - id) delta = c_top

subject to covariance and a congruence pinning delta modulo the
quadratic relation space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .hopf import Element, HopfAlgebra, Word, add, scale
from .linalg import Echelon, LinearMap, row_reduce
from .scalar import ONE, ZERO, Scalar

Vec = Dict[int, Scalar]                # coordinates over theta_1..theta_n
TensorVec = Dict[Tuple[int, int], Scalar]   # over theta_i (x) theta_j
Matrix = Tuple[Tuple[Scalar, ...], ...]

# coefficients attached to theta_l (x) (algebra word), for coactions
CoVec = Dict[Tuple[int, Word], Scalar]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)
                            if not (a[i][k].is_zero or b[k][j].is_zero)),
                           ZERO)
                       for j in range(n))
                 for i in range(n))


def _vec_add_into(out: Dict, key, value: Scalar) -> None:
    s = out.get(key)
    s = value if s is None else s + value
    if s.is_zero:
        out.pop(key, None)
    else:
        out[key] = s


class CalculusError(ValueError):
    """A structural defect in calculus tables."""


class Calculus:
    """First-order bicovariant calculus with exact table-driven maps."""

    def __init__(self, hopf: HopfAlgebra, basis_names: Sequence[str],
                 pi_gen: Mapping[int, Vec],
                 circ_gen: Mapping[int, Matrix],
                 representatives: Mapping[int, Element]) -> None:
        self.hopf = hopf
        self.basis_names = tuple(basis_names)
        self.n = len(self.basis_names)
        gens = range(len(hopf.generators))
        if set(pi_gen) != set(gens) or set(circ_gen) != set(gens):
            raise CalculusError("pi and circ tables must cover every "
                                "generator")
        if set(representatives) != set(range(self.n)):
            raise CalculusError("need one representative per basis form")
        self.pi_gen = {g: dict(v) for g, v in pi_gen.items()}
        self.circ_gen = {g: tuple(tuple(row) for row in m)
                         for g, m in circ_gen.items()}
        for g, m in self.circ_gen.items():
            if len(m) != self.n or any(len(row) != self.n for row in m):
                raise CalculusError(
                    f"circ matrix for {hopf.generators[g]} is not "
                    f"{self.n}x{self.n}")
        self.representatives = {i: dict(e)
                                for i, e in representatives.items()}
        self._f_word: Dict[Word, Matrix] = {(): self._identity()}
        self._pi_word: Dict[Word, Vec] = {(): {}}
        self._varpi: Dict[int, CoVec] = {}
        self._sigma: Dict[Tuple[int, int], TensorVec] = {}
        self._star_form: Dict[int, Vec] = {}

    def _identity(self) -> Matrix:
        return tuple(tuple(ONE if i == j else ZERO for j in range(self.n))
                     for i in range(self.n))

    # -- the circ action -------------------------------------------------

    def f_word(self, word: Word) -> Matrix:
        cached = self._f_word.get(word)
        if cached is not None:
            return cached
        half = self.circ_gen[word[0]] if len(word) == 1 else None
        if half is None:
            k = len(word) // 2
            half = _mat_mul(self.f_word(word[:k]), self.f_word(word[k:]))
        self._f_word[word] = half
        return half

    def f_element(self, x: Element) -> Matrix:
        acc = [[ZERO] * self.n for _ in range(self.n)]
        for w, c in x.items():
            m = self.f_word(w)
            for i in range(self.n):
                for j in range(self.n):
                    if not m[i][j].is_zero:
                        acc[i][j] = acc[i][j] + c * m[i][j]
        return tuple(tuple(row) for row in acc)

    def circ(self, vec: Vec, x: Element) -> Vec:
        """The right action (sum_i vec_i theta_i) o x."""
        out: Vec = {}
        for w, c in x.items():
            m = self.f_word(w)
            for i, vi in vec.items():
                coeff = c * vi
                for j in range(self.n):
                    if not m[i][j].is_zero:
                        _vec_add_into(out, j, coeff * m[i][j])
        return out

    # -- quantum germs ---------------------------------------------------

    def pi_word(self, word: Word) -> Vec:
        cached = self._pi_word.get(word)
        if cached is not None:
            return cached
        g, rest = word[0], word[1:]
        out = dict()
        eps_g = self.hopf.counit_table[g]
        if not eps_g.is_zero:
            for j, c in self.pi_word(rest).items():
                _vec_add_into(out, j, eps_g * c)
        head = self.pi_gen[g]
        m = self.f_word(rest)
        for i, vi in head.items():
            for j in range(self.n):
                if not m[i][j].is_zero:
                    _vec_add_into(out, j, vi * m[i][j])
        self._pi_word[word] = out
        return out

    def pi(self, x: Element) -> Vec:
        out: Vec = {}
        for w, c in x.items():
            for j, a in self.pi_word(w).items():
                _vec_add_into(out, j, c * a)
        return out

    def rep(self, i: int) -> Element:
        return self.representatives[i]

    # -- adjoint coaction on invariant forms -------------------------------

    def varpi(self, i: int) -> CoVec:
        """varpi(theta_i) = (pi (x) id) ad(rep_i) in Gamma_inv (x) A."""
        cached = self._varpi.get(i)
        if cached is not None:
            return cached
        out: CoVec = {}
        for (w1, w2), c in self.hopf.adjoint_coaction(self.rep(i)).items():
            for j, a in self.pi_word(w1).items():
                _vec_add_into(out, (j, w2), c * a)
        self._varpi[i] = out
        return out

    def v_entry(self, l: int, j: int) -> Element:
        """The matrix element v_lj with varpi(theta_j) = sum theta_l (x) v_lj."""
        out: Element = {}
        for (k, w), c in self.varpi(j).items():
            if k == l:
                _vec_add_into(out, w, c)
        return out

    def varpi_tensor(self, tv: TensorVec) -> Dict[Tuple[int, int, Word],
                                                  Scalar]:
        """Right coaction on Gamma_inv (x) Gamma_inv (legs coact, parts multiply)."""
        out: Dict[Tuple[int, int, Word], Scalar] = {}
        for (p, q), c in tv.items():
            for (l, w1), c1 in self.varpi(p).items():
                for (m, w2), c2 in self.varpi(q).items():
                    prod = self.hopf.mul({w1: ONE}, {w2: ONE})
                    for w, a in prod.items():
                        _vec_add_into(out, (l, m, w), c * c1 * c2 * a)
        return out

    # -- braiding and contractions ----------------------------------------

    def sigma(self, i: int, j: int) -> TensorVec:
        cached = self._sigma.get((i, j))
        if cached is not None:
            return cached
        out: TensorVec = {}
        for l in range(self.n):
            m = self.f_element(self.v_entry(l, j))
            for col in range(self.n):
                if not m[i][col].is_zero:
                    _vec_add_into(out, (l, col), m[i][col])
        self._sigma[(i, j)] = out
        return out

    def sigma_apply(self, tv: TensorVec) -> TensorVec:
        out: TensorVec = {}
        for (i, j), c in tv.items():
            for key, a in self.sigma(i, j).items():
                _vec_add_into(out, key, c * a)
        return out

    def c_top(self, j: int) -> TensorVec:
        """(id (x) pi) varpi(theta_j) in Gamma_inv (x) Gamma_inv."""
        out: TensorVec = {}
        for (l, w), c in self.varpi(j).items():
            for m, a in self.pi_word(w).items():
                _vec_add_into(out, (l, m), c * a)
        return out

    def mc_tensor(self, i: int) -> TensorVec:
        """-(pi (x) pi) cop(rep_i), the tensor computing d theta_i."""
        out: TensorVec = {}
        for (w1, w2), c in self.hopf.coproduct(self.rep(i)).items():
            for l, a in self.pi_word(w1).items():
                for m, b in self.pi_word(w2).items():
                    _vec_add_into(out, (l, m), -(c * a * b))
        return out

    # -- star structure ----------------------------------------------------

    def star_form(self, i: int) -> Vec:
        """theta_i^* = -pi(kappa(rep_i)^*)."""
        cached = self._star_form.get(i)
        if cached is None:
            x = self.hopf.star(self.hopf.antipode(self.rep(i)))
            cached = {j: -c for j, c in self.pi(x).items()}
            self._star_form[i] = cached
        return cached

    def star_vec(self, vec: Vec) -> Vec:
        out: Vec = {}
        for i, c in vec.items():
            for j, a in self.star_form(i).items():
                _vec_add_into(out, j, c.conj() * a)
        return out

    def star_tensor(self, tv: TensorVec) -> TensorVec:
        """(eta (x) theta)^* = -theta^* (x) eta^* on coordinates."""
        out: TensorVec = {}
        for (i, j), c in tv.items():
            si = self.star_form(i)
            sj = self.star_form(j)
            for m, a in sj.items():
                for l, b in si.items():
                    _vec_add_into(out, (m, l), -(c.conj() * a * b))
        return out

    # -- invariant quadratic relations --------------------------------------

    def ker_eps_pi(self, degree: int) -> List[Element]:
        """Basis of ker eps intersect ker pi among words up to degree."""
        words = self.hopf.normal_words_up_to(degree)
        columns = {}
        for w in words:
            col: Dict = {}
            eps = self.hopf.counit({w: ONE})
            if not eps.is_zero:
                col["eps"] = eps
            for j, c in self.pi_word(w).items():
                col[("pi", j)] = c
            columns[w] = col
        fmap = LinearMap(words, columns)
        return [dict(v) for v in linalg.kernel_basis(fmap)]

    def quadratic_relations(self, max_degree: int = 6) -> Echelon:
        """Echelon span of (pi (x) pi) cop(a), a in ker eps intersect ker pi.

        The span is computed from elements supported on words of bounded
        degree; the bound grows until the rank stabilizes (the target
        space is finite dimensional) or max_degree is hit.
        """
        ech = Echelon()
        last_rank = -1
        for degree in range(2, max_degree + 1):
            for a in self.ker_eps_pi(degree):
                q: TensorVec = {}
                for (w1, w2), c in self.hopf.coproduct(a).items():
                    for l, x in self.pi_word(w1).items():
                        for m, y in self.pi_word(w2).items():
                            _vec_add_into(q, (l, m), c * x * y)
                ech.insert(q)
            if ech.rank == last_rank:
                break
            last_rank = ech.rank
        return ech

    # -- validation ----------------------------------------------------------

    def validate(self, max_degree: int = 3) -> List[str]:
        """Check the defining compatibilities; return named failures."""
        failures: List[str] = []
        H = self.hopf
        names = H.generators

        # representatives hit their forms
        for i in range(self.n):
            got = self.pi(self.rep(i))
            if got != {i: ONE}:
                failures.append(
                    f"representative of {self.basis_names[i]} has the "
                    f"wrong germ")

        # germs respect the rewrite rules
        for lhs, rhs in H.rules.items():
            if self.pi_word(lhs) != self.pi(dict(rhs)):
                failures.append(
                    f"pi is not well defined on rule {H.word_str(lhs)}")

        # circ matrices respect the rewrite rules
        for lhs, rhs in H.rules.items():
            if self.f_word(lhs) != self.f_element(dict(rhs)):
                failures.append(
                    f"circ is not well defined on rule {H.word_str(lhs)}")

        # unit acts as counit: F(1) = id holds by construction; check the
        # cocycle rule against a direct evaluation on short products
        for w in H.normal_words_up_to(min(max_degree, 2)):
            for g in range(len(names)):
                lhs = self.pi(H.mul({(g,): ONE}, {w: ONE}))
                rhs = dict(self.circ(self.pi_gen[g], {w: ONE}))
                eps_g = H.counit_table[g]
                for j, c in self.pi_word(w).items():
                    _vec_add_into(rhs, j, eps_g * c)
                if lhs != rhs:
                    failures.append(
                        f"germ cocycle rule fails on "
                        f"{names[g]}*{H.word_str(w)}")

        # bicovariance: varpi intertwines the circ action,
        #   varpi(theta_i o b) =
        #       sum_k (theta_k o b(2)) (x) kappa(b(1)) v_ki b(3)
        for b in range(len(names)):
            for i in range(self.n):
                lhs: CoVec = {}
                fb = self.circ_gen[b]
                for m in range(self.n):
                    if fb[i][m].is_zero:
                        continue
                    for (l, w), c in self.varpi(m).items():
                        _vec_add_into(lhs, (l, w), fb[i][m] * c)
                rhs: CoVec = {}
                for (w1, w2, w3), c in H.split({(b,): ONE}, 3).items():
                    kap = H.antipode({w1: ONE})
                    for (k, wv), cv in self.varpi(i).items():
                        acted = self.circ({k: ONE}, {w2: ONE})
                        tail = H.product(kap, {wv: ONE}, {w3: ONE})
                        for l, ca in acted.items():
                            for w, ct in tail.items():
                                _vec_add_into(rhs, (l, w), c * cv * ca * ct)
                if lhs != rhs:
                    failures.append(
                        f"adjoint coaction does not intertwine circ on "
                        f"generator {names[b]} (form "
                        f"{self.basis_names[i]})")

        # star compatibility: (theta o g)^* = theta^* o kappa(g)^*
        for g in range(len(names)):
            twisted = H.star(H.antipode({(g,): ONE}))
            for i in range(self.n):
                lhs = self.star_vec(self.circ({i: ONE}, {(g,): ONE}))
                rhs = self.circ(self.star_form(i), twisted)
                if lhs != rhs:
                    failures.append(
                        f"star does not intertwine circ on generator "
                        f"{names[g]} (form {self.basis_names[i]})")

        # star is involutive on forms
        for i in range(self.n):
            if self.star_vec(self.star_form(i)) != {i: ONE}:
                failures.append(
                    f"star is not involutive on {self.basis_names[i]}")

        # germs and star: pi(a)^* = -pi(kappa(a)^*) on short words
        for w in H.normal_words_up_to(min(max_degree, 2)):
            lhs = self.star_vec(self.pi_word(w))
            rhs = {j: -c
                   for j, c in self.pi(H.star(H._antipode_word(w))).items()}
            if lhs != rhs:
                failures.append(
                    f"star rule for germs fails on {H.word_str(w)}")

        # the germ of any element is coherent with the adjoint coaction:
        #   varpi(pi(a)) = (pi (x) id) ad(a)
        for w in H.normal_words_up_to(max_degree):
            lhs: CoVec = {}
            for i, c in self.pi_word(w).items():
                for key, a in self.varpi(i).items():
                    _vec_add_into(lhs, key, c * a)
            rhs: CoVec = {}
            for (w1, w2), c in H.adjoint_coaction({w: ONE}).items():
                for j, a in self.pi_word(w1).items():
                    _vec_add_into(rhs, (j, w2), c * a)
            if lhs != rhs:
                failures.append(
                    f"varpi disagrees with the adjoint coaction on "
                    f"{H.word_str(w)}")

        # braid relation for sigma on Gamma_inv^(x)3
        if self._braid_defect():
            failures.append("sigma does not satisfy the braid relation")

        # invariant quadratic relations are sigma-fixed
        rel = self.quadratic_relations()
        for q in rel.basis():
            if self.sigma_apply(q) != q:
                failures.append(
                    "a quadratic relation is not fixed by sigma")
                break
        return failures

    def _braid_defect(self) -> bool:
        def s12(t):
            out: Dict[Tuple[int, int, int], Scalar] = {}
            for (i, j, k), c in t.items():
                for (l, m), a in self.sigma(i, j).items():
                    _vec_add_into(out, (l, m, k), c * a)
            return out

        def s23(t):
            out: Dict[Tuple[int, int, int], Scalar] = {}
            for (i, j, k), c in t.items():
                for (l, m), a in self.sigma(j, k).items():
                    _vec_add_into(out, (i, l, m), c * a)
            return out

        for i, j, k in itertools.product(range(self.n), repeat=3):
            t = {(i, j, k): ONE}
            if s12(s23(s12(t))) != s23(s12(s23(t))):
                return True
        return False


@dataclass
class DeltaReport:
    """Outcome of the contraction-map derivation."""

    delta: Dict[int, TensorVec]
    solution_dim: int
    hermitian: bool
    failures: List[str] = field(default_factory=list)


def derive_delta(cal: Calculus, max_degree: int = 6) -> DeltaReport:
    """Solve for the contraction delta: Gamma_inv -> Gamma_inv (x) Gamma_inv.

    Constraints, all linear over the scalar field:

      (a) (sigma - id) delta(theta_i) = c_top(theta_i);
      (b) delta intertwines the adjoint coactions;
      (c) delta(theta_i) = -(pi (x) pi) cop(rep_i) modulo the invariant
          quadratic relation space.

    The canonical representative is the particular solution reduced
    modulo the homogeneous solution space; hermiticity
    delta(x^*) = delta(x)^* is verified afterwards (and restored by
    averaging when the plain reduction loses it).
    """
    n = cal.n
    unknowns = [(i, l, m) for i in range(n) for l in range(n)
                for m in range(n)]
    rows: List[Tuple[Tuple, Dict[Tuple, Scalar], Scalar]] = []

    # (a) braiding equation
    for i in range(n):
        target = cal.c_top(i)
        eq: Dict[Tuple, Dict[Tuple, Scalar]] = {}
        for p in range(n):
            for q in range(n):
                col: Dict[Tuple, Scalar] = {}
                for key, c in cal.sigma(p, q).items():
                    _vec_add_into(col, key, c)
                _vec_add_into(col, (p, q), -ONE)
                for key, c in col.items():
                    eq.setdefault(key, {})[(i, p, q)] = c
        for key, coeffs in eq.items():
            rows.append((("braid", i, key), coeffs, target.get(key, ZERO)))

    # (b) coaction intertwining
    for i in range(n):
        eq = {}
        for p in range(n):
            for q in range(n):
                for (l, m, w), c in cal.varpi_tensor({(p, q): ONE}).items():
                    eq.setdefault((l, m, w), {})[(i, p, q)] = \
                        eq.get((l, m, w), {}).get((i, p, q), ZERO) + c
        for k in range(n):
            for w, cv in cal.v_entry(k, i).items():
                for l in range(n):
                    for m in range(n):
                        d = eq.setdefault((l, m, w), {})
                        d[(k, l, m)] = d.get((k, l, m), ZERO) - cv
        for key, coeffs in eq.items():
            coeffs = {u: c for u, c in coeffs.items() if not c.is_zero}
            if coeffs:
                rows.append((("coact", i, key), coeffs, ZERO))

    # (c) congruence modulo quadratic relations
    rel = cal.quadratic_relations(max_degree)
    reduce_cols = {(l, m): rel.reduce({(l, m): ONE})
                   for l in range(n) for m in range(n)}
    for i in range(n):
        target = rel.reduce(cal.mc_tensor(i))
        eq = {}
        for (p, q), red in reduce_cols.items():
            for key, c in red.items():
                eq.setdefault(key, {})[(i, p, q)] = c
        keys = set(eq) | set(target)
        for key in keys:
            rows.append((("cong", i, key), eq.get(key, {}),
                         target.get(key, ZERO)))

    columns: Dict[Tuple, Dict[Tuple, Scalar]] = {u: {} for u in unknowns}
    rhs: Dict[Tuple, Scalar] = {}
    for eq_key, coeffs, b in rows:
        for u, c in coeffs.items():
            if not c.is_zero:
                columns[u][eq_key] = c
        if not b.is_zero:
            rhs[eq_key] = b
    system = LinearMap(unknowns, columns)
    particular = linalg.solve(system, rhs)
    failures: List[str] = []
    if particular is None:
        return DeltaReport({}, 0, False,
                           ["the contraction constraints are inconsistent"])
    kernel = linalg.kernel_basis(system)
    hom = row_reduce(kernel)
    reduced = hom.reduce(particular)

    def unpack(sol: Dict[Tuple, Scalar]) -> Dict[int, TensorVec]:
        out: Dict[int, TensorVec] = {i: {} for i in range(n)}
        for (i, l, m), c in sol.items():
            if not c.is_zero:
                out[i][(l, m)] = c
        return out

    def is_hermitian(delta: Dict[int, TensorVec]) -> bool:
        for i in range(n):
            lhs: TensorVec = {}
            for j, c in cal.star_form(i).items():
                for key, a in delta[j].items():
                    _vec_add_into(lhs, key, c * a)
            if lhs != cal.star_tensor(delta[i]):
                return False
        return True

    delta = unpack(reduced)
    herm = is_hermitian(delta)
    if not herm:
        # average with the star transport; the constraint set is
        # star-stable, so the average still solves it
        avg: Dict[Tuple, Scalar] = {}
        for i in range(n):
            transported: TensorVec = {}
            star_i = cal.star_form(i)
            for j, c in star_i.items():
                for key, a in delta[j].items():
                    _vec_add_into(transported, key, c * a)
            # delta^dagger(theta_i) = (delta(theta_i^*))^* read backwards:
            # apply star transport to delta then star the output
            back = cal.star_tensor(transported)
            for (l, m), c in delta[i].items():
                _vec_add_into(avg, (i, l, m), c / 2)
            for (l, m), c in back.items():
                _vec_add_into(avg, (i, l, m), c / 2)
        if system.apply(avg) == rhs:
            reduced2 = hom.reduce(avg)
            delta2 = unpack(reduced2)
            if is_hermitian(delta2):
                delta, herm = delta2, True
            else:
                delta2 = unpack(avg)
                if is_hermitian(delta2):
                    delta, herm = delta2, True
        if not herm:
            failures.append("no hermitian canonical contraction found")
    return DeltaReport(delta, len(kernel), herm, failures)
