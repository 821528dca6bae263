"""Tropical cycles: balancing, closedness, Dirac currents, push-forward."""

import random
from fractions import Fraction

from conftest import box, rand_form, segment

from tropform.cycle import (
    Current,
    WeightedComplex,
    check_balancing,
    closedness_witness,
    current_eval,
    projection_check,
    pushforward,
    zero_cycle,
)
from tropform.hypersurface import corner_locus, tropical_polynomial
from tropform.integrate import integrate_complex, integrate_polytope
from tropform.polyhedra import from_halfspaces
from tropform.superform import AffineMap, Polynomial, basis_form, d_prime


def P(r, terms):
    return Polynomial(r, {tuple(e): Fraction(c) for e, c in terms.items()})


def ray(direction, apex=None):
    """Ray from apex (default origin) in the given integer direction."""
    from tropform.polyhedra import from_generators
    r = len(direction)
    if apex is None:
        apex = tuple(0 for _ in range(r))
    return from_generators([apex], [direction], [], r)


def tropical_line():
    return WeightedComplex([(ray((1, 0)), 1), (ray((0, 1)), 1),
                            (ray((-1, -1)), 1)])


def test_balanced_line():
    assert check_balancing(tropical_line()) == []
    assert closedness_witness(tropical_line()) == []


def test_unbalanced_two_rays():
    wc = WeightedComplex([(ray((1, 0)), 1), (ray((0, 1)), 1)])
    violations = check_balancing(wc)
    assert len(violations) == 1
    rho, t = violations[0]
    assert rho.dim == 0
    # outward vectors across the origin point away from each ray, so the
    # weighted sum is minus the sum of the primitive ray directions
    assert tuple(t) == (-1, -1)
    witnesses = closedness_witness(wc)
    assert len(witnesses) == 1
    assert witnesses[0][0].key() == rho.key()


def test_balancing_zero_and_point_cycles():
    assert check_balancing(zero_cycle()) == []
    pts = WeightedComplex([(segment((0,), (0,)), 3)])
    assert check_balancing(pts) == []
    assert closedness_witness(pts) == []


def test_balancing_weight_sensitivity():
    # doubling one weight of the line breaks balancing at the origin
    wc = WeightedComplex([(ray((1, 0)), 2), (ray((0, 1)), 1),
                          (ray((-1, -1)), 1)])
    assert len(check_balancing(wc)) == 1
    # zero-weight cells are ignored
    wc2 = WeightedComplex([(ray((1, 0)), 1), (ray((0, 1)), 1),
                           (ray((-1, -1)), 1), (ray((1, 1)), 0)])
    assert check_balancing(wc2) == []


def test_balancing_matches_closedness_corpus(seed=41):
    rng = random.Random(seed)
    corpus = []
    for _ in range(10):
        terms = [((1, 0), Fraction(rng.randint(-3, 3))),
                 ((0, 1), Fraction(rng.randint(-3, 3))),
                 ((0, 0), Fraction(rng.randint(-3, 3))),
                 ((1, 1), Fraction(rng.randint(-3, 3)))]
        corpus.append(corner_locus(tropical_polynomial(terms, 2)))
    for wc in corpus:
        assert check_balancing(wc) == []
        assert closedness_witness(wc) == []
        cells = wc.weighted_cells()
        broken = WeightedComplex([(c, m + (1 if i == 0 else 0))
                                  for i, (c, m) in enumerate(cells)])
        bal = check_balancing(broken)
        wit = closedness_witness(broken)
        assert bool(bal) == bool(wit)
        assert set(r.key() for r, _ in bal) == set(r.key() for r, _ in wit)


def test_dirac_evaluation():
    wc = WeightedComplex([(segment((0,), (1,)), 1), (segment((1,), (2,)), 1)])
    a = basis_form(1, (0,), (0,), P(1, {(1,): 1}))
    cur = Current.dirac(wc)
    window = box(1, -5, 5)
    assert current_eval(cur, a, window) == 2
    assert current_eval(cur, a, window) == integrate_complex(wc, a)


def test_dirac_operator_sign():
    # (d' delta)(alpha) = -delta(d' alpha) for a 1-dim Dirac on (0,1)-forms
    wc = WeightedComplex([(segment((0,), (2,)), 1)])
    alpha = basis_form(1, (), (0,), P(1, {(2,): 1}))
    window = box(1, -5, 5)
    d_cur = Current.dirac(wc).apply("d_prime")
    plain = Current.dirac(wc)
    assert current_eval(d_cur, alpha, window) == \
        -current_eval(plain, d_prime(alpha), window)


def test_embedded_current():
    from tropform.superform import function_form
    omega = function_form(P(2, {(0, 0): 1}))
    cur = Current.embedded(omega)
    a = rand_form(random.Random(3), 2, 2, 2, deg=2)
    window = box(2)
    assert current_eval(cur, a, window) == integrate_polytope(window, a)


def test_pushforward_scaling():
    f = AffineMap([[2]], [Fraction(0)])
    wc = WeightedComplex([(segment((0,), (1,)), 1)])
    out = pushforward(f, wc)
    cells = out.weighted_cells()
    assert len(cells) == 1
    cell, m = cells[0]
    assert cell == segment((0,), (2,))
    assert m == 2


def test_pushforward_projections():
    proj1 = AffineMap([[1, 0]], [Fraction(0)])
    proj2 = AffineMap([[0, 1]], [Fraction(0)])
    diag = WeightedComplex([(segment((0, 0), (1, 1)), 1)])
    out = pushforward(proj1, diag)
    assert out.weighted_cells()[0][0] == segment((0,), (1,))
    assert out.weighted_cells()[0][1] == 1
    steep = WeightedComplex([(segment((0, 0), (1, 2)), 1)])
    out1 = pushforward(proj1, steep)
    assert out1.weighted_cells() == [(segment((0,), (1,)), 1)]
    # second projection maps Z(1,2) onto 2Z, so the lattice index is 2;
    # the projection formula pins this weight (see test below)
    out2 = pushforward(proj2, steep)
    assert out2.weighted_cells() == [(segment((0,), (2,)), 2)]


def test_pushforward_weight_forced_by_projection_formula():
    proj2 = AffineMap([[0, 1]], [Fraction(0)])
    steep = WeightedComplex([(segment((0, 0), (1, 2)), 1)])
    a = basis_form(1, (0,), (0,))
    left, right = projection_check(proj2, steep, a, box(1, 0, 2))
    assert left == right == 4


def test_pushforward_drops_collapsed_cells():
    proj = AffineMap([[1, 0]], [Fraction(0)])
    vert = WeightedComplex([(segment((0, 0), (0, 1)), 1)])
    assert pushforward(proj, vert).is_zero
    assert pushforward(proj, zero_cycle()).is_zero


def test_pushforward_cancellation():
    # opposite weights on mirrored segments cancel in the image
    f = AffineMap([[1, 0]], [Fraction(0)])
    wc = WeightedComplex([(segment((0, 0), (1, 1)), 1),
                          (segment((0, 1), (1, 0)), -1)])
    assert pushforward(f, wc).is_zero


def test_pushforward_preserves_balancing(seed=43):
    rng = random.Random(seed)
    done = 0
    while done < 8:
        terms = [((1, 0), Fraction(rng.randint(-2, 2))),
                 ((0, 1), Fraction(rng.randint(-2, 2))),
                 ((0, 0), Fraction(rng.randint(-2, 2))),
                 ((2, 1), Fraction(rng.randint(-2, 2)))]
        wc = corner_locus(tropical_polynomial(terms, 2))
        assert check_balancing(wc) == []
        m = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
            continue
        f = AffineMap(m, [Fraction(0), Fraction(0)])
        out = pushforward(f, wc)
        assert check_balancing(out) == []
        done += 1


def test_pushforward_functoriality():
    f = AffineMap([[2]], [Fraction(0)])
    g = AffineMap([[3]], [Fraction(1)])
    wc = WeightedComplex([(segment((0,), (1,)), 1)])
    gf = AffineMap([[6]], [Fraction(1)])
    a = pushforward(gf, wc)
    b = pushforward(g, pushforward(f, wc))
    assert a.weighted_cells() == b.weighted_cells()


def test_projection_check_times2():
    f = AffineMap([[2]], [Fraction(0)])
    wc = WeightedComplex([(segment((0,), (1,)), 1)])
    a = basis_form(1, (0,), (0,))
    window = box(1, 0, 2)
    left, right = projection_check(f, wc, a, window)
    assert left == right == 4


def test_projection_check_identity_and_diagonal():
    ident = AffineMap([[1]], [Fraction(0)])
    wc = WeightedComplex([(segment((0,), (3,)), 2)])
    a = basis_form(1, (0,), (0,), P(1, {(1,): 1}))
    left, right = projection_check(ident, wc, a, box(1, 0, 3))
    assert left == right
    proj = AffineMap([[1, 0]], [Fraction(0)])
    diag = WeightedComplex([(segment((0, 0), (1, 1)), 1)])
    left, right = projection_check(proj, diag, a, box(1, 0, 1))
    assert left == right


def test_projection_check_random(seed=47):
    rng = random.Random(seed)
    done = 0
    while done < 8:
        m = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
            continue
        f = AffineMap(m, [Fraction(rng.randint(-1, 1)), Fraction(0)])
        terms = [((1, 0), Fraction(rng.randint(-2, 2))),
                 ((0, 1), Fraction(rng.randint(-2, 2))),
                 ((0, 0), Fraction(rng.randint(-2, 2)))]
        wc = corner_locus(tropical_polynomial(terms, 2))
        a = rand_form(rng, 2, 1, 1, deg=1)
        left, right = projection_check(f, wc, a, box(2, -4, 4))
        assert left == right
        done += 1
