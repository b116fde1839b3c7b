"""One test per acceptance criterion, each at its stated tolerance and time budget.

Oracles are independent of the code under test: brute-force lattice loops,
binomial counts, scipy quadrature and direct polynomial expansion.
"""

import itertools
import math
import random
import time
from fractions import Fraction as F

from scipy.integrate import quad

from origami_rr.characters import Character, dimension_of, specialize
from origami_rr.corpus import polytope_corpus, template_corpus
from origami_rr.cylinder import kernel_dimension, mode_certificate, rho, rho_integral
from origami_rr.geometry import NotDelzant, Polytope, is_delzant
from origami_rr.localization import CoveringParams, audit_localization, max_admissible_epsilon
from origami_rr.oracle import fixed_point_character, generic_directions
from origami_rr.quantization import danilov_polytope, danilov_template
from origami_rr.template import (
    gen_simplex,
    gen_sphere_template,
    parse_template,
    render_template,
    single_polytope_template,
    two_copy_template,
)


def test_criterion_1_sphere_vanishing(acceptance_log):
    worst, ok = 0.0, True
    for n, k in itertools.product((1, 2, 3), (1, 2, 3)):
        start = time.perf_counter()
        ch = danilov_template(gen_sphere_template(n, k)).character
        worst = max(worst, time.perf_counter() - start)
        ok &= ch.is_zero()
    ok &= worst < 1.0
    acceptance_log("1 sphere vanishing", ok, f"9 templates exactly zero, slowest {worst:.3f}s (< 1s)")
    assert ok


def test_criterion_2_simplex_counts(acceptance_log):
    start = time.perf_counter()
    ok = True
    for n in (1, 2, 3):
        for k in range(1, 6):
            ch = danilov_polytope(gen_simplex(n, k))
            brute = {x for x in itertools.product(range(k + 1), repeat=n) if sum(x) <= k}
            ok &= set(ch.support()) == brute
            ok &= all(c == 1 for c in ch.terms.values())
            ok &= dimension_of(ch) == math.comb(n + k, n) == len(brute)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 5.0
    acceptance_log("2 simplex special case", ok, f"15 simplices, support and count exact, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_3_oracle_equivalence(acceptance_log):
    start = time.perf_counter()
    corpus = polytope_corpus()
    ok, checked = len(corpus) >= 20, 0
    for name, P in corpus.items():
        lattice = danilov_polytope(P)
        for a in itertools.islice(generic_directions([P]), 3):
            fp = fixed_point_character(P, a)
            ok &= fp.denominator == (1,) or list(fp.denominator) == [1]
            ok &= fp.is_laurent() and fp.to_laurent() == specialize(lattice, a)
            checked += 1
    elapsed = time.perf_counter() - start
    ok &= checked == 3 * len(corpus) and elapsed < 30.0
    acceptance_log("3 oracle equivalence", ok, f"{len(corpus)} polytopes x 3 directions, {elapsed:.2f}s (< 30s)")
    assert ok


def test_criterion_4_localization_audit(acceptance_log):
    start = time.perf_counter()
    ok, runs = True, 0
    templates = template_corpus()
    for name, t in templates.items():
        bound = max_admissible_epsilon(t)
        eps = bound.suggested_epsilon()
        total = danilov_template(t).character
        for e in (eps, eps / 2, eps / 3):
            ok &= bound.admits(e)
            r = audit_localization(t, CoveringParams(e))
            ok &= r.passed and r.total == total and not r.ambiguous
            # each lattice point lands in exactly one region
            for sp in t.polytopes:
                tagged = sorted(x for entry in r.regions if entry.tag.polytope == sp.name for x in entry.points)
                ok &= tagged == sorted(sp.polytope.lattice_points)
            for entry in r.regions:
                if entry.tag.kind in ("fold_band", "crack"):
                    ok &= not entry.points
            runs += 1
    pairs_zero = True
    for P, facet in ((polytope_corpus()["square"], 0), (polytope_corpus()["hirzebruch2"], 2), (gen_simplex(2, 3), 2)):
        t = two_copy_template(P, facet)
        r = audit_localization(t, CoveringParams(max_admissible_epsilon(t).suggested_epsilon()))
        pairs_zero &= all(c.is_zero() for c in r.region_pairing().values())
    elapsed = time.perf_counter() - start
    ok &= pairs_zero and elapsed < 30.0
    acceptance_log("4 localization audit", ok, f"{len(templates)} templates x 3 eps, two-copy pairing zero, {elapsed:.2f}s (< 30s)")
    assert ok


def test_criterion_5_folded_cylinder(acceptance_log):
    start = time.perf_counter()
    ok = True
    for t in (0, 1, 10):
        rep = kernel_dimension(t, range(-50, 51))
        ok &= rep.dimension == 0 and rep.index == 0 and rep.valid
        for m in range(-50, 51):
            c = mode_certificate(m, t)
            ok &= (c.slope > 0) == (m > 0) and c.decays_at_plus != c.decays_at_minus
    rng = random.Random(5)
    worst = 0.0
    for _ in range(100):
        r = rng.uniform(-3.0, 3.0)
        numeric, _ = quad(lambda s: float(rho(F(s))), 0.0, r, points=[-0.5, -0.25, 0.25, 0.5], epsabs=1e-13)
        worst = max(worst, abs(float(rho_integral(F(r))) - numeric))
    elapsed = time.perf_counter() - start
    ok &= worst < 1e-10 and elapsed < 5.0
    acceptance_log("5 folded cylinder", ok, f"kernel 0 for t in 0,1,10 |m|<=50, quad error {worst:.1e}, {elapsed:.2f}s (< 5s)")
    assert ok


def _random_char(rng, n):
    return Character(n, {tuple(rng.randint(-3, 3) for _ in range(n)): rng.randint(-4, 4) for _ in range(rng.randint(0, 5))})


def _eval(c, point):
    # direct evaluation at a rational point, independent of the ring code
    return sum(coef * math.prod(F(p) ** e for p, e in zip(point, exp)) for exp, coef in c.terms.items())


def test_criterion_6_property_suites(acceptance_log):
    start = time.perf_counter()
    rng = random.Random(6)
    ring_ok = True
    for _ in range(1000):
        n = rng.randint(1, 3)
        a, b, c = (_random_char(rng, n) for _ in range(3))
        ring_ok &= a + b == b + a and a * b == b * a
        ring_ok &= (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
        ring_ok &= a * (b + c) == a * b + a * c and (a - a).is_zero() and a * Character.one(n) == a
        d = tuple(rng.randint(-3, 3) for _ in range(n))
        ring_ok &= specialize(a * b, d) == specialize(a, d) * specialize(b, d)
        ring_ok &= specialize(a + b, d) == specialize(a, d) + specialize(b, d)
        pt = [F(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n)]
        ring_ok &= _eval(a * b, pt) == _eval(a, pt) * _eval(b, pt)

    # triangle with vertices (0,0), (2,0), (1,1): cone at (0,0) has determinant 2
    tri = Polytope.from_inequalities([((0, 1), 0), ((1, -1), 0), ((-1, -1), 2)])
    reject_ok = not is_delzant(tri).accepted
    try:
        danilov_polytope(tri)
        reject_ok = False
    except NotDelzant:
        pass

    cov_ok = True
    for P in list(polytope_corpus().values())[::3]:
        n = P.dim
        base = danilov_polytope(P)
        s = tuple(rng.randint(-3, 3) for _ in range(n))
        cov_ok &= danilov_polytope(P.translated(s)) == base * Character(n, {s: 1})
        g = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        if n > 1:
            g[0][1] = rng.choice((-2, -1, 1, 2))
            g = [g[1], g[0]] + g[2:]
        image = Character(n, {tuple(sum(g[i][j] * e[j] for j in range(n)) for i in range(n)): c for e, c in base.terms.items()})
        cov_ok &= danilov_polytope(P.transformed(g)) == image

    trip_ok = True
    for t in template_corpus().values():
        text = render_template(t)
        again = parse_template(text)
        trip_ok &= render_template(again) == text and again == t
    elapsed = time.perf_counter() - start
    ok = ring_ok and reject_ok and cov_ok and trip_ok and elapsed < 10.0
    detail = f"ring {ring_ok}, det-2 rejected {reject_ok}, covariance {cov_ok}, round trip {trip_ok}, {elapsed:.2f}s (< 10s)"
    acceptance_log("6 property suites", ok, detail)
    assert ok
