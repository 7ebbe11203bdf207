#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

#include "ksr/distribution.hpp"
#include "ksr/errors.hpp"
#include "ksr/multiaffine.hpp"
#include "ksr/ratmatrix.hpp"
#include "ksr/univariate.hpp"
#include "ksr/zxpoly.hpp"

using namespace ksr;

namespace {

UnivariatePoly upoly(std::vector<long> coeffs) {
    std::vector<Rat> c;
    for (long x : coeffs) c.push_back(Rat(x));
    return UnivariatePoly(std::move(c));
}

UnivariatePoly from_int_roots(std::vector<long> roots) {
    std::vector<Rat> r;
    for (long x : roots) r.push_back(Rat(x));
    return UnivariatePoly::from_roots(r);
}

// independent real-rootedness oracle: companion-matrix eigenvalues
bool companion_real_rooted(const UnivariatePoly& p) {
    int n = p.degree();
    if (n <= 0) return true;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -to_double(p.coeff(i) / p.leading());
    Eigen::EigenSolver<Eigen::MatrixXd> es(c);
    return es.eigenvalues().imag().cwiseAbs().maxCoeff() < 1e-8;
}

}  // namespace

TEST_CASE("univariate arithmetic and evaluation") {
    UnivariatePoly p = upoly({-2, 0, 1});  // x^2 - 2
    CHECK(p.degree() == 2);
    CHECK(p.eval(Rat(2)) == Rat(2));
    CHECK(p.derivative() == upoly({0, 2}));
    CHECK((p * p).degree() == 4);
    CHECK(p.compose_x_squared() == upoly({-2, 0, 0, 0, 1}));

    auto [q, r] = divmod(upoly({-2, 0, 1}), upoly({-1, 1}));  // / (x-1)
    CHECK(q == upoly({1, 1}));
    CHECK(r == upoly({-1}));

    CHECK(poly_gcd(from_int_roots({1, 2}), from_int_roots({2, 3})) == from_int_roots({2}));
    CHECK(squarefree_part(from_int_roots({1, 1, 2})) == from_int_roots({1, 2}));
}

TEST_CASE("is_real_rooted on the named examples") {
    CHECK(is_real_rooted(upoly({-2, 0, 1})));        // x^2 - 2
    CHECK_FALSE(is_real_rooted(upoly({1, 0, 1})));   // x^2 + 1
    CHECK(is_real_rooted(from_int_roots({1, 1})));   // (x-1)^2, multiplicity case
    CHECK_THROWS_AS(is_real_rooted(UnivariatePoly::zero()), PreconditionError);
}

TEST_CASE("is_real_rooted agrees with the companion-matrix oracle") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> root_pick(-6, 6);
    std::uniform_int_distribution<int> deg_pick(1, 8);
    int checked = 0;
    for (int t = 0; t < 100; ++t) {
        // well-separated integer roots: the float oracle is reliable here
        int n = deg_pick(rng);
        std::vector<long> roots;
        std::vector<bool> used(13, false);
        for (int i = 0; i < n; ++i) {
            long r = root_pick(rng);
            if (used[r + 6]) continue;
            used[r + 6] = true;
            roots.push_back(r);
        }
        if (roots.empty()) continue;
        UnivariatePoly p = from_int_roots(roots);
        CHECK(is_real_rooted(p));
        CHECK(companion_real_rooted(p));
        ++checked;
    }
    CHECK(checked >= 90);

    std::uniform_int_distribution<long> coeff_pick(-6, 6);
    for (int t = 0; t < 100; ++t) {
        int n = deg_pick(rng);
        std::vector<Rat> c(n + 1);
        for (int i = 0; i <= n; ++i) c[i] = Rat(coeff_pick(rng));
        c[n] = Rat(coeff_pick(rng) * 2 + 1);  // nonzero leading
        UnivariatePoly p{std::move(c)};
        CHECK(is_real_rooted(p) == companion_real_rooted(p));
    }
}

TEST_CASE("max_real_root localization") {
    Rat tol(1, 1000000000);
    CHECK(max_real_root(upoly({-2, 0, 1}), tol) == doctest::Approx(1.414213562).epsilon(1e-8));
    CHECK(max_real_root(upoly({0, -3, 1}), tol) == doctest::Approx(3.0));  // x(x-3)
    UnivariatePoly p = upoly({-2, 0, 1}) * upoly({-3, 0, 1});
    CHECK(max_real_root(p, tol) == doctest::Approx(1.732050808).epsilon(1e-8));

    // strictly positive just beyond the localized root
    double r = max_real_root(p, tol);
    Rat probe = rat_from_double(r, 48) + 2 * tol;
    CHECK(sgn(p.eval(probe)) > 0);
}

TEST_CASE("is_interlacing examples including boundary contact") {
    CHECK(is_interlacing(from_int_roots({2}), from_int_roots({1, 3})));
    CHECK_FALSE(is_interlacing(from_int_roots({5}), from_int_roots({1, 3})));
    CHECK(is_interlacing(from_int_roots({1}), from_int_roots({1, 3})));  // shared root allowed
    CHECK_THROWS_AS(is_interlacing(from_int_roots({1, 2}), from_int_roots({1, 3})),
                    InvalidInputError);
    // singleton family: interlacing implies the (trivial) common test passes
    CHECK(common_interlacing_test({from_int_roots({1, 3})}, 16));
}

TEST_CASE("common_interlacing_test falsifier") {
    // quadratic-discriminant oracle for the positive case
    UnivariatePoly f = from_int_roots({1, 3}), g = from_int_roots({2, 4});
    for (int j = 0; j <= 16; ++j) {
        Rat lam(j, 16);
        UnivariatePoly mix = f * lam + g * (Rat(1) - lam);
        Rat disc = mix.coeff(1) * mix.coeff(1) - 4 * mix.coeff(0) * mix.coeff(2);
        CHECK(sgn(disc) >= 0);
    }
    CHECK(common_interlacing_test({f, g}, 64));

    // (x-1)(x-2) and (x-3)(x-4): midpoint combination x^2-5x+7, discriminant -3
    UnivariatePoly a = from_int_roots({1, 2}), b = from_int_roots({3, 4});
    UnivariatePoly mid = (a + b) * Rat(1, 2);
    CHECK(mid == upoly({7, -5, 1}));
    CHECK_FALSE(common_interlacing_test({a, b}, 64));

    CHECK(common_interlacing_test({f, f}, 8));
    CHECK_THROWS_AS(common_interlacing_test({}, 8), InvalidInputError);
}

TEST_CASE("char_poly_x2 examples and substitution identity") {
    MatQ two_i1(1, 1);
    two_i1.at(0, 0) = 2;
    CHECK(char_poly_x2(two_i1) == upoly({-2, 0, 1}));

    CHECK(char_poly_x2(MatQ::identity(2)) == upoly({1, 0, -2, 0, 1}));  // (x^2-1)^2

    MatQ ones(2, 2);
    ones.at(0, 0) = ones.at(0, 1) = ones.at(1, 0) = ones.at(1, 1) = 1;
    // eigenvalues {0, 2}: chi(y) = y(y-2), so chi(x^2) = x^2(x^2-2)
    CHECK(char_poly_x2(ones) == upoly({0, 0, -2, 0, 1}));

    // det(yI - M) oracle at random rational points
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> pick(-5, 5);
    for (int t = 0; t < 10; ++t) {
        MatQ m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) m.at(i, j) = m.at(j, i) = make_rat(pick(rng), 2);
        UnivariatePoly chi = char_poly(m);
        Rat y = make_rat(pick(rng), 3);
        MatQ shifted = MatQ::identity(3) * y - m;
        CHECK(chi.eval(y) == det(shifted));
        // x^2 substitution consistency
        UnivariatePoly chi2 = char_poly_x2(m);
        for (int k = 0; k <= chi.degree(); ++k) CHECK(chi2.coeff(2 * k) == chi.coeff(k));
    }
}

TEST_CASE("generating_poly examples") {
    SubsetDistribution pair = SubsetDistribution::uniform(2, {0b01, 0b10});
    MultiAffinePoly g = generating_poly(pair);
    CHECK(g.coeff(0b01) == Rat(1, 2));
    CHECK(g.coeff(0b10) == Rat(1, 2));
    CHECK(g.terms().size() == 2);

    MultiAffinePoly gp = generating_poly(SubsetDistribution::point_mass(2, 0b11));
    CHECK(gp.coeff(0b11) == 1);
    CHECK(gp.terms().size() == 1);

    // uniform spanning trees of the triangle: enumerate the 3 trees directly
    WeightedGraph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    auto trees = tri.enumerate_spanning_trees(100);
    REQUIRE(trees.size() == 3);
    SubsetDistribution ust = lambda_tree_distribution(tri, {Rat(1), Rat(1), Rat(1)});
    MultiAffinePoly gt = generating_poly(ust);
    for (const auto& t : trees) CHECK(gt.coeff(indices_to_mask(t)) == Rat(1, 3));

    CHECK_THROWS_AS(SubsetDistribution(2, {{0b01, Rat(1, 2)}}), InvalidInputError);
    CHECK_THROWS_AS(SubsetDistribution(2, {{0b01, Rat(-1)}, {0b10, Rat(2)}}), InvalidInputError);
}

TEST_CASE("shift_diagonal examples") {
    MultiAffinePoly p(2);
    p.add_term(0b11, Rat(1));  // z0 z1
    ZXPoly s = shift_diagonal(p);
    CHECK(s.coeff(0b11, 0) == UnivariatePoly::constant(Rat(1)));
    CHECK(s.coeff(0b01, 0) == UnivariatePoly::monomial(Rat(1), 1));
    CHECK(s.coeff(0b10, 0) == UnivariatePoly::monomial(Rat(1), 1));
    CHECK(s.coeff(0, 0) == UnivariatePoly::monomial(Rat(1), 2));

    MultiAffinePoly h(2);
    h.add_term(0b01, Rat(1, 2));
    h.add_term(0b10, Rat(1, 2));
    ZXPoly sh = shift_diagonal(h);
    CHECK(sh.coeff(0b01, 0) == UnivariatePoly::constant(Rat(1, 2)));
    CHECK(sh.coeff(0, 0) == UnivariatePoly::monomial(Rat(1), 1));

    MultiAffinePoly one(2);
    one.add_term(0, Rat(1));
    ZXPoly so = shift_diagonal(one);
    CHECK(so.coeff(0, 0) == UnivariatePoly::constant(Rat(1)));
    CHECK(so.terms().size() == 1);
}

TEST_CASE("cauchy_binet_expand examples") {
    VectorSystem diag(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    ZXPoly e = cauchy_binet_expand(diag);
    // (x + z0)(x + z1)
    CHECK(e.coeff(0, 0) == UnivariatePoly::monomial(Rat(1), 2));
    CHECK(e.coeff(0b01, 0) == UnivariatePoly::monomial(Rat(1), 1));
    CHECK(e.coeff(0b10, 0) == UnivariatePoly::monomial(Rat(1), 1));
    CHECK(e.coeff(0b11, 0) == UnivariatePoly::constant(Rat(1)));

    VectorSystem single(1, {{Rat(3, 2)}});
    ZXPoly es = cauchy_binet_expand(single);
    CHECK(es.coeff(0, 0) == UnivariatePoly::monomial(Rat(1), 1));
    CHECK(es.coeff(0b1, 0) == UnivariatePoly::constant(Rat(9, 4)));

    VectorSystem dup(1, {{Rat(1)}, {Rat(1)}});
    ZXPoly ed = cauchy_binet_expand(dup);
    CHECK(ed.coeff(0, 0) == UnivariatePoly::monomial(Rat(1), 1));
    CHECK(ed.coeff(0b01, 0) == UnivariatePoly::constant(Rat(1)));
    CHECK(ed.coeff(0b10, 0) == UnivariatePoly::constant(Rat(1)));
    CHECK(ed.coeff(0b11, 0).is_zero());  // rank-1 pair: sigma_2 = 0
}

TEST_CASE("zx_mul with evaluation oracle") {
    ZXPoly a(1);
    a.add_term(0b1, 0, UnivariatePoly::constant(Rat(1)));  // z0
    ZXPoly sq = zx_mul(a, a);
    CHECK(sq.coeff(0b1, 0b1) == UnivariatePoly::constant(Rat(1)));

    ZXPoly xz(1);
    xz.add_term(0, 0, UnivariatePoly::monomial(Rat(1), 1));
    xz.add_term(0b1, 0, UnivariatePoly::constant(Rat(1)));
    ZXPoly one(1);
    one.add_term(0, 0, UnivariatePoly::constant(Rat(1)));
    CHECK(zx_mul(xz, one) == xz);

    // degree guard
    CHECK_THROWS_AS(zx_mul(sq, a), PreconditionError);

    // pointwise product oracle at 20 random rational points
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> pick(-9, 9);
    MultiAffinePoly ga(3), gb(3);
    for (uint64_t mask = 0; mask < 8; ++mask) {
        ga.add_term(mask, make_rat(pick(rng), 4));
        gb.add_term(mask, make_rat(pick(rng), 4));
    }
    ZXPoly za = shift_diagonal(ga), zb = shift_diagonal(gb);
    ZXPoly prod = zx_mul(za, zb);
    for (int t = 0; t < 20; ++t) {
        std::vector<Rat> z{make_rat(pick(rng), 4), make_rat(pick(rng), 4), make_rat(pick(rng), 4)};
        Rat x = make_rat(pick(rng), 4);
        CHECK(prod.eval(z, x) == za.eval(z, x) * zb.eval(z, x));
    }
}

TEST_CASE("apply_one_minus_dzz examples and commutation") {
    ZXPoly a(2);
    a.add_term(0b01, 0, UnivariatePoly::constant(Rat(1)));
    ZXPoly sq = zx_mul(a, a);  // z0^2
    ZXPoly r = apply_one_minus_dzz(sq, 0);
    CHECK(r.coeff(0b01, 0b01) == UnivariatePoly::constant(Rat(1)));
    CHECK(r.coeff(0, 0) == UnivariatePoly::constant(Rat(-2)));

    CHECK(apply_one_minus_dzz(a, 0) == a);  // degree 1 unchanged

    // x^2 z0^2 + z1, i = 0  ->  x^2 z0^2 - 2x^2 + z1
    ZXPoly p(2);
    p.add_term(0b01, 0b01, UnivariatePoly::monomial(Rat(1), 2));
    p.add_term(0b10, 0, UnivariatePoly::constant(Rat(1)));
    ZXPoly q = apply_one_minus_dzz(p, 0);
    CHECK(q.coeff(0b01, 0b01) == UnivariatePoly::monomial(Rat(1), 2));
    CHECK(q.coeff(0, 0) == UnivariatePoly::monomial(Rat(-2), 2));
    CHECK(q.coeff(0b10, 0) == UnivariatePoly::constant(Rat(1)));

    // operators at distinct indices commute exactly
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> pick(-9, 9);
    MultiAffinePoly ga(3), gb(3);
    for (uint64_t mask = 0; mask < 8; ++mask) {
        ga.add_term(mask, make_rat(pick(rng), 2));
        gb.add_term(mask, make_rat(pick(rng), 2));
    }
    ZXPoly prod = zx_mul(shift_diagonal(ga), shift_diagonal(gb));
    ZXPoly ij = apply_one_minus_dzz(apply_one_minus_dzz(prod, 0), 2);
    ZXPoly ji = apply_one_minus_dzz(apply_one_minus_dzz(prod, 2), 0);
    CHECK(ij == ji);
}

TEST_CASE("restrict_zero") {
    ZXPoly p(1);
    p.add_term(0, 0, UnivariatePoly::monomial(Rat(1), 1));
    p.add_term(0b1, 0, UnivariatePoly::constant(Rat(1)));
    CHECK(restrict_zero(p) == UnivariatePoly::monomial(Rat(1), 1));

    ZXPoly q(1);
    q.add_term(0b1, 0b1, UnivariatePoly::monomial(Rat(1), 2));
    q.add_term(0, 0, UnivariatePoly::monomial(Rat(-2), 2));
    CHECK(restrict_zero(q) == UnivariatePoly::monomial(Rat(-2), 2));

    ZXPoly c(1);
    c.add_term(0, 0, UnivariatePoly::constant(Rat(3)));
    CHECK(restrict_zero(c) == UnivariatePoly::constant(Rat(3)));
}

TEST_CASE("stability_falsifier") {
    MultiAffinePoly stable(2);
    stable.add_term(0b01, Rat(1, 2));
    stable.add_term(0b10, Rat(1, 2));
    CHECK(stability_falsifier(stable, 50, 1));

    MultiAffinePoly unstable(2);
    unstable.add_term(0b11, Rat(1));
    unstable.add_term(0, Rat(1));  // z0 z1 + 1: violated at the origin
    CHECK_FALSE(stability_falsifier(unstable, 50, 1));

    MultiAffinePoly point(2);
    point.add_term(0b11, Rat(1));
    CHECK(stability_falsifier(point, 50, 1));
}

TEST_CASE("VectorSystem flags") {
    VectorSystem iso(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    CHECK(iso.is_isotropic());
    CHECK(iso.eps2() == 1);

    VectorSystem pairs(2, {{Rat(1, 2), Rat(1, 2)},
                           {Rat(1, 2), Rat(-1, 2)},
                           {Rat(1, 2), Rat(1, 2)},
                           {Rat(1, 2), Rat(-1, 2)}});
    CHECK(pairs.is_isotropic());
    CHECK(pairs.eps2() == Rat(1, 2));

    VectorSystem sub(2, {{Rat(1, 2), Rat(0)}});
    CHECK_FALSE(sub.is_isotropic());
    CHECK(sub.is_sub_isotropic());
}
