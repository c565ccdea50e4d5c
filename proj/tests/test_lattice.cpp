#include "doctest.h"

#include "trielliptic/embedding.hpp"
#include "trielliptic/lattice.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace tri;

namespace {

IntVec unit(std::size_t n, std::size_t i) {
    IntVec v(n);
    v[i] = 1;
    return v;
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
    IntMatrix t = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int step = 0; step < 6 * static_cast<int>(n); ++step) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) continue;
        long c = coef(rng);
        for (std::size_t r = 0; r < n; ++r) t(r, j) += c * t(r, i);
    }
    return t;
}

IntMatrix transformed(const IntMatrix& g, const IntMatrix& t) { return t.transpose() * g * t; }

// Closed form for the norm of the k-th fundamental weight (negative definite).
Rat weight_norm_A(int n, int k) {
    Rat r(-k * (n + 1 - k), n + 1);
    r.canonicalize();
    return r;
}

// Convolution of theta series of two lattices.
std::vector<long> convolve(const std::vector<long>& a, const std::vector<long>& b, std::size_t len) {
    std::vector<long> c(len);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (j < a.size() && i - j < b.size()) c[i] += a[j] * b[i - j];
    return c;
}

// Block shape of an isotropic normal form, checked entry by entry.
void check_normal_form(const IntegralLattice& l, const std::vector<IntVec>& j, const IsotropicNormalForm& f) {
    std::size_t r = l.rank();
    REQUIRE(f.basis.rows() == r);
    REQUIRE(f.basis.cols() == r);
    CHECK(abs(det(f.basis)) == 1);
    CHECK(f.full == transformed(l.gram(), f.basis));
    std::size_t m = r - 4;
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < r; ++b) {
            Int want = 0;
            if (b == r - 2 + (1 - a)) want = a == 0 ? 1 : f.e;
            CHECK(f.full(a, b) == want);
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) CHECK(f.full(2 + a, 2 + b) == f.B(a, b));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = r - 2; b < r; ++b) CHECK(f.full(2 + a, b) == 0);
    CHECK(f.full(r - 2, r - 2) == 2 * f.t);
    CHECK(f.full(r - 2, r - 1) == 0);
    CHECK(f.full(r - 1, r - 1) == 0);
    CHECK(f.t >= 0);
    CHECK(f.t < std::max<long>(f.e, 1));
    // first two columns span the same plane as J
    IntMatrix jm = IntMatrix::from_cols(j, r);
    IntMatrix first = IntMatrix::from_cols({f.basis.col(0), f.basis.col(1)}, r);
    for (std::size_t c = 0; c < 2; ++c) {
        CHECK(solve_integer(jm, first.col(c)).has_value());
        CHECK(solve_integer(first, j[c]).has_value());
    }
}

}  // namespace

TEST_CASE("catalog entries have the listed Gram data") {
    IntegralLattice l8 = catalog("L8");
    CHECK(l8.rank() == 8);
    CHECK(l8.negative_definite());
    CHECK(l8.is_even());
    CHECK(l8.det() == 9);
    // its orthogonal complement in a Niemeier lattice lies in the n = 2 genus
    CHECK(isomorphic(discriminant_form(l8.gram()), sigma_form(2).negated()));

    IntegralLattice u3 = catalog("U(3)");
    CHECK(u3.gram() == IntMatrix{{0, 3}, {3, 0}});
    CHECK(catalog("<-4>").gram() == IntMatrix{{-4}});
    CHECK(catalog("T1").gram() == IntMatrix{{2, 3}, {3, 0}});
    CHECK(catalog("A(8)").gram() == catalog("A8").gram());

    IntegralLattice k3 = catalog("K3");
    CHECK(k3.rank() == 22);
    CHECK(k3.signature().pos == 3);
    CHECK(k3.signature().neg == 19);
    CHECK(abs(k3.det()) == 1);
    CHECK(k3.is_even());

    CHECK_THROWS(catalog("Q7"));
    CHECK_THROWS(catalog("<0>"));
}

TEST_CASE("fundamental weights have the closed-form norms") {
    // delta_1 of D8 is a spinor weight: -n/4
    IntegralLattice d8 = catalog("D8");
    CHECK(d8.norm(dual_vector(d8, 0)) == Rat(-2));
    CHECK(d8.norm(dual_vector(d8, 7)) == Rat(-1));
    IntegralLattice e7 = catalog("E7");
    CHECK(e7.norm(dual_vector(e7, 6)) == Rat(-3, 2));
    for (int n = 1; n <= 12; ++n) {
        IntegralLattice a = catalog("A" + std::to_string(n));
        for (int k = 1; k <= n; ++k) CHECK(a.norm(dual_vector(a, k - 1)) == weight_norm_A(n, k));
    }
    CHECK(catalog("A8").norm(dual_vector(catalog("A8"), 7)) == Rat(-8, 9));
    // glue classes are dual vectors
    for (int k = 0; k < 4; ++k) {
        RatVec g = glue_class('D', 8, k);
        RatVec gg = to_rat(d8.gram()) * g;
        for (const auto& x : gg) CHECK(x.get_den() == 1);
    }
}

TEST_CASE("root lattices: determinants and root counts") {
    struct Case { char t; int n; long det; long roots; };
    std::vector<Case> cases = {{'A', 1, 2, 2},  {'A', 4, 5, 20},  {'A', 8, 9, 72},   {'D', 4, 4, 24},
                               {'D', 7, 4, 84}, {'D', 8, 4, 112}, {'E', 6, 3, 72},   {'E', 7, 2, 126},
                               {'E', 8, 1, 240}};
    for (const auto& c : cases) {
        IntegralLattice l = root_lattice(c.t, c.n);
        CAPTURE(l.name());
        CHECK(l.negative_definite());
        CHECK(l.is_even());
        CHECK(abs(l.det()) == c.det);
        CHECK(static_cast<long>(roots(l).size()) == c.roots);
        CHECK(root_count(c.t, c.n) == c.roots);
        CHECK(root_system(l).str() == std::string(1, c.t) + std::to_string(c.n));
    }
    CHECK(short_vectors(catalog("A1"), -4).empty());
    CHECK_THROWS(short_vectors(catalog("U"), -2));
}

TEST_CASE("theta series of a direct sum is the convolution") {
    auto t8 = theta_counts(catalog("E8"), 4);
    CHECK(t8 == std::vector<long>{1, 240, 2160, 6720, 17520});
    auto t16 = theta_counts(direct_sum({catalog("E8"), catalog("E8")}), 3);
    CHECK(t16 == convolve(t8, t8, 4));
    CHECK(t16[1] == 480);
    CHECK(t16[2] == 61920);
    auto ta = theta_counts(catalog("A2"), 3);
    auto td = theta_counts(catalog("D4"), 3);
    CHECK(theta_counts(direct_sum({catalog("A2"), catalog("D4")}), 3) == convolve(ta, td, 4));
}

TEST_CASE("Niemeier lattices from glue codes are even unimodular with the right roots") {
    for (const auto& spec : niemeier_specs()) {
        CAPTURE(spec.label);
        NiemeierLattice nl = build_niemeier(spec);
        const auto& l = nl.lattice;
        CHECK(l.rank() == 24);
        CHECK(abs(l.det()) == 1);
        CHECK(l.is_even());
        CHECK(l.negative_definite());
        std::string joined;
        for (const auto& c : spec.components) joined += (joined.empty() ? "" : "+") + c;
        RootSystemLabel want = parse_root_label(joined);
        CHECK(root_system(l) == want);
        // Theta = E4^3 + (N_2 - 720) Delta, so N_4 = 196560 - 24 N_2
        auto th = theta_counts(l, 2);
        CHECK(th[1] == want.root_count());
        CHECK(th[2] == 196560 - 24 * th[1]);
    }
    CHECK(static_cast<long>(roots(catalog("M(D24)")).size()) == 1104);
    CHECK_THROWS(build_niemeier("Leech"));
}

TEST_CASE("a glue code with an odd word is rejected") {
    // [2] of D16 is the vector class, norm -1
    NiemeierSpec bad{"bad", {"D16", "E8"}, {{2, 0}}};
    bool threw = false;
    try {
        build_niemeier(bad);
    } catch (const std::exception&) {
        threw = true;
    }
    CHECK(threw);
    // either spinor class gives D16+
    NiemeierSpec other{"other", {"D16", "E8"}, {{3, 0}}};
    CHECK(root_system(build_niemeier(other).lattice).str() == "E8+D16");
}

TEST_CASE("LLL transforms are unimodular and reduce the Gram matrix") {
    std::mt19937_64 rng(17);
    for (const char* name : {"E8", "D7", "A8", "L8", "E6"}) {
        IntegralLattice l = catalog(name);
        IntMatrix t = random_unimodular(l.rank(), rng);
        IntegralLattice messy("messy", transformed(l.gram(), t));
        IntMatrix tr;
        IntegralLattice red = reduced(messy, &tr);
        CAPTURE(name);
        CHECK(abs(det(tr)) == 1);
        CHECK(red.gram() == transformed(messy.gram(), tr));
        Int maxdiag = 0, maxmessy = 0;
        for (std::size_t i = 0; i < l.rank(); ++i) {
            maxdiag = std::max<Int>(maxdiag, abs(red.gram()(i, i)));
            maxmessy = std::max<Int>(maxmessy, abs(messy.gram()(i, i)));
        }
        CHECK(maxdiag <= maxmessy);
        CHECK(theta_counts(red, 2) == theta_counts(l, 2));
    }
}

TEST_CASE("root labels parse and print canonically") {
    // E before D before A, larger rank first
    CHECK(parse_root_label("A1+A1+A13").str() == "A13+A1^2");
    CHECK(parse_root_label("A2+E6+D4+E8").str() == "E8+E6+D4+A2");
    auto l = parse_root_label("E6^2A2^2");
    CHECK(l.components.at("E6") == 2);
    CHECK(l.components.at("A2") == 2);
    CHECK(l.root_count() == 2 * 72 + 2 * 6);
    CHECK(l.rank() == 16);
    CHECK(parse_root_label("E7+E8") == parse_root_label("E8+E7"));
    CHECK(parse_root_label("0").str() == "0");
    CHECK_THROWS(parse_root_label("X5"));
}

TEST_CASE("orthogonal complements and the discriminant negation law") {
    IntegralLattice e8 = catalog("E8");
    auto r = roots(e8);
    auto a1 = orthogonal_complement(e8, {r[0]});
    CHECK(root_system(a1.lattice).str() == "E7");
    CHECK(abs(a1.lattice.det()) == 2);
    CHECK(a1.saturated_input);

    // In a unimodular lattice, A_{S-perp} = -A_S for primitive S.
    std::mt19937_64 rng(3);
    IntegralLattice m = catalog("M(D10E7^2)");
    auto mr = roots(m);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<IntVec> sub;
        std::uniform_int_distribution<std::size_t> pick(0, mr.size() - 1);
        for (int k = 0; k < 3; ++k) sub.push_back(mr[pick(rng)]);
        if (!is_saturated(sub, 24) || rank(IntMatrix::from_cols(sub, 24)) < 3) continue;
        auto c = orthogonal_complement(m, sub);
        IntMatrix sm = IntMatrix::from_cols(sub, 24);
        IntMatrix sg = sm.transpose() * m.gram() * sm;
        CHECK(c.lattice.rank() == 21);
        CHECK(abs(c.lattice.det()) == abs(det(sg)));
        CHECK(isomorphic(discriminant_form(c.lattice.gram()), discriminant_form(sg).negated()));
    }
    // a non-primitive input is flagged
    IntVec twice = r[0];
    for (auto& x : twice) x *= 2;
    CHECK_FALSE(orthogonal_complement(e8, {twice}).saturated_input);
}

TEST_CASE("invariant tuples do not depend on the basis") {
    std::mt19937_64 rng(99);
    for (const char* name : {"L8", "D7", "E6"}) {
        IntegralLattice l = catalog(name);
        IntegralLattice moved("moved", transformed(l.gram(), random_unimodular(l.rank(), rng)));
        CHECK(invariants(l) == invariants(moved));
    }
    CHECK_FALSE(invariants(catalog("E8")) == invariants(catalog("D8")));
    auto t = invariants(catalog("L8"));
    CHECK(t.rank == 8);
    CHECK(t.roots.str() == "D7");
    CHECK(t.theta[0] == 84);
}

TEST_CASE("root sublattice index and glue") {
    // D16+ contains D16 with index 2
    NiemeierLattice n = build_niemeier("D16E8");
    auto rs = root_sublattice(n.lattice, roots(n.lattice));
    CHECK(rs.rank == 24);
    CHECK(rs.index == 2);
    CHECK(rs.glue == std::vector<long>{2});
    auto e3 = build_niemeier("E6^4");
    auto r3 = root_sublattice(e3.lattice, roots(e3.lattice));
    CHECK(r3.index == 9);
}

TEST_CASE("dual vectors of D_n of norm -1 form one orbit") {
    for (int n = 4; n <= 8; ++n) {
        auto c = eichler_orbit_check(n);
        CAPTURE(n);
        CHECK(c.equal);
        CHECK(c.norm == Rat(-1));
        // D4 has triality: all 24 norm -1 dual vectors; otherwise the 2n vectors +-e_i
        CHECK(c.coset_vectors == (n == 4 ? 24 : 2 * n));
    }
}

TEST_CASE("minimal glue cosets are single Weyl orbits") {
    for (const char* w : {"E6", "E7", "A11"}) {
        auto c = coset_orbit_check(w);
        CAPTURE(w);
        CHECK(c.equal);
        CHECK(c.coset_vectors == c.orbit);
    }
    CHECK(coset_orbit_check("E6").coset_vectors == 27);
    CHECK(coset_orbit_check("E7").coset_vectors == 56);
    CHECK_THROWS(coset_orbit_check("B3"));
}

TEST_CASE("isotropic normal form of U+U") {
    IntegralLattice uu = direct_sum({catalog("U"), catalog("U")});
    std::vector<IntVec> j = {unit(4, 0), unit(4, 2)};
    auto f = isotropic_normal_form(uu, j);
    CHECK(f.e == 1);
    CHECK(f.t == 0);
    CHECK(f.B.rows() == 0);
    check_normal_form(uu, j, f);
    CHECK(h_j(uu, j) == 1);
}

TEST_CASE("isotropic normal form of U+U(3)+A2") {
    IntegralLattice l = direct_sum({catalog("U"), catalog("U(3)"), catalog("A2")});
    std::vector<IntVec> j = {unit(6, 0), unit(6, 2)};
    auto f = isotropic_normal_form(l, j);
    CHECK(f.e == 3);
    CHECK(h_j(l, j) == 3);
    check_normal_form(l, j, f);
    IntegralLattice b("B", f.B);
    CHECK(b.det() == 3);
    CHECK(root_system(b).str() == "A2");
}

TEST_CASE("isotropic normal form in a skewed basis") {
    std::mt19937_64 rng(5);
    IntegralLattice base = direct_sum({catalog("U"), catalog("U"), catalog("E8")});
    for (int trial = 0; trial < 4; ++trial) {
        IntMatrix t = random_unimodular(12, rng);
        IntegralLattice l("skew", transformed(base.gram(), t));
        auto tinv = inverse(to_rat(t));
        REQUIRE(tinv);
        std::vector<IntVec> j;
        for (std::size_t c : {0u, 2u}) j.push_back(clear_denominators(*tinv * to_rat(IntMatrix::from_cols({unit(12, c)}, 12)).col(0)));
        auto f = isotropic_normal_form(l, j);
        CHECK(f.e == 1);
        check_normal_form(l, j, f);
        CHECK(root_system(IntegralLattice("B", f.B)).str() == "E8");
    }
}

TEST_CASE("non-isotropic or non-primitive planes are rejected") {
    IntegralLattice uu = direct_sum({catalog("U"), catalog("U")});
    CHECK_THROWS(isotropic_normal_form(uu, {unit(4, 0), unit(4, 1)}));
    CHECK_THROWS(isotropic_normal_form(uu, {IntVec{2, 0, 0, 0}, unit(4, 2)}));
}

TEST_CASE("span of C, E, e_i: neither sign gives a cyclic group of order 27") {
    auto rs = span_lattice_readings();
    REQUIRE(rs.size() == 2);
    for (const auto& r : rs) {
        CHECK_FALSE(r.cyclic_27);
        if (r.sign == 1) {
            CHECK(r.det == 171);
            CHECK(r.signature.pos == 18);
            CHECK(r.signature.neg == 2);
        } else {
            CHECK(r.det == -189);
            CHECK(r.signature.pos == 1);
            CHECK(r.signature.neg == 19);
        }
    }
}

TEST_CASE("integer solving") {
    IntMatrix a{{2, 0}, {0, 3}};
    auto x = solve_integer(a, IntVec{4, 9});
    REQUIRE(x);
    CHECK(*x == IntVec{2, 3});
    CHECK_FALSE(solve_integer(a, IntVec{1, 0}));
}

TEST_CASE("L8 into E8^3 has one class with roots E8+E7") {
    auto s = embed_root_chain(catalog("L8"), build_niemeier("E8^3").lattice);
    CHECK_FALSE(s.inconclusive);
    REQUIRE(s.classes.size() == 1);
    const auto& c = s.classes[0];
    CHECK(c.tuple.roots.str() == "E8+E7");
    CHECK(c.embedding.primitive);
    CHECK(c.embedding.preserves_gram());
    CHECK(isomorphic(c.disc, sigma_form(2)));
}

TEST_CASE("L8 does not embed into D24+") {
    auto s = embed_root_chain(catalog("L8"), build_niemeier("D24").lattice);
    CHECK_FALSE(s.inconclusive);
    CHECK(s.classes.empty());
}

TEST_CASE("L8 into D8^3 gives D7^2 and D8+A7") {
    auto s = embed_root_chain(catalog("L8"), build_niemeier("D8^3").lattice);
    CHECK_FALSE(s.inconclusive);
    std::set<std::string> got;
    for (const auto& c : s.classes) {
        got.insert(c.tuple.roots.str());
        CHECK(c.embedding.preserves_gram());
        auto cc = classify_complement(c.embedding);
        CHECK(cc.complement.lattice.rank() == 16);
        CHECK(cc.tuple == c.tuple);
        CHECK(isomorphic(cc.disc, sigma_form(2)));
    }
    CHECK(got == std::set<std::string>{"D7^2", "D8+A7"});
}

TEST_CASE("A1 into E8 has a single Weyl orbit") {
    auto s = embed_root_chain(catalog("A1"), catalog("E8"));
    CHECK(s.representatives == 1);
    REQUIRE(s.classes.size() == 1);
    CHECK(s.classes[0].tuple.roots.str() == "E7");
}
