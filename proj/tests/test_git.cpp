#include "doctest.h"
#include "trielliptic/git.hpp"

#include <map>
#include <ostream>
#include <random>
#include <set>

using namespace tri;

namespace {

// Independent weight: pair the 5-vector of exponents with the full diagonal.
long oracle_weight(int u, int v, int w, long a, long b, long c) {
    const long e[5] = {u, 2 - u, v, w, 3 - v - w};
    const long d[5] = {a, -a, b, c, -b - c};
    long s = 0;
    for (int i = 0; i < 5; ++i) s += e[i] * d[i];
    return s;
}

// Brute force over a box: all distinct destabilized sets, then the maximal ones.
std::set<unsigned long> oracle_maximal(bool strict, int B) {
    std::set<unsigned long> sets;
    for (long a = 0; a <= B; ++a)
        for (long b = -B; b <= B; ++b)
            for (long c = -B; c <= B; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                if (!(b >= c && c >= -b - c)) continue;
                unsigned long m = 0;
                int i = 0;
                for (int u = 0; u <= 2; ++u)
                    for (int v = 0; v <= 3; ++v)
                        for (int w = 0; v + w <= 3; ++w, ++i) {
                            long wt = oracle_weight(u, v, w, a, b, c);
                            if (strict ? wt < 0 : wt <= 0) m |= 1UL << i;
                        }
                sets.insert(m);
            }
    std::set<unsigned long> out;
    for (auto s : sets) {
        bool dom = false;
        for (auto t : sets)
            if (t != s && (s & t) == s) dom = true;
        if (!dom) out.insert(s);
    }
    return out;
}

OneParamSubgroup random_normalized(std::mt19937_64& rng, int B = 40) {
    std::uniform_int_distribution<long> d(-B, B), p(0, B);
    for (;;) {
        OneParamSubgroup l{p(rng), d(rng), d(rng)};
        if (!l.is_zero() && l.normalized()) return l;
    }
}

BiMonomial M(int u, int v, int w) { return {u, v, w}; }

}  // namespace

TEST_CASE("monomial indexing") {
    const auto& all = all_monomials();
    REQUIRE(all.size() == 30);
    for (int i = 0; i < 30; ++i) CHECK(index_of(all[i]) == i);
    CHECK(to_set(all).all());
    CHECK(from_exponents({1, 1, 2, 0, 1}) == M(1, 2, 0));
    CHECK_THROWS(from_exponents({1, 1, 2, 2, 1}));
    CHECK(a_index(2, 1, 0) == M(0, 2, 1));
    CHECK(M(1, 2, 0).str() == "x0*x1*y0^2*y2");
}

TEST_CASE("weight examples") {
    CHECK(weight(M(0, 3, 0), {3, 2, 2}) == 0);
    CHECK(weight(M(2, 0, 0), {3, 2, 2}) == -6);
    for (const auto& m : all_monomials()) CHECK(weight(m, {0, 0, 0}) == 0);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int t = 0; t < 2000; ++t) {
        long a = d(rng), b = d(rng), c = d(rng);
        for (const auto& m : all_monomials()) {
            auto f = weight_functional(m);
            CHECK(weight(m, {a, b, c}) == oracle_weight(m.u, m.v, m.w, a, b, c));
            CHECK(f[0] * a + f[1] * b + f[2] * c == weight(m, {a, b, c}));
        }
    }
}

TEST_CASE("degeneration order") {
    for (const auto& m : all_monomials()) CHECK(degeneration_leq(m, m));
    CHECK_FALSE(degeneration_leq(M(1, 2, 0), M(0, 3, 0)));
    CHECK(degeneration_leq(M(0, 2, 0), M(0, 3, 0)));
    // Antisymmetry.
    for (const auto& a : all_monomials())
        for (const auto& b : all_monomials())
            if (degeneration_leq(a, b) && degeneration_leq(b, a)) CHECK(a == b);
}

TEST_CASE("weight is monotone along the degeneration order") {
    std::mt19937_64 rng(500);
    std::vector<OneParamSubgroup> ls;
    for (int t = 0; t < 500; ++t) ls.push_back(random_normalized(rng));
    long checked = 0;
    bool ok = true;
    for (const auto& a : all_monomials())
        for (const auto& b : all_monomials()) {
            if (!degeneration_leq(a, b)) continue;
            for (const auto& l : ls) {
                ok = ok && weight(a, l) <= weight(b, l);
                ++checked;
            }
        }
    CHECK(ok);
    CHECK(checked > 500 * 30);
}

TEST_CASE("destabilized sets are down-sets and scale invariant") {
    std::mt19937_64 rng(10000);
    for (int t = 0; t < 10000; ++t) {
        auto l = random_normalized(rng);
        for (SignKind s : {SignKind::NONPOSITIVE, SignKind::NEGATIVE}) {
            auto m = destabilized_set(l, s);
            REQUIRE(is_down_set(m));
            if (t % 10 == 0) {
                long k = 2 + t % 7;
                CHECK(destabilized_set({k * l.a, k * l.b, k * l.c}, s) == m);
            }
        }
    }
}

TEST_CASE("maximal elements form an antichain generating the set") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        auto m = destabilized_set(random_normalized(rng), SignKind::NONPOSITIVE);
        auto mx = maximal_elements(m);
        for (const auto& a : mx)
            for (const auto& b : mx)
                if (a != b) CHECK_FALSE(degeneration_leq(a, b));
        CHECK(down_set(mx) == m);
    }
}

TEST_CASE("enumerated families match an independent brute force") {
    for (SignKind s : {SignKind::NONPOSITIVE, SignKind::NEGATIVE}) {
        EnumerationStats st;
        auto fams = enumerate_maximal_families(s, &st, 12);
        CHECK(fams.size() == 7);
        CHECK(st.grid_agrees);
        std::set<unsigned long> got;
        for (const auto& f : fams) {
            got.insert(f.full_set.to_ulong());
            CHECK(down_set(f.maximal_monomials) == f.full_set);
            CHECK(destabilized_set(f.witness_lambda, s) == f.full_set);
            CHECK(destabilized_set(f.found_lambda, s) == f.full_set);
            CHECK(f.witness_lambda.normalized());
        }
        CHECK(got == oracle_maximal(s == SignKind::NEGATIVE, 24));
        std::set<std::string> labels;
        for (const auto& f : fams) labels.insert(f.label);
        std::string p = s == SignKind::NEGATIVE ? "U" : "N";
        for (int i = 1; i <= 7; ++i) CHECK(labels.count(p + std::to_string(i)) == 1);
    }
}

TEST_CASE("every grid set lies in an enumerated family") {
    for (SignKind s : {SignKind::NONPOSITIVE, SignKind::NEGATIVE}) {
        auto fams = enumerate_maximal_families(s, nullptr, 0);
        for (long a = 0; a <= 10; ++a)
            for (long b = -10; b <= 10; ++b)
                for (long c = -10; c <= 10; ++c) {
                    OneParamSubgroup l{a, b, c};
                    if (l.is_zero() || !l.normalized()) continue;
                    auto m = destabilized_set(l, s);
                    bool inside = false;
                    for (const auto& f : fams) inside = inside || (m & f.full_set) == m;
                    REQUIRE(inside);
                }
    }
}

TEST_CASE("tabulated rows") {
    auto n = enumerate_maximal_families(SignKind::NONPOSITIVE);
    const MonomialFamily* n1 = nullptr;
    for (const auto& f : n)
        if (f.label == "N1") n1 = &f;
    REQUIRE(n1);
    CHECK(to_set(n1->maximal_monomials) == to_set({M(0, 3, 0), M(1, 2, 0), M(2, 1, 0)}));

    for (const auto& r : family_catalog()) {
        CAPTURE(r.label);
        auto m = destabilized_set(r.lambda, r.sign);
        // Listed maxima are genuine maximal elements of the row's set.
        auto mx = to_set(maximal_elements(m));
        CHECK((to_set(r.listed_maximal) & mx) == to_set(r.listed_maximal));
        if (r.label == "N1") {
            // The printed shape omits the x0x1 y2 monomials that involve y2 inside q.
            CHECK((r.shape_support & m) == r.shape_support);
            CHECK((m & ~r.shape_support) == to_set({M(1, 0, 0), M(1, 0, 1), M(1, 1, 0)}));
        } else {
            CHECK(r.shape_support == m);
        }
    }
    // Rows where the table lists every maximal monomial.
    for (const char* l : {"N1", "N3", "N4", "N6", "N7"}) {
        const auto& r = family_record(l);
        CHECK(down_set(r.listed_maximal) == destabilized_set(r.lambda, r.sign));
    }
    const auto& u1 = family_record("U1");
    CHECK(destabilized_set({5, 3, -1}, SignKind::NEGATIVE) == u1.shape_support);
}

TEST_CASE("toy bidegree (1,1) case against brute force") {
    for (SignKind s : {SignKind::NONPOSITIVE, SignKind::NEGATIVE}) {
        std::set<unsigned> sets;
        for (long a = 0; a <= 20; ++a)
            for (long b = 0; b <= 20; ++b) {
                if (a == 0 && b == 0) continue;
                unsigned m = 0;
                for (int i = 0; i <= 1; ++i)
                    for (int j = 0; j <= 1; ++j) {
                        // exponents (i, 1-i, j, 1-j) against (a, -a, b, -b)
                        long wt = i * a - (1 - i) * a + j * b - (1 - j) * b;
                        if (s == SignKind::NEGATIVE ? wt < 0 : wt <= 0) m |= 1u << (2 * i + j);
                    }
                sets.insert(m);
            }
        std::set<unsigned> brute;
        for (auto x : sets) {
            bool dom = false;
            for (auto y : sets)
                if (x != y && (x & y) == x) dom = true;
            if (!dom) brute.insert(x);
        }
        auto fams = toy_maximal_families(s);
        CHECK(std::set<unsigned>(fams.begin(), fams.end()) == brute);
    }
    CHECK(toy_weight(1, 1, 2, 3) == 5);
}

TEST_CASE("arrangement samples in the plane") {
    std::size_t nr = 0;
    auto s = arrangement_samples({{1, -1}}, {{1, 0}, {0, 1}}, &nr);
    CHECK(nr == 3);
    // Rays (1,0), (0,1), (1,1) and the pairwise sums.
    CHECK(s.size() == 5);  // (1,0)+(0,1) coincides with the ray (1,1)
    CHECK_THROWS(arrangement_samples({}, {}));
}

TEST_CASE("classify examples") {
    using namespace bi;
    Poly fermat = y0().pow(3) + y1().pow(3) + y2().pow(3);
    auto c1 = classify_nonstable(x0() * x1() * fermat);
    CHECK(c1.verdict == Verdict::TORUS_STRICTLY_SEMISTABLE);
    CHECK(c1.family == "N7");
    CHECK(c1.lp_certificate);

    Poly c = y0().pow(3) + Rat(2) * y1().pow(3) - y2().pow(3) + y0() * y1() * y2() + Rat(5) * y0() * y0() * y2();
    Poly c0 = y1().pow(3) + Rat(3) * y1() * y2() * y2() - y2().pow(3);
    auto c2 = classify_nonstable(x1() * x1() * c + x0() * x1() * (c0 + y0() * y2() * y2()));
    CHECK(c2.verdict == Verdict::TORUS_UNSTABLE);
    CHECK(c2.family == "U1");
    CHECK(c2.lp_certificate);
    REQUIRE(c2.witness);
    CHECK(*c2.witness == OneParamSubgroup{5, 3, -1});

    Poly s = x0() * x0() * fermat + x1() * x1() * (y0().pow(3) + Rat(2) * y1().pow(3) + Rat(3) * y2().pow(3)) +
             x0() * x1() * y0() * y1() * y2();
    auto c3 = classify_nonstable(s);
    CHECK(c3.verdict == Verdict::TORUS_STABLE);
    CHECK(c3.family.empty());
    CHECK(c3.lp_certificate);
    // Grid sweep: no normalized 1-PS makes every weight nonpositive.
    auto sup = members(support(s));
    for (long a = 0; a <= 30; ++a)
        for (long b = -30; b <= 30; ++b)
            for (long cc = -30; cc <= 30; ++cc) {
                OneParamSubgroup l{a, b, cc};
                if (l.is_zero() || !l.normalized()) continue;
                bool all = true;
                for (const auto& m : sup) all = all && weight(m, l) <= 0;
                REQUIRE_FALSE(all);
            }

    CHECK_THROWS(classify_nonstable(x0() * fermat));
    CHECK_THROWS(classify_nonstable(Poly(kVars)));
}

TEST_CASE("classification agrees with the LP on random supports") {
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<int> pick(0, 29), sz(1, 12);
    for (int t = 0; t < 300; ++t) {
        Poly f(bi::kVars);
        int k = sz(rng);
        for (int i = 0; i < k; ++i) f += all_monomials()[pick(rng)].poly() * Rat(1 + i);
        auto c = classify_nonstable(f);
        CHECK(c.lp_certificate);
    }
}

TEST_CASE("fixed spaces and Luna strata") {
    using namespace bi;
    auto fa = fixed_space({3, 2, 2});
    CHECK(fa.count() == 9);
    // x1^2 c(y0,y1) + x0x1 q(y0,y1) y2 + x0^2 l(y0,y1) y2^2
    MonoSet alpha;
    for (int v = 0; v <= 3; ++v) alpha.set(index_of(M(0, v, 3 - v)));
    for (int v = 0; v <= 2; ++v) alpha.set(index_of(M(1, v, 2 - v)));
    for (int v = 0; v <= 1; ++v) alpha.set(index_of(M(2, v, 1 - v)));
    CHECK(fa == alpha);
    CHECK(fixed_space({4, 3, 2}) == to_set({M(0, 2, 1), M(1, 1, 1), M(2, 0, 1)}));
    CHECK(fixed_space({0, 0, 0}).all());

    CHECK(centralizer_dim({3, 2, 2}) == 5);
    CHECK(centralizer_dim({0, 1, 1}) == 7);
    CHECK(centralizer_dim({1, 0, 0}) == 9);
    CHECK(centralizer_dim({0, 0, 0}) == 11);
    CHECK(luna_stratum_dim({3, 2, 2}) == 4);
    CHECK(luna_stratum_dim({0, 1, 1}) == 2);
    CHECK(luna_stratum_dim({1, 0, 0}) == 1);
    CHECK(luna_stratum_dim({3, 2, 0}) == 1);
    CHECK(luna_stratum_dim({1, 2, 0}) == 3);
    CHECK_THROWS(luna_stratum_dim({0, 0, 0}));
    auto st = luna_stratum("alpha", {3, 2, 2});
    CHECK(st.dim == static_cast<int>(st.fixed_monomials.count()) - st.centralizer_dim);
}

TEST_CASE("quotient dimensions") {
    CHECK(h0_bidegree(1, 1) == 6);
    CHECK(h0_bidegree(1, 3) == 20);
    CHECK(h0_bidegree(2, 1) == 9);
    CHECK(h0_bidegree(0, 2) == 6);
    CHECK(h0_bidegree(2, 3) == 30);

    const auto& z = family_spec("zeta");
    CHECK(z.constraints.size() == 3);
    CHECK(projective_dim(z) == 16);
    CHECK(stable_stratum_dim(z) == 10);
    CHECK(projective_dim(family_spec("xi")) == 13);
    CHECK(stable_stratum_dim(family_spec("xi")) == 7);
    CHECK(projective_dim(family_spec("theta")) == 14);
    CHECK(stable_stratum_dim(family_spec("theta")) == 8);
    CHECK(projective_dim(family_spec("phi")) == 8);
    CHECK(stable_stratum_dim(family_spec("phi")) == 5);
    CHECK(stable_stratum_dim(family_spec("r1")) == 13);
    CHECK(stable_stratum_dim(family_spec("r2")) == 2);

    FamilyParamSpec bad;
    bad.label = "bad";
    bad.generators = {bi::mono(1, 1, 1)};
    bad.group_dim = 3;
    CHECK_THROWS(stable_stratum_dim(bad));
    CHECK_THROWS(family_spec("nope"));
}

TEST_CASE("dimension table") {
    std::map<std::string, int> want{{"alpha", 4}, {"beta", 1}, {"gamma", 2}, {"eta", 3}, {"delta", 1}, {"zeta", 10},
                                    {"xi", 7},    {"theta", 8}, {"phi", 5},  {"r1", 13}, {"r2", 2}};
    auto rows = dimension_table();
    CHECK(rows.size() == want.size());
    for (const auto& r : rows) {
        CAPTURE(r.label);
        CHECK(r.dim == want.at(r.label));
    }
}
