#include "doctest.h"

#include "trielliptic/census.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace tri;

namespace {

// Isotropic elements, zero included, up to sign, by listing the whole group.
long brute_isotropic(const FiniteQuadraticForm& f) {
    long iso = 0, self_neg = 0;
    for (const auto& x : f.elements()) {
        if (f.q(x) != 0) continue;
        ++iso;
        if (f.neg(x) == f.normalize(x)) ++self_neg;
    }
    return (iso + self_neg) / 2;
}

// Root lattice plus one glue vector of order p, by swapping a basis vector for the glue vector.
IntegralLattice glued(const std::vector<IntegralLattice>& parts, const std::vector<int>& word, long p) {
    IntegralLattice root = direct_sum(parts);
    std::size_t r = root.rank();
    RatVec g(r);
    std::size_t off = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto inv = inverse(to_rat(parts[i].gram()));
        REQUIRE(inv);
        std::size_t n = parts[i].rank();
        // minuscule node: last node of the chain
        if (word[i] != 0) {
            RatVec w = inv->col(n - 1);
            for (std::size_t k = 0; k < n; ++k) g[off + k] = w[k] * word[i];
        }
        off += n;
    }
    // shift g by L so that p*g has entries in {-1, 0, 1} modulo p, then find a coordinate +-1
    std::size_t pivot = r;
    for (std::size_t k = 0; k < r; ++k) {
        Rat pg = g[k] * p;
        REQUIRE(pg.get_den() == 1);
        Int c = pg.get_num();
        Int red = c % p;
        if (red > p / 2) red -= p;
        if (red < -p / 2) red += p;
        g[k] = Rat(red) / p;
        if (pivot == r && abs(red) == 1) pivot = k;
    }
    REQUIRE(pivot < r);
    RatMatrix basis(r, r);
    for (std::size_t k = 0; k < r; ++k) basis(k, k) = 1;
    for (std::size_t k = 0; k < r; ++k) basis(k, pivot) = g[k];
    RatMatrix gram = basis.transpose() * to_rat(root.gram()) * basis;
    IntMatrix out(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            REQUIRE(gram(i, j).get_den() == 1);
            out(i, j) = gram(i, j).get_num();
        }
    return IntegralLattice("glued", out);
}

const BoundaryCensus& census(int n) {
    static std::map<int, BoundaryCensus> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, run_census(n, {}, 4)).first;
    return it->second;
}

std::multiset<std::string> e1_labels(const BoundaryCensus& c) {
    std::multiset<std::string> s;
    for (const auto& cl : c.type_ii)
        if (cl.e == 1) s.insert(cl.tuple.roots.str());
    return s;
}

}  // namespace

TEST_CASE("Sigma_n has signature (2,18) and the listed discriminant form") {
    IntegralLattice k3 = catalog("K3");
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        SigmaLattice s = build_sigma(n);
        CHECK(s.lattice.rank() == 20);
        CHECK(s.lattice.is_even());
        CHECK(s.lattice.signature().pos == 2);
        CHECK(s.lattice.signature().neg == 18);
        CHECK(abs(s.lattice.det()) == 9);
        CHECK(isomorphic(discriminant_form(s.lattice.gram()), sigma_form(n)));
        IntMatrix t = s.t_embedding;
        CHECK(t.transpose() * k3.gram() * t == t_gram(n));
        IntMatrix cross = s.inclusion.transpose() * k3.gram() * t;
        for (std::size_t i = 0; i < cross.rows(); ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(cross(i, j) == 0);
        CHECK(s.inclusion.transpose() * k3.gram() * s.inclusion == s.lattice.gram());
        std::vector<IntVec> cols;
        for (std::size_t j = 0; j < 20; ++j) cols.push_back(s.inclusion.col(j));
        CHECK(is_saturated(cols, 22));
    }
    CHECK_THROWS(build_sigma(4));
}

TEST_CASE("genus targets") {
    IntegralLattice e8e8 = direct_sum({catalog("E8"), catalog("E8")});
    IntegralLattice e8d8 = direct_sum({catalog("E8"), catalog("D8")});
    for (int n = 1; n <= 3; ++n) {
        CHECK(verify_genus_membership(e8e8, genus_target(n, 3)));
        CHECK_FALSE(verify_genus_membership(e8e8, genus_target(n, 1)));
        CHECK_FALSE(verify_genus_membership(e8d8, genus_target(n, 3)));
        CHECK_FALSE(verify_genus_membership(e8d8, genus_target(n, 1)));
        CHECK(genus_target(n, 1).disc.size() == 9);
        CHECK(genus_target(n, 3).disc.is_trivial());
    }
    CHECK_FALSE(verify_genus_membership(catalog("E8"), genus_target(1, 3)));
    CHECK_FALSE(verify_genus_membership(negated(e8e8), genus_target(1, 3)));
    CHECK_THROWS(genus_target(2, 2));
    // the source lattices have the negated form, so their complements land in G(n,1)
    for (int n = 1; n <= 3; ++n)
        CHECK(isomorphic(discriminant_form(type_ii_source(n).gram()), sigma_form(n).negated()));
}

TEST_CASE("isotropic census matches a brute-force count") {
    for (int n = 1; n <= 3; ++n) {
        auto f = discriminant_form(build_sigma(n).lattice.gram());
        CAPTURE(n);
        CHECK(census_type_iii(n) == brute_isotropic(f));
        CHECK(isotropic_orbits_full(f) <= census_type_iii(n));
    }
    CHECK(census_type_iii(1) == 2);
    CHECK(census_type_iii(2) == 2);
    CHECK(census_type_iii(3) == 3);
    CHECK(isotropic_orbits_full(discriminant_form(build_sigma(3).lattice.gram())) == 2);
}

TEST_CASE("A8 in D10 leaves a root-free rank-2 complement") {
    // In Z^10, A8 spans e_i - e_{i+1}, i < 9. Its complement in D10 is spanned by
    // (1^9, 1) and 2 e_10: Gram [[10, 2], [2, 4]], no vectors of norm 2.
    IntegralLattice model("model", IntMatrix{{-10, -2}, {-2, -4}});
    CHECK(theta_counts(model, 1)[1] == 0);
    auto rs = embed_root_chain(catalog("A8"), catalog("D10"));
    CHECK_FALSE(rs.inconclusive);
    REQUIRE(rs.representatives >= 1);
    std::set<std::string> found;
    for (const auto& c : rs.classes) {
        found.insert(c.tuple.roots.str());
        auto cc = classify_complement(c.embedding);
        CHECK(cc.complement.lattice.rank() == 2);
        CHECK(theta_counts(cc.complement.lattice, 1)[1] == 0);
        CHECK(isomorphic(cc.disc, discriminant_form(model.gram())));
    }
    CHECK(found.count("0") == 1);
}

TEST_CASE("glued E6+A8+A2 lies in the n = 2 genus") {
    IntegralLattice l = glued({catalog("E6"), catalog("A8"), catalog("A2")}, {1, 3, 1}, 3);
    CHECK(l.rank() == 16);
    CHECK(l.is_even());
    CHECK(l.negative_definite());
    CHECK(abs(l.det()) == 9);
    CHECK(root_system(l).str() == "E6+A8+A2");
    CHECK(theta_counts(l, 1)[1] == 72 + 72 + 6);
    CHECK(isomorphic(discriminant_form(l.gram()), sigma_form(2)));
    CHECK(verify_genus_membership(l, genus_target(2, 1)));
}

TEST_CASE("type II census for n = 1") {
    const auto& c = census(1);
    REQUIRE_FALSE(c.inconclusive);
    for (const auto& cl : c.type_ii) {
        CAPTURE(cl.tuple.str());
        CHECK(cl.in_genus);
        CHECK(cl.embedding.primitive);
        CHECK(cl.embedding.preserves_gram());
    }
    CHECK(c.tuples_distinct);
    CHECK(c.e1_count() == 12);
    CHECK(e1_labels(c).count("A15") == 2);
    // D10E7^2 only admits A8 inside D10, whose complement there has no roots
    CHECK(c.missing_roots == std::vector<std::string>{"E7^2+A1"});
    CHECK(c.extra_roots == std::vector<std::string>{"E7^2"});
}

TEST_CASE("type II census for n = 2") {
    const auto& c = census(2);
    REQUIRE_FALSE(c.inconclusive);
    for (const auto& cl : c.type_ii) CHECK(cl.in_genus);
    CHECK(c.e1_count() == 10);
    std::multiset<std::string> labels = e1_labels(c);
    CHECK(labels.count("E6+A8+A2") == 1);
    CHECK(labels.count("D8+A7") == 1);
    CHECK(labels.count("D8+A6") == 0);
    // the extra class is the glued lattice built above
    IntegralLattice l = glued({catalog("E6"), catalog("A8"), catalog("A2")}, {1, 3, 1}, 3);
    InvariantTuple t = invariants(l);
    bool seen = false;
    for (const auto& cl : c.type_ii) seen = seen || cl.tuple == t;
    CHECK(seen);
}

TEST_CASE("type II census for n = 3") {
    const auto& c = census(3);
    REQUIRE_FALSE(c.inconclusive);
    for (const auto& cl : c.type_ii) CHECK(cl.in_genus);
    CHECK(c.curves() == 10);
    CHECK(c.labels_match());
    CHECK(c.tuples_distinct);
}

TEST_CASE("e = 3 classes are E8^2 and D16+") {
    for (int n = 1; n <= 3; ++n) {
        std::set<std::string> s;
        for (const auto& cl : census(n).type_ii)
            if (cl.e == 3) s.insert(cl.tuple.roots.str());
        CHECK(s == std::set<std::string>{"E8^2", "D16"});
    }
}

TEST_CASE("sampled isotropic planes land in the matching genus") {
    for (int n = 1; n <= 3; ++n) {
        const auto& c = census(n);
        std::set<long> es;
        REQUIRE_FALSE(c.samples.empty());
        for (const auto& s : c.samples) {
            CAPTURE(n);
            CHECK(s.in_genus);
            CHECK(s.form.B.rows() == 16);
            es.insert(s.form.e);
        }
        CHECK(es == std::set<long>{1, 3});
    }
}

TEST_CASE("searches record their enumeration bounds") {
    const auto& c = census(2);
    REQUIRE_FALSE(c.searches.empty());
    for (const auto& s : c.searches) {
        CHECK_FALSE(s.inconclusive);
        CHECK(s.classes.size() <= static_cast<std::size_t>(s.primitive));
    }
    bool any_bound = std::any_of(c.searches.begin(), c.searches.end(), [](const EmbeddingSearch& s) { return !s.bounds.empty(); });
    CHECK(any_bound);
}
