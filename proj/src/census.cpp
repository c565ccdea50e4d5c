#include "trielliptic/census.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tri {

namespace {

void check_n(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("n must be 1, 2 or 3");
}

std::vector<std::string> normalized(const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    for (const auto& l : labels) out.push_back(parse_root_label(l).str());
    return out;
}

}  // namespace

SigmaLattice build_sigma(int n) {
    check_n(n);
    IntegralLattice k3 = catalog("K3");
    std::size_t r = k3.rank();
    IntVec c(r), e(r);
    c[0] = 1;
    c[1] = n;
    e[1] = 3;
    e[2] = 1;
    if (k3.norm(c) != 2 * n || k3.norm(e) != 0 || k3.pair(c, e) != 3)
        throw std::logic_error("T_n embedding has the wrong Gram matrix");
    auto comp = orthogonal_complement(k3, {c, e});
    SigmaLattice s{IntegralLattice("Sigma" + std::to_string(n), comp.lattice.gram()), comp.inclusion,
                   IntMatrix::from_cols({c, e}, r)};
    if (!comp.saturated_input) throw std::logic_error("T_n embedding is not primitive");
    const auto& sig = s.lattice.signature();
    if (sig.pos != 2 || sig.neg != 18) throw std::runtime_error("Sigma_n has the wrong signature");
    if (!isomorphic(discriminant_form(s.lattice.gram()), sigma_form(n)))
        throw std::runtime_error("Sigma_n discriminant form differs from the listed one");
    return s;
}

std::string GenusTarget::str() const {
    std::ostringstream o;
    o << "G(" << n << "," << e << "): rank " << rank << ", negative definite, A = " << disc.str();
    return o.str();
}

GenusTarget genus_target(int n, int e) {
    check_n(n);
    if (e != 1 && e != 3) throw std::invalid_argument("e must be 1 or 3");
    GenusTarget g;
    g.n = n;
    g.e = e;
    if (e == 1) g.disc = sigma_form(n);
    return g;
}

bool verify_genus_membership(const IntegralLattice& l, const GenusTarget& target) {
    if (l.rank() != target.rank || !l.negative_definite() || !l.is_even()) return false;
    return isomorphic(discriminant_form(l.gram()), target.disc);
}

IntegralLattice type_ii_source(int n) {
    check_n(n);
    if (n == 1) return catalog("A8");
    if (n == 2) return catalog("L8");
    return direct_sum({catalog("E6"), catalog("A2")}, "E6+A2");
}

const std::vector<std::string>& type_ii_targets(int n) {
    static const std::vector<std::string> t1 = {"E8^3",    "D16E8", "D10E7^2", "A17E7", "D24",   "D12^2",
                                                "A15D9",   "A9^2D6", "D7E6A11", "A8^3", "A12^2", "A24"};
    static const std::vector<std::string> t3 = {"E8^3", "D16E8", "D10E7^2", "A17E7", "D7E6A11", "E6^4"};
    check_n(n);
    if (n == 1) return t1;
    if (n == 2) return niemeier_catalog_labels();
    return t3;
}

const std::vector<std::string>& e3_targets() {
    static const std::vector<std::string> t = {"E8^3", "D16E8"};
    return t;
}

const std::vector<std::string>& listed_e1_roots(int n) {
    static const std::vector<std::string> l1 = normalized({"E8+D7", "E7^2+A1", "E7+A8", "D15", "D12+A3", "D9+A6",
                                                           "A15", "A9+D6", "E6+D7+A2", "A8^2", "A12+A3", "A15"});
    static const std::vector<std::string> l2 = normalized(
        {"E7+E8", "A1+D14", "E8+A8", "A4+D11", "E7+E6+A2", "A1+A1+A13", "D7+D7", "D8+A6", "D5+A10"});
    static const std::vector<std::string> l3 =
        normalized({"E8+E6+A2", "D13+A2", "D10+A5", "E7+D7", "A14", "E6^2+A2^2", "D4+A11", "D7+A8"});
    check_n(n);
    return n == 1 ? l1 : n == 2 ? l2 : l3;
}

long BoundaryCensus::e1_count() const {
    return std::count_if(type_ii.begin(), type_ii.end(), [](const CensusClass& c) { return c.e == 1; });
}

std::vector<CensusClass> census_type_ii(int n, const SearchOptions& opts, int jobs,
                                        std::vector<EmbeddingSearch>* searches) {
    check_n(n);
    std::vector<CensusClass> out;
    std::map<std::string, std::size_t> seen;
    auto collect = [&](int e, const std::vector<EmbeddingSearch>& res) {
        GenusTarget g = genus_target(n, e);
        for (const auto& s : res) {
            if (s.inconclusive) throw std::runtime_error("inconclusive search into " + s.target + ": " + s.reason);
            for (const auto& c : s.classes) {
                std::string key = std::to_string(e) + "|" + c.tuple.key();
                if (seen.count(key)) continue;
                seen[key] = out.size();
                CensusClass cc;
                cc.e = e;
                cc.target = s.target;
                cc.tuple = c.tuple;
                cc.disc = c.disc;
                cc.embedding = c.embedding;
                auto comp = orthogonal_complement(c.embedding.target, [&] {
                    std::vector<IntVec> cols;
                    for (std::size_t j = 0; j < c.embedding.matrix.cols(); ++j) cols.push_back(c.embedding.matrix.col(j));
                    return cols;
                }());
                cc.in_genus = verify_genus_membership(comp.lattice, g);
                out.push_back(std::move(cc));
            }
        }
        if (searches) searches->insert(searches->end(), res.begin(), res.end());
    };
    collect(1, embed_into_niemeier(type_ii_source(n), type_ii_targets(n), opts, jobs));
    collect(3, embed_into_niemeier(catalog("E8"), e3_targets(), opts, jobs));
    return out;
}

long census_type_iii(int n) {
    return isotropic_census(discriminant_form(build_sigma(n).lattice.gram()));
}

std::vector<std::vector<IntVec>> sample_isotropic_planes(const SigmaLattice& s, std::size_t max_count) {
    IntegralLattice k3 = catalog("K3");
    std::size_t r = k3.rank();
    // (U1 + U2) meet T^perp
    IntMatrix a(2, 4);
    for (std::size_t i = 0; i < 2; ++i) {
        IntVec g = k3.gram() * s.t_embedding.col(i);
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = g[j];
    }
    auto p = integer_kernel(a);
    IntegralLattice e8 = catalog("E8");
    std::vector<std::vector<IntVec>> by_norm = {{IntVec(8)}};
    for (long k = 1; k <= 4; ++k) by_norm.push_back(short_vectors(e8, -2 * k));
    IntVec e3(r);
    e3[4] = 1;
    std::vector<std::vector<IntVec>> out;
    std::map<long, std::size_t> per_e;
    for (long x = -4; x <= 4; ++x)
        for (long y = -4; y <= 4; ++y) {
            IntVec v(r);
            for (std::size_t i = 0; i < 4; ++i) v[i] = x * p[0][i] + y * p[1][i];
            Int nv = k3.norm(v);
            if (nv < 0 || nv > 8 || nv % 2 != 0 || (x == 0 && y == 0)) continue;
            const auto& zs = by_norm[nv.get_si() / 2];
            for (std::size_t zi = 0; zi < std::min<std::size_t>(zs.size(), 3); ++zi) {
                IntVec w = v;
                for (std::size_t i = 0; i < 8; ++i) w[6 + i] = zs[zi][i];
                w = primitive(w);
                std::vector<IntVec> j;
                bool ok = true;
                for (const auto& u : {e3, w}) {
                    auto c = solve_integer(s.inclusion, u);
                    if (!c) {
                        ok = false;
                        break;
                    }
                    j.push_back(*c);
                }
                if (!ok || !is_saturated(j, s.lattice.rank())) continue;
                long e = h_j(s.lattice, j);
                if (per_e[e] >= (max_count + 1) / 2) continue;
                ++per_e[e];
                out.push_back(j);
                if (out.size() >= max_count) return out;
            }
        }
    return out;
}

BoundaryCensus run_census(int n, const SearchOptions& opts, int jobs) {
    check_n(n);
    auto start = std::chrono::steady_clock::now();
    BoundaryCensus c;
    c.n = n;
    c.expected_curves = n == 1 ? 14 : n == 2 ? 11 : 10;
    try {
        c.type_ii = census_type_ii(n, opts, jobs, &c.searches);
    } catch (const std::runtime_error& ex) {
        c.inconclusive = true;
        std::string what = ex.what();
        c.reason = what.size() >= 8 && what.compare(what.size() - 8, 8, ": budget") == 0 ? "budget" : what;
    }
    auto fq = discriminant_form(build_sigma(n).lattice.gram());
    c.type_iii = isotropic_census(fq);
    c.type_iii_full_orbits = isotropic_orbits_full(fq);
    std::vector<std::string> found;
    for (const auto& cl : c.type_ii)
        if (cl.e == 1) found.push_back(cl.tuple.roots.str());
    std::vector<std::string> want = listed_e1_roots(n);
    std::sort(found.begin(), found.end());
    std::sort(want.begin(), want.end());
    std::set_difference(want.begin(), want.end(), found.begin(), found.end(), std::back_inserter(c.missing_roots));
    std::set_difference(found.begin(), found.end(), want.begin(), want.end(), std::back_inserter(c.extra_roots));
    // distinct classes must have distinct tuples; identical tuples were merged, so a listed label
    // occurring more often than found signals a merge
    std::map<std::string, int> wc, fc;
    for (const auto& w : want) ++wc[w];
    for (const auto& f : found) ++fc[f];
    for (const auto& [k, v] : wc)
        if (fc[k] > 0 && fc[k] < v) c.tuples_distinct = false;
    auto sigma = build_sigma(n);
    for (const auto& j : sample_isotropic_planes(sigma, 6)) {
        IsotropicSample smp;
        smp.j = j;
        smp.form = isotropic_normal_form(sigma.lattice, j);
        IntegralLattice b("B", smp.form.B);
        smp.in_genus = (smp.form.e == 1 || smp.form.e == 3) &&
                       verify_genus_membership(b, genus_target(n, static_cast<int>(smp.form.e)));
        c.samples.push_back(std::move(smp));
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return c;
}

}  // namespace tri
