#include "trielliptic/reports.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <gmp.h>

#ifndef TRIELLIPTIC_DATA_DIR
#define TRIELLIPTIC_DATA_DIR "data"
#endif

namespace tri {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Json lambda_json(const OneParamSubgroup& l) { return Json::array({l.a, l.b, l.c}); }

Json int_vec(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(x.get_si());
    return a;
}

Json strings(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

IntMatrix int_matrix(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("gram must be a matrix");
    std::vector<std::vector<Int>> rows;
    for (const auto& r : j) {
        std::vector<Int> row;
        for (const auto& x : r) {
            if (x.is_number_integer()) row.emplace_back(x.get<long>());
            else if (x.is_string()) row.emplace_back(x.get<std::string>());
            else throw std::invalid_argument("gram entries must be integers");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return IntMatrix();
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw std::invalid_argument("gram must be square");
    return IntMatrix::from_rows(rows, rows.size());
}

Rat rat_of(const Json& x) {
    if (x.is_number_integer()) return Rat(x.get<long>());
    if (x.is_string()) return parse_rat(x.get<std::string>());
    throw std::invalid_argument("expected an integer or a rational string");
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return Json::parse(in);
}

OneParamSubgroup random_normalized(std::mt19937_64& rng, int bound = 40) {
    std::uniform_int_distribution<long> d(-bound, bound), p(0, bound);
    for (;;) {
        OneParamSubgroup l{p(rng), d(rng), d(rng)};
        if (!l.is_zero() && l.normalized()) return l;
    }
}

std::complex<double> float_gauss(long m, const FiniteQuadraticForm& f) {
    std::complex<double> s = 0;
    for (const auto& x : f.elements()) s += std::exp(std::complex<double>(0, M_PI * m * f.q(x).get_d()));
    return s;
}

bool diagonal_chain(const IntMatrix& d) {
    Int prev = 1;
    bool zero = false;
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (i != j) {
                if (d(i, j) != 0) return false;
                continue;
            }
            if (d(i, i) < 0) return false;
            if (d(i, i) == 0) {
                zero = true;
                continue;
            }
            if (zero || d(i, i) % prev != 0) return false;
            prev = d(i, i);
        }
    return true;
}

// ---------------------------------------------------------------- criteria

CriterionResult families_criterion() {
    CriterionResult r{1, "maximal destabilized families (7 nonpositive, 7 negative)", false, 0, "", Json::object()};
    bool ok = true;
    std::ostringstream sum;
    for (SignKind s : {SignKind::NONPOSITIVE, SignKind::NEGATIVE}) {
        EnumerationStats st;
        auto fams = enumerate_maximal_families(s, &st);
        std::set<unsigned long> got, want;
        Json fj = Json::array();
        for (const auto& f : fams) {
            got.insert(f.full_set.to_ulong());
            fj.push_back(to_json(f));
        }
        Json rows = Json::array();
        bool listed_ok = true;
        for (const auto& rec : family_catalog()) {
            if (rec.sign != s) continue;
            MonoSet m = destabilized_set(rec.lambda, s);
            want.insert(m.to_ulong());
            // listed maxima are maximal elements of the row's set
            MonoSet mx = to_set(maximal_elements(m));
            bool sub = (to_set(rec.listed_maximal) & mx) == to_set(rec.listed_maximal);
            listed_ok = listed_ok && sub;
            rows.push_back({{"label", rec.label}, {"lambda", lambda_json(rec.lambda)}, {"listedAreMaximal", sub}});
        }
        bool eq = got == want && fams.size() == 7;
        ok = ok && eq && listed_ok && st.grid_agrees;
        r.evidence[to_string(s)] = {{"families", fj},
                                    {"tabulatedRows", rows},
                                    {"setEquality", eq},
                                    {"gridBound", st.grid_bound},
                                    {"gridAgrees", st.grid_agrees},
                                    {"hyperplanes", st.hyperplanes},
                                    {"samples", st.samples}};
        sum << to_string(s) << " " << fams.size() << (eq ? " equal" : " differ") << "; ";
    }
    r.pass = ok;
    r.summary = sum.str() + "grid cross-check " + (ok ? "agrees" : "see evidence");
    return r;
}

CriterionResult dimension_criterion() {
    CriterionResult r{2, "stratum dimension table", false, 0, "", Json::object()};
    const std::vector<std::pair<std::string, int>> want = {{"alpha", 4}, {"beta", 1},  {"gamma", 2}, {"eta", 3},
                                                           {"delta", 1}, {"zeta", 10}, {"xi", 7},    {"theta", 8},
                                                           {"phi", 5},   {"r1", 13},   {"r2", 2}};
    auto rows = dimension_table();
    std::map<std::string, int> got;
    Json rj = Json::array();
    for (const auto& row : rows) {
        got[row.label] = row.dim;
        rj.push_back({{"label", row.label}, {"dim", row.dim}, {"method", row.method}});
    }
    bool ok = rows.size() == want.size();
    std::ostringstream tuple;
    for (const auto& [l, d] : want) {
        ok = ok && got.count(l) && got[l] == d;
        tuple << (tuple.tellp() ? "," : "(") << (got.count(l) ? std::to_string(got[l]) : "?");
    }
    tuple << ")";
    r.pass = ok;
    r.evidence["rows"] = rj;
    r.summary = "(alpha..r2) = " + tuple.str();
    return r;
}

CriterionResult picard_criterion() {
    CriterionResult r{3, "Picard ranks (3,4,3)", false, 0, "", Json::array()};
    const long want[] = {3, 4, 3};
    bool ok = true;
    std::ostringstream sum;
    auto s3 = Cyclotomic::sqrt_minus_3(6);
    for (int n = 1; n <= 3; ++n) {
        auto f = sigma_form(n);
        auto sel = picard_rank(f);
        const auto& c = sel.chosen();
        bool rank_ok = c.integral() && *c.value == want[n - 1] && std::abs(c.approx - want[n - 1]) < 1e-9;
        bool alpha_ok = alpha_invariants(f).alpha3 == Rat(6 - n) / 3;
        bool gauss_ok = true;
        Json gj = Json::array();
        for (long m : {1L, 2L, -3L}) {
            Cyclotomic closed;
            if (n < 3) closed = m == -3 ? s3 * Rat(n == 1 ? -3 : 3) : Cyclotomic::rational(1, 3);
            else closed = Cyclotomic::rational(1, 3 * std::gcd(3L, std::labs(m)));
            auto g = gauss_sum(m, f);
            double diff = std::abs(g.evaluate() - float_gauss(m, f));
            bool one = g == closed && std::abs(g.evaluate() - closed.evaluate()) < 1e-9 && diff < 1e-9;
            gauss_ok = gauss_ok && one;
            gj.push_back({{"m", m}, {"exact", g.str()}, {"closedForm", closed.str()}, {"floatError", diff}, {"ok", one}});
        }
        ok = ok && rank_ok && alpha_ok && gauss_ok;
        r.evidence.push_back({{"lattice", "Sigma" + std::to_string(n)},
                              {"picard", to_json(sel)},
                              {"alpha3Matches", alpha_ok},
                              {"gaussSums", gj}});
        sum << (n > 1 ? "," : "rho = (") << (c.value ? rat_str(*c.value) : "non-rational");
    }
    sum << ") under the " << to_string(picard_rank(sigma_form(1)).selected) << " convention";
    r.pass = ok;
    r.summary = sum.str();
    return r;
}

std::vector<EmbeddingSearch> l8_searches(const AcceptanceOptions& o) {
    return embed_into_niemeier(catalog("L8"), niemeier_catalog_labels(), o.search, o.jobs);
}

CriterionResult l8_criterion(const AcceptanceOptions& o) {
    CriterionResult r{4, "L8 complements in the 10 Niemeier targets", false, 0, "", Json::object()};
    auto searches = l8_searches(o);
    std::map<std::string, InvariantTuple> classes;
    bool inconclusive = false, d24_empty = false;
    Json sj = Json::array();
    std::set<std::string> bounds;
    for (const auto& s : searches) {
        inconclusive = inconclusive || s.inconclusive;
        if (s.target == "M(D24)") d24_empty = s.classes.empty() && !s.inconclusive;
        for (const auto& c : s.classes) classes.emplace(c.tuple.key(), c.tuple);
        for (const auto& b : s.bounds) bounds.insert(b);
        sj.push_back(to_json(s));
    }
    std::multiset<std::string> found, want;
    for (const auto& [k, t] : classes) found.insert(t.roots.str());
    for (const auto& l : listed_e1_roots(2)) want.insert(l);
    std::vector<std::string> missing, extra;
    std::set_difference(want.begin(), want.end(), found.begin(), found.end(), std::back_inserter(missing));
    std::set_difference(found.begin(), found.end(), want.begin(), want.end(), std::back_inserter(extra));
    r.pass = !inconclusive && d24_empty && classes.size() == 9 && missing.empty() && extra.empty();
    r.evidence = {{"searches", sj},
                  {"distinctClasses", classes.size()},
                  {"found", strings(std::vector<std::string>(found.begin(), found.end()))},
                  {"missing", strings(missing)},
                  {"extra", strings(extra)},
                  {"d24Empty", d24_empty},
                  {"inconclusive", inconclusive},
                  {"bounds", strings(std::vector<std::string>(bounds.begin(), bounds.end()))}};
    std::ostringstream sum;
    sum << classes.size() << " classes (want 9)";
    if (!missing.empty()) {
        sum << "; missing";
        for (const auto& m : missing) sum << " " << m;
    }
    if (!extra.empty()) {
        sum << "; extra";
        for (const auto& e : extra) sum << " " << e;
    }
    sum << "; D24 " << (d24_empty ? "empty" : "NOT empty");
    if (inconclusive) sum << "; inconclusive";
    r.summary = sum.str();
    return r;
}

CriterionResult census_criterion(const AcceptanceOptions& o) {
    CriterionResult r{5, "boundary census (14,2) (11,2) (10,2)", false, 0, "", Json::array()};
    bool ok = true;
    std::ostringstream sum;
    for (int n = 1; n <= 3; ++n) {
        auto c = run_census(n, o.search, o.jobs);
        bool genus = std::all_of(c.type_ii.begin(), c.type_ii.end(), [](const CensusClass& k) { return k.in_genus; });
        bool good = !c.inconclusive && c.counts_match() && c.labels_match() && c.tuples_distinct && genus;
        ok = ok && good;
        r.evidence.push_back(census_report(c, false));
        sum << (n > 1 ? "; " : "") << "n=" << n << " (" << c.curves() << "," << c.type_iii << ")";
        if (!c.missing_roots.empty() || !c.extra_roots.empty()) sum << " labels differ";
        if (c.inconclusive) sum << " inconclusive: " << c.reason;
    }
    r.pass = ok;
    r.summary = sum.str();
    return r;
}

CriterionResult property_criterion(const AcceptanceOptions& o) {
    CriterionResult r{6, "property suites", false, 0, "", Json::object()};
    std::mt19937_64 rng(o.seed);

    // Milgram: G(1) = sqrt|A| exp(pi i sig / 4)
    std::vector<std::tuple<std::string, FiniteQuadraticForm, int>> forms;
    for (int n = 1; n <= 3; ++n) {
        forms.emplace_back("Sigma" + std::to_string(n), sigma_form(n), -16);
        forms.emplace_back("T" + std::to_string(n), discriminant_form(t_gram(n)), 0);
    }
    for (int k = 1; k <= 12; ++k) forms.emplace_back("A" + std::to_string(k), discriminant_form(catalog("A" + std::to_string(k)).gram()), -k);
    for (int k = 4; k <= 12; ++k) forms.emplace_back("D" + std::to_string(k), discriminant_form(catalog("D" + std::to_string(k)).gram()), -k);
    for (int k = 6; k <= 8; ++k) forms.emplace_back("E" + std::to_string(k), discriminant_form(catalog("E" + std::to_string(k)).gram()), -k);
    forms.emplace_back("L8", discriminant_form(catalog("L8").gram()), -8);
    long milgram_bad = 0;
    double worst = 0;
    for (const auto& [name, f, sig] : forms) {
        auto g = gauss_sum(1, f).evaluate();
        auto want = std::sqrt(static_cast<double>(f.size())) * std::exp(std::complex<double>(0, M_PI * sig / 4));
        double e = std::abs(g - want);
        worst = std::max(worst, e);
        if (e >= 1e-9) ++milgram_bad;
    }
    r.evidence["milgram"] = {{"forms", forms.size()}, {"failures", milgram_bad}, {"maxError", worst}};

    // Smith form and saturation round trips
    long snf_bad = 0, sat_bad = 0;
    std::uniform_int_distribution<int> dim(1, 24), ent(-9, 9);
    for (int t = 0; t < 1000; ++t) {
        std::size_t rows = dim(rng), cols = dim(rng);
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = ent(rng);
        if (t % 7 == 0 && rows > 1)
            for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2 * m(0, j);
        Smith s = smith_normal_form(m);
        if (!(s.U * m * s.V == s.D) || abs(det(s.U)) != 1 || abs(det(s.V)) != 1 || !diagonal_chain(s.D)) ++snf_bad;
        std::vector<IntVec> sub;
        for (std::size_t j = 0; j < std::min<std::size_t>(cols, rows); ++j) {
            IntVec v = m.col(j);
            for (auto& x : v) x *= (j % 3) + 1;
            sub.push_back(v);
        }
        if (rank(IntMatrix::from_cols(sub, rows)) != sub.size()) continue;
        auto sat = saturate(sub, rows);
        // sat is saturated of the same rank, and adding sub does not raise the rank, so sub lies in sat
        std::vector<IntVec> both = sat;
        both.insert(both.end(), sub.begin(), sub.end());
        bool ok = is_saturated(sat, rows) && sat.size() == sub.size() &&
                  rank(IntMatrix::from_cols(both, rows)) == sat.size();
        if (!ok) ++sat_bad;
    }
    r.evidence["smith"] = {{"matrices", 1000}, {"failures", snf_bad}, {"saturationFailures", sat_bad}};

    // weights are monotone along the degeneration order
    std::vector<OneParamSubgroup> ls;
    for (int t = 0; t < 500; ++t) ls.push_back(random_normalized(rng));
    long pairs = 0, mono_bad = 0, downset_bad = 0;
    for (const auto& a : all_monomials())
        for (const auto& b : all_monomials()) {
            if (!degeneration_leq(a, b)) continue;
            for (const auto& l : ls) {
                ++pairs;
                if (weight(a, l) > weight(b, l)) ++mono_bad;
            }
        }
    for (const auto& l : ls)
        for (SignKind s : {SignKind::NONPOSITIVE, SignKind::NEGATIVE})
            if (!is_down_set(destabilized_set(l, s))) ++downset_bad;
    r.evidence["degeneration"] = {{"lambdas", ls.size()}, {"comparablePairChecks", pairs}, {"failures", mono_bad},
                                  {"downSetFailures", downset_bad}};

    // Euler relations on random forms and family members
    long euler_bad = 0, euler_n = 0;
    auto euler = [](const Poly& f) {
        Poly ex = bi::x0() * f.derivative(bi::X0) + bi::x1() * f.derivative(bi::X1);
        Poly ey = bi::y0() * f.derivative(bi::Y0) + bi::y1() * f.derivative(bi::Y1) + bi::y2() * f.derivative(bi::Y2);
        return ex == f * Rat(2) && ey == f * Rat(3);
    };
    std::uniform_int_distribution<long> coef(-20, 20);
    for (int t = 0; t < 50; ++t) {
        Poly f(5);
        for (const auto& m : all_monomials()) f += m.poly() * Rat(coef(rng));
        ++euler_n;
        if (!euler(f)) ++euler_bad;
    }
    for (const auto& l : geometry_labels()) {
        ++euler_n;
        if (!euler(random_member(l, rng))) ++euler_bad;
    }
    r.evidence["euler"] = {{"forms", euler_n}, {"failures", euler_bad}};

    // Niemeier catalog validity
    Json nj = Json::array();
    bool niemeier_ok = true;
    for (const auto& spec : niemeier_specs()) {
        bool ok = false;
        std::string err;
        try {
            const auto& l = build_niemeier(spec).lattice;
            long want = 0;
            for (const auto& c : spec.components) want += parse_root_label(c).root_count();
            ok = l.is_even() && abs(l.det()) == 1 && l.negative_definite() &&
                 static_cast<long>(roots(l).size()) == want;
        } catch (const std::exception& e) {
            err = e.what();
        }
        niemeier_ok = niemeier_ok && ok;
        nj.push_back({{"label", spec.label}, {"valid", ok}, {"error", err}});
    }
    r.evidence["niemeier"] = nj;

    // A_{S-perp} = -A_S for the L8 complements
    auto l8 = catalog("L8");
    auto minus = discriminant_form(l8.gram()).negated();
    long comps = 0, neg_bad = 0;
    for (const auto& s : l8_searches(o))
        for (const auto& c : s.classes) {
            ++comps;
            auto cc = classify_complement(c.embedding);
            if (!isomorphic(cc.disc, minus)) ++neg_bad;
        }
    r.evidence["negationLaw"] = {{"complements", comps}, {"failures", neg_bad}};

    Json ej = Json::array();
    bool eichler_ok = true;
    for (int n = 4; n <= 8; ++n) {
        auto c = eichler_orbit_check(n);
        eichler_ok = eichler_ok && c.equal;
        ej.push_back(to_json(c));
    }
    r.evidence["eichler"] = ej;

    r.pass = milgram_bad == 0 && snf_bad == 0 && sat_bad == 0 && mono_bad == 0 && downset_bad == 0 &&
             euler_bad == 0 && niemeier_ok && comps > 0 && neg_bad == 0 && eichler_ok;
    std::ostringstream sum;
    sum << "Milgram " << forms.size() - milgram_bad << "/" << forms.size() << ", SNF " << 1000 - snf_bad
        << "/1000, monotone " << pairs - mono_bad << "/" << pairs << ", Euler " << euler_n - euler_bad << "/" << euler_n
        << ", Niemeier " << (niemeier_ok ? "valid" : "INVALID") << ", negation " << comps - neg_bad << "/" << comps
        << ", Eichler D4-D8 " << (eichler_ok ? "true" : "FALSE");
    r.summary = sum.str();
    return r;
}

CriterionResult geometry_criterion(const AcceptanceOptions& o) {
    CriterionResult r{7, "geometric characterizations on random members", false, 0, "", Json::array()};
    const std::vector<std::string> required = {"N1",    "N2",   "N3",    "N4",    "N5",    "N6",  "N7",
                                               "U1",    "U2",   "U3",    "U4",    "U5",    "U6",  "U7",
                                               "alpha", "beta", "gamma", "delta", "tau",   "tau'", "theta",
                                               "phi"};
    const auto& labels = geometry_labels();
    bool covered = std::all_of(required.begin(), required.end(), [&](const std::string& l) {
        return std::find(labels.begin(), labels.end(), l) != labels.end();
    });
    long total = 0, passed = 0;
    for (const auto& l : labels) {
        auto v = verify_family(l, o.samples, o.seed);
        total += v.samples;
        passed += v.passed;
        r.evidence.push_back(to_json(v));
    }
    r.pass = covered && total == passed && total == o.samples * static_cast<long>(labels.size());
    r.summary = std::to_string(passed) + "/" + std::to_string(total) + " members over " +
                std::to_string(labels.size()) + " families, seed " + std::to_string(o.seed);
    return r;
}

}  // namespace

// ---------------------------------------------------------------- json

std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_str();
}

Rat parse_rat(const std::string& s) {
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

Json to_json(const IntMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(int_vec(m.row(i)));
    return a;
}

Json to_json(const FiniteQuadraticForm& f) {
    Json q = Json::array(), b = Json::array();
    for (std::size_t i = 0; i < f.rank(); ++i) {
        q.push_back(rat_str(f.gram()(i, i)));
        for (std::size_t j = i + 1; j < f.rank(); ++j) b.push_back(rat_str(f.gram()(i, j)));
    }
    return {{"orders", f.orders()}, {"q", q}, {"b", b}, {"size", f.size()}, {"str", f.str()}};
}

Json to_json(const MonomialFamily& f) {
    Json mx = Json::array();
    for (const auto& m : f.maximal_monomials) mx.push_back(m.str());
    return {{"label", f.label},
            {"sign", to_string(f.sign)},
            {"witnessLambda", lambda_json(f.witness_lambda)},
            {"foundLambda", lambda_json(f.found_lambda)},
            {"maximalMonomials", mx},
            {"size", f.full_set.count()}};
}

Json to_json(const Classification& c) {
    Json j = {{"verdict", to_string(c.verdict)}, {"family", c.family}, {"lpCertificate", c.lp_certificate}};
    j["witness"] = c.witness ? lambda_json(*c.witness) : Json();
    return j;
}

Json to_json(const PicardSelection& p) {
    auto one = [](const PicardRank& r) {
        return Json{{"convention", to_string(r.convention)},
                    {"alpha3", rat_str(r.alpha3)},
                    {"alpha4", r.alpha4},
                    {"g1", r.g1.str()},
                    {"g2", r.g2.str()},
                    {"gMinus3", r.gm3.str()},
                    {"value", r.value ? Json(rat_str(*r.value)) : Json()},
                    {"approx", r.approx},
                    {"integral", r.integral()}};
    };
    return {{"selected", to_string(p.selected)},
            {"rho", p.chosen().value ? Json(rat_str(*p.chosen().value)) : Json()},
            {"allOrbits", one(p.all_orbits)},
            {"isotropicOrbits", one(p.isotropic_orbits)}};
}

Json to_json(const InvariantTuple& t) {
    Json prof = Json::array();
    for (const auto& [o, q] : t.disc_profile) prof.push_back({o, rat_str(q)});
    return {{"rank", t.rank},
            {"discOrders", t.disc_orders},
            {"discProfile", prof},
            {"rootSystem", t.roots.str()},
            {"thetaCoeffs", Json::array({t.theta[0], t.theta[1], t.theta[2], t.theta[3]})},
            {"rootIndex", t.root_index.get_str()},
            {"rootGlue", t.root_glue}};
}

Json to_json(const EmbeddingSearch& s) {
    Json cl = Json::array();
    for (const auto& c : s.classes)
        cl.push_back({{"tuple", to_json(c.tuple)},
                      {"discForm", to_json(c.disc)},
                      {"representatives", c.representatives},
                      {"embedding", to_json(c.embedding.matrix)}});
    return {{"source", s.source},       {"target", s.target},   {"nodes", s.nodes},
            {"representatives", s.representatives}, {"primitive", s.primitive}, {"classes", cl},
            {"inconclusive", s.inconclusive}, {"reason", s.reason}, {"bounds", strings(s.bounds)}};
}

Json to_json(const IsotropicNormalForm& f) {
    return {{"e", f.e}, {"t", f.t}, {"basis", to_json(f.basis)}, {"B", to_json(f.B)}, {"gram", to_json(f.full)}};
}

Json to_json(const OrbitCheck& c) {
    return {{"lattice", c.lattice},
            {"norm", rat_str(c.norm)},
            {"cosetVectors", c.coset_vectors},
            {"orbit", c.orbit},
            {"equal", c.equal}};
}

Json to_json(const FamilyVerification& v) {
    return {{"label", v.label},
            {"seed", v.seed},
            {"samples", v.samples},
            {"passed", v.passed},
            {"failures", strings(v.failures)}};
}

Json census_report(const BoundaryCensus& c, bool timing) {
    Json t2 = Json::array();
    for (const auto& k : c.type_ii) {
        t2.push_back({{"e", k.e},
                      {"target", k.target},
                      {"rootSystem", k.tuple.roots.str()},
                      {"thetaCoeffs", Json::array({k.tuple.theta[0], k.tuple.theta[1], k.tuple.theta[2], k.tuple.theta[3]})},
                      {"discForm", to_json(k.disc)},
                      {"rootIndex", k.tuple.root_index.get_str()},
                      {"rootGlue", k.tuple.root_glue},
                      {"inGenus", k.in_genus},
                      {"embedding", to_json(k.embedding.matrix)}});
    }
    std::set<std::string> bounds;
    Json sj = Json::array();
    for (const auto& s : c.searches) {
        for (const auto& b : s.bounds) bounds.insert(b);
        sj.push_back({{"source", s.source},
                      {"target", s.target},
                      {"nodes", s.nodes},
                      {"representatives", s.representatives},
                      {"primitive", s.primitive},
                      {"classes", s.classes.size()},
                      {"inconclusive", s.inconclusive}});
    }
    Json samples = Json::array();
    for (const auto& s : c.samples) samples.push_back({{"e", s.form.e}, {"t", s.form.t}, {"inGenus", s.in_genus}});
    Json j = {{"schemaVersion", kSchemaVersion},
              {"n", c.n},
              {"typeII", t2},
              {"typeIII", c.type_iii},
              {"typeIIIFullOrbits", c.type_iii_full_orbits},
              {"curves", c.curves()},
              {"expectedCurves", c.expected_curves},
              {"expectedPoints", c.expected_points},
              {"countsMatch", c.counts_match()},
              {"labelsMatch", c.labels_match()},
              {"missingRoots", strings(c.missing_roots)},
              {"extraRoots", strings(c.extra_roots)},
              {"tuplesDistinct", c.tuples_distinct},
              {"isotropicSamples", samples},
              {"searches", sj},
              {"searchBounds", strings(std::vector<std::string>(bounds.begin(), bounds.end()))},
              {"inconclusive", c.inconclusive},
              {"reason", c.reason}};
    j["runtimeSec"] = timing ? Json(c.seconds) : Json();
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- catalogs

IntegralLattice CatalogEntry::lattice() const {
    IntegralLattice base(name, gram);
    if (glue.empty()) return base;
    return IntegralLattice(name, reduced(overlattice(base, glue)).gram());
}

std::vector<CatalogEntry> parse_lattice_catalog(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("lattice catalog must be a JSON array");
    std::vector<CatalogEntry> out;
    for (const auto& e : j) {
        CatalogEntry c;
        c.name = e.at("name").get<std::string>();
        c.gram = int_matrix(e.at("gram"));
        if (e.contains("glue"))
            for (const auto& g : e.at("glue")) {
                RatVec v;
                for (const auto& x : g) v.push_back(rat_of(x));
                if (v.size() != c.gram.rows()) throw std::invalid_argument("glue vector length mismatch in " + c.name);
                c.glue.push_back(std::move(v));
            }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CatalogEntry> load_lattice_catalog(const std::string& path) { return parse_lattice_catalog(read_json(path)); }

std::vector<CatalogEntry> builtin_lattice_catalog() {
    std::vector<CatalogEntry> out;
    for (const auto& spec : niemeier_specs()) {
        std::vector<IntegralLattice> parts;
        std::vector<std::pair<char, int>> comps;
        for (const auto& c : spec.components) {
            comps.emplace_back(c[0], std::stoi(c.substr(1)));
            parts.push_back(root_lattice(c[0], comps.back().second));
        }
        CatalogEntry e;
        e.name = "M(" + spec.label + ")";
        e.gram = direct_sum(parts).gram();
        for (const auto& word : spec.glue) {
            RatVec g;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                RatVec p = glue_class(comps[i].first, comps[i].second, word[i]);
                g.insert(g.end(), p.begin(), p.end());
            }
            e.glue.push_back(g);
        }
        out.push_back(std::move(e));
    }
    out.push_back({"L8", catalog("L8").gram(), {}});
    return out;
}

Json to_json(const CatalogEntry& e) {
    Json glue = Json::array();
    for (const auto& g : e.glue) {
        Json v = Json::array();
        for (const auto& x : g) v.push_back(rat_str(x));
        glue.push_back(v);
    }
    return {{"name", e.name}, {"gram", to_json(e.gram)}, {"glue", glue}};
}

FiniteQuadraticForm FormEntry::form() const {
    if (gram) return discriminant_form(*gram);
    return form_from_generators(orders, q, b);
}

std::vector<FormEntry> parse_form_catalog(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("form catalog must be a JSON array");
    std::vector<FormEntry> out;
    for (const auto& e : j) {
        FormEntry f;
        f.name = e.at("name").get<std::string>();
        if (e.contains("gram")) {
            f.gram = int_matrix(e.at("gram"));
        } else if (e.contains("generators")) {
            const auto& g = e.at("generators");
            f.orders = g.at("orders").get<std::vector<long>>();
            for (const auto& x : g.at("q")) f.q.push_back(rat_of(x));
            if (g.contains("b"))
                for (const auto& x : g.at("b")) f.b.push_back(rat_of(x));
            if (f.q.size() != f.orders.size()) throw std::invalid_argument("orders and q differ in length in " + f.name);
        } else {
            throw std::invalid_argument("form entry " + f.name + " needs gram or generators");
        }
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<FormEntry> load_form_catalog(const std::string& path) { return parse_form_catalog(read_json(path)); }

std::vector<FormEntry> builtin_form_catalog() {
    std::vector<FormEntry> out;
    for (int n = 1; n <= 3; ++n) {
        auto f = sigma_form(n);
        FormEntry e;
        e.name = "Sigma" + std::to_string(n);
        e.orders = f.orders();
        for (std::size_t i = 0; i < f.rank(); ++i) {
            e.q.push_back(f.gram()(i, i));
            for (std::size_t k = i + 1; k < f.rank(); ++k) e.b.push_back(f.gram()(i, k));
        }
        out.push_back(std::move(e));
    }
    for (int n = 1; n <= 3; ++n) {
        FormEntry e;
        e.name = "T" + std::to_string(n);
        e.gram = t_gram(n);
        out.push_back(std::move(e));
    }
    return out;
}

Json to_json(const FormEntry& e) {
    if (e.gram) return {{"name", e.name}, {"gram", to_json(*e.gram)}};
    Json q = Json::array(), b = Json::array();
    for (const auto& x : e.q) q.push_back(rat_str(x));
    for (const auto& x : e.b) b.push_back(rat_str(x));
    return {{"name", e.name}, {"generators", {{"orders", e.orders}, {"q", q}, {"b", b}}}};
}

std::string catalog_dir() {
    if (const char* env = std::getenv("TRIELLIPTIC_CATALOG"); env && *env) return env;
    return TRIELLIPTIC_DATA_DIR;
}

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::uint64_t h = 14695981039346656037ULL;
    char ch;
    while (in.get(ch)) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << h;
    return o.str();
}

Json RunManifest::to_json() const {
    std::string dir = catalog_dir();
    Json j = {{"schemaVersion", kSchemaVersion},
              {"command", strings(command)},
              {"seed", seed},
              {"bounds", {{"maxLeaves", bounds.max_leaves}, {"maxNodes", bounds.max_nodes}, {"budgetSeconds", bounds.budget_seconds}}},
              {"jobs", jobs},
              {"catalogChecksums",
               {{"niemeier.json", file_checksum(dir + "/niemeier.json")}, {"forms.json", file_checksum(dir + "/forms.json")}}},
              {"versions", {{"trielliptic", "1.0.0"}, {"gmp", gmp_version}, {"compiler", __VERSION__}}}};
    if (timing) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["startedAt"] = buf;
    }
    return j;
}

// ---------------------------------------------------------------- acceptance

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
    auto start = Clock::now();
    CriterionResult r;
    try {
        switch (id) {
            case 1: r = families_criterion(); break;
            case 2: r = dimension_criterion(); break;
            case 3: r = picard_criterion(); break;
            case 4: r = l8_criterion(opts); break;
            case 5: r = census_criterion(opts); break;
            case 6: r = property_criterion(opts); break;
            case 7: r = geometry_criterion(opts); break;
            default: throw std::invalid_argument("criteria are numbered 1 to " + std::to_string(kCriteria));
        }
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        r.id = id;
        r.pass = false;
        r.summary = std::string("error: ") + e.what();
        r.evidence = {{"error", e.what()}};
    }
    r.seconds = since(start);
    return r;
}

std::string result_line(const CriterionResult& r) {
    std::ostringstream o;
    o << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " " << r.title << ": " << r.summary << " ["
      << std::fixed << std::setprecision(2) << r.seconds << " s]";
    return o.str();
}

Json to_json(const CriterionResult& r, bool timing) {
    Json j = {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"summary", r.summary}, {"evidence", r.evidence}};
    j["seconds"] = timing ? Json(r.seconds) : Json();
    return j;
}

}  // namespace tri
