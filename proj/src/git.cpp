#include "trielliptic/git.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tri {

std::string BiMonomial::str() const {
    static const char* xs[] = {"x1^2", "x0*x1", "x0^2"};
    std::string s = xs[u];
    auto put = [&](const char* n, int e) {
        if (e == 0) return;
        s += "*";
        s += n;
        if (e > 1) s += "^" + std::to_string(e);
    };
    put("y0", v);
    put("y1", w);
    put("y2", y2_exp());
    return s;
}

const std::vector<BiMonomial>& all_monomials() {
    static const std::vector<BiMonomial> all = [] {
        std::vector<BiMonomial> r;
        for (int u = 0; u <= 2; ++u)
            for (int v = 0; v <= 3; ++v)
                for (int w = 0; v + w <= 3; ++w) r.push_back({u, v, w});
        return r;
    }();
    return all;
}

int index_of(const BiMonomial& m) {
    if (!m.valid()) throw std::invalid_argument("not a bidegree (2,3) monomial");
    // 10 monomials per value of u; within a block, v-major.
    int idx = 10 * m.u;
    for (int v = 0; v < m.v; ++v) idx += 4 - v;
    return idx + m.w;
}

std::vector<BiMonomial> members(const MonoSet& s) {
    std::vector<BiMonomial> r;
    for (int i = 0; i < kNumMonomials; ++i)
        if (s[i]) r.push_back(all_monomials()[i]);
    return r;
}

MonoSet to_set(const std::vector<BiMonomial>& ms) {
    MonoSet s;
    for (const auto& m : ms) s.set(index_of(m));
    return s;
}

BiMonomial from_exponents(const std::vector<int>& e) {
    if (e.size() != 5 || e[0] + e[1] != 2 || e[2] + e[3] + e[4] != 3)
        throw std::invalid_argument("exponent vector is not of bidegree (2,3)");
    return {e[0], e[2], e[3]};
}

BiMonomial a_index(int i, int j, int k) { return {2 - i, 3 - j - k, j}; }

OneParamSubgroup OneParamSubgroup::primitive() const {
    long g = std::gcd(std::gcd(std::labs(a), std::labs(b)), std::labs(c));
    if (g == 0) return *this;
    return {a / g, b / g, c / g};
}

std::string OneParamSubgroup::str() const {
    std::ostringstream os;
    os << "(" << a << "," << -a << "," << b << "," << c << "," << -b - c << ")";
    return os.str();
}

long weight(const BiMonomial& m, const OneParamSubgroup& l) {
    return l.a * (2 * m.u - 2) + l.b * m.v + l.c * m.w - (l.b + l.c) * m.y2_exp();
}

std::array<long, 3> weight_functional(const BiMonomial& m) {
    return {2L * m.u - 2, 2L * m.v + m.w - 3, m.v + 2L * m.w - 3};
}

bool degeneration_leq(const BiMonomial& m1, const BiMonomial& m2) {
    return m1.u <= m2.u && m1.v <= m2.v && m1.v + m1.w <= m2.v + m2.w;
}

const char* to_string(SignKind s) { return s == SignKind::NONPOSITIVE ? "nonpositive" : "negative"; }

MonoSet destabilized_set(const OneParamSubgroup& l, SignKind s) {
    MonoSet r;
    const auto& all = all_monomials();
    for (int i = 0; i < kNumMonomials; ++i) {
        long wt = weight(all[i], l);
        if (s == SignKind::NEGATIVE ? wt < 0 : wt <= 0) r.set(i);
    }
    return r;
}

MonoSet down_set(const std::vector<BiMonomial>& gens) {
    MonoSet r;
    const auto& all = all_monomials();
    for (int i = 0; i < kNumMonomials; ++i)
        for (const auto& g : gens)
            if (degeneration_leq(all[i], g)) {
                r.set(i);
                break;
            }
    return r;
}

bool is_down_set(const MonoSet& s) { return down_set(members(s)) == s; }

std::vector<BiMonomial> maximal_elements(const MonoSet& s) {
    auto ms = members(s);
    std::vector<BiMonomial> r;
    for (const auto& m : ms) {
        bool top = true;
        for (const auto& o : ms)
            if (o != m && degeneration_leq(m, o)) {
                top = false;
                break;
            }
        if (top) r.push_back(m);
    }
    return r;
}

MonoSet support(const Poly& f) {
    if (!bi::is_bidegree_23(f)) throw std::invalid_argument("polynomial is not of bidegree (2,3)");
    MonoSet s;
    for (const auto& [e, c] : f.terms()) s.set(index_of(from_exponents(e)));
    return s;
}

namespace {

// Monomials x^u * times * (all monomials of degree deg in the given y variables).
MonoSet forms(int u, std::vector<int> vars, int deg, std::array<int, 3> times) {
    MonoSet s;
    std::array<int, 3> y{};
    auto rec = [&](auto&& self, std::size_t k, int left) -> void {
        if (k == vars.size()) {
            if (left != 0) return;
            std::array<int, 3> e = times;
            for (int i = 0; i < 3; ++i) e[i] += y[i];
            s.set(index_of({u, e[0], e[1]}));
            return;
        }
        for (int d = 0; d <= left; ++d) {
            y[vars[k]] = d;
            self(self, k + 1, left - d);
        }
        y[vars[k]] = 0;
    };
    rec(rec, 0, deg);
    return s;
}

constexpr int Y0 = 0, Y1 = 1, Y2 = 2;

std::vector<BiMonomial> parse_list(std::initializer_list<std::array<int, 3>> l) {
    std::vector<BiMonomial> r;
    for (auto& a : l) r.push_back({a[0], a[1], a[2]});
    return r;
}

}  // namespace

const std::vector<FamilyRecord>& family_catalog() {
    using S = SignKind;
    static const std::vector<FamilyRecord> cat = [] {
        std::vector<FamilyRecord> c;
        const std::vector<int> all{Y0, Y1, Y2}, y12{Y1, Y2}, y01{Y0, Y1};
        // Not properly stable rows.
        c.push_back({"N1", S::NONPOSITIVE, {3, 2, 2}, parse_list({{0, 3, 0}, {1, 2, 0}, {2, 1, 0}}),
                     forms(0, all, 3, {0, 0, 0}) | forms(1, y01, 2, {0, 0, 1}) | forms(2, all, 1, {0, 0, 2}),
                     "x1^2 c(y0,y1,y2) + x0x1 y2 q(y0,y1) + x0^2 y2^2 l(y0,y1,y2)"});
        c.push_back({"N2", S::NONPOSITIVE, {3, 2, 0}, parse_list({{0, 3, 0}, {1, 1, 1}, {2, 0, 0}}),
                     forms(0, all, 3, {0, 0, 0}) | forms(1, y12, 3, {0, 0, 0}) | forms(1, y12, 1, {1, 0, 1}) |
                         forms(2, {}, 0, {0, 0, 3}),
                     "x1^2 c0(y0,y1,y2) + x0x1 [c1(y1,y2) + y0 y2 l(y1,y2)] + mu x0^2 y2^3"});
        c.push_back({"N3", S::NONPOSITIVE, {3, 4, -2}, parse_list({{0, 2, 1}, {1, 1, 2}, {2, 0, 3}}),
                     forms(0, y12, 3, {0, 0, 0}) | forms(0, y12, 2, {1, 0, 0}) | forms(0, y12, 1, {2, 0, 0}) |
                         forms(1, y12, 3, {0, 0, 0}) | forms(1, y12, 2, {1, 0, 0}) | forms(2, y12, 3, {0, 0, 0}),
                     "x1^2 [c1(y1,y2) + y0 q1(y1,y2) + y0^2 l(y1,y2)] + x0x1 [c2(y1,y2) + y0 q2(y1,y2)] + "
                     "x0^2 c0(y1,y2)"});
        {
            MonoSet n4;
            for (int u = 0; u <= 2; ++u) n4 |= forms(u, y12, 3, {0, 0, 0}) | forms(u, y12, 2, {1, 0, 0});
            c.push_back({"N4", S::NONPOSITIVE, {0, 2, -1}, parse_list({{2, 1, 2}}), n4,
                         "sum over x-monomials of [c_i(y1,y2) + y0 q_i(y1,y2)]"});
        }
        c.push_back({"N5", S::NONPOSITIVE, {1, 2, 0},
                     parse_list({{0, 2, 0}, {1, 1, 1}, {2, 1, 0}, {2, 0, 2}}),
                     forms(0, y12, 3, {0, 0, 0}) | forms(0, y12, 2, {1, 0, 0}) | forms(0, {}, 0, {2, 0, 1}) |
                         forms(1, y12, 3, {0, 0, 0}) | forms(1, y12, 1, {1, 0, 1}) | forms(2, y12, 2, {0, 0, 1}) |
                         forms(2, {}, 0, {1, 0, 2}),
                     "x1^2 [c0(y1,y2) + y0 q(y1,y2) + mu y0^2 y2] + x0x1 [c1(y1,y2) + y0 y2 l(y1,y2)] + "
                     "x0^2 y2 (q(y1,y2) + nu y0 y2)"});
        {
            MonoSet n6;
            for (int u = 0; u <= 2; ++u) n6 |= forms(u, all, 2, {0, 0, 1});
            c.push_back({"N6", S::NONPOSITIVE, {0, 1, 1}, parse_list({{2, 2, 0}}), n6,
                         "y2 q(x0,x1,y0,y1,y2)"});
        }
        c.push_back({"N7", S::NONPOSITIVE, {1, 0, 0}, parse_list({{1, 3, 0}}),
                     forms(1, all, 3, {0, 0, 0}) | forms(0, all, 3, {0, 0, 0}),
                     "x1 [x0 c0(y0,y1,y2) + x1 c1(y0,y1,y2)]"});

        // Unstable rows; the table lists no monomials for these.
        c.push_back({"U1", S::NEGATIVE, {5, 3, -1}, {},
                     forms(0, all, 3, {0, 0, 0}) | forms(1, y12, 3, {0, 0, 0}) | forms(1, {}, 0, {1, 0, 2}),
                     "x1^2 c(y0,y1,y2) + x0x1 [c0(y1,y2) + mu y0 y2^2]"});
        c.push_back({"U2", S::NEGATIVE, {4, 2, 1}, {},
                     forms(0, all, 3, {0, 0, 0}) | forms(1, all, 1, {0, 0, 2}) | forms(1, {}, 0, {0, 2, 1}) |
                         forms(2, {}, 0, {0, 0, 3}),
                     "x1^2 c0(y0,y1,y2) + x0x1 (y2^2 l(y0,y1,y2) + mu y2 y1^2) + nu x0^2 y2^3"});
        c.push_back({"U3", S::NEGATIVE, {4, 4, -1}, {},
                     forms(0, y12, 3, {0, 0, 0}) | forms(0, y12, 2, {1, 0, 0}) | forms(0, y12, 1, {2, 0, 0}) |
                         forms(1, y12, 3, {0, 0, 0}) | forms(1, {}, 0, {1, 0, 2}) | forms(2, {}, 0, {0, 0, 3}),
                     "x1^2 [c0(y1,y2) + y0 q(y1,y2) + y0^2 l(y1,y2)] + x0x1 [c1(y1,y2) + mu y0 y2^2] + "
                     "nu x0^2 y2^3"});
        c.push_back({"U4", S::NEGATIVE, {3, 4, -1}, {},
                     forms(0, y12, 3, {0, 0, 0}) | forms(0, y12, 2, {1, 0, 0}) | forms(0, {}, 0, {2, 0, 1}) |
                         forms(1, y12, 3, {0, 0, 0}) | forms(1, {}, 0, {1, 0, 2}) | forms(2, y12, 1, {0, 0, 2}),
                     "x1^2 [c0(y1,y2) + y0 q(y1,y2) + mu y0^2 y2] + x0x1 [c1(y1,y2) + nu y0 y2^2] + "
                     "x0^2 y2^2 l(y1,y2)"});
        c.push_back({"U5", S::NEGATIVE, {1, 3, -1}, {},
                     forms(0, y12, 3, {0, 0, 0}) | forms(0, y12, 2, {1, 0, 0}) | forms(1, y12, 3, {0, 0, 0}) |
                         forms(1, {}, 0, {1, 0, 2}) | forms(2, y12, 3, {0, 0, 0}),
                     "x1^2 [c0(y1,y2) + y0 q1(y1,y2)] + x0x1 [c1(y1,y2) + mu y0 y2^2] + x0^2 c2(y1,y2)"});
        c.push_back({"U6", S::NEGATIVE, {1, 5, -1}, {},
                     forms(0, y12, 3, {0, 0, 0}) | forms(0, y12, 1, {1, 0, 1}) | forms(1, y12, 3, {0, 0, 0}) |
                         forms(1, {}, 0, {1, 0, 2}) | forms(2, y12, 3, {0, 0, 0}) | forms(2, {}, 0, {1, 0, 2}),
                     "x1^2 [c0(y1,y2) + y0 y2 l(y1,y2)] + x0x1 [c1(y1,y2) + mu y0 y2^2] + "
                     "x0^2 [c2(y1,y2) + nu y0 y2^2]"});
        c.push_back({"U7", S::NEGATIVE, {2, 3, 1}, {},
                     forms(0, y12, 3, {0, 0, 0}) | forms(0, y12, 1, {1, 0, 1}) | forms(0, {}, 0, {2, 0, 1}) |
                         forms(1, all, 1, {0, 0, 2}) | forms(1, {}, 0, {0, 2, 1}) | forms(2, all, 1, {0, 0, 2}),
                     "x1^2 [c(y1,y2) + y0 y2 l0(y1,y2) + mu y0^2 y2] + x0x1 (y2^2 l1(y0,y1,y2) + nu y2 y1^2) + "
                     "x0^2 y2^2 l2(y0,y1,y2)"});
        return c;
    }();
    return cat;
}

const FamilyRecord& family_record(const std::string& label) {
    for (const auto& r : family_catalog())
        if (r.label == label) return r;
    throw std::invalid_argument("unknown family label: " + label);
}

namespace {

using Vec = std::vector<long>;

long dotl(const Vec& a, const Vec& b) {
    long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec prim(Vec v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, std::labs(x));
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

Vec canon_normal(Vec v) {
    v = prim(v);
    for (long x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

std::vector<Vec> cone_walls() { return {{1, 0, 0}, {0, 1, -1}, {0, 1, 2}}; }

std::vector<Vec> weight_functionals() {
    std::vector<Vec> f;
    for (const auto& m : all_monomials()) {
        auto w = weight_functional(m);
        f.push_back({w[0], w[1], w[2]});
    }
    return f;
}

std::vector<MonoSet> maximal_only(const std::set<unsigned long>& sets) {
    std::vector<MonoSet> all;
    for (auto s : sets) all.emplace_back(s);
    std::vector<MonoSet> out;
    for (const auto& s : all) {
        bool dominated = false;
        for (const auto& t : all)
            if (t != s && (s & t) == s) {
                dominated = true;
                break;
            }
        if (!dominated) out.push_back(s);
    }
    return out;
}

}  // namespace

std::vector<std::vector<long>> arrangement_samples(const std::vector<std::vector<long>>& functionals,
                                                   const std::vector<std::vector<long>>& walls,
                                                   std::size_t* nrays) {
    if (walls.empty()) throw std::invalid_argument("arrangement_samples needs a pointed cone");
    const std::size_t k = walls[0].size();
    if (k != 2 && k != 3) throw std::invalid_argument("arrangement_samples supports dimension 2 or 3");

    std::set<Vec> normals;
    for (const auto& f : functionals) {
        bool zero = std::all_of(f.begin(), f.end(), [](long x) { return x == 0; });
        if (!zero) normals.insert(canon_normal(f));
    }
    for (const auto& w : walls) normals.insert(canon_normal(w));
    std::vector<Vec> ns(normals.begin(), normals.end());

    auto in_cone = [&](const Vec& r) {
        for (const auto& w : walls)
            if (dotl(w, r) < 0) return false;
        return true;
    };

    std::set<Vec> rays;
    auto consider = [&](Vec r) {
        if (std::all_of(r.begin(), r.end(), [](long x) { return x == 0; })) return;
        r = prim(r);
        for (int s = 0; s < 2; ++s) {
            if (in_cone(r)) rays.insert(r);
            for (auto& x : r) x = -x;
        }
    };
    if (k == 2) {
        for (const auto& n : ns) consider({-n[1], n[0]});
    } else {
        for (std::size_t i = 0; i < ns.size(); ++i)
            for (std::size_t j = i + 1; j < ns.size(); ++j) {
                const Vec &p = ns[i], &q = ns[j];
                consider({p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]});
            }
    }
    std::vector<Vec> rv(rays.begin(), rays.end());
    if (nrays) *nrays = rv.size();

    // Every face of the induced fan is pointed; the sum of at most k of its
    // extreme rays lies in its relative interior.
    std::set<Vec> samples;
    const std::size_t R = rv.size();
    for (std::size_t i = 0; i < R; ++i) {
        samples.insert(rv[i]);
        for (std::size_t j = i + 1; j < R; ++j) {
            Vec s2(k);
            for (std::size_t t = 0; t < k; ++t) s2[t] = rv[i][t] + rv[j][t];
            samples.insert(prim(s2));
            if (k < 3) continue;
            for (std::size_t l = j + 1; l < R; ++l) {
                Vec s3(k);
                for (std::size_t t = 0; t < k; ++t) s3[t] = s2[t] + rv[l][t];
                samples.insert(prim(s3));
            }
        }
    }
    return {samples.begin(), samples.end()};
}

std::vector<MonoSet> grid_maximal_sets(SignKind s, int bound, std::size_t* points) {
    std::set<unsigned long> sets;
    std::size_t n = 0;
    for (long a = 0; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c) {
                OneParamSubgroup l{a, b, c};
                if (l.is_zero() || !l.normalized()) continue;
                ++n;
                sets.insert(destabilized_set(l, s).to_ulong());
            }
    if (points) *points = n;
    return maximal_only(sets);
}

std::vector<MonomialFamily> enumerate_maximal_families(SignKind s, EnumerationStats* stats, int grid_bound) {
    auto funcs = weight_functionals();
    auto walls = cone_walls();
    std::size_t nrays = 0;
    auto samples = arrangement_samples(funcs, walls, &nrays);

    std::map<unsigned long, OneParamSubgroup> found;
    std::set<unsigned long> sets;
    for (const auto& p : samples) {
        OneParamSubgroup l{p[0], p[1], p[2]};
        unsigned long key = destabilized_set(l, s).to_ulong();
        if (sets.insert(key).second) found[key] = l;
    }
    auto maxima = maximal_only(sets);

    std::vector<MonomialFamily> fams;
    for (const auto& m : maxima) {
        MonomialFamily f;
        f.sign = s;
        f.full_set = m;
        f.found_lambda = found[m.to_ulong()].primitive();
        f.maximal_monomials = maximal_elements(m);
        for (const auto& r : family_catalog()) {
            if (r.sign != s) continue;
            if (destabilized_set(r.lambda, s) == m) {
                f.label = r.label;
                f.witness_lambda = r.lambda;
                break;
            }
        }
        if (f.label.empty()) {
            std::ostringstream os;
            os << "maximal " << to_string(s) << " set at " << f.found_lambda.str()
               << " matches no tabulated family:";
            for (const auto& mm : f.maximal_monomials) os << " " << mm.str();
            throw std::runtime_error(os.str());
        }
        fams.push_back(std::move(f));
    }
    std::sort(fams.begin(), fams.end(),
              [](const MonomialFamily& a, const MonomialFamily& b) { return a.label < b.label; });

    if (stats) {
        std::set<Vec> normals;
        for (const auto& f : funcs)
            if (!std::all_of(f.begin(), f.end(), [](long x) { return x == 0; })) normals.insert(canon_normal(f));
        for (const auto& w : walls) normals.insert(canon_normal(w));
        stats->hyperplanes = normals.size();
        stats->rays = nrays;
        stats->samples = samples.size();
        stats->grid_bound = grid_bound;
        if (grid_bound > 0) {
            auto grid = grid_maximal_sets(s, grid_bound, &stats->grid_points);
            std::set<unsigned long> a, b;
            for (const auto& g : grid) a.insert(g.to_ulong());
            for (const auto& g : maxima) b.insert(g.to_ulong());
            stats->grid_agrees = (a == b);
        }
    }
    return fams;
}

long toy_weight(int i, int j, long a, long b) { return a * (2 * i - 1) + b * (2 * j - 1); }

std::vector<unsigned> toy_maximal_families(SignKind s) {
    std::vector<Vec> funcs;
    for (int i = 0; i <= 1; ++i)
        for (int j = 0; j <= 1; ++j) funcs.push_back({2L * i - 1, 2L * j - 1});
    auto samples = arrangement_samples(funcs, {{1, 0}, {0, 1}});
    std::set<unsigned long> sets;
    for (const auto& p : samples) {
        unsigned m = 0;
        for (int i = 0; i <= 1; ++i)
            for (int j = 0; j <= 1; ++j) {
                long wt = toy_weight(i, j, p[0], p[1]);
                if (s == SignKind::NEGATIVE ? wt < 0 : wt <= 0) m |= 1u << (2 * i + j);
            }
        sets.insert(m);
    }
    std::vector<unsigned> out;
    for (auto a : sets) {
        bool dom = false;
        for (auto b : sets)
            if (a != b && (a & b) == a) dom = true;
        if (!dom) out.push_back(static_cast<unsigned>(a));
    }
    return out;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::TORUS_UNSTABLE: return "TORUS_UNSTABLE";
        case Verdict::TORUS_STRICTLY_SEMISTABLE: return "TORUS_STRICTLY_SEMISTABLE";
        case Verdict::TORUS_STABLE: return "TORUS_STABLE";
    }
    return "?";
}

namespace {

const std::vector<MonomialFamily>& cached_families(SignKind s) {
    static const auto neg = enumerate_maximal_families(SignKind::NEGATIVE, nullptr, 0);
    static const auto nonpos = enumerate_maximal_families(SignKind::NONPOSITIVE, nullptr, 0);
    return s == SignKind::NEGATIVE ? neg : nonpos;
}

std::vector<RatVec> functionals_of(const MonoSet& s) {
    std::vector<RatVec> r;
    for (const auto& m : members(s)) {
        auto w = weight_functional(m);
        r.push_back({Rat(w[0]), Rat(w[1]), Rat(w[2])});
    }
    return r;
}

std::vector<RatVec> rat_walls() {
    std::vector<RatVec> r;
    for (const auto& w : cone_walls()) r.push_back({Rat(w[0]), Rat(w[1]), Rat(w[2])});
    return r;
}

}  // namespace

Classification classify_nonstable(const Poly& f) {
    MonoSet s = support(f);
    Classification c;
    auto fs = functionals_of(s);
    auto walls = rat_walls();
    // Unstable: some normalized lambda makes every weight negative.
    auto unstable = lp_feasible(fs, {}, walls, 3);
    // Not stable: some nonzero normalized lambda makes every weight <= 0.
    auto nonstable = lp_feasible({{Rat(-1), Rat(-2), Rat(-1)}}, fs, walls, 3);

    for (SignKind k : {SignKind::NEGATIVE, SignKind::NONPOSITIVE}) {
        for (const auto& fam : cached_families(k)) {
            if ((s & fam.full_set) != s) continue;
            c.verdict = (k == SignKind::NEGATIVE) ? Verdict::TORUS_UNSTABLE : Verdict::TORUS_STRICTLY_SEMISTABLE;
            c.family = fam.label;
            c.witness = fam.witness_lambda;
            c.lp_certificate = (k == SignKind::NEGATIVE) ? unstable.has_value()
                                                         : (!unstable.has_value() && nonstable.has_value());
            return c;
        }
    }
    c.verdict = Verdict::TORUS_STABLE;
    c.lp_certificate = !unstable.has_value() && !nonstable.has_value();
    return c;
}

MonoSet fixed_space(const OneParamSubgroup& h) {
    MonoSet r;
    const auto& all = all_monomials();
    for (int i = 0; i < kNumMonomials; ++i)
        if (weight(all[i], h) == 0) r.set(i);
    return r;
}

int centralizer_dim(const OneParamSubgroup& h) {
    int d = (h.a != 0) ? 1 : 3;
    long w[3] = {h.b, h.c, -h.b - h.c};
    int equal_pairs = (w[0] == w[1]) + (w[1] == w[2]) + (w[0] == w[2]);
    if (equal_pairs == 0) d += 2;
    else if (equal_pairs == 1) d += 4;
    else d += 8;
    return d;
}

int luna_stratum_dim(const OneParamSubgroup& h) {
    if (h.is_zero()) throw std::invalid_argument("luna_stratum_dim needs a nonzero 1-PS");
    return static_cast<int>(fixed_space(h).count()) - centralizer_dim(h);
}

LunaStratum luna_stratum(const std::string& label, const OneParamSubgroup& h) {
    LunaStratum s;
    s.label = label;
    s.H = h;
    s.fixed_monomials = fixed_space(h);
    s.centralizer_dim = centralizer_dim(h);
    s.dim = luna_stratum_dim(h);
    return s;
}

long h0_bidegree(int a, int b) {
    if (a < 0 || b < 0) return 0;
    return static_cast<long>(a + 1) * (b + 1) * (b + 2) / 2;
}

int projective_dim(const FamilyParamSpec& spec) {
    const std::size_t N = spec.generators.size();
    RatMatrix G(kNumMonomials, N);
    for (std::size_t j = 0; j < N; ++j) {
        MonoSet sup = support(spec.generators[j]);
        (void)sup;
        for (const auto& [e, c] : spec.generators[j].terms()) G(index_of(from_exponents(e)), j) = c;
    }
    RatMatrix C(spec.constraints.size(), kNumMonomials);
    for (std::size_t i = 0; i < spec.constraints.size(); ++i)
        for (const auto& [m, c] : spec.constraints[i].terms) C(i, index_of(m)) += c;
    std::size_t ker_cg = N - rank(C * G);
    std::size_t ker_g = N - rank(G);
    return static_cast<int>(ker_cg - ker_g) - 1;
}

int stable_stratum_dim(const FamilyParamSpec& spec) {
    int d;
    if (!spec.components.empty()) {
        long s = 0;
        for (auto [a, b] : spec.components) s += h0_bidegree(a, b) - 1;
        d = static_cast<int>(s) - 11;
    } else {
        d = projective_dim(spec) - spec.group_dim;
    }
    if (d < 0) throw std::invalid_argument("inconsistent family spec for " + spec.label + ": negative dimension");
    return d;
}

namespace {

std::vector<Poly> gens_of(const MonoSet& s) {
    std::vector<Poly> g;
    for (const auto& m : members(s)) g.push_back(m.poly());
    return g;
}

CoefficientConstraint rel(std::initializer_list<std::pair<std::array<int, 3>, long>> t) {
    CoefficientConstraint c;
    for (auto& [ijk, x] : t) c.terms.push_back({a_index(ijk[0], ijk[1], ijk[2]), Rat(x)});
    return c;
}

Poly elliptic_mu_term() {
    using namespace bi;
    return mono(0, 3, 0) + Rat(2) * mono(1, 2, 1) + mono(2, 1, 2);
}

std::map<std::string, FamilyParamSpec> build_specs() {
    using namespace bi;
    std::map<std::string, FamilyParamSpec> m;
    const std::vector<int> all{Y0, Y1, Y2}, y12{Y1, Y2}, y01{Y0, Y1};

    auto luna = [&](const std::string& l, OneParamSubgroup h) {
        FamilyParamSpec s;
        s.label = l;
        s.generators = gens_of(fixed_space(h));
        s.group_dim = centralizer_dim(h);
        m[l] = s;
    };
    luna("alpha", {3, 2, 2});
    luna("beta", {3, 2, 0});
    luna("gamma", {0, 1, 1});
    luna("eta", {1, 2, 0});
    luna("delta", {1, 0, 0});
    luna("tau", {4, 3, 2});
    {
        FamilyParamSpec s;
        s.label = "tau'";
        s.generators = {mono(1, 1, 1)};
        s.group_dim = 0;
        m[s.label] = s;
    }
    {
        FamilyParamSpec s;
        s.label = "zeta";
        MonoSet sup = forms(0, y12, 3, {0, 0, 0}) | forms(0, y12, 2, {1, 0, 0}) | forms(0, y12, 1, {2, 0, 0}) |
                      forms(1, y12, 3, {0, 0, 0}) | forms(1, y12, 2, {1, 0, 0}) | forms(2, y12, 1, {0, 2, 0}) |
                      forms(2, {}, 0, {0, 1, 2});
        s.generators = gens_of(sup);
        s.generators.push_back(elliptic_mu_term());
        s.constraints = {rel({{{2, 1, 0}, 1}, {{1, 2, 0}, -1}, {{0, 3, 0}, 1}}),
                         rel({{{2, 0, 1}, 1}, {{1, 1, 1}, -1}, {{0, 2, 1}, 1}}),
                         rel({{{1, 0, 2}, 1}, {{0, 1, 2}, -1}})};
        s.group_dim = 6;
        m[s.label] = s;
    }
    {
        FamilyParamSpec s;
        s.label = "xi";
        MonoSet sup = forms(0, {}, 0, {0, 0, 3}) | forms(0, {}, 0, {0, 1, 2}) | forms(0, {}, 0, {0, 2, 1}) |
                      forms(0, y12, 2, {1, 0, 0}) | forms(0, y12, 1, {2, 0, 0}) | forms(1, y12, 3, {0, 0, 0}) |
                      forms(1, y12, 2, {1, 0, 0}) | forms(2, y12, 3, {0, 0, 0});
        s.generators = gens_of(sup);
        s.generators.push_back(elliptic_mu_term());
        s.constraints = {rel({{{2, 0, 1}, 1}, {{1, 1, 1}, -1}, {{0, 2, 1}, 1}}),
                         rel({{{2, 2, 0}, 1}, {{1, 3, 0}, -1}}),
                         rel({{{2, 1, 1}, 1}, {{1, 2, 1}, -1}}),
                         rel({{{1, 2, 0}, 1}, {{2, 1, 0}, -2}}),
                         rel({{{2, 1, 0}, 1}, {{0, 3, 0}, -1}}),
                         rel({{{1, 0, 2}, 1}, {{0, 1, 2}, -1}})};
        s.group_dim = 6;
        m[s.label] = s;
    }
    {
        FamilyParamSpec s;
        s.label = "theta";
        Poly P = x0() * y1() - x1() * y0();
        std::vector<Poly> xs{x0(), x1()}, ys{y0(), y1(), y2()};
        for (auto& a : xs)
            for (auto& b : xs) {
                if (&a > &b) continue;
                for (auto& y : ys) s.generators.push_back(y2() * y2() * a * b * y);
            }
        for (auto& a : xs)
            for (int j = 0; j < 2; ++j) s.generators.push_back(y2() * P * a * ys[j]);
        for (int j = 0; j < 2; ++j) s.generators.push_back(P * P * ys[j]);
        s.group_dim = 6;
        m[s.label] = s;
    }
    {
        FamilyParamSpec s;
        s.label = "phi";
        Poly P = x0() * y1() - x1() * y0();
        Poly Q = x0() * y2() - x1() * y1();
        for (const Poly& q : {P * P, P * Q, Q * Q})
            for (const Poly& y : {y0(), y1(), y2()}) s.generators.push_back(q * y);
        s.group_dim = 3;
        m[s.label] = s;
    }
    {
        FamilyParamSpec s;
        s.label = "r1";
        s.components = {{1, 1}, {1, 3}};
        m[s.label] = s;
    }
    {
        FamilyParamSpec s;
        s.label = "r2";
        s.components = {{0, 2}, {2, 1}};
        m[s.label] = s;
    }
    return m;
}

}  // namespace

const FamilyParamSpec& family_spec(const std::string& label) {
    static const auto specs = build_specs();
    auto it = specs.find(label);
    if (it == specs.end()) throw std::invalid_argument("unknown family: " + label);
    return it->second;
}

const std::vector<std::string>& family_spec_labels() {
    static const std::vector<std::string> l{"alpha", "beta", "gamma", "eta", "delta", "tau", "tau'",
                                            "zeta",  "xi",   "theta", "phi", "r1",    "r2"};
    return l;
}

OneParamSubgroup luna_subgroup(const std::string& label) {
    static const std::map<std::string, OneParamSubgroup> h{{"alpha", {3, 2, 2}}, {"beta", {3, 2, 0}},
                                                           {"gamma", {0, 1, 1}}, {"eta", {1, 2, 0}},
                                                           {"delta", {1, 0, 0}}, {"tau", {4, 3, 2}}};
    auto it = h.find(label);
    if (it == h.end()) throw std::invalid_argument("no Luna subgroup for " + label);
    return it->second;
}

std::vector<DimensionRow> dimension_table() {
    std::vector<DimensionRow> rows;
    for (const char* l : {"alpha", "beta", "gamma", "eta", "delta"})
        rows.push_back({l, luna_stratum_dim(luna_subgroup(l)), "luna"});
    for (const char* l : {"zeta", "xi", "theta", "phi"})
        rows.push_back({l, stable_stratum_dim(family_spec(l)), "quotient"});
    for (const char* l : {"r1", "r2"}) rows.push_back({l, stable_stratum_dim(family_spec(l)), "reducible"});
    return rows;
}

}  // namespace tri
