#include "trielliptic/lattice.hpp"

#include "lattice_internal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tri {

namespace detail {

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in a machine word");
    return x.get_si();
}

LVec to_lvec(const IntVec& v) {
    LVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_long(v[i]);
    return r;
}

IntVec to_ivec(const LVec& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

std::vector<long> flat(const IntMatrix& m) {
    std::vector<long> r(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i * m.cols() + j] = to_long(m(i, j));
    return r;
}

std::vector<LVec> simple_system(const std::vector<LVec>& roots, const std::vector<long>& gram, int n) {
    if (roots.empty()) return {};
    std::mt19937_64 rng(0x5eed);
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<long> phi(n);
        for (auto& p : phi) p = static_cast<long>(rng() % (1u << 20)) + 1;
        std::vector<std::pair<long, const LVec*>> pos;
        bool generic = true;
        for (const auto& r : roots) {
            long f = 0;
            for (int i = 0; i < n; ++i) f += phi[i] * r[i];
            if (f == 0) {
                generic = false;
                break;
            }
            if (f > 0) pos.push_back({f, &r});
        }
        if (!generic) continue;
        std::sort(pos.begin(), pos.end());
        std::set<LVec> positive;
        for (const auto& p : pos) positive.insert(*p.second);
        std::vector<LVec> simple;
        for (const auto& p : pos) {
            const LVec& a = *p.second;
            bool decomposable = false;
            for (const auto& s : simple) {
                LVec d(n);
                for (int i = 0; i < n; ++i) d[i] = a[i] - s[i];
                if (positive.count(d)) {
                    decomposable = true;
                    break;
                }
            }
            if (!decomposable) simple.push_back(a);
        }
        (void)gram;
        return simple;
    }
    throw std::runtime_error("no generic functional found");
}

std::vector<LVec> short_vectors_l(const IntegralLattice& l, long norm) {
    if (norm >= 0) throw std::invalid_argument("norm must be negative");
    if (!l.negative_definite()) throw std::invalid_argument("lattice is not negative definite");
    IntMatrix t;
    IntegralLattice r = reduced(l, &t);
    int n = static_cast<int>(r.rank());
    auto g = flat(r.gram());
    std::vector<double> q(n * n);
    for (int i = 0; i < n * n; ++i) q[i] = -static_cast<double>(g[i]);
    FinckePohst fp(q, n);
    auto tl = flat(t);
    std::vector<LVec> out;
    fp.run({}, static_cast<double>(-norm), [&](const LVec& x, double v) {
        if (std::fabs(v + norm) > 0.5) return true;
        if (pair(g, n, x, x) != norm) return true;
        LVec y(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += tl[i * n + j] * x[j];
        out.push_back(std::move(y));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

using detail::LVec;

// ---------------------------------------------------------------- lattice

IntegralLattice::IntegralLattice(std::string name, IntMatrix gram) : name_(std::move(name)), gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols() || !gram_.is_symmetric())
        throw std::invalid_argument("Gram matrix must be square and symmetric");
    sig_ = inertia(to_rat(gram_));
}

bool IntegralLattice::is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (gram_(i, i) % 2 != 0) return false;
    return true;
}

Int IntegralLattice::det() const { return tri::det(gram_); }

Int IntegralLattice::pair(const IntVec& x, const IntVec& y) const {
    Int s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) s += x[i] * gram_(i, j) * y[j];
    return s;
}

Rat IntegralLattice::pair(const RatVec& x, const RatVec& y) const {
    Rat s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) s += x[i] * gram_(i, j) * y[j];
    return s;
}

IntegralLattice direct_sum(const std::vector<IntegralLattice>& parts, const std::string& name) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.rank();
    IntMatrix g(n, n);
    std::size_t off = 0;
    std::string auto_name;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rank(); ++i)
            for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
        off += p.rank();
        auto_name += (auto_name.empty() ? "" : "+") + p.name();
    }
    return IntegralLattice(name.empty() ? auto_name : name, g);
}

IntegralLattice scaled(const IntegralLattice& l, long k, const std::string& name) {
    IntMatrix g = l.gram();
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= k;
    return IntegralLattice(name.empty() ? l.name() + "(" + std::to_string(k) + ")" : name, g);
}

IntegralLattice negated(const IntegralLattice& l, const std::string& name) {
    return scaled(l, -1, name.empty() ? l.name() + "(-1)" : name);
}

IntegralLattice root_lattice(char type, int n) {
    auto bad = [&] { return std::invalid_argument(std::string("no root lattice ") + type + std::to_string(n)); };
    IntMatrix g(n, n);
    auto link = [&](int i, int j) { g(i, j) = g(j, i) = 1; };
    for (int i = 0; i < n; ++i) g(i, i) = -2;
    switch (type) {
        case 'A':
            if (n < 1) throw bad();
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'D':
            if (n < 4) throw bad();
            link(0, 2);
            for (int i = 1; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'E':
            if (n < 6 || n > 8) throw bad();
            link(0, 3);
            for (int i = 1; i + 1 < n; ++i) link(i, i + 1);
            break;
        default:
            throw bad();
    }
    return IntegralLattice(std::string(1, type) + std::to_string(n), g);
}

// ---------------------------------------------------------------- Niemeier

const std::vector<NiemeierSpec>& niemeier_specs() {
    static const std::vector<NiemeierSpec> specs = {
        {"E8^3", {"E8", "E8", "E8"}, {}},
        {"D16E8", {"D16", "E8"}, {{1, 0}}},
        {"D24", {"D24"}, {{1}}},
        {"D12^2", {"D12", "D12"}, {{1, 2}, {2, 1}}},
        {"D10E7^2", {"D10", "E7", "E7"}, {{1, 1, 0}, {3, 0, 1}}},
        {"D9A15", {"D9", "A15"}, {{1, 2}}},
        {"D8^3", {"D8", "D8", "D8"}, {{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}},
        {"D7E6A11", {"D7", "E6", "A11"}, {{1, 1, 1}}},
        {"A24", {"A24"}, {{5}}},
        {"A15D9", {"A15", "D9"}, {{2, 1}}},
        {"A17E7", {"A17", "E7"}, {{3, 1}}},
        {"A12^2", {"A12", "A12"}, {{1, 5}}},
        {"A9^2D6", {"A9", "A9", "D6"}, {{2, 4, 0}, {5, 0, 1}, {0, 5, 3}}},
        {"A8^3", {"A8", "A8", "A8"}, {{1, 1, 4}, {4, 1, 1}, {1, 4, 1}}},
        {"E6^4", {"E6", "E6", "E6", "E6"}, {{1, 0, 1, 2}, {1, 1, 2, 0}, {1, 2, 0, 1}}},
    };
    return specs;
}

const std::vector<std::string>& niemeier_catalog_labels() {
    static const std::vector<std::string> labels = {"E8^3", "D16E8", "D24",     "D12^2", "D10E7^2",
                                                    "D9A15", "D8^3",  "D7E6A11", "A24",   "A15D9"};
    return labels;
}

namespace {

std::pair<char, int> parse_component(const std::string& s) {
    if (s.size() < 2) throw std::invalid_argument("bad component " + s);
    return {s[0], std::stoi(s.substr(1))};
}

RatVec column(const RatMatrix& m, std::size_t j) { return m.col(j); }

}  // namespace

RatVec glue_class(char type, int n, int k) {
    auto inv = inverse(to_rat(root_lattice(type, n).gram()));
    RatVec zero(n);
    if (k == 0) return zero;
    switch (type) {
        case 'A':
            if (k < 0 || k > n) break;
            return column(*inv, k - 1);
        case 'D':
            if (k == 1) return column(*inv, 0);
            if (k == 2) return column(*inv, n - 1);
            if (k == 3) return column(*inv, 1);
            break;
        case 'E':
            if (n == 6 && (k == 1 || k == 2)) {
                RatVec v = column(*inv, 5);
                for (auto& x : v) x *= k;
                return v;
            }
            if (n == 7 && k == 1) return column(*inv, 6);
            break;
        default:
            break;
    }
    throw std::invalid_argument("no glue class [" + std::to_string(k) + "] for " + type + std::to_string(n));
}

IntMatrix lll_transform(const IntMatrix& g0) {
    std::size_t n = g0.rows();
    IntMatrix q = g0, t = IntMatrix::identity(n);
    if (n < 2) return t;
    std::vector<double> mu(n * n), b(n), r(n * n);
    auto gso = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double v = q(i, j).get_d();
                for (std::size_t k = 0; k < j; ++k) v -= mu[j * n + k] * r[i * n + k];
                r[i * n + j] = v;
                if (j < i) mu[i * n + j] = v / b[j];
            }
            b[i] = r[i * n + i];
            if (!(b[i] > 0)) throw std::invalid_argument("LLL needs a positive definite form");
        }
    };
    auto reduce = [&](std::size_t k, std::size_t j, const Int& c) {
        for (std::size_t i = 0; i < n; ++i) q(k, i) -= c * q(j, i);
        for (std::size_t i = 0; i < n; ++i) q(i, k) -= c * q(i, j);
        for (std::size_t i = 0; i < n; ++i) t(i, k) -= c * t(i, j);
    };
    std::size_t k = 1;
    long iterations = 0;
    while (k < n) {
        if (++iterations > 1000000) throw std::runtime_error("LLL did not terminate");
        gso();
        for (std::size_t jj = k; jj-- > 0;) {
            double m = mu[k * n + jj];
            if (std::fabs(m) > 0.5) {
                Int c;
                mpz_set_d(c.get_mpz_t(), std::nearbyint(m));
                reduce(k, jj, c);
                double cd = c.get_d();
                for (std::size_t i = 0; i < jj; ++i) mu[k * n + i] -= cd * mu[jj * n + i];
                mu[k * n + jj] -= cd;
            }
        }
        gso();
        double m = mu[k * n + k - 1];
        if (b[k] < (0.99 - m * m) * b[k - 1]) {
            q.swap_rows(k, k - 1);
            q.swap_cols(k, k - 1);
            t.swap_cols(k, k - 1);
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            ++k;
        }
    }
    return t;
}

IntegralLattice reduced(const IntegralLattice& l, IntMatrix* transform) {
    int sgn = l.negative_definite() ? -1 : 1;
    if (sgn == 1 && l.signature().pos != static_cast<int>(l.rank()))
        throw std::invalid_argument("reduction needs a definite lattice");
    IntMatrix g = l.gram();
    if (sgn < 0)
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = -g(i, j);
    IntMatrix t = lll_transform(g);
    if (transform) *transform = t;
    return IntegralLattice(l.name(), t.transpose() * l.gram() * t);
}

IntegralLattice overlattice(const IntegralLattice& l, const std::vector<RatVec>& glue, RatMatrix* basis_out) {
    std::size_t n = l.rank();
    std::vector<RatVec> gens;
    for (std::size_t i = 0; i < n; ++i) {
        RatVec e(n);
        e[i] = 1;
        gens.push_back(e);
    }
    for (const auto& g : glue) {
        if (g.size() != n) throw std::invalid_argument("glue vector has the wrong length");
        gens.push_back(g);
    }
    Int den = 1;
    for (const auto& g : gens)
        for (const auto& x : g) den = lcm(den, Int(x.get_den()));
    IntMatrix m(n, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = Int(gens[j][i] * den);
    Smith s = smith_normal_form(m);
    auto uinv = inverse(to_rat(s.U));
    RatMatrix basis(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = (*uinv)(i, j) * s.D(j, j) / den;
    RatMatrix gr = basis.transpose() * to_rat(l.gram()) * basis;
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (gr(i, j).get_den() != 1) throw std::runtime_error("glue is not integral over " + l.name());
            g(i, j) = gr(i, j).get_num();
        }
    if (basis_out) *basis_out = basis;
    return IntegralLattice(l.name() + "+glue", g);
}

NiemeierLattice build_niemeier(const NiemeierSpec& spec) {
    std::vector<IntegralLattice> parts;
    std::vector<std::pair<char, int>> comps;
    for (const auto& c : spec.components) {
        comps.push_back(parse_component(c));
        parts.push_back(root_lattice(comps.back().first, comps.back().second));
    }
    IntegralLattice root = direct_sum(parts);
    std::size_t n = root.rank();
    if (n != 24) throw std::invalid_argument("Niemeier root system must have rank 24: " + spec.label);
    std::vector<RatVec> gens;
    for (const auto& word : spec.glue) {
        if (word.size() != comps.size()) throw std::invalid_argument("glue word length mismatch in " + spec.label);
        RatVec g(n);
        std::size_t off = 0;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            RatVec part = glue_class(comps[c].first, comps[c].second, word[c]);
            for (std::size_t i = 0; i < part.size(); ++i) g[off + i] = part[i];
            off += part.size();
        }
        gens.push_back(g);
    }
    RatMatrix basis;
    IntegralLattice lat("M(" + spec.label + ")", overlattice(root, gens, &basis).gram());
    if (!lat.negative_definite()) throw std::runtime_error("not negative definite: " + spec.label);
    if (!lat.is_even()) throw std::runtime_error("not even: " + spec.label);
    if (abs(lat.det()) != 1) throw std::runtime_error("not unimodular: " + spec.label);
    IntMatrix t;
    IntegralLattice red = reduced(lat, &t);
    NiemeierLattice out{red, spec, basis * to_rat(t)};
    long want = 0;
    for (const auto& [ty, k] : comps) want += root_count(ty, k);
    long got = static_cast<long>(detail::short_vectors_l(red, -2).size());
    if (got != want)
        throw std::runtime_error("root count " + std::to_string(got) + " != " + std::to_string(want) + " for " +
                                 spec.label);
    return out;
}

NiemeierLattice build_niemeier(const std::string& label) {
    static std::mutex mu;
    static std::map<std::string, NiemeierLattice> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(label);
        if (it != cache.end()) return it->second;
    }
    for (const auto& s : niemeier_specs()) {
        if (s.label != label) continue;
        NiemeierLattice n = build_niemeier(s);
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(label, n);
        return n;
    }
    throw std::invalid_argument("unknown Niemeier label " + label);
}

// ---------------------------------------------------------------- catalog

namespace {

IntegralLattice l8() {
    IntegralLattice d7 = root_lattice('D', 7);
    IntMatrix g(8, 8);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) g(i, j) = d7.gram()(i, j);
    g(7, 7) = -4;
    g(7, 1) = g(1, 7) = 1;
    g(7, 2) = g(2, 7) = -1;
    g(7, 6) = g(6, 7) = 1;
    return IntegralLattice("L8", g);
}

IntegralLattice hyperbolic(long k) {
    IntMatrix g{{0, k}, {k, 0}};
    return IntegralLattice(k == 1 ? "U" : "U(" + std::to_string(k) + ")", g);
}

}  // namespace

IntegralLattice catalog(const std::string& raw) {
    std::string name;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) name += c;
    std::smatch m;
    if (std::regex_match(name, m, std::regex(R"(([ADE])\(?(\d+)\)?)"))) {
        return root_lattice(m[1].str()[0], std::stoi(m[2]));
    }
    if (name == "U") return hyperbolic(1);
    if (std::regex_match(name, m, std::regex(R"(U\((\d+)\))"))) return hyperbolic(std::stol(m[1]));
    if (std::regex_match(name, m, std::regex(R"(<(-?\d+)>)"))) {
        long k = std::stol(m[1]);
        if (k == 0) throw std::invalid_argument("degenerate rank-1 lattice");
        return IntegralLattice("<" + std::to_string(k) + ">", IntMatrix{{k}});
    }
    if (std::regex_match(name, m, std::regex(R"(T\(?(\d+)\)?)"))) {
        int n = std::stoi(m[1]);
        if (n < 1) throw std::invalid_argument("T(n) needs n >= 1");
        return IntegralLattice("T(" + std::to_string(n) + ")", t_gram(n));
    }
    if (name == "K3") {
        auto e8 = root_lattice('E', 8);
        return direct_sum({hyperbolic(1), hyperbolic(1), hyperbolic(1), e8, e8}, "K3");
    }
    if (name == "L8") return l8();
    if (std::regex_match(name, m, std::regex(R"(M\((.+)\))"))) return build_niemeier(m[1].str()).lattice;
    throw std::invalid_argument("unknown lattice name " + raw);
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> v = {"A(n)", "D(n)", "E6", "E7", "E8", "U", "U(k)", "<2t>", "T(n)", "K3", "L8"};
    for (const auto& s : niemeier_specs()) v.push_back("M(" + s.label + ")");
    return v;
}

RatVec dual_vector(const IntegralLattice& l, std::size_t k) {
    auto inv = inverse(to_rat(l.gram()));
    if (!inv) throw std::invalid_argument("degenerate lattice has no dual basis");
    if (k >= l.rank()) throw std::out_of_range("dual vector index");
    return inv->col(k);
}

// ---------------------------------------------------------------- complements

Complement orthogonal_complement(const IntegralLattice& ambient, const std::vector<IntVec>& sub) {
    std::size_t n = ambient.rank();
    Complement out;
    out.saturated_input = sub.empty() || is_saturated(sub, n);
    if (sub.empty()) {
        out.lattice = IntegralLattice(ambient.name() + "-perp", ambient.gram());
        out.inclusion = IntMatrix::identity(n);
        return out;
    }
    IntMatrix a(sub.size(), n);
    for (std::size_t i = 0; i < sub.size(); ++i) {
        IntVec gs = ambient.gram() * sub[i];
        for (std::size_t j = 0; j < n; ++j) a(i, j) = gs[j];
    }
    auto ker = integer_kernel(a);
    IntMatrix k = IntMatrix::from_cols(ker, n);
    IntegralLattice lat(ambient.name() + "-perp", k.transpose() * ambient.gram() * k);
    if (lat.rank() > 0 && (lat.negative_definite() || lat.signature().pos == static_cast<int>(lat.rank()))) {
        IntMatrix t;
        lat = reduced(lat, &t);
        k = k * t;
    }
    out.lattice = lat;
    out.inclusion = k;
    return out;
}

// ---------------------------------------------------------------- short vectors

std::vector<IntVec> short_vectors(const IntegralLattice& l, long norm) {
    std::vector<IntVec> out;
    for (const auto& v : detail::short_vectors_l(l, norm)) out.push_back(detail::to_ivec(v));
    return out;
}

std::vector<IntVec> roots(const IntegralLattice& l) { return short_vectors(l, -2); }

std::vector<long> theta_counts(const IntegralLattice& l, int max_k) {
    if (!l.negative_definite()) throw std::invalid_argument("lattice is not negative definite");
    std::vector<long> counts(max_k + 1, 0);
    if (l.rank() == 0) {
        counts[0] = 1;
        return counts;
    }
    IntegralLattice r = reduced(l);
    int n = static_cast<int>(r.rank());
    auto g = detail::flat(r.gram());
    std::vector<double> q(n * n);
    for (int i = 0; i < n * n; ++i) q[i] = -static_cast<double>(g[i]);
    detail::FinckePohst fp(q, n);
    bool odd = !r.is_even();
    std::vector<long> raw(2 * max_k + 1, 0);
    fp.run({}, 2.0 * max_k, [&](const LVec& x, double v) {
        long k = std::lround(v);
        if (std::fabs(v - static_cast<double>(k)) > 1e-4) k = -detail::pair(g, n, x, x);
        if (k <= 2 * max_k) ++raw[k];
        return true;
    });
    for (int k = 0; k <= max_k; ++k) counts[k] = raw[2 * k];
    (void)odd;
    return counts;
}

// ---------------------------------------------------------------- root systems

long root_count(char type, int n) {
    switch (type) {
        case 'A':
            return static_cast<long>(n) * (n + 1);
        case 'D':
            return 2L * n * (n - 1);
        case 'E':
            return n == 6 ? 72 : n == 7 ? 126 : n == 8 ? 240 : throw std::invalid_argument("bad E rank");
        default:
            throw std::invalid_argument("bad root type");
    }
}

long RootSystemLabel::root_count() const {
    long s = 0;
    for (const auto& [k, m] : components) s += m * tri::root_count(k[0], std::stoi(k.substr(1)));
    return s;
}

int RootSystemLabel::rank() const {
    int s = 0;
    for (const auto& [k, m] : components) s += m * std::stoi(k.substr(1));
    return s;
}

std::string RootSystemLabel::str() const {
    if (components.empty()) return "0";
    std::vector<std::pair<std::string, int>> v(components.begin(), components.end());
    auto key = [](const std::string& s) {
        int t = s[0] == 'E' ? 0 : s[0] == 'D' ? 1 : 2;
        return std::make_pair(t, -std::stoi(s.substr(1)));
    };
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
    std::string out;
    for (const auto& [k, m] : v) {
        if (!out.empty()) out += "+";
        out += k;
        if (m > 1) out += "^" + std::to_string(m);
    }
    return out;
}

RootSystemLabel parse_root_label(const std::string& s) {
    RootSystemLabel l;
    if (s == "0" || s.empty()) return l;
    std::regex tok(R"(([ADE])(\d+)(\^(\d+))?)");
    std::string rest = s;
    std::smatch m;
    std::string stripped;
    for (char c : s)
        if (c != '+' && c != ' ') stripped += c;
    auto it = std::sregex_iterator(stripped.begin(), stripped.end(), tok);
    std::size_t consumed = 0;
    for (; it != std::sregex_iterator(); ++it) {
        const auto& mm = *it;
        if (static_cast<std::size_t>(mm.position()) != consumed) throw std::invalid_argument("bad root label " + s);
        consumed += mm.length();
        int mult = mm[4].matched ? std::stoi(mm[4]) : 1;
        char t = mm[1].str()[0];
        int r = std::stoi(mm[2]);
        if ((t == 'D' && r < 4) || (t == 'E' && (r < 6 || r > 8)) || r < 1)
            throw std::invalid_argument("bad root label " + s);
        l.components[std::string(1, t) + std::to_string(r)] += mult;
    }
    if (consumed != stripped.size()) throw std::invalid_argument("bad root label " + s);
    return l;
}

RootSystemLabel root_system(const IntegralLattice& l, const std::vector<IntVec>& rts) {
    int n = static_cast<int>(l.rank());
    auto g = detail::flat(l.gram());
    std::vector<LVec> rs;
    for (const auto& r : rts) rs.push_back(detail::to_lvec(r));
    std::vector<int> parent(rs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j)
            if (detail::pair(g, n, rs[i], rs[j]) != 0) parent[find(i)] = find(j);
    std::map<int, std::vector<LVec>> comps;
    for (std::size_t i = 0; i < rs.size(); ++i) comps[find(i)].push_back(rs[i]);
    RootSystemLabel label;
    for (const auto& [root, members] : comps) {
        int r = static_cast<int>(detail::simple_system(members, g, n).size());
        long c = static_cast<long>(members.size());
        std::string name;
        if (c == static_cast<long>(r) * (r + 1))
            name = "A" + std::to_string(r);
        else if (r >= 4 && c == 2L * r * (r - 1))
            name = "D" + std::to_string(r);
        else if ((r == 6 && c == 72) || (r == 7 && c == 126) || (r == 8 && c == 240))
            name = "E" + std::to_string(r);
        else
            throw std::runtime_error("unidentified root component: rank " + std::to_string(r) + ", " +
                                     std::to_string(c) + " roots");
        label.components[name] += 1;
    }
    if (label.root_count() != static_cast<long>(rs.size())) throw std::logic_error("root count mismatch");
    return label;
}

RootSystemLabel root_system(const IntegralLattice& l) { return root_system(l, roots(l)); }

RootSublattice root_sublattice(const IntegralLattice& l, const std::vector<IntVec>& rts) {
    int n = static_cast<int>(l.rank());
    auto g = detail::flat(l.gram());
    std::vector<LVec> rs;
    for (const auto& r : rts) rs.push_back(detail::to_lvec(r));
    auto simple = detail::simple_system(rs, g, n);
    RootSublattice out;
    out.rank = simple.size();
    if (simple.empty()) return out;
    std::vector<IntVec> basis;
    for (const auto& s : simple) basis.push_back(detail::to_ivec(s));
    auto sat = saturate(basis, n);
    RatMatrix s = to_rat(IntMatrix::from_cols(sat, n));
    RatMatrix b = to_rat(IntMatrix::from_cols(basis, n));
    auto inv = inverse(s.transpose() * s);
    RatMatrix x = (*inv) * s.transpose() * b;
    IntMatrix xi(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x(i, j).get_den() != 1) throw std::logic_error("root basis not in saturation");
            xi(i, j) = x(i, j).get_num();
        }
    out.index = abs(tri::det(xi));
    for (const auto& d : elementary_divisors(xi))
        if (d != 1) out.glue.push_back(detail::to_long(d));
    return out;
}

// ---------------------------------------------------------------- integer solving

std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("dimension mismatch");
    Smith s = smith_normal_form(a);
    IntVec ub = s.U * b;
    std::size_t m = a.rows(), n = a.cols();
    IntVec y(n);
    for (std::size_t i = 0; i < m; ++i) {
        Int d = i < n ? s.D(i, i) : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    return s.V * y;
}

// ---------------------------------------------------------------- isotropic planes

namespace {

void check_plane(const IntegralLattice& l, const std::vector<IntVec>& j) {
    if (j.size() != 2) throw std::invalid_argument("J must have rank 2");
    for (const auto& v : j)
        if (v.size() != l.rank()) throw std::invalid_argument("J vector has wrong length");
    for (const auto& x : j)
        for (const auto& y : j)
            if (l.pair(x, y) != 0) throw std::invalid_argument("J is not isotropic");
    if (rank(IntMatrix::from_cols(j, l.rank())) != 2) throw std::invalid_argument("J has rank < 2");
    if (!is_saturated(j, l.rank())) throw std::invalid_argument("J is not primitive");
}

// Columns of a unimodular matrix whose first k columns are the given saturated vectors.
IntMatrix complete_basis(const std::vector<IntVec>& first, std::size_t n) {
    IntMatrix y = IntMatrix::from_cols(first, n);
    Smith s = smith_normal_form(y);
    for (std::size_t i = 0; i < first.size(); ++i)
        if (s.D(i, i) != 1) throw std::invalid_argument("vectors are not primitive");
    auto uinv = inverse(to_rat(s.U));
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < first.size(); ++j) out(i, j) = first[j][i];
        for (std::size_t j = first.size(); j < n; ++j) out(i, j) = (*uinv)(i, j).get_num();
    }
    return out;
}

}  // namespace

long h_j(const IntegralLattice& l, const std::vector<IntVec>& j) {
    check_plane(l, j);
    IntMatrix gj = l.gram() * IntMatrix::from_cols(j, l.rank());
    Int e = 1;
    for (const auto& d : elementary_divisors(gj)) e *= d;
    return detail::to_long(e);
}

IsotropicNormalForm isotropic_normal_form(const IntegralLattice& l, const std::vector<IntVec>& j) {
    check_plane(l, j);
    if (l.signature().pos != 2 || l.signature().zero != 0)
        throw std::invalid_argument("normal form needs signature (2,k)");
    if (!l.is_even()) throw std::invalid_argument("normal form needs an even lattice");
    std::size_t n = l.rank(), m = n - 4;
    const IntMatrix& g = l.gram();
    // J^perp with a basis starting with J
    IntMatrix pairing(2, n);
    for (std::size_t a = 0; a < 2; ++a) {
        IntVec gj = g * j[a];
        for (std::size_t i = 0; i < n; ++i) pairing(a, i) = gj[i];
    }
    auto perp = integer_kernel(pairing);
    IntMatrix p = IntMatrix::from_cols(perp, n);
    std::vector<IntVec> jin;
    for (const auto& v : j) {
        auto y = solve_integer(p, v);
        if (!y) throw std::logic_error("J not in its orthogonal");
        jin.push_back(*y);
    }
    IntMatrix c1 = p * complete_basis(jin, n - 2);
    std::vector<IntVec> jperp;
    for (std::size_t c = 0; c < n - 2; ++c) jperp.push_back(c1.col(c));
    IntMatrix basis = complete_basis(jperp, n);
    auto gram_of = [&](const IntMatrix& b) { return b.transpose() * g * b; };
    IntMatrix q = gram_of(basis);
    std::size_t k0 = n - 2;
    // elementary divisors on the J x K block
    IntMatrix a0(2, 2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c) a0(a, c) = q(a, k0 + c);
    Smith s = smith_normal_form(a0);
    if (s.D(0, 0) != 1) throw std::runtime_error("gcd condition fails: pairing block has divisors " +
                                                 s.D(0, 0).get_str() + ", " + s.D(1, 1).get_str());
    long e = detail::to_long(s.D(1, 1));
    IntMatrix x = s.U.transpose();
    IntMatrix z = s.V * IntMatrix{{0, 1}, {1, 0}};
    IntMatrix change = IntMatrix::identity(n);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            change(a, b) = x(a, b);
            change(k0 + a, k0 + b) = z(a, b);
        }
    basis = basis * change;
    q = gram_of(basis);
    IntMatrix amat(2, 2), bmat(m, m), cmat(m, 2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c) amat(a, c) = q(a, k0 + c);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t i2 = 0; i2 < m; ++i2) bmat(i, i2) = q(2 + i, 2 + i2);
        for (std::size_t c = 0; c < 2; ++c) cmat(i, c) = q(2 + i, k0 + c);
    }
    // C + V A + B Y = 0; unknowns V (m x 2) then Y (m x 2), row-major
    IntMatrix sys(2 * m, 4 * m);
    IntVec rhs(2 * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < 2; ++c) {
            std::size_t row = i * 2 + c;
            rhs[row] = -cmat(i, c);
            for (std::size_t a = 0; a < 2; ++a) sys(row, i * 2 + a) = amat(a, c);
            for (std::size_t l2 = 0; l2 < m; ++l2) sys(row, 2 * m + l2 * 2 + c) = bmat(i, l2);
        }
    auto sol = solve_integer(sys, rhs);
    if (!sol) throw std::runtime_error("gcd condition fails: no integral solution of BY + VA + C = 0");
    IntMatrix step = IntMatrix::identity(n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t a = 0; a < 2; ++a) step(a, 2 + i) = (*sol)[i * 2 + a];  // m_i += V_ia j_a
    for (std::size_t l2 = 0; l2 < m; ++l2)
        for (std::size_t c = 0; c < 2; ++c) step(2 + l2, k0 + c) = (*sol)[2 * m + l2 * 2 + c];  // k_c += Y_lc m_l
    basis = basis * step;
    q = gram_of(basis);
    // clear D
    Int d11 = q(k0, k0), d12 = q(k0, k0 + 1), d22 = q(k0 + 1, k0 + 1);
    Int half = d11 / 2;
    Int t = half % e;
    if (t < 0) t += e;
    IntMatrix w{{0, 0}, {0, 0}};
    w(0, 0) = -d12;
    w(0, 1) = -d22 / 2;
    w(1, 0) = -(half - t) / e;
    IntMatrix fin = IntMatrix::identity(n);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c) fin(a, k0 + c) = w(a, c);
    basis = basis * fin;
    q = gram_of(basis);
    IsotropicNormalForm out;
    out.e = e;
    out.t = detail::to_long(t);
    out.basis = basis;
    out.full = q;
    out.B = IntMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t i2 = 0; i2 < m; ++i2) out.B(i, i2) = q(2 + i, 2 + i2);
    // exact block check
    IntMatrix want(n, n);
    want(0, k0 + 1) = want(k0 + 1, 0) = 1;
    want(1, k0) = want(k0, 1) = e;
    want(k0, k0) = 2 * t;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t i2 = 0; i2 < m; ++i2) want(2 + i, 2 + i2) = out.B(i, i2);
    if (!(q == want)) throw std::logic_error("normal form reconstruction failed");
    if (abs(tri::det(basis)) != 1) throw std::logic_error("normal form basis not unimodular");
    return out;
}

// ---------------------------------------------------------------- orbit checks

namespace {

using CVec = LVec;

// Dual-coordinate orbit of start under simple reflections and optional diagram symmetries.
std::set<CVec> dual_orbit(const IntegralLattice& root, const CVec& start, bool diagram) {
    int n = static_cast<int>(root.rank());
    auto g = detail::flat(root.gram());
    std::vector<std::vector<int>> perms;
    if (diagram) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n && ok; ++j) ok = g[p[i] * n + p[j]] == g[i * n + j];
            if (ok) perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    std::set<CVec> seen{start};
    std::vector<CVec> queue{start};
    while (!queue.empty()) {
        CVec c = queue.back();
        queue.pop_back();
        std::vector<CVec> next;
        // reflection in simple root k: c' = c + c_k * (column k of the Gram)
        for (int k = 0; k < n; ++k) {
            if (c[k] == 0) continue;
            CVec d = c;
            for (int i = 0; i < n; ++i) d[i] += c[k] * g[i * n + k];
            next.push_back(d);
        }
        for (const auto& p : perms) {
            CVec d(n);
            for (int i = 0; i < n; ++i) d[p[i]] = c[i];
            next.push_back(d);
        }
        for (auto& d : next)
            if (seen.insert(d).second) queue.push_back(std::move(d));
    }
    return seen;
}

// Dual-coordinate vectors c of L* with c^T G^-1 c = norm, restricted to a coset of L when given.
std::set<CVec> dual_vectors_of_norm(const IntegralLattice& root, const Rat& norm, const CVec* coset) {
    int n = static_cast<int>(root.rank());
    Int d = abs(root.det());
    auto inv = inverse(to_rat(root.gram()));
    IntMatrix sg(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat v = (*inv)(i, j) * d;
            sg(i, j) = v.get_num();
        }
    Rat target = norm * d;
    if (target.get_den() != 1) throw std::invalid_argument("norm not attained in the dual");
    IntegralLattice scaled_dual("dual", sg);
    std::set<CVec> out;
    for (const auto& c : detail::short_vectors_l(scaled_dual, detail::to_long(target.get_num()))) {
        if (coset) {
            // c - coset in G Z^n  <=>  G^-1 (c - coset) integral
            bool in = true;
            for (int i = 0; i < n && in; ++i) {
                Rat s = 0;
                for (int j = 0; j < n; ++j) s += (*inv)(i, j) * (c[j] - (*coset)[j]);
                in = s.get_den() == 1;
            }
            if (!in) continue;
        }
        out.insert(c);
    }
    return out;
}

}  // namespace

OrbitCheck eichler_orbit_check(int n) {
    if (n < 4 || n > 8) throw std::invalid_argument("Eichler check supports n = 4..8");
    IntegralLattice d = root_lattice('D', n);
    CVec delta(n, 0);
    delta[n - 1] = 1;
    OrbitCheck out;
    out.lattice = d.name();
    out.norm = Rat(-1);
    auto all = dual_vectors_of_norm(d, out.norm, nullptr);
    auto orbit = dual_orbit(d, delta, true);
    out.coset_vectors = static_cast<long>(all.size());
    out.orbit = static_cast<long>(orbit.size());
    out.equal = all == orbit;
    return out;
}

OrbitCheck coset_orbit_check(const std::string& which) {
    IntegralLattice l;
    int k = 0;
    if (which == "E6") {
        l = root_lattice('E', 6);
        k = 5;
    } else if (which == "E7") {
        l = root_lattice('E', 7);
        k = 6;
    } else if (which == "A11") {
        l = root_lattice('A', 11);
        k = 10;
    } else {
        throw std::invalid_argument("coset check supports E6, E7, A11");
    }
    int n = static_cast<int>(l.rank());
    CVec v(n, 0);
    v[k] = 1;
    OrbitCheck out;
    out.lattice = l.name();
    out.norm = (*inverse(to_rat(l.gram())))(k, k);
    auto all = dual_vectors_of_norm(l, out.norm, &v);
    auto orbit = dual_orbit(l, v, false);
    out.coset_vectors = static_cast<long>(all.size());
    out.orbit = static_cast<long>(orbit.size());
    out.equal = all == orbit;
    return out;
}

std::vector<SignReading> span_lattice_readings() {
    std::vector<SignReading> out;
    for (int sign : {1, -1}) {
        IntMatrix g(20, 20);
        g(0, 0) = 2;
        g(0, 1) = g(1, 0) = 3;
        for (int i = 2; i < 20; ++i) {
            g(0, i) = g(i, 0) = 2;
            g(1, i) = g(i, 1) = 1;
            g(i, i) = sign;
        }
        SignReading r;
        r.sign = sign;
        r.det = tri::det(g);
        r.signature = inertia(to_rat(g));
        for (const auto& d : elementary_divisors(g))
            if (d != 1) r.group.push_back(d);
        r.cyclic_27 = r.group.size() == 1 && r.group[0] == 27;
        out.push_back(r);
    }
    return out;
}

}  // namespace tri
