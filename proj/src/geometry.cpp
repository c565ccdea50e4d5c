#include "trielliptic/geometry.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tri {

namespace {

constexpr int kPlane = 3;

Poly pvar(int n, int i) { return Poly::var(n, i); }
Poly pconst(int n, const Rat& c) { return Poly::constant(n, c); }

bool all_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

// Rank of the coefficient vectors of a list of polynomials.
std::size_t span_rank(const std::vector<Poly>& ps) {
    std::map<Poly::Exp, std::size_t> col;
    for (const auto& p : ps)
        for (const auto& [e, c] : p.terms()) col.emplace(e, col.size());
    RatMatrix m(ps.size(), col.size());
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (const auto& [e, c] : ps[i].terms()) m(i, col[e]) = c;
    return rank(m);
}

// Order in variable i: smallest exponent of variable i over the terms.
int order_in(const Poly& p, int i) {
    int o = -1;
    for (const auto& [e, c] : p.terms())
        if (o < 0 || e[i] < o) o = e[i];
    return o;
}

std::vector<Poly::Exp> monomials_of_degree(int n, int d) {
    std::vector<Poly::Exp> r;
    Poly::Exp e(n, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n - 1) {
            e[i] = left;
            r.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    if (n == 0) return r;
    rec(rec, 0, d);
    return r;
}

// dim (R / I)_d for homogeneous generators in n variables.
long quotient_dim(const std::vector<Poly>& gens, int n, int d) {
    auto target = monomials_of_degree(n, d);
    std::map<Poly::Exp, std::size_t> col;
    for (std::size_t i = 0; i < target.size(); ++i) col[target[i]] = i;
    std::vector<Poly> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        int k = d - g.total_degree();
        if (k < 0) continue;
        for (const auto& m : monomials_of_degree(n, k)) rows.push_back(Poly::monomial(m) * g);
    }
    RatMatrix M(rows.size(), target.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [e, c] : rows[i].terms()) M(i, col.at(e)) = c;
    return static_cast<long>(target.size()) - static_cast<long>(rows.empty() ? 0 : rank(M));
}

// Constant Hilbert polynomial of a zero-dimensional (or empty) scheme cut out by
// forms of degree <= 2. Once h(d) = h(d+1) <= d the value persists (Gotzmann).
long scheme_length(const std::vector<Poly>& gens, int n) {
    long prev = quotient_dim(gens, n, 3);
    for (int d = 4; d <= 12; ++d) {
        long h = quotient_dim(gens, n, d);
        if (h == prev && h <= d - 1) return h;
        prev = h;
    }
    throw std::runtime_error("Hilbert function did not stabilize");
}

std::vector<Poly> hessian_entries(const Poly& c) {
    std::vector<Poly> h;
    for (int i = 0; i < c.nvars(); ++i)
        for (int j = 0; j < c.nvars(); ++j) h.push_back(c.derivative(i).derivative(j));
    return h;
}

std::vector<Poly> hessian_minors2(const Poly& c) {
    const int n = c.nvars();
    auto h = hessian_entries(c);
    auto at = [&](int i, int j) -> const Poly& { return h[i * n + j]; };
    std::vector<Poly> r;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k)
            for (int j = 0; j < n; ++j)
                for (int l = j + 1; l < n; ++l) {
                    Poly m = at(i, j) * at(k, l) - at(i, l) * at(k, j);
                    if (!m.is_zero()) r.push_back(m);
                }
    return r;
}

Rat binary_cubic_disc(const Poly& b) {
    // b in variables (s, t)
    Rat a = b.coeff({3, 0}), bb = b.coeff({2, 1}), c = b.coeff({1, 2}), d = b.coeff({0, 3});
    return bb * bb * c * c - 4 * a * c * c * c - 4 * bb * bb * bb * d - 27 * a * a * d * d + 18 * a * bb * c * d;
}

}  // namespace

std::string CurveParam::str() const {
    static const std::vector<std::string> st{"s", "t"};
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < 5; ++i) os << (i ? ", " : "") << coords[i].str(st);
    os << ")";
    return os.str();
}

CurveParam vertical_line(const RatVec& x, const RatVec& p, const RatVec& q) {
    if (x.size() != 2 || p.size() != 3 || q.size() != 3) throw std::invalid_argument("vertical_line: bad sizes");
    CurveParam c;
    c.kind = CurveParam::Kind::VERTICAL;
    c.coords[0] = pconst(2, x[0]);
    c.coords[1] = pconst(2, x[1]);
    for (int i = 0; i < 3; ++i) c.coords[2 + i] = pvar(2, 0) * p[i] + pvar(2, 1) * q[i];
    return c;
}

CurveParam horizontal_line(const RatVec& y) {
    if (y.size() != 3) throw std::invalid_argument("horizontal_line: bad size");
    CurveParam c;
    c.kind = CurveParam::Kind::HORIZONTAL;
    c.coords[0] = pvar(2, 0);
    c.coords[1] = pvar(2, 1);
    for (int i = 0; i < 3; ++i) c.coords[2 + i] = pconst(2, y[i]);
    return c;
}

CurveParam section(const std::array<Poly, 3>& q) {
    CurveParam c;
    c.kind = CurveParam::Kind::SECTION;
    c.coords[0] = pvar(2, 0);
    c.coords[1] = pvar(2, 1);
    c.degree = -1;
    for (int i = 0; i < 3; ++i) {
        if (q[i].nvars() != 2) throw std::invalid_argument("section: forms must be in (s, t)");
        c.coords[2 + i] = q[i];
        if (!q[i].is_zero()) {
            if (!q[i].is_homogeneous()) throw std::invalid_argument("section: forms must be homogeneous");
            int d = q[i].total_degree();
            if (c.degree >= 0 && d != c.degree) throw std::invalid_argument("section: forms of different degrees");
            c.degree = d;
        }
    }
    return c;
}

std::vector<Poly> gradient(const Poly& f) {
    std::vector<Poly> g;
    for (int i = 0; i < f.nvars(); ++i) g.push_back(f.derivative(i));
    return g;
}

bool jacobian_vanishes_on(const Poly& f, const CurveParam& c) {
    if (!bi::is_bidegree_23(f)) throw std::invalid_argument("polynomial is not of bidegree (2,3)");
    for (const auto& p : c.coords)
        if (p.nvars() != 2) throw std::invalid_argument("degenerate parametrization: coordinates must lie in Q[s,t]");
    std::vector<Poly> xs{c.coords[0], c.coords[1]}, ys{c.coords[2], c.coords[3], c.coords[4]};
    if (span_rank(xs) == 0 || span_rank(ys) == 0) throw std::invalid_argument("degenerate parametrization");
    switch (c.kind) {
        case CurveParam::Kind::VERTICAL:
            if (span_rank(ys) < 2) throw std::invalid_argument("degenerate parametrization: constant line");
            break;
        case CurveParam::Kind::HORIZONTAL:
            if (span_rank(xs) < 2) throw std::invalid_argument("degenerate parametrization: constant line");
            break;
        case CurveParam::Kind::SECTION:
            if (c.degree < 0) throw std::invalid_argument("degenerate parametrization: zero section");
            break;
    }
    std::vector<Poly> img(c.coords.begin(), c.coords.end());
    if (!f.substitute(img).is_zero()) return false;
    for (const auto& g : gradient(f))
        if (!g.substitute(img).is_zero()) return false;
    return true;
}

Poly local_equation(const Poly& f, const RatVec& p) {
    if (f.nvars() != bi::kVars || p.size() != 5) throw std::invalid_argument("local_equation: bad sizes");
    int i = p[0] != 0 ? 0 : (p[1] != 0 ? 1 : -1);
    int k = -1;
    for (int j = 2; j < 5; ++j)
        if (p[j] != 0) {
            k = j;
            break;
        }
    if (i < 0 || k < 0) throw std::invalid_argument("not a point of P1 x P2");
    std::vector<Poly> img(5);
    img[i] = pconst(3, 1);
    img[1 - i] = pconst(3, p[1 - i] / p[i]) + pvar(3, 0);
    int local = 1;
    for (int j = 2; j < 5; ++j) {
        if (j == k) {
            img[j] = pconst(3, 1);
            continue;
        }
        img[j] = pconst(3, p[j] / p[k]) + pvar(3, local++);
    }
    Poly g = f.substitute(img);
    if (g.coeff({0, 0, 0}) != 0) throw std::invalid_argument("point is not on the surface");
    return g;
}

std::optional<int> corank_at(const Poly& f, const RatVec& p) {
    Poly g = local_equation(f, p);
    for (int i = 0; i < 3; ++i) {
        Poly::Exp e(3, 0);
        e[i] = 1;
        if (g.coeff(e) != 0) return std::nullopt;
    }
    RatMatrix H(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Poly::Exp e(3, 0);
            e[i] += 1;
            e[j] += 1;
            H(i, j) = (i == j) ? Rat(2 * g.coeff(e)) : g.coeff(e);
        }
    return 3 - static_cast<int>(rank(H));
}

Rat weighted_order(const Poly& g, const std::vector<Rat>& w) {
    if (g.is_zero()) throw std::invalid_argument("weighted_order of zero");
    if (static_cast<int>(w.size()) != g.nvars()) throw std::invalid_argument("weighted_order: weight count");
    bool first = true;
    Rat best;
    for (const auto& [e, c] : g.terms()) {
        Rat s = 0;
        for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * e[i];
        if (first || s < best) best = s;
        first = false;
    }
    return best;
}

Poly fiber_cubic(const Poly& f, const RatVec& t) {
    if (t.size() != 2 || all_zero(t)) throw std::invalid_argument("fiber_cubic: bad point of P1");
    std::vector<Poly> img{pconst(3, t[0]), pconst(3, t[1]), pvar(3, 0), pvar(3, 1), pvar(3, 2)};
    return f.substitute(img);
}

const char* to_string(CubicType t) {
    switch (t) {
        case CubicType::SMOOTH: return "SMOOTH";
        case CubicType::NODAL: return "NODAL";
        case CubicType::CUSPIDAL: return "CUSPIDAL";
        case CubicType::CONIC_LINE: return "CONIC+LINE";
        case CubicType::CONIC_TANGENT_LINE: return "CONIC+TANGENT_LINE";
        case CubicType::THREE_LINES_GENERAL: return "THREE_LINES_GENERAL";
        case CubicType::THREE_CONCURRENT_LINES: return "THREE_CONCURRENT_LINES";
        case CubicType::DOUBLE_LINE_LINE: return "DOUBLE_LINE+LINE";
        case CubicType::TRIPLE_LINE: return "TRIPLE_LINE";
    }
    return "?";
}

int singular_length(const Poly& c) { return static_cast<int>(scheme_length(gradient(c), kPlane)); }

CubicType classify_cubic(const Poly& c) {
    if (c.is_zero()) throw std::invalid_argument("fiber is whole plane");
    if (c.nvars() != kPlane || !c.is_homogeneous() || c.total_degree() != 3)
        throw std::invalid_argument("classify_cubic: not a ternary cubic");

    if (hessian_minors2(c).empty()) return CubicType::TRIPLE_LINE;

    auto grad = gradient(c);
    if (span_rank(grad) < 3) {
        // A cone: the partials satisfy a linear relation whose vector is the vertex.
        std::map<Poly::Exp, std::size_t> col;
        for (const auto& g : grad)
            for (const auto& [e, x] : g.terms()) col.emplace(e, col.size());
        RatMatrix M(col.size(), 3);
        for (int j = 0; j < 3; ++j)
            for (const auto& [e, x] : grad[j].terms()) M(col[e], j) = x;
        auto ker = rational_kernel(M);
        const RatVec& v = ker.at(0);
        // Restrict to a coordinate line missing the vertex.
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                int o = 3 - a - b;
                if (v[o] == 0) continue;
                std::vector<Poly> img(3, Poly(2));
                img[a] = pvar(2, 0);
                img[b] = pvar(2, 1);
                img[o] = Poly(2);
                Poly bc = c.substitute(img);
                return binary_cubic_disc(bc) != 0 ? CubicType::THREE_CONCURRENT_LINES : CubicType::DOUBLE_LINE_LINE;
            }
        throw std::logic_error("cone without vertex");
    }

    long mu = scheme_length(grad, kPlane);
    auto worse = grad;
    for (auto& m : hessian_minors2(c)) worse.push_back(m);
    bool degenerate_point = scheme_length(worse, kPlane) > 0;
    switch (mu) {
        case 0: return CubicType::SMOOTH;
        case 1: return CubicType::NODAL;
        case 2: return degenerate_point ? CubicType::CUSPIDAL : CubicType::CONIC_LINE;
        case 3: return degenerate_point ? CubicType::CONIC_TANGENT_LINE : CubicType::THREE_LINES_GENERAL;
        default: break;
    }
    throw std::runtime_error("classify_cubic: unexpected singular length " + std::to_string(mu));
}

BranchLocus branch_locus(const Poly& f) {
    if (!bi::is_bidegree_23(f)) throw std::invalid_argument("polynomial is not of bidegree (2,3)");
    Poly A(kPlane), B(kPlane), C(kPlane);
    for (const auto& [e, c] : f.terms()) {
        Poly::Exp y{e[2], e[3], e[4]};
        if (e[0] == 2) A.add_term(y, c);
        else if (e[0] == 1) B.add_term(y, c);
        else C.add_term(y, c);
    }
    BranchLocus r;
    r.sextic = B * B - Rat(4) * A * C;
    // A factor pulled back from P1 exists iff the binary quadratics
    // A_m a^2 + B_m a b + C_m b^2 (one per y-monomial m) share a root.
    std::map<Poly::Exp, RatVec> q;
    auto put = [&](const Poly& p, int slot) {
        for (const auto& [e, c] : p.terms()) {
            auto& v = q[e];
            if (v.empty()) v.assign(3, Rat(0));
            v[slot] = c;
        }
    };
    put(A, 0);
    put(B, 1);
    put(C, 2);
    std::vector<RatVec> rows;
    for (auto& [e, v] : q) rows.push_back(v);
    RatMatrix M(rows.size(), 3);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = rows[i][j];
    std::size_t rk = rank(M);
    if (rk <= 1) {
        r.degenerate = true;
    } else if (rk == 2) {
        RatMatrix m = M;
        auto piv = rref(m);
        (void)piv;
        // Resultant of the two basis quadratics.
        const Rat &a1 = m(0, 0), &b1 = m(0, 1), &c1 = m(0, 2), &a2 = m(1, 0), &b2 = m(1, 1), &c2 = m(1, 2);
        RatMatrix S(4, 4);
        S(0, 0) = a1; S(0, 1) = b1; S(0, 2) = c1;
        S(1, 1) = a1; S(1, 2) = b1; S(1, 3) = c1;
        S(2, 0) = a2; S(2, 1) = b2; S(2, 2) = c2;
        S(3, 1) = a2; S(3, 2) = b2; S(3, 3) = c2;
        r.degenerate = det(S) == 0;
    }
    return r;
}

Poly tangent_cone(const Poly& g, const RatVec& o) {
    if (g.nvars() != kPlane || o.size() != 3) throw std::invalid_argument("tangent_cone: plane curve expected");
    int k = -1;
    for (int j = 0; j < 3; ++j)
        if (o[j] != 0) {
            k = j;
            break;
        }
    if (k < 0) throw std::invalid_argument("tangent_cone: zero point");
    // Local coordinates z_j = y_j / y_k - o_j / o_k for j != k.
    std::vector<Poly> img(3);
    std::vector<int> loc;
    for (int j = 0; j < 3; ++j) {
        if (j == k) {
            img[j] = pconst(2, 1);
            continue;
        }
        img[j] = pconst(2, o[j] / o[k]) + pvar(2, static_cast<int>(loc.size()));
        loc.push_back(j);
    }
    Poly h = g.substitute(img);
    if (h.coeff({0, 0}) != 0) throw std::invalid_argument("point is not on the curve");
    if (h.is_zero()) throw std::invalid_argument("tangent_cone: zero curve");
    Poly low = h.homogeneous_part(h.lowest_degree());
    std::vector<Poly> back;
    for (int j : loc) back.push_back(pvar(3, j) - pvar(3, k) * (o[j] / o[k]));
    return low.substitute(back);
}

namespace {

RatVec second_point(const RatVec& line, const RatVec& o) {
    RatMatrix L(1, 3);
    for (int j = 0; j < 3; ++j) L(0, j) = line[j];
    for (const auto& v : rational_kernel(L)) {
        RatMatrix P(2, 3);
        for (int j = 0; j < 3; ++j) {
            P(0, j) = o[j];
            P(1, j) = v[j];
        }
        if (rank(P) == 2) return v;
    }
    throw std::invalid_argument("line_multiplicity: degenerate line");
}

void check_line(const RatVec& line, const RatVec& o) {
    if (line.size() != 3 || o.size() != 3 || all_zero(line) || all_zero(o))
        throw std::invalid_argument("line_multiplicity: bad line or point");
    Rat s = 0;
    for (int j = 0; j < 3; ++j) s += line[j] * o[j];
    if (s != 0) throw std::invalid_argument("point is not on the line");
}

}  // namespace

std::optional<int> line_multiplicity(const Poly& g, const RatVec& line, const RatVec& o) {
    check_line(line, o);
    if (g.nvars() != kPlane) throw std::invalid_argument("line_multiplicity: plane curve expected");
    if (g.evaluate(o) != 0) throw std::invalid_argument("point is not on the curve");
    RatVec q = second_point(line, o);
    std::vector<Poly> img;
    for (int j = 0; j < 3; ++j) img.push_back(pvar(2, 0) * o[j] + pvar(2, 1) * q[j]);
    Poly r = g.substitute(img);
    if (r.is_zero()) return std::nullopt;
    return order_in(r, 1);
}

std::optional<int> fiber_line_multiplicity(const Poly& f, const RatVec& line, const RatVec& o) {
    check_line(line, o);
    if (!bi::is_bidegree_23(f)) throw std::invalid_argument("polynomial is not of bidegree (2,3)");
    RatVec q = second_point(line, o);
    // Variables x0 x1 s t.
    std::vector<Poly> img{pvar(4, 0), pvar(4, 1)};
    for (int j = 0; j < 3; ++j) img.push_back(pvar(4, 2) * o[j] + pvar(4, 3) * q[j]);
    Poly r = f.substitute(img);
    if (r.is_zero()) return std::nullopt;
    return order_in(r, 3);
}

const std::vector<std::string>& normal_form_labels() {
    static const std::vector<std::string> l{"N1", "N2", "N3", "N4", "N5", "N6", "N7", "U1",    "U2",   "U3",
                                            "U4", "U5", "U6", "U7", "alpha", "beta", "gamma", "eta", "delta",
                                            "tau", "tau'", "theta", "phi", "zeta", "xi", "E7tilde", "E8tilde"};
    return l;
}

FamilyParamSpec normal_form_spec(const std::string& label) {
    if (label == "E7tilde") return family_spec("zeta");
    if (label == "E8tilde") return family_spec("xi");
    if (label.size() == 2 && (label[0] == 'N' || label[0] == 'U')) {
        const auto& r = family_record(label);
        FamilyParamSpec s;
        s.label = label;
        for (const auto& m : members(destabilized_set(r.lambda, r.sign))) s.generators.push_back(m.poly());
        return s;
    }
    if (label == "r1" || label == "r2") throw std::invalid_argument("no normal form for reducible family " + label);
    return family_spec(label);
}

bool matches_normal_form(const Poly& f, const std::string& label) {
    if (std::find(normal_form_labels().begin(), normal_form_labels().end(), label) == normal_form_labels().end())
        throw std::invalid_argument("unknown label: " + label);
    if (!bi::is_bidegree_23(f)) throw std::invalid_argument("polynomial is not of bidegree (2,3)");
    auto spec = normal_form_spec(label);
    const std::size_t N = spec.generators.size();
    RatMatrix G(kNumMonomials, N), Gf(kNumMonomials, N + 1);
    for (std::size_t j = 0; j < N; ++j)
        for (const auto& [e, c] : spec.generators[j].terms()) {
            G(index_of(from_exponents(e)), j) = c;
            Gf(index_of(from_exponents(e)), j) = c;
        }
    RatVec v(kNumMonomials);
    for (const auto& [e, c] : f.terms()) {
        v[index_of(from_exponents(e))] = c;
        Gf(index_of(from_exponents(e)), N) = c;
    }
    if (rank(G) != rank(Gf)) return false;
    for (const auto& con : spec.constraints) {
        Rat s = 0;
        for (const auto& [m, c] : con.terms) s += c * v[index_of(m)];
        if (s != 0) return false;
    }
    return true;
}

namespace {

const RatVec kP{1, 0, 1, 0, 0};  // x = (1,0), y = (1,0,0)
const RatVec kQ{0, 1, 0, 0, 1};  // x = (0,1), y = (0,0,1)
const RatVec kO{1, 0, 0};
const RatVec kY2{0, 0, 1};  // the line y2 = 0
const RatVec kY0{1, 0, 0};  // the line y0 = 0

Rat R(long a, long b = 1) { return Rat(a, b); }

struct Checker {
    const Poly& f;
    std::vector<CheckResult> out;

    void add(const std::string& name, bool ok) { out.push_back({name, ok}); }

    template <class F>
    void guard(const std::string& name, F&& fn) {
        bool ok = false;
        try {
            ok = fn();
        } catch (const std::exception&) {
            ok = false;
        }
        add(name, ok);
    }

    void corank(const RatVec& p, int want, const std::string& where) {
        guard("corank " + std::to_string(want) + " at " + where, [&] {
            auto c = corank_at(f, p);
            return c && *c == want;
        });
    }
    void corank_at_least(const RatVec& p, int want, const std::string& where) {
        guard("corank >= " + std::to_string(want) + " at " + where, [&] {
            auto c = corank_at(f, p);
            return c && *c >= want;
        });
    }
    void weights(const RatVec& p, const std::vector<Rat>& w, const std::string& name, bool shift = false) {
        guard(name, [&] {
            Poly g = local_equation(f, p);
            if (shift) {
                // first local coordinate z = x + y1, i.e. x -> z - y1
                g = g.substitute({pvar(3, 0) - pvar(3, 1), pvar(3, 1), pvar(3, 2)});
            }
            return weighted_order(g, w) >= 1;
        });
    }
    void cubic(const RatVec& t, CubicType want, const std::string& where) {
        guard(std::string("fiber over ") + where + " is " + to_string(want),
              [&] { return classify_cubic(fiber_cubic(f, t)) == want; });
    }
    void singular_vertical(const std::string& name) {
        guard(name, [&] { return jacobian_vanishes_on(f, vertical_line({1, 0}, {1, 0, 0}, {0, 1, 0})); });
    }
    void singular_horizontal(const RatVec& y, const std::string& name) {
        guard(name, [&] { return jacobian_vanishes_on(f, horizontal_line(y)); });
    }
    void divisible(int var, const std::string& name) {
        guard(name, [&] { return f.divisible_by_var(var) && !f.divide_by_var(var).is_zero(); });
    }
    void fiber_order(const RatVec& line, const RatVec& o, int want, const std::string& name) {
        guard(name, [&] {
            auto m = fiber_line_multiplicity(f, line, o);
            return !m || *m >= want;
        });
    }
    // Projective tangent cone of the branch sextic at o, divisible by y2^k, of the given degree.
    void branch_cone(int deg, int k, const std::string& name) {
        guard(name, [&] {
            Poly tc = tangent_cone(branch_locus(f).sextic, kO);
            return tc.total_degree() == deg && tc.divisible_by_var(2, k);
        });
    }
};

}  // namespace

const std::vector<std::string>& geometry_labels() {
    static const std::vector<std::string> l{"N1", "N2", "N3", "N4", "N5", "N6", "N7", "U1",    "U2",   "U3",  "U4",
                                            "U5", "U6", "U7", "alpha", "beta", "gamma", "eta", "delta", "tau", "tau'",
                                            "theta", "phi", "zeta", "xi"};
    return l;
}

MemberReport check_geometry(const std::string& label, const Poly& f) {
    if (!bi::is_bidegree_23(f)) throw std::invalid_argument("polynomial is not of bidegree (2,3)");
    Checker ck{f, {}};
    const std::vector<Rat> e8{R(1, 2), R(1, 6), R(1, 3)};  // (x1, y1, y2) at p
    const std::vector<Rat> e7{R(1, 4), R(1, 4), R(1, 2)};  // (x1, y1, y2) at p

    if (label == "N1") {
        ck.singular_vertical("singular along the vertical line x1 = y2 = 0");
    } else if (label == "N2") {
        ck.corank(kP, 2, "p");
        ck.cubic({1, 0}, CubicType::TRIPLE_LINE, "(1,0)");
        ck.weights(kP, e8, "weights (1/2,1/6,1/3) at p: at least E8~");
    } else if (label == "N3") {
        ck.corank(kP, 3, "p");
    } else if (label == "N4") {
        ck.singular_horizontal({1, 0, 0}, "singular along the horizontal line P1 x (1,0,0)");
    } else if (label == "N5") {
        ck.corank(kP, 2, "p");
        ck.guard("fiber over (1,0) contains the line y2 = 0",
                 [&] { return fiber_cubic(f, {1, 0}).divisible_by_var(2); });
        ck.fiber_order(kY2, kO, 2, "every fiber meets y2 = 0 at o with multiplicity >= 2");
        ck.weights(kP, e7, "weights (1/4,1/4,1/2) at p: at least E7~");
    } else if (label == "N6") {
        ck.divisible(bi::Y2, "contains P1 x P1 = {y2 = 0}");
    } else if (label == "N7") {
        ck.divisible(bi::X1, "contains the fiber P2 = {x1 = 0}");
    } else if (label == "U1") {
        ck.divisible(bi::X1, "contains the fiber P2 = {x1 = 0}");
        ck.guard("residual meets that P2 in a cuspidal cubic", [&] {
            Poly g = f.divide_by_var(bi::X1);
            return classify_cubic(fiber_cubic(g, {1, 0})) == CubicType::CUSPIDAL;
        });
    } else if (label == "U2") {
        ck.singular_vertical("singular along the vertical line x1 = y2 = 0");
        ck.guard("fiber over (1,0) is the triple line 3{y2 = 0}", [&] {
            Poly c = fiber_cubic(f, {1, 0});
            return c.size() == 1 && c.divisible_by_var(2, 3);
        });
        ck.guard("B(S) = 2L + B' with L . B' a single point of multiplicity 4", [&] {
            Poly b = branch_locus(f).sextic;
            if (!b.divisible_by_var(2, 2)) return false;
            Poly r = b.divide_by_var(2, 2);
            auto m = line_multiplicity(r, kY2, kO);
            return m && *m == 4;
        });
    } else if (label == "U3") {
        ck.corank(kP, 3, "p");
        ck.cubic({1, 0}, CubicType::TRIPLE_LINE, "(1,0)");
        ck.branch_cone(4, 3, "tangent cone of B(S) at o contains 3L");
    } else if (label == "U4") {
        ck.corank(kP, 3, "p");
        ck.cubic({1, 0}, CubicType::DOUBLE_LINE_LINE, "(1,0)");
        ck.guard("double line is y2 = 0 and both lines pass through o", [&] {
            Poly c = fiber_cubic(f, {1, 0});
            return c.divisible_by_var(2, 2) && tangent_cone(c, kO).total_degree() == 3;
        });
        ck.fiber_order(kY2, kO, 2, "every fiber meets L1 at o with multiplicity >= 2");
        ck.branch_cone(4, 3, "tangent cone of B(S) at o is 3L1 + L'");
    } else if (label == "U5") {
        ck.singular_horizontal({1, 0, 0}, "singular along the horizontal line P1 x o");
        ck.cubic({1, 0}, CubicType::THREE_CONCURRENT_LINES, "(1,0)");
        ck.guard("the three lines meet at o", [&] { return tangent_cone(fiber_cubic(f, {1, 0}), kO).total_degree() == 3; });
        ck.branch_cone(4, 4, "tangent cone of B(S) at o is a quadruple line");
    } else if (label == "U6") {
        ck.singular_horizontal({1, 0, 0}, "singular along the horizontal line P1 x o");
        ck.guard("fiber over (1,0) has a double line as tangent cone at o", [&] {
            Poly tc = tangent_cone(fiber_cubic(f, {1, 0}), kO);
            return tc.total_degree() == 2 && tc.size() == 1 && tc.divisible_by_var(2, 2);
        });
        ck.fiber_order(kY2, kO, 3, "every fiber meets L at o with multiplicity >= 3");
        ck.branch_cone(4, 3, "tangent cone of B(S) at o contains 3L");
    } else if (label == "U7") {
        ck.singular_vertical("singular along the vertical line x1 = y2 = 0");
        ck.fiber_order(kY2, kO, 3, "fibers not containing L meet it only at o, with multiplicity 3");
        ck.guard("B(S) = 2L + B' with L . B' containing o with multiplicity >= 3", [&] {
            Poly b = branch_locus(f).sextic;
            if (!b.divisible_by_var(2, 2)) return false;
            Poly r = b.divide_by_var(2, 2);
            auto m = line_multiplicity(r, kY2, kO);
            return !m || *m >= 3;
        });
    } else if (label == "alpha") {
        ck.singular_vertical("singular along the vertical line x1 = y2 = 0");
        ck.corank(kQ, 3, "(0,1,0,0,1), off that fiber and off its image line");
    } else if (label == "beta") {
        ck.corank(kP, 2, "p");
        ck.corank(kQ, 2, "q");
        ck.weights(kP, e8, "weights (1/2,1/6,1/3) at p: E8~");
        ck.weights(kQ, {R(1, 2), R(1, 3), R(1, 6)}, "weights (1/2,1/3,1/6) at q: E8~");
        ck.cubic({1, 0}, CubicType::TRIPLE_LINE, "(1,0)");
        ck.cubic({0, 1}, CubicType::TRIPLE_LINE, "(0,1)");
    } else if (label == "gamma") {
        ck.divisible(bi::Y2, "contains P1 x P1 = {y2 = 0}");
        ck.singular_horizontal({0, 0, 1}, "singular along the horizontal line P1 x (0,0,1), disjoint from it");
    } else if (label == "eta") {
        ck.corank(kP, 2, "p");
        ck.corank(kQ, 2, "q");
        ck.weights(kP, e7, "weights (1/4,1/4,1/2) at p: E7~");
        ck.weights(kQ, {R(1, 4), R(1, 2), R(1, 4)}, "weights (1/4,1/2,1/4) at q: E7~");
        ck.guard("fiber over (1,0) contains L1 = {y2 = 0}", [&] { return fiber_cubic(f, {1, 0}).divisible_by_var(2); });
        ck.guard("fiber over (0,1) contains L2 = {y0 = 0}", [&] { return fiber_cubic(f, {0, 1}).divisible_by_var(0); });
        ck.fiber_order(kY2, kO, 2, "every fiber meets L1 at (1,0,0) with multiplicity >= 2");
        ck.fiber_order(kY0, {0, 0, 1}, 2, "every fiber meets L2 at (0,0,1) with multiplicity >= 2");
    } else if (label == "delta") {
        ck.guard("S = P2 + P2 + P1 x C", [&] {
            if (!f.divisible_by_var(bi::X0) || !f.divisible_by_var(bi::X1)) return false;
            Poly c = f.divide_by_var(bi::X0).divide_by_var(bi::X1);
            return c.degree_in(bi::X0) == 0 && c.degree_in(bi::X1) == 0;
        });
    } else if (label == "tau") {
        ck.singular_vertical("singular along the vertical line x1 = y2 = 0");
        ck.corank_at_least(kQ, 3, "(0,1,0,0,1)");
        ck.divisible(bi::Y1, "contains P1 x P1 = {y1 = 0}");
        ck.guard("fixed by the 1-PS (4,-4,3,2,-5)", [&] {
            auto fs = fixed_space(OneParamSubgroup{4, 3, 2});
            return (support(f) & fs) == support(f);
        });
    } else if (label == "tau'") {
        ck.guard("union of the five coordinate divisors", [&] {
            for (int v = 0; v < 5; ++v)
                if (!f.divisible_by_var(v)) return false;
            return true;
        });
    } else if (label == "theta") {
        ck.guard("singular along the degree 1 section (s,t,s,t,0)", [&] {
            return jacobian_vanishes_on(f, section({pvar(2, 0), pvar(2, 1), Poly(2)}));
        });
    } else if (label == "phi") {
        ck.guard("singular along the degree 2 section (s,t,s^2,st,t^2)", [&] {
            Poly s = pvar(2, 0), t = pvar(2, 1);
            return jacobian_vanishes_on(f, section({s * s, s * t, t * t}));
        });
    } else if (label == "zeta") {
        ck.corank(kP, 2, "p");
        ck.weights(kP, {R(1, 2), R(1, 4), R(1, 4)}, "weights (1/2,1/4,1/4) in (x1+y1, y1, y2): E7~", true);
        ck.guard("the fiber over (0,1) misses o", [&] { return fiber_cubic(f, {0, 1}).evaluate(kO) != 0; });
    } else if (label == "xi") {
        ck.corank(kP, 2, "p");
        ck.weights(kP, {R(1, 2), R(1, 6), R(1, 3)}, "weights (1/2,1/6,1/3) in (x1+y1, y1, y2): E8~", true);
        ck.guard("the fiber through p is not a triple line",
                 [&] { return classify_cubic(fiber_cubic(f, {1, 0})) != CubicType::TRIPLE_LINE; });
    } else {
        throw std::invalid_argument("unknown label: " + label);
    }
    MemberReport r;
    r.checks = std::move(ck.out);
    r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.ok; });
    return r;
}

Poly random_member(const std::string& label, std::mt19937_64& rng) {
    auto spec = normal_form_spec(label);
    std::uniform_int_distribution<int> d(-20, 19);
    auto draw = [&] {
        int x = d(rng);
        return Rat(x >= 0 ? x + 1 : x);
    };
    const std::size_t N = spec.generators.size();
    if (spec.constraints.empty()) {
        Poly f(bi::kVars);
        for (const auto& g : spec.generators) f += g * draw();
        return f;
    }
    // Solve the coefficient relations on the generator weights.
    RatMatrix CG(spec.constraints.size(), N);
    for (std::size_t i = 0; i < spec.constraints.size(); ++i)
        for (std::size_t j = 0; j < N; ++j) {
            Rat s = 0;
            for (const auto& [m, c] : spec.constraints[i].terms) s += c * spec.generators[j].coeff(m.poly().terms().begin()->first);
            CG(i, j) = s;
        }
    auto ker = rational_kernel(CG);
    Poly f(bi::kVars);
    for (const auto& k : ker) {
        Rat r = draw();
        for (std::size_t j = 0; j < N; ++j)
            if (k[j] != 0) f += spec.generators[j] * (r * k[j]);
    }
    return f;
}

FamilyVerification verify_family(const std::string& label, int samples, std::uint64_t seed) {
    FamilyVerification v;
    v.label = label;
    v.seed = seed;
    v.samples = samples;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        Poly f = random_member(label, rng);
        auto r = check_geometry(label, f);
        if (r.pass) {
            ++v.passed;
            continue;
        }
        std::ostringstream os;
        os << "sample " << i << ": " << f.str(bi::names()) << " failed:";
        for (const auto& c : r.checks)
            if (!c.ok) os << " [" << c.name << "]";
        v.failures.push_back(os.str());
    }
    return v;
}

Poly parse_biform(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Poly f(bi::kVars);
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string coeff;
        if (!(ls >> coeff)) continue;
        int u, v, w;
        if (!(ls >> u >> v >> w)) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'coeff u v w'");
        std::string extra;
        if (ls >> extra) throw std::invalid_argument("line " + std::to_string(lineno) + ": trailing input");
        Rat c;
        try {
            c = Rat(coeff);
            c.canonicalize();
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad coefficient " + coeff);
        }
        BiMonomial m{u, v, w};
        if (!m.valid()) throw std::invalid_argument("line " + std::to_string(lineno) + ": exponents out of range");
        f += m.poly() * c;
    }
    if (f.is_zero()) throw std::invalid_argument("empty polynomial");
    return f;
}

}  // namespace tri
