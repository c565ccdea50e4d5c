#include "trielliptic/qform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tri {

namespace {

long lmod(long a, long n) {
    long r = a % n;
    return r < 0 ? r + n : r;
}

Rat floor_mod(const Rat& x, long m) {
    Int k;
    Int num = x.get_num(), den = x.get_den() * m;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rat r = x - Rat(k * m);
    r.canonicalize();
    return r;
}

long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer too large");
    return z.get_si();
}

// Polynomials as coefficient vectors, constant first.
std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& monic) {
    const std::size_t d = monic.size() - 1;
    for (std::size_t i = a.size(); i-- > d;) {
        if (a[i] == 0) continue;
        Rat c = a[i];
        for (std::size_t j = 0; j <= d; ++j) a[i - d + j] -= c * monic[j];
    }
    a.resize(std::min(a.size(), d));
    a.resize(d);
    return a;
}

std::vector<Rat> poly_div_exact(std::vector<Rat> a, const std::vector<Rat>& monic) {
    const std::size_t d = monic.size() - 1;
    if (a.size() <= d) return {Rat(0)};
    std::vector<Rat> q(a.size() - d);
    for (std::size_t i = a.size(); i-- > d;) {
        Rat c = a[i];
        q[i - d] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= d; ++j) a[i - d + j] -= c * monic[j];
    }
    return q;
}

}  // namespace

Rat mod2(const Rat& x) { return floor_mod(x, 2); }
Rat mod1(const Rat& x) { return floor_mod(x, 1); }

std::vector<Rat> cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n >= 1");
    static std::map<int, std::vector<Rat>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<Rat> p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
    cache[n] = p;
    return p;
}

Cyclotomic Cyclotomic::rational(int n, const Rat& r) {
    Cyclotomic c(n);
    c.c_[0] = r;
    return c;
}

Cyclotomic Cyclotomic::root(int n, long k) {
    Cyclotomic c(n);
    c.c_[lmod(k, n)] = 1;
    return c;
}

Cyclotomic Cyclotomic::sqrt_minus_3(int n) {
    if (n % 3 != 0) throw std::invalid_argument("sqrt(-3) needs 3 | n");
    Cyclotomic c(n);
    c.c_[0] += 1;
    c.c_[n / 3] += 2;
    return c;
}

Cyclotomic Cyclotomic::imaginary_unit(int n) {
    if (n % 4 != 0) throw std::invalid_argument("i needs 4 | n");
    return root(n, n / 4);
}

Rat& Cyclotomic::operator[](long k) { return c_[lmod(k, n_)]; }

Cyclotomic Cyclotomic::lift(int m) const {
    if (m % n_ != 0) throw std::invalid_argument("Cyclotomic::lift: order must divide");
    Cyclotomic r(m);
    const int s = m / n_;
    for (int k = 0; k < n_; ++k) r.c_[k * s] = c_[k];
    return r;
}

namespace {
std::pair<Cyclotomic, Cyclotomic> common(const Cyclotomic& a, const Cyclotomic& b) {
    int m = std::lcm(a.order(), b.order());
    return {a.lift(m), b.lift(m)};
}
}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    auto [a, b] = common(*this, o);
    for (int k = 0; k < a.n_; ++k) a.c_[k] += b.c_[k];
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    auto [a, b] = common(*this, o);
    for (int k = 0; k < a.n_; ++k) a.c_[k] -= b.c_[k];
    return a;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    auto [a, b] = common(*this, o);
    Cyclotomic r(a.n_);
    for (int i = 0; i < a.n_; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < a.n_; ++j)
            if (b.c_[j] != 0) r.c_[(i + j) % a.n_] += a.c_[i] * b.c_[j];
    }
    return r;
}

Cyclotomic Cyclotomic::operator*(const Rat& s) const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Cyclotomic Cyclotomic::conj() const {
    Cyclotomic r(n_);
    for (int k = 0; k < n_; ++k) r.c_[lmod(-k, n_)] = c_[k];
    return r;
}

std::vector<Rat> Cyclotomic::reduced() const { return poly_rem(c_, cyclotomic_polynomial(n_)); }

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    auto d = (*this - o).reduced();
    return std::all_of(d.begin(), d.end(), [](const Rat& x) { return x == 0; });
}

std::optional<Rat> Cyclotomic::as_rational() const {
    auto r = reduced();
    for (std::size_t k = 1; k < r.size(); ++k)
        if (r[k] != 0) return std::nullopt;
    return r.empty() ? Rat(0) : r[0];
}

std::complex<double> Cyclotomic::evaluate() const {
    std::complex<double> z = 0;
    for (int k = 0; k < n_; ++k) {
        if (c_[k] == 0) continue;
        double a = 2 * M_PI * k / n_;
        z += c_[k].get_d() * std::complex<double>(std::cos(a), std::sin(a));
    }
    return z;
}

std::string Cyclotomic::str() const {
    auto r = reduced();
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (r[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << r[k];
        if (k) os << "*z" << n_ << "^" << k;
    }
    if (first) os << "0";
    return os.str();
}

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<long> orders, RatMatrix gram)
    : orders_(std::move(orders)), gram_(std::move(gram)) {
    const std::size_t k = orders_.size();
    if (gram_.rows() != k || gram_.cols() != k) throw std::invalid_argument("FiniteQuadraticForm: gram size");
    for (std::size_t i = 0; i < k; ++i) {
        if (orders_[i] < 2) throw std::invalid_argument("FiniteQuadraticForm: orders must be >= 2");
        if (i + 1 < k && orders_[i + 1] % orders_[i] != 0)
            throw std::invalid_argument("FiniteQuadraticForm: orders must divide each other");
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j && mod1(gram_(i, j) - gram_(j, i)) != 0) throw std::invalid_argument("b not symmetric");
            gram_(i, j) = i == j ? mod2(gram_(i, j)) : mod1(gram_(i, j));
        }
    for (std::size_t i = 0; i < k; ++i) {
        const Rat d = orders_[i];
        Rat qi = gram_(i, i);
        if (Rat(d * qi).get_den() != 1) throw std::invalid_argument("q value inconsistent with order");
        if (mod2(d * d * qi) != 0) throw std::invalid_argument("q value inconsistent with order");
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && Rat(d * gram_(i, j)).get_den() != 1) throw std::invalid_argument("b value inconsistent with order");
    }
}

long FiniteQuadraticForm::size() const {
    long s = 1;
    for (long d : orders_) s *= d;
    return s;
}

std::vector<FiniteQuadraticForm::Element> FiniteQuadraticForm::elements() const {
    std::vector<Element> out;
    Element x(orders_.size(), 0);
    for (;;) {
        out.push_back(x);
        std::size_t i = 0;
        while (i < x.size() && ++x[i] == orders_[i]) x[i++] = 0;
        if (i == x.size()) break;
    }
    return out;
}

FiniteQuadraticForm::Element FiniteQuadraticForm::normalize(Element x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = lmod(x[i], orders_[i]);
    return x;
}

FiniteQuadraticForm::Element FiniteQuadraticForm::add(const Element& x, const Element& y) const {
    Element r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = lmod(x[i] + y[i], orders_[i]);
    return r;
}

FiniteQuadraticForm::Element FiniteQuadraticForm::neg(const Element& x) const {
    Element r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = lmod(-x[i], orders_[i]);
    return r;
}

long FiniteQuadraticForm::order_of(const Element& x) const {
    long o = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        long oi = orders_[i] / std::gcd(orders_[i], lmod(x[i], orders_[i]));
        o = std::lcm(o, oi);
    }
    return o;
}

Rat FiniteQuadraticForm::q(const Element& x) const {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        s += Rat(x[i] * x[i]) * gram_(i, i);
        for (std::size_t j = i + 1; j < x.size(); ++j) s += Rat(2 * x[i] * x[j]) * gram_(i, j);
    }
    return mod2(s);
}

Rat FiniteQuadraticForm::b(const Element& x, const Element& y) const {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            if (x[i] && y[j]) s += Rat(x[i] * y[j]) * gram_(i, j);
    return mod1(s);
}

FiniteQuadraticForm FiniteQuadraticForm::negated() const {
    RatMatrix g = gram_;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = -g(i, j);
    return FiniteQuadraticForm(orders_, g);
}

std::string FiniteQuadraticForm::str() const {
    if (orders_.empty()) return "trivial";
    std::ostringstream os;
    for (std::size_t i = 0; i < orders_.size(); ++i) os << (i ? " x " : "") << "Z/" << orders_[i];
    os << "; q = (";
    for (std::size_t i = 0; i < orders_.size(); ++i) os << (i ? ", " : "") << gram_(i, i);
    os << ")";
    if (orders_.size() > 1) {
        os << "; b = (";
        bool first = true;
        for (std::size_t i = 0; i < orders_.size(); ++i)
            for (std::size_t j = i + 1; j < orders_.size(); ++j) {
                os << (first ? "" : ", ") << gram_(i, j);
                first = false;
            }
        os << ")";
    }
    return os.str();
}

std::vector<std::pair<long, Rat>> FiniteQuadraticForm::value_profile() const {
    std::vector<std::pair<long, Rat>> p;
    for (const auto& x : elements()) p.emplace_back(order_of(x), q(x));
    std::sort(p.begin(), p.end());
    return p;
}

FiniteQuadraticForm discriminant_form(const IntMatrix& gram) {
    const std::size_t n = gram.rows();
    if (!gram.is_symmetric()) throw std::invalid_argument("Gram matrix not symmetric");
    for (std::size_t i = 0; i < n; ++i)
        if (gram(i, i) % 2 != 0) throw std::invalid_argument("Gram matrix not even");
    auto inv = inverse(to_rat(gram));
    if (!inv) throw std::invalid_argument("Gram matrix degenerate");
    Smith s = smith_normal_form(gram);
    // A = Z^n / G Z^n; U maps it onto the diagonal presentation, so the generators
    // are the columns of U^-1 and dual vectors are G^-1 applied to them.
    auto uinv = inverse(to_rat(s.U));
    if (!uinv) throw std::logic_error("Smith transform not invertible");
    std::vector<long> orders;
    std::vector<RatVec> gens;
    for (std::size_t i = 0; i < n; ++i) {
        const Int& d = s.D(i, i);
        if (d == 1) continue;
        if (d == 0) throw std::invalid_argument("Gram matrix degenerate");
        orders.push_back(to_long(d));
        gens.push_back((*inv) * (*uinv).col(i));
    }
    const std::size_t k = orders.size();
    RatMatrix G(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            // (G^-1 y_i)^T G (G^-1 y_j)
            RatVec gy = to_rat(gram) * gens[j];
            Rat v = 0;
            for (std::size_t t = 0; t < n; ++t) v += gens[i][t] * gy[t];
            G(i, j) = v;
        }
    return FiniteQuadraticForm(orders, G);
}

FiniteQuadraticForm form_from_generators(const std::vector<long>& orders, const std::vector<Rat>& q,
                                         const std::vector<Rat>& b) {
    const std::size_t k = orders.size();
    if (q.size() != k || (b.size() != k * (k - 1) / 2 && !(b.empty() && k <= 1)))
        throw std::invalid_argument("form_from_generators: value count");
    RatMatrix G(k, k);
    std::size_t t = 0;
    for (std::size_t i = 0; i < k; ++i) {
        G(i, i) = q[i];
        for (std::size_t j = i + 1; j < k; ++j) {
            G(i, j) = b.empty() ? Rat(0) : b[t];
            G(j, i) = G(i, j);
            ++t;
        }
    }
    return FiniteQuadraticForm(orders, G);
}

namespace {

using Elem = FiniteQuadraticForm::Element;

Elem image_of(const FiniteQuadraticForm& tgt, const std::vector<Elem>& img, const Elem& x) {
    Elem r(tgt.rank(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t t = 0; t < r.size(); ++t) r[t] += x[i] * img[i][t];
    return tgt.normalize(r);
}

// Generator images a -> b preserving orders, q and b; calls on_map for each bijective isometry.
template <class F>
void isometry_search(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, F&& on_map) {
    if (a.size() != b.size()) return;
    const auto elems_b = b.elements();
    const std::size_t k = a.rank();
    std::vector<std::vector<Elem>> cand(k);
    for (std::size_t i = 0; i < k; ++i) {
        Elem g(k, 0);
        g[i] = 1;
        for (const auto& y : elems_b)
            if (b.order_of(y) == a.orders()[i] && b.q(y) == a.gram()(i, i)) cand[i].push_back(y);
    }
    std::vector<Elem> img(k);
    const auto elems_a = a.elements();
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == k) {
            std::set<Elem> seen;
            for (const auto& x : elems_a)
                if (!seen.insert(image_of(b, img, x)).second) return true;
            return on_map(img);
        }
        for (const auto& y : cand[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = b.b(img[j], y) == a.gram()(j, i);
            if (!ok) continue;
            img[i] = y;
            if (!self(self, i + 1)) return false;
        }
        return true;
    };
    rec(rec, 0);
}

}  // namespace

bool isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    if (a.size() != b.size()) return false;
    if (a.value_profile() != b.value_profile()) return false;
    bool found = false;
    isometry_search(a, b, [&](const std::vector<Elem>&) {
        found = true;
        return false;
    });
    return found;
}

std::vector<std::vector<FiniteQuadraticForm::Element>> automorphisms(const FiniteQuadraticForm& a) {
    std::vector<std::vector<Elem>> out;
    isometry_search(a, a, [&](const std::vector<Elem>& img) {
        out.push_back(img);
        return true;
    });
    return out;
}

Cyclotomic gauss_sum(long m, const FiniteQuadraticForm& f) {
    // exp(pi i m q) = zeta_N^(m q N / 2) with N = 2 * lcm of the denominators of q.
    long den = 1;
    const auto elems = f.elements();
    std::vector<Rat> qs;
    for (const auto& x : elems) {
        qs.push_back(f.q(x));
        den = std::lcm(den, to_long(qs.back().get_den()));
    }
    const int N = static_cast<int>(2 * den);
    Cyclotomic g(N);
    for (const auto& qv : qs) {
        Rat e = qv * m * N / 2;
        g[to_long(e.get_num())] += 1;
    }
    return g;
}

namespace {

// Orbits of {x, -x} as representatives.
std::vector<Elem> sign_orbits(const FiniteQuadraticForm& f) {
    std::vector<Elem> reps;
    std::set<Elem> seen;
    for (const auto& x : f.elements()) {
        if (seen.count(x)) continue;
        seen.insert(x);
        seen.insert(f.neg(x));
        reps.push_back(x);
    }
    return reps;
}

}  // namespace

AlphaInvariants alpha_invariants(const FiniteQuadraticForm& f) {
    AlphaInvariants a;
    a.alpha3 = 0;
    for (const auto& x : sign_orbits(f)) {
        a.alpha3 += mod1(-f.q(x) / 2);
        ++a.orbits;
        if (f.q(x) == 0) ++a.isotropic_orbits;
    }
    return a;
}

const char* to_string(Alpha4Convention c) {
    return c == Alpha4Convention::ALL_ORBITS ? "all-orbits" : "isotropic-orbits";
}

PicardRank picard_rank(const FiniteQuadraticForm& f, Alpha4Convention c) {
    PicardRank r;
    r.convention = c;
    auto al = alpha_invariants(f);
    r.alpha3 = al.alpha3;
    r.alpha4 = c == Alpha4Convention::ALL_ORBITS ? al.orbits : al.isotropic_orbits;
    r.g1 = gauss_sum(1, f);
    r.g2 = gauss_sum(2, f);
    r.gm3 = gauss_sum(-3, f);
    const int M = std::lcm(std::lcm(r.g1.order(), r.g2.order()), std::lcm(r.gm3.order(), 12));
    // 29/4 - Re G(2)/12 - a3 - a4 - Re[i (G(1) + G(-3))] / (9 sqrt 3)
    // with Re[i S]/(9 sqrt 3) = -(S - conj S)/(2i * 9 sqrt 3) = (S - conj S) sqrt(-3) / 54.
    Cyclotomic S = r.g1 + r.gm3;
    Cyclotomic reG2 = (r.g2 + r.g2.conj()) * Rat(1, 2);
    Cyclotomic last = (S - S.conj()) * Cyclotomic::sqrt_minus_3(M) * Rat(1, 54);
    r.exact = Cyclotomic::rational(M, Rat(29, 4) - r.alpha3 - Rat(r.alpha4)) - reG2 * Rat(1, 12) - last;
    r.value = r.exact.as_rational();
    // Independent floating evaluation of the displayed expression.
    const std::complex<double> I(0, 1);
    std::complex<double> s = r.g1.evaluate() + r.gm3.evaluate();
    r.approx = 29.0 / 4 - r.g2.evaluate().real() / 12 - r.alpha3.get_d() - static_cast<double>(r.alpha4) -
               (I * s).real() / (9 * std::sqrt(3.0));
    return r;
}

PicardSelection picard_rank(const FiniteQuadraticForm& f) {
    PicardSelection s;
    s.all_orbits = picard_rank(f, Alpha4Convention::ALL_ORBITS);
    s.isotropic_orbits = picard_rank(f, Alpha4Convention::ISOTROPIC_ORBITS);
    s.selected = (!s.isotropic_orbits.integral() && s.all_orbits.integral()) ? Alpha4Convention::ALL_ORBITS
                                                                             : Alpha4Convention::ISOTROPIC_ORBITS;
    return s;
}

long isotropic_census(const FiniteQuadraticForm& f) { return alpha_invariants(f).isotropic_orbits; }

long isotropic_orbits_full(const FiniteQuadraticForm& f) {
    std::vector<Elem> iso;
    for (const auto& x : f.elements())
        if (f.q(x) == 0) iso.push_back(x);
    auto autos = automorphisms(f);
    std::map<Elem, Elem> parent;
    for (const auto& x : iso) parent[x] = x;
    auto find = [&](Elem x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (const auto& img : autos)
        for (const auto& x : iso) {
            Elem a = find(x), b = find(image_of(f, img, x));
            if (a != b) parent[a] = b;
        }
    std::set<Elem> roots;
    for (const auto& x : iso) roots.insert(find(x));
    return static_cast<long>(roots.size());
}

IntMatrix t_gram(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("n must be 1, 2 or 3");
    return IntMatrix{{2L * n, 3}, {3, 0}};
}

FiniteQuadraticForm sigma_form(int n) {
    switch (n) {
        case 1: return form_from_generators({9}, {Rat(-10, 9)});
        case 2: return form_from_generators({9}, {Rat(-8, 9)});
        case 3: return form_from_generators({3, 3}, {Rat(-2, 3), Rat(-4, 3)}, {Rat(0)});
        default: break;
    }
    throw std::invalid_argument("n must be 1, 2 or 3");
}

}  // namespace tri
