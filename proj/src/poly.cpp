#include "trielliptic/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace tri {

Poly Poly::constant(int nvars, const Rat& c) {
    Poly p(nvars);
    p.add_term(Exp(nvars, 0), c);
    return p;
}

Poly Poly::var(int nvars, int i) {
    Exp e(nvars, 0);
    e[i] = 1;
    return monomial(e);
}

Poly Poly::monomial(const Exp& e, const Rat& c) {
    Poly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

Rat Poly::coeff(const Exp& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Exp& e, const Rat& c) {
    if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("exponent length mismatch");
    if (c == 0) return;
    auto [it, fresh] = t_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    if (n_ != o.n_) throw std::invalid_argument("ring mismatch");
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ring mismatch");
    Poly r(n_);
    Exp e(n_);
    for (const auto& [ea, ca] : t_)
        for (const auto& [eb, cb] : o.t_) {
            for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r(n_);
    if (c == 0) return r;
    r.t_ = t_;
    for (auto& [e, x] : r.t_) x *= c;
    return r;
}

Poly operator*(const Rat& c, const Poly& p) { return p * c; }

Poly Poly::pow(int k) const {
    Poly r = constant(n_, 1), b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

Poly Poly::derivative(int i) const {
    Poly r(n_);
    for (const auto& [e, c] : t_) {
        if (e[i] == 0) continue;
        Exp f = e;
        f[i] -= 1;
        r.add_term(f, c * e[i]);
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
    if (static_cast<int>(images.size()) != n_) throw std::invalid_argument("substitute: need one image per variable");
    int m = images.empty() ? 0 : images[0].nvars();
    // Cache powers per variable.
    std::vector<std::vector<Poly>> pw(n_);
    Poly r(m);
    for (const auto& [e, c] : t_) {
        Poly term = constant(m, c);
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            auto& cache = pw[i];
            if (cache.empty()) cache.push_back(constant(m, 1));
            while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(cache.back() * images[i]);
            term = term * cache[e[i]];
        }
        r += term;
    }
    return r;
}

Rat Poly::evaluate(const RatVec& x) const {
    Rat s = 0;
    for (const auto& [e, c] : t_) {
        Rat t = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        s += t;
    }
    return s;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

int Poly::lowest_degree() const {
    int d = -1;
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        if (d < 0 || s < d) d = s;
    }
    return d;
}

int Poly::degree_in(int i) const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, e[i]);
    return d;
}

Poly Poly::homogeneous_part(int d) const {
    Poly r(n_);
    for (const auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        if (s == d) r.t_.emplace(e, c);
    }
    return r;
}

bool Poly::is_homogeneous() const { return total_degree() == lowest_degree(); }

bool Poly::is_bihomogeneous(int first_block, int d1, int d2) const {
    for (const auto& [e, c] : t_) {
        int a = 0, b = 0;
        for (int i = 0; i < n_; ++i) (i < first_block ? a : b) += e[i];
        if (a != d1 || b != d2) return false;
    }
    return true;
}

bool Poly::divisible_by_var(int i, int k) const {
    for (const auto& [e, c] : t_)
        if (e[i] < k) return false;
    return true;
}

Poly Poly::divide_by_var(int i, int k) const {
    if (!divisible_by_var(i, k)) throw std::invalid_argument("not divisible by variable power");
    Poly r(n_);
    for (const auto& [e, c] : t_) {
        Exp f = e;
        f[i] -= k;
        r.t_.emplace(f, c);
    }
    return r;
}

std::string Poly::str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rat a = abs(c);
        bool unit = true;
        for (int x : e) unit = unit && x == 0;
        if (a != 1 || unit) os << a.get_str();
        bool need_star = (a != 1);
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            need_star = true;
            os << (i < static_cast<int>(names.size()) ? names[i] : "v" + std::to_string(i));
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

std::optional<Poly> exact_divide(const Poly& p, const Poly& d) {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    const int n = p.nvars();
    Poly q(n), r = p;
    const auto& [ld, lc] = *d.terms().rbegin();
    while (!r.is_zero()) {
        const auto [lr, rc] = *r.terms().rbegin();
        Poly::Exp e(n);
        for (int i = 0; i < n; ++i) {
            e[i] = lr[i] - ld[i];
            if (e[i] < 0) return std::nullopt;
        }
        Poly t = Poly::monomial(e, rc / lc);
        q += t;
        r = r - t * d;
    }
    return q;
}

namespace bi {

Poly x0() { return Poly::var(kVars, X0); }
Poly x1() { return Poly::var(kVars, X1); }
Poly y0() { return Poly::var(kVars, Y0); }
Poly y1() { return Poly::var(kVars, Y1); }
Poly y2() { return Poly::var(kVars, Y2); }

Poly mono(int u, int v, int w) {
    return Poly::monomial({u, 2 - u, v, w, 3 - v - w});
}

const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"x0", "x1", "y0", "y1", "y2"};
    return n;
}

bool is_bidegree_23(const Poly& f) {
    return f.nvars() == kVars && !f.is_zero() && f.is_bihomogeneous(2, 2, 3);
}

}  // namespace bi

}  // namespace tri
