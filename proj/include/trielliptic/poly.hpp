#pragma once

#include "trielliptic/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace tri {

// Sparse polynomial with rational coefficients in a fixed number of variables.
class Poly {
public:
    using Exp = std::vector<int>;

    Poly() = default;
    explicit Poly(int nvars) : n_(nvars) {}
    static Poly constant(int nvars, const Rat& c);
    static Poly var(int nvars, int i);
    static Poly monomial(const Exp& e, const Rat& c = 1);

    int nvars() const { return n_; }
    const std::map<Exp, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    Rat coeff(const Exp& e) const;
    void add_term(const Exp& e, const Rat& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    Poly& operator+=(const Poly& o);
    bool operator==(const Poly& o) const { return n_ == o.n_ && t_ == o.t_; }
    Poly pow(int k) const;

    Poly derivative(int i) const;
    // Replace variable i by images[i]; all images share one ring.
    Poly substitute(const std::vector<Poly>& images) const;
    Rat evaluate(const RatVec& x) const;

    int total_degree() const;     // -1 for zero
    int lowest_degree() const;    // -1 for zero
    int degree_in(int i) const;
    Poly homogeneous_part(int d) const;
    bool is_homogeneous() const;
    // Degree in variables [first, first+count).
    bool is_bihomogeneous(int first_block, int d1, int d2) const;

    // Exact division; throws if the divisor does not divide.
    Poly divide_by_var(int i, int k = 1) const;
    bool divisible_by_var(int i, int k = 1) const;

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    int n_ = 0;
    std::map<Exp, Rat> t_;
};

Poly operator*(const Rat& c, const Poly& p);

// Exact division p / d in Q[x]; nullopt if d does not divide p.
// Uses a lex leading term, so it works for any number of variables.
std::optional<Poly> exact_divide(const Poly& p, const Poly& d);

// The five coordinates of P^1 x P^2 in the order x0, x1, y0, y1, y2.
namespace bi {
constexpr int kVars = 5;
enum { X0 = 0, X1 = 1, Y0 = 2, Y1 = 3, Y2 = 4 };
Poly x0();
Poly x1();
Poly y0();
Poly y1();
Poly y2();
// x0^u x1^(2-u) y0^v y1^w y2^(3-v-w)
Poly mono(int u, int v, int w);
const std::vector<std::string>& names();
bool is_bidegree_23(const Poly& f);
}  // namespace bi

}  // namespace tri
