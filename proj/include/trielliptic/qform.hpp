#pragma once

#include "trielliptic/linalg.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tri {

// Element of Q(zeta_N) written as sum c_k zeta_N^k, k = 0..N-1 (not reduced).
class Cyclotomic {
public:
    Cyclotomic() = default;
    explicit Cyclotomic(int n) : n_(n), c_(n) {}
    static Cyclotomic rational(int n, const Rat& r);
    static Cyclotomic root(int n, long k);  // zeta_n^k
    static Cyclotomic sqrt_minus_3(int n);  // 2 zeta_3 + 1, needs 3 | n
    static Cyclotomic imaginary_unit(int n);  // zeta_4, needs 4 | n

    int order() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat& operator[](long k);

    Cyclotomic lift(int m) const;  // to Q(zeta_m), n | m
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Rat& r) const;
    Cyclotomic conj() const;

    // Coordinates in the power basis 1, z, .., z^(phi(n)-1) of Q[z]/Phi_n(z).
    std::vector<Rat> reduced() const;
    bool operator==(const Cyclotomic& o) const;
    std::optional<Rat> as_rational() const;
    std::complex<double> evaluate() const;
    std::string str() const;

private:
    int n_ = 1;
    std::vector<Rat> c_ = std::vector<Rat>(1);
};

// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<Rat> cyclotomic_polynomial(int n);

// Finite abelian group Z/d1 x ... x Z/dk (d1 | d2 | ...) with a Q/2Z-valued form.
// gram(i,i) = q(g_i) in [0,2); gram(i,j) = b(g_i,g_j) in [0,1) for i != j.
class FiniteQuadraticForm {
public:
    using Element = std::vector<long>;

    FiniteQuadraticForm() = default;
    // Throws if the values are inconsistent with the orders.
    FiniteQuadraticForm(std::vector<long> orders, RatMatrix gram);

    const std::vector<long>& orders() const { return orders_; }
    const RatMatrix& gram() const { return gram_; }
    std::size_t rank() const { return orders_.size(); }
    long size() const;
    bool is_trivial() const { return orders_.empty(); }

    std::vector<Element> elements() const;
    Element normalize(Element x) const;
    Element add(const Element& x, const Element& y) const;
    Element neg(const Element& x) const;
    long order_of(const Element& x) const;
    Rat q(const Element& x) const;  // in [0,2)
    Rat b(const Element& x, const Element& y) const;  // in [0,1)

    FiniteQuadraticForm negated() const;
    std::string str() const;
    // Sorted list of (order, q) over all elements; an isomorphism invariant.
    std::vector<std::pair<long, Rat>> value_profile() const;

private:
    std::vector<long> orders_;
    RatMatrix gram_;
};

Rat mod2(const Rat& x);  // representative in [0,2)
Rat mod1(const Rat& x);  // representative in [0,1)

// A_L = L*/L of an even nondegenerate Gram matrix, via the Smith form.
FiniteQuadraticForm discriminant_form(const IntMatrix& gram);
// Form given by generator orders, q-values and pairwise b-values (upper triangle by rows).
FiniteQuadraticForm form_from_generators(const std::vector<long>& orders, const std::vector<Rat>& q,
                                         const std::vector<Rat>& b = {});

// Isometry search between small forms (images of generators).
bool isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);
// All automorphisms as images of the generators of a.
std::vector<std::vector<FiniteQuadraticForm::Element>> automorphisms(const FiniteQuadraticForm& a);

// sum over A of exp(pi i m q(x)).
Cyclotomic gauss_sum(long m, const FiniteQuadraticForm& f);

struct AlphaInvariants {
    Rat alpha3;                // sum over A/{+-1} of {-q/2}
    long orbits = 0;           // |A/{+-1}|
    long isotropic_orbits = 0;  // |{q = 0}/{+-1}|
};
AlphaInvariants alpha_invariants(const FiniteQuadraticForm& f);

enum class Alpha4Convention { ALL_ORBITS, ISOTROPIC_ORBITS };
const char* to_string(Alpha4Convention c);

struct PicardRank {
    Alpha4Convention convention = Alpha4Convention::ISOTROPIC_ORBITS;
    long alpha4 = 0;
    Rat alpha3;
    Cyclotomic g1, g2, gm3;
    Cyclotomic exact;            // the whole expression in Q(zeta_M)
    std::optional<Rat> value;    // set when the expression is rational
    double approx = 0;           // floating evaluation
    bool integral() const { return value && value->get_den() == 1; }
};
PicardRank picard_rank(const FiniteQuadraticForm& f, Alpha4Convention c);

struct PicardSelection {
    PicardRank all_orbits, isotropic_orbits;
    Alpha4Convention selected = Alpha4Convention::ISOTROPIC_ORBITS;
    const PicardRank& chosen() const {
        return selected == Alpha4Convention::ALL_ORBITS ? all_orbits : isotropic_orbits;
    }
};
// Evaluates both conventions; selects the one giving an integer (isotropic if both do).
PicardSelection picard_rank(const FiniteQuadraticForm& f);

// Isotropic elements (q = 0) up to sign, including 0.
long isotropic_census(const FiniteQuadraticForm& f);
// Isotropic elements up to the full isometry group O(q).
long isotropic_orbits_full(const FiniteQuadraticForm& f);

// Gram matrix of T_n = [[2n, 3], [3, 0]].
IntMatrix t_gram(int n);
// Discriminant form of Sigma_n as listed (generators and values).
FiniteQuadraticForm sigma_form(int n);

}  // namespace tri
