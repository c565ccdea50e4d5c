#pragma once

#include "trielliptic/linalg.hpp"
#include "trielliptic/qform.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tri {

class IntegralLattice {
public:
    IntegralLattice() = default;
    // Throws unless gram is square and symmetric.
    IntegralLattice(std::string name, IntMatrix gram);

    const std::string& name() const { return name_; }
    const IntMatrix& gram() const { return gram_; }
    std::size_t rank() const { return gram_.rows(); }
    const Inertia& signature() const { return sig_; }
    bool is_even() const;
    bool negative_definite() const { return sig_.neg == static_cast<int>(rank()); }
    Int det() const;

    Int pair(const IntVec& x, const IntVec& y) const;
    Rat pair(const RatVec& x, const RatVec& y) const;
    Int norm(const IntVec& x) const { return pair(x, x); }
    Rat norm(const RatVec& x) const { return pair(x, x); }

private:
    std::string name_;
    IntMatrix gram_;
    Inertia sig_;
};

IntegralLattice direct_sum(const std::vector<IntegralLattice>& parts, const std::string& name = "");
IntegralLattice scaled(const IntegralLattice& l, long k, const std::string& name = "");
IntegralLattice negated(const IntegralLattice& l, const std::string& name = "");

// Negative definite root lattices, labelled as follows:
// A: chain; D: d1, d2 attached to d3, chain d2..dn; E: e1 attached to e4, chain e2..en.
IntegralLattice root_lattice(char type, int n);

// Lattice generated by l and the glue vectors (coordinates in the basis of l).
// Throws unless the result is integral.
IntegralLattice overlattice(const IntegralLattice& l, const std::vector<RatVec>& glue, RatMatrix* basis = nullptr);

struct NiemeierSpec {
    std::string label;                    // e.g. "D10E7^2"
    std::vector<std::string> components;  // e.g. {"D10", "E7", "E7"}
    std::vector<std::vector<int>> glue;   // glue words, one class index per component
};
// Glue codes for the Niemeier lattices used here.
const std::vector<NiemeierSpec>& niemeier_specs();
// Class [k] of a component as a rational vector in its simple-root coordinates.
RatVec glue_class(char type, int n, int k);

struct NiemeierLattice {
    IntegralLattice lattice;  // reduced basis
    NiemeierSpec spec;
    RatMatrix basis;          // columns: basis vectors in simple-root coordinates
};
// Root lattice plus glue, reduced; throws unless even, unimodular and negative definite.
NiemeierLattice build_niemeier(const NiemeierSpec& spec);
NiemeierLattice build_niemeier(const std::string& label);

// Names: A8 / A(8), D16, E8, U, U(3), <2t> e.g. <-4>, T(1) / T1, K3, L8, M(D24) / M(E8^3) ...
IntegralLattice catalog(const std::string& name);
std::vector<std::string> catalog_names();
// Niemeier labels of the L8 classification.
const std::vector<std::string>& niemeier_catalog_labels();

// k-th dual basis vector (column k of G^-1), coordinates in the lattice basis.
RatVec dual_vector(const IntegralLattice& l, std::size_t k);

struct Complement {
    IntegralLattice lattice;
    IntMatrix inclusion;  // columns: basis in ambient coordinates
    bool saturated_input = true;
};
// Saturated kernel of the pairing against the given vectors, reduced when definite.
Complement orthogonal_complement(const IntegralLattice& ambient, const std::vector<IntVec>& sub);

// Positive definite Gram reduction; returns unimodular T with T^T G T reduced.
IntMatrix lll_transform(const IntMatrix& pos_def_gram);
IntegralLattice reduced(const IntegralLattice& l, IntMatrix* transform = nullptr);

// All vectors of exactly the given (negative, even) norm. Throws on indefinite input.
std::vector<IntVec> short_vectors(const IntegralLattice& l, long norm);
std::vector<IntVec> roots(const IntegralLattice& l);
// counts[k] = #{x : x^2 = -2k}, k = 0..max_k.
std::vector<long> theta_counts(const IntegralLattice& l, int max_k);

struct RootSystemLabel {
    std::map<std::string, int> components;  // "E8" -> 2 ...

    long root_count() const;
    int rank() const;
    std::string str() const;  // "E8+E7", "A1^2+A13", "0" for empty
    bool operator==(const RootSystemLabel&) const = default;
    auto operator<=>(const RootSystemLabel&) const = default;
};
long root_count(char type, int n);
RootSystemLabel parse_root_label(const std::string& s);  // "A1+A1+A13", "E6^2A2^2"
// Components of the given roots under nonzero pairing, each identified by (rank, count).
RootSystemLabel root_system(const IntegralLattice& l, const std::vector<IntVec>& rts);
RootSystemLabel root_system(const IntegralLattice& l);

// Index of the root sublattice in its saturation and the glue group (elementary divisors).
struct RootSublattice {
    std::size_t rank = 0;
    Int index = 1;
    std::vector<long> glue;
};
RootSublattice root_sublattice(const IntegralLattice& l, const std::vector<IntVec>& rts);

// Isotropic plane normal form: basis J | M | K with Gram
//   [[0, 0, A], [0, B, 0], [A^T, 0, D]], A = [[0,1],[e,0]], D = [[2t,0],[0,0]].
struct IsotropicNormalForm {
    long e = 0;
    long t = 0;
    IntMatrix basis;  // columns in the coordinates of L
    IntMatrix B;
    IntMatrix full;   // basis^T G basis
};
IsotropicNormalForm isotropic_normal_form(const IntegralLattice& l, const std::vector<IntVec>& j);
// |H_J| = index of J in (J tensor Q) meet L*.
long h_j(const IntegralLattice& l, const std::vector<IntVec>& j);

struct OrbitCheck {
    std::string lattice;
    Rat norm;
    long coset_vectors = 0;
    long orbit = 0;
    bool equal = false;
};
// All x in D_n* with x^2 = -1 versus the O(D_n) orbit of delta_n (reflections + diagram symmetries).
OrbitCheck eichler_orbit_check(int n);
// Coset eps + L at fixed norm versus the Weyl orbit of eps: "E6", "E7", "A11".
OrbitCheck coset_orbit_check(const std::string& which);

// Rank-20 lattice spanned by C, E, e_1..e_18 (C^2 = 2, E^2 = 0, C.E = 3, e_i.C = 2,
// e_i.E = 1, e_i.e_j = sign * delta_ij).
struct SignReading {
    int sign = 1;
    Int det;
    Inertia signature;
    std::vector<Int> group;  // nontrivial elementary divisors
    bool cyclic_27 = false;
};
std::vector<SignReading> span_lattice_readings();

// Integer solution of a x = b, if any.
std::optional<IntVec> solve_integer(const IntMatrix& a, const IntVec& b);

}  // namespace tri
