#pragma once

#include "trielliptic/linalg.hpp"
#include "trielliptic/poly.hpp"

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <vector>

namespace tri {

// x0^u x1^(2-u) y0^v y1^w y2^(3-v-w)
struct BiMonomial {
    int u = 0, v = 0, w = 0;

    int x1_exp() const { return 2 - u; }
    int y2_exp() const { return 3 - v - w; }
    bool valid() const { return u >= 0 && u <= 2 && v >= 0 && w >= 0 && v + w <= 3; }
    Poly poly() const { return bi::mono(u, v, w); }
    std::string str() const;
    auto operator<=>(const BiMonomial&) const = default;
};

constexpr int kNumMonomials = 30;
using MonoSet = std::bitset<kNumMonomials>;

// Fixed order: u, then v, then w ascending.
const std::vector<BiMonomial>& all_monomials();
int index_of(const BiMonomial& m);
std::vector<BiMonomial> members(const MonoSet& s);
MonoSet to_set(const std::vector<BiMonomial>& ms);
// Monomial with the given exponents of (x0, x1, y0, y1, y2).
BiMonomial from_exponents(const std::vector<int>& e);
// Coefficient a_ijk of x0^(2-i) x1^i y0^(3-j-k) y1^j y2^k.
BiMonomial a_index(int i, int j, int k);

// Diagonal (a, -a, b, c, -b-c).
struct OneParamSubgroup {
    long a = 0, b = 0, c = 0;

    bool normalized() const { return a >= 0 && b >= c && c >= -b - c; }
    bool is_zero() const { return a == 0 && b == 0 && c == 0; }
    OneParamSubgroup primitive() const;
    std::string str() const;
    auto operator<=>(const OneParamSubgroup&) const = default;
};

long weight(const BiMonomial& m, const OneParamSubgroup& l);
// Coefficients of the weight as a linear functional in (a, b, c).
std::array<long, 3> weight_functional(const BiMonomial& m);
bool degeneration_leq(const BiMonomial& m1, const BiMonomial& m2);

enum class SignKind { NONPOSITIVE, NEGATIVE };
const char* to_string(SignKind s);

MonoSet destabilized_set(const OneParamSubgroup& l, SignKind s);
MonoSet down_set(const std::vector<BiMonomial>& gens);
bool is_down_set(const MonoSet& s);
std::vector<BiMonomial> maximal_elements(const MonoSet& s);
MonoSet support(const Poly& f);

struct MonomialFamily {
    std::string label;
    SignKind sign = SignKind::NONPOSITIVE;
    OneParamSubgroup witness_lambda;  // the tabulated 1-PS when the label is known
    OneParamSubgroup found_lambda;    // the sample point that produced the set
    std::vector<BiMonomial> maximal_monomials;
    MonoSet full_set;
};

// Tabulated rows: 1-PS, listed maximal monomials (where tabulated) and the
// monomial support of the displayed polynomial shape.
struct FamilyRecord {
    std::string label;
    SignKind sign;
    OneParamSubgroup lambda;
    std::vector<BiMonomial> listed_maximal;
    MonoSet shape_support;
    std::string shape;
};
const std::vector<FamilyRecord>& family_catalog();
const FamilyRecord& family_record(const std::string& label);

struct EnumerationStats {
    std::size_t hyperplanes = 0;
    std::size_t rays = 0;
    std::size_t samples = 0;
    std::size_t grid_points = 0;
    int grid_bound = 0;
    bool grid_agrees = false;
};

// Inclusion-maximal destabilized sets over all nonzero normalized 1-PS,
// labelled against family_catalog(). Throws on an unmatched set.
std::vector<MonomialFamily> enumerate_maximal_families(SignKind s, EnumerationStats* stats = nullptr,
                                                       int grid_bound = 30);

// Integer grid sweep |a|,|b|,|c| <= bound over normalized 1-PS.
std::vector<MonoSet> grid_maximal_sets(SignKind s, int bound, std::size_t* points = nullptr);

// Sample points meeting the relative interior of every face of the central
// arrangement {f = 0} cut by the cone {g >= 0 : g in walls}, dimension 2 or 3.
std::vector<std::vector<long>> arrangement_samples(const std::vector<std::vector<long>>& functionals,
                                                   const std::vector<std::vector<long>>& walls,
                                                   std::size_t* nrays = nullptr);

// Toy case: bidegree (1,1) on P1 x P1 with 1-PS (a,-a) x (b,-b), a,b >= 0.
// Monomial x0^i x1^(1-i) y0^j y1^(1-j) has index 2*i + j.
std::vector<unsigned> toy_maximal_families(SignKind s);
long toy_weight(int i, int j, long a, long b);

enum class Verdict { TORUS_UNSTABLE, TORUS_STRICTLY_SEMISTABLE, TORUS_STABLE };
const char* to_string(Verdict v);

struct Classification {
    Verdict verdict = Verdict::TORUS_STABLE;
    std::string family;                        // empty when stable
    std::optional<OneParamSubgroup> witness;   // destabilizing 1-PS
    bool lp_certificate = false;               // LP agrees with the verdict
};

// Torus-level verdict in the given coordinates.
Classification classify_nonstable(const Poly& f);

MonoSet fixed_space(const OneParamSubgroup& h);
int centralizer_dim(const OneParamSubgroup& h);
int luna_stratum_dim(const OneParamSubgroup& h);

struct LunaStratum {
    std::string label;
    OneParamSubgroup H;
    MonoSet fixed_monomials;
    int centralizer_dim = 0;
    int dim = 0;
};
LunaStratum luna_stratum(const std::string& label, const OneParamSubgroup& h);

// Linear relation sum c_m * a_m = 0 on the coefficients of a family member.
struct CoefficientConstraint {
    std::vector<std::pair<BiMonomial, Rat>> terms;
};

struct FamilyParamSpec {
    std::string label;
    std::vector<Poly> generators;
    std::vector<CoefficientConstraint> constraints;
    int group_dim = 0;
    // Reducible families: bidegrees of the components.
    std::vector<std::pair<int, int>> components;
};

long h0_bidegree(int a, int b);
// dim P(V) for the constrained span of the generators.
int projective_dim(const FamilyParamSpec& spec);
int stable_stratum_dim(const FamilyParamSpec& spec);

// Named families used for the dimension table and geometry checks:
// alpha beta gamma eta delta tau tau' zeta xi theta phi r1 r2.
const FamilyParamSpec& family_spec(const std::string& label);
const std::vector<std::string>& family_spec_labels();

// Stabilizer 1-PS of the semistable strata.
OneParamSubgroup luna_subgroup(const std::string& label);

struct DimensionRow {
    std::string label;
    int dim = 0;
    std::string method;
};
std::vector<DimensionRow> dimension_table();

}  // namespace tri
