#pragma once

#include "trielliptic/git.hpp"
#include "trielliptic/poly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tri {

// Forms in (s, t) giving a map P1 -> P1 x P2; coordinates x0 x1 y0 y1 y2.
struct CurveParam {
    enum class Kind { VERTICAL, HORIZONTAL, SECTION };
    Kind kind = Kind::SECTION;
    int degree = 0;  // SECTION only
    std::array<Poly, 5> coords;
    std::string str() const;
};

// {x} x (line through p and q).
CurveParam vertical_line(const RatVec& x, const RatVec& p, const RatVec& q);
// P1 x {y}.
CurveParam horizontal_line(const RatVec& y);
// x = (s, t), y = (q0, q1, q2) with forms of a common degree d in (s, t).
CurveParam section(const std::array<Poly, 3>& q);

std::vector<Poly> gradient(const Poly& f);
// f and its five partials vanish identically along the curve.
bool jacobian_vanishes_on(const Poly& f, const CurveParam& c);

// Local equation at p in the affine chart given by the first nonzero x and y
// coordinates of p. Local variables: the other x, then the other two y in order.
Poly local_equation(const Poly& f, const RatVec& p);
// 3 - rank of the Hessian of the local equation; nullopt when p is a smooth point.
std::optional<int> corank_at(const Poly& f, const RatVec& p);
// Minimum of sum w_i e_i over the terms of g.
Rat weighted_order(const Poly& g, const std::vector<Rat>& w);

// Plane cubic in y0 y1 y2 (three variables) over the point t of P1.
Poly fiber_cubic(const Poly& f, const RatVec& t);

enum class CubicType {
    SMOOTH,
    NODAL,
    CUSPIDAL,
    CONIC_LINE,
    CONIC_TANGENT_LINE,
    THREE_LINES_GENERAL,
    THREE_CONCURRENT_LINES,
    DOUBLE_LINE_LINE,
    TRIPLE_LINE
};
const char* to_string(CubicType t);
CubicType classify_cubic(const Poly& c);

// Total length of the singular scheme of a reduced plane cubic.
int singular_length(const Poly& c);

struct BranchLocus {
    Poly sextic;              // B^2 - 4AC in y0 y1 y2
    bool degenerate = false;  // f has a factor pulled back from P1
};
BranchLocus branch_locus(const Poly& f);

// Projective tangent cone of a plane curve at o, as a form in y0 y1 y2.
Poly tangent_cone(const Poly& g, const RatVec& o);
// Vanishing order at o of g restricted to the line {line . y = 0};
// nullopt when the line lies in the curve.
std::optional<int> line_multiplicity(const Poly& g, const RatVec& line, const RatVec& o);
// Same for the projections of all fibers of f at once (minimum over fibers).
std::optional<int> fiber_line_multiplicity(const Poly& f, const RatVec& line, const RatVec& o);

// Membership in a normal-form family: f lies in the span of the family's
// generators and satisfies its coefficient relations.
bool matches_normal_form(const Poly& f, const std::string& label);
const std::vector<std::string>& normal_form_labels();
FamilyParamSpec normal_form_spec(const std::string& label);

struct CheckResult {
    std::string name;
    bool ok = false;
};
struct MemberReport {
    bool pass = false;
    std::vector<CheckResult> checks;
};

// Geometric characterization of a family, evaluated on one member.
MemberReport check_geometry(const std::string& label, const Poly& f);
const std::vector<std::string>& geometry_labels();
// Random member with nonzero integer weights in [-20, 20] on a basis of the family.
Poly random_member(const std::string& label, std::mt19937_64& rng);

struct FamilyVerification {
    std::string label;
    std::uint64_t seed = 0;
    int samples = 0;
    int passed = 0;
    std::vector<std::string> failures;  // failing members with the failed checks
};
FamilyVerification verify_family(const std::string& label, int samples, std::uint64_t seed);

// Polynomial text format: one term per line, "coeff u v w".
Poly parse_biform(const std::string& text);

}  // namespace tri
