#pragma once

#include "trielliptic/embedding.hpp"
#include "trielliptic/lattice.hpp"
#include "trielliptic/qform.hpp"

#include <string>
#include <vector>

namespace tri {

// Sigma_n = orthogonal complement of T_n in U^3 + E8(-1)^2, with C = e1 + n f1, E = 3 f1 + e2.
// Throws if the signature or discriminant form differs from sigma_form(n).
struct SigmaLattice {
    IntegralLattice lattice;
    IntMatrix inclusion;   // columns in K3 coordinates
    IntMatrix t_embedding; // columns C, E in K3 coordinates
};
SigmaLattice build_sigma(int n);

struct GenusTarget {
    int n = 0, e = 0;
    std::size_t rank = 16;
    FiniteQuadraticForm disc;  // A_Sigma_n for e = 1, trivial for e = 3
    std::string str() const;
};
GenusTarget genus_target(int n, int e);
bool verify_genus_membership(const IntegralLattice& l, const GenusTarget& target);

// Designated source lattice for the e = 1 embeddings and its Niemeier targets.
IntegralLattice type_ii_source(int n);
const std::vector<std::string>& type_ii_targets(int n);
const std::vector<std::string>& e3_targets();
// Root systems listed for the e = 1 classes.
const std::vector<std::string>& listed_e1_roots(int n);

struct CensusClass {
    int e = 1;
    std::string target;
    InvariantTuple tuple;
    FiniteQuadraticForm disc;
    bool in_genus = false;
    LatticeEmbedding embedding;
};

struct IsotropicSample {
    std::vector<IntVec> j;  // in Sigma coordinates
    IsotropicNormalForm form;
    bool in_genus = false;
};

struct BoundaryCensus {
    int n = 0;
    std::vector<CensusClass> type_ii;
    long type_iii = 0;             // isotropic elements of A_Sigma up to sign
    long type_iii_full_orbits = 0; // isotropic elements up to O(q)
    long expected_curves = 0, expected_points = 2;
    std::vector<std::string> missing_roots, extra_roots;  // against listed_e1_roots
    std::vector<EmbeddingSearch> searches;
    std::vector<IsotropicSample> samples;
    bool tuples_distinct = true;   // every found class has its own tuple
    bool inconclusive = false;
    std::string reason;
    double seconds = 0;

    long curves() const { return static_cast<long>(type_ii.size()); }
    long e1_count() const;
    bool counts_match() const { return curves() == expected_curves && type_iii == expected_points; }
    bool labels_match() const { return missing_roots.empty() && extra_roots.empty(); }
};

std::vector<CensusClass> census_type_ii(int n, const SearchOptions& opts = {}, int jobs = 1,
                                        std::vector<EmbeddingSearch>* searches = nullptr);
long census_type_iii(int n);
// Isotropic planes <e3, y> with y in the (U1 + U2) part plus short vectors of the first E8.
std::vector<std::vector<IntVec>> sample_isotropic_planes(const SigmaLattice& s, std::size_t max_count);
BoundaryCensus run_census(int n, const SearchOptions& opts = {}, int jobs = 1);

}  // namespace tri
