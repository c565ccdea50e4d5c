#pragma once

#include "trielliptic/lattice.hpp"
#include "trielliptic/qform.hpp"

#include <array>
#include <string>
#include <vector>

namespace tri {

struct LatticeEmbedding {
    IntegralLattice source, target;
    IntMatrix matrix;  // columns: images of the source basis in target coordinates
    bool primitive = false;

    bool preserves_gram() const;
};
LatticeEmbedding make_embedding(const IntegralLattice& source, const IntegralLattice& target, const IntMatrix& m);

// Isomorphism surrogate for negative definite lattices.
struct InvariantTuple {
    std::size_t rank = 0;
    std::vector<long> disc_orders;
    std::vector<std::pair<long, Rat>> disc_profile;
    RootSystemLabel roots;
    std::array<long, 4> theta{};  // vectors of norm -2, -4, -6, -8
    Int root_index = 1;
    std::vector<long> root_glue;

    std::string key() const;
    std::string str() const;
    bool operator==(const InvariantTuple& o) const { return key() == o.key(); }
    bool operator<(const InvariantTuple& o) const { return key() < o.key(); }
};
InvariantTuple invariants(const IntegralLattice& l);

struct ClassifiedComplement {
    Complement complement;
    FiniteQuadraticForm disc;
    InvariantTuple tuple;
};
ClassifiedComplement classify_complement(const LatticeEmbedding& e);

struct SearchOptions {
    long max_leaves = 20000000;   // per coset enumeration
    long max_nodes = 2000000;     // backtracking nodes
    double budget_seconds = 0;    // 0: unlimited
};

struct EmbeddingClass {
    InvariantTuple tuple;
    FiniteQuadraticForm disc;
    LatticeEmbedding embedding;  // first representative found
    long representatives = 0;    // Weyl-orbit representatives with this tuple
};

struct EmbeddingSearch {
    std::string source, target;
    long nodes = 0;
    long representatives = 0;  // Weyl-orbit representatives of embeddings
    long primitive = 0;
    std::vector<EmbeddingClass> classes;  // primitive ones, distinct tuples, sorted by key
    bool inconclusive = false;
    std::string reason;
    std::vector<std::string> bounds;  // one line per coset enumeration kind
    double seconds = 0;
};

// Embeddings of the source into the target up to the Weyl group of the target:
// basis vectors of norm -2 are placed on roots, the rest (e.g. w of L8) are found
// by enumeration of the coset cut out by the prescribed pairings. Each partial
// placement is reduced to the dominant chamber of the roots orthogonal to it.
EmbeddingSearch embed_root_chain(const IntegralLattice& source, const IntegralLattice& target,
                                 const SearchOptions& opts = {});

// Runs embed_root_chain over several Niemeier labels with up to `jobs` threads.
std::vector<EmbeddingSearch> embed_into_niemeier(const IntegralLattice& source, const std::vector<std::string>& labels,
                                                 const SearchOptions& opts = {}, int jobs = 1);

}  // namespace tri
