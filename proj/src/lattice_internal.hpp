#pragma once

#include "enumerate.hpp"
#include "trielliptic/lattice.hpp"

#include <vector>

namespace tri::detail {

long to_long(const Int& x);
LVec to_lvec(const IntVec& v);
IntVec to_ivec(const LVec& v);
std::vector<long> flat(const IntMatrix& m);

// Pairing with a row-major integer Gram.
inline long pair(const std::vector<long>& g, int n, const LVec& x, const LVec& y) {
    long s = 0;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        long t = 0;
        for (int j = 0; j < n; ++j) t += g[i * n + j] * y[j];
        s += x[i] * t;
    }
    return s;
}

// Simple system of a (closed) set of roots w.r.t. a fixed generic functional.
std::vector<LVec> simple_system(const std::vector<LVec>& roots, const std::vector<long>& gram, int n);

// Exact list of vectors of the given norm in a negative definite lattice,
// coordinates in the lattice basis, lexicographically sorted.
std::vector<LVec> short_vectors_l(const IntegralLattice& l, long norm);

}  // namespace tri::detail
