#include "trielliptic/embedding.hpp"

#include "lattice_internal.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tri {

using detail::LVec;

bool LatticeEmbedding::preserves_gram() const {
    return matrix.transpose() * target.gram() * matrix == source.gram();
}

LatticeEmbedding make_embedding(const IntegralLattice& source, const IntegralLattice& target, const IntMatrix& m) {
    LatticeEmbedding e{source, target, m, false};
    if (m.rows() != target.rank() || m.cols() != source.rank()) throw std::invalid_argument("embedding shape");
    if (!e.preserves_gram()) throw std::invalid_argument("matrix does not preserve the Gram matrix");
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    e.primitive = cols.empty() || is_saturated(cols, target.rank());
    return e;
}

std::string InvariantTuple::key() const {
    std::ostringstream s;
    s << "rank=" << rank << ";disc=";
    for (auto o : disc_orders) s << o << ",";
    s << ";q=";
    for (const auto& [o, q] : disc_profile) s << o << ":" << q.get_str() << ",";
    s << ";roots=" << roots.str() << ";theta=";
    for (auto t : theta) s << t << ",";
    s << ";index=" << root_index.get_str() << ";glue=";
    for (auto g : root_glue) s << g << ",";
    return s.str();
}

std::string InvariantTuple::str() const {
    std::ostringstream s;
    s << "rank " << rank << ", roots " << roots.str() << ", A = ";
    if (disc_orders.empty()) s << "0";
    for (std::size_t i = 0; i < disc_orders.size(); ++i) s << (i ? " x " : "") << "Z/" << disc_orders[i];
    s << ", theta(-2,-4,-6,-8) = (" << theta[0] << ", " << theta[1] << ", " << theta[2] << ", " << theta[3]
      << "), root index " << root_index.get_str();
    return s.str();
}

InvariantTuple invariants(const IntegralLattice& l) {
    if (!l.negative_definite()) throw std::invalid_argument("invariants need a negative definite lattice");
    InvariantTuple t;
    t.rank = l.rank();
    if (l.rank() > 0) {
        auto f = discriminant_form(l.gram());
        t.disc_orders = f.orders();
        t.disc_profile = f.value_profile();
    }
    auto rts = roots(l);
    t.roots = root_system(l, rts);
    auto th = theta_counts(l, 4);
    for (int k = 0; k < 4; ++k) t.theta[k] = th[k + 1];
    auto rs = root_sublattice(l, rts);
    t.root_index = rs.index;
    t.root_glue = rs.glue;
    return t;
}

ClassifiedComplement classify_complement(const LatticeEmbedding& e) {
    std::vector<IntVec> cols;
    for (std::size_t j = 0; j < e.matrix.cols(); ++j) cols.push_back(e.matrix.col(j));
    ClassifiedComplement c;
    c.complement = orthogonal_complement(e.target, cols);
    const auto& l = c.complement.lattice;
    if (l.rank() > 0) c.disc = discriminant_form(l.gram());
    c.tuple = invariants(l);
    return c;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Searcher {
    const IntegralLattice& source;
    const IntegralLattice& target;
    SearchOptions opts;
    int n = 0, m = 0;
    std::vector<long> g;        // target Gram
    std::vector<long> sg;       // source Gram
    std::vector<int> order;     // placement order of source basis vectors
    std::vector<LVec> roots;
    EmbeddingSearch* out = nullptr;
    Clock::time_point start;
    std::vector<LVec> images;   // in placement order
    std::vector<IntMatrix> leaves;
    std::set<std::string> bound_lines;

    long pr(const LVec& x, const LVec& y) const { return detail::pair(g, n, x, y); }

    bool out_of_budget() {
        if (out->nodes > opts.max_nodes) {
            out->inconclusive = true;
            out->reason = "node bound " + std::to_string(opts.max_nodes) + " exceeded";
            return true;
        }
        if (opts.budget_seconds > 0 &&
            std::chrono::duration<double>(Clock::now() - start).count() > opts.budget_seconds) {
            out->inconclusive = true;
            out->reason = "budget";
            return true;
        }
        return false;
    }

    void reduce_dominant(LVec& v, const std::vector<LVec>& simple) const {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& a : simple) {
                long c = pr(v, a);
                if (c > 0) {
                    for (int i = 0; i < n; ++i) v[i] += c * a[i];
                    changed = true;
                }
            }
        }
    }

    // Vectors x with x.img_i = want_i and x^2 = norm, by enumeration of the coset.
    std::vector<LVec> coset_vectors(int k, long norm) {
        IntMatrix a(k, n);
        IntVec b(k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < n; ++j) {
                long s = 0;
                for (int l = 0; l < n; ++l) s += images[i][l] * g[l * n + j];
                a(i, j) = s;
            }
            b[i] = sg[order[k] * m + order[i]];
        }
        auto x0 = solve_integer(a, b);
        if (!x0) return {};
        auto ker = integer_kernel(a);
        int r = static_cast<int>(ker.size());
        IntMatrix kmat = IntMatrix::from_cols(ker, n);
        IntMatrix gi(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gi(i, j) = g[i * n + j];
        IntMatrix q = kmat.transpose() * gi * kmat;
        for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) = -q(i, j);
        IntMatrix t = lll_transform(q);
        kmat = kmat * t;
        q = t.transpose() * q * t;
        // f(y) = (y + c)^T Q (y + c) + q0 - h^T c with h = -K^T G x0, c = Q^-1 h
        IntVec gx0 = gi * *x0;
        Rat q0 = 0;
        for (int i = 0; i < n; ++i) q0 -= (*x0)[i] * gx0[i];
        RatVec h(r);
        for (int i = 0; i < r; ++i) {
            Rat s = 0;
            for (int j = 0; j < n; ++j) s -= kmat(j, i) * gx0[j];
            h[i] = s;
        }
        auto qinv = inverse(to_rat(q));
        RatVec c = *qinv * h;
        Rat bound = Rat(-norm) - q0;
        for (int i = 0; i < r; ++i) bound += h[i] * c[i];
        std::vector<double> qd(r * r), cd(r);
        for (int i = 0; i < r; ++i) {
            cd[i] = c[i].get_d();
            for (int j = 0; j < r; ++j) qd[i * r + j] = q(i, j).get_d();
        }
        auto kl = detail::flat(kmat);
        LVec base = detail::to_lvec(*x0);
        std::vector<LVec> found;
        long leaves = 0;
        if (bound >= 0) {
            detail::FinckePohst fp(qd, r);
            leaves = fp.run(
                cd, bound.get_d(),
                [&](const LVec& y, double) {
                    LVec x = base;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < r; ++j) x[i] += kl[i * r + j] * y[j];
                    if (pr(x, x) == norm) found.push_back(std::move(x));
                    return true;
                },
                opts.max_leaves);
        }
        std::ostringstream s;
        s << "norm " << norm << " vectors: coset of rank " << r << ", enumeration radius " << bound.get_str()
          << " in the reduced kernel form, leaf cap " << opts.max_leaves;
        bound_lines.insert(s.str());
        if (leaves < 0) {
            out->inconclusive = true;
            out->reason = "leaf bound " + std::to_string(opts.max_leaves) + " exceeded in coset enumeration";
        }
        return found;
    }

    void place(int k, const std::vector<LVec>& stab) {
        if (out->inconclusive) return;
        ++out->nodes;
        if (out_of_budget()) return;
        if (k == m) {
            IntMatrix mat(n, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) mat(j, order[i]) = images[i][j];
            leaves.push_back(mat);
            return;
        }
        int idx = order[k];
        long norm = sg[idx * m + idx];
        auto simple = detail::simple_system(stab, g, n);
        std::vector<LVec> cands;
        if (norm == -2) {
            for (const auto& r : roots) {
                bool ok = true;
                for (int i = 0; i < k && ok; ++i) ok = pr(r, images[i]) == sg[idx * m + order[i]];
                if (ok) cands.push_back(r);
            }
        } else {
            cands = coset_vectors(k, norm);
        }
        std::set<LVec> reps;
        for (auto& c : cands) {
            reduce_dominant(c, simple);
            reps.insert(c);
        }
        for (const auto& rep : reps) {
            images.push_back(rep);
            std::vector<LVec> next;
            for (const auto& r : stab)
                if (pr(r, rep) == 0) next.push_back(r);
            place(k + 1, next);
            images.pop_back();
            if (out->inconclusive) return;
        }
    }
};

}  // namespace

EmbeddingSearch embed_root_chain(const IntegralLattice& source, const IntegralLattice& target,
                                 const SearchOptions& opts) {
    if (!target.negative_definite()) throw std::invalid_argument("target must be negative definite");
    if (!source.negative_definite()) throw std::invalid_argument("source must be negative definite");
    EmbeddingSearch out;
    out.source = source.name();
    out.target = target.name();
    auto start = Clock::now();
    Searcher s{source, target, opts, 0, 0, {}, {}, {}, {}, nullptr, start, {}, {}, {}};
    s.n = static_cast<int>(target.rank());
    s.m = static_cast<int>(source.rank());
    s.g = detail::flat(target.gram());
    s.sg = detail::flat(source.gram());
    s.out = &out;
    s.start = start;
    // roots first, breadth first along nonzero pairings, then the other vectors
    std::vector<bool> used(s.m, false);
    for (int pass = 0; pass < 2; ++pass) {
        for (int seed = 0; seed < s.m; ++seed) {
            bool is_root = s.sg[seed * s.m + seed] == -2;
            if (used[seed] || is_root != (pass == 0)) continue;
            std::vector<int> queue{seed};
            used[seed] = true;
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                int v = queue[qi];
                s.order.push_back(v);
                for (int u = 0; u < s.m; ++u) {
                    bool u_root = s.sg[u * s.m + u] == -2;
                    if (!used[u] && u_root == (pass == 0) && s.sg[v * s.m + u] != 0) {
                        used[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    if (s.m > s.n) {
        out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return out;
    }
    s.roots = detail::short_vectors_l(target, -2);
    s.place(0, s.roots);
    out.representatives = static_cast<long>(s.leaves.size());
    out.bounds.assign(s.bound_lines.begin(), s.bound_lines.end());
    if (!out.inconclusive) {
        std::map<std::string, EmbeddingClass> classes;
        for (const auto& mat : s.leaves) {
            auto e = make_embedding(source, target, mat);
            if (!e.primitive) continue;
            ++out.primitive;
            auto c = classify_complement(e);
            auto key = c.tuple.key();
            auto it = classes.find(key);
            if (it == classes.end()) {
                classes.emplace(key, EmbeddingClass{c.tuple, c.disc, e, 1});
            } else {
                ++it->second.representatives;
            }
            if (opts.budget_seconds > 0 &&
                std::chrono::duration<double>(Clock::now() - start).count() > opts.budget_seconds) {
                out.inconclusive = true;
                out.reason = "budget";
                break;
            }
        }
        for (auto& [k, c] : classes) out.classes.push_back(std::move(c));
    }
    out.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return out;
}

std::vector<EmbeddingSearch> embed_into_niemeier(const IntegralLattice& source, const std::vector<std::string>& labels,
                                                 const SearchOptions& opts, int jobs) {
    std::vector<EmbeddingSearch> out(labels.size());
    jobs = std::max(1, jobs);
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= labels.size()) return;
                i = next++;
            }
            auto target = build_niemeier(labels[i]).lattice;
            out[i] = embed_root_chain(source, target, opts);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::future<void>> fs;
        for (int j = 0; j < jobs; ++j) fs.push_back(std::async(std::launch::async, worker));
        for (auto& f : fs) f.get();
    }
    return out;
}

}  // namespace tri
