#include "trielliptic/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tri {

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long x : r) a_.emplace_back(x);
    }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    if (!rows.empty()) cols = rows[0].size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

template <class T>
Matrix<T> Matrix<T>::from_cols(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    if (!cols.empty()) rows = cols[0].size();
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

template <class T>
bool Matrix<T>::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const T& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += x * o(k, j);
        }
    return p;
}

template <class T>
std::vector<T> Matrix<T>::operator*(const std::vector<T>& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector: shape mismatch");
    std::vector<T> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

template class Matrix<Int>;
template class Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

/*
 * Smith form by repeated pivoting on the entry of least absolute value.
 * Ties go to the lowest row, then the lowest column.
 */
Smith smith_normal_form(const IntMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    IntMatrix D = m, U = IntMatrix::identity(r), V = IntMatrix::identity(c);
    Int q;

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        for (;;) {
            std::size_t pi = r, pj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (D(i, j) == 0) continue;
                    if (pi == r || mpz_cmpabs(D(i, j).get_mpz_t(), D(pi, pj).get_mpz_t()) < 0) pi = i, pj = j;
                }
            if (pi == r) goto done;
            D.swap_rows(t, pi);
            U.swap_rows(t, pi);
            D.swap_cols(t, pj);
            V.swap_cols(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (D(i, t) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                for (std::size_t j = t; j < c; ++j) D(i, j) -= q * D(t, j);
                for (std::size_t j = 0; j < r; ++j) U(i, j) -= q * U(t, j);
                if (D(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (D(t, j) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                for (std::size_t i = t; i < r; ++i) D(i, j) -= q * D(i, t);
                for (std::size_t i = 0; i < c; ++i) V(i, j) -= q * V(i, t);
                if (D(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Divisibility: fold an offending row into row t and retry.
            bool fixed = true;
            for (std::size_t i = t + 1; i < r && fixed; ++i)
                for (std::size_t j = t + 1; j < c; ++j) {
                    if (D(i, j) % D(t, t) != 0) {
                        for (std::size_t k = t; k < c; ++k) D(t, k) += D(i, k);
                        for (std::size_t k = 0; k < r; ++k) U(t, k) += U(i, k);
                        fixed = false;
                        break;
                    }
                }
            if (fixed) break;
        }
        if (D(t, t) < 0) {
            for (std::size_t k = t; k < c; ++k) D(t, k) = -D(t, k);
            for (std::size_t k = 0; k < r; ++k) U(t, k) = -U(t, k);
        }
    }
done:
    return {std::move(U), std::move(D), std::move(V)};
}

IntVec elementary_divisors(const IntMatrix& m) {
    Smith s = smith_normal_form(m);
    IntVec d;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
        if (s.D(i, i) != 0) d.push_back(s.D(i, i));
    return d;
}

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
    Smith s = smith_normal_form(m);
    std::size_t rk = 0;
    while (rk < std::min(m.rows(), m.cols()) && s.D(rk, rk) != 0) ++rk;
    std::vector<IntVec> basis;
    for (std::size_t j = rk; j < m.cols(); ++j) basis.push_back(s.V.col(j));
    return basis;
}

bool is_saturated(const std::vector<IntVec>& sub, std::size_t n) {
    if (sub.empty()) return true;
    IntMatrix A = IntMatrix::from_cols(sub, n);
    IntVec d = elementary_divisors(A);
    if (d.size() != sub.size()) return false;
    return std::all_of(d.begin(), d.end(), [](const Int& x) { return x == 1; });
}

std::vector<IntVec> saturate(const std::vector<IntVec>& sub, std::size_t n) {
    if (sub.empty()) return {};
    IntMatrix A = IntMatrix::from_cols(sub, n);
    Smith s = smith_normal_form(A);
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (i >= n || s.D(i, i) == 0) throw std::invalid_argument("rank deficient");
    bool already = true;
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (s.D(i, i) != 1) already = false;
    if (already) return sub;
    // A = U^-1 D V^-1, so the first k columns of U^-1 span the saturation.
    auto Uinv = inverse(to_rat(s.U));
    std::vector<IntVec> out;
    for (std::size_t j = 0; j < sub.size(); ++j) {
        IntVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (*Uinv)(i, j).get_num();
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t rank(const RatMatrix& m) {
    RatMatrix w = m;
    return rref(w).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rat(m)); }

Rat det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    RatMatrix w = m;
    Rat d = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && w(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            w.swap_rows(p, c);
            d = -d;
        }
        d *= w(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (w(i, c) == 0) continue;
            Rat f = w(i, c) / w(c, c);
            for (std::size_t j = c; j < n; ++j) w(i, j) -= f * w(c, j);
        }
    }
    return d;
}

// Bareiss fraction-free elimination.
Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix w = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w(p, k) == 0) ++p;
            if (p == n) return 0;
            w.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                w(i, j) = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                mpz_divexact(w(i, j).get_mpz_t(), w(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = w(k, k);
    }
    return sign * w(n - 1, n - 1);
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

std::vector<RatVec> rational_kernel(const RatMatrix& m) {
    RatMatrix w = m;
    auto piv = rref(w);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        RatVec v(m.cols());
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -w(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Inertia inertia(const RatMatrix& sym) {
    if (!sym.is_symmetric()) throw std::invalid_argument("inertia needs a symmetric matrix");
    RatMatrix a = sym;
    const std::size_t n = a.rows();
    Inertia res;
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, p) == 0) ++p;
            if (p < n) {
                a.swap_rows(k, p);
                a.swap_cols(k, p);
            } else {
                std::size_t q = k + 1;
                while (q < n && a(k, q) == 0) ++q;
                if (q == n) {
                    ++res.zero;
                    continue;
                }
                // x_k <- x_k + x_q makes the diagonal 2 a_kq.
                for (std::size_t j = 0; j < n; ++j) a(k, j) += a(q, j);
                for (std::size_t i = 0; i < n; ++i) a(i, k) += a(i, q);
            }
        }
        Rat piv = a(k, k);
        (piv > 0 ? res.pos : res.neg)++;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / piv;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = k; j < n; ++j) a(j, i) = a(i, j);
        }
    }
    return res;
}

Int gcd_of(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

IntVec primitive(const IntVec& v) {
    Int g = gcd_of(v);
    if (g == 0) return v;
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

IntVec clear_denominators(const RatVec& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, Int(x.get_den()));
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat t = v[i] * l;
        r[i] = t.get_num();
    }
    return r;
}

namespace {

struct Ineq {
    IntVec c;  // c.x < 0 if strict, else c.x <= 0
    bool strict;
};

// Scale to a primitive integer vector and merge duplicates.
void normalize(std::vector<Ineq>& sys, bool& contradiction) {
    std::map<IntVec, bool> seen;
    for (auto& q : sys) {
        Int g = gcd_of(q.c);
        if (g == 0) {
            if (q.strict) contradiction = true;
            continue;
        }
        IntVec p = q.c;
        for (auto& x : p) x /= g;
        auto [it, fresh] = seen.emplace(p, q.strict);
        if (!fresh) it->second = it->second || q.strict;
    }
    sys.clear();
    for (auto& [c, s] : seen) sys.push_back({c, s});
}

}  // namespace

std::optional<RatVec> lp_feasible(const std::vector<RatVec>& strict,
                                  const std::vector<RatVec>& weak,
                                  const std::vector<RatVec>& cone,
                                  std::size_t dim) {
    std::vector<Ineq> sys;
    auto add = [&](const RatVec& f, bool s, bool negate) {
        if (f.size() != dim) throw std::invalid_argument("functional has wrong dimension");
        IntVec c = clear_denominators(f);
        if (negate)
            for (auto& x : c) x = -x;
        sys.push_back({c, s});
    };
    for (const auto& f : strict) add(f, true, false);
    for (const auto& f : weak) add(f, false, false);
    for (const auto& f : cone) add(f, false, true);

    bool bad = false;
    normalize(sys, bad);
    if (bad) return std::nullopt;

    // levels[k] only involves variables 0..k-1.
    std::vector<std::vector<Ineq>> levels(dim + 1);
    levels[dim] = sys;
    for (std::size_t k = dim; k-- > 0;) {
        std::vector<Ineq> pos, neg, next;
        for (const auto& q : levels[k + 1]) {
            if (q.c[k] > 0) pos.push_back(q);
            else if (q.c[k] < 0) neg.push_back(q);
            else next.push_back(q);
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                Int a = -n.c[k], b = p.c[k];
                IntVec c(dim);
                for (std::size_t j = 0; j < dim; ++j) c[j] = a * p.c[j] + b * n.c[j];
                next.push_back({c, p.strict || n.strict});
            }
        normalize(next, bad);
        if (bad) return std::nullopt;
        levels[k] = std::move(next);
    }

    RatVec x(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        std::optional<Rat> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& q : levels[k + 1]) {
            if (q.c[k] == 0) continue;
            Rat rest = 0;
            for (std::size_t j = 0; j < k; ++j) rest += q.c[j] * x[j];
            Rat bound = -rest / Rat(q.c[k]);
            if (q.c[k] > 0) {
                if (!hi || bound < *hi || (bound == *hi && q.strict)) {
                    if (!hi || bound < *hi) hi_strict = q.strict;
                    else hi_strict = true;
                    hi = bound;
                }
            } else {
                if (!lo || bound > *lo || (bound == *lo && q.strict)) {
                    if (!lo || bound > *lo) lo_strict = q.strict;
                    else lo_strict = true;
                    lo = bound;
                }
            }
        }
        if (lo && hi) {
            if (*lo < *hi) x[k] = (*lo + *hi) / 2;
            else if (*lo == *hi && !lo_strict && !hi_strict) x[k] = *lo;
            else throw std::logic_error("lp_feasible: empty interval during back substitution");
        } else if (lo) {
            x[k] = lo_strict ? *lo + 1 : *lo;
        } else if (hi) {
            x[k] = hi_strict ? *hi - 1 : *hi;
        } else {
            x[k] = 0;
        }
    }
    return x;
}

}  // namespace tri
