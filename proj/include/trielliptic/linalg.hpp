#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace tri {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0);
    static Matrix from_cols(const std::vector<std::vector<T>>& cols, std::size_t rows = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const;
    std::vector<T> col(std::size_t j) const;
    Matrix transpose() const;
    bool is_symmetric() const;

    Matrix operator*(const Matrix& o) const;
    std::vector<T> operator*(const std::vector<T>& v) const;
    bool operator==(const Matrix& o) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);
std::string to_string(const IntMatrix& m);

struct Smith {
    IntMatrix U, D, V;
};

// U * m * V == D, D diagonal with d1 | d2 | ... and nonnegative entries.
Smith smith_normal_form(const IntMatrix& m);
// Nonzero diagonal entries of the Smith form.
IntVec elementary_divisors(const IntMatrix& m);

// Z-basis of the integer kernel {x : m x = 0}. Always saturated.
std::vector<IntVec> integer_kernel(const IntMatrix& m);

// Z-basis of span_Q(sub) intersected with Z^n. Throws "rank deficient".
std::vector<IntVec> saturate(const std::vector<IntVec>& sub, std::size_t ambient_rank);
bool is_saturated(const std::vector<IntVec>& sub, std::size_t ambient_rank);

// Rational helpers.
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
Rat det(const RatMatrix& m);
Int det(const IntMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
std::vector<RatVec> rational_kernel(const RatMatrix& m);
// Reduced row echelon form in place, returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);
// Inertia (positive, negative, zero) of a symmetric rational matrix.
struct Inertia {
    int pos = 0, neg = 0, zero = 0;
};
Inertia inertia(const RatMatrix& sym);

Int gcd_of(const IntVec& v);
IntVec primitive(const IntVec& v);
IntVec clear_denominators(const RatVec& v);

// Exact feasibility over Q^d:  f.x < 0 for f in strict, f.x <= 0 for f in weak,
// f.x >= 0 for f in cone. Returns a witness or nullopt (proof of infeasibility
// by Fourier-Motzkin elimination).
std::optional<RatVec> lp_feasible(const std::vector<RatVec>& strict,
                                  const std::vector<RatVec>& weak,
                                  const std::vector<RatVec>& cone,
                                  std::size_t dim);

}  // namespace tri
