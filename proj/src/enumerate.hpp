#pragma once

// Floating-point Fincke-Pohst enumeration used internally; callers re-check
// every hit with exact integer arithmetic.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tri::detail {

using LVec = std::vector<long>;

class FinckePohst {
public:
    // q: n x n positive definite, row-major.
    FinckePohst(const std::vector<double>& q, int n) : n_(n), a_(q) {
        for (int i = 0; i < n_; ++i) {
            if (!(a_[i * n_ + i] > 0)) throw std::invalid_argument("form is not positive definite");
            for (int j = i + 1; j < n_; ++j) {
                a_[j * n_ + i] = a_[i * n_ + j];
                a_[i * n_ + j] /= a_[i * n_ + i];
            }
            for (int k = i + 1; k < n_; ++k)
                for (int l = k; l < n_; ++l) a_[k * n_ + l] -= a_[k * n_ + i] * a_[i * n_ + l];
        }
    }

    // Calls visit(x, value) for every x in Z^n with (x + c)^T Q (x + c) <= bound,
    // value being the floating estimate of that quantity. visit returns false to stop.
    // Returns the number of leaves, or -1 if max_leaves was hit.
    template <class F>
    long run(const std::vector<double>& center, double bound, F&& visit, long max_leaves = -1) {
        x_.assign(n_, 0);
        c_ = center.empty() ? std::vector<double>(n_, 0.0) : center;
        leaves_ = 0;
        max_ = max_leaves;
        stop_ = false;
        truncated_ = false;
        if (n_ == 0) {
            ++leaves_;
            visit(x_, 0.0);
            return leaves_;
        }
        recurse(n_ - 1, bound + 1e-7, 0.0, visit);
        return truncated_ ? -1 : leaves_;
    }

private:
    template <class F>
    void recurse(int i, double remaining, double used, F& visit) {
        double u = c_[i];
        for (int j = i + 1; j < n_; ++j) u += a_[i * n_ + j] * (x_[j] + c_[j]);
        // x_i + u in [-r, r]
        double qii = a_[i * n_ + i];
        double r = std::sqrt(std::max(0.0, remaining / qii));
        long lo = static_cast<long>(std::ceil(-u - r - 1e-9));
        long hi = static_cast<long>(std::floor(-u + r + 1e-9));
        for (long v = lo; v <= hi && !stop_; ++v) {
            double t = v + u;
            double part = qii * t * t;
            if (part > remaining) continue;
            x_[i] = v;
            if (i == 0) {
                ++leaves_;
                if (!visit(static_cast<const LVec&>(x_), used + part)) stop_ = true;
                if (max_ >= 0 && leaves_ >= max_) {
                    stop_ = true;
                    truncated_ = true;
                }
            } else {
                recurse(i - 1, remaining - part, used + part, visit);
            }
        }
        x_[i] = 0;
    }

    int n_;
    std::vector<double> a_;
    LVec x_;
    std::vector<double> c_;
    long leaves_ = 0, max_ = -1;
    bool stop_ = false, truncated_ = false;
};

}  // namespace tri::detail
