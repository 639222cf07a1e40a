// Copyright 2026 The qcsz Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense complex matrices and the unitarity / global-phase predicates used by
 * the gate registry, the simulator and the decomposer.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcsz {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDefaultTol = 1e-10;
inline constexpr Complex kI{0.0, 1.0};

/// Largest matrix dimension kron() will produce.
inline constexpr std::size_t kMaxMatrixDim = std::size_t{1} << 20;

/// Raised when a requested object would exceed a fixed size limit.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Maps an angle into (-pi, pi].
inline double normalize_angle(double angle) {
    double r = std::remainder(angle, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/**
 * @brief Square matrix of complex doubles, row-major, immutable once built.
 *
 * Every entry is finite; construction rejects NaN and Inf.
 */
class ComplexMatrix {
  public:
    /// Zero matrix of the given dimension.
    explicit ComplexMatrix(std::size_t dim)
        : dim_(checked_dim(dim)), entries_(dim * dim) {}

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_(checked_dim(dim)), entries_(std::move(entries)) {
        if (entries_.size() != dim_ * dim_) {
            throw std::invalid_argument(
                "ComplexMatrix: expected " + std::to_string(dim_ * dim_) +
                " entries, got " + std::to_string(entries_.size()));
        }
        if (!std::all_of(entries_.begin(), entries_.end(), is_finite)) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : ComplexMatrix(rows.size(), flatten(rows)) {}

    static ComplexMatrix identity(std::size_t dim) {
        std::vector<Complex> e(dim * dim);
        for (std::size_t i = 0; i < dim; ++i) {
            e[i * dim + i] = 1.0;
        }
        return {dim, std::move(e)};
    }

    static ComplexMatrix diagonal(std::span<const Complex> diag) {
        const std::size_t dim = diag.size();
        std::vector<Complex> e(dim * dim);
        for (std::size_t i = 0; i < dim; ++i) {
            e[i * dim + i] = diag[i];
        }
        return {dim, std::move(e)};
    }

    static ComplexMatrix diagonal(std::initializer_list<Complex> diag) {
        return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    [[nodiscard]] const Complex &operator()(std::size_t row,
                                            std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    /// Scalar multiple.
    [[nodiscard]] ComplexMatrix scaled(Complex factor) const {
        std::vector<Complex> e(entries_);
        for (auto &z : e) {
            z *= factor;
        }
        return {dim_, std::move(e)};
    }

    friend bool operator==(const ComplexMatrix &,
                           const ComplexMatrix &) = default;

  private:
    static std::size_t checked_dim(std::size_t dim) {
        if (dim == 0) {
            throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
        }
        return dim;
    }

    static std::vector<Complex>
    flatten(std::initializer_list<std::initializer_list<Complex>> rows) {
        std::vector<Complex> e;
        e.reserve(rows.size() * rows.size());
        for (const auto &row : rows) {
            if (row.size() != rows.size()) {
                throw std::invalid_argument("ComplexMatrix: rows must be square");
            }
            e.insert(e.end(), row.begin(), row.end());
        }
        return e;
    }

    std::size_t dim_;
    std::vector<Complex> entries_;
};

struct EquivalenceReport {
    bool equivalent = false;
    double phase = 0.0; ///< radians in (-pi, pi]
    double max_abs_deviation = 0.0;
};

namespace detail {
inline void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b,
                             const char *what) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
}
} // namespace detail

/// Matrix product a*b. Zero entries of a are skipped, which makes products
/// with embedded gate matrices cheap.
inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    detail::require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    std::vector<Complex> out(n * n);
    const auto be = b.entries();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            const Complex *brow = be.data() + k * n;
            Complex *orow = out.data() + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                orow[j] += aik * brow[j];
            }
        }
    }
    return {n, std::move(out)};
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}

/// Kronecker product; block (r, c) of the result is a(r, c) * b.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    if (da > kMaxMatrixDim / db) {
        throw CapacityError("kron: result dimension exceeds 2^20");
    }
    const std::size_t n = da * db;
    std::vector<Complex> out(n * n);
    for (std::size_t ar = 0; ar < da; ++ar) {
        for (std::size_t ac = 0; ac < da; ++ac) {
            const Complex s = a(ar, ac);
            for (std::size_t br = 0; br < db; ++br) {
                for (std::size_t bc = 0; bc < db; ++bc) {
                    out[(ar * db + br) * n + ac * db + bc] = s * b(br, bc);
                }
            }
        }
    }
    return {n, std::move(out)};
}

/// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix &a) {
    const std::size_t n = a.dim();
    std::vector<Complex> out(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out[r * n + c] = std::conj(a(c, r));
        }
    }
    return {n, std::move(out)};
}

inline Complex trace(const ComplexMatrix &a) {
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        t += a(i, i);
    }
    return t;
}

/// Largest elementwise |a - b|.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    detail::require_same_dim(a, b, "max_abs_diff");
    double worst = 0.0;
    const auto ae = a.entries();
    const auto be = b.entries();
    for (std::size_t i = 0; i < ae.size(); ++i) {
        worst = std::max(worst, std::abs(ae[i] - be[i]));
    }
    return worst;
}

inline bool approx_equal(const ComplexMatrix &a, const ComplexMatrix &b,
                         double tol = kDefaultTol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

/// Deviation of a * dagger(a) from the identity, elementwise maximum.
inline double unitarity_deviation(const ComplexMatrix &a) {
    return max_abs_diff(matmul(a, dagger(a)), ComplexMatrix::identity(a.dim()));
}

inline bool is_unitary(const ComplexMatrix &a, double tol = kDefaultTol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("is_unitary: tolerance must be positive");
    }
    return unitarity_deviation(a) <= tol;
}

/**
 * @brief Checks b == e^{i phi} a for some real phi.
 *
 * The candidate phase is the argument of trace(a^dagger b) / dim. When that
 * trace vanishes no phase is well defined and the matrices are reported as
 * not equivalent with phase 0.
 */
inline EquivalenceReport equal_up_to_global_phase(const ComplexMatrix &a,
                                                  const ComplexMatrix &b,
                                                  double tol = kDefaultTol) {
    detail::require_same_dim(a, b, "equal_up_to_global_phase");
    if (!(tol > 0.0)) {
        throw std::invalid_argument(
            "equal_up_to_global_phase: tolerance must be positive");
    }
    const Complex t = trace(matmul(dagger(a), b)) / static_cast<double>(a.dim());
    if (std::abs(t) < 1e-12) {
        return {false, 0.0, max_abs_diff(a, b)};
    }
    const double phase = normalize_angle(std::arg(t));
    const double dev = max_abs_diff(a.scaled(std::polar(1.0, phase)), b);
    return {dev <= tol, phase, dev};
}

} // namespace qcsz
