// Copyright 2026 The EDSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "edss/error.hpp"
#include "edss/register.hpp"

namespace edss {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositivity = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kReconstruction = 1e-9;
/// Eigenvalues below -kNegative count as genuinely negative.
inline constexpr double kNegative = 1e-10;
inline constexpr double kImpossible = 1e-12;
inline constexpr double kEntropyCutoff = 1e-12;
inline constexpr double kEntropyNegative = 1e-8;
} // namespace tol

inline double max_abs(const Matrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double hermiticity_error(const Matrix &m) { return max_abs(m - m.adjoint()); }

inline Matrix symmetrized(const Matrix &m) { return (m + m.adjoint()) * 0.5; }

/**
 * Density operator on a labeled register. Unnormalized intermediates (after a
 * projection without renormalization) carry their probability in `norm()`;
 * every metric requires `norm() == 1`.
 */
class DensityMatrix {
  public:
    DensityMatrix() = default;

    DensityMatrix(Register reg, Matrix op, double norm = 1.0)
        : reg_(std::move(reg)), op_(std::move(op)), norm_(norm) {
        const auto d = static_cast<Eigen::Index>(reg_.dimension());
        if (op_.rows() != d || op_.cols() != d) {
            throw ArgumentError("density matrix: operator is " + std::to_string(op_.rows()) + "x" +
                                std::to_string(op_.cols()) + ", register dimension is " +
                                std::to_string(d));
        }
        if (!op_.allFinite()) {
            throw InvalidStateError("density matrix: non-finite entries");
        }
        const double scale = std::max(1.0, max_abs(op_));
        if (hermiticity_error(op_) > 1e-10 * scale) {
            throw InvalidStateError("density matrix: operator is not Hermitian");
        }
        op_ = symmetrized(op_);
        if (std::abs(trace() - norm_) > tol::kTrace) {
            throw InvalidStateError("density matrix: trace " + std::to_string(trace()) +
                                    " does not match norm " + std::to_string(norm_));
        }
    }

    [[nodiscard]] const Register &reg() const noexcept { return reg_; }
    [[nodiscard]] const Matrix &matrix() const noexcept { return op_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return static_cast<std::size_t>(op_.rows()); }
    [[nodiscard]] double trace() const { return op_.trace().real(); }
    [[nodiscard]] double norm() const noexcept { return norm_; }
    [[nodiscard]] bool is_normalized() const noexcept { return std::abs(norm_ - 1.0) <= tol::kTrace; }

    [[nodiscard]] DensityMatrix normalized() const {
        if (norm_ < tol::kImpossible) {
            throw ImpossibleOutcomeError("cannot renormalize a state with norm " + std::to_string(norm_));
        }
        return {reg_, op_ / norm_, 1.0};
    }

  private:
    Register reg_;
    Matrix op_;
    double norm_ = 1.0;
};

inline void require_unit_trace(const DensityMatrix &rho, const char *where) {
    if (!rho.is_normalized() || std::abs(rho.trace() - 1.0) > tol::kTrace) {
        throw InvalidStateError(std::string(where) + ": state must have unit trace (trace " +
                                std::to_string(rho.trace()) + ")");
    }
}

namespace detail {

/// Per-index subsystem digits, row-major: digits[i * n + k].
inline std::vector<std::size_t> index_digits(const Register &reg) {
    const auto n = reg.size();
    const auto d = reg.dimension();
    const auto strides = reg.strides();
    std::vector<std::size_t> digits(d * n);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            digits[i * n + k] = (i / strides[k]) % reg.dim(k);
        }
    }
    return digits;
}

/// Flattened index contribution of the digits at `positions` (their strides in `reg`).
inline std::vector<std::size_t> partial_index(const Register &reg, std::span<const std::size_t> positions) {
    const auto strides = reg.strides();
    const auto d = reg.dimension();
    std::vector<std::size_t> out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t v = 0;
        for (auto p : positions) {
            v += ((i / strides[p]) % reg.dim(p)) * strides[p];
        }
        out[i] = v;
    }
    return out;
}

inline void check_dimension(std::size_t d) {
    if (d > max_dimension()) {
        throw ResourceError("operator dimension " + std::to_string(d) + " exceeds the dense limit " +
                            std::to_string(max_dimension()) + " (set " + kMaxQubitsEnv + " to raise it)");
    }
}

} // namespace detail

/// Kronecker product; the left operand owns the most significant index block.
inline Matrix kron(const Matrix &a, const Matrix &b) {
    if (!a.allFinite() || !b.allFinite()) {
        throw ArgumentError("kron: non-finite operand");
    }
    const auto r = static_cast<std::size_t>(a.rows() * b.rows());
    const auto c = static_cast<std::size_t>(a.cols() * b.cols());
    detail::check_dimension(std::max(r, c));
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b) {
    return {a.reg() + b.reg(), kron(a.matrix(), b.matrix()), a.norm() * b.norm()};
}

/// One factor of a product operator: `op` acts on `positions` (in the given order).
struct LocalFactor {
    std::vector<std::size_t> positions;
    Matrix op;
};

/**
 * Product operator on `reg`: each factor acts on its positions, every other
 * subsystem gets `fill` (a single-subsystem operator).
 */
inline Matrix product_operator(const Register &reg, std::span<const LocalFactor> factors, const Matrix &fill) {
    const auto n = reg.size();
    const auto d = reg.dimension();
    detail::check_dimension(d);
    std::vector<bool> assigned(n, false);
    for (const auto &f : factors) {
        Eigen::Index local = 1;
        for (auto p : f.positions) {
            if (p >= n || assigned[p]) {
                throw ArgumentError("product operator: invalid or overlapping factor position");
            }
            assigned[p] = true;
            local *= static_cast<Eigen::Index>(reg.dim(p));
        }
        if (f.op.rows() != local || f.op.cols() != local) {
            throw ArgumentError("product operator: factor dimension mismatch");
        }
    }
    std::vector<std::size_t> unassigned;
    for (std::size_t k = 0; k < n; ++k) {
        if (!assigned[k]) {
            if (static_cast<std::size_t>(fill.rows()) != reg.dim(k)) {
                throw ArgumentError("product operator: fill dimension mismatch");
            }
            unassigned.push_back(k);
        }
    }
    const auto digits = detail::index_digits(reg);
    // local index of every factor for every flattened index
    std::vector<std::vector<Eigen::Index>> local_index(factors.size(), std::vector<Eigen::Index>(d));
    for (std::size_t f = 0; f < factors.size(); ++f) {
        for (std::size_t i = 0; i < d; ++i) {
            Eigen::Index v = 0;
            for (auto p : factors[f].positions) {
                v = v * static_cast<Eigen::Index>(reg.dim(p)) + static_cast<Eigen::Index>(digits[i * n + p]);
            }
            local_index[f][i] = v;
        }
    }
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            Complex v{1.0, 0.0};
            for (auto k : unassigned) {
                v *= fill(static_cast<Eigen::Index>(digits[i * n + k]), static_cast<Eigen::Index>(digits[j * n + k]));
                if (v == Complex{}) {
                    break;
                }
            }
            for (std::size_t f = 0; f < factors.size() && v != Complex{}; ++f) {
                v *= factors[f].op(local_index[f][i], local_index[f][j]);
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        }
    }
    return out;
}

/// `op` on the labeled subsystems (in the given order), identity elsewhere.
inline Matrix embed(const Register &reg, std::span<const std::string> labels, const Matrix &op) {
    const auto n = reg.size();
    const auto d = reg.dimension();
    detail::check_dimension(d);
    std::vector<std::size_t> pos;
    std::vector<bool> acted(n, false);
    Eigen::Index local = 1;
    for (const auto &l : labels) {
        const auto p = reg.index_of(l);
        if (acted[p]) {
            throw ArgumentError("embed: label '" + l + "' listed twice");
        }
        acted[p] = true;
        pos.push_back(p);
        local *= static_cast<Eigen::Index>(reg.dim(p));
    }
    if (op.rows() != local || op.cols() != local) {
        throw ArgumentError("embed: operator dimension does not match the labeled subsystems");
    }
    const auto digits = detail::index_digits(reg);
    std::vector<Eigen::Index> inner(d);
    std::vector<std::size_t> outer(d);
    for (std::size_t i = 0; i < d; ++i) {
        Eigen::Index a = 0;
        for (auto p : pos) {
            a = a * static_cast<Eigen::Index>(reg.dim(p)) + static_cast<Eigen::Index>(digits[i * n + p]);
        }
        std::size_t b = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (!acted[k]) {
                b = b * reg.dim(k) + digits[i * n + k];
            }
        }
        inner[i] = a;
        outer[i] = b;
    }
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (outer[i] == outer[j]) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = op(inner[i], inner[j]);
            }
        }
    }
    return out;
}

/// Reduced state on `keep` (register order is preserved); the norm carries over.
inline DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::string> keep) {
    if (keep.empty()) {
        throw ArgumentError("partial_trace: keep set is empty");
    }
    const auto &reg = rho.reg();
    const auto keep_pos = reg.positions(keep);
    std::vector<std::size_t> drop_pos;
    for (std::size_t k = 0; k < reg.size(); ++k) {
        if (std::find(keep_pos.begin(), keep_pos.end(), k) == keep_pos.end()) {
            drop_pos.push_back(k);
        }
    }
    const Register out_reg = reg.select(keep_pos);
    const auto d = reg.dimension();
    const auto n = reg.size();
    const auto digits = detail::index_digits(reg);
    std::vector<std::size_t> kept(d);
    std::vector<std::size_t> dropped(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t a = 0;
        for (auto p : keep_pos) {
            a = a * reg.dim(p) + digits[i * n + p];
        }
        std::size_t b = 0;
        for (auto p : drop_pos) {
            b = b * reg.dim(p) + digits[i * n + p];
        }
        kept[i] = a;
        dropped[i] = b;
    }
    const auto dk = static_cast<Eigen::Index>(out_reg.dimension());
    Matrix out = Matrix::Zero(dk, dk);
    const Matrix &m = rho.matrix();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (dropped[i] == dropped[j]) {
                out(static_cast<Eigen::Index>(kept[i]), static_cast<Eigen::Index>(kept[j])) +=
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return {out_reg, std::move(out), rho.norm()};
}

/// Transpose of the index blocks belonging to `side`; `side` must split the register.
inline Matrix partial_transpose(const DensityMatrix &rho, std::span<const std::string> side) {
    const auto &reg = rho.reg();
    if (side.empty() || side.size() >= reg.size()) {
        throw ArgumentError("partial_transpose: side must be a proper nonempty subset of the register");
    }
    const auto pos = reg.positions(side);
    const auto side_part = detail::partial_index(reg, pos);
    const auto d = reg.dimension();
    const Matrix &m = rho.matrix();
    Matrix out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        const auto ri = i - side_part[i];
        for (std::size_t j = 0; j < d; ++j) {
            const auto rj = j - side_part[j];
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m(static_cast<Eigen::Index>(ri + side_part[j]), static_cast<Eigen::Index>(rj + side_part[i]));
        }
    }
    return out;
}

struct EigenDecomposition {
    RealVector values;  ///< ascending
    Matrix vectors;     ///< columns are orthonormal eigenvectors
};

/// Full spectral decomposition of (M + M^dagger)/2.
inline EigenDecomposition eig_hermitian(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw ArgumentError("eig_hermitian: matrix is not square");
    }
    if (!m.allFinite()) {
        throw ArgumentError("eig_hermitian: non-finite entries");
    }
    const Matrix h = symmetrized(m);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eig_hermitian: eigensolver did not converge (dimension " +
                           std::to_string(m.rows()) + ")");
    }
    EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    const double err = max_abs(h - out.vectors * out.values.asDiagonal() * out.vectors.adjoint());
    if (err > tol::kReconstruction * std::max(1.0, max_abs(h))) {
        throw NumericError("eig_hermitian: reconstruction error " + std::to_string(err));
    }
    return out;
}

/// Eigenvalues only (ascending) of (M + M^dagger)/2.
inline RealVector eigvalsh(const Matrix &m) {
    if (m.rows() != m.cols()) {
        throw ArgumentError("eigvalsh: matrix is not square");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(m), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigvalsh: eigensolver did not converge (dimension " + std::to_string(m.rows()) + ")");
    }
    return solver.eigenvalues();
}

enum class LogBase { two, e };

inline double log_in(double x, LogBase base) { return base == LogBase::two ? std::log2(x) : std::log(x); }

/// -sum p log p over a probability spectrum; entries below 1e-12 contribute 0.
inline double shannon_entropy(const RealVector &p, LogBase base) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < -tol::kEntropyNegative) {
            throw InvalidStateError("entropy: negative eigenvalue " + std::to_string(p[i]));
        }
        if (p[i] > tol::kEntropyCutoff) {
            s -= p[i] * log_in(p[i], base);
        }
    }
    return std::max(0.0, s);
}

inline double von_neumann_entropy(const DensityMatrix &rho, LogBase base = LogBase::two) {
    require_unit_trace(rho, "von_neumann_entropy");
    return shannon_entropy(eigvalsh(rho.matrix()), base);
}

inline double unitarity_error(const Matrix &u) {
    return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

/// U rho U^dagger, re-symmetrized.
inline DensityMatrix conjugate(const DensityMatrix &rho, const Matrix &u) {
    if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != rho.dimension()) {
        throw ArgumentError("conjugate: unitary dimension does not match the state");
    }
    if (unitarity_error(u) > tol::kUnitary) {
        throw ArgumentError("conjugate: operator is not unitary");
    }
    return {rho.reg(), symmetrized(u * rho.matrix() * u.adjoint()), rho.norm()};
}

/// Conjugation by diag(phases); entry (i,j) picks up phases[i] * conj(phases[j]).
inline DensityMatrix conjugate_diagonal(const DensityMatrix &rho, const Vector &phases) {
    if (static_cast<std::size_t>(phases.size()) != rho.dimension()) {
        throw ArgumentError("conjugate_diagonal: phase vector dimension does not match the state");
    }
    if ((phases.cwiseAbs().array() - 1.0).abs().maxCoeff() > tol::kUnitary) {
        throw ArgumentError("conjugate_diagonal: phases are not unimodular");
    }
    Matrix out = phases.asDiagonal() * rho.matrix() * phases.conjugate().asDiagonal();
    return {rho.reg(), symmetrized(out), rho.norm()};
}

struct Projection {
    DensityMatrix state;
    double probability = 0.0;
};

/// (|k><k| on `label`) rho (|k><k| on `label`); probability is the trace of the sandwich.
inline Projection project(const DensityMatrix &rho, const std::string &label, const Vector &ket, bool renormalize) {
    const auto pos = rho.reg().index_of(label);
    if (static_cast<std::size_t>(ket.size()) != rho.reg().dim(pos)) {
        throw ArgumentError("project: ket dimension does not match subsystem '" + label + "'");
    }
    if (std::abs(ket.norm() - 1.0) > tol::kUnitary) {
        throw ArgumentError("project: ket is not normalized");
    }
    const std::vector<std::string> labels{label};
    const Matrix p = embed(rho.reg(), labels, ket * ket.adjoint());
    Matrix sandwich = symmetrized(p * rho.matrix() * p);
    const double prob = sandwich.trace().real();
    if (prob < tol::kImpossible) {
        throw ImpossibleOutcomeError("project: outcome on '" + label + "' has probability " + std::to_string(prob));
    }
    if (renormalize) {
        return {DensityMatrix{rho.reg(), sandwich / prob, 1.0}, prob};
    }
    return {DensityMatrix{rho.reg(), std::move(sandwich), prob}, prob};
}

/// Hermiticity, trace and positivity check; returns an empty string when valid.
inline std::string check_density_invariants(const DensityMatrix &rho) {
    if (hermiticity_error(rho.matrix()) > tol::kHermitian) {
        return "not Hermitian";
    }
    if (std::abs(rho.trace() - rho.norm()) > tol::kTrace) {
        return "trace mismatch";
    }
    const auto ev = eigvalsh(rho.matrix());
    if (ev.size() > 0 && ev.minCoeff() < -tol::kPositivity) {
        return "negative eigenvalue " + std::to_string(ev.minCoeff());
    }
    return {};
}

} // namespace edss
