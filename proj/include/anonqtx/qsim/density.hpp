#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "anonqtx/qsim/statevector.hpp"

namespace anonqtx::qsim {

// Mixed state of a small register. Same qubit/bit indexing convention as
// Statevector. Eigen handles the Hermitian eigenproblems behind
// trace_distance and mixed-state fidelity.
class DensityMatrix {
public:
    DensityMatrix(int num_qubits, Eigen::MatrixXcd m) : num_qubits_(num_qubits), m_(std::move(m)) {
        const Eigen::Index d = Eigen::Index{1} << num_qubits;
        if (num_qubits_ < 1 || m_.rows() != d || m_.cols() != d)
            throw std::invalid_argument("density: matrix shape does not match qubit count");
    }

    static DensityMatrix from_statevector(const Statevector& s) {
        if (s.num_qubits() < 1)
            throw std::invalid_argument("density: empty register");
        const Eigen::Index d = static_cast<Eigen::Index>(s.dim());
        Eigen::VectorXcd v(d);
        for (Eigen::Index i = 0; i < d; ++i) v(i) = s.amplitudes()[static_cast<std::size_t>(i)];
        return DensityMatrix(s.num_qubits(), v * v.adjoint());
    }

    static DensityMatrix maximally_mixed(int num_qubits) {
        const Eigen::Index d = Eigen::Index{1} << num_qubits;
        return DensityMatrix(num_qubits,
                             Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
    }

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return m_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    double trace_real() const { return m_.trace().real(); }

    bool is_hermitian(double tol = kTol) const {
        return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

private:
    int num_qubits_;
    Eigen::MatrixXcd m_;
};

// Reduced state on `keep` (ascending original qubit indices, nonempty, no
// duplicates). Kept qubit with rank r in `keep` becomes qubit r.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const int n = rho.num_qubits();
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    std::vector<int> ks = keep;
    std::sort(ks.begin(), ks.end());
    if (std::adjacent_find(ks.begin(), ks.end()) != ks.end())
        throw std::invalid_argument("partial_trace: duplicate qubit");
    if (ks.front() < 0 || ks.back() >= n)
        throw std::invalid_argument("partial_trace: qubit index out of range");

    std::vector<int> traced;
    for (int q = 0, j = 0; q < n; ++q) {
        if (j < static_cast<int>(ks.size()) && ks[j] == q)
            ++j;
        else
            traced.push_back(q);
    }

    const int nk = static_cast<int>(ks.size());
    const int nt = static_cast<int>(traced.size());
    auto scatter = [](std::size_t bits, const std::vector<int>& positions) {
        std::size_t out = 0;
        for (std::size_t j = 0; j < positions.size(); ++j)
            if (bits & (std::size_t{1} << j)) out |= std::size_t{1} << positions[j];
        return out;
    };

    const Eigen::Index dk = Eigen::Index{1} << nk;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
    const std::size_t dt = std::size_t{1} << nt;
    for (std::size_t i = 0; i < static_cast<std::size_t>(dk); ++i) {
        const std::size_t ibase = scatter(i, ks);
        for (std::size_t j = 0; j < static_cast<std::size_t>(dk); ++j) {
            const std::size_t jbase = scatter(j, ks);
            cplx acc{0, 0};
            for (std::size_t t = 0; t < dt; ++t) {
                const std::size_t tb = scatter(t, traced);
                acc += rho.matrix()(static_cast<Eigen::Index>(ibase | tb),
                                    static_cast<Eigen::Index>(jbase | tb));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix(nk, std::move(out));
}

inline void check_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* who) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

// (1/2)||a - b||_1 via the eigenvalues of the Hermitian difference.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    check_same_dim(a, b, "trace_distance");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.matrix() - b.matrix(),
                                                       Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace detail {

inline Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

// Uhlmann fidelity with the squared convention: F(|a><a|,|b><b|) = |<a|b>|^2.
inline double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    check_same_dim(a, b, "fidelity");
    const Eigen::MatrixXcd ra = detail::psd_sqrt(a.matrix());
    const Eigen::MatrixXcd inner = ra * b.matrix() * ra;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner, Eigen::EigenvaluesOnly);
    const double root_sum = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::min(1.0, root_sum * root_sum);
}

// <psi|rho|psi>
inline double fidelity(const Statevector& psi, const DensityMatrix& rho) {
    if (psi.num_qubits() != rho.num_qubits())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const Eigen::Index d = static_cast<Eigen::Index>(psi.dim());
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = psi.amplitudes()[static_cast<std::size_t>(i)];
    return std::real(v.adjoint() * rho.matrix() * v);
}

inline double fidelity(const DensityMatrix& rho, const Statevector& psi) {
    return fidelity(psi, rho);
}

}  // namespace anonqtx::qsim
