// algebra.hpp — hat map on C^3, Levi-Civita stacking tensor, vec/kron, symplectic form

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <stdexcept>

namespace qsde::algebra {

using Complex = std::complex<double>;
using FMatrix = Eigen::Matrix<double, 9, 3>;

// --------------------------- hat map ----------------------------------------

// theta_minus(b): 3-vector -> skew 3x3 with rows (0, b3, -b2), (-b3, 0, b1), (b2, -b1, 0).
// Entrywise (i,j) = sum_k eps_{ijk} b_k, so theta_minus(b) g = g x b.
inline Eigen::Matrix3cd theta_minus(const Eigen::Vector3cd& b) {
    Eigen::Matrix3cd m;
    m <<  0.0,  b(2), -b(1),
        -b(2),   0.0,  b(0),
         b(1), -b(0),   0.0;
    return m;
}

inline Eigen::Matrix3d theta_minus(const Eigen::Vector3d& b) {
    Eigen::Matrix3d m;
    m <<  0.0,  b(2), -b(1),
        -b(2),   0.0,  b(0),
         b(1), -b(0),   0.0;
    return m;
}

// --------------------------- Levi-Civita / F tensor --------------------------

// eps_{ijk} for 0-based indices in {0,1,2}
inline double levi_civita(int i, int j, int k) {
    return 0.5 * static_cast<double>((j - i) * (k - i) * (k - j));
}

// vec: column-major stacking of an m x n array into an mn vector
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic>
vec(const Eigen::MatrixBase<Derived>& m) {
    Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> v(m.size());
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) v(k++) = m(r, c);
    return v;
}

// F: 9x3 array of Levi-Civita symbols satisfying vec(theta_minus(b)) = F b.
// Block i of rows (3i..3i+2) holds eps_{i,c,r} at position (r, c).
inline const FMatrix& f_tensor() {
    static const FMatrix f = [] {
        FMatrix m;
        for (int i = 0; i < 3; ++i)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) m(3 * i + r, c) = levi_civita(i, c, r);
        return m;
    }();
    return f;
}

// --------------------------- Kronecker product -------------------------------

template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    static_assert(std::is_same_v<typename DA::Scalar, typename DB::Scalar>,
                  "kron: operands must share a scalar type");
    return Eigen::kroneckerProduct(a, b);
}

// --------------------------- symplectic form ---------------------------------

inline Eigen::Matrix2d symplectic_j() {
    Eigen::Matrix2d j;
    j << 0.0, 1.0,
        -1.0, 0.0;
    return j;
}

// theta_osc(n) = I_n (x) J, the 2n x 2n oscillator commutation form
inline Eigen::MatrixXd theta_osc(int n) {
    if (n < 1) throw std::invalid_argument("theta_osc: oscillator count must be >= 1");
    return kron(Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd(symplectic_j()));
}

// --------------------------- axis recovery -----------------------------------

// Inverse of theta_minus on skew matrices: b = (1/2) F^T vec(S), using F^T F = 2 I.
// Rejects inputs whose symmetric part exceeds tol in max-abs.
inline Eigen::Vector3cd recover_axis(const Eigen::Matrix3cd& s, double tol = 1e-12) {
    const double asym = 0.5 * (s + s.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) throw std::invalid_argument("recover_axis: matrix is not skew-symmetric");
    return 0.5 * f_tensor().cast<Complex>().transpose() * vec(s);
}

inline Eigen::Vector3d recover_axis(const Eigen::Matrix3d& s, double tol = 1e-12) {
    const double asym = 0.5 * (s + s.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) throw std::invalid_argument("recover_axis: matrix is not skew-symmetric");
    return 0.5 * f_tensor().transpose() * vec(s);
}

} // namespace qsde::algebra
