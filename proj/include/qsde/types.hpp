// types.hpp — SLH parametrization records and QSDE matrix bundles

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qsde::model {

using Complex = std::complex<double>;

// --------------------------- SLH parametrizations ----------------------------

// Oscillator system: quadratic Hamiltonian x1' R x1 and linear coupling Gamma1 x1
struct LinearSLH {
    Eigen::MatrixXd R;           // 2n x 2n, real symmetric
    Eigen::RowVectorXcd Gamma1;  // 1 x 2n

    int n() const { return static_cast<int>(Gamma1.cols()) / 2; }
};

// Two-level system: linear Hamiltonian alpha2 x2 and linear coupling Gamma2 x2
struct BilinearSLH {
    Eigen::RowVector3d alpha2;
    Eigen::RowVector3cd Gamma2;
};

// Two-level system feeding an oscillator through a shared field channel
struct CascadeSLH {
    LinearSLH linear;
    BilinearSLH bilinear;
};

LinearSLH zero_linear_slh(int n);
BilinearSLH zero_bilinear_slh();
CascadeSLH zero_cascade_slh(int n);

void validate(const LinearSLH& slh);
void validate(const BilinearSLH& slh);
void validate(const CascadeSLH& slh);

// --------------------------- QSDE matrix bundles -----------------------------

// dx1 = A x1 dt + B dWbar,  dy1 = C x1 dt + dWbar
struct LinearQSDE {
    Eigen::MatrixXd A;  // 2n x 2n
    Eigen::MatrixXd B;  // 2n x 2
    Eigen::MatrixXd C;  // 2 x 2n

    int n() const { return static_cast<int>(A.rows()) / 2; }
};

// dx2 = A0 dt + A x2 dt + B1 x2 dWbar1 + B2 x2 dWbar2,  dy2 = C x2 dt + dWbar
struct BilinearQSDE {
    Eigen::Vector3d A0;
    Eigen::Matrix3d A;
    Eigen::Matrix3d B1;
    Eigen::Matrix3d B2;
    Eigen::Matrix<double, 2, 3> C;
};

// Mixed system on x = (x1; x2): oscillator block first (2n rows), two-level block last (3 rows).
// dx = A0 dt + A x dt + B1 x dWbar1 + B2 x dWbar2 + B dWbar,  dy = C x dt + dWbar
struct CascadeQSDE {
    int n = 0;
    Eigen::VectorXd A0;  // 2n+3
    Eigen::MatrixXd A;   // (2n+3) x (2n+3)
    Eigen::MatrixXd B1;  // (2n+3) x (2n+3)
    Eigen::MatrixXd B2;  // (2n+3) x (2n+3)
    Eigen::MatrixXd B;   // (2n+3) x 2
    Eigen::MatrixXd C;   // 2 x (2n+3)

    int dim() const { return 2 * n + 3; }

    const Eigen::MatrixXd& Bi(int i) const {
        if (i != 1 && i != 2) throw std::out_of_range("CascadeQSDE::Bi: index must be 1 or 2");
        return i == 1 ? B1 : B2;
    }

    // Block accessors, oscillator rows/cols first
    auto A01() const { return A0.head(2 * n); }
    auto A02() const { return A0.tail(3); }
    auto A11() const { return A.topLeftCorner(2 * n, 2 * n); }
    auto A12() const { return A.topRightCorner(2 * n, 3); }
    auto A21() const { return A.bottomLeftCorner(3, 2 * n); }
    auto A22() const { return A.bottomRightCorner(3, 3); }
    auto B11(int i) const { return Bi(i).topLeftCorner(2 * n, 2 * n); }
    auto B12(int i) const { return Bi(i).topRightCorner(2 * n, 3); }
    auto B21(int i) const { return Bi(i).bottomLeftCorner(3, 2 * n); }
    auto B22(int i) const { return Bi(i).bottomRightCorner(3, 3); }
    auto Bbar11() const { return B.col(0).head(2 * n); }
    auto Bbar21() const { return B.col(1).head(2 * n); }
    auto Bbar12() const { return B.col(0).tail(3); }
    auto Bbar22() const { return B.col(1).tail(3); }
    auto Clin() const { return C.leftCols(2 * n); }
    auto Cbil() const { return C.rightCols(3); }
};

LinearQSDE zero_linear_qsde(int n);
BilinearQSDE zero_bilinear_qsde();
CascadeQSDE zero_cascade_qsde(int n);

void validate(const LinearQSDE& q);
void validate(const BilinearQSDE& q);
void validate(const CascadeQSDE& q);

// Quadrature Ito table: dWbar dWbar' = [[1, i], [-i, 1]] dt
inline Eigen::Matrix2cd ito_table() {
    Eigen::Matrix2cd t;
    t << Complex(1.0, 0.0), Complex(0.0, 1.0),
         Complex(0.0, -1.0), Complex(1.0, 0.0);
    return t;
}

} // namespace qsde::model
