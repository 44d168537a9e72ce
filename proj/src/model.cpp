#include "qsde/model.hpp"

#include "qsde/algebra.hpp"

#include <sstream>

namespace qsde::model {

namespace {

using algebra::theta_minus;
using algebra::theta_osc;

constexpr Complex kI{0.0, 1.0};

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

} // namespace

// --------------------------- factories and validation ------------------------

LinearSLH zero_linear_slh(int n) {
    require(n >= 1, "zero_linear_slh: oscillator count must be >= 1");
    return {Eigen::MatrixXd::Zero(2 * n, 2 * n), Eigen::RowVectorXcd::Zero(2 * n)};
}

BilinearSLH zero_bilinear_slh() {
    return {Eigen::RowVector3d::Zero(), Eigen::RowVector3cd::Zero()};
}

CascadeSLH zero_cascade_slh(int n) {
    return {zero_linear_slh(n), zero_bilinear_slh()};
}

void validate(const LinearSLH& slh) {
    const auto d = slh.Gamma1.cols();
    require(d >= 2 && d % 2 == 0, "LinearSLH: Gamma1 must have even length >= 2");
    require(slh.R.rows() == d && slh.R.cols() == d, "LinearSLH: R must be 2n x 2n");
    if ((slh.R - slh.R.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("LinearSLH: R must be symmetric");
}

void validate(const BilinearSLH& slh) {
    require(slh.alpha2.allFinite() && slh.Gamma2.allFinite(), "BilinearSLH: entries must be finite");
}

void validate(const CascadeSLH& slh) {
    validate(slh.linear);
    validate(slh.bilinear);
}

LinearQSDE zero_linear_qsde(int n) {
    require(n >= 1, "zero_linear_qsde: oscillator count must be >= 1");
    return {Eigen::MatrixXd::Zero(2 * n, 2 * n), Eigen::MatrixXd::Zero(2 * n, 2),
            Eigen::MatrixXd::Zero(2, 2 * n)};
}

BilinearQSDE zero_bilinear_qsde() {
    return {Eigen::Vector3d::Zero(), Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero(),
            Eigen::Matrix3d::Zero(), Eigen::Matrix<double, 2, 3>::Zero()};
}

CascadeQSDE zero_cascade_qsde(int n) {
    require(n >= 1, "zero_cascade_qsde: oscillator count must be >= 1");
    const int d = 2 * n + 3;
    CascadeQSDE q;
    q.n = n;
    q.A0 = Eigen::VectorXd::Zero(d);
    q.A = Eigen::MatrixXd::Zero(d, d);
    q.B1 = Eigen::MatrixXd::Zero(d, d);
    q.B2 = Eigen::MatrixXd::Zero(d, d);
    q.B = Eigen::MatrixXd::Zero(d, 2);
    q.C = Eigen::MatrixXd::Zero(2, d);
    return q;
}

void validate(const LinearQSDE& q) {
    const auto d = q.A.rows();
    require(d >= 2 && d % 2 == 0 && q.A.cols() == d, "LinearQSDE: A must be 2n x 2n");
    require(q.B.rows() == d && q.B.cols() == 2, "LinearQSDE: B must be 2n x 2");
    require(q.C.rows() == 2 && q.C.cols() == d, "LinearQSDE: C must be 2 x 2n");
}

void validate(const BilinearQSDE& q) {
    require(q.A0.allFinite() && q.A.allFinite() && q.B1.allFinite() && q.B2.allFinite() &&
                q.C.allFinite(),
            "BilinearQSDE: entries must be finite");
}

void validate(const CascadeQSDE& q) {
    require(q.n >= 1, "CascadeQSDE: oscillator count must be >= 1");
    const auto d = q.dim();
    require(q.A0.size() == d, "CascadeQSDE: A0 must have 2n+3 entries");
    require(q.A.rows() == d && q.A.cols() == d, "CascadeQSDE: A must be (2n+3) x (2n+3)");
    require(q.B1.rows() == d && q.B1.cols() == d, "CascadeQSDE: B1 must be (2n+3) x (2n+3)");
    require(q.B2.rows() == d && q.B2.cols() == d, "CascadeQSDE: B2 must be (2n+3) x (2n+3)");
    require(q.B.rows() == d && q.B.cols() == 2, "CascadeQSDE: B must be (2n+3) x 2");
    require(q.C.rows() == 2 && q.C.cols() == d, "CascadeQSDE: C must be 2 x (2n+3)");
}

// --------------------------- synthesis ---------------------------------------

Eigen::MatrixXd to_real_checked(const Eigen::MatrixXcd& m, double tol, const char* what) {
    const double residue = m.imag().cwiseAbs().maxCoeff();
    if (residue > tol) {
        std::ostringstream msg;
        msg << what << ": imaginary residue " << residue << " exceeds " << tol;
        throw std::runtime_error(msg.str());
    }
    return m.real();
}

Eigen::MatrixXd output_matrices(const Eigen::RowVectorXcd& gamma) {
    Eigen::MatrixXcd c(2, gamma.cols());
    c.row(0) = gamma + gamma.conjugate();
    c.row(1) = kI * (gamma.conjugate() - gamma);
    return to_real_checked(c, 1e-12, "output_matrices");
}

LinearQSDE synthesize_linear(const LinearSLH& slh) {
    validate(slh);
    const int n = slh.n();
    const Eigen::MatrixXd theta = theta_osc(n);
    const Eigen::MatrixXcd thetac = theta.cast<Complex>();
    const Eigen::VectorXcd gt = slh.Gamma1.transpose();
    const Eigen::VectorXcd gd = slh.Gamma1.adjoint();

    // coupling.imag() is the entrywise imaginary part (z - z*)/2i
    const Eigen::MatrixXcd coupling = gd * slh.Gamma1;  // Gamma1^dag Gamma1, 2n x 2n

    LinearQSDE q;
    q.A = 2.0 * theta * (slh.R + coupling.imag());

    Eigen::MatrixXcd b(2 * n, 2);
    b.col(0) = kI * (thetac * (gt - gd));
    b.col(1) = kI * (thetac * (-kI * (gt + gd)));
    q.B = to_real_checked(b, 1e-12, "synthesize_linear: B");
    q.C = output_matrices(slh.Gamma1);
    return q;
}

BilinearQSDE synthesize_bilinear(const BilinearSLH& slh) {
    validate(slh);
    const Eigen::Vector3cd gt = slh.Gamma2.transpose();
    const Eigen::Vector3cd gd = slh.Gamma2.adjoint();
    const Eigen::Matrix3cd tm_t = theta_minus(gt);
    const Eigen::Matrix3cd tm_d = theta_minus(gd);

    const Eigen::Vector3cd a0 = -2.0 * kI * (tm_t * gd);
    const Eigen::Vector3cd alpha = slh.alpha2.transpose().cast<Complex>();
    const Eigen::Matrix3cd a = -2.0 * theta_minus(alpha) + tm_t * tm_d + tm_d * tm_t;
    const Eigen::Matrix3cd b1 = kI * theta_minus(Eigen::Vector3cd(gd - gt));
    const Eigen::Matrix3cd b2 = -theta_minus(Eigen::Vector3cd(gt + gd));

    BilinearQSDE q;
    q.A0 = to_real_checked(a0, 1e-12, "synthesize_bilinear: A0");
    q.A = to_real_checked(a, 1e-12, "synthesize_bilinear: A");
    q.B1 = to_real_checked(b1, 1e-12, "synthesize_bilinear: B1");
    q.B2 = to_real_checked(b2, 1e-12, "synthesize_bilinear: B2");
    q.C = output_matrices(slh.Gamma2);
    return q;
}

CascadeQSDE synthesize_cascade(const CascadeSLH& slh) {
    validate(slh);
    const int n = slh.linear.n();
    const LinearQSDE lin = synthesize_linear(slh.linear);
    const BilinearQSDE bil = synthesize_bilinear(slh.bilinear);

    const Eigen::MatrixXd theta = theta_osc(n);
    const Eigen::MatrixXcd cross =
        slh.linear.Gamma1.transpose() * slh.bilinear.Gamma2.conjugate();  // 2n x 3

    CascadeQSDE q = zero_cascade_qsde(n);
    q.A.topLeftCorner(2 * n, 2 * n) = lin.A;
    q.A.topRightCorner(2 * n, 3) = -4.0 * theta * cross.imag();
    q.A.bottomRightCorner(3, 3) = bil.A;
    q.A0.tail(3) = bil.A0;
    q.B1.bottomRightCorner(3, 3) = bil.B1;
    q.B2.bottomRightCorner(3, 3) = bil.B2;
    q.B.topRows(2 * n) = lin.B;
    q.C.leftCols(2 * n) = lin.C;
    q.C.rightCols(3) = bil.C;
    return q;
}

// --------------------------- sub-bundles and embeddings -----------------------

LinearQSDE linear_subsystem(const CascadeQSDE& q) {
    validate(q);
    LinearQSDE sub;
    sub.A = q.A11();
    sub.B.resize(2 * q.n, 2);
    sub.B.col(0) = q.Bbar11();
    sub.B.col(1) = q.Bbar21();
    sub.C = q.Clin();
    return sub;
}

BilinearQSDE bilinear_subsystem(const CascadeQSDE& q) {
    validate(q);
    BilinearQSDE sub;
    sub.A0 = q.A02();
    sub.A = q.A22();
    sub.B1 = q.B22(1);
    sub.B2 = q.B22(2);
    sub.C = q.Cbil();
    return sub;
}

CascadeSLH embed(const LinearSLH& slh) {
    validate(slh);
    return {slh, zero_bilinear_slh()};
}

CascadeSLH embed(const BilinearSLH& slh) {
    validate(slh);
    return {zero_linear_slh(1), slh};
}

CascadeQSDE embed(const LinearQSDE& q) {
    validate(q);
    CascadeQSDE full = zero_cascade_qsde(q.n());
    full.A.topLeftCorner(2 * q.n(), 2 * q.n()) = q.A;
    full.B.topRows(2 * q.n()) = q.B;
    full.C.leftCols(2 * q.n()) = q.C;
    return full;
}

CascadeQSDE embed(const BilinearQSDE& q) {
    validate(q);
    CascadeQSDE full = zero_cascade_qsde(1);
    full.A0.tail(3) = q.A0;
    full.A.bottomRightCorner(3, 3) = q.A;
    full.B1.bottomRightCorner(3, 3) = q.B1;
    full.B2.bottomRightCorner(3, 3) = q.B2;
    full.C.rightCols(3) = q.C;
    return full;
}

// --------------------------- structure check ---------------------------------

realizability::StructureReport validate_structure(const CascadeQSDE& q, double tol) {
    validate(q);
    realizability::StructureReport report;
    report.tolerance = tol;

    auto max_abs = [](const auto& block) -> double {
        return block.size() == 0 ? 0.0 : block.cwiseAbs().maxCoeff();
    };

    report.add("structure.A01", "Thm6.i(A0)", max_abs(q.A01()));
    report.add("structure.A21", "Thm6.i(A)", max_abs(q.A21()));
    for (int i = 1; i <= 2; ++i) {
        const std::string bi = "B" + std::to_string(i);
        report.add("structure." + bi + "11", "Thm6.i(" + bi + ")", max_abs(q.B11(i)));
        report.add("structure." + bi + "12", "Thm6.i(" + bi + ")", max_abs(q.B12(i)));
        report.add("structure." + bi + "21", "Thm6.i(" + bi + ")", max_abs(q.B21(i)));
    }
    report.add("structure.Bbar12", "Thm6.i(B)", max_abs(q.Bbar12()));
    report.add("structure.Bbar22", "Thm6.i(B)", max_abs(q.Bbar22()));
    return report;
}

} // namespace qsde::model
