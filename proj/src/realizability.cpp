#include "qsde/realizability.hpp"

#include "qsde/algebra.hpp"

namespace qsde::realizability {

namespace {

using algebra::f_tensor;
using algebra::kron;
using algebra::symplectic_j;
using algebra::theta_minus;
using algebra::theta_osc;
using model::BilinearQSDE;
using model::CascadeQSDE;
using model::Complex;
using model::LinearQSDE;

constexpr Complex kI{0.0, 1.0};

// Thm3 coupling consistency: (I3 (x) A12) F + (B122' (x) Bbar21) - (B222' (x) Bbar11)
double coupling_consistency_residual(const CascadeQSDE& q) {
    const Eigen::MatrixXd a12 = q.A12();
    const Eigen::MatrixXd b122t = q.B22(1).transpose();
    const Eigen::MatrixXd b222t = q.B22(2).transpose();
    const Eigen::MatrixXd bbar11 = q.Bbar11();
    const Eigen::MatrixXd bbar21 = q.Bbar21();
    const Eigen::MatrixXd lhs =
        kron(Eigen::MatrixXd::Identity(3, 3), a12) * f_tensor() + kron(b122t, bbar21) -
        kron(b222t, bbar11);
    return lhs.norm();
}

// Composition consistency of Thm6.iii: A12 = Bbar11 C21 + Bbar21 C22
double composition_residual(const CascadeQSDE& q, const Eigen::Matrix<double, 2, 3>& c2) {
    const Eigen::MatrixXd expected =
        Eigen::MatrixXd(q.Bbar11()) * c2.row(0) + Eigen::MatrixXd(q.Bbar21()) * c2.row(1);
    return (Eigen::MatrixXd(q.A12()) - expected).norm();
}

Eigen::Matrix<double, 2, 3> reconstruct_two_level_output(const CascadeQSDE& q) {
    // Invert Thm5.ii/iii on the skew parts of the noise blocks
    const Eigen::Matrix3d b1 = q.B22(1);
    const Eigen::Matrix3d b2 = q.B22(2);
    const Eigen::Vector3d c22 = algebra::recover_axis(Eigen::Matrix3d(0.5 * (b1 - b1.transpose())));
    const Eigen::Vector3d c21 =
        -algebra::recover_axis(Eigen::Matrix3d(0.5 * (b2 - b2.transpose())));
    Eigen::Matrix<double, 2, 3> c2;
    c2.row(0) = c21.transpose();
    c2.row(1) = c22.transpose();
    return c2;
}

} // namespace

const char* output_shape_name(OutputShape shape) {
    return shape == OutputShape::series_product ? "series-product" : "paper";
}

OutputShape output_shape_from_name(const std::string& name) {
    if (name == "series-product") return OutputShape::series_product;
    if (name == "paper") return OutputShape::oscillator_only;
    throw std::invalid_argument("unknown output shape: " + name);
}

// --------------------------- commutation preservation ------------------------

double ccr_linear_residual(const LinearQSDE& q) {
    const Eigen::MatrixXd theta = theta_osc(q.n());
    const Eigen::Matrix2d j = symplectic_j();
    return (q.A * theta + theta * q.A.transpose() + q.B * j * q.B.transpose()).norm();
}

RealizabilityReport check_ccr_linear(const LinearQSDE& q, double tol) {
    model::validate(q);
    RealizabilityReport report;
    report.tolerance = tol;
    report.add("linear.ccr", "Thm1", ccr_linear_residual(q));
    return report;
}

RealizabilityReport check_ccr_bilinear(const BilinearQSDE& q, double tol) {
    model::validate(q);
    RealizabilityReport report;
    report.tolerance = tol;

    const double skew1 = (q.B1 + q.B1.transpose()).norm();
    const double skew2 = (q.B2 + q.B2.transpose()).norm();
    report.add("bilinear.noise-skew", "Thm2.i", std::hypot(skew1, skew2));
    report.add("bilinear.drift-noise", "Thm2.ii",
               (q.B1 * q.B2.transpose() - q.B2 * q.B1.transpose() -
                theta_minus(Eigen::Vector3d(q.A0)))
                   .norm());
    report.add("bilinear.damping", "Thm2.iii",
               (q.A + q.A.transpose() + q.B1 * q.B1.transpose() + q.B2 * q.B2.transpose()).norm());
    return report;
}

RealizabilityReport check_ccr_mixed(const CascadeQSDE& q, double tol) {
    model::validate(q);
    RealizabilityReport report = model::validate_structure(q, tol);
    report.append(check_ccr_linear(model::linear_subsystem(q), tol));
    report.append(check_ccr_bilinear(model::bilinear_subsystem(q), tol));
    report.add("cascade.coupling-ccr", "Thm3", coupling_consistency_residual(q));
    return report;
}

// --------------------------- physical realizability --------------------------

Eigen::MatrixXd recover_hamiltonian(const LinearQSDE& q) {
    const Eigen::MatrixXd theta = theta_osc(q.n());
    return 0.25 * (-theta * q.A + q.A.transpose() * theta);
}

Eigen::RowVectorXcd recover_coupling(const Eigen::MatrixXd& c) {
    return 0.5 * (c.row(0).cast<Complex>() + kI * c.row(1).cast<Complex>());
}

Eigen::RowVector3d recover_hamiltonian(const BilinearQSDE& q) {
    // alpha2 = vec(A' - A)' F / 8; the antisymmetric drift part is -2 Tm(alpha2')
    const Eigen::Matrix3d asym = q.A.transpose() - q.A;
    return algebra::vec(asym).transpose() * f_tensor() / 8.0;
}

RealizabilityReport check_pr_linear(const LinearQSDE& q, double tol) {
    model::validate(q);
    RealizabilityReport report;
    report.tolerance = tol;

    const Eigen::MatrixXd theta = theta_osc(q.n());
    report.add("linear.ccr", "Thm1", ccr_linear_residual(q));
    report.add("linear.gain", "Thm4.ii",
               (q.B - theta * q.C.transpose() * symplectic_j()).norm());

    model::LinearSLH recovered;
    recovered.R = recover_hamiltonian(q);
    recovered.Gamma1 = recover_coupling(q.C);
    report.recovered_linear = std::move(recovered);
    report.certified = report.pass();
    return report;
}

RealizabilityReport check_pr_bilinear(const BilinearQSDE& q, double tol) {
    model::validate(q);
    RealizabilityReport report;
    report.tolerance = tol;

    const Eigen::RowVectorXcd coupling_row =
        q.C.row(0).cast<Complex>() + kI * q.C.row(1).cast<Complex>();
    const Eigen::Vector3cd offset =
        0.5 * (q.B1.cast<Complex>() + kI * q.B2.cast<Complex>()) * coupling_row.adjoint();
    report.add("bilinear.offset", "Thm5.i", (q.A0.cast<Complex>() - offset).norm());
    report.add("bilinear.noise1-output", "Thm5.ii",
               (q.B1 - theta_minus(Eigen::Vector3d(q.C.row(1).transpose()))).norm());
    report.add("bilinear.noise2-output", "Thm5.iii",
               (q.B2 + theta_minus(Eigen::Vector3d(q.C.row(0).transpose()))).norm());
    report.add("bilinear.damping", "Thm5.iv",
               (q.A + q.A.transpose() + q.B1 * q.B1.transpose() + q.B2 * q.B2.transpose()).norm());

    model::BilinearSLH recovered;
    recovered.alpha2 = recover_hamiltonian(q);
    recovered.Gamma2 = recover_coupling(q.C);
    report.recovered_bilinear = std::move(recovered);
    report.certified = report.pass();
    return report;
}

RealizabilityReport check_pr_cascade(const CascadeQSDE& q, double tol, OutputShape shape) {
    model::validate(q);
    RealizabilityReport report = model::validate_structure(q, tol);
    report.output_shape = output_shape_name(shape);

    Eigen::Matrix<double, 2, 3> c2;
    if (shape == OutputShape::oscillator_only) {
        report.add("structure.Cbil", "Thm6.i(C)",
                   Eigen::MatrixXd(q.Cbil()).cwiseAbs().maxCoeff());
        c2 = reconstruct_two_level_output(q);
    } else {
        c2 = q.Cbil();
    }

    const RealizabilityReport linear_part = check_pr_linear(model::linear_subsystem(q), tol);
    report.append(linear_part);

    BilinearQSDE bil = model::bilinear_subsystem(q);
    bil.C = c2;
    const RealizabilityReport bilinear_part = check_pr_bilinear(bil, tol);
    report.append(bilinear_part);

    report.add("cascade.composition", "Thm6.iii", composition_residual(q, c2));
    report.add("cascade.coupling-ccr", "Thm3", coupling_consistency_residual(q));

    report.recovered_linear = linear_part.recovered_linear;
    report.recovered_bilinear = bilinear_part.recovered_bilinear;
    report.certified = report.pass();
    return report;
}

bool corollary_crosscheck(const CascadeQSDE& q, double tol) {
    if (!check_pr_cascade(q, tol).pass()) return true;
    return check_ccr_mixed(q, tol).pass();
}

} // namespace qsde::realizability
