// realizability.hpp — commutation-preservation and physical-realizability checks
//
// Condition labels follow the usual numbering of the linear / bilinear /
// cascade realizability theorems; see README for the formula behind each label.

#pragma once

#include "qsde/model.hpp"
#include "qsde/report.hpp"

namespace qsde::realizability {

// Which output-matrix convention a cascade file is validated against.
// series_product: C = (C_lin | C_bil), both subsystems read by the output.
// oscillator_only: the two-level columns of C must vanish; the two-level
// output rows are reconstructed from the noise blocks instead.
enum class OutputShape { series_product, oscillator_only };

const char* output_shape_name(OutputShape shape);
OutputShape output_shape_from_name(const std::string& name);

// ||A Theta + Theta A' + B J B'||_F, the oscillator commutation-preservation residual
double ccr_linear_residual(const model::LinearQSDE& q);

// Thm1
RealizabilityReport check_ccr_linear(const model::LinearQSDE& q, double tol);

// Thm2.i (noise skewness), Thm2.ii (drift/noise pairing), Thm2.iii (damping balance)
RealizabilityReport check_ccr_bilinear(const model::BilinearQSDE& q, double tol);

// Block structure + Thm1 on the oscillator sub-bundle + Thm2 on the two-level
// sub-bundle + the Thm3 coupling consistency condition
RealizabilityReport check_ccr_mixed(const model::CascadeQSDE& q, double tol);

// Thm1 and Thm4.ii; recovers (R, Gamma1) on the side
RealizabilityReport check_pr_linear(const model::LinearQSDE& q, double tol);

// Thm5.i-iv; recovers (alpha2, Gamma2) on the side
RealizabilityReport check_pr_bilinear(const model::BilinearQSDE& q, double tol);

// Thm6: structure, sub-system realizability, and the composition consistency
// A12 = Bbar11 C21 + Bbar21 C22; also reports the Thm3 consistency residual
RealizabilityReport check_pr_cascade(const model::CascadeQSDE& q, double tol,
                                     OutputShape shape = OutputShape::series_product);

// Realizability implies commutation preservation: true unless q passes
// check_pr_cascade while failing check_ccr_mixed
bool corollary_crosscheck(const model::CascadeQSDE& q, double tol);

// Parameter recovery used by the checks above
Eigen::MatrixXd recover_hamiltonian(const model::LinearQSDE& q);    // R = (-Theta A + A' Theta)/4
Eigen::RowVectorXcd recover_coupling(const Eigen::MatrixXd& c);     // Gamma = (C1 + i C2)/2
Eigen::RowVector3d recover_hamiltonian(const model::BilinearQSDE& q);  // alpha2 from A - A'

} // namespace qsde::realizability
