// model.hpp — QSDE synthesis from SLH data, block structure validation, embeddings

#pragma once

#include "qsde/report.hpp"
#include "qsde/types.hpp"

namespace qsde::model {

// Quadrature output rows for a coupling row Gamma: C1 = Gamma + Gamma#,
// C2 = i(Gamma# - Gamma). Both rows are real.
Eigen::MatrixXd output_matrices(const Eigen::RowVectorXcd& gamma);

// Drops imaginary parts after checking they are below tol; throws otherwise.
Eigen::MatrixXd to_real_checked(const Eigen::MatrixXcd& m, double tol = 1e-12,
                                const char* what = "matrix");

// A = 2 Theta (R + Im(Gamma1^dag Gamma1)),
// B = i Theta ((Gamma1' - Gamma1^dag) | -i(Gamma1' + Gamma1^dag)),
// C = output_matrices(Gamma1)
LinearQSDE synthesize_linear(const LinearSLH& slh);

// A0 = -2i Tm(Gamma2') Gamma2^dag,
// A  = -2 Tm(alpha2') + Tm(Gamma2') Tm(Gamma2^dag) + Tm(Gamma2^dag) Tm(Gamma2'),
// B1 = i Tm(Gamma2^dag - Gamma2'),  B2 = -Tm(Gamma2' + Gamma2^dag),
// C  = output_matrices(Gamma2)          [Tm = theta_minus]
BilinearQSDE synthesize_bilinear(const BilinearSLH& slh);

// Diagonal blocks from the two syntheses above, A12 = -4 Theta Im(Gamma1' Gamma2#),
// additive noise only in the oscillator rows, C = (C_lin | C_bil)
CascadeQSDE synthesize_cascade(const CascadeSLH& slh);

// Sub-bundle views of a cascade: (A11, (Bbar11 Bbar21), C_lin) and
// (A02, A22, B122, B222, C_bil)
LinearQSDE linear_subsystem(const CascadeQSDE& q);
BilinearQSDE bilinear_subsystem(const CascadeQSDE& q);

// Embeddings into the mixed form (absent blocks zero)
CascadeSLH embed(const LinearSLH& slh);
CascadeSLH embed(const BilinearSLH& slh);
CascadeQSDE embed(const LinearQSDE& q);
CascadeQSDE embed(const BilinearQSDE& q);

// Max-abs residual of every block that must vanish in a realizable cascade:
// A01, A21, B_i11, B_i12, B_i21, Bbar_i2
realizability::StructureReport validate_structure(const CascadeQSDE& q, double tol = 1e-9);

} // namespace qsde::model
