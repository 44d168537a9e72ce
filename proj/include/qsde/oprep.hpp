// oprep.hpp — finite-dimensional operator representations on (truncated Fock) (x) C^2
//
// Brute-force verification layer: the QSDE matrix models produced by `model`
// are re-derived here from explicit operator algebra (ladder matrices, Pauli
// matrices, Lindblad generator) and compared entry by entry. Oscillator
// identities are evaluated under a projector onto the Fock levels 0..N-3,
// where ladder products of the degrees that occur here are exact.

#pragma once

#include "qsde/model.hpp"
#include "qsde/report.hpp"

#include <array>
#include <vector>

namespace qsde::oprep {

using Complex = std::complex<double>;
using OpMat = Eigen::MatrixXcd;
using realizability::RealizabilityReport;

// --------------------------- representations ---------------------------------

struct FockRep {
    int levels = 0;  // retained Fock levels N
    OpMat a;         // N x N annihilation matrix, <k-1|a|k> = sqrt(k)
};

// a on N levels; requires N >= 4 so the projected subspace is nonempty
FockRep annihilation_op(int levels);

struct CompositeRep {
    int levels = 0;  // Fock truncation N
    int dim = 0;     // 2N
    std::array<OpMat, 2> x1;  // (a + a^dag) (x) I2, -i(a - a^dag) (x) I2
    std::array<OpMat, 3> x2;  // I_N (x) sigma_1..3
    OpMat projector;          // Fock levels 0..N-3, tensored with C^2
    OpMat identity;
};

CompositeRep composite_rep(int levels);

// Pauli matrices sigma_0..sigma_3
const std::array<Eigen::Matrix2cd, 4>& pauli();

// Frobenius norm of P m P
double projected_norm(const CompositeRep& rep, const OpMat& m);

// --------------------------- operator-valued matrices ------------------------

// Small dense matrix whose entries are operators (dim x dim complex matrices).
// Transposition swaps entry positions without transposing the entries.
class OperatorMatrix {
  public:
    OperatorMatrix(int rows, int cols, int dim);

    static OperatorMatrix from_scalar(const Eigen::MatrixXd& numeric, int dim);
    static OperatorMatrix column(const std::vector<OpMat>& entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int dim() const { return dim_; }
    OpMat& at(int r, int c);
    const OpMat& at(int r, int c) const;

    OperatorMatrix transpose() const;
    OperatorMatrix scaled(const Complex& s) const;
    OperatorMatrix operator+(const OperatorMatrix& other) const;
    OperatorMatrix operator-(const OperatorMatrix& other) const;
    OperatorMatrix operator*(const OperatorMatrix& other) const;

    // sqrt(sum over entries of ||P e P||_F^2)
    double projected_norm(const CompositeRep& rep) const;

  private:
    int rows_, cols_, dim_;
    std::vector<OpMat> entries_;  // row-major
};

OperatorMatrix premul(const Eigen::MatrixXd& numeric, const OperatorMatrix& m);
OperatorMatrix postmul(const OperatorMatrix& m, const Eigen::MatrixXd& numeric);

// Hat map applied to a 3-entry operator column
OperatorMatrix theta_minus_op(const OperatorMatrix& v);

// --------------------------- SLH operators and generators --------------------

struct SLHOperators {
    OpMat L;  // coupling
    OpMat H;  // Hamiltonian, self-adjoint
};

// L = Gamma1 x1 + Gamma2 x2,
// H = x1' R x1 + alpha2 x2 + (1/2i)(L1^dag L2 - L2^dag L1)
// (two-level subsystem upstream of the oscillator). Requires n = 1.
SLHOperators build_slh_operators(const CompositeRep& rep, const model::CascadeSLH& slh);
SLHOperators build_slh_operators(const CompositeRep& rep, const model::LinearSLH& slh);
SLHOperators build_slh_operators(const CompositeRep& rep, const model::BilinearSLH& slh);

// -i[X,H] + (L^dag [X,L] + [L^dag,X] L)/2
OpMat lindblad(const SLHOperators& ops, const OpMat& x);

struct OperatorCoefficients {
    OpMat drift;        // Lindblad generator applied to X
    OpMat dW_coeff;     // [L^dag, X]
    OpMat dWdag_coeff;  // [X, L]
};

OperatorCoefficients heisenberg_coefficients(const SLHOperators& ops, const OpMat& x);

// --------------------------- oracle checks -----------------------------------

// The twelve drift/noise coefficient identities for x1, x2 and their cascade
RealizabilityReport verify_lemma2(const model::CascadeSLH& slh, int levels, double tol);

// The eight commutation-preservation integrands of the mixed system,
// operator-valued where the two-level variables appear
RealizabilityReport verify_preservation_integrands(const model::CascadeQSDE& q, int levels,
                                                   double tol);

// End-to-end drift / noise / output match between the matrix bundle q and the
// operator dynamics generated by slh, in quadrature coordinates
RealizabilityReport oracle_drift_match(const model::CascadeQSDE& q, const model::CascadeSLH& slh,
                                       int levels, double tol);
RealizabilityReport oracle_drift_match(const model::LinearQSDE& q, const model::LinearSLH& slh,
                                       int levels, double tol);
RealizabilityReport oracle_drift_match(const model::BilinearQSDE& q, const model::BilinearSLH& slh,
                                       int levels, double tol);

} // namespace qsde::oprep
