#include "qsde/oprep.hpp"

#include "qsde/algebra.hpp"

#include <cmath>
#include <string>

namespace qsde::oprep {

namespace {

using algebra::kron;
using algebra::theta_minus;
using algebra::theta_osc;

constexpr Complex kI{0.0, 1.0};

OpMat comm(const OpMat& a, const OpMat& b) { return a * b - b * a; }

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void require_single_mode(const model::CascadeSLH& slh) {
    require(slh.linear.n() == 1,
            "oprep: operator representation holds a single oscillator mode (n = 1)");
}

} // namespace

// --------------------------- representations ---------------------------------

FockRep annihilation_op(int levels) {
    require(levels >= 4, "annihilation_op: need at least 4 Fock levels");
    OpMat a = OpMat::Zero(levels, levels);
    for (int k = 1; k < levels; ++k)
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return {levels, a};
}

const std::array<Eigen::Matrix2cd, 4>& pauli() {
    static const std::array<Eigen::Matrix2cd, 4> s = [] {
        std::array<Eigen::Matrix2cd, 4> m;
        m[0] << 1, 0, 0, 1;
        m[1] << 0, 1, 1, 0;
        m[2] << 0, -kI, kI, 0;
        m[3] << 1, 0, 0, -1;
        return m;
    }();
    return s;
}

CompositeRep composite_rep(int levels) {
    const FockRep fock = annihilation_op(levels);
    const OpMat a = fock.a;
    const OpMat adag = fock.a.adjoint();
    const OpMat i2 = OpMat::Identity(2, 2);

    CompositeRep rep;
    rep.levels = levels;
    rep.dim = 2 * levels;
    rep.x1[0] = kron(OpMat(a + adag), i2);
    rep.x1[1] = kron(OpMat(-kI * (a - adag)), i2);
    for (int i = 0; i < 3; ++i)
        rep.x2[i] = kron(OpMat::Identity(levels, levels), OpMat(pauli()[i + 1]));

    OpMat pn = OpMat::Zero(levels, levels);
    for (int k = 0; k + 2 < levels; ++k) pn(k, k) = 1.0;
    rep.projector = kron(pn, i2);
    rep.identity = OpMat::Identity(rep.dim, rep.dim);
    return rep;
}

double projected_norm(const CompositeRep& rep, const OpMat& m) {
    return (rep.projector * m * rep.projector).norm();
}

// --------------------------- operator-valued matrices ------------------------

OperatorMatrix::OperatorMatrix(int rows, int cols, int dim)
    : rows_(rows), cols_(cols), dim_(dim),
      entries_(static_cast<std::size_t>(rows) * cols, OpMat::Zero(dim, dim)) {}

OperatorMatrix OperatorMatrix::from_scalar(const Eigen::MatrixXd& numeric, int dim) {
    OperatorMatrix m(static_cast<int>(numeric.rows()), static_cast<int>(numeric.cols()), dim);
    for (int r = 0; r < m.rows_; ++r)
        for (int c = 0; c < m.cols_; ++c)
            m.at(r, c) = numeric(r, c) * OpMat::Identity(dim, dim);
    return m;
}

OperatorMatrix OperatorMatrix::column(const std::vector<OpMat>& entries) {
    if (entries.empty()) throw std::invalid_argument("OperatorMatrix::column: empty");
    OperatorMatrix m(static_cast<int>(entries.size()), 1, static_cast<int>(entries[0].rows()));
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(static_cast<int>(i), 0) = entries[i];
    return m;
}

OpMat& OperatorMatrix::at(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }

const OpMat& OperatorMatrix::at(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

OperatorMatrix OperatorMatrix::transpose() const {
    OperatorMatrix t(cols_, rows_, dim_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

OperatorMatrix OperatorMatrix::scaled(const Complex& s) const {
    OperatorMatrix m(rows_, cols_, dim_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(r, c) = s * at(r, c);
    return m;
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
    OperatorMatrix s(rows_, cols_, dim_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) s.at(r, c) = at(r, c) + other.at(r, c);
    return s;
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& other) const {
    OperatorMatrix s(rows_, cols_, dim_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) s.at(r, c) = at(r, c) - other.at(r, c);
    return s;
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& other) const {
    OperatorMatrix p(rows_, other.cols_, dim_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < other.cols_; ++c) {
            OpMat sum = OpMat::Zero(dim_, dim_);
            for (int k = 0; k < cols_; ++k) sum += at(r, k) * other.at(k, c);
            p.at(r, c) = sum;
        }
    return p;
}

double OperatorMatrix::projected_norm(const CompositeRep& rep) const {
    double sq = 0.0;
    for (const auto& e : entries_) {
        const double n = oprep::projected_norm(rep, e);
        sq += n * n;
    }
    return std::sqrt(sq);
}

OperatorMatrix premul(const Eigen::MatrixXd& numeric, const OperatorMatrix& m) {
    OperatorMatrix p(static_cast<int>(numeric.rows()), m.cols(), m.dim());
    for (int r = 0; r < p.rows(); ++r)
        for (int c = 0; c < p.cols(); ++c) {
            OpMat sum = OpMat::Zero(m.dim(), m.dim());
            for (int k = 0; k < m.rows(); ++k) sum += numeric(r, k) * m.at(k, c);
            p.at(r, c) = sum;
        }
    return p;
}

OperatorMatrix postmul(const OperatorMatrix& m, const Eigen::MatrixXd& numeric) {
    OperatorMatrix p(m.rows(), static_cast<int>(numeric.cols()), m.dim());
    for (int r = 0; r < p.rows(); ++r)
        for (int c = 0; c < p.cols(); ++c) {
            OpMat sum = OpMat::Zero(m.dim(), m.dim());
            for (int k = 0; k < m.cols(); ++k) sum += m.at(r, k) * numeric(k, c);
            p.at(r, c) = sum;
        }
    return p;
}

OperatorMatrix theta_minus_op(const OperatorMatrix& v) {
    if (v.rows() != 3 || v.cols() != 1)
        throw std::invalid_argument("theta_minus_op: expects a 3 x 1 operator column");
    OperatorMatrix m(3, 3, v.dim());
    m.at(0, 1) = v.at(2, 0);
    m.at(0, 2) = -v.at(1, 0);
    m.at(1, 0) = -v.at(2, 0);
    m.at(1, 2) = v.at(0, 0);
    m.at(2, 0) = v.at(1, 0);
    m.at(2, 1) = -v.at(0, 0);
    return m;
}

// --------------------------- SLH operators -----------------------------------

namespace {

struct Parts {
    OpMat L1, H1, L2, H2;
};

Parts build_parts(const CompositeRep& rep, const model::CascadeSLH& slh) {
    Parts p;
    p.L1 = OpMat::Zero(rep.dim, rep.dim);
    for (int i = 0; i < 2; ++i) p.L1 += slh.linear.Gamma1(i) * rep.x1[i];
    p.H1 = OpMat::Zero(rep.dim, rep.dim);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p.H1 += slh.linear.R(i, j) * (rep.x1[i] * rep.x1[j]);
    p.L2 = OpMat::Zero(rep.dim, rep.dim);
    for (int i = 0; i < 3; ++i) p.L2 += slh.bilinear.Gamma2(i) * rep.x2[i];
    p.H2 = OpMat::Zero(rep.dim, rep.dim);
    for (int i = 0; i < 3; ++i) p.H2 += slh.bilinear.alpha2(i) * rep.x2[i];
    return p;
}

} // namespace

SLHOperators build_slh_operators(const CompositeRep& rep, const model::CascadeSLH& slh) {
    model::validate(slh);
    require_single_mode(slh);
    const Parts p = build_parts(rep, slh);

    SLHOperators ops;
    ops.L = p.L1 + p.L2;
    // Series-product Hamiltonian with the two-level system upstream
    const OpMat cross = -0.5 * kI * (p.L1.adjoint() * p.L2 - p.L2.adjoint() * p.L1);
    ops.H = p.H1 + p.H2 + cross;

    const double sa = (ops.H - ops.H.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, ops.H.cwiseAbs().maxCoeff());
    if (sa > 1e-12 * scale)
        throw std::runtime_error("build_slh_operators: Hamiltonian failed self-adjointness");
    return ops;
}

SLHOperators build_slh_operators(const CompositeRep& rep, const model::LinearSLH& slh) {
    return build_slh_operators(rep, model::embed(slh));
}

SLHOperators build_slh_operators(const CompositeRep& rep, const model::BilinearSLH& slh) {
    return build_slh_operators(rep, model::embed(slh));
}

OpMat lindblad(const SLHOperators& ops, const OpMat& x) {
    return -kI * comm(x, ops.H) +
           0.5 * (ops.L.adjoint() * comm(x, ops.L) + comm(ops.L.adjoint(), x) * ops.L);
}

OperatorCoefficients heisenberg_coefficients(const SLHOperators& ops, const OpMat& x) {
    OperatorCoefficients c;
    c.drift = lindblad(ops, x);
    c.dWdag_coeff = comm(x, ops.L);
    c.dW_coeff = comm(ops.L.adjoint(), x);
    return c;
}

// --------------------------- Lemma-2 style identities ------------------------

RealizabilityReport verify_lemma2(const model::CascadeSLH& slh, int levels, double tol) {
    model::validate(slh);
    require_single_mode(slh);
    const CompositeRep rep = composite_rep(levels);
    const Parts p = build_parts(rep, slh);

    const Eigen::MatrixXcd thetac = theta_osc(1).cast<Complex>();
    const Eigen::Vector2cd g1t = slh.linear.Gamma1.transpose();
    const Eigen::Vector2cd g1d = slh.linear.Gamma1.adjoint();
    const Eigen::Vector3cd g2t = slh.bilinear.Gamma2.transpose();
    const Eigen::Vector3cd g2d = slh.bilinear.Gamma2.adjoint();
    const Eigen::Vector3cd alpha = slh.bilinear.alpha2.transpose().cast<Complex>();

    const OperatorMatrix x1op =
        OperatorMatrix::column({rep.x1[0], rep.x1[1]});
    const OperatorMatrix x2op =
        OperatorMatrix::column({rep.x2[0], rep.x2[1], rep.x2[2]});

    auto cpremul = [&](const Eigen::MatrixXcd& numeric, const OperatorMatrix& m) {
        OperatorMatrix out(static_cast<int>(numeric.rows()), m.cols(), m.dim());
        for (int r = 0; r < out.rows(); ++r)
            for (int c = 0; c < out.cols(); ++c) {
                OpMat sum = OpMat::Zero(m.dim(), m.dim());
                for (int k = 0; k < m.rows(); ++k) sum += numeric(r, k) * m.at(k, c);
                out.at(r, c) = sum;
            }
        return out;
    };
    auto const_column = [&](const Eigen::VectorXcd& v) {
        OperatorMatrix out(static_cast<int>(v.size()), 1, rep.dim);
        for (int i = 0; i < v.size(); ++i) out.at(i, 0) = v(i) * rep.identity;
        return out;
    };
    auto comm_column = [&](const std::array<OpMat, 2>& xs, const OpMat& other) {
        return OperatorMatrix::column({comm(xs[0], other), comm(xs[1], other)});
    };
    auto comm_column3 = [&](const std::array<OpMat, 3>& xs, const OpMat& other) {
        return OperatorMatrix::column({comm(xs[0], other), comm(xs[1], other), comm(xs[2], other)});
    };
    auto scale_column = [&](const OperatorMatrix& v, const OpMat& left, bool left_side) {
        OperatorMatrix out(v.rows(), 1, v.dim());
        for (int i = 0; i < v.rows(); ++i)
            out.at(i, 0) = left_side ? OpMat(left * v.at(i, 0)) : OpMat(v.at(i, 0) * left);
        return out;
    };

    RealizabilityReport report;
    report.tolerance = tol;
    int index = 0;
    auto record = [&](const std::string& id, const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
        ++index;
        report.add("lemma2." + id, "Lem2." + std::to_string(index),
                   (lhs - rhs).projected_norm(rep));
    };

    // oscillator block
    record("x1-h1", comm_column(rep.x1, p.H1),
           cpremul(2.0 * kI * thetac * slh.linear.R.cast<Complex>(), x1op));
    record("x1-l1", comm_column(rep.x1, p.L1), const_column(2.0 * kI * thetac * g1t));
    record("x1-l1dag", comm_column(rep.x1, p.L1.adjoint()), const_column(2.0 * kI * thetac * g1d));
    record("l1dag.x1-l1", scale_column(comm_column(rep.x1, p.L1), p.L1.adjoint(), true),
           cpremul(2.0 * kI * thetac * (g1t * slh.linear.Gamma1.conjugate()), x1op));
    record("l1dag-x1.l1",
           scale_column(comm_column(rep.x1, p.L1.adjoint()), p.L1, false).scaled(-1.0),
           cpremul(-2.0 * kI * thetac * (g1d * slh.linear.Gamma1), x1op));

    // two-level block
    record("x2-h2", comm_column3(rep.x2, p.H2), cpremul(-2.0 * kI * theta_minus(alpha), x2op));
    record("x2-l2", comm_column3(rep.x2, p.L2), cpremul(-2.0 * kI * theta_minus(g2t), x2op));
    record("x2-l2dag", comm_column3(rep.x2, p.L2.adjoint()),
           cpremul(-2.0 * kI * theta_minus(g2d), x2op));
    record("l2dag.x2-l2", scale_column(comm_column3(rep.x2, p.L2), p.L2.adjoint(), true),
           const_column(-2.0 * kI * theta_minus(g2t) * g2d) +
               cpremul(2.0 * theta_minus(g2t) * theta_minus(g2d), x2op));
    record("x2-l2dag.l2", scale_column(comm_column3(rep.x2, p.L2.adjoint()), p.L2, false),
           const_column(2.0 * kI * theta_minus(g2t) * g2d) +
               cpremul(-2.0 * theta_minus(g2d) * theta_minus(g2t), x2op));

    // cascade cross terms
    record("l2dag.x1-l1", scale_column(comm_column(rep.x1, p.L1), p.L2.adjoint(), true),
           cpremul(2.0 * kI * thetac * (g1t * slh.bilinear.Gamma2.conjugate()), x2op));
    record("l1dag-x1.l2",
           scale_column(comm_column(rep.x1, p.L1.adjoint()), p.L2, false).scaled(-1.0),
           cpremul(-2.0 * kI * thetac * (g1d * slh.bilinear.Gamma2), x2op));

    return report;
}

// --------------------------- preservation integrands -------------------------

RealizabilityReport verify_preservation_integrands(const model::CascadeQSDE& q, int levels,
                                                   double tol) {
    model::validate(q);
    require(q.n == 1, "verify_preservation_integrands: requires n = 1");
    const CompositeRep rep = composite_rep(levels);
    const Eigen::MatrixXd theta = theta_osc(q.n);

    const OperatorMatrix x2op =
        OperatorMatrix::column({rep.x2[0], rep.x2[1], rep.x2[2]});
    const OperatorMatrix x2t = x2op.transpose();
    const OperatorMatrix tm_x2 = theta_minus_op(x2op);

    const Eigen::MatrixXd a02 = q.A02();
    const Eigen::MatrixXd a11 = q.A11();
    const Eigen::MatrixXd a12 = q.A12();
    const Eigen::MatrixXd a21 = q.A21();
    const Eigen::MatrixXd a22 = q.A22();
    const Eigen::MatrixXd bbar11 = q.Bbar11();
    const Eigen::MatrixXd bbar21 = q.Bbar21();

    RealizabilityReport report;
    report.tolerance = tol;

    // P0: two-level drift offset against noise pairing (scalar)
    report.add("preservation.0", "Pres.0",
               (q.B22(1) * q.B22(2).transpose() - q.B22(2) * q.B22(1).transpose() -
                theta_minus(Eigen::Vector3d(a02)))
                   .norm());

    // P1: no multiplicative noise from the oscillator into the two-level rows
    report.add("preservation.1", "Pres.1",
               std::max((q.B21(1) * theta).norm(), (q.B21(2) * theta).norm()));

    // P2: no multiplicative two-level noise in the oscillator rows (operator)
    report.add("preservation.2", "Pres.2",
               std::max(premul(q.B12(1), tm_x2).projected_norm(rep),
                        premul(q.B12(2), tm_x2).projected_norm(rep)));

    // P3: two-level noise blocks act inside the hat-map image (operator)
    {
        double worst = 0.0;
        for (int i = 1; i <= 2; ++i) {
            const Eigen::MatrixXd b22 = q.B22(i);
            const OperatorMatrix lhs = premul(b22, tm_x2) + postmul(tm_x2, b22.transpose()) -
                                       theta_minus_op(premul(b22, x2op));
            worst = std::max(worst, lhs.projected_norm(rep));
        }
        report.add("preservation.3", "Pres.3", worst);
    }

    // P4: oscillator commutation preservation (scalar)
    report.add("preservation.4", "Pres.4",
               (a11 * theta + theta * a11.transpose() + bbar11 * bbar21.transpose() -
                bbar21 * bbar11.transpose())
                   .norm());

    // P5: coupling consistency before stacking (operator)
    {
        const OperatorMatrix lhs = premul(a12, tm_x2) +
                                   postmul(premul(bbar11, x2t), q.B22(2).transpose()) -
                                   postmul(premul(bbar21, x2t), q.B22(1).transpose());
        report.add("preservation.5", "Pres.5", lhs.projected_norm(rep));
    }

    // P6: no feedback from the oscillator into the two-level drift (scalar)
    report.add("preservation.6", "Pres.6", (a21 * theta).norm());

    // P7: two-level drift/noise commutation balance (operator)
    {
        const OperatorMatrix lhs =
            premul(a22, tm_x2) + postmul(tm_x2, a22.transpose()) +
            postmul(premul(q.B22(1), tm_x2), q.B22(1).transpose()) +
            postmul(premul(q.B22(2), tm_x2), q.B22(2).transpose()) -
            theta_minus_op(premul(a22, x2op));
        report.add("preservation.7", "Pres.7", lhs.projected_norm(rep));
    }

    return report;
}

// --------------------------- drift / noise matching --------------------------

RealizabilityReport oracle_drift_match(const model::CascadeQSDE& q, const model::CascadeSLH& slh,
                                       int levels, double tol) {
    model::validate(q);
    require(q.n == 1 && slh.linear.n() == 1, "oracle_drift_match: requires n = 1");
    const CompositeRep rep = composite_rep(levels);
    const SLHOperators ops = build_slh_operators(rep, slh);

    const std::array<OpMat, 5> xs = {rep.x1[0], rep.x1[1], rep.x2[0], rep.x2[1], rep.x2[2]};
    static const char* names[5] = {"x1_1", "x1_2", "x2_1", "x2_2", "x2_3"};

    RealizabilityReport report;
    report.tolerance = tol;

    for (int i = 0; i < 5; ++i) {
        const OperatorCoefficients hc = heisenberg_coefficients(ops, xs[i]);
        // quadrature substitution: dW = (dWbar1 + i dWbar2)/2, dWdag = (dWbar1 - i dWbar2)/2
        const OpMat g1 = 0.5 * (hc.dWdag_coeff + hc.dW_coeff);
        const OpMat g2 = 0.5 * kI * (hc.dW_coeff - hc.dWdag_coeff);

        OpMat drift = q.A0(i) * rep.identity;
        OpMat noise1 = q.B(i, 0) * rep.identity;
        OpMat noise2 = q.B(i, 1) * rep.identity;
        for (int j = 0; j < 5; ++j) {
            drift += q.A(i, j) * xs[j];
            noise1 += q.B1(i, j) * xs[j];
            noise2 += q.B2(i, j) * xs[j];
        }

        const std::string name = names[i];
        report.add("drift." + name, "drift(" + name + ")",
                   projected_norm(rep, hc.drift - drift));
        report.add("noise1." + name, "noise1(" + name + ")", projected_norm(rep, g1 - noise1));
        report.add("noise2." + name, "noise2(" + name + ")", projected_norm(rep, g2 - noise2));
    }

    // output rows: dy = C x dt + dWbar
    OpMat y1 = ops.L + ops.L.adjoint();
    OpMat y2 = kI * (ops.L.adjoint() - ops.L);
    for (int j = 0; j < 5; ++j) {
        y1 -= q.C(0, j) * xs[j];
        y2 -= q.C(1, j) * xs[j];
    }
    report.add("output.y1", "output(y1)", projected_norm(rep, y1));
    report.add("output.y2", "output(y2)", projected_norm(rep, y2));

    return report;
}

RealizabilityReport oracle_drift_match(const model::LinearQSDE& q, const model::LinearSLH& slh,
                                       int levels, double tol) {
    return oracle_drift_match(model::embed(q), model::embed(slh), levels, tol);
}

RealizabilityReport oracle_drift_match(const model::BilinearQSDE& q, const model::BilinearSLH& slh,
                                       int levels, double tol) {
    return oracle_drift_match(model::embed(q), model::embed(slh), levels, tol);
}

} // namespace qsde::oprep
