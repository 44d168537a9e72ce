#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsde/algebra.hpp"
#include "qsde/model.hpp"
#include "qsde/oprep.hpp"
#include "support.hpp"

#include <cmath>

using namespace qsde::model;
using namespace qsde::oprep;
using testsupport::Rng;

namespace {

const double kRoot2 = std::sqrt(2.0);
constexpr Complex kI{0.0, 1.0};

LinearSLH cavity_slh() {
    LinearSLH slh = zero_linear_slh(1);
    slh.Gamma1 << Complex(kRoot2 / 2, 0), Complex(0, kRoot2 / 2);
    return slh;
}

BilinearSLH two_level_slh() {
    BilinearSLH slh = zero_bilinear_slh();
    slh.Gamma2 << Complex(0.5, 0), Complex(0, 0.5), Complex(0, 0);
    return slh;
}

CascadeSLH worked_cascade_slh() { return {cavity_slh(), two_level_slh()}; }

OpMat comm(const OpMat& a, const OpMat& b) { return a * b - b * a; }

} // namespace

TEST_CASE("annihilation_op lays out the ladder weights") {
    CHECK_THROWS_AS(annihilation_op(3), std::invalid_argument);

    const FockRep fock = annihilation_op(4);
    Eigen::Matrix3cd expected;
    expected << 0, 1, 0,
                0, 0, kRoot2,
                0, 0, 0;
    CHECK((fock.a.topLeftCorner(3, 3) - expected).norm() == 0.0);
}

TEST_CASE("ladder commutator fails only at the truncation boundary") {
    // sqrt(k)^2 carries one rounding each, so "exact" means machine precision here
    for (const int levels : {4, 9, 16}) {
        const FockRep fock = annihilation_op(levels);
        OpMat defect = fock.a * fock.a.adjoint() - fock.a.adjoint() * fock.a -
                       OpMat::Identity(levels, levels);
        CHECK(std::abs(defect(levels - 1, levels - 1) - Complex(-levels, 0)) <= 1e-13);
        defect(levels - 1, levels - 1) = 0.0;
        CHECK(defect.norm() <= 1e-13);

        OpMat p = OpMat::Zero(levels, levels);
        for (int k = 0; k + 2 < levels; ++k) p(k, k) = 1.0;
        const OpMat full_defect =
            fock.a * fock.a.adjoint() - fock.a.adjoint() * fock.a - OpMat::Identity(levels, levels);
        CHECK((p * full_defect * p).norm() <= 1e-13);
    }
}

TEST_CASE("composite_rep satisfies the exact algebraic identities") {
    const CompositeRep rep = composite_rep(8);

    // Pauli products and commutators, exact
    const auto& s = pauli();
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            Eigen::Matrix2cd expected = (i == j) ? Eigen::Matrix2cd(s[0]) : Eigen::Matrix2cd::Zero();
            for (int k = 1; k <= 3; ++k)
                expected += kI * qsde::algebra::levi_civita(i - 1, j - 1, k - 1) * s[k];
            CHECK((s[i] * s[j] - expected).norm() == 0.0);
        }

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            OpMat expected = OpMat::Zero(rep.dim, rep.dim);
            for (int k = 0; k < 3; ++k)
                expected += 2.0 * kI * qsde::algebra::levi_civita(i, j, k) * rep.x2[k];
            CHECK((comm(rep.x2[i], rep.x2[j]) - expected).norm() == 0.0);
        }

    // different tensor factors commute exactly
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) CHECK(comm(rep.x1[i], rep.x2[j]).norm() == 0.0);

    // oscillator commutation form under the projector
    const OpMat mixed = comm(rep.x1[0], rep.x1[1]) - 2.0 * kI * rep.identity;
    CHECK(projected_norm(rep, mixed) <= 1e-13);

    // x1 components self-adjoint; x2 components self-adjoint and unitary
    for (const auto& x : rep.x1) CHECK((x - x.adjoint()).norm() == 0.0);
    for (const auto& x : rep.x2) {
        CHECK((x - x.adjoint()).norm() == 0.0);
        CHECK((x * x - rep.identity).norm() == 0.0);
    }
}

TEST_CASE("build_slh_operators embeds couplings and Hamiltonians") {
    const CompositeRep rep = composite_rep(8);

    // pure two-level precession
    CascadeSLH precession = zero_cascade_slh(1);
    precession.bilinear.alpha2 << 0, 0, 0.5;
    const SLHOperators ops1 = build_slh_operators(rep, precession);
    CHECK(ops1.L.norm() == 0.0);
    CHECK((ops1.H - 0.5 * rep.x2[2]).norm() == 0.0);

    // cavity coupling equals sqrt(2) a (x) I2
    const SLHOperators ops2 = build_slh_operators(rep, cavity_slh());
    const OpMat a_embed = qsde::algebra::kron(OpMat(annihilation_op(8).a), OpMat(OpMat::Identity(2, 2)));
    CHECK((ops2.L - kRoot2 * a_embed).norm() < 1e-15);

    // cascade cross term appears only when both couplings are live
    const SLHOperators ops3 = build_slh_operators(rep, worked_cascade_slh());
    const SLHOperators lin_only = build_slh_operators(rep, cavity_slh());
    const SLHOperators bil_only = build_slh_operators(rep, two_level_slh());
    CHECK((ops3.H - lin_only.H - bil_only.H).norm() > 0.1);
    CHECK((ops3.H - ops3.H.adjoint()).norm() == 0.0);
}

TEST_CASE("build_slh_operators rejects a Hamiltonian with genuine asymmetry") {
    const CompositeRep rep = composite_rep(16);
    CascadeSLH slh = zero_cascade_slh(1);
    slh.linear.R << 0, 4e-13,
                    -4e-13, 0;  // inside the R validation tolerance, visible in H
    CHECK_THROWS_AS(build_slh_operators(rep, slh), std::runtime_error);
}

TEST_CASE("lindblad reproduces damped-cavity decay") {
    const CompositeRep rep = composite_rep(16);
    const SLHOperators ops = build_slh_operators(rep, cavity_slh());
    const OpMat a_embed =
        qsde::algebra::kron(OpMat(annihilation_op(16).a), OpMat(OpMat::Identity(2, 2)));

    // L = sqrt(2) a: drift of a is -(kappa/2) a with kappa = 2
    CHECK(projected_norm(rep, lindblad(ops, a_embed) + a_embed) <= 1e-12);

    // commuting observables and the identity are fixed points
    SLHOperators free;
    free.L = OpMat::Zero(rep.dim, rep.dim);
    free.H = rep.x2[2];
    CHECK(lindblad(free, rep.x2[2]).norm() == 0.0);
    CHECK(lindblad(ops, rep.identity).norm() == 0.0);
}

TEST_CASE("heisenberg_coefficients match the closed-form noise coefficients") {
    const CompositeRep rep = composite_rep(16);
    Rng rng(101);

    for (int trial = 0; trial < 10; ++trial) {
        const LinearSLH slh = rng.linear_slh(1);
        const SLHOperators ops = build_slh_operators(rep, slh);
        const Eigen::Vector2cd expected =
            2.0 * kI * qsde::algebra::theta_osc(1).cast<Complex>() * slh.Gamma1.transpose();
        for (int i = 0; i < 2; ++i) {
            const OperatorCoefficients hc = heisenberg_coefficients(ops, rep.x1[i]);
            CHECK(projected_norm(rep, hc.dWdag_coeff - expected(i) * rep.identity) <= 1e-12);
        }
    }

    for (int trial = 0; trial < 10; ++trial) {
        const BilinearSLH slh = rng.bilinear_slh();
        const SLHOperators ops = build_slh_operators(rep, slh);
        const Eigen::Matrix3cd coeff =
            -2.0 * kI * qsde::algebra::theta_minus(Eigen::Vector3cd(slh.Gamma2.transpose()));
        for (int i = 0; i < 3; ++i) {
            const OperatorCoefficients hc = heisenberg_coefficients(ops, rep.x2[i]);
            OpMat expected = OpMat::Zero(rep.dim, rep.dim);
            for (int j = 0; j < 3; ++j) expected += coeff(i, j) * rep.x2[j];
            CHECK(projected_norm(rep, hc.dWdag_coeff - expected) <= 1e-12);
        }
    }

    // zero system has vanishing coefficients
    const SLHOperators none = build_slh_operators(rep, zero_cascade_slh(1));
    const OperatorCoefficients hc = heisenberg_coefficients(none, rep.x1[0]);
    CHECK(hc.drift.norm() == 0.0);
    CHECK(hc.dW_coeff.norm() == 0.0);
    CHECK(hc.dWdag_coeff.norm() == 0.0);
}

TEST_CASE("heisenberg_coefficients are linear in the observable") {
    const CompositeRep rep = composite_rep(8);
    const SLHOperators ops = build_slh_operators(rep, worked_cascade_slh());
    const Complex alpha(0.7, -0.2);
    const Complex beta(-1.3, 0.4);
    const OpMat x = rep.x1[0];
    const OpMat y = rep.x2[1];

    const OperatorCoefficients cx = heisenberg_coefficients(ops, x);
    const OperatorCoefficients cy = heisenberg_coefficients(ops, y);
    const OperatorCoefficients cxy = heisenberg_coefficients(ops, alpha * x + beta * y);

    CHECK((cxy.drift - alpha * cx.drift - beta * cy.drift).norm() <= 1e-12);
    CHECK((cxy.dW_coeff - alpha * cx.dW_coeff - beta * cy.dW_coeff).norm() <= 1e-12);
    CHECK((cxy.dWdag_coeff - alpha * cx.dWdag_coeff - beta * cy.dWdag_coeff).norm() <= 1e-12);
}

TEST_CASE("verify_lemma2 passes on the worked cascade at N = 16") {
    const auto report = verify_lemma2(worked_cascade_slh(), 16, 1e-9);
    CHECK(report.conditions.size() == 12);
    CHECK(report.pass());
    for (const auto& c : report.conditions) CHECK(c.residual <= 1e-9);
    REQUIRE(report.find("lemma2.l2dag.x1-l1") != nullptr);
    CHECK(report.find("lemma2.l2dag.x1-l1")->residual <= 1e-9);
}

TEST_CASE("verify_lemma2 is trivial on the silent system") {
    const auto report = verify_lemma2(zero_cascade_slh(1), 8, 1e-12);
    CHECK(report.pass());
    for (const auto& c : report.conditions) CHECK(c.residual == 0.0);
}

TEST_CASE("verify_preservation_integrands passes on synthesized cascades") {
    Rng rng(102);
    const auto report =
        verify_preservation_integrands(synthesize_cascade(worked_cascade_slh()), 16, 1e-9);
    CHECK(report.conditions.size() == 8);
    CHECK(report.pass());

    for (int trial = 0; trial < 5; ++trial) {
        const auto r =
            verify_preservation_integrands(synthesize_cascade(rng.cascade_slh(1)), 12, 1e-9);
        CHECK(r.pass());
    }
}

TEST_CASE("preservation integrand three vanishes for any skew noise block") {
    Rng rng(103);
    for (int trial = 0; trial < 10; ++trial) {
        CascadeQSDE q = zero_cascade_qsde(1);
        q.B1.bottomRightCorner(3, 3) =
            qsde::algebra::theta_minus(Eigen::Vector3d(rng.real_vector(3)));
        q.B2.bottomRightCorner(3, 3) =
            qsde::algebra::theta_minus(Eigen::Vector3d(rng.real_vector(3)));
        // compensate the drift offset so the zero system stays consistent
        const auto report = verify_preservation_integrands(q, 8, 1e-9);
        CHECK(report.find("preservation.3")->residual <= 1e-13);
    }
}

TEST_CASE("preservation integrand six flags oscillator feedback") {
    CascadeQSDE q = zero_cascade_qsde(1);
    q.A.bottomLeftCorner(3, 2) << 1, 0,
                                  0, 1,
                                  0, 0;
    const auto report = verify_preservation_integrands(q, 8, 1e-9);
    CHECK_FALSE(report.pass());
    CHECK(report.find("preservation.6")->residual ==
          doctest::Approx(kRoot2).epsilon(1e-14));
}

TEST_CASE("oracle_drift_match validates the worked systems") {
    // cavity, linear overload
    const auto lin = oracle_drift_match(synthesize_linear(cavity_slh()), cavity_slh(), 16, 1e-9);
    CHECK(lin.pass());

    // two-level: exact regardless of truncation
    const BilinearQSDE bq = synthesize_bilinear(two_level_slh());
    for (const int levels : {4, 8}) {
        const auto bil = oracle_drift_match(bq, two_level_slh(), levels, 1e-13);
        CHECK(bil.pass());
    }

    // full cascade
    const auto cas = oracle_drift_match(synthesize_cascade(worked_cascade_slh()),
                                        worked_cascade_slh(), 16, 1e-9);
    CHECK(cas.conditions.size() == 17);
    CHECK(cas.pass());

    // silent system
    const auto zero =
        oracle_drift_match(zero_cascade_qsde(1), zero_cascade_slh(1), 8, 1e-13);
    CHECK(zero.pass());
}

TEST_CASE("bilinear oracle checks are exact for any truncation") {
    Rng rng(104);
    for (int trial = 0; trial < 5; ++trial) {
        const BilinearSLH slh = rng.bilinear_slh();
        const BilinearQSDE q = synthesize_bilinear(slh);
        for (const int levels : {4, 8}) {
            const auto report = oracle_drift_match(q, slh, levels, 1e-13);
            CHECK(report.pass());
        }
    }
}

TEST_CASE("projected residuals are stable under doubling the truncation") {
    const CascadeSLH slh = worked_cascade_slh();
    const CascadeQSDE q = synthesize_cascade(slh);

    const auto collect = [&](int levels) {
        RealizabilityReport all;
        all.tolerance = 1e-9;
        all.append(verify_lemma2(slh, levels, 1e-9));
        all.append(verify_preservation_integrands(q, levels, 1e-9));
        all.append(oracle_drift_match(q, slh, levels, 1e-9));
        return all;
    };
    const auto at16 = collect(16);
    const auto at32 = collect(32);
    REQUIRE(at16.conditions.size() == at32.conditions.size());
    for (std::size_t i = 0; i < at16.conditions.size(); ++i)
        CHECK(std::abs(at16.conditions[i].residual - at32.conditions[i].residual) <= 1e-12);
}

TEST_CASE("quantum Ito correction matches the quadrature table contraction") {
    const CompositeRep rep = composite_rep(16);
    const SLHOperators ops = build_slh_operators(rep, worked_cascade_slh());
    const Eigen::Matrix2cd table = ito_table();

    const std::array<OpMat, 5> xs = {rep.x1[0], rep.x1[1], rep.x2[0], rep.x2[1], rep.x2[2]};
    for (const auto& x : xs)
        for (const auto& y : xs) {
            const OperatorCoefficients cx = heisenberg_coefficients(ops, x);
            const OperatorCoefficients cy = heisenberg_coefficients(ops, y);

            // product-rule correction computed three ways
            const OpMat direct = cx.dW_coeff * cy.dWdag_coeff;
            const OpMat via_generator =
                lindblad(ops, x * y) - lindblad(ops, x) * y - x * lindblad(ops, y);

            const std::array<OpMat, 2> gx = {0.5 * (cx.dWdag_coeff + cx.dW_coeff),
                                             0.5 * kI * (cx.dW_coeff - cx.dWdag_coeff)};
            const std::array<OpMat, 2> gy = {0.5 * (cy.dWdag_coeff + cy.dW_coeff),
                                             0.5 * kI * (cy.dW_coeff - cy.dWdag_coeff)};
            OpMat via_table = OpMat::Zero(rep.dim, rep.dim);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) via_table += table(i, j) * (gx[i] * gy[j]);

            CHECK(projected_norm(rep, via_generator - direct) <= 1e-9);
            CHECK(projected_norm(rep, via_table - direct) <= 1e-9);
        }
}
