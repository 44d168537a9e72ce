// support.hpp — shared test helpers: seeded generators and naive reference oracles

#pragma once

#include "qsde/types.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <complex>
#include <filesystem>
#include <random>
#include <string>

namespace testsupport {

using Complex = std::complex<double>;

// Collision-free scratch paths without tmpnam
inline std::string scratch_path(const std::string& stem) {
    static std::atomic<int> counter{0};
    const auto dir = std::filesystem::temp_directory_path();
    return (dir / (stem + "_" + std::to_string(::getpid()) + "_" +
                   std::to_string(counter++) + ".json"))
        .string();
}

// --------------------------- naive reference oracles --------------------------
// Independent re-implementations used to pin expected values; intentionally
// written with plain loops, not via the library under test.

template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic>
naive_vec(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    Eigen::Vector<Scalar, Eigen::Dynamic> v(m.rows() * m.cols());
    Eigen::Index k = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) v(k++) = m(r, c);
    return v;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
naive_kron(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
           const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index p = 0; p < b.rows(); ++p)
                for (Eigen::Index q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    return k;
}

// --------------------------- random value generators --------------------------

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return dist_(engine_); }  // uniform on [-1, 1]

    Complex complex_uniform() { return {uniform(), uniform()}; }

    Eigen::VectorXd real_vector(int size) {
        Eigen::VectorXd v(size);
        for (int i = 0; i < size; ++i) v(i) = uniform();
        return v;
    }

    Eigen::MatrixXd real_matrix(int rows, int cols) {
        Eigen::MatrixXd m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = uniform();
        return m;
    }

    Eigen::MatrixXd symmetric_matrix(int size) {
        const Eigen::MatrixXd m = real_matrix(size, size);
        return 0.5 * (m + m.transpose());
    }

    Eigen::MatrixXcd complex_matrix(int rows, int cols) {
        Eigen::MatrixXcd m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = complex_uniform();
        return m;
    }

    Eigen::RowVectorXcd complex_row(int size) {
        Eigen::RowVectorXcd v(size);
        for (int i = 0; i < size; ++i) v(i) = complex_uniform();
        return v;
    }

    qsde::model::LinearSLH linear_slh(int n) {
        qsde::model::LinearSLH slh;
        slh.R = symmetric_matrix(2 * n);
        slh.Gamma1 = complex_row(2 * n);
        return slh;
    }

    qsde::model::BilinearSLH bilinear_slh() {
        qsde::model::BilinearSLH slh;
        slh.alpha2 = real_vector(3).transpose();
        slh.Gamma2 = complex_row(3);
        return slh;
    }

    qsde::model::CascadeSLH cascade_slh(int n) { return {linear_slh(n), bilinear_slh()}; }

    int index(int bound) {  // uniform in [0, bound)
        std::uniform_int_distribution<int> d(0, bound - 1);
        return d(engine_);
    }

  private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> dist_{-1.0, 1.0};
};

} // namespace testsupport
