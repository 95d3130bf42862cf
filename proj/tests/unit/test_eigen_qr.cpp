#include "doctest.h"

#include "s3tb/eigen_qr.hpp"
#include "s3tb/stability.hpp"

#include <Eigen/Eigenvalues>

#include <random>

using namespace s3tb;

namespace {

std::vector<std::complex<double>> reference(const Eigen::MatrixXd& a) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
    const auto ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

TEST_CASE("hessenberg_reduce keeps the spectrum and zeroes below the subdiagonal") {
    std::mt19937_64 rng(81);
    std::normal_distribution<double> g;
    for (int n = 0; n < 50; ++n) {
        Eigen::MatrixXd a(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) a(i, j) = g(rng);
        Eigen::MatrixXd h = a;
        hessenberg_reduce(h);
        for (int i = 2; i < 8; ++i)
            for (int j = 0; j < i - 1; ++j) CHECK(std::abs(h(i, j)) < 1e-13);
        CHECK(h.trace() == doctest::Approx(a.trace()).epsilon(1e-12));
        CHECK(multiset_distance(hessenberg_qr_eigenvalues(h), reference(a)) < 1e-9);
    }
}

TEST_CASE("balance is a similarity") {
    Eigen::MatrixXd a(3, 3);
    a << 1, 1e6, 0, 1e-6, 2, 1e4, 0, 1e-4, 3;
    Eigen::MatrixXd b = a;
    balance(b);
    CHECK(b.trace() == doctest::Approx(a.trace()));
    CHECK(multiset_distance(eigenvalues(b), reference(a)) < 1e-9);
}

TEST_CASE("eigenvalues of known matrices") {
    Eigen::MatrixXd rot(2, 2);
    rot << 0, -2, 2, 0;
    CHECK(multiset_distance(eigenvalues(rot), {{0, 2}, {0, -2}}) < 1e-14);

    Eigen::MatrixXd diag = Eigen::VectorXd::LinSpaced(6, 1, 6).asDiagonal();
    CHECK(multiset_distance(eigenvalues(diag), {1, 2, 3, 4, 5, 6}) < 1e-13);

    // Companion matrix of (t-1)(t-2)(t-3)(t+4).
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(4, 4);
    // t^4 - 2 t^3 - 13 t^2 + 38 t - 24
    comp.row(0) << 2, 13, -38, 24;
    comp(1, 0) = comp(2, 1) = comp(3, 2) = 1;
    CHECK(multiset_distance(eigenvalues(comp), {1, 2, 3, -4}) < 1e-10);

    Eigen::MatrixXd nil = Eigen::MatrixXd::Zero(8, 8);
    for (const auto& z : eigenvalues(nil)) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("multiset_distance uses the best pairing") {
    // Greedy nearest pairing would match 0 with 0.9 and leave 1.0 with 2.0.
    CHECK(multiset_distance({0.0, 1.0}, {0.9, 2.0}) == doctest::Approx(1.0));
    CHECK(multiset_distance({0.0, 1.0, 5.0}, {5.0, 0.0, 1.0}) == 0.0);
    CHECK(multiset_distance({{0, 1}, {0, -1}}, {{0, -1.1}, {0, 1}}) == doctest::Approx(0.1));
    CHECK_THROWS_AS((void)multiset_distance({1.0}, {}), std::invalid_argument);
}

TEST_CASE("random matrices of several sizes against Eigen") {
    std::mt19937_64 rng(82);
    std::normal_distribution<double> g;
    for (int size : {1, 2, 3, 5, 8, 12}) {
        for (int n = 0; n < 30; ++n) {
            Eigen::MatrixXd a(size, size);
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) a(i, j) = g(rng);
            CHECK(multiset_distance(eigenvalues(a), reference(a)) < 1e-9);
        }
    }
}

TEST_CASE("Hamiltonian-type spectra") {
    // J S with S symmetric has eigenvalues in +- pairs.
    std::mt19937_64 rng(83);
    std::normal_distribution<double> g;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(8, 8);
    J.topRightCorner(4, 4) = Eigen::MatrixXd::Identity(4, 4);
    J.bottomLeftCorner(4, 4) = -Eigen::MatrixXd::Identity(4, 4);
    for (int n = 0; n < 20; ++n) {
        Eigen::MatrixXd s(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) s(i, j) = g(rng);
        s = (s + s.transpose()).eval();
        const auto ev = eigenvalues(J * s);
        std::vector<std::complex<double>> neg;
        for (const auto& z : ev) neg.push_back(-z);
        CHECK(multiset_distance(ev, neg) < 1e-9);
    }
}
