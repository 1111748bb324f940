#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "spamlab/eigen.hpp"
#include "spamlab/error.hpp"
#include "spamlab/rng.hpp"

using namespace spamlab;

namespace {

DenseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    return m;
}

DenseMatrix random_symmetric(std::size_t n, Rng& rng) {
    DenseMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) {
            const double v = rng.normal();
            a.at(r, c) = v;
            a.at(c, r) = v;
        }
    return a;
}

double residual_norm(const DenseMatrix& a, const EigenResult& e) {
    // max_j || A v_j - lambda_j v_j ||_2
    double worst = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < e.eigenvalues.size(); ++j) {
        double norm2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            double av = 0.0;
            for (std::size_t c = 0; c < n; ++c)
                av += a.at(r, c) * e.eigenvectors.at(c, j);
            const double diff = av - e.eigenvalues[j] * e.eigenvectors.at(r, j);
            norm2 += diff * diff;
        }
        worst = std::max(worst, std::sqrt(norm2));
    }
    return worst;
}

double max_orthonormality_defect(const DenseMatrix& v, std::size_t cols) {
    double worst = 0.0;
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i; j < cols; ++j) {
            double dot = 0.0;
            for (std::size_t r = 0; r < v.rows(); ++r)
                dot += v.at(r, i) * v.at(r, j);
            worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST_CASE("jacobi: analytic 2x2") {
    // [[2,1],[1,2]] has eigenvalues 3 and 1 with vectors (1,1)/sqrt2, (1,-1)/sqrt2.
    const EigenResult e = symmetric_eigen(from_rows({{2, 1}, {1, 2}}));
    REQUIRE(e.eigenvalues.size() == 2);
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(e.eigenvectors.at(0, 0) * e.eigenvectors.at(1, 0)) ==
          doctest::Approx(s * s).epsilon(1e-10));  // components match +-(s, s)
    CHECK(std::abs(e.eigenvectors.at(0, 1)) == doctest::Approx(s).epsilon(1e-10));
}

TEST_CASE("jacobi: diagonal input is returned sorted") {
    const EigenResult e =
        symmetric_eigen(from_rows({{1, 0, 0}, {0, 5, 0}, {0, 0, 3}}));
    CHECK(e.eigenvalues == std::vector<double>{5, 3, 1});
    // The eigenvector of 5 is e_2 up to sign.
    CHECK(std::abs(e.eigenvectors.at(1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("jacobi: random symmetric matrices satisfy the eigen equation") {
    Rng rng(314);
    for (const std::size_t n : {1u, 2u, 3u, 8u, 17u, 30u}) {
        const DenseMatrix a = random_symmetric(n, rng);
        const EigenResult e = symmetric_eigen(a);
        REQUIRE(e.eigenvalues.size() == n);

        CHECK(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
        CHECK(residual_norm(a, e) < 1e-8);
        CHECK(max_orthonormality_defect(e.eigenvectors, n) < 1e-10);

        // Trace is preserved by similarity transforms.
        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += a.at(i, i);
        for (const double l : e.eigenvalues) sum += l;
        CHECK(sum == doctest::Approx(trace).epsilon(1e-10));
    }
}

TEST_CASE("jacobi: input validation") {
    CHECK_THROWS_AS((void)symmetric_eigen(DenseMatrix(2, 3)), DataError);
    CHECK_THROWS_AS((void)symmetric_eigen(from_rows({{1, 2}, {3, 1}})), DataError);
    DenseMatrix bad(2, 2);
    bad.at(0, 0) = std::nan("");
    CHECK_THROWS_AS((void)symmetric_eigen(bad), DataError);
}

TEST_CASE("subspace iteration matches jacobi on the leading eigenpairs") {
    Rng rng(2718);
    const std::size_t n = 40, k = 6;

    // Symmetric PSD: A = B B^T (as in covariance/Gram problems).
    DenseMatrix b(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) b.at(r, c) = rng.normal();
    DenseMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            double s = 0.0;
            for (std::size_t m = 0; m < n; ++m) s += b.at(r, m) * b.at(c, m);
            a.at(r, c) = s;
        }

    const EigenResult dense = symmetric_eigen(a);
    const SymmetricOp op = [&](std::span<const double> x, std::span<double> y) {
        for (std::size_t r = 0; r < n; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < n; ++c) s += a.at(r, c) * x[c];
            y[r] = s;
        }
    };
    const EigenResult sub = subspace_eigen(op, n, k);

    REQUIRE(sub.eigenvalues.size() == k);
    for (std::size_t j = 0; j < k; ++j) {
        CAPTURE(j);
        CHECK(sub.eigenvalues[j] ==
              doctest::Approx(dense.eigenvalues[j]).epsilon(1e-9));
        // Direction agreement up to sign: |<v_sub, v_dense>| = 1.
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            dot += sub.eigenvectors.at(r, j) * dense.eigenvectors.at(r, j);
        CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-7));
    }
    CHECK(max_orthonormality_defect(sub.eigenvectors, k) < 1e-9);

    // Determinism: same call, same bits.
    const EigenResult again = subspace_eigen(op, n, k);
    CHECK(again.eigenvalues == sub.eigenvalues);
}
