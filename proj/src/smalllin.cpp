#include "codesense/smalllin.hpp"

#include <algorithm>
#include <cmath>

namespace codesense {

namespace {

std::vector<double> jacobi_impl(std::span<const double> a, std::size_t n,
                                std::vector<double>* vectors) {
    std::vector<double> m(a.begin(), a.end());
    auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
    if (vectors) {
        vectors->assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) (*vectors)[i * n + i] = 1.0;
    }

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (std::sqrt(2.0 * off) < 1e-12) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = at(i, p), aiq = at(i, q);
                    at(i, p) = c * aip - s * aiq;
                    at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = at(p, i), aqi = at(q, i);
                    at(p, i) = c * api - s * aqi;
                    at(q, i) = s * api + c * aqi;
                }
                if (vectors) {
                    for (std::size_t i = 0; i < n; ++i) {
                        double vip = (*vectors)[i * n + p], viq = (*vectors)[i * n + q];
                        (*vectors)[i * n + p] = c * vip - s * viq;
                        (*vectors)[i * n + q] = s * vip + c * viq;
                    }
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
    if (!vectors) {
        std::sort(eig.begin(), eig.end());
        return eig;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return eig[x] < eig[y]; });
    std::vector<double> sorted_eig(n);
    std::vector<double> sorted_vec(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        sorted_eig[c] = eig[order[c]];
        for (std::size_t i = 0; i < n; ++i) sorted_vec[i * n + c] = (*vectors)[i * n + order[c]];
    }
    *vectors = std::move(sorted_vec);
    return sorted_eig;
}

}  // namespace

std::vector<double> jacobi_eigenvalues(std::span<const double> a, std::size_t n) {
    return jacobi_impl(a, n, nullptr);
}

std::vector<double> jacobi_eigensystem(std::span<const double> a, std::size_t n,
                                       std::vector<double>& vectors) {
    return jacobi_impl(a, n, &vectors);
}

bool cholesky_solve(std::span<const double> a, std::size_t n, std::span<const double> b,
                    std::vector<double>& x, double tol) {
    std::vector<double> l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
            if (i == j) {
                if (sum < tol) return false;
                l[i * n + i] = std::sqrt(sum);
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    x.assign(n, 0.0);
    // forward: L y = b
    for (std::size_t i = 0; i < n; ++i) {
        double sum = b[i];
        for (std::size_t k = 0; k < i; ++k) sum -= l[i * n + k] * x[k];
        x[i] = sum / l[i * n + i];
    }
    // backward: L^T x = y
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) sum -= l[k * n + ii] * x[k];
        x[ii] = sum / l[ii * n + ii];
    }
    return true;
}

}  // namespace codesense
