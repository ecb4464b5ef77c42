#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hodgerank/core.hpp"

namespace hodgerank {

// Dense symmetric eigendecomposition (cyclic Jacobi). Used for the
// pseudoinverse solve on small systems; the iterative solver handles the
// general case. Row-major n*n storage.
struct SymEig {
    int n = 0;
    std::vector<double> values;  // eigenvalues
    std::vector<double> vectors; // column j = eigenvector j, row-major
};

inline SymEig jacobi_eigen(std::vector<double> a, int n, int max_sweeps = 100) {
    SymEig out;
    out.n = n;
    out.values.assign(static_cast<size_t>(n), 0.0);
    out.vectors.assign(static_cast<size_t>(n) * n, 0.0);
    std::vector<double>& v = out.vectors;
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
    if (n == 0) return out;

    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off <= 1e-30) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double app = at(p, p), aqq = at(q, q);
                double theta = (aqq - app) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[static_cast<size_t>(k) * n + p];
                    double vkq = v[static_cast<size_t>(k) * n + q];
                    v[static_cast<size_t>(k) * n + p] = c * vkp - s * vkq;
                    v[static_cast<size_t>(k) * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) out.values[static_cast<size_t>(i)] = at(i, i);
    return out;
}

/// Minimum-norm solution of A x = b through the eigendecomposition of A:
/// components on near-null eigenvalues are dropped.
inline std::vector<double> pinv_apply(const SymEig& eig, const std::vector<double>& b,
                                      double rcond = 1e-12) {
    const int n = eig.n;
    double lmax = 0.0;
    for (double l : eig.values) lmax = std::max(lmax, std::abs(l));
    double cutoff = rcond * std::max(lmax, 1.0);

    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double lam = eig.values[static_cast<size_t>(j)];
        if (std::abs(lam) <= cutoff) continue;
        double dot = 0.0;
        for (int i = 0; i < n; ++i)
            dot += eig.vectors[static_cast<size_t>(i) * n + j] * b[static_cast<size_t>(i)];
        double coef = dot / lam;
        for (int i = 0; i < n; ++i)
            x[static_cast<size_t>(i)] += coef * eig.vectors[static_cast<size_t>(i) * n + j];
    }
    return x;
}

/// Minimum-norm least-squares solve A x = b for symmetric PSD A.
inline std::vector<double> pinv_solve(const std::vector<double>& a, int n,
                                      const std::vector<double>& b, double rcond = 1e-12) {
    return pinv_apply(jacobi_eigen(a, n), b, rcond);
}

} // namespace hodgerank
