#include "codesense/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "codesense/bounds.hpp"
#include "codesense/smalllin.hpp"

namespace codesense {

namespace {

// Lexicographically next size-k subset of [0, m); returns false after the last.
bool next_combination(std::vector<std::uint64_t>& idx, std::uint64_t m) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < m - (k - i)) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<Codeword> materialize_codewords(const CompactSensingMatrix& sm) {
    std::vector<Codeword> words;
    words.reserve(sm.m());
    visit_codewords(sm.generator(), 1, sm.m(),
                    [&](std::uint64_t, std::span<const std::uint64_t> w) {
                        words.emplace_back(w, sm.p());
                    });
    return words;
}

double subset_delta(const std::vector<Codeword>& words, std::span<const std::uint64_t> zero_based,
                    std::size_t p, std::vector<double>& gram_scratch) {
    const std::size_t s = zero_based.size();
    gram_scratch.assign(s * s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        gram_scratch[i * s + i] = 1.0;
        for (std::size_t j = i + 1; j < s; ++j) {
            double g = inner_product_via_distance(
                hamming_distance(words[zero_based[i]], words[zero_based[j]]), p);
            gram_scratch[i * s + j] = g;
            gram_scratch[j * s + i] = g;
        }
    }
    std::vector<double> eig = jacobi_eigenvalues(gram_scratch, s);
    return std::max({eig.back() - 1.0, 1.0 - eig.front(), 0.0});
}

std::int64_t max_abs_correlation_numerator(const std::vector<Codeword>& words, std::size_t p) {
    const std::int64_t ip = static_cast<std::int64_t>(p);
    std::int64_t best = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(words.size()); ++i) {
        std::int64_t local = 0;
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < words.size(); ++j) {
            std::int64_t num =
                ip - 2 * static_cast<std::int64_t>(
                             hamming_distance(words[static_cast<std::size_t>(i)], words[j]));
            if (num < 0) num = -num;
            local = std::max(local, num);
        }
        best = std::max(best, local);
    }
    return best;
}

struct DenseMatrix {
    std::size_t p = 0;
    std::uint64_t m = 0;
    std::vector<double> cols;  // column-major

    const double* col(std::uint64_t j) const { return cols.data() + j * p; }  // 0-based
};

DenseMatrix dense_of(const CompactSensingMatrix& sm) {
    if (sm.p() * sm.m() > (std::uint64_t{1} << 24))
        throw TooLarge("dense solver path beyond 2^24 entries");
    return DenseMatrix{sm.p(), sm.m(), sm.dense()};
}

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Eigendecomposition-backed pseudoinverse of a symmetric PSD matrix,
// computed once; solve() applies Q diag(1/lambda) Q^T with small
// eigenvalues zeroed. Phi Phi^T can be singular (columns of Phi need not
// span R^p), so a plain Cholesky is not enough here.
struct SymmetricPseudoInverse {
    std::size_t n = 0;
    std::vector<double> eig;
    std::vector<double> q;  // row-major, eigenvectors in columns

    void factor(std::span<const double> a, std::size_t dim) {
        n = dim;
        eig = jacobi_eigensystem(a, n, q);
        double lmax = std::max(eig.back(), 0.0);
        double cutoff = lmax * 1e-12;
        for (auto& l : eig) l = l > cutoff ? 1.0 / l : 0.0;
    }

    void solve(std::span<const double> b, std::vector<double>& x) const {
        std::vector<double> proj(n, 0.0);
        for (std::size_t c = 0; c < n; ++c) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q[i * n + c] * b[i];
            proj[c] = dot * eig[c];
        }
        x.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t c = 0; c < n; ++c) sum += q[i * n + c] * proj[c];
            x[i] = sum;
        }
    }
};

}  // namespace

GramSubmatrix gram_submatrix(const CompactSensingMatrix& sm,
                             std::span<const std::uint64_t> indices) {
    GramSubmatrix g;
    g.indices.assign(indices.begin(), indices.end());
    std::sort(g.indices.begin(), g.indices.end());
    const std::size_t s = g.indices.size();
    std::vector<Codeword> words;
    words.reserve(s);
    for (std::uint64_t j : g.indices) words.push_back(sm.codeword(j));
    g.gram.assign(s * s, 0.0);
    for (std::size_t i = 0; i < s; ++i) {
        g.gram[i * s + i] = 1.0;
        for (std::size_t j = i + 1; j < s; ++j) {
            double v = inner_product_via_distance(hamming_distance(words[i], words[j]), sm.p());
            g.gram[i * s + j] = v;
            g.gram[j * s + i] = v;
        }
    }
    return g;
}

RipConstant exact_rip_constant_serial(const CompactSensingMatrix& sm, std::size_t order,
                                      bool allow_large) {
    if (order < 1 || order > sm.m()) throw DomainError("RIP order outside [1, m]");
    if (order > 32) throw TooLarge("RIP order beyond 32 not supported by the Jacobi path");
    BigInt subsets = binomial(static_cast<std::int64_t>(sm.m()), static_cast<std::int64_t>(order));
    if (!allow_large && subsets > kSubsetScanGuard)
        throw TooLarge("C(m, order) = " + subsets.str() + " exceeds the subset-scan guard");

    std::vector<Codeword> words = materialize_codewords(sm);
    RipConstant best;
    best.order = order;
    best.delta = -1.0;
    std::vector<std::uint64_t> idx(order);
    for (std::size_t i = 0; i < order; ++i) idx[i] = i;
    std::vector<double> scratch;
    do {
        double d = subset_delta(words, idx, sm.p(), scratch);
        if (d > best.delta) {
            best.delta = d;
            best.witness = idx;
        }
    } while (next_combination(idx, sm.m()));
    for (auto& w : best.witness) ++w;  // report 1-based
    return best;
}

RipConstant exact_rip_constant(const CompactSensingMatrix& sm, std::size_t order,
                               bool allow_large) {
    if (order < 1 || order > sm.m()) throw DomainError("RIP order outside [1, m]");
    if (order > 32) throw TooLarge("RIP order beyond 32 not supported by the Jacobi path");
    BigInt subsets = binomial(static_cast<std::int64_t>(sm.m()), static_cast<std::int64_t>(order));
    if (!allow_large && subsets > kSubsetScanGuard)
        throw TooLarge("C(m, order) = " + subsets.str() + " exceeds the subset-scan guard");

    std::vector<Codeword> words = materialize_codewords(sm);
    const std::uint64_t m = sm.m();
    const std::uint64_t first_max = m - order + 1;
    // Per-first-index extrema merged in ascending order: ties keep the
    // lexicographically first witness, matching the serial scan.
    std::vector<RipConstant> per_first(first_max);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t f = 0; f < static_cast<std::int64_t>(first_max); ++f) {
        RipConstant local;
        local.order = order;
        local.delta = -1.0;
        std::vector<std::uint64_t> idx(order);
        idx[0] = static_cast<std::uint64_t>(f);
        for (std::size_t i = 1; i < order; ++i) idx[i] = idx[i - 1] + 1;
        std::vector<double> scratch;
        bool more = true;
        while (more) {
            double d = subset_delta(words, idx, sm.p(), scratch);
            if (d > local.delta) {
                local.delta = d;
                local.witness = idx;
            }
            // advance within the fixed first element
            more = false;
            for (std::size_t i = order; i-- > 1;) {
                if (idx[i] < m - (order - i)) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < order; ++j) idx[j] = idx[j - 1] + 1;
                    more = true;
                    break;
                }
            }
        }
        per_first[static_cast<std::size_t>(f)] = std::move(local);
    }
    RipConstant best;
    best.order = order;
    best.delta = -1.0;
    for (auto& cand : per_first) {
        if (cand.delta > best.delta) {
            best.delta = cand.delta;
            best.witness = std::move(cand.witness);
        }
    }
    for (auto& w : best.witness) ++w;
    return best;
}

double exact_incoherence(const CompactSensingMatrix& sm, bool allow_large) {
    if (!allow_large && sm.m() > (std::uint64_t{1} << 16))
        throw TooLarge("pair scan over m > 2^16 columns needs allow_large");
    std::vector<Codeword> words = materialize_codewords(sm);
    return static_cast<double>(max_abs_correlation_numerator(words, sm.p())) /
           static_cast<double>(sm.p());
}

double exact_incoherence(const BinaryMatrix& g, bool allow_large) {
    const std::size_t k = g.rows();
    if (k >= 63) throw TooLarge("code too large to enumerate");
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    if (!allow_large && m > (std::uint64_t{1} << 16))
        throw TooLarge("pair scan over 2^k - 1 > 2^16 codewords needs allow_large");
    std::vector<Codeword> words = enumerate_codewords(g, m);
    return static_cast<double>(max_abs_correlation_numerator(words, g.cols())) /
           static_cast<double>(g.cols());
}

RecoveryProblem make_recovery_problem(const CompactSensingMatrix& sm,
                                      std::span<const double> sparse_signal,
                                      SolverSettings settings) {
    if (sparse_signal.size() != sm.m())
        throw DimensionMismatch("sparse signal must have length m");
    RecoveryProblem prob{sm, {sparse_signal.begin(), sparse_signal.end()}, {}, settings};
    prob.measurement = sm.matvec(sparse_signal);
    return prob;
}

BasisPursuitResult basis_pursuit(const RecoveryProblem& prob) {
    const auto& sm = prob.sensing;
    if (prob.measurement.size() != sm.p())
        throw DimensionMismatch("measurement must have length p");
    if (prob.settings.feasibility_tol <= 0 || prob.settings.optimality_tol <= 0 ||
        prob.settings.max_iterations == 0)
        throw DomainError("solver settings must be positive");

    DenseMatrix a = dense_of(sm);
    const std::size_t p = a.p;
    const std::uint64_t m = a.m;
    const std::span<const double> s(prob.measurement);

    std::vector<double> aat(p * p, 0.0);
    for (std::uint64_t j = 0; j < m; ++j) {
        const double* c = a.col(j);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t l = 0; l <= i; ++l) aat[i * p + l] += c[i] * c[l];
    }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t l = i + 1; l < p; ++l) aat[i * p + l] = aat[l * p + i];
    SymmetricPseudoInverse pinv;
    pinv.factor(aat, p);

    auto apply_a = [&](std::span<const double> v, std::vector<double>& out) {
        out.assign(p, 0.0);
        for (std::uint64_t j = 0; j < m; ++j) {
            double vj = v[j];
            if (vj == 0.0) continue;
            const double* c = a.col(j);
            for (std::size_t i = 0; i < p; ++i) out[i] += c[i] * vj;
        }
    };
    auto apply_at_sub = [&](std::span<const double> w, std::vector<double>& v) {
        for (std::uint64_t j = 0; j < m; ++j) {
            const double* c = a.col(j);
            double dot = 0.0;
            for (std::size_t i = 0; i < p; ++i) dot += c[i] * w[i];
            v[j] -= dot;
        }
    };
    // projection onto {x : A x = s}: v - A^T (A A^T)^-1 (A v - s)
    std::vector<double> av, wsol;
    auto project = [&](std::vector<double>& v) {
        apply_a(v, av);
        for (std::size_t i = 0; i < p; ++i) av[i] -= s[i];
        pinv.solve(av, wsol);
        apply_at_sub(wsol, v);
    };

    const double rho = 1.0;
    std::vector<double> x(m, 0.0), z(m, 0.0), u(m, 0.0), v(m, 0.0);
    SolveStatus status;
    for (std::size_t iter = 1; iter <= prob.settings.max_iterations; ++iter) {
        for (std::uint64_t j = 0; j < m; ++j) v[j] = z[j] - u[j];
        project(v);
        x = v;
        double dual = 0.0;
        for (std::uint64_t j = 0; j < m; ++j) {
            double t = x[j] + u[j];
            double zj = t > 1.0 / rho ? t - 1.0 / rho : (t < -1.0 / rho ? t + 1.0 / rho : 0.0);
            dual += (zj - z[j]) * (zj - z[j]);
            z[j] = zj;
            u[j] += x[j] - zj;
        }
        double primal = 0.0;
        for (std::uint64_t j = 0; j < m; ++j) primal += (x[j] - z[j]) * (x[j] - z[j]);
        primal = std::sqrt(primal);
        dual = rho * std::sqrt(dual);
        status.iterations = iter;
        double scale = std::max(1.0, norm2(x));
        if (primal <= prob.settings.optimality_tol * scale &&
            dual <= prob.settings.optimality_tol * scale) {
            status.converged = true;
            break;
        }
    }
    status.splitting_residual = 0.0;
    for (std::uint64_t j = 0; j < m; ++j)
        status.splitting_residual += (x[j] - z[j]) * (x[j] - z[j]);
    status.splitting_residual = std::sqrt(status.splitting_residual);
    apply_a(x, av);
    double feas = 0.0;
    for (std::size_t i = 0; i < p; ++i) feas += (av[i] - s[i]) * (av[i] - s[i]);
    status.feasibility_residual = std::sqrt(feas);
    return BasisPursuitResult{std::move(x), status};
}

std::vector<double> exhaustive_sparse_oracle(const RecoveryProblem& prob, std::size_t s_max) {
    const auto& sm = prob.sensing;
    if (prob.measurement.size() != sm.p())
        throw DimensionMismatch("measurement must have length p");
    if (s_max > 32) throw TooLarge("oracle supports sparsity at most 32");
    BigInt subsets = binomial(static_cast<std::int64_t>(sm.m()), static_cast<std::int64_t>(s_max));
    if (subsets > 1'000'000) throw TooLarge("C(m, S) exceeds the oracle guard of 10^6");

    const std::size_t p = sm.p();
    const std::uint64_t m = sm.m();
    DenseMatrix a = dense_of(sm);
    const std::span<const double> s(prob.measurement);
    constexpr double kResidualTol = 1e-8;

    if (norm2(s) <= kResidualTol) return std::vector<double>(m, 0.0);

    std::vector<double> gram, rhs, coef, x;
    for (std::size_t t = 1; t <= s_max; ++t) {
        std::vector<std::uint64_t> idx(t);
        for (std::size_t i = 0; i < t; ++i) idx[i] = i;
        do {
            gram.assign(t * t, 0.0);
            rhs.assign(t, 0.0);
            for (std::size_t i = 0; i < t; ++i) {
                const double* ci = a.col(idx[i]);
                for (std::size_t j = i; j < t; ++j) {
                    const double* cj = a.col(idx[j]);
                    double dot = 0.0;
                    for (std::size_t l = 0; l < p; ++l) dot += ci[l] * cj[l];
                    gram[i * t + j] = dot;
                    gram[j * t + i] = dot;
                }
                double dot = 0.0;
                for (std::size_t l = 0; l < p; ++l) dot += ci[l] * s[l];
                rhs[i] = dot;
            }
            if (!cholesky_solve(gram, t, rhs, coef)) continue;  // dependent columns
            double res = 0.0;
            for (std::size_t l = 0; l < p; ++l) {
                double fit = 0.0;
                for (std::size_t i = 0; i < t; ++i) fit += a.col(idx[i])[l] * coef[i];
                double d = fit - s[l];
                res += d * d;
            }
            if (std::sqrt(res) <= kResidualTol) {
                x.assign(m, 0.0);
                for (std::size_t i = 0; i < t; ++i) x[idx[i]] = coef[i];
                return x;
            }
        } while (next_combination(idx, m));
    }
    throw NoSparseSolution("no support of size <= " + std::to_string(s_max) +
                           " fits the measurement");
}

nlohmann::json RipConstant::to_json() const {
    nlohmann::json j;
    j["order"] = order;
    j["delta"] = delta;
    j["witness"] = witness;
    j["method"] = "exhaustive";
    return j;
}

}  // namespace codesense
