#ifndef HGC_SPECTRAL_HPP
#define HGC_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hgc/hypergraph.hpp"
#include "hgc/planted.hpp"
#include "hgc/rng.hpp"

namespace hgc {

// Weighted adjacency of a hypergraph: A_ij = sum over edges containing both
// i and j of 1/|e| (diagonal sums over edges containing i). Dense storage up
// to kDenseLimit vertices; larger matrices keep only the edge list and do
// matrix-vector products by streaming edges.
class WeightedAdjacency {
public:
    static constexpr int kDenseLimit = 4096;

    static WeightedAdjacency from_entries(int dim, std::vector<double> entries) {
        if (static_cast<std::size_t>(dim) * dim != entries.size())
            throw std::invalid_argument("from_entries: size mismatch");
        WeightedAdjacency a;
        a.dim_ = dim;
        a.dense_ = std::move(entries);
        return a;
    }

    static WeightedAdjacency from_hypergraph(const Hypergraph& h) {
        WeightedAdjacency a;
        a.dim_ = h.num_vertices;
        a.edges_ = h.edges;
        if (a.dim_ <= kDenseLimit) {
            a.dense_.assign(static_cast<std::size_t>(a.dim_) * a.dim_, 0.0);
            for (const Edge& e : a.edges_) {
                const double w = 1.0 / static_cast<double>(e.size());
                for (int u : e)
                    for (int v : e)
                        a.dense_[static_cast<std::size_t>(u - 1) * a.dim_ + (v - 1)] += w;
            }
            // The double loop above also fills the diagonal: each edge
            // containing i contributes 1/|e| to A_ii, as required.
        }
        return a;
    }

    int dim() const { return dim_; }
    bool has_dense() const { return !dense_.empty(); }
    const std::vector<Edge>& edges() const { return edges_; }

    double entry(int i, int j) const {  // 0-based
        if (!has_dense()) throw std::logic_error("entry(): matrix is edge-backed");
        return dense_[static_cast<std::size_t>(i) * dim_ + j];
    }

    // y = A x, deterministic summation order.
    void matvec(const std::vector<double>& x, std::vector<double>& y) const {
        y.assign(static_cast<std::size_t>(dim_), 0.0);
        if (has_dense()) {
            for (int i = 0; i < dim_; ++i) {
                const double* row = dense_.data() + static_cast<std::size_t>(i) * dim_;
                double s = 0.0;
                for (int j = 0; j < dim_; ++j) s += row[j] * x[static_cast<std::size_t>(j)];
                y[static_cast<std::size_t>(i)] = s;
            }
        } else {
            // (Ax)_i = sum over edges e containing i of (1/|e|) * sum_{j in e} x_j
            for (const Edge& e : edges_) {
                double s = 0.0;
                for (int v : e) s += x[static_cast<std::size_t>(v - 1)];
                s /= static_cast<double>(e.size());
                for (int v : e) y[static_cast<std::size_t>(v - 1)] += s;
            }
        }
    }

    // max_i sum_j |A_ij|
    double inf_norm() const {
        if (has_dense()) {
            double best = 0.0;
            for (int i = 0; i < dim_; ++i) {
                double s = 0.0;
                for (int j = 0; j < dim_; ++j)
                    s += std::abs(dense_[static_cast<std::size_t>(i) * dim_ + j]);
                best = std::max(best, s);
            }
            return best;
        }
        // entries nonnegative, row sum = number of edges containing i
        std::vector<double> deg(static_cast<std::size_t>(dim_), 0.0);
        for (const Edge& e : edges_)
            for (int v : e) deg[static_cast<std::size_t>(v - 1)] += 1.0;
        double best = 0.0;
        for (double d : deg) best = std::max(best, d);
        return best;
    }

private:
    int dim_ = 0;
    std::vector<double> dense_;
    std::vector<Edge> edges_;
};

inline WeightedAdjacency build_matrix(const Hypergraph& h) {
    return WeightedAdjacency::from_hypergraph(h);
}

// Analytic expectation of A under the planted 2-class model, together with
// the closed-form scalars alpha1, alpha2, alpha3 and the refinement
// threshold eta. The expected matrix is
//   alpha1 * J - alpha2 * blockdiag(J_n, J_n) + alpha3 * I.
// Its smallest eigenvalue is alpha3 - n*alpha2, simple, with eigen-gap
// n*alpha2 to the rest.
struct ModelMoments {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    double eta = 0.0;
    WeightedAdjacency expected;
};

inline ModelMoments moments(const PlantedParams& params) {
    validate(params);
    if (params.k != 2)
        throw std::invalid_argument("moments: expected matrix is defined for k = 2 only");
    const int n = params.n;
    ModelMoments mm;
    for (int m = 2; m <= params.M; ++m) {
        const double pm = params.p[static_cast<std::size_t>(m)];
        if (pm == 0.0) continue;
        mm.alpha1 += pm / m * binom(2L * n - 2, m - 2);
        mm.alpha2 += pm / m * binom(n - 2, m - 2);
        mm.alpha3 += pm / m * (binom(2L * n - 2, m - 1) - binom(n - 2, m - 1));
        mm.eta += pm * (n - 1) / m * binom(n - 2, m - 2);
    }
    mm.eta /= std::pow(2.0, params.M + 2);
    const int dim = 2 * n;
    std::vector<double> entries(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            double v;
            if (i == j) v = mm.alpha1 - mm.alpha2 + mm.alpha3;
            else if (i / n == j / n) v = mm.alpha1 - mm.alpha2;
            else v = mm.alpha1;
            entries[static_cast<std::size_t>(i) * dim + j] = v;
        }
    }
    mm.expected = WeightedAdjacency::from_entries(dim, std::move(entries));
    return mm;
}

struct EigenResult {
    double value = 0.0;
    std::vector<double> vector;
    bool converged = false;
    int iterations = 0;
};

namespace detail {

constexpr std::uint64_t kEigenStartSeed = 0x5eedf00d2c0105ULL;

inline int default_max_iter(int dim) {
    return static_cast<int>(10.0 * dim * std::log(std::max(2.0, static_cast<double>(dim)))) + 1000;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Largest-magnitude coordinate positive; ties break to the lowest index.
inline void fix_sign(std::vector<double>& x) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (std::abs(x[i]) > std::abs(x[best])) best = i;
    if (x[best] < 0.0)
        for (double& v : x) v = -v;
}

// Cyclic Jacobi eigendecomposition of a small symmetric matrix (row-major).
// Returns eigenvalues ascending; columns of q are the eigenvectors.
inline void jacobi_eigen(int k, std::vector<double> h, std::vector<double>& vals,
                         std::vector<double>& q) {
    q.assign(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) q[static_cast<std::size_t>(i) * k + i] = 1.0;
    auto at = [&](std::vector<double>& m, int i, int j) -> double& {
        return m[static_cast<std::size_t>(i) * k + j];
    };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) off += h[static_cast<std::size_t>(i) * k + j] *
                                                   h[static_cast<std::size_t>(i) * k + j];
        if (off < 1e-28) break;
        for (int p = 0; p < k; ++p) {
            for (int r = p + 1; r < k; ++r) {
                const double apr = at(h, p, r);
                if (std::abs(apr) < 1e-300) continue;
                const double theta = (at(h, r, r) - at(h, p, p)) / (2.0 * apr);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < k; ++i) {
                    const double hip = at(h, i, p), hir = at(h, i, r);
                    at(h, i, p) = c * hip - s * hir;
                    at(h, i, r) = s * hip + c * hir;
                }
                for (int i = 0; i < k; ++i) {
                    const double hpi = at(h, p, i), hri = at(h, r, i);
                    at(h, p, i) = c * hpi - s * hri;
                    at(h, r, i) = s * hpi + c * hri;
                }
                for (int i = 0; i < k; ++i) {
                    const double qip = at(q, i, p), qir = at(q, i, r);
                    at(q, i, p) = c * qip - s * qir;
                    at(q, i, r) = s * qip + c * qir;
                }
            }
        }
    }
    vals.resize(static_cast<std::size_t>(k));
    std::vector<int> order(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return h[static_cast<std::size_t>(a) * k + a] < h[static_cast<std::size_t>(b) * k + b];
    });
    std::vector<double> q2(q.size());
    for (int c = 0; c < k; ++c) {
        const int src = order[static_cast<std::size_t>(c)];
        vals[static_cast<std::size_t>(c)] = h[static_cast<std::size_t>(src) * k + src];
        for (int i = 0; i < k; ++i)
            q2[static_cast<std::size_t>(i) * k + c] = q[static_cast<std::size_t>(i) * k + src];
    }
    q = std::move(q2);
}

inline void orthonormalize(std::vector<std::vector<double>>& cols) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            const double proj = dot(cols[c], cols[p]);
            for (std::size_t i = 0; i < cols[c].size(); ++i) cols[c][i] -= proj * cols[p][i];
        }
        const double nrm = norm2(cols[c]);
        if (nrm < 1e-300) continue;  // degenerate column, left as-is
        for (double& v : cols[c]) v /= nrm;
    }
}

}  // namespace detail

// The `count` smallest eigenpairs of a symmetric A by orthogonal iteration
// on the Gershgorin-shifted operator sigma*I - A (sigma = 1 + max row sum),
// with Rayleigh-Ritz extraction. Deterministic start vectors. On hitting
// max_iter the best iterates are returned with converged = false.
inline std::vector<EigenResult> k_smallest_eigenvectors(const WeightedAdjacency& a, int count,
                                                        double tol = 1e-8, int max_iter = -1) {
    const int dim = a.dim();
    if (count < 1 || count >= std::max(dim, 2))
        throw std::invalid_argument("k_smallest_eigenvectors: need 1 <= count < dim");
    if (tol <= 0.0) throw std::invalid_argument("k_smallest_eigenvectors: tol must be > 0");
    if (max_iter < 0) max_iter = detail::default_max_iter(dim);
    const double inf_norm = a.inf_norm();
    const double sigma = 1.0 + inf_norm;
    const double res_limit = tol * std::max(1.0, inf_norm);

    Rng rng(detail::kEigenStartSeed);
    std::vector<std::vector<double>> x(static_cast<std::size_t>(count));
    for (auto& col : x) {
        col.resize(static_cast<std::size_t>(dim));
        for (double& v : col) v = 2.0 * rng.uniform() - 1.0;
    }
    detail::orthonormalize(x);

    std::vector<EigenResult> result(static_cast<std::size_t>(count));
    std::vector<double> tmp;
    auto apply_shifted = [&](const std::vector<double>& in, std::vector<double>& out) {
        a.matvec(in, out);
        for (int i = 0; i < dim; ++i)
            out[static_cast<std::size_t>(i)] = sigma * in[static_cast<std::size_t>(i)] -
                                               out[static_cast<std::size_t>(i)];
    };

    auto ritz = [&](int iters_done) -> bool {
        // H = X^T A X, small symmetric
        std::vector<std::vector<double>> ax(static_cast<std::size_t>(count));
        for (int c = 0; c < count; ++c) a.matvec(x[static_cast<std::size_t>(c)], ax[static_cast<std::size_t>(c)]);
        std::vector<double> h(static_cast<std::size_t>(count) * count);
        for (int r = 0; r < count; ++r)
            for (int c = 0; c < count; ++c)
                h[static_cast<std::size_t>(r) * count + c] =
                    detail::dot(x[static_cast<std::size_t>(r)], ax[static_cast<std::size_t>(c)]);
        std::vector<double> vals, q;
        detail::jacobi_eigen(count, h, vals, q);
        bool all_ok = true;
        for (int c = 0; c < count; ++c) {
            std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
            for (int r = 0; r < count; ++r) {
                const double w = q[static_cast<std::size_t>(r) * count + c];
                for (int i = 0; i < dim; ++i)
                    v[static_cast<std::size_t>(i)] += w * x[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
            }
            const double nrm = detail::norm2(v);
            if (nrm > 0) for (double& e : v) e /= nrm;
            a.matvec(v, tmp);
            const double lambda = detail::dot(v, tmp);
            double res = 0.0;
            for (int i = 0; i < dim; ++i) {
                const double r2 = tmp[static_cast<std::size_t>(i)] - lambda * v[static_cast<std::size_t>(i)];
                res += r2 * r2;
            }
            res = std::sqrt(res);
            detail::fix_sign(v);
            auto& slot = result[static_cast<std::size_t>(c)];
            slot.value = lambda;
            slot.vector = std::move(v);
            slot.converged = res <= res_limit;
            slot.iterations = iters_done;
            all_ok = all_ok && slot.converged;
        }
        return all_ok;
    };

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        for (int c = 0; c < count; ++c) {
            apply_shifted(x[static_cast<std::size_t>(c)], tmp);
            x[static_cast<std::size_t>(c)].swap(tmp);
        }
        detail::orthonormalize(x);
        if ((iter + 1) % 8 == 0 && ritz(iter + 1)) return result;
    }
    ritz(iter);
    return result;
}

// arg min over unit x of x^T A x, with the minimum eigenvalue.
inline EigenResult smallest_eigenpair(const WeightedAdjacency& a, double tol = 1e-8,
                                      int max_iter = -1) {
    if (a.dim() == 1) {
        EigenResult r;
        r.value = a.has_dense() ? a.entry(0, 0) : 0.0;
        r.vector = {1.0};
        r.converged = true;
        return r;
    }
    return k_smallest_eigenvectors(a, 1, tol, max_iter)[0];
}

// Spectral-norm deviation of a sampled A from its expectation, against the
// concentration threshold 4*sqrt(n*alpha1*ln n). Diagnostic only.
struct DeviationDiagnostic {
    double spectral_norm_dev = 0.0;
    double bernstein_bound = 0.0;
    bool within_bound = true;
};

inline DeviationDiagnostic deviation_diagnostic(const WeightedAdjacency& a,
                                                const PlantedParams& params) {
    const ModelMoments mm = moments(params);
    const int dim = a.dim();
    if (dim != mm.expected.dim())
        throw std::invalid_argument("deviation_diagnostic: dimension mismatch");
    DeviationDiagnostic out;
    out.bernstein_bound =
        4.0 * std::sqrt(params.n * mm.alpha1 * std::log(static_cast<double>(params.n)));

    // power iteration on D^2 where D = A - E[A]; ||D||_2 = sqrt(lambda_max(D^2))
    auto apply_d = [&](const std::vector<double>& in, std::vector<double>& out_v,
                       std::vector<double>& scratch) {
        a.matvec(in, out_v);
        mm.expected.matvec(in, scratch);
        for (int i = 0; i < dim; ++i) out_v[static_cast<std::size_t>(i)] -= scratch[static_cast<std::size_t>(i)];
    };
    Rng rng(detail::kEigenStartSeed);
    std::vector<double> x(static_cast<std::size_t>(dim)), y, z, scratch;
    for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
    double nrm = detail::norm2(x);
    for (double& v : x) v /= nrm;
    double mu = 0.0;
    const int max_iter = detail::default_max_iter(dim);
    for (int iter = 0; iter < max_iter; ++iter) {
        apply_d(x, y, scratch);
        apply_d(y, z, scratch);  // z = D^2 x
        mu = detail::dot(x, z);
        double res = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double r = z[static_cast<std::size_t>(i)] - mu * x[static_cast<std::size_t>(i)];
            res += r * r;
        }
        if (std::sqrt(res) <= 1e-6 * std::max(1.0, mu)) break;
        nrm = detail::norm2(z);
        if (nrm < 1e-300) { mu = 0.0; break; }
        for (int i = 0; i < dim; ++i) x[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] / nrm;
    }
    out.spectral_norm_dev = std::sqrt(std::max(0.0, mu));
    out.within_bound = out.spectral_norm_dev <= out.bernstein_bound;
    return out;
}

}  // namespace hgc

#endif
