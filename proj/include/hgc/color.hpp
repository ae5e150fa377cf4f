#ifndef HGC_COLOR_HPP
#define HGC_COLOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hgc/hypergraph.hpp"
#include "hgc/rng.hpp"
#include "hgc/spectral.hpp"

namespace hgc {

struct PartitionState {
    std::vector<int> part_of;  // part id in [0, k-1] per vertex (0-based index)
    int k = 2;
    int iteration = 0;

    std::vector<std::size_t> part_sizes() const {
        std::vector<std::size_t> s(static_cast<std::size_t>(k), 0);
        for (int p : part_of) ++s[static_cast<std::size_t>(p)];
        return s;
    }
};

// Step 3 of the coloring pipeline: x_i >= 0 goes to the first part
// (boundary included), the rest to the second.
inline PartitionState initial_partition(const std::vector<double>& x) {
    PartitionState s;
    s.k = 2;
    s.part_of.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s.part_of[i] = x[i] >= 0.0 ? 0 : 1;
    return s;
}

namespace detail {

// attach[i][l] = sum over j != i in part l of A_ij, for all i simultaneously.
inline std::vector<double> attachments(const WeightedAdjacency& a, const PartitionState& s) {
    const int dim = a.dim();
    const int k = s.k;
    std::vector<double> att(static_cast<std::size_t>(dim) * k, 0.0);
    if (a.has_dense()) {
        for (int i = 0; i < dim; ++i) {
            double* row_att = att.data() + static_cast<std::size_t>(i) * k;
            for (int j = 0; j < dim; ++j) {
                if (j == i) continue;  // A_ii never enters refine sums
                row_att[s.part_of[static_cast<std::size_t>(j)]] += a.entry(i, j);
            }
        }
    } else {
        std::vector<int> cnt(static_cast<std::size_t>(k));
        for (const Edge& e : a.edges()) {
            std::fill(cnt.begin(), cnt.end(), 0);
            for (int v : e) ++cnt[static_cast<std::size_t>(s.part_of[static_cast<std::size_t>(v - 1)])];
            const double w = 1.0 / static_cast<double>(e.size());
            for (int v : e) {
                const int i = v - 1;
                double* row_att = att.data() + static_cast<std::size_t>(i) * k;
                for (int l = 0; l < k; ++l) {
                    int c = cnt[static_cast<std::size_t>(l)];
                    if (l == s.part_of[static_cast<std::size_t>(i)]) --c;
                    row_att[l] += w * c;
                }
            }
        }
    }
    return att;
}

}  // namespace detail

// One simultaneous refinement sweep: parts 0..k-2 collect the vertices whose
// attachment to that part is strictly smaller than to every other part; the
// last part takes the complement (ties land there).
inline PartitionState refine_step(const WeightedAdjacency& a, const PartitionState& s) {
    const int dim = a.dim();
    if (static_cast<int>(s.part_of.size()) != dim)
        throw std::invalid_argument("refine_step: state/matrix dimension mismatch");
    const std::vector<double> att = detail::attachments(a, s);
    PartitionState next;
    next.k = s.k;
    next.iteration = s.iteration + 1;
    next.part_of.resize(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        const double* row = att.data() + static_cast<std::size_t>(i) * s.k;
        int dest = s.k - 1;
        for (int l = 0; l < s.k - 1; ++l) {
            bool strict_min = true;
            for (int l2 = 0; l2 < s.k; ++l2) {
                if (l2 == l) continue;
                if (!(row[l] < row[l2])) { strict_min = false; break; }
            }
            if (strict_min) { dest = l; break; }
        }
        next.part_of[static_cast<std::size_t>(i)] = dest;
    }
    return next;
}

enum class ColorStatus { Success, Fail, EigenNonConvergence };

struct ColorOutcome {
    ColorStatus status = ColorStatus::Fail;
    Coloring coloring;
    bool proper = false;
    std::vector<std::size_t> witness_edges;      // monochromatic edges on Fail
    std::vector<PartitionState> trajectory;      // states for t = 0..T
};

namespace detail {

inline int iteration_count(int num_vertices, int k) {
    // T = ceil(log2 n) with n the per-class size, ceil(|V|/k) for inputs
    // that do not split evenly.
    const int n = (num_vertices + k - 1) / k;
    int t = 0;
    while ((1 << t) < n) ++t;
    return t;
}

inline ColorOutcome finish(const Hypergraph& h, const PartitionState& final_state,
                           std::vector<PartitionState> trajectory, bool eig_converged) {
    ColorOutcome out;
    out.coloring.k = final_state.k;
    out.coloring.colors = final_state.part_of;
    out.trajectory = std::move(trajectory);
    const ProperVerdict verdict = verify_proper(h, out.coloring);
    out.proper = verdict.proper;
    out.witness_edges = verdict.monochromatic_edges;
    if (!eig_converged) out.status = ColorStatus::EigenNonConvergence;
    else out.status = verdict.proper ? ColorStatus::Success : ColorStatus::Fail;
    return out;
}

}  // namespace detail

// The 2-coloring pipeline: weighted adjacency, smallest eigenvector, sign
// partition, ceil(log2 n) refinement sweeps, then a proper-coloring check.
// Eigensolver non-convergence is flagged but the pipeline still runs on the
// best iterate; the final check owns correctness.
inline ColorOutcome color2(const Hypergraph& h, double tol = 1e-8, int max_iter = -1) {
    check_canonical(h);
    if (h.num_vertices == 0) {
        ColorOutcome out;
        out.status = ColorStatus::Success;
        out.proper = true;
        out.coloring.k = 2;
        return out;
    }
    const WeightedAdjacency a = build_matrix(h);
    const EigenResult eig = smallest_eigenpair(a, tol, max_iter);
    PartitionState s = initial_partition(eig.vector);
    std::vector<PartitionState> traj{s};
    const int t_max = detail::iteration_count(h.num_vertices, 2);
    for (int t = 0; t < t_max; ++t) {
        s = refine_step(a, s);
        traj.push_back(s);
    }
    return detail::finish(h, s, std::move(traj), eig.converged);
}

// Lloyd k-means with careful (k-means++-style) seeding, best of `restarts`
// by within-cluster sum of squares. rows is row-major num_rows x dims.
inline std::vector<int> kmeans(const std::vector<double>& rows, std::size_t num_rows,
                               std::size_t dims, int k, std::uint64_t seed,
                               int restarts = 10, int max_iter = 200) {
    if (k < 1 || static_cast<std::size_t>(k) > std::max<std::size_t>(num_rows, 1))
        throw std::invalid_argument("kmeans: bad k");
    auto row = [&](std::size_t r) { return rows.data() + r * dims; };
    auto dist2 = [&](const double* a, const double* b) {
        double s = 0.0;
        for (std::size_t d = 0; d < dims; ++d) { const double t = a[d] - b[d]; s += t * t; }
        return s;
    };

    std::vector<int> best_assign(num_rows, 0);
    double best_wcss = std::numeric_limits<double>::infinity();
    for (int rs = 0; rs < restarts; ++rs) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rs), 0xC1));
        // k-means++ seeding
        std::vector<double> centers(static_cast<std::size_t>(k) * dims, 0.0);
        std::vector<double> d2(num_rows, std::numeric_limits<double>::infinity());
        std::size_t first = rng.uniform_int(num_rows);
        std::copy(row(first), row(first) + dims, centers.begin());
        for (int c = 1; c < k; ++c) {
            double total = 0.0;
            for (std::size_t r = 0; r < num_rows; ++r) {
                d2[r] = std::min(d2[r], dist2(row(r), centers.data() + static_cast<std::size_t>(c - 1) * dims));
                total += d2[r];
            }
            std::size_t pick;
            if (total <= 0.0) {
                pick = rng.uniform_int(num_rows);
            } else {
                double target = rng.uniform() * total, acc = 0.0;
                pick = num_rows - 1;
                for (std::size_t r = 0; r < num_rows; ++r) {
                    acc += d2[r];
                    if (acc >= target) { pick = r; break; }
                }
            }
            std::copy(row(pick), row(pick) + dims,
                      centers.begin() + static_cast<std::size_t>(c) * dims);
        }

        std::vector<int> assign(num_rows, 0);
        double wcss = std::numeric_limits<double>::infinity();
        for (int it = 0; it < max_iter; ++it) {
            double new_wcss = 0.0;
            for (std::size_t r = 0; r < num_rows; ++r) {
                int arg = 0;
                double bd = std::numeric_limits<double>::infinity();
                for (int c = 0; c < k; ++c) {
                    const double d = dist2(row(r), centers.data() + static_cast<std::size_t>(c) * dims);
                    if (d < bd) { bd = d; arg = c; }
                }
                assign[r] = arg;
                new_wcss += bd;
            }
            std::vector<double> sums(static_cast<std::size_t>(k) * dims, 0.0);
            std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
            for (std::size_t r = 0; r < num_rows; ++r) {
                ++counts[static_cast<std::size_t>(assign[r])];
                for (std::size_t d = 0; d < dims; ++d)
                    sums[static_cast<std::size_t>(assign[r]) * dims + d] += row(r)[d];
            }
            for (int c = 0; c < k; ++c) {
                if (counts[static_cast<std::size_t>(c)] == 0) {
                    // empty cluster: re-seed the centroid on the farthest row
                    std::size_t far = 0;
                    double fd = -1.0;
                    for (std::size_t r = 0; r < num_rows; ++r) {
                        const double d = dist2(row(r), centers.data() +
                                                           static_cast<std::size_t>(assign[r]) * dims);
                        if (d > fd) { fd = d; far = r; }
                    }
                    std::copy(row(far), row(far) + dims,
                              centers.begin() + static_cast<std::size_t>(c) * dims);
                } else {
                    for (std::size_t d = 0; d < dims; ++d)
                        centers[static_cast<std::size_t>(c) * dims + d] =
                            sums[static_cast<std::size_t>(c) * dims + d] /
                            static_cast<double>(counts[static_cast<std::size_t>(c)]);
                }
            }
            if (new_wcss >= wcss * (1.0 - 1e-9)) { wcss = std::min(wcss, new_wcss); break; }
            wcss = new_wcss;
        }
        if (wcss < best_wcss) {
            best_wcss = wcss;
            best_assign = assign;
        }
    }
    return best_assign;
}

// k-coloring extension: rows of the (k-1) smallest-eigenvector matrix are
// clustered by k-means to seed the partition, then refined as in color2.
inline ColorOutcome colorK(const Hypergraph& h, int k, double tol = 1e-8, int max_iter = -1) {
    check_canonical(h);
    if (k < 2) throw std::invalid_argument("colorK: k must be >= 2");
    if (h.num_vertices == 0) {
        ColorOutcome out;
        out.status = ColorStatus::Success;
        out.proper = true;
        out.coloring.k = k;
        return out;
    }
    if (k > h.num_vertices) throw std::invalid_argument("colorK: k exceeds vertex count");
    const WeightedAdjacency a = build_matrix(h);
    const int dim = h.num_vertices;
    const int count = std::min(k - 1, dim - 1);
    const std::vector<EigenResult> eigs = k_smallest_eigenvectors(a, count, tol, max_iter);
    bool converged = true;
    std::vector<double> rows(static_cast<std::size_t>(dim) * count);
    for (int c = 0; c < count; ++c) {
        converged = converged && eigs[static_cast<std::size_t>(c)].converged;
        for (int i = 0; i < dim; ++i)
            rows[static_cast<std::size_t>(i) * count + c] =
                eigs[static_cast<std::size_t>(c)].vector[static_cast<std::size_t>(i)];
    }
    PartitionState s;
    s.k = k;
    s.part_of = kmeans(rows, static_cast<std::size_t>(dim), static_cast<std::size_t>(count), k,
                       detail::kEigenStartSeed);
    std::vector<PartitionState> traj{s};
    const int t_max = detail::iteration_count(dim, k);
    for (int t = 0; t < t_max; ++t) {
        s = refine_step(a, s);
        traj.push_back(s);
    }
    return detail::finish(h, s, std::move(traj), converged);
}

}  // namespace hgc

#endif
