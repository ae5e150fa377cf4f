#ifndef HGC_EXPERIMENT_HPP
#define HGC_EXPERIMENT_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgc/color.hpp"
#include "hgc/hypergraph.hpp"
#include "hgc/planted.hpp"
#include "hgc/rng.hpp"

namespace hgc {

// Minimum-over-label-permutations Hamming distance between a partition and
// the planted coloring (the incorrectly-colored-vertex count). Exhaustive
// over the k! label matchings; k is a small constant here.
inline int mismatch_count(const std::vector<int>& part_of, const Coloring& planted) {
    if (part_of.size() != planted.colors.size())
        throw std::invalid_argument("mismatch_count: size mismatch");
    const int k = std::max(planted.k, 2);
    if (k > 8) throw std::invalid_argument("mismatch_count: k > 8 not supported");
    // agreement[a][b] = #vertices with part a and planted color b
    std::vector<std::vector<int>> agree(static_cast<std::size_t>(k),
                                        std::vector<int>(static_cast<std::size_t>(k), 0));
    for (std::size_t i = 0; i < part_of.size(); ++i) {
        const int a = part_of[i], b = planted.colors[i];
        if (a >= 0 && a < k) ++agree[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    int best = 0;
    for (auto& row : agree) for (int c : row) best += c;  // total vertices counted
    const int total = static_cast<int>(part_of.size());
    best = total;
    do {
        int agree_sum = 0;
        for (int a = 0; a < k; ++a)
            agree_sum += agree[static_cast<std::size_t>(a)][static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])];
        best = std::min(best, total - agree_sum);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct TrialRecord {
    PlantedParams params;
    double d = 0.0;
    std::string profile = "equal";
    int trial_index = 0;
    std::uint64_t derived_seed = 0;
    ColorStatus status = ColorStatus::Fail;
    bool proper = false;
    std::vector<int> mismatch_by_iteration;  // t = 0..T
    std::size_t edge_count = 0;
    double wall_ms = 0.0;
};

namespace detail {

inline std::uint64_t cell_signature(const PlantedParams& params) {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(params.n));
    h = mix64(h ^ static_cast<std::uint64_t>(params.k));
    h = mix64(h ^ static_cast<std::uint64_t>(params.M));
    for (int m = 2; m <= params.M; ++m) {
        std::uint64_t bits;
        const double pm = params.p[static_cast<std::size_t>(m)];
        static_assert(sizeof(bits) == sizeof(pm));
        std::memcpy(&bits, &pm, sizeof(bits));
        h = mix64(h ^ bits);
    }
    return h;
}

inline std::string status_name(ColorStatus s) {
    switch (s) {
        case ColorStatus::Success: return "success";
        case ColorStatus::Fail: return "fail";
        case ColorStatus::EigenNonConvergence: return "eig_nonconv";
    }
    return "?";
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

// One sample-color-verify run. The trial seed is derived from the master
// seed, the cell parameters and the trial index, so trials are reproducible
// independent of execution order.
inline TrialRecord run_trial(PlantedParams params, int trial_index, std::uint64_t master_seed) {
    validate(params);
    TrialRecord rec;
    rec.derived_seed = derive_seed(master_seed, detail::cell_signature(params),
                                   static_cast<std::uint64_t>(trial_index));
    params.seed = rec.derived_seed;
    rec.params = params;
    rec.trial_index = trial_index;
    if (params.n >= 2) rec.d = density_coefficient(params);

    const auto t0 = std::chrono::steady_clock::now();
    auto [h, planted] = sample(params);
    rec.edge_count = h.edges.size();
    const ColorOutcome outcome = params.k == 2 ? color2(h) : colorK(h, params.k);
    rec.status = outcome.status;
    rec.proper = outcome.proper;
    for (const PartitionState& s : outcome.trajectory)
        rec.mismatch_by_iteration.push_back(mismatch_count(s.part_of, planted));
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

struct SweepSpec {
    std::vector<int> n_list;
    int M = 2;
    int k = 2;
    std::vector<double> d_list;
    std::string profile = "equal";  // per-size weight profile name
    int trials = 1;
    std::uint64_t master_seed = 0;
};

struct CellResult {
    int n = 0;
    double d = 0.0;
    std::vector<TrialRecord> trials;
    int successes = 0;
    double success_rate = 0.0;
    double wilson_lo = 0.0, wilson_hi = 0.0;
    double mean_final_mismatch = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<CellResult> cells;
};

// 95% Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(int successes, int trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double nhat = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nhat;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nhat;
    const double center = (phat + z2 / (2.0 * nhat)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nhat + z2 / (4.0 * nhat * nhat)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

inline SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.n_list.empty() || spec.d_list.empty())
        throw std::invalid_argument("run_sweep: n and d lists must be nonempty");
    if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");
    SweepResult result;
    result.spec = spec;
    for (int n : spec.n_list) {
        for (double d : spec.d_list) {
            CellResult cell;
            cell.n = n;
            cell.d = d;
            PlantedParams params;
            params.n = n;
            params.k = spec.k;
            params.M = spec.M;
            params.p = probs_for_density(n, spec.M, d, profile_weights(spec.profile, spec.M),
                                         spec.k).p;
            for (int t = 0; t < spec.trials; ++t) {
                TrialRecord rec = run_trial(params, t, spec.master_seed);
                rec.d = d;
                rec.profile = spec.profile;
                cell.trials.push_back(std::move(rec));
            }
            double mismatch_sum = 0.0;
            for (const TrialRecord& rec : cell.trials) {
                if (rec.status == ColorStatus::Success) ++cell.successes;
                if (!rec.mismatch_by_iteration.empty())
                    mismatch_sum += rec.mismatch_by_iteration.back();
            }
            cell.success_rate = static_cast<double>(cell.successes) / spec.trials;
            std::tie(cell.wilson_lo, cell.wilson_hi) = wilson_interval(cell.successes, spec.trials);
            cell.mean_final_mismatch = mismatch_sum / spec.trials;
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

// Trial rows for one cell. Timing is the last column and can be excluded;
// everything else is covered by the determinism contract.
inline std::string render_cell_csv(const CellResult& cell, int cell_index,
                                   const std::string& profile, int k, int m,
                                   bool include_timing = true) {
    std::ostringstream out;
    const std::size_t t_cols =
        cell.trials.empty() ? 1 : cell.trials.front().mismatch_by_iteration.size();
    out << "cell,n,k,M,d,profile,trial,seed,status,proper,edges";
    for (std::size_t t = 0; t < t_cols; ++t) out << ",mismatch_t" << t;
    if (include_timing) out << ",wall_ms";
    out << '\n';
    for (const TrialRecord& rec : cell.trials) {
        out << cell_index << ',' << cell.n << ',' << k << ',' << m << ','
            << detail::fmt_double(cell.d) << ',' << profile << ',' << rec.trial_index << ','
            << rec.derived_seed << ',' << detail::status_name(rec.status) << ','
            << (rec.proper ? 1 : 0) << ',' << rec.edge_count;
        for (int v : rec.mismatch_by_iteration) out << ',' << v;
        if (include_timing) out << ',' << detail::fmt_double(rec.wall_ms);
        out << '\n';
    }
    out << "# end\n";
    return out.str();
}

inline std::string render_summary_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "cell,n,k,M,d,profile,trials,successes,success_rate,wilson_lo,wilson_hi,"
           "mean_final_mismatch\n";
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        const CellResult& c = result.cells[i];
        out << i << ',' << c.n << ',' << result.spec.k << ',' << result.spec.M << ','
            << detail::fmt_double(c.d) << ',' << result.spec.profile << ','
            << result.spec.trials << ',' << c.successes << ','
            << detail::fmt_double(c.success_rate) << ',' << detail::fmt_double(c.wilson_lo)
            << ',' << detail::fmt_double(c.wilson_hi) << ','
            << detail::fmt_double(c.mean_final_mismatch) << '\n';
    }
    out << "# end\n";
    return out.str();
}

inline std::string render_manifest(const SweepSpec& spec) {
    std::ostringstream out;
    out << "hgc sweep manifest\nversion 1\n";
    out << "n";
    for (int n : spec.n_list) out << ' ' << n;
    out << "\nM " << spec.M << "\nk " << spec.k << "\nd";
    for (double d : spec.d_list) out << ' ' << detail::fmt_double(d);
    out << "\nprofile " << spec.profile << "\ntrials " << spec.trials << "\nmaster_seed "
        << spec.master_seed << '\n';
    return out.str();
}

inline void write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
        std::ofstream f(dir / ("cell_" + std::to_string(i) + ".csv"));
        if (!f) throw std::runtime_error("cannot open cell CSV for writing");
        f << render_cell_csv(result.cells[i], static_cast<int>(i), result.spec.profile,
                             result.spec.k, result.spec.M);
    }
    std::ofstream s(dir / "summary.csv");
    if (!s) throw std::runtime_error("cannot open summary CSV for writing");
    s << render_summary_csv(result);
    std::ofstream m(dir / "manifest.txt");
    if (!m) throw std::runtime_error("cannot open manifest for writing");
    m << render_manifest(result.spec);
}

}  // namespace hgc

#endif
