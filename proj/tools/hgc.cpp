// Command-line front end: gen, color, kcolor, nae, exper, expected, verify.
// Exit codes: 0 success, 1 coloring FAIL, 2 usage or parse errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hgc/color.hpp"
#include "hgc/experiment.hpp"
#include "hgc/hypergraph.hpp"
#include "hgc/naesat.hpp"
#include "hgc/planted.hpp"
#include "hgc/spectral.hpp"

namespace {

struct ParamFlags {
    int n = 0;
    int k = 2;
    int M = 2;
    std::vector<double> pm = std::vector<double>(9, -1.0);  // --p2 .. --p8
    double density = -1.0;
    std::string profile = "equal";
    std::uint64_t seed = 0;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f, bool need_n = true) {
    auto* n = cmd->add_option("--n", f.n, "per-class size (|V| = k*n)");
    if (need_n) n->required();
    cmd->add_option("--k", f.k, "number of planted classes")->capture_default_str();
    cmd->add_option("--M", f.M, "dimension (max edge size)")->capture_default_str();
    for (int m = 2; m <= 8; ++m)
        cmd->add_option("--p" + std::to_string(m), f.pm[static_cast<std::size_t>(m)],
                        "edge probability for size " + std::to_string(m));
    cmd->add_option("--density", f.density, "target density coefficient d (alternative to --pm)");
    cmd->add_option("--profile", f.profile, "per-size weight profile: equal | pairs-only")
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
}

hgc::PlantedParams resolve_params(const ParamFlags& f) {
    hgc::PlantedParams p;
    p.n = f.n;
    p.k = f.k;
    p.M = f.M;
    p.seed = f.seed;
    bool explicit_p = false;
    for (int m = 2; m <= f.M && m <= 8; ++m) explicit_p = explicit_p || f.pm[static_cast<std::size_t>(m)] >= 0.0;
    if (explicit_p && f.density >= 0.0)
        throw CLI::ValidationError("give either --pm flags or --density, not both");
    if (f.density >= 0.0) {
        const auto probs = hgc::probs_for_density(f.n, f.M, f.density,
                                                  hgc::profile_weights(f.profile, f.M), f.k);
        if (probs.clamped)
            std::cerr << "warning: requested density unreachable, probabilities clamped to 1\n";
        p.p = probs.p;
    } else {
        p.p.assign(static_cast<std::size_t>(f.M) + 1, 0.0);
        for (int m = 2; m <= f.M && m <= 8; ++m)
            if (f.pm[static_cast<std::size_t>(m)] >= 0.0)
                p.p[static_cast<std::size_t>(m)] = f.pm[static_cast<std::size_t>(m)];
    }
    hgc::validate(p);
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) std::cout << text;
    else write_file(out_path, text);
}

void write_trajectory(const std::string& path, const hgc::ColorOutcome& outcome,
                      const std::optional<hgc::Coloring>& planted) {
    std::ostringstream csv;
    const int k = outcome.trajectory.empty() ? 2 : outcome.trajectory.front().k;
    csv << "t";
    for (int l = 0; l < k; ++l) csv << ",size_part" << l;
    if (planted) csv << ",mismatch";
    csv << '\n';
    for (std::size_t t = 0; t < outcome.trajectory.size(); ++t) {
        csv << t;
        for (std::size_t s : outcome.trajectory[t].part_sizes()) csv << ',' << s;
        if (planted) csv << ',' << hgc::mismatch_count(outcome.trajectory[t].part_of, *planted);
        csv << '\n';
    }
    write_file(path, csv.str());
}

int report_outcome(const hgc::Hypergraph& h, const hgc::ColorOutcome& outcome,
                   const std::string& out_path, const std::string& trajectory_path,
                   const std::string& planted_path) {
    std::optional<hgc::Coloring> planted;
    if (!planted_path.empty()) planted = hgc::read_coloring(read_file(planted_path));
    if (!trajectory_path.empty()) write_trajectory(trajectory_path, outcome, planted);
    if (outcome.status == hgc::ColorStatus::EigenNonConvergence)
        std::cerr << "warning: eigensolver did not converge; best-effort result\n";
    if (outcome.proper) {
        emit(out_path, hgc::write_coloring(outcome.coloring));
        return 0;
    }
    std::cerr << "FAIL: monochromatic edges:";
    for (std::size_t idx : outcome.witness_edges) {
        std::cerr << ' ' << idx << " {";
        const hgc::Edge& e = h.edges[idx];
        for (std::size_t j = 0; j < e.size(); ++j) std::cerr << (j ? " " : "") << e[j];
        std::cerr << '}';
    }
    std::cerr << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planted hypergraph generation, spectral coloring and NAE-SAT solving"};
    app.require_subcommand(1);

    // gen
    ParamFlags gen_flags;
    std::string gen_out, gen_planted_out;
    auto* gen = app.add_subcommand("gen", "sample a planted hypergraph");
    add_param_flags(gen, gen_flags);
    gen->add_option("--out", gen_out, "output hypergraph file (default stdout)");
    gen->add_option("--planted-out", gen_planted_out, "write the planted coloring here");

    // color / kcolor
    std::string color_in, color_out, color_traj, color_planted;
    auto* color = app.add_subcommand("color", "2-color a hypergraph");
    color->add_option("--in", color_in, "hypergraph file")->required();
    color->add_option("--out", color_out, "output coloring file (default stdout)");
    color->add_option("--trajectory", color_traj, "per-iteration partition sizes CSV");
    color->add_option("--planted", color_planted, "planted coloring for mismatch columns");

    std::string kc_in, kc_out, kc_traj, kc_planted;
    int kc_k = 3;
    auto* kcolor = app.add_subcommand("kcolor", "k-color a hypergraph");
    kcolor->add_option("--in", kc_in, "hypergraph file")->required();
    kcolor->add_option("--k", kc_k, "number of colors")->capture_default_str();
    kcolor->add_option("--out", kc_out, "output coloring file (default stdout)");
    kcolor->add_option("--trajectory", kc_traj, "per-iteration partition sizes CSV");
    kcolor->add_option("--planted", kc_planted, "planted coloring for mismatch columns");

    // nae
    std::string nae_in, nae_out;
    auto* nae = app.add_subcommand("nae", "solve NAE-SAT via reduction to 2-coloring");
    nae->add_option("--in", nae_in, "DIMACS CNF file")->required();
    nae->add_option("--out", nae_out, "output file (default stdout)");

    // exper
    std::vector<int> ex_n;
    std::vector<double> ex_d;
    int ex_m = 2, ex_k = 2, ex_trials = 10;
    std::uint64_t ex_seed = 0;
    std::string ex_profile = "equal", ex_out;
    auto* exper = app.add_subcommand("exper", "Monte Carlo sweep over (n, d) cells");
    exper->add_option("--n", ex_n, "class sizes")->required();
    exper->add_option("--d", ex_d, "density coefficients")->required();
    exper->add_option("--M", ex_m, "dimension")->capture_default_str();
    exper->add_option("--k", ex_k, "classes/colors")->capture_default_str();
    exper->add_option("--trials", ex_trials, "trials per cell")->capture_default_str();
    exper->add_option("--seed", ex_seed, "master seed")->capture_default_str();
    exper->add_option("--profile", ex_profile, "weight profile")->capture_default_str();
    exper->add_option("--out", ex_out, "output directory")->required();

    // expected
    ParamFlags exp_flags;
    auto* expected = app.add_subcommand("expected", "print analytic model quantities");
    add_param_flags(expected, exp_flags);

    // verify
    std::string ver_in, ver_coloring;
    auto* verify = app.add_subcommand("verify", "check a coloring for properness");
    verify->add_option("--in", ver_in, "hypergraph file")->required();
    verify->add_option("--coloring", ver_coloring, "coloring file")->required();

    try {
        app.parse(argc, argv);

        if (*gen) {
            const auto params = resolve_params(gen_flags);
            auto [h, planted] = hgc::sample(params);
            emit(gen_out, hgc::write_hypergraph(h));
            if (!gen_planted_out.empty()) write_file(gen_planted_out, hgc::write_coloring(planted));
            return 0;
        }
        if (*color) {
            const hgc::Hypergraph h = hgc::read_hypergraph(read_file(color_in));
            return report_outcome(h, hgc::color2(h), color_out, color_traj, color_planted);
        }
        if (*kcolor) {
            const hgc::Hypergraph h = hgc::read_hypergraph(read_file(kc_in));
            return report_outcome(h, hgc::colorK(h, kc_k), kc_out, kc_traj, kc_planted);
        }
        if (*nae) {
            const hgc::NaeFormula f = hgc::parse_dimacs(read_file(nae_in));
            if (f.tautologies_dropped > 0)
                std::cerr << "note: dropped " << f.tautologies_dropped
                          << " tautological clause(s), always NAE-satisfied\n";
            const hgc::ReductionMap map = hgc::to_hypergraph(f);
            const hgc::ColorOutcome out = hgc::color2(map.hypergraph);
            std::cerr << "note: reduced instance is not from the planted model; "
                         "result is best-effort\n";
            if (!out.proper) {
                emit(nae_out, "s UNKNOWN\n");
                return 1;
            }
            const auto assignment = hgc::decode(out.coloring, map);
            std::ostringstream res;
            res << "s SATISFIABLE\nv";
            for (int v = 1; v <= f.num_vars; ++v)
                res << ' ' << (assignment[static_cast<std::size_t>(v - 1)] ? v : -v);
            res << " 0\n";
            emit(nae_out, res.str());
            return 0;
        }
        if (*exper) {
            hgc::SweepSpec spec;
            spec.n_list = ex_n;
            spec.M = ex_m;
            spec.k = ex_k;
            spec.d_list = ex_d;
            spec.profile = ex_profile;
            spec.trials = ex_trials;
            spec.master_seed = ex_seed;
            const hgc::SweepResult result = hgc::run_sweep(spec);
            hgc::write_sweep(result, ex_out);
            std::cout << hgc::render_summary_csv(result);
            return 0;
        }
        if (*expected) {
            const auto params = resolve_params(exp_flags);
            const hgc::ModelMoments mm = hgc::moments(params);
            const auto eigs = hgc::k_smallest_eigenvectors(mm.expected, 2, 1e-10);
            std::printf("alpha1=%.10g\nalpha2=%.10g\nalpha3=%.10g\neta=%.10g\n", mm.alpha1,
                        mm.alpha2, mm.alpha3, mm.eta);
            std::printf("lambda_min=%.10g\ngap=%.10g\n", mm.alpha3 - params.n * mm.alpha2,
                        eigs[1].value - eigs[0].value);
            std::printf("expected_edges=%.10g\nd=%.10g\n", hgc::expected_edge_count(params),
                        params.n >= 2 ? hgc::density_coefficient(params) : 0.0);
            return 0;
        }
        if (*verify) {
            const hgc::Hypergraph h = hgc::read_hypergraph(read_file(ver_in));
            const hgc::Coloring c = hgc::read_coloring(read_file(ver_coloring));
            const auto verdict = hgc::verify_proper(h, c);
            if (verdict.proper) {
                std::cout << "proper\n";
                return 0;
            }
            std::cerr << "improper: monochromatic edges:";
            for (std::size_t idx : verdict.monochromatic_edges) std::cerr << ' ' << idx;
            std::cerr << '\n';
            return 1;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
