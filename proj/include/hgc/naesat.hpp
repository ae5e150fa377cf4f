#ifndef HGC_NAESAT_HPP
#define HGC_NAESAT_HPP

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgc/hypergraph.hpp"

namespace hgc {

struct NaeFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;  // signed literals, nonzero
    int tautologies_dropped = 0;
};

// DIMACS CNF. Clauses containing both x and -x always have one true and one
// false literal, so they are NAE-satisfied by every assignment; they are
// dropped on parse and counted.
inline NaeFormula parse_dimacs(std::istream& in) {
    NaeFormula f;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    long declared_clauses = 0;
    std::vector<int> current;
    int clause_start_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string p, cnf;
            ls >> p >> cnf >> f.num_vars >> declared_clauses;
            if (ls.fail() || p != "p" || cnf != "cnf" || f.num_vars < 0 || declared_clauses < 0)
                throw ParseError(lineno, "malformed header, expected `p cnf <vars> <clauses>`");
            have_header = true;
            continue;
        }
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (current.empty())
                    throw ParseError(lineno, "empty clause");
                bool tautology = false;
                for (int a : current)
                    if (std::find(current.begin(), current.end(), -a) != current.end()) {
                        tautology = true;
                        break;
                    }
                if (tautology) ++f.tautologies_dropped;
                else f.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > f.num_vars)
                    throw ParseError(lineno, "literal " + std::to_string(lit) +
                                                 " exceeds declared vars");
                if (current.empty()) clause_start_line = lineno;
                current.push_back(lit);
            }
        }
        if (!ls.eof()) throw ParseError(lineno, "non-integer token");
    }
    if (!have_header) throw ParseError(lineno, "missing header");
    if (!current.empty())
        throw ParseError(clause_start_line, "clause not terminated by 0");
    return f;
}

inline NaeFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline std::string write_dimacs(const NaeFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& cl : f.clauses) {
        for (int lit : cl) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

// NAE-SAT <-> 2-coloring reduction. Variable v gets the vertex pair
// pos(v) = 2v-1, neg(v) = 2v, joined by an edge; each clause becomes the
// edge over its literal vertices. A proper 2-coloring makes every variable
// pair bichromatic (a consistent assignment) and every clause edge
// non-monochromatic (not all literals equal).
struct ReductionMap {
    Hypergraph hypergraph;
    int num_vars = 0;

    static int pos(int v) { return 2 * v - 1; }
    static int neg(int v) { return 2 * v; }
    static int literal_vertex(int lit) { return lit > 0 ? pos(lit) : neg(-lit); }
};

inline ReductionMap to_hypergraph(const NaeFormula& f) {
    ReductionMap map;
    map.num_vars = f.num_vars;
    map.hypergraph.num_vertices = 2 * f.num_vars;
    for (int v = 1; v <= f.num_vars; ++v)
        map.hypergraph.edges.push_back({ReductionMap::pos(v), ReductionMap::neg(v)});
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const auto& cl = f.clauses[i];
        if (cl.size() == 1)
            throw std::invalid_argument(
                "clause " + std::to_string(i) +
                " is a unit clause; a single literal cannot be not-all-equal");
        Edge e;
        for (int lit : cl) e.push_back(ReductionMap::literal_vertex(lit));
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        map.hypergraph.edges.push_back(std::move(e));
    }
    return map;
}

// v := true iff pos(v) has color 0. Requires a proper coloring; the pair
// edges then force neg(v) to the opposite color.
inline std::vector<bool> decode(const Coloring& c, const ReductionMap& map) {
    const ProperVerdict verdict = verify_proper(map.hypergraph, c);
    if (!verdict.proper)
        throw std::invalid_argument("decode: coloring not proper, edge " +
                                    std::to_string(verdict.monochromatic_edges.front()) +
                                    " is monochromatic");
    std::vector<bool> assignment(static_cast<std::size_t>(map.num_vars));
    for (int v = 1; v <= map.num_vars; ++v)
        assignment[static_cast<std::size_t>(v - 1)] = c.color_of(ReductionMap::pos(v)) == 0;
    return assignment;
}

// True iff every clause has at least one true and at least one false literal.
inline bool check_nae(const NaeFormula& f, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != f.num_vars)
        throw std::invalid_argument("check_nae: assignment must be total on vars");
    for (const auto& cl : f.clauses) {
        bool any_true = false, any_false = false;
        for (int lit : cl) {
            const bool val = lit > 0 ? assignment[static_cast<std::size_t>(lit - 1)]
                                     : !assignment[static_cast<std::size_t>(-lit - 1)];
            (val ? any_true : any_false) = true;
        }
        if (!any_true || !any_false) return false;
    }
    return true;
}

}  // namespace hgc

#endif
