#ifndef HGC_HYPERGRAPH_HPP
#define HGC_HYPERGRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgc {

// Vertex ids are 1-indexed everywhere in the public API and file formats.
using Edge = std::vector<int>;  // strictly increasing vertex ids

struct Hypergraph {
    int num_vertices = 0;
    std::vector<Edge> edges;

    // Maximum edge size; 0 for an edgeless hypergraph.
    int dimension() const {
        std::size_t m = 0;
        for (const auto& e : edges) m = std::max(m, e.size());
        return static_cast<int>(m);
    }
};

struct Coloring {
    int k = 2;
    std::vector<int> colors;  // colors[v-1] in [0, k-1], total on all vertices

    int color_of(int v) const { return colors.at(static_cast<std::size_t>(v - 1)); }
};

struct ProperVerdict {
    bool proper = true;
    std::vector<std::size_t> monochromatic_edges;  // indices in input order
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline void check_canonical(const Hypergraph& h) {
    for (std::size_t idx = 0; idx < h.edges.size(); ++idx) {
        const Edge& e = h.edges[idx];
        if (e.size() < 2)
            throw std::invalid_argument("edge " + std::to_string(idx) + " has size < 2");
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] < 1 || e[j] > h.num_vertices)
                throw std::invalid_argument("edge " + std::to_string(idx) + ": vertex " +
                                            std::to_string(e[j]) + " out of range");
            if (j > 0 && e[j] <= e[j - 1])
                throw std::invalid_argument("edge " + std::to_string(idx) + " not strictly sorted");
        }
    }
}

inline ProperVerdict verify_proper(const Hypergraph& h, const Coloring& c) {
    if (static_cast<int>(c.colors.size()) < h.num_vertices) {
        for (int v = static_cast<int>(c.colors.size()) + 1; v <= h.num_vertices; ++v) {
            throw std::invalid_argument("coloring missing vertex " + std::to_string(v));
        }
    }
    ProperVerdict out;
    for (std::size_t idx = 0; idx < h.edges.size(); ++idx) {
        const Edge& e = h.edges[idx];
        const int c0 = c.color_of(e.front());
        bool mono = true;
        for (int v : e) {
            if (c.color_of(v) != c0) { mono = false; break; }
        }
        if (mono) {
            out.proper = false;
            out.monochromatic_edges.push_back(idx);
        }
    }
    return out;
}

// Format: header `p hg <num_vertices> <num_edges>`, one edge per line,
// `c `-prefixed comments allowed anywhere.
inline Hypergraph read_hypergraph(std::istream& in) {
    Hypergraph h;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    long expected_edges = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string p, hg;
            ls >> p >> hg >> h.num_vertices >> expected_edges;
            if (ls.fail() || p != "p" || hg != "hg" || h.num_vertices < 0 || expected_edges < 0)
                throw ParseError(lineno, "malformed header, expected `p hg <vertices> <edges>`");
            have_header = true;
            continue;
        }
        Edge e;
        int v;
        while (ls >> v) {
            if (v < 1 || v > h.num_vertices)
                throw ParseError(lineno, "vertex " + std::to_string(v) + " out of range");
            e.push_back(v);
        }
        if (!ls.eof()) throw ParseError(lineno, "non-integer token in edge");
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        if (e.size() < 2) throw ParseError(lineno, "edge has fewer than 2 distinct vertices");
        h.edges.push_back(std::move(e));
    }
    if (!have_header) throw ParseError(lineno, "missing header");
    if (static_cast<long>(h.edges.size()) != expected_edges)
        throw ParseError(lineno, "edge count mismatch: header declares " +
                                     std::to_string(expected_edges) + ", found " +
                                     std::to_string(h.edges.size()));
    return h;
}

inline Hypergraph read_hypergraph(const std::string& text) {
    std::istringstream in(text);
    return read_hypergraph(in);
}

inline std::string write_hypergraph(const Hypergraph& h) {
    std::ostringstream out;
    out << "p hg " << h.num_vertices << ' ' << h.edges.size() << '\n';
    for (const Edge& e : h.edges) {
        for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
        out << '\n';
    }
    return out.str();
}

// One `<vertex_id> <color_id>` line per vertex, sorted by vertex id.
inline std::string write_coloring(const Coloring& c) {
    std::ostringstream out;
    for (std::size_t i = 0; i < c.colors.size(); ++i)
        out << (i + 1) << ' ' << c.colors[i] << '\n';
    return out.str();
}

inline Coloring read_coloring(std::istream& in) {
    Coloring c;
    c.k = 0;
    std::string line;
    int lineno = 0;
    std::vector<std::pair<int, int>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        int v, col;
        ls >> v >> col;
        if (ls.fail() || v < 1 || col < 0)
            throw ParseError(lineno, "expected `<vertex_id> <color_id>`");
        entries.emplace_back(v, col);
    }
    int max_v = 0;
    for (auto& [v, col] : entries) max_v = std::max(max_v, v);
    c.colors.assign(static_cast<std::size_t>(max_v), -1);
    for (auto& [v, col] : entries) {
        c.colors[static_cast<std::size_t>(v - 1)] = col;
        c.k = std::max(c.k, col + 1);
    }
    for (std::size_t i = 0; i < c.colors.size(); ++i)
        if (c.colors[i] < 0)
            throw std::invalid_argument("coloring missing vertex " + std::to_string(i + 1));
    c.k = std::max(c.k, 2);
    return c;
}

inline Coloring read_coloring(const std::string& text) {
    std::istringstream in(text);
    return read_coloring(in);
}

}  // namespace hgc

#endif
