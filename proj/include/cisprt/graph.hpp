#pragma once

// Undirected simple communication graphs: random geometric generation,
// Laplacian spectra and connectivity tests.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace cisprt {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Simple undirected graph on vertices 0..n-1. No self loops, no multi-edges;
// the adjacency matrix is symmetric with zero diagonal.
class Graph {
public:
    explicit Graph(int n_agents) : n_(n_agents), adj_(Eigen::MatrixXd::Zero(n_agents, n_agents)) {
        if (n_agents < 1) throw GraphError("graph needs at least one vertex");
    }

    static Graph from_edges(int n_agents, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n_agents);
        for (auto [i, j] : edges) g.add_edge(i, j);
        return g;
    }

    void add_edge(int i, int j) {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw GraphError("edge endpoint out of range");
        if (i == j) throw GraphError("self loops are not allowed");
        if (adj_(i, j) != 0.0) return;  // ignore duplicates, keep the graph simple
        adj_(i, j) = adj_(j, i) = 1.0;
        edges_.emplace_back(std::min(i, j), std::max(i, j));
    }

    int n_agents() const { return n_; }
    const Eigen::MatrixXd& adjacency() const { return adj_; }

    // Edges as sorted unordered pairs (i < j), in ascending order.
    std::vector<std::pair<int, int>> edges() const {
        auto e = edges_;
        std::sort(e.begin(), e.end());
        return e;
    }

    bool has_edge(int i, int j) const { return adj_(i, j) != 0.0; }
    int degree(int i) const { return static_cast<int>(adj_.row(i).sum()); }

private:
    int n_;
    Eigen::MatrixXd adj_;
    std::vector<std::pair<int, int>> edges_;
};

inline Eigen::MatrixXd laplacian(const Graph& g) {
    const Eigen::MatrixXd& a = g.adjacency();
    Eigen::MatrixXd l = -a;
    l.diagonal() = a.rowwise().sum();
    return l;
}

// Sorted Laplacian eigenvalues. lambda_1 is 0 up to round-off and the
// multiplicity of 0 counts connected components.
struct LaplacianSpectrum {
    Eigen::VectorXd eigenvalues;  // ascending

    double fiedler() const { return eigenvalues.size() > 1 ? eigenvalues(1) : 0.0; }
    double lambda_max() const { return eigenvalues(eigenvalues.size() - 1); }
};

inline LaplacianSpectrum spectrum(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw GraphError("Laplacian eigensolver failed to converge");
    return LaplacianSpectrum{solver.eigenvalues()};
}

// Traversal-based connectivity; authoritative over the spectral test.
inline bool is_connected(const Graph& g) {
    const int n = g.n_agents();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < n; ++u) {
            if (!seen[u] && g.has_edge(v, u)) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == n;
}

// Spectral connectivity: fiedler value above a relative floor. Near-zero
// eigenvalues are floating-point artifacts, hence the tolerance.
inline bool is_connected_spectral(const LaplacianSpectrum& s, double rel_tol = 1e-9) {
    if (s.eigenvalues.size() == 1) return true;
    return s.fiedler() > rel_tol * std::max(s.lambda_max(), 1.0);
}

// Planar random geometric graph: n i.i.d. uniform points on (0,1)^2, an edge
// whenever the Euclidean distance is <= radius. Coordinates are resampled
// wholesale until the graph comes out connected; gives up after max_attempts
// so that an undersized radius is diagnosable instead of looping forever.
inline Graph random_geometric(int n, double radius, std::uint64_t seed,
                              int max_attempts = 10000) {
    if (n < 1) throw GraphError("random_geometric: n must be >= 1");
    if (radius <= 0.0) throw GraphError("random_geometric: radius must be positive");
    Xoshiro256pp rng(mix_seed(seed, 0x67656F6Dull));  // tag: geometric generator
    const double r2 = radius * radius;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = rng.uniform01();
            y[i] = rng.uniform01();
        }
        Graph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double dx = x[i] - x[j], dy = y[i] - y[j];
                if (dx * dx + dy * dy <= r2) g.add_edge(i, j);
            }
        if (is_connected(g)) return g;
    }
    throw GraphError("random_geometric: no connected graph after " +
                     std::to_string(max_attempts) + " attempts (radius too small for n)");
}

// Edge-list serialization: a one-line JSON header carrying (n, radius, seed)
// followed by one "i j" pair per line.
inline void write_edge_list(const Graph& g, std::ostream& out, double radius,
                            std::uint64_t seed) {
    out << "{\"n\": " << g.n_agents() << ", \"radius\": " << radius
        << ", \"seed\": " << seed << "}\n";
    for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

inline void write_edge_list(const Graph& g, const std::string& path, double radius,
                            std::uint64_t seed) {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot open " + path + " for writing");
    write_edge_list(g, out, radius, seed);
}

inline Graph read_edge_list(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw GraphError("edge list: missing JSON header");
    const auto pos = header.find("\"n\"");
    if (pos == std::string::npos) throw GraphError("edge list: header lacks \"n\"");
    int n = 0;
    {
        std::istringstream hs(header.substr(header.find(':', pos) + 1));
        hs >> n;
    }
    Graph g(n);
    int i, j;
    while (in >> i >> j) g.add_edge(i, j);
    return g;
}

inline Graph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path);
    return read_edge_list(in);
}

} // namespace cisprt
