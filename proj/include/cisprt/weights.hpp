#pragma once

// Combination-matrix design and validation. The consensus weight matrix W
// must be non-negative, symmetric, irreducible and stochastic; its contraction
// factor r = ||W - J|| < 1 (J the uniform averaging matrix) sets the rate of
// information flow through the network.

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"
#include "io.hpp"

namespace cisprt {

class WeightError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WeightMatrix {
    Eigen::MatrixXd w;
    double r = 0.0;      // ||W - J||, in [0,1) for valid designs
    double delta = 0.0;  // constant link weight, when built as I - delta*L

    int n_agents() const { return static_cast<int>(w.rows()); }
};

// Spectral norm of W - J for symmetric stochastic W; equals the second
// largest eigenvalue magnitude of W.
inline double contraction_factor(const Eigen::MatrixXd& w) {
    const auto n = w.rows();
    Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w - j, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw WeightError("eigensolver failed on W - J");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
}

inline double contraction_factor(const WeightMatrix& wm) { return contraction_factor(wm.w); }

// Equal link weights: W = I - delta*L. Admissible range is 0 < delta <
// 2/lambda_N(L); r then equals max(|1 - delta*lambda_2|, |1 - delta*lambda_N|).
inline WeightMatrix constant_weight_design(const Graph& g, double delta) {
    if (!is_connected(g)) throw WeightError("constant_weight_design: graph is not connected");
    if (delta <= 0.0) throw WeightError("constant_weight_design: delta must be positive");
    const int n = g.n_agents();
    if (n == 1) return WeightMatrix{Eigen::MatrixXd::Ones(1, 1), 0.0, delta};
    const LaplacianSpectrum spec = spectrum(g);
    const double l2 = spec.fiedler(), ln = spec.lambda_max();
    if (delta >= 2.0 / ln)
        throw WeightError("constant_weight_design: delta out of admissible range (0, 2/lambda_N)");
    WeightMatrix wm;
    wm.w = Eigen::MatrixXd::Identity(n, n) - delta * laplacian(g);
    wm.delta = delta;
    wm.r = std::max(std::abs(1.0 - delta * l2), std::abs(1.0 - delta * ln));
    return wm;
}

// delta = 2/(lambda_2 + lambda_N) minimizes r over constant-weight designs,
// giving r = (lambda_N - lambda_2)/(lambda_2 + lambda_N).
inline WeightMatrix optimal_constant_weight(const Graph& g) {
    if (!is_connected(g)) throw WeightError("optimal_constant_weight: graph is not connected");
    const int n = g.n_agents();
    if (n == 1) return WeightMatrix{Eigen::MatrixXd::Ones(1, 1), 0.0, 0.0};
    const LaplacianSpectrum spec = spectrum(g);
    const double l2 = spec.fiedler(), ln = spec.lambda_max();
    const double delta = 2.0 / (l2 + ln);
    WeightMatrix wm;
    wm.w = Eigen::MatrixXd::Identity(n, n) - delta * laplacian(g);
    wm.delta = delta;
    wm.r = (ln - l2) / (l2 + ln);
    return wm;
}

struct A4Violation {
    std::string property;  // "nonnegativity", "symmetry", "stochasticity", ...
    std::string detail;
    double worst = 0.0;
};

// Diagnostic check of the combination-matrix requirements against a support
// graph. Returns an empty list iff all properties hold within tolerances.
inline std::vector<A4Violation> validate_a4(const Eigen::MatrixXd& w, const Graph& g,
                                            double row_sum_tol = 1e-10,
                                            double entry_tol = 1e-12) {
    std::vector<A4Violation> out;
    const int n = g.n_agents();
    if (w.rows() != n || w.cols() != n) {
        out.push_back({"shape", "matrix size does not match the graph", static_cast<double>(w.rows())});
        return out;
    }

    double worst_neg = 0.0;
    int neg_i = 0, neg_j = 0;
    double worst_asym = 0.0;
    double worst_support = 0.0;
    int sup_i = 0, sup_j = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (w(i, j) < worst_neg) {
                worst_neg = w(i, j);
                neg_i = i;
                neg_j = j;
            }
            worst_asym = std::max(worst_asym, std::abs(w(i, j) - w(j, i)));
            if (i != j && !g.has_edge(i, j) && std::abs(w(i, j)) > worst_support) {
                worst_support = std::abs(w(i, j));
                sup_i = i;
                sup_j = j;
            }
        }
    if (worst_neg < -entry_tol)
        out.push_back({"nonnegativity",
                       "W(" + std::to_string(neg_i) + "," + std::to_string(neg_j) + ") < 0",
                       worst_neg});
    if (worst_asym > entry_tol)
        out.push_back({"symmetry", "max |W - W^T| entry", worst_asym});
    if (worst_support > entry_tol)
        out.push_back({"support",
                       "nonzero weight on non-edge (" + std::to_string(sup_i) + "," +
                           std::to_string(sup_j) + ")",
                       worst_support});

    double worst_row = 0.0;
    int row_idx = 0;
    for (int i = 0; i < n; ++i) {
        const double dev = std::abs(w.row(i).sum() - 1.0);
        if (dev > worst_row) {
            worst_row = dev;
            row_idx = i;
        }
    }
    if (worst_row > row_sum_tol)
        out.push_back({"stochasticity", "row " + std::to_string(row_idx) + " sum deviates from 1",
                       worst_row});

    // Irreducibility: the support of W (off-diagonal nonzeros) must connect.
    {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < n; ++u)
                if (!seen[u] && u != v && std::abs(w(v, u)) > entry_tol) {
                    seen[u] = 1;
                    ++count;
                    stack.push_back(u);
                }
        }
        if (count != n)
            out.push_back({"irreducibility", "support graph of W is disconnected",
                           static_cast<double>(count)});
    }

    if (out.empty()) {  // ||W - J|| only meaningful once W is a proper design
        const double r = contraction_factor(w);
        if (r >= 1.0 - entry_tol)
            out.push_back({"contraction", "||W - J|| must be < 1", r});
    }
    return out;
}

inline std::vector<A4Violation> validate_a4(const WeightMatrix& wm, const Graph& g) {
    return validate_a4(wm.w, g);
}

// Dense row-major CSV export at full precision, for external cross-checks.
inline void write_weight_csv(const WeightMatrix& wm, std::ostream& out) {
    const int n = wm.n_agents();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ',';
            out << format_g17(wm.w(i, j));
        }
        out << '\n';
    }
}

inline void write_weight_csv(const WeightMatrix& wm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw WeightError("cannot open " + path + " for writing");
    write_weight_csv(wm, out);
}

} // namespace cisprt
