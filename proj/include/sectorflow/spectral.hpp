#ifndef SECTORFLOW_SPECTRAL_HPP
#define SECTORFLOW_SPECTRAL_HPP

#include <Eigen/Dense>

#include <map>

#include "sectorflow/graph.hpp"

namespace sectorflow {

struct SpectralParams {
    int alpha = 1;           // flow exponent, >= 1
    int beta = 1;            // eigenvector-difference exponent, >= 1
    double c_exp = 1.0;      // eigenvalue exponent, >= 0
    double sdos_factor = 3.0;  // flow multiplier on a flushed sector's outflows
};

struct FiedlerPair {
    double lambda = 0.0;
    Eigen::VectorXd v;  // unit norm, first nonzero component positive
    // Smallest positive eigenvalue is (numerically) repeated; the eigenvector
    // choice is then solver-dependent and callers should warn.
    bool degenerate = false;
};

struct SpectralResult {
    double lambda = 0.0;
    Eigen::VectorXd v;  // components in ascending-sector-id order
    // Unordered adjacent pairs {i < j} -> f^alpha * |v_i - v_j|^beta,
    // before the division by lambda^c.
    std::map<RouteKey, double> edge_terms;
    double v_total = 0.0;
    bool degenerate = false;
};

// Smallest positive eigenpair of a symmetric Laplacian. Eigenvalues at or
// below 1e-9 count as zero. Sign is fixed so the first component larger than
// 1e-9 in magnitude is positive.
FiedlerPair fiedler(const LaplacianMatrix& L);

// Single pair term: f^alpha * dv^beta.
double edge_vulnerability(double flow, double dv, const SpectralParams& params);

// Sum of pair terms over all unordered sector pairs divided by lambda^c.
// Non-adjacent pairs contribute zero; an adjacent pair's flow is read from
// the (i,j) route when present, from (j,i) otherwise. Requires an undirected
// connected graph with at least one route.
SpectralResult total_vulnerability(const SectorGraph& graph,
                                   const SpectralParams& params = {});

// Sum of total_vulnerability over the keep-one-edge variants of the target:
// for each undirected edge at the target, all its other edges are removed
// and the variant scored. Every variant must stay connected.
double crdos_vulnerability(const SectorGraph& graph, SectorId target,
                           const SpectralParams& params = {});

// total_vulnerability of the graph with route (from,to) removed (both
// directions of a bidirectional pair).
double prdos_vulnerability(const SectorGraph& graph, SectorId from, SectorId to,
                           const SpectralParams& params = {});

// total_vulnerability with the flow on the target's outflows multiplied by
// sdos_factor; graph structure, lambda and v are unchanged.
double sdos_vulnerability(const SectorGraph& graph, SectorId target,
                          const SpectralParams& params = {});

}  // namespace sectorflow

#endif
