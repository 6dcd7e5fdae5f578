#include "sectorflow/spectral.hpp"

#include <cmath>
#include <functional>

namespace sectorflow {

namespace {

constexpr double kZeroEigenTol = 1e-9;
constexpr double kDegenerateTol = 1e-8;
constexpr double kSymmetryTol = 1e-12;

void check_params(const SpectralParams& p) {
    if (p.alpha < 1) throw ValidationError("alpha", "must be a positive integer");
    if (p.beta < 1) throw ValidationError("beta", "must be a positive integer");
    if (p.c_exp < 0) throw ValidationError("c", "must be non-negative");
    if (p.sdos_factor <= 0) throw ValidationError("sdos-factor", "must be positive");
}

// Pair terms summed over all unordered sector pairs; scale lets SDOS inflate
// selected pairs' flows. Fills edge_terms for adjacent pairs.
double pair_sum(const SectorGraph& graph, const Eigen::VectorXd& v,
                const std::vector<SectorId>& order, const SpectralParams& params,
                const std::function<double(SectorId, SectorId)>& scale,
                std::map<RouteKey, double>* edge_terms) {
    double sum = 0.0;
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            const SectorId i = order[a];
            const SectorId j = order[b];
            double f;
            if (graph.has_route(i, j))
                f = graph.route(i, j).flow;
            else if (graph.has_route(j, i))
                f = graph.route(j, i).flow;
            else
                continue;  // f_ij = 0, term vanishes
            const double dv = std::abs(v(static_cast<Eigen::Index>(a)) -
                                       v(static_cast<Eigen::Index>(b)));
            const double term = edge_vulnerability(f * scale(i, j), dv, params);
            if (edge_terms) (*edge_terms)[{i, j}] = term;
            sum += term;
        }
    }
    return sum;
}

SpectralResult score_graph(const SectorGraph& graph, const SpectralParams& params,
                           const std::function<double(SectorId, SectorId)>& scale) {
    if (!graph.connected_undirected()) throw DisconnectedGraph();
    const FiedlerPair pair = fiedler(laplacian(graph, true));
    const std::vector<SectorId> order = graph.sector_order();

    SpectralResult result;
    result.lambda = pair.lambda;
    result.v = pair.v;
    result.degenerate = pair.degenerate;
    const double sum = pair_sum(graph, pair.v, order, params, scale, &result.edge_terms);
    // lambda^c is pair-independent, so it divides the whole sum once.
    result.v_total = sum / std::pow(pair.lambda, params.c_exp);
    return result;
}

double no_scale(SectorId, SectorId) { return 1.0; }

}  // namespace

FiedlerPair fiedler(const LaplacianMatrix& L) {
    if (L.rows() != L.cols()) throw NotSymmetric();
    if ((L - L.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) throw NotSymmetric();
    if (L.rows() < 2) throw NoPositiveEigenvalue();

    Eigen::SelfAdjointEigenSolver<LaplacianMatrix> solver(L);
    if (solver.info() != Eigen::Success)
        throw InconsistentState("eigen-decomposition failed to converge");

    const Eigen::VectorXd evals = solver.eigenvalues();  // ascending
    Eigen::Index idx = -1;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (evals(i) > kZeroEigenTol) {
            idx = i;
            break;
        }
    }
    if (idx < 0) throw NoPositiveEigenvalue();

    FiedlerPair out;
    out.lambda = evals(idx);
    out.v = solver.eigenvectors().col(idx);
    out.degenerate = idx + 1 < evals.size() && evals(idx + 1) - evals(idx) < kDegenerateTol;
    for (Eigen::Index i = 0; i < out.v.size(); ++i) {
        if (std::abs(out.v(i)) > kZeroEigenTol) {
            if (out.v(i) < 0) out.v = -out.v;
            break;
        }
    }
    return out;
}

double edge_vulnerability(double flow, double dv, const SpectralParams& params) {
    check_params(params);
    if (flow < 0) throw ValidationError("flow", "must be non-negative");
    if (dv < 0) throw ValidationError("dv", "must be non-negative");
    return std::pow(flow, params.alpha) * std::pow(dv, params.beta);
}

SpectralResult total_vulnerability(const SectorGraph& graph, const SpectralParams& params) {
    check_params(params);
    return score_graph(graph, params, no_scale);
}

double crdos_vulnerability(const SectorGraph& graph, SectorId target,
                           const SpectralParams& params) {
    check_params(params);
    if (!graph.has_sector(target)) throw UnknownSector(target);
    const std::vector<SectorId> neighbors = graph.undirected_neighbors(target);
    if (neighbors.empty()) throw DisconnectedVariant(target);

    double sum = 0.0;
    for (SectorId kept : neighbors) {
        SectorGraph variant = graph;
        for (SectorId other : neighbors)
            if (other != kept) variant = remove_route(variant, target, other);
        if (!variant.connected_undirected()) throw DisconnectedVariant(target, kept);
        sum += total_vulnerability(variant, params).v_total;
    }
    return sum;
}

double prdos_vulnerability(const SectorGraph& graph, SectorId from, SectorId to,
                           const SpectralParams& params) {
    check_params(params);
    try {
        return total_vulnerability(remove_route(graph, from, to), params).v_total;
    } catch (const DisconnectedGraph&) {
        throw DisconnectedGraph("removing route " + std::to_string(from) + "->" +
                                std::to_string(to) + " disconnects the graph");
    }
}

double sdos_vulnerability(const SectorGraph& graph, SectorId target,
                          const SpectralParams& params) {
    check_params(params);
    if (!graph.has_sector(target)) throw UnknownSector(target);
    auto scale = [&](SectorId i, SectorId j) {
        // Pairs covering one of the target's outflows carry the inflated flow.
        const bool outflow = (i == target && graph.has_route(target, j)) ||
                             (j == target && graph.has_route(target, i));
        return outflow ? params.sdos_factor : 1.0;
    };
    return score_graph(graph, params, scale).v_total;
}

}  // namespace sectorflow
