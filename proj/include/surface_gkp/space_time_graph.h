#ifndef SURFACE_GKP_SPACE_TIME_GRAPH_H
#define SURFACE_GKP_SPACE_TIME_GRAPH_H

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "surface_gkp/layout.h"
#include "surface_gkp/noise_engine.h"
#include "surface_gkp/sigma_tables.h"

namespace surface_gkp {

inline constexpr double kProbabilityFloor = 1e-30;

double weight_from_probability(double p);

// Edge weights per the analog-information (use_info) or plain rules.
// Effective sigmas use the nominal sigma values regardless of params.noisy.
double horizontal_weight(const SigmaTables& tables, StabType graph, int k, int round, double z,
                         const NoiseParams& params, bool use_info);
double vertical_weight(const SigmaTables& tables, StabType graph, int l, double z, const NoiseParams& params,
                       bool use_info);

// Per-(layout, params) cache of effective sigmas and of the plain weights.
class WeightModel {
public:
    WeightModel(const CodeLayout& layout, const NoiseParams& params, bool use_info);

    double horizontal(StabType graph, int k0, int round, double z) const;
    double vertical(StabType graph, int l0, double z) const;
    bool use_info() const { return use_info_; }

private:
    int d_;
    bool use_info_;
    // [graph][round class: 0 first, 1 steady, 2 last][k]
    std::vector<double> h_sigma_[2][3];
    std::vector<double> h_plain_[2][3];
    std::vector<double> v_sigma_[2];
    std::vector<double> v_plain_[2];
};

enum class EdgeKind { Horizontal, Vertical };

struct GraphEdge {
    int u;
    int v;
    EdgeKind kind;
    int data;   // 0-based data index for horizontal edges, -1 otherwise
    int synd;   // 0-based syndrome for vertical edges, -1 otherwise
    int layer;  // horizontal: round 1..d+1; vertical: lower round t in 1..d
};

// Weight-independent structure shared by every trial at a given distance.
// Vertex (l, t) has id (t - 1) * n_synd + l; the last vertex is the boundary.
struct GraphTopology {
    StabType type;
    int d;
    int n_synd;
    int n_layers;
    int n_vertices;
    int boundary;
    std::vector<GraphEdge> edges;
    std::vector<int> adj_offset;                   // CSR offsets, size n_vertices + 1
    std::vector<std::pair<int, int>> adj;          // (neighbour, edge id)

    int vertex(int l, int round) const { return (round - 1) * n_synd + l; }
};

std::shared_ptr<const GraphTopology> make_topology(const CodeLayout& layout, StabType type);

struct SpaceTimeGraph {
    std::shared_ptr<const GraphTopology> topo;
    std::vector<double> weights;  // per edge
    std::vector<int> defects;     // sorted non-boundary vertex ids
    bool boundary_highlighted = false;

    StabType type() const { return topo->type; }
};

struct GraphPair {
    SpaceTimeGraph z;
    SpaceTimeGraph x;
};

// records: d noisy rounds followed by the ideal round.
GraphPair build_graphs(const std::vector<RoundRecord>& records, const CodeLayout& layout,
                       const WeightModel& weights, const std::shared_ptr<const GraphTopology>& z_topo,
                       const std::shared_ptr<const GraphTopology>& x_topo);
GraphPair build_graphs(const std::vector<RoundRecord>& records, const CodeLayout& layout,
                       const NoiseParams& params, bool use_info);

std::string dump_graph(const SpaceTimeGraph& graph);

}  // namespace surface_gkp

#endif
