#include "surface_gkp/space_time_graph.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace surface_gkp {

namespace {

double checked_sigma(const VarianceCoeffs& c, const NoiseParams& params) {
    const double var = c.variance(params);
    if (var < -1e-12) throw std::domain_error("effective variance is negative; check the sigma tables");
    return std::sqrt(std::max(var, 0.0));
}

// sigma = 0 takes the sigma -> 0 limit of p_cond instead of failing on
// rounding-level residues: 0 inside the decision region, 1/2 on its edge.
double info_weight(double sigma, double z) {
    if (sigma == 0.0) return weight_from_probability(std::abs(z) < 0.5 * kSqrtPi - 1e-12 ? 0.0 : 0.5);
    return weight_from_probability(p_cond(Sigma(sigma), z));
}

double plain_weight(double sigma) { return weight_from_probability(p_err(Sigma(sigma))); }

int gi(StabType t) { return t == StabType::Z ? 0 : 1; }

}  // namespace

double weight_from_probability(double p) { return -std::log2(std::max(p, kProbabilityFloor)); }

double horizontal_weight(const SigmaTables& tables, StabType graph, int k, int round, double z,
                         const NoiseParams& params, bool use_info) {
    const double s = checked_sigma(tables.horizontal_round(graph, k, round), params);
    return use_info ? info_weight(s, z) : plain_weight(s);
}

double vertical_weight(const SigmaTables& tables, StabType graph, int l, double z, const NoiseParams& params,
                       bool use_info) {
    const double s = checked_sigma(tables.vertical(graph, l).coeffs, params);
    return use_info ? info_weight(s, z) : plain_weight(s);
}

WeightModel::WeightModel(const CodeLayout& layout, const NoiseParams& params, bool use_info)
    : d_(layout.d), use_info_(use_info) {
    const SigmaTables tables(layout.d);
    for (StabType g : {StabType::Z, StabType::X}) {
        const int rounds[3] = {1, 2, layout.d + 1};
        for (int c = 0; c < 3; ++c) {
            auto& sig = h_sigma_[gi(g)][c];
            auto& plain = h_plain_[gi(g)][c];
            for (int k = 1; k <= layout.n_data; ++k) {
                const double s = checked_sigma(tables.horizontal_round(g, k, rounds[c]), params);
                sig.push_back(s);
                plain.push_back(plain_weight(s));
            }
        }
        for (int l = 1; l <= layout.n_synd; ++l) {
            const double s = checked_sigma(tables.vertical(g, l).coeffs, params);
            v_sigma_[gi(g)].push_back(s);
            v_plain_[gi(g)].push_back(plain_weight(s));
        }
    }
}

double WeightModel::horizontal(StabType graph, int k0, int round, double z) const {
    const int c = round == 1 ? 0 : (round <= d_ ? 1 : 2);
    if (!use_info_) return h_plain_[gi(graph)][c][k0];
    return info_weight(h_sigma_[gi(graph)][c][k0], z);
}

double WeightModel::vertical(StabType graph, int l0, double z) const {
    if (!use_info_) return v_plain_[gi(graph)][l0];
    return info_weight(v_sigma_[gi(graph)][l0], z);
}

std::shared_ptr<const GraphTopology> make_topology(const CodeLayout& layout, StabType type) {
    auto g = std::make_shared<GraphTopology>();
    g->type = type;
    g->d = layout.d;
    g->n_synd = layout.n_synd;
    g->n_layers = layout.d + 1;
    g->boundary = g->n_synd * g->n_layers;
    g->n_vertices = g->boundary + 1;
    const auto& of_data = layout.syndromes_of_data(type);
    for (int t = 1; t <= g->n_layers; ++t) {
        for (int k = 0; k < layout.n_data; ++k) {
            const auto& s = of_data[k];
            const int u = g->vertex(s[0], t);
            const int v = s.size() == 2 ? g->vertex(s[1], t) : g->boundary;
            g->edges.push_back({u, v, EdgeKind::Horizontal, k, -1, t});
        }
        if (t <= layout.d) {
            for (int l = 0; l < g->n_synd; ++l)
                g->edges.push_back({g->vertex(l, t), g->vertex(l, t + 1), EdgeKind::Vertical, -1, l, t});
        }
    }
    std::vector<int> degree(g->n_vertices, 0);
    for (const auto& e : g->edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    g->adj_offset.assign(g->n_vertices + 1, 0);
    for (int v = 0; v < g->n_vertices; ++v) g->adj_offset[v + 1] = g->adj_offset[v] + degree[v];
    g->adj.resize(g->adj_offset.back());
    std::vector<int> fill(g->adj_offset.begin(), g->adj_offset.end() - 1);
    for (int id = 0; id < static_cast<int>(g->edges.size()); ++id) {
        const auto& e = g->edges[id];
        g->adj[fill[e.u]++] = {e.v, id};
        g->adj[fill[e.v]++] = {e.u, id};
    }
    return g;
}

namespace {

SpaceTimeGraph build_one(const std::vector<RoundRecord>& records, const WeightModel& weights,
                         const std::shared_ptr<const GraphTopology>& topo) {
    const StabType type = topo->type;
    const bool z = type == StabType::Z;
    SpaceTimeGraph g;
    g.topo = topo;
    g.weights.resize(topo->edges.size());
    for (size_t id = 0; id < topo->edges.size(); ++id) {
        const auto& e = topo->edges[id];
        const RoundRecord& r = records[e.layer - 1];
        if (e.kind == EdgeKind::Horizontal) {
            const double res = z ? r.gkp_residue_q[e.data] : r.gkp_residue_p[e.data];
            g.weights[id] = weights.horizontal(type, e.data, e.layer, res);
        } else {
            const double res = z ? r.synd_residue_z[e.synd] : r.synd_residue_x[e.synd];
            g.weights[id] = weights.vertical(type, e.synd, res);
        }
    }
    for (int t = 1; t <= topo->n_layers; ++t) {
        const auto& cur = z ? records[t - 1].synd_value_z : records[t - 1].synd_value_x;
        for (int l = 0; l < topo->n_synd; ++l) {
            const int prev = t == 1 ? 1 : (z ? records[t - 2].synd_value_z[l] : records[t - 2].synd_value_x[l]);
            if (cur[l] != prev) g.defects.push_back(topo->vertex(l, t));
        }
    }
    g.boundary_highlighted = g.defects.size() % 2 == 1;
    return g;
}

}  // namespace

GraphPair build_graphs(const std::vector<RoundRecord>& records, const CodeLayout& layout,
                       const WeightModel& weights, const std::shared_ptr<const GraphTopology>& z_topo,
                       const std::shared_ptr<const GraphTopology>& x_topo) {
    if (static_cast<int>(records.size()) != layout.d + 1) {
        throw std::invalid_argument("expected d + 1 round records, got " + std::to_string(records.size()));
    }
    return {build_one(records, weights, z_topo), build_one(records, weights, x_topo)};
}

GraphPair build_graphs(const std::vector<RoundRecord>& records, const CodeLayout& layout,
                       const NoiseParams& params, bool use_info) {
    const WeightModel weights(layout, params, use_info);
    return build_graphs(records, layout, weights, make_topology(layout, StabType::Z),
                        make_topology(layout, StabType::X));
}

std::string dump_graph(const SpaceTimeGraph& g) {
    const GraphTopology& t = *g.topo;
    std::ostringstream os;
    os << std::setprecision(12);
    os << "graph " << (t.type == StabType::Z ? "Z" : "X") << " d " << t.d << " vertices " << t.n_vertices
       << " boundary " << t.boundary << " edges " << t.edges.size() << "\n";
    for (size_t id = 0; id < t.edges.size(); ++id) {
        const auto& e = t.edges[id];
        os << (e.kind == EdgeKind::Horizontal ? "H " : "V ") << e.u << " " << e.v << " "
           << (e.kind == EdgeKind::Horizontal ? e.data + 1 : e.synd + 1) << " " << e.layer << " " << g.weights[id]
           << "\n";
    }
    os << "defects";
    for (int v : g.defects) os << " " << v;
    if (g.boundary_highlighted) os << " " << t.boundary;
    os << "\n";
    return os.str();
}

}  // namespace surface_gkp
