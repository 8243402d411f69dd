#include "surface_gkp/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "surface_gkp/blossom.h"

namespace surface_gkp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<int> ShortestPaths::path(int i, int v, const GraphTopology& topo) const {
    std::vector<int> out;
    const int src = sources[i];
    while (v != src) {
        const int e = pred_edge[i][v];
        if (e < 0) throw std::logic_error("no path to vertex");
        out.push_back(e);
        const auto& edge = topo.edges[e];
        v = edge.u == v ? edge.v : edge.u;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

ShortestPaths shortest_paths(const SpaceTimeGraph& graph, const std::vector<int>& defects) {
    const GraphTopology& topo = *graph.topo;
    ShortestPaths sp;
    sp.sources = defects;
    const int m = static_cast<int>(defects.size());
    sp.dist.assign(m, std::vector<double>(topo.n_vertices, kInf));
    sp.pred_edge.assign(m, std::vector<int>(topo.n_vertices, -1));

    std::vector<char> is_target(topo.n_vertices, 0);
    for (int v : defects) is_target[v] = 1;
    is_target[topo.boundary] = 1;
    const int n_targets = m + 1;

    using Item = std::pair<double, int>;
    std::vector<char> done(topo.n_vertices);
    for (int i = 0; i < m; ++i) {
        auto& dist = sp.dist[i];
        auto& pred = sp.pred_edge[i];
        std::fill(done.begin(), done.end(), 0);
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        dist[defects[i]] = 0.0;
        pq.push({0.0, defects[i]});
        int settled_targets = 0;
        while (!pq.empty()) {
            const auto [du, u] = pq.top();
            pq.pop();
            if (done[u]) continue;
            done[u] = 1;
            if (is_target[u] && ++settled_targets == n_targets) break;
            // The boundary is a sink: paths never pass through it.
            if (u == topo.boundary) continue;
            for (int a = topo.adj_offset[u]; a < topo.adj_offset[u + 1]; ++a) {
                const auto [v, e] = topo.adj[a];
                const double nd = du + graph.weights[e];
                if (nd < dist[v]) {
                    dist[v] = nd;
                    pred[v] = e;
                    pq.push({nd, v});
                }
            }
        }
        for (int v : defects)
            if (!done[v]) throw std::logic_error("disconnected defect in matching graph");
    }
    return sp;
}

std::vector<int> mwpm(const std::vector<std::vector<double>>& w) {
    const int n = static_cast<int>(w.size());
    if (n % 2 != 0) throw std::invalid_argument("mwpm needs an even number of vertices");
    std::vector<RealEdge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::isfinite(w[i][j])) edges.push_back({i, j, w[i][j]});
    return min_weight_perfect_matching(n, edges);
}

Matching match_defects(const SpaceTimeGraph& graph, const ShortestPaths& sp) {
    const GraphTopology& topo = *graph.topo;
    const int m = static_cast<int>(sp.sources.size());
    Matching out;
    if (m == 0) return out;
    // Vertices 0..m-1 are defects, m + i is the boundary copy of defect i.
    std::vector<RealEdge> edges;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) edges.push_back({i, j, sp.between(i, j)});
    for (int i = 0; i < m; ++i) edges.push_back({i, m + i, sp.to_vertex(i, topo.boundary)});
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) edges.push_back({m + i, m + j, 0.0});
    const std::vector<int> mate = min_weight_perfect_matching(2 * m, edges);
    for (int i = 0; i < m; ++i) {
        const int j = mate[i];
        if (j < m && j < i) continue;
        MatchedPair pair;
        pair.a = i;
        if (j < m) {
            pair.b = j;
            pair.weight = sp.between(i, j);
            pair.path = sp.path(i, sp.sources[j], topo);
        } else {
            pair.b = -1;
            pair.weight = sp.to_vertex(i, topo.boundary);
            pair.path = sp.path(i, topo.boundary, topo);
        }
        out.total_weight += pair.weight;
        out.pairs.push_back(std::move(pair));
    }
    return out;
}

std::vector<char> extract_correction(const Matching& matching, const SpaceTimeGraph& graph, int n_data) {
    std::vector<char> flips(n_data, 0);
    for (const auto& pair : matching.pairs)
        for (int e : pair.path) {
            const auto& edge = graph.topo->edges[e];
            if (edge.kind == EdgeKind::Horizontal) flips[edge.data] ^= 1;
        }
    return flips;
}

DecodeResult decode(const SpaceTimeGraph& graph, int n_data) {
    DecodeResult r;
    r.defect_count = static_cast<int>(graph.defects.size());
    if (graph.defects.empty()) {
        r.flips.assign(n_data, 0);
        return r;
    }
    const ShortestPaths sp = shortest_paths(graph, graph.defects);
    const Matching m = match_defects(graph, sp);
    r.matched_weight = m.total_weight;
    r.flips = extract_correction(m, graph, n_data);
    return r;
}

}  // namespace surface_gkp
