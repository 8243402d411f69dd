#ifndef SURFACE_GKP_DECODER_H
#define SURFACE_GKP_DECODER_H

#include <vector>

#include "surface_gkp/layout.h"
#include "surface_gkp/space_time_graph.h"

namespace surface_gkp {

// Single-source shortest paths from each defect.
struct ShortestPaths {
    std::vector<int> sources;                 // defect vertex ids
    std::vector<std::vector<double>> dist;    // [source][vertex]
    std::vector<std::vector<int>> pred_edge;  // [source][vertex], -1 at the source or if unreached

    double between(int i, int j) const { return dist[i][sources[j]]; }
    double to_vertex(int i, int v) const { return dist[i][v]; }
    // Edge ids along the path from source i to vertex v.
    std::vector<int> path(int i, int v, const GraphTopology& topo) const;
};

ShortestPaths shortest_paths(const SpaceTimeGraph& graph, const std::vector<int>& defects);

struct MatchedPair {
    int a;          // defect index
    int b;          // defect index, or -1 for the boundary
    double weight;
    std::vector<int> path;  // edge ids
};

struct Matching {
    std::vector<MatchedPair> pairs;
    double total_weight = 0.0;
};

// Matches defects with each other or with their private boundary copy.
Matching match_defects(const SpaceTimeGraph& graph, const ShortestPaths& paths);

// Minimum-weight perfect matching on a dense symmetric matrix. Entries that
// are +inf are treated as missing edges.
std::vector<int> mwpm(const std::vector<std::vector<double>>& weights);

// Per-data flip flags from the projected parity of highlighted horizontal edges.
std::vector<char> extract_correction(const Matching& matching, const SpaceTimeGraph& graph, int n_data);

struct DecodeResult {
    std::vector<char> flips;
    int defect_count = 0;
    double matched_weight = 0.0;
};

DecodeResult decode(const SpaceTimeGraph& graph, int n_data);

}  // namespace surface_gkp

#endif
