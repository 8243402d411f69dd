#ifndef SURFACE_GKP_BLOSSOM_H
#define SURFACE_GKP_BLOSSOM_H

#include <cstdint>
#include <vector>

namespace surface_gkp {

struct WeightedEdge {
    int u;
    int v;
    int64_t w;
};

// Maximum-weight matching on a general graph (Edmonds' blossom algorithm,
// O(n^3)). With max_cardinality, returns a maximum-weight matching among
// those of maximum cardinality. Returns mate[v], or -1 if unmatched.
std::vector<int> max_weight_matching(int n, const std::vector<WeightedEdge>& edges, bool max_cardinality);

struct RealEdge {
    int u;
    int v;
    double w;
};

// Minimum-weight perfect matching with non-negative real weights. Throws
// std::invalid_argument if no perfect matching exists.
std::vector<int> min_weight_perfect_matching(int n, const std::vector<RealEdge>& edges);

}  // namespace surface_gkp

#endif
