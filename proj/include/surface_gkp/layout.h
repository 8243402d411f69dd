#ifndef SURFACE_GKP_LAYOUT_H
#define SURFACE_GKP_LAYOUT_H

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surface_gkp {

enum class StabType { Z, X };

enum class Side { Top, Bottom, Left, Right };

inline constexpr int kIdle = -1;
inline constexpr int kSurfaceSteps = 4;

// Rotated distance-d surface-GKP lattice. Indices are 0-based internally;
// data qubit k (0-based) sits at row k / d, column k % d. Dumps and
// *_labels helpers use the 1-based labels with 0 for idle.
struct CodeLayout {
    int d = 0;
    int n_data = 0;
    int n_synd = 0;  // per type

    // Plaquette centre in half-lattice units: (2r + 1, 2c + 1) for the
    // plaquette whose NW corner is data (r, c).
    std::vector<std::pair<int, int>> z_center, x_center;
    std::vector<std::vector<int>> z_support, x_support;
    // schedule[l][t]: data index touched in surface step t + 3, or kIdle.
    std::vector<std::array<int, kSurfaceSteps>> z_schedule, x_schedule;
    // +1 for SUM (syndrome -> data), -1 for inverse-SUM. Zero on idle slots.
    std::vector<std::array<int, kSurfaceSteps>> x_sign;
    // Sign of each x_support entry, aligned with x_support.
    std::vector<std::vector<int>> x_support_sign;

    // Syndromes adjacent to each data qubit.
    std::vector<std::vector<int>> z_of_data, x_of_data;

    std::array<Side, 2> z_boundary_sides{Side::Top, Side::Bottom};
    std::array<Side, 2> x_boundary_sides{Side::Left, Side::Right};

    const std::vector<std::vector<int>>& support(StabType t) const { return t == StabType::Z ? z_support : x_support; }
    const std::vector<std::array<int, kSurfaceSteps>>& schedule(StabType t) const {
        return t == StabType::Z ? z_schedule : x_schedule;
    }
    const std::vector<std::vector<int>>& syndromes_of_data(StabType t) const {
        return t == StabType::Z ? z_of_data : x_of_data;
    }
    int row(int k) const { return k / d; }
    int col(int k) const { return k % d; }
};

CodeLayout build_layout(int d);

// 1-based data labels touched in step (3 + t) by each syndrome, 0 for idle.
std::vector<int> schedule_labels(const CodeLayout& layout, StabType type, int t);

struct PropagationReport {
    // x_to_z[x][z]: q shift reaching Z-syndrome z from a unit q shift on
    // X-syndrome x injected at the start of step 3. z_to_x is the p analogue.
    std::vector<std::vector<int>> x_to_z;
    std::vector<std::vector<int>> z_to_x;
    std::vector<std::string> structural_errors;

    bool ok() const;
    std::string describe_first_failure() const;
};

class LayoutError : public std::runtime_error {
public:
    LayoutError(const std::string& what, PropagationReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const PropagationReport& report() const { return report_; }

private:
    PropagationReport report_;
};

// Structural checks plus noiseless propagation through steps 3-6.
PropagationReport propagate_syndrome_shifts(const CodeLayout& layout);
PropagationReport validate_layout(const CodeLayout& layout);

struct LogicalRepresentatives {
    std::vector<int> logical_x;  // q-shift string, commutes with every Z check
    std::vector<int> logical_z;  // p-shift string, commutes with every X check
};

LogicalRepresentatives logical_representatives(const CodeLayout& layout);

// Phase of exp(i sqrt(pi) sum q) against the shift sum s_k sqrt(pi) on q_k,
// in units of pi.
int symplectic_overlap(const std::vector<int>& phase_support, const std::vector<int>& shift_support,
                       const std::vector<int>& shift_signs);

std::string layout_to_text(const CodeLayout& layout);
std::string layout_to_json(const CodeLayout& layout);

}  // namespace surface_gkp

#endif
