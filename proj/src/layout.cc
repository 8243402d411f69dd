#include "surface_gkp/layout.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace surface_gkp {

namespace {

enum Corner { NW, NE, SW, SE };

// Visit order over steps 3..6.
constexpr std::array<Corner, kSurfaceSteps> kZOrder{NE, SE, NW, SW};
constexpr std::array<Corner, kSurfaceSteps> kXOrder{NE, NW, SE, SW};
constexpr std::array<int, kSurfaceSteps> kXSign{+1, -1, -1, +1};

struct Plaquette {
    int r;  // NW corner row, may be -1
    int c;  // NW corner column, may be -1
};

int corner_data(int d, const Plaquette& p, Corner corner) {
    const int r = p.r + (corner == SW || corner == SE ? 1 : 0);
    const int c = p.c + (corner == NE || corner == SE ? 1 : 0);
    if (r < 0 || r >= d || c < 0 || c >= d) return kIdle;
    return r * d + c;
}

}  // namespace

CodeLayout build_layout(int d) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument("distance must be odd and >= 3, got " + std::to_string(d));
    }
    std::vector<Plaquette> zs, xs;
    for (int r = -1; r <= d - 1; ++r) {
        for (int c = -1; c <= d - 1; ++c) {
            const bool is_x = ((r + c) % 2 + 2) % 2 == 0;
            const bool interior = r >= 0 && r <= d - 2 && c >= 0 && c <= d - 2;
            const bool left_right = (c == -1 || c == d - 1) && r >= 0 && r <= d - 2;
            const bool top_bottom = (r == -1 || r == d - 1) && c >= 0 && c <= d - 2;
            if (interior) {
                (is_x ? xs : zs).push_back({r, c});
            } else if (left_right && !is_x) {
                zs.push_back({r, c});
            } else if (top_bottom && is_x) {
                xs.push_back({r, c});
            }
        }
    }
    // Z row-major, X column-major.
    std::sort(zs.begin(), zs.end(), [](auto& a, auto& b) { return std::tie(a.r, a.c) < std::tie(b.r, b.c); });
    std::sort(xs.begin(), xs.end(), [](auto& a, auto& b) { return std::tie(a.c, a.r) < std::tie(b.c, b.r); });

    CodeLayout out;
    out.d = d;
    out.n_data = d * d;
    out.n_synd = (d * d - 1) / 2;
    out.z_of_data.assign(out.n_data, {});
    out.x_of_data.assign(out.n_data, {});

    for (size_t l = 0; l < zs.size(); ++l) {
        std::array<int, kSurfaceSteps> sched{};
        std::vector<int> support;
        for (int t = 0; t < kSurfaceSteps; ++t) {
            sched[t] = corner_data(d, zs[l], kZOrder[t]);
            if (sched[t] != kIdle) {
                support.push_back(sched[t]);
                out.z_of_data[sched[t]].push_back(static_cast<int>(l));
            }
        }
        std::sort(support.begin(), support.end());
        out.z_center.emplace_back(2 * zs[l].r + 1, 2 * zs[l].c + 1);
        out.z_support.push_back(support);
        out.z_schedule.push_back(sched);
    }
    for (size_t l = 0; l < xs.size(); ++l) {
        std::array<int, kSurfaceSteps> sched{};
        std::array<int, kSurfaceSteps> sign{};
        std::vector<std::pair<int, int>> entries;
        for (int t = 0; t < kSurfaceSteps; ++t) {
            sched[t] = corner_data(d, xs[l], kXOrder[t]);
            if (sched[t] != kIdle) {
                sign[t] = kXSign[t];
                entries.emplace_back(sched[t], sign[t]);
                out.x_of_data[sched[t]].push_back(static_cast<int>(l));
            }
        }
        std::sort(entries.begin(), entries.end());
        std::vector<int> support, signs;
        for (auto [k, s] : entries) {
            support.push_back(k);
            signs.push_back(s);
        }
        out.x_center.emplace_back(2 * xs[l].r + 1, 2 * xs[l].c + 1);
        out.x_support.push_back(support);
        out.x_support_sign.push_back(signs);
        out.x_schedule.push_back(sched);
        out.x_sign.push_back(sign);
    }
    for (auto& v : out.z_of_data) std::sort(v.begin(), v.end());
    for (auto& v : out.x_of_data) std::sort(v.begin(), v.end());
    return out;
}

std::vector<int> schedule_labels(const CodeLayout& layout, StabType type, int t) {
    std::vector<int> out;
    for (const auto& slots : layout.schedule(type)) out.push_back(slots[t] == kIdle ? 0 : slots[t] + 1);
    return out;
}

bool PropagationReport::ok() const {
    if (!structural_errors.empty()) return false;
    for (const auto& row : x_to_z)
        for (int v : row)
            if (v != 0) return false;
    for (const auto& row : z_to_x)
        for (int v : row)
            if (v != 0) return false;
    return true;
}

std::string PropagationReport::describe_first_failure() const {
    if (!structural_errors.empty()) return structural_errors.front();
    for (size_t x = 0; x < x_to_z.size(); ++x)
        for (size_t z = 0; z < x_to_z[x].size(); ++z)
            if (x_to_z[x][z] != 0) {
                std::ostringstream os;
                os << "X-syndrome " << x + 1 << " leaves residual " << x_to_z[x][z] << " on Z-syndrome " << z + 1;
                return os.str();
            }
    for (size_t z = 0; z < z_to_x.size(); ++z)
        for (size_t x = 0; x < z_to_x[z].size(); ++x)
            if (z_to_x[z][x] != 0) {
                std::ostringstream os;
                os << "Z-syndrome " << z + 1 << " leaves residual " << z_to_x[z][x] << " on X-syndrome " << x + 1;
                return os.str();
            }
    return "";
}

namespace {

void check_structure(const CodeLayout& layout, std::vector<std::string>& errors) {
    auto fail = [&](const std::string& msg) { errors.push_back(msg); };
    for (StabType type : {StabType::Z, StabType::X}) {
        const char* name = type == StabType::Z ? "Z" : "X";
        const auto& sched = layout.schedule(type);
        const auto& supp = layout.support(type);
        for (size_t l = 0; l < sched.size(); ++l) {
            std::vector<int> touched;
            for (int k : sched[l])
                if (k != kIdle) touched.push_back(k);
            std::sort(touched.begin(), touched.end());
            if (touched != supp[l]) fail(std::string(name) + "-syndrome " + std::to_string(l + 1) + " schedule does not cover its support once");
            if (supp[l].size() != 2 && supp[l].size() != 4)
                fail(std::string(name) + "-syndrome " + std::to_string(l + 1) + " has odd or unusual weight");
        }
        std::vector<int> count(layout.n_data, 0);
        for (const auto& s : supp)
            for (int k : s) ++count[k];
        for (int k = 0; k < layout.n_data; ++k)
            if (count[k] < 1 || count[k] > 2) fail(std::string(name) + " coverage of data " + std::to_string(k + 1) + " is " + std::to_string(count[k]));
    }
    for (int t = 0; t < kSurfaceSteps; ++t) {
        std::vector<int> used(layout.n_data, 0);
        for (const auto& s : layout.z_schedule)
            if (s[t] != kIdle) ++used[s[t]];
        for (const auto& s : layout.x_schedule)
            if (s[t] != kIdle) ++used[s[t]];
        for (int k = 0; k < layout.n_data; ++k)
            if (used[k] > 1) fail("data " + std::to_string(k + 1) + " used twice in step " + std::to_string(t + 3));
    }
    for (size_t z = 0; z < layout.z_support.size(); ++z)
        for (size_t x = 0; x < layout.x_support.size(); ++x) {
            const int phase = symplectic_overlap(layout.z_support[z], layout.x_support[x], layout.x_support_sign[x]);
            if (phase % 2 != 0) fail("Z-syndrome " + std::to_string(z + 1) + " anticommutes with X-syndrome " + std::to_string(x + 1));
        }
}

}  // namespace

PropagationReport propagate_syndrome_shifts(const CodeLayout& layout) {
    PropagationReport report;
    check_structure(layout, report.structural_errors);
    const int nz = static_cast<int>(layout.z_schedule.size());
    const int nx = static_cast<int>(layout.x_schedule.size());

    // q: X-syndrome q feeds data q through the X gates; Z-syndromes accumulate data q.
    report.x_to_z.assign(nx, std::vector<int>(nz, 0));
    for (int src = 0; src < nx; ++src) {
        std::vector<int> data_q(layout.n_data, 0);
        std::vector<int>& z_q = report.x_to_z[src];
        for (int t = 0; t < kSurfaceSteps; ++t) {
            for (int x = 0; x < nx; ++x) {
                const int k = layout.x_schedule[x][t];
                if (k != kIdle && x == src) data_q[k] += layout.x_sign[x][t];
            }
            for (int z = 0; z < nz; ++z) {
                const int k = layout.z_schedule[z][t];
                if (k != kIdle) z_q[z] += data_q[k];
            }
        }
    }
    // p: Z-syndrome p kicks data p (p_D -= p_Z); X-syndromes pick up p_X -= s * p_D.
    report.z_to_x.assign(nz, std::vector<int>(nx, 0));
    for (int src = 0; src < nz; ++src) {
        std::vector<int> data_p(layout.n_data, 0);
        std::vector<int>& x_p = report.z_to_x[src];
        for (int t = 0; t < kSurfaceSteps; ++t) {
            const int kz = layout.z_schedule[src][t];
            if (kz != kIdle) data_p[kz] -= 1;
            for (int x = 0; x < nx; ++x) {
                const int k = layout.x_schedule[x][t];
                if (k != kIdle) x_p[x] -= layout.x_sign[x][t] * data_p[k];
            }
        }
    }
    return report;
}

PropagationReport validate_layout(const CodeLayout& layout) {
    PropagationReport report = propagate_syndrome_shifts(layout);
    if (!report.ok()) {
        const std::string msg = "invalid layout: " + report.describe_first_failure();
        throw LayoutError(msg, std::move(report));
    }
    return report;
}

int symplectic_overlap(const std::vector<int>& phase_support, const std::vector<int>& shift_support,
                       const std::vector<int>& shift_signs) {
    int total = 0;
    for (size_t i = 0; i < shift_support.size(); ++i)
        if (std::find(phase_support.begin(), phase_support.end(), shift_support[i]) != phase_support.end())
            total += shift_signs.empty() ? 1 : shift_signs[i];
    return total;
}

LogicalRepresentatives logical_representatives(const CodeLayout& layout) {
    // A column crosses every Z check an even number of times; a row does the same for X checks.
    LogicalRepresentatives out;
    for (int r = 0; r < layout.d; ++r) out.logical_x.push_back(r * layout.d);
    for (int c = 0; c < layout.d; ++c) out.logical_z.push_back(c);
    return out;
}

namespace {

const char* side_name(Side s) {
    switch (s) {
        case Side::Top: return "top";
        case Side::Bottom: return "bottom";
        case Side::Left: return "left";
        case Side::Right: return "right";
    }
    return "?";
}

std::vector<int> labels(const std::vector<int>& idx) {
    std::vector<int> out;
    for (int k : idx) out.push_back(k == kIdle ? 0 : k + 1);
    return out;
}

std::vector<int> labels(const std::array<int, kSurfaceSteps>& idx) {
    return labels(std::vector<int>(idx.begin(), idx.end()));
}

}  // namespace

std::string layout_to_text(const CodeLayout& layout) {
    std::ostringstream os;
    auto list = [&](const std::vector<int>& v) {
        for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    };
    os << "d " << layout.d << "\n";
    os << "data " << layout.n_data << "\n";
    os << "syndromes_per_type " << layout.n_synd << "\n";
    os << "z_boundary " << side_name(layout.z_boundary_sides[0]) << " " << side_name(layout.z_boundary_sides[1]) << "\n";
    os << "x_boundary " << side_name(layout.x_boundary_sides[0]) << " " << side_name(layout.x_boundary_sides[1]) << "\n";
    for (size_t l = 0; l < layout.z_support.size(); ++l) {
        os << "Z " << l + 1 << " center " << layout.z_center[l].first << " " << layout.z_center[l].second << " support ";
        list(labels(layout.z_support[l]));
        os << " schedule ";
        list(labels(layout.z_schedule[l]));
        os << "\n";
    }
    for (size_t l = 0; l < layout.x_support.size(); ++l) {
        os << "X " << l + 1 << " center " << layout.x_center[l].first << " " << layout.x_center[l].second << " support ";
        list(labels(layout.x_support[l]));
        os << " schedule ";
        list(labels(layout.x_schedule[l]));
        os << " signs ";
        list(std::vector<int>(layout.x_sign[l].begin(), layout.x_sign[l].end()));
        os << "\n";
    }
    return os.str();
}

std::string layout_to_json(const CodeLayout& layout) {
    using nlohmann::json;
    json j;
    j["d"] = layout.d;
    j["n_data"] = layout.n_data;
    j["n_synd_each"] = layout.n_synd;
    j["z_boundary"] = {side_name(layout.z_boundary_sides[0]), side_name(layout.z_boundary_sides[1])};
    j["x_boundary"] = {side_name(layout.x_boundary_sides[0]), side_name(layout.x_boundary_sides[1])};
    json zs = json::array();
    for (size_t l = 0; l < layout.z_support.size(); ++l) {
        zs.push_back({{"index", l + 1},
                      {"center2", {layout.z_center[l].first, layout.z_center[l].second}},
                      {"support", labels(layout.z_support[l])},
                      {"schedule", labels(layout.z_schedule[l])}});
    }
    json xs = json::array();
    for (size_t l = 0; l < layout.x_support.size(); ++l) {
        xs.push_back({{"index", l + 1},
                      {"center2", {layout.x_center[l].first, layout.x_center[l].second}},
                      {"support", labels(layout.x_support[l])},
                      {"schedule", labels(layout.x_schedule[l])},
                      {"signs", std::vector<int>(layout.x_sign[l].begin(), layout.x_sign[l].end())}});
    }
    j["z_stabilizers"] = zs;
    j["x_stabilizers"] = xs;
    return j.dump(2);
}

}  // namespace surface_gkp
