#include "surface_gkp/sigma_tables.h"

#include <stdexcept>

namespace surface_gkp {

namespace {

constexpr VarianceCoeffs kBulkH{5.0, 59.0 / 3.0};
constexpr VarianceCoeffs kBulkV{7.0, 116.0 / 3.0};
// Weight-4 check next to a weight-2 check on the side boundary.
constexpr VarianceCoeffs kSideV{7.0, 111.0 / 3.0};

bool in_class(int x, int modulus, int residue) { return ((x - residue) % modulus + modulus) % modulus == 0; }

}  // namespace

const char* table_name(Table t) {
    switch (t) {
        case Table::ZH: return "sigma_Z_H";
        case Table::XH: return "sigma_X_H";
        case Table::ZV: return "sigma_Z_V";
        case Table::XV: return "sigma_X_V";
    }
    return "?";
}

TableBranch SigmaTables::horizontal(StabType graph, int k) const {
    const int d = d_;
    if (k < 1 || k > d * d) throw std::out_of_range("data label out of range");
    if (graph == StabType::Z) {
        if (in_class(k, d, 1)) {
            if (in_class((k - 1) / d, 2, 0)) return {Table::ZH, 1, "left, even row", {4.0, 52.0 / 3.0}};
            return {Table::ZH, 2, "left, odd row", {4.0, 58.0 / 3.0}};
        }
        if (in_class(k, d, 0)) {
            if (in_class(k / d, 2, 1)) return {Table::ZH, 3, "right, k/d odd", {4.0, 55.0 / 3.0}};
            return {Table::ZH, 4, "right, k/d even", {4.0, 49.0 / 3.0}};
        }
        return {Table::ZH, 0, "bulk", kBulkH};
    }
    if (k <= d) {
        if (k % 2 == 1) return {Table::XH, 1, "top, k odd", {4.0, 49.0 / 3.0}};
        return {Table::XH, 2, "top, k even", {4.0, 55.0 / 3.0}};
    }
    if (k >= d * d - d + 1) {
        if (k % 2 == 1) return {Table::XH, 3, "bottom, k odd", {4.0, 58.0 / 3.0}};
        return {Table::XH, 4, "bottom, k even", {4.0, 52.0 / 3.0}};
    }
    return {Table::XH, 0, "bulk", kBulkH};
}

TableBranch SigmaTables::vertical(StabType graph, int l) const {
    const int m = 2 * dpp_;
    if (l < 1 || l > (d_ * d_ - 1) / 2) throw std::out_of_range("syndrome label out of range");
    if (graph == StabType::Z) {
        if (in_class(l, m, 1)) return {Table::ZV, 1, "l = 1 mod 2d''", {4.0, 56.0 / 3.0}};
        if (in_class(l, m, dpp_ + 1)) return {Table::ZV, 2, "l = d''+1 mod 2d''", kSideV};
        if (in_class(l, m, 0)) return {Table::ZV, 3, "l = 0 mod 2d''", {4.0, 73.0 / 3.0}};
        return {Table::ZV, 0, "bulk", kBulkV};
    }
    if (in_class(l, m, dpp_)) return {Table::XV, 1, "l = d'' mod 2d''", {4.0, 56.0 / 3.0}};
    if (in_class(l, m, dpp_ + 1)) return {Table::XV, 2, "l = d''+1 mod 2d''", {4.0, 73.0 / 3.0}};
    if (in_class(l, m, 0)) return {Table::XV, 3, "l = 0 mod 2d''", kSideV};
    return {Table::XV, 0, "bulk", kBulkV};
}

VarianceCoeffs first_round_coeffs(GkpStep step) {
    return step == GkpStep::Step1 ? VarianceCoeffs{1.0, 10.0 / 3.0} : VarianceCoeffs{2.0, 20.0 / 3.0};
}

GkpStep correction_step(StabType graph, int k) {
    const bool q_in_step1 = measures_q(k - 1, GkpStep::Step1);
    if (graph == StabType::Z) return q_in_step1 ? GkpStep::Step1 : GkpStep::Step2;
    return q_in_step1 ? GkpStep::Step2 : GkpStep::Step1;
}

VarianceCoeffs SigmaTables::horizontal_round(StabType graph, int k, int round) const {
    if (round < 1 || round > d_ + 1) throw std::out_of_range("round out of range");
    const VarianceCoeffs first = first_round_coeffs(correction_step(graph, k));
    if (round == 1) return first;
    const VarianceCoeffs steady = horizontal(graph, k).coeffs;
    if (round <= d_) return steady;
    return steady - first;
}

}  // namespace surface_gkp
