#include "wgtk/fairness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace wgtk {

std::map<std::string, bool> favorable_outcomes_from_labels(const LabelTable& labels,
                                                           const GroupSpec& spec) {
    std::map<std::string, bool> out;
    for (const auto& row : labels.rows())
        if (row.bias) out[row.domain] = row.reliability == spec.favorable;
    return out;
}

double disparate_impact(const std::map<std::string, bool>& outcomes, const GroupSpec& spec,
                        const LabelTable& labels) {
    if (spec.privileged == spec.unprivileged)
        throw ValidationError("privileged and unprivileged groups must differ");
    std::uint64_t priv_total = 0, priv_fav = 0, unpriv_total = 0, unpriv_fav = 0;
    for (const auto& [domain, favorable] : outcomes) {
        const LabelRow* row = labels.find(domain);
        if (!row || !row->bias) continue;
        if (*row->bias == spec.privileged) {
            ++priv_total;
            priv_fav += favorable;
        } else if (*row->bias == spec.unprivileged) {
            ++unpriv_total;
            unpriv_fav += favorable;
        }
    }
    if (priv_total == 0 || unpriv_total == 0)
        throw ValidationError("a bias group has no domains with outcomes");
    const double p_priv = static_cast<double>(priv_fav) / static_cast<double>(priv_total);
    const double p_unpriv = static_cast<double>(unpriv_fav) / static_cast<double>(unpriv_total);
    if (p_priv == 0.0) return std::numeric_limits<double>::infinity();
    return p_unpriv / p_priv;
}

namespace {

/// Linear interpolation between order statistics of a sorted list at
/// quantile q in [0, 1].
double quantile_value(const std::vector<double>& sorted, double q) {
    if (sorted.size() == 1) return sorted[0];
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace

AttributeTable repair_attributes(const AttributeTable& attrs, const GroupSpec& spec,
                                 const LabelTable& labels, double repair_level,
                                 std::span<const std::string> columns, RepairAudit* audit) {
    if (!(repair_level >= 0.0 && repair_level <= 1.0))
        throw ValidationError("repair level must be in [0, 1]");
    if (spec.privileged == spec.unprivileged)
        throw ValidationError("privileged and unprivileged groups must differ");

    // group membership per row: 0 = pass-through, 1 = privileged, 2 = unprivileged
    std::vector<int> membership(attrs.row_count(), 0);
    std::vector<std::size_t> priv_rows, unpriv_rows;
    for (std::size_t r = 0; r < attrs.row_count(); ++r) {
        const LabelRow* row = labels.find(attrs.domains()[r]);
        if (!row || !row->bias) continue;
        if (*row->bias == spec.privileged) {
            membership[r] = 1;
            priv_rows.push_back(r);
        } else if (*row->bias == spec.unprivileged) {
            membership[r] = 2;
            unpriv_rows.push_back(r);
        }
    }
    if (priv_rows.empty() || unpriv_rows.empty())
        throw ValidationError("both bias groups must be present for repair");

    AttributeTable repaired = attrs;
    if (audit) {
        audit->repair_level = repair_level;
        audit->rows_repaired = priv_rows.size() + unpriv_rows.size();
        audit->rows_passed_through = attrs.row_count() - audit->rows_repaired;
        audit->columns.clear();
    }
    if (repair_level == 0.0) return repaired;

    for (const auto& column_name : columns) {
        auto values = repaired.column_mut(column_name);
        RepairAudit::ColumnShift shift{column_name, 0.0, 0.0};

        std::vector<double> sorted_priv, sorted_unpriv;
        sorted_priv.reserve(priv_rows.size());
        sorted_unpriv.reserve(unpriv_rows.size());
        for (std::size_t r : priv_rows) sorted_priv.push_back(values[r]);
        for (std::size_t r : unpriv_rows) sorted_unpriv.push_back(values[r]);
        std::sort(sorted_priv.begin(), sorted_priv.end());
        std::sort(sorted_unpriv.begin(), sorted_unpriv.end());

        auto repair_group = [&](const std::vector<std::size_t>& rows,
                                const std::vector<double>& own_sorted, double& mean_shift) {
            // ranks within the group, stable so tied values keep row order
            std::vector<std::size_t> order(rows.size());
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return values[rows[a]] < values[rows[b]];
            });
            double total_shift = 0.0;
            std::vector<double> updated(rows.size());
            for (std::size_t k = 0; k < order.size(); ++k) {
                const std::size_t row = rows[order[k]];
                const double q = rows.size() == 1
                                     ? 0.5
                                     : static_cast<double>(k) / static_cast<double>(rows.size() - 1);
                // median distribution of two groups = midpoint of their quantiles
                const double target =
                    (quantile_value(sorted_priv, q) + quantile_value(sorted_unpriv, q)) / 2.0;
                const double v = own_sorted[k]; // == values[row] up to tie ordering
                const double new_value = (1.0 - repair_level) * v + repair_level * target;
                updated[order[k]] = new_value;
                total_shift += std::abs(new_value - values[row]);
            }
            for (std::size_t k = 0; k < rows.size(); ++k) values[rows[k]] = updated[k];
            mean_shift = total_shift / static_cast<double>(rows.size());
        };
        repair_group(priv_rows, sorted_priv, shift.mean_abs_shift_privileged);
        repair_group(unpriv_rows, sorted_unpriv, shift.mean_abs_shift_unprivileged);
        if (audit) audit->columns.push_back(shift);
    }
    return repaired;
}

std::string RepairAudit::to_json() const {
    nlohmann::json j;
    j["repair_level"] = repair_level;
    j["rows_repaired"] = rows_repaired;
    j["rows_passed_through"] = rows_passed_through;
    auto& cols = j["columns"] = nlohmann::json::array();
    for (const auto& c : columns)
        cols.push_back({{"column", c.column},
                        {"mean_abs_shift_privileged", c.mean_abs_shift_privileged},
                        {"mean_abs_shift_unprivileged", c.mean_abs_shift_unprivileged}});
    return j.dump(2) + "\n";
}

} // namespace wgtk
