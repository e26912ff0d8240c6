#pragma once

#include "wgtk/attributes.hpp"
#include "wgtk/common.hpp"
#include "wgtk/labels.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace wgtk {

/**
 * Group definition for disparate impact and repair. The grouping attribute is
 * the political-bias label; favorable is the reliable outcome. DI reads
 *
 *   DI = P(favorable | unprivileged) / P(favorable | privileged)
 *
 * and equals 1 at parity.
 */
struct GroupSpec {
    Bias privileged = Bias::extreme_left;
    Bias unprivileged = Bias::extreme_right;
    Reliability favorable = Reliability::reliable;
};

/// Outcome flags derived from reliability labels (favorable = spec.favorable),
/// for domains carrying a bias label.
std::map<std::string, bool> favorable_outcomes_from_labels(const LabelTable& labels,
                                                           const GroupSpec& spec);

/**
 * Disparate impact over caller-supplied binary outcomes. Only domains with an
 * outcome and a bias label in one of the two groups participate. A zero
 * favorable rate in the privileged group returns +infinity (with the rate
 * structure still well defined); an empty group is an error.
 */
double disparate_impact(const std::map<std::string, bool>& outcomes, const GroupSpec& spec,
                        const LabelTable& labels);

struct RepairAudit {
    struct ColumnShift {
        std::string column;
        double mean_abs_shift_privileged = 0.0;
        double mean_abs_shift_unprivileged = 0.0;
    };
    double repair_level = 0.0;
    std::uint64_t rows_repaired = 0;
    std::uint64_t rows_passed_through = 0;
    std::vector<ColumnShift> columns;

    std::string to_json() const;
};

/**
 * Disparate impact remover: rank-preserving quantile repair toward the
 * cross-group median distribution, interpolating linearly between order
 * statistics. R = 0 returns the data unchanged; R = 1 gives both groups the
 * same empirical distribution per column. Rows outside the two bias groups
 * pass through unrepaired.
 */
AttributeTable repair_attributes(const AttributeTable& attrs, const GroupSpec& spec,
                                 const LabelTable& labels, double repair_level,
                                 std::span<const std::string> columns,
                                 RepairAudit* audit = nullptr);

} // namespace wgtk
