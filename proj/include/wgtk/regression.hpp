#pragma once

#include "wgtk/attributes.hpp"
#include "wgtk/common.hpp"

#include <span>
#include <string>
#include <vector>

namespace wgtk {

/**
 * Log-transformed linear model
 *
 *   ln(y) = b0 + b1 ln(x1) + ... + bk ln(xk)
 *
 * fitted by ordinary least squares. Coefficients read as elasticities: a 1%
 * change in a regressor moves the prediction by roughly its coefficient in
 * percent.
 */
struct RegressionModel {
    std::string dependent;
    std::vector<std::string> regressors;
    double intercept = 0.0;
    std::vector<double> coefficients;
    std::vector<double> t_statistics;
    double r_squared = 0.0; // on the log scale
    std::uint64_t n_used = 0;
    std::uint64_t rows_excluded = 0; // nonpositive values in any model column

    /// Predicted ln(y) for raw (unlogged) regressor values.
    double predict_log(std::span<const double> raw_values) const;

    std::string to_json() const;
    static RegressionModel from_json(const std::string& json_text);
};

/**
 * Fits the model on ln-transformed columns via centered normal equations with
 * a partially pivoted solve. Rows with a nonpositive value in the dependent
 * or any regressor are excluded (and counted); a rank-deficient design or too
 * few usable rows is an error.
 */
RegressionModel fit_loglog_regression(const AttributeTable& attrs, const std::string& dependent,
                                      const std::vector<std::string>& regressors);

} // namespace wgtk
