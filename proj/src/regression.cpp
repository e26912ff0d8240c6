#include "wgtk/regression.hpp"

#include "wgtk/io_util.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace wgtk {

namespace {

/// Gauss-Jordan inverse with partial pivoting; throws on rank deficiency.
std::vector<std::vector<double>> invert(std::vector<std::vector<double>> a) {
    const std::size_t k = a.size();
    std::vector<std::vector<double>> inv(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1.0;

    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    const double eps = std::max(scale, 1.0) * 1e-12;

    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < eps)
            throw ValidationError("rank-deficient design: regressors are collinear or constant");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const double inv_p = 1.0 / a[col][col];
        for (std::size_t c = 0; c < k; ++c) {
            a[col][c] *= inv_p;
            inv[col][c] *= inv_p;
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < k; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

} // namespace

double RegressionModel::predict_log(std::span<const double> raw_values) const {
    if (raw_values.size() != coefficients.size())
        throw ValidationError("prediction needs one value per regressor");
    double out = intercept;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (!(raw_values[i] > 0.0))
            throw ValidationError("cannot predict on nonpositive value for '" + regressors[i] + "'");
        out += coefficients[i] * std::log(raw_values[i]);
    }
    return out;
}

RegressionModel fit_loglog_regression(const AttributeTable& attrs, const std::string& dependent,
                                      const std::vector<std::string>& regressors) {
    if (regressors.empty()) throw ValidationError("no regressors given");
    const std::size_t k = regressors.size();
    std::span<const double> y_col = attrs.column(dependent);
    std::vector<std::span<const double>> x_cols;
    for (const auto& r : regressors) x_cols.push_back(attrs.column(r));

    // usable rows: strictly positive in the dependent and every regressor
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < attrs.row_count(); ++r) {
        bool ok = y_col[r] > 0.0;
        for (const auto& col : x_cols) ok = ok && col[r] > 0.0;
        if (ok) rows.push_back(r);
    }
    const std::size_t n = rows.size();
    if (n < k + 2)
        throw ValidationError("too few usable rows: " + std::to_string(n) + " (need at least " +
                              std::to_string(k + 2) + ")");

    // center the log-transformed design; solves for slopes, intercept recovered after
    std::vector<double> y(n);
    std::vector<std::vector<double>> z(k, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::log(y_col[rows[i]]);
        for (std::size_t j = 0; j < k; ++j) z[j][i] = std::log(x_cols[j][rows[i]]);
    }
    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= static_cast<double>(n);
    std::vector<double> z_mean(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        for (double v : z[j]) z_mean[j] += v;
        z_mean[j] /= static_cast<double>(n);
    }

    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a; b < k; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                s += (z[a][i] - z_mean[a]) * (z[b][i] - z_mean[b]);
            xtx[a][b] = xtx[b][a] = s;
        }
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += (z[a][i] - z_mean[a]) * (y[i] - y_mean);
        xty[a] = s;
    }

    const auto xtx_inv = invert(xtx);
    RegressionModel model;
    model.dependent = dependent;
    model.regressors = regressors;
    model.coefficients.assign(k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) model.coefficients[a] += xtx_inv[a][b] * xty[b];
    model.intercept = y_mean;
    for (std::size_t j = 0; j < k; ++j) model.intercept -= model.coefficients[j] * z_mean[j];

    double ssr = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < k; ++j) fit += model.coefficients[j] * (z[j][i] - z_mean[j]);
        const double res = (y[i] - y_mean) - fit;
        ssr += res * res;
        sst += (y[i] - y_mean) * (y[i] - y_mean);
    }
    model.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    model.n_used = n;
    model.rows_excluded = attrs.row_count() - n;

    // classical OLS t-statistics
    model.t_statistics.assign(k, 0.0);
    if (n > k + 1) {
        const double sigma2 = ssr / static_cast<double>(n - k - 1);
        for (std::size_t j = 0; j < k; ++j) {
            const double se = std::sqrt(sigma2 * xtx_inv[j][j]);
            model.t_statistics[j] = se > 0.0 ? model.coefficients[j] / se : 0.0;
        }
    }
    return model;
}

std::string RegressionModel::to_json() const {
    nlohmann::json j;
    j["dependent"] = dependent;
    j["regressors"] = regressors;
    j["intercept"] = intercept;
    j["coefficients"] = coefficients;
    j["t_statistics"] = t_statistics;
    j["r_squared"] = r_squared;
    j["n_used"] = n_used;
    j["rows_excluded"] = rows_excluded;
    return j.dump(2) + "\n";
}

RegressionModel RegressionModel::from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    RegressionModel m;
    m.dependent = j.at("dependent").get<std::string>();
    m.regressors = j.at("regressors").get<std::vector<std::string>>();
    m.intercept = j.at("intercept").get<double>();
    m.coefficients = j.at("coefficients").get<std::vector<double>>();
    if (j.contains("t_statistics")) m.t_statistics = j["t_statistics"].get<std::vector<double>>();
    m.r_squared = j.at("r_squared").get<double>();
    m.n_used = j.at("n_used").get<std::uint64_t>();
    if (j.contains("rows_excluded")) m.rows_excluded = j["rows_excluded"].get<std::uint64_t>();
    if (m.coefficients.size() != m.regressors.size())
        throw ValidationError("model JSON: coefficient/regressor count mismatch");
    return m;
}

} // namespace wgtk
