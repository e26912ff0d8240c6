#pragma once

#include "wgtk/common.hpp"

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace wgtk {

/**
 * Per-domain SEO attribute table in column-major form. The canonical columns
 * are traffic, rank, backlinks (X1), html_pages (X3), external_links (X2);
 * extra numeric columns from richer exports ride along untouched.
 */
class AttributeTable {
public:
    AttributeTable() = default;

    /// CSV with header `domain,<col>[,<col>...]`; all columns numeric.
    static AttributeTable load(const std::string& path);
    void save(const std::string& path) const;

    std::size_t row_count() const { return domains_.size(); }
    const std::vector<std::string>& domains() const { return domains_; }
    const std::vector<std::string>& column_names() const { return column_names_; }

    bool has_column(std::string_view name) const;
    std::span<const double> column(std::string_view name) const;
    std::span<double> column_mut(std::string_view name);
    std::optional<std::size_t> row_of(std::string_view domain) const;

    void add_column(std::string name, std::vector<double> values);
    void add_row(const std::string& domain, std::span<const double> values);

private:
    std::vector<std::string> domains_;
    std::vector<std::string> column_names_;
    std::vector<std::vector<double>> columns_;
    std::unordered_map<std::string, std::size_t> column_index_;
    std::unordered_map<std::string, std::size_t> row_index_;
};

} // namespace wgtk
