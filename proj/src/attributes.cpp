#include "wgtk/attributes.hpp"

#include "wgtk/io_util.hpp"

#include <fstream>

namespace wgtk {

AttributeTable AttributeTable::load(const std::string& path) {
    AttributeTable table;
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw ValidationError(path + ": empty file");
    auto header = split_csv(line);
    if (header.size() < 2 || std::string(trim(header[0])) != "domain")
        throw ValidationError(path + ":1: expected header domain,<columns...>");
    for (std::size_t i = 1; i < header.size(); ++i) {
        std::string name(trim(header[i]));
        if (name.empty()) throw ValidationError(path + ":1: empty column name");
        table.column_names_.push_back(name);
        if (!table.column_index_.emplace(std::move(name), i - 1).second)
            throw ValidationError(path + ":1: duplicate column '" + std::string(trim(header[i])) + "'");
    }
    table.columns_.resize(table.column_names_.size());

    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(reader.line_number());
        auto fields = split_csv(line);
        if (fields.size() != header.size())
            throw ValidationError(where + ": expected " + std::to_string(header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
        std::string domain(trim(fields[0]));
        if (!table.row_index_.emplace(domain, table.domains_.size()).second)
            throw ValidationError(where + ": duplicate domain '" + domain + "'");
        table.domains_.push_back(std::move(domain));
        for (std::size_t i = 1; i < fields.size(); ++i)
            table.columns_[i - 1].push_back(parse_double(fields[i], where));
    }
    return table;
}

void AttributeTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    std::vector<std::string> header = {"domain"};
    header.insert(header.end(), column_names_.begin(), column_names_.end());
    out << join_csv(header) << '\n';
    for (std::size_t r = 0; r < domains_.size(); ++r) {
        std::vector<std::string> fields = {domains_[r]};
        for (const auto& col : columns_) fields.push_back(format_double(col[r]));
        out << join_csv(fields) << '\n';
    }
    if (!out) throw RuntimeError("write failed: " + path);
}

bool AttributeTable::has_column(std::string_view name) const {
    return column_index_.count(std::string(name)) > 0;
}

std::span<const double> AttributeTable::column(std::string_view name) const {
    auto it = column_index_.find(std::string(name));
    if (it == column_index_.end())
        throw ValidationError("unknown attribute column: '" + std::string(name) + "'");
    return columns_[it->second];
}

std::span<double> AttributeTable::column_mut(std::string_view name) {
    auto it = column_index_.find(std::string(name));
    if (it == column_index_.end())
        throw ValidationError("unknown attribute column: '" + std::string(name) + "'");
    return columns_[it->second];
}

std::optional<std::size_t> AttributeTable::row_of(std::string_view domain) const {
    auto it = row_index_.find(std::string(domain));
    if (it == row_index_.end()) return std::nullopt;
    return it->second;
}

void AttributeTable::add_column(std::string name, std::vector<double> values) {
    if (!domains_.empty() && values.size() != domains_.size())
        throw ValidationError("column length does not match row count");
    if (!column_index_.emplace(name, column_names_.size()).second)
        throw ValidationError("duplicate column '" + name + "'");
    column_names_.push_back(std::move(name));
    columns_.push_back(std::move(values));
}

void AttributeTable::add_row(const std::string& domain, std::span<const double> values) {
    if (values.size() != columns_.size())
        throw ValidationError("row length does not match column count");
    if (!row_index_.emplace(domain, domains_.size()).second)
        throw ValidationError("duplicate domain '" + domain + "'");
    domains_.push_back(domain);
    for (std::size_t i = 0; i < values.size(); ++i) columns_[i].push_back(values[i]);
}

} // namespace wgtk
