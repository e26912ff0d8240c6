#include "wgtk/labels.hpp"

#include "wgtk/io_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace wgtk {

std::string to_string(Reliability r) {
    switch (r) {
    case Reliability::reliable: return "reliable";
    case Reliability::mixed: return "mixed";
    case Reliability::unreliable: return "unreliable";
    }
    return "?";
}

std::string to_string(Bias b) {
    switch (b) {
    case Bias::extreme_left: return "extreme-left";
    case Bias::left: return "left";
    case Bias::center_left: return "center-left";
    case Bias::center: return "center";
    case Bias::center_right: return "center-right";
    case Bias::right: return "right";
    case Bias::extreme_right: return "extreme-right";
    }
    return "?";
}

Reliability reliability_from_string(std::string_view s) {
    std::string v = ascii_lower(trim(s));
    if (v == "reliable") return Reliability::reliable;
    if (v == "mixed") return Reliability::mixed;
    if (v == "unreliable") return Reliability::unreliable;
    throw ValidationError("unknown reliability label: '" + v + "'");
}

Bias bias_from_string(std::string_view s) {
    std::string v = ascii_lower(trim(s));
    for (char& c : v)
        if (c == '_' || c == ' ') c = '-';
    if (v == "extreme-left") return Bias::extreme_left;
    if (v == "left") return Bias::left;
    if (v == "center-left") return Bias::center_left;
    if (v == "center") return Bias::center;
    if (v == "center-right") return Bias::center_right;
    if (v == "right") return Bias::right;
    if (v == "extreme-right") return Bias::extreme_right;
    throw ValidationError("unknown bias label: '" + v + "'");
}

LabelTable LabelTable::load(const std::string& path) {
    LabelTable table;
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw ValidationError(path + ": empty file");
    auto header = split_csv(line);
    if (header.size() < 2 || std::string(trim(header[0])) != "domain" ||
        std::string(trim(header[1])) != "reliability")
        throw ValidationError(path + ":1: expected header domain,reliability[,bias]");
    bool has_bias = header.size() >= 3 && std::string(trim(header[2])) == "bias";

    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(reader.line_number());
        auto fields = split_csv(line);
        if (fields.size() < 2) throw ValidationError(where + ": expected at least 2 fields");
        LabelRow row;
        row.domain = std::string(trim(fields[0]));
        row.reliability = reliability_from_string(fields[1]);
        if (has_bias && fields.size() >= 3 && !trim(fields[2]).empty())
            row.bias = bias_from_string(fields[2]);
        try {
            table.add(std::move(row));
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return table;
}

void LabelTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "domain,reliability,bias\n";
    for (const auto& row : rows_)
        out << join_csv({row.domain, to_string(row.reliability),
                         row.bias ? to_string(*row.bias) : std::string()})
            << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

void LabelTable::add(LabelRow row) {
    auto [it, inserted] = index_.emplace(row.domain, rows_.size());
    if (!inserted) throw ValidationError("duplicate labeled domain: " + row.domain);
    rows_.push_back(std::move(row));
}

const LabelRow* LabelTable::find(std::string_view domain) const {
    auto it = index_.find(std::string(domain));
    return it == index_.end() ? nullptr : &rows_[it->second];
}

LabelTable sample_labels(const LabelTable& labels, Reliability reliability, double fraction,
                         std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw ValidationError("sample fraction must be in (0, 1]");
    std::vector<std::size_t> matching;
    for (std::size_t i = 0; i < labels.rows().size(); ++i)
        if (labels.rows()[i].reliability == reliability) matching.push_back(i);
    if (matching.empty())
        throw ValidationError("no rows with reliability '" + to_string(reliability) + "'");

    const auto want = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(matching.size())));
    Rng rng(seed);
    // partial Fisher-Yates over the matching indices
    for (std::size_t i = 0; i < want; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(matching.size() - i));
        std::swap(matching[i], matching[j]);
    }
    matching.resize(want);
    std::sort(matching.begin(), matching.end());

    LabelTable out;
    for (std::size_t i : matching) out.add(labels.rows()[i]);
    return out;
}

ResolvedDomains resolve_domains(const std::vector<std::string>& names,
                                const VertexTable& vertices) {
    ResolvedDomains out;
    for (const auto& name : names) {
        auto id = vertices.find(name);
        if (!id) id = vertices.find(reverse_host(name));
        if (id)
            out.ids.push_back(*id);
        else
            out.unresolved.push_back(name);
    }
    std::sort(out.ids.begin(), out.ids.end());
    out.ids.erase(std::unique(out.ids.begin(), out.ids.end()), out.ids.end());
    return out;
}

std::vector<std::string> read_domain_list(const std::string& path) {
    std::vector<std::string> out;
    LineReader reader(path);
    std::string line;
    while (reader.next(line)) {
        std::string_view v = trim(line);
        if (!v.empty()) out.emplace_back(v);
    }
    return out;
}

void write_domain_list(const std::string& path, const std::vector<std::string>& names) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    for (const auto& n : names) out << n << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

} // namespace wgtk
