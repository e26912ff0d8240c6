#include "wgtk/vertex_table.hpp"

#include "wgtk/io_util.hpp"

#include <algorithm>
#include <fstream>

namespace wgtk {

VertexTable VertexTable::load(const std::string& path) {
    VertexTable table;
    LineReader reader(path);
    std::string line;
    int id_mode = -1; // -1 undecided, 0 implicit, 1 explicit
    while (reader.next(line)) {
        std::string_view view = trim(line);
        if (view.empty()) continue;
        std::size_t tab = view.find('\t');
        const std::string where = path + ":" + std::to_string(reader.line_number());
        if (tab == std::string_view::npos) {
            if (id_mode == 1)
                throw ValidationError(where + ": missing explicit id after explicit-id lines");
            id_mode = 0;
            table.add(std::string(view));
        } else {
            if (id_mode == 0)
                throw ValidationError(where + ": unexpected explicit id after implicit-id lines");
            id_mode = 1;
            std::int64_t id = parse_int(view.substr(0, tab), where);
            std::string_view name = trim(view.substr(tab + 1));
            if (name.empty()) throw ValidationError(where + ": empty domain name");
            if (id != static_cast<std::int64_t>(table.size()))
                throw ValidationError(where + ": non-contiguous id " + std::to_string(id) +
                                      " (expected " + std::to_string(table.size()) + ")");
            table.add(std::string(name));
        }
    }
    return table;
}

NodeId VertexTable::add(std::string name) {
    auto [it, inserted] = index_.emplace(name, static_cast<NodeId>(names_.size()));
    if (!inserted) throw ValidationError("duplicate domain name: " + name);
    names_.push_back(std::move(name));
    sorted_by_name_.clear();
    return it->second;
}

std::optional<NodeId> VertexTable::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void VertexTable::ensure_sorted() const {
    if (sorted_by_name_.size() == names_.size()) return;
    sorted_by_name_.resize(names_.size());
    for (NodeId i = 0; i < size(); ++i) sorted_by_name_[i] = i;
    std::sort(sorted_by_name_.begin(), sorted_by_name_.end(),
              [&](NodeId a, NodeId b) { return names_[a] < names_[b]; });
}

std::vector<NodeId> VertexTable::find_with_subdomains(std::string_view reversed_host) const {
    ensure_sorted();
    std::vector<NodeId> out;
    std::string prefix(reversed_host);
    auto lower = std::lower_bound(sorted_by_name_.begin(), sorted_by_name_.end(), prefix,
                                  [&](NodeId a, const std::string& p) { return names_[a] < p; });
    // exact match first, then "<host>.<sub>" entries, which sort right after
    for (auto it = lower; it != sorted_by_name_.end(); ++it) {
        const std::string& n = names_[*it];
        if (n == prefix) {
            out.push_back(*it);
        } else if (n.size() > prefix.size() && n.compare(0, prefix.size(), prefix) == 0 &&
                   n[prefix.size()] == '.') {
            out.push_back(*it);
        } else if (n.compare(0, prefix.size(), prefix) != 0) {
            break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void VertexTable::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    for (NodeId i = 0; i < size(); ++i) out << i << '\t' << names_[i] << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

} // namespace wgtk
