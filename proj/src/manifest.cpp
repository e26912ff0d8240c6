#include "wgtk/manifest.hpp"

#include "wgtk/io_util.hpp"

#include <nlohmann/json.hpp>

namespace wgtk {

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["command"] = command;
    j["argv"] = argv;
    j["params"] = params;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json_file(const std::string& path) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(path));
    RunManifest m;
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    if (j.contains("params")) m.params = j["params"].get<std::map<std::string, std::string>>();
    if (j.contains("inputs")) m.inputs = j["inputs"].get<std::map<std::string, std::string>>();
    if (j.contains("outputs")) m.outputs = j["outputs"].get<std::vector<std::string>>();
    return m;
}

void RunManifest::save(const std::string& path) const { write_text_file(path, to_json()); }

} // namespace wgtk
