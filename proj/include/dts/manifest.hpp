#ifndef DTS_MANIFEST_HPP
#define DTS_MANIFEST_HPP

// Record of one CLI run: enough to repeat it and to tell whether the inputs
// and outputs are the same bytes as before.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dts/catalog.hpp"

namespace dts {

struct RunManifest {
    std::vector<std::string> command_line;
    std::map<std::string, std::uint64_t> seeds;
    std::optional<std::uint64_t> budget_nodes;
    std::optional<double> budget_seconds;
    unsigned workers = 1;
    std::map<std::string, std::string> input_digests;   // name -> fnv1a64 hex
    std::map<std::string, std::string> output_digests;
    double wall_seconds = 0;
    int exit_code = 0;

    void add_input(const std::string& name, std::string_view bytes) { input_digests[name] = hex64(fnv1a64(bytes)); }
    void add_output(const std::string& name, std::string_view bytes) { output_digests[name] = hex64(fnv1a64(bytes)); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command_line"] = command_line;
        j["seeds"] = seeds;
        j["budget_nodes"] = budget_nodes ? nlohmann::json(*budget_nodes) : nlohmann::json(nullptr);
        j["budget_seconds"] = budget_seconds ? nlohmann::json(*budget_seconds) : nlohmann::json(nullptr);
        j["workers"] = workers;
        j["input_digests"] = input_digests;
        j["output_digests"] = output_digests;
        j["wall_seconds"] = wall_seconds;
        j["exit_code"] = exit_code;
        return j;
    }
};

} // namespace dts

#endif // DTS_MANIFEST_HPP
