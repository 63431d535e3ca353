#pragma once

#include "tits/descent.hpp"
#include "tits/groups.hpp"
#include "tits/report.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tits {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CheckSpec {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
};

struct CampaignConfig {
    std::optional<GroupSpec> group;
    std::vector<CheckSpec> checks;
    std::string output;  // empty: no file
    std::uint64_t seed = kDefaultSeed;
    bool timings = false;  // wall times break byte-identical reports, so they are opt-in
};

// Throws config_error naming the offending key.
CampaignConfig parse_config(const nlohmann::json& j);
CampaignConfig load_config(const std::string& path);
nlohmann::json config_echo(const CampaignConfig& c);

GroupSpec parse_group(const nlohmann::json& j);
nlohmann::json group_json(const GroupSpec& g);

// Registered check names, in documentation order.
const std::vector<std::string>& check_names();

CheckRecord run_check(const CheckSpec& check, const GroupModel* g, std::uint64_t seed);

nlohmann::json inspect_json(const GroupModel& g);
CheckRecord circular_order_record(const std::string& type_filter, int rank);

struct CampaignReport {
    nlohmann::json json;
    std::vector<CheckRecord> records;
    int exit_code = 0;
    std::string summary;  // human-readable, for standard output
};

int exit_code_for(const std::vector<CheckRecord>& records);
CampaignReport run_campaign(const CampaignConfig& c);
// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string serialize(const nlohmann::json& j);

}  // namespace tits
