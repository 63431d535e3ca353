#pragma once

#include "tits/matrix.hpp"

#include <json.hpp>

#include <string>

namespace tits {

enum class Status { holds, fails, expected_absence_confirmed, skipped };

std::string status_name(Status s);
bool status_passes(Status s);  // holds, expected-absence-confirmed or skipped

struct CheckRecord {
    std::string name;
    Status status = Status::fails;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json details = nlohmann::json::object();
    nlohmann::json witness;  // null when there is nothing to show
    std::string reason;
};

nlohmann::json to_json(const CheckRecord& r);
nlohmann::json matrix_json(const Matrix& m);
nlohmann::json word_json(const std::vector<int>& w);

}  // namespace tits
