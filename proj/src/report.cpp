#include "tits/report.hpp"

namespace tits {

std::string status_name(Status s) {
    switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::expected_absence_confirmed: return "expected-absence-confirmed";
    case Status::skipped: return "skipped";
    }
    return "";
}

bool status_passes(Status s) { return s != Status::fails; }

nlohmann::json to_json(const CheckRecord& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["status"] = status_name(r.status);
    j["params"] = r.params;
    j["details"] = r.details;
    j["witness"] = r.witness;
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

nlohmann::json matrix_json(const Matrix& m) { return m.dump(); }

nlohmann::json word_json(const std::vector<int>& w) {
    std::string s;
    for (int x : w) s += (s.empty() ? "s" : " s") + std::to_string(x);
    return s.empty() ? "e" : s;
}

}  // namespace tits
