#include "tits/campaign.hpp"

#include "tits/errors.hpp"
#include "tits/obstruction.hpp"
#include "tits/verify.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

namespace tits {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw config_error(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw config_error(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
}

template <class T>
T get_uint(const json& j, const std::string& key, const std::string& where, T fallback, T lo, T hi) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw config_error(where + key, "expected an integer");
    auto x = v.get<std::int64_t>();
    if (x < std::int64_t(lo) || x > std::int64_t(hi))
        throw config_error(where + key, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return T(x);
}

std::string get_string(const json& j, const std::string& key, const std::string& where, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw config_error(where + key, "expected a string");
    return j.at(key).get<std::string>();
}

struct CheckSchema {
    std::string name;
    std::set<std::string> keys;
    bool needs_group;
};

const std::vector<CheckSchema>& schemas() {
    static const std::vector<CheckSchema> s = {
        {"inspect", {}, true},
        {"circular-order", {"type", "rank"}, false},
        {"braid", {"i", "j"}, true},
        {"braids", {}, true},
        {"squares", {}, true},
        {"tits-axioms", {"L"}, true},
        {"weyl-image", {}, true},
        {"even-unitary-obstruction", {"witness_precision"}, true},
        {"descent", {"twist", "power", "L"}, true},
    };
    return s;
}

const CheckSchema& schema_for(const std::string& name, const std::string& where) {
    for (const auto& s : schemas())
        if (s.name == name) return s;
    throw config_error(where, "unknown check '" + name + "'");
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : schemas()) v.push_back(s.name);
        return v;
    }();
    return names;
}

GroupSpec parse_group(const json& j) {
    reject_unknown(j, "group", {"family", "n", "p", "f", "N", "M", "extension", "uniformizer"});
    GroupSpec g;
    if (!j.contains("family") || !j.at("family").is_string()) throw config_error("group.family", "required string");
    try {
        g.family = parse_family(j.at("family").get<std::string>());
    } catch (const config_error& e) {
        throw config_error("group.family", "unsupported family '" + j.at("family").get<std::string>() + "'");
    }
    if (!j.contains("n")) throw config_error("group.n", "required");
    g.n = get_uint<int>(j, "n", "group.", 3, 2, 64);
    g.p = get_uint<std::uint32_t>(j, "p", "group.", 5, 2, 65521);
    g.f = get_uint<std::uint32_t>(j, "f", "group.", 1, 1, 16);
    g.N = get_uint<std::uint32_t>(j, "N", "group.", 24, 4, 4096);
    g.M = get_uint<std::uint32_t>(j, "M", "group.", 6, 1, 24);
    g.uniformizer = get_string(j, "uniformizer", "group.", "auto");
    if (g.uniformizer != "auto" && g.uniformizer != "antisymmetric" && g.uniformizer != "generator")
        throw config_error("group.uniformizer", "expected auto, antisymmetric or generator");
    if (g.family == Family::U) g.ext.kind = ExtKind::ramified;
    if (j.contains("extension")) {
        const auto& e = j.at("extension");
        reject_unknown(e, "group.extension", {"kind", "alpha", "beta", "ramification"});
        const std::string kind = get_string(e, "kind", "group.extension.", "ramified");
        if (kind == "split") g.ext.kind = ExtKind::split;
        else if (kind == "unramified") g.ext.kind = ExtKind::unramified;
        else if (kind == "ramified") g.ext.kind = ExtKind::ramified;
        else throw config_error("group.extension.kind", "expected split, unramified or ramified");
        g.ext.alpha = get_string(e, "alpha", "group.extension.", "");
        g.ext.beta = get_string(e, "beta", "group.extension.", "");
        const std::string ram = get_string(e, "ramification", "group.extension.", "");
        if (!ram.empty()) {
            if (ram != "tame" && ram != "wild")
                throw config_error("group.extension.ramification", "expected tame or wild");
            if ((ram == "wild") != (g.p == 2))
                throw config_error("group.extension.ramification",
                                   "a ramified quadratic extension is wild exactly when p = 2");
        }
    }
    return g;
}

json group_json(const GroupSpec& g) {
    json j = {{"family", family_name(g.family)}, {"n", g.n}, {"p", g.p}, {"f", g.f},
              {"N", g.N}, {"M", g.M}, {"uniformizer", g.uniformizer}};
    if (g.family == Family::U) {
        j["extension"] = {{"kind", g.ext.kind == ExtKind::ramified ? "ramified"
                                             : g.ext.kind == ExtKind::unramified ? "unramified" : "split"},
                          {"alpha", g.ext.alpha}, {"beta", g.ext.beta},
                          {"ramification", g.p == 2 ? "wild" : "tame"}};
    }
    return j;
}

CampaignConfig parse_config(const json& j) {
    reject_unknown(j, "", {"group", "checks", "output", "seed", "timings"});
    CampaignConfig c;
    if (j.contains("group")) c.group = parse_group(j.at("group"));
    if (!j.contains("checks") || !j.at("checks").is_array() || j.at("checks").empty())
        throw config_error("checks", "required non-empty list");
    std::size_t k = 0;
    for (const auto& item : j.at("checks")) {
        const std::string where = "checks[" + std::to_string(k++) + "]";
        CheckSpec cs;
        if (item.is_string()) {
            cs.name = item.get<std::string>();
        } else if (item.is_object()) {
            if (!item.contains("check") || !item.at("check").is_string())
                throw config_error(where + ".check", "required string");
            cs.name = item.at("check").get<std::string>();
            const auto& sc = schema_for(cs.name, where + ".check");
            for (auto it = item.begin(); it != item.end(); ++it) {
                if (it.key() == "check") continue;
                if (!sc.keys.count(it.key())) throw config_error(where + "." + it.key(), "unknown key for " + cs.name);
                cs.params[it.key()] = it.value();
            }
        } else {
            throw config_error(where, "expected a check name or object");
        }
        const auto& sc = schema_for(cs.name, where);
        if (sc.needs_group && !c.group) throw config_error("group", "check '" + cs.name + "' needs a group block");
        c.checks.push_back(cs);
    }
    c.output = get_string(j, "output", "", "");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer() || j.at("seed").get<std::int64_t>() < 0) throw config_error("seed", "expected a non-negative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("timings")) {
        if (!j.at("timings").is_boolean()) throw config_error("timings", "expected a boolean");
        c.timings = j.at("timings").get<bool>();
    }
    return c;
}

CampaignConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config", "cannot read " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error("config", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

json config_echo(const CampaignConfig& c) {
    json j;
    if (c.group) j["group"] = group_json(*c.group);
    j["checks"] = json::array();
    for (const auto& cs : c.checks) j["checks"].push_back({{"check", cs.name}, {"params", cs.params}});
    j["output"] = c.output;
    j["seed"] = c.seed;
    j["timings"] = c.timings;
    return j;
}

json inspect_json(const GroupModel& g) {
    const auto& d = g.datum();
    json simple = json::array();
    for (std::size_t i = 0; i < d.size(); ++i)
        simple.push_back({{"index", i}, {"affine_root", d.simple_affine[i].to_string()}});
    json cox = json::array();
    for (const auto& row : coxeter_matrix(d)) {
        json r = json::array();
        for (int m : row) r.push_back(coxeter_entry_string(m));
        cox.push_back(r);
    }
    json vs = json::object();
    for (const auto& [b, v] : d.value_sets)
        if (d.finite_system.is_positive(b)) vs[root_to_string(b)] = v.to_string();
    json weights = json::array();
    for (const auto& w : g.weights()) weights.push_back(root_to_string(w));
    return {{"group", g.describe()},
            {"echelonnage", d.echelonnage_label},
            {"simple_affine_roots", simple},
            {"coxeter_matrix", cox},
            {"value_sets", vs},
            {"weights", weights},
            {"special_vertex", "origin"},
            {"uniformizer", g.uniformizer().to_string()},
            {"uniformizer_kind", g.uniformizer_kind()}};
}

namespace {

// "B_n", "Bn" and "B" all select the B_n rows
bool label_matches(const CircularCase& c, const std::string& filter) {
    if (filter.empty() || filter == c.label || filter == type_name(c.type)) return true;
    std::string compact;
    for (char ch : c.label)
        if (ch != '_') compact += ch;
    return filter == compact;
}

}  // namespace

CheckRecord circular_order_record(const std::string& type_filter, int rank) {
    CheckRecord r;
    r.name = "circular-order";
    r.params = {{"type", type_filter}, {"rank", rank}};
    json rows = json::array();
    bool ok = true;
    std::size_t absent = 0, selected = 0;
    for (const auto& c : circular_order_table()) {
        if (!label_matches(c, type_filter) || (rank > 0 && c.rank != rank)) continue;
        ++selected;
        for (const auto& o : run_circular_table(c.label)) {
            json order;
            if (o.computed) {
                order = json::array();
                for (const auto& b : *o.computed) order.push_back(root_to_string(b));
            } else {
                ++absent;
                order = "cannot be put in circular order";
            }
            rows.push_back({{"case", o.label}, {"rank", c.rank}, {"subcase", o.subcase}, {"order", order},
                            {"matches_reference", o.matches}, {"reduced_roots", o.reduced_count}});
            if (!o.matches) {
                ok = false;
                if (r.witness.is_null()) r.witness = {{"case", o.label}, {"subcase", o.subcase}};
            }
        }
    }
    if (selected == 0) throw config_error("type", "no table case matches type '" + type_filter + "' and rank " +
                                                       std::to_string(rank));
    r.details = {{"rows", rows}, {"absent_orders", absent}};
    r.status = ok ? Status::holds : Status::fails;
    return r;
}

CheckRecord run_check(const CheckSpec& cs, const GroupModel* g, std::uint64_t seed) {
    const auto& p = cs.params;
    auto need = [&]() -> const GroupModel& {
        if (!g) throw config_error("group", "check '" + cs.name + "' needs a group block");
        return *g;
    };
    auto int_param = [&](const std::string& key, int fallback, int lo, int hi) {
        return get_uint<int>(p, key, "checks." + cs.name + ".", fallback, lo, hi);
    };
    if (cs.name == "inspect") {
        CheckRecord r;
        r.name = "inspect";
        r.details = inspect_json(need());
        r.status = Status::holds;
        return r;
    }
    if (cs.name == "circular-order")
        return circular_order_record(get_string(p, "type", "checks.circular-order.", ""), int_param("rank", 0, 0, 16));
    if (cs.name == "braid") {
        const auto& m = need();
        const int top = int(m.datum().size()) - 1;
        if (!p.contains("i") || !p.contains("j")) throw config_error("checks.braid.i", "braid needs i and j");
        return check_braid(m, int_param("i", 0, 0, top), int_param("j", 1, 0, top));
    }
    if (cs.name == "braids") return check_all_braids(need());
    if (cs.name == "squares") return check_squares(need());
    if (cs.name == "weyl-image") return check_weyl_image_multiplicative(need());
    if (cs.name == "tits-axioms") {
        const auto& m = need();
        const int rank = int(m.datum().size()) - 1;
        return verify_tits_axioms(m, int_param("L", default_length_bound(rank), 0, 12));
    }
    if (cs.name == "even-unitary-obstruction")
        return even_unitary_obstruction(need(), seed, std::uint32_t(int_param("witness_precision", 12, 4, 64)));
    if (cs.name == "descent") {
        const auto& m = need();
        DescentConfig dc;
        dc.twist = get_string(p, "twist", "checks.descent.", "none");
        dc.power = int_param("power", 1, 1, 63);
        const int rank = int(m.datum().size()) - 1;
        return descend_and_verify(m, dc, int_param("L", default_length_bound(rank), 0, 12));
    }
    throw config_error("checks", "unknown check '" + cs.name + "'");
}

int exit_code_for(const std::vector<CheckRecord>& records) {
    for (const auto& r : records)
        if (!status_passes(r.status)) return 1;
    return 0;
}

std::string serialize(const json& j) { return j.dump(2) + "\n"; }

CampaignReport run_campaign(const CampaignConfig& c) {
    CampaignReport out;
    std::optional<GroupModel> model;
    if (c.group) model.emplace(*c.group);
    json records = json::array();
    std::map<std::string, int> counts;
    for (const auto& s : {Status::holds, Status::fails, Status::expected_absence_confirmed, Status::skipped})
        counts[status_name(s)] = 0;
    std::ostringstream human;
    for (const auto& cs : c.checks) {
        auto t0 = std::chrono::steady_clock::now();
        CheckRecord r = run_check(cs, model ? &*model : nullptr, c.seed);
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json rj = to_json(r);
        if (c.timings) rj["seconds"] = secs;
        records.push_back(rj);
        ++counts[status_name(r.status)];
        human << status_name(r.status) << "  " << r.name;
        if (!r.params.empty()) human << " " << r.params.dump();
        human << "\n";
        out.records.push_back(std::move(r));
    }
    out.exit_code = exit_code_for(out.records);
    json summary = counts;
    summary["total"] = c.checks.size();
    json field = nullptr;
    if (model)
        field = {{"group", model->describe()},
                 {"residue_surrogate", "F_" + std::to_string(c.group->p) + "^" + std::to_string(c.group->f * c.group->M)},
                 {"surrogate_note", "the algebraically closed residue field is replaced by a finite extension of degree "
                                    "f*M; sigma-orbits longer than this are out of reach"},
                 {"precision", c.group->N},
                 {"special_vertex", "origin"}};
    out.json = {{"tool", {{"name", "titsaf"}, {"version", kToolVersion}}},
                {"config", config_echo(c)},
                {"seed", c.seed},
                {"field", field},
                {"records", records},
                {"summary", summary},
                {"exit_code", out.exit_code}};
    human << "summary: " << summary.dump() << "\n";
    out.summary = human.str();
    return out;
}

}  // namespace tits
