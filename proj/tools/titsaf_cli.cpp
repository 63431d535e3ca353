#include "tits/campaign.hpp"
#include "tits/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace tits;

namespace {

struct GroupFlags {
    std::string config, family, ext_kind = "ramified", alpha, beta, uniformizer = "auto";
    int n = 0;
    std::uint32_t p = 5, f = 1, N = 24, M = 6;

    void add(CLI::App* app) {
        app->add_option("--config", config, "campaign config whose group block is used");
        app->add_option("--family", family, "SL | Sp | SO_odd | SO_even | U");
        app->add_option("--n", n, "matrix size");
        app->add_option("--p", p, "residue characteristic");
        app->add_option("--f", f, "Frobenius exponent of the base");
        app->add_option("--N", N, "Laurent precision");
        app->add_option("--M", M, "residue surrogate degree");
        app->add_option("--ext-kind", ext_kind, "quadratic extension kind for U");
        app->add_option("--alpha", alpha, "Eisenstein coefficient alpha");
        app->add_option("--beta", beta, "Eisenstein coefficient beta");
        app->add_option("--uniformizer", uniformizer, "auto | antisymmetric | generator");
    }

    GroupSpec spec() const {
        if (!config.empty()) {
            auto c = load_config(config);
            if (!c.group) throw config_error("group", "config has no group block");
            return *c.group;
        }
        if (family.empty()) throw config_error("group.family", "pass --family or --config");
        nlohmann::json j = {{"family", family}, {"n", n}, {"p", p}, {"f", f},
                            {"N", N}, {"M", M}, {"uniformizer", uniformizer}};
        if (family == "U") j["extension"] = {{"kind", ext_kind}, {"alpha", alpha}, {"beta", beta}};
        return parse_group(j);
    }
};

int finish(const CampaignConfig& c, const std::string& output_flag) {
    CampaignReport rep = run_campaign(c);
    const std::string out = !output_flag.empty() ? output_flag : !c.output.empty() ? c.output : "titsaf-report.json";
    std::ofstream f(out, std::ios::binary);
    if (!f) throw config_error("output", "cannot write " + out);
    f << serialize(rep.json);
    std::cout << rep.summary << "report: " << out << "\n";
    return rep.exit_code;
}

CampaignConfig single(const GroupFlags& g, std::vector<CheckSpec> checks, std::uint64_t seed) {
    CampaignConfig c;
    c.group = g.spec();
    c.checks = std::move(checks);
    c.seed = seed;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representatives of affine simple reflections: construction and verification"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output;
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--output,-o", output, "report path (default: config output or titsaf-report.json)");
    app.add_option("--seed", seed, "seed for randomized searches");

    std::string config_path;
    auto* run = app.add_subcommand("run", "run a campaign config");
    run->add_option("config", config_path, "config JSON")->required();

    GroupFlags gi, gv, go, gd;
    auto* inspect = app.add_subcommand("inspect", "dump simple affine roots, Coxeter matrix, value sets");
    gi.add(inspect);

    std::string ctype;
    int crank = 0;
    auto* circ = app.add_subcommand("circular-order", "run the rank-2 circular-order table");
    circ->add_option("--type", ctype, "case label or type, e.g. Bn, B_n, B");
    circ->add_option("--rank", crank, "rank of the table instance");

    std::vector<std::string> vchecks;
    int vl = -1, vi = -1, vj = -1;
    auto* verify = app.add_subcommand("verify", "braid, squares and Tits-group axioms");
    gv.add(verify);
    verify->add_option("--check", vchecks, "braid | braids | squares | tits-axioms | weyl-image")->required();
    verify->add_option("--L", vl, "length bound for tits-axioms");
    verify->add_option("--i", vi, "first index for braid");
    verify->add_option("--j", vj, "second index for braid");

    std::uint32_t wprec = 12;
    auto* obstruct = app.add_subcommand("obstruct", "even unitary obstruction pipeline");
    go.add(obstruct);
    obstruct->add_option("--witness-precision", wprec, "precision of concrete witnesses");

    std::string twist = "none";
    int power = 1, dl = -1;
    auto* descend = app.add_subcommand("descend", "sigma-stable representatives and descended axioms");
    gd.add(descend);
    descend->add_option("--twist", twist, "none | rotation");
    descend->add_option("--power", power, "rotation power");
    descend->add_option("--L", dl, "length bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return finish(load_config(config_path), output);
        if (circ->parsed()) {
            CampaignConfig c;
            CheckSpec cs{"circular-order", {{"type", ctype}, {"rank", crank}}};
            c.checks = {cs};
            c.seed = seed;
            return finish(c, output);
        }
        if (inspect->parsed()) return finish(single(gi, {{"inspect", {}}}, seed), output);
        if (verify->parsed()) {
            std::vector<CheckSpec> checks;
            for (const auto& name : vchecks) {
                CheckSpec cs{name, nlohmann::json::object()};
                if (name == "tits-axioms" && vl >= 0) cs.params["L"] = vl;
                if (name == "braid") {
                    if (vi < 0 || vj < 0) throw config_error("--i", "braid needs --i and --j");
                    cs.params = {{"i", vi}, {"j", vj}};
                }
                if (name != "braid" && name != "braids" && name != "squares" && name != "tits-axioms" &&
                    name != "weyl-image")
                    throw config_error("--check", "unknown verify check '" + name + "'");
                checks.push_back(cs);
            }
            return finish(single(gv, checks, seed), output);
        }
        if (obstruct->parsed())
            return finish(single(go, {{"even-unitary-obstruction", {{"witness_precision", wprec}}}}, seed), output);
        if (descend->parsed()) {
            CheckSpec cs{"descent", {{"twist", twist}, {"power", power}}};
            if (dl >= 0) cs.params["L"] = dl;
            return finish(single(gd, {cs}, seed), output);
        }
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
