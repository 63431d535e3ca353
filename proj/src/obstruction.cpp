#include "tits/obstruction.hpp"

#include "tits/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace tits {

// ---- SymbolicUnit ----

SymbolicUnit SymbolicUnit::gen(const std::string& name, std::int64_t e) {
    SymbolicUnit u;
    if (e != 0) u.e_[name] = e;
    return u;
}

SymbolicUnit SymbolicUnit::operator*(const SymbolicUnit& o) const {
    SymbolicUnit r = *this;
    for (const auto& [g, e] : o.e_) {
        auto& x = r.e_[g];
        x += e;
        if (x == 0) r.e_.erase(g);
    }
    return r;
}

SymbolicUnit SymbolicUnit::inverse() const { return pow(-1); }

SymbolicUnit SymbolicUnit::pow(std::int64_t k) const {
    SymbolicUnit r;
    if (k == 0) return r;
    for (const auto& [g, e] : e_) r.e_[g] = e * k;
    return r;
}

std::string SymbolicUnit::tau_name(const std::string& g) {
    if (is_tau_name(g)) return g.substr(4, g.size() - 5);
    return "tau(" + g + ")";
}

bool SymbolicUnit::is_tau_name(const std::string& g) { return g.rfind("tau(", 0) == 0; }

std::string SymbolicUnit::base_name(const std::string& g) { return is_tau_name(g) ? tau_name(g) : g; }

SymbolicUnit SymbolicUnit::tau() const {
    SymbolicUnit r;
    for (const auto& [g, e] : e_) r.e_[tau_name(g)] = e;
    return r;
}

std::int64_t SymbolicUnit::uniformizer_degree() const {
    std::int64_t d = 0;
    for (const auto& [g, e] : e_)
        if (base_name(g) == "w") d += e;
    return d;
}

std::string SymbolicUnit::to_string() const {
    if (e_.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : e_) {
        if (!s.empty()) s += " ";
        s += g;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string Equation::to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }

std::vector<Equation> ConstraintSystem::from(const std::string& origin) const {
    std::vector<Equation> out;
    for (const auto& e : equations)
        if (e.origin == origin) out.push_back(e);
    return out;
}

SymbolicMonomialMatrix SymbolicMonomialMatrix::operator*(const SymbolicMonomialMatrix& o) const {
    SymbolicMonomialMatrix r;
    r.perm.resize(o.perm.size());
    r.value.resize(o.perm.size());
    for (std::size_t j = 0; j < o.perm.size(); ++j) {
        r.perm[j] = perm[o.perm[j]];
        r.value[j] = value[o.perm[j]] * o.value[j];
    }
    return r;
}

// ---- UnitLattice ----

UnitLattice::UnitLattice(const std::vector<SymbolicUnit>& gens, const std::set<std::string>& keep) : gens_(gens) {
    std::set<std::string> names;
    for (const auto& g : gens)
        for (const auto& [n, e] : g.exponents()) names.insert(n);
    for (const auto& n : names)
        if (!keep.empty() && !keep.count(n)) names_.push_back(n);
    first_kept_ = names_.size();
    for (const auto& n : names)
        if (keep.empty() || keep.count(n)) names_.push_back(n);
    for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
    ngens_ = gens.size();
    std::vector<std::vector<std::int64_t>> rows, combo;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        rows.push_back(coords(gens[i]));
        std::vector<std::int64_t> c(ngens_, 0);
        c[i] = 1;
        combo.push_back(c);
    }
    auto axpy = [](std::vector<std::int64_t>& y, std::int64_t q, const std::vector<std::int64_t>& x) {
        for (std::size_t k = 0; k < y.size(); ++k) y[k] -= q * x[k];
    };
    std::size_t piv = 0;
    for (std::size_t col = 0; col < names_.size() && piv < rows.size(); ++col) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = piv; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[best][col])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[piv], rows[best]);
            std::swap(combo[piv], combo[best]);
            bool more = false;
            for (std::size_t i = piv + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                std::int64_t q = rows[i][col] / rows[piv][col];
                axpy(rows[i], q, rows[piv]);
                axpy(combo[i], q, combo[piv]);
                if (rows[i][col] != 0) more = true;
            }
            if (!more) break;
        }
        if (rows[piv][col] == 0) continue;
        if (rows[piv][col] < 0) {
            for (auto& x : rows[piv]) x = -x;
            for (auto& x : combo[piv]) x = -x;
        }
        for (std::size_t i = 0; i < piv; ++i) {
            std::int64_t a = rows[i][col], p = rows[piv][col];
            std::int64_t q = a >= 0 ? a / p : -((-a + p - 1) / p);
            axpy(rows[i], q, rows[piv]);
            axpy(combo[i], q, combo[piv]);
        }
        ++piv;
    }
    rows.resize(piv);
    combo.resize(piv);
    basis_ = rows;
    combo_ = combo;
}

std::vector<std::int64_t> UnitLattice::coords(const SymbolicUnit& x) const {
    std::vector<std::int64_t> v(names_.size(), 0);
    for (const auto& [n, e] : x.exponents()) {
        auto it = index_.find(n);
        if (it == index_.end()) throw domain_error("generator outside the lattice coordinates");
        v[it->second] = e;
    }
    return v;
}

std::vector<SymbolicUnit> UnitLattice::restricted() const {
    std::vector<SymbolicUnit> out;
    for (const auto& row : basis_) {
        bool free = true;
        for (std::size_t k = 0; k < first_kept_; ++k) free = free && row[k] == 0;
        if (!free) continue;
        SymbolicUnit x;
        for (std::size_t k = 0; k < row.size(); ++k) x = x * SymbolicUnit::gen(names_[k], row[k]);
        out.push_back(x);
    }
    return out;
}

std::optional<std::vector<std::int64_t>> UnitLattice::express(const SymbolicUnit& x) const {
    for (const auto& [n, e] : x.exponents())
        if (!index_.count(n)) return std::nullopt;
    auto v = coords(x);
    std::vector<std::int64_t> c(ngens_, 0);
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        std::size_t col = 0;
        while (basis_[r][col] == 0) ++col;
        if (v[col] % basis_[r][col] != 0) return std::nullopt;
        std::int64_t q = v[col] / basis_[r][col];
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= q * basis_[r][k];
        for (std::size_t k = 0; k < ngens_; ++k) c[k] += q * combo_[r][k];
    }
    for (auto e : v)
        if (e != 0) return std::nullopt;
    return c;
}

bool UnitLattice::same_as(const UnitLattice& o) const {
    for (const auto& g : o.gens_)
        if (!contains(g)) return false;
    for (const auto& g : gens_)
        if (!o.contains(g)) return false;
    return true;
}

// ---- pipeline ----

namespace {

std::string dname(std::size_t row, int s) {
    return "d_" + std::to_string(row + 1) + (row + 1 < 10 && s < 10 ? "" : ",") + std::to_string(s);
}

Equation cancelled(const SymbolicUnit& lhs, const SymbolicUnit& rhs, const std::string& origin) {
    std::map<std::string, std::int64_t> l = lhs.exponents(), r = rhs.exponents();
    SymbolicUnit L, R;
    std::set<std::string> names;
    for (auto& [g, e] : l) names.insert(g);
    for (auto& [g, e] : r) names.insert(g);
    for (const auto& g : names) {
        std::int64_t a = l.count(g) ? l[g] : 0, b = r.count(g) ? r[g] : 0;
        if ((a > 0 && b > 0) || (a < 0 && b < 0)) {
            std::int64_t c = a > 0 ? std::min(a, b) : std::max(a, b);
            a -= c;
            b -= c;
        }
        L = L * SymbolicUnit::gen(g, a);
        R = R * SymbolicUnit::gen(g, b);
    }
    return {L, R, origin};
}

const char* kOrigins[] = {"(1)", "(2)", "(3)"};

SymbolicUnit G(const std::string& n, std::int64_t e = 1) { return SymbolicUnit::gen(n, e); }
SymbolicUnit T(const std::string& n, std::int64_t e = 1) { return SymbolicUnit::gen(SymbolicUnit::tau_name(n), e); }

}  // namespace

std::vector<std::vector<Equation>> expected_constraints() {
    const SymbolicUnit one;
    return {
        {{G("u") * T("u"), one, "(1)"}, {T("d_21", -1), G("u") * G("d_11"), "(1)"}},
        {{G("d_22") * G("d_32"), G("u") * G("w", -1) * T("w"), "(2)"}, {G("d_12") * T("d_30"), one, "(2)"}},
        {{G("d_31"), G("d_12"), "(3)"},
         {G("d_11") * G("d_21") * G("d_31", -1), G("d_12", -1) * G("d_22") * G("d_32"), "(3)"}},
    };
}

SymbolicUnit terminal_fixedness() {
    SymbolicUnit x = G("d_11") * G("w");
    return x.tau() * x.inverse();
}

ObstructionSetup build_obstruction_system(const GroupModel& g) {
    const auto& spec = g.spec();
    if (spec.family != Family::U || spec.n % 2 != 0 || spec.n < 6)
        throw config_error("family", "even-unitary-obstruction needs a ramified U_2r with r >= 3");
    const std::size_t m = g.size(), r = m / 2;
    const auto& d = g.datum();
    ObstructionSetup out;
    for (int i = 0; i < int(d.size()); ++i) {
        const Matrix& n = g.rep(i);
        auto pi = n.monomial_permutation();
        if (!pi) throw std::logic_error("representative is not monomial");
        std::vector<SymbolicUnit> diag(m);
        int nonzero_rows = 0;
        for (std::size_t j = 0; j < r; ++j) {
            std::size_t col = std::size_t(std::find(pi->begin(), pi->end(), j) - pi->begin());
            Q v = n.at(j, col).val();
            Q twice = Q(2) * v;
            if (twice.denominator() != 1) throw std::logic_error("unexpected entry valuation");
            SymbolicUnit x;
            if (v == 0) x = G(dname(j, i));
            else if (nonzero_rows++ == 0) x = G("w", twice.numerator());  // absorbs d_{j0} into the uniformizer
            else if (nonzero_rows == 2) x = G("u") * G("w", twice.numerator());
            else x = G(dname(j, i)) * G("w", twice.numerator());
            diag[j] = x;
            diag[m - 1 - j] = x.tau().inverse();
        }
        SymbolicMonomialMatrix c;
        c.perm = *pi;
        for (std::size_t col = 0; col < m; ++col) c.value.push_back(diag[c.perm[col]]);
        out.candidates.push_back(c);
    }
    auto cm = coxeter_matrix(d);
    out.relations = {{0, 1}, {0, 2}, {1, 2}};
    for (std::size_t k = 0; k < out.relations.size(); ++k) {
        auto [a, b] = out.relations[k];
        int mm = cm[std::size_t(a)][std::size_t(b)];
        if (mm == kCoxeterInfinity) throw std::logic_error("unexpected infinite Coxeter entry");
        SymbolicMonomialMatrix lhs = out.candidates[std::size_t(a)], rhs = out.candidates[std::size_t(b)];
        for (int t = 1; t < mm; ++t) {
            lhs = lhs * out.candidates[std::size_t(t % 2 ? b : a)];
            rhs = rhs * out.candidates[std::size_t(t % 2 ? a : b)];
        }
        if (lhs.perm != rhs.perm) throw std::logic_error("braid products have different permutations");
        for (std::size_t col = 0; col < m; ++col)
            if (!(lhs.value[col] == rhs.value[col]))
                out.system.equations.push_back(cancelled(lhs.value[col], rhs.value[col], kOrigins[k]));
    }
    return out;
}

namespace {

struct Evaluator {
    const QuadExtCtx* e;
    std::map<std::string, QuadExtNumber> vals;

    bool known(const std::string& base) const { return vals.count(base) > 0; }
    QuadExtNumber value(const std::string& g) const {
        const auto& v = vals.at(SymbolicUnit::base_name(g));
        return SymbolicUnit::is_tau_name(g) ? v.gamma0() : v;
    }
    QuadExtNumber eval(const SymbolicUnit& x) const {
        QuadExtNumber r = QuadExtNumber::from_int(*e, 1);
        for (const auto& [g, k] : x.exponents()) r = r * value(g).pow(k);
        return r;
    }
};

}  // namespace

ConcreteWitness concrete_witness(const GroupModel& g, const std::vector<Equation>& eqs, std::uint32_t N,
                                 std::uint64_t seed) {
    const auto& spec = g.spec();
    const LaurentCtx& base = LaurentCtx::get(spec.p, spec.f * spec.M, N);
    const QuadExtCtx& f = g.field();
    const QuadExtCtx& e = QuadExtCtx::get(base, f.kind, LaurentNumber::parse(base, f.alpha.to_string()),
                                          LaurentNumber::parse(base, f.beta.to_string()), f.f);
    auto pick = pick_uniformizer(e, g.uniformizer_kind() == "antisymmetric");
    QuadExtNumber w = std::get<QuadExtNumber>(pick);

    std::vector<SymbolicUnit> qs;
    std::set<std::string> vars;
    for (const auto& eq : eqs) {
        qs.push_back(eq.quotient());
        for (const auto& [n, k] : qs.back().exponents())
            if (SymbolicUnit::base_name(n) != "w") vars.insert(SymbolicUnit::base_name(n));
    }
    std::vector<std::string> order(vars.begin(), vars.end());
    std::mt19937_64 rng(seed);
    const auto& F = *base.field;
    ConcreteWitness out;
    for (int attempt = 0; attempt < 64; ++attempt) {
        out.attempts = attempt + 1;
        if (attempt > 0) std::shuffle(order.begin(), order.end(), rng);
        Evaluator ev{&e, {{"w", w}}};
        std::size_t next_default = 0;
        while (ev.vals.size() < vars.size() + 1) {
            bool progress = false;
            for (const auto& q : qs) {
                std::string unknown;
                int count = 0;
                for (const auto& [n, k] : q.exponents())
                    if (!ev.known(SymbolicUnit::base_name(n)) && SymbolicUnit::base_name(n) != unknown) {
                        unknown = SymbolicUnit::base_name(n);
                        ++count;
                    }
                if (count != 1) continue;
                auto ex = q.exponents();
                std::int64_t eg = ex.count(unknown) ? ex[unknown] : 0;
                std::int64_t et = ex.count(SymbolicUnit::tau_name(unknown)) ? ex[SymbolicUnit::tau_name(unknown)] : 0;
                if ((eg != 0) == (et != 0) || std::llabs(eg + et) != 1) continue;
                SymbolicUnit rest = q * SymbolicUnit::gen(eg ? unknown : SymbolicUnit::tau_name(unknown), -(eg + et));
                QuadExtNumber val = ev.eval(rest).pow(-(eg + et));
                ev.vals[unknown] = eg ? val : val.gamma0();
                progress = true;
            }
            if (progress) continue;
            while (next_default < order.size() && ev.known(order[next_default])) ++next_default;
            if (next_default == order.size()) break;
            QuadExtNumber dflt = QuadExtNumber::from_int(e, 1);
            if (attempt > 0) {
                std::uint32_t code = 1 + std::uint32_t(rng() % (F.order() - 1));
                dflt = QuadExtNumber(e, LaurentNumber::constant(base, code));
            }
            ev.vals[order[next_default]] = dflt;
        }
        bool ok = true;
        for (const auto& v : vars)
            if (!ev.known(v) || !ev.vals.at(v).is_unit()) ok = false;
        for (std::size_t k = 0; ok && k < qs.size(); ++k)
            if (ev.eval(qs[k]) != QuadExtNumber::from_int(e, 1)) ok = false;
        if (ok) {
            out.found = true;
            for (const auto& [n, v] : ev.vals) out.values[n] = v.to_string();
            return out;
        }
    }
    return out;
}

CheckRecord even_unitary_obstruction(const GroupModel& g, std::uint64_t seed, std::uint32_t witness_precision) {
    CheckRecord rec;
    rec.name = "even-unitary-obstruction";
    rec.params = {{"seed", seed}, {"witness_precision", witness_precision}};
    ObstructionSetup setup = build_obstruction_system(g);

    nlohmann::json cands = nlohmann::json::array();
    for (std::size_t i = 0; i < setup.candidates.size(); ++i) {
        const auto& c = setup.candidates[i];
        nlohmann::json perm = nlohmann::json::array(), diag = nlohmann::json::array();
        for (std::size_t j = 0; j < c.perm.size(); ++j) perm.push_back(c.perm[j] + 1);
        std::vector<std::string> dd(c.perm.size());
        for (std::size_t j = 0; j < c.perm.size(); ++j) dd[c.perm[j]] = c.value[j].to_string();
        cands.push_back({{"index", i}, {"column_to_row", perm}, {"torus", dd}});
    }

    bool valuation_ok = true;
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& e : setup.system.equations) {
        valuation_ok = valuation_ok && e.lhs.uniformizer_degree() == e.rhs.uniformizer_degree();
        eqs.push_back({{"origin", e.origin}, {"equation", e.to_string()}});
    }

    // derived constraints per relation versus the expected pairs, closed under tau
    auto expected = expected_constraints();
    bool match = true;
    nlohmann::json cmp = nlohmann::json::object();
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<SymbolicUnit> derived, ref;
        for (const auto& e : setup.system.from(kOrigins[k])) derived.push_back(e.quotient());
        for (const auto& e : expected[k]) {
            ref.push_back(e.quotient());
            ref.push_back(e.quotient().tau());
        }
        // generators absent from the expected pair (rows fixed by both permutations when r > 3) are eliminated
        std::set<std::string> keep;
        for (const auto& x : ref)
            for (const auto& [n, e] : x.exponents()) keep.insert(n);
        std::set<std::string> dropped;
        for (const auto& x : derived)
            for (const auto& [n, e] : x.exponents())
                if (!keep.count(n)) dropped.insert(n);
        bool same = UnitLattice(UnitLattice(derived, keep).restricted()).same_as(UnitLattice(ref));
        match = match && same;
        nlohmann::json exp_list = nlohmann::json::array();
        for (const auto& e : expected[k]) exp_list.push_back(e.to_string());
        cmp[kOrigins[k]] = {{"expected", exp_list}, {"normal_form_matches", same}, {"eliminated", dropped}};
    }

    // eliminate to the fixedness of d_11 w
    std::vector<SymbolicUnit> all;
    for (const auto& e : setup.system.equations) all.push_back(e.quotient());
    UnitLattice lat(all);
    SymbolicUnit target = terminal_fixedness();
    auto cert = lat.express(target);
    nlohmann::json certificate = nlohmann::json::array();
    if (cert)
        for (std::size_t k = 0; k < cert->size(); ++k)
            if ((*cert)[k] != 0)
                certificate.push_back({{"equation", setup.system.equations[k].to_string()},
                                       {"origin", setup.system.equations[k].origin},
                                       {"exponent", (*cert)[k]}});
    const std::int64_t required = (G("d_11") * G("w")).uniformizer_degree();
    const bool admits = fixed_field_valuation_test(required);

    // falsifier: each system with one relation dropped has a concrete solution
    bool mutations_ok = true;
    nlohmann::json muts = nlohmann::json::array();
    for (std::size_t drop = 0; drop < 3; ++drop) {
        std::vector<Equation> kept;
        for (const auto& e : setup.system.equations)
            if (e.origin != kOrigins[drop]) kept.push_back(e);
        auto wit = concrete_witness(g, kept, witness_precision, seed + drop);
        mutations_ok = mutations_ok && wit.found;
        muts.push_back({{"dropped", kOrigins[drop]}, {"witness_found", wit.found}, {"attempts", wit.attempts},
                        {"witness", wit.values}});
    }
    auto full = concrete_witness(g, setup.system.equations, witness_precision, seed);

    rec.details = {{"candidates", cands},
                   {"equations", eqs},
                   {"valuation_consistent", valuation_ok},
                   {"reference_comparison", cmp},
                   {"terminal_equation", "tau(d_11 w) = d_11 w"},
                   {"terminal_derived", cert.has_value()},
                   {"certificate", certificate},
                   {"required_valuation", required},
                   {"fixed_field_valuation_test", admits},
                   {"mutations", muts},
                   {"full_system_concrete_witness", full.found},
                   {"uniformizer", g.uniformizer_kind()},
                   {"absorption",
                    "order-2 elements of T_1 (signs of the permutation representatives) are absorbed into the "
                    "generic torus parameters; w denotes the uniformizer after absorbing d_10"}};
    const bool ok = valuation_ok && match && cert && !admits && mutations_ok && !full.found;
    rec.status = ok ? Status::expected_absence_confirmed : Status::fails;
    if (!ok) rec.reason = "symbolic pipeline diverged from the expected normal form";
    return rec;
}

}  // namespace tits
