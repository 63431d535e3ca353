#pragma once

#include "tits/groups.hpp"
#include "tits/report.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tits {

// Formal monomial in commuting generators; tau swaps g and tau(g).
class SymbolicUnit {
public:
    SymbolicUnit() = default;
    static SymbolicUnit gen(const std::string& name, std::int64_t e = 1);

    SymbolicUnit operator*(const SymbolicUnit& o) const;
    SymbolicUnit inverse() const;
    SymbolicUnit pow(std::int64_t e) const;
    SymbolicUnit tau() const;
    bool is_one() const { return e_.empty(); }
    const std::map<std::string, std::int64_t>& exponents() const { return e_; }
    // total exponent of the extension uniformizer w and tau(w)
    std::int64_t uniformizer_degree() const;
    bool operator==(const SymbolicUnit& o) const { return e_ == o.e_; }
    bool operator<(const SymbolicUnit& o) const { return e_ < o.e_; }
    std::string to_string() const;

    static std::string tau_name(const std::string& g);
    static bool is_tau_name(const std::string& g);
    static std::string base_name(const std::string& g);

private:
    std::map<std::string, std::int64_t> e_;
};

struct Equation {
    SymbolicUnit lhs, rhs;
    std::string origin;
    SymbolicUnit quotient() const { return lhs * rhs.inverse(); }
    std::string to_string() const;
};

struct ConstraintSystem {
    std::vector<Equation> equations;
    std::vector<Equation> from(const std::string& origin) const;
};

// Monomial matrix with symbolic entries: column j has entry value[j] in row perm[j].
struct SymbolicMonomialMatrix {
    std::vector<std::size_t> perm;
    std::vector<SymbolicUnit> value;
    SymbolicMonomialMatrix operator*(const SymbolicMonomialMatrix& o) const;
};

// Integer lattice of exponent vectors with membership certificates.
class UnitLattice {
public:
    // Coordinates outside `keep` come first in the echelon order, so the rows free of them span the
    // intersection with the subgroup generated by `keep`. An empty `keep` keeps every generator.
    explicit UnitLattice(const std::vector<SymbolicUnit>& gens, const std::set<std::string>& keep = {});
    std::vector<SymbolicUnit> restricted() const;
    // coefficients c with prod gens^c = x, or empty if x is not in the lattice
    std::optional<std::vector<std::int64_t>> express(const SymbolicUnit& x) const;
    bool contains(const SymbolicUnit& x) const { return express(x).has_value(); }
    bool same_as(const UnitLattice& o) const;
    std::vector<std::vector<std::int64_t>> hermite_form() const { return basis_; }
    const std::vector<std::string>& coordinates() const { return names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
    std::size_t first_kept_ = 0;
    std::vector<std::vector<std::int64_t>> basis_, combo_;
    std::size_t ngens_ = 0;
    std::vector<SymbolicUnit> gens_;
    std::vector<std::int64_t> coords(const SymbolicUnit& x) const;
};

struct ObstructionSetup {
    std::vector<SymbolicMonomialMatrix> candidates;  // m(s_i) = t_i g_i, generic t_i
    ConstraintSystem system;                         // from relations (s0,s1), (s0,s2), (s1,s2)
    std::vector<std::pair<int, int>> relations;
};

ObstructionSetup build_obstruction_system(const GroupModel& g);
// The three expected constraint pairs in the generator naming used here.
std::vector<std::vector<Equation>> expected_constraints();
SymbolicUnit terminal_fixedness();  // tau(d_11 w) (d_11 w)^-1

struct ConcreteWitness {
    bool found = false;
    std::map<std::string, std::string> values;
    int attempts = 0;
};
// Searches units (and the fixed uniformizer) satisfying every equation at precision N.
ConcreteWitness concrete_witness(const GroupModel& g, const std::vector<Equation>& eqs, std::uint32_t N,
                                 std::uint64_t seed);

CheckRecord even_unitary_obstruction(const GroupModel& g, std::uint64_t seed, std::uint32_t witness_precision = 12);

}  // namespace tits
