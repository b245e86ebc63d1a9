#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "taukappa/rational.hpp"

namespace taukappa {

// Canonical key for an intersection number <tau_{d_1}...tau_{d_n}>_{g,n}:
// genus plus the insertion multiset, stored sorted descending.
struct TauBracket {
    int genus = 0;
    std::vector<int> insertions;

    static TauBracket canonical(int genus, std::vector<int> insertions);

    int n() const { return static_cast<int>(insertions.size()); }
    long degree() const;
    // Nonzero brackets need sum(d) = 3g-3+n ...
    bool dimension_ok() const { return degree() == 3L * genus - 3 + n(); }
    // ... and 2g-2+n > 0.
    bool stable() const { return 2L * genus - 2 + n() > 0; }

    bool operator==(const TauBracket&) const = default;
};

struct TauBracketHash {
    std::size_t operator()(const TauBracket& b) const;
};

// Raised when a bracket would be bound to two different values (memo
// re-insertion or a conflicting cache file).
class MemoConflictError : public std::logic_error {
public:
    explicit MemoConflictError(const std::string& what) : std::logic_error(what) {}
};

class MemoTable {
public:
    const Rational* find(const TauBracket& key) const;
    void insert(const TauBracket& key, const Rational& value);
    std::size_t size() const { return values_.size(); }

    // Line format: `g;d1,d2,...,dn;p/q` with d sorted descending, after a
    // `taukappa-cache v1` header. Loading a conflicting entry is fatal.
    void save(std::ostream& os) const;
    void load(std::istream& is);

private:
    std::unordered_map<TauBracket, Rational, TauBracketHash> values_;
};

// Computes psi intersection numbers by string/dilaton reduction and the L_k
// (Virasoro) recursion, from the seeds <tau_0^3>_0 = 1 and <tau_1>_1 = 1/24.
// Results are pure functions of the arguments; confine an engine (and its
// memo table) to one thread of control.
class TauEngine {
public:
    // <tau_{d_1}...tau_{d_n}>_{g,n}; 0 when the dimension constraint fails or
    // (g,n) is unstable.
    Rational tau(int genus, std::vector<int> insertions);

    // Genus inferred from 3g-3+n = sum(d); 0 when that g is not a
    // non-negative integer.
    Rational tau_auto(std::vector<int> insertions);

    MemoTable& memo() { return memo_; }
    const MemoTable& memo() const { return memo_; }

private:
    Rational compute(const TauBracket& bracket);

    MemoTable memo_;
};

// phi(g) = <tau_{3g-2}>_{g,1} via the closed recursion
// phi(g) = phi(g-1)/(24g), phi(0) = <tau_0^3> = 1.
Rational phi(int genus);

// Genus-0 values through the string equation alone; independent of the
// Virasoro path. Throws std::invalid_argument when the inferred genus is a
// positive integer (wrong oracle); returns 0 on dimension failure.
Rational genus0_oracle(std::vector<int> insertions);

}  // namespace taukappa
