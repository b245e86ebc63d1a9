#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taukappa/kappa.hpp"
#include "taukappa/rational.hpp"
#include "taukappa/tau_engine.hpp"

namespace taukappa {

// Sparse multi-index: (index, exponent) pairs, index ascending, exponent > 0.
struct MultiIndex {
    std::vector<std::pair<int, int>> entries;

    static MultiIndex of(std::vector<std::pair<int, int>> entries);

    long weight() const;  // sum (2i+1) * e_i
    int order() const;    // sum e_i
    std::vector<int> insertions() const;

    auto operator<=>(const MultiIndex&) const = default;
};

// One summand of an identity: coefficient times a product of t-derivative
// factors. An empty factor list is a constant term (the appendix has four).
struct DerivativeTerm {
    Rational coefficient;
    std::vector<MultiIndex> factors;

    long weight() const;
};

// nu is the s-derivative multi-index (indices >= 2); terms express it through
// t-derivatives of F at s_* = (0,1,0,...).
struct DfizIdentity {
    MultiIndex nu;
    std::vector<DerivativeTerm> terms;

    long top_weight() const { return nu.weight(); }
};

class UnsupportedProfileError : public std::runtime_error {
public:
    explicit UnsupportedProfileError(const std::string& what) : std::runtime_error(what) {}
};

class InadmissibleDegreeError : public std::runtime_error {
public:
    explicit InadmissibleDegreeError(const std::string& what) : std::runtime_error(what) {}
};

// Valence profile m_*: m[i] vertices of valency 2i+1. The operations below
// take only the i >= 2 part; m_1 is always derived from (g,n).
struct ValenceProfile {
    std::vector<std::pair<int, int>> entries;  // (i, m_i), i >= 1, ascending

    static ValenceProfile parse(std::string_view text);  // "2:1" or "2:1,3:1"
    static ValenceProfile of(std::vector<std::pair<int, int>> entries);

    int codim() const;  // sum m_i (i-1)
    bool higher_only() const;
    std::string str() const;

    auto operator<=>(const ValenceProfile&) const = default;
};

class DfizTable {
public:
    // Format: header `dfiz-table v1`; `nu=<i:exp,...>` opens an entry; term
    // lines `coeff;mu1|mu2|...` with each mu `i:exp,...`; rationals as p/q.
    static DfizTable load(std::istream& is);
    static DfizTable load_file(const std::string& path);
    // The table shipped with the artifact (TAUKAPPA_TABLE overrides the path).
    static const DfizTable& builtin();

    const std::vector<DfizIdentity>& identities() const { return identities_; }
    const DfizIdentity* find(const ValenceProfile& profile) const;
    const DfizIdentity& require(const ValenceProfile& profile) const;

private:
    std::vector<DfizIdentity> identities_;
};

// Weight filtration: every term weight <= top weight, congruent to it mod 3,
// and the unique top-weight term is the single factor nu with coefficient
// prod (2^i (2i-1)!!)^{nu_i}.
bool structural_check(const DfizIdentity& identity);

// Coefficient of t_{d_1}...t_{d_n} on the right-hand side: for each term, sum
// over assignments of the labeled set {1..n} to its factors, each factor
// contributing a genus-inferred bracket.
Rational coefficient_rhs(TauEngine& engine, const DfizIdentity& identity, int n, const std::vector<int>& d);

// m_1 forced by 2g-2+n = (1/2) sum m_i (2i-1); may be negative (empty cycle).
long derived_m1(const ValenceProfile& profile, int genus, int n);

// Genus forced by sum d = 3g-3+n - codim; throws InadmissibleDegreeError.
int inferred_genus(const ValenceProfile& profile, int n, const std::vector<int>& d);

// Integral over the combinatorial cycle W_{m_*,n}: coefficient_rhs scaled by
// 1/prod m_i!.
Rational w_integral(TauEngine& engine, const DfizTable& table, const ValenceProfile& profile, int n,
                    const std::vector<int>& d);

// Mumford-class part X = P_{m_*,n}(kappa) of the matching identity.
KappaPolynomial kappa_part(const DfizTable& table, const ValenceProfile& profile);

// Integral of the full X class (kappa part + boundary terms) for the
// codimension <= 2 profiles m2=1, m3=1, m2=2.
Rational x_class_integral(TauEngine& engine, const ValenceProfile& profile, int genus, int n,
                          const std::vector<int>& d);

}  // namespace taukappa
