#pragma once

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "taukappa/rational.hpp"
#include "taukappa/tau_engine.hpp"

namespace taukappa {

// Monomial in the Mumford classes kappa_1, kappa_2, ...; the index multiset
// is stored sorted descending. Index 0 is admitted in transit only: every
// kappa_0 factor is resolved to the scalar 2g-2+n of the ambient space as
// soon as an integral is taken.
struct KappaMonomial {
    std::vector<int> indices;

    static KappaMonomial of(std::vector<int> indices);

    int level() const { return static_cast<int>(indices.size()); }
    long weight() const;

    auto operator<=>(const KappaMonomial&) const = default;
};

// Exact linear combination of kappa monomials; zero coefficients are never
// stored.
class KappaPolynomial {
public:
    KappaPolynomial() = default;
    static KappaPolynomial monomial(KappaMonomial m, Rational coefficient);

    void add(const KappaMonomial& m, const Rational& coefficient);
    KappaPolynomial& operator+=(const KappaPolynomial& other);
    KappaPolynomial& operator*=(const Rational& scalar);
    KappaPolynomial operator*(const KappaPolynomial& other) const;

    bool is_zero() const { return terms_.empty(); }
    const std::map<KappaMonomial, Rational>& terms() const { return terms_; }

    bool operator==(const KappaPolynomial&) const = default;

    // e.g. "72*k1^2 - 348*k2", highest level first.
    std::string str() const;

private:
    std::map<KappaMonomial, Rational> terms_;
};

// Calls fn for every set partition of {0,...,size-1}.
void for_each_set_partition(int size, const std::function<void(const std::vector<std::vector<int>>&)>& fn);

// Faber's pushforward polynomial R_{b_1...b_l} = sum over permutations of S_l
// grouped by cycle type: sum over set partitions P of prod_B (|B|-1)! * kappa_{sum_B b}.
KappaPolynomial r_polynomial(const std::vector<int>& indices);

// Integral of psi_1^{a_1}...psi_n^{a_n} * kappa monomial over Mbar_{g,n},
// by triangular inversion of the R identity against pure tau brackets.
Rational mixed_integral(TauEngine& engine, int genus, const std::vector<int>& psi, const KappaMonomial& kappa);
Rational mixed_integral(TauEngine& engine, int genus, const std::vector<int>& psi, const KappaPolynomial& poly);

// Integral of psi^d * kappa~_a via kappa_a = kappa~_a + sum_i psi_i^a.
Rational kappa_tilde_integral(TauEngine& engine, int genus, const std::vector<int>& psi, int index);

}  // namespace taukappa
